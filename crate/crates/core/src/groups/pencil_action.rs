use std::collections::{BTreeMap, HashMap, HashSet};

use super::finite::{FiniteGroup, GroupElement, DEFAULT_ORDER_CAP};
use super::subgroups::{ElementSet, GroupFingerprint};
use super::{GroupError, MonomialMap};
use crate::algebra::cyclo::lcm;
use crate::algebra::recognize::sqrt_in_field;
use crate::algebra::{Cyclo, Matrix, SymMatrix, P1};
use crate::pencil::{discriminant, segre_analysis, MoebiusMap, Options, Pencil};

/// Coefficients `(a, b)` with `s = a·Q₁ + b·Q₂`, if any.
fn span_coords(p: &Pencil, s: &Matrix<Cyclo>) -> Option<(Cyclo, Cyclo)> {
    let n = p.size();
    let (q1, q2) = (p.q1(), p.q2());
    let entries: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    // a 2x2 nonsingular minor of the n²×2 system exists since Q₁, Q₂ are independent
    let mut coords = None;
    'search: for (k, &(i, j)) in entries.iter().enumerate() {
        for &(r, c) in &entries[k + 1..] {
            let det = q1.get(i, j) * q2.get(r, c) - q2.get(i, j) * q1.get(r, c);
            if !det.is_zero() {
                let (u, v) = (s.get(i, j), s.get(r, c));
                let a = (u * q2.get(r, c) - q2.get(i, j) * v) / &det;
                let b = (q1.get(i, j) * v - u * q1.get(r, c)) / &det;
                coords = Some((a, b));
                break 'search;
            }
        }
    }
    let (a, b) = coords?;
    let fits = entries.iter().all(|&(i, j)| &a * q1.get(i, j) + &b * q2.get(i, j) == *s.get(i, j));
    fits.then_some((a, b))
}

/// Pullback `Q ↦ Tᵀ Q T`.
fn pullback(t: &Matrix<Cyclo>, q: &SymMatrix) -> Matrix<Cyclo> {
    t.transpose().mul(q.matrix()).mul(t)
}

/// Whether `MᵀQ₁M` and `MᵀQ₂M` both lie in `span{Q₁, Q₂}`.
pub fn preserves_pencil(m: &MonomialMap, p: &Pencil) -> bool {
    if m.size() != p.size() {
        return false;
    }
    let t = m.matrix();
    span_coords(p, &pullback(&t, p.q1())).is_some() && span_coords(p, &pullback(&t, p.q2())).is_some()
}

/// Möbius map `(λ:μ) ↦` image of the member `λQ₁+μQ₂` under `x ↦ Mx`, without root checks.
fn induced_unchecked(m: &MonomialMap, p: &Pencil) -> Result<MoebiusMap, GroupError> {
    let not_preserving = || GroupError::NotPreserving { element: m.to_string() };
    if m.size() != p.size() {
        return Err(not_preserving());
    }
    let u = m.matrix().inverse()?;
    let (a1, g1) = span_coords(p, &pullback(&u, p.q1())).ok_or_else(not_preserving)?;
    let (a2, g2) = span_coords(p, &pullback(&u, p.q2())).ok_or_else(not_preserving)?;
    Ok(MoebiusMap::new(a1, a2, g1, g2)?)
}

fn check_roots(m: &MonomialMap, mob: &MoebiusMap, labelled: &[(P1, Vec<u32>)]) -> Result<(), GroupError> {
    let lookup: HashMap<&P1, &Vec<u32>> = labelled.iter().map(|(r, b)| (r, b)).collect();
    for (r, b) in labelled {
        if lookup.get(&mob.apply(r)) != Some(&b) {
            return Err(GroupError::Invalid(format!("{m} sends root {r} with bracket {b:?} off the labelled roots")));
        }
    }
    Ok(())
}

/// Induced Möbius map, verified to send each labelled root to a root with the same bracket.
pub fn induced_moebius(m: &MonomialMap, p: &Pencil, opts: &Options) -> Result<MoebiusMap, GroupError> {
    let mob = induced_unchecked(m, p)?;
    let analysis = segre_analysis(p, opts)?;
    if analysis.anonymous_count() == 0 {
        check_roots(m, &mob, &analysis.labelled_roots()?)?;
    } else {
        // roots outside the field: the discriminant must still be carried to a multiple of itself
        let disc = discriminant(p);
        let [[a, b], [c, d]] = mob.entries();
        let probe: Vec<(Cyclo, Cyclo)> = (0..=disc.degree() as i64 + 1).map(|k| (Cyclo::from_int(k), Cyclo::from_int(2 * k + 1))).collect();
        let moved: Vec<(Cyclo, Cyclo)> = probe.iter().map(|(l, mu)| (disc.eval(l, mu), disc.eval(&(a * l + b * mu), &(c * l + d * mu)))).collect();
        let (x0, y0) = moved.iter().find(|(x, _)| !x.is_zero()).expect("discriminant has finitely many roots");
        if moved.iter().any(|(x, y)| x * y0 != y * x0) {
            return Err(GroupError::Invalid(format!("{m} does not preserve the discriminant")));
        }
    }
    Ok(mob)
}

#[derive(Clone, Debug)]
pub struct AutDecomposition {
    /// Elements acting trivially on P¹ (indices into the group).
    pub kernel: Vec<usize>,
    pub kernel_fingerprint: GroupFingerprint,
    pub image: FiniteGroup<MoebiusMap>,
    pub image_fingerprint: GroupFingerprint,
}

/// Split `G` along `0 → G′ → G → G″ → 0` for its action on the pencil.
pub fn aut_sequence_decompose(g: &FiniteGroup<MonomialMap>, p: &Pencil, opts: &Options) -> Result<AutDecomposition, GroupError> {
    let analysis = segre_analysis(p, opts)?;
    let labelled = if analysis.anonymous_count() == 0 { Some(analysis.labelled_roots()?) } else { None };
    for gen in g.generators() {
        let mob = induced_unchecked(gen, p)?;
        if let Some(l) = &labelled {
            check_roots(gen, &mob, l)?;
        }
    }
    let mut images = Vec::with_capacity(g.order());
    for e in g.elements() {
        images.push(induced_unchecked(e, p)?);
    }
    let kernel: Vec<usize> = (0..g.order()).filter(|&i| images[i].is_identity()).collect();
    let mut image_gens: Vec<MoebiusMap> = Vec::new();
    for gen in g.generators() {
        image_gens.push(induced_unchecked(gen, p)?);
    }
    let image = FiniteGroup::closure(MoebiusMap::identity(), &image_gens, g.order().max(1))?;
    let distinct: HashSet<&MoebiusMap> = images.iter().collect();
    if distinct.len() != image.order() || kernel.len() * image.order() != g.order() {
        return Err(GroupError::Invalid(format!("|G| = {} but |G′|·|G″| = {}·{}", g.order(), kernel.len(), image.order())));
    }
    let table = g.table();
    let mut kset = ElementSet::empty(g.order());
    for &k in &kernel {
        kset.insert(k);
    }
    let itable = image.table();
    let mut all = ElementSet::empty(image.order());
    for i in 0..image.order() {
        all.insert(i);
    }
    Ok(AutDecomposition {
        kernel_fingerprint: GroupFingerprint::of(&table, &kset),
        image_fingerprint: GroupFingerprint::of(&itable, &all),
        kernel,
        image,
    })
}

#[derive(Clone, Debug)]
pub struct MoebiusStabilizer {
    pub group: FiniteGroup<MoebiusMap>,
    pub fingerprint: GroupFingerprint,
}

/// All Möbius maps permuting the labelled points and preserving labels.
pub fn moebius_stabilizer(points: &[(P1, Vec<u32>)]) -> Result<MoebiusStabilizer, GroupError> {
    if points.len() < 3 {
        return Err(GroupError::Indeterminate);
    }
    let lookup: HashMap<&P1, &Vec<u32>> = points.iter().map(|(r, b)| (r, b)).collect();
    if lookup.len() != points.len() {
        return Err(GroupError::Invalid("repeated point".into()));
    }
    let src = [points[0].0.clone(), points[1].0.clone(), points[2].0.clone()];
    let same_label = |k: usize| -> Vec<usize> { (0..points.len()).filter(|&j| points[j].1 == points[k].1).collect() };
    let mut found: Vec<MoebiusMap> = Vec::new();
    for &a in &same_label(0) {
        for &b in &same_label(1) {
            for &c in &same_label(2) {
                if a == b || b == c || a == c {
                    continue;
                }
                let dst = [points[a].0.clone(), points[b].0.clone(), points[c].0.clone()];
                let m = MoebiusMap::from_triples(&src, &dst)?;
                if points.iter().all(|(r, l)| lookup.get(&m.apply(r)) == Some(&l)) {
                    found.push(m);
                }
            }
        }
    }
    let group = FiniteGroup::closure(MoebiusMap::identity(), &found, found.len().max(1))?;
    let table = group.table();
    let mut all = ElementSet::empty(group.order());
    for i in 0..group.order() {
        all.insert(i);
    }
    Ok(MoebiusStabilizer { fingerprint: GroupFingerprint::of(&table, &all), group })
}

fn projective_order(m: &MonomialMap, cap: usize) -> Option<usize> {
    let id = MonomialMap::identity(m.size());
    let mut cur = m.clone();
    for k in 1..=cap {
        if cur == id {
            return Some(k);
        }
        cur = cur.compose(m);
    }
    None
}

#[derive(Clone, Debug)]
pub struct LiftReport {
    pub lifts: Vec<MonomialMap>,
    /// projective order ↦ number of lifts
    pub orders: BTreeMap<usize, usize>,
    /// No monomial lift with scales in the searched field.
    pub empty: bool,
}

/// Monomial maps inducing `m` on a diagonal pencil with pairwise distinct roots.
pub fn lift_moebius(p: &Pencil, m: &MoebiusMap, opts: &Options) -> Result<LiftReport, GroupError> {
    let n = p.size();
    let diag = |q: &SymMatrix| (0..n).all(|i| (0..n).all(|j| i == j || q.get(i, j).is_zero()));
    if !diag(p.q1()) || !diag(p.q2()) {
        return Err(GroupError::Unsupported("lifts are computed for diagonal pencils only".into()));
    }
    let lines: Vec<P1> = (0..n).map(|j| P1::from_pair(p.q1().get(j, j).clone(), p.q2().get(j, j).clone())).collect::<Result<_, _>>()?;
    if lines.iter().collect::<HashSet<_>>().len() != n {
        return Err(GroupError::Unsupported("diagonal pencil with a repeated root".into()));
    }
    let empty = || LiftReport { lifts: vec![], orders: BTreeMap::new(), empty: true };
    // x ↦ Tx must pull λQ₁+μQ₂ back along m⁻¹
    let [[b11, b12], [b21, b22]] = m.inverse().entries().clone();
    let mut perm = vec![0usize; n];
    let mut rho = vec![Cyclo::zero(); n];
    for j in 0..n {
        let (a, b) = (p.q1().get(j, j), p.q2().get(j, j));
        let w = (&b11 * a + &b21 * b, &b12 * a + &b22 * b);
        let Some(k) = lines.iter().position(|v| (&w.0 * v.mu() - &w.1 * v.lambda()).is_zero()) else {
            return Ok(empty());
        };
        perm[j] = k;
        let (qa, qb) = (p.q1().get(k, k), p.q2().get(k, k));
        rho[j] = if qa.is_zero() { &w.1 / qb } else { &w.0 / qa };
    }
    let j0 = perm.iter().position(|&k| k == 0).expect("perm is onto");
    let conductor = lcm(p.conductor(), m.entries().iter().flatten().fold(1, |c, x| lcm(c, x.conductor()) as u32)) as u32;
    let mut base = vec![Cyclo::one(); n];
    for j in 0..n {
        let sq = &rho[j] / &rho[j0];
        let Some(r) = sqrt_in_field(&sq, conductor, opts.denom_bound) else {
            return Ok(empty());
        };
        base[perm[j]] = r;
    }
    let others: Vec<usize> = (1..n).collect();
    let mut lifts = Vec::with_capacity(1 << others.len());
    for mask in 0u32..(1 << others.len()) {
        let scales: Vec<Cyclo> = (0..n)
            .map(|i| match others.iter().position(|&o| o == i) {
                Some(bit) if mask >> bit & 1 == 1 => -&base[i],
                _ => base[i].clone(),
            })
            .collect();
        let t = MonomialMap::new(perm.clone(), scales)?;
        if induced_unchecked(&t, p)? != *m {
            return Err(GroupError::Invalid(format!("lift {t} does not induce {m}")));
        }
        lifts.push(t);
    }
    let mut orders = BTreeMap::new();
    for t in &lifts {
        let o = projective_order(t, DEFAULT_ORDER_CAP).ok_or(GroupError::TooLarge { cap: DEFAULT_ORDER_CAP })?;
        *orders.entry(o).or_insert(0) += 1;
    }
    Ok(LiftReport { lifts, orders, empty: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groups::named;

    #[test]
    fn cycle_preserves_c5_diagonal_and_transposition_does_not() {
        let p = fixtures::c5_diagonal();
        assert!(preserves_pencil(&named::cycle5(), &p));
        assert!(preserves_pencil(&MonomialMap::sign_change(6, &[0]), &p));
        let t = MonomialMap::permutation(vec![1, 0, 2, 3, 4, 5]).unwrap();
        assert!(!preserves_pencil(&t, &p));
        let mob = induced_moebius(&named::cycle5(), &p, &Options::default()).unwrap();
        assert_eq!(mob.order(10), Some(5));
    }

    #[test]
    fn max_cl_generators() {
        let p = fixtures::max_cl();
        let [g1, g2] = <[MonomialMap; 2]>::try_from(named::max_cl()).unwrap();
        let opts = Options::default();
        assert_eq!(induced_moebius(&g1, &p, &opts).unwrap().order(10), Some(3));
        assert_eq!(induced_moebius(&g2, &p, &opts).unwrap(), MoebiusMap::swap());
    }

    #[test]
    fn identity_lifts_are_sign_changes() {
        let p = fixtures::diag6();
        let r = lift_moebius(&p, &MoebiusMap::identity(), &Options::default()).unwrap();
        assert_eq!(r.lifts.len(), 32);
        assert!(r.orders.keys().all(|&o| o <= 2));
    }
}
