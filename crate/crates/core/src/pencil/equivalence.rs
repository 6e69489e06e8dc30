use super::{segre_analysis, MoebiusMap, Options, Pencil, PencilError};
use crate::algebra::{SymMatrix, P1};

/// Result of re-expressing a pencil in a new basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    pub pencil: Pencil,
    /// The map actually used; differs from the requested one when `Q₂′` came out singular.
    pub map: MoebiusMap,
    pub substituted: bool,
}

/// New basis `Q₁′ = aQ₁ + cQ₂`, `Q₂′ = bQ₁ + dQ₂` for `m = [[a, b], [c, d]]`.
///
/// Members satisfy `Q′(λ′,μ′) = Q(m·(λ′,μ′))`, so discriminant roots move by `m⁻¹`.
pub fn change_basis(p: &Pencil, m: &MoebiusMap) -> Result<BasisChange, PencilError> {
    let mut used = m.clone();
    let mut substituted = false;
    for k in 0.. {
        if k > 0 {
            used = m.compose(&MoebiusMap::shift(k));
            substituted = true;
        }
        let [[a, b], [c, d]] = used.entries();
        let q2 = SymMatrix::combine(b, p.q1(), d, p.q2());
        if q2.matrix().det().is_zero() {
            continue;
        }
        let q1 = SymMatrix::combine(a, p.q1(), c, p.q2());
        let pencil = Pencil::with_conductor(q1, q2, p.conductor())?;
        return Ok(BasisChange { pencil, map: used, substituted });
    }
    unreachable!()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// A map carrying the labelled roots of the first discriminant onto those of the second.
    /// `degenerate` marks discriminants with at most two roots, whose Möbius stabilizer is infinite.
    Found { map: MoebiusMap, degenerate: bool },
    NotEquivalent,
}

impl Equivalence {
    pub fn map(&self) -> Option<&MoebiusMap> {
        match self {
            Equivalence::Found { map, .. } => Some(map),
            Equivalence::NotEquivalent => None,
        }
    }
}

fn carries(m: &MoebiusMap, from: &[(P1, Vec<u32>)], to: &[(P1, Vec<u32>)]) -> bool {
    from.iter().all(|(r, lab)| {
        let img = m.apply(r);
        to.iter().any(|(s, l2)| *s == img && l2 == lab)
    })
}

pub fn pencils_equivalent(p1: &Pencil, p2: &Pencil, opts: &Options) -> Result<Equivalence, PencilError> {
    if p1.size() != p2.size() {
        return Ok(Equivalence::NotEquivalent);
    }
    let a1 = segre_analysis(p1, opts)?;
    let a2 = segre_analysis(p2, opts)?;
    if a1.symbol != a2.symbol {
        return Ok(Equivalence::NotEquivalent);
    }
    let l1 = a1.labelled_roots()?;
    let l2 = a2.labelled_roots()?;
    let r = l1.len();
    if r <= 2 {
        let src: Vec<P1> = l1.iter().map(|x| x.0.clone()).collect();
        let orders: &[&[usize]] = if r == 1 { &[&[0]] } else { &[&[0, 1], &[1, 0]] };
        for ord in orders {
            if ord.iter().enumerate().all(|(i, &j)| l1[i].1 == l2[j].1) {
                let dst: Vec<P1> = ord.iter().map(|&j| l2[j].0.clone()).collect();
                let map = MoebiusMap::sending(&src, &dst)?;
                return Ok(Equivalence::Found { map, degenerate: true });
            }
        }
        return Ok(Equivalence::NotEquivalent);
    }
    let src = [l1[0].0.clone(), l1[1].0.clone(), l1[2].0.clone()];
    for i in 0..r {
        if l2[i].1 != l1[0].1 {
            continue;
        }
        for j in (0..r).filter(|&j| j != i && l2[j].1 == l1[1].1) {
            for k in (0..r).filter(|&k| k != i && k != j && l2[k].1 == l1[2].1) {
                let dst = [l2[i].0.clone(), l2[j].0.clone(), l2[k].0.clone()];
                let m = MoebiusMap::from_triples(&src, &dst)?;
                if carries(&m, &l1, &l2) {
                    return Ok(Equivalence::Found { map: m, degenerate: false });
                }
            }
        }
    }
    Ok(Equivalence::NotEquivalent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Cyclo;
    use crate::pencil::segre_symbol;

    fn diag(v: &[i64]) -> SymMatrix {
        SymMatrix::diagonal(&v.iter().map(|&x| Cyclo::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn swap_exchanges_matrices() {
        let p = Pencil::new(diag(&[1, 2, 3]), diag(&[1, 1, 1])).unwrap();
        let bc = change_basis(&p, &MoebiusMap::swap()).unwrap();
        assert!(!bc.substituted);
        assert_eq!(bc.pencil.q1(), p.q2());
        assert_eq!(bc.pencil.q2(), p.q1());
        assert_eq!(change_basis(&p, &MoebiusMap::identity()).unwrap().pencil, p);
    }

    #[test]
    fn singular_target_is_substituted() {
        // Q₁ is singular, so the swap needs a nudge
        let p = Pencil::new(diag(&[0, 2, 3]), diag(&[1, 1, 1])).unwrap();
        let bc = change_basis(&p, &MoebiusMap::swap()).unwrap();
        assert!(bc.substituted);
        let opts = Options::default();
        assert_eq!(segre_symbol(&bc.pencil, &opts).unwrap(), segre_symbol(&p, &opts).unwrap());
    }

    #[test]
    fn equivalent_after_basis_change() {
        let opts = Options::default();
        let p = Pencil::new(diag(&[1, 2, 3, 5]), diag(&[1, 1, 1, 1])).unwrap();
        let m = MoebiusMap::new(Cyclo::from_int(2), Cyclo::from_int(1), Cyclo::from_int(1), Cyclo::from_int(3)).unwrap();
        let q = change_basis(&p, &m).unwrap().pencil;
        match pencils_equivalent(&p, &q, &opts).unwrap() {
            Equivalence::Found { degenerate, .. } => assert!(!degenerate),
            Equivalence::NotEquivalent => panic!("expected a map"),
        }
        let other = Pencil::new(diag(&[1, 2, 3, 4]), diag(&[1, 1, 1, 1])).unwrap();
        // cross-ratios differ
        assert_eq!(pencils_equivalent(&p, &other, &opts).unwrap(), Equivalence::NotEquivalent);
    }
}
