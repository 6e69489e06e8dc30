use std::fmt;

use serde::Serialize;

use super::classify::bracket_violations;
use super::ThreefoldError;
use crate::algebra::recognize::sqrt_in_field;
use crate::algebra::{Cyclo, ProjectivePoint, QuadExt, Scalar};
use crate::pencil::{segre_analysis, Options, Pencil, SegreSymbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SingularKind {
    /// Vertex of the corank-1 cone of a bracket `(a)`, `a > 1`.
    ConeVertex,
    /// Point where the vertex line of a bracket `(a,1)` meets another quadric.
    VertexLineMeetsQuadric,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPointReport {
    pub point: ProjectivePoint<QuadExt>,
    /// Index into the brackets of the pencil's Segre symbol.
    pub source_bracket: usize,
    pub kind: SingularKind,
}

impl SingularPointReport {
    /// Field of definition, e.g. `Q(z3)` or `Q(z4)(sqrt(2))`.
    pub fn field(&self, conductor: u32) -> String {
        match self.point.coords().iter().find_map(|c| c.radicand().cloned()) {
            None => format!("Q(z{conductor})"),
            Some(d) => format!("Q(z{conductor})(sqrt({d}))"),
        }
    }
}

pub(crate) fn to_quad(v: &[Cyclo]) -> Vec<QuadExt> {
    v.iter().map(|c| QuadExt::base(c.clone())).collect()
}

pub(crate) fn on_both_quadrics<T: Scalar>(p: &Pencil, x: &[T]) -> bool {
    p.q1().bilinear(x, x).is_zero() && p.q2().bilinear(x, x).is_zero()
}

/// Exact test that `x` lies on `X` and `[∇Q₁; ∇Q₂]` has rank at most 1 there.
pub fn jacobian_rank_at_most_one<T: Scalar>(p: &Pencil, x: &[T]) -> bool {
    if !on_both_quadrics(p, x) {
        return false;
    }
    let grad = |q: &crate::algebra::SymMatrix| -> Vec<T> {
        (0..q.size())
            .map(|i| x.iter().enumerate().fold(T::zero(), |acc, (j, xj)| acc.plus(&T::from_cyclo(q.get(i, j)).times(xj))))
            .collect()
    };
    let (g1, g2) = (grad(p.q1()), grad(p.q2()));
    (0..g1.len()).all(|i| (i + 1..g1.len()).all(|j| g1[i].times(&g2[j]).minus(&g1[j].times(&g2[i])).is_zero()))
}

/// Singular points of `X = {Q₁ = Q₂ = 0}`, one group per bracket of length ≥ 2 or entry > 1.
pub fn singular_points(p: &Pencil, opts: &Options) -> Result<Vec<SingularPointReport>, ThreefoldError> {
    let analysis = segre_analysis(p, opts)?;
    let violations = bracket_violations(&analysis.symbol);
    if !violations.is_empty() {
        return Err(ThreefoldError::Unvalidated(violations));
    }
    let labelled = analysis.labelled_roots()?;
    let mut out = Vec::new();
    for (index, (root, bracket)) in labelled.iter().enumerate() {
        if bracket == &[1] {
            continue;
        }
        let ker = p.member(root.lambda(), root.mu()).matrix().kernel();
        if ker.len() != bracket.len() {
            return Err(ThreefoldError::Internal(format!("kernel at {root} has dimension {}, corank {}", ker.len(), bracket.len())));
        }
        let mut found: Vec<(Vec<QuadExt>, SingularKind)> = Vec::new();
        if ker.len() == 1 {
            found.push((to_quad(&ker[0]), SingularKind::ConeVertex));
        } else {
            // on the vertex line every member except the singular one restricts to Q₂ up to scale
            let (u, v) = (&ker[0], &ker[1]);
            let q = p.q2();
            let (a, b, c) = (q.bilinear(u, u), q.bilinear(u, v), q.bilinear(v, v));
            let disc = &b * &b - &a * &c;
            let comb = |s: &QuadExt, t: &QuadExt| -> Vec<QuadExt> {
                u.iter().zip(v).map(|(x, y)| s.times(&QuadExt::base(x.clone())).plus(&t.times(&QuadExt::base(y.clone())))).collect()
            };
            let base = |x: &Cyclo| QuadExt::base(x.clone());
            let kind = SingularKind::VertexLineMeetsQuadric;
            if disc.is_zero() {
                let pt = if a.is_zero() { to_quad(u) } else { comb(&base(&-&b), &base(&a)) };
                found.push((pt, kind));
            } else if a.is_zero() {
                found.push((to_quad(u), kind));
                found.push((comb(&base(&-&c), &base(&(&b * Cyclo::from_int(2)))), kind));
            } else {
                let root = match sqrt_in_field(&disc, p.conductor(), opts.denom_bound) {
                    Some(r) => QuadExt::base(r),
                    None => QuadExt::sqrt_of(disc.clone()),
                };
                for sign in [1, -1] {
                    let s = base(&-&b).plus(&root.times(&base(&Cyclo::from_int(sign))));
                    found.push((comb(&s, &base(&a)), kind));
                }
            }
            let expected = if bracket == &[1, 1] { 2 } else { 1 };
            if found.len() != expected {
                return Err(ThreefoldError::Internal(format!("bracket {bracket:?} gave {} points", found.len())));
            }
        }
        for (coords, kind) in found {
            if !jacobian_rank_at_most_one(p, &coords) {
                return Err(ThreefoldError::Internal(format!("point from bracket {bracket:?} fails the Jacobian test")));
            }
            out.push(SingularPointReport { point: ProjectivePoint::new(coords)?, source_bracket: index, kind });
        }
    }
    Ok(out)
}

/// Plane `{x_i = x_j = x_k = 0}` (0-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Plane {
    pub zeros: [usize; 3],
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k] = self.zeros;
        write!(f, "x{}=x{}=x{}=0", i + 1, j + 1, k + 1)
    }
}

impl Plane {
    /// The eight planes with one zero from each pair `{1,2}, {3,4}, {5,6}`.
    pub fn all() -> Vec<Plane> {
        let mut out = Vec::with_capacity(8);
        for i in 0..2 {
            for j in 2..4 {
                for k in 4..6 {
                    out.push(Plane { zeros: [i, j, k] });
                }
            }
        }
        out
    }

    /// Coordinates left free on the plane.
    pub fn free(&self) -> Vec<usize> {
        (0..6).filter(|c| !self.zeros.contains(c)).collect()
    }

    pub fn contained_in(&self, p: &Pencil) -> bool {
        let free = self.free();
        [p.q1(), p.q2()].iter().all(|q| free.iter().all(|&a| free.iter().all(|&b| q.get(a, b).is_zero())))
    }
}

/// The eight planes of the variety with symbol `[(1,1),(1,1),(1,1)]`, in its standard coordinates.
pub fn planes_on_max_cl(p: &Pencil, opts: &Options) -> Result<Vec<Plane>, ThreefoldError> {
    let symbol = segre_analysis(p, opts)?.symbol;
    let want: SegreSymbol = "[(1,1),(1,1),(1,1)]".parse().expect("literal symbol");
    if symbol != want {
        return Err(ThreefoldError::Unvalidated(vec![format!("symbol {symbol} is not {want}")]));
    }
    let planes = Plane::all();
    if planes.iter().all(|pl| pl.contained_in(p)) {
        Ok(planes)
    } else {
        Err(ThreefoldError::UnsupportedCoordinates)
    }
}
