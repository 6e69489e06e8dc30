use std::fmt;

use crate::algebra::{AlgebraError, Cyclo, P1};

/// Automorphism of P¹ acting on `(λ:μ)` as a column vector; first nonzero entry is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MoebiusMap {
    m: [[Cyclo; 2]; 2],
}

impl MoebiusMap {
    pub fn new(a: Cyclo, b: Cyclo, c: Cyclo, d: Cyclo) -> Result<MoebiusMap, AlgebraError> {
        if (&a * &d - &b * &c).is_zero() {
            return Err(AlgebraError::Singular);
        }
        let pivot = [&a, &b, &c, &d].into_iter().find(|x| !x.is_zero()).unwrap().inv()?;
        Ok(MoebiusMap { m: [[&a * &pivot, &b * &pivot], [&c * &pivot, &d * &pivot]] })
    }

    pub fn identity() -> MoebiusMap {
        MoebiusMap { m: [[Cyclo::one(), Cyclo::zero()], [Cyclo::zero(), Cyclo::one()]] }
    }

    /// `(λ:μ) ↦ (λ + kμ : μ)`.
    pub fn shift(k: i64) -> MoebiusMap {
        MoebiusMap::new(Cyclo::one(), Cyclo::from_int(k), Cyclo::zero(), Cyclo::one()).unwrap()
    }

    /// `(λ:μ) ↦ (μ:λ)`.
    pub fn swap() -> MoebiusMap {
        MoebiusMap::new(Cyclo::zero(), Cyclo::one(), Cyclo::one(), Cyclo::zero()).unwrap()
    }

    pub fn entries(&self) -> &[[Cyclo; 2]; 2] {
        &self.m
    }

    pub fn det(&self) -> Cyclo {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn apply(&self, p: &P1) -> P1 {
        let [[a, b], [c, d]] = &self.m;
        let (l, m) = (p.lambda(), p.mu());
        P1::from_pair(a * l + b * m, c * l + d * m).expect("invertible map")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        let (x, y) = (&self.m, &other.m);
        let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
        MoebiusMap::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1)).expect("product of invertible maps")
    }

    pub fn inverse(&self) -> MoebiusMap {
        let [[a, b], [c, d]] = &self.m;
        MoebiusMap::new(d.clone(), -b, -c, a.clone()).expect("invertible map")
    }

    pub fn is_identity(&self) -> bool {
        *self == MoebiusMap::identity()
    }

    /// Projective order, `None` past `cap`.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut cur = self.clone();
        for k in 1..=cap {
            if cur.is_identity() {
                return Some(k);
            }
            cur = cur.compose(self);
        }
        None
    }

    /// Some map sending `(1:0), (0:1)` to `p, q` (distinct).
    fn from_columns(p: &P1, q: &P1) -> Result<MoebiusMap, AlgebraError> {
        MoebiusMap::new(p.lambda().clone(), q.lambda().clone(), p.mu().clone(), q.mu().clone())
    }

    /// The map sending `(1:0), (0:1), (1:1)` to three distinct points.
    fn standard_to(p: &[P1; 3]) -> Result<MoebiusMap, AlgebraError> {
        // solve α·p0 + β·p1 = p2
        let [p0, p1, p2] = p;
        let det = p0.lambda() * p1.mu() - p1.lambda() * p0.mu();
        if det.is_zero() {
            return Err(AlgebraError::Singular);
        }
        let alpha = (p2.lambda() * p1.mu() - p1.lambda() * p2.mu()) / &det;
        let beta = (p0.lambda() * p2.mu() - p2.lambda() * p0.mu()) / &det;
        MoebiusMap::new(p0.lambda() * &alpha, p1.lambda() * &beta, p0.mu() * &alpha, p1.mu() * &beta)
    }

    /// Unique map with `src[i] ↦ dst[i]`; both triples must be pairwise distinct.
    pub fn from_triples(src: &[P1; 3], dst: &[P1; 3]) -> Result<MoebiusMap, AlgebraError> {
        Ok(MoebiusMap::standard_to(dst)?.compose(&MoebiusMap::standard_to(src)?.inverse()))
    }

    /// A map with `src[i] ↦ dst[i]` for one or two pairs of distinct points.
    pub fn sending(src: &[P1], dst: &[P1]) -> Result<MoebiusMap, AlgebraError> {
        let zero_one = P1::from_pair(Cyclo::zero(), Cyclo::one())?;
        let complete = |p: &P1| if p.lambda().is_zero() { P1::infinity() } else { zero_one.clone() };
        match (src, dst) {
            ([a], [b]) => {
                let ma = MoebiusMap::from_columns(a, &complete(a))?;
                let mb = MoebiusMap::from_columns(b, &complete(b))?;
                Ok(mb.compose(&ma.inverse()))
            }
            ([a1, a2], [b1, b2]) => {
                let ma = MoebiusMap::from_columns(a1, a2)?;
                let mb = MoebiusMap::from_columns(b1, b2)?;
                Ok(mb.compose(&ma.inverse()))
            }
            _ => Err(AlgebraError::Shape("expected one or two point pairs".into())),
        }
    }
}

impl fmt::Display for MoebiusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = &self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(l: i64, m: i64) -> P1 {
        P1::from_pair(Cyclo::from_int(l), Cyclo::from_int(m)).unwrap()
    }

    #[test]
    fn triples_and_inverse() {
        let src = [pt(1, 0), pt(0, 1), pt(1, 1)];
        let dst = [pt(2, 1), pt(1, -1), pt(3, 5)];
        let m = MoebiusMap::from_triples(&src, &dst).unwrap();
        for (s, d) in src.iter().zip(&dst) {
            assert_eq!(m.apply(s), *d);
        }
        assert!(m.compose(&m.inverse()).is_identity());
        let two = MoebiusMap::sending(&[pt(0, 1), pt(1, 1)], &[pt(1, 2), pt(1, 0)]).unwrap();
        assert_eq!(two.apply(&pt(0, 1)), pt(1, 2));
        assert_eq!(two.apply(&pt(1, 1)), pt(1, 0));
        let one = MoebiusMap::sending(&[pt(0, 1)], &[pt(1, 4)]).unwrap();
        assert_eq!(one.apply(&pt(0, 1)), pt(1, 4));
    }

    #[test]
    fn orders() {
        assert_eq!(MoebiusMap::swap().order(10), Some(2));
        assert_eq!(MoebiusMap::shift(1).order(50), None);
        let rot = MoebiusMap::new(Cyclo::zeta(5), Cyclo::zero(), Cyclo::zero(), Cyclo::one()).unwrap();
        assert_eq!(rot.order(10), Some(5));
    }
}
