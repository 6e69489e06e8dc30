//! Field abstraction shared by cyclotomic numbers and their quadratic extensions.

use std::fmt;
use std::hash::Hash;

use super::cyclo::Cyclo;
use super::AlgebraError;

/// Exact field element usable in matrices and projective points.
pub trait Scalar: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    fn try_inv(&self) -> Result<Self, AlgebraError>;
    fn from_cyclo(c: &Cyclo) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn divide(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        Ok(self.times(&rhs.try_inv()?))
    }
}

impl Scalar for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Result<Self, AlgebraError> {
        self.inv()
    }
    fn from_cyclo(c: &Cyclo) -> Self {
        c.clone()
    }
    fn is_one(&self) -> bool {
        Cyclo::is_one(self)
    }
}
