//! Quadratic extensions K(√δ) of a cyclotomic field.

use std::fmt;
use std::hash::{Hash, Hasher};

use super::cyclo::Cyclo;
use super::scalar::Scalar;
use super::AlgebraError;

/// `a + b·√δ`. When `b = 0` the radicand is irrelevant and stored as zero.
#[derive(Clone, Debug)]
pub struct QuadExt {
    a: Cyclo,
    b: Cyclo,
    radicand: Cyclo,
}

impl QuadExt {
    pub fn new(a: Cyclo, b: Cyclo, radicand: Cyclo) -> QuadExt {
        if b.is_zero() || radicand.is_zero() {
            return QuadExt { a, b: Cyclo::zero(), radicand: Cyclo::zero() };
        }
        QuadExt { a, b, radicand }
    }

    pub fn base(a: Cyclo) -> QuadExt {
        QuadExt::new(a, Cyclo::zero(), Cyclo::zero())
    }

    /// `√δ` itself.
    pub fn sqrt_of(radicand: Cyclo) -> QuadExt {
        QuadExt::new(Cyclo::zero(), Cyclo::one(), radicand)
    }

    pub fn rational_part(&self) -> &Cyclo {
        &self.a
    }

    pub fn irrational_part(&self) -> &Cyclo {
        &self.b
    }

    /// Radicand, or `None` when the value lies in the base field.
    pub fn radicand(&self) -> Option<&Cyclo> {
        if self.b.is_zero() {
            None
        } else {
            Some(&self.radicand)
        }
    }

    pub fn to_base(&self) -> Option<Cyclo> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    fn joint_radicand(&self, other: &QuadExt) -> Result<Cyclo, AlgebraError> {
        match (self.radicand(), other.radicand()) {
            (None, None) => Ok(Cyclo::zero()),
            (Some(d), None) | (None, Some(d)) => Ok(d.clone()),
            (Some(d), Some(e)) if d == e => Ok(d.clone()),
            (Some(d), Some(e)) => Err(AlgebraError::RadicandMismatch { left: d.to_string(), right: e.to_string() }),
        }
    }

    pub fn checked_add(&self, other: &QuadExt) -> Result<QuadExt, AlgebraError> {
        let d = self.joint_radicand(other)?;
        Ok(QuadExt::new(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_mul(&self, other: &QuadExt) -> Result<QuadExt, AlgebraError> {
        let d = self.joint_radicand(other)?;
        let a = &self.a * &other.a + &(&self.b * &other.b) * &d;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadExt::new(a, b, d))
    }

    /// `a - b√δ`.
    pub fn conjugate(&self) -> QuadExt {
        QuadExt::new(self.a.clone(), -&self.b, self.radicand.clone())
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &QuadExt) -> bool {
        // representation is unique once √δ ∉ K, which holds for every value we build
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.radicand == other.radicand)
    }
}

impl Eq for QuadExt {}

impl Hash for QuadExt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radicand() {
            None => write!(f, "{}", self.a),
            Some(d) => {
                if self.a.is_zero() {
                    write!(f, "({})*sqrt({})", self.b, d)
                } else {
                    write!(f, "{} + ({})*sqrt({})", self.a, self.b, d)
                }
            }
        }
    }
}

impl Scalar for QuadExt {
    fn zero() -> Self {
        QuadExt::base(Cyclo::zero())
    }
    fn one() -> Self {
        QuadExt::base(Cyclo::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negate())
    }
    fn times(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
    fn negate(&self) -> Self {
        QuadExt::new(-&self.a, -&self.b, self.radicand.clone())
    }
    fn try_inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        // (a + b√δ)⁻¹ = (a - b√δ) / (a² - b²δ)
        let norm = &self.a * &self.a - &(&self.b * &self.b) * &self.radicand;
        let ninv = norm.inv()?;
        Ok(QuadExt::new(&self.a * &ninv, -(&self.b * &ninv), self.radicand.clone()))
    }
    fn from_cyclo(c: &Cyclo) -> Self {
        QuadExt::base(c.clone())
    }
}
