//! Homogeneous binary forms in (λ, μ).

use std::fmt;

use super::cyclo::Cyclo;
use super::point::P1;
use super::poly::Poly;
use super::AlgebraError;

/// `Σ c_k λ^k μ^{D-k}`, coefficient of `λ^k` at index `k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BivariateForm {
    degree: usize,
    coeffs: Vec<Cyclo>,
    zero: bool,
}

impl BivariateForm {
    pub fn new(coeffs: Vec<Cyclo>) -> BivariateForm {
        assert!(!coeffs.is_empty(), "a form needs at least one coefficient");
        let zero = coeffs.iter().all(|c| c.is_zero());
        BivariateForm { degree: coeffs.len() - 1, coeffs, zero }
    }

    pub fn zero(degree: usize) -> BivariateForm {
        BivariateForm::new(vec![Cyclo::zero(); degree + 1])
    }

    /// Homogenize `p(t)` (with `t = λ/μ`) to degree `degree`.
    pub fn from_dehomogenized(p: &Poly, degree: usize) -> BivariateForm {
        assert!(p.degree().is_none_or(|d| d <= degree), "polynomial degree exceeds form degree");
        BivariateForm::new((0..=degree).map(|k| p.coeff(k)).collect())
    }

    /// `μ̄λ − λ̄μ`, vanishing at the given point.
    pub fn linear_factor(root: &P1) -> BivariateForm {
        BivariateForm::new(vec![-root.lambda().clone(), root.mu().clone()])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// `f(λ, 1)`.
    pub fn dehomogenize(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    /// Multiplicity of the root `(1:0)`, i.e. the power of μ dividing f.
    pub fn infinity_multiplicity(&self) -> Result<u32, AlgebraError> {
        if self.zero {
            return Err(AlgebraError::ZeroForm);
        }
        let deg = self.dehomogenize().degree().unwrap();
        Ok((self.degree - deg) as u32)
    }

    pub fn eval(&self, l: &Cyclo, m: &Cyclo) -> Cyclo {
        let mut acc = Cyclo::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &(c * &(l.pow(k as i64) * m.pow((self.degree - k) as i64)));
            }
        }
        acc
    }

    pub fn mul(&self, other: &BivariateForm) -> BivariateForm {
        let p = self.dehomogenize().mul(&other.dehomogenize());
        BivariateForm::from_dehomogenized(&p, self.degree + other.degree)
    }

    /// Exact division by `(μ̄λ − λ̄μ)`; `None` if the remainder is nonzero.
    pub fn divide_linear(&self, root: &P1) -> Option<BivariateForm> {
        if self.degree == 0 {
            return None;
        }
        let (l, m) = (root.lambda(), root.mu());
        if m.is_zero() {
            // factor is λ·0 − λ̄μ ∝ μ: shift coefficients
            if !self.coeffs[self.degree].is_zero() {
                return None;
            }
            return Some(BivariateForm::new(self.coeffs[..self.degree].to_vec()));
        }
        // divide by (λ − t₀μ) with t₀ = λ̄/μ̄
        let t0 = l / m;
        let divisor = Poly::linear_root(&t0);
        let (q, r) = self.dehomogenize().div_rem(&divisor);
        if !r.is_zero() {
            return None;
        }
        Some(BivariateForm::from_dehomogenized(&q, self.degree - 1))
    }

    /// Largest `m` with `(μ̄λ − λ̄μ)^m | f`.
    pub fn multiplicity(&self, root: &P1) -> Result<u32, AlgebraError> {
        if self.zero {
            return Err(AlgebraError::ZeroForm);
        }
        let mut cur = self.clone();
        let mut m = 0;
        while let Some(q) = cur.divide_linear(root) {
            cur = q;
            m += 1;
        }
        Ok(m)
    }

    /// Power of an irreducible-or-squarefree factor `g(λ/μ)` in `f`, ignoring the point at infinity.
    pub fn factor_multiplicity(&self, g: &Poly) -> Result<u32, AlgebraError> {
        if self.zero {
            return Err(AlgebraError::ZeroForm);
        }
        Ok(self.dehomogenize().multiplicity_of(g))
    }

    /// Homogeneous gcd.
    pub fn gcd(&self, other: &BivariateForm) -> BivariateForm {
        if self.zero {
            return other.clone();
        }
        if other.zero {
            return self.clone();
        }
        let g = self.dehomogenize().gcd(&other.dehomogenize());
        let inf = self.infinity_multiplicity().unwrap().min(other.infinity_multiplicity().unwrap()) as usize;
        BivariateForm::from_dehomogenized(&g, g.degree().unwrap() + inf)
    }
}

/// Number of roots of `f` counted with multiplicity.
pub fn form_multiplicity(f: &BivariateForm, root: &P1) -> Result<u32, AlgebraError> {
    f.multiplicity(root)
}

impl fmt::Display for BivariateForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            let j = self.degree - k;
            match k {
                0 => {}
                1 => write!(f, "*l")?,
                _ => write!(f, "*l^{}", k)?,
            }
            match j {
                0 => {}
                1 => write!(f, "*m")?,
                _ => write!(f, "*m^{}", j)?,
            }
        }
        Ok(())
    }
}
