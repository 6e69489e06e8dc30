//! Dense univariate polynomials over Q(ζ_N).

use std::fmt;

use super::cyclo::Cyclo;

/// Ascending coefficients, trailing zeros trimmed; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Cyclo>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Cyclo>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Cyclo) -> Poly {
        Poly::new(vec![c])
    }

    pub fn one() -> Poly {
        Poly::constant(Cyclo::one())
    }

    /// `t - r`.
    pub fn linear_root(r: &Cyclo) -> Poly {
        Poly::new(vec![-r, Cyclo::one()])
    }

    pub fn from_roots(roots: &[Cyclo]) -> Poly {
        roots.iter().fold(Poly::one(), |acc, r| acc.mul(&Poly::linear_root(r)))
    }

    pub fn coeffs(&self) -> &[Cyclo] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Cyclo {
        self.coeffs.get(k).cloned().unwrap_or_else(Cyclo::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Cyclo> {
        self.coeffs.last()
    }

    /// Maximal conductor among the coefficients.
    pub fn conductor(&self) -> u32 {
        self.coeffs.iter().map(|c| c.conductor()).fold(1, |a, b| super::cyclo::lcm(a, b) as u32)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Cyclo::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Cyclo) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Cyclo::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = &r[k + j] - &(&c * dj);
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    /// Quotient when the division is exact.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Cyclo::from_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Cyclo) -> Cyclo {
        let mut acc = Cyclo::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Number of times `f` divides `self` (self nonzero, f nonconstant).
    pub fn multiplicity_of(&self, f: &Poly) -> u32 {
        assert!(!self.is_zero() && !f.is_constant());
        let mut m = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(f) {
            cur = q;
            m += 1;
        }
        m
    }

    /// Squarefree part (monic).
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return Poly::one();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).unwrap().monic()
    }

    /// Yun's algorithm: `self = c · ∏ a_i^i` with `a_i` squarefree and coprime.
    /// Returns `(i, a_i)` for nonconstant factors.
    pub fn squarefree_decomposition(&self) -> Vec<(u32, Poly)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_div(&a0).unwrap();
        let mut c = fp.exact_div(&a0).unwrap();
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((i, a.clone()));
            }
            b = b.exact_div(&a).unwrap();
            if b.is_constant() {
                break;
            }
            c = d.exact_div(&a).unwrap();
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Numeric coefficients under the embedding `ζ_N ↦ e^{2πik/N}` at conductor `n`.
    pub fn embed(&self, n: u32, k: u32) -> Vec<num::complex::Complex64> {
        self.coeffs
            .iter()
            .map(|c| c.promote_capped(n, u32::MAX).expect("coefficient outside working field").embed(k))
            .collect()
    }
}

/// Refine a list of polynomials into pairwise coprime, squarefree, monic factors
/// such that every input's squarefree part is a product of them.
pub fn coprime_basis(inputs: &[Poly]) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for p in inputs {
        let mut rest = p.squarefree_part();
        if rest.is_constant() {
            continue;
        }
        let mut next = Vec::with_capacity(basis.len() + 2);
        for b in basis.drain(..) {
            if rest.is_constant() {
                next.push(b);
                continue;
            }
            let g = b.gcd(&rest);
            if g.is_constant() {
                next.push(b);
                continue;
            }
            let bq = b.exact_div(&g).unwrap();
            rest = rest.exact_div(&g).unwrap();
            if !bq.is_constant() {
                next.push(bq.monic());
            }
            next.push(g);
        }
        if !rest.is_constant() {
            next.push(rest.monic());
        }
        basis = next;
    }
    basis
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
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
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*t", c)?,
                _ => write!(f, "({})*t^{}", c, k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Poly {
        Poly::new(v.iter().map(|&x| Cyclo::from_int(x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = ints(&[-1, 0, 1]); // t^2 - 1
        let b = ints(&[1, 1]); // t + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&ints(&[1, 2, 1])), b);
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)(t-2)^2(t-3)^3
        let f = Poly::from_roots(&[1, 2, 2, 3, 3, 3].map(Cyclo::from_int));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0].1, ints(&[-1, 1]));
        assert_eq!(dec[1].1, ints(&[-2, 1]));
        assert_eq!(dec[2].1, ints(&[-3, 1]));
        assert_eq!(f.multiplicity_of(&ints(&[-3, 1])), 3);
    }

    #[test]
    fn coprime_refinement() {
        let p = Poly::from_roots(&[1, 2].map(Cyclo::from_int));
        let q = Poly::from_roots(&[2, 3].map(Cyclo::from_int));
        let basis = coprime_basis(&[p, q]);
        assert_eq!(basis.len(), 3);
        let degs: u32 = basis.iter().map(|b| b.degree().unwrap() as u32).sum();
        assert_eq!(degs, 3);
    }
}
