//! Exact elements of cyclotomic fields Q(ζ_N).
//!
//! An element of conductor `N` is stored as an integer vector over a common
//! positive denominator, in the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced
//! modulo the N-th cyclotomic polynomial. Values of different conductors are
//! promoted to the lcm of their conductors on demand.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num::complex::Complex64;
use num::integer::Integer;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Largest conductor accepted by default.
pub const DEFAULT_CONDUCTOR_CAP: u32 = 120;

/// Conductors above this are refused even by internal promotion.
const HARD_CONDUCTOR_LIMIT: u32 = 5040;

pub(crate) struct FieldData {
    pub(crate) conductor: u32,
    pub(crate) degree: usize,
    /// Monic Φ_N, ascending coefficients, length `degree + 1`.
    pub(crate) modulus: Vec<i64>,
    /// `x^k mod Φ_N` for `k` in `0..N`.
    pub(crate) powers: Vec<Vec<i64>>,
}

fn field_registry() -> &'static Mutex<HashMap<u32, &'static FieldData>> {
    static REG: OnceLock<Mutex<HashMap<u32, &'static FieldData>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn field(n: u32) -> &'static FieldData {
    assert!(n >= 1, "conductor must be positive");
    if let Some(f) = field_registry().lock().unwrap().get(&n) {
        return f;
    }
    let phi = cyclotomic_polynomial(n);
    let degree = phi.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    if degree == 0 {
        unreachable!()
    }
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce
        let top = cur[degree - 1];
        for j in (1..degree).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..degree {
                cur[j] -= top * phi[j];
            }
        }
    }
    let data: &'static FieldData = Box::leak(Box::new(FieldData {
        conductor: n,
        degree,
        modulus: phi,
        powers,
    }));
    field_registry().lock().unwrap().entry(n).or_insert(data)
}

/// Integer coefficients of Φ_n, ascending.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    fn rec(n: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        // x^n - 1
        let mut num = vec![0i64; n as usize + 1];
        num[0] = -1;
        num[n as usize] = 1;
        for d in 1..n {
            if n.is_multiple_of(d) {
                let div = rec(d, memo);
                num = exact_int_div(&num, &div);
            }
        }
        memo.insert(n, num.clone());
        num
    }
    rec(n, &mut HashMap::new())
}

fn exact_int_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut q = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn moebius_mu(n: u32) -> i64 {
    let mut m = n;
    let mut p = 2;
    let mut sign = 1;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

pub fn lcm(a: u32, b: u32) -> u64 {
    (a as u64 / a.gcd(&b) as u64) * b as u64
}

/// Element of Q(ζ_N).
#[derive(Clone)]
pub struct Cyclo {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclo {
    fn from_parts(conductor: u32, num: Vec<BigInt>, den: BigInt) -> Cyclo {
        let mut c = Cyclo { conductor, num, den };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for a in &mut self.num {
                *a = -&*a;
            }
        }
        if self.num.iter().all(|a| a.is_zero()) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for a in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(a);
        }
        if !g.is_one() {
            for a in &mut self.num {
                *a = &*a / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn zero() -> Cyclo {
        Cyclo { conductor: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> Cyclo {
        Cyclo::from_int(1)
    }

    pub fn from_int(v: i64) -> Cyclo {
        Cyclo { conductor: 1, num: vec![BigInt::from(v)], den: BigInt::one() }
    }

    pub fn from_rational(r: &BigRational) -> Cyclo {
        Cyclo::from_parts(1, vec![r.numer().clone()], r.denom().clone())
    }

    pub fn from_frac(p: i64, q: i64) -> Cyclo {
        assert!(q != 0, "zero denominator");
        Cyclo::from_parts(1, vec![BigInt::from(p)], BigInt::from(q))
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(n: u32, k: i64) -> Cyclo {
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        Cyclo {
            conductor: n,
            num: f.powers[e].iter().map(|&v| BigInt::from(v)).collect(),
            den: BigInt::one(),
        }
    }

    pub fn zeta(n: u32) -> Cyclo {
        Cyclo::zeta_pow(n, 1)
    }

    /// Imaginary unit `ζ_4`.
    pub fn i() -> Cyclo {
        Cyclo::zeta(4)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coordinates.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|a| BigRational::new(a.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|a| a.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|a| a.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(|a| a.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// Promote to conductor `m`, which must be a multiple of the current one.
    pub fn promote(&self, m: u32) -> Result<Cyclo, AlgebraError> {
        self.promote_capped(m, DEFAULT_CONDUCTOR_CAP.max(self.conductor))
    }

    pub fn promote_capped(&self, m: u32, cap: u32) -> Result<Cyclo, AlgebraError> {
        if m > cap {
            return Err(AlgebraError::UnsupportedField { conductor: m as u64, cap });
        }
        if !m.is_multiple_of(self.conductor) {
            return Err(AlgebraError::NotSubfield { from: self.conductor, to: m });
        }
        Ok(self.promote_raw(m))
    }

    fn promote_raw(&self, m: u32) -> Cyclo {
        if m == self.conductor {
            return self.clone();
        }
        assert!(m <= HARD_CONDUCTOR_LIMIT, "conductor {m} beyond internal limit");
        let f = field(m);
        let step = (m / self.conductor) as usize;
        let mut out = vec![BigInt::zero(); f.degree];
        for (j, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let row = &f.powers[(j * step) % m as usize];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += a * r;
                }
            }
        }
        Cyclo::from_parts(m, out, self.den.clone())
    }

    fn common(&self, other: &Cyclo, cap: u32) -> Result<u32, AlgebraError> {
        if self.conductor == other.conductor {
            return Ok(self.conductor);
        }
        let l = lcm(self.conductor, other.conductor);
        if l > cap as u64 {
            return Err(AlgebraError::UnsupportedField { conductor: l, cap });
        }
        Ok(l as u32)
    }

    fn aligned(&self, other: &Cyclo, cap: u32) -> Result<(Cyclo, Cyclo), AlgebraError> {
        let m = self.common(other, cap)?;
        Ok((self.promote_raw(m), other.promote_raw(m)))
    }

    fn add_same(a: &Cyclo, b: &Cyclo, sub: bool) -> Cyclo {
        let num = a
            .num
            .iter()
            .zip(&b.num)
            .map(|(x, y)| {
                let l = x * &b.den;
                let r = y * &a.den;
                if sub {
                    l - r
                } else {
                    l + r
                }
            })
            .collect();
        Cyclo::from_parts(a.conductor, num, &a.den * &b.den)
    }

    fn mul_same(a: &Cyclo, b: &Cyclo) -> Cyclo {
        let f = field(a.conductor);
        let d = f.degree;
        if d == 1 {
            return Cyclo::from_parts(a.conductor, vec![&a.num[0] * &b.num[0]], &a.den * &b.den);
        }
        let mut conv = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    conv[i + j] += x * y;
                }
            }
        }
        let n = f.conductor as usize;
        let mut out: Vec<BigInt> = conv[..d].to_vec();
        for (k, c) in conv.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            let row = &f.powers[k % n];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += c * r;
                }
            }
        }
        Cyclo::from_parts(a.conductor, out, &a.den * &b.den)
    }

    pub fn checked_add(&self, other: &Cyclo, cap: u32) -> Result<Cyclo, AlgebraError> {
        if self.conductor == other.conductor {
            return Ok(Cyclo::add_same(self, other, false));
        }
        let (a, b) = self.aligned(other, cap)?;
        Ok(Cyclo::add_same(&a, &b, false))
    }

    pub fn checked_sub(&self, other: &Cyclo, cap: u32) -> Result<Cyclo, AlgebraError> {
        if self.conductor == other.conductor {
            return Ok(Cyclo::add_same(self, other, true));
        }
        let (a, b) = self.aligned(other, cap)?;
        Ok(Cyclo::add_same(&a, &b, true))
    }

    pub fn checked_mul(&self, other: &Cyclo, cap: u32) -> Result<Cyclo, AlgebraError> {
        if self.conductor == other.conductor {
            return Ok(Cyclo::mul_same(self, other));
        }
        if other.conductor == 1 {
            return Ok(self.scale_rational(&other.num[0], &other.den));
        }
        if self.conductor == 1 {
            return Ok(other.scale_rational(&self.num[0], &self.den));
        }
        let (a, b) = self.aligned(other, cap)?;
        Ok(Cyclo::mul_same(&a, &b))
    }

    pub fn checked_div(&self, other: &Cyclo, cap: u32) -> Result<Cyclo, AlgebraError> {
        let inv = other.inv()?;
        self.checked_mul(&inv, cap)
    }

    fn scale_rational(&self, p: &BigInt, q: &BigInt) -> Cyclo {
        Cyclo::from_parts(self.conductor, self.num.iter().map(|a| a * p).collect(), &self.den * q)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Cyclo, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Cyclo::from_parts(
                self.conductor,
                {
                    let mut v = vec![BigInt::zero(); self.num.len()];
                    v[0] = self.den.clone();
                    v
                },
                self.num[0].clone(),
            ));
        }
        // extended Euclid: s*a + t*Φ = g over Q[x]
        let f = field(self.conductor);
        let a: Vec<BigRational> = self.coeffs();
        let m: Vec<BigRational> = f.modulus.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        let (g, s) = qpoly_ext_gcd(&m, &a);
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let mut out = vec![BigRational::zero(); f.degree];
        for (o, c) in out.iter_mut().zip(s.iter()) {
            *o = c * &ginv;
        }
        Ok(Cyclo::from_rationals(self.conductor, &out))
    }

    pub fn from_rationals(conductor: u32, coeffs: &[BigRational]) -> Cyclo {
        let f = field(conductor);
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = vec![BigInt::zero(); f.degree];
        // reduce any excess degree through the power table
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let scaled = c.numer() * (&den / c.denom());
            if k < f.degree {
                num[k] += scaled;
            } else {
                let row = &f.powers[k % conductor as usize];
                for (o, &r) in num.iter_mut().zip(row) {
                    if r != 0 {
                        *o += &scaled * r;
                    }
                }
            }
        }
        Cyclo::from_parts(conductor, num, den)
    }

    pub fn pow(&self, e: i64) -> Cyclo {
        if e < 0 {
            return self.inv().expect("power of zero").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Cyclo::one();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the embedding `ζ_N ↦ e^{2πik/N}`.
    pub fn embed(&self, k: u32) -> Complex64 {
        let n = self.conductor as f64;
        let den = self.den.to_f64().unwrap_or(f64::INFINITY);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (k as f64) * (j as f64) / n;
            acc += Complex64::from_polar(1.0, angle) * a.to_f64().unwrap_or(f64::NAN);
        }
        acc / den
    }

    /// Complex value under the standard embedding.
    pub fn to_complex(&self) -> Complex64 {
        self.embed(1)
    }

    /// Galois automorphism `ζ ↦ ζ^k`, `gcd(k, N) = 1`.
    pub fn galois(&self, k: u32) -> Cyclo {
        let f = field(self.conductor);
        let n = self.conductor as usize;
        let mut out = vec![BigInt::zero(); f.degree];
        for (j, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let row = &f.powers[(j * k as usize) % n];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += a * r;
                }
            }
        }
        Cyclo::from_parts(self.conductor, out, self.den.clone())
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Cyclo {
        self.galois(self.conductor - 1 + u32::from(self.conductor == 1))
    }

    /// `Tr(x) / [Q(ζ_N):Q]`, independent of the conductor used to represent x.
    pub fn normalized_trace(&self) -> BigRational {
        let n = self.conductor;
        let mut acc = BigRational::zero();
        for (j, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let g = (j as u32).gcd(&n);
            let m = n / g;
            let mu = moebius_mu(m);
            if mu == 0 {
                continue;
            }
            acc += BigRational::new(a * mu, BigInt::from(euler_phi(m)));
        }
        acc / BigRational::from_integer(self.den.clone())
    }

    /// Parse a literal, refusing conductors above `cap`.
    pub fn parse_capped(s: &str, cap: u32) -> Result<Cyclo, AlgebraError> {
        super::literal::parse(s, cap)
    }
}

/// Returns `(g, s)` with `s*b ≡ g (mod a)`, `g = gcd(a, b)`.
fn qpoly_ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
        while v.len() > 1 && v.last().unwrap().is_zero() {
            v.pop();
        }
        v
    }
    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (vec![BigRational::zero()], trim(r));
        }
        let mut q = vec![BigRational::zero(); r.len() - db];
        let lead = b[db].clone();
        for k in (0..q.len()).rev() {
            let c = &r[k + db] / &lead;
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    r[k + j] -= &c * bj;
                }
            }
            q[k] = c;
        }
        r.truncate(db.max(1));
        (trim(q), trim(r))
    }
    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }
    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(out)
    }
    let is_zero = |v: &[BigRational]| v.iter().all(|c| c.is_zero());
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![BigRational::zero()];
    let mut s1 = vec![BigRational::one()];
    while !is_zero(&r1) {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Cyclo) -> bool {
        if self.conductor == other.conductor {
            return self.den == other.den && self.num == other.num;
        }
        let m = lcm(self.conductor, other.conductor) as u32;
        let a = self.promote_raw(m);
        let b = other.promote_raw(m);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclo {}

impl Hash for Cyclo {
    fn hash<H: Hasher>(&self, state: &mut H) {
        if self.is_rational() {
            self.num[0].hash(state);
            self.den.hash(state);
            return;
        }
        let t = self.normalized_trace();
        t.numer().hash(state);
        t.denom().hash(state);
    }
}

impl Default for Cyclo {
    fn default() -> Self {
        Cyclo::zero()
    }
}

impl From<i64> for Cyclo {
    fn from(v: i64) -> Self {
        Cyclo::from_int(v)
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({})", self)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.num.len()).rev() {
            let a = &self.num[k];
            if a.is_zero() {
                continue;
            }
            let c = BigRational::new(a.clone(), self.den.clone());
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let power = match k {
                0 => None,
                1 => Some(format!("z{}", self.conductor)),
                _ => Some(format!("z{}^{}", self.conductor, k)),
            };
            match power {
                None => write!(f, "{}", mag)?,
                Some(p) if mag.is_one() => write!(f, "{}", p)?,
                Some(p) => write!(f, "{}*{}", mag, p)?,
            }
        }
        Ok(())
    }
}

impl FromStr for Cyclo {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Cyclo::parse_capped(s, DEFAULT_CONDUCTOR_CAP)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a Cyclo> for &'a Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &'a Cyclo) -> Cyclo {
                self.$checked(rhs, HARD_CONDUCTOR_LIMIT).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: &'a Cyclo) -> Cyclo {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Cyclo> for &'a Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            conductor: self.conductor,
            num: self.num.iter().map(|a| -a).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}
