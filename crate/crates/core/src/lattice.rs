//! Picard lattice of a quartic del Pezzo surface: the blow-up of P² in five points,
//! with basis `M` (line class) and `M₁..M₅` (exceptional curves).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("h0 by Riemann-Roch needs the caller to assert that the class is nef")]
    NefNotAsserted,
    #[error("cannot parse class {input:?}: {message}")]
    Parse { input: String, message: String },
}

/// Class `a·M + Σ mᵢ·Mᵢ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorClass {
    #[serde(rename = "M")]
    pub m: i64,
    #[serde(rename = "Mi")]
    pub mi: [i64; 5],
}

impl DivisorClass {
    pub const fn new(m: i64, mi: [i64; 5]) -> DivisorClass {
        DivisorClass { m, mi }
    }

    pub const fn line() -> DivisorClass {
        DivisorClass::new(1, [0; 5])
    }

    pub fn exceptional(i: usize) -> DivisorClass {
        let mut mi = [0; 5];
        mi[i] = 1;
        DivisorClass::new(0, mi)
    }

    /// `K = −3M + ΣMᵢ`.
    pub const fn canonical() -> DivisorClass {
        DivisorClass::new(-3, [1; 5])
    }

    pub fn dot(&self, other: &DivisorClass) -> i64 {
        self.m * other.m - self.mi.iter().zip(&other.mi).map(|(a, b)| a * b).sum::<i64>()
    }

    pub fn self_intersection(&self) -> i64 {
        self.dot(self)
    }

    /// Degree against `−K`.
    pub fn anticanonical_degree(&self) -> i64 {
        -self.dot(&DivisorClass::canonical())
    }

    /// Nonnegative against every (−1)-curve, which on this surface is the same as nef.
    pub fn meets_all_curves_nonnegatively(&self) -> bool {
        minus_one_curves().iter().all(|c| self.dot(c) >= 0)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, o: DivisorClass) -> DivisorClass {
        let mut mi = self.mi;
        for (a, b) in mi.iter_mut().zip(o.mi) {
            *a += b;
        }
        DivisorClass::new(self.m + o.m, mi)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass::new(-self.m, self.mi.map(|x| -x))
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, o: DivisorClass) -> DivisorClass {
        self + -o
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, d: DivisorClass) -> DivisorClass {
        DivisorClass::new(self * d.m, d.mi.map(|x| self * x))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut term = |c: i64, name: String| {
            if c == 0 {
                return;
            }
            let sign = if c < 0 { "-" } else if parts.is_empty() { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            parts.push(format!("{sign}{mag}{name}"));
        };
        term(self.m, "M".into());
        if self.mi.iter().all(|&x| x == self.mi[0]) && self.mi[0] != 0 {
            term(self.mi[0], "E".into());
        } else {
            for (i, &c) in self.mi.iter().enumerate() {
                term(c, format!("M{}", i + 1));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(""))
        }
    }
}

/// Parses sums of integer multiples of `K`, `M`, `M1`..`M5` and `E = ΣMᵢ`, e.g. `-2K`, `6M-2E`, `M-M1-M2`.
impl FromStr for DivisorClass {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<DivisorClass, LatticeError> {
        let err = |message: &str| LatticeError::Parse { input: s.to_string(), message: message.to_string() };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut total = DivisorClass::new(0, [0; 5]);
        let bytes = compact.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                sign = if bytes[i] == b'-' { -1 } else { 1 };
                i += 1;
            } else if i > 0 {
                return Err(err("expected + or -"));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if start == i { 1 } else { compact[start..i].parse().map_err(|_| err("coefficient too large"))? };
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
            let symbol = match bytes.get(i) {
                Some(b'K') => {
                    i += 1;
                    DivisorClass::canonical()
                }
                Some(b'E') => {
                    i += 1;
                    DivisorClass::new(0, [1; 5])
                }
                Some(b'M') => {
                    i += 1;
                    match bytes.get(i) {
                        Some(d @ b'1'..=b'5') => {
                            i += 1;
                            DivisorClass::exceptional((d - b'1') as usize)
                        }
                        _ => DivisorClass::line(),
                    }
                }
                _ => return Err(err("expected K, E, M or M1..M5")),
            };
            total = total + (sign * coeff) * symbol;
        }
        Ok(total)
    }
}

/// Every class with `C² = −1` and `C·K = −1`, found by search over a box that contains them all.
pub fn minus_one_curves() -> Vec<DivisorClass> {
    let mut out = Vec::new();
    // the box |coords| ≤ 3 is searched in full
    for a in -3..=3i64 {
        for code in 0..7i64.pow(5) {
            let mut mi = [0i64; 5];
            let mut c = code;
            for x in mi.iter_mut() {
                *x = c % 7 - 3;
                c /= 7;
            }
            let d = DivisorClass::new(a, mi);
            if d.self_intersection() == -1 && d.dot(&DivisorClass::canonical()) == -1 {
                out.push(d);
            }
        }
    }
    out.sort();
    out
}

/// `h⁰(D) = D·(D−K)/2 + 1` under the caller's nef assertion (χ(𝒪) = 1).
pub fn riemann_roch_h0(d: &DivisorClass, nef_assumed: bool) -> Result<i64, LatticeError> {
    if !nef_assumed {
        return Err(LatticeError::NefNotAsserted);
    }
    Ok(d.dot(&(*d - DivisorClass::canonical())) / 2 + 1)
}

/// The class `a·M − b·ΣMᵢ` meeting all (−1)-curves equally with `−K`-degree `d`, if integral.
pub fn solve_invariant_class(d: i64) -> Option<DivisorClass> {
    // Mᵢ gives b, M−Mᵢ−Mⱼ gives a−2b, so a = 3b; then 3a−5b = 4b = d
    if d <= 0 || d % 4 != 0 {
        return None;
    }
    let b = d / 4;
    let class = DivisorClass::new(3 * b, [-b; 5]);
    let curves = minus_one_curves();
    let first = class.dot(&curves[0]);
    debug_assert!(curves.iter().all(|c| class.dot(c) == first));
    Some(class)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let k = DivisorClass::canonical();
        assert_eq!(k.self_intersection(), 4);
        assert_eq!(DivisorClass::line().self_intersection(), 1);
        let n: DivisorClass = "M-M1-M2".parse().unwrap();
        assert_eq!(n.self_intersection(), -1);
        assert_eq!("-2K".parse::<DivisorClass>().unwrap(), DivisorClass::new(6, [-2; 5]));
        assert_eq!("6M - 2E".parse::<DivisorClass>().unwrap(), DivisorClass::new(6, [-2; 5]));
        assert!("2X".parse::<DivisorClass>().is_err());
        assert_eq!(riemann_roch_h0(&-k, false), Err(LatticeError::NefNotAsserted));
    }

    #[test]
    fn display_round_trip() {
        for s in ["3M-E", "M-M1-M2", "M3", "2M-E", "0"] {
            let d: DivisorClass = if s == "0" { DivisorClass::new(0, [0; 5]) } else { s.parse().unwrap() };
            assert_eq!(d.to_string(), s);
        }
    }
}
