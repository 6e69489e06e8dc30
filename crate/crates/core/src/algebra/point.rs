//! Projective points with normalized coordinates.

use std::fmt;
use std::str::FromStr;

use super::cyclo::Cyclo;
use super::scalar::Scalar;
use super::AlgebraError;

/// Point of Pⁿ; the first nonzero coordinate is 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjectivePoint<T: Scalar = Cyclo> {
    coords: Vec<T>,
}

/// Point of P¹ over the cyclotomic field, written `(λ:μ)`.
pub type P1 = ProjectivePoint<Cyclo>;

impl<T: Scalar> ProjectivePoint<T> {
    pub fn new(coords: Vec<T>) -> Result<Self, AlgebraError> {
        let pivot = coords.iter().position(|c| !c.is_zero()).ok_or(AlgebraError::ZeroPoint)?;
        let inv = coords[pivot].try_inv()?;
        let coords = coords
            .iter()
            .enumerate()
            .map(|(i, c)| if i < pivot { T::zero() } else if i == pivot { T::one() } else { c.times(&inv) })
            .collect();
        Ok(ProjectivePoint { coords })
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Number of zero coordinates.
    pub fn zero_count(&self) -> usize {
        self.coords.iter().filter(|c| c.is_zero()).count()
    }
}

impl P1 {
    pub fn from_pair(l: Cyclo, m: Cyclo) -> Result<P1, AlgebraError> {
        ProjectivePoint::new(vec![l, m])
    }

    /// `(1 : mu)`.
    pub fn affine(mu: Cyclo) -> P1 {
        ProjectivePoint { coords: vec![Cyclo::one(), mu] }
    }

    pub fn infinity() -> P1 {
        ProjectivePoint { coords: vec![Cyclo::one(), Cyclo::zero()] }
    }

    pub fn lambda(&self) -> &Cyclo {
        &self.coords[0]
    }

    pub fn mu(&self) -> &Cyclo {
        &self.coords[1]
    }
}

impl<T: Scalar> fmt::Display for ProjectivePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ":")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl FromStr for ProjectivePoint<Cyclo> {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_point(s, super::cyclo::DEFAULT_CONDUCTOR_CAP)
    }
}

/// Parse `(a:b:…)` with cyclotomic literal entries.
pub fn parse_point(s: &str, cap: u32) -> Result<ProjectivePoint<Cyclo>, AlgebraError> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| AlgebraError::Parse { input: s.to_string(), position: 0, message: "expected (a:b:...)".into() })?;
    let coords = inner.split(':').map(|p| Cyclo::parse_capped(p, cap)).collect::<Result<Vec<_>, _>>()?;
    if coords.len() < 2 {
        return Err(AlgebraError::Parse { input: s.to_string(), position: 0, message: "need at least two coordinates".into() });
    }
    ProjectivePoint::new(coords)
}

/// Parse a bracketed or comma separated list of points.
pub fn parse_point_list(s: &str, cap: u32) -> Result<Vec<ProjectivePoint<Cyclo>>, AlgebraError> {
    let t = s.trim();
    let t = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(t);
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = None;
    for (i, ch) in t.char_indices() {
        match ch {
            '(' => {
                if depth == 0 {
                    start = Some(i);
                }
                depth += 1;
            }
            ')' => {
                depth -= 1;
                if depth == 0 {
                    out.push(parse_point(&t[start.unwrap()..=i], cap)?);
                }
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(AlgebraError::Parse { input: s.to_string(), position: t.len(), message: "unbalanced parentheses".into() });
    }
    Ok(out)
}
