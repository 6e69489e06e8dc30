//! Pencils of quadrics `λQ₁ + μQ₂` and their projective invariants.

mod equivalence;
mod moebius;
mod normal_form;
mod segre;

pub use equivalence::{change_basis, pencils_equivalent, BasisChange, Equivalence};
pub use moebius::MoebiusMap;
pub use normal_form::{normal_form, NormalForm};
pub use segre::{characteristic_numbers, discriminant, segre_analysis, segre_symbol, RootDatum, RootLocation, SegreAnalysis, SegreSymbol};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::cyclo::lcm;
use crate::algebra::{AlgebraError, Cyclo, Matrix, SymMatrix, DEFAULT_CONDUCTOR_CAP, DEFAULT_DENOM_BOUND};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PencilError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("Q1 and Q2 have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("{matrix} is not symmetric: entry ({row}, {col}) differs from its transpose")]
    NotSymmetric { matrix: &'static str, row: usize, col: usize },
    #[error("Q2 is singular")]
    SingularQ2,
    #[error("Q1 and Q2 are proportional")]
    Proportional,
    #[error("entry {entry} needs conductor {needed}, which does not divide the declared conductor {declared}")]
    ConductorMismatch { entry: String, needed: u32, declared: u32 },
    #[error("{0} is not a root of the discriminant")]
    NotARoot(String),
    #[error("{count} discriminant root(s) are not recognized in Q(z{conductor})")]
    UnrecognizedRoots { count: usize, conductor: u32 },
    #[error("invalid Segre symbol: {0}")]
    InvalidSymbol(String),
    #[error("normal form needs one root per bracket ({brackets} brackets, {roots} roots)")]
    RootCount { brackets: usize, roots: usize },
    #[error("roots must be pairwise distinct")]
    RepeatedRoots,
}

/// Numeric knobs shared by every analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub conductor_cap: u32,
    pub denom_bound: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { conductor_cap: DEFAULT_CONDUCTOR_CAP, denom_bound: DEFAULT_DENOM_BOUND }
    }
}

/// Pencil spanned by two symmetric matrices with `Q₂` nonsingular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    conductor: u32,
    q1: SymMatrix,
    q2: SymMatrix,
}

impl Pencil {
    /// Build a pencil over the smallest conductor containing all entries.
    pub fn new(q1: SymMatrix, q2: SymMatrix) -> Result<Pencil, PencilError> {
        let mut conductor: u32 = 1;
        for m in [&q1, &q2] {
            for i in 0..m.size() {
                for j in 0..m.size() {
                    conductor = lcm(conductor, m.get(i, j).conductor()) as u32;
                }
            }
        }
        Pencil::with_conductor(q1, q2, conductor)
    }

    /// Build a pencil whose working field is Q(ζ_conductor).
    pub fn with_conductor(q1: SymMatrix, q2: SymMatrix, conductor: u32) -> Result<Pencil, PencilError> {
        if q1.size() != q2.size() {
            return Err(PencilError::SizeMismatch(q1.size(), q2.size()));
        }
        let promote = |m: &SymMatrix| -> Result<SymMatrix, PencilError> {
            let mm = m.matrix();
            let mut rows = Vec::with_capacity(mm.rows());
            for i in 0..mm.rows() {
                let mut row = Vec::with_capacity(mm.cols());
                for j in 0..mm.cols() {
                    let e = mm.get(i, j);
                    let p = e.promote_capped(conductor, u32::MAX).map_err(|_| PencilError::ConductorMismatch {
                        entry: e.to_string(),
                        needed: e.conductor(),
                        declared: conductor,
                    })?;
                    row.push(p);
                }
                rows.push(row);
            }
            Ok(SymMatrix::new(Matrix::from_rows(rows)?)?)
        };
        let q1 = promote(&q1)?;
        let q2 = promote(&q2)?;
        if q2.matrix().det().is_zero() {
            return Err(PencilError::SingularQ2);
        }
        // proportional iff rank of the 2-column system is 1
        let n = q1.size();
        let mut ratio: Option<Cyclo> = None;
        let mut proportional = true;
        'outer: for i in 0..n {
            for j in 0..n {
                let (a, b) = (q1.get(i, j), q2.get(i, j));
                if b.is_zero() {
                    if !a.is_zero() {
                        proportional = false;
                        break 'outer;
                    }
                    continue;
                }
                let r = a / b;
                match &ratio {
                    None => ratio = Some(r),
                    Some(prev) if *prev != r => {
                        proportional = false;
                        break 'outer;
                    }
                    _ => {}
                }
            }
        }
        if proportional {
            return Err(PencilError::Proportional);
        }
        Ok(Pencil { conductor, q1, q2 })
    }

    /// Ambient projective dimension `n` (matrices are `(n+1)×(n+1)`).
    pub fn n(&self) -> usize {
        self.q1.size() - 1
    }

    pub fn size(&self) -> usize {
        self.q1.size()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn q1(&self) -> &SymMatrix {
        &self.q1
    }

    pub fn q2(&self) -> &SymMatrix {
        &self.q2
    }

    /// `λQ₁ + μQ₂`.
    pub fn member(&self, l: &Cyclo, m: &Cyclo) -> SymMatrix {
        SymMatrix::combine(l, &self.q1, m, &self.q2)
    }

    pub fn to_json(&self) -> PencilJson {
        let rows = |m: &SymMatrix| (0..m.size()).map(|i| (0..m.size()).map(|j| m.get(i, j).to_string()).collect()).collect();
        PencilJson { n: self.n(), conductor: self.conductor, q1: rows(&self.q1), q2: rows(&self.q2) }
    }

    pub fn from_json(j: &PencilJson, cap: u32) -> Result<Pencil, PencilError> {
        if j.conductor == 0 || j.conductor > cap {
            return Err(AlgebraError::UnsupportedField { conductor: j.conductor as u64, cap }.into());
        }
        let parse = |rows: &Vec<Vec<String>>, name: &'static str| -> Result<SymMatrix, PencilError> {
            if rows.len() != j.n + 1 || rows.iter().any(|r| r.len() != j.n + 1) {
                return Err(AlgebraError::Shape(format!("{name} must be {}x{}", j.n + 1, j.n + 1)).into());
            }
            let m = rows
                .iter()
                .map(|r| r.iter().map(|s| Cyclo::parse_capped(s, cap)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            SymMatrix::new(Matrix::from_rows(m)?).map_err(|e| match e {
                AlgebraError::NotSymmetric { row, col } => PencilError::NotSymmetric { matrix: name, row, col },
                other => other.into(),
            })
        };
        Pencil::with_conductor(parse(&j.q1, "Q1")?, parse(&j.q2, "Q2")?, j.conductor)
    }
}

/// Serialized pencil: entries are cyclotomic literals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilJson {
    pub n: usize,
    pub conductor: u32,
    #[serde(rename = "Q1")]
    pub q1: Vec<Vec<String>>,
    #[serde(rename = "Q2")]
    pub q2: Vec<Vec<String>>,
}
