use std::fmt;

use serde::Serialize;

use super::singular::{on_both_quadrics, singular_points, to_quad};
use super::ThreefoldError;
use crate::algebra::{Matrix, ProjectivePoint, QuadExt, Scalar};
use crate::pencil::{segre_analysis, Options, Pencil, SegreSymbol};

/// Checks that only brackets `(a)` and `(a,1)` occur, for a threefold in P⁵.
pub fn validate_symbol(s: &SegreSymbol) -> Result<(), ThreefoldError> {
    if s.total() != 6 {
        return Err(ThreefoldError::WrongDimension(s.total()));
    }
    let violations = bracket_violations(s);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(ThreefoldError::Unvalidated(violations))
    }
}

pub(crate) fn bracket_violations(s: &SegreSymbol) -> Vec<String> {
    let mut out = Vec::new();
    for b in s.brackets() {
        let shown = SegreSymbol::new(vec![b.clone()]).map(|x| x.to_string()).unwrap_or_default();
        if b.len() > 2 {
            out.push(format!("{shown}: bracket length > 2"));
        } else if b.len() == 2 && b[1] != 1 {
            out.push(format!("{shown}: length-2 bracket not (a,1)"));
        }
    }
    out
}

pub fn is_smooth(s: &SegreSymbol) -> bool {
    s.brackets().iter().all(|b| b == &[1])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ReductionTag {
    SmoothCandidate,
    MaxClCandidate,
    QuadricInP4,
    ConicBundle,
    ProjectiveSpace,
    InvariantPlane,
    FibrationOverP1,
    Invalid,
}

impl fmt::Display for ReductionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionDecision {
    pub tag: ReductionTag,
    pub rule: &'static str,
    /// The bracket the rule singled out, for rules 3 and 4.
    pub bracket: Option<Vec<u32>>,
}

fn count_of(s: &SegreSymbol, b: &[u32]) -> usize {
    s.brackets().iter().filter(|x| x.as_slice() == b).count()
}

pub fn classify(s: &SegreSymbol) -> Result<ReductionDecision, ThreefoldError> {
    validate_symbol(s)?;
    let text = s.to_string();
    let decide = |tag, rule, bracket| Ok(ReductionDecision { tag, rule, bracket });
    if is_smooth(s) {
        return decide(ReductionTag::SmoothCandidate, "all brackets are (1)", None);
    }
    if text == "[(1,1),(1,1),(1,1)]" {
        return decide(ReductionTag::MaxClCandidate, "three brackets (1,1)", None);
    }
    if let Some(b) = s.brackets().iter().find(|b| b.len() == 1 && b[0] > 1 && count_of(s, b) == 1) {
        return decide(ReductionTag::QuadricInP4, "exactly one bracket (n), n>1: project from its vertex", Some(b.clone()));
    }
    if let Some(b) = s.brackets().iter().find(|b| b.len() == 2 && count_of(s, b) == 1) {
        return decide(ReductionTag::ConicBundle, "exactly one bracket (n,1): project from its vertex line", Some(b.clone()));
    }
    match text.as_str() {
        "[2,2,1,1]" | "[3,3]" | "[(2,1),(2,1)]" => {
            decide(ReductionTag::ProjectiveSpace, "two singular points: project from the line through them", None)
        }
        "[2,2,2]" => decide(ReductionTag::InvariantPlane, "three nodes span an invariant plane", None),
        "[(1,1),(1,1),1,1]" => decide(ReductionTag::FibrationOverP1, "four singular points span a 3-space", None),
        _ => decide(ReductionTag::Invalid, "no rule matched", None),
    }
}

/// Linear subspace used as a projection center.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Center {
    Point(ProjectivePoint<QuadExt>),
    Line([ProjectivePoint<QuadExt>; 2]),
    /// Spanning points of a subspace together with its projective dimension.
    Span { points: Vec<ProjectivePoint<QuadExt>>, dimension: usize },
}

fn rank_of(points: &[Vec<QuadExt>]) -> usize {
    Matrix::from_rows(points.to_vec()).map(|m| m.rank()).unwrap_or(0)
}

/// Every point of the span lies on both quadrics.
fn span_on_x(p: &Pencil, pts: &[Vec<QuadExt>]) -> bool {
    pts.iter().all(|x| on_both_quadrics(p, x))
        && pts.iter().enumerate().all(|(i, x)| {
            pts[i + 1..].iter().all(|y| p.q1().bilinear(x, y).is_zero() && p.q2().bilinear(x, y).is_zero())
        })
}

fn point(v: Vec<QuadExt>) -> Result<ProjectivePoint<QuadExt>, ThreefoldError> {
    Ok(ProjectivePoint::new(v)?)
}

pub fn reduction_center(p: &Pencil, d: &ReductionDecision, opts: &Options) -> Result<Center, ThreefoldError> {
    let analysis = segre_analysis(p, opts)?;
    let labelled = analysis.labelled_roots()?;
    let kernel_at = |bracket: &[u32]| -> Result<Vec<Vec<QuadExt>>, ThreefoldError> {
        let (root, _) = labelled
            .iter()
            .find(|(_, b)| b.as_slice() == bracket)
            .ok_or_else(|| ThreefoldError::Internal(format!("no root with bracket {bracket:?}")))?;
        let ker = p.member(root.lambda(), root.mu()).matrix().kernel();
        if ker.len() != bracket.len() {
            return Err(ThreefoldError::Internal("kernel dimension differs from corank".into()));
        }
        Ok(ker.iter().map(|v| to_quad(v)).collect())
    };
    match d.tag {
        ReductionTag::QuadricInP4 => {
            let b = d.bracket.as_ref().ok_or_else(|| ThreefoldError::Internal("missing bracket".into()))?;
            let mut ker = kernel_at(b)?;
            Ok(Center::Point(point(ker.remove(0))?))
        }
        ReductionTag::ConicBundle => {
            let b = d.bracket.as_ref().ok_or_else(|| ThreefoldError::Internal("missing bracket".into()))?;
            let ker = kernel_at(b)?;
            Ok(Center::Line([point(ker[0].clone())?, point(ker[1].clone())?]))
        }
        ReductionTag::ProjectiveSpace => {
            let sing = singular_points(p, opts)?;
            if sing.len() != 2 {
                return Err(ThreefoldError::Internal(format!("expected 2 singular points, found {}", sing.len())));
            }
            let pts: Vec<Vec<QuadExt>> = sing.iter().map(|s| s.point.coords().to_vec()).collect();
            if !span_on_x(p, &pts) {
                return Err(ThreefoldError::Internal("line through the singular points is not on X".into()));
            }
            Ok(Center::Line([sing[0].point.clone(), sing[1].point.clone()]))
        }
        ReductionTag::InvariantPlane => {
            let sing = singular_points(p, opts)?;
            let pts: Vec<Vec<QuadExt>> = sing.iter().map(|s| s.point.coords().to_vec()).collect();
            if sing.len() != 3 || rank_of(&pts) != 3 || !span_on_x(p, &pts) {
                return Err(ThreefoldError::Internal("the three nodes do not span a plane on X".into()));
            }
            Ok(Center::Span { points: sing.into_iter().map(|s| s.point).collect(), dimension: 2 })
        }
        ReductionTag::FibrationOverP1 => {
            // the two singular points of a (1,1) bracket span its kernel line,
            // so the four points span the sum of both kernels
            let (root_brackets, _): (Vec<_>, Vec<_>) = labelled.iter().partition(|(_, b)| b == &[1, 1]);
            if root_brackets.len() != 2 {
                return Err(ThreefoldError::Internal("expected two (1,1) brackets".into()));
            }
            let mut vecs = Vec::new();
            for (root, _) in root_brackets {
                for v in p.member(root.lambda(), root.mu()).matrix().kernel() {
                    vecs.push(to_quad(&v));
                }
            }
            let dim = rank_of(&vecs);
            if dim != 4 {
                return Err(ThreefoldError::Internal(format!("singular points span a space of rank {dim}")));
            }
            let points = vecs.into_iter().map(point).collect::<Result<_, _>>()?;
            Ok(Center::Span { points, dimension: 3 })
        }
        other => Err(ThreefoldError::NoCenter(other.to_string())),
    }
}
