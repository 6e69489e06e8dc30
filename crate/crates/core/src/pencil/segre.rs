use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Options, Pencil, PencilError};
use crate::algebra::poly::coprime_basis;
use crate::algebra::recognize::roots_in_field;
use crate::algebra::{form_multiplicity, pencil_minor, BivariateForm, Cyclo, Poly, P1};

/// A discriminant root: exact, or one of the roots of an unrecognized factor `f(λ/μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLocation {
    Exact(P1),
    Anonymous { factor: Poly, index: usize },
}

impl fmt::Display for RootLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLocation::Exact(p) => write!(f, "{p}"),
            RootLocation::Anonymous { factor, index } => write!(f, "root #{index} of {factor}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub root: RootLocation,
    pub total_multiplicity: u32,
    pub corank: u32,
    pub l_list: Vec<u32>,
    pub e_list: Vec<u32>,
}

impl RootDatum {
    fn from_l_list(root: RootLocation, l_list: Vec<u32>) -> RootDatum {
        let mut e_list: Vec<u32> = l_list.windows(2).map(|w| w[0] - w[1]).collect();
        e_list.push(*l_list.last().unwrap());
        RootDatum { root, total_multiplicity: l_list[0], corank: l_list.len() as u32, l_list, e_list }
    }
}

/// Canonically ordered list of brackets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SegreSymbol {
    brackets: Vec<Vec<u32>>,
}

fn bracket_key(b: &[u32]) -> (Reverse<usize>, Reverse<Vec<u32>>) {
    (Reverse(b.len()), Reverse(b.to_vec()))
}

impl SegreSymbol {
    /// Validate each bracket (positive, non-increasing) and sort canonically.
    pub fn new(mut brackets: Vec<Vec<u32>>) -> Result<SegreSymbol, PencilError> {
        if brackets.is_empty() {
            return Err(PencilError::InvalidSymbol("no brackets".into()));
        }
        for b in &brackets {
            if b.is_empty() || b.contains(&0) {
                return Err(PencilError::InvalidSymbol(format!("bracket {b:?} must hold positive entries")));
            }
            if b.windows(2).any(|w| w[0] < w[1]) {
                return Err(PencilError::InvalidSymbol(format!("bracket {b:?} is not non-increasing")));
            }
        }
        brackets.sort_by_key(|b| bracket_key(b));
        Ok(SegreSymbol { brackets })
    }

    pub fn brackets(&self) -> &[Vec<u32>] {
        &self.brackets
    }

    /// Sum of all entries, the degree of the discriminant.
    pub fn total(&self) -> u32 {
        self.brackets.iter().flatten().sum()
    }
}

impl fmt::Display for SegreSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .brackets
            .iter()
            .map(|b| {
                if b.len() == 1 {
                    b[0].to_string()
                } else {
                    format!("({})", b.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
                }
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for SegreSymbol {
    type Err = PencilError;

    fn from_str(s: &str) -> Result<SegreSymbol, PencilError> {
        let bad = |m: &str| PencilError::InvalidSymbol(format!("{s:?}: {m}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(|| bad("expected [...]"))?;
        let mut brackets = Vec::new();
        let mut rest = inner;
        let num = |x: &str| x.parse::<u32>().map_err(|_| bad(&format!("bad entry {x:?}")));
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix('(') {
                let close = r.find(')').ok_or_else(|| bad("unclosed '('"))?;
                brackets.push(r[..close].split(',').map(num).collect::<Result<Vec<_>, _>>()?);
                rest = &r[close + 1..];
            } else {
                let end = rest.find(',').unwrap_or(rest.len());
                brackets.push(vec![num(&rest[..end])?]);
                rest = &rest[end..];
            }
            if let Some(r) = rest.strip_prefix(',') {
                if r.is_empty() {
                    return Err(bad("trailing comma"));
                }
                rest = r;
            } else if !rest.is_empty() {
                return Err(bad("expected ','"));
            }
        }
        SegreSymbol::new(brackets)
    }
}

/// Full Segre data: roots are listed in the same order as the symbol's brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreAnalysis {
    pub symbol: SegreSymbol,
    pub roots: Vec<RootDatum>,
    pub discriminant: BivariateForm,
    pub conductor: u32,
}

impl SegreAnalysis {
    /// Roots with their brackets, failing if any root is anonymous.
    pub fn labelled_roots(&self) -> Result<Vec<(P1, Vec<u32>)>, PencilError> {
        let anonymous = self.anonymous_count();
        if anonymous > 0 {
            return Err(PencilError::UnrecognizedRoots { count: anonymous, conductor: self.conductor });
        }
        Ok(self
            .roots
            .iter()
            .map(|r| match &r.root {
                RootLocation::Exact(p) => (p.clone(), r.e_list.clone()),
                RootLocation::Anonymous { .. } => unreachable!(),
            })
            .collect())
    }

    pub fn anonymous_count(&self) -> usize {
        self.roots.iter().filter(|r| matches!(r.root, RootLocation::Anonymous { .. })).count()
    }
}

pub fn discriminant(p: &Pencil) -> BivariateForm {
    let all: Vec<usize> = (0..p.size()).collect();
    pencil_minor(p.q1(), p.q2(), &all, &all).expect("full index sets are valid")
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else { return out };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Dehomogenized polynomial and μ-power of a nonzero form.
fn split(f: &BivariateForm) -> (Poly, u32) {
    (f.dehomogenize(), f.infinity_multiplicity().expect("nonzero form"))
}

/// Determinantal divisors `D_1 … D_{n+1}` as (polynomial in t = λ/μ, power of μ).
fn determinantal_divisors(p: &Pencil) -> Vec<(Poly, u32)> {
    let size = p.size();
    let mut divisors = vec![(Poly::one(), 0u32); size + 1];
    let disc = discriminant(p);
    divisors[size] = split(&disc);
    let mut g = disc;
    for k in (1..size).rev() {
        if g.degree() == 0 {
            break;
        }
        let combos = combinations(size, k);
        'search: for a in 0..combos.len() {
            for b in a..combos.len() {
                let m = pencil_minor(p.q1(), p.q2(), &combos[a], &combos[b]).expect("valid indices");
                if m.is_zero() {
                    continue;
                }
                // D_k divides D_{k+1}, so seeding with it does not change the gcd
                g = g.gcd(&m);
                if g.degree() == 0 {
                    break 'search;
                }
            }
        }
        divisors[k] = split(&g);
    }
    divisors
}

/// Segre symbol and per-root data through invariant factors of `λQ₁ + μQ₂`.
pub fn segre_analysis(p: &Pencil, opts: &Options) -> Result<SegreAnalysis, PencilError> {
    let size = p.size();
    let divisors = determinantal_divisors(p);
    // invariant factors E_k = D_k / D_{k-1}
    let factors: Vec<(Poly, u32)> = (1..=size)
        .map(|k| {
            let (num, inf_num) = &divisors[k];
            let (den, inf_den) = &divisors[k - 1];
            (num.exact_div(den).expect("determinantal divisors form a chain"), inf_num - inf_den)
        })
        .collect();
    // Yun factors keep roots of different multiplicity in separate inputs
    let pieces: Vec<Poly> = factors.iter().flat_map(|f| f.0.squarefree_decomposition().into_iter().map(|(_, a)| a)).collect();
    let basis = coprime_basis(&pieces);

    let l_list_of = |nu: &[u32]| -> Vec<u32> {
        // nu[k-1] is the multiplicity in E_k; l_i sums the first size-i of them
        let corank = nu.iter().filter(|&&v| v > 0).count();
        (0..corank).map(|i| nu[..size - i].iter().sum()).collect()
    };

    let mut roots = Vec::new();
    let inf_nu: Vec<u32> = factors.iter().map(|f| f.1).collect();
    if inf_nu.iter().any(|&v| v > 0) {
        roots.push(RootDatum::from_l_list(RootLocation::Exact(P1::infinity()), l_list_of(&inf_nu)));
    }
    for f in &basis {
        let nu: Vec<u32> = factors.iter().map(|(e, _)| if e.is_constant() { 0 } else { e.multiplicity_of(f) }).collect();
        let l_list = l_list_of(&nu);
        let exact = roots_in_field(f, p.conductor(), opts.denom_bound);
        let mut rest = f.clone();
        for t in &exact {
            rest = rest.exact_div(&Poly::linear_root(t)).expect("verified root");
            let point = P1::from_pair(t.clone(), Cyclo::one())?;
            roots.push(RootDatum::from_l_list(RootLocation::Exact(point), l_list.clone()));
        }
        for index in 0..rest.degree().unwrap_or(0) {
            roots.push(RootDatum::from_l_list(RootLocation::Anonymous { factor: rest.monic(), index }, l_list.clone()));
        }
    }
    for r in &roots {
        if let RootLocation::Exact(pt) = &r.root {
            let rank = p.member(pt.lambda(), pt.mu()).matrix().rank() as u32;
            assert_eq!(size as u32 - rank, r.corank, "corank at {pt} disagrees with the invariant factors");
        }
    }
    roots.sort_by(|a, b| {
        bracket_key(&a.e_list)
            .cmp(&bracket_key(&b.e_list))
            .then_with(|| matches!(a.root, RootLocation::Anonymous { .. }).cmp(&matches!(b.root, RootLocation::Anonymous { .. })))
            .then_with(|| a.root.to_string().cmp(&b.root.to_string()))
    });
    let symbol = SegreSymbol::new(roots.iter().map(|r| r.e_list.clone()).collect())?;
    Ok(SegreAnalysis { symbol, roots, discriminant: discriminant(p), conductor: p.conductor() })
}

pub fn segre_symbol(p: &Pencil, opts: &Options) -> Result<SegreSymbol, PencilError> {
    Ok(segre_analysis(p, opts)?.symbol)
}

/// Characteristic numbers at one root, straight from the minimal multiplicities in minors.
pub fn characteristic_numbers(p: &Pencil, root: &P1) -> Result<RootDatum, PencilError> {
    let size = p.size();
    let disc = discriminant(p);
    if !disc.eval(root.lambda(), root.mu()).is_zero() {
        return Err(PencilError::NotARoot(root.to_string()));
    }
    let rank = p.member(root.lambda(), root.mu()).matrix().rank();
    let d = size - rank - 1;
    let mut l_list = Vec::with_capacity(d + 1);
    l_list.push(form_multiplicity(&disc, root)?);
    for i in 1..=d {
        let order = size - i;
        let floor = (d - i + 1) as u32;
        let combos = combinations(size, order);
        let mut best = u32::MAX;
        'scan: for a in 0..combos.len() {
            for b in a..combos.len() {
                let m = pencil_minor(p.q1(), p.q2(), &combos[a], &combos[b])?;
                if m.is_zero() {
                    continue;
                }
                best = best.min(form_multiplicity(&m, root)?);
                if best <= floor {
                    break 'scan;
                }
            }
        }
        l_list.push(best);
    }
    Ok(RootDatum::from_l_list(RootLocation::Exact(root.clone()), l_list))
}
