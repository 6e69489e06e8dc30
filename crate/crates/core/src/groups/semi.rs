use std::collections::HashMap;
use std::fmt;

use super::{GroupError, MonomialMap};
use crate::algebra::cyclo::lcm;
use crate::algebra::recognize::roots_in_field;
use crate::algebra::{Cyclo, Matrix, Poly, Scalar};
use crate::pencil::{Options, Pencil};

/// Homogeneous form in a chosen set of variables; exponents follow `vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub vars: Vec<usize>,
    pub terms: Vec<(Vec<u32>, Cyclo)>,
}

impl Form {
    fn from_vector(vars: &[usize], monomials: &[Vec<u32>], v: &[Cyclo]) -> Form {
        // scale so the last nonzero coefficient is 1
        let last = v.iter().rev().find(|c| !c.is_zero()).and_then(|c| c.inv().ok()).unwrap_or_else(Cyclo::one);
        let terms = monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c * &last)).collect();
        Form { vars: vars.to_vec(), terms }
    }

    /// Coefficient of a monomial given by its exponents.
    pub fn coeff(&self, exps: &[u32]) -> Cyclo {
        self.terms.iter().find(|(m, _)| m == exps).map_or_else(Cyclo::zero, |(_, c)| c.clone())
    }

    pub fn eval<T: Scalar>(&self, x: &[T]) -> T {
        self.terms.iter().fold(T::zero(), |acc, (m, c)| {
            let mono = m.iter().zip(&self.vars).fold(T::from_cyclo(c), |t, (&e, &v)| (0..e).fold(t, |t, _| t.times(&x[v])));
            acc.plus(&mono)
        })
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mono: Vec<String> = m
                    .iter()
                    .zip(&self.vars)
                    .filter(|(e, _)| **e > 0)
                    .map(|(&e, &v)| if e == 1 { format!("x{}", v + 1) } else { format!("x{}^{}", v + 1, e) })
                    .collect();
                let mono = mono.join("*");
                if c.is_one() {
                    mono
                } else {
                    format!("({c})*{mono}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Forms on which every generator acts by the scalar `character[g]`.
#[derive(Clone, Debug)]
pub struct SemiInvariants {
    pub character: Vec<Cyclo>,
    /// Basis of the eigenspace of that character.
    pub forms: Vec<Form>,
    /// Eigenforms independent modulo the pencil slice, chosen greedily from `forms`.
    pub complement: Vec<Form>,
}

fn monomials(r: usize, degree: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in (0..=degree).rev() {
        for mut rest in monomials(r - 1, degree - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// Matrix of `f ↦ f∘M` on monomials of one degree in the variables `vars`.
fn pullback_matrix(g: &MonomialMap, vars: &[usize], basis: &[Vec<u32>], index: &HashMap<Vec<u32>, usize>) -> Matrix<Cyclo> {
    let pos: HashMap<usize, usize> = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut inv = vec![0; g.size()];
    for (j, &p) in g.perm().iter().enumerate() {
        inv[p] = j;
    }
    let mut a = Matrix::zeros(basis.len(), basis.len());
    for (col, alpha) in basis.iter().enumerate() {
        let mut beta = vec![0u32; vars.len()];
        let mut c = Cyclo::one();
        for (k, &v) in vars.iter().enumerate() {
            beta[pos[&inv[v]]] = alpha[k];
            c = &c * g.scales()[v].pow(alpha[k] as i64);
        }
        a.set(index[&beta], col, c);
    }
    a
}

fn columns_of(rows: &[Vec<Cyclo>]) -> usize {
    if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows.to_vec()).expect("equal widths").rank()
    }
}

/// Semi-invariant forms of one degree in the variables `vars`, with a complement to `{Q₁P₁ + Q₂P₂}` restricted there.
///
/// Only characters with values in the working field are found.
pub fn semi_invariant_forms(gens: &[MonomialMap], degree: u32, p: &Pencil, vars: &[usize], opts: &Options) -> Result<Vec<SemiInvariants>, GroupError> {
    let n = p.size();
    if vars.is_empty() || vars.iter().any(|&v| v >= n) {
        return Err(GroupError::Invalid(format!("variables {vars:?} out of range")));
    }
    for g in gens {
        if g.size() != n || vars.iter().any(|&v| !vars.contains(&g.perm()[v])) {
            return Err(GroupError::Unsupported(format!("{g} does not act on the chosen variables")));
        }
    }
    let basis = monomials(vars.len(), degree);
    let index: HashMap<Vec<u32>, usize> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let dim = basis.len();
    let conductor = gens.iter().fold(p.conductor(), |c, g| lcm(c, g.conductor()) as u32);

    // restricted pencil slice
    let mut slice: Vec<Vec<Cyclo>> = Vec::new();
    if degree >= 2 {
        for q in [p.q1(), p.q2()] {
            for m in monomials(vars.len(), degree - 2) {
                let mut v = vec![Cyclo::zero(); dim];
                for (a, &va) in vars.iter().enumerate() {
                    for (b, &vb) in vars.iter().enumerate() {
                        let c = q.get(va, vb);
                        if c.is_zero() {
                            continue;
                        }
                        let mut e = m.clone();
                        e[a] += 1;
                        e[b] += 1;
                        v[index[&e]] = &v[index[&e]] + c;
                    }
                }
                slice.push(v);
            }
        }
    }
    let slice_rank = columns_of(&slice);

    // refine simultaneous eigenspaces one generator at a time
    let mut spaces: Vec<(Vec<Cyclo>, Vec<Vec<Cyclo>>)> = vec![(vec![], (0..dim).map(|i| (0..dim).map(|j| Cyclo::from_int((i == j) as i64)).collect()).collect())];
    let actions: Vec<Matrix<Cyclo>> = gens.iter().map(|g| pullback_matrix(g, vars, &basis, &index)).collect();
    for a in &actions {
        // eigenvalues: L-th roots of the scalar product along each cycle of monomials
        let mut candidates: Vec<Cyclo> = Vec::new();
        let mut seen = vec![false; dim];
        for start in 0..dim {
            if seen[start] {
                continue;
            }
            let (mut len, mut prod, mut cur) = (0i64, Cyclo::one(), start);
            loop {
                seen[cur] = true;
                let next = (0..dim).find(|&r| !a.get(r, cur).is_zero()).expect("monomial action");
                prod = &prod * a.get(next, cur);
                len += 1;
                cur = next;
                if cur == start {
                    break;
                }
            }
            let mut coeffs = vec![Cyclo::zero(); len as usize + 1];
            coeffs[0] = -prod;
            coeffs[len as usize] = Cyclo::one();
            for r in roots_in_field(&Poly::new(coeffs), conductor, opts.denom_bound) {
                if !candidates.contains(&r) {
                    candidates.push(r);
                }
            }
        }
        let mut refined = Vec::new();
        for (chi, space) in &spaces {
            let b = Matrix::from_rows(space.clone()).expect("equal widths").transpose();
            for c in &candidates {
                let shifted = a.add(&Matrix::identity(dim).scale(&-c)).mul(&b);
                let sub: Vec<Vec<Cyclo>> = shifted.kernel().iter().map(|x| b.mul_vec(x)).collect();
                if !sub.is_empty() {
                    let mut chi = chi.clone();
                    chi.push(c.clone());
                    refined.push((chi, sub));
                }
            }
        }
        spaces = refined;
    }

    let mut out = Vec::new();
    for (character, space) in spaces {
        for v in &space {
            for (a, c) in actions.iter().zip(&character) {
                let av = a.mul_vec(v);
                if av.iter().zip(v).any(|(x, y)| *x != c * y) {
                    return Err(GroupError::Invalid("eigenvector check failed".into()));
                }
            }
        }
        let mut rows = slice.clone();
        let mut rank = slice_rank;
        let mut complement = Vec::new();
        for v in &space {
            rows.push(v.clone());
            let r = columns_of(&rows);
            if r > rank {
                rank = r;
                complement.push(Form::from_vector(vars, &basis, v));
            } else {
                rows.pop();
            }
        }
        out.push(SemiInvariants { forms: space.iter().map(|v| Form::from_vector(vars, &basis, v)).collect(), character, complement });
    }
    Ok(out)
}
