use super::{Pencil, PencilError, SegreSymbol};
use crate::algebra::{Cyclo, Matrix, SymMatrix, P1};

/// Block-diagonal normal form; `shift` is the `k` of a precomposed `(λ:μ) ↦ (λ+kμ : μ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub pencil: Pencil,
    pub roots: Vec<P1>,
    pub shift: Option<i64>,
}

/// Pencil with the given symbol whose `i`-th bracket sits at `roots[i]`.
pub fn normal_form(symbol: &SegreSymbol, roots: &[P1]) -> Result<NormalForm, PencilError> {
    let brackets = symbol.brackets();
    if brackets.len() != roots.len() {
        return Err(PencilError::RootCount { brackets: brackets.len(), roots: roots.len() });
    }
    for (i, r) in roots.iter().enumerate() {
        if roots[..i].contains(r) {
            return Err(PencilError::RepeatedRoots);
        }
    }
    let mut shift = None;
    let mut roots = roots.to_vec();
    if roots.iter().any(|r| r.lambda().is_zero()) {
        let k = (1..)
            .find(|&k| roots.iter().all(|r| !(r.lambda() + Cyclo::from_int(k) * r.mu()).is_zero()))
            .unwrap();
        roots = roots
            .iter()
            .map(|r| P1::from_pair(r.lambda() + Cyclo::from_int(k) * r.mu(), r.mu().clone()))
            .collect::<Result<_, _>>()?;
        shift = Some(k);
    }
    let size = symbol.total() as usize;
    let mut q1 = Matrix::<Cyclo>::zeros(size, size);
    let mut q2 = Matrix::<Cyclo>::zeros(size, size);
    let mut offset = 0;
    for (bracket, root) in brackets.iter().zip(&roots) {
        let c = -(root.mu() / root.lambda());
        for &e in bracket {
            let e = e as usize;
            for r in 0..e {
                for s in 0..e {
                    if r + s == e - 1 {
                        q1.set(offset + r, offset + s, c.clone());
                        q2.set(offset + r, offset + s, Cyclo::one());
                    } else if r + s + 2 == e {
                        q1.set(offset + r, offset + s, Cyclo::one());
                    }
                }
            }
            offset += e;
        }
    }
    let pencil = Pencil::new(SymMatrix::new(q1)?, SymMatrix::new(q2)?)?;
    Ok(NormalForm { pencil, roots, shift })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_root_block() {
        let sym: SegreSymbol = "[2]".parse().unwrap();
        let root = P1::from_pair(Cyclo::one(), Cyclo::from_int(-1)).unwrap();
        let nf = normal_form(&sym, &[root]).unwrap();
        let rows = |m: &SymMatrix| m.matrix().to_rows();
        let i = |v: i64| Cyclo::from_int(v);
        assert_eq!(rows(nf.pencil.q1()), vec![vec![i(1), i(1)], vec![i(1), i(0)]]);
        assert_eq!(rows(nf.pencil.q2()), vec![vec![i(0), i(1)], vec![i(1), i(0)]]);
        assert_eq!(nf.shift, None);
    }

    #[test]
    fn zero_lambda_root_is_shifted() {
        let sym: SegreSymbol = "[1,1,1]".parse().unwrap();
        let pts: Vec<P1> = [(0, 1), (1, -1), (1, 1)]
            .iter()
            .map(|&(l, m)| P1::from_pair(Cyclo::from_int(l), Cyclo::from_int(m)).unwrap())
            .collect();
        let nf = normal_form(&sym, &pts).unwrap();
        // k = 1 sends (1:-1) to (0:-1); k = 2 avoids every root
        assert_eq!(nf.shift, Some(2));
        assert!(nf.roots.iter().all(|r| !r.lambda().is_zero()));
    }
}
