//! Named pencils in diagonal or block normal form, used by tests and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Cyclo, Matrix, SymMatrix};
use crate::pencil::Pencil;

pub const PENCIL_FIXTURES: &[&str] = &["max-cl", "c5-diagonal", "diag6", "case-i", "case-ii", "case-iii", "case-iv", "case-v", "case-vi"];

fn c(s: &str) -> Cyclo {
    s.parse().expect("fixture literal")
}

/// Diagonal pencil whose `j`-th coordinate degenerates at `(b_j : −a_j)`.
pub fn diagonal(a: &[Cyclo], b: &[Cyclo]) -> Pencil {
    Pencil::new(SymMatrix::diagonal(a), SymMatrix::diagonal(b)).expect("fixture pencil")
}

/// Diagonal pencil degenerating at the affine points `t_j = λ/μ`; `None` stands for `(1:0)`.
pub fn diagonal_with_roots(roots: &[Option<Cyclo>]) -> Pencil {
    let (a, b): (Vec<Cyclo>, Vec<Cyclo>) = roots
        .iter()
        .map(|t| match t {
            None => (Cyclo::zero(), Cyclo::one()),
            Some(t) => (Cyclo::one(), -t),
        })
        .unzip();
    diagonal(&a, &b)
}

/// `x₁x₂ + ξx₃x₄ + ξ²x₅x₆` and `x₁x₂ + x₃x₄ + x₅x₆`, ξ a primitive cube root of unity.
pub fn max_cl() -> Pencil {
    let half = Cyclo::from_frac(1, 2);
    let xi = Cyclo::zeta(3);
    let coeffs1 = [Cyclo::one(), xi.clone(), &xi * &xi];
    let build = |w: &[Cyclo]| {
        let mut m = Matrix::<Cyclo>::zeros(6, 6);
        for (k, wk) in w.iter().enumerate() {
            let v = wk * &half;
            m.set(2 * k, 2 * k + 1, v.clone());
            m.set(2 * k + 1, 2 * k, v);
        }
        SymMatrix::new(m).unwrap()
    };
    Pencil::new(build(&coeffs1), build(&[Cyclo::one(), Cyclo::one(), Cyclo::one()])).unwrap()
}

/// `Σ ξⁱxᵢ² (i=1..4) + x₅²` and `Σ xᵢ²`, ξ a primitive fifth root of unity.
pub fn c5_diagonal() -> Pencil {
    let a: Vec<Cyclo> = ["z5", "z5^2", "z5^3", "z5^4", "1", "0"].iter().map(|s| c(s)).collect();
    diagonal(&a, &vec![Cyclo::one(); 6])
}

/// `diag(1..6)` and the identity: six distinct rational roots.
pub fn diag6() -> Pencil {
    diagonal(&(1..=6).map(Cyclo::from_int).collect::<Vec<_>>(), &vec![Cyclo::one(); 6])
}

/// Roots form an octahedron: after `t ↦ t + 2` they are `0, ∞, ±1, ±i`.
/// The `1/√2` scalings make the needed square roots lie in Q(ζ₁₆).
pub fn case_i() -> Pencil {
    let r = c("1/2*z16^2 - 1/2*z16^6"); // 1/√2
    let a = vec![Cyclo::one(), Cyclo::zero(), r.clone(), r.clone(), r.clone(), r.clone()];
    let b = vec![
        Cyclo::from_int(2),
        Cyclo::from_int(-1),
        &r * Cyclo::from_int(3),
        r.clone(),
        &r * (Cyclo::from_int(2) + Cyclo::i()),
        &r * (Cyclo::from_int(2) - Cyclo::i()),
    ];
    Pencil::with_conductor(SymMatrix::diagonal(&a), SymMatrix::diagonal(&b), 16).unwrap()
}

/// Roots `t⁶ = −1`, a regular hexagon.
pub fn case_ii() -> Pencil {
    diagonal_with_roots(&[1, 3, 5, 7, 9, 11].map(|k| Some(Cyclo::zeta_pow(12, k))))
}

/// Roots `2ω^k` and `ω^k/2`, two concentric triangles.
pub fn case_iii() -> Pencil {
    let mut roots = Vec::new();
    for k in 0..3 {
        let w = Cyclo::zeta_pow(3, k);
        roots.push(Some(&w * Cyclo::from_int(2)));
        roots.push(Some(&w * Cyclo::from_frac(1, 2)));
    }
    diagonal_with_roots(&roots)
}

/// `{0, ∞, ±2, ±1/2}` translated by 3 so that no root sits at `(0:1)`.
pub fn case_iv() -> Pencil {
    let mut roots = vec![None];
    for t in [(0, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)] {
        roots.push(Some(Cyclo::from_frac(t.0, t.1) + Cyclo::from_int(3)));
    }
    diagonal_with_roots(&roots)
}

/// Same root set as [`c5_diagonal`]: `∞` and the points `−ξ^{-i}`.
pub fn case_v() -> Pencil {
    c5_diagonal()
}

/// `{±i, ±2, ±3}`.
pub fn case_vi() -> Pencil {
    let i = Cyclo::i();
    let roots: Vec<Option<Cyclo>> = [i.clone(), -&i, 2.into(), (-2).into(), 3.into(), (-3).into()].into_iter().map(Some).collect();
    diagonal_with_roots(&roots)
}

/// Six distinct random rationals as roots, from a fixed seed.
pub fn random_rational_roots(seed: u64) -> Vec<Cyclo> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Cyclo> = Vec::new();
    while out.len() < 6 {
        let t = Cyclo::from_frac(rng.random_range(-40..=40), rng.random_range(1..=9));
        if !t.is_zero() && !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

pub fn pencil_fixture(name: &str) -> Option<Pencil> {
    Some(match name {
        "max-cl" => max_cl(),
        "c5-diagonal" => c5_diagonal(),
        "diag6" => diag6(),
        "case-i" => case_i(),
        "case-ii" => case_ii(),
        "case-iii" => case_iii(),
        "case-iv" => case_iv(),
        "case-v" => case_v(),
        "case-vi" => case_vi(),
        _ => return None,
    })
}
