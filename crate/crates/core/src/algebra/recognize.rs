//! Numeric root isolation and reconstruction of exact roots in Q(ζ_N).
//!
//! Every candidate produced here is a guess; callers verify by exact substitution.

use num::complex::Complex64;
use num::integer::Integer;
use num::{BigInt, BigRational, Signed, Zero};

use super::cyclo::{euler_phi, Cyclo};
use super::poly::Poly;

/// Default bound on denominators of reconstructed coordinates.
pub const DEFAULT_DENOM_BOUND: u64 = 10_000;

/// Best rational approximation with denominator at most `bound`, accepted if within `tol`.
pub fn rationalize(x: f64, bound: u64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let ax = x.abs();
    // continued fraction convergents
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut r = ax;
    let mut best: Option<(i128, i128)> = None;
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e18 {
            break;
        }
        let a = a as i128;
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 as u128 > bound as u128 {
            break;
        }
        best = Some((p2, q2));
        if ((p2 as f64) / (q2 as f64) - ax).abs() <= tol {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a as f64;
        if frac < 1e-300 {
            break;
        }
        r = 1.0 / frac;
    }
    let (p, q) = best?;
    if ((p as f64) / (q as f64) - ax).abs() > tol {
        return None;
    }
    let v = BigRational::new(BigInt::from(p), BigInt::from(q));
    Some(if neg { -v } else { v })
}

fn tolerance(z: f64) -> f64 {
    1e-8 * z.abs().max(1.0)
}

/// Candidates of the form `a·ζ^j + b·ζ^k` near `z`, with rational `a`, `b`.
///
/// Sparse search only; dense elements need [`recognize_from_embeddings`].
pub fn recognize_candidates(z: Complex64, conductor: u32, denom_bound: u64) -> Vec<Cyclo> {
    let n = conductor.max(1);
    let mut out = Vec::new();
    let omega = |k: u32| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
    // rational multiples of a single root of unity
    for j in 0..n {
        let w = z * omega(j).conj();
        if w.im.abs() <= tolerance(w.re) {
            if let Some(a) = rationalize(w.re, denom_bound, tolerance(w.re)) {
                out.push(&Cyclo::from_rational(&a) * &Cyclo::zeta_pow(n, j as i64));
            }
        }
    }
    // two-term combinations
    for j in 0..n {
        for k in j + 1..n {
            let (u, v) = (omega(j), omega(k));
            let det = u.re * v.im - u.im * v.re;
            if det.abs() < 1e-9 {
                continue;
            }
            let a = (z.re * v.im - z.im * v.re) / det;
            let b = (u.re * z.im - u.im * z.re) / det;
            let (Some(ra), Some(rb)) = (rationalize(a, denom_bound, tolerance(a)), rationalize(b, denom_bound, tolerance(b)))
            else {
                continue;
            };
            if ra.is_zero() || rb.is_zero() {
                continue;
            }
            out.push(
                &(&Cyclo::from_rational(&ra) * &Cyclo::zeta_pow(n, j as i64))
                    + &(&Cyclo::from_rational(&rb) * &Cyclo::zeta_pow(n, k as i64)),
            );
        }
    }
    out.into_iter().filter(|c| (c.to_complex() - z).norm() <= tolerance(z.norm()) * 10.0).collect()
}

/// First sparse candidate near `z`, or `None`.
pub fn recognize_algebraic(z: Complex64, conductor: u32, denom_bound: u64) -> Option<Cyclo> {
    recognize_candidates(z, conductor, denom_bound).into_iter().next()
}

/// Reconstruct an element from its images under the embeddings `k ∈ (Z/N)^*`
/// listed in ascending order of `k`.
pub fn recognize_from_embeddings(values: &[Complex64], conductor: u32, denom_bound: u64) -> Option<Cyclo> {
    let n = conductor.max(1);
    let units = units(n);
    let phi = euler_phi(n) as usize;
    assert_eq!(values.len(), units.len());
    // Vandermonde system V c = z with V[r][j] = ω^{k_r j}
    let mut a: Vec<Vec<Complex64>> = units
        .iter()
        .zip(values)
        .map(|(&k, &z)| {
            let mut row: Vec<Complex64> = (0..phi)
                .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * ((k as u64 * j as u64) % n as u64) as f64 / n as f64))
                .collect();
            row.push(z);
            row
        })
        .collect();
    let c = complex_solve(&mut a)?;
    let mut coeffs = Vec::with_capacity(phi);
    for x in c {
        let tol = tolerance(x.re) * 10.0;
        if x.im.abs() > tol {
            return None;
        }
        coeffs.push(rationalize(x.re, denom_bound, tol)?);
    }
    Some(Cyclo::from_rationals(n, &coeffs))
}

pub(crate) fn units(n: u32) -> Vec<u32> {
    if n <= 2 {
        return vec![1];
    }
    (1..n).filter(|k| k.gcd(&n) == 1).collect()
}

fn complex_solve(a: &mut [Vec<Complex64>]) -> Option<Vec<Complex64>> {
    let n = a.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].norm().partial_cmp(&a[j][c].norm()).unwrap())?;
        if a[p][c].norm() < 1e-12 {
            return None;
        }
        a.swap(c, p);
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            for j in c..=n {
                let v = a[c][j];
                a[i][j] -= f * v;
            }
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = a[i][n];
        for j in i + 1..n {
            s -= a[i][j] * x[j];
        }
        x[i] = s / a[i][i];
    }
    Some(x)
}

/// Numeric roots of a complex polynomial (ascending coefficients), Aberth iteration.
pub fn complex_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().norm() == 0.0 {
        c.pop();
    }
    let deg = c.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = c[deg];
    let monic: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    if deg == 1 {
        return vec![-monic[0]];
    }
    let radius = 1.0 + monic[..deg].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius * 0.5, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for a in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + a;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    s += Complex64::new(1.0, 0.0) / (z[i] - z[j]);
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zi);
            if dp.norm() > 0.0 {
                let step = p / dp;
                if step.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    z
}

/// Exact roots of `p` lying in Q(ζ_N) with bounded coordinate denominators.
///
/// `p` should be squarefree; repeated roots are reported once.
pub fn roots_in_field(p: &Poly, conductor: u32, denom_bound: u64) -> Vec<Cyclo> {
    let Some(deg) = p.degree() else { return Vec::new() };
    if deg == 0 {
        return Vec::new();
    }
    let n = conductor.max(1);
    let mut found: Vec<Cyclo> = Vec::new();
    let accept = |r: Cyclo, found: &mut Vec<Cyclo>| {
        if !found.contains(&r) && p.eval(&r).is_zero() {
            found.push(r);
        }
    };
    if deg == 1 {
        found.push(-(&p.coeff(0) / &p.coeff(1)));
        return found;
    }
    let units = units(n);
    // roots under every embedding; units come in conjugate pairs k, N−k
    let half: Vec<u32> = units.iter().copied().filter(|&k| n <= 2 || k < n - k).collect();
    let per_embedding: Vec<Vec<Complex64>> = half.iter().map(|&k| complex_roots(&p.embed(n, k))).collect();
    for &z1 in &per_embedding[0] {
        if found.len() == deg {
            break;
        }
        // cheap sparse guesses first
        for cand in recognize_candidates(z1, n, denom_bound) {
            accept(cand, &mut found);
        }
        if found.iter().any(|r| (r.embed(1) - z1).norm() < 1e-6 * z1.norm().max(1.0)) {
            continue;
        }
        // full reconstruction over all embedding choices
        let choices = &per_embedding[1..];
        let total: usize = choices.iter().map(|c| c.len()).product();
        if total > 2_000_000 {
            continue;
        }
        let mut idx = vec![0usize; choices.len()];
        'combos: loop {
            let mut values = Vec::with_capacity(units.len());
            for &k in &units {
                let v = if k == 1 {
                    z1
                } else if let Some(pos) = half.iter().position(|&h| h == k) {
                    choices[pos - 1][idx[pos - 1]]
                } else {
                    let pos = half.iter().position(|&h| h == n - k).unwrap();
                    if pos == 0 {
                        z1.conj()
                    } else {
                        choices[pos - 1][idx[pos - 1]].conj()
                    }
                };
                values.push(v);
            }
            if let Some(r) = recognize_from_embeddings(&values, n, denom_bound) {
                let before = found.len();
                accept(r, &mut found);
                if found.len() > before {
                    break 'combos;
                }
            }
            // advance odometer
            let mut d = 0;
            loop {
                if d == idx.len() {
                    break 'combos;
                }
                idx[d] += 1;
                if idx[d] < choices[d].len() {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
        }
    }
    found
}

/// Exact square root in Q(ζ_N), if one exists within the denominator bound.
pub fn sqrt_in_field(x: &Cyclo, conductor: u32, denom_bound: u64) -> Option<Cyclo> {
    if x.is_zero() {
        return Some(Cyclo::zero());
    }
    if let Some(q) = x.to_rational() {
        if q.is_positive() {
            let (n, d) = (q.numer().sqrt(), q.denom().sqrt());
            if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                return Some(Cyclo::from_rational(&BigRational::new(n, d)));
            }
        }
    }
    let p = Poly::new(vec![-x.clone(), Cyclo::zero(), Cyclo::one()]);
    roots_in_field(&p, conductor, denom_bound).into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recognizes_zeta5() {
        let z = Complex64::new(0.30901699437494745, 0.9510565162951535);
        let r = recognize_algebraic(z, 5, 1000).unwrap();
        // exact check through the minimal polynomial
        let p = Poly::new(vec![Cyclo::one(); 5]);
        assert!(p.eval(&r).is_zero());
        assert_eq!(r, Cyclo::zeta(5));
        assert_eq!(recognize_algebraic(Complex64::new(-1.0, 0.0), 1, 10).unwrap(), Cyclo::from_int(-1));
        assert!(recognize_algebraic(Complex64::new(std::f64::consts::PI, 0.0), 12, 1000).is_none());
    }

    #[test]
    fn dense_roots_via_embeddings() {
        // roots −2 ± i and 1/3 + ζ8 in Q(ζ16)
        let i = Cyclo::i();
        let a = &Cyclo::from_int(-2) + &i;
        let b = &Cyclo::from_int(-2) - &i;
        let c = &Cyclo::from_frac(1, 3) + &Cyclo::zeta(8);
        let s2 = &Cyclo::zeta(8) + &Cyclo::zeta_pow(8, 7);
        let d = &(&Cyclo::from_int(3) + &i) * &s2.inv().unwrap();
        let p = Poly::from_roots(&[a.clone(), b.clone(), c.clone(), d.clone()]);
        let roots = roots_in_field(&p, 16, 1000);
        assert_eq!(roots.len(), 4);
        for r in [a, b, c, d] {
            assert!(roots.contains(&r));
        }
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt_in_field(&Cyclo::from_int(-1), 4, 100).map(|r| &r * &r), Some(Cyclo::from_int(-1)));
        assert!(sqrt_in_field(&Cyclo::from_int(-1), 3, 100).is_none());
        assert_eq!(sqrt_in_field(&Cyclo::from_frac(9, 4), 1, 100), Some(Cyclo::from_frac(3, 2)));
        let r = sqrt_in_field(&Cyclo::zeta(8), 16, 100).unwrap();
        assert_eq!(&r * &r, Cyclo::zeta(8));
    }
}
