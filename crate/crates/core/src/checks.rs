//! Built-in reference checks over the shipped fixtures, run by `qpencil verify-paper`.

use serde::Serialize;

use crate::algebra::recognize::sqrt_in_field;
use crate::algebra::{Cyclo, ProjectivePoint, QuadExt, P1};
use crate::fixtures;
use crate::groups::{
    aut_sequence_decompose, all_subgroups, cl_minimality, conjugacy_classes, induced_moebius, lift_moebius, moebius_stabilizer, named, orbit, semi_invariant_forms, FiniteGroup,
    GroupElement, MonomialMap, DEFAULT_ORDER_CAP,
};
use crate::lattice::{minus_one_curves, riemann_roch_h0, solve_invariant_class, DivisorClass};
use crate::pencil::{normal_form, segre_analysis, segre_symbol, Options, Pencil, SegreSymbol};
use crate::threefold::{classify, jacobian_rank_at_most_one, planes_on_max_cl, singular_points};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub claim: &'static str,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

type CheckFn = fn(&Options, u64) -> Result<(String, String), String>;

fn eq<T: ToString + PartialEq>(expected: T, observed: T) -> Result<(String, String), String> {
    Ok((expected.to_string(), observed.to_string()))
}

fn symbol(s: &str) -> SegreSymbol {
    s.parse().expect("literal symbol")
}

fn group(gens: &[MonomialMap]) -> Result<FiniteGroup<MonomialMap>, String> {
    FiniteGroup::closure(MonomialMap::identity(6), gens, DEFAULT_ORDER_CAP).map_err(|e| e.to_string())
}

/// The ten subgroups `A₁..A₁₀` of `Ĝ` with respect to `g_i = h_i`.
pub fn named_minimal_subgroups() -> Vec<(&'static str, Vec<MonomialMap>)> {
    let h = named::ghat();
    let (g1, g2, g3, g4) = (&h[0], &h[1], &h[2], &h[3]);
    let sq = g1.compose(g1);
    vec![
        ("A1", vec![g1.clone()]),
        ("A2", vec![sq.clone(), g2.clone()]),
        ("A3", vec![g1.clone(), g2.clone()]),
        ("A4", vec![g1.clone(), g3.clone()]),
        ("A5", vec![sq.clone(), g2.clone(), g3.clone()]),
        ("A6", vec![g1.clone(), g2.clone(), g3.clone()]),
        ("A7", vec![g1.compose(g3), g2.clone()]),
        ("A8", vec![g1.clone(), g2.compose(g3)]),
        ("A9", vec![g1.clone(), g2.compose(g3), g4.clone()]),
        ("A10", vec![sq, g2.clone(), g3.clone(), g4.clone()]),
    ]
}

/// Sample points on the variety of the `c5_diagonal` pencil with 3, 2 and 1 zero coordinates among `x₁..x₅`.
pub fn zero_pattern_points(opts: &Options) -> Vec<ProjectivePoint<QuadExt>> {
    let xi = Cyclo::zeta(5);
    let i = Cyclo::i();
    let x = |k: i64| xi.pow(k);
    let int = Cyclo::from_int;
    let raw: [(Vec<Cyclo>, Cyclo); 3] = [
        (vec![int(0), int(0), int(0), int(1), &i * x(2)], x(4) - int(1)),
        (vec![int(0), int(0), int(3), int(4) * x(2), int(5) * &i * x(4)], -(int(9) + int(16) * x(4) - int(25) * x(3))),
        (vec![int(0), int(1), &i * x(2), int(1), &i * x(2)], int(2) * x(4) - int(2)),
    ];
    raw.into_iter()
        .map(|(head, sq)| {
            let last = match sqrt_in_field(&sq, 20, opts.denom_bound) {
                Some(r) => QuadExt::base(r),
                None => QuadExt::sqrt_of(sq),
            };
            let mut coords: Vec<QuadExt> = head.into_iter().map(QuadExt::base).collect();
            coords.push(last);
            ProjectivePoint::new(coords).expect("nonzero point")
        })
        .collect()
}

fn stabilizer_name(p: &Pencil, opts: &Options) -> Result<String, String> {
    let roots = segre_analysis(p, opts).map_err(|e| e.to_string())?.labelled_roots().map_err(|e| e.to_string())?;
    Ok(moebius_stabilizer(&roots).map_err(|e| e.to_string())?.fingerprint.name())
}

const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("symbol-max-cl", "the max-Cl pencil has symbol [(1,1),(1,1),(1,1)]", |o, _| {
        eq(symbol("[(1,1),(1,1),(1,1)]"), segre_symbol(&fixtures::max_cl(), o).map_err(|e| e.to_string())?)
    }),
    ("symbol-c5-diagonal", "the diagonal pencil with C2^4:C5 symmetry is smooth", |o, _| {
        eq(symbol("[1,1,1,1,1,1]"), segre_symbol(&fixtures::c5_diagonal(), o).map_err(|e| e.to_string())?)
    }),
    ("symbol-round-trip", "normal forms of the seven reduction-tree symbols round-trip", |o, _| {
        let list = ["[1,1,1,1,1,1]", "[2,2,1,1]", "[2,2,2]", "[3,3]", "[(1,1),(1,1),1,1]", "[(1,1),(1,1),(1,1)]", "[(2,1),(2,1)]"];
        let mut bad = Vec::new();
        for s in list {
            let s = symbol(s);
            let roots: Vec<P1> = (1..=s.brackets().len() as i64).map(|k| P1::affine(Cyclo::from_int(-k))).collect();
            let nf = normal_form(&s, &roots).map_err(|e| e.to_string())?;
            if segre_symbol(&nf.pencil, o).map_err(|e| e.to_string())? != s {
                bad.push(s.to_string());
            }
        }
        eq("all 7".to_string(), if bad.is_empty() { "all 7".to_string() } else { format!("mismatch: {}", bad.join(" ")) })
    }),
    ("nodes-max-cl", "six singular points, the coordinate points", |o, _| {
        let p = fixtures::max_cl();
        let pts = singular_points(&p, o).map_err(|e| e.to_string())?;
        let coordinate = pts.iter().filter(|s| s.point.zero_count() == 5 && jacobian_rank_at_most_one(&p, s.point.coords())).count();
        eq("6 points, 6 coordinate".to_string(), format!("{} points, {coordinate} coordinate", pts.len()))
    }),
    ("planes-max-cl", "eight planes lie on the max-Cl variety", |o, _| eq(8, planes_on_max_cl(&fixtures::max_cl(), o).map_err(|e| e.to_string())?.len())),
    ("classify", "reduction tags of the listed symbols", |_, _| {
        let cases = [
            ("[2,2,1,1]", "ProjectiveSpace"),
            ("[3,3]", "ProjectiveSpace"),
            ("[(2,1),(2,1)]", "ProjectiveSpace"),
            ("[2,2,2]", "InvariantPlane"),
            ("[(1,1),(1,1),1,1]", "FibrationOverP1"),
            ("[2,1,1,1,1]", "QuadricInP4"),
            ("[(3,1),1,1]", "ConicBundle"),
            ("[1,1,1,1,1,1]", "SmoothCandidate"),
            ("[(1,1),(1,1),(1,1)]", "MaxClCandidate"),
        ];
        let want: Vec<String> = cases.iter().map(|c| format!("{}->{}", c.0, c.1)).collect();
        let mut got = Vec::new();
        for (s, _) in cases {
            got.push(format!("{s}->{}", classify(&symbol(s)).map_err(|e| e.to_string())?.tag));
        }
        eq(want.join(" "), got.join(" "))
    }),
    ("stabilizers", "root-set stabilizers of cases (i)-(vi)", |o, _| {
        let pencils = [fixtures::case_i(), fixtures::case_ii(), fixtures::case_iii(), fixtures::case_iv(), fixtures::case_v(), fixtures::case_vi()];
        let mut got = Vec::new();
        for p in &pencils {
            got.push(stabilizer_name(p, o)?);
        }
        eq("S4 D12 D6 C2^2 C5 C2".to_string(), got.join(" "))
    }),
    ("stabilizer-generic", "six generic rational roots have trivial stabilizer", |o, seed| {
        let roots: Vec<Option<Cyclo>> = fixtures::random_rational_roots(seed).into_iter().map(Some).collect();
        eq("1".to_string(), stabilizer_name(&fixtures::diagonal_with_roots(&roots), o)?)
    }),
    ("subgroups-160", "subgroup types of C2^5:C5, one C2^4:C5", |_, _| {
        let g = group(&named::g160())?;
        let table = g.table();
        let subs = all_subgroups(&table);
        let classes = conjugacy_classes(&table, &subs);
        let mut types: Vec<String> = classes.iter().map(|c| c.fingerprint.name()).collect();
        types.sort();
        types.dedup();
        let unique = classes.iter().filter(|c| c.fingerprint.name() == "C2^4:C5").map(|c| c.class_size).sum::<usize>();
        let mut want = vec!["1", "C2", "C2^2", "C2^3", "C2^4", "C2^5", "C5", "C10", "C2^4:C5", "C2^5:C5"];
        want.sort();
        eq(format!("{} / 1", want.join(",")), format!("{} / {unique}", types.join(",")))
    }),
    ("minimal-ghat", "minimal subgroup types of Ĝ, three classes of D8", |_, _| {
        let g = group(&named::ghat())?;
        let table = g.table();
        let subs = all_subgroups(&table);
        let mut types = Vec::new();
        let mut d8 = 0;
        for c in conjugacy_classes(&table, &subs) {
            let gens: Vec<MonomialMap> = c.representative.generators.iter().map(|&k| g.elements()[k].clone()).collect();
            if cl_minimality(&gens).map_err(|e| e.to_string())?.minimal {
                let name = c.fingerprint.name();
                d8 += (name == "D8") as usize;
                types.push(name);
            }
        }
        types.sort();
        types.dedup();
        let mut want = vec!["C4", "C2^2", "C4xC2", "D8", "C2^3", "D8xC2", "S4", "C2^3:C3", "C2^3:S3"];
        want.sort();
        eq(format!("{} / D8 classes 3", want.join(",")), format!("{} / D8 classes {d8}", types.join(",")))
    }),
    ("minimal-a1-a10", "A1..A10 all have invariant rank 1", |_, _| {
        let mut ranks = Vec::new();
        for (name, gens) in named_minimal_subgroups() {
            ranks.push(format!("{name}:{}", cl_minimality(&gens).map_err(|e| e.to_string())?.invariant_rank));
        }
        let want: Vec<String> = named_minimal_subgroups().iter().map(|(n, _)| format!("{n}:1")).collect();
        eq(want.join(" "), ranks.join(" "))
    }),
    ("group-orders", "orders of C2^4:C5 and Ĝ", |_, _| eq("80 48".to_string(), format!("{} {}", group(&named::g80())?.order(), group(&named::ghat())?.order()))),
    ("orbit-80", "orbit of (1:z:z^2:z^3:z^4:0) under C2^4:C5", |_, _| {
        let g = group(&named::g80())?;
        let pt = ProjectivePoint::new((0..5).map(|k| Cyclo::zeta_pow(5, k)).chain([Cyclo::zero()]).collect()).map_err(|e| e.to_string())?;
        eq(16, orbit(&g, &pt).len())
    }),
    ("orbits-c2-4", "orbits of the zero-pattern points under C2^4", |o, _| {
        let g = group(&named::even_sign_changes())?;
        let lens: Vec<String> = zero_pattern_points(o).iter().map(|pt| orbit(&g, pt).len().to_string()).collect();
        eq("4 8 16".to_string(), lens.join(" "))
    }),
    ("decompose-80", "C2^4:C5 splits as C2^4 by C5 on the pencil", |o, _| {
        let d = aut_sequence_decompose(&group(&named::g80())?, &fixtures::c5_diagonal(), o).map_err(|e| e.to_string())?;
        eq("C2^4 C5".to_string(), format!("{} {}", d.kernel_fingerprint.name(), d.image_fingerprint.name()))
    }),
    ("lift-order-5", "the order-5 Möbius map lifts to an order-5 monomial map", |o, _| {
        let p = fixtures::c5_diagonal();
        let m = induced_moebius(&named::cycle5(), &p, o).map_err(|e| e.to_string())?;
        let r = lift_moebius(&p, &m, o).map_err(|e| e.to_string())?;
        eq(true, r.orders.contains_key(&5))
    }),
    ("lift-order-4", "no order-4 element of S4 in case (i) has a lift of order 4", |o, _| {
        let p = fixtures::case_i();
        let roots = segre_analysis(&p, o).map_err(|e| e.to_string())?.labelled_roots().map_err(|e| e.to_string())?;
        let st = moebius_stabilizer(&roots).map_err(|e| e.to_string())?;
        let mut seen = 0;
        let mut order4 = 0;
        for m in st.group.elements().iter().filter(|m| m.order(24) == Some(4)) {
            let r = lift_moebius(&p, m, o).map_err(|e| e.to_string())?;
            if r.empty {
                return Err(format!("no monomial lift found for {m}"));
            }
            seen += 1;
            order4 += r.orders.get(&4).copied().unwrap_or(0);
        }
        eq("6 elements, 0 order-4 lifts".to_string(), format!("{seen} elements, {order4} order-4 lifts"))
    }),
    ("lift-identity", "lifts of the identity are the 32 sign changes", |o, _| {
        let r = lift_moebius(&fixtures::c5_diagonal(), &crate::pencil::MoebiusMap::identity(), o).map_err(|e| e.to_string())?;
        eq("32 of order <= 2".to_string(), format!("{} of order <= {}", r.lifts.len(), r.orders.keys().max().copied().unwrap_or(0)))
    }),
    ("semi-invariants", "quadric semi-invariants are the five forms sum z^i x_i^2; no cubic ones", |o, _| {
        let g = named::g80();
        let vars = [0, 1, 2, 3, 4];
        let quad = semi_invariant_forms(&g, 2, &fixtures::c5_diagonal(), &vars, o).map_err(|e| e.to_string())?;
        let shaped = quad.iter().all(|s| {
            s.forms.len() == 1 && {
                let f = &s.forms[0];
                let c = |k: usize| f.coeff(&(0..5).map(|j| if j == k { 2 } else { 0 }).collect::<Vec<u32>>());
                let z = c(0);
                f.terms.len() == 5 && z.pow(5).is_one() && (0..5).all(|k| c(k) == z.pow(((k + 1) % 5) as i64))
            }
        });
        let cubic = semi_invariant_forms(&g, 3, &fixtures::c5_diagonal(), &vars, o).map_err(|e| e.to_string())?;
        let cubic_dim: usize = cubic.iter().map(|s| s.complement.len()).sum();
        eq("5 forms of the stated shape, cubic 0".to_string(), format!("{} forms{}, cubic {cubic_dim}", quad.len(), if shaped { " of the stated shape" } else { "" }))
    }),
    ("dp4-curves", "sixteen (-1)-curves", |_, _| eq(16, minus_one_curves().len())),
    ("dp4-h0", "h0(-K), h0(-2K), h0(-3K)", |_, _| {
        let k = DivisorClass::canonical();
        let vals: Vec<String> = (1..=3).map(|m| riemann_roch_h0(&(-m * k), true).map(|h| h.to_string()).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
        eq("5 13 25".to_string(), vals.join(" "))
    }),
    ("dp4-invariant-class", "invariant class of degree d is -(d/4)K exactly when 4 | d", |_, _| {
        let k = DivisorClass::canonical();
        let got: Vec<String> = (1..=12).map(|d| solve_invariant_class(d).map_or("-".to_string(), |c| c.to_string())).collect();
        let want: Vec<String> = (1..=12).map(|d| if d % 4 == 0 { (-(d / 4) * k).to_string() } else { "-".to_string() }).collect();
        eq(want.join(" "), got.join(" "))
    }),
    ("max-cl-g1", "(x3:x4:x5:x6:x1:x2) induces an order-3 map cycling the roots", |o, _| {
        let g1 = &named::max_cl()[0];
        eq(3, induced_moebius(g1, &fixtures::max_cl(), o).map_err(|e| e.to_string())?.order(10).unwrap_or(0))
    }),
];

/// Run every check; failures to compute count as failures. `seed` picks the generic root set.
pub fn run_builtin_checks(opts: &Options, seed: u64) -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|(id, claim, f)| match f(opts, seed) {
            Ok((expected, observed)) => CheckOutcome { id, claim, pass: expected == observed, expected, observed },
            Err(e) => CheckOutcome { id, claim, expected: "a result".into(), observed: format!("error: {e}"), pass: false },
        })
        .collect()
}

pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}
