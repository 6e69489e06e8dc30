use qpencil_core::algebra::{Cyclo, P1};
use qpencil_core::pencil::{normal_form, segre_symbol, Options, SegreSymbol};
use qpencil_core::threefold::{classify, reduction_center, singular_points, Center, ReductionTag};

/// Every symbol built from brackets (a) and (a,1) with entry sum 6.
fn validated_symbols() -> Vec<SegreSymbol> {
    let mut shapes: Vec<Vec<u32>> = Vec::new();
    for a in 1..=6 {
        shapes.push(vec![a]);
        if a < 6 {
            shapes.push(vec![a, 1]);
        }
    }
    fn rec(shapes: &[Vec<u32>], start: usize, left: u32, cur: &mut Vec<Vec<u32>>, out: &mut Vec<SegreSymbol>) {
        if left == 0 {
            out.push(SegreSymbol::new(cur.clone()).unwrap());
            return;
        }
        for i in start..shapes.len() {
            let w: u32 = shapes[i].iter().sum();
            if w <= left {
                cur.push(shapes[i].clone());
                rec(shapes, i, left - w, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&shapes, 0, 6, &mut Vec::new(), &mut out);
    out
}

fn roots(k: usize) -> Vec<P1> {
    (1..=k as i64).map(|m| P1::affine(Cyclo::from_int(-m))).collect()
}

#[test]
fn every_validated_symbol_round_trips_and_counts_points() {
    let opts = Options::default();
    let symbols = validated_symbols();
    assert!(symbols.len() > 20);
    for s in &symbols {
        let nf = normal_form(s, &roots(s.brackets().len())).unwrap();
        assert_eq!(&segre_symbol(&nf.pencil, &opts).unwrap(), s);
        let expected: usize = s
            .brackets()
            .iter()
            .map(|b| match b.as_slice() {
                [1] => 0,
                [_] => 1,
                [1, 1] => 2,
                _ => 1,
            })
            .sum();
        assert_eq!(singular_points(&nf.pencil, &opts).unwrap().len(), expected, "{s}");
        let d = classify(s).unwrap();
        assert_ne!(d.tag, ReductionTag::Invalid, "{s}");
    }
}

#[test]
fn projection_centers() {
    let opts = Options::default();
    let nf = |s: &str| {
        let s: SegreSymbol = s.parse().unwrap();
        normal_form(&s, &roots(s.brackets().len())).unwrap().pencil
    };
    for (s, want) in [("[2,2,1,1]", "line"), ("[(1,1),(1,1),1,1]", "span3"), ("[3,1,1,1]", "point"), ("[(3,1),1,1]", "line"), ("[2,2,2]", "plane")] {
        let p = nf(s);
        let d = classify(&s.parse().unwrap()).unwrap();
        let c = reduction_center(&p, &d, &opts).unwrap();
        let got = match c {
            Center::Point(_) => "point",
            Center::Line(_) => "line",
            Center::Span { dimension: 3, .. } => "span3",
            Center::Span { dimension: 2, .. } => "plane",
            Center::Span { .. } => "other",
        };
        assert_eq!(got, want, "{s}");
    }
}
