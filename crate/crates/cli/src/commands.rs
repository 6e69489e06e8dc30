use std::fmt;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use qpencil_core::algebra::point::parse_point_list;
use qpencil_core::algebra::{ProjectivePoint, QuadExt, P1};
use qpencil_core::checks::run_builtin_checks;
use qpencil_core::fixtures::{pencil_fixture, PENCIL_FIXTURES};
use qpencil_core::groups::{
    all_subgroups, aut_sequence_decompose, cl_minimality, conjugacy_classes, named, orbit as group_orbit, preserves_pencil, semi_invariant_forms, stabilizer, ElementSet,
    FiniteGroup, GroupFingerprint, GroupJson, MonomialMap, DEFAULT_ORDER_CAP,
};
use qpencil_core::lattice::{minus_one_curves, riemann_roch_h0, solve_invariant_class, DivisorClass};
use qpencil_core::pencil::{pencils_equivalent, segre_analysis, Equivalence, Options, Pencil, PencilJson, SegreSymbol};
use qpencil_core::threefold::{classify as classify_symbol, reduction_center, singular_points, validate_symbol, Center, ReductionTag, ThreefoldError};
use serde_json::{json, Value};

use crate::{Format, GroupSource, PencilSource, SecondPencil};

pub struct Context {
    pub opts: Options,
    pub seed: u64,
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or schema-invalid input, exit status 2.
    Input(String),
    /// Well-formed input the analysis rejects, exit status 1.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Domain(m) => write!(f, "{m}"),
        }
    }
}

fn domain<E: fmt::Display>(module: &'static str) -> impl Fn(E) -> CliError {
    move |e| CliError::Domain(format!("{module} error: {e}"))
}

pub struct Report {
    pub json: Value,
    pub text: String,
    /// Exit with status 1 after printing.
    pub failed: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Report {
        Report { json, text, failed: false }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("report serializes"),
            Format::Text => self.text.trim_end().to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read_pencil(path: &Path, opts: &Options) -> Result<Pencil, CliError> {
    let j: PencilJson = serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: pencil schema error: {e}", path.display())))?;
    Pencil::from_json(&j, opts.conductor_cap).map_err(|e| CliError::Input(format!("{}: pencil error: {e}", path.display())))
}

fn pencil_by_name(name: &str) -> Result<Pencil, CliError> {
    pencil_fixture(name).ok_or_else(|| CliError::Input(format!("unknown pencil fixture {name:?}; known: {}", PENCIL_FIXTURES.join(", "))))
}

fn load_pencil(ctx: &Context, src: &PencilSource) -> Result<Pencil, CliError> {
    match (&src.input, &src.fixture) {
        (Some(path), _) => read_pencil(path, &ctx.opts),
        (None, Some(name)) => pencil_by_name(name),
        (None, None) => Err(CliError::Input("give a pencil with --in FILE or --fixture NAME".into())),
    }
}

fn load_second_pencil(ctx: &Context, src: &SecondPencil) -> Result<Option<Pencil>, CliError> {
    match (&src.pencil, &src.pencil_fixture) {
        (Some(path), _) => read_pencil(path, &ctx.opts).map(Some),
        (None, Some(name)) => pencil_by_name(name).map(Some),
        (None, None) => Ok(None),
    }
}

fn load_generators(ctx: &Context, src: &GroupSource) -> Result<Vec<MonomialMap>, CliError> {
    match (&src.input, &src.fixture) {
        (Some(path), _) => {
            let j: GroupJson = serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: group schema error: {e}", path.display())))?;
            j.parse(ctx.opts.conductor_cap).map_err(|e| CliError::Input(format!("{}: group error: {e}", path.display())))
        }
        (None, Some(name)) => named::generators(name).ok_or_else(|| CliError::Input(format!("unknown group fixture {name:?}; known: {}", named::GROUP_FIXTURES.join(", ")))),
        (None, None) => Err(CliError::Input("give a group with --in FILE or --fixture NAME".into())),
    }
}

fn load_group(ctx: &Context, src: &GroupSource) -> Result<FiniteGroup<MonomialMap>, CliError> {
    let gens = load_generators(ctx, src)?;
    let n = gens.first().map_or(6, MonomialMap::size);
    FiniteGroup::closure(MonomialMap::identity(n), &gens, DEFAULT_ORDER_CAP).map_err(domain("group"))
}

fn parse_symbol(s: &str) -> Result<SegreSymbol, CliError> {
    s.parse().map_err(|e| CliError::Input(format!("pencil error: {e}")))
}

fn coords_json<T: fmt::Display + qpencil_core::algebra::Scalar>(p: &ProjectivePoint<T>) -> Value {
    Value::from(p.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn fingerprint_json(f: &GroupFingerprint) -> Value {
    json!({
        "name": f.name(),
        "aliases": f.aliases(),
        "order": f.order,
        "element_orders": f.element_orders.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "abelian": f.abelian,
        "center_order": f.center_order,
        "derived_order": f.derived_order,
    })
}

pub fn segre(ctx: &Context, src: &PencilSource) -> Result<Report, CliError> {
    let p = load_pencil(ctx, src)?;
    let a = segre_analysis(&p, &ctx.opts).map_err(domain("pencil"))?;
    let roots: Vec<Value> = a
        .roots
        .iter()
        .map(|r| json!({"root": r.root.to_string(), "bracket": r.e_list, "l": r.l_list, "corank": r.corank, "multiplicity": r.total_multiplicity}))
        .collect();
    let json = json!({
        "brackets": a.symbol.brackets(),
        "symbol": a.symbol.to_string(),
        "conductor": a.conductor,
        "discriminant": a.discriminant.to_string(),
        "roots": roots,
        "pencil": p.to_json(),
    });
    let mut text = format!("symbol {}\ndiscriminant {}\n", a.symbol, a.discriminant);
    for r in &a.roots {
        let _ = writeln!(text, "root {}  bracket {:?}  corank {}", r.root, r.e_list, r.corank);
    }
    Ok(Report::ok(json, text))
}

pub fn normal_form(ctx: &Context, symbol: &str, roots: Option<&str>) -> Result<Report, CliError> {
    let s = parse_symbol(symbol)?;
    let pts: Vec<P1> = match roots {
        Some(list) => parse_point_list(list, ctx.opts.conductor_cap).map_err(|e| CliError::Input(format!("algebra error: {e}")))?,
        None => (1..=s.brackets().len() as i64).map(|k| P1::affine(qpencil_core::algebra::Cyclo::from_int(-k))).collect(),
    };
    let nf = qpencil_core::pencil::normal_form(&s, &pts).map_err(domain("pencil"))?;
    if let Some(k) = nf.shift {
        eprintln!("note: roots shifted by (λ:μ) -> (λ+{k}μ:μ) so that Q2 is nonsingular");
    }
    let mut text = format!("Q1 =\n{}\nQ2 =\n{}\nroots", nf.pencil.q1().matrix(), nf.pencil.q2().matrix());
    for r in &nf.roots {
        let _ = write!(text, " {r}");
    }
    Ok(Report::ok(serde_json::to_value(nf.pencil.to_json()).expect("pencil serializes"), text))
}

fn center_json(c: &Center) -> Value {
    let (kind, points, dimension): (&str, Vec<&ProjectivePoint<QuadExt>>, usize) = match c {
        Center::Point(p) => ("point", vec![p], 0),
        Center::Line([a, b]) => ("line", vec![a, b], 1),
        Center::Span { points, dimension } => ("span", points.iter().collect(), *dimension),
    };
    json!({"kind": kind, "dimension": dimension, "points": points.iter().map(|p| coords_json(p)).collect::<Vec<_>>()})
}

pub fn classify(ctx: &Context, symbol: Option<&str>, src: &PencilSource) -> Result<Report, CliError> {
    let pencil = match symbol {
        Some(_) => None,
        None => Some(load_pencil(ctx, src)?),
    };
    let s = match (symbol, &pencil) {
        (Some(text), _) => parse_symbol(text)?,
        (None, Some(p)) => segre_analysis(p, &ctx.opts).map_err(domain("pencil"))?.symbol,
        (None, None) => unreachable!("pencil loaded above"),
    };
    let violations: Vec<String> = match validate_symbol(&s) {
        Ok(()) => vec![],
        Err(ThreefoldError::Unvalidated(v)) => v,
        Err(e) => vec![e.to_string()],
    };
    let smooth = s.brackets().iter().all(|b| b == &[1]);
    let mut text = format!("symbol {s}\n");
    if !violations.is_empty() {
        let _ = writeln!(text, "invalid: {}", violations.join("; "));
        let json = json!({"symbol": s.to_string(), "valid": false, "violations": violations, "smooth": smooth, "singular_points": null, "decision": null});
        return Ok(Report { json, text, failed: true });
    }
    let decision = classify_symbol(&s).map_err(domain("threefold"))?;
    let _ = writeln!(text, "decision {} ({})", decision.tag, decision.rule);
    let (points, center) = match &pencil {
        Some(p) => {
            let pts = singular_points(p, &ctx.opts).map_err(domain("threefold"))?;
            for sp in &pts {
                let _ = writeln!(text, "singular {} over {}", sp.point, sp.field(p.conductor()));
            }
            let has_center = !matches!(decision.tag, ReductionTag::SmoothCandidate | ReductionTag::MaxClCandidate | ReductionTag::Invalid);
            let center = if has_center { Some(reduction_center(p, &decision, &ctx.opts).map_err(domain("threefold"))?) } else { None };
            if let Some(c) = &center {
                let _ = writeln!(text, "center {}", center_json(c));
            }
            let pts_json: Vec<Value> = pts.iter().map(|sp| json!({"coords": coords_json(&sp.point), "field": sp.field(p.conductor())})).collect();
            (Value::from(pts_json), center.as_ref().map_or(Value::Null, center_json))
        }
        None => (Value::Null, Value::Null),
    };
    let json = json!({
        "symbol": s.to_string(),
        "valid": true,
        "violations": violations,
        "smooth": smooth,
        "singular_points": points,
        "decision": {"tag": decision.tag.to_string(), "rule": decision.rule, "bracket": decision.bracket, "center": center},
    });
    Ok(Report { json, text, failed: decision.tag == ReductionTag::Invalid })
}

pub fn singular(ctx: &Context, src: &PencilSource) -> Result<Report, CliError> {
    let p = load_pencil(ctx, src)?;
    let pts = singular_points(&p, &ctx.opts).map_err(domain("threefold"))?;
    let mut text = format!("{} singular point(s)\n", pts.len());
    let mut list = Vec::new();
    for sp in &pts {
        let _ = writeln!(text, "{} over {} ({:?})", sp.point, sp.field(p.conductor()), sp.kind);
        list.push(json!({"coords": coords_json(&sp.point), "field": sp.field(p.conductor()), "source_bracket": sp.source_bracket, "kind": sp.kind}));
    }
    Ok(Report::ok(json!({"count": pts.len(), "points": list}), text))
}

pub fn equivalent(ctx: &Context, inputs: &[PathBuf]) -> Result<Report, CliError> {
    let [a, b] = inputs else {
        return Err(CliError::Input(format!("equivalent takes exactly two --in files, got {}", inputs.len())));
    };
    let (p1, p2) = (read_pencil(a, &ctx.opts)?, read_pencil(b, &ctx.opts)?);
    let e = pencils_equivalent(&p1, &p2, &ctx.opts).map_err(domain("pencil"))?;
    let (json, text) = match &e {
        Equivalence::Found { map, degenerate } => (
            json!({"equivalent": true, "map": map.to_string(), "degenerate": degenerate}),
            format!("equivalent via {map}{}", if *degenerate { " (at most two roots: stabilizer not finite)" } else { "" }),
        ),
        Equivalence::NotEquivalent => (json!({"equivalent": false, "map": null, "degenerate": false}), "not equivalent".to_string()),
    };
    Ok(Report::ok(json, text))
}

fn whole(n: usize) -> ElementSet {
    let mut s = ElementSet::empty(n);
    for i in 0..n {
        s.insert(i);
    }
    s
}

pub fn group_analyze(ctx: &Context, src: &GroupSource, pencil: &SecondPencil) -> Result<Report, CliError> {
    let g = load_group(ctx, src)?;
    let fp = GroupFingerprint::of(&g.table(), &whole(g.order()));
    let mut text = format!("order {}\ntype {fp}\n", g.order());
    let mut json = json!({
        "order": g.order(),
        "generators": g.generators().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "fingerprint": fingerprint_json(&fp),
        "decomposition": null,
    });
    if let Some(p) = load_second_pencil(ctx, pencil)? {
        if let Some(bad) = g.generators().iter().find(|m| !preserves_pencil(m, &p)) {
            return Err(CliError::Domain(format!("group error: element {bad} does not preserve the pencil")));
        }
        let d = aut_sequence_decompose(&g, &p, &ctx.opts).map_err(domain("group"))?;
        let _ = writeln!(text, "kernel {}\nimage {}", d.kernel_fingerprint, d.image_fingerprint);
        json["decomposition"] = json!({
            "kernel": fingerprint_json(&d.kernel_fingerprint),
            "image": fingerprint_json(&d.image_fingerprint),
            "image_elements": d.image.elements().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        });
    }
    Ok(Report::ok(json, text))
}

pub fn orbit(ctx: &Context, src: &GroupSource, point: &str) -> Result<Report, CliError> {
    let g = load_group(ctx, src)?;
    let pt = qpencil_core::algebra::point::parse_point(point, ctx.opts.conductor_cap).map_err(|e| CliError::Input(format!("algebra error: {e}")))?;
    if pt.coords().len() != g.identity().size() {
        return Err(CliError::Input(format!("point has {} coordinates, the group acts on {}", pt.coords().len(), g.identity().size())));
    }
    let orb = group_orbit(&g, &pt);
    let stab = stabilizer(&g, &pt);
    let text = format!("orbit length {}\nstabilizer order {}\ngroup order {}\n", orb.len(), stab.len(), g.order());
    let json = json!({
        "orbit_length": orb.len(),
        "stabilizer_order": stab.len(),
        "group_order": g.order(),
        "orbit": orb.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    Ok(Report::ok(json, text))
}

pub fn subgroups(ctx: &Context, src: &GroupSource) -> Result<Report, CliError> {
    let g = load_group(ctx, src)?;
    let table = g.table();
    let subs = all_subgroups(&table);
    let classes = conjugacy_classes(&table, &subs);
    let mut text = format!("{} subgroups in {} conjugacy classes\n", subs.len(), classes.len());
    let mut list = Vec::new();
    for c in &classes {
        let gens: Vec<String> = c.representative.generators.iter().map(|&k| g.elements()[k].to_string()).collect();
        let _ = writeln!(text, "{:<14} order {:>4}  class size {:>3}", c.fingerprint.name(), c.fingerprint.order, c.class_size);
        list.push(json!({"type": c.fingerprint.name(), "order": c.fingerprint.order, "class_size": c.class_size, "generators": gens, "fingerprint": fingerprint_json(&c.fingerprint)}));
    }
    Ok(Report::ok(json!({"subgroup_count": subs.len(), "classes": list}), text))
}

pub fn minimality(ctx: &Context, src: &GroupSource) -> Result<Report, CliError> {
    let gens = load_generators(ctx, src)?;
    let m = cl_minimality(&gens).map_err(domain("group"))?;
    let orbits: Vec<Vec<String>> = m.plane_orbits.iter().map(|o| o.iter().map(|p| p.to_string()).collect()).collect();
    let mut text = format!("invariant rank {}\nminimal {}\n", m.invariant_rank, m.minimal);
    for o in &orbits {
        let _ = writeln!(text, "orbit {}", o.join(", "));
    }
    Ok(Report::ok(json!({"invariant_rank": m.invariant_rank, "minimal": m.minimal, "plane_orbits": orbits}), text))
}

pub fn semi_invariants(ctx: &Context, src: &GroupSource, pencil: &SecondPencil, degree: u32, vars: Option<&str>) -> Result<Report, CliError> {
    let gens = load_generators(ctx, src)?;
    let p = load_second_pencil(ctx, pencil)?.ok_or_else(|| CliError::Input("give the pencil with --pencil FILE or --pencil-fixture NAME".into()))?;
    let vars: Vec<usize> = match vars {
        None => (0..p.size()).collect(),
        Some(list) => list
            .split(',')
            .map(|v| v.trim().parse::<usize>().ok().filter(|&k| k >= 1).map(|k| k - 1).ok_or_else(|| CliError::Input(format!("bad variable index {v:?}"))))
            .collect::<Result<_, _>>()?,
    };
    let spaces = semi_invariant_forms(&gens, degree, &p, &vars, &ctx.opts).map_err(domain("group"))?;
    let mut text = String::new();
    let mut list = Vec::new();
    for s in &spaces {
        let chi: Vec<String> = s.character.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(text, "character [{}]: {} form(s), {} modulo the pencil", chi.join(", "), s.forms.len(), s.complement.len());
        for f in &s.forms {
            let _ = writeln!(text, "  {f}");
        }
        list.push(json!({
            "character": chi,
            "forms": s.forms.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "complement": s.complement.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        }));
    }
    if spaces.is_empty() {
        text.push_str("no semi-invariant forms\n");
    }
    Ok(Report::ok(json!({"degree": degree, "characters": list}), text))
}

pub fn dp4_h0(class: &str) -> Result<Report, CliError> {
    let d: DivisorClass = class.parse().map_err(|e| CliError::Input(format!("lattice error: {e}")))?;
    if !d.meets_all_curves_nonnegatively() {
        return Err(CliError::Domain(format!("lattice error: {d} meets some (-1)-curve negatively, so it is not nef")));
    }
    let h0 = riemann_roch_h0(&d, true).map_err(domain("lattice"))?;
    Ok(Report::ok(json!({"class": d, "h0": h0}), h0.to_string()))
}

pub fn dp4_curves() -> Result<Report, CliError> {
    let curves = minus_one_curves();
    let text = curves.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("\n");
    Ok(Report::ok(json!({"count": curves.len(), "curves": curves}), text))
}

pub fn dp4_solve(degree: i64) -> Result<Report, CliError> {
    let c = solve_invariant_class(degree);
    let text = c.map_or_else(|| "infeasible".to_string(), |c| c.to_string());
    Ok(Report::ok(json!({"degree": degree, "feasible": c.is_some(), "class": c}), text))
}

pub fn verify(ctx: &Context) -> Result<Report, CliError> {
    let results = run_builtin_checks(&ctx.opts, ctx.seed);
    let passed = results.iter().filter(|c| c.pass).count();
    let mut text = String::new();
    for c in &results {
        let _ = writeln!(text, "{:<4} {:<22} {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.claim);
        if !c.pass {
            let _ = writeln!(text, "       expected: {}\n       observed: {}", c.expected, c.observed);
        }
    }
    let _ = writeln!(text, "{passed}/{} checks passed", results.len());
    let json = json!({"passed": passed, "total": results.len(), "checks": results});
    Ok(Report { json, text, failed: passed != results.len() })
}
