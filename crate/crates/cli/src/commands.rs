use std::fmt::Write as _;
use std::path::Path;

use gradlie::algebra::GradedLieAlgebra;
use gradlie::freelie::{builtin, parse_expr, LieExpr, MultiDegree, Var, VarKind, BUILTIN_NAMES};
use gradlie::gradings::{self, Target};
use gradlie::identities::{
    basis_check as run_basis_check, check_identity, consequence_span, identity_space, total_degree_windows,
    AmbientSpace, BasisCheckConfig, Mode, PoolConfig, WindowStatus,
};
use gradlie::linalg::SubspaceBasis;
use gradlie::mat2::Mat2;
use gradlie::{Error, Fe, Field};
use serde_json::json;

use crate::output::{Failure, Outcome, Report};
use crate::{AlgArgs, AnalyzeArgs, BasisCheckArgs, CheckArgs, ClassifyArgs, ModeArgs, RemarkArgs, SpaceArgs, TargetArg};

type CmdResult = Result<Report, Failure>;

/// The windows probed by `basis-check --windows default`.
pub const DEFAULT_WINDOWS: &str = "y1:1,y2:1;z1:1,z2:1;z1:1,z2:1,z3:1;y1:1,z1:1,z2:1;z1:1,y1:5";

fn input(msg: impl Into<String>) -> Failure {
    Error::InvalidInput(msg.into()).into()
}

fn field_of(q: u32) -> Result<Field, Failure> {
    Ok(Field::with_order(q)?)
}

fn load_algebra(a: &AlgArgs) -> Result<GradedLieAlgebra, Failure> {
    if a.alg.ends_with(".toml") {
        return Ok(GradedLieAlgebra::from_spec_file(Path::new(&a.alg))?);
    }
    let f = field_of(a.q)?;
    let alg = match a.alg.as_str() {
        "sl2" => GradedLieAlgebra::sl2(f),
        "gl2" => GradedLieAlgebra::gl2(f),
        "m2-I" => GradedLieAlgebra::m2_grading_i(f),
        "m2-II" => GradedLieAlgebra::m2_grading_ii(f),
        "m2-III" => {
            let b = a.b.map_or_else(|| f.find_nonsquare(), |b| f.elem(b));
            GradedLieAlgebra::m2_grading_iii(f, b)?
        }
        "span-e11-e12" => GradedLieAlgebra::span_e11_e12(f),
        "heisenberg" => GradedLieAlgebra::heisenberg(f),
        other => {
            return Err(input(format!(
                "unknown algebra `{other}` (expected sl2, gl2, m2-I, m2-II, m2-III, span-e11-e12, heisenberg or a .toml file)"
            )))
        }
    };
    Ok(alg)
}

fn parse(text: &str) -> Result<LieExpr, Failure> {
    parse_expr(text).map_err(|error| {
        let context = match &error {
            Error::Parse { position, .. } => {
                let col = text.char_indices().take_while(|(i, _)| i < position).count();
                Some(format!("  {text}\n  {}^", " ".repeat(col)))
            }
            _ => None,
        };
        Failure { error, context }
    })
}

fn parse_graded(text: &str) -> Result<LieExpr, Failure> {
    let e = parse(text)?;
    if e.vars().iter().any(|v| v.kind == VarKind::Free) {
        return Err(input(format!("`{text}` uses x variables; they are only allowed with --ordinary")));
    }
    Ok(e)
}

fn generators(spec: &str, q: u32) -> Result<Vec<(String, LieExpr)>, Failure> {
    let name = spec.trim();
    if BUILTIN_NAMES.contains(&name) || name == "set_S" || name == "lema5_set" {
        return Ok(builtin(name, q)?);
    }
    spec.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Ok((s.to_string(), parse_graded(s)?)))
        .collect::<Result<Vec<_>, Failure>>()
        .and_then(|g| if g.is_empty() { Err(input("no generators given")) } else { Ok(g) })
}

fn parse_windows(spec: &str) -> Result<Vec<MultiDegree>, Failure> {
    let spec = if spec == "default" { DEFAULT_WINDOWS } else { spec };
    let ws = spec
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<MultiDegree>().map_err(Failure::from))
        .collect::<Result<Vec<_>, _>>()?;
    if ws.is_empty() {
        return Err(input("the window list is empty"));
    }
    Ok(ws)
}

fn mode_of(m: &ModeArgs) -> Mode {
    match m.samples {
        Some(samples) => Mode::Sampled { samples, seed: m.seed },
        None => Mode::Exhaustive { budget: m.budget },
    }
}

fn describe_alg(alg: &GradedLieAlgebra) -> String {
    format!(
        "{} over {} (dim {}, even {}, odd {})",
        alg.name(),
        alg.field(),
        alg.dim(),
        alg.component_dim(0),
        alg.component_dim(1)
    )
}

fn span_text(alg: &GradedLieAlgebra, s: &SubspaceBasis) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let rows: Vec<String> = s.rows().iter().map(|r| alg.format_element(r)).collect();
    format!("span{{{}}}", rows.join(", "))
}

pub fn check(a: &CheckArgs) -> CmdResult {
    let alg = load_algebra(&a.alg)?;
    let graded = !a.ordinary;
    let q = alg.field().q();
    let exprs = match (&a.builtin, &a.expr) {
        (Some(name), _) => builtin(name, q)?,
        (None, Some(text)) if graded => vec![(text.clone(), parse_graded(text)?)],
        (None, Some(text)) => vec![(text.clone(), parse(text)?)],
        (None, None) => return Err(input("give --expr or --builtin")),
    };
    let mode = mode_of(&a.mode);
    let mut text = format!("algebra: {}\n", describe_alg(&alg));
    let mut results = Vec::new();
    let mut all = true;
    for (name, e) in &exprs {
        let r = check_identity(e, &alg, graded, mode)?;
        let kind = if graded { "graded" } else { "ordinary" };
        if r.holds {
            writeln!(text, "{name}: holds ({mode}, {kind}, {} assignments)", r.evaluations).unwrap();
        } else {
            writeln!(text, "{name}: fails ({mode}, {kind}, after {} assignments)", r.evaluations).unwrap();
            if let Some(c) = &r.counterexample {
                let asg: Vec<String> = c.assignment.iter().map(|(v, x)| format!("{v} = {x}")).collect();
                writeln!(text, "  counterexample: {}", asg.join(", ")).unwrap();
                writeln!(text, "  value: {}", c.value).unwrap();
            }
        }
        all &= r.holds;
        results.push(json!({ "name": name, "expression": e, "report": r }));
    }
    let (outcome, verdict) = if all { (Outcome::Success, "holds") } else { (Outcome::Failure, "fails") };
    Ok(Report::new(outcome, verdict, text, json!({ "algebra": alg.name(), "q": q, "checks": results })))
}

pub fn basis_check(a: &BasisCheckArgs) -> CmdResult {
    let alg = load_algebra(&a.alg)?;
    let q = alg.field().q();
    let gens = generators(&a.gens, q)?;
    let windows = match (a.total_degree, &a.windows) {
        (Some(n), _) => total_degree_windows(n, a.per_var_cap),
        (None, Some(w)) => parse_windows(w)?,
        (None, None) => parse_windows("default")?,
    };
    let config = BasisCheckConfig {
        budget: a.budget,
        soundness_samples: a.soundness_samples,
        pool: PoolConfig { seed: a.seed, ..PoolConfig::default() },
    };
    let report = run_basis_check(&alg, &gens, &windows, &config)?;
    let mut text = format!("algebra: {}\n", describe_alg(&alg));
    for g in &report.generators {
        writeln!(text, "generator {}: identity ({}, {} assignments)", g.name, g.mode, g.evaluations).unwrap();
    }
    for w in &report.windows {
        let id = w.id_dim.map_or_else(|| "?".to_string(), |d| d.to_string());
        writeln!(
            text,
            "window {:<24} ambient {:>4}  id {:>4}  cons {:>4}  {}",
            w.window.to_string(),
            w.ambient_dim,
            id,
            w.cons_dim,
            w.status
        )
        .unwrap();
        if let Some(p) = &w.uncovered {
            writeln!(text, "  not a consequence: {p}").unwrap();
        }
        if let Some(n) = &w.note {
            writeln!(text, "  note: {n}").unwrap();
        }
    }
    let outcome = match report.verdict {
        WindowStatus::Equal => Outcome::Success,
        WindowStatus::StrictInclusion => Outcome::Failure,
        WindowStatus::Inconclusive => Outcome::Inconclusive,
    };
    Ok(Report::new(outcome, report.verdict.to_string(), text, &report))
}

fn parse_vars(spec: &str) -> Result<Vec<Var>, Failure> {
    let vars = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Var>().map_err(Failure::from))
        .collect::<Result<Vec<_>, _>>()?;
    if vars.is_empty() {
        return Err(input("no variables given"));
    }
    Ok(vars)
}

pub fn space(a: &SpaceArgs) -> CmdResult {
    let alg = load_algebra(&a.alg)?;
    let f = *alg.field();
    let ambient = match (&a.vars, &a.window) {
        (Some(v), _) => AmbientSpace::multilinear(&parse_vars(v)?),
        (None, Some(w)) => AmbientSpace::new(w.parse::<MultiDegree>()?),
        (None, None) => return Err(input("give --vars or --window")),
    };
    let ids = identity_space(&alg, &ambient, mode_of(&a.mode))?;
    let basis: Vec<String> = ids.space.rows().iter().map(|r| ambient.polynomial(f, r).to_string()).collect();
    let mut text = format!("algebra: {}\nwindow: {}\nambient_dim: {}\nid_dim: {}\n", describe_alg(&alg), ambient, ambient.dim(), ids.dim());
    for p in &basis {
        writeln!(text, "  {p}").unwrap();
    }
    let mut results = json!({
        "window": ambient.caps(),
        "ambient_dim": ambient.dim(),
        "id_dim": ids.dim(),
        "identity_basis": basis,
        "assignments_total": ids.assignments_total,
        "assignments_used": ids.assignments_used,
    });
    let mut verdict = format!("id_dim {}", ids.dim());
    if let Some(g) = &a.gens {
        let gens: Vec<LieExpr> = generators(g, f.q())?.into_iter().map(|(_, e)| e).collect();
        let cons = consequence_span(f, &gens, &ambient, &PoolConfig { seed: a.mode.seed, ..PoolConfig::default() })?;
        if !cons.span.is_subspace_of(&f, &ids.space)? {
            return Err(Error::TheoremViolation("a consequence of the generators is not an identity".into()).into());
        }
        let status = if cons.span.dim() == ids.dim() { WindowStatus::Equal } else { WindowStatus::StrictInclusion };
        writeln!(text, "cons_dim: {}\nstatus: {status}", cons.span.dim()).unwrap();
        results["cons_dim"] = json!(cons.span.dim());
        results["status"] = json!(status);
        verdict = format!("{verdict}, cons_dim {}, {status}", cons.span.dim());
    }
    Ok(Report::new(Outcome::Success, verdict, text, results))
}

pub fn analyze(a: &AnalyzeArgs) -> CmdResult {
    let alg = load_algebra(&a.alg)?;
    let f = *alg.field();
    let r = alg.structure_report(a.dim_cap);
    let dims = |v: &[SubspaceBasis]| v.iter().map(|s| s.dim().to_string()).collect::<Vec<_>>().join(", ");
    let opt = |s: &Option<SubspaceBasis>| s.as_ref().map_or_else(|| "not computed".into(), |s| span_text(&alg, s));
    let optb = |b: Option<bool>| b.map_or_else(|| "not computed".into(), |b| b.to_string());
    let mut text = format!("algebra: {}\n", describe_alg(&alg));
    writeln!(text, "derived_series dims: {}", dims(&r.derived_series)).unwrap();
    writeln!(text, "lower_central dims: {}", dims(&r.lower_central)).unwrap();
    writeln!(text, "center: {}", span_text(&alg, &r.center)).unwrap();
    writeln!(text, "radical: {}", opt(&r.radical)).unwrap();
    writeln!(text, "nilradical: {}", opt(&r.nilradical)).unwrap();
    if let Some(ideals) = &r.minimal_graded_ideals {
        let list: Vec<String> = ideals.iter().map(|s| span_text(&alg, s)).collect();
        writeln!(text, "minimal graded ideals: {}", list.join("; ")).unwrap();
    }
    writeln!(text, "monolithic: {}", optb(r.monolithic)).unwrap();
    writeln!(text, "graded_simple: {}", optb(r.graded_simple)).unwrap();
    for (k, v) in [("abelian", r.abelian), ("solvable", r.solvable), ("nilpotent", r.nilpotent), ("metabelian", r.metabelian)] {
        writeln!(text, "{k}: {v}").unwrap();
    }
    let mut results = json!({ "structure": &r });
    if let Some(cap) = a.probe {
        let p = alg.a_property_probe(cap, a.probe_budget, a.seed);
        writeln!(text, "a-property probe: {}", p.summary).unwrap();
        results["a_property_probe"] = json!(p);
    }
    if let Some(root) = &a.root {
        let coords = root
            .split(',')
            .map(|s| s.trim().parse::<i64>().map(|x| f.elem(x)).map_err(|e| input(format!("bad coordinate `{s}`: {e}"))))
            .collect::<Result<Vec<Fe>, _>>()?;
        let rr = alg.root_decomposition(&coords)?;
        let eig: Vec<String> = rr.eigen.eigenvalues().iter().map(|l| l.to_string()).collect();
        writeln!(text, "ad eigenvalues: {}", eig.join(", ")).unwrap();
        writeln!(text, "root pairs: {}", rr.pairs.len()).unwrap();
        writeln!(text, "even part spanned by root brackets: {}", rr.even_part_from_root_brackets).unwrap();
        results["roots"] = json!(rr);
    }
    let verdict = match r.graded_simple {
        Some(true) => "graded-simple",
        _ if r.abelian => "abelian",
        _ if r.nilpotent => "nilpotent",
        _ if r.solvable => "solvable",
        _ => "analyzed",
    };
    Ok(Report::new(Outcome::Success, verdict, text, results))
}

fn mat_text(f: &Field, m: &Mat2) -> String {
    let s = |x: Fe| f.signed(x).map_or_else(|| x.to_string(), |v| v.to_string());
    format!("[[{}, {}], [{}, {}]]", s(m[0][0]), s(m[0][1]), s(m[1][0]), s(m[1][1]))
}

pub fn classify(a: &ClassifyArgs) -> CmdResult {
    let f = field_of(a.q)?;
    let target = match a.target {
        TargetArg::M2 => Target::M2Assoc,
        TargetArg::Gl2 => Target::Gl2Lie,
        TargetArg::Sl2 => Target::Sl2Lie,
    };
    let autos = gradings::automorphism_group(target, &f)?;
    let gs = gradings::gradings_from_automorphisms(target, &f, &autos)?;
    let classes = gradings::classify_up_to_iso(&gs, &autos)?;
    let parent = target.parent(f);
    let mut text = format!("target: {target} over {f}\nautomorphisms: {}\ngradings: {}\n{} classes\n", autos.len(), gs.len(), classes.len());
    for (i, c) in classes.iter().enumerate() {
        let label = c.label.as_deref().map_or_else(String::new, |l| format!(" [{l}]"));
        let mut props = vec![
            format!("{} grading{}", c.members.len(), if c.members.len() == 1 { "" } else { "s" }),
            format!("dim even {}", c.dim_even),
            format!("dim odd {}", c.dim_odd),
            format!("q-power identity {}", if c.q_power_identity { "holds" } else { "fails" }),
        ];
        if let Some(u) = c.unit_in_even {
            props.push(format!("unit {}", if u { "even" } else { "odd" }));
        }
        if let Some(assoc) = c.associative {
            props.push(format!("associative {assoc}"));
        }
        writeln!(text, "class {}{label}: {}", i + 1, props.join(", ")).unwrap();
        writeln!(text, "  even: {}", span_text(&parent, &c.representative.even)).unwrap();
        writeln!(text, "  odd: {}", span_text(&parent, &c.representative.odd)).unwrap();
    }
    let mut results = json!({
        "target": target,
        "field": f.to_string(),
        "automorphisms": autos.len(),
        "gradings": gs.len(),
        "classes": classes,
    });
    let mut outcome = Outcome::Success;
    match target {
        Target::Sl2Lie => {
            let mut found = 0;
            let mut candidates = 0;
            for g in gs.iter().filter(|g| g.dim_even() == 1) {
                let v = gradings::natural_characterization(g, &autos)?;
                if v.hypotheses_hold {
                    candidates += 1;
                    found += usize::from(v.isomorphism.is_some());
                }
            }
            writeln!(text, "natural characterization: {found} of {candidates} gradings meeting the hypotheses mapped to the natural grading").unwrap();
            results["natural_characterization"] = json!({ "hypotheses_hold": candidates, "isomorphisms_found": found });
        }
        _ => {
            let splits = gradings::gl2_lie_splits(&f)?;
            let mut agree = 0;
            for g in &splits {
                agree += usize::from(gradings::unit_component_check(g)?.agrees());
            }
            writeln!(text, "gl2 Lie splits: {}; associative exactly when the unit is even: {agree} of {}", splits.len(), splits.len()).unwrap();
            results["unit_component"] = json!({ "lie_splits": splits.len(), "agreeing": agree });
            if agree != splits.len() {
                outcome = Outcome::Failure;
            }
        }
    }
    Ok(Report::new(outcome, format!("{} classes", classes.len()), text, results))
}

pub fn remark(a: &RemarkArgs) -> CmdResult {
    let f = field_of(a.q)?;
    let r = match a.b {
        Some(b) => gradings::boboc_sides(&f, f.elem(b)),
        None => gradings::remark_boboc(&f)?,
    };
    let kind = if r.b_is_square { "square" } else { "non-square" };
    let mut text = format!("field: {f}\nb = {} ({kind})\n", f.signed(r.b).unwrap_or(0));
    writeln!(text, "[h, u]: {}", mat_text(&f, &r.lhs)).unwrap();
    writeln!(text, "[h, u, ..., u] ({} copies of u): {}", f.q(), mat_text(&f, &r.rhs)).unwrap();
    let verdict = if r.equal { "equal" } else { "differ" };
    let outcome = if r.equal && !r.b_is_square { Outcome::Failure } else { Outcome::Success };
    Ok(Report::new(outcome, verdict, text, &r))
}
