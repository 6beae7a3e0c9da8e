use std::collections::BTreeSet;
use std::path::Path;

use detci::cimodel::{ci_ideal, parse_ci_file};
use detci::hypergraph::{ci_generators_as_grid, grid_hypergraph, grid_matrix, hypergraph_ideal, GridSpec, Hypergraph};
use detci::matroid::{algebraic_matroid, arrangement_signature, four_line_arrangements, realize_grid_matroid};
use detci::polycore::{Budget, MonomialOrder, Polynomial, Var};
use detci::rng::stream;
use detci::secrig::{generic_rigidity_check, rigidity_matrix, secant_dimension, Framework, ParametrizedModel, SegreModel};
use detci::verify::{self, concurrent_lines_sampler, loop_sampler, Status, WitnessReport};
use detci::{Error, Matrix, Matroid, PolyMap};
use serde_json::{json, Value};

use crate::output::Artifact;
use crate::{Command, Common, Format, SpecArgs, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_USAGE};

pub struct CmdError {
    pub code: u8,
    pub message: String,
}

impl CmdError {
    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidInput(_) | Error::Parse { .. } | Error::TooLarge(_) => EXIT_USAGE,
            Error::BudgetExhausted(_) => EXIT_INCONCLUSIVE,
            Error::Degenerate { .. } | Error::GenericityGuard(_) => EXIT_FAIL,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_FAIL,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, CmdError>;

fn read(path: &Path) -> Result<String, CmdError> {
    std::fs::read_to_string(path).map_err(|e| CmdError::usage(format!("cannot read {}: {e}", path.display())))
}

fn need(v: Option<usize>, name: &str) -> Result<usize, CmdError> {
    v.ok_or_else(|| CmdError::usage(format!("missing --{name}")))
}

fn spec_from(a: &SpecArgs, default: Option<GridSpec>) -> Result<GridSpec, CmdError> {
    let pick = |v: Option<usize>, f: fn(&GridSpec) -> usize, name: &str| match (v, default.as_ref()) {
        (Some(x), _) => Ok(x),
        (None, Some(d)) => Ok(f(d)),
        (None, None) => Err(CmdError::usage(format!("missing --{name}"))),
    };
    let spec = GridSpec {
        s: pick(a.s, |g| g.s, "s")?,
        t: pick(a.t, |g| g.t, "t")?,
        k: pick(a.k, |g| g.k, "k")?,
        l: pick(a.l, |g| g.l, "l")?,
        d: pick(a.d, |g| g.d, "d")?,
    };
    spec.validate()?;
    Ok(spec)
}

fn set_text(set: &[usize]) -> String {
    let s: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", s.join(","))
}

fn budget(c: &Common) -> Budget {
    Budget {
        max_pairs: c.max_pairs,
        max_degree: c.max_degree,
    }
}

pub fn run(cmd: &Command) -> CmdResult {
    let common = cmd.common();
    match cmd {
        Command::Grid { spec, .. } => grid(spec, common),
        Command::Ideal {
            grid,
            ci,
            hypergraph,
            as_grid,
            spec,
            ..
        } => ideal(*grid, ci.as_deref(), hypergraph.as_deref(), *as_grid, spec, common),
        Command::Matroid {
            matrix,
            param,
            grid,
            fixture,
            segre,
            product,
            arrangements,
            spec,
            ..
        } => {
            let src = MatroidSource {
                matrix: matrix.as_deref(),
                param: param.as_deref(),
                grid: *grid,
                fixture: fixture.as_deref(),
                segre: segre.as_deref(),
                product: product.as_deref(),
                arrangements: *arrangements,
            };
            matroid(&src, spec, common)
        }
        Command::Verify { name, cases, spec, .. } => verify_cmd(name, cases, spec, common),
        Command::Secant { m, n, param, k, upto, .. } => secant(*m, *n, param.as_deref(), *k, *upto, common),
        Command::Rigidity { n, d, framework, .. } => rigidity(*n, *d, framework.as_deref(), common),
    }
}

fn grid(a: &SpecArgs, c: &Common) -> CmdResult {
    let k = need(a.k, "k")?;
    let l = need(a.l, "l")?;
    let g = grid_matrix(k, l)?;
    let mut out = Artifact::new("grid");
    out.text.push_str(&g.to_string());
    out.set("k", json!(k));
    out.set("l", json!(l));
    out.set("grid", json!(g.entries()));
    if let (Some(s), Some(t)) = (a.s, a.t) {
        let spec = GridSpec::new(s, t, k, l, a.d.unwrap_or(1))?;
        let h = grid_hypergraph(&spec)?;
        out.line(format!("edges {}", h.edges().len()));
        for e in h.edges() {
            out.line(set_text(e));
        }
        out.set("s", json!(s));
        out.set("t", json!(t));
        out.set("edges", json!(h.edges()));
    }
    out.emit(c)?;
    Ok(EXIT_PASS)
}

fn cas_script(vars: &[Var], gens: &[Polynomial], ord: &MonomialOrder) -> String {
    let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
    let mut s = format!("ring R = QQ[{}];\n", names.join(", "));
    let body: Vec<String> = gens.iter().map(|g| format!("  {}", g.to_text(ord))).collect();
    if body.is_empty() {
        s.push_str("ideal I = ();\n");
    } else {
        s.push_str(&format!("ideal I = (\n{}\n);\n", body.join(",\n")));
    }
    s
}

fn ideal(
    grid: bool,
    ci: Option<&Path>,
    hypergraph: Option<&Path>,
    as_grid: bool,
    spec: &SpecArgs,
    c: &Common,
) -> CmdResult {
    let ord = MonomialOrder::DegRevLex;
    let sources = grid as usize + ci.is_some() as usize + hypergraph.is_some() as usize;
    if sources != 1 {
        return Err(CmdError::usage("give exactly one of --grid, --ci FILE, --hypergraph FILE"));
    }
    let mut out = Artifact::new("ideal");
    let (vars, gens) = if grid {
        let spec = spec_from(spec, None)?;
        out.set("spec", json!(spec));
        let i = hypergraph_ideal(&grid_hypergraph(&spec)?, spec.d)?;
        (i.vars().to_vec(), i.generators().to_vec())
    } else if let Some(path) = hypergraph {
        let h: Hypergraph = read(path)?.parse()?;
        let d = need(spec.d, "d")?;
        let i = hypergraph_ideal(&h, d)?;
        (i.vars().to_vec(), i.generators().to_vec())
    } else {
        let (model, stmts) = parse_ci_file(&read(ci.unwrap())?)?;
        let i = ci_ideal(&stmts, &model)?;
        if as_grid {
            let observed = model.observed();
            if observed.len() != 3 {
                return Err(CmdError::usage("--as-grid needs exactly three observed variables X, Y1, Y2"));
            }
            let k = observed[1].card;
            let gens = ci_generators_as_grid(i.generators(), k);
            let vars: BTreeSet<Var> = i.vars().iter().map(|v| detci::hypergraph::ci_to_grid_var(v, k)).collect();
            (vars.into_iter().collect(), gens)
        } else {
            (i.vars().to_vec(), i.generators().to_vec())
        }
    };
    out.line(format!("# generators {}", gens.len()));
    match c.format {
        Format::Text => {
            for g in &gens {
                out.line(g.to_text(&ord));
            }
        }
        Format::Cas => out.text.push_str(&cas_script(&vars, &gens, &ord)),
    }
    out.set("variables", json!(vars.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
    out.set("generators", json!(gens.iter().map(|g| g.to_text(&ord)).collect::<Vec<_>>()));
    out.emit(c)?;
    Ok(EXIT_PASS)
}

struct MatroidSource<'a> {
    matrix: Option<&'a Path>,
    param: Option<&'a Path>,
    grid: bool,
    fixture: Option<&'a str>,
    segre: Option<&'a str>,
    product: Option<&'a str>,
    arrangements: bool,
}

fn numbers(s: &str, count: usize, flag: &str) -> Result<Vec<usize>, CmdError> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CmdError::usage(format!("--{flag} expects {count} comma-separated integers")))?;
    if v.len() != count || v.contains(&0) {
        return Err(CmdError::usage(format!("--{flag} expects {count} comma-separated positive integers")));
    }
    Ok(v)
}

fn describe_matroid(out: &mut Artifact, m: &Matroid, labels: Option<&PolyMap>) -> Result<(), CmdError> {
    let circuits = m.circuits()?;
    out.line(format!("elements {}", m.n()));
    out.line(format!("rank {}", m.rank()));
    out.line(format!("circuits {}", circuits.len()));
    let shown: Vec<String> = circuits
        .iter()
        .map(|cset| match labels {
            Some(phi) => phi.label_set(cset),
            None => set_text(cset),
        })
        .collect();
    for s in &shown {
        out.line(s);
    }
    out.set("elements", json!(m.n()));
    out.set("rank", json!(m.rank()));
    out.set("circuits", json!(shown));
    if let Some(x) = m.matrix() {
        if x.rows() == 3 {
            let sig = arrangement_signature(x)?;
            out.line(format!("signature {sig}"));
            out.set("signature", json!(sig.to_string()));
        }
    }
    Ok(())
}

fn matroid(src: &MatroidSource, spec: &SpecArgs, c: &Common) -> CmdResult {
    let chosen = [
        src.matrix.is_some(),
        src.param.is_some(),
        src.grid,
        src.fixture.is_some(),
        src.segre.is_some(),
        src.product.is_some(),
        src.arrangements,
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if chosen != 1 {
        return Err(CmdError::usage(
            "give exactly one of --matrix, --param, --grid, --fixture, --segre, --product, --arrangements",
        ));
    }
    let mut out = Artifact::new("matroid");
    let mut rng = stream(c.seed, "matroid", 0);
    if src.arrangements {
        let mut rows = Vec::new();
        for (name, x, expected) in four_line_arrangements(&mut rng) {
            let got = arrangement_signature(&x)?;
            out.line(format!("{name} {got}"));
            rows.push(json!({"type": name, "signature": got.to_string(), "expected": expected.to_string()}));
            if got != expected {
                out.line(format!("# expected {expected}"));
            }
        }
        out.set("arrangements", Value::Array(rows));
        out.emit(c)?;
        return Ok(EXIT_PASS);
    }
    let phi = if let Some(p) = src.param {
        Some(read(p)?.parse::<PolyMap>()?)
    } else if let Some(s) = src.segre {
        let v = numbers(s, 2, "segre")?;
        Some(PolyMap::segre(v[0], v[1]))
    } else if let Some(s) = src.product {
        let v = numbers(s, 3, "product")?;
        Some(PolyMap::matrix_product(v[0], v[1], v[2]))
    } else {
        None
    };
    if let Some(phi) = phi {
        let m = algebraic_matroid(&phi, &mut rng)?;
        describe_matroid(&mut out, &m, Some(&phi))?;
        out.emit(c)?;
        return Ok(EXIT_PASS);
    }
    let x: Matrix = if let Some(p) = src.matrix {
        read(p)?.parse()?
    } else if src.grid {
        let spec = spec_from(spec, None)?;
        if !spec.in_realization_regime() {
            return Err(CmdError::usage(format!("{spec} is outside the realization regime")));
        }
        realize_grid_matroid(&spec, &mut rng)?
    } else {
        match src.fixture.unwrap() {
            "concurrent-lines" => concurrent_lines_sampler().sample(&mut rng),
            "loop" => loop_sampler().sample(&mut rng),
            other => return Err(CmdError::usage(format!("unknown fixture `{other}`"))),
        }
    };
    if src.fixture.is_some() || src.grid {
        out.line("matrix");
        out.text.push_str(&x.to_string());
        out.set("matrix", json!(x.to_string()));
    }
    describe_matroid(&mut out, &Matroid::from_matrix(x), None)?;
    out.emit(c)?;
    Ok(EXIT_PASS)
}

fn exit_for(status: Status) -> u8 {
    match status {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn verify_cmd(name: &str, cases: &[String], spec: &SpecArgs, c: &Common) -> CmdResult {
    let report: WitnessReport = match name {
        "example31" => verify::verify_concurrent_lines(c.trials, c.seed, budget(c))?,
        "example32" => verify::verify_rank_two_component(c.trials, c.seed)?,
        "intersection-axiom" => {
            let spec = spec_from(spec, Some(GridSpec { s: 3, t: 3, k: 3, l: 4, d: 3 }))?;
            verify::verify_intersection_axiom(&spec, c.trials, c.seed)?
        }
        "theorem32" => {
            let spec = spec_from(spec, Some(GridSpec { s: 3, t: 3, k: 3, l: 3, d: 3 }))?;
            if !spec.in_realization_regime() {
                return Err(CmdError::usage(format!(
                    "{spec} violates 3 <= s <= t <= l, s <= k, t <= d <= s + t - 3"
                )));
            }
            verify::verify_grid_realization(&spec, c.trials, c.seed)?
        }
        "rigidity" => {
            let list = if cases.is_empty() {
                verify::RIGIDITY_CASES.to_vec()
            } else {
                cases
                    .iter()
                    .map(|s| numbers(s, 2, "case").map(|v| (v[0], v[1])))
                    .collect::<Result<_, _>>()?
            };
            verify::verify_rigidity(&list, c.seed)?
        }
        "terracini" => {
            let list = if cases.is_empty() {
                verify::TERRACINI_CASES.to_vec()
            } else {
                cases
                    .iter()
                    .map(|s| numbers(s, 3, "case").map(|v| (v[0], v[1], v[2])))
                    .collect::<Result<_, _>>()?
            };
            verify::verify_terracini(&list, c.seed)?
        }
        other => {
            return Err(CmdError::usage(format!(
                "unknown verification `{other}`; expected example31, example32, intersection-axiom, theorem32, rigidity or terracini"
            )))
        }
    };
    let mut out = Artifact::new(&format!("verify {name}"));
    out.text.push_str(&report.to_text());
    out.set("report", serde_json::to_value(&report).expect("report serializes"));
    out.emit(c)?;
    Ok(exit_for(report.status))
}

fn secant(m: Option<usize>, n: Option<usize>, param: Option<&Path>, k: usize, upto: bool, c: &Common) -> CmdResult {
    if k == 0 {
        return Err(CmdError::usage("--k must be at least 1"));
    }
    let ks: Vec<usize> = if upto { (1..=k).collect() } else { vec![k] };
    let mut out = Artifact::new("secant");
    let mut rows = Vec::new();
    let mut ok = true;
    match param {
        Some(p) => {
            if m.is_some() || n.is_some() {
                return Err(CmdError::usage("give either --param or --m/--n"));
            }
            let model = ParametrizedModel {
                map: read(p)?.parse()?,
            };
            for (i, &kk) in ks.iter().enumerate() {
                let d = secant_dimension(&model, kk, &mut stream(c.seed, "secant", i as u64))?;
                out.line(format!("k {} ambient {} cone {} projective {}", d.k, d.ambient, d.cone, d.projective));
                rows.push(json!(d));
            }
        }
        None => {
            let (m, n) = (need(m, "m")?, need(n, "n")?);
            for (i, &kk) in ks.iter().enumerate() {
                let d = secant_dimension(&SegreModel { m, n }, kk, &mut stream(c.seed, "secant", i as u64))?;
                let expected = (m * n).min(kk * (m + n).saturating_sub(kk));
                ok &= d.cone == expected;
                out.line(format!(
                    "k {} ambient {} cone {} projective {} expected {}",
                    d.k, d.ambient, d.cone, d.projective, expected
                ));
                rows.push(json!({"k": d.k, "ambient": d.ambient, "cone": d.cone, "projective": d.projective, "expected": expected}));
            }
        }
    }
    out.set("dimensions", Value::Array(rows));
    out.emit(c)?;
    Ok(if ok { EXIT_PASS } else { EXIT_FAIL })
}

fn rigidity(n: Option<usize>, d: Option<usize>, framework: Option<&Path>, c: &Common) -> CmdResult {
    let mut out = Artifact::new("rigidity");
    if let Some(p) = framework {
        if n.is_some() || d.is_some() {
            return Err(CmdError::usage("give either --framework or --n/--d"));
        }
        let fw: Framework = read(p)?.parse()?;
        let r = rigidity_matrix(&fw)?;
        let rank = r.rank();
        out.line(format!("vertices {}", fw.n()));
        out.line(format!("dimension {}", fw.d()));
        out.line(format!("edges {}", fw.edges().len()));
        out.line(format!("rank {rank}"));
        out.line("matrix");
        out.text.push_str(&r.to_string());
        out.set("vertices", json!(fw.n()));
        out.set("dimension", json!(fw.d()));
        out.set("edges", json!(fw.edges().len()));
        out.set("rank", json!(rank));
        out.emit(c)?;
        return Ok(EXIT_PASS);
    }
    let (n, d) = (need(n, "n")?, need(d, "d")?);
    let r = generic_rigidity_check(n, d, &mut stream(c.seed, "rigidity", 0))?;
    out.line(format!("n {} d {}", r.n, r.d));
    out.line(format!("rank {} expected {}", r.rank, r.expected_rank));
    out.line(format!("circuits {}/{}", r.circuits_ok, r.circuits_checked));
    out.line(format!("row_support {}", r.row_support_ok));
    out.line(format!("kernel {} rotations_checked {}", r.kernel_ok, r.rotations_checked));
    out.line(format!("status {}", if r.passed() { "pass" } else { "fail" }));
    out.set("report", json!(r));
    out.emit(c)?;
    Ok(if r.passed() { EXIT_PASS } else { EXIT_FAIL })
}
