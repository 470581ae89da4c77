//! Dispatch and report assembly.

use std::fmt::Write as _;
use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use staircase::determinacy::{
    determinacy_bound, flat_ci, jet_ideal, jet_sweep, milnor_mu0, numerators, regular_sequence,
    MapSpec, Settings, Verdict,
};
use staircase::jet_oracle::{oracle_cross_check_with, truncated_diagram};
use staircase::standard_basis::diagram_of_ideal_with;
use staircase::{
    determinant, Diagram, Error as CoreError, Exponent, Germ, OrderSpec, Poly, SbOptions,
};

use crate::problem::{parse_problem, parse_range, parse_weights, IdealBlock, MapBlock, Problem};
use crate::{Cli, Command};

/// Problem behind `det-example`: the series `f_i = g_i/(1 - y)`.
pub const BUILTIN_EXAMPLE: &str = "\
ring x y
mu 5..10
ideal f
  (x^3*y + x*y^4 - x^3*y^2)/(1 - y)
  (x^2*y^3 + y^6 - x^2*y^4)/(1 - y)
";

const DEFAULT_HILBERT_BOUND: u32 = 10;
const DEFAULT_ORACLE_BOUND: u32 = 8;

/// Values read from the environment.
#[derive(Clone, Debug, Default)]
pub struct Env {
    /// `STAIRCASE_POOL_CEILING`
    pub pool_ceiling: Option<String>,
    /// `STAIRCASE_STEP_CEILING`
    pub step_ceiling: Option<String>,
}

impl Env {
    pub fn from_process() -> Self {
        Env {
            pool_ceiling: std::env::var("STAIRCASE_POOL_CEILING").ok(),
            step_ceiling: std::env::var("STAIRCASE_STEP_CEILING").ok(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome {
            exit: 0,
            stdout,
            stderr: String::new(),
        }
    }

    pub fn failure(exit: i32, stderr: String) -> Self {
        Outcome {
            exit,
            stdout: String::new(),
            stderr,
        }
    }
}

enum Failure {
    Usage(String),
    Ceiling(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::PoolCeiling { .. } | CoreError::StepCeiling { .. } => {
                Failure::Ceiling(e.to_string())
            }
            e => Failure::Usage(e.to_string()),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn usage<T>(message: impl Into<String>) -> Res<T> {
    Err(Failure::Usage(message.into()))
}

struct Item {
    json: Value,
    human: String,
    /// Label of a CertifiedNo verdict in this item.
    no: Option<String>,
}

impl Item {
    fn new(json: Value, human: String) -> Self {
        Item {
            json,
            human,
            no: None,
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    problem: Problem,
    settings: Settings,
    order: OrderSpec,
    mu: Option<(u32, u32)>,
    bound: Option<u32>,
}

pub fn execute(cli: &Cli, env: &Env) -> Outcome {
    let start = Instant::now();
    let report = match report(cli, env) {
        Ok(r) => r,
        Err(Failure::Usage(m)) => return Outcome::failure(1, format!("error: {m}\n")),
        Err(Failure::Ceiling(m)) => {
            return Outcome::failure(3, format!("error: resource ceiling hit: {m}\n"))
        }
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut stderr = String::new();
    let mut exit = 0;
    if cli.expect_yes {
        if let Some(label) = report.no.first() {
            exit = 2;
            let _ = writeln!(stderr, "expected yes: {label} is CertifiedNo");
        }
    }
    let stdout = if cli.json {
        let mut body = report.json;
        body["timing"] = json!({ "elapsed_ms": elapsed_ms });
        let mut s = serde_json::to_string_pretty(&body).expect("json values serialize");
        s.push('\n');
        s
    } else {
        let _ = writeln!(stderr, "elapsed: {elapsed_ms:.1} ms");
        report.human
    };
    Outcome {
        exit,
        stdout,
        stderr,
    }
}

struct Report {
    json: Value,
    human: String,
    no: Vec<String>,
}

fn report(cli: &Cli, env: &Env) -> Res<Report> {
    let (path, text) = match (cli.command, &cli.file) {
        (Command::DetExample, Some(_)) => return usage("det-example takes no problem file"),
        (Command::DetExample, None) => (None, BUILTIN_EXAMPLE.to_string()),
        (_, None) => return usage(format!("{} needs a problem file", cli.command.name())),
        (_, Some(p)) => match std::fs::read_to_string(p) {
            Ok(t) => (Some(p.display().to_string()), t),
            Err(e) => return usage(format!("{}: {e}", p.display())),
        },
    };
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    let problem = parse_problem(&text).map_err(|e| {
        Failure::Usage(match &path {
            Some(p) => format!("{p}: {e}"),
            None => e.to_string(),
        })
    })?;
    let ctx = context(cli, env, problem)?;

    let items = match cli.command {
        Command::Diagram => per_ideal(&ctx, diagram)?,
        Command::Vertices => per_ideal(&ctx, vertices)?,
        Command::Hilbert => per_ideal(&ctx, hilbert)?,
        Command::Dim => per_ideal(&ctx, dim)?,
        Command::Regseq => per_ideal(&ctx, regseq)?,
        Command::Jet => per_ideal(&ctx, jet)?,
        Command::Sweep => per_ideal(&ctx, sweep)?,
        Command::OracleCheck => per_ideal(&ctx, oracle_check)?,
        Command::FlatCi => per_map(&ctx, flat)?,
        Command::Milnor => per_map(&ctx, milnor)?,
        Command::DetExample => det_example(&ctx)?,
    };

    let inputs = inputs_json(&ctx, path.as_deref());
    let mut human = String::new();
    let _ = writeln!(
        human,
        "{} | {} | seed {} | sha256 {}",
        cli.command.name(),
        path.as_deref().unwrap_or("built-in example"),
        ctx.settings.seed,
        &digest[..16]
    );
    for item in &items {
        human.push_str(&item.human);
    }
    let no = items.iter().filter_map(|i| i.no.clone()).collect();
    let json = json!({
        "command": cli.command.name(),
        "inputs": inputs,
        "input_digest": digest,
        "seed": ctx.settings.seed,
        "results": items.into_iter().map(|i| i.json).collect::<Vec<_>>(),
    });
    Ok(Report { json, human, no })
}

fn parse_ceiling(value: &Option<String>, name: &str, default: usize) -> Res<usize> {
    match value {
        None => Ok(default),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => usage(format!("{name} must be a positive integer, found `{v}`")),
        },
    }
}

fn context<'a>(cli: &'a Cli, env: &Env, problem: Problem) -> Res<Ctx<'a>> {
    let opts = &problem.options;
    let defaults = SbOptions::default();
    let sb = SbOptions {
        pool_ceiling: parse_ceiling(
            &env.pool_ceiling,
            "STAIRCASE_POOL_CEILING",
            defaults.pool_ceiling,
        )?,
        step_ceiling: parse_ceiling(
            &env.step_ceiling,
            "STAIRCASE_STEP_CEILING",
            defaults.step_ceiling,
        )?,
        ..defaults
    };
    let base = Settings::default();
    let bound = cli.bound.or(opts.bound);
    let settings = Settings {
        sb,
        trials: cli.trials.or(opts.trials).unwrap_or(base.trials),
        seed: cli.seed.or(opts.seed).unwrap_or(0),
        bound: bound.unwrap_or(base.bound),
        ..base
    };
    let arity = problem.ring.arity();
    let order = match &cli.order {
        Some(text) => {
            let w = parse_weights(text).map_err(|m| Failure::Usage(format!("--order: {m}")))?;
            OrderSpec::new(w.clone())
                .ok()
                .filter(|o| o.arity() == arity)
                .ok_or_else(|| {
                    Failure::Usage(format!(
                        "--order: {} weights for {arity} variables",
                        w.len()
                    ))
                })?
        }
        None => opts.order_spec(arity).map_err(Failure::Usage)?,
    };
    let mu = match &cli.mu {
        Some(text) => Some(parse_range(text).map_err(|m| Failure::Usage(format!("--mu: {m}")))?),
        None => opts.mu,
    };
    if cli.ideal.is_some() && cli.map.is_some() {
        return usage("--ideal and --map are exclusive");
    }
    Ok(Ctx {
        cli,
        problem,
        settings,
        order,
        mu,
        bound,
    })
}

fn inputs_json(ctx: &Ctx, path: Option<&str>) -> Value {
    let strings = |gs: &[Germ]| gs.iter().map(ToString::to_string).collect::<Vec<_>>();
    let ideals: Vec<Value> = selected_ideals(ctx)
        .unwrap_or_default()
        .iter()
        .map(|b| json!({ "name": b.name, "generators": strings(&b.generators) }))
        .collect();
    let maps: Vec<Value> = selected_maps(ctx)
        .unwrap_or_default()
        .iter()
        .map(|b| {
            json!({
                "name": b.name,
                "relations": strings(&b.relations),
                "components": strings(&b.components),
            })
        })
        .collect();
    let uses_maps = matches!(ctx.cli.command, Command::FlatCi | Command::Milnor);
    json!({
        "file": path,
        "ring": ctx.problem.ring.variables(),
        "order": ctx.order.weights(),
        "trials": ctx.settings.trials,
        "bound": ctx.bound,
        "mu": ctx.mu.map(|(a, b)| [a, b]),
        "len": ctx.cli.len,
        "pool_ceiling": ctx.settings.sb.pool_ceiling,
        "step_ceiling": ctx.settings.sb.step_ceiling,
        "ideals": if uses_maps { Vec::new() } else { ideals },
        "maps": if uses_maps { maps } else { Vec::new() },
    })
}

fn selected_ideals<'c>(ctx: &'c Ctx) -> Res<Vec<&'c IdealBlock>> {
    match &ctx.cli.ideal {
        Some(name) => match ctx.problem.ideal(name) {
            Some(b) => Ok(vec![b]),
            None => usage(format!("no ideal named `{name}`")),
        },
        None if ctx.problem.ideals.is_empty() => usage("the problem file declares no ideal"),
        None => Ok(ctx.problem.ideals.iter().collect()),
    }
}

fn selected_maps<'c>(ctx: &'c Ctx) -> Res<Vec<&'c MapBlock>> {
    match &ctx.cli.map {
        Some(name) => match ctx.problem.map(name) {
            Some(b) => Ok(vec![b]),
            None => usage(format!("no map named `{name}`")),
        },
        None if ctx.problem.maps.is_empty() => usage("the problem file declares no map"),
        None => Ok(ctx.problem.maps.iter().collect()),
    }
}

fn per_ideal(ctx: &Ctx, f: fn(&Ctx, &IdealBlock) -> Res<Item>) -> Res<Vec<Item>> {
    selected_ideals(ctx)?
        .into_iter()
        .map(|b| f(ctx, b))
        .collect()
}

fn per_map(ctx: &Ctx, f: fn(&Ctx, &MapBlock) -> Res<Item>) -> Res<Vec<Item>> {
    selected_maps(ctx)?.into_iter().map(|b| f(ctx, b)).collect()
}

fn required_mu(ctx: &Ctx) -> Res<(u32, u32)> {
    match ctx.mu {
        Some(r) => Ok(r),
        None => usage(format!(
            "{} needs a jet range: pass --mu a..b or add `mu a..b` to the file",
            ctx.cli.command.name()
        )),
    }
}

fn exact(ctx: &Ctx, gens: &[Poly], ord: &OrderSpec) -> Res<Diagram> {
    Ok(diagram_of_ideal_with(gens, ord, &ctx.settings.sb)?)
}

fn standard(ctx: &Ctx) -> OrderSpec {
    OrderSpec::standard(ctx.problem.ring.arity())
}

fn fmt_vertices(vs: &[Exponent]) -> String {
    let parts: Vec<String> = vs.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// `None` for the unit ideal, whose quotient is zero.
fn krull(d: &Diagram) -> Option<usize> {
    (!d.is_full()).then(|| d.quotient_dimension())
}

fn opt<T: ToString>(v: Option<T>, none: &str) -> String {
    v.map_or_else(|| none.to_string(), |v| v.to_string())
}

fn diagram(ctx: &Ctx, b: &IdealBlock) -> Res<Item> {
    let d = exact(ctx, &numerators(&b.generators), &ctx.order)?;
    let human = format!(
        "{}: N = {}\n  dim = {}, colength = {}\n",
        b.name,
        d,
        opt(krull(&d), "none (unit ideal)"),
        opt(d.complement_size(), "infinite"),
    );
    let json = json!({
        "ideal": b.name,
        "vertices": d.vertices(),
        "dimension": krull(&d),
        "colength": d.complement_size(),
    });
    Ok(Item::new(json, human))
}

fn vertices(ctx: &Ctx, b: &IdealBlock) -> Res<Item> {
    let d = exact(ctx, &numerators(&b.generators), &ctx.order)?;
    let mut human = format!("{}:\n", b.name);
    for v in d.vertices() {
        let _ = writeln!(human, "  {v}");
    }
    Ok(Item::new(
        json!({ "ideal": b.name, "vertices": d.vertices() }),
        human,
    ))
}

fn hilbert(ctx: &Ctx, b: &IdealBlock) -> Res<Item> {
    let d = exact(ctx, &numerators(&b.generators), &standard(ctx))?;
    let k = ctx.bound.unwrap_or(DEFAULT_HILBERT_BOUND);
    let values: Vec<u64> = (0..=k).map(|k| d.hilbert_samuel(k)).collect();
    let mut human = format!("{}:\n  k   HS(k)\n", b.name);
    for (k, v) in values.iter().enumerate() {
        let _ = writeln!(human, "  {k:<3} {v}");
    }
    let json = json!({ "ideal": b.name, "bound": k, "hilbert_samuel": values });
    Ok(Item::new(json, human))
}

fn dim(ctx: &Ctx, b: &IdealBlock) -> Res<Item> {
    let d = exact(ctx, &numerators(&b.generators), &standard(ctx))?;
    let human = format!("{}: dim={}\n", b.name, opt(krull(&d), "none (unit ideal)"));
    let json = json!({ "ideal": b.name, "dimension": krull(&d), "vertices": d.vertices() });
    Ok(Item::new(json, human))
}

fn verdict_item(label: String, key: Value, v: Verdict) -> Item {
    let human = format!("{label}: {v}\n");
    let no = v.is_no().then(|| label.clone());
    let mut json = key;
    json["verdict"] = serde_json::to_value(&v).expect("verdicts serialize");
    Item { json, human, no }
}

fn regseq(ctx: &Ctx, b: &IdealBlock) -> Res<Item> {
    let v = regular_sequence(&numerators(&b.generators), &ctx.settings)?;
    Ok(verdict_item(b.name.clone(), json!({ "ideal": b.name }), v))
}

fn map_spec(ctx: &Ctx, b: &MapBlock) -> Res<MapSpec> {
    MapSpec::new(&ctx.problem.ring, b.relations.clone(), b.components.clone())
        .map_err(|e| Failure::Usage(format!("map `{}`: {e}", b.name)))
}

fn flat(ctx: &Ctx, b: &MapBlock) -> Res<Item> {
    let m = map_spec(ctx, b)?;
    match flat_ci(&m, &ctx.settings) {
        Ok(v) => Ok(verdict_item(b.name.clone(), json!({ "map": b.name }), v)),
        Err(e @ CoreError::SourceNotCompleteIntersection) => Ok(Item::new(
            json!({ "map": b.name, "error": e.to_string() }),
            format!("{}: {e}\n", b.name),
        )),
        Err(e) => Err(e.into()),
    }
}

fn milnor(ctx: &Ctx, b: &MapBlock) -> Res<Item> {
    let m = map_spec(ctx, b)?;
    let mu0 = milnor_mu0(&m, &ctx.settings)?;
    let bound = match determinacy_bound(&m, &ctx.settings) {
        Ok(d) => Some(d),
        Err(CoreError::NoCertifiedBound | CoreError::SourceNotCompleteIntersection) => None,
        Err(e) => return Err(e.into()),
    };
    let mut human = format!("{}: mu0 = {}\n", b.name, opt(mu0, "infinite"));
    match &bound {
        Some(d) => {
            let _ = writeln!(human, "  determinacy bound {} ({})", d.bound, d.scope);
        }
        None => human.push_str("  no certified determinacy bound\n"),
    }
    let json = json!({ "map": b.name, "mu0": mu0, "determinacy_bound": bound });
    Ok(Item::new(json, human))
}

fn jet(ctx: &Ctx, b: &IdealBlock) -> Res<Item> {
    let (lo, hi) = required_mu(ctx)?;
    let reference = exact(ctx, &numerators(&b.generators), &standard(ctx))?;
    let mut rows = Vec::new();
    let mut human = format!("{}: N(I) = {}\n  mu  equal  N(I_mu)\n", b.name, reference);
    for mu in lo..=hi {
        let jets = jet_ideal(&b.generators, mu);
        let d = exact(ctx, &jets, &standard(ctx))?;
        let equal = d == reference;
        let _ = writeln!(human, "  {mu:<3} {:<6} {}", equal, d);
        rows.push(json!({
            "mu": mu,
            "jets": jets.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "vertices": d.vertices(),
            "equal": equal,
        }));
    }
    let json = json!({ "ideal": b.name, "reference": reference.vertices(), "rows": rows });
    Ok(Item::new(json, human))
}

fn sweep(ctx: &Ctx, b: &IdealBlock) -> Res<Item> {
    let (lo, hi) = required_mu(ctx)?;
    if b.generators.is_empty() {
        return usage(format!("sweep: ideal `{}` has no generators", b.name));
    }
    let len = ctx.cli.len.unwrap_or(hi + 3);
    let r = jet_sweep(&b.generators, lo, hi, len, &ctx.settings)?;
    let mut human = format!(
        "{}: N(I) = {} (length bound {len})\n  mu  slice=  exact=  dim  new points\n",
        b.name,
        fmt_vertices(r.reference.as_deref().unwrap_or_default()),
    );
    for row in &r.rows {
        let _ = writeln!(
            human,
            "  {:<3} {:<6}  {:<6}  {:<4} {}",
            row.mu,
            opt(row.slice_equal, "-"),
            opt(row.exact_equal, "-"),
            opt(row.dimension, "-"),
            fmt_vertices(&row.new_points),
        );
    }
    if let Some(s) = &r.stabilization {
        let _ = writeln!(human, "  {s}");
    }
    let mut json = serde_json::to_value(&r).expect("reports serialize");
    json["ideal"] = json!(b.name);
    Ok(Item::new(json, human))
}

fn oracle_check(ctx: &Ctx, b: &IdealBlock) -> Res<Item> {
    let n = ctx.bound.unwrap_or(DEFAULT_ORACLE_BOUND);
    let r = oracle_cross_check_with(&numerators(&b.generators), n, &ctx.order, &ctx.settings.sb)?;
    let mut human = format!(
        "{}: engine and oracle {} below N = {n}\n  engine {}\n  oracle {}\n",
        b.name,
        if r.agree { "agree" } else { "DISAGREE" },
        fmt_vertices(&r.engine_vertices),
        fmt_vertices(&r.oracle_vertices),
    );
    if let Some(e) = &r.first_difference {
        let _ = writeln!(human, "  first difference at {e}");
    }
    let mut json = serde_json::to_value(&r).expect("reports serialize");
    json["ideal"] = json!(b.name);
    Ok(Item::new(json, human))
}

fn constant(ctx: &Ctx, c: i64) -> Poly {
    Poly::constant(&ctx.problem.ring, staircase::q(c))
}

fn det_example(ctx: &Ctx) -> Res<Vec<Item>> {
    let (lo, hi) = ctx.mu.expect("the built-in example declares mu");
    let f = &ctx.problem.ideals[0].generators;
    let ring = &ctx.problem.ring;
    let x = Poly::var(ring, 0);
    let y = Poly::var(ring, 1);
    let y2 = &y * &y;
    let ord = standard(ctx);

    let mut jets_rows = Vec::new();
    let mut det_rows = Vec::new();
    let mut human = String::from(
        "series f_i = g_i/(1 - y); witness (1,mu+1) in N(I_mu)\n  mu  y^2*j f1 - x*j f2  slice  exact  det\n",
    );
    for mu in lo..=hi {
        let (j1, j2) = (f[0].jet(mu), f[1].jet(mu));
        let syzygy = &(&y2 * &j1) - &(&x * &j2);
        let witness = Exponent::new([1, mu + 1]);
        let jets = jet_ideal(f, mu);
        let slice = truncated_diagram(&jets, mu + 3, &ord)?;
        let exact_d = exact(ctx, &jets, &ord)?;
        let in_slice = slice.contains(&witness) == Some(true);
        let in_exact = exact_d.contains(&witness)?;
        let rows = vec![
            vec![constant(ctx, 1), constant(ctx, 0), j1],
            vec![constant(ctx, 1), constant(ctx, 1), j2],
            vec![&y2 - &x, -&x, constant(ctx, 0)],
        ];
        let det = determinant(&rows)?;
        let _ = writeln!(
            human,
            "  {mu:<3} {:<18} {:<6} {:<6} {det}",
            syzygy.to_string(),
            in_slice,
            in_exact
        );
        jets_rows.push(json!({
            "mu": mu,
            "syzygy": syzygy.to_string(),
            "witness": witness,
            "witness_in_slice": in_slice,
            "witness_in_exact": in_exact,
        }));
        det_rows.push(json!({
            "mu": mu,
            "rows": rows
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "determinant": det.to_string(),
        }));
    }
    Ok(vec![
        Item::new(json!({ "example": "jets", "rows": jets_rows }), human),
        Item::new(
            json!({ "example": "determinant", "rows": det_rows }),
            String::new(),
        ),
    ])
}
