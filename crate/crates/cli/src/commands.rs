//! Argument handling, dispatch and the result document.

use std::time::Instant;

use clap::{Parser, ValueEnum};
use dnilp_core::commalg::{
    is_smooth, jacobi_matrix, jacobi_rank, jacobian_ideal, MonomialOrder, OrderKind, PolyIdeal,
    QuotientAlgebra,
};
use dnilp_core::diffops::annihilator::{annihilator_pair, weyl_filtration_basis};
use dnilp_core::diffops::curve::{simplicity_witness, MonomialCurve, WitnessOutcome};
use dnilp_core::diffops::subalgebras::Subalgebra;
use dnilp_core::diffops::suites::{verify_suite, SuiteBounds};
use dnilp_core::filtration::DEFAULT_BOUND;
use dnilp_core::localization::to_right_fraction;
use dnilp_core::poly::{default_names, Monomial};
use dnilp_core::{Budget, MultiPoly};
use serde_json::{json, Map, Value};

use crate::algebra::{infer_variables, select, Algebra, AnyAlgebra, LocAlg, PolyAlg, WeylAlg};
use crate::on_algebra;
use crate::parse::split_top_level;
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Mul,
    Comm,
    Ord,
    Act,
    Groebner,
    Jacobian,
    Smooth,
    Localize,
    Annihilators,
    Witness,
    Verify,
}

impl Verb {
    fn name(self) -> &'static str {
        match self {
            Verb::Mul => "mul",
            Verb::Comm => "comm",
            Verb::Ord => "ord",
            Verb::Act => "act",
            Verb::Groebner => "groebner",
            Verb::Jacobian => "jacobian",
            Verb::Smooth => "smooth",
            Verb::Localize => "localize",
            Verb::Annihilators => "annihilators",
            Verb::Witness => "witness",
            Verb::Verify => "verify",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "dnilp",
    version,
    about = "Exact computations in Weyl-type algebras"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Algebra selector: weyl:N, loc:x, curve:A,B,..., gwa:FILE|weyl|r1,
    /// ore:FILE|weyl or poly:VARS.
    #[arg(long)]
    pub algebra: Option<String>,
    /// Comma-separated generators of the derivation family for `ord`.
    #[arg(long)]
    pub delta: Option<String>,
    /// `default` or a list such as `k=3,d=8`.
    #[arg(long)]
    pub bounds: Option<String>,
    /// Step budget; defaults to DNILP_BUDGET or 100000.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Order search bound for `ord`.
    #[arg(long)]
    pub bound: Option<usize>,
    /// Filtration index for `annihilators`.
    #[arg(long, default_value_t = 1)]
    pub index: u32,
    /// Comma-separated polynomial variables.
    #[arg(long)]
    pub vars: Option<String>,
    /// Monomial order for `groebner`: grlex or lex.
    #[arg(long, default_value = "grlex")]
    pub order: String,
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    #[arg(long)]
    pub text: bool,
    /// Adds `elapsed_ms` to the document.
    #[arg(long)]
    pub timing: bool,
    pub args: Vec<String>,
}

/// A finished invocation: the rendered document and the exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

struct Computed {
    algebra: String,
    result: Value,
    passed: bool,
}

fn ok(algebra: String, result: Value) -> Computed {
    Computed {
        algebra,
        result,
        passed: true,
    }
}

fn need_args(args: &[String], n: usize, what: &str) -> Result<(), CliError> {
    if args.len() < n {
        return Err(CliError::Usage(format!("expected {what}")));
    }
    Ok(())
}

fn parse_all<A: Algebra>(a: &A, args: &[String]) -> Result<Vec<A::V>, CliError> {
    args.iter().map(|s| a.parse(s)).collect()
}

fn bounds_map(text: Option<&str>) -> Result<Vec<(String, u64)>, CliError> {
    match text {
        None | Some("default") => Ok(Vec::new()),
        Some(s) => s
            .split(',')
            .map(|kv| {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| CliError::Usage(format!("bad bound `{kv}`")))?;
                let v: u64 = v
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad bound `{kv}`")))?;
                Ok((k.trim().to_string(), v))
            })
            .collect(),
    }
}

fn poly_vars(cli: &Cli) -> Vec<String> {
    match &cli.vars {
        Some(v) => v.split(',').map(|s| s.trim().to_string()).collect(),
        None => {
            let v = infer_variables(&cli.args);
            if v.is_empty() {
                default_names(1)
            } else {
                v
            }
        }
    }
}

fn poly_algebra(cli: &Cli) -> Result<PolyAlg, CliError> {
    match cli.algebra.as_deref() {
        None => Ok(PolyAlg {
            names: poly_vars(cli),
        }),
        Some(sel) => match select(sel, Some(poly_vars(cli)))? {
            AnyAlgebra::Poly(p) => Ok(p),
            _ => Err(CliError::Usage(format!(
                "{} needs a polynomial ring",
                cli.verb.name()
            ))),
        },
    }
}

fn cmd_mul(cli: &Cli, alg: &AnyAlgebra) -> Result<Computed, CliError> {
    need_args(&cli.args, 1, "at least one factor")?;
    on_algebra!(alg, a => {
        let vals = parse_all(a, &cli.args)?;
        let mut p = vals[0].clone();
        for v in &vals[1..] {
            p = a.mul(&p, v)?;
        }
        Ok(ok(a.selector(), json!(a.render(&p))))
    })
}

fn cmd_comm(cli: &Cli, alg: &AnyAlgebra) -> Result<Computed, CliError> {
    if cli.args.len() != 2 {
        return Err(CliError::Usage("comm takes two elements".into()));
    }
    on_algebra!(alg, a => {
        let vals = parse_all(a, &cli.args)?;
        let c = a.commutator(&vals[0], &vals[1])?;
        Ok(ok(a.selector(), json!(a.render(&c))))
    })
}

fn cmd_ord(cli: &Cli, alg: &AnyAlgebra, budget: &Budget) -> Result<Computed, CliError> {
    if cli.args.len() != 1 {
        return Err(CliError::Usage("ord takes one element".into()));
    }
    let bound = cli.bound.unwrap_or(DEFAULT_BOUND);
    on_algebra!(alg, a => {
        let e = a.parse(&cli.args[0])?;
        let delta_text = match (&cli.delta, alg) {
            (Some(d), _) => split_top_level(d),
            (None, AnyAlgebra::Weyl(w)) => (1..=w.n)
                .map(|i| format!("x{i}"))
                .chain((1..=w.n).map(|i| format!("d{i}")))
                .collect(),
            (None, _) => return Err(CliError::Usage("ord needs --delta".into())),
        };
        let delta = parse_all(a, &delta_text)?;
        let details = a.order(&e, &delta, bound, budget)?;
        Ok(ok(a.selector(), json!({
            "order": details["order"].clone(),
            "details": details,
        })))
    })
}

fn cmd_act(cli: &Cli, alg: &AnyAlgebra) -> Result<Computed, CliError> {
    let w: &WeylAlg = match alg {
        AnyAlgebra::Weyl(w) => w,
        _ => return Err(CliError::Usage("act is defined on weyl:N".into())),
    };
    if cli.args.len() != 2 {
        return Err(CliError::Usage(
            "act takes an operator and a polynomial".into(),
        ));
    }
    let op = w.parse(&cli.args[0])?;
    let names = default_names(w.n);
    let ring = PolyAlg {
        names: names.clone(),
    };
    let p = ring.parse(&cli.args[1])?;
    Ok(ok(w.selector(), json!(op.act(&p)?.render(&names))))
}

fn cmd_groebner(cli: &Cli, budget: &Budget) -> Result<Computed, CliError> {
    need_args(&cli.args, 1, "at least one generator")?;
    let ring = poly_algebra(cli)?;
    let n = ring.names.len();
    let gens = parse_all(&ring, &cli.args)?;
    let order = match cli.order.as_str() {
        "grlex" => MonomialOrder::grlex(n),
        "lex" => MonomialOrder::with_priority(OrderKind::Lex, (0..n).collect())?,
        other => return Err(CliError::Usage(format!("unknown order `{other}`"))),
    };
    let ideal = PolyIdeal::with_order(n, gens, order)?;
    let basis: Vec<String> = ideal
        .groebner(budget)?
        .iter()
        .map(|g| g.render(&ring.names))
        .collect();
    Ok(ok(ring.selector(), json!(basis)))
}

fn quotient(cli: &Cli) -> Result<(PolyAlg, QuotientAlgebra), CliError> {
    need_args(&cli.args, 1, "at least one relation")?;
    let ring = poly_algebra(cli)?;
    let rels = parse_all(&ring, &cli.args)?;
    let ideal = PolyIdeal::new(ring.names.len(), rels)?;
    let q = QuotientAlgebra::with_names(ideal, ring.names.clone())?;
    Ok((ring, q))
}

fn cmd_jacobian(cli: &Cli) -> Result<Computed, CliError> {
    let (ring, q) = quotient(cli)?;
    let j = jacobi_matrix(&q)?;
    let matrix: Vec<Vec<String>> = j
        .reduced
        .iter()
        .map(|row| row.iter().map(|p| p.render(&ring.names)).collect())
        .collect();
    let ideal = jacobian_ideal(&q)?;
    Ok(ok(
        ring.selector(),
        json!({
            "matrix": matrix,
            "rank": jacobi_rank(&j, &q)?,
            "ideal": ideal.render(&ring.names)?,
            "unit": ideal.is_unit()?,
        }),
    ))
}

fn cmd_smooth(cli: &Cli) -> Result<Computed, CliError> {
    let (ring, q) = quotient(cli)?;
    Ok(ok(ring.selector(), json!(is_smooth(&q)?)))
}

fn cmd_localize(cli: &Cli, alg: &AnyAlgebra) -> Result<Computed, CliError> {
    let l: &LocAlg = match alg {
        AnyAlgebra::Loc(l) => l,
        _ => return Err(CliError::Usage("localize needs loc:x or curve:...".into())),
    };
    if cli.args.len() != 1 {
        return Err(CliError::Usage("localize takes one element".into()));
    }
    let u = l.parse(&cli.args[0])?;
    let (h, n) = to_right_fraction(&u, &l.ctx)?;
    let hr = l.ctx.render_weyl(&h);
    let right = if n == 0 {
        hr
    } else {
        format!("({hr})*{}^-{n}", l.ctx.render_weyl(l.ctx.s()))
    };
    Ok(ok(
        l.selector(),
        json!({ "left": l.render(&u), "right": right }),
    ))
}

fn cmd_annihilators(cli: &Cli) -> Result<Computed, CliError> {
    if cli.args.len() != 1 {
        return Err(CliError::Usage(
            "annihilators takes R0, R1, R2 or A1".into(),
        ));
    }
    let sub: Subalgebra = cli.args[0].parse()?;
    let i = cli.index;
    let pair = annihilator_pair(&sub.module_generators(i), i, &weyl_filtration_basis(i))?;
    let (b, c) = pair.render()?;
    Ok(ok(
        "weyl:1".into(),
        json!({ "subalgebra": sub.to_string(), "index": i, "b": b, "c": c }),
    ))
}

/// Pulled-back Jacobian minors of `y^a - x^b` for a two-generator curve.
fn default_witness_generators(curve: &MonomialCurve) -> Result<Vec<MultiPoly>, CliError> {
    let g = curve.generators();
    if g.len() != 2 {
        return Err(CliError::Usage(
            "witness needs explicit generators on this curve".into(),
        ));
    }
    let rel =
        MultiPoly::monomial(2, Monomial::var_pow(1, g[0]), dnilp_core::poly::rat(1)).try_sub(
            &MultiPoly::monomial(2, Monomial::var_pow(0, g[1]), dnilp_core::poly::rat(1)),
        )?;
    let ideal = PolyIdeal::new(2, vec![rel.clone()])?;
    let q = QuotientAlgebra::new(ideal);
    let jac = jacobian_ideal(&q)?;
    let mut out = Vec::new();
    for p in jac.generators() {
        let t = curve.pullback(p)?;
        if !t.is_zero() && !out.contains(&t) {
            out.push(t);
        }
    }
    Ok(out)
}

fn cmd_witness(cli: &Cli, budget: &Budget) -> Result<Computed, CliError> {
    let l = match cli.algebra.as_deref() {
        None => LocAlg::curve(MonomialCurve::cusp()),
        Some(sel) => match select(sel, None)? {
            AnyAlgebra::Loc(l) if l.curve.is_some() => l,
            _ => return Err(CliError::Usage("witness needs curve:...".into())),
        },
    };
    let curve = l.curve.clone().expect("curve algebra");
    let ring = PolyAlg {
        names: vec!["t".into()],
    };
    let gens = if cli.args.is_empty() {
        default_witness_generators(&curve)?
    } else {
        parse_all(&ring, &cli.args)?
    };
    let (mut k, mut d) = (3u32, 8u32);
    for (key, v) in bounds_map(cli.bounds.as_deref())? {
        match key.as_str() {
            "k" => k = v as u32,
            "d" => d = v as u32,
            other => return Err(CliError::Usage(format!("unknown bound `{other}`"))),
        }
    }
    let rendered: Vec<String> = gens.iter().map(|g| g.render(&ring.names)).collect();
    match simplicity_witness(&curve, &gens, k, d, budget)? {
        WitnessOutcome::Found(w) => {
            let window = 2 * (d + curve.max_generator()) + 10;
            let verified = w.verify(&gens, &curve, window)?;
            Ok(Computed {
                algebra: l.selector(),
                result: json!({
                    "found": true,
                    "generators": rendered,
                    "certificate": w.render(&gens),
                    "equals": "1",
                    "terms": w.terms.len(),
                    "order_bound": w.order_bound,
                    "degree_bound": w.degree_bound,
                    "products_examined": w.products_examined,
                    "verified": verified,
                }),
                passed: verified,
            })
        }
        WitnessOutcome::NotFound(stats) => Ok(Computed {
            algebra: l.selector(),
            result: json!({
                "found": false,
                "generators": rendered,
                "search": stats,
            }),
            passed: false,
        }),
    }
}

fn cmd_verify(cli: &Cli, budget: &Budget) -> Result<Computed, CliError> {
    if cli.args.len() != 1 {
        return Err(CliError::Usage("verify takes R0, R1 or R2".into()));
    }
    let sub: Subalgebra = cli.args[0].parse()?;
    let mut bounds = SuiteBounds::default();
    for (key, v) in bounds_map(cli.bounds.as_deref())? {
        match key.as_str() {
            "k" | "index" => bounds.max_index = v as u32,
            "d" | "degree" => bounds.degree = v as u32,
            "samples" => bounds.samples = v as usize,
            "seed" => bounds.seed = v,
            other => return Err(CliError::Usage(format!("unknown bound `{other}`"))),
        }
    }
    let report = verify_suite(sub, &bounds, budget)?;
    Ok(Computed {
        algebra: "weyl:1".into(),
        passed: report.passed(),
        result: serde_json::to_value(&report).expect("serializable"),
    })
}

fn dispatch(cli: &Cli, budget: &Budget) -> Result<Computed, CliError> {
    let algebra = || select(cli.algebra.as_deref().unwrap_or("weyl:1"), None);
    match cli.verb {
        Verb::Mul => cmd_mul(cli, &algebra()?),
        Verb::Comm => cmd_comm(cli, &algebra()?),
        Verb::Ord => cmd_ord(cli, &algebra()?, budget),
        Verb::Act => cmd_act(cli, &algebra()?),
        Verb::Groebner => cmd_groebner(cli, budget),
        Verb::Jacobian => cmd_jacobian(cli),
        Verb::Smooth => cmd_smooth(cli),
        Verb::Localize => {
            let alg = select(cli.algebra.as_deref().unwrap_or("loc:x"), None)?;
            cmd_localize(cli, &alg)
        }
        Verb::Annihilators => cmd_annihilators(cli),
        Verb::Witness => cmd_witness(cli, budget),
        Verb::Verify => cmd_verify(cli, budget),
    }
}

fn text_of(doc: &Map<String, Value>) -> String {
    let mut out = String::new();
    for (k, v) in doc {
        let s = match v {
            Value::String(s) => s.clone(),
            other => serde_json::to_string_pretty(other).expect("serializable"),
        };
        out.push_str(&format!("{k}: {s}\n"));
    }
    out
}

fn emit(doc: Map<String, Value>, text: bool) -> String {
    if text {
        text_of(&doc)
    } else {
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
        s.push('\n');
        s
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    output: e.to_string(),
                    code: 0,
                };
            }
            let mut doc = Map::new();
            doc.insert("status".into(), json!("error"));
            doc.insert("kind".into(), json!("usage"));
            doc.insert("detail".into(), json!(e.kind().to_string()));
            doc.insert("message".into(), json!(e.to_string().trim_end()));
            return Outcome {
                output: emit(doc, false),
                code: 2,
            };
        }
    };
    let budget = cli.budget.map_or_else(Budget::from_env, Budget::new);
    let start = Instant::now();
    let res = dispatch(&cli, &budget);
    let mut doc = Map::new();
    let code = match res {
        Ok(c) => {
            doc.insert("status".into(), json!(if c.passed { "ok" } else { "fail" }));
            doc.insert("command".into(), json!(cli.verb.name()));
            doc.insert("algebra".into(), json!(c.algebra));
            doc.insert("input".into(), json!(cli.args));
            doc.insert("result".into(), c.result);
            doc.insert("budget_used".into(), json!(budget.used()));
            if c.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            doc.insert("status".into(), json!("error"));
            doc.insert("command".into(), json!(cli.verb.name()));
            doc.insert("kind".into(), json!(e.kind()));
            doc.insert("detail".into(), json!(e.to_string()));
            e.exit_code()
        }
    };
    if cli.timing {
        doc.insert(
            "elapsed_ms".into(),
            json!(start.elapsed().as_millis() as u64),
        );
    }
    Outcome {
        output: emit(doc, cli.text),
        code,
    }
}
