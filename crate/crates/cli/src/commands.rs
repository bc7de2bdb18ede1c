use std::fmt::Write as _;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context as _, Result};
use permcong::acceptance::{run_criterion, Suite};
use permcong::family::{baxter_word, named_family, CongruenceFamily, FamilyKind};
use permcong::fan::{MAX_FAN_N, SHELLING_SEEDS};
use permcong::oracle::{catalan_numbers, min_product};
use permcong::perm::{factorial, par_count, parse_word_list, MAX_BITSET_N};
use permcong::weak_order::MAX_MATERIALIZED_N;
use permcong::{
    build_fan, check_axioms, check_embedding, check_fan_poset_properties, Family, FamilySpec,
    HopfAmbient, MalvenutoReutenauer, Permutation, QuotientHopf,
};
use serde_json::{json, Value};

use crate::{FamilyArgs, FanWhat, Format, HopfOp, Kind, SuiteArg};

/// Largest total degree accepted by single Hopf operations.
const MAX_HOPF_DEGREE: usize = 8;
/// Largest degree accepted by `hopf check`.
const MAX_CHECK_DEGREE: usize = 6;
/// Largest n for listing bottoms.
const MAX_LIST_N: usize = 9;

pub struct Context {
    pub format: Format,
    pub seed: Option<u64>,
}

pub struct Output {
    pub text: String,
    pub success: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            success: true,
        }
    }
}

impl Context {
    fn render(&self, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) -> String {
        match self.format {
            Format::Text => text(),
            Format::Json => pretty(&value()),
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn resolve(args: &FamilyArgs) -> Result<Option<FamilySpec>> {
    match (&args.family, &args.generators) {
        (Some(name), _) => Ok(Some(named_family(name)?)),
        (None, Some(list)) => {
            let gens = parse_word_list(list)?;
            let spec = match args.kind {
                Kind::H => FamilySpec::h(gens)?,
                Kind::Tr => FamilySpec::tr(gens)?,
            };
            Ok(Some(spec))
        }
        (None, None) => Ok(None),
    }
}

fn require(args: &FamilyArgs) -> Result<FamilySpec> {
    resolve(args)?.ok_or_else(|| anyhow!("a family is required: pass --family or --generators"))
}

fn guard(what: &str, n: usize, max: usize) -> Result<()> {
    if n > max {
        bail!("{what} supports n <= {max}, got n = {n}");
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || anyhow!("invalid range {s:?}; expected A..B or a single integer");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

type ClosedForm = (&'static str, Box<dyn Fn(usize) -> u64>);

/// Closed form registered for a named family, if any.
fn expected_count(spec: &FamilySpec) -> Option<ClosedForm> {
    let is = |name: &str| named_family(name).map(|s| &s == spec).unwrap_or(false);
    if is("tamari") {
        return Some(("Catalan", Box::new(|n| catalan_numbers(n)[n])));
    }
    if is("descent") {
        return Some((
            "2^(n-1)",
            Box::new(|n| if n == 0 { 1 } else { 1 << (n - 1) }),
        ));
    }
    if is("trivial") {
        return Some(("n!", Box::new(factorial)));
    }
    if is("full") {
        return Some(("1", Box::new(|_| 1)));
    }
    if is("twisted-baxter") {
        return Some(("Baxter", Box::new(|n| par_count(n, baxter_word))));
    }
    // snk k for k >= n - 1 is the trivial congruence; larger k are not worth probing
    (1..MAX_BITSET_N)
        .find(|k| is(&format!("snk {k}")))
        .map(|k| {
            (
                "prod min(i,k)",
                Box::new(move |n| min_product(n, k)) as Box<dyn Fn(usize) -> u64>,
            )
        })
}

pub fn count(
    ctx: &Context,
    args: &FamilyArgs,
    range: Option<&str>,
    n: Option<usize>,
) -> Result<Output> {
    let spec = require(args)?;
    let (lo, hi) = match (range, n) {
        (Some(r), _) => parse_range(r)?,
        (None, Some(n)) => (n, n),
        (None, None) => bail!("pass --n or --range"),
    };
    let max = match spec.kind() {
        FamilyKind::H => MAX_BITSET_N,
        FamilyKind::Tr => MAX_MATERIALIZED_N,
    };
    guard("count", hi, max)?;
    let expected = expected_count(&spec);
    let mut rows = Vec::new();
    let mut success = true;
    for n in lo..=hi {
        let c = spec.count_bottoms(n)?;
        let e = expected.as_ref().map(|(_, f)| f(n));
        success &= e.is_none_or(|e| e == c);
        rows.push((n, c, e));
    }
    let text = ctx.render(
        || {
            let mut s = format!("{spec}\n");
            for &(n, c, e) in &rows {
                let _ = write!(s, "n = {n:>2}  {c:>10}");
                if let (Some(e), Some((label, _))) = (e, &expected) {
                    let mark = if e == c { "ok" } else { "MISMATCH" };
                    let _ = write!(s, "  {label}: {e} {mark}");
                }
                s.push('\n');
            }
            s
        },
        || {
            json!({
                "family": spec.to_string(),
                "closed_form": expected.as_ref().map(|(l, _)| *l),
                "counts": rows.iter().map(|&(n, c, e)| json!({"n": n, "count": c, "expected": e})).collect::<Vec<_>>(),
            })
        },
    );
    Ok(Output { text, success })
}

fn bottoms_of(spec: &FamilySpec, n: usize) -> Result<Vec<Permutation>> {
    Ok(match spec.kind() {
        FamilyKind::H => spec.bottoms(n)?,
        FamilyKind::Tr => Family::new(spec.clone()).congruence(n)?.bottoms(),
    })
}

pub fn bottoms(ctx: &Context, args: &FamilyArgs, n: usize) -> Result<Output> {
    let spec = require(args)?;
    let max = match spec.kind() {
        FamilyKind::H => MAX_LIST_N,
        FamilyKind::Tr => MAX_MATERIALIZED_N,
    };
    guard("bottoms", n, max)?;
    let list = bottoms_of(&spec, n)?;
    Ok(Output::ok(ctx.render(
        || list.iter().map(|x| format!("{x}\n")).collect(),
        || json!({"family": spec.to_string(), "n": n, "bottoms": list}),
    )))
}

pub fn quotient(ctx: &Context, args: &FamilyArgs, n: usize) -> Result<Output> {
    let spec = require(args)?;
    guard("quotient", n, MAX_MATERIALIZED_N)?;
    let cong = Family::new(spec.clone()).congruence(n)?;
    let q = cong.quotient();
    Ok(Output::ok(ctx.render(
        || {
            let mut s = format!("{spec}, n = {n}: {} classes\n", q.len());
            for (a, b) in q.poset().covers() {
                let _ = writeln!(s, "{} < {}", q.elements()[a], q.elements()[b]);
            }
            s
        },
        || {
            let poset = serde_json::to_value(q.to_json()).expect("poset serializes");
            json!({"family": spec.to_string(), "n": n, "poset": poset})
        },
    )))
}

fn word(s: &str) -> Result<Permutation> {
    s.parse()
        .with_context(|| format!("reading permutation {s:?}"))
}

pub fn hopf(ctx: &Context, args: &FamilyArgs, op: &HopfOp) -> Result<Output> {
    let spec = resolve(args)?;
    let ambient: Arc<dyn HopfAmbient> = match &spec {
        Some(s) => Arc::new(QuotientHopf::new(s.clone())),
        None => Arc::new(MalvenutoReutenauer::new()),
    };
    let name = ambient.name();
    let check_basis = |x: &Permutation| -> Result<()> {
        if let Some(s) = &spec {
            if s.is_contracted_perm(x)? {
                bail!("{x} is not a class bottom of {s}");
            }
        }
        Ok(())
    };
    let (op_name, inputs, text, value) = match op {
        HopfOp::Product { u, v } => {
            let (u, v) = (word(u)?, word(v)?);
            guard("hopf product", u.len() + v.len(), MAX_HOPF_DEGREE)?;
            check_basis(&u)?;
            check_basis(&v)?;
            let r = ambient.product(&u, &v)?;
            (
                "product",
                vec![u, v],
                r.to_string(),
                serde_json::to_value(r.to_json())?,
            )
        }
        HopfOp::Coproduct { x } => {
            let x = word(x)?;
            guard("hopf coproduct", x.len(), MAX_HOPF_DEGREE)?;
            check_basis(&x)?;
            let r = ambient.coproduct(&x)?;
            (
                "coproduct",
                vec![x],
                r.to_string(),
                serde_json::to_value(r.to_json())?,
            )
        }
        HopfOp::Antipode { x } => {
            let x = word(x)?;
            guard("hopf antipode", x.len(), MAX_CHECK_DEGREE)?;
            check_basis(&x)?;
            let r = ambient.antipode(&x)?;
            (
                "antipode",
                vec![x],
                r.to_string(),
                serde_json::to_value(r.to_json())?,
            )
        }
        HopfOp::Check { degree } => return hopf_check(ctx, spec, ambient.as_ref(), *degree),
    };
    Ok(Output::ok(ctx.render(
        || text,
        || json!({"ambient": name, "op": op_name, "args": inputs, "result": value}),
    )))
}

fn hopf_check(
    ctx: &Context,
    spec: Option<FamilySpec>,
    ambient: &dyn HopfAmbient,
    degree: usize,
) -> Result<Output> {
    guard("hopf check", degree, MAX_CHECK_DEGREE)?;
    let mut reports = vec![check_axioms(ambient, degree)?];
    if let Some(s) = spec {
        reports.push(check_embedding(&QuotientHopf::new(s), degree)?);
    }
    let success = reports.iter().all(|r| r.passed());
    let text = ctx.render(
        || {
            reports
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
                .join("\n")
        },
        || json!({"passed": success, "reports": reports}),
    );
    Ok(Output { text, success })
}

pub fn fan(ctx: &Context, args: &FamilyArgs, n: usize, what: FanWhat) -> Result<Output> {
    let spec = require(args)?;
    guard("fan", n, MAX_FAN_N)?;
    let cong = Family::new(spec).congruence(n)?;
    let fan = build_fan(cong)?;
    match what {
        FanWhat::Export => Ok(Output::ok(pretty(&serde_json::to_value(fan.to_json())?))),
        FanWhat::Verify => {
            let seeds: Vec<u64> = match ctx.seed {
                Some(s) => (0..SHELLING_SEEDS.len() as u64)
                    .map(|i| s.wrapping_add(i))
                    .collect(),
                None => SHELLING_SEEDS.to_vec(),
            };
            let report = check_fan_poset_properties(&fan, &seeds);
            let success = report.passed();
            let text = ctx.render(|| report.to_string(), || json!(report));
            Ok(Output { text, success })
        }
    }
}

pub fn accept(ctx: &Context, suite: SuiteArg) -> Result<Output> {
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Lattice => Suite::Lattice,
        SuiteArg::Hopf => Suite::Hopf,
        SuiteArg::Fan => Suite::Fan,
    };
    let mut results = Vec::new();
    for id in suite.criteria() {
        results.push(run_criterion(id)?);
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let success = passed == results.len();
    let text = ctx.render(
        || {
            let mut s: String = results.iter().map(|r| format!("{r}\n")).collect();
            let _ = write!(s, "{passed}/{} criteria passed", results.len());
            s
        },
        || json!({"suite": suite, "passed": success, "results": results}),
    );
    Ok(Output { text, success })
}
