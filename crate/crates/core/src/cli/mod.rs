//! Command-line driver. Every subcommand prints one JSON report.
//!
//! Exit codes: 0 on success, 2 on bad input, 1 when an internal consistency
//! check fails.

mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cyclo::{is_terminal_3fold, normalize_type, QuotientType};
use crate::duval::{classify_germ, DuvalError};
use crate::locdef::{
    character_table, in_m2_image, milnor_number, stable_truncation, t1_eigenpart_stable, tjurina_number, IdealTag,
    LocdefError, Truncation,
};
use crate::poly::{identifiers, var_names, Poly};
use crate::wblow::{charts, hypersurface_discrepancy, pair_discrepancy, strict_transform, WblowError, WeightVector};
use crate::wps::{analyze, anticanonical, WpsError, WpsHypersurface};

use render::{monomials, rat, wps_analysis};

pub const TRUNCATION_ENV: &str = "ELEPHANTINE_TRUNCATION";

#[derive(Parser, Debug)]
#[command(
    name = "elephantine",
    version,
    about = "Exact computations on cyclic quotient singularities"
)]
struct Cli {
    /// Indent the JSON report.
    #[arg(long, global = true)]
    pretty: bool,
    /// Truncation degree "N" or "N,cap" for local algebra computations.
    #[arg(long, global = true)]
    truncation: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weighted blow-up of a cyclic quotient: charts and discrepancies.
    Blowup(BlowupArgs),
    /// Chart cover of a weighted blow-up.
    Charts(ChartsArgs),
    /// Du Val classification of a germ in x, y, z.
    Duval(GermArgs),
    /// Eigenpart of the truncated deformation algebra.
    T1(T1Args),
    /// Milnor and Tjurina numbers.
    Milnor(GermArgs),
    /// Singularities and anticanonical data of a weighted hypersurface.
    Wps(WpsArgs),
}

#[derive(Args, Debug)]
struct ChartsArgs {
    /// Quotient type, e.g. "1/4(1,3,2,1)".
    #[arg(long = "type")]
    quotient: String,
    /// Weight vector, e.g. "1/4(1,3,2,1)" or "3,2,1".
    #[arg(long)]
    weights: String,
    /// Comma separated variable names.
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Args, Debug)]
struct BlowupArgs {
    #[command(flatten)]
    charts: ChartsArgs,
    /// Divisor equation; without --hypersurface it is also read as the
    /// equation of a hypersurface quotient.
    #[arg(long)]
    divisor: Option<String>,
    /// Equation of a hypersurface quotient containing the divisor.
    #[arg(long)]
    hypersurface: Option<String>,
}

#[derive(Args, Debug)]
struct GermArgs {
    #[arg(long)]
    germ: String,
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Args, Debug)]
struct T1Args {
    #[command(flatten)]
    germ: GermArgs,
    /// Group action; defaults to the trivial one.
    #[arg(long = "type")]
    quotient: Option<String>,
    /// "jacobian" or "tjurina".
    #[arg(long, default_value = "jacobian")]
    ideal: String,
    /// Also test whether this polynomial lies in m^2 + J_f.
    #[arg(long = "m2-test")]
    m2_test: Option<String>,
}

#[derive(Args, Debug)]
struct WpsArgs {
    /// Comma separated weights.
    #[arg(long, required_unless_present = "input_file")]
    weights: Option<String>,
    /// Degree, or comma separated degrees of a complete intersection.
    #[arg(long, required_unless_present = "input_file")]
    degree: Option<String>,
    #[arg(long)]
    equation: Option<String>,
    #[arg(long)]
    vars: Option<String>,
    /// Records "weights | degree | equation [| vars]", one per line.
    #[arg(long = "input-file", conflicts_with_all = ["weights", "degree", "equation", "vars"])]
    input_file: Option<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Internal(String),
}

type CliResult<T> = Result<T, CliError>;

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

impl From<WblowError> for CliError {
    fn from(e: WblowError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<DuvalError> for CliError {
    fn from(e: DuvalError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

impl From<LocdefError> for CliError {
    fn from(e: LocdefError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<WpsError> for CliError {
    fn from(e: WpsError) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

struct Outcome {
    inputs: Value,
    result: Value,
    warnings: Vec<String>,
}

/// Parse `args` (program name first), write the report to `out` and
/// diagnostics to `err`, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    let (name, outcome) = match dispatch(&cli) {
        Ok(x) => x,
        Err(CliError::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            return 2;
        }
        Err(CliError::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            return 1;
        }
    };
    let report = json!({
        "command": name,
        "inputs": outcome.inputs,
        "result": outcome.result,
        "warnings": outcome.warnings,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let text = if cli.pretty {
        serde_json::to_string_pretty(&report)
    } else {
        serde_json::to_string(&report)
    }
    .expect("JSON values always serialize");
    match writeln!(out, "{text}") {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write report: {e}");
            1
        }
    }
}

fn dispatch(cli: &Cli) -> CliResult<(&'static str, Outcome)> {
    let trunc = truncation(cli.truncation.as_deref(), std::env::var(TRUNCATION_ENV).ok().as_deref())?;
    Ok(match &cli.command {
        Command::Blowup(a) => ("blowup", blowup(a)?),
        Command::Charts(a) => ("charts", chart_cover(a)?),
        Command::Duval(a) => ("duval", duval(a, trunc)?),
        Command::T1(a) => ("t1", t1(a, trunc)?),
        Command::Milnor(a) => ("milnor", milnor(a, trunc)?),
        Command::Wps(a) => ("wps", wps(a)?),
    })
}

/// The flag wins over the environment, which wins over the default.
fn truncation(flag: Option<&str>, env: Option<&str>) -> CliResult<Truncation> {
    match flag.or(env.filter(|s| !s.trim().is_empty())) {
        Some(s) => s.parse().map_err(input),
        None => Ok(Truncation::default()),
    }
}

/// `x,y,z` for three variables, `x,y,z,u` for four, `x1,…,xn` otherwise.
pub fn default_vars(n: usize) -> Vec<String> {
    match n {
        1..=3 => var_names(&["x", "y", "z"][..n]),
        4 => var_names(&["x", "y", "z", "u"]),
        _ => (1..=n).map(|i| format!("x{i}")).collect(),
    }
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

fn explicit_vars(s: &str) -> CliResult<Vec<String>> {
    let vars = split_list(s);
    if vars.is_empty() {
        return Err(input("--vars is empty"));
    }
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(input(format!("variable '{v}' is listed twice")));
        }
    }
    Ok(vars)
}

/// Variables for a germ: explicit, else the shortest prefix of `x,y,z,u`
/// with at least `min` entries covering every identifier.
fn germ_vars(text: &str, vars: Option<&str>, min: usize) -> CliResult<Vec<String>> {
    if let Some(v) = vars {
        return explicit_vars(v);
    }
    let ids = identifiers(text).map_err(input)?;
    let covers = |vs: &[String]| ids.iter().all(|i| vs.contains(i));
    for n in min.max(1)..=4 {
        let vs = default_vars(n);
        if covers(&vs) {
            return Ok(vs);
        }
    }
    let indexed = ids
        .iter()
        .map(|i| {
            i.strip_prefix('x')
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
        })
        .collect::<Option<Vec<usize>>>();
    if let Some(ks) = indexed {
        let n = ks.into_iter().max().unwrap_or(0).max(min);
        if n > 4 {
            return Ok(default_vars(n));
        }
    }
    Err(input(format!("cannot infer the variables of '{text}'; pass --vars")))
}

fn parse_poly(text: &str, vars: &[String]) -> CliResult<Poly> {
    Poly::parse(text, vars).map_err(|e| input(format!("in '{text}': {e}")))
}

fn parse_type(s: &str) -> CliResult<QuotientType> {
    s.parse().map_err(input)
}

fn quotient_json(q: &QuotientType) -> Value {
    json!({
        "type": q.to_string(),
        "normalized": normalize_type(q).to_string(),
        "smooth": q.is_smooth(),
        "terminal": is_terminal_3fold(q).ok(),
    })
}

fn blowup_setup(a: &ChartsArgs) -> CliResult<(QuotientType, WeightVector, Vec<String>)> {
    let q = parse_type(&a.quotient)?;
    let v: WeightVector = a.weights.parse().map_err(input)?;
    let vars = match &a.vars {
        Some(s) => explicit_vars(s)?,
        None => default_vars(q.arity()),
    };
    if vars.len() != q.arity() {
        return Err(input(format!(
            "{} variables for a quotient of dimension {}",
            vars.len(),
            q.arity()
        )));
    }
    Ok((q, v, vars))
}

fn chart_table(q: &QuotientType, v: &WeightVector, vars: &[String], transforms: &[(&str, &Poly)]) -> CliResult<Value> {
    let mut out = Vec::new();
    for c in charts(q, v)? {
        let mut entry = quotient_json(&c.quotient);
        entry["index"] = json!(c.index);
        entry["variable"] = json!(vars[c.index]);
        entry["coordinates"] = json!(c.map.render(vars));
        for (key, f) in transforms {
            let (g, w) = strict_transform(f, v, c.index)?;
            entry[*key] = json!({ "equation": g.to_string(), "weight": rat(&w) });
        }
        out.push(entry);
    }
    Ok(Value::Array(out))
}

fn chart_cover(a: &ChartsArgs) -> CliResult<Outcome> {
    let (q, v, vars) = blowup_setup(a)?;
    Ok(Outcome {
        inputs: json!({ "type": q.to_string(), "weights": v.to_string(), "vars": vars }),
        result: json!({ "charts": chart_table(&q, &v, &vars, &[])? }),
        warnings: Vec::new(),
    })
}

fn blowup(a: &BlowupArgs) -> CliResult<Outcome> {
    let (q, v, vars) = blowup_setup(&a.charts)?;
    let divisor = a.divisor.as_deref().map(|s| parse_poly(s, &vars)).transpose()?;
    let hyper = a.hypersurface.as_deref().map(|s| parse_poly(s, &vars)).transpose()?;
    let mut warnings = Vec::new();
    let canonical = crate::wblow::canonical_discrepancy(&q, &v)?;
    let mut result = json!({ "canonical_discrepancy": rat(&canonical) });
    let mut transforms: Vec<(&str, &Poly)> = Vec::new();
    match (&hyper, &divisor) {
        (Some(h), g) => {
            let rep = hypersurface_discrepancy(&q, h, g.as_ref(), &v)?;
            result["hypersurface"] = json!({
                "weight": rat(&rep.hypersurface_weight),
                "canonical_discrepancy": rat(&rep.canonical),
            });
            result["hypersurface_canonical_discrepancy"] = json!(rat(&rep.canonical));
            if let (Some(w), Some(p)) = (&rep.divisor_weight, &rep.pair) {
                result["divisor_weight"] = json!(rat(w));
                result["pair_discrepancy"] = json!(rat(p));
            }
            result["integral"] = json!(rep.integral);
            transforms.push(("strict_transform", h));
            if let Some(g) = g {
                transforms.push(("divisor_transform", g));
            }
        }
        (None, Some(f)) => {
            let rep = pair_discrepancy(&q, f, &v)?;
            let hyp = hypersurface_discrepancy(&q, f, None, &v)?;
            result["divisor_weight"] = json!(rat(&rep.divisor_weight));
            result["pair_discrepancy"] = json!(rat(&rep.pair));
            result["integral"] = json!(rep.integral);
            result["hypersurface_canonical_discrepancy"] = json!(rat(&hyp.canonical));
            transforms.push(("strict_transform", f));
        }
        (None, None) => warnings.push("no divisor given; only the ambient discrepancy is reported".to_string()),
    }
    result["charts"] = chart_table(&q, &v, &vars, &transforms)?;
    Ok(Outcome {
        inputs: json!({
            "type": q.to_string(),
            "weights": v.to_string(),
            "vars": vars,
            "divisor": divisor.map(|p| p.to_string()),
            "hypersurface": hyper.map(|p| p.to_string()),
        }),
        result,
        warnings,
    })
}

fn duval(a: &GermArgs, trunc: Truncation) -> CliResult<Outcome> {
    let vars = germ_vars(&a.germ, a.vars.as_deref(), 3)?;
    let f = parse_poly(&a.germ, &vars)?;
    let rep = classify_germ(&f, trunc)?;
    let (family, index) = match &rep.verdict {
        crate::duval::Verdict::DuVal { family, index } => (Some(family.name()), *index),
        _ => (None, None),
    };
    let steps: Vec<Value> = rep
        .normalization
        .steps
        .iter()
        .map(|s| json!({ "kind": s.kind.name(), "substitutions": s.render() }))
        .collect();
    Ok(Outcome {
        inputs: json!({ "germ": f.to_string(), "vars": vars, "truncation": trunc.to_string() }),
        result: json!({
            "verdict": rep.verdict.to_string(),
            "family": family,
            "index": index,
            "du_val": family.is_some(),
            "milnor": rep.milnor,
            "recommendation": rep.recommendation.as_ref().map(|r| json!({
                "weights": r.weights.to_string(),
                "discrepancy": rat(&r.discrepancy),
            })),
            "coordinate_change": steps,
            "normal_form": rep.normal_form.to_string(),
        }),
        warnings: Vec::new(),
    })
}

fn t1(a: &T1Args, trunc: Truncation) -> CliResult<Outcome> {
    let q = a.quotient.as_deref().map(parse_type).transpose()?;
    let min = q.as_ref().map_or(1, QuotientType::arity);
    let vars = germ_vars(&a.germ.germ, a.germ.vars.as_deref(), min)?;
    let f = parse_poly(&a.germ.germ, &vars)?;
    let q = q.unwrap_or_else(|| QuotientType::smooth(vars.len()));
    if q.arity() != vars.len() {
        return Err(input(format!(
            "{} variables for a quotient of dimension {}",
            vars.len(),
            q.arity()
        )));
    }
    let tag: IdealTag = a.ideal.parse().map_err(input)?;
    let (n, rep) = t1_eigenpart_stable(&f, &q, tag, trunc.cap)?;
    let table = character_table(&f, &q, tag, n)?;
    let total: usize = table.values().map(Vec::len).sum();
    let mut result = json!({
        "stable_truncation": n,
        "character": rep.character.to_string(),
        "dimension": rep.dimension,
        "basis": monomials(&rep.basis, &vars),
        "total_dimension": total,
        "character_table": table
            .iter()
            .map(|(k, ms)| (k.to_string(), json!(monomials(ms, &vars))))
            .collect::<serde_json::Map<_, _>>(),
    });
    if let Some(g) = &a.m2_test {
        let g = parse_poly(g, &vars)?;
        result["m2_test"] = json!({
            "polynomial": g.to_string(),
            "in_m2_plus_jacobian": in_m2_image(&f, &g, trunc.degree.max(n))?,
        });
    }
    Ok(Outcome {
        inputs: json!({
            "germ": f.to_string(),
            "vars": vars,
            "type": q.to_string(),
            "ideal": tag.name(),
            "truncation": trunc.to_string(),
        }),
        result,
        warnings: Vec::new(),
    })
}

fn milnor(a: &GermArgs, trunc: Truncation) -> CliResult<Outcome> {
    let vars = germ_vars(&a.germ, a.vars.as_deref(), 1)?;
    let f = parse_poly(&a.germ, &vars)?;
    let mu = milnor_number(&f, trunc.cap)?;
    let tau = tjurina_number(&f, trunc.cap)?;
    let (n, _) = stable_truncation(&f, IdealTag::Jacobian, trunc.cap)?;
    Ok(Outcome {
        inputs: json!({ "germ": f.to_string(), "vars": vars, "truncation": trunc.to_string() }),
        result: json!({
            "milnor": mu,
            "tjurina": tau,
            "quasi_homogeneous_test": mu == tau,
            "stable_truncation": n,
        }),
        warnings: Vec::new(),
    })
}

fn parse_u64_list(s: &str, what: &str) -> CliResult<Vec<u64>> {
    let items = split_list(s.trim().trim_start_matches('(').trim_end_matches(')'));
    if items.is_empty() {
        return Err(input(format!("empty {what}")));
    }
    items
        .iter()
        .map(|t| t.parse::<u64>().ok().filter(|&w| w > 0))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| input(format!("invalid {what} '{s}': expected positive integers")))
}

const MAX_INFERRED_VARS: usize = 9;

/// Assign the identifiers of `text` to the weights so that the equation
/// becomes homogeneous of degree `d`, trying orders lexicographically from
/// the order of first appearance.
fn infer_wps_vars(text: &str, weights: &[u64], d: u64, warnings: &mut Vec<String>) -> CliResult<Vec<String>> {
    let ids = identifiers(text).map_err(input)?;
    if ids.len() != weights.len() {
        return Err(input(format!(
            "the equation uses {} variables but {} weights were given; pass --vars",
            ids.len(),
            weights.len()
        )));
    }
    if ids.len() > MAX_INFERRED_VARS {
        return Err(input("too many variables to infer their order; pass --vars"));
    }
    let mut perm: Vec<usize> = (0..ids.len()).collect();
    let mut found: Vec<Vec<String>> = Vec::new();
    loop {
        let vars: Vec<String> = perm.iter().map(|&k| ids[k].clone()).collect();
        if let Ok(f) = Poly::parse(text, &vars) {
            if !f.is_zero() && f.is_weighted_homogeneous(weights, d) {
                let same_weights = |other: &Vec<String>| {
                    ids.iter().all(|id| {
                        let w = |vs: &[String]| weights[vs.iter().position(|v| v == id).unwrap()];
                        w(other) == w(&vars)
                    })
                };
                if !found.iter().any(same_weights) {
                    found.push(vars);
                }
                if found.len() > 1 {
                    break;
                }
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    match found.len() {
        0 => Err(input(format!(
            "'{text}' is not homogeneous of degree {d} for any assignment of the weights; pass --vars"
        ))),
        n => {
            if n > 1 {
                warnings.push(format!(
                    "several variable orders make the equation homogeneous; using {}",
                    found[0].join(",")
                ));
            }
            warnings.push(format!("variable order inferred as {}", found[0].join(",")));
            Ok(found.swap_remove(0))
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

struct WpsRecord {
    weights: String,
    degree: String,
    equation: Option<String>,
    vars: Option<String>,
}

fn wps_record(r: &WpsRecord) -> CliResult<(Value, Value, Vec<String>)> {
    let weights = parse_u64_list(&r.weights, "weights")?;
    let degrees = parse_u64_list(&r.degree, "degrees")?;
    let mut warnings = Vec::new();
    if degrees.len() > 1 {
        if r.equation.is_some() {
            warnings.push("complete intersections: equations are ignored, only anticanonical data is computed".into());
        }
        let vars = match &r.vars {
            Some(v) => explicit_vars(v)?,
            None => default_vars(weights.len()),
        };
        let (k, sections) = anticanonical(&weights, &degrees);
        let inputs = json!({ "weights": weights, "degrees": degrees, "vars": vars });
        let result = json!({
            "wellformed": crate::wps::wellformed(&weights),
            "anticanonical": {
                "degree": k,
                "h0": sections.len(),
                "sections": monomials(&sections, &vars),
            },
        });
        return Ok((inputs, result, warnings));
    }
    let d = degrees[0];
    let text = r
        .equation
        .as_deref()
        .ok_or_else(|| input("--equation is required for a hypersurface"))?;
    let vars = match &r.vars {
        Some(v) => explicit_vars(v)?,
        None => infer_wps_vars(text, &weights, d, &mut warnings)?,
    };
    if vars.len() != weights.len() {
        return Err(input(format!("{} variables for {} weights", vars.len(), weights.len())));
    }
    let f = parse_poly(text, &vars)?;
    let x = WpsHypersurface::new(weights.clone(), d, f)?;
    let analysis = analyze(&x)?;
    if !analysis.wellformed {
        warnings.push("the weights are not well formed".into());
    }
    let inputs = json!({ "weights": weights, "degree": d, "equation": x.equation().to_string(), "vars": vars });
    Ok((inputs, wps_analysis(&analysis), warnings))
}

fn wps(a: &WpsArgs) -> CliResult<Outcome> {
    let Some(path) = &a.input_file else {
        let (inputs, result, warnings) = wps_record(&WpsRecord {
            weights: a.weights.clone().unwrap_or_default(),
            degree: a.degree.clone().unwrap_or_default(),
            equation: a.equation.clone(),
            vars: a.vars.clone(),
        })?;
        return Ok(Outcome {
            inputs,
            result,
            warnings,
        });
    };
    let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    let mut records = Vec::new();
    let mut warnings = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if !(2..=4).contains(&fields.len()) {
            return Err(input(format!(
                "{}:{}: expected 'weights | degree | equation'",
                path.display(),
                lineno + 1
            )));
        }
        let nonempty = |k: usize| fields.get(k).filter(|s| !s.is_empty()).map(|s| s.to_string());
        let record = WpsRecord {
            weights: fields[0].to_string(),
            degree: fields[1].to_string(),
            equation: nonempty(2),
            vars: nonempty(3),
        };
        let (inputs, result, ws) = wps_record(&record).map_err(|e| match e {
            CliError::Input(m) => CliError::Input(format!("{}:{}: {m}", path.display(), lineno + 1)),
            other => other,
        })?;
        warnings.extend(ws.into_iter().map(|w| format!("line {}: {w}", lineno + 1)));
        records.push(json!({ "line": lineno + 1, "inputs": inputs, "result": result }));
    }
    Ok(Outcome {
        inputs: json!({ "input_file": path.display().to_string() }),
        result: json!({ "records": records }),
        warnings,
    })
}
