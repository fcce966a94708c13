use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use groupdeg::density::{log_divergence_partial, DivergenceRow};
use groupdeg::formulas::{
    appendix_table, ex54_rows, limit, limit_convergence_probe, limit_entries, AppendixCell,
    Ex54Row, APPENDIX_PROPERTIES,
};
use groupdeg::group::parse_table_document;
use groupdeg::{
    approximate, census_with_cap, construct, degrees as oracle_degrees, evaluate, verify,
    DegreeFunction, Degrees, Error, ExactRational, FamilyKind, FamilySpec, FiniteGroup, LimitEntry,
    SubgroupCensus,
};
use serde::Serialize;

use crate::output::Sink;
use crate::params::{describe, parse_values, sweep};
use crate::CliError;

pub struct Ctx {
    pub cap: usize,
    pub digits: usize,
}

/// How a command finished when it did not hit an error.
#[derive(Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Some comparison was skipped because a group exceeded the cap.
    Skipped,
    /// Some formula disagreed with the oracle.
    Mismatch,
}

pub type Out<'a> = Sink<Box<dyn Write + 'a>>;

fn fmt_opt(v: Option<&ExactRational>) -> String {
    v.map_or_else(|| "-".to_string(), ToString::to_string)
}

/// Where a group comes from: a family spec or a table file.
pub enum Source<'a> {
    Spec(&'a str),
    Table(&'a Path),
}

struct Loaded {
    label: String,
    spec: Option<FamilySpec>,
    group: Result<FiniteGroup, Error>,
}

fn load(source: &Source) -> Result<Loaded, CliError> {
    match source {
        Source::Spec(text) => {
            let spec: FamilySpec = text.parse()?;
            Ok(Loaded {
                label: spec.to_string(),
                group: construct(&spec),
                spec: Some(spec),
            })
        }
        Source::Table(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(Loaded {
                label: path.display().to_string(),
                spec: None,
                group: Ok(parse_table_document(&text)?),
            })
        }
    }
}

#[derive(Serialize)]
struct ValueRow {
    function: DegreeFunction,
    formula: Option<ExactRational>,
    oracle: Option<ExactRational>,
    decimal: Option<String>,
}

#[derive(Serialize)]
struct DegreesReport {
    source: String,
    order: String,
    values: Vec<ValueRow>,
    provenance: Vec<String>,
    oracle_skipped: Option<String>,
}

pub fn degrees(source: Source, ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let loaded = load(&source)?;
    let formulas = loaded.spec.as_ref().map(evaluate).transpose()?;
    let has_formula = formulas.as_ref().is_some_and(|f| !f.is_empty());
    let order = match (&loaded.spec, &loaded.group) {
        (Some(spec), _) => spec.declared_order().to_string(),
        (None, Ok(g)) => g.order().to_string(),
        (None, Err(_)) => String::new(),
    };
    let (oracle, skipped) = match loaded.group.and_then(|g| census_with_cap(&g, ctx.cap)) {
        Ok(c) => (Some(oracle_degrees(&c)), None),
        Err(e) if e.is_resource() && has_formula => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };

    let values: Vec<ValueRow> = DegreeFunction::ALL
        .into_iter()
        .map(|f| {
            let formula = formulas.as_ref().and_then(|r| r.get(f).cloned());
            let o = oracle.as_ref().map(|d| degree(d, f).clone());
            let decimal = o
                .as_ref()
                .or(formula.as_ref())
                .map(|v| v.to_decimal(ctx.digits));
            ValueRow {
                function: f,
                formula,
                oracle: o,
                decimal,
            }
        })
        .collect();
    let report = DegreesReport {
        source: loaded.label,
        order,
        provenance: formulas.map(|f| f.provenance).unwrap_or_default(),
        oracle_skipped: skipped,
        values,
    };

    out.line(format!("{} (order {})", report.source, report.order))?;
    out.row(
        ["function", "formula", "oracle", "decimal"]
            .map(String::from)
            .to_vec(),
    );
    for v in &report.values {
        out.row(vec![
            v.function.to_string(),
            fmt_opt(v.formula.as_ref()),
            fmt_opt(v.oracle.as_ref()),
            v.decimal.clone().unwrap_or_else(|| "-".into()),
        ]);
        out.csv(
            &["source", "function", "formula", "oracle", "decimal"],
            &[
                report.source.clone(),
                v.function.to_string(),
                v.formula
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
                v.oracle
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
                v.decimal.clone().unwrap_or_default(),
            ],
        )?;
    }
    if !report.provenance.is_empty() {
        out.line(format!("closed forms: {}", report.provenance.join(", ")))?;
    }
    if let Some(why) = &report.oracle_skipped {
        out.line(format!("oracle skipped: {why}"))?;
    }
    out.json(&report)?;
    Ok(Status::Ok)
}

fn degree(d: &Degrees, f: DegreeFunction) -> &ExactRational {
    match f {
        DegreeFunction::Alpha => &d.alpha,
        DegreeFunction::Beta => &d.beta,
        DegreeFunction::Cdeg => &d.cdeg,
        DegreeFunction::Ndeg => &d.ndeg,
        DegreeFunction::Jdeg => &d.jdeg,
    }
}

#[derive(Serialize)]
struct CensusReport {
    source: String,
    census: SubgroupCensus,
    degrees: Degrees,
}

pub fn census(source: Source, ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let loaded = load(&source)?;
    let census = census_with_cap(&loaded.group?, ctx.cap)?;
    let report = CensusReport {
        source: loaded.label,
        degrees: oracle_degrees(&census),
        census,
    };
    let c = &report.census;
    let mut fields: Vec<(String, String)> = vec![
        ("order".into(), c.group_order.to_string()),
        ("total".into(), c.total.to_string()),
        ("cyclic".into(), c.cyclic.to_string()),
        ("normal".into(), c.normal.to_string()),
        ("nilpotent".into(), c.nilpotent.to_string()),
    ];
    fields.extend(
        c.by_order
            .iter()
            .map(|(k, v)| (format!("by_order.{k}"), v.to_string())),
    );
    for f in DegreeFunction::ALL {
        fields.push((f.to_string(), degree(&report.degrees, f).to_string()));
    }

    out.line(&report.source)?;
    for (k, v) in &fields {
        let shown = match DegreeFunction::ALL.iter().find(|f| f.to_string() == *k) {
            Some(&f) => format!(
                "{v} ({})",
                degree(&report.degrees, f).to_decimal(ctx.digits)
            ),
            None => v.clone(),
        };
        out.row(vec![k.clone(), shown]);
        out.csv(
            &["source", "field", "value"],
            &[report.source.clone(), k.clone(), v.clone()],
        )?;
    }
    out.json(&report)?;
    Ok(Status::Ok)
}

/// Named parameter values from the command line, e.g. `n -> [3, 4, 5, 6]`.
pub type ParamValues = BTreeMap<String, Vec<u64>>;

pub fn parse_params(raw: &[(&str, &[String])]) -> Result<ParamValues, CliError> {
    let mut out = ParamValues::new();
    for &(name, texts) in raw {
        for t in texts {
            let vs = parse_values(t).map_err(|e| CliError::Usage(format!("--{name}: {e}")))?;
            out.entry(name.to_string()).or_default().extend(vs);
        }
    }
    Ok(out)
}

fn single(params: &ParamValues) -> Result<BTreeMap<String, u64>, CliError> {
    params
        .iter()
        .map(|(k, vs)| {
            let mut vs = vs.clone();
            vs.sort_unstable();
            vs.dedup();
            match vs.as_slice() {
                [v] => Ok((k.clone(), *v)),
                _ => Err(CliError::Usage(format!("--{k} takes a single value here"))),
            }
        })
        .collect()
}

pub fn verify_cmd(
    target: &str,
    params: &ParamValues,
    ctx: &Ctx,
    out: &mut Out,
) -> Result<Status, CliError> {
    let specs: Vec<FamilySpec> = match target.parse::<FamilyKind>() {
        Ok(kind) => sweep(params, kind.params())
            .iter()
            .map(|p| {
                kind.build(p).map_err(|e| {
                    CliError::Usage(format!("{} with {}: {e}", kind.name(), describe(p)))
                })
            })
            .collect::<Result<_, _>>()?,
        Err(_) if params.is_empty() => vec![target.parse()?],
        Err(e) => return Err(e.into()),
    };

    let (mut passed, mut failed, mut skipped) = (0, 0, 0);
    for spec in &specs {
        let r = verify(spec, ctx.cap)?;
        let status = match (r.pass, r.oracle_skipped.is_some()) {
            (false, _) => {
                failed += 1;
                "FAIL"
            }
            (true, true) => {
                skipped += 1;
                "SKIP"
            }
            (true, false) => {
                passed += 1;
                "PASS"
            }
        };
        let mut cells = vec![status.to_string(), spec.to_string()];
        for c in &r.comparisons {
            let text = match (&c.oracle, c.matches) {
                (Some(o), Some(false)) => format!("{}={} (oracle {o})", c.function, c.formula),
                _ => format!("{}={}", c.function, c.formula),
            };
            cells.push(text);
            let result = match c.matches {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "skip",
            };
            out.csv(
                &["spec", "check", "formula", "oracle", "result"],
                &[
                    spec.to_string(),
                    c.function.to_string(),
                    c.formula.to_string(),
                    c.oracle
                        .as_ref()
                        .map(ToString::to_string)
                        .unwrap_or_default(),
                    result.to_string(),
                ],
            )?;
        }
        for i in &r.identities {
            if !i.holds {
                cells.push(format!("{} fails: {} vs {}", i.name, i.lhs, i.rhs));
            }
            out.csv(
                &["spec", "check", "formula", "oracle", "result"],
                &[
                    spec.to_string(),
                    i.name.clone(),
                    i.lhs.to_string(),
                    i.rhs.to_string(),
                    if i.holds { "pass" } else { "fail" }.to_string(),
                ],
            )?;
        }
        if let Some(why) = &r.oracle_skipped {
            cells.push(format!("oracle skipped: {why}"));
        }
        out.line(cells.join("  "))?;
        out.json(&r)?;
    }
    eprintln!("{passed} passed, {failed} failed, {skipped} skipped");
    Ok(if failed > 0 {
        Status::Mismatch
    } else if skipped > 0 {
        Status::Skipped
    } else {
        Status::Ok
    })
}

pub fn table_ex54(params: &ParamValues, ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    for name in ["p", "n"] {
        if !params.contains_key(name) {
            return Err(CliError::Usage(format!("table ex54 needs --{name}")));
        }
    }
    if let Some(extra) = params.keys().find(|k| !["p", "n"].contains(&k.as_str())) {
        return Err(CliError::Usage(format!(
            "table ex54 takes only --p and --n, not --{extra}"
        )));
    }
    let header = ["group", "p", "n", "alpha", "beta", "cdeg", "ndeg"];
    out.row(header.map(String::from).to_vec());
    for combo in sweep(params, &["p", "n"]) {
        let n = u32::try_from(combo["n"]).map_err(|_| CliError::Usage("n is too large".into()))?;
        let rows: Vec<Ex54Row> = ex54_rows(combo["p"], n)?;
        for r in rows {
            let vals = [&r.alpha, &r.beta, &r.cdeg, &r.ndeg];
            let mut pretty = vec![r.group.clone(), r.p.to_string(), r.n.to_string()];
            pretty.extend(
                vals.iter()
                    .map(|v| format!("{v} ({})", v.to_decimal(ctx.digits))),
            );
            out.row(pretty);
            let mut record = vec![r.group.clone(), r.p.to_string(), r.n.to_string()];
            record.extend(vals.iter().map(|v| v.to_string()));
            out.csv(&header, &record)?;
            out.json(&r)?;
        }
    }
    Ok(Status::Ok)
}

pub fn table_appendix(params: &ParamValues, out: &mut Out) -> Result<Status, CliError> {
    let p = single(params)?;
    let get = |k: &str| -> Result<u64, CliError> {
        p.get(k)
            .copied()
            .ok_or_else(|| CliError::Usage(format!("table appendix needs --{k}")))
    };
    if let Some(extra) = p.keys().find(|k| !["p", "n"].contains(&k.as_str())) {
        return Err(CliError::Usage(format!(
            "table appendix takes only --n and --p, not --{extra}"
        )));
    }
    let n = u32::try_from(get("n")?).map_err(|_| CliError::Usage("n is too large".into()))?;
    let cells: Vec<AppendixCell> = appendix_table(n, get("p")?);
    let mut families: Vec<&str> = Vec::new();
    for c in &cells {
        if !families.contains(&c.family.as_str()) {
            families.push(&c.family);
        }
    }
    for fam in families {
        out.line(fam)?;
        for prop in APPENDIX_PROPERTIES {
            if let Some(c) = cells.iter().find(|c| c.family == fam && c.property == prop) {
                out.row(vec![format!("  {prop}"), c.value.clone()]);
            }
        }
    }
    for c in &cells {
        out.csv(
            &["property", "family", "value"],
            &[c.property.clone(), c.family.clone(), c.value.clone()],
        )?;
        out.json(c)?;
    }
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct ProbePoint {
    at: u64,
    gap: ExactRational,
    gap_decimal: String,
}

#[derive(Serialize)]
struct LimitReport<'a> {
    entry: &'a LimitEntry,
    probe: Vec<ProbePoint>,
}

pub fn limits(
    family: &str,
    functions: &[DegreeFunction],
    vary: Option<&str>,
    params: &ParamValues,
    probe: &[u64],
    ctx: &Ctx,
    out: &mut Out,
) -> Result<Status, CliError> {
    let kind: FamilyKind = family.parse()?;
    let stored: Vec<_> = limit_entries()
        .into_iter()
        .filter(|e| e.0 == kind)
        .collect();
    let Some(first) = stored.first() else {
        return Err(CliError::Usage(format!(
            "no limits are stored for family {}",
            kind.name()
        )));
    };
    let vary = vary.unwrap_or(first.1);
    let wanted: Vec<DegreeFunction> = if functions.is_empty() {
        DegreeFunction::ALL
            .into_iter()
            .filter(|f| stored.iter().any(|e| e.1 == vary && e.2 == *f))
            .collect()
    } else {
        functions.to_vec()
    };
    let fixed = single(params)?;

    let mut found = 0;
    for f in wanted {
        let Some(entry) = limit(kind, f, vary, &fixed)? else {
            if functions.is_empty() {
                continue;
            }
            return Err(CliError::Usage(format!(
                "no stored limit of {f} on {} as {vary} grows with {}",
                kind.name(),
                if fixed.is_empty() {
                    "no fixed parameters".into()
                } else {
                    describe(&fixed)
                }
            )));
        };
        found += 1;
        let mut points = Vec::new();
        for &v in probe {
            match limit_convergence_probe(&entry, &[v]) {
                Ok(mut p) => {
                    let (at, gap) = p.remove(0);
                    points.push(ProbePoint {
                        at,
                        gap_decimal: gap.to_decimal(ctx.digits),
                        gap,
                    });
                }
                // Outside the family's parameter range.
                Err(Error::Domain(_)) => {}
                Err(e) => return Err(e.into()),
            }
        }

        let fixed_text = if entry.fixed.is_empty() {
            String::new()
        } else {
            format!(" with {}", describe(&entry.fixed))
        };
        out.line(format!(
            "{f}({}) -> {} as {} -> inf{fixed_text}  [{}; {}]",
            kind.name(),
            entry.value,
            entry.varying,
            entry.expression,
            entry.source
        ))?;
        out.row(vec![
            format!("  {}", entry.varying),
            "gap".into(),
            "decimal".into(),
        ]);
        for p in &points {
            out.row(vec![
                format!("  {}", p.at),
                p.gap.to_string(),
                p.gap_decimal.clone(),
            ]);
            out.csv(
                &[
                    "family",
                    "function",
                    "varying",
                    "limit",
                    "at",
                    "gap",
                    "gap_decimal",
                ],
                &[
                    kind.name().to_string(),
                    f.to_string(),
                    entry.varying.clone(),
                    entry.value.to_string(),
                    p.at.to_string(),
                    p.gap.to_string(),
                    p.gap_decimal.clone(),
                ],
            )?;
        }
        out.json(&LimitReport {
            entry: &entry,
            probe: points,
        })?;
    }
    if found == 0 {
        return Err(CliError::Usage(format!(
            "no stored limits for {} as {vary} grows",
            kind.name()
        )));
    }
    Ok(Status::Ok)
}

pub fn density(
    target: &str,
    eps: &str,
    prime_bound: u64,
    ctx: &Ctx,
    out: &mut Out,
) -> Result<Status, CliError> {
    let target: ExactRational = target.parse()?;
    let eps: ExactRational = eps.parse()?;
    let (mut a, exhausted) = match approximate(&target, &eps, prime_bound) {
        Ok(a) => (a, None),
        Err(Error::DensityExhausted { best, bound }) => (*best, Some(bound)),
        Err(e) => return Err(e.into()),
    };
    a.product_decimal = a.product.to_decimal(ctx.digits);
    a.error_decimal = a.error.to_decimal(ctx.digits);
    let primes: Vec<String> = a.primes.iter().map(ToString::to_string).collect();

    out.row(vec![
        "target".into(),
        format!("{} ({})", a.target, a.target.to_decimal(ctx.digits)),
    ]);
    out.row(vec!["epsilon".into(), a.epsilon.to_string()]);
    let listed = if primes.len() <= 24 {
        primes.join(", ")
    } else {
        format!(
            "{}, ..., {} ({} primes)",
            primes[..12].join(", "),
            primes[primes.len() - 3..].join(", "),
            primes.len()
        )
    };
    out.row(vec!["primes".into(), format!("[{listed}]")]);
    out.row(vec![
        "product".into(),
        format!("{} ({})", short(&a.product), a.product_decimal),
    ]);
    out.row(vec![
        "error".into(),
        format!("{} ({})", short(&a.error), a.error_decimal),
    ]);
    out.row(vec!["steps".into(), a.steps.to_string()]);
    if let Some(bound) = exhausted {
        out.line(format!(
            "not converged: every odd prime up to {bound} was used"
        ))?;
    }
    out.csv(
        &[
            "target",
            "epsilon",
            "primes",
            "product",
            "error",
            "steps",
            "product_decimal",
            "error_decimal",
        ],
        &[
            a.target.to_string(),
            a.epsilon.to_string(),
            primes.join(" "),
            a.product.to_string(),
            a.error.to_string(),
            a.steps.to_string(),
            a.product_decimal.clone(),
            a.error_decimal.clone(),
        ],
    )?;
    out.json(&a)?;
    match exhausted {
        Some(bound) => Err(CliError::Resource(format!(
            "prime bound {bound} exhausted before reaching the tolerance"
        ))),
        None => Ok(Status::Ok),
    }
}

/// Fractions with huge terms are abbreviated in pretty output only.
fn short(x: &ExactRational) -> String {
    let s = x.to_string();
    if s.len() <= 80 {
        s
    } else {
        format!("<fraction with {} digits>", s.len())
    }
}

pub fn log_divergence(count: usize, ctx: &Ctx, out: &mut Out) -> Result<Status, CliError> {
    let rows: Vec<DivergenceRow> = log_divergence_partial(count)?;
    out.row(
        ["index", "prime", "log_sum", "product"]
            .map(String::from)
            .to_vec(),
    );
    for r in &rows {
        let decimal = r.product.to_decimal(ctx.digits);
        out.row(vec![
            r.index.to_string(),
            r.prime.to_string(),
            r.log_sum.clone(),
            decimal.clone(),
        ]);
        out.csv(
            &["index", "prime", "log_sum", "product", "product_decimal"],
            &[
                r.index.to_string(),
                r.prime.to_string(),
                r.log_sum.clone(),
                r.product.to_string(),
                decimal,
            ],
        )?;
        out.json(r)?;
    }
    Ok(Status::Ok)
}
