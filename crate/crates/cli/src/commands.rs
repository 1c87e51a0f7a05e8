use std::path::Path;

use rngbound::analysis::{
    bound_sum_chain, sum_chain as chain_pmf, AnalyzeOptions, BoundReport, BOUND_NAMES, BRUTE_FORCE_CAP,
    SPECTRAL_MESSAGE_CAP,
};
use rngbound::transforms::{lambda_star, spectrum_of};
use rngbound::{analyze as run_analysis, LinearCode, Pmf, SourceModel};
use serde_json::{json, Map, Value};

use crate::input::{self, load_code, load_pmf};
use crate::output::{self, fixed, json_float, json_opt, json_text, json_tightness, shortest};
use crate::{Format, SourceArgs};

const USAGE: u8 = 2;
const CAPACITY: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: USAGE,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::usage(message)
    }

    pub fn from_core(e: rngbound::Error, path: Option<&Path>) -> Self {
        let message = match path {
            Some(p) => format!("{}: {e}", p.display()),
            None => e.to_string(),
        };
        Failure {
            code: if e.is_capacity() { CAPACITY } else { USAGE },
            message,
        }
    }
}

impl From<rngbound::Error> for Failure {
    fn from(e: rngbound::Error) -> Self {
        Failure::from_core(e, None)
    }
}

fn code_json(code: &LinearCode) -> Value {
    json!({
        "d": code.minimum_distance(),
        "k": code.k(),
        "n": code.n(),
        "p": code.modulus().get(),
    })
}

/// Enumeration visits every codeword, so it shares the spectral cap.
fn check_enumerable(code: &LinearCode) -> Result<(), Failure> {
    code.modulus()
        .space_size(code.k(), SPECTRAL_MESSAGE_CAP, "codeword enumeration")?;
    Ok(())
}

pub fn code_info(path: &Path, full_cwe: bool, format: Format) -> Result<String, Failure> {
    let code = load_code(path)?;
    check_enumerable(&code)?;
    let a = code.weight_distribution().counts();
    let cwe = code.complete_weight_enumerator();
    let p = code.modulus().as_usize();

    Ok(match format {
        Format::Json => {
            let mut doc = code_json(&code);
            doc["weight_distribution"] = json!(a);
            doc["cwe_size"] = json!(cwe.len());
            if full_cwe {
                doc["cwe"] = cwe
                    .iter()
                    .map(|(t, count)| json!({ "composition": t, "count": count }))
                    .collect();
            }
            json_text(&doc)
        }
        Format::Csv if full_cwe => {
            let names: Vec<String> = (0..p).map(|u| format!("t{u}")).collect();
            let mut headers: Vec<&str> = names.iter().map(String::as_str).collect();
            headers.push("count");
            let rows: Vec<Vec<String>> = cwe
                .iter()
                .map(|(t, count)| {
                    t.iter()
                        .map(u32::to_string)
                        .chain([count.to_string()])
                        .collect()
                })
                .collect();
            output::csv(&headers, &rows)
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = a
                .iter()
                .enumerate()
                .map(|(l, c)| vec![l.to_string(), c.to_string()])
                .collect();
            output::csv(&["weight", "count"], &rows)
        }
        Format::Table => {
            let counts: Vec<String> = a.iter().map(u64::to_string).collect();
            let mut s = format!(
                "p  {}\nn  {}\nk  {}\nd  {}\nA  ({})\ncomplete weight enumerator: {} compositions\n",
                code.modulus(),
                code.n(),
                code.k(),
                code.minimum_distance(),
                counts.join(", "),
                cwe.len(),
            );
            if full_cwe {
                let rows: Vec<Vec<String>> = cwe
                    .iter()
                    .map(|(t, count)| {
                        let t: Vec<String> = t.iter().map(u32::to_string).collect();
                        vec![format!("({})", t.join(", ")), count.to_string()]
                    })
                    .collect();
                s.push('\n');
                s.push_str(&output::table(&["composition", "count"], &rows));
            }
            s
        }
    })
}

fn options(max_brute: Option<u64>) -> AnalyzeOptions {
    AnalyzeOptions {
        brute_force_cap: max_brute.unwrap_or(BRUTE_FORCE_CAP),
        ..AnalyzeOptions::default()
    }
}

fn bound_columns() -> Vec<String> {
    BOUND_NAMES
        .iter()
        .flat_map(|n| [n.to_string(), format!("{n}_tightness")])
        .collect()
}

fn bound_cells(report: &BoundReport, float: fn(f64) -> String) -> Vec<String> {
    report
        .entries
        .iter()
        .flat_map(|e| {
            [
                e.value.map(float).unwrap_or_default(),
                output::tightness_text(e.tightness, float),
            ]
        })
        .collect()
}

fn bounds_json(report: &BoundReport) -> Value {
    let bounds: Map<String, Value> = report
        .entries
        .iter()
        .map(|e| {
            (
                e.name.to_string(),
                json!({
                    "applicable": e.applicable(),
                    "tightness": json_tightness(e.tightness),
                    "value": json_opt(e.value),
                }),
            )
        })
        .collect();
    Value::Object(bounds)
}

pub fn analyze(
    code_path: &Path,
    source: &SourceArgs,
    max_brute: Option<u64>,
    format: Format,
) -> Result<String, Failure> {
    let code = load_code(code_path)?;
    let src = input::source_for_code(source, &code)?;
    let report = run_analysis(&code, &src, &options(max_brute))?;

    Ok(match format {
        Format::Json => json_text(&json!({
            "bounds": bounds_json(&report),
            "brute_force_gap": json_opt(report.brute_force_gap),
            "code": code_json(&code),
            "exact_delta": json_opt(report.exact_delta),
            "iid": report.iid,
            "symbol_lambda_star": json_float(report.symbol_lambda_star),
        })),
        Format::Csv => {
            let mut headers = vec![
                "p".to_string(),
                "n".into(),
                "k".into(),
                "d".into(),
                "iid".into(),
                "symbol_lambda_star".into(),
                "exact_delta".into(),
                "brute_force_gap".into(),
            ];
            headers.extend(bound_columns());
            let mut row = vec![
                report.p.to_string(),
                report.n.to_string(),
                report.k.to_string(),
                report.d.to_string(),
                report.iid.to_string(),
                fixed(report.symbol_lambda_star),
                report.exact_delta.map(fixed).unwrap_or_default(),
                report.brute_force_gap.map(fixed).unwrap_or_default(),
            ];
            row.extend(bound_cells(&report, fixed));
            let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
            output::csv(&headers, &[row])
        }
        Format::Table => {
            let gap = match report.brute_force_gap {
                Some(g) => shortest(g),
                None => "not run (p^n above --max-brute)".into(),
            };
            let mut s = format!(
                "code             p={} n={} k={} d={}\nsource           {}, λ* = {}\nexact δ          {}\nbrute-force gap  {}\n\n",
                report.p,
                report.n,
                report.k,
                report.d,
                if report.iid { "i.i.d." } else { "independent, non-identical" },
                shortest(report.symbol_lambda_star),
                report.exact_delta.map(shortest).unwrap_or_default(),
                gap,
            );
            let rows: Vec<Vec<String>> = report
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.name.to_string(),
                        e.value.map(shortest).unwrap_or_else(|| "n/a".into()),
                        output::tightness_text(e.tightness, shortest),
                    ]
                })
                .collect();
            s.push_str(&output::table(&["bound", "value", "bound/exact"], &rows));
            s
        }
    })
}

/// Points `a, a + s, ...` up to `b`; empty when `a > b`.
fn parse_grid(spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, s] = parts[..] else {
        return Err(Failure::usage(format!("--grid `{spec}`: expected A:B:STEP")));
    };
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| Failure::usage(format!("--grid `{spec}`: `{t}` is not a number")))
    };
    let (a, b, s) = (num(a)?, num(b)?, num(s)?);
    if s <= 0.0 {
        return Err(Failure::usage(format!("--grid `{spec}`: STEP must be positive")));
    }
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
        return Err(Failure::usage(format!("--grid `{spec}`: A and B must lie in [0, 1]")));
    }
    if a > b {
        return Err(Failure::usage(format!("--grid `{spec}`: empty grid")));
    }
    let count = ((b - a) / s + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| (((a + i as f64 * s) * 1e12).round() / 1e12).min(b))
        .collect())
}

/// `uniform + t·(shape − uniform)`; every non-trivial eigenvalue is `t·λ_shape`.
fn shrink_toward_uniform(shape: &Pmf, t: f64) -> Result<Pmf, Failure> {
    let u = 1.0 / shape.len() as f64;
    let values = shape.values().iter().map(|&m| u + t * (m - u)).collect();
    Ok(Pmf::new(shape.modulus(), 1, values)?)
}

pub fn sweep(
    code_path: &Path,
    grid: &str,
    shape_path: Option<&Path>,
    max_brute: Option<u64>,
    format: Format,
) -> Result<String, Failure> {
    let points = parse_grid(grid)?;
    let code = load_code(code_path)?;
    let p = code.modulus();
    let shape = match shape_path {
        Some(path) => {
            let pmf = input::single_symbol(load_pmf(path)?, path)?;
            if pmf.modulus() != p {
                return Err(Failure::usage(format!(
                    "{}: shape is over F_{} but the code is over F_{p}",
                    path.display(),
                    pmf.modulus()
                )));
            }
            pmf
        }
        None => Pmf::point_mass(p, 1, 0)?,
    };
    let opts = options(max_brute);

    let mut reports = Vec::with_capacity(points.len());
    for &t in &points {
        let src = SourceModel::iid(shrink_toward_uniform(&shape, t)?, code.n())?;
        reports.push((t, run_analysis(&code, &src, &opts)?));
    }

    Ok(match format {
        Format::Json => {
            let rows: Vec<Value> = reports
                .iter()
                .map(|(t, r)| {
                    json!({
                        "bounds": bounds_json(r),
                        "exact_delta": json_opt(r.exact_delta),
                        "parameter": json_float(*t),
                        "symbol_lambda_star": json_float(r.symbol_lambda_star),
                    })
                })
                .collect();
            json_text(&json!({ "code": code_json(&code), "rows": rows }))
        }
        Format::Csv | Format::Table => {
            let float = if format == Format::Csv { fixed } else { shortest };
            let mut headers = vec![
                "parameter".to_string(),
                "symbol_lambda_star".into(),
                "exact_delta".into(),
            ];
            headers.extend(BOUND_NAMES.iter().map(|n| n.to_string()));
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|(t, r)| {
                    let mut row = vec![
                        float(*t),
                        float(r.symbol_lambda_star),
                        r.exact_delta.map(float).unwrap_or_default(),
                    ];
                    row.extend(r.entries.iter().map(|e| e.value.map(float).unwrap_or_default()));
                    row
                })
                .collect();
            let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
            if format == Format::Csv {
                output::csv(&headers, &rows)
            } else {
                output::table(&headers, &rows)
            }
        }
    })
}

pub fn sum_chain(source: &SourceArgs, n_max: u32, format: Format) -> Result<String, Failure> {
    if n_max == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let m = input::pmf_from_args(source)?;
    if m.dim() != 1 {
        return Err(Failure::usage(format!(
            "sum-chain needs a single-symbol mass function (k=1), found k={}",
            m.dim()
        )));
    }
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let exact = chain_pmf(&m, n)?.l1_from_uniform();
        rows.push((n, exact, bound_sum_chain(&m, n)?));
    }
    let lambda = lambda_star(&spectrum_of(&m))?;

    Ok(match format {
        Format::Json => json_text(&json!({
            "lambda_star": json_float(lambda),
            "p": m.modulus().get(),
            "rows": rows
                .iter()
                .map(|&(n, e, b)| json!({ "bound": json_float(b), "exact_delta": json_float(e), "n": n }))
                .collect::<Vec<_>>(),
        })),
        Format::Csv | Format::Table => {
            let float = if format == Format::Csv { fixed } else { shortest };
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|&(n, e, b)| vec![n.to_string(), float(e), float(b)])
                .collect();
            let headers = ["n", "exact_delta", "bound"];
            if format == Format::Csv {
                output::csv(&headers, &cells)
            } else {
                format!(
                    "p = {}, λ* = {}\n\n{}",
                    m.modulus(),
                    shortest(lambda),
                    output::table(&headers, &cells)
                )
            }
        }
    })
}

pub fn spectrum(source: &SourceArgs, format: Format) -> Result<String, Failure> {
    let m = input::pmf_from_args(source)?;
    let s = spectrum_of(&m);
    let lambda = lambda_star(&s)?;

    Ok(match format {
        Format::Json => json_text(&json!({
            "k": m.dim(),
            "lambda_star": json_float(lambda),
            "p": m.modulus().get(),
            "spectrum": s
                .values()
                .iter()
                .enumerate()
                .map(|(b, z)| json!({
                    "index": b,
                    "im": json_float(z.im),
                    "modulus": json_float(z.norm()),
                    "re": json_float(z.re),
                }))
                .collect::<Vec<_>>(),
        })),
        Format::Csv | Format::Table => {
            let float = if format == Format::Csv { fixed } else { shortest };
            let cells: Vec<Vec<String>> = s
                .values()
                .iter()
                .enumerate()
                .map(|(b, z)| vec![b.to_string(), float(z.re), float(z.im), float(z.norm())])
                .collect();
            let headers = ["index", "re", "im", "modulus"];
            if format == Format::Csv {
                output::csv(&headers, &cells)
            } else {
                format!(
                    "{}λ* = {}\n",
                    output::table(&headers, &cells),
                    shortest(lambda)
                )
            }
        }
    })
}
