use std::fs;
use std::path::Path;

use rngbound::{Bias, LinearCode, Pmf, SourceModel};

use crate::commands::Failure;
use crate::SourceArgs;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path) -> impl Fn(rngbound::Error) -> Failure + '_ {
    move |e| Failure::from_core(e, Some(path))
}

pub fn load_code(path: &Path) -> Result<LinearCode, Failure> {
    LinearCode::parse(&read(path)?).map_err(in_file(path))
}

pub fn load_pmf(path: &Path) -> Result<Pmf, Failure> {
    Pmf::parse(&read(path)?).map_err(in_file(path))
}

/// The two source file formats differ only in the header: `k=` for a mass
/// function, `n=` for one row per symbol.
fn is_per_symbol(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|header| header.split_whitespace().any(|f| f.starts_with("n=")))
}

pub enum Source {
    Single(Pmf),
    PerSymbol(SourceModel),
}

fn load_source_file(path: &Path) -> Result<Source, Failure> {
    let text = read(path)?;
    if is_per_symbol(&text) {
        SourceModel::parse(&text)
            .map(Source::PerSymbol)
            .map_err(in_file(path))
    } else {
        Pmf::parse(&text).map(Source::Single).map_err(in_file(path))
    }
}

fn bias_pmf(eps: f64) -> Result<Pmf, Failure> {
    let bias = Bias::new(eps).map_err(|e| Failure::from_core(e, None))?;
    Ok(Pmf::from_bias(bias))
}

fn exactly_one(args: &SourceArgs) -> Result<(), Failure> {
    match (&args.source, args.bias) {
        (Some(_), Some(_)) => Err(Failure::usage("give either --source or --bias, not both")),
        (None, None) => Err(Failure::usage("a source is required: --source PATH or --bias FLOAT")),
        _ => Ok(()),
    }
}

/// Source model for a code of length `n` over `F_p`.
pub fn source_for_code(args: &SourceArgs, code: &LinearCode) -> Result<SourceModel, Failure> {
    exactly_one(args)?;
    let symbol = match (&args.source, args.bias) {
        (_, Some(eps)) => {
            if code.modulus().get() != 2 {
                return Err(Failure::usage(format!(
                    "--bias describes a bit; a code over F_{} needs --source with a .pmf",
                    code.modulus()
                )));
            }
            bias_pmf(eps)?
        }
        (Some(path), None) => match load_source_file(path)? {
            Source::PerSymbol(model) => return Ok(model),
            Source::Single(pmf) => single_symbol(pmf, path)?,
        },
        (None, None) => unreachable!(),
    };
    SourceModel::iid(symbol, code.n()).map_err(|e| Failure::from_core(e, None))
}

/// A mass function from `--source` (a .pmf file) or `--bias`.
pub fn pmf_from_args(args: &SourceArgs) -> Result<Pmf, Failure> {
    exactly_one(args)?;
    match (&args.source, args.bias) {
        (_, Some(eps)) => bias_pmf(eps),
        (Some(path), None) => match load_source_file(path)? {
            Source::Single(pmf) => Ok(pmf),
            Source::PerSymbol(_) => Err(Failure::usage(format!(
                "{}: expected a .pmf file (header `p=<int> k=<int>`)",
                path.display()
            ))),
        },
        (None, None) => unreachable!(),
    }
}

pub fn single_symbol(pmf: Pmf, path: &Path) -> Result<Pmf, Failure> {
    if pmf.dim() != 1 {
        return Err(Failure::usage(format!(
            "{}: expected a single-symbol mass function (k=1), found k={}",
            path.display(),
            pmf.dim()
        )));
    }
    Ok(pmf)
}
