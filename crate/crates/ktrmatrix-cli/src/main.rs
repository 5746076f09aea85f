//! `ktrmatrix`: compute R-matrices and L-operators, run the verification suite.

mod config;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use thiserror::Error;

use ktrmatrix::ktfactory::{assemble, KtError, KtParams, LegPair, SeriesMat};
use ktrmatrix::linalg::JsonEntry;
use ktrmatrix::reference::{reference_matrix, supported, Kind, RefError, Variant};
use ktrmatrix::rootsys::Algebra;
use ktrmatrix::scalars::Ring;
use ktrmatrix::text;
use ktrmatrix::verify::{
    check_engine, check_gauge, check_ybe, l_variants, run_group, GaugeFamily, Verdict, VerifyError, CHECKS,
};

use config::{Config, ConfigError, ENV_CONFIG};

const DEFAULT_ORDER: i32 = 8;

#[derive(Parser)]
#[command(name = "ktrmatrix", version, about = "Exact R-matrices and L-operators for the quantum loop algebras of type A1 and A2")]
struct Cli {
    /// Defaults file with `key = value` lines (also read from KTRMATRIX_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an R-matrix or an L-operator.
    Compute {
        #[arg(value_enum)]
        object: Object,
        #[command(flatten)]
        opts: Opts,
    },
    /// Run a group of checks; exit status 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        group: Group,
        #[command(flatten)]
        opts: Opts,
    },
    /// List what can be computed.
    List {
        #[arg(value_enum)]
        what: ListWhat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Object {
    R,
    L,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Group {
    Ybe,
    Rll,
    Gauge,
    Engine,
    Duality,
    Structure,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ListWhat {
    Variants,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Backend {
    Series,
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl FromStr for Backend {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Backend as ValueEnum>::from_str(s, true)
    }
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, true)
    }
}

#[derive(Args, Default)]
struct Opts {
    #[arg(long)]
    algebra: Option<Algebra>,
    /// Leg pair: phi-phi (R), chi-phi (L-hat) or phi-psi (L-check).
    #[arg(long)]
    side: Option<LegPair>,
    /// Homomorphism family for A2 oscillator legs.
    #[arg(long)]
    family: Option<u8>,
    /// Diagram automorphism as a node permutation, e.g. `1,0`.
    #[arg(long, value_delimiter = ',')]
    twist: Option<Vec<usize>>,
    #[arg(long, allow_negative_numbers = true)]
    s: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    s1: Option<i32>,
    #[arg(long, allow_negative_numbers = true)]
    s2: Option<i32>,
    /// Series truncation order in ζ (env KTRMATRIX_ORDER).
    #[arg(long)]
    order: Option<i32>,
    /// Adds dense Fock-space matrices of this size to JSON output; bare `--fock` means 12
    /// (env KTRMATRIX_FOCK).
    #[arg(long, num_args = 0..=1, default_missing_value = "12")]
    fock: Option<usize>,
    #[arg(long, value_enum)]
    backend: Option<Backend>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error(transparent)]
    Ref(#[from] RefError),
    #[error(transparent)]
    Kt(#[from] KtError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// Flags merged with environment and config defaults.
struct Settings {
    algebra: Option<Algebra>,
    side: Option<LegPair>,
    family: u8,
    twist: Option<Vec<usize>>,
    s: Option<i32>,
    s1: Option<i32>,
    s2: Option<i32>,
    order: i32,
    order_flag: bool,
    fock: Option<usize>,
    backend: Option<Backend>,
    format: Format,
}

impl Settings {
    fn resolve(o: Opts, cfg: &Config) -> Result<Settings, CliError> {
        let order_flag = o.order.is_some();
        let order = cfg.pick("order", o.order)?.unwrap_or(DEFAULT_ORDER);
        if order < 0 {
            return usage(format!("--order must be non-negative, got {order}"));
        }
        Ok(Settings {
            algebra: cfg.pick("algebra", o.algebra)?,
            side: cfg.pick("side", o.side)?,
            family: cfg.pick("family", o.family)?.unwrap_or(1),
            twist: o.twist,
            s: o.s,
            s1: o.s1,
            s2: o.s2,
            order,
            order_flag,
            fock: cfg.pick("fock", o.fock)?,
            backend: cfg.pick("backend", o.backend)?,
            format: cfg.pick("format", o.format)?.unwrap_or(Format::Text),
        })
    }

    fn exponents(&self, alg: Algebra) -> Result<Option<Vec<i32>>, CliError> {
        let Some(s) = self.s else {
            return Ok(None);
        };
        let Some(s1) = self.s1 else {
            return usage("--s1 is required with --s");
        };
        Ok(Some(match alg {
            Algebra::A1 => vec![s, s1],
            Algebra::A2 => vec![s, s1, self.s2.unwrap_or(0)],
        }))
    }
}

/// The closed form matching a leg choice, if one exists.
fn closed_form_variant(kind: Kind, alg: Algebra, family: u8, twist: Option<&[usize]>) -> Option<Variant> {
    match (kind, alg, twist) {
        (Kind::R, _, None) => Some(Variant::Plain),
        (Kind::R, _, Some(_)) => None,
        (_, Algebra::A1, None) => Some(Variant::Plain),
        (_, Algebra::A1, Some([1, 0])) => Some(Variant::Twisted),
        (_, Algebra::A2, None) if family == 1 => Some(Variant::Family1),
        (_, Algebra::A2, None) if family == 2 => Some(Variant::Family2),
        _ => None,
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn compute(object: Object, s: &Settings) -> Result<String, CliError> {
    let Some(alg) = s.algebra else {
        return usage("--algebra is required");
    };
    let Some(exps) = s.exponents(alg)? else {
        return usage("--s and --s1 are required");
    };
    let (kind, pair) = match (object, s.side) {
        (Object::R, None | Some(LegPair::PhiPhi)) => (Kind::R, LegPair::PhiPhi),
        (Object::R, Some(p)) => return usage(format!("r is built on phi-phi, not {p}")),
        (Object::L, None | Some(LegPair::ChiPhi)) => (Kind::LHat, LegPair::ChiPhi),
        (Object::L, Some(LegPair::PhiPsi)) => (Kind::LCheck, LegPair::PhiPsi),
        (Object::L, Some(p)) => return usage(format!("l needs --side chi-phi or phi-psi, not {p}")),
    };
    let variant = closed_form_variant(kind, alg, s.family, s.twist.as_deref());
    let backend = match (s.backend, s.order_flag, variant) {
        (Some(b), _, _) => b,
        (None, false, Some(_)) => Backend::Rational,
        _ => Backend::Series,
    };
    if backend == Backend::Rational {
        let Some(v) = variant else {
            return usage("no closed form for this leg choice; use --backend series");
        };
        let r = reference_matrix(kind, alg, v, &exps)?;
        return Ok(match s.format {
            Format::Json => {
                let mut j = r.to_json();
                j["backend"] = json!("rational");
                pretty(&j)
            }
            Format::Text => text::reference(&r),
        });
    }
    let mut p = KtParams::new(alg, pair, &exps, s.order);
    p.family = s.family;
    p.twist = s.twist.clone();
    let m = assemble(&p)?;
    Ok(match s.format {
        Format::Json => pretty(&series_json(kind, &p, &m, s.fock)),
        Format::Text => {
            let legs = if kind == Kind::R { 2 } else { 1 };
            let twist = p.twist.as_ref().map(|t| format!(" twist {t:?}")).unwrap_or_default();
            format!(
                "{kind} {alg} {pair} family {}{twist} exponents {exps:?} order {}\n{}",
                p.family,
                p.order,
                text::matrix(&m, legs, |e| text::osc(e, text::series))
            )
        }
    })
}

fn series_json(kind: Kind, p: &KtParams, m: &SeriesMat, fock: Option<usize>) -> serde_json::Value {
    let mut j = json!({
        "kind": kind.to_string(),
        "algebra": p.algebra.to_string(),
        "side": p.pair.to_string(),
        "family": p.family,
        "twist": p.twist,
        "exponents": p.exps,
        "order": p.order,
        "backend": "series",
        "matrix": m.to_json("oscillator-series"),
    });
    if let (Some(d), true) = (fock, kind != Kind::R) {
        let copies = p.algebra.rank();
        let blocks: Vec<serde_json::Value> = m
            .entries()
            .filter(|(_, _, e)| !e.is_zero())
            .map(|(i, j, e)| {
                let dense: Vec<Vec<serde_json::Value>> = e
                    .to_fock(copies, d)
                    .iter()
                    .map(|row| row.iter().map(JsonEntry::to_json).collect())
                    .collect();
                json!({"i": i, "j": j, "matrix": dense})
            })
            .collect();
        j["fock"] = json!({"dim": d, "copies": copies, "entries": blocks});
    }
    j
}

/// Checks at user-chosen exponents where the group allows it.
fn run_job(group: &str, alg: Algebra, s: &Settings) -> Result<Vec<Verdict>, CliError> {
    let exps = if s.algebra.is_some() { s.exponents(alg)? } else { None };
    let Some(e) = exps.filter(|_| matches!(group, "ybe" | "gauge" | "engine")) else {
        return Ok(run_group(group, alg, s.order)?);
    };
    let mut out = Vec::new();
    match group {
        "ybe" => out.extend(check_ybe(&reference_matrix(Kind::R, alg, Variant::Plain, &e)?)?),
        "gauge" => {
            out.push(check_gauge(GaugeFamily::R, alg, Variant::Plain, &e)?);
            for (kind, variant) in l_variants(alg) {
                if matches!(variant, Variant::InverseDerived | Variant::Twisted) {
                    continue;
                }
                let fam = if kind == Kind::LHat { GaugeFamily::LHat } else { GaugeFamily::LCheck };
                out.push(check_gauge(fam, alg, variant, &e)?);
            }
        }
        _ => {
            out.push(check_engine(Kind::R, alg, Variant::Plain, &e, s.order)?);
            for (kind, variant) in l_variants(alg) {
                out.push(check_engine(kind, alg, variant, &e, s.order)?);
            }
        }
    }
    Ok(out)
}

fn verify(group: Group, s: &Settings) -> Result<(String, bool), CliError> {
    let groups: Vec<&str> = match group {
        Group::All => CHECKS.to_vec(),
        Group::Ybe => vec!["ybe"],
        Group::Rll => vec!["rll"],
        Group::Gauge => vec!["gauge"],
        Group::Engine => vec!["engine"],
        Group::Duality => vec!["duality"],
        Group::Structure => vec!["structure"],
    };
    let algebras = match s.algebra {
        Some(a) => vec![a],
        None => vec![Algebra::A1, Algebra::A2],
    };
    let jobs: Vec<(&str, Algebra)> = groups.iter().flat_map(|g| algebras.iter().map(move |a| (*g, *a))).collect();
    let results: Vec<Result<Vec<Verdict>, CliError>> = jobs.par_iter().map(|(g, a)| run_job(g, *a, s)).collect();
    let mut verdicts = Vec::new();
    for r in results {
        verdicts.extend(r?);
    }
    verdicts.sort_by_key(|v| v.id());
    let all_pass = verdicts.iter().all(|v| v.pass);
    let body = match s.format {
        Format::Json => pretty(&json!(verdicts.iter().map(|v| v.to_json()).collect::<Vec<_>>())),
        Format::Text => {
            let failed = verdicts.iter().filter(|v| !v.pass).count();
            let mut t: String = verdicts.iter().map(|v| format!("{v}\n")).collect();
            t.push_str(&format!("{} checks, {failed} failed\n", verdicts.len()));
            t
        }
    };
    Ok((body, all_pass))
}

fn list_variants(format: Format) -> String {
    let hint = |k: Kind, a: Algebra, v: Variant| -> String {
        let base = match a {
            Algebra::A1 => "--s 1 --s1 0",
            Algebra::A2 => "--s 1 --s1 0 --s2 0",
        };
        match (k, v) {
            (Kind::R, _) => format!("compute r --algebra {a} {base}"),
            (Kind::R0 | Kind::RHat0, _) => "used by verify structure".into(),
            (_, Variant::InverseDerived) => "checked by verify engine and verify rll".into(),
            (k, v) => {
                let side = if k == Kind::LHat { "chi-phi" } else { "phi-psi" };
                let extra = match v {
                    Variant::Twisted => " --twist 1,0",
                    Variant::Family2 => " --family 2",
                    _ => "",
                };
                format!("compute l --algebra {a} --side {side}{extra} {base}")
            }
        }
    };
    match format {
        Format::Json => pretty(&json!(supported()
            .into_iter()
            .map(|(k, a, v)| json!({"kind": k.to_string(), "algebra": a.to_string(), "variant": v.to_string(), "command": hint(k, a, v)}))
            .collect::<Vec<_>>())),
        Format::Text => supported()
            .into_iter()
            .map(|(k, a, v)| format!("{:<8} {a}  {:<16} {}\n", k.to_string(), v.to_string(), hint(k, a, v)))
            .collect(),
    }
}

fn emit(out: Option<&PathBuf>, body: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Write { path: path.display().to_string(), source }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let cfg_path = cli.config.clone().or_else(|| std::env::var_os(ENV_CONFIG).map(PathBuf::from));
    let cfg = match cfg_path {
        Some(p) => Config::load(&p)?,
        None => Config::default(),
    };
    let (body, ok) = match cli.command {
        Command::Compute { object, opts } => (compute(object, &Settings::resolve(opts, &cfg)?)?, true),
        Command::Verify { group, opts } => verify(group, &Settings::resolve(opts, &cfg)?)?,
        Command::List { what: ListWhat::Variants } => {
            let format = cfg.pick("format", None)?.unwrap_or(Format::Text);
            (list_variants(format), true)
        }
    };
    emit(cli.out.as_ref(), &body)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variants_for_leg_choices() {
        assert_eq!(closed_form_variant(Kind::LHat, Algebra::A1, 1, Some(&[1, 0])), Some(Variant::Twisted));
        assert_eq!(closed_form_variant(Kind::LCheck, Algebra::A2, 2, None), Some(Variant::Family2));
        assert_eq!(closed_form_variant(Kind::LHat, Algebra::A2, 1, Some(&[1, 2, 0])), None);
        assert_eq!(closed_form_variant(Kind::R, Algebra::A1, 1, Some(&[1, 0])), None);
    }
}
