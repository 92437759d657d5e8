use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use tropvar::construct::{
    exponent_bound, factor_witness, fulliden_compose_i, fulliden_compose_ii, induct_identity, m2_falsifier_pair,
    m3_identity, m4_witness, prime_separation, ut_separating_pair, zur_identity, InductConfig, InductLevel,
    WitnessAssignment,
};
use tropvar::plactic::{
    format_word, knuth_closure, lift_inner_words, p4_ut5_separation, parse_word, plactic_identity_lift, Rho, RhoImage,
    SubsetIndex, Tableau,
};
use tropvar::reproduce::reproduce_all;
use tropvar::verify::{check_falsification, check_plactic_satisfaction, check_satisfaction, SamplerConfig, Shape};
use tropvar::word::{Identity, Word, WordExpr};

#[derive(Parser)]
#[command(name = "tropvar", version, about = "Identities of tropical matrix semigroups and the plactic monoid")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Output file for the main JSON artifact (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest expansion printed in summaries.
    #[arg(long, global = true, default_value_t = 200)]
    max_expand: u64,
    /// Number of sampled trials.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: u64,
    #[arg(long, global = true, default_value_t = -8, allow_hyphen_values = true)]
    entry_min: i64,
    #[arg(long, global = true, default_value_t = 8, allow_hyphen_values = true)]
    entry_max: i64,
    /// Probability of -inf entries, as `n/d` or a decimal.
    #[arg(long, global = true, default_value = "1/10")]
    neginf_prob: String,
}

#[derive(Subcommand)]
enum Command {
    /// Build an identity (and a falsifying witness where one exists).
    #[command(subcommand)]
    Construct(Construct),
    /// Sample matrix pairs (or plactic elements) looking for a counterexample.
    Verify {
        #[arg(long)]
        identity: PathBuf,
        #[arg(long, default_value = "full")]
        shape: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Let diagonal entries of upper triangular samples be -inf.
        #[arg(long)]
        diagonal_neginf: bool,
        /// Evaluate in the plactic monoid of rank 4 instead.
        #[arg(long)]
        plactic: bool,
        #[arg(long, default_value_t = 6)]
        max_word_len: usize,
    },
    /// Evaluate an identity exactly at a witness pair.
    Falsify {
        #[arg(long)]
        identity: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Plactic monoid tools; words are digit strings over 1..4.
    #[command(subcommand)]
    Plactic(Plactic),
    /// Rerun every separation result and print a PASS/FAIL table.
    Reproduce {
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum Construct {
    FactorWitness {
        #[arg(long)]
        word: String,
    },
    Zur {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: usize,
    },
    UtSep {
        #[arg(long)]
        n: usize,
    },
    M3,
    M2Falsifier,
    FullidenI {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        allow_remark: bool,
    },
    FullidenIi {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        t: Option<u64>,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        allow_remark: bool,
    },
    /// Lift an M_2 identity to M_n using the UT_k separating identities.
    Induct {
        #[arg(long)]
        n: usize,
        /// Exponent at every level; defaults to (n-1)^2 + 1.
        #[arg(long)]
        t: Option<u64>,
        /// Sides of the M_2 identity; defaults to the built-in falsifier pair.
        #[arg(long, requires = "v2")]
        u2: Option<String>,
        #[arg(long, requires = "u2")]
        v2: Option<String>,
    },
    PrimeSep {
        #[arg(long)]
        p: u64,
    },
    /// Lift u[ab,ba] = v[ab,ba] to the plactic monoid of rank 4.
    PlacticLift {
        #[arg(long, requires = "v")]
        u: Option<String>,
        #[arg(long, requires = "u")]
        v: Option<String>,
    },
}

#[derive(Subcommand)]
enum Plactic {
    /// Schensted tableau of a word.
    Canon { word: String },
    /// Knuth class of a word.
    Closure {
        word: String,
        #[arg(long, default_value_t = tropvar::plactic::CLOSURE_CAP)]
        cap: usize,
    },
    /// Tropical image of a word, with the subset labelling each index.
    Rho { word: String },
}

/// Failures that are not usage errors.
enum Failure {
    Usage(anyhow::Error),
    Unexpected(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<tropvar::Error> for Failure {
    fn from(e: tropvar::Error) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unexpected(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    match cli.command {
        Command::Construct(c) => construct(g, c)?,
        Command::Verify { identity, shape, dim, diagonal_neginf, plactic, max_word_len } => {
            let id = load_identity(&identity)?;
            let report = if plactic {
                check_plactic_satisfaction(&id, max_word_len, g.trials, g.seed)?
            } else {
                let shape: Shape = shape.parse()?;
                let dim = dim.context("--dim is required unless --plactic is given")?;
                let mut cfg = SamplerConfig::new(dim, shape, g.trials, g.seed);
                cfg.entry_min = g.entry_min;
                cfg.entry_max = g.entry_max;
                cfg.neginf_prob = g.neginf_prob.parse()?;
                cfg.diagonal_neginf = diagonal_neginf;
                check_satisfaction(&id, &cfg)?
            };
            emit(g.out.as_deref(), &serde_json::to_value(&report).map_err(anyhow::Error::from)?)?;
            eprintln!("{}", report.summary());
            if report.found_counterexample() {
                return Err(Failure::Unexpected("counterexample found".into()));
            }
        }
        Command::Falsify { identity, witness } => {
            let id = load_identity(&identity)?;
            let w: WitnessAssignment = load_json(&witness)?;
            match check_falsification(&id, &w) {
                Ok(report) => {
                    emit(g.out.as_deref(), &serde_json::to_value(&report).map_err(anyhow::Error::from)?)?;
                    eprintln!("{}", report.summary());
                }
                Err(tropvar::Error::WitnessFailed) => {
                    return Err(Failure::Unexpected("witness failed: both sides agree".into()))
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Plactic(p) => plactic(g, p)?,
        Command::Reproduce { all } => {
            if !all {
                return Err(anyhow::anyhow!("only `reproduce --all` is supported").into());
            }
            let report = reproduce_all(g.seed);
            write_stdout(&report.table())?;
            if let Some(out) = &g.out {
                write_json(out, &serde_json::to_value(&report).map_err(anyhow::Error::from)?)?;
            }
            if !report.pass {
                return Err(Failure::Unexpected("some criteria failed".into()));
            }
        }
    }
    Ok(())
}

fn construct(g: &Global, c: Construct) -> Result<()> {
    let word = |s: &str| Word::parse(s).with_context(|| format!("bad word {s:?}"));
    let expr = |s: &str| WordExpr::parse(s).with_context(|| format!("bad word {s:?}"));
    let mut extra = Vec::new();
    let (identity, witness): (Option<Identity>, Option<WitnessAssignment>) = match c {
        Construct::FactorWitness { word: w } => {
            let fw = factor_witness(&word(&w)?)?;
            extra.push(("params", json!(fw.params)));
            (None, Some(fw.assignment()))
        }
        Construct::Zur { word: w, n } => (Some(zur_identity(&word(&w)?, n)?), None),
        Construct::UtSep { n } => {
            let pair = ut_separating_pair(n)?;
            if let Some(f) = &pair.factor {
                extra.push(("factor", json!(f)));
            }
            (Some(pair.identity), Some(pair.witness))
        }
        Construct::M3 => (Some(m3_identity()), Some(m4_witness())),
        Construct::M2Falsifier => (Some(m2_falsifier_pair()), None),
        Construct::FullidenI { u, v, q, r, t, n, allow_remark } => {
            (Some(fulliden_compose_i(&expr(&u)?, &expr(&v)?, &expr(&q)?, &expr(&r)?, t, n, allow_remark)?), None)
        }
        Construct::FullidenIi { u, v, p, q, r, t, n, allow_remark } => (
            Some(fulliden_compose_ii(&expr(&u)?, &expr(&v)?, &expr(&p)?, &expr(&q)?, &expr(&r)?, t, n, allow_remark)?),
            None,
        ),
        Construct::Induct { n, t, u2, v2 } => {
            let t = t.unwrap_or_else(|| exponent_bound(n as u64));
            let levels = (3..=n)
                .map(|k| Ok(InductLevel { k, identity: ut_separating_pair(k)?.identity, t }))
                .collect::<tropvar::Result<Vec<_>>>()?;
            let cfg = InductConfig { n, levels };
            let base = match (u2, v2) {
                (Some(u), Some(v)) => Identity::new(expr(&u)?, expr(&v)?)?,
                _ => m2_falsifier_pair(),
            };
            (Some(induct_identity(&cfg, base.lhs(), base.rhs())?), None)
        }
        Construct::PrimeSep { p } => {
            let sep = prime_separation(p)?;
            extra.push(("t", json!(sep.t)));
            extra.push(("choices", serde_json::to_value(&sep.choices)?));
            extra.push(("diagnostics", serde_json::to_value(&sep.diagnostics)?));
            (Some(sep.identity), Some(sep.witness))
        }
        Construct::PlacticLift { u, v } => match (u, v) {
            (Some(u), Some(v)) => (Some(plactic_identity_lift(&word(&u)?, &word(&v)?)?), None),
            _ => {
                let (id, w) = p4_ut5_separation();
                let (u, v) = lift_inner_words();
                extra.push(("inner", json!([u.to_string(), v.to_string()])));
                (Some(id), Some(w))
            }
        },
    };

    if let Some(id) = &identity {
        emit(g.out.as_deref(), &serde_json::to_value(id)?)?;
        let (l, r) = id.lengths();
        eprintln!("identity {} (lengths {l}, {r}, balanced: {})", &id.digest()[..12], id.is_balanced());
        if let (Ok(lw), Ok(rw)) = (id.lhs().expand(g.max_expand), id.rhs().expand(g.max_expand)) {
            eprintln!("  {lw}\n= {rw}");
        }
    }
    if let Some(w) = &witness {
        let value = serde_json::to_value(w)?;
        match (&identity, &g.out) {
            (Some(_), Some(out)) => {
                let path = sibling(out, "witness");
                write_json(&path, &value)?;
                eprintln!("witness written to {}", path.display());
            }
            (Some(_), None) => eprintln!("witness:\n{}", serde_json::to_string_pretty(&value)?),
            (None, out) => emit(out.as_deref(), &value)?,
        }
    }
    if !extra.is_empty() {
        let value = serde_json::Value::Object(extra.into_iter().map(|(k, v)| (k.to_string(), v)).collect());
        match &g.out {
            Some(out) if identity.is_some() => write_json(&sibling(out, "details"), &value)?,
            _ => eprintln!("{}", serde_json::to_string_pretty(&value)?),
        }
    }
    Ok(())
}

fn plactic(g: &Global, p: Plactic) -> Result<()> {
    let value = match p {
        Plactic::Canon { word } => {
            let t = Tableau::from_word(&parse_word(&word, 4)?, 4)?;
            json!({ "word": word, "rows": t.rows(), "reading_word": format_word(&t.reading_word()) })
        }
        Plactic::Closure { word, cap } => {
            let class: Vec<String> = knuth_closure(&parse_word(&word, 4)?, cap)?.iter().map(|w| format_word(w)).collect();
            json!({ "word": word, "size": class.len(), "class": class })
        }
        Plactic::Rho { word } => {
            let w = parse_word(&word, 4)?;
            let image = RhoImage { word: word.clone(), legend: SubsetIndex::new(4)?.legend(), matrix: Rho::new(4)?.image(&w)? };
            serde_json::to_value(image)?
        }
    };
    emit(g.out.as_deref(), &value)
}

/// `dir/stem.json` -> `dir/stem.<tag>.json`.
fn sibling(path: &Path, tag: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "out".into());
    path.with_file_name(format!("{stem}.{tag}.json"))
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn emit(out: Option<&Path>, value: &serde_json::Value) -> Result<()> {
    match out {
        Some(path) => write_json(path, value),
        None => write_stdout(&format!("{}\n", serde_json::to_string_pretty(value)?)),
    }
}

/// Writes to stdout, treating a closed pipe (`| head`) as success.
fn write_stdout(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn load_identity(path: &Path) -> Result<Identity> {
    load_json(path)
}
