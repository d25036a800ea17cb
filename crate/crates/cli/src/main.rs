//! Command-line front end: parses ring definition files and polynomial
//! expressions, dispatches computations, and emits text or JSON reports.
//!
//! Exit codes: 0 success/pass, 1 certificate failure, 2 input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use skewring::{
    centre_intersection_check, compute_s, holds_on, load_ringfile, parse_identity, parse_poly,
    radical_report, semiprimitivity_certificate, standard_identity, theorem1_certificate,
    BuiltRing, Caps, Error, SearchOutcome,
};

const SCHEMA: &str = "skewring-report/1";
const S_TAG: &str = "S (via Theorem 1)";

#[derive(Parser)]
#[command(name = "skewring", version, about = "Finite rings, derivations, and R[x;D] certificates")]
struct Cli {
    /// Degree bound for quasi-inverse searches.
    #[arg(long, global = true, default_value_t = 8)]
    max_degree: usize,
    /// Ring-order cap for enumeration-based operations.
    #[arg(long, global = true, default_value_t = 4096)]
    cap: u128,
    /// Seed for all randomized sampling.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Ring inspection.
    Ring {
        #[command(subcommand)]
        cmd: RingCmd,
    },
    /// Jacobson radical and nilradical.
    Radical { file: PathBuf },
    /// The D-stable core S of the nilradical.
    DstableCore { file: PathBuf },
    /// Skew polynomial arithmetic over R[x;D].
    Skew {
        #[command(subcommand)]
        cmd: SkewCmd,
    },
    /// Polynomial identity checks.
    Identity {
        #[command(subcommand)]
        cmd: IdentityCmd,
    },
    /// Certificates.
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
    /// Batch certificate runs.
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum RingCmd {
    /// Order, moduli, unit, centre, and derivation summary.
    Info { file: PathBuf },
}

#[derive(Subcommand)]
enum SkewCmd {
    /// Multiply two polynomials and print the right-normalized product.
    Mul {
        file: PathBuf,
        p: String,
        q: String,
    },
    /// Bounded quasi-inverse search for a polynomial.
    Qinv { file: PathBuf, p: String },
}

#[derive(Subcommand)]
enum IdentityCmd {
    /// Check a multilinear identity on all generator tuples.
    Check {
        file: PathBuf,
        /// Identity literal such as "x1*x2 - x2*x1".
        expr: Option<String>,
        /// Use the standard identity S_d instead of a literal.
        #[arg(long, conflicts_with = "expr")]
        standard: Option<usize>,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Full Theorem 1 certificate: S is a nil D-ideal and the proof replays.
    Theorem1 { file: PathBuf },
    /// Semiprimitivity evidence for rings with zero nilradical.
    Corollary { file: PathBuf },
    /// Centre-intersection check (Theorem 2 instances).
    Centre { file: PathBuf },
}

#[derive(Subcommand)]
enum CorpusCmd {
    /// Run Theorem 1 certificates on many files in parallel.
    Run { files: Vec<PathBuf> },
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    schema: &'static str,
    command: String,
    caps: Caps,
    seed: u64,
    provenance: Vec<String>,
    payload: T,
}

enum Outcome {
    Pass,
    CertificateFailure,
}

struct Ctx {
    caps: Caps,
    seed: u64,
    format: Format,
    command: String,
}

impl Ctx {
    fn emit<T: Serialize>(&self, provenance: Vec<String>, payload: T, text: String) {
        match self.format {
            Format::Text => println!("{text}"),
            Format::Json => {
                let report = Report {
                    schema: SCHEMA,
                    command: self.command.clone(),
                    caps: self.caps,
                    seed: self.seed,
                    provenance,
                    payload,
                };
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            }
        }
    }
}

fn load(path: &Path, caps: &Caps) -> Result<BuiltRing, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    load_ringfile(&text, caps).map_err(|e| format!("{}: {e}", path.display()))
}

fn elements_line(elems: &[skewring::RingElement]) -> String {
    let items: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn run(cli: Cli) -> Result<Outcome, String> {
    let caps = Caps {
        element_cap: cli.cap,
        ideal_cap: cli.cap.min(256),
        ..Caps::default()
    }
    .with_max_degree(cli.max_degree);
    let ctx = Ctx {
        caps,
        seed: cli.seed,
        format: cli.format,
        command: std::env::args().skip(1).collect::<Vec<_>>().join(" "),
    };

    match &cli.command {
        Command::Ring { cmd: RingCmd::Info { file } } => {
            let built = load(file, &caps)?;
            let centre = built.ring.centre(&caps).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Info {
                order: u128,
                moduli: Vec<u64>,
                unital: bool,
                unit: Option<String>,
                centre_size: usize,
                derivation_trivial: bool,
                labels: Vec<String>,
            }
            let info = Info {
                order: built.ring.order(),
                moduli: built.ring.moduli().to_vec(),
                unital: built.ring.unit().is_some(),
                unit: built.ring.unit().map(|u| u.to_string()),
                centre_size: centre.len(),
                derivation_trivial: built.deriv.is_trivial(),
                labels: built.labels.keys().cloned().collect(),
            };
            let text = format!(
                "order {}\nmoduli {:?}\nunit {}\ncentre size {}\nderivation {}\nlabels {}",
                info.order,
                info.moduli,
                info.unit.as_deref().unwrap_or("none (non-unital)"),
                info.centre_size,
                if info.derivation_trivial { "trivial" } else { "nontrivial" },
                info.labels.join(", "),
            );
            ctx.emit(vec![], info, text);
            Ok(Outcome::Pass)
        }
        Command::Radical { file } => {
            let built = load(file, &caps)?;
            let rep = radical_report(&built.ring, &caps).map_err(|e| e.to_string())?;
            let text = format!(
                "J(R) = {}\nN(R) = {}\nnilpotence index {}",
                elements_line(rep.jacobson.elements()),
                elements_line(rep.nilradical.elements()),
                rep.nilpotence_index,
            );
            ctx.emit(vec![], rep, text);
            Ok(Outcome::Pass)
        }
        Command::DstableCore { file } => {
            let built = load(file, &caps)?;
            let s = compute_s(&built.ring, &built.deriv, &caps).map_err(|e| e.to_string())?;
            let text = format!("{S_TAG} = {}", elements_line(s.elements()));
            ctx.emit(vec![S_TAG.into()], s, text);
            Ok(Outcome::Pass)
        }
        Command::Skew { cmd } => match cmd {
            SkewCmd::Mul { file, p, q } => {
                let built = load(file, &caps)?;
                let p = parse_poly(p, &built).map_err(|e| e.to_string())?;
                let q = parse_poly(q, &built).map_err(|e| e.to_string())?;
                let prod = p.mul(&q).map_err(|e| e.to_string())?;
                let s = prod.to_string();
                ctx.emit(vec![], &s, s.clone());
                Ok(Outcome::Pass)
            }
            SkewCmd::Qinv { file, p } => {
                let built = load(file, &caps)?;
                let p = parse_poly(p, &built).map_err(|e| e.to_string())?;
                let outcome = p
                    .quasi_inverse_search(caps.max_degree, &caps)
                    .map_err(|e| e.to_string())?;
                let (tag, text) = match outcome {
                    SearchOutcome::Found(f) => ("found".to_string(), format!("found: {f}")),
                    SearchOutcome::NotFound { max_degree } => (
                        format!("not_found({max_degree})"),
                        format!("no quasi-inverse up to degree {max_degree}"),
                    ),
                };
                ctx.emit(vec![], &tag, text);
                Ok(Outcome::Pass)
            }
        },
        Command::Identity { cmd: IdentityCmd::Check { file, expr, standard } } => {
            let built = load(file, &caps)?;
            let ident = match (expr, standard) {
                (Some(e), None) => parse_identity(e).map_err(|e| e.to_string())?,
                (None, Some(d)) => standard_identity(*d).map_err(|e| e.to_string())?,
                _ => return Err("identity check needs an expression or --standard <d>".into()),
            };
            let (ok, witness) = holds_on(&built.ring, &ident).map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct IdentityResult {
                holds: bool,
                witness: Option<Vec<String>>,
            }
            let res = IdentityResult {
                holds: ok,
                witness: witness
                    .map(|w| w.iter().map(|e| e.to_string()).collect()),
            };
            let text = if ok {
                "identity holds on all generator tuples".to_string()
            } else {
                format!(
                    "identity fails; witness ({})",
                    res.witness.as_ref().unwrap().join(", ")
                )
            };
            ctx.emit(vec![], res, text);
            Ok(if ok { Outcome::Pass } else { Outcome::CertificateFailure })
        }
        Command::Verify { cmd } => match cmd {
            VerifyCmd::Theorem1 { file } => {
                let built = load(file, &caps)?;
                let cert = theorem1_certificate(&built.ring, &built.deriv, cli.seed, &caps)
                    .map_err(|e| e.to_string())?;
                let passed = cert.passed();
                let text = format!(
                    "{}: {S_TAG} = {}\n  ideal {} | D-stable {} | nil {} (index {})\n  replay: {} element(s){}, all checks {}\nverdict: {}",
                    file.display(),
                    elements_line(cert.s.elements()),
                    mark(cert.s_is_ideal),
                    mark(cert.s_is_d_stable),
                    mark(cert.s_is_nil),
                    cert.s_nilpotence_index,
                    cert.replay.len(),
                    if cert.replay_sampled { " (sampled)" } else { "" },
                    mark(cert.replay.iter().all(|r| r.passed())),
                    if passed { "PASS" } else { "FAIL" },
                );
                ctx.emit(vec![cert.provenance.clone()], cert, text);
                Ok(if passed { Outcome::Pass } else { Outcome::CertificateFailure })
            }
            VerifyCmd::Corollary { file } => {
                let built = load(file, &caps)?;
                let cert = semiprimitivity_certificate(&built.ring, &built.deriv, cli.seed, &caps)
                    .map_err(|e| match e {
                        Error::PreconditionFailed(m) => m,
                        other => other.to_string(),
                    })?;
                let passed = cert.passed();
                let found: Vec<&(skewring::RingElement, String)> = cert
                    .searches
                    .iter()
                    .filter(|(_, o)| o.starts_with("found"))
                    .collect();
                let text = format!(
                    "{}: S = {{0}} {} | searches {} | all NotFound {}{}\nverdict: {}",
                    file.display(),
                    mark(cert.s_is_zero),
                    cert.searches.len(),
                    mark(cert.all_not_found),
                    found
                        .first()
                        .map(|(a, o)| format!("\n  first quasi-regular witness: x*({a}) -> {o}"))
                        .unwrap_or_default(),
                    if passed { "PASS" } else { "FAIL" },
                );
                ctx.emit(vec![cert.provenance.clone()], cert, text);
                Ok(if passed { Outcome::Pass } else { Outcome::CertificateFailure })
            }
            VerifyCmd::Centre { file } => {
                let built = load(file, &caps)?;
                let rep = centre_intersection_check(&built.ring, &caps).map_err(|e| match e {
                    Error::PreconditionFailed(m) => m,
                    other => other.to_string(),
                })?;
                let passed = rep.violations.is_empty();
                let text = format!(
                    "{}: {} nonzero principal ideals checked, {} violation(s)\nverdict: {}",
                    file.display(),
                    rep.checked,
                    rep.violations.len(),
                    if passed { "PASS" } else { "FAIL" },
                );
                ctx.emit(vec![], rep, text);
                Ok(if passed { Outcome::Pass } else { Outcome::CertificateFailure })
            }
        },
        Command::Corpus { cmd: CorpusCmd::Run { files } } => {
            if files.is_empty() {
                return Err("corpus run needs at least one file".into());
            }
            #[derive(Serialize)]
            struct Entry {
                file: String,
                passed: bool,
                s_size: usize,
                nilpotence_index: usize,
                replayed: usize,
            }
            // run in parallel, emit in input order
            let results: Vec<Result<Entry, String>> = files
                .par_iter()
                .map(|f| {
                    let built = load(f, &caps)?;
                    let cert = theorem1_certificate(&built.ring, &built.deriv, cli.seed, &caps)
                        .map_err(|e| format!("{}: {e}", f.display()))?;
                    Ok(Entry {
                        file: f.display().to_string(),
                        passed: cert.passed(),
                        s_size: cert.s.len(),
                        nilpotence_index: cert.s_nilpotence_index,
                        replayed: cert.replay.len(),
                    })
                })
                .collect();
            let mut entries = Vec::new();
            for r in results {
                entries.push(r?);
            }
            let all = entries.iter().all(|e| e.passed);
            let mut text = String::new();
            for e in &entries {
                text.push_str(&format!(
                    "{}: {} (|S|={}, index {}, {} replay(s))\n",
                    e.file,
                    if e.passed { "PASS" } else { "FAIL" },
                    e.s_size,
                    e.nilpotence_index,
                    e.replayed,
                ));
            }
            text.push_str(if all { "corpus verdict: PASS" } else { "corpus verdict: FAIL" });
            ctx.emit(vec![S_TAG.into()], entries, text);
            Ok(if all { Outcome::Pass } else { Outcome::CertificateFailure })
        }
    }
}

fn mark(b: bool) -> &'static str {
    if b { "ok" } else { "VIOLATED" }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::CertificateFailure) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
