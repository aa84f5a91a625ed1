//! The `posetdim` command line.
//!
//! Exit codes: 0 success, 1 verification failed, 2 bad input or flags,
//! 3 unsupported poset class, 4 internal verification failure, 5 extension
//! cap exceeded.

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};

use crate::classify::classify;
use crate::error::Error;
use crate::format::{
    parse_poset, parse_realizer, write_poset, write_realizer, write_realizer_document,
};
use crate::graft::realize_any;
use crate::oracle::{
    brute_dimension, sample, Dimension, ModelKind, RandomModel, DEFAULT_CAP, DEFAULT_MAX_K,
};
use crate::poset::{find_violation, Poset, RealizerViolation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_REALIZER: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;
pub const EXIT_CAP: i32 = 5;

pub const SEED_VAR: &str = "POSETDIM_SEED";

#[derive(Parser, Debug)]
#[command(
    name = "posetdim",
    version,
    about = "Dimension of tree and unicycle posets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report connectivity and the class of each component.
    Classify { file: String },
    /// Print a three-word realizer.
    Realize {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a realizer against a poset.
    Verify { poset: String, realizer: String },
    /// Exact dimension by exhaustive search.
    Dim {
        file: String,
        #[arg(long = "max-k", default_value_t = DEFAULT_MAX_K)]
        max_k: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Sample a random poset.
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        /// Defaults to $POSETDIM_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Hasse diagram in Graphviz DOT.
    Dot { file: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Gnp,
    Tree,
    Unicycle,
}

impl From<Kind> for ModelKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Gnp => ModelKind::Gnp,
            Kind::Tree => ModelKind::Tree,
            Kind::Unicycle => ModelKind::Unicycle,
        }
    }
}

/// Process environment handed to [`run`].
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
    /// Value of `POSETDIM_SEED`, if set.
    pub seed_var: Option<String>,
}

struct Failure(i32, String);

type Outcome = Result<(i32, String), Failure>;

/// Runs one command and returns its exit code.
pub fn run<I, T>(args: I, io: Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { io.stderr } else { io.stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut stdin_used = false;
    let mut load = |path: &str| -> Result<Vec<u8>, Failure> {
        if path == "-" {
            if std::mem::replace(&mut stdin_used, true) {
                return Err(Failure(
                    EXIT_INPUT,
                    "standard input can be read only once".into(),
                ));
            }
            let mut buf = Vec::new();
            io.stdin
                .read_to_end(&mut buf)
                .map_err(|e| Failure(EXIT_INPUT, format!("<stdin>: {e}")))?;
            Ok(buf)
        } else {
            std::fs::read(path).map_err(|e| Failure(EXIT_INPUT, format!("{path}: {e}")))
        }
    };
    let outcome = match cli.command {
        Command::Classify { file } => load(&file).and_then(|b| cmd_classify(&file, &b)),
        Command::Realize { file, format } => {
            load(&file).and_then(|b| cmd_realize(&file, &b, format))
        }
        Command::Verify { poset, realizer } => load(&poset).and_then(|pb| {
            let rb = load(&realizer)?;
            cmd_verify(&poset, &pb, &realizer, &rb)
        }),
        Command::Dim { file, max_k, cap } => {
            load(&file).and_then(|b| cmd_dim(&file, &b, max_k, cap))
        }
        Command::Gen { kind, n, c, seed } => cmd_gen(kind, n, c, seed, io.seed_var.as_deref()),
        Command::Dot { file } => load(&file).and_then(|b| cmd_dot(&file, &b)),
    };
    match outcome {
        Ok((code, text)) => {
            if io.stdout.write_all(text.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            code
        }
        Err(Failure(code, msg)) => {
            let _ = writeln!(io.stderr, "posetdim: {msg}");
            code
        }
    }
}

fn read_poset(path: &str, bytes: &[u8]) -> Result<Poset, Failure> {
    parse_poset(bytes).map_err(|e| Failure(EXIT_INPUT, format!("{path}: {e}")))
}

fn cmd_classify(path: &str, bytes: &[u8]) -> Outcome {
    let p = read_poset(path, bytes)?;
    let c = classify(&p);
    let mut out = String::new();
    match c.components.as_slice() {
        [] => out.push_str("empty\n"),
        [only] => writeln!(out, "connected {}", only.class).unwrap(),
        parts => {
            writeln!(out, "disconnected {} components", parts.len()).unwrap();
            for (i, comp) in parts.iter().enumerate() {
                let names: Vec<&str> = comp.elements.iter().map(|&e| p.label(e)).collect();
                writeln!(
                    out,
                    "component {}: {} {}",
                    i + 1,
                    comp.class,
                    names.join(" ")
                )
                .unwrap();
            }
        }
    }
    Ok((EXIT_OK, out))
}

fn cmd_realize(path: &str, bytes: &[u8], format: Format) -> Outcome {
    let p = read_poset(path, bytes)?;
    let r = match realize_any(&p) {
        Ok(r) => r,
        Err(e @ Error::UnsupportedClass(_)) => {
            return Err(Failure(EXIT_UNSUPPORTED, e.to_string()))
        }
        Err(e) => return Err(Failure(EXIT_INTERNAL, format!("construction failed: {e}"))),
    };
    if r.len() != 3 || find_violation(&p, &r).is_some() {
        return Err(Failure(
            EXIT_INTERNAL,
            "constructed words do not realize the poset".into(),
        ));
    }
    let text = match format {
        Format::Text => write_realizer(&p, &r),
        Format::Machine => write_realizer_document(&p, &r, true),
    };
    Ok((EXIT_OK, text))
}

fn cmd_verify(ppath: &str, pbytes: &[u8], rpath: &str, rbytes: &[u8]) -> Outcome {
    let p = read_poset(ppath, pbytes)?;
    let r = parse_realizer(rbytes, &p).map_err(|e| Failure(EXIT_INPUT, format!("{rpath}: {e}")))?;
    let text = match find_violation(&p, &r) {
        None => return Ok((EXIT_OK, "ok\n".into())),
        Some(RealizerViolation::NoWords) => "violation: no words\n".to_string(),
        Some(RealizerViolation::NotLinearExtension { word }) => {
            let w = &r.extensions[word];
            let (a, b) = crate::poset::first_inversion(&p, &w.order).expect("not an extension");
            format!(
                "violation: word {} puts {} before {} but {} < {}\n",
                word + 1,
                p.label(b),
                p.label(a),
                p.label(a),
                p.label(b)
            )
        }
        Some(RealizerViolation::UnreversedPair { first, second }) => format!(
            "violation: {} precedes {} in every word but they are incomparable\n",
            p.label(first),
            p.label(second)
        ),
    };
    Ok((EXIT_NOT_REALIZER, text))
}

fn cmd_dim(path: &str, bytes: &[u8], max_k: usize, cap: usize) -> Outcome {
    let p = read_poset(path, bytes)?;
    match brute_dimension(&p, max_k, cap) {
        Ok(res) => {
            let mut out = format!("{}\n", res.value);
            if let (Dimension::Exact(_), Some(w)) = (res.value, &res.witness) {
                out.push_str(&write_realizer(&p, w));
            }
            Ok((EXIT_OK, out))
        }
        Err(Error::CapExceeded(c)) => {
            Ok((EXIT_CAP, format!("cap exceeded ({c} linear extensions)\n")))
        }
        Err(e) => Err(Failure(EXIT_INTERNAL, e.to_string())),
    }
}

fn cmd_gen(kind: Kind, n: usize, c: f64, seed: Option<u64>, seed_var: Option<&str>) -> Outcome {
    let seed = match (seed, seed_var) {
        (Some(s), _) => s,
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| Failure(EXIT_INPUT, format!("{SEED_VAR}={v:?} is not a seed")))?,
        (None, None) => 0,
    };
    let model = RandomModel {
        kind: kind.into(),
        n,
        c,
        seed,
    };
    let p = sample(&model).map_err(|e| Failure(EXIT_INPUT, e.to_string()))?;
    Ok((EXIT_OK, write_poset(&p)))
}

fn cmd_dot(path: &str, bytes: &[u8]) -> Outcome {
    let p = read_poset(path, bytes)?;
    Ok((EXIT_OK, to_dot(&p)))
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Hasse diagram with minimal elements at the bottom and one rank per
/// height.
pub fn to_dot(p: &Poset) -> String {
    let mut height = vec![0usize; p.len()];
    let mut order: Vec<_> = p.elements().collect();
    order.sort_by_key(|&e| p.count_below(e));
    for &e in &order {
        height[e.0] = p
            .lower_covers(e)
            .iter()
            .map(|d| height[d.0] + 1)
            .max()
            .unwrap_or(0);
    }
    let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
    for e in p.elements() {
        writeln!(out, "  {};", quote(p.label(e))).unwrap();
    }
    let levels = height.iter().copied().max().map_or(0, |h| h + 1);
    for h in 0..levels {
        let names: Vec<String> = p
            .elements()
            .filter(|e| height[e.0] == h)
            .map(|e| quote(p.label(e)))
            .collect();
        writeln!(out, "  {{ rank=same; {}; }}", names.join("; ")).unwrap();
    }
    for (a, b) in p.covers() {
        writeln!(out, "  {} -> {};", quote(p.label(a)), quote(p.label(b))).unwrap();
    }
    out.push_str("}\n");
    out
}
