//! Command-line front end.
//!
//! Exit codes: 0 success or check passed, 1 check failed, 2 input error,
//! 3 crossing cap exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::alexander::{alexander, check_family, AlexanderError};
use crate::complex::build_complex;
use crate::diagram::{
    connected_sum, kt_tangle, livingston_pattern, parse_pd, satellite, tangle_replace, to_json, to_pd_string,
    AnnularPattern, Arc, DiagramError, LinkDiagram, Tangle,
};
use crate::khovanov::{check_summand, kh_with, render_csv, render_json, render_text, Coefficients, KhError, KhOptions};
use crate::states::{StateError, StateSpace, DEFAULT_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "khtor", version, about = "Khovanov homology with integer torsion")]
pub struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "KHTOR_THREADS", default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Khovanov homology table of a diagram.
    Kh {
        #[command(flatten)]
        hom: HomologyArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write every boundary matrix in sparse triplet form to this file.
        #[arg(long)]
        dump_triplets: Option<PathBuf>,
        file: PathBuf,
    },
    /// Checks that Kh(K0) is a direct summand of Kh(K1) in every bigrading.
    Summand {
        #[command(flatten)]
        hom: HomologyArgs,
        k0: PathBuf,
        k1: PathBuf,
    },
    /// Connected sum, optionally at chosen arcs of each summand.
    Consum {
        a: PathBuf,
        b: PathBuf,
        /// Arc of the first diagram, then of the second.
        #[arg(long, num_args = 1)]
        arc: Vec<Arc>,
        #[arg(long, value_enum, default_value_t = PdFormat::Pd)]
        format: PdFormat,
    },
    /// Replaces a trivial tangle between two arcs on a common face.
    Ktjoin {
        file: PathBuf,
        /// Exactly two arcs.
        #[arg(long, num_args = 1, required = true)]
        arc: Vec<Arc>,
        /// Tangle JSON; the bundled tangle by default.
        #[arg(long)]
        tangle: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = PdFormat::Pd)]
        format: PdFormat,
    },
    /// Zero-framed satellite with a winding-one pattern.
    Satellite {
        file: PathBuf,
        /// Pattern JSON; the bundled pattern by default.
        #[arg(long)]
        pattern: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = PdFormat::Pd)]
        format: PdFormat,
    },
    /// Normalised Alexander polynomial, or a check of the family K # J0^n.
    Alexander {
        file: PathBuf,
        #[arg(long, requires = "n")]
        family: Option<PathBuf>,
        #[arg(long, requires = "family")]
        n: Option<usize>,
        /// Print the symmetric Laurent polynomial instead of coefficients.
        #[arg(long)]
        laurent: bool,
    },
}

#[derive(Args, Debug)]
pub struct HomologyArgs {
    /// Z, Q or F<p> (e.g. F2, F3).
    #[arg(long, default_value = "Z")]
    pub ring: Coefficients,
    /// Largest accepted crossing count.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PdFormat {
    Pd,
    Json,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: DiagramError },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Kh(#[from] KhError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Kh(KhError::Cap(_)) => EXIT_CAP,
            _ => EXIT_INPUT,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn load(path: &Path) -> Result<LinkDiagram, CliError> {
    parse_pd(&read(path)?).map_err(|source| CliError::Parse { path: path.into(), source })
}

fn emit_pd(d: &LinkDiagram, f: PdFormat) -> String {
    match f {
        PdFormat::Pd => to_pd_string(d) + "\n",
        PdFormat::Json => to_json(d) + "\n",
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing normal output to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    crate::par::set_threads(cli.threads);
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut text = String::new();
    let code = match cmd {
        Command::Kh { hom, format, dump_triplets, file } => {
            let d = load(file)?;
            let name = file.file_stem().map(|s| s.to_string_lossy().into_owned());
            let mut t = kh_with(&d, hom.ring, &KhOptions { cap: hom.cap })?;
            t.name = name;
            if let Some(path) = dump_triplets {
                dump(&d, hom.cap, path)?;
            }
            text = match format {
                Format::Text => render_text(&t),
                Format::Csv => render_csv(&t),
                Format::Json => render_json(&t),
            };
            EXIT_OK
        }
        Command::Summand { hom, k0, k1 } => {
            let opts = KhOptions { cap: hom.cap };
            let t0 = kh_with(&load(k0)?, hom.ring, &opts)?;
            let t1 = kh_with(&load(k1)?, hom.ring, &opts)?;
            let report = check_summand(&t0, &t1)?;
            for (i, j, g, h) in &report.failures {
                text.push_str(&format!("fail (i={i}, j={j}): {g} is not a summand of {h}\n"));
            }
            let verdict = if report.passed() { "PASS" } else { "FAIL" };
            text.push_str(&format!("{verdict}: {} bigradings checked over {}\n", report.checked, hom.ring));
            if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED }
        }
        Command::Consum { a, b, arc, format } => {
            let (x, y) = match arc.as_slice() {
                [] => (None, None),
                [x, y] => (Some(*x), Some(*y)),
                _ => return Err(CliError::Usage("--arc must be given twice or not at all".into())),
            };
            text = emit_pd(&connected_sum(&load(a)?, &load(b)?, x, y)?, *format);
            EXIT_OK
        }
        Command::Ktjoin { file, arc, tangle, format } => {
            let [a1, a2] = arc.as_slice() else {
                return Err(CliError::Usage("--arc must be given exactly twice".into()));
            };
            let t = match tangle {
                Some(p) => Tangle::from_json(&read(p)?).map_err(|source| CliError::Parse { path: p.clone(), source })?,
                None => kt_tangle(),
            };
            text = emit_pd(&tangle_replace(&load(file)?, *a1, *a2, &t)?, *format);
            EXIT_OK
        }
        Command::Satellite { file, pattern, format } => {
            let p = match pattern {
                Some(p) => {
                    AnnularPattern::from_json(&read(p)?).map_err(|source| CliError::Parse { path: p.clone(), source })?
                }
                None => livingston_pattern(),
            };
            text = emit_pd(&satellite(&load(file)?, &p)?, *format);
            EXIT_OK
        }
        Command::Alexander { file, family: None, laurent, .. } => {
            let a = alexander(&load(file)?)?;
            text = if *laurent { format!("{}\n", a.centred().display_in("t")) } else { a.coefficient_string() + "\n" };
            EXIT_OK
        }
        Command::Alexander { file, family: Some(j0), n, .. } => {
            let report = check_family(&load(file)?, &load(j0)?, n.unwrap_or(0))?;
            text.push_str("n crossings direct predicted\n");
            for r in &report.rows {
                let mark = if r.matches() { "ok" } else { "MISMATCH" };
                text.push_str(&format!(
                    "{} {} [{}] [{}] {mark}\n",
                    r.n,
                    r.crossings,
                    r.direct.coefficient_string(),
                    r.predicted.coefficient_string()
                ));
            }
            if !report.distinct {
                text.push_str("members are not pairwise distinct\n");
            }
            text.push_str(if report.passed() { "PASS\n" } else { "FAIL\n" });
            if report.passed() { EXIT_OK } else { EXIT_CHECK_FAILED }
        }
    };
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io { path: "<stdout>".into(), source })?;
    Ok(code)
}

fn dump(d: &LinkDiagram, cap: usize, path: &Path) -> Result<(), CliError> {
    let space = StateSpace::new(d, cap).map_err(|e: StateError| CliError::Kh(e.into()))?;
    let io = |source| CliError::Io { path: path.into(), source };
    let mut f = std::io::BufWriter::new(fs::File::create(path).map_err(io)?);
    for b in space.quantum_gradings() {
        build_complex(&space, b).write_triplets(&mut f).map_err(io)?;
    }
    f.flush().map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("khtor").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn data(name: &str) -> String {
        format!("{}/data/knots/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    #[test]
    fn kh_unknot() {
        let (code, out, _) = call(&["kh", "--ring", "Z", &data("unknot.pd")]);
        assert_eq!(code, 0);
        assert_eq!(out, "j\\i  0\n  1  1\n -1  1\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["kh", "missing.pd"]).0, EXIT_INPUT);
        assert_eq!(call(&["kh", "--ring", "F4", &data("unknot.pd")]).0, EXIT_INPUT);
        assert_eq!(call(&["kh", "--cap", "2", &data("3_1_left.pd")]).0, EXIT_CAP);
        assert_eq!(call(&["summand", &data("3_1_left.pd"), &data("4_1.pd")]).0, EXIT_CHECK_FAILED);
        assert_eq!(call(&["ktjoin", &data("3_1_left.pd"), "--arc", "1"]).0, EXIT_INPUT);
    }

    #[test]
    fn alexander_outputs() {
        assert_eq!(call(&["alexander", &data("unknot.pd")]).1, "1\n");
        assert_eq!(call(&["alexander", &data("6_1.pd")]).1, "2 -5 2\n");
        assert_eq!(call(&["alexander", "--laurent", &data("6_1.pd")]).1, "-2t^-1 + 5 - 2t\n");
        let (code, out, _) =
            call(&["alexander", &data("3_1_left.pd"), "--family", &data("6_1.pd"), "--n", "2"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.ends_with("PASS\n"));
    }

    #[test]
    fn constructions_round_trip() {
        let (code, out, _) = call(&["consum", &data("3_1_left.pd"), &data("6_1.pd")]);
        assert_eq!(code, 0);
        assert_eq!(parse_pd(&out).unwrap().crossing_count(), 9);
        let (code, out, _) = call(&["consum", "--format", "json", &data("3_1_left.pd"), &data("6_1.pd")]);
        assert_eq!(code, 0);
        assert!(parse_pd(&out).is_ok());
    }
}
