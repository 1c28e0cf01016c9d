//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or schema error, 2 violated mathematical
//! precondition, 3 verification failed.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::Error;
use crate::io::{FileError, InstanceFile, PencilFile, ResultFile};
use crate::oracle::{self, EigenvaluePick, GeneratorConfig};
use crate::pencil::Pencil;
use crate::recurrence::{self, Side};
use crate::resolvent::{self, ComponentsAt, MFunctionTable};
use crate::{giep, io};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tripencil",
    version,
    about = "Tridiagonal pencil recurrences and inverse eigenvalue reconstruction"
)]
pub struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Pick {
    Extreme,
    RandomPair,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Recurrence values, convergents, m-values and components at a point.
    Direct {
        pencil: PathBuf,
        /// Evaluation point, `RE` or `RE,IM`.
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_complex)]
        at: Complex64,
        /// Print every index instead of only the top one.
        #[arg(long)]
        all: bool,
        /// Also print the eigenvalues of the pencil.
        #[arg(long)]
        spectrum: bool,
    },
    /// Reconstruct the trailing entries of H from an instance file.
    Solve {
        instance: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// m-function table, resolvent factors and trailing inverse at a point.
    Mfun {
        pencil: PathBuf,
        /// Resolvent point `RE,IM`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        omega: Complex64,
        #[arg(long)]
        k: usize,
        /// Also recover the trailing entries from the m-function data.
        #[arg(long)]
        reconstruct: bool,
    },
    /// Draw a random truth pencil and matching instance.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.1)]
        min_im_ratio: f64,
        #[arg(long, value_enum, default_value_t = Pick::Extreme)]
        pick: Pick,
        /// Draw b_j purely imaginary for j >= k.
        #[arg(long)]
        imaginary_tail: bool,
        /// Do not force J to be positive definite.
        #[arg(long)]
        indefinite: bool,
        /// Output directory for truth.json and instance.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare a result with the truth.
    Verify {
        #[arg(long)]
        truth: PathBuf,
        #[arg(long)]
        result: PathBuf,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("'{t}': {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected RE or RE,IM, got '{s}'")),
    }
}

enum Failure {
    File(FileError),
    Math(Error),
    Output(std::io::Error),
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        Failure::File(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Output(e)
    }
}

/// Short statement of the hypothesis behind a precondition error.
fn hypothesis(e: &Error) -> Option<&'static str> {
    Some(match e {
        Error::SingularDelta { .. } => {
            "the 2x2 system for (b_j, conj b_j) is solvable only when Delta_j != 0, i.e. the pole alpha_j = b_j/d_j is non-real"
        }
        Error::HermitianInconsistent { .. } => {
            "the two unknowns of each 2x2 system must be complex conjugates for H to be Hermitian"
        }
        Error::SpectrumCollision { .. } => {
            "lambda and mu must avoid the spectra of the leading pencils of orders k and k+1"
        }
        Error::PoleCollision { .. } => "the evaluation point must avoid the poles b_j/d_j",
        Error::NonRealDiagonal { .. } => "a Hermitian H has a real diagonal",
        Error::VanishingComponent { .. } => "eigenvector components used as divisors must be nonzero",
        Error::DegenerateDifference { .. } => "consecutive m-function values must differ",
        Error::DegreeDrop { .. } => "the leading coefficients of the minors must not vanish",
        _ => return None,
    })
}

fn c2j(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn cvec(v: &[Complex64]) -> Value {
    Value::Array(v.iter().copied().map(c2j).collect())
}

fn fmt_c(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:.15e}", z.re)
    } else {
        format!(
            "{:.15e} {} {:.15e}i",
            z.re,
            if z.im < 0.0 { '-' } else { '+' },
            z.im.abs()
        )
    }
}

fn emit(out: &mut dyn Write, value: &Value) -> std::io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("values are finite or null")
    )
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_IO } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(&cli, out, err) {
        Ok(code) => code,
        Err(Failure::File(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_IO
        }
        Err(Failure::Output(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_IO
        }
        Err(Failure::Math(e)) => {
            let _ = writeln!(err, "error: {e}");
            if let Some(h) = hypothesis(&e) {
                let _ = writeln!(err, "hypothesis: {h}");
            }
            if e.is_precondition() {
                EXIT_PRECONDITION
            } else {
                EXIT_IO
            }
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match &cli.command {
        Command::Direct {
            pencil,
            at,
            all,
            spectrum,
        } => {
            let p = PencilFile::load(pencil)?;
            direct(&p, *at, *all, *spectrum, cli.json, out)
        }
        Command::Solve { instance, out: target } => {
            let inst = InstanceFile::load(instance)?;
            for j in inst.real_pole_indices() {
                writeln!(err, "warning: pole alpha_{j} is real; expect Delta_{j} to vanish")?;
            }
            let result = giep::solve(&inst)?;
            let file = ResultFile::from(&result);
            if let Some(path) = target {
                io::write_json(path, &file)?;
            }
            if cli.json {
                emit(out, &serde_json::to_value(&file).expect("serializable"))?;
            } else {
                let p = &result.pencil;
                for e in &result.b_entries {
                    writeln!(out, "b_{} = {}", e.j, fmt_c(e.value))?;
                }
                for i in result.k + 1..=p.n() {
                    writeln!(out, "a_{i} = {:.15e}", p.a()[i])?;
                }
                writeln!(out, "residual_lambda = {:.3e}", result.residual_lambda)?;
                writeln!(out, "residual_mu = {:.3e}", result.residual_mu)?;
                for e in &result.b_entries {
                    writeln!(out, "|Delta_{}| = {:.3e}", e.j, e.delta.norm())?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Mfun {
            pencil,
            omega,
            k,
            reconstruct,
        } => {
            let p = PencilFile::load(pencil)?;
            mfun(&p, *omega, *k, *reconstruct, cli.json, out)
        }
        Command::Generate {
            n,
            k,
            seed,
            min_im_ratio,
            pick,
            imaginary_tail,
            indefinite,
            out: dir,
        } => {
            let config = GeneratorConfig {
                n: *n,
                k: *k,
                seed: *seed,
                min_im_ratio: *min_im_ratio,
                ensure_pd_j: !indefinite,
                eigenvalue_pick: match pick {
                    Pick::Extreme => EigenvaluePick::Extreme,
                    Pick::RandomPair => EigenvaluePick::RandomPair,
                },
                imaginary_tail: *imaginary_tail,
            };
            let g = match oracle::generate_instance(&config) {
                Ok(g) => g,
                Err(e @ Error::InvalidInput { .. }) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(EXIT_IO);
                }
                Err(e) => return Err(e.into()),
            };
            std::fs::create_dir_all(dir).map_err(|source| FileError::Io {
                path: dir.clone(),
                source,
            })?;
            let truth = dir.join("truth.json");
            let instance = dir.join("instance.json");
            io::write_json(&truth, &PencilFile::from(&g.truth))?;
            io::write_json(&instance, &InstanceFile::from(&g.instance))?;
            if cli.json {
                emit(
                    out,
                    &json!({"truth": truth, "instance": instance, "attempt": g.attempt,
                            "lambda": g.instance.lambda, "mu": g.instance.mu}),
                )?;
            } else {
                writeln!(out, "wrote {} and {}", truth.display(), instance.display())?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { truth, result } => {
            let t = PencilFile::load(truth)?;
            let r = ResultFile::load(result)?;
            let report = oracle::verify(&t, &r)?;
            // the report is always JSON
            emit(out, &serde_json::to_value(&report).expect("serializable"))?;
            Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY })
        }
    }
}

fn direct(
    p: &Pencil,
    z: Complex64,
    all: bool,
    spectrum: bool,
    as_json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let n = p.n();
    let pv = recurrence::p_values(p, z);
    let qv = recurrence::q_values(p, z);
    let s: Vec<Option<Complex64>> = (1..=n + 1).map(|m| recurrence::convergent_s(p, m, z).ok()).collect();
    let right = recurrence::recurrence_components(p, z, Side::Right).ok();
    let left = recurrence::recurrence_components(p, z, Side::Left).ok();
    let eig = if spectrum {
        Some(oracle::pencil_eigenvalues(p)?)
    } else {
        None
    };
    let range = if all { 0..n + 2 } else { n + 1..n + 2 };

    if as_json {
        let opt = |v: Option<Complex64>| v.map(c2j).unwrap_or(Value::Null);
        let mut doc = json!({
            "at": c2j(z),
            "n": n,
            "P": range.clone().map(|m| json!({"m": m, "value": c2j(pv[m])})).collect::<Vec<_>>(),
            "Q": range.clone().map(|m| json!({"m": m, "value": c2j(qv[m])})).collect::<Vec<_>>(),
            "S": range.clone().filter(|&m| m >= 1).map(|m| json!({"m": m, "value": opt(s[m - 1])})).collect::<Vec<_>>(),
            "m": range.clone().map(|m| json!({"m": m, "value": if m == 0 { c2j(Complex64::new(0.0, 0.0)) } else { opt(s[m - 1]) }})).collect::<Vec<_>>(),
            "right_components": right.as_deref().map(cvec).unwrap_or(Value::Null),
            "left_components": left.as_deref().map(cvec).unwrap_or(Value::Null),
        });
        if let Some(e) = &eig {
            doc["spectrum"] = cvec(e);
        }
        emit(out, &doc)?;
    } else {
        for m in range {
            writeln!(out, "P_{m} = {}", fmt_c(pv[m]))?;
            writeln!(out, "Q_{m} = {}", fmt_c(qv[m]))?;
            if m >= 1 {
                match s[m - 1] {
                    Some(v) => writeln!(out, "S_{m} = {}", fmt_c(v))?,
                    None => writeln!(
                        out,
                        "S_{m} undefined (point in the spectrum of the leading pencil of order {m})"
                    )?,
                }
            }
        }
        match &right {
            Some(r) => {
                for (i, v) in r.iter().enumerate() {
                    writeln!(out, "p^R_{i} = {}", fmt_c(*v))?;
                }
            }
            None => writeln!(out, "components undefined (point is a pole)")?,
        }
        if let Some(l) = &left {
            for (i, v) in l.iter().enumerate() {
                writeln!(out, "p^L_{i} = {}", fmt_c(*v))?;
            }
        }
        if let Some(e) = &eig {
            for (i, v) in e.iter().enumerate() {
                writeln!(out, "eigenvalue_{i} = {}", fmt_c(*v))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn mfun(
    p: &Pencil,
    omega: Complex64,
    k: usize,
    reconstruct: bool,
    as_json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let table = MFunctionTable::new(p, omega)?;
    let factors = resolvent::ldu_factors(p, omega)?;
    let trailing = resolvent::trailing_inverse(p, k, omega)?;
    let entries = if reconstruct {
        let comps = ComponentsAt::new(p, omega)?;
        Some(resolvent::reconstruct_from_m(
            p.j(),
            k,
            omega,
            &table,
            &comps,
            p.b()[k],
        )?)
    } else {
        None
    };
    let rows = |m: &crate::dense::DenseMatrix| (0..m.rows()).map(|i| cvec(m.row(i))).collect::<Vec<_>>();
    if as_json {
        let mut doc = json!({
            "omega": c2j(omega),
            "k": k,
            "m": cvec(&table.values),
            "D": cvec(&factors.diag),
            "U": rows(&factors.upper),
            "L": rows(&factors.lower),
            "trailing_inverse": rows(&trailing),
        });
        if let Some(e) = &entries {
            doc["reconstruct"] = json!({"b": cvec(&e.b), "a": e.a});
        }
        emit(out, &doc)?;
    } else {
        for (j, v) in table.values.iter().enumerate() {
            writeln!(out, "m_{j} = {}", fmt_c(*v))?;
        }
        for (j, v) in factors.diag.iter().enumerate() {
            writeln!(out, "D_{j} = {}", fmt_c(*v))?;
        }
        writeln!(out, "trailing inverse (indices {}..={}):", k + 1, p.n())?;
        for i in 0..trailing.rows() {
            let row: Vec<String> = trailing.row(i).iter().map(|z| fmt_c(*z)).collect();
            writeln!(out, "  [{}]", row.join(", "))?;
        }
        if let Some(e) = &entries {
            for (i, v) in e.b.iter().enumerate() {
                writeln!(out, "b_{} = {}", k + 1 + i, fmt_c(*v))?;
            }
            for (i, v) in e.a.iter().enumerate() {
                writeln!(out, "a_{} = {:.15e}", k + 1 + i, v)?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_arguments() {
        assert_eq!(parse_complex("2.0").unwrap(), Complex64::new(2.0, 0.0));
        assert_eq!(parse_complex("-1.5, 0.25").unwrap(), Complex64::new(-1.5, 0.25));
        assert!(parse_complex("1,2,3").is_err());
        assert!(parse_complex("x").is_err());
    }

    #[test]
    fn help_exits_zero_and_bad_usage_one() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["tripencil", "--help"], &mut o, &mut e), EXIT_OK);
        assert!(String::from_utf8(o).unwrap().contains("solve"));
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["tripencil", "frobnicate"], &mut o, &mut e), EXIT_IO);
    }
}
