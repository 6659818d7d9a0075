mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dnzeta::report::{Check, Report};
use dnzeta::symbolcas::ConnectionMode;
use dnzeta::geom::GeometrySpec;
use dnzeta::Error;

#[derive(Parser, Debug)]
#[command(name = "dnzeta", version, about = "Dirichlet-to-Neumann zeta determinants: derivations and checks")]
struct Cli {
    /// Print the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Significant digits for numeric values in text output (at least 15).
    #[arg(long, global = true, env = "DNZETA_PRECISION", default_value_t = 30,
          value_parser = clap::value_parser!(u32).range(15..))]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Abstract,
    Concrete,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derive the constant density a0(y) and compare with the closed form.
    DeriveA0 {
        #[arg(long)]
        m: u8,
        #[arg(long)]
        q: u8,
        #[arg(long, value_enum, default_value_t = Mode::Concrete)]
        mode: Mode,
    },
    /// Derive the term table of the order -3 resolvent symbol in dimension 3.
    DeriveTerms {
        #[arg(long)]
        q: u8,
    },
    /// Check the product identities and the gluing identity on [0, a] x S^1(L).
    VerifyCylinder {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long = "L", default_value_t = commands::default_circle(), allow_negative_numbers = true)]
        l: f64,
        #[arg(long, default_value_t = 0)]
        q: u8,
    },
    /// Check zeta_Q(0) + l_q = 2[(zeta_abs(0) + l_q) - zeta_D(0)] on a cylinder.
    VerifyTheorem28 {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        a: f64,
        #[arg(long = "L", default_value_t = commands::default_circle(), allow_negative_numbers = true)]
        l: f64,
        #[arg(long, default_value_t = 0)]
        q: u8,
    },
    /// Evaluate a0 and zeta_Q(0) + l_q on a boundary geometry.
    GeomConstants {
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        file: Option<PathBuf>,
        /// unit-disk, unit-ball or cylinder(a,L)
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        q: u8,
    },
    /// Write a built-in geometry as JSON.
    GeomExport {
        #[arg(long)]
        builtin: String,
    },
    /// First conformal variation of ln(Det* Q / l(Y)) on the unit disk.
    ConformalCheck {
        /// Test functions F: 1, x1, r2 (default: all).
        #[arg(long = "f", value_delimiter = ',')]
        f: Vec<String>,
    },
    /// Cross-check the closed-form integral table and special values.
    SpecfunSelftest,
}

/// Distinct exit codes for each error class.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 3,
        Error::Schema(_) => 4,
        Error::Unsupported(_) => 5,
        Error::Invalid(_) => 6,
        _ => 7,
    }
}

fn code_name(e: &Error) -> &'static str {
    match e {
        Error::Io(_) => "io",
        Error::Schema(_) => "schema",
        Error::Unsupported(_) => "unsupported",
        Error::Invalid(_) => "invalid",
        Error::Pole(_) => "pole",
        Error::Divergent(_) => "divergent",
        Error::Unresolved(_) => "unresolved",
        Error::NoConvergence(_) => "no-convergence",
    }
}

fn number(x: f64, digits: u32) -> String {
    // binary64 carries at most 17 significant digits
    let d = digits.min(17) as usize;
    format!("{:.*e}", d - 1, x)
}

fn render_check(c: &Check, digits: u32) -> String {
    let mut s = format!("{}  {}", c.status.label(), c.quantity);
    if let Some(e) = &c.expression {
        s += &format!("\n      got:      {e}");
    }
    if let Some(e) = &c.expected_expression {
        s += &format!("\n      expected: {e}");
    }
    if let Some(v) = c.value {
        s += &format!("\n      value:    {}", number(v, digits));
    }
    if let Some(e) = c.expected {
        s += &format!("\n      expected: {}", number(e, digits));
        if let Some(v) = c.value {
            s += &format!("  |diff| {:.3e}", (v - e).abs());
        }
    }
    if let Some(t) = c.tolerance {
        s += &format!("  tol {t:.1e}");
    }
    if c.error_bound > 0.0 {
        s += &format!("  err {:.1e}", c.error_bound);
    }
    s += &format!("\n      [{}]", c.citation);
    s
}

fn render(r: &Report, digits: u32) -> String {
    let mut out = format!("{}\n", r.title);
    for c in &r.checks {
        out += &render_check(c, digits);
        out.push('\n');
    }
    let fails = r.checks.iter().filter(|c| !c.passed()).count();
    out += &format!("{} checks, {} failed\n", r.checks.len(), fails);
    out
}

fn run(cli: &Cli) -> dnzeta::Result<Option<Report>> {
    use Command::*;
    Ok(Some(match &cli.command {
        DeriveA0 { m, q, mode } => {
            let mode = match mode {
                Mode::Abstract => ConnectionMode::Abstract,
                Mode::Concrete => ConnectionMode::Concrete,
            };
            commands::derive_a0(*m, *q, mode)?
        }
        DeriveTerms { q } => commands::derive_terms(*q)?,
        VerifyCylinder { a, l, q } => commands::verify_cylinder(*a, *l, *q)?,
        VerifyTheorem28 { a, l, q } => commands::verify_zeta0(*a, *l, *q)?,
        GeomConstants { file, builtin, q } => {
            let g = commands::load_geometry(file.as_deref(), builtin.as_deref())?;
            commands::geom_constants(&g, *q)?
        }
        GeomExport { builtin } => {
            let g = GeometrySpec::builtin(builtin)?;
            let text = g.to_json();
            match &cli.output {
                Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
                None => println!("{text}"),
            }
            return Ok(None);
        }
        ConformalCheck { f } => {
            let fs: Vec<String> = if f.is_empty() {
                commands::CONFORMAL_FUNCTIONS.iter().map(|s| s.to_string()).collect()
            } else {
                f.clone()
            };
            commands::conformal_check(&fs)?
        }
        SpecfunSelftest => commands::specfun_selftest()?,
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(Some(r)) => r,
        Ok(None) => return ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", code_name(&e));
            return ExitCode::from(exit_code(&e));
        }
    };
    let json = serde_json::to_string_pretty(&report).expect("report serialises");
    if let Some(p) = &cli.output {
        if let Err(e) = std::fs::write(p, format!("{json}\n")) {
            let e = Error::Io(format!("{}: {e}", p.display()));
            eprintln!("error[{}]: {e}", code_name(&e));
            return ExitCode::from(exit_code(&e));
        }
    }
    if cli.json {
        println!("{json}");
    } else {
        print!("{}", render(&report, cli.precision));
    }
    ExitCode::from(status(&report))
}

/// 0 when every row passes, 1 otherwise.
fn status(r: &Report) -> u8 {
    u8::from(!r.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn any_failing_row_is_nonzero() {
        let pass = Check::new("x", 1.0, 1.0, 1e-12, 0.0, "");
        let fail = Check::new("y", 1.0, 2.0, 1e-12, 0.0, "");
        let mut r = Report { title: "t".into(), checks: vec![pass.clone()] };
        assert_eq!(status(&r), 0);
        r.checks.push(fail);
        assert_eq!(status(&r), 1);
        r.checks = vec![Check::computed("z", f64::INFINITY, 0.0, "")];
        assert_eq!(status(&r), 1);
        assert!(render(&r, 15).contains("FAIL  z"));
    }
}
