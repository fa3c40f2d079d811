//! Command-line front end.

use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::chambers::full_chamber_containing;
use crate::ehrhart::{reconstruct_minkowski, reconstruct_rhs, reconstruct_univariate, CoeffVector};
use crate::error::{Error, Result};
use crate::io::{
    chamber_to_json, coefficient_map_to_json, parse_hrep, parse_parts, parse_rationals, parse_vrep, quasi_poly_to_json,
    rats_to_strings, vrep_to_json,
};
use crate::lattice::{count_interior_with_budget, count_with_budget, reciprocity_check, DEFAULT_MAX_POINTS};
use crate::polytope::vertices;
use crate::ratmath::{format_rational, parse_rational, Rational};
use crate::verify;

#[derive(Parser, Debug)]
#[command(name = "ratehrhart", version, about = "Exact lattice-point counts and rational Ehrhart quasi-polynomials")]
struct Cli {
    /// Input JSON file, or `-` for stdin.
    #[arg(long, global = true, default_value = "-")]
    input: String,
    /// Output file, or `-` for stdout.
    #[arg(long, global = true, default_value = "-")]
    output: String,
    /// Largest bounding box (in candidate points) that will be enumerated.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_POINTS)]
    max_points: u64,
    /// Seed for the randomized checks of `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice points of an H-polytope `{"A", "b"}`.
    Count,
    /// Interior lattice points of an H-polytope.
    Interior,
    /// Vertices of an H-polytope.
    Vertices,
    /// Chamber of the right-hand side of an H-polytope.
    Chamber,
    /// Univariate quasi-polynomial of a V-polytope `{"vertices"}`.
    Ehrhart {
        /// Evaluate at this dilation factor.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
    /// Multivariate quasi-polynomial of `{"parts": [...]}`.
    MinkEhrhart {
        /// Evaluate at these comma-separated weights.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Option<Vec<String>>,
    },
    /// Right-hand-side quasi-polynomial of the chamber of `b`, evaluated at `b`.
    RhsEhrhart,
    /// Compares the formal value at `-b` with the interior count.
    Reciprocity,
    /// Runs the bundled golden checks.
    Verify,
}

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("reading {path}: {e}")))?;
    }
    Ok(text)
}

fn write_output(path: &str, text: &str) -> std::io::Result<()> {
    if path == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()
    } else {
        std::fs::write(path, text)
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn coeff_json(c: &CoeffVector) -> Value {
    coefficient_map_to_json(&c.values)
}

/// Returns the text to print and the exit code.
fn execute(cli: &Cli) -> Result<(String, i32)> {
    let input = || read_input(&cli.input);
    let out = match &cli.command {
        Command::Count => format!("{}\n", count_with_budget(&parse_hrep(&input()?)?, cli.max_points)?),
        Command::Interior => format!("{}\n", count_interior_with_budget(&parse_hrep(&input()?)?, cli.max_points)?),
        Command::Vertices => pretty(&vrep_to_json(&vertices(&parse_hrep(&input()?)?)?)),
        Command::Chamber => {
            let h = parse_hrep(&input()?)?;
            pretty(&chamber_to_json(&crate::chambers::chamber_of(h.a(), h.b())?)?)
        }
        Command::Ehrhart { at } => {
            let qp = reconstruct_univariate(&parse_vrep(&input()?)?)?;
            match at {
                None => pretty(&quasi_poly_to_json(&qp)),
                Some(t) => {
                    let t = vec![parse_rational(t)?];
                    let c = qp.coefficients(&t)?;
                    pretty(&json!({
                        "quasi_polynomial": quasi_poly_to_json(&qp),
                        "at": rats_to_strings(&t),
                        "coefficients": coeff_json(&c),
                        "value": format_rational(&c.evaluate(&t)),
                    }))
                }
            }
        }
        Command::MinkEhrhart { at } => {
            let qp = reconstruct_minkowski(&parse_parts(&input()?)?)?;
            match at {
                None => pretty(&quasi_poly_to_json(&qp)),
                Some(r) => {
                    let r = parse_rationals(r)?;
                    let c = qp.coefficients(&r)?;
                    pretty(&json!({
                        "quasi_polynomial": quasi_poly_to_json(&qp),
                        "at": rats_to_strings(&r),
                        "coefficients": coeff_json(&c),
                        "value": format_rational(&c.evaluate(&r)),
                    }))
                }
            }
        }
        Command::RhsEhrhart => {
            let h = parse_hrep(&input()?)?;
            let chamber = full_chamber_containing(h.a(), h.b())?;
            let qp = reconstruct_rhs(h.a(), &chamber)?;
            let phi: Rational = qp.evaluate(h.b())?;
            let ch = chamber_to_json(&chamber)?;
            pretty(&json!({
                "b": rats_to_strings(h.b()),
                "signature": ch["signature"],
                "chamber": ch,
                "generators": qp.generators.iter().map(|g| rats_to_strings(g)).collect::<Vec<_>>(),
                "periods": rats_to_strings(qp.periods()),
                "coefficients": coefficient_map_to_json(&qp.coefficients(h.b())?),
                "phi": format_rational(&phi),
            }))
        }
        Command::Reciprocity => {
            let r = reciprocity_check(&parse_hrep(&input()?)?)?;
            pretty(&json!({
                "reflected": format_rational(&r.reflected),
                "interior": r.interior,
                "sign": r.sign,
                "literal_reflected_count": r.literal_reflected_count,
                "full_dimensional": r.full_dimensional,
                "holds": r.holds(),
            }))
        }
        Command::Verify => {
            let report = verify::run(cli.seed)?;
            let code = if report.passed { 0 } else { 3 };
            return Ok((pretty(&serde_json::to_value(&report).expect("serializable")), code));
        }
    };
    Ok((out, 0))
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((text, code)) => {
            if let Err(e) = write_output(&cli.output, &text) {
                eprintln!("error: writing {}: {e}", cli.output);
                return 1;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_exit_two() {
        assert_eq!(run(["ratehrhart", "no-such-command"]), 2);
        assert_eq!(run(["ratehrhart", "count", "--max-points", "x"]), 2);
    }

    #[test]
    fn missing_file_is_malformed_input() {
        assert_eq!(run(["ratehrhart", "count", "--input", "/nonexistent/file.json"]), 2);
    }
}
