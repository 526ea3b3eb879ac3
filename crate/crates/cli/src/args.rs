use std::path::PathBuf;

use catenoid::tables::TableFormat;
use catenoid::{CausalCharacter, Cell, ProfileFamily, RotationClass};
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "catenoid",
    version,
    about = "Count, mesh and verify Lorentzian catenoids spanning two coaxial circles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TolArgs {
    /// Residual bound for certification and `verify`.
    #[arg(long = "residual-tol", visible_alias = "tol", global = true, default_value_t = 1e-9)]
    pub residual_tol: f64,
    /// Boundary interpolation bound for certification.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub deviation_tol: f64,
    /// Largest grid step of the root scans.
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub root_step: f64,
    /// Also enumerate the `cos(ah) = -a`, `sin(ah) = -a` branches and every
    /// spacelike elliptic solution.
    #[arg(long, global = true)]
    pub all_sign_branches: bool,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    /// JSON pair descriptor (`-` reads standard input).
    #[arg(long, conflicts_with_all = ["circle1", "circle2"])]
    pub pair: Option<PathBuf>,
    #[arg(long, value_parser = parse_class)]
    pub class: Option<RotationClass>,
    /// First circle as `key=value` pairs, e.g. `z=-10,r=1`.
    #[arg(long, allow_hyphen_values = true)]
    pub circle1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub circle2: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Option<ProfileFamily>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub b: f64,
    /// Causal character; inferred from class and family when omitted.
    #[arg(long, value_parser = parse_causal)]
    pub causal: Option<CausalCharacter>,
    /// Use `-sinh(as + b)/a`.
    #[arg(long)]
    pub negated: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the catenoids spanning a pair, cell by cell (JSON).
    Count {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        cell: Option<Cell>,
    },
    /// Print the critical constants with their residuals (JSON).
    Constants,
    /// Tabulate N(h) for equal circles at distance 2h.
    Sweep {
        #[arg(long)]
        cell: Cell,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        h_lo: f64,
        #[arg(long)]
        h_hi: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        /// Table format; defaults to JSON for a `.json` path, CSV otherwise.
        #[arg(long)]
        format: Option<TableFormat>,
    },
    /// Write one OBJ per catenoid of a pair, or of an explicit profile.
    Mesh {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long)]
        cell: Option<Cell>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 41)]
        n_s: usize,
        #[arg(long, default_value_t = 41)]
        n_t: usize,
        /// `lo,hi`
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        s_range: Option<(f64, f64)>,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        t_range: Option<(f64, f64)>,
    },
    /// Sample the mean curvature residual of a rotational surface (JSON).
    Verify {
        #[arg(long, value_parser = parse_class, required_unless_present = "obj")]
        class: Option<RotationClass>,
        #[command(flatten)]
        profile: ProfileArgs,
        /// Check the catenoid recorded in an OBJ written by `mesh`.
        #[arg(long, conflicts_with_all = ["class", "family"])]
        obj: Option<PathBuf>,
        #[arg(long, default_value_t = 24)]
        n: usize,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        s_range: Option<(f64, f64)>,
        #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
        t_range: Option<(f64, f64)>,
    },
}

fn squash(s: &str) -> String {
    s.chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_lowercase()
}

pub fn parse_class(s: &str) -> Result<RotationClass, String> {
    match squash(s).as_str() {
        "elliptic" => Ok(RotationClass::Elliptic),
        "hyperbolici" | "hi" => Ok(RotationClass::HyperbolicI),
        "hyperbolicii" | "hii" => Ok(RotationClass::HyperbolicII),
        "parabolic" => Ok(RotationClass::Parabolic),
        _ => Err(format!(
            "unknown rotation class `{s}` (expected elliptic, hyperbolic_i, hyperbolic_ii or parabolic)"
        )),
    }
}

pub fn parse_causal(s: &str) -> Result<CausalCharacter, String> {
    match squash(s).as_str() {
        "spacelike" => Ok(CausalCharacter::Spacelike),
        "timelike" => Ok(CausalCharacter::Timelike),
        "lightlike" => Ok(CausalCharacter::Lightlike),
        _ => Err(format!("unknown causal character `{s}`")),
    }
}

pub fn parse_family(s: &str) -> Result<ProfileFamily, String> {
    match squash(s).as_str() {
        "sinhovera" | "sinh" => Ok(ProfileFamily::SinhOverA),
        "sinovera" | "sin" => Ok(ProfileFamily::SinOverA),
        "coshovera" | "cosh" => Ok(ProfileFamily::CoshOverA),
        "cubicplus" => Ok(ProfileFamily::CubicPlus),
        "cubicminus" => Ok(ProfileFamily::CubicMinus),
        _ => Err(format!(
            "unknown profile family `{s}` (expected sinh_over_a, sin_over_a, cosh_over_a, cubic_plus or cubic_minus)"
        )),
    }
}

pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `lo,hi`, got `{s}`"))?;
    let num = |v: &str| v.trim().parse::<f64>().map_err(|_| format!("`{v}` is not a number"));
    Ok((num(lo)?, num(hi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn enum_spellings() {
        assert_eq!(parse_class("HyperbolicII").unwrap(), RotationClass::HyperbolicII);
        assert_eq!(parse_family("SinhOverA").unwrap(), ProfileFamily::SinhOverA);
        assert_eq!(parse_range("-1.5, 2").unwrap(), (-1.5, 2.0));
        assert!(parse_causal("null").is_err());
    }
}
