//! Batch front end for the `catenoid` library: `count`, `constants`,
//! `sweep`, `mesh` and `verify`.
//!
//! Exit codes: 0 when a result was computed (a count of zero included),
//! 1 for runtime or I/O failures and failed verification, 2 for input and
//! usage errors.

pub mod args;
pub mod commands;
pub mod descriptor;
pub mod error;

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use catenoid::geometry::catenoid_family;
use catenoid::tables::{to_json, TableFormat};
use catenoid::{BoundaryPair, CatenoidSpec, Cell, CountOptions, ProfileCurve, RotationClass};
use serde::Serialize;

pub use args::{Cli, Command};
pub use commands::*;
pub use descriptor::{parse_descriptor, CircleFields, PairDescriptor};
pub use error::CliError;

use args::{PairArgs, ProfileArgs, TolArgs};

impl From<&TolArgs> for RunConfig {
    fn from(t: &TolArgs) -> Self {
        let mut count = CountOptions {
            all_sign_branches: t.all_sign_branches,
            ..CountOptions::default()
        };
        count.roots.step = t.root_step;
        Self {
            residual_tol: t.residual_tol,
            deviation_tol: t.deviation_tol,
            count,
            ..RunConfig::default()
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

impl PairArgs {
    fn is_given(&self) -> bool {
        self.pair.is_some() || self.circle1.is_some() || self.circle2.is_some()
    }

    /// Compiles the flag form into a descriptor, or reads the JSON file.
    pub fn resolve(&self) -> Result<BoundaryPair, CliError> {
        if let Some(path) = &self.pair {
            let pair = parse_descriptor(&read_input(path)?)?;
            if self.class.is_some_and(|c| c != pair.class()) {
                return Err(CliError::Usage(format!(
                    "--class disagrees with the {} pair in {}",
                    pair.class(),
                    path.display()
                )));
            }
            return Ok(pair);
        }
        let (Some(c1), Some(c2)) = (&self.circle1, &self.circle2) else {
            return Err(CliError::Usage(
                "give --pair FILE, or --class with --circle1 and --circle2".into(),
            ));
        };
        PairDescriptor {
            class: self.class,
            circle1: CircleFields::parse_flag(c1, "circle1")?,
            circle2: CircleFields::parse_flag(c2, "circle2")?,
        }
        .to_pair()
    }
}

impl ProfileArgs {
    fn profile(&self) -> Result<ProfileCurve, CliError> {
        let family = self
            .family
            .ok_or_else(|| CliError::Usage("--family is required".into()))?;
        let a = self.a.ok_or_else(|| CliError::Usage("--a is required".into()))?;
        let mut p = ProfileCurve::new(family, a, self.b).map_err(|e| CliError::Input {
            path: "profile".into(),
            message: e.to_string(),
        })?;
        if self.negated {
            p = p.negate();
        }
        Ok(p)
    }

    /// A catenoid of `class` with this profile; the causal character is
    /// the one whose catenoid family matches when not given.
    fn catenoid(&self, class: RotationClass) -> Result<CatenoidSpec, CliError> {
        let profile = self.profile()?;
        let causal = match self.causal {
            Some(c) => c,
            None => Cell::ALL
                .into_iter()
                .find(|c| c.class() == class && catenoid_family(class, c.causal()) == Some(profile.family))
                .map(Cell::causal)
                .ok_or_else(|| {
                    CliError::Inadmissible(format!("{} profiles generate no {class} catenoid", profile.family))
                })?,
        };
        if catenoid_family(class, causal).is_none() {
            return Err(CliError::Inadmissible(format!(
                "({class}, {causal}) contains no catenoid"
            )));
        }
        CatenoidSpec::new(class, causal, profile).map_err(|e| CliError::Input {
            path: "family".into(),
            message: e.to_string(),
        })
    }
}

fn emit<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), CliError> {
    let text = to_json(value)?;
    write_out(out, &text)
}

fn write_out(out: &mut impl Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

/// Runs one command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut impl Write) -> Result<Verdict, CliError> {
    let cfg = RunConfig::from(&cli.tol);
    match &cli.command {
        Command::Count { pair, cell } => {
            let report = cmd_count(&pair.resolve()?, *cell, &cfg)?;
            emit(out, &report)?;
        }
        Command::Constants => emit(out, &cmd_constants(&cfg)?)?,
        Command::Sweep {
            cell,
            r,
            h_lo,
            h_hi,
            steps,
            out: path,
            format,
        } => {
            let format = format.unwrap_or(match path.extension().and_then(|e| e.to_str()) {
                Some(e) if e.eq_ignore_ascii_case("json") => TableFormat::Json,
                _ => TableFormat::Csv,
            });
            let req = SweepRequest {
                cell: *cell,
                r: *r,
                h_lo: *h_lo,
                h_hi: *h_hi,
                steps: *steps,
            };
            let s = cmd_sweep(&req, path, format, &cfg)?;
            write_out(
                out,
                &format!(
                    "wrote {} rows to {}: N {} -> {}, non-decreasing: {}\n",
                    s.rows,
                    s.path.display(),
                    s.first,
                    s.last,
                    if s.non_decreasing { "yes" } else { "no" }
                ),
            )?;
        }
        Command::Mesh {
            pair,
            profile,
            cell,
            out: dir,
            n_s,
            n_t,
            s_range,
            t_range,
        } => {
            let src = if profile.family.is_some() {
                if pair.is_given() {
                    return Err(CliError::Usage(
                        "give either a pair or an explicit --family profile, not both".into(),
                    ));
                }
                let class = pair
                    .class
                    .ok_or_else(|| CliError::Usage("--class is required with --family".into()))?;
                MeshSource::Spec(profile.catenoid(class)?)
            } else {
                MeshSource::Pair {
                    pair: pair.resolve()?,
                    cell: *cell,
                }
            };
            let opts = MeshOptions {
                n_s: *n_s,
                n_t: *n_t,
                s_range: *s_range,
                t_range: *t_range,
            };
            let files = cmd_mesh(&src, &opts, dir, &cfg)?;
            if files.is_empty() {
                write_out(out, "no catenoid spans the given circles; nothing written\n")?;
            }
            for f in &files {
                write_out(
                    out,
                    &format!("{}\tmax_residual={:.3e}\n", f.path.display(), f.max_residual),
                )?;
            }
        }
        Command::Verify {
            class,
            profile,
            obj,
            n,
            s_range,
            t_range,
        } => {
            let (mut req, recorded) = match (obj, class) {
                (Some(path), _) => VerifyRequest::from_obj(path)?,
                (None, Some(class)) => {
                    let p = profile.profile()?;
                    let causal = profile
                        .causal
                        .ok_or_else(|| CliError::Usage("--causal is required with --class".into()))?;
                    (VerifyRequest::new(*class, causal, p), None)
                }
                (None, None) => return Err(CliError::Usage("give --class or --obj".into())),
            };
            req.n = *n;
            if let Some(r) = s_range {
                req.s_range = *r;
            }
            req.t_range = *t_range;
            let report = cmd_verify(&req, recorded, &cfg)?;
            emit(out, &report)?;
            return Ok(report.verdict);
        }
    }
    Ok(Verdict::Pass)
}
