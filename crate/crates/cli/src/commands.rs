//! The five batch commands. Each returns a serializable report; printing
//! is left to the caller.

use std::fs;
use std::path::{Path, PathBuf};

use catenoid::counting::{certify, CellReport, CellStatus, Certificate, DEDUPE_TOL};
use catenoid::geometry::{
    catenoid_family, fundamental_forms, surface_causal_character, DEGENERATE_TOL, LIGHTLIKE_TOL, SINGULAR_EXCLUSION,
};
use catenoid::mesh::{export_obj, read_obj, tessellate, SINGULAR_MARGIN};
use catenoid::tables::{export_table, Table, TableFormat};
use catenoid::{
    count_all, critical_constants, sweep_n, BoundaryPair, CatenoidSpec, CausalCharacter, Cell, CountOptions,
    CriticalConstants, ProfileCurve, RotationClass, Subfamily,
};
use serde::{Deserialize, Serialize};

use crate::descriptor::PairDescriptor;
use crate::error::CliError;

/// Every tolerance in effect for a run, echoed into JSON output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub residual_tol: f64,
    pub deviation_tol: f64,
    pub lightlike_tol: f64,
    pub degenerate_tol: f64,
    pub singular_exclusion: f64,
    pub singular_margin: f64,
    pub dedupe_tol: f64,
    pub count: CountOptions,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            residual_tol: 1e-9,
            deviation_tol: 1e-8,
            lightlike_tol: LIGHTLIKE_TOL,
            degenerate_tol: DEGENERATE_TOL,
            singular_exclusion: SINGULAR_EXCLUSION,
            singular_margin: SINGULAR_MARGIN,
            dedupe_tol: DEDUPE_TOL,
            count: CountOptions::default(),
        }
    }
}

/// Default `t` window per rotation class.
pub fn default_t_range(class: RotationClass) -> (f64, f64) {
    match class {
        RotationClass::Elliptic => (0.0, std::f64::consts::TAU),
        RotationClass::HyperbolicI | RotationClass::HyperbolicII => (-1.5, 1.5),
        RotationClass::Parabolic => (-2.0, 2.0),
    }
}

fn pair_s_range(pair: &BoundaryPair) -> (f64, f64) {
    let (s1, s2) = (pair.circle1.profile_abscissa(), pair.circle2.profile_abscissa());
    (s1.min(s2), s1.max(s2))
}

// ---------------------------------------------------------------- count ---

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellOutput {
    #[serde(flatten)]
    pub report: CellReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub config: RunConfig,
    pub pair: PairDescriptor,
    pub cells: Vec<CellOutput>,
}

fn check_cell(pair: &BoundaryPair, cell: Option<Cell>) -> Result<(), CliError> {
    match cell {
        Some(c) if c.class() != pair.class() => Err(CliError::Usage(format!(
            "cell {c} is not a cell of {} pairs",
            pair.class()
        ))),
        _ => Ok(()),
    }
}

pub fn cmd_count(pair: &BoundaryPair, cell: Option<Cell>, cfg: &RunConfig) -> Result<CountReport, CliError> {
    check_cell(pair, cell)?;
    let table = count_all(pair, &cfg.count)?;
    let cells = table
        .cells
        .into_iter()
        .filter(|r| cell.is_none() || r.cell == cell)
        .map(|report| {
            let certificates = report
                .set
                .iter()
                .flat_map(|s| s.catenoids())
                .map(|c| certify(c, pair))
                .collect::<Result<_, _>>()?;
            Ok(CellOutput { report, certificates })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(CountReport {
        config: *cfg,
        pair: PairDescriptor::from_pair(pair),
        cells,
    })
}

// ------------------------------------------------------------ constants ---

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantsReport {
    pub config: RunConfig,
    #[serde(flatten)]
    pub constants: CriticalConstants,
}

pub fn cmd_constants(cfg: &RunConfig) -> Result<ConstantsReport, CliError> {
    Ok(ConstantsReport {
        config: *cfg,
        constants: critical_constants()?,
    })
}

// ---------------------------------------------------------------- sweep ---

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRequest {
    pub cell: Cell,
    pub r: f64,
    pub h_lo: f64,
    pub h_hi: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub path: PathBuf,
    pub rows: usize,
    pub first: usize,
    pub last: usize,
    pub non_decreasing: bool,
}

pub fn cmd_sweep(
    req: &SweepRequest,
    out: &Path,
    format: TableFormat,
    cfg: &RunConfig,
) -> Result<SweepSummary, CliError> {
    if !matches!(req.cell, Cell::TE | Cell::HIIs) {
        return Err(CliError::Usage(format!(
            "sweep needs --cell TE or HIIs, got {}",
            req.cell
        )));
    }
    if req.steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be at least 2, got {}",
            req.steps
        )));
    }
    let rows = sweep_n(req.r, req.h_lo, req.h_hi, req.steps, req.cell, &cfg.count)?;
    export_table(Table::Sweep(&rows), out, format)?;
    Ok(SweepSummary {
        path: out.to_path_buf(),
        rows: rows.len(),
        first: rows.first().map_or(0, |r| r.deduped_count),
        last: rows.last().map_or(0, |r| r.deduped_count),
        non_decreasing: rows.windows(2).all(|w| w[1].deduped_count >= w[0].deduped_count),
    })
}

// ----------------------------------------------------------------- mesh ---

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeshSource {
    Pair { pair: BoundaryPair, cell: Option<Cell> },
    Spec(CatenoidSpec),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeshOptions {
    pub n_s: usize,
    pub n_t: usize,
    /// Defaults to the span between the two planes, or `[-1, 1]` for an
    /// explicit spec.
    pub s_range: Option<(f64, f64)>,
    pub t_range: Option<(f64, f64)>,
}

impl Default for MeshOptions {
    fn default() -> Self {
        Self {
            n_s: 41,
            n_t: 41,
            s_range: None,
            t_range: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeshFile {
    pub path: PathBuf,
    pub cell: Option<Cell>,
    pub subfamily: Option<Subfamily>,
    pub index: usize,
    pub vertices: usize,
    pub faces: usize,
    pub max_residual: f64,
}

fn file_stem(cell: Option<Cell>, spec: &CatenoidSpec, index: usize) -> String {
    let head = match cell {
        Some(c) => c.label().to_ascii_lowercase(),
        None => format!("{}_{}", spec.class, spec.profile.family),
    };
    match spec.subfamily {
        Some(sf) => format!("{head}_{}_{index}", sf.label().replace('-', "neg")),
        None => format!("{head}_{index}"),
    }
}

/// Cell, catenoid, index within the cell and `s` range of one OBJ.
type MeshJob = (Option<Cell>, CatenoidSpec, usize, (f64, f64));

/// Writes one OBJ per catenoid into `out_dir`. An empty result means no
/// catenoid spans the pair.
pub fn cmd_mesh(
    src: &MeshSource,
    opts: &MeshOptions,
    out_dir: &Path,
    cfg: &RunConfig,
) -> Result<Vec<MeshFile>, CliError> {
    let mut jobs: Vec<MeshJob> = Vec::new();
    match src {
        MeshSource::Pair { pair, cell } => {
            check_cell(pair, *cell)?;
            let table = count_all(pair, &cfg.count)?;
            let s_range = opts.s_range.unwrap_or_else(|| pair_s_range(pair));
            for report in table.cells.iter().filter(|r| r.status == CellStatus::Computed) {
                if cell.is_some() && report.cell != *cell {
                    continue;
                }
                if let Some(set) = &report.set {
                    jobs.extend(set.catenoids().enumerate().map(|(i, c)| (report.cell, *c, i, s_range)));
                }
            }
        }
        MeshSource::Spec(spec) => jobs.push((None, *spec, 0, opts.s_range.unwrap_or((-1.0, 1.0)))),
    }
    if jobs.is_empty() {
        return Ok(Vec::new());
    }
    fs::create_dir_all(out_dir).map_err(|source| CliError::Io {
        path: out_dir.to_path_buf(),
        source,
    })?;
    jobs.into_iter()
        .map(|(cell, spec, index, s_range)| {
            let t_range = opts.t_range.unwrap_or_else(|| default_t_range(spec.class));
            let mesh = tessellate(&spec, s_range, t_range, opts.n_s, opts.n_t)?;
            let path = out_dir.join(format!("{}.obj", file_stem(cell, &spec, index)));
            export_obj(&mesh, &path)?;
            Ok(MeshFile {
                path,
                cell,
                subfamily: spec.subfamily,
                index,
                vertices: mesh.vertices.len(),
                faces: mesh.faces.len(),
                max_residual: mesh.max_residual(),
            })
        })
        .collect()
}

// --------------------------------------------------------------- verify ---

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyRequest {
    pub class: RotationClass,
    pub causal: CausalCharacter,
    pub profile: ProfileCurve,
    pub s_range: (f64, f64),
    pub t_range: Option<(f64, f64)>,
    /// Grid points per direction.
    pub n: usize,
}

impl VerifyRequest {
    pub fn new(class: RotationClass, causal: CausalCharacter, profile: ProfileCurve) -> Self {
        Self {
            class,
            causal,
            profile,
            s_range: (-1.0, 1.0),
            t_range: None,
            n: 24,
        }
    }

    /// The request for the catenoid recorded in an OBJ header.
    pub fn from_obj(path: &Path) -> Result<(Self, Option<f64>), CliError> {
        let obj = read_obj(path)?;
        let spec = obj.catenoid.ok_or_else(|| CliError::Input {
            path: path.display().to_string(),
            message: "OBJ header carries no catenoid spec".into(),
        })?;
        Ok((Self::new(spec.class, spec.causal, spec.profile), obj.max_residual))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignSummary {
    pub spacelike: usize,
    pub timelike: usize,
    pub degenerate: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub config: RunConfig,
    pub class: RotationClass,
    pub causal: CausalCharacter,
    pub profile: ProfileCurve,
    pub s_range: (f64, f64),
    pub t_range: (f64, f64),
    pub samples: usize,
    pub skipped_singular: usize,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub discriminant_sign: SignSummary,
    pub sign_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recorded_max_residual: Option<f64>,
    pub verdict: Verdict,
}

/// Samples the residual on an `n × n` grid. Any profile family may be
/// checked against an admissible cell; only the cell itself is vetted.
pub fn cmd_verify(req: &VerifyRequest, recorded: Option<f64>, cfg: &RunConfig) -> Result<VerifyReport, CliError> {
    if catenoid_family(req.class, req.causal).is_none() {
        return Err(CliError::Inadmissible(format!(
            "({}, {}) contains no rotational zero mean curvature surface",
            req.class, req.causal
        )));
    }
    req.profile.validate().map_err(|e| CliError::Input {
        path: "profile".into(),
        message: e.to_string(),
    })?;
    if req.n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {}", req.n)));
    }
    let t_range = req.t_range.unwrap_or_else(|| default_t_range(req.class));
    let (mut samples, mut skipped, mut max_r, mut sum_r) = (0usize, 0usize, 0.0f64, 0.0f64);
    let mut signs = SignSummary::default();
    let at = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (req.n - 1) as f64;
    for i in 0..req.n {
        let s = at(req.s_range.0, req.s_range.1, i);
        if !req.profile.is_regular_at(s) {
            skipped += req.n;
            continue;
        }
        for j in 0..req.n {
            let ff = fundamental_forms(req.class, &req.profile, s, at(t_range.0, t_range.1, j));
            match surface_causal_character(&ff) {
                CausalCharacter::Spacelike => signs.spacelike += 1,
                CausalCharacter::Timelike => signs.timelike += 1,
                CausalCharacter::Lightlike => {
                    signs.degenerate += 1;
                    continue;
                }
            }
            let r = ff.normalized_residual().abs();
            samples += 1;
            max_r = max_r.max(r);
            sum_r += r;
        }
    }
    let sign_ok = samples > 0
        && match req.causal {
            CausalCharacter::Spacelike => signs.timelike == 0,
            _ => signs.spacelike == 0,
        };
    let recorded_ok = recorded.is_none_or(|r| r < cfg.residual_tol);
    let pass = sign_ok && max_r < cfg.residual_tol && recorded_ok;
    Ok(VerifyReport {
        config: *cfg,
        class: req.class,
        causal: req.causal,
        profile: req.profile,
        s_range: req.s_range,
        t_range,
        samples,
        skipped_singular: skipped,
        max_residual: max_r,
        mean_residual: if samples > 0 { sum_r / samples as f64 } else { 0.0 },
        discriminant_sign: signs,
        sign_ok,
        recorded_max_residual: recorded,
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
    })
}
