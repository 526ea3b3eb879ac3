//! Tessellation of catenoids over a parameter rectangle and Wavefront OBJ
//! export. Singular abscissae (zeros of the profile, or the parabolic axis
//! point) are cut out with a margin, which may split the rectangle into
//! several strips.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{CatenoidSpec, GeometryError, LorentzVector};

/// Half-width of the strip cut out around each singular abscissa.
pub const SINGULAR_MARGIN: f64 = 1e-3;

#[derive(Debug, Error)]
pub enum MeshError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("grid needs at least 2 samples per direction, got {n_s} x {n_t}")]
    GridTooSmall { n_s: usize, n_t: usize },
    #[error("invalid parameter range [{lo}, {hi}]")]
    InvalidRange { lo: f64, hi: f64 },
    #[error("s-range [{lo}, {hi}] lies entirely inside the singular zone")]
    FullySingular { lo: f64, hi: f64 },
    #[error("face {face} references vertex {index} but the mesh has {count}")]
    InvalidFace { face: usize, index: usize, count: usize },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed OBJ at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceMesh {
    pub catenoid: CatenoidSpec,
    pub vertices: Vec<LorentzVector>,
    /// `(s, t)` of each vertex.
    pub params: Vec<(f64, f64)>,
    pub residuals: Vec<f64>,
    /// Triangles, 0-based.
    pub faces: Vec<[usize; 3]>,
    /// Regular sub-intervals of the requested s-range, each gridded with
    /// `n_s` samples.
    pub strips: Vec<(f64, f64)>,
    pub t_range: (f64, f64),
    pub n_s: usize,
    pub n_t: usize,
}

impl SurfaceMesh {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    pub fn validate(&self) -> Result<(), MeshError> {
        let count = self.vertices.len();
        for (face, tri) in self.faces.iter().enumerate() {
            if let Some(&index) = tri.iter().find(|&&i| i >= count) {
                return Err(MeshError::InvalidFace { face, index, count });
            }
        }
        Ok(())
    }
}

fn check_range(lo: f64, hi: f64) -> Result<(), MeshError> {
    if lo.is_finite() && hi.is_finite() && lo < hi {
        Ok(())
    } else {
        Err(MeshError::InvalidRange { lo, hi })
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        if i + 1 == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    })
}

/// Regular pieces of `[lo, hi]` after removing `SINGULAR_MARGIN`
/// neighbourhoods of the profile's singular abscissae.
pub fn regular_strips(cat: &CatenoidSpec, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut strips = Vec::new();
    let mut start = lo;
    for z in cat
        .profile
        .singular_abscissae(lo - SINGULAR_MARGIN, hi + SINGULAR_MARGIN)
    {
        let end = (z - SINGULAR_MARGIN).min(hi);
        if end > start {
            strips.push((start, end));
        }
        start = start.max(z + SINGULAR_MARGIN);
    }
    if hi > start {
        strips.push((start, hi));
    }
    strips
}

pub fn tessellate(
    cat: &CatenoidSpec,
    s_range: (f64, f64),
    t_range: (f64, f64),
    n_s: usize,
    n_t: usize,
) -> Result<SurfaceMesh, MeshError> {
    if n_s < 2 || n_t < 2 {
        return Err(MeshError::GridTooSmall { n_s, n_t });
    }
    check_range(s_range.0, s_range.1)?;
    check_range(t_range.0, t_range.1)?;
    let strips = regular_strips(cat, s_range.0, s_range.1);
    if strips.is_empty() {
        return Err(MeshError::FullySingular {
            lo: s_range.0,
            hi: s_range.1,
        });
    }

    let mut mesh = SurfaceMesh {
        catenoid: *cat,
        vertices: Vec::new(),
        params: Vec::new(),
        residuals: Vec::new(),
        faces: Vec::new(),
        strips: strips.clone(),
        t_range,
        n_s,
        n_t,
    };
    for &(lo, hi) in &strips {
        let base = mesh.vertices.len();
        for s in linspace(lo, hi, n_s) {
            for t in linspace(t_range.0, t_range.1, n_t) {
                mesh.vertices.push(cat.surface_point(s, t));
                mesh.params.push((s, t));
                mesh.residuals.push(cat.mean_curvature_residual(s, t)?);
            }
        }
        for i in 0..n_s - 1 {
            for j in 0..n_t - 1 {
                let v00 = base + i * n_t + j;
                let (v10, v01) = (v00 + n_t, v00 + 1);
                let v11 = v10 + 1;
                mesh.faces.push([v00, v10, v11]);
                mesh.faces.push([v00, v11, v01]);
            }
        }
    }
    Ok(mesh)
}

/// OBJ text of a mesh: `#` header with the catenoid as JSON, then `v`
/// lines with 9 significant digits and 1-based `f` lines.
pub fn to_obj_string(mesh: &SurfaceMesh) -> Result<String, MeshError> {
    mesh.validate()?;
    let spec = serde_json::to_string(&mesh.catenoid).expect("catenoid spec serializes");
    let mut out = String::new();
    let strips: Vec<String> = mesh.strips.iter().map(|(a, b)| format!("[{a:e}, {b:e}]")).collect();
    // writing to a String cannot fail
    let _ = writeln!(out, "# catenoid surface mesh");
    let _ = writeln!(out, "# spec {spec}");
    let _ = writeln!(
        out,
        "# grid n_s={} n_t={} strips={} t=[{:e}, {:e}]",
        mesh.n_s,
        mesh.n_t,
        strips.join(" "),
        mesh.t_range.0,
        mesh.t_range.1
    );
    let _ = writeln!(out, "# max_residual {:e}", mesh.max_residual());
    for v in &mesh.vertices {
        let _ = writeln!(out, "v {:.8e} {:.8e} {:.8e}", v.x, v.y, v.z);
    }
    for [a, b, c] in &mesh.faces {
        let _ = writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1);
    }
    Ok(out)
}

pub fn export_obj(mesh: &SurfaceMesh, path: impl AsRef<Path>) -> Result<(), MeshError> {
    let text = to_obj_string(mesh)?;
    let path = path.as_ref();
    fs::write(path, text).map_err(|source| MeshError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Contents of an OBJ file written by [`export_obj`].
#[derive(Debug, Clone, PartialEq)]
pub struct ObjFile {
    pub vertices: Vec<LorentzVector>,
    pub faces: Vec<[usize; 3]>,
    pub catenoid: Option<CatenoidSpec>,
    pub max_residual: Option<f64>,
}

pub fn parse_obj(text: &str) -> Result<ObjFile, MeshError> {
    let mut obj = ObjFile {
        vertices: Vec::new(),
        faces: Vec::new(),
        catenoid: None,
        max_residual: None,
    };
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |reason: String| MeshError::Parse { line: line_no, reason };
        if let Some(json) = line.strip_prefix("# spec ") {
            obj.catenoid = Some(serde_json::from_str(json).map_err(|e| err(e.to_string()))?);
            continue;
        }
        if let Some(v) = line.strip_prefix("# max_residual ") {
            obj.max_residual = Some(v.trim().parse().map_err(|e| err(format!("{e}")))?);
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let c: Vec<f64> = parts
                    .map(|p| p.parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| err(e.to_string()))?;
                if c.len() != 3 {
                    return Err(err(format!("vertex needs 3 coordinates, got {}", c.len())));
                }
                obj.vertices.push(LorentzVector::new(c[0], c[1], c[2]));
            }
            Some("f") => {
                let idx: Vec<usize> = parts
                    .map(|p| p.split('/').next().unwrap_or(p).parse::<usize>())
                    .collect::<Result<_, _>>()
                    .map_err(|e| err(e.to_string()))?;
                if idx.len() != 3 || idx.contains(&0) {
                    return Err(err("faces must be 1-based triangles".into()));
                }
                obj.faces.push([idx[0] - 1, idx[1] - 1, idx[2] - 1]);
            }
            _ => {}
        }
    }
    Ok(obj)
}

pub fn read_obj(path: impl AsRef<Path>) -> Result<ObjFile, MeshError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| MeshError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_obj(&text)
}

/// Largest coordinate error between two vertex lists, relative to
/// `max(1, |v|)` per component.
pub fn max_relative_error(a: &[LorentzVector], b: &[LorentzVector]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter()
        .zip(b)
        .flat_map(|(p, q)| [(p.x, q.x), (p.y, q.y), (p.z, q.z)])
        .map(|(u, v)| (u - v).abs() / u.abs().max(1.0))
        .fold(0.0, f64::max)
}
