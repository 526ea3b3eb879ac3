//! Catenoids spanning two coaxial circles in Lorentz-Minkowski space.
//!
//! - [`geometry`]: metric, rotation groups, circles, profile families and
//!   the zero mean curvature residual.
//! - [`rootfind`]: bracketing, bisection/Newton, root counting with
//!   double-root detection, tangency solving.
//! - [`counting`]: the boundary problems per (rotation class, causal
//!   character) cell, critical constants and `N(h)` sweeps.
//! - [`mesh`]: tessellation and OBJ export.
//! - [`tables`]: CSV and JSON tables.

pub mod counting;
pub mod geometry;
pub mod mesh;
pub mod rootfind;
pub mod tables;

pub use counting::{
    count_all, count_hyperbolic_i, count_parabolic, count_spacelike_elliptic, count_spacelike_hyperbolic_ii,
    count_timelike_elliptic, count_timelike_hyperbolic_ii, critical_constants, normalize_pair, sweep_n, BoundaryPair,
    Cell, CountError, CountOptions, CountTable, CriticalConstants, SolutionSet, SweepRow,
};
pub use geometry::{
    CatenoidSpec, CausalCharacter, CircleSpec, FundamentalForms, GeometryError, LorentzVector, ProfileCurve,
    ProfileFamily, RotationClass, Side, Subfamily,
};
pub use rootfind::{Multiplicity, RootConfig, RootError, RootResult};
