//! Numerical laboratory for extremal polynomials on Jordan regions.
//!
//! A region `K` is described by the exterior conformal map `Ψ` of its
//! complement, given as a finite Laurent series. On top of that the crate
//! computes
//!
//! * `L^r` Christoffel functions `λ_n(μ, z0, r)` and their minimizing
//!   polynomials for measures `μ = f dω_{z0} + atoms` ([`christoffel`]),
//! * Szegő/outer functions, entropy integrals and the reproducing kernel of
//!   the weighted Hardy space of the complement ([`szego`]),
//! * Faber polynomials and Faber trial polynomials ([`faber`]),
//! * weighted Chebyshev/residual polynomials `t_n(ρ, z0)` via Lawson
//!   iteration, together with optimal prediction measures and the Ahlfors
//!   problem ([`minimax`]).
//!
//! Scalar quantities are rescaled into Widom factors
//! `W_{r,n} = C(K,z0)^{-n} λ_n^{1/r}` so that the expected large-degree
//! limits are entropy integrals of the densities involved.

pub mod checks;
pub mod christoffel;
pub mod error;
pub mod faber;
mod fourier;
pub mod geometry;
pub mod measure;
pub mod minimax;
pub mod szego;

pub use christoffel::{
    solve_l2, solve_l2_circle, solve_lr, solve_lr_circle, widom_continuity_probe, widom_sweep,
    ChristoffelSolution, ContinuityRow, LrOptions, SolverReport, WidomRow,
};
pub use error::{Error, Result};
pub use faber::{faber, faber_trial, FaberTable, Normalization, PolyBasis, PolynomialC};
pub use geometry::{
    harmonic_weights, harmonic_weights_at, BoundaryGrid, ExtendedPoint, ExteriorMap,
    NormalizedMap,
};
pub use measure::{
    build_measure, entropy, entropy_of_measure, pushforward_to_circle, Atom, CircleMeasure,
    DensitySpec, DiscretizedMeasure,
};
pub use minimax::{
    ahlfors_limit_closed_form, ahlfors_solve, duality_gap_certificate, lawson_solve,
    opm_weakstar_distance, residual_widom_sweep, AhlforsLimit, AhlforsSolution, LawsonOptions,
    LawsonState, NuInit, ResidualRow, ResidualSolution,
};

/// Complex scalar used throughout.
pub type Complex64 = num_complex::Complex<f64>;

pub(crate) fn next_pow2(n: usize) -> usize {
    n.max(1).next_power_of_two()
}
