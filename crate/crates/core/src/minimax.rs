//! Weighted sup-norm extremal polynomials via Lawson iteration.
//!
//! The residual/Chebyshev value `t_n(ρ, z0)` equals the supremum over
//! probability measures `ν` of `λ_n(ρ² dν, z0, 2)^{1/2}`; any maximizer is an
//! optimal prediction measure. Lawson iteration realizes that supremum on the
//! discrete support: reweight `ν` multiplicatively by `(ρ|P|)^γ`, re-solve
//! the `L²` problem, and certify with the two-sided bracket
//! `dual = λ^{1/2} ≤ t_n ≤ primal = max ρ|P|`.

use nalgebra::DVector;
use rayon::prelude::*;
use std::sync::Arc;

use crate::christoffel::LsqContext;
use crate::error::{Error, Result};
use crate::faber::{FaberTable, PolynomialC};
use crate::geometry::{harmonic_weights, BoundaryGrid, ExtendedPoint, NormalizedMap};
use crate::measure::{entropy, Atom, DensitySpec, DiscretizedMeasure};
use crate::szego::{strong_error_level_curve, SzegoData};
use crate::Complex64;

/// Initial candidate measure of the Lawson iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuInit {
    /// Harmonic-measure weights; the weak-star limit of the optimal
    /// prediction measures, so usually an excellent start.
    Harmonic,
    Uniform,
}

#[derive(Debug, Clone)]
pub struct LawsonOptions {
    /// Relative duality-gap target.
    pub tol: f64,
    pub max_iter: usize,
    pub init: NuInit,
}

impl Default for LawsonOptions {
    fn default() -> Self {
        LawsonOptions {
            tol: 1e-3,
            max_iter: 2000,
            init: NuInit::Harmonic,
        }
    }
}

/// Snapshot of one Lawson iterate: candidate measure, best-response
/// polynomial and the duality bracket.
#[derive(Debug, Clone)]
pub struct LawsonState {
    /// Probability weights over grid nodes followed by atom locations.
    pub nu: Vec<f64>,
    pub poly: PolynomialC,
    /// `λ_n(ρ² dν, z0, 2)^{1/2}`, a lower bound for `t_n`.
    pub dual: f64,
    /// `max_j ρ_j |P(x_j)|`, an upper bound for `t_n`.
    pub primal: f64,
    pub gap: f64,
    pub iter: usize,
}

/// Weak-duality certificate `(lower, upper)` of a Lawson state.
pub fn duality_gap_certificate(state: &LawsonState) -> (f64, f64) {
    (state.dual, state.primal)
}

/// Converged residual/Chebyshev solution.
#[derive(Debug, Clone)]
pub struct ResidualSolution {
    pub poly: PolynomialC,
    /// `t_n(ρ, z0)` reported as the primal value of `poly` on the grid.
    pub t_value: f64,
    /// `W_{∞,n} = C^{-n} t_n`.
    pub widom_inf: f64,
    /// Final candidate measure (grid nodes then atoms).
    pub opm: Vec<f64>,
    pub atom_count: usize,
    /// Angles of merged extreme points of `ρ|T|` on the boundary.
    pub extreme_points: Vec<f64>,
    pub gap_rel: f64,
    pub converged: bool,
    /// Dual never exceeded primal at any iterate.
    pub weak_duality_ok: bool,
    pub iterations: usize,
    /// Off-grid sup bound factor: the true sup over the curve is at most
    /// `(1 + O(n/M)²)·t_value`; Ehlich–Zeller style estimate `1/cos(πn/2M)`.
    pub offgrid_inflation: f64,
    pub final_state: LawsonState,
}

/// One row of a residual Widom sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct ResidualRow {
    pub n: usize,
    pub t_value: f64,
    pub widom_inf: f64,
    pub lower_bound: f64,
    pub gap_rel: f64,
    /// Sup distance of `C^{-n}Φ^{-n}T_n` from `R_ρ(z0)/R_ρ` on `|Φ| = 1.5`
    /// (NaN for non-Szegő weights).
    pub strong_err: f64,
    /// Kolmogorov–Smirnov distance of the candidate measure from the
    /// harmonic weights.
    pub ks_distance: f64,
}

struct LawsonSetup {
    ctx: LsqContext,
    rho: Vec<f64>,
    table: FaberTable,
    boundary_len: usize,
}

fn lawson_setup(
    nm: &NormalizedMap,
    grid: &Arc<BoundaryGrid>,
    rho: &DensitySpec,
    atoms: &[Atom],
    n: usize,
) -> Result<LawsonSetup> {
    let mut rho_vals = rho.eval_grid(grid)?;
    for atom in atoms {
        let val = rho
            .eval_point(atom.location)
            .ok_or(Error::DensityNotPointEvaluable(rho.kind_name()))?;
        rho_vals.push(val);
    }
    let support = rho_vals.iter().filter(|v| **v > 0.0).count();
    if support < n + 1 {
        return Err(Error::RhoTooSparse {
            support,
            needed: n + 1,
        });
    }
    let table = FaberTable::up_to(nm.map(), n);
    // Atoms participate as candidate support points of the prediction
    // measure.
    let carrier = DiscretizedMeasure::from_weights(
        grid.clone(),
        vec![0.0; grid.len()],
        atoms.to_vec(),
    )?;
    let ctx = LsqContext::region(nm, &carrier, &table, n)?;
    Ok(LawsonSetup {
        ctx,
        rho: rho_vals,
        table,
        boundary_len: grid.len(),
    })
}

/// Solve `t_n(ρ, z0)` by Lawson iteration with a dual-monotone safeguard.
///
/// The exponent starts at one and is halved whenever a proposed reweighting
/// would decrease the dual value, so accepted steps never lose ground. A run
/// that exhausts its iteration budget returns the best bracket seen, flagged
/// unconverged.
pub fn lawson_solve(
    nm: &NormalizedMap,
    grid: &Arc<BoundaryGrid>,
    rho: &DensitySpec,
    atoms: &[Atom],
    n: usize,
    opts: &LawsonOptions,
) -> Result<ResidualSolution> {
    let setup = lawson_setup(nm, grid, rho, atoms, n)?;
    let m = setup.boundary_len;
    let total_points = setup.ctx.points.len();

    let mut nu: Vec<f64> = match opts.init {
        NuInit::Harmonic => {
            let mut v = harmonic_weights(nm, grid);
            v.extend(std::iter::repeat(1.0 / m as f64).take(total_points - m));
            v
        }
        NuInit::Uniform => vec![1.0 / total_points as f64; total_points],
    };
    normalize(&mut nu);

    let capacity = nm.capacity();
    let mut gamma = 1.0f64;
    let mut weak_duality_ok = true;

    let evaluate = |nu: &[f64]| -> Result<(DVector<Complex64>, DVector<Complex64>, f64, f64)> {
        let weights: Vec<f64> = nu
            .iter()
            .zip(&setup.rho)
            .map(|(&v, &r)| v * r * r)
            .collect();
        let step = setup.ctx.solve_weighted(&weights)?;
        let vals = setup.ctx.values(&step.coeffs);
        let dual = vals
            .iter()
            .zip(&weights)
            .map(|(p, &w)| w * p.norm_sqr())
            .sum::<f64>()
            .sqrt();
        let primal = vals
            .iter()
            .zip(&setup.rho)
            .map(|(p, &r)| r * p.norm())
            .fold(0.0, f64::max);
        Ok((step.coeffs, vals, dual, primal))
    };

    let (mut coeffs, mut vals, mut dual, mut primal) = evaluate(&nu)?;
    let mut iter = 0usize;
    let mut best: Option<(f64, Vec<f64>, DVector<Complex64>, f64, f64, usize)> = None;
    let mut converged = false;

    loop {
        weak_duality_ok &= dual <= primal * (1.0 + 1e-10);
        debug_assert!(dual <= primal * (1.0 + 1e-10));
        let gap_rel = (primal - dual) / primal.max(f64::MIN_POSITIVE);
        if best.as_ref().map_or(true, |b| gap_rel < b.0) {
            best = Some((gap_rel, nu.clone(), coeffs.clone(), dual, primal, iter));
        }
        if gap_rel <= opts.tol {
            converged = true;
            break;
        }
        if iter >= opts.max_iter {
            break;
        }

        // Propose a reweighting; retry with halved exponent if the dual
        // drops.
        let mut accepted = false;
        for _ in 0..24 {
            iter += 1;
            let mut proposal: Vec<f64> = nu
                .iter()
                .zip(vals.iter())
                .zip(&setup.rho)
                .map(|((&v, p), &r)| v * (r * p.norm()).powf(gamma))
                .collect();
            if !normalize(&mut proposal) {
                break;
            }
            match evaluate(&proposal) {
                Ok((c2, v2, d2, p2)) => {
                    if d2 >= dual * (1.0 - 1e-12) {
                        nu = proposal;
                        coeffs = c2;
                        vals = v2;
                        dual = d2;
                        primal = p2;
                        accepted = true;
                        break;
                    }
                    gamma *= 0.5;
                    if gamma < 1e-6 {
                        break;
                    }
                }
                Err(_) => break,
            }
            if iter >= opts.max_iter {
                break;
            }
        }
        if !accepted {
            break;
        }
    }

    let (gap_rel, nu, coeffs, dual, primal, best_iter) =
        best.expect("at least one iterate is always recorded");
    let poly = setup.ctx.monomialize(Some(&setup.table), &coeffs);
    // Re-evaluate the certified bracket from the exactly normalized
    // polynomial.
    let primal_exact = setup
        .ctx
        .points
        .iter()
        .zip(&setup.rho)
        .map(|(&z, &r)| r * poly.eval(z).norm())
        .fold(0.0, f64::max);
    let t_value = primal_exact.max(primal);
    let extreme_points = extreme_angles(grid, &setup.rho[..m], &poly, t_value);
    let offgrid_inflation =
        1.0 / (std::f64::consts::PI * n as f64 / (2.0 * m as f64)).cos();

    let state = LawsonState {
        nu: nu.clone(),
        poly: poly.clone(),
        dual,
        primal: t_value,
        gap: t_value - dual,
        iter: best_iter,
    };
    Ok(ResidualSolution {
        poly,
        t_value,
        widom_inf: (-(n as f64) * capacity.ln()).exp() * t_value,
        opm: nu,
        atom_count: total_points - m,
        extreme_points,
        gap_rel,
        converged,
        weak_duality_ok,
        iterations: iter,
        offgrid_inflation,
        final_state: state,
    })
}

fn normalize(v: &mut [f64]) -> bool {
    let total: f64 = v.iter().sum();
    if !(total > 0.0) || !total.is_finite() {
        return false;
    }
    for x in v.iter_mut() {
        *x /= total;
    }
    true
}

/// Local maxima of `ρ|T|` on the boundary within `0.999·t`, merged so that
/// selected angles are at least three grid steps apart.
fn extreme_angles(
    grid: &BoundaryGrid,
    rho: &[f64],
    poly: &PolynomialC,
    t_value: f64,
) -> Vec<f64> {
    let m = grid.len();
    let profile: Vec<f64> = grid
        .nodes()
        .iter()
        .zip(rho)
        .map(|(&z, &r)| r * poly.eval(z).norm())
        .collect();
    let mut candidates: Vec<usize> = (0..m)
        .filter(|&j| {
            let prev = profile[(j + m - 1) % m];
            let next = profile[(j + 1) % m];
            profile[j] >= prev && profile[j] >= next && profile[j] >= 0.999 * t_value
        })
        .collect();
    candidates.sort_by(|&a, &b| profile[b].total_cmp(&profile[a]));
    let mut taken: Vec<usize> = Vec::new();
    for j in candidates {
        let clear = taken.iter().all(|&k| {
            let d = (j as isize - k as isize).rem_euclid(m as isize) as usize;
            d.min(m - d) > 3
        });
        if clear {
            taken.push(j);
        }
    }
    taken.sort_unstable();
    taken.into_iter().map(|j| grid.thetas()[j]).collect()
}

/// Kolmogorov–Smirnov distance between the boundary part of the candidate
/// measure and the harmonic weights, in the circle parameter.
pub fn opm_weakstar_distance(
    sol: &ResidualSolution,
    nm: &NormalizedMap,
    grid: &BoundaryGrid,
) -> f64 {
    let hw = harmonic_weights(nm, grid);
    let mut cum_nu = 0.0;
    let mut cum_hw = 0.0;
    let mut dist: f64 = 0.0;
    for j in 0..grid.len() {
        cum_nu += sol.opm[j];
        cum_hw += hw[j];
        dist = dist.max((cum_nu - cum_hw).abs());
    }
    dist
}

/// Sweep `t_n` over a degree list, with the entropy lower bound, strong
/// asymptotics error on the `|Φ| = 1.5` level curve, and the weak-star
/// distance of the candidate measure per row.
pub fn residual_widom_sweep(
    nm: &NormalizedMap,
    grid: &Arc<BoundaryGrid>,
    rho: &DensitySpec,
    atoms: &[Atom],
    degrees: &[usize],
    opts: &LawsonOptions,
) -> Result<Vec<ResidualRow>> {
    let s = entropy(nm, grid, rho)?;
    let sd = SzegoData::build(nm, grid, rho)?;
    let mut rows: Vec<ResidualRow> = degrees
        .par_iter()
        .map(|&n| {
            let sol = lawson_solve(nm, grid, rho, atoms, n, opts)?;
            let strong_err = if sd.szego_condition() {
                strong_error_level_curve(nm, &sd, 1.0, &sol.poly, n, 1.5, 128)?
            } else {
                f64::NAN
            };
            Ok(ResidualRow {
                n,
                t_value: sol.t_value,
                widom_inf: sol.widom_inf,
                lower_bound: s,
                gap_rel: sol.gap_rel,
                strong_err,
                ks_distance: opm_weakstar_distance(&sol, nm, grid),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|row| row.n);
    Ok(rows)
}

/// Ahlfors problem solution: `A_n` and the extremal polynomial with
/// `Q(z0) = 0`, `Q'(z0) = 1`.
#[derive(Debug, Clone)]
pub struct AhlforsSolution {
    pub a_value: f64,
    pub q: PolynomialC,
    pub residual: ResidualSolution,
}

/// `A_n(z0) = t_{n-1}(|·−z0|, z0)`; the extremal polynomial is
/// `(z − z0)·T_{n-1}`.
pub fn ahlfors_solve(
    nm: &NormalizedMap,
    grid: &Arc<BoundaryGrid>,
    n: usize,
    opts: &LawsonOptions,
) -> Result<AhlforsSolution> {
    let z0 = match nm.z0() {
        ExtendedPoint::Finite(z0) => z0,
        ExtendedPoint::Infinity => {
            return Err(Error::invalid("ahlfors", "requires a finite normalization point"))
        }
    };
    if n == 0 {
        return Err(Error::invalid("ahlfors", "degree must be at least 1"));
    }
    let rho = DensitySpec::AbsLinear { point: z0 };
    let residual = lawson_solve(nm, grid, &rho, &[], n - 1, opts)?;
    let q = residual.poly.shifted_product(z0);
    Ok(AhlforsSolution {
        a_value: residual.t_value,
        q,
        residual,
    })
}

/// Closed-form large-degree limit of the rescaled Ahlfors problem.
#[derive(Debug, Clone)]
pub struct AhlforsLimit {
    nm: NormalizedMap,
    phi_z0: Complex64,
    /// `lim |Φ(z0)|^{n-1} A_n = (|Φ(z0)|² − 1)/|Φ'(z0) Φ(z0)|`.
    pub value: f64,
}

impl AhlforsLimit {
    /// Limit of `(Φ(z0)^n Φ'(z0) / Φ(z)^n)·Q_n(z)`:
    /// `(Φ(z) − Φ(z0))·(|Φ(z0)|² − 1)/(conj(Φ(z0))·Φ(z) − 1)`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let phi = self.nm.map().invert(z)?;
        let one = Complex64::new(1.0, 0.0);
        Ok((phi - self.phi_z0) * (self.phi_z0.norm_sqr() - 1.0)
            / (self.phi_z0.conj() * phi - one))
    }
}

/// Evaluate the Ahlfors limit data of a finite normalization point.
pub fn ahlfors_limit_closed_form(nm: &NormalizedMap) -> Result<AhlforsLimit> {
    let z0 = match nm.z0() {
        ExtendedPoint::Finite(z0) => z0,
        ExtendedPoint::Infinity => {
            return Err(Error::invalid("ahlfors", "requires a finite normalization point"))
        }
    };
    let phi_z0 = nm.map().invert(z0)?;
    // Φ'(z0) = 1/Ψ'(Φ(z0)).
    let dphi = nm.map().derivative(phi_z0).inv();
    let value = (phi_z0.norm_sqr() - 1.0) / (dphi * phi_z0).norm();
    Ok(AhlforsLimit {
        nm: nm.clone(),
        phi_z0,
        value,
    })
}
