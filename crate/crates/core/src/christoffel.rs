//! `L^r` Christoffel minimization and Widom factors.
//!
//! The `r = 2` problem is a constrained least squares in the Faber basis:
//! minimize `a^* G a` subject to the linear normalization `ℓ(P) = 1`
//! (evaluation at `z0`, or unit leading coefficient for `z0 = ∞`). Its
//! closed form is `λ = 1/(v^* G^{-1} v)` with `v_k = conj(ℓ(F_k))`, solved by
//! jittered Cholesky with iterative refinement. General `r` runs safeguarded
//! IRLS around the `L²` solver; `r < 1` is nonconvex and handled by
//! multi-start.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::faber::{FaberTable, Normalization, PolyBasis, PolynomialC};
use crate::geometry::{unit, ExtendedPoint, ExteriorMap, NormalizedMap};
use crate::measure::{entropy_of_measure, CircleMeasure, DiscretizedMeasure};
use crate::Complex64;

const CHOLESKY_JITTER: f64 = 1e-13;
const REFINEMENT_STEPS: usize = 2;

/// Options of the IRLS solver for `r ≠ 2`.
#[derive(Debug, Clone)]
pub struct LrOptions {
    /// Relative objective-change threshold.
    pub tol: f64,
    pub max_iter: usize,
    /// Multi-start count for the nonconvex range `r < 1`; the first start is
    /// the unperturbed `L²` solution.
    pub starts: usize,
    pub seed: u64,
    /// Relative size of the coefficient perturbation of the extra starts.
    pub perturbation: f64,
}

impl Default for LrOptions {
    fn default() -> Self {
        LrOptions {
            tol: 1e-11,
            max_iter: 500,
            starts: 8,
            seed: 0x5eed_c0de,
            perturbation: 0.1,
        }
    }
}

/// Solver diagnostics attached to every solution.
#[derive(Debug, Clone, Default, serde::Serialize)]
pub struct SolverReport {
    pub iterations: usize,
    /// KKT residual for `r = 2`; final relative objective change for IRLS.
    pub final_residual: f64,
    /// Relative difference between the closed-form `λ` and the re-quadratured
    /// objective of the returned polynomial (`r = 2` only).
    pub formula_consistency: f64,
    /// Index of the winning start for multi-start runs.
    pub multi_start_best: Option<usize>,
    /// Set when the problem is nonconvex (`r < 1`).
    pub nonconvex: bool,
    /// The measure is annihilated by a feasible polynomial; `λ = 0` exactly.
    pub exactly_zero: bool,
    pub converged: bool,
}

/// Minimizer of `∫ |P|^r dμ` under the normalization of `z0`, with the
/// extremal value and its Widom rescaling.
#[derive(Debug, Clone)]
pub struct ChristoffelSolution {
    pub poly: PolynomialC,
    /// Extremal value `λ_n(μ, z0, r)`, recomputed as the quadrature objective
    /// of `poly`.
    pub lambda: f64,
    /// `W_{r,n} = C(K, z0)^{-n} λ^{1/r}`.
    pub widom: f64,
    pub r: f64,
    pub n: usize,
    pub report: SolverReport,
}

/// One row of a Widom-factor sweep.
#[derive(Debug, Clone, serde::Serialize)]
pub struct WidomRow {
    pub n: usize,
    pub lambda: f64,
    /// `W_{r,n}^r = C^{-nr} λ_n`, on the same scale as the entropy bound.
    pub widom_r: f64,
    /// Entropy lower bound `S(f, z0)`.
    pub lower_bound: f64,
    pub gap: f64,
}

/// One row of a normalization-point continuity probe.
#[derive(Debug, Clone)]
pub struct ContinuityRow {
    pub zeta: ExtendedPoint,
    pub lambda: f64,
    pub widom: f64,
}

// ---------------------------------------------------------------------------
// shared constrained-least-squares machinery
// ---------------------------------------------------------------------------

/// Basis values and normalization functional of one discrete problem; the
/// measure enters only through per-point weights, so Lawson can reuse one
/// context across reweightings.
pub(crate) struct LsqContext {
    pub points: Vec<Complex64>,
    /// `points.len() × (n+1)` basis values.
    pub b: DMatrix<Complex64>,
    /// `c_k = ℓ(φ_k)`.
    pub cvec: DVector<Complex64>,
    pub normalization: Normalization,
    pub basis: PolyBasis,
}

pub(crate) struct L2Step {
    pub coeffs: DVector<Complex64>,
    pub lambda_formula: f64,
    pub kkt: f64,
}

impl LsqContext {
    /// Faber-basis context on grid nodes plus atom locations.
    pub fn region(
        nm: &NormalizedMap,
        m: &DiscretizedMeasure,
        table: &FaberTable,
        n: usize,
    ) -> Result<Self> {
        let grid = m.grid();
        if 16 * n > grid.len() {
            return Err(Error::DegreeTooLargeForGrid {
                degree: n,
                nodes: grid.len(),
            });
        }
        let mut points: Vec<Complex64> = grid.nodes().to_vec();
        points.extend(m.atoms().iter().map(|a| a.location));
        let b = table.eval_matrix(n, &points);
        let cvec = match nm.z0() {
            ExtendedPoint::Finite(z0) => {
                DVector::from_iterator(n + 1, (0..=n).map(|k| table.eval(k, z0)))
            }
            ExtendedPoint::Infinity => {
                let mut v = DVector::zeros(n + 1);
                v[n] = Complex64::new(nm.map().cap().powi(-(n as i32)), 0.0);
                v
            }
        };
        let normalization = match nm.z0() {
            ExtendedPoint::Finite(z0) => Normalization::Point(z0),
            ExtendedPoint::Infinity => Normalization::Monic,
        };
        Ok(LsqContext {
            points,
            b,
            cvec,
            normalization,
            basis: PolyBasis::Faber,
        })
    }

    /// Monomial-basis context on the unit circle, normalized at a point
    /// `w0 ∈ [0, 1)` of the disk.
    pub fn circle(cm: &CircleMeasure, w0: f64, n: usize) -> Self {
        let mut points = cm.nodes();
        points.extend(cm.atoms.iter().map(|&(t, _)| unit(t)));
        let mut b = DMatrix::zeros(points.len(), n + 1);
        for (j, &z) in points.iter().enumerate() {
            let mut p = Complex64::new(1.0, 0.0);
            for k in 0..=n {
                b[(j, k)] = p;
                p *= z;
            }
        }
        let cvec = DVector::from_iterator(n + 1, (0..=n).map(|k| Complex64::new(w0.powi(k as i32), 0.0)));
        LsqContext {
            points,
            b,
            cvec,
            normalization: Normalization::Point(Complex64::new(w0, 0.0)),
            basis: PolyBasis::Monomial,
        }
    }

    /// Values `(B a)_j` of the polynomial at all context points.
    pub fn values(&self, a: &DVector<Complex64>) -> DVector<Complex64> {
        &self.b * a
    }

    /// `Σ_j w_j |(B a)_j|^r`.
    pub fn objective(&self, a: &DVector<Complex64>, weights: &[f64], r: f64) -> f64 {
        let vals = self.values(a);
        let mut total = 0.0;
        for (v, &w) in vals.iter().zip(weights) {
            if w > 0.0 {
                total += w * v.norm_sqr().powf(0.5 * r);
            }
        }
        total
    }

    /// Constrained weighted least squares: minimize `a^* G a` with
    /// `Σ_k c_k a_k = 1`, `G = B^H diag(w) B`.
    pub fn solve_weighted(&self, weights: &[f64]) -> Result<L2Step> {
        let ncols = self.b.ncols();
        let mut bw = self.b.clone();
        for (j, &w) in weights.iter().enumerate() {
            let s = w.max(0.0).sqrt();
            for k in 0..ncols {
                bw[(j, k)] *= s;
            }
        }
        let gram = bw.adjoint() * &bw;
        let trace = gram.diagonal().iter().map(|d| d.re).sum::<f64>();
        let v = self.cvec.map(|c| c.conj());

        let mut jitter = CHOLESKY_JITTER * trace.max(f64::MIN_POSITIVE);
        let mut chol = None;
        for _ in 0..4 {
            let mut g = gram.clone();
            for k in 0..ncols {
                g[(k, k)] += Complex64::new(jitter, 0.0);
            }
            if let Some(c) = nalgebra::Cholesky::new(g) {
                chol = Some(c);
                break;
            }
            jitter *= 100.0;
        }
        let chol = chol.ok_or(Error::RankDeficient)?;

        let mut x = chol.solve(&v);
        for _ in 0..REFINEMENT_STEPS {
            let residual = &v - &gram * &x;
            x += chol.solve(&residual);
        }
        let denom = v.dotc(&x).re;
        if !(denom > 0.0) || !denom.is_finite() {
            return Err(Error::RankDeficient);
        }
        let lambda = 1.0 / denom;
        let mut a = x * Complex64::new(lambda, 0.0);
        // Exact renormalization of the affine constraint.
        let scale = self.cvec.dot(&a);
        if scale.norm() == 0.0 {
            return Err(Error::RankDeficient);
        }
        a /= scale;

        let kkt_vec = &gram * &a - v.scale(lambda);
        let kkt = kkt_vec.norm()
            / (gram.norm() * a.norm() + lambda * v.norm()).max(f64::MIN_POSITIVE);
        Ok(L2Step {
            coeffs: a,
            lambda_formula: lambda,
            kkt,
        })
    }

    /// Package basis coefficients as an exactly normalized monomial
    /// polynomial.
    pub fn monomialize(&self, table: Option<&FaberTable>, a: &DVector<Complex64>) -> PolynomialC {
        let coeffs: Vec<Complex64> = match self.basis {
            PolyBasis::Faber => {
                let t = table.expect("faber context requires the table");
                t.to_monomial(a.as_slice())
            }
            PolyBasis::Monomial => a.as_slice().to_vec(),
        };
        let mut poly = PolynomialC::monomial(coeffs, self.normalization);
        match self.normalization {
            Normalization::Point(z0) => {
                let value = poly.eval(z0);
                if value.norm() > 0.0 {
                    for c in &mut poly.coeffs {
                        *c /= value;
                    }
                }
            }
            Normalization::Monic => {
                let lead = poly.leading();
                if lead.norm() > 0.0 {
                    for c in &mut poly.coeffs {
                        *c /= lead;
                    }
                }
            }
            Normalization::None => {}
        }
        poly
    }
}

pub(crate) fn measure_weights(m: &DiscretizedMeasure) -> Vec<f64> {
    let mut w = m.boundary_weights().to_vec();
    w.extend(m.atoms().iter().map(|a| a.mass));
    w
}

/// Annihilating polynomial of a finitely supported measure: vanishes on the
/// support, normalized per `z0`. Valid whenever `support ≤ n`.
fn annihilator(
    nm: &NormalizedMap,
    support: &[Complex64],
    n: usize,
) -> PolynomialC {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for &x in support {
        let poly = PolynomialC::monomial(coeffs, Normalization::None);
        coeffs = poly.shifted_product(x).coeffs;
    }
    match nm.z0() {
        ExtendedPoint::Finite(z0) => {
            let mut poly = PolynomialC::monomial(coeffs, Normalization::Point(z0));
            let value = poly.eval(z0);
            for c in &mut poly.coeffs {
                *c /= value;
            }
            poly.degree = n.max(poly.coeffs.len() - 1);
            poly
        }
        ExtendedPoint::Infinity => {
            // Pad with z^{n-s} to reach the required monic degree.
            let mut padded = vec![Complex64::new(0.0, 0.0); n + 1];
            let shift = n + 1 - coeffs.len();
            for (i, c) in coeffs.iter().enumerate() {
                padded[i + shift] = *c;
            }
            PolynomialC::monomial(padded, Normalization::Monic)
        }
    }
}

fn zero_solution(nm: &NormalizedMap, m: &DiscretizedMeasure, n: usize, r: f64) -> ChristoffelSolution {
    let mut support: Vec<Complex64> = m
        .grid()
        .nodes()
        .iter()
        .zip(m.boundary_weights())
        .filter(|(_, &w)| w > 0.0)
        .map(|(&z, _)| z)
        .collect();
    support.extend(m.atoms().iter().map(|a| a.location));
    let poly = annihilator(nm, &support, n);
    ChristoffelSolution {
        poly,
        lambda: 0.0,
        widom: 0.0,
        r,
        n,
        report: SolverReport {
            exactly_zero: true,
            converged: true,
            ..SolverReport::default()
        },
    }
}

fn widom_from_lambda(nm: &NormalizedMap, lambda: f64, n: usize, r: f64) -> f64 {
    (-(n as f64) * nm.capacity().ln()).exp() * lambda.powf(1.0 / r)
}

fn package_region(
    nm: &NormalizedMap,
    ctx: &LsqContext,
    table: &FaberTable,
    weights: &[f64],
    a: &DVector<Complex64>,
    n: usize,
    r: f64,
    report: SolverReport,
) -> ChristoffelSolution {
    let poly = ctx.monomialize(Some(table), a);
    let lambda = quadrature_objective(&poly, &ctx.points, weights, r);
    ChristoffelSolution {
        widom: widom_from_lambda(nm, lambda, n, r),
        poly,
        lambda,
        r,
        n,
        report,
    }
}

fn quadrature_objective(poly: &PolynomialC, points: &[Complex64], weights: &[f64], r: f64) -> f64 {
    points
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(&z, &w)| w * poly.eval(z).norm_sqr().powf(0.5 * r))
        .sum()
}

// ---------------------------------------------------------------------------
// public solvers
// ---------------------------------------------------------------------------

/// Exact `L²` Christoffel solve. Measures supported on fewer than `n+1`
/// points are annihilated exactly and reported as `λ = 0` rather than an
/// error.
pub fn solve_l2(nm: &NormalizedMap, m: &DiscretizedMeasure, n: usize) -> Result<ChristoffelSolution> {
    let table = FaberTable::up_to(nm.map(), n);
    solve_l2_with(nm, m, n, &table)
}

pub(crate) fn solve_l2_with(
    nm: &NormalizedMap,
    m: &DiscretizedMeasure,
    n: usize,
    table: &FaberTable,
) -> Result<ChristoffelSolution> {
    if m.support_count() < n + 1 {
        return Ok(zero_solution(nm, m, n, 2.0));
    }
    let ctx = LsqContext::region(nm, m, table, n)?;
    let weights = measure_weights(m);
    let step = ctx.solve_weighted(&weights)?;
    let mut report = SolverReport {
        iterations: 1,
        final_residual: step.kkt,
        converged: true,
        ..SolverReport::default()
    };
    let sol = package_region(nm, &ctx, table, &weights, &step.coeffs, n, 2.0, SolverReport::default());
    report.formula_consistency =
        (step.lambda_formula - sol.lambda).abs() / sol.lambda.max(f64::MIN_POSITIVE);
    Ok(ChristoffelSolution { report, ..sol })
}

/// `L^r` Christoffel solve for `0 < r < ∞`. `r = 2` routes to the exact
/// solver; `r ≥ 1` runs safeguarded IRLS; `r < 1` adds multi-start and flags
/// the solution nonconvex.
pub fn solve_lr(
    nm: &NormalizedMap,
    m: &DiscretizedMeasure,
    n: usize,
    r: f64,
    opts: &LrOptions,
) -> Result<ChristoffelSolution> {
    let table = FaberTable::up_to(nm.map(), n);
    solve_lr_with(nm, m, n, r, opts, &table)
}

pub(crate) fn solve_lr_with(
    nm: &NormalizedMap,
    m: &DiscretizedMeasure,
    n: usize,
    r: f64,
    opts: &LrOptions,
    table: &FaberTable,
) -> Result<ChristoffelSolution> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::invalid("solve_lr", format!("r = {r} must be positive")));
    }
    if (r - 2.0).abs() < 1e-14 {
        return solve_l2_with(nm, m, n, table);
    }
    if m.support_count() < n + 1 {
        return Ok(zero_solution(nm, m, n, r));
    }
    let ctx = LsqContext::region(nm, m, table, n)?;
    let weights = measure_weights(m);
    let seed_step = ctx.solve_weighted(&weights)?;

    let starts = if r < 1.0 { opts.starts.max(1) } else { 1 };
    let mut best: Option<(usize, DVector<Complex64>, f64, usize, f64)> = None;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for start in 0..starts {
        let a_init = if start == 0 {
            seed_step.coeffs.clone()
        } else {
            let mut a = seed_step.coeffs.clone();
            let scale = opts.perturbation * a.norm() / (a.len() as f64).sqrt();
            for c in a.iter_mut() {
                *c += Complex64::new(
                    scale * rng.sample::<f64, _>(rand_distr_standard()),
                    scale * rng.sample::<f64, _>(rand_distr_standard()),
                );
            }
            let s = ctx.cvec.dot(&a);
            if s.norm() < 1e-12 {
                continue;
            }
            a / s
        };
        let (a, obj, iters, final_rel) = irls_run(&ctx, &weights, a_init, r, opts);
        if best.as_ref().map_or(true, |b| obj < b.2) {
            best = Some((start, a, obj, iters, final_rel));
        }
    }
    let (best_start, a, _, iterations, final_rel) = best.ok_or(Error::RankDeficient)?;
    let report = SolverReport {
        iterations,
        final_residual: final_rel,
        formula_consistency: 0.0,
        multi_start_best: (r < 1.0).then_some(best_start),
        nonconvex: r < 1.0,
        exactly_zero: false,
        converged: final_rel <= opts.tol,
    };
    Ok(ChristoffelSolution {
        report,
        ..package_region(nm, &ctx, table, &weights, &a, n, r, SolverReport::default())
    })
}

fn rand_distr_standard() -> rand::distributions::Standard {
    rand::distributions::Standard
}

/// Safeguarded IRLS: reweight by `(|P|² + ε²)^{(r-2)/2}` with a decaying,
/// scale-relative smoothing `ε`, enforce monotone objective by step halving,
/// stop on relative objective change.
fn irls_run(
    ctx: &LsqContext,
    weights: &[f64],
    a_init: DVector<Complex64>,
    r: f64,
    opts: &LrOptions,
) -> (DVector<Complex64>, f64, usize, f64) {
    let mut a = a_init;
    let mut obj = ctx.objective(&a, weights, r);
    let total_mass: f64 = weights.iter().filter(|w| **w > 0.0).sum();
    let mut last_rel = f64::INFINITY;
    let mut iterations = 0;
    for it in 0..opts.max_iter {
        iterations = it + 1;
        let vals = ctx.values(&a);
        let mean_sq: f64 = vals
            .iter()
            .zip(weights)
            .filter(|(_, &w)| w > 0.0)
            .map(|(v, &w)| w * v.norm_sqr())
            .sum::<f64>()
            / total_mass.max(f64::MIN_POSITIVE);
        let scale = mean_sq.sqrt().max(f64::MIN_POSITIVE);
        let eps = scale.sqrt() * (0.1 * 0.5f64.powi(it as i32)).max(1e-10);
        let eps_sq = eps * eps;
        let reweighted: Vec<f64> = vals
            .iter()
            .zip(weights)
            .map(|(v, &w)| w * (v.norm_sqr() + eps_sq).powf(0.5 * r - 1.0))
            .collect();
        let step = match ctx.solve_weighted(&reweighted) {
            Ok(s) => s,
            Err(_) => break,
        };
        let mut t = 1.0;
        let mut accepted = false;
        while t >= 1.0 / (1 << 20) as f64 {
            let a_try = &a + (&step.coeffs - &a).scale(t);
            let obj_try = ctx.objective(&a_try, weights, r);
            if obj_try <= obj * (1.0 + 1e-15) || obj == 0.0 {
                let rel = if obj > 0.0 { (obj - obj_try).max(0.0) / obj } else { 0.0 };
                a = a_try;
                obj = obj_try;
                last_rel = rel;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            last_rel = 0.0;
            break;
        }
        if last_rel <= opts.tol {
            break;
        }
    }
    (a, obj, iterations, last_rel.min(1.0))
}

/// `L²` Christoffel problem on the unit circle, normalized at `w0 ∈ [0, 1)`
/// in the disk. Used by the Faber-trial upper-bound construction.
pub fn solve_l2_circle(cm: &CircleMeasure, w0: f64, n: usize) -> Result<ChristoffelSolution> {
    solve_lr_circle(cm, w0, n, 2.0, &LrOptions::default())
}

/// `L^r` circle Christoffel problem, same conventions as [`solve_lr`].
pub fn solve_lr_circle(
    cm: &CircleMeasure,
    w0: f64,
    n: usize,
    r: f64,
    opts: &LrOptions,
) -> Result<ChristoffelSolution> {
    if !(0.0..1.0).contains(&w0) {
        return Err(Error::invalid("solve_circle", format!("w0 = {w0} must be in [0,1)")));
    }
    if cm.support_count() < n + 1 {
        return Err(Error::RankDeficient);
    }
    let ctx = LsqContext::circle(cm, w0, n);
    let mut weights = cm.weights.clone();
    weights.extend(cm.atoms.iter().map(|a| a.1));

    let exact = (r - 2.0).abs() < 1e-14;
    let (a, report) = if exact {
        let step = ctx.solve_weighted(&weights)?;
        let rep = SolverReport {
            iterations: 1,
            final_residual: step.kkt,
            converged: true,
            ..SolverReport::default()
        };
        (step.coeffs, rep)
    } else {
        let seed = ctx.solve_weighted(&weights)?;
        let (a, _, iterations, final_rel) = irls_run(&ctx, &weights, seed.coeffs, r, opts);
        let rep = SolverReport {
            iterations,
            final_residual: final_rel,
            nonconvex: r < 1.0,
            converged: final_rel <= opts.tol,
            ..SolverReport::default()
        };
        (a, rep)
    };
    let poly = ctx.monomialize(None, &a);
    let lambda = quadrature_objective(&poly, &ctx.points, &weights, r);
    Ok(ChristoffelSolution {
        poly,
        lambda,
        widom: lambda.powf(1.0 / r),
        r,
        n,
        report,
    })
}

/// Sweep `λ_n` over a degree list; rows carry the entropy lower bound of the
/// measure's boundary density.
pub fn widom_sweep(
    nm: &NormalizedMap,
    m: &DiscretizedMeasure,
    r: f64,
    degrees: &[usize],
    opts: &LrOptions,
) -> Result<Vec<WidomRow>> {
    let nmax = degrees.iter().copied().max().unwrap_or(0);
    let table = FaberTable::up_to(nm.map(), nmax);
    let s = entropy_of_measure(nm, m);
    let mut rows: Vec<WidomRow> = degrees
        .par_iter()
        .map(|&n| {
            let sol = solve_lr_with(nm, m, n, r, opts, &table)?;
            let widom_r = (-(n as f64) * r * nm.capacity().ln()).exp() * sol.lambda;
            Ok(WidomRow {
                n,
                lambda: sol.lambda,
                widom_r,
                lower_bound: s,
                gap: widom_r - s,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|row| row.n);
    Ok(rows)
}

/// Solve the same measure with the normalization point moving along a path;
/// the Widom factor is continuous in the point and tends to the monic value
/// as `ζ → ∞`.
pub fn widom_continuity_probe(
    map: &Arc<ExteriorMap>,
    m: &DiscretizedMeasure,
    r: f64,
    n: usize,
    path: &[ExtendedPoint],
    opts: &LrOptions,
) -> Result<Vec<ContinuityRow>> {
    let table = FaberTable::up_to(map, n);
    path.iter()
        .map(|&zeta| {
            let nm = NormalizedMap::new(map.clone(), zeta)?;
            let sol = solve_lr_with(&nm, m, n, r, opts, &table)?;
            Ok(ContinuityRow {
                zeta,
                lambda: sol.lambda,
                widom: sol.widom,
            })
        })
        .collect()
}
