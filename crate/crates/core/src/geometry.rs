//! Jordan regions given by exterior conformal maps with finite Laurent tails.
//!
//! The region `K` is encoded through the conformal map
//! `Ψ(w) = cap·w + c0 + Σ_{k=1..L} c_k w^{-k}` from `{|w| ≥ 1}` onto the
//! closure of `Ω = C̄ \ K`. The inverse map `Φ = Ψ^{-1}` carries all the
//! potential theory: `cap` is the logarithmic capacity of `K`, the Green
//! function of `Ω` with pole at infinity is `log|Φ(z)|`, and the harmonic
//! measure of a point `z0 ∈ Ω` pushes forward to a Poisson kernel on the
//! unit circle.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::{next_pow2, Complex64};

const INJECTIVITY_GRID: usize = 512;
const MARGIN_GRID: usize = 2048;
const MIN_DERIVATIVE_MARGIN: f64 = 1e-8;
const INVERT_REL_RESIDUAL: f64 = 1e-12;
const INVERT_MAX_ITER: usize = 100;
/// Converged inversions with modulus below `1 - INSIDE_TOL` certify that the
/// point lies inside the region; moduli in `[1 - INSIDE_TOL, 1]` are treated
/// as boundary points.
const INSIDE_TOL: f64 = 1e-9;

pub(crate) fn unit(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

/// Exterior conformal map `Ψ(w) = cap·w + c0 + Σ c_k w^{-k}` of a Jordan
/// region, restricted to `|w| ≥ 1`.
///
/// Injectivity on the closed exterior disk is certified at construction:
/// either the sufficient coefficient condition `Σ k|c_k| < cap` holds, or the
/// sampled boundary curve is verified to be simple and `|Ψ'|` bounded away
/// from zero on the unit circle.
#[derive(Debug, Clone)]
pub struct ExteriorMap {
    cap: f64,
    c0: Complex64,
    tail: Vec<Complex64>,
    smoothness_margin: f64,
}

impl ExteriorMap {
    pub fn new(cap: f64, c0: Complex64, tail: Vec<Complex64>) -> Result<Self> {
        if !cap.is_finite() || cap <= 0.0 {
            return Err(Error::InvalidGeometry(format!(
                "leading coefficient cap = {cap} must be positive"
            )));
        }
        let mut tail = tail;
        while tail.last().is_some_and(|c| c.norm() == 0.0) {
            tail.pop();
        }
        if tail.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidGeometry("tail coefficients must be finite".into()));
        }
        let map = ExteriorMap {
            cap,
            c0,
            tail,
            smoothness_margin: 0.0,
        };

        let margin = (0..MARGIN_GRID)
            .map(|j| {
                let th = 2.0 * std::f64::consts::PI * j as f64 / MARGIN_GRID as f64;
                map.derivative(unit(th)).norm()
            })
            .fold(f64::INFINITY, f64::min);
        if margin < MIN_DERIVATIVE_MARGIN {
            return Err(Error::InvalidGeometry(format!(
                "|Ψ'| = {margin:.3e} on the unit circle is below {MIN_DERIVATIVE_MARGIN:e}"
            )));
        }

        let tail_sum: f64 = map
            .tail
            .iter()
            .enumerate()
            .map(|(i, c)| (i + 1) as f64 * c.norm())
            .sum();
        if tail_sum >= cap && !map.boundary_is_simple() {
            return Err(Error::InvalidGeometry(
                "boundary curve is not simple on the construction grid".into(),
            ));
        }

        Ok(ExteriorMap {
            smoothness_margin: margin,
            ..map
        })
    }

    /// Disk of radius `r` centered at the origin: `Ψ(w) = r·w`.
    pub fn disk(radius: f64) -> Result<Self> {
        Self::new(radius, Complex64::new(0.0, 0.0), Vec::new())
    }

    /// Ellipse `Ψ(w) = c·w + d/w` with semi-axes `c + d` and `c − d`.
    /// Requires `|d| < c` so that the critical points of `Ψ` stay inside the
    /// unit disk.
    pub fn ellipse(c: f64, d: f64) -> Result<Self> {
        if d.abs() >= c * (1.0 - 1e-9) {
            return Err(Error::InvalidGeometry(format!(
                "ellipse requires |d| < c (got c = {c}, d = {d})"
            )));
        }
        Self::new(c, Complex64::new(0.0, 0.0), vec![Complex64::new(d, 0.0)])
    }

    /// Unit-capacity perturbation of the circle. The tail must satisfy the
    /// sufficient injectivity condition `Σ k|c_k| < 1`.
    pub fn perturbed_circle(c0: Complex64, tail: Vec<Complex64>) -> Result<Self> {
        let tail_sum: f64 = tail
            .iter()
            .enumerate()
            .map(|(i, c)| (i + 1) as f64 * c.norm())
            .sum();
        if tail_sum >= 1.0 {
            return Err(Error::InvalidGeometry(format!(
                "perturbed circle requires Σ k|c_k| < 1 (got {tail_sum})"
            )));
        }
        Self::new(1.0, c0, tail)
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn c0(&self) -> Complex64 {
        self.c0
    }

    pub fn tail(&self) -> &[Complex64] {
        &self.tail
    }

    /// Minimum of `|Ψ'|` over the unit circle, cached at construction.
    pub fn smoothness_margin(&self) -> f64 {
        self.smoothness_margin
    }

    /// `Ψ(w)` for `|w| ≥ 1`.
    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        let modulus = w.norm();
        if modulus < 1.0 - 1e-12 {
            return Err(Error::WInsideDisk { modulus });
        }
        Ok(self.eval_any(w))
    }

    /// Series evaluation without the domain check; used internally where
    /// Newton iterates may dip below the unit circle.
    pub(crate) fn eval_any(&self, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let inv = 1.0 / w;
        for c in self.tail.iter().rev() {
            acc = (acc + c) * inv;
        }
        self.cap * w + self.c0 + acc
    }

    /// `Ψ'(w) = cap − Σ k c_k w^{-k-1}`.
    pub fn derivative(&self, w: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let inv = 1.0 / w;
        for (i, c) in self.tail.iter().enumerate().rev() {
            acc = acc * inv + (i + 1) as f64 * c;
        }
        self.cap - acc * inv * inv
    }

    /// Inverse map `Φ(z)` computed by damped Newton iteration on `Ψ(w) = z`.
    ///
    /// Converges to relative residual `1e-12`; the returned `w` satisfies
    /// `|w| ≥ 1` up to a boundary tolerance. Points strictly inside the
    /// region report [`Error::InsideRegion`].
    pub fn invert(&self, z: Complex64) -> Result<Complex64> {
        let scale = z.norm().max(1.0);
        let mut w = (z - self.c0) / self.cap;
        if w.norm() < 0.05 {
            // Keep the iterate away from the pole of the tail at w = 0.
            w = Complex64::new(0.05, 0.0);
        }
        let mut residual = (self.eval_any(w) - z).norm();
        for _ in 0..INVERT_MAX_ITER {
            if residual <= INVERT_REL_RESIDUAL * scale {
                return if w.norm() < 1.0 - INSIDE_TOL {
                    Err(Error::InsideRegion)
                } else {
                    Ok(w)
                };
            }
            let d = self.derivative(w);
            if d.norm() < 1e-14 {
                w *= Complex64::new(1.0 + 1e-6, 1e-6);
                residual = (self.eval_any(w) - z).norm();
                continue;
            }
            let step = (self.eval_any(w) - z) / d;
            let mut t = 1.0;
            let mut accepted = false;
            while t >= 1.0 / 1024.0 {
                let mut cand = w - t * step;
                if cand.norm() < 1e-3 {
                    cand = Complex64::new(1e-3, 0.0);
                }
                let r_new = (self.eval_any(cand) - z).norm();
                if r_new < residual {
                    w = cand;
                    residual = r_new;
                    accepted = true;
                    break;
                }
                t *= 0.5;
            }
            if !accepted {
                return Err(Error::NoConvergence { residual });
            }
        }
        if residual <= INVERT_REL_RESIDUAL * scale {
            if w.norm() < 1.0 - INSIDE_TOL {
                Err(Error::InsideRegion)
            } else {
                Ok(w)
            }
        } else {
            Err(Error::NoConvergence { residual })
        }
    }

    /// Green function `g(z) = log|Φ(z)|` of the complement with pole at
    /// infinity. Nonnegative, vanishing on the boundary.
    pub fn green(&self, z: Complex64) -> Result<f64> {
        Ok(self.invert(z)?.norm().ln().max(0.0))
    }

    /// Simple-curve test of the sampled boundary polygon.
    fn boundary_is_simple(&self) -> bool {
        let m = INJECTIVITY_GRID;
        let pts: Vec<Complex64> = (0..m)
            .map(|j| self.eval_any(unit(2.0 * std::f64::consts::PI * j as f64 / m as f64)))
            .collect();
        for i in 0..m {
            let a = pts[i];
            let b = pts[(i + 1) % m];
            for j in (i + 2)..m {
                if i == 0 && j == m - 1 {
                    continue; // adjacent around the wrap
                }
                let c = pts[j];
                let d = pts[(j + 1) % m];
                if segments_intersect(a, b, c, d) {
                    return false;
                }
            }
        }
        true
    }
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn segments_intersect(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

/// Normalization point of an extremal problem: a finite point of `Ω` or the
/// point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub enum ExtendedPoint {
    Finite(Complex64),
    Infinity,
}

impl ExtendedPoint {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedPoint::Finite(_))
    }
}

impl std::fmt::Display for ExtendedPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtendedPoint::Finite(z) => write!(f, "{}+{}i", z.re, z.im),
            ExtendedPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Exterior map rotated so that `Φ_{z0} = e^{iα} Φ` is positive at the
/// normalization point: `Φ_{z0}(z0) > 0` for finite `z0`, and `Φ_{z0} = Φ`
/// for `z0 = ∞`.
#[derive(Debug, Clone)]
pub struct NormalizedMap {
    base: Arc<ExteriorMap>,
    z0: ExtendedPoint,
    rotation: Complex64,
    w0: f64,
}

impl NormalizedMap {
    pub fn new(base: Arc<ExteriorMap>, z0: ExtendedPoint) -> Result<Self> {
        match z0 {
            ExtendedPoint::Infinity => Ok(NormalizedMap {
                base,
                z0,
                rotation: Complex64::new(1.0, 0.0),
                w0: 0.0,
            }),
            ExtendedPoint::Finite(point) => {
                let w = base.invert(point)?;
                let modulus = w.norm();
                if modulus <= 1.0 + 1e-10 {
                    return Err(Error::InsideRegion);
                }
                Ok(NormalizedMap {
                    base,
                    z0,
                    rotation: w.conj() / modulus,
                    w0: 1.0 / modulus,
                })
            }
        }
    }

    pub fn infinity(base: Arc<ExteriorMap>) -> Self {
        Self::new(base, ExtendedPoint::Infinity).expect("infinity normalization cannot fail")
    }

    pub fn map(&self) -> &Arc<ExteriorMap> {
        &self.base
    }

    pub fn z0(&self) -> ExtendedPoint {
        self.z0
    }

    /// `e^{iα}` with `Φ_{z0} = e^{iα} Φ`.
    pub fn rotation(&self) -> Complex64 {
        self.rotation
    }

    /// `1/Φ_{z0}(z0)` for finite `z0`, zero for `z0 = ∞`.
    pub fn w0(&self) -> f64 {
        self.w0
    }

    /// `Φ_{z0}(z)` via Newton inversion of `Ψ`.
    pub fn phi(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.rotation * self.base.invert(z)?)
    }

    /// `Φ_{z0}(Ψ(w))` without inversion, for points given in map coordinates.
    pub fn phi_from_w(&self, w: Complex64) -> Complex64 {
        self.rotation * w
    }

    /// Capacity `C(K, z0)`: the logarithmic capacity for `z0 = ∞`, and
    /// `1/Φ_{z0}(z0) = e^{-g(z0)}` for finite `z0`.
    pub fn capacity(&self) -> f64 {
        match self.z0 {
            ExtendedPoint::Infinity => self.base.cap(),
            ExtendedPoint::Finite(_) => self.w0,
        }
    }
}

/// Uniform boundary quadrature grid `z_j = Ψ(e^{iθ_j})`.
#[derive(Debug, Clone)]
pub struct BoundaryGrid {
    map: Arc<ExteriorMap>,
    m: usize,
    thetas: Vec<f64>,
    nodes: Vec<Complex64>,
    jacobian: Vec<f64>,
}

impl BoundaryGrid {
    /// `m` must be a power of two (discrete transforms are reused across the
    /// crate) and at least 16.
    pub fn new(map: Arc<ExteriorMap>, m: usize) -> Result<Self> {
        if m < 16 || !m.is_power_of_two() {
            return Err(Error::invalid(
                "grid_m",
                format!("node count {m} must be a power of two >= 16"),
            ));
        }
        let thetas: Vec<f64> = (0..m)
            .map(|j| 2.0 * std::f64::consts::PI * j as f64 / m as f64)
            .collect();
        let nodes: Vec<Complex64> = thetas.iter().map(|&t| map.eval_any(unit(t))).collect();
        let jacobian: Vec<f64> = thetas.iter().map(|&t| map.derivative(unit(t)).norm()).collect();
        for j in 0..m {
            if (nodes[j] - nodes[(j + 1) % m]).norm() == 0.0 {
                return Err(Error::InvalidGeometry("grid nodes are not distinct".into()));
            }
        }
        Ok(BoundaryGrid {
            map,
            m,
            thetas,
            nodes,
            jacobian,
        })
    }

    /// Grid sized for solves up to the given degree: the smallest power of
    /// two with `m ≥ 16·n_max`.
    pub fn for_degree(map: Arc<ExteriorMap>, n_max: usize) -> Result<Self> {
        Self::new(map, next_pow2((16 * n_max).max(64)))
    }

    pub fn map(&self) -> &Arc<ExteriorMap> {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    /// `|Ψ'(e^{iθ_j})|` per node.
    pub fn jacobian(&self) -> &[f64] {
        &self.jacobian
    }

    pub(crate) fn same_map(&self, nm: &NormalizedMap) -> bool {
        Arc::ptr_eq(&self.map, nm.map())
            || (self.map.cap() == nm.map().cap()
                && self.map.c0() == nm.map().c0()
                && self.map.tail() == nm.map().tail())
    }
}

/// Poisson kernel `P(w, ζ) = (1 − |w|²)/|ζ − w|²` for `|w| < 1`, `|ζ| = 1`.
pub fn poisson_kernel(w: Complex64, zeta: Complex64) -> f64 {
    (1.0 - w.norm_sqr()) / (zeta - w).norm_sqr()
}

/// Harmonic-measure quadrature weights of `z0` on the grid:
/// `weight_j = P(w0, e^{i(θ_j+α)})/M`, the pushforward of `ω_{z0}` under
/// `Φ_{z0}`. All weights equal `1/M` for `z0 = ∞`.
pub fn harmonic_weights(nm: &NormalizedMap, grid: &BoundaryGrid) -> Vec<f64> {
    debug_assert!(grid.same_map(nm));
    let m = grid.len() as f64;
    match nm.z0() {
        ExtendedPoint::Infinity => vec![1.0 / m; grid.len()],
        ExtendedPoint::Finite(_) => {
            let w0 = Complex64::new(nm.w0(), 0.0);
            grid.thetas()
                .iter()
                .map(|&t| poisson_kernel(w0, nm.phi_from_w(unit(t))) / m)
                .collect()
        }
    }
}

/// Harmonic-measure weights of an arbitrary point `z ∈ Ω` on the same grid,
/// using `Φ_{z0}^* ω_z = ω_D(1/&conj(Φ_{z0}(z)), ·)`.
pub fn harmonic_weights_at(
    nm: &NormalizedMap,
    grid: &BoundaryGrid,
    z: Complex64,
) -> Result<Vec<f64>> {
    let v = nm.phi(z)?.conj().inv();
    if v.norm() > 1.0 - 1e-10 {
        return Err(Error::invalid(
            "harmonic_weights_at",
            "point is too close to the boundary for a stable Poisson kernel",
        ));
    }
    let m = grid.len() as f64;
    Ok(grid
        .thetas()
        .iter()
        .map(|&t| poisson_kernel(v, nm.phi_from_w(unit(t))) / m)
        .collect())
}
