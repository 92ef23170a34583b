//! Discretized measures `μ = f dω_{z0} + Σ mass_i δ_{a_i}` on the region.
//!
//! Boundary parts are stored as quadrature weights `f(z_j)·ω_{z0}-weight_j`
//! on a [`BoundaryGrid`]; singular parts are finitely many atoms inside the
//! closed region. Entropy integrals `S(f, z0) = exp ∫ log f dω_{z0}` are
//! computed on the same grid.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geometry::{harmonic_weights, unit, BoundaryGrid, NormalizedMap};
use crate::Complex64;

/// Floor applied to densities before taking logarithms.
const LOG_FLOOR: f64 = 1e-300;
/// Entropy sums at or below this value declare the density non-Szegő at
/// working precision and the entropy integral is reported as zero.
const NON_SZEGO_CUTOFF: f64 = -575.6462732485114; // ln(1e-250)

/// Boundary density presets, evaluated in the circle parameter `θ` through
/// `z = Ψ(e^{iθ})`. The same type doubles as the weight `ρ` of sup-norm
/// problems.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DensitySpec {
    Constant {
        value: f64,
    },
    /// `f(z) = |z − point|`.
    AbsLinear {
        point: Complex64,
    },
    /// `f(z) = |z − point|²`.
    AbsLinearSquared {
        point: Complex64,
    },
    /// `f(Ψ(e^{iθ})) = exp(constant + Σ_k cos_k·cos(kθ) + sin_k·sin(kθ))`.
    ExpTrig {
        #[serde(default)]
        constant: f64,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        sin: Vec<f64>,
    },
    /// `f(z) = |z − point|^power` with `point` on the boundary. Log-integrable
    /// for every finite power, so the entropy integral stays positive.
    Vanishing {
        point: Complex64,
        power: f64,
    },
    /// Indicator-type weight vanishing on the boundary arc
    /// `θ ∈ [theta_lo, theta_hi]` and equal to one elsewhere; the standard
    /// non-Szegő preset.
    ArcZero {
        theta_lo: f64,
        theta_hi: f64,
    },
    /// Arbitrary positive values per grid node; length must match the grid.
    Custom {
        values: Vec<f64>,
    },
}

impl DensitySpec {
    pub const fn kind_name(&self) -> &'static str {
        match self {
            DensitySpec::Constant { .. } => "constant",
            DensitySpec::AbsLinear { .. } => "abs_linear",
            DensitySpec::AbsLinearSquared { .. } => "abs_linear_squared",
            DensitySpec::ExpTrig { .. } => "exp_trig",
            DensitySpec::Vanishing { .. } => "vanishing",
            DensitySpec::ArcZero { .. } => "arc_zero",
            DensitySpec::Custom { .. } => "custom",
        }
    }

    fn eval_boundary(&self, theta: f64, z: Complex64) -> f64 {
        match self {
            DensitySpec::Constant { value } => *value,
            DensitySpec::AbsLinear { point } => (z - point).norm(),
            DensitySpec::AbsLinearSquared { point } => (z - point).norm_sqr(),
            DensitySpec::ExpTrig { constant, cos, sin } => {
                let mut s = *constant;
                for (k, a) in cos.iter().enumerate() {
                    s += a * ((k + 1) as f64 * theta).cos();
                }
                for (k, b) in sin.iter().enumerate() {
                    s += b * ((k + 1) as f64 * theta).sin();
                }
                s.exp()
            }
            DensitySpec::Vanishing { point, power } => {
                (z - point).norm().max(1e-150).powf(*power)
            }
            DensitySpec::ArcZero { theta_lo, theta_hi } => {
                let t = theta.rem_euclid(2.0 * std::f64::consts::PI);
                if t >= *theta_lo && t <= *theta_hi {
                    0.0
                } else {
                    1.0
                }
            }
            DensitySpec::Custom { .. } => {
                unreachable!("custom tables are evaluated through eval_grid")
            }
        }
    }

    /// Values on all grid nodes. Custom tables are length-checked here.
    pub fn eval_grid(&self, grid: &BoundaryGrid) -> Result<Vec<f64>> {
        if let DensitySpec::Custom { values } = self {
            if values.len() != grid.len() {
                return Err(Error::invalid(
                    "density",
                    format!(
                        "custom table has {} values for a grid of {} nodes",
                        values.len(),
                        grid.len()
                    ),
                ));
            }
            if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return Err(Error::invalid("density", "custom values must be nonnegative"));
            }
            return Ok(values.clone());
        }
        let vals: Vec<f64> = grid
            .thetas()
            .iter()
            .zip(grid.nodes())
            .map(|(&t, &z)| self.eval_boundary(t, z))
            .collect();
        if vals.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::invalid("density", "density must be nonnegative and finite"));
        }
        Ok(vals)
    }

    /// Value at an arbitrary point of the plane, for density kinds that are
    /// genuine point functions. Angle-parameterized kinds return `None`.
    pub fn eval_point(&self, z: Complex64) -> Option<f64> {
        match self {
            DensitySpec::Constant { value } => Some(*value),
            DensitySpec::AbsLinear { point } => Some((z - point).norm()),
            DensitySpec::AbsLinearSquared { point } => Some((z - point).norm_sqr()),
            DensitySpec::Vanishing { point, power } => {
                Some((z - point).norm().max(1e-150).powf(*power))
            }
            _ => None,
        }
    }
}

/// Point mass at a location of the closed region.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Atom {
    pub location: Complex64,
    pub mass: f64,
}

/// Where an atom sits relative to the boundary curve.
enum AtomPosition {
    Interior,
    Boundary { w: Complex64 },
}

fn classify_atom(grid: &BoundaryGrid, z: Complex64, index: usize) -> Result<AtomPosition> {
    match grid.map().invert(z) {
        Ok(w) => {
            if w.norm() <= 1.0 + 1e-9 {
                Ok(AtomPosition::Boundary { w: w / w.norm() })
            } else {
                Err(Error::AtomOutsideRegion { index })
            }
        }
        Err(Error::InsideRegion) => Ok(AtomPosition::Interior),
        Err(Error::NoConvergence { .. }) => {
            // Newton can fail deep inside the region; fall back to the
            // winding number of the sampled boundary.
            let mut winding = 0.0;
            let nodes = grid.nodes();
            for j in 0..nodes.len() {
                let a = nodes[j] - z;
                let b = nodes[(j + 1) % nodes.len()] - z;
                winding += (b / a).arg();
            }
            if winding.abs() > std::f64::consts::PI {
                Ok(AtomPosition::Interior)
            } else {
                Err(Error::AtomOutsideRegion { index })
            }
        }
        Err(e) => Err(e),
    }
}

/// Measure `μ = f dω_{z0} + Σ mass_i δ_{a_i}` discretized on a boundary grid.
#[derive(Debug, Clone)]
pub struct DiscretizedMeasure {
    grid: Arc<BoundaryGrid>,
    boundary_weights: Vec<f64>,
    atoms: Vec<Atom>,
    total_mass: f64,
}

impl DiscretizedMeasure {
    /// Assemble a measure from raw per-node weights. The weights are the
    /// measure itself, not a density; use [`build_measure`] for the
    /// `f dω_{z0}` form.
    pub fn from_weights(
        grid: Arc<BoundaryGrid>,
        boundary_weights: Vec<f64>,
        atoms: Vec<Atom>,
    ) -> Result<Self> {
        if boundary_weights.len() != grid.len() {
            return Err(Error::invalid(
                "measure",
                "weight vector length does not match the grid",
            ));
        }
        if boundary_weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::invalid("measure", "weights must be nonnegative"));
        }
        for (i, atom) in atoms.iter().enumerate() {
            if !(atom.mass > 0.0) {
                return Err(Error::invalid("measure", format!("atom {i} has nonpositive mass")));
            }
            classify_atom(&grid, atom.location, i)?;
        }
        let total_mass =
            boundary_weights.iter().sum::<f64>() + atoms.iter().map(|a| a.mass).sum::<f64>();
        Ok(DiscretizedMeasure {
            grid,
            boundary_weights,
            atoms,
            total_mass,
        })
    }

    pub fn grid(&self) -> &Arc<BoundaryGrid> {
        &self.grid
    }

    pub fn boundary_weights(&self) -> &[f64] {
        &self.boundary_weights
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Number of points carrying strictly positive mass.
    pub fn support_count(&self) -> usize {
        self.boundary_weights.iter().filter(|w| **w > 0.0).count() + self.atoms.len()
    }

    /// The same measure scaled by `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        DiscretizedMeasure {
            grid: self.grid.clone(),
            boundary_weights: self.boundary_weights.iter().map(|w| c * w).collect(),
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    location: a.location,
                    mass: c * a.mass,
                })
                .collect(),
            total_mass: c * self.total_mass,
        }
    }

    /// The boundary part only.
    pub fn without_atoms(&self) -> Self {
        DiscretizedMeasure {
            grid: self.grid.clone(),
            boundary_weights: self.boundary_weights.clone(),
            atoms: Vec::new(),
            total_mass: self.boundary_weights.iter().sum(),
        }
    }
}

/// Build `μ = f dω_{z0} + atoms` on the grid: boundary weight
/// `f(z_j)·harmonic_weight_j` per node, atoms copied verbatim after the
/// region-membership check.
pub fn build_measure(
    nm: &NormalizedMap,
    grid: &Arc<BoundaryGrid>,
    f: &DensitySpec,
    atoms: &[Atom],
) -> Result<DiscretizedMeasure> {
    let fvals = f.eval_grid(grid)?;
    let hw = harmonic_weights(nm, grid);
    let weights: Vec<f64> = fvals.iter().zip(&hw).map(|(f, w)| f * w).collect();
    DiscretizedMeasure::from_weights(grid.clone(), weights, atoms.to_vec())
}

pub(crate) fn entropy_from_values(hw: &[f64], fvals: &[f64]) -> f64 {
    let s: f64 = hw
        .iter()
        .zip(fvals)
        .map(|(w, f)| w * f.max(LOG_FLOOR).ln())
        .sum();
    if s <= NON_SZEGO_CUTOFF {
        0.0
    } else {
        s.exp()
    }
}

pub(crate) fn is_szego_sum(log_sum: f64) -> bool {
    log_sum > NON_SZEGO_CUTOFF
}

pub(crate) fn log_floor(f: f64) -> f64 {
    f.max(LOG_FLOOR).ln()
}

/// Entropy integral `S(f, z0) = exp(Σ_j ω-weight_j · log f(z_j))` with the
/// working-precision floor; zero when the density is non-Szegő.
pub fn entropy(nm: &NormalizedMap, grid: &BoundaryGrid, f: &DensitySpec) -> Result<f64> {
    let fvals = f.eval_grid(grid)?;
    Ok(entropy_from_values(&harmonic_weights(nm, grid), &fvals))
}

/// Entropy of the boundary density of a discretized measure with respect to
/// `ω_{z0}`; atoms are singular and never contribute.
pub fn entropy_of_measure(nm: &NormalizedMap, m: &DiscretizedMeasure) -> f64 {
    let hw = harmonic_weights(nm, m.grid());
    let fvals: Vec<f64> = m
        .boundary_weights()
        .iter()
        .zip(&hw)
        .map(|(bw, w)| bw / w)
        .collect();
    entropy_from_values(&hw, &fvals)
}

/// Measure on the unit circle: nodes `e^{iφ_j}`, plus boundary atoms given by
/// their angles.
#[derive(Debug, Clone)]
pub struct CircleMeasure {
    pub angles: Vec<f64>,
    pub weights: Vec<f64>,
    pub atoms: Vec<(f64, f64)>,
}

impl CircleMeasure {
    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum::<f64>() + self.atoms.iter().map(|a| a.1).sum::<f64>()
    }

    pub fn nodes(&self) -> Vec<Complex64> {
        self.angles.iter().map(|&t| unit(t)).collect()
    }

    pub fn support_count(&self) -> usize {
        self.weights.iter().filter(|w| **w > 0.0).count() + self.atoms.len()
    }
}

/// Pushforward `Φ_{z0}^* μ` to the unit circle: node `z_j` maps to
/// `e^{i(θ_j + α)}` with identical weight. Only boundary atoms push forward
/// exactly; interior atoms are rejected.
pub fn pushforward_to_circle(nm: &NormalizedMap, m: &DiscretizedMeasure) -> Result<CircleMeasure> {
    let alpha = nm.rotation().arg();
    let angles: Vec<f64> = m
        .grid()
        .thetas()
        .iter()
        .map(|&t| (t + alpha).rem_euclid(2.0 * std::f64::consts::PI))
        .collect();
    let mut atoms = Vec::with_capacity(m.atoms().len());
    for (i, atom) in m.atoms().iter().enumerate() {
        match classify_atom(m.grid(), atom.location, i)? {
            AtomPosition::Boundary { w } => {
                atoms.push((nm.phi_from_w(w).arg().rem_euclid(2.0 * std::f64::consts::PI), atom.mass));
            }
            AtomPosition::Interior => return Err(Error::InteriorAtomNotPushable),
        }
    }
    Ok(CircleMeasure {
        angles,
        weights: m.boundary_weights().to_vec(),
        atoms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ExtendedPoint, ExteriorMap};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn disk_setup(m: usize, z0: ExtendedPoint) -> (NormalizedMap, Arc<BoundaryGrid>) {
        let map = Arc::new(ExteriorMap::disk(1.0).unwrap());
        let grid = Arc::new(BoundaryGrid::new(map.clone(), m).unwrap());
        (NormalizedMap::new(map, z0).unwrap(), grid)
    }

    #[test]
    fn constant_density_reproduces_harmonic_weights() {
        let (nm, grid) = disk_setup(64, ExtendedPoint::Finite(c(2.0, 0.0)));
        let m = build_measure(&nm, &grid, &DensitySpec::Constant { value: 1.0 }, &[]).unwrap();
        let hw = harmonic_weights(&nm, &grid);
        for (a, b) in m.boundary_weights().iter().zip(&hw) {
            assert_eq!(a, b);
        }
        assert!((m.total_mass() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn atom_adds_mass() {
        let (nm, grid) = disk_setup(64, ExtendedPoint::Infinity);
        let atoms = [Atom {
            location: c(0.0, 0.0),
            mass: 0.3,
        }];
        let m = build_measure(&nm, &grid, &DensitySpec::Constant { value: 1.0 }, &atoms).unwrap();
        assert!((m.total_mass() - 1.3).abs() < 1e-12);
        assert_eq!(m.support_count(), 65);
    }

    #[test]
    fn atom_outside_is_rejected() {
        let (nm, grid) = disk_setup(64, ExtendedPoint::Infinity);
        let atoms = [Atom {
            location: c(1.5, 0.0),
            mass: 0.1,
        }];
        let err = build_measure(&nm, &grid, &DensitySpec::Constant { value: 1.0 }, &atoms);
        assert!(matches!(err, Err(Error::AtomOutsideRegion { index: 0 })));
    }

    #[test]
    fn abs_linear_weights_are_pointwise_products() {
        let (nm, grid) = disk_setup(64, ExtendedPoint::Finite(c(2.0, 0.0)));
        let f = DensitySpec::AbsLinear { point: c(2.0, 0.0) };
        let m = build_measure(&nm, &grid, &f, &[]).unwrap();
        let hw = harmonic_weights(&nm, &grid);
        for ((bw, w), z) in m.boundary_weights().iter().zip(&hw).zip(grid.nodes()) {
            assert!((bw - (z - c(2.0, 0.0)).norm() * w).abs() < 1e-15);
        }
    }

    #[test]
    fn entropy_of_constant_density_is_one() {
        for z0 in [ExtendedPoint::Infinity, ExtendedPoint::Finite(c(2.0, 0.0))] {
            let (nm, grid) = disk_setup(128, z0);
            let s = entropy(&nm, &grid, &DensitySpec::Constant { value: 1.0 }).unwrap();
            assert!((s - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn entropy_mean_value_oracle() {
        // For z0 = ∞ on the unit disk, S(|z−2|²) = exp((1/2π)∫ log|e^{iθ}−2|² dθ).
        // Brute quadrature of the integral on a fine unrelated grid:
        let brute = {
            let n = 1 << 15;
            let mut s = 0.0;
            for j in 0..n {
                let t = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                s += (unit(t) - c(2.0, 0.0)).norm_sqr().ln();
            }
            (s / n as f64).exp()
        };
        assert!((brute - 4.0).abs() < 1e-10);

        let (nm, grid) = disk_setup(256, ExtendedPoint::Infinity);
        let s = entropy(&nm, &grid, &DensitySpec::AbsLinearSquared { point: c(2.0, 0.0) }).unwrap();
        assert!((s - brute).abs() < 1e-10);
    }

    #[test]
    fn entropy_matches_blaschke_closed_form() {
        // disk(1), z0 = 2, f = |z − 2|: S = (|2|² − 1)/(1·|2|) = 1.5.
        let (nm, grid) = disk_setup(256, ExtendedPoint::Finite(c(2.0, 0.0)));
        let s = entropy(&nm, &grid, &DensitySpec::AbsLinear { point: c(2.0, 0.0) }).unwrap();
        assert!((s - 1.5).abs() < 1e-11);
    }

    #[test]
    fn entropy_jensen_and_scaling() {
        let (nm, grid) = disk_setup(128, ExtendedPoint::Finite(c(2.5, 1.0)));
        let f = DensitySpec::ExpTrig {
            constant: 0.1,
            cos: vec![0.4, -0.2],
            sin: vec![0.3],
        };
        let s = entropy(&nm, &grid, &f).unwrap();
        let hw = harmonic_weights(&nm, &grid);
        let fvals = f.eval_grid(&grid).unwrap();
        let mean: f64 = hw.iter().zip(&fvals).map(|(w, f)| w * f).sum();
        assert!(s <= mean * (1.0 + 1e-12));

        // log-linearity under constant scaling
        let scaled = DensitySpec::Custom {
            values: fvals.iter().map(|f| 3.0 * f).collect(),
        };
        let s3 = entropy(&nm, &grid, &scaled).unwrap();
        assert!((s3 / s - 3.0).abs() < 1e-10);
    }

    #[test]
    fn entropy_ignores_atoms() {
        let (nm, grid) = disk_setup(128, ExtendedPoint::Infinity);
        let f = DensitySpec::Constant { value: 2.0 };
        let atoms = [Atom {
            location: c(0.2, 0.1),
            mass: 0.4,
        }];
        let with = build_measure(&nm, &grid, &f, &atoms).unwrap();
        let without = build_measure(&nm, &grid, &f, &[]).unwrap();
        assert_eq!(entropy_of_measure(&nm, &with), entropy_of_measure(&nm, &without));
    }

    #[test]
    fn non_szego_arc_density() {
        let (nm, grid) = disk_setup(128, ExtendedPoint::Infinity);
        let f = DensitySpec::ArcZero {
            theta_lo: 0.0,
            theta_hi: std::f64::consts::FRAC_PI_2,
        };
        let s = entropy(&nm, &grid, &f).unwrap();
        // A quarter of the nodes are floored: S ≈ exp(0.25·ln 1e-300),
        // astronomically small but above the declared cutoff.
        assert!(s < 1e-70);
    }

    #[test]
    fn pushforward_uniform_and_mass() {
        let (nm, grid) = disk_setup(64, ExtendedPoint::Infinity);
        let m = build_measure(&nm, &grid, &DensitySpec::Constant { value: 1.0 }, &[]).unwrap();
        let cm = pushforward_to_circle(&nm, &m).unwrap();
        assert!(cm.weights.iter().all(|&w| (w - 1.0 / 64.0).abs() < 1e-15));
        assert!((cm.total_mass() - m.total_mass()).abs() < 1e-15);
        assert!((cm.angles[1] - grid.thetas()[1]).abs() < 1e-15);
    }

    #[test]
    fn pushforward_boundary_atom() {
        let map = Arc::new(ExteriorMap::ellipse(1.0, 0.25).unwrap());
        let grid = Arc::new(BoundaryGrid::new(map.clone(), 64).unwrap());
        let nm = NormalizedMap::infinity(map.clone());
        let atoms = [Atom {
            location: map.eval(c(1.0, 0.0)).unwrap(),
            mass: 0.2,
        }];
        let m = build_measure(&nm, &grid, &DensitySpec::Constant { value: 1.0 }, &atoms).unwrap();
        let cm = pushforward_to_circle(&nm, &m).unwrap();
        assert_eq!(cm.atoms.len(), 1);
        // α = 0 at infinity, so the atom lands at angle 0 with its mass.
        assert!(cm.atoms[0].0.abs() < 1e-9 || (cm.atoms[0].0 - 2.0 * std::f64::consts::PI).abs() < 1e-9);
        assert!((cm.atoms[0].1 - 0.2).abs() < 1e-15);
    }

    #[test]
    fn pushforward_rejects_interior_atom() {
        let (nm, grid) = disk_setup(64, ExtendedPoint::Infinity);
        let atoms = [Atom {
            location: c(0.0, 0.0),
            mass: 0.2,
        }];
        let m = build_measure(&nm, &grid, &DensitySpec::Constant { value: 1.0 }, &atoms).unwrap();
        assert!(matches!(
            pushforward_to_circle(&nm, &m),
            Err(Error::InteriorAtomNotPushable)
        ));
    }

    #[test]
    fn custom_table_length_checked() {
        let (nm, grid) = disk_setup(64, ExtendedPoint::Infinity);
        let f = DensitySpec::Custom { values: vec![1.0; 32] };
        assert!(build_measure(&nm, &grid, &f, &[]).is_err());
    }
}
