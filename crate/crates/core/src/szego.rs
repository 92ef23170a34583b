//! Szegő and outer functions, the weighted-Hardy-space reproducing kernel,
//! and the limit targets of rescaled extremal polynomials.
//!
//! On the disk, `D(z) = exp(ĉ_0/2 + Σ_{k≥1} ĉ_k z^k)` with `ĉ_k` the Fourier
//! coefficients of `log f`; its boundary modulus squared recovers `f`. The
//! outer function on `Ω` is obtained by reflecting `D` of the pushed-forward
//! density through `Φ_{z0}`, which also gives `|R_f(z)| = exp ∫ log f dω_z`
//! and `|R_f(z0)| = S(f, z0)`.

use crate::error::{Error, Result};
use crate::fourier::dft_forward;
use crate::geometry::{unit, BoundaryGrid, ExtendedPoint, NormalizedMap};
use crate::measure::{is_szego_sum, log_floor, DensitySpec, DiscretizedMeasure};
use crate::faber::PolynomialC;
use crate::Complex64;

/// Szegő function of a density sampled on a uniform circle grid.
#[derive(Debug, Clone)]
pub struct DiskSzego {
    chat: Vec<Complex64>,
    szego_condition: bool,
}

impl DiskSzego {
    /// Fourier-analyze `log f` from samples at `θ_j = 2πj/N`; coefficients
    /// truncated at `N/2`.
    pub fn from_samples(f_on_circle: &[f64]) -> Self {
        let n = f_on_circle.len();
        assert!(n >= 4, "need at least 4 samples");
        let logs: Vec<Complex64> = f_on_circle
            .iter()
            .map(|&f| Complex64::new(log_floor(f), 0.0))
            .collect();
        let spec = dft_forward(logs);
        let mut chat: Vec<Complex64> = (0..=n / 2).map(|k| spec[k] / n as f64).collect();
        chat[0] = Complex64::new(chat[0].re, 0.0);
        let szego_condition = is_szego_sum(chat[0].re);
        DiskSzego {
            chat,
            szego_condition,
        }
    }

    pub fn szego_condition(&self) -> bool {
        self.szego_condition
    }

    /// `D(z)` for `|z| < 1` (boundary evaluation is allowed and meaningful
    /// for smooth densities). Identically zero when the density is
    /// non-Szegő at working precision.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let modulus = z.norm();
        if modulus > 1.0 + 1e-12 {
            return Err(Error::invalid(
                "szego_disk",
                format!("|z| = {modulus} must not exceed 1"),
            ));
        }
        if !self.szego_condition {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.chat.iter().skip(1).rev() {
            acc = (acc + c) * z;
        }
        Ok((self.chat[0] * 0.5 + acc).exp())
    }
}

/// Szegő function `D(f dm, z)` of circle samples, evaluated at one point.
pub fn szego_disk(f_on_circle: &[f64], z: Complex64) -> Result<Complex64> {
    DiskSzego::from_samples(f_on_circle).eval(z)
}

/// Fourier data of `log f` in the circle parameter of `ω_{z0}`, together
/// with the entropy value at `z0`.
#[derive(Debug, Clone)]
pub struct SzegoData {
    fourier_log: Vec<Complex64>,
    s_value: f64,
    szego_condition: bool,
}

impl SzegoData {
    /// Analyze the density on the grid. The relevant circle parameter is
    /// `φ = θ + α`, so the plain-θ transform is phase-shifted by `e^{-ikα}`.
    pub fn build(nm: &NormalizedMap, grid: &BoundaryGrid, f: &DensitySpec) -> Result<Self> {
        let fvals = f.eval_grid(grid)?;
        let logs: Vec<Complex64> = fvals
            .iter()
            .map(|&f| Complex64::new(log_floor(f), 0.0))
            .collect();
        let m = grid.len();
        let spec = dft_forward(logs);
        let alpha = nm.rotation().arg();
        let mut fourier_log: Vec<Complex64> = (0..=m / 2)
            .map(|k| spec[k] / m as f64 * Complex64::new(0.0, -(k as f64) * alpha).exp())
            .collect();
        fourier_log[0] = Complex64::new(fourier_log[0].re, 0.0);

        // Entropy at z0 = Poisson average of log f at w0.
        let w0 = nm.w0();
        let mut log_sum = fourier_log[0].re;
        let mut w0k = w0;
        for c in fourier_log.iter().skip(1) {
            log_sum += 2.0 * c.re * w0k;
            w0k *= w0;
        }
        let szego_condition = is_szego_sum(log_sum);
        Ok(SzegoData {
            fourier_log,
            s_value: if szego_condition { log_sum.exp() } else { 0.0 },
            szego_condition,
        })
    }

    pub fn fourier_log(&self) -> &[Complex64] {
        &self.fourier_log
    }

    /// Entropy integral `S(f, z0)`; zero in the non-Szegő case.
    pub fn s_value(&self) -> f64 {
        self.s_value
    }

    pub fn szego_condition(&self) -> bool {
        self.szego_condition
    }

    /// `log R_f` at a point given by its image `Φ_{z0}(z)`; single-valued on
    /// the simply connected complement since `R_f` is zero-free.
    pub(crate) fn log_outer_at_phi(&self, phi: Complex64) -> Result<Complex64> {
        if !self.szego_condition {
            return Err(Error::NonSzego);
        }
        let modulus = phi.norm();
        if modulus < 1.0 - 1e-9 {
            return Err(Error::InsideRegion);
        }
        let v = phi.conj().inv();
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.fourier_log.iter().skip(1).rev() {
            acc = (acc + c) * v;
        }
        Ok((self.fourier_log[0] + 2.0 * acc).conj())
    }

    /// `log R_f(z0)` on the same branch.
    pub(crate) fn log_outer_at_z0(&self, nm: &NormalizedMap) -> Result<Complex64> {
        match nm.z0() {
            ExtendedPoint::Infinity => {
                if !self.szego_condition {
                    return Err(Error::NonSzego);
                }
                Ok(self.fourier_log[0])
            }
            ExtendedPoint::Finite(_) => {
                self.log_outer_at_phi(Complex64::new(1.0 / nm.w0(), 0.0))
            }
        }
    }
}

/// Outer function `R_f(z)` on the complement; zero if the density is
/// non-Szegő. `R_f(∞) > 0` and `|R_f(z0)| = S(f, z0)`.
pub fn outer_on_omega(nm: &NormalizedMap, sd: &SzegoData, z: Complex64) -> Result<Complex64> {
    if !sd.szego_condition() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(sd.log_outer_at_phi(nm.phi(z)?)?.exp())
}

/// Reproducing kernel `K_μ(z, w)` of the weighted Hardy space of the
/// complement. For `z0 = ∞` the kernel is the continuous `w0 → 0` limit.
pub fn reproducing_kernel(
    nm: &NormalizedMap,
    sd: &SzegoData,
    z: Complex64,
    w: Complex64,
) -> Result<Complex64> {
    if !sd.szego_condition() {
        return Err(Error::NonSzego);
    }
    let phi_z = nm.phi(z)?;
    let phi_w = nm.phi(w)?;
    let sqrt_rz = (sd.log_outer_at_phi(phi_z)? * 0.5).exp();
    let sqrt_rw = (sd.log_outer_at_phi(phi_w)? * 0.5).exp();
    let w0 = nm.w0();
    let one = Complex64::new(1.0, 0.0);
    let num = (one - w0 / phi_z) * (one - w0 / phi_w.conj());
    let den = one - (phi_z * phi_w.conj()).inv();
    Ok((sqrt_rz * sqrt_rw.conj()).inv() * num / (den * (1.0 - w0 * w0)))
}

/// Limit target `F_{μ,z0,r}(z) = (R_f(z0)/R_f(z))^{1/r}`, normalized so that
/// `F(z0) = 1` (and positive at infinity when `z0 = ∞`).
pub fn limit_target(nm: &NormalizedMap, sd: &SzegoData, r: f64, z: Complex64) -> Result<Complex64> {
    limit_target_at_phi(nm, sd, r, nm.phi(z)?)
}

/// Same as [`limit_target`] with `Φ_{z0}(z)` supplied directly; avoids the
/// Newton inversion on level curves and boundary grids.
pub fn limit_target_at_phi(
    nm: &NormalizedMap,
    sd: &SzegoData,
    r: f64,
    phi: Complex64,
) -> Result<Complex64> {
    let log_r0 = sd.log_outer_at_z0(nm)?;
    let log_rz = sd.log_outer_at_phi(phi)?;
    Ok(((log_r0 - log_rz) / r).exp())
}

/// Boundary `H^r` distance between the rescaled polynomial
/// `C^{-n} Φ_{z0}^{-n} P` and the limit target:
/// `Σ_j bw_j |C^{-n} Φ_{z0}(z_j)^{-n} P(z_j) − F(z_j)|^r`.
pub fn strong_error_boundary(
    nm: &NormalizedMap,
    m: &DiscretizedMeasure,
    sd: &SzegoData,
    r: f64,
    poly: &PolynomialC,
    n: usize,
) -> Result<f64> {
    let cap = nm.capacity();
    let alpha = nm.rotation().arg();
    let mut total = 0.0;
    for ((&theta, &z), &bw) in m
        .grid()
        .thetas()
        .iter()
        .zip(m.grid().nodes())
        .zip(m.boundary_weights())
    {
        let phi = unit(theta + alpha);
        let target = limit_target_at_phi(nm, sd, r, phi)?;
        let scaled = poly.eval(z) * (cap * phi).powi(n as i32).inv();
        total += bw * (scaled - target).norm().powf(r);
    }
    Ok(total)
}

/// Sup over the level curve `|Φ| = level` of
/// `|C^{-n} Φ_{z0}^{-n} P − F_{μ,z0,r}|`.
pub fn strong_error_level_curve(
    nm: &NormalizedMap,
    sd: &SzegoData,
    r: f64,
    poly: &PolynomialC,
    n: usize,
    level: f64,
    samples: usize,
) -> Result<f64> {
    let cap = nm.capacity();
    let mut sup: f64 = 0.0;
    for i in 0..samples {
        let w = level * unit(2.0 * std::f64::consts::PI * i as f64 / samples as f64);
        let z = nm.map().eval(w)?;
        let phi = nm.phi_from_w(w);
        let target = limit_target_at_phi(nm, sd, r, phi)?;
        let scaled = poly.eval(z) * (cap * phi).powi(n as i32).inv();
        sup = sup.max((scaled - target).norm());
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{harmonic_weights_at, ExteriorMap};
    use crate::measure::entropy;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn circle_samples<F: Fn(f64) -> f64>(n: usize, f: F) -> Vec<f64> {
        (0..n)
            .map(|j| f(2.0 * std::f64::consts::PI * j as f64 / n as f64))
            .collect()
    }

    #[test]
    fn disk_szego_of_constant_is_one() {
        let d = DiskSzego::from_samples(&vec![1.0; 64]);
        for z in [c(0.0, 0.0), c(0.3, -0.4), c(-0.7, 0.1)] {
            assert!((d.eval(z).unwrap() - c(1.0, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn disk_szego_mean_value() {
        // f(θ) = |e^{iθ} − 2|²: D(0) = exp(½∫log f dm) = √S = 2.
        let f = circle_samples(256, |t| (unit(t) - c(2.0, 0.0)).norm_sqr());
        let d0 = szego_disk(&f, c(0.0, 0.0)).unwrap();
        assert!((d0 - c(2.0, 0.0)).norm() < 1e-11);
    }

    #[test]
    fn disk_szego_outer_factor_modulus() {
        // The outer factor of |ζ − 2|² is (2 − z) up to a unimodular
        // constant, so |D(0.5)| = 1.5.
        let f = circle_samples(256, |t| (unit(t) - c(2.0, 0.0)).norm_sqr());
        let d = szego_disk(&f, c(0.5, 0.0)).unwrap();
        assert!((d.norm() - 1.5).abs() < 1e-10);
    }

    #[test]
    fn disk_szego_boundary_modulus_matches_density() {
        let f = circle_samples(256, |t| (0.4 * t.cos() - 0.1 * (2.0 * t).sin()).exp());
        let d = DiskSzego::from_samples(&f);
        for j in [0usize, 17, 100, 201] {
            let t = 2.0 * std::f64::consts::PI * j as f64 / 256.0;
            let boundary = d.eval(unit(t)).unwrap();
            assert!((boundary.norm_sqr() - f[j]).abs() < 1e-8);
        }
    }

    fn setup(
        z0: ExtendedPoint,
    ) -> (NormalizedMap, Arc<BoundaryGrid>) {
        let map = Arc::new(ExteriorMap::disk(1.0).unwrap());
        let grid = Arc::new(BoundaryGrid::new(map.clone(), 256).unwrap());
        (NormalizedMap::new(map, z0).unwrap(), grid)
    }

    #[test]
    fn outer_of_constant_density() {
        let (nm, grid) = setup(ExtendedPoint::Finite(c(2.0, 0.0)));
        let sd = SzegoData::build(&nm, &grid, &DensitySpec::Constant { value: 3.0 }).unwrap();
        for z in [c(2.0, 0.0), c(-1.4, 1.1), c(0.0, 3.0)] {
            assert!((outer_on_omega(&nm, &sd, z).unwrap() - c(3.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn outer_two_definition_cross_check() {
        // |R_f(z)| must equal exp(∫ log f dω_z) by independent Poisson
        // quadrature, for random exterior points.
        let map = Arc::new(ExteriorMap::ellipse(1.0, 0.25).unwrap());
        let grid = Arc::new(BoundaryGrid::new(map.clone(), 512).unwrap());
        let nm = NormalizedMap::new(map.clone(), ExtendedPoint::Finite(c(2.5, 0.4))).unwrap();
        let f = DensitySpec::ExpTrig {
            constant: 0.2,
            cos: vec![0.4, 0.1],
            sin: vec![-0.25],
        };
        let sd = SzegoData::build(&nm, &grid, &f).unwrap();
        let fvals = f.eval_grid(&grid).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let w = rng.gen_range(1.15..3.0) * unit(rng.gen_range(0.0..2.0 * std::f64::consts::PI));
            let z = map.eval(w).unwrap();
            let lhs = outer_on_omega(&nm, &sd, z).unwrap().norm();
            let weights = harmonic_weights_at(&nm, &grid, z).unwrap();
            let rhs: f64 = weights
                .iter()
                .zip(&fvals)
                .map(|(w, f)| w * f.ln())
                .sum::<f64>()
                .exp();
            assert!((lhs - rhs).abs() <= 1e-8 * rhs.max(1.0));
        }
    }

    #[test]
    fn outer_modulus_at_z0_is_entropy() {
        let presets = [
            DensitySpec::Constant { value: 2.0 },
            DensitySpec::AbsLinearSquared { point: c(2.0, 0.0) },
            DensitySpec::ExpTrig {
                constant: 0.0,
                cos: vec![0.4],
                sin: vec![],
            },
            DensitySpec::Vanishing {
                point: c(1.0, 0.0),
                power: 1.0,
            },
        ];
        for z0 in [ExtendedPoint::Finite(c(2.0, 0.0)), ExtendedPoint::Finite(c(-1.0, 1.7))] {
            let (nm, grid) = setup(z0);
            for f in &presets {
                let sd = SzegoData::build(&nm, &grid, f).unwrap();
                let s = entropy(&nm, &grid, f).unwrap();
                let z0pt = match z0 {
                    ExtendedPoint::Finite(p) => p,
                    _ => unreachable!(),
                };
                let r = outer_on_omega(&nm, &sd, z0pt).unwrap();
                assert!((r.norm() - s).abs() < 1e-9 * s.max(1.0), "{f:?}");
                assert!((sd.s_value() - s).abs() < 1e-9 * s.max(1.0));
            }
        }
    }

    #[test]
    fn outer_positive_at_infinity() {
        let (nm, grid) = setup(ExtendedPoint::Finite(c(2.0, 1.0)));
        let f = DensitySpec::AbsLinearSquared { point: c(2.0, 0.0) };
        let sd = SzegoData::build(&nm, &grid, &f).unwrap();
        // log R at φ → ∞ reduces to the ĉ_0 term, which is real.
        let log_r_far = sd.log_outer_at_phi(c(1e9, 0.0)).unwrap();
        assert!(log_r_far.im.abs() < 1e-9);
        assert!(log_r_far.re.exp() > 0.0);
    }

    #[test]
    fn kernel_of_free_density_on_disk() {
        // K(z, w) = 1/(1 − 1/(z·conj(w))) for f ≡ 1, z0 = ∞ on the disk.
        let (nm, grid) = setup(ExtendedPoint::Infinity);
        let sd = SzegoData::build(&nm, &grid, &DensitySpec::Constant { value: 1.0 }).unwrap();
        for (z, w) in [(c(2.0, 0.3), c(1.5, -0.4)), (c(3.0, 0.0), c(0.0, 2.0))] {
            let k = reproducing_kernel(&nm, &sd, z, w).unwrap();
            let expect = (Complex64::new(1.0, 0.0) - (z * w.conj()).inv()).inv();
            assert!((k - expect).norm() < 1e-10);
        }
    }

    #[test]
    fn kernel_diagonal_inverts_entropy() {
        let presets = [
            DensitySpec::Constant { value: 0.7 },
            DensitySpec::AbsLinearSquared { point: c(2.0, 0.0) },
            DensitySpec::ExpTrig {
                constant: 0.1,
                cos: vec![0.3, -0.1],
                sin: vec![0.2],
            },
        ];
        let map = Arc::new(ExteriorMap::ellipse(1.0, 0.25).unwrap());
        let grid = Arc::new(BoundaryGrid::new(map.clone(), 512).unwrap());
        for z0 in [ExtendedPoint::Finite(c(2.5, 0.0)), ExtendedPoint::Finite(c(-1.9, 0.8))] {
            let nm = NormalizedMap::new(map.clone(), z0).unwrap();
            let z0pt = match z0 {
                ExtendedPoint::Finite(p) => p,
                _ => unreachable!(),
            };
            for f in &presets {
                let sd = SzegoData::build(&nm, &grid, f).unwrap();
                let k = reproducing_kernel(&nm, &sd, z0pt, z0pt).unwrap();
                assert!(
                    (k.re * sd.s_value() - 1.0).abs() < 1e-8 && k.im.abs() < 1e-8,
                    "{f:?}"
                );
            }
        }
    }

    #[test]
    fn kernel_reproduces_faber_basis() {
        use crate::faber::FaberTable;
        use crate::geometry::harmonic_weights;
        let map = Arc::new(ExteriorMap::ellipse(1.0, 0.25).unwrap());
        let grid = Arc::new(BoundaryGrid::new(map.clone(), 512).unwrap());
        let nm = NormalizedMap::new(map.clone(), ExtendedPoint::Finite(c(2.5, 0.0))).unwrap();
        let f = DensitySpec::ExpTrig {
            constant: 0.0,
            cos: vec![0.4],
            sin: vec![],
        };
        let sd = SzegoData::build(&nm, &grid, &f).unwrap();
        let fvals = f.eval_grid(&grid).unwrap();
        let hw = harmonic_weights(&nm, &grid);
        let table = FaberTable::up_to(&map, 5);
        let w = c(2.2, 0.9);
        for k in 0..=5 {
            let mut acc = Complex64::new(0.0, 0.0);
            for ((&z, &fj), &hj) in grid.nodes().iter().zip(&fvals).zip(&hw) {
                acc += fj * hj * table.eval(k, z) * reproducing_kernel(&nm, &sd, z, w).unwrap().conj();
            }
            assert!(
                (acc - table.eval(k, w)).norm() < 1e-6 * table.eval(k, w).norm().max(1.0),
                "k = {k}"
            );
        }
    }

    #[test]
    fn limit_target_is_normalized() {
        let map = Arc::new(ExteriorMap::disk(1.0).unwrap());
        let grid = Arc::new(BoundaryGrid::new(map.clone(), 256).unwrap());
        let nm = NormalizedMap::new(map, ExtendedPoint::Finite(c(3.0, 0.0))).unwrap();
        let f = DensitySpec::AbsLinearSquared { point: c(2.0, 0.0) };
        let sd = SzegoData::build(&nm, &grid, &f).unwrap();
        // f ≡ const gives F ≡ 1.
        let sd_const =
            SzegoData::build(&nm, &grid, &DensitySpec::Constant { value: 5.0 }).unwrap();
        for r in [0.5, 1.0, 2.0, 4.0] {
            assert!((limit_target(&nm, &sd_const, r, c(1.9, 1.2)).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
            assert!((limit_target(&nm, &sd, r, c(3.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-10);
        }
        // r = 2 agrees with the square root of the outer ratio.
        let z = c(2.0, 1.4);
        let f32v = limit_target(&nm, &sd, 2.0, z).unwrap();
        let ratio = outer_on_omega(&nm, &sd, c(3.0, 0.0)).unwrap()
            / outer_on_omega(&nm, &sd, z).unwrap();
        assert!((f32v * f32v - ratio).norm() < 1e-10);
    }

    #[test]
    fn limit_target_boundary_modulus_identity() {
        // |F(z)|^r |R_f(z)| = |R_f(z0)| on boundary nodes.
        let map = Arc::new(ExteriorMap::ellipse(1.0, 0.25).unwrap());
        let grid = Arc::new(BoundaryGrid::new(map.clone(), 256).unwrap());
        let nm = NormalizedMap::new(map, ExtendedPoint::Finite(c(2.5, 0.0))).unwrap();
        let f = DensitySpec::ExpTrig {
            constant: 0.0,
            cos: vec![0.4],
            sin: vec![0.1],
        };
        let sd = SzegoData::build(&nm, &grid, &f).unwrap();
        let alpha = nm.rotation().arg();
        let s = sd.s_value();
        for r in [1.0, 2.0, 4.0] {
            for j in [0usize, 31, 64, 200] {
                let phi = unit(grid.thetas()[j] + alpha);
                let fval = limit_target_at_phi(&nm, &sd, r, phi).unwrap();
                let routr = sd.log_outer_at_phi(phi).unwrap().exp();
                assert!((fval.norm().powf(r) * routr.norm() - s).abs() < 1e-8 * s);
            }
        }
    }

    #[test]
    fn szego_condition_verdict_independent_of_z0() {
        let map = Arc::new(ExteriorMap::disk(1.0).unwrap());
        let grid = Arc::new(BoundaryGrid::new(map.clone(), 256).unwrap());
        let szego_like = DensitySpec::Vanishing {
            point: c(1.0, 0.0),
            power: 2.0,
        };
        let dead = DensitySpec::Constant { value: 0.0 };
        let mut verdict_szego = Vec::new();
        let mut verdict_dead = Vec::new();
        for z0 in [
            ExtendedPoint::Infinity,
            ExtendedPoint::Finite(c(2.0, 0.0)),
            ExtendedPoint::Finite(c(0.0, -3.0)),
        ] {
            let nm = NormalizedMap::new(map.clone(), z0).unwrap();
            verdict_szego
                .push(SzegoData::build(&nm, &grid, &szego_like).unwrap().szego_condition());
            verdict_dead.push(SzegoData::build(&nm, &grid, &dead).unwrap().szego_condition());
        }
        assert!(verdict_szego.iter().all(|&v| v));
        assert!(verdict_dead.iter().all(|&v| !v));
    }

    #[test]
    fn non_szego_conventions() {
        let (nm, grid) = setup(ExtendedPoint::Infinity);
        let dead = DensitySpec::Constant { value: 0.0 };
        let sd = SzegoData::build(&nm, &grid, &dead).unwrap();
        assert_eq!(sd.s_value(), 0.0);
        assert_eq!(outer_on_omega(&nm, &sd, c(2.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            reproducing_kernel(&nm, &sd, c(2.0, 0.0), c(2.0, 0.0)),
            Err(Error::NonSzego)
        ));
        assert!(matches!(
            limit_target(&nm, &sd, 2.0, c(2.0, 0.0)),
            Err(Error::NonSzego)
        ));
    }
}
