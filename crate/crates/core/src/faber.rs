//! Faber polynomials of the region and polynomial containers.
//!
//! `F_n` is the polynomial part of `Φ^n`. Its monomial coefficients are
//! extracted from Laurent data of `Ψ^n` sampled on the lifted level curve
//! `|w| = 1.3`: the Laurent tail of the map is finite, so the discrete
//! transform recovers the coefficients exactly (up to rounding) and a
//! triangular solve matches `Σ_m b_m Ψ(w)^m = w^n + O(w^{-1})`. The Faber
//! basis is the working basis of all Christoffel solves; its
//! near-orthogonality under harmonic measure keeps Gram matrices
//! well-conditioned at degrees where monomials fail.

use crate::error::{Error, Result};
use crate::fourier::dft_forward;
use crate::geometry::{unit, BoundaryGrid, ExtendedPoint, ExteriorMap, NormalizedMap};
use crate::{next_pow2, Complex64};

/// Radius of the sampling level curve. Larger radii damp the (already
/// finite) negative tail faster; 1.3 balances that against the growth of the
/// lifted powers for every preset.
const LIFT_RADIUS: f64 = 1.3;

/// Coefficient basis of a [`PolynomialC`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PolyBasis {
    Monomial,
    Faber,
}

/// Normalization tag carried by extremal polynomials.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `P(z0) = 1`.
    Point(Complex64),
    /// Leading monomial coefficient equals one.
    Monic,
    None,
}

/// Complex polynomial in a declared basis, ascending coefficients.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct PolynomialC {
    pub coeffs: Vec<Complex64>,
    pub basis: PolyBasis,
    pub normalization: Normalization,
    pub degree: usize,
}

impl PolynomialC {
    pub fn monomial(coeffs: Vec<Complex64>, normalization: Normalization) -> Self {
        let degree = coeffs.len().saturating_sub(1);
        PolynomialC {
            coeffs,
            basis: PolyBasis::Monomial,
            normalization,
            degree,
        }
    }

    /// Horner evaluation; the polynomial must be in the monomial basis.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        assert!(
            self.basis == PolyBasis::Monomial,
            "eval requires the monomial basis; convert Faber coefficients first"
        );
        horner(&self.coeffs, z)
    }

    /// Leading monomial coefficient (of `z^degree`).
    pub fn leading(&self) -> Complex64 {
        assert!(self.basis == PolyBasis::Monomial);
        self.coeffs.last().copied().unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Multiply by `(z − a)`, staying in the monomial basis.
    pub fn shifted_product(&self, a: Complex64) -> PolynomialC {
        assert!(self.basis == PolyBasis::Monomial);
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= a * c;
        }
        PolynomialC::monomial(out, Normalization::None)
    }
}

pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Monomial coefficient table of `F_0 .. F_nmax` for one map. Built once per
/// solve context and shared read-only across threads.
#[derive(Debug, Clone)]
pub struct FaberTable {
    rows: Vec<Vec<Complex64>>,
}

impl FaberTable {
    pub fn up_to(map: &ExteriorMap, nmax: usize) -> Self {
        let tail_len = map.tail().len();
        // Laurent span of Ψ^m is m(tail_len+1)+1 coefficients; pick the DFT
        // length so nothing wraps into the extracted range.
        let span = nmax * (tail_len + 1) + 4;
        let mlen = next_pow2((2 * span).max(64));
        let samples: Vec<Complex64> = (0..mlen)
            .map(|t| {
                map.eval_any(LIFT_RADIUS * unit(2.0 * std::f64::consts::PI * t as f64 / mlen as f64))
            })
            .collect();

        // laurent[m][k] = coefficient of w^k in Ψ^m, for 0 <= k <= m.
        let mut laurent: Vec<Vec<Complex64>> = Vec::with_capacity(nmax + 1);
        let mut power: Vec<Complex64> = vec![Complex64::new(1.0, 0.0); mlen];
        let mut lift = Vec::with_capacity(nmax + 1);
        let mut radius_pow = 1.0;
        for _ in 0..=nmax {
            lift.push(radius_pow);
            radius_pow *= LIFT_RADIUS;
        }
        for m in 0..=nmax {
            let spec = dft_forward(power.clone());
            let mut row: Vec<Complex64> = (0..=m)
                .map(|k| spec[k] / (mlen as f64 * lift[k]))
                .collect();
            row[m] = Complex64::new(map.cap().powi(m as i32), 0.0);
            laurent.push(row);
            if m < nmax {
                for (p, s) in power.iter_mut().zip(&samples) {
                    *p *= s;
                }
            }
        }

        // Back-substitution: row n solves Σ_{m>=k} b_m laurent[m][k] = δ_{kn}.
        let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(nmax + 1);
        for n in 0..=nmax {
            let mut b = vec![Complex64::new(0.0, 0.0); n + 1];
            b[n] = laurent[n][n].inv();
            for k in (0..n).rev() {
                let mut acc = Complex64::new(0.0, 0.0);
                for m in (k + 1)..=n {
                    acc += b[m] * laurent[m][k];
                }
                b[k] = -acc / laurent[k][k];
            }
            rows.push(b);
        }
        FaberTable { rows }
    }

    pub fn nmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// Monomial coefficients of `F_k`.
    pub fn coeffs(&self, k: usize) -> &[Complex64] {
        &self.rows[k]
    }

    pub fn eval(&self, k: usize, z: Complex64) -> Complex64 {
        horner(&self.rows[k], z)
    }

    /// Basis values `F_k(pts_j)` as an `len(pts) × (n+1)` matrix.
    pub fn eval_matrix(&self, n: usize, pts: &[Complex64]) -> nalgebra::DMatrix<Complex64> {
        let mut b = nalgebra::DMatrix::zeros(pts.len(), n + 1);
        for (j, &z) in pts.iter().enumerate() {
            for k in 0..=n {
                b[(j, k)] = self.eval(k, z);
            }
        }
        b
    }

    /// `‖F_k‖_K`: the sup over the sampled boundary (equals the sup over the
    /// region by the maximum principle).
    pub fn sup_boundary(&self, k: usize, grid: &BoundaryGrid) -> f64 {
        grid.nodes()
            .iter()
            .map(|&z| self.eval(k, z).norm())
            .fold(0.0, f64::max)
    }

    /// Convert Faber coefficients to monomial coefficients.
    pub fn to_monomial(&self, faber_coeffs: &[Complex64]) -> Vec<Complex64> {
        let n = faber_coeffs.len().saturating_sub(1);
        let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
        for (k, a) in faber_coeffs.iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            for (i, c) in self.rows[k].iter().enumerate() {
                out[i] += a * c;
            }
        }
        out
    }
}

/// `n`-th Faber polynomial of the region in the monomial basis; leading
/// coefficient `cap^{-n}`.
pub fn faber(map: &ExteriorMap, n: usize) -> PolynomialC {
    let table = FaberTable::up_to(map, n);
    PolynomialC::monomial(table.coeffs(n).to_vec(), Normalization::None)
}

/// Faber trial polynomial `q_n = Σ_j conj(A_j) e^{i(n-j)α} F_{n-j}` built
/// from a degree-`m` circle minimizer with coefficients `A_j` (normalized so
/// the minimizer is one at `w0`). Returned point-normalized at `z0`, or monic
/// for `z0 = ∞`.
pub fn faber_trial(
    nm: &NormalizedMap,
    table: &FaberTable,
    circle_minimizer: &PolynomialC,
    n: usize,
) -> Result<PolynomialC> {
    let m = circle_minimizer.degree;
    if circle_minimizer.basis != PolyBasis::Monomial {
        return Err(Error::invalid("faber_trial", "circle minimizer must be monomial"));
    }
    if n < m || table.nmax() < n {
        return Err(Error::invalid(
            "faber_trial",
            format!("need m <= n <= table degree (m = {m}, n = {n}, table = {})", table.nmax()),
        ));
    }
    let alpha = nm.rotation();
    let mut acc = vec![Complex64::new(0.0, 0.0); n + 1];
    let mut rot = alpha.powi(n as i32 - m as i32);
    // iterate j = m down to 0 so the rotation power e^{i(n-j)α} accumulates
    for j in (0..=m).rev() {
        let a_j = circle_minimizer.coeffs[j].conj() * rot;
        for (i, c) in table.coeffs(n - j).iter().enumerate() {
            acc[i] += a_j * c;
        }
        rot *= alpha;
    }
    match nm.z0() {
        ExtendedPoint::Finite(z0) => {
            let value = horner(&acc, z0);
            if value.norm() == 0.0 {
                return Err(Error::invalid("faber_trial", "trial polynomial vanishes at z0"));
            }
            for c in &mut acc {
                *c /= value;
            }
            Ok(PolynomialC::monomial(acc, Normalization::Point(z0)))
        }
        ExtendedPoint::Infinity => {
            let lead = acc[n];
            if lead.norm() == 0.0 {
                return Err(Error::invalid("faber_trial", "trial polynomial is degenerate"));
            }
            for c in &mut acc {
                *c /= lead;
            }
            Ok(PolynomialC::monomial(acc, Normalization::Monic))
        }
    }
}
