//! Declarative verdicts over sweep tables, shared by the CLI runner and the
//! acceptance suite. Every check names the asymptotic statement it
//! instantiates.

use crate::christoffel::{ContinuityRow, WidomRow};
use crate::minimax::ResidualRow;

/// Outcome of one registered check.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckResult {
    /// Stable identifier of the statement being instantiated.
    pub id: &'static str,
    /// Human-readable statement.
    pub statement: &'static str,
    pub passed: bool,
    pub details: String,
}

fn result(id: &'static str, statement: &'static str, passed: bool, details: String) -> CheckResult {
    CheckResult {
        id,
        statement,
        passed,
        details,
    }
}

/// Relative slack of the universal lower bound.
pub const LOWER_BOUND_SLACK: f64 = 1e-9;

/// Universal entropy lower bound: every row has `W^r ≥ S·(1 − 1e-9)`.
pub fn check_lower_bound(rows: &[WidomRow]) -> CheckResult {
    let worst = rows
        .iter()
        .map(|r| r.widom_r - r.lower_bound * (1.0 - LOWER_BOUND_SLACK))
        .fold(f64::INFINITY, f64::min);
    result(
        "christoffel-lower-bound",
        "lambda_n >= S(f,z0) * C(K,z0)^{n r} for every degree",
        rows.iter()
            .all(|r| r.widom_r >= r.lower_bound * (1.0 - LOWER_BOUND_SLACK)),
        format!("worst margin {worst:.3e}"),
    )
}

/// Widom limit: the final row of the sweep is within `tol` of the entropy
/// value; non-Szegő densities (S below `1e-30`) are instead checked for
/// decay by a factor of two across the sweep.
pub fn check_widom_limit(rows: &[WidomRow], tol: f64) -> CheckResult {
    let last = match rows.last() {
        Some(r) => r,
        None => return result("widom-limit", "empty sweep", false, String::new()),
    };
    if last.lower_bound > 1e-30 {
        let rel = (last.widom_r / last.lower_bound - 1.0).abs();
        result(
            "widom-limit",
            "W_{r,n}^r -> S(f,z0) as n grows",
            rel <= tol,
            format!("relative deviation {rel:.3e} at n = {}", last.n),
        )
    } else {
        let first = rows.first().unwrap();
        result(
            "widom-limit",
            "W_{r,n}^r -> 0 for non-Szego densities",
            last.widom_r <= 0.5 * first.widom_r,
            format!("W^r fell from {:.3e} to {:.3e}", first.widom_r, last.widom_r),
        )
    }
}

/// Monotonicity of `λ_n` for point normalizations.
pub fn check_monotone_lambda(rows: &[WidomRow]) -> CheckResult {
    let ok = rows
        .windows(2)
        .all(|p| p[1].lambda <= p[0].lambda * (1.0 + 1e-12));
    result(
        "lambda-monotone",
        "lambda_{n+1} <= lambda_n under point normalization",
        ok,
        String::new(),
    )
}

/// Residual lower bound `W_∞ ≥ S·(1 − 2·gap_rel)` per row.
pub fn check_residual_lower_bound(rows: &[ResidualRow]) -> CheckResult {
    let ok = rows
        .iter()
        .all(|r| r.widom_inf >= r.lower_bound * (1.0 - 2.0 * r.gap_rel - LOWER_BOUND_SLACK));
    result(
        "residual-lower-bound",
        "t_n >= S(rho,z0) * C(K,z0)^n up to the duality gap",
        ok,
        String::new(),
    )
}

/// Residual Widom limit (or decay for non-Szegő weights).
pub fn check_residual_limit(rows: &[ResidualRow], tol: f64) -> CheckResult {
    let last = match rows.last() {
        Some(r) => r,
        None => return result("residual-widom-limit", "empty sweep", false, String::new()),
    };
    if last.lower_bound > 1e-30 {
        let rel = (last.widom_inf / last.lower_bound - 1.0).abs();
        result(
            "residual-widom-limit",
            "W_{inf,n} -> S(rho,z0) as n grows",
            rel <= tol,
            format!("relative deviation {rel:.3e} at n = {}", last.n),
        )
    } else {
        let first = rows.first().unwrap();
        result(
            "residual-widom-limit",
            "W_{inf,n} -> 0 for non-Szego weights",
            last.widom_inf <= 0.5 * first.widom_inf,
            format!(
                "W_inf fell from {:.3e} to {:.3e}",
                first.widom_inf, last.widom_inf
            ),
        )
    }
}

/// Every row converged to the requested duality gap.
pub fn check_duality_gap(rows: &[ResidualRow], gap_tol: f64) -> CheckResult {
    let worst = rows.iter().map(|r| r.gap_rel).fold(0.0, f64::max);
    result(
        "minimax-duality-gap",
        "Lawson certificates bracket t_n to the requested relative gap",
        worst <= gap_tol * (1.0 + 1e-12),
        format!("worst relative gap {worst:.3e}"),
    )
}

/// The weak-star distance of the prediction measures from harmonic measure
/// decreases across the sweep by the given factor.
pub fn check_opm_trend(rows: &[ResidualRow], factor: f64) -> CheckResult {
    if rows.len() < 2 {
        return result(
            "opm-weakstar-trend",
            "prediction measures approach harmonic measure",
            false,
            "need at least two degrees".into(),
        );
    }
    let first = rows.first().unwrap();
    let last = rows.last().unwrap();
    result(
        "opm-weakstar-trend",
        "prediction measures approach harmonic measure",
        last.ks_distance <= factor * first.ks_distance,
        format!(
            "KS distance {:.3e} at n = {} vs {:.3e} at n = {}",
            first.ks_distance, first.n, last.ks_distance, last.n
        ),
    )
}

/// Rescaled Ahlfors values against the closed-form limit.
pub fn check_ahlfors_limit(rescaled_last: f64, limit: f64, tol: f64) -> CheckResult {
    let rel = (rescaled_last - limit).abs() / limit;
    result(
        "ahlfors-limit",
        "|Phi(z0)|^{n-1} A_n -> (|Phi(z0)|^2 - 1)/|Phi'(z0) Phi(z0)|",
        rel <= tol,
        format!("relative deviation {rel:.3e}"),
    )
}

/// Widom factors are continuous in the normalization point: differences
/// shrink along the path and the far-field value matches the monic one.
pub fn check_continuity(rows: &[ContinuityRow], reference: f64, far_value: Option<f64>) -> CheckResult {
    let diffs: Vec<f64> = rows.iter().map(|r| (r.widom - reference).abs()).collect();
    let shrinking = diffs.windows(2).all(|p| p[1] <= p[0] * (1.0 + 1e-12));
    let far_ok = far_value.map_or(true, |monic| {
        rows.last()
            .map_or(false, |r| (r.widom - monic).abs() <= 1e-3 * monic)
    });
    result(
        "widom-continuity",
        "W_{r,n} is continuous in the normalization point",
        shrinking && far_ok,
        format!(
            "deviations [{}]",
            diffs
                .iter()
                .map(|d| format!("{d:.3e}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    )
}
