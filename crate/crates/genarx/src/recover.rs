//! Inversion of estimated ARX coefficients back to (H, R, T).
//!
//! Each method/output combination has a dedicated inverse map. The speed
//! routes solve the coefficient equations in closed form; the angle routes
//! invert the corresponding forward algebra directly. All routes are
//! verified by the round-trip suite (recover of an exact forward
//! conversion reproduces the parameters to 1e-8 relative across the
//! supported grid).
//!
//! All routes go through [`GeneratorParams`] construction at the end, so
//! negative or non-underdamped results surface as [`Error::NonPhysical`]
//! instead of silently flowing into downstream playback. The arccos-based
//! routes use the principal branch only, matching the `omega*h < pi`
//! guard in the forward direction.

use serde::Serialize;

use crate::discretize::{arx_orders, ArxModel, DiscretizationMethod, OutputKind};
use crate::error::{Error, Result};
use crate::model::GeneratorParams;
use crate::regression::ResidualStats;

/// A labeled estimated coefficient.
#[derive(Debug, Clone, Serialize)]
pub struct Coefficient {
    pub name: String,
    pub value: f64,
}

/// Outcome of one estimation run: estimated coefficients, recovered
/// parameters and diagnostics.
#[derive(Debug, Clone, Serialize)]
pub struct EstimationResult {
    pub method: DiscretizationMethod,
    pub output: OutputKind,
    pub h: f64,
    pub coefficients: Vec<Coefficient>,
    pub params: GeneratorParams,
    pub residual: ResidualStats,
    pub warnings: Vec<String>,
}

fn non_physical(reason: impl Into<String>) -> Error {
    Error::NonPhysical {
        reason: reason.into(),
    }
}

/// Wraps parameter construction so invariant violations read as recovery
/// failures rather than input validation errors.
fn checked_params(h: f64, r: f64, t: f64) -> Result<GeneratorParams> {
    for (name, value) in [("H", h), ("R", r), ("T", t)] {
        if !value.is_finite() {
            return Err(non_physical(format!("{name} is not finite")));
        }
        if value <= 0.0 {
            return Err(non_physical(format!("{name} = {value} <= 0")));
        }
    }
    GeneratorParams::new(h, r, t).map_err(|e| non_physical(e.to_string()))
}

fn principal_acos(arg: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&arg) {
        return Err(Error::BranchViolation { arg });
    }
    Ok(arg.acos())
}

/// ZOH/speed inverse: `den = [a1, a0]`, `num = [b1, b0]`.
///
/// Recovery order `T -> omega -> R -> H`:
///
/// ```text
/// T     = -h / ln(a0)
/// omega = arccos(-a1 exp(h/2T) / 2) / h
/// R     = (b1 + b0) / (1 + exp(-h/T) + a1)
/// H     = 2T / (R + 4 R T^2 omega^2)
/// ```
pub fn zoh_omega(den: [f64; 2], num: [f64; 2], h: f64) -> Result<GeneratorParams> {
    let [a1, a0] = den;
    let [b1, b0] = num;
    if !(a0 > 0.0) {
        return Err(non_physical(format!(
            "a0 = {a0} <= 0 contradicts a0 = exp(-h/T)"
        )));
    }
    if a0 >= 1.0 {
        return Err(non_physical(format!(
            "a0 = {a0} >= 1 implies a non-decaying mode (T undefined)"
        )));
    }
    let t = -h / a0.ln();
    let omega = principal_acos(-a1 * (h / (2.0 * t)).exp() / 2.0)? / h;
    let denom = 1.0 + (-h / t).exp() + a1;
    if denom.abs() < f64::MIN_POSITIVE.max(1e-300) || !denom.is_finite() {
        return Err(non_physical("zero DC denominator 1 + exp(-h/T) + a1"));
    }
    let r = (b1 + b0) / denom;
    if !(r > 0.0) {
        return Err(non_physical(format!("R = {r} <= 0")));
    }
    let hh = 2.0 * t / (r + 4.0 * r * t * t * omega * omega);
    checked_params(hh, r, t)
}

/// Tustin/speed inverse: `den = [a1, a0]`, `num = [b2, b1, b0]`.
///
/// `T = (2 b2/b1 - 1)/k` with `k = 2/h`; the `a1` row yields the product
/// `H R = (2 - a1) / (2 a1 T k^2 + 2 a1 k + 4 T k^2)`; the `b2` row then
/// separates `R = b2 (2 (HR) T k^2 + 2 (HR) k + 1) / (1 + Tk)` and
/// `H = (HR)/R`. This factoring is algebraically identical to
/// substituting the `T` and `R(H)` expressions into the direct `H`
/// formula, without the circular H/R appearance.
pub fn tustin_omega(den: [f64; 2], num: [f64; 3], h: f64) -> Result<GeneratorParams> {
    let [a1, _a0] = den;
    let [b2, b1, _b0] = num;
    let k = 2.0 / h;
    let scale = num.iter().fold(0.0f64, |m, &c| m.max(c.abs()));
    if b1.abs() <= 1e-12 * scale {
        return Err(Error::DegenerateCoefficients {
            reason: format!("b1 = {b1} is negligible; T = (2 b2/b1 - 1)/k undefined"),
        });
    }
    let t = (2.0 * (b2 / b1) - 1.0) / k;
    if !(t > 0.0) {
        return Err(non_physical(format!("T = {t} <= 0")));
    }
    let hr_denom = 2.0 * a1 * t * k * k + 2.0 * a1 * k + 4.0 * t * k * k;
    let hr = (2.0 - a1) / hr_denom;
    if !hr.is_finite() || hr <= 0.0 {
        return Err(non_physical(format!("product H*R = {hr} is not positive")));
    }
    let alpha = 2.0 * hr * t * k * k + 2.0 * hr * k + 1.0;
    let r = b2 * alpha / (1.0 + t * k);
    if !(r > 0.0) {
        return Err(non_physical(format!("R = {r} <= 0")));
    }
    checked_params(hr / r, r, t)
}

/// ZOH/angle inverse: `den = [a2, a1, a0]`, `num = [b2, b1, b0]`.
///
/// From the forward algebra: `a0 = -exp(-h/T)` gives `T`; the `a2` row
/// gives `omega` through `a2 = -2 exp(-h/2T) cos(omega h) - 1`; the
/// damped-frequency identity `omega^2 = (2T - HR)/(4 H R T^2)` gives the
/// product `H R = 2T / (1 + 4 omega^2 T^2)`; the `b2` row then isolates
/// `R`, and `H = (HR)/R`.
pub fn zoh_delta(den: [f64; 3], num: [f64; 3], h: f64) -> Result<GeneratorParams> {
    let [a2, _a1, a0] = den;
    let [b2, _b1, _b0] = num;
    if a0 >= 0.0 {
        // Sign contract: a0 = -exp(-h/T) < 0.
        return Err(Error::BranchViolation { arg: a0 });
    }
    if -a0 >= 1.0 {
        return Err(non_physical(format!(
            "|a0| = {} >= 1 implies a non-decaying mode (T undefined)",
            -a0
        )));
    }
    let t = -h / (-a0).ln();
    let omega = principal_acos(-(a2 + 1.0) * (h / (2.0 * t)).exp() / 2.0)? / h;
    if omega <= 0.0 {
        return Err(non_physical("recovered omega = 0 (not underdamped)"));
    }
    let hr = 2.0 * t / (1.0 + 4.0 * omega * omega * t * t);
    let a = t - 2.0 * hr;
    let b = ((3.0 * t - 2.0 * hr) / (2.0 * t)) / omega;
    let decay_half = (-h / (2.0 * t)).exp();
    let cos = (omega * h).cos();
    let sin = (omega * h).sin();
    let b2_shape = a - a * decay_half * cos - b * decay_half * sin + h;
    if !b2_shape.is_finite() || b2_shape.abs() < 1e-300 {
        return Err(non_physical("b2 coefficient expression vanished"));
    }
    let r = b2 / b2_shape;
    if !(r > 0.0) {
        return Err(non_physical(format!("R = {r} <= 0")));
    }
    checked_params(hr / r, r, t)
}

/// Tustin/angle inverse: `den = [a2, a1, a0]`, `num = [b3, b2, b1, b0]`.
///
/// With `P = H R T k^3` and `Q = H R k^2` the `a2` and `a1` rows read
///
/// ```text
/// (2 a2 + 6) P + (2 a2 + 2) Q =  k (1 - a2)
/// (2 a1 - 6) P + (2 a1 + 2) Q = -k (1 + a1)
/// ```
///
/// a linear 2x2 system; then `T = P/(Q k)`, `HR = Q/k^2`,
/// `R = b3 (2P + 2Q + k)/(1 + Tk)` and `H = (HR)/R`.
pub fn tustin_delta(den: [f64; 3], num: [f64; 4], h: f64) -> Result<GeneratorParams> {
    let [a2, a1, _a0] = den;
    let [b3, _b2, _b1, _b0] = num;
    let k = 2.0 / h;
    let (m11, m12) = (2.0 * a2 + 6.0, 2.0 * a2 + 2.0);
    let (m21, m22) = (2.0 * a1 - 6.0, 2.0 * a1 + 2.0);
    let (r1, r2) = (k * (1.0 - a2), -k * (1.0 + a1));
    let det = m11 * m22 - m12 * m21;
    let det_scale = (m11 * m22).abs() + (m12 * m21).abs();
    if det.abs() <= 1e-12 * det_scale.max(1.0) {
        return Err(Error::SingularRecovery {
            reason: format!("coefficient system determinant {det} is negligible"),
        });
    }
    let p = (r1 * m22 - m12 * r2) / det;
    let q = (m11 * r2 - r1 * m21) / det;
    if q.abs() <= 1e-12 * p.abs().max(k) {
        return Err(Error::SingularRecovery {
            reason: format!("inertia term Q = {q} is negligible; T = P/(Qk) undefined"),
        });
    }
    let t = p / (q * k);
    let hr = q / (k * k);
    if !(t > 0.0) || !(hr > 0.0) {
        return Err(non_physical(format!("T = {t}, H*R = {hr} not both positive")));
    }
    let alpha = 2.0 * p + 2.0 * q + k;
    let r = b3 * alpha / (1.0 + t * k);
    if !(r > 0.0) {
        return Err(non_physical(format!("R = {r} <= 0")));
    }
    checked_params(hr / r, r, t)
}

/// Recovers parameters from a coefficient vector in regression order
/// `[a_{n-1}, ..., a_0, b_m, ..., b_0]` for the given structure.
pub fn from_coefficients(
    method: DiscretizationMethod,
    output: OutputKind,
    x: &[f64],
    h: f64,
) -> Result<GeneratorParams> {
    let (n, m) = arx_orders(method, output);
    if x.len() != n + m + 1 {
        return Err(Error::Config(format!(
            "expected {} coefficients for {method}/{output}, got {}",
            n + m + 1,
            x.len()
        )));
    }
    let (den, num) = x.split_at(n);
    match (method, output) {
        (DiscretizationMethod::Zoh, OutputKind::Omega) => {
            zoh_omega([den[0], den[1]], [num[0], num[1]], h)
        }
        (DiscretizationMethod::Tustin, OutputKind::Omega) => {
            tustin_omega([den[0], den[1]], [num[0], num[1], num[2]], h)
        }
        (DiscretizationMethod::Zoh, OutputKind::Delta) => {
            zoh_delta([den[0], den[1], den[2]], [num[0], num[1], num[2]], h)
        }
        (DiscretizationMethod::Tustin, OutputKind::Delta) => tustin_delta(
            [den[0], den[1], den[2]],
            [num[0], num[1], num[2], num[3]],
            h,
        ),
    }
}

/// Recovers parameters from a tagged model.
pub fn from_model(model: &ArxModel) -> Result<GeneratorParams> {
    let x: Vec<f64> = model.den.iter().chain(&model.num).copied().collect();
    from_coefficients(model.method, model.output, &x, model.h)
}
