//! Continuous-time generator model.
//!
//! A synchronous generator with primary frequency control, linearized
//! around an operating point, has the closed-loop transfer function from
//! electrical-power deviation to speed deviation
//!
//! ```text
//!   dw(s)/dPe(s) = (T s + 1) / (2 H T s^2 + 2 H s + 1/R)
//! ```
//!
//! with inertia constant `H` (s), turbine-governor time constant `T` (s)
//! and droop `R` (p.u.). Whenever `2T > H*R` the system is underdamped
//! with a complex pole pair; all discretization and recovery formulas in
//! this crate rely on that regime, so [`GeneratorParams`] refuses
//! parameter sets outside it.
//!
//! Sign convention: the DC gain from `dPe` to `dw` is `+R`. A physical
//! load increase therefore corresponds to a negative input step if a
//! frequency dip is wanted; the benchmark scenarios keep the positive
//! convention so that recovered values compare directly against the
//! reference tables.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Checked electromechanical parameters of the generator model.
///
/// Invariants enforced on construction: `H > 0`, `R > 0`, `T > 0`,
/// `D >= 0` and the underdamped condition `2T > H*R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "UncheckedParams")]
pub struct GeneratorParams {
    /// Inertia constant H, seconds.
    inertia: f64,
    /// Damping factor D, p.u. Carried for completeness; every estimation
    /// path in this crate requires D = 0.
    damping: f64,
    /// Speed-regulation droop R, p.u.
    droop: f64,
    /// Turbine-governor time constant T, seconds.
    governor_tc: f64,
}

/// Raw candidate record for [`GeneratorParams`], e.g. parsed from JSON.
/// `damping` defaults to 0 when absent.
#[derive(Debug, Clone, Copy, Deserialize)]
pub struct UncheckedParams {
    pub inertia: f64,
    pub droop: f64,
    pub governor_tc: f64,
    #[serde(default)]
    pub damping: f64,
}

impl TryFrom<UncheckedParams> for GeneratorParams {
    type Error = Error;

    fn try_from(raw: UncheckedParams) -> Result<Self> {
        GeneratorParams::with_damping(raw.inertia, raw.droop, raw.governor_tc, raw.damping)
    }
}

impl GeneratorParams {
    /// Validates and constructs a parameter record with `D = 0`.
    pub fn new(inertia: f64, droop: f64, governor_tc: f64) -> Result<Self> {
        Self::with_damping(inertia, droop, governor_tc, 0.0)
    }

    /// Validates and constructs a parameter record with an explicit
    /// damping factor.
    pub fn with_damping(inertia: f64, droop: f64, governor_tc: f64, damping: f64) -> Result<Self> {
        let positive = [
            ("H", inertia),
            ("R", droop),
            ("T", governor_tc),
        ];
        for (name, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveParameter { name, value });
            }
        }
        if !(damping >= 0.0) || !damping.is_finite() {
            return Err(Error::NonPositiveParameter {
                name: "D",
                value: damping,
            });
        }
        let two_t = 2.0 * governor_tc;
        let hr = inertia * droop;
        if two_t <= hr {
            return Err(Error::NotUnderdamped { two_t, hr });
        }
        Ok(Self {
            inertia,
            damping,
            droop,
            governor_tc,
        })
    }

    /// Inertia constant H, seconds.
    pub fn inertia(&self) -> f64 {
        self.inertia
    }

    /// Damping factor D, p.u.
    pub fn damping(&self) -> f64 {
        self.damping
    }

    /// Droop R, p.u.
    pub fn droop(&self) -> f64 {
        self.droop
    }

    /// Turbine-governor time constant T, seconds.
    pub fn governor_tc(&self) -> f64 {
        self.governor_tc
    }

    /// Guard used by the estimation paths: they implement the `D = 0`
    /// algebra and must refuse anything else explicitly.
    pub fn require_zero_damping(&self) -> Result<()> {
        if self.damping != 0.0 {
            return Err(Error::DampingUnsupported(self.damping));
        }
        Ok(())
    }

    /// Modal constants of the speed transfer function.
    ///
    /// `alpha = (H R - T)/(2 H T R)`, `omega = sqrt((2T - H R)/(4 H R T^2))`
    /// and `k = alpha/omega`. `omega` is the damped natural frequency and
    /// is real and positive for every accepted parameter set.
    pub fn derived_constants(&self) -> DerivedConstants {
        let (h, r, t) = (self.inertia, self.droop, self.governor_tc);
        let alpha = (h * r - t) / (2.0 * h * t * r);
        let omega = ((2.0 * t - h * r) / (4.0 * h * r * t * t)).sqrt();
        DerivedConstants {
            alpha,
            omega,
            k: alpha / omega,
        }
    }

    /// Complex-conjugate pole pair of the speed transfer function:
    /// `s = -1/(2T) +/- j sqrt(2HT/R - H^2)/(2HT)`.
    pub fn continuous_poles(&self) -> ComplexPair {
        let (h, r, t) = (self.inertia, self.droop, self.governor_tc);
        ComplexPair {
            re: -1.0 / (2.0 * t),
            im: (2.0 * h * t / r - h * h).sqrt() / (2.0 * h * t),
        }
    }

    /// Steady-state gain from `dPe` to `dw`: evaluating the transfer
    /// function at `s = 0` gives exactly `R`.
    pub fn dc_gain(&self) -> f64 {
        self.droop
    }
}

/// Constants `alpha`, `omega`, `k` shared by the closed-form step
/// response and the ZOH coefficient algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    /// 1/seconds.
    pub alpha: f64,
    /// Damped natural frequency, rad/s. Positive for underdamped sets.
    pub omega: f64,
    /// Dimensionless ratio `alpha/omega`.
    pub k: f64,
}

/// A complex-conjugate pole pair stored once with `im > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPair {
    /// Real part, 1/seconds.
    pub re: f64,
    /// Imaginary part of the upper pole, 1/seconds.
    pub im: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_relative_eq, assert_ulps_eq};

    fn canonical() -> GeneratorParams {
        GeneratorParams::new(2.5, 0.05, 0.5).unwrap()
    }

    #[test]
    fn accepts_reference_parameters() {
        let p = canonical();
        assert_eq!(p.inertia(), 2.5);
        assert_eq!(p.droop(), 0.05);
        assert_eq!(p.governor_tc(), 0.5);
        assert_eq!(p.damping(), 0.0);
    }

    #[test]
    fn rejects_non_positive_parameters() {
        assert!(matches!(
            GeneratorParams::new(2.5, 0.05, 0.0),
            Err(Error::NonPositiveParameter { name: "T", .. })
        ));
        assert!(matches!(
            GeneratorParams::new(-1.0, 0.05, 0.5),
            Err(Error::NonPositiveParameter { name: "H", .. })
        ));
        assert!(matches!(
            GeneratorParams::new(2.5, f64::NAN, 0.5),
            Err(Error::NonPositiveParameter { name: "R", .. })
        ));
    }

    #[test]
    fn rejects_overdamped_sets() {
        // 2*0.5 = 1 <= 100*0.05 = 5
        assert!(matches!(
            GeneratorParams::new(100.0, 0.05, 0.5),
            Err(Error::NotUnderdamped { .. })
        ));
    }

    #[test]
    fn damping_defaults_to_zero_in_raw_records() {
        let p: GeneratorParams =
            serde_json::from_str(r#"{"inertia":2.5,"droop":0.05,"governor_tc":0.5}"#).unwrap();
        assert_eq!(p.damping(), 0.0);
        let err = serde_json::from_str::<GeneratorParams>(
            r#"{"inertia":100,"droop":0.05,"governor_tc":0.5}"#,
        );
        assert!(err.is_err());
    }

    #[test]
    fn derived_constants_reference_values() {
        let c = canonical().derived_constants();
        assert_ulps_eq!(c.alpha, -3.0, max_ulps = 2);
        assert_ulps_eq!(c.omega, 2.645_751_311_064_590_7, max_ulps = 2);
        assert_ulps_eq!(c.k, -1.133_893_419_027_681_7, max_ulps = 2);
        // omega^2 = (2*0.5 - 0.125)/(4*2.5*0.05*0.25) = 7 exactly
        assert_relative_eq!(c.omega * c.omega, 7.0, max_relative = 1e-15);
    }

    #[test]
    fn alpha_vanishes_when_hr_equals_t() {
        // H*R = T = 0.5 -> alpha = 0, k = 0
        let p = GeneratorParams::new(5.0, 0.1, 0.5).unwrap();
        let c = p.derived_constants();
        assert_eq!(c.alpha, 0.0);
        assert_eq!(c.k, 0.0);
    }

    #[test]
    fn poles_reference_values() {
        let pair = canonical().continuous_poles();
        assert_ulps_eq!(pair.re, -1.0, max_ulps = 2);
        assert_ulps_eq!(pair.im, 2.645_751_311_064_590_7, max_ulps = 2);
    }

    #[test]
    fn dc_gain_is_droop() {
        let p = canonical();
        assert_eq!(p.dc_gain(), 0.05);
        // 0.2 p.u. step settles at 0.2 * R
        assert_relative_eq!(0.2 * p.dc_gain(), 0.01, max_relative = 1e-15);
    }

    #[test]
    fn pole_imaginary_part_matches_derived_omega_on_grid() {
        for &h in &[1.0, 2.5, 5.0, 10.0] {
            for &r in &[0.02, 0.05, 0.1] {
                for &t in &[0.2, 0.5, 1.0] {
                    let Ok(p) = GeneratorParams::new(h, r, t) else {
                        continue;
                    };
                    let c = p.derived_constants();
                    let poles = p.continuous_poles();
                    assert_relative_eq!(poles.im, c.omega, max_relative = 1e-12);
                    assert_relative_eq!(poles.re, -1.0 / (2.0 * t), max_relative = 1e-15);
                    assert!(2.0 * t - h * r > 0.0);
                    assert!(c.omega > 0.0);
                }
            }
        }
    }
}
