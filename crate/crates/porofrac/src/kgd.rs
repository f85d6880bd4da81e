//! Closed-form plane-strain (KGD-type) hydraulic fracture solution.
//!
//! Crack length, crack-mouth opening and crack-mouth pressure for a fracture
//! driven at constant injection rate in an impermeable, linear-elastic
//! medium, with the fluid filling the whole fracture volume:
//!
//! ```text
//! L(t)    = 0.65 (G Q^3 / (mu (1-nu)))^(1/6) t^(2/3)
//! CMOD(t) = 2.14 (mu (1-nu) Q^3 / G)^(1/6) t^(1/3)
//! p_cm(L) = 1.97 (G^3 Q mu / ((1-nu)^3 L^2))^(1/4) + S
//! ```
//!
//! Inputs are taken as one coherent unit system chosen by the caller; the
//! formulas are evaluated verbatim with no conversion. Useful as an oracle
//! for scaling tests and as a reference curve a stepwise simulation should
//! track on average.

use crate::error::{Error, Result};

/// Parameter group for the closed-form solution.
#[derive(Debug, Clone, Copy)]
pub struct KgdParams {
    /// Shear modulus.
    pub shear_modulus: f64,
    /// Injection rate.
    pub injection_rate: f64,
    /// Fluid dynamic viscosity.
    pub viscosity: f64,
    /// Poisson ratio.
    pub poisson: f64,
    /// In-situ stress offset added to the crack-mouth pressure.
    pub in_situ_stress: f64,
}

impl KgdParams {
    pub fn validate(&self) -> Result<()> {
        if self.shear_modulus <= 0.0 || self.injection_rate <= 0.0 || self.viscosity <= 0.0 {
            return Err(Error::InvalidParameter(
                "shear modulus, injection rate and viscosity must be positive".into(),
            ));
        }
        if !(0.0..0.5).contains(&self.poisson) {
            return Err(Error::InvalidParameter(format!(
                "poisson ratio {} outside [0, 0.5)",
                self.poisson
            )));
        }
        Ok(())
    }
}

/// Crack length at time `t`.
pub fn kgd_length(t: f64, p: &KgdParams) -> f64 {
    let group = p.shear_modulus * p.injection_rate.powi(3) / (p.viscosity * (1.0 - p.poisson));
    0.65 * group.powf(1.0 / 6.0) * t.powf(2.0 / 3.0)
}

/// Crack mouth opening displacement at time `t`.
pub fn kgd_cmod(t: f64, p: &KgdParams) -> f64 {
    let group = p.viscosity * (1.0 - p.poisson) * p.injection_rate.powi(3) / p.shear_modulus;
    2.14 * group.powf(1.0 / 6.0) * t.powf(1.0 / 3.0)
}

/// Crack mouth pressure for a crack of length `l`.
pub fn kgd_pcm(l: f64, p: &KgdParams) -> Result<f64> {
    if l <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "crack length must be positive, got {l}"
        )));
    }
    let group = p.shear_modulus.powi(3) * p.injection_rate * p.viscosity
        / ((1.0 - p.poisson).powi(3) * l * l);
    Ok(1.97 * group.powf(0.25) + p.in_situ_stress)
}
