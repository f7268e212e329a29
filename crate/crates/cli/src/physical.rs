//! Physical-unit conversion: the library is dimensionless, the CLI owns
//! the scales.

use crate::CliError;

/// CODATA/SI reduced Planck constant, J·s.
pub const HBAR_SI: f64 = 1.054571817e-34;

#[derive(Clone, Copy, Debug)]
pub struct PhysicalScale {
    pub length_m: f64,
    pub mass_kg: f64,
    pub hbar_js: f64,
}

impl PhysicalScale {
    pub fn new(length_m: f64, mass_kg: f64) -> Result<Self, CliError> {
        if !(length_m.is_finite() && length_m > 0.0 && mass_kg.is_finite() && mass_kg > 0.0) {
            return Err(CliError::Input(format!(
                "physical scales must be positive: length = {length_m} m, mass = {mass_kg} kg"
            )));
        }
        Ok(Self {
            length_m,
            mass_kg,
            hbar_js: HBAR_SI,
        })
    }

    /// E = ħ² ε̂ / (2 m ℓ²) in joules.
    pub fn energy(&self, eps_hat: f64) -> f64 {
        self.hbar_js * self.hbar_js * eps_hat / (2.0 * self.mass_kg * self.length_m * self.length_m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ground_state_of_a_micron_box() {
        // hand check: E = ħ²π²/(2 m ℓ²) for ℓ = 1e−6 m, m = 9.109e−31 kg
        let scale = PhysicalScale::new(1e-6, 9.109e-31).unwrap();
        let expected = HBAR_SI * HBAR_SI * PI * PI / (2.0 * 9.109e-31 * 1e-12);
        let got = scale.energy(PI * PI);
        assert!((got - expected).abs() / expected < 1e-12);
        // order of magnitude: ~6.0e-26 J
        assert!(got > 5.9e-26 && got < 6.2e-26);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(PhysicalScale::new(0.0, 1.0).is_err());
        assert!(PhysicalScale::new(1.0, -1.0).is_err());
    }
}
