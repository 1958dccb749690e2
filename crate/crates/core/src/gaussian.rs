//! Ideal single-transverse-mode Gaussian beam propagation.
//!
//! All quantities are SI: lengths in meters, angles in radians, powers in
//! watts. Unit conversion belongs at the application boundary, not here.

use serde::Serialize;

use crate::error::{Error, Result};

/// Power fraction defining the `d86` distance (the radius measure used by
/// the single-mode pipeline). Kept at 0.86 exactly, not 1 - e^-2.
pub const D86_POWER_FRACTION: f64 = 0.86;

/// Ideal Gaussian beam: wavelength and 1/e^2 waist radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BeamParams {
    wavelength: f64,
    waist_radius: f64,
}

impl BeamParams {
    pub fn new(wavelength: f64, waist_radius: f64) -> Result<Self> {
        if !(wavelength > 0.0) {
            return Err(Error::Parameter(format!(
                "wavelength must be positive, got {wavelength}"
            )));
        }
        if !(waist_radius > 0.0) {
            return Err(Error::Parameter(format!(
                "waist radius must be positive, got {waist_radius}"
            )));
        }
        Ok(BeamParams {
            wavelength,
            waist_radius,
        })
    }

    /// Wavelength in meters.
    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    /// Waist radius w0 in meters (1/e^2 intensity radius at the waist).
    pub fn waist_radius(&self) -> f64 {
        self.waist_radius
    }

    /// Rayleigh range z0 = pi w0^2 / lambda.
    pub fn rayleigh_range(&self) -> f64 {
        std::f64::consts::PI * self.waist_radius * self.waist_radius / self.wavelength
    }

    /// Spot radius W(z) = w0 sqrt(1 + (z/z0)^2); even in z and >= w0.
    pub fn spot_radius(&self, z: f64) -> f64 {
        let zr = z / self.rayleigh_range();
        self.waist_radius * (1.0 + zr * zr).sqrt()
    }

    /// Wavefront curvature radius R(z) = z (1 + (z0/z)^2), with the flat
    /// wavefront at the waist reported as a distinguished variant.
    pub fn curvature_radius(&self, z: f64) -> WavefrontCurvature {
        if z == 0.0 {
            return WavefrontCurvature::Flat;
        }
        let r = z / self.rayleigh_range();
        WavefrontCurvature::Radius(z * (1.0 + 1.0 / (r * r)))
    }

    /// Complex beam parameter q(z) = z + j z0.
    pub fn q_parameter(&self, z: f64) -> ComplexBeamParameter {
        ComplexBeamParameter {
            real_part: z,
            imag_part: self.rayleigh_range(),
        }
    }

    /// Half-angle far-field divergence, exact form atan(lambda / (pi w0)).
    pub fn divergence_angle(&self) -> f64 {
        self.divergence_angle_paraxial().atan()
    }

    /// Paraxial divergence approximation lambda / (pi w0).
    pub fn divergence_angle_paraxial(&self) -> f64 {
        self.wavelength / (std::f64::consts::PI * self.waist_radius)
    }

    /// On-axis-centered irradiance at radius r and plane z for transmit
    /// power `p_t`: 2 P / (pi W^2) exp(-2 r^2 / W^2).
    pub fn irradiance(&self, p_t: f64, r: f64, z: f64) -> f64 {
        let w = self.spot_radius(z);
        2.0 * p_t / (std::f64::consts::PI * w * w) * (-2.0 * r * r / (w * w)).exp()
    }

    /// Power passing a centered circular aperture of radius `r0` at plane z:
    /// P_t (1 - exp(-2 r0^2 / W(z)^2)).
    pub fn power_through_centered_aperture(&self, p_t: f64, r0: f64, z: f64) -> f64 {
        let w = self.spot_radius(z);
        p_t * (1.0 - (-2.0 * r0 * r0 / (w * w)).exp())
    }

    /// Distance at which 86% of the power passes a pupil of radius `r_p`
    /// (far-field measure): (pi w0 / lambda) sqrt(-2 r_p^2 / ln(1 - 0.86)).
    pub fn d86_distance(&self, r_p: f64) -> f64 {
        let ratio = -2.0 * r_p * r_p / (1.0 - D86_POWER_FRACTION).ln();
        std::f64::consts::PI * self.waist_radius / self.wavelength * ratio.sqrt()
    }
}

/// Wavefront curvature at a plane: flat at the waist, otherwise a signed
/// radius (negative before the waist).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum WavefrontCurvature {
    Flat,
    Radius(f64),
}

impl WavefrontCurvature {
    /// Signed radius, or None for the flat wavefront.
    pub fn radius(&self) -> Option<f64> {
        match self {
            WavefrontCurvature::Flat => None,
            WavefrontCurvature::Radius(r) => Some(*r),
        }
    }
}

/// Complex beam parameter q = z + j z0. The reciprocal decomposes into the
/// curvature term Re(1/q) = 1/R(z) and the spot term -Im(1/q) = lambda / (pi W^2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexBeamParameter {
    real_part: f64,
    imag_part: f64,
}

impl ComplexBeamParameter {
    pub fn new(real_part: f64, imag_part: f64) -> Result<Self> {
        if !(imag_part > 0.0) {
            return Err(Error::Parameter(format!(
                "q parameter needs a positive imaginary part, got {imag_part}"
            )));
        }
        Ok(ComplexBeamParameter {
            real_part,
            imag_part,
        })
    }

    /// Axial position relative to the waist.
    pub fn real_part(&self) -> f64 {
        self.real_part
    }

    /// Rayleigh range of the beam the parameter describes.
    pub fn imag_part(&self) -> f64 {
        self.imag_part
    }

    /// (Re(1/q), Im(1/q)).
    pub fn reciprocal(&self) -> (f64, f64) {
        let denom = self.real_part * self.real_part + self.imag_part * self.imag_part;
        (self.real_part / denom, -self.imag_part / denom)
    }

    /// Waist radius of the described beam for the given wavelength.
    pub fn waist_radius(&self, wavelength: f64) -> f64 {
        (wavelength * self.imag_part / std::f64::consts::PI).sqrt()
    }
}
