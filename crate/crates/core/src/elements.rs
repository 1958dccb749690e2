//! Beam transformation by lenses (ray-transfer matrices, thin-lens imaging)
//! and received-power models for Lambertian and uniform engineered diffusers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{BeamParams, ComplexBeamParameter};

/// 2x2 ray-transfer matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RayMatrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl RayMatrix {
    pub fn identity() -> Self {
        RayMatrix { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// Free-space propagation over length `l`.
    pub fn free_space(l: f64) -> Self {
        RayMatrix { a: 1.0, b: l, c: 0.0, d: 1.0 }
    }

    /// Thin lens of focal length `f`.
    pub fn thin_lens(f: f64) -> Self {
        RayMatrix { a: 1.0, b: 0.0, c: -1.0 / f, d: 1.0 }
    }

    pub fn determinant(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &RayMatrix) -> RayMatrix {
        RayMatrix {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

/// Thick lens described by refractive index, center thickness and the two
/// surface radii.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThickLensSpec {
    pub refractive_index: f64,
    pub thickness: f64,
    pub front_radius: f64,
    pub back_radius: f64,
}

/// Ray-transfer matrix of a thick lens:
/// A = 1 + rho (n-1) / (n v1), B = rho / n,
/// C = (n-1)(1/v1 - 1/v2) - rho (n-1)^2 / (n v1 v2),
/// D = 1 - rho (n-1) / (n v2). The determinant is identically one.
pub fn thick_lens_abcd(spec: &ThickLensSpec) -> Result<RayMatrix> {
    let n = spec.refractive_index;
    let rho = spec.thickness;
    let v1 = spec.front_radius;
    let v2 = spec.back_radius;
    if v1 == 0.0 || v2 == 0.0 {
        return Err(Error::Parameter("lens surface radius must be non-zero".into()));
    }
    if !(n >= 1.0) || rho < 0.0 {
        return Err(Error::Parameter(format!(
            "thick lens needs refractive index >= 1 and non-negative thickness, got n={n}, rho={rho}"
        )));
    }
    Ok(RayMatrix {
        a: 1.0 + rho * (n - 1.0) / (n * v1),
        b: rho / n,
        c: (n - 1.0) * (1.0 / v1 - 1.0 / v2) - rho * (n - 1.0) * (n - 1.0) / (n * v1 * v2),
        d: 1.0 - rho * (n - 1.0) / (n * v2),
    })
}

/// Bilinear transform of the complex beam parameter: q2 = (A q + B)/(C q + D).
pub fn transform_q(matrix: &RayMatrix, q: &ComplexBeamParameter) -> Result<ComplexBeamParameter> {
    let (qr, qi) = (q.real_part(), q.imag_part());
    // numerator and denominator as complex numbers
    let (nr, ni) = (matrix.a * qr + matrix.b, matrix.a * qi);
    let (dr, di) = (matrix.c * qr + matrix.d, matrix.c * qi);
    let denom = dr * dr + di * di;
    if denom < 1e-300 {
        return Err(Error::Numerics(
            "beam parameter transform hit a focal singularity (C q + D = 0)".into(),
        ));
    }
    let out_re = (nr * dr + ni * di) / denom;
    let out_im = (ni * dr - nr * di) / denom;
    ComplexBeamParameter::new(out_re, out_im)
}

/// Thin lens with the input waist a distance `object_distance` before it.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThinLensSpec {
    pub focal_length: f64,
    pub object_distance: f64,
}

/// Transformed beam after a thin lens.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThinLensImage {
    /// Image waist location relative to the lens; negative for a virtual image.
    pub image_distance: f64,
    /// Waist radius of the output beam.
    pub image_waist: f64,
    /// Far-field divergence of the output beam.
    pub image_divergence: f64,
    /// Magnification kappa = w2 / w0.
    pub magnification: f64,
}

/// Output waist location and size for a Gaussian beam through a thin lens.
pub fn thin_lens_image(beam: &BeamParams, lens: &ThinLensSpec) -> Result<ThinLensImage> {
    let f = lens.focal_length;
    if f == 0.0 {
        return Err(Error::Parameter("focal length must be non-zero".into()));
    }
    let d1 = lens.object_distance;
    let lam = beam.wavelength();
    let w0 = beam.waist_radius();
    let inv_z0 = lam / (std::f64::consts::PI * w0 * w0);
    let g = 1.0 - d1 / f;
    let d2 = (1.0 / f - g * d1 * inv_z0 * inv_z0) / (1.0 / (f * f) + g * g * inv_z0 * inv_z0);
    let w2 = lam * f
        / (std::f64::consts::PI * w0 * (1.0 + g * g * (f * inv_z0) * (f * inv_z0)).sqrt());
    let kappa = w2 / w0;
    let theta2 = beam.divergence_angle_paraxial() / kappa;
    Ok(ThinLensImage {
        image_distance: d2,
        image_waist: w2,
        image_divergence: theta2,
        magnification: kappa,
    })
}

/// Diffuser radiation pattern.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DiffuserKind {
    /// Generalized Lambertian of the given order (>= 1).
    Lambertian { order: f64 },
    /// Ideal uniform cone with the given full-width-half-maximum angle.
    Uniform { fwhm_angle: f64 },
}

/// Engineered diffuser fed by a collimating lens.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DiffuserSpec {
    pub kind: DiffuserKind,
    pub diameter: f64,
    pub collimating_focal_length: f64,
}

impl DiffuserSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.diameter > 0.0) {
            return Err(Error::Parameter("diffuser diameter must be positive".into()));
        }
        if !(self.collimating_focal_length > 0.0) {
            return Err(Error::Parameter("collimating focal length must be positive".into()));
        }
        match self.kind {
            DiffuserKind::Lambertian { order } if order < 1.0 => Err(Error::Parameter(
                format!("Lambertian order must be >= 1, got {order}"),
            )),
            DiffuserKind::Uniform { fwhm_angle }
                if !(fwhm_angle > 0.0 && fwhm_angle < std::f64::consts::PI) =>
            {
                Err(Error::Parameter(format!(
                    "uniform diffuser angle must lie in (0, pi), got {fwhm_angle}"
                )))
            }
            _ => Ok(()),
        }
    }
}

/// Power collected inside the half-angle `psi_c` from a generalized
/// Lambertian emitter of order m: P_t (1 - cos^(m+1) psi_c).
pub fn lambertian_received_power(p_t: f64, order_m: f64, psi_c: f64) -> f64 {
    p_t * (1.0 - psi_c.cos().powf(order_m + 1.0))
}

/// Power collected inside `psi_c` from an ideal uniform diffuser with cone
/// angle `theta_d`; the emitter radiates nothing outside the cone, so the
/// result is clamped at the transmit power.
pub fn uniform_received_power(p_t: f64, theta_d: f64, psi_c: f64) -> f64 {
    let raw = p_t * (1.0 - psi_c.cos()) / (1.0 - (theta_d / 2.0).cos());
    raw.min(p_t)
}

/// Focal length putting a beam of half-angle divergence `theta` exactly
/// across a diffuser of the given diameter: f = D / (2 tan theta).
pub fn collimating_focal_length(diameter: f64, divergence: f64) -> f64 {
    diameter / (2.0 * divergence.tan())
}
