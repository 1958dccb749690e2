//! Maximum-permissible-transmit-power pipelines: single-mode, multimode via
//! beam quality or full decomposition, thin-lens systems, emitter arrays,
//! diffusers and the skin-hazard limits. Every pipeline returns the full
//! audit trail alongside the power limit.

use std::f64::consts::PI;

use serde::Serialize;

use crate::elements::{thin_lens_image, DiffuserKind, DiffuserSpec, ThinLensSpec};
use crate::error::{Error, Result};
use crate::gaussian::BeamParams;
use crate::limits::{
    self, eye_mpe, skin_limiting_aperture_diameter, skin_mpe, ExposureContext, MpeResult,
    ALPHA_MIN,
};
use crate::modes::{
    embedded_gaussian, peak_irradiance_location, power_through_disk, ModeCombination,
};
use crate::numerics;

/// Closest evaluation position considered in retinal-hazard analyses (m).
pub const MIN_EVALUATION_DISTANCE: f64 = 0.1;

/// Full-angle divergence threshold that pins the hazard position to the
/// closest evaluation distance in the single-mode pipeline (rad).
pub const WIDE_BEAM_FULL_ANGLE: f64 = 92e-3;

/// Which pipeline produced a safety result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SingleMode,
    MSquared,
    Decomposition,
    Lens,
    Array,
    LambertianDiffuser,
    UniformDiffuser,
    SkinGaussian,
    SkinMultimode,
}

/// Power limit plus the audit trail that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct SafetyResult {
    /// Maximum permissible transmit power (per emitter for arrays), W.
    pub p_t_max: f64,
    /// Hazard evaluation distance used, m.
    pub z_haz: f64,
    /// Angular subtense entering the exposure limit, rad (0 for skin).
    pub alpha: f64,
    /// Captured power fraction (or eta) at the hazard position.
    pub eta_or_fraction: f64,
    /// Exposure limit and its coefficients.
    pub mpe: MpeResult,
    pub method: Method,
}

/// Square emitter array with identical sources on a uniform pitch.
#[derive(Debug, Clone, Serialize)]
pub struct ArraySpec {
    pub side_count: u32,
    pub pitch: f64,
    pub emitter: BeamParams,
    pub per_emitter_combo: Option<ModeCombination>,
}

impl ArraySpec {
    pub fn validate(&self) -> Result<()> {
        if self.side_count < 1 {
            return Err(Error::Parameter("array side count must be >= 1".into()));
        }
        if self.pitch < 0.0 {
            return Err(Error::Parameter("array pitch must be non-negative".into()));
        }
        Ok(())
    }
}

/// Enclosure geometry for skin-hazard evaluation.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ShieldContext {
    /// Closest accessible distance to the beam waist, m.
    pub shield_distance: f64,
}

impl ShieldContext {
    pub fn new(shield_distance: f64) -> Result<Self> {
        if shield_distance < 0.0 {
            return Err(Error::Parameter(format!(
                "shield distance must be non-negative, got {shield_distance}"
            )));
        }
        Ok(ShieldContext { shield_distance })
    }

    /// Exposed skin area at the shield: pi W(d_sh)^2.
    pub fn exposed_area(&self, beam: &BeamParams) -> f64 {
        let w = beam.spot_radius(self.shield_distance);
        PI * w * w
    }
}

/// Shared single-mode pipeline. `alpha_override` replaces the subtense rule
/// once the hazard distance is known (used by the virtual-image lens case).
fn single_mode_pipeline(
    wavelength: f64,
    waist: f64,
    ctx: &ExposureContext,
    alpha_override: Option<&dyn Fn(f64) -> f64>,
    method: Method,
) -> Result<SafetyResult> {
    let r_p = ctx.pupil_radius();
    let theta = wavelength / (PI * waist);
    let beam = BeamParams::new(wavelength, waist)?;
    let d86 = beam.d86_distance(r_p);

    let (z_haz, alpha_rule) = if 2.0 * theta > WIDE_BEAM_FULL_ANGLE && d86 < MIN_EVALUATION_DISTANCE
    {
        let z = MIN_EVALUATION_DISTANCE;
        (z, 2.0 * (waist / z).atan())
    } else {
        let alpha_sel = 2.0 * (waist / d86).atan();
        let z = if alpha_sel < ALPHA_MIN {
            waist / 0.0021
        } else {
            9.2 * PI * waist / (2.0 * wavelength)
        };
        (z, alpha_sel)
    };
    let alpha = match alpha_override {
        Some(f) => f(z_haz),
        None => alpha_rule,
    };

    // far-field substitution W ~ lambda z / (pi w0) in the capture fraction
    let x = 2.0 * r_p * r_p * (PI * waist) * (PI * waist) / (wavelength * z_haz * wavelength * z_haz);
    let eta = 1.0 - (-x).exp();
    let mpe = eye_mpe(ctx, alpha)?;
    let p_t_max = mpe.mpe * PI * r_p * r_p / eta;
    Ok(SafetyResult {
        p_t_max,
        z_haz,
        alpha,
        eta_or_fraction: eta,
        mpe,
        method,
    })
}

/// Maximum transmit power of an ideal single-mode source.
pub fn ptmax_single_mode(beam: &BeamParams, ctx: &ExposureContext) -> Result<SafetyResult> {
    single_mode_pipeline(
        beam.wavelength(),
        beam.waist_radius(),
        ctx,
        None,
        Method::SingleMode,
    )
}

/// Maximum transmit power of a multimode source reduced to its embedded
/// Gaussian: the embedded beam shares the real divergence `theta_r` and runs
/// through the single-mode pipeline.
pub fn ptmax_multimode_msquared(theta_r: f64, ctx: &ExposureContext) -> Result<SafetyResult> {
    let em = embedded_gaussian(
        theta_r,
        ctx.wavelength(),
        ctx.wavelength() / (PI * theta_r),
    )?;
    single_mode_pipeline(ctx.wavelength(), em.w0_em, ctx, None, Method::MSquared)
}

/// Maximum transmit power of a multimode source by full decomposition: the
/// captured fraction is integrated around the irradiance peak at `z_eval`
/// and the subtense follows the native-waist rule.
pub fn ptmax_multimode_decomposition(
    combo: &ModeCombination,
    beam: &BeamParams,
    ctx: &ExposureContext,
    z_eval: f64,
) -> Result<SafetyResult> {
    if !(z_eval > 0.0) {
        return Err(Error::Parameter(format!(
            "evaluation distance must be positive, got {z_eval}"
        )));
    }
    let r_p = ctx.pupil_radius();
    let peak = peak_irradiance_location(combo, beam, z_eval);
    let fraction = power_through_disk(combo, beam, 1.0, (peak.x, peak.y), r_p, z_eval)?;
    let alpha = 2.0 * (beam.waist_radius() / z_eval).atan();
    let mpe = eye_mpe(ctx, alpha)?;
    let p_t_max = mpe.mpe * PI * r_p * r_p / fraction;
    Ok(SafetyResult {
        p_t_max,
        z_haz: z_eval,
        alpha,
        eta_or_fraction: fraction,
        mpe,
        method: Method::Decomposition,
    })
}

/// Maximum transmit power of a source with a thin lens in front of it.
///
/// A real image (d2 > 0) reruns the single-mode pipeline on the transformed
/// beam. A virtual image keeps the transformed beam but takes the apparent
/// source size at the lens, W(d1), for the subtense angle.
pub fn ptmax_with_lens(
    beam: &BeamParams,
    lens: &ThinLensSpec,
    ctx: &ExposureContext,
) -> Result<SafetyResult> {
    let img = thin_lens_image(beam, lens)?;
    if img.image_distance > 0.0 {
        return single_mode_pipeline(
            beam.wavelength(),
            img.image_waist,
            ctx,
            None,
            Method::Lens,
        );
    }
    let w_at_lens = beam.spot_radius(lens.object_distance);
    let alpha_fn = move |z_haz: f64| 2.0 * (w_at_lens / z_haz).atan();
    single_mode_pipeline(
        beam.wavelength(),
        img.image_waist,
        ctx,
        Some(&alpha_fn),
        Method::Lens,
    )
}

/// Fraction of one emitter's power collected by a pupil of radius `r_p`
/// whose center is offset by (dx, dy) from the emitter axis at plane z.
fn emitter_pupil_fraction(
    beam: &BeamParams,
    combo: Option<&ModeCombination>,
    offset: (f64, f64),
    r_p: f64,
    z: f64,
) -> Result<f64> {
    match combo {
        Some(c) => power_through_disk(c, beam, 1.0, offset, r_p, z),
        None => {
            if offset.0 == 0.0 && offset.1 == 0.0 {
                Ok(beam.power_through_centered_aperture(1.0, r_p, z))
            } else {
                let w = beam.spot_radius(z);
                let (v, _) = numerics::integrate_disk(
                    |x, y| {
                        2.0 / (PI * w * w) * (-2.0 * (x * x + y * y) / (w * w)).exp()
                    },
                    offset,
                    r_p,
                    &numerics::QuadratureSpec::default(),
                )?;
                Ok(v)
            }
        }
    }
}

/// Per-emitter maximum transmit power of an N x N array.
///
/// Every concentric i x i sub-array is checked: its subtense angle follows
/// the block extent (i-1) pitch + 2 w0, clamped to the point/large limits,
/// and its pupil power is the summed contribution of the block emitters.
/// The binding constraint across block sizes sets the per-emitter limit.
pub fn ptmax_array(array: &ArraySpec, ctx: &ExposureContext) -> Result<SafetyResult> {
    array.validate()?;
    let beam = &array.emitter;
    let r_p = ctx.pupil_radius();
    let single = ptmax_single_mode(beam, ctx)?;
    let z_haz = single.z_haz.max(MIN_EVALUATION_DISTANCE);
    let w0 = beam.waist_radius();
    let n = array.side_count;

    let centered_fraction =
        emitter_pupil_fraction(beam, array.per_emitter_combo.as_ref(), (0.0, 0.0), r_p, z_haz)?;
    // beyond this range the block spread is negligible against the spot
    let far_field = z_haz > 100.0 * n as f64 * array.pitch;

    let mut best: Option<SafetyResult> = None;
    for i in 1..=n {
        let extent = (i - 1) as f64 * array.pitch + 2.0 * w0;
        let alpha_raw = 2.0 * (extent / (2.0 * z_haz)).atan();
        let alpha = alpha_raw
            .max(ALPHA_MIN)
            .min(limits::alpha_max(ctx.exposure_duration()));
        let mpe = eye_mpe(ctx, alpha)?;

        let block_power = if far_field {
            (i * i) as f64 * centered_fraction
        } else {
            let half = (i as f64 - 1.0) / 2.0;
            let mut sum = 0.0;
            for jx in 0..i {
                for jy in 0..i {
                    let ox = (jx as f64 - half) * array.pitch;
                    let oy = (jy as f64 - half) * array.pitch;
                    sum += emitter_pupil_fraction(
                        beam,
                        array.per_emitter_combo.as_ref(),
                        (ox, oy),
                        r_p,
                        z_haz,
                    )?;
                }
            }
            sum
        };

        let p_e = mpe.mpe * PI * r_p * r_p / block_power;
        let candidate = SafetyResult {
            p_t_max: p_e,
            z_haz,
            alpha,
            eta_or_fraction: block_power / (i * i) as f64,
            mpe,
            method: Method::Array,
        };
        if best.as_ref().map_or(true, |b| candidate.p_t_max < b.p_t_max) {
            best = Some(candidate);
        }
    }
    Ok(best.expect("side_count >= 1 guarantees a candidate"))
}

/// Maximum transmit power with a Lambertian diffuser fed by a collimating
/// lens, evaluated at the hazard distance `z_haz`.
pub fn ptmax_lambertian_diffuser(
    spec: &DiffuserSpec,
    beam: &BeamParams,
    ctx: &ExposureContext,
    z_haz: f64,
) -> Result<SafetyResult> {
    spec.validate()?;
    let order = match spec.kind {
        DiffuserKind::Lambertian { order } => order,
        _ => return Err(Error::Parameter("diffuser is not Lambertian".into())),
    };
    let r_p = ctx.pupil_radius();
    let w_f = beam.spot_radius(spec.collimating_focal_length);
    let alpha = 2.0 * (w_f / z_haz).atan();
    let mpe = eye_mpe(ctx, alpha)?;
    let psi_haz = (r_p / z_haz).atan();
    let fraction = 1.0 - psi_haz.cos().powf(order + 1.0);
    Ok(SafetyResult {
        p_t_max: mpe.mpe * PI * r_p * r_p / fraction,
        z_haz,
        alpha,
        eta_or_fraction: fraction,
        mpe,
        method: Method::LambertianDiffuser,
    })
}

/// Maximum transmit power with a uniform-cone diffuser fed by a collimating
/// lens, evaluated at the hazard distance `z_haz`.
pub fn ptmax_uniform_diffuser(
    spec: &DiffuserSpec,
    beam: &BeamParams,
    ctx: &ExposureContext,
    z_haz: f64,
) -> Result<SafetyResult> {
    spec.validate()?;
    let theta_d = match spec.kind {
        DiffuserKind::Uniform { fwhm_angle } => fwhm_angle,
        _ => return Err(Error::Parameter("diffuser is not uniform".into())),
    };
    let r_p = ctx.pupil_radius();
    let w_f = beam.spot_radius(spec.collimating_focal_length);
    let alpha = 2.0 * (w_f / z_haz).atan();
    let mpe = eye_mpe(ctx, alpha)?;
    // apparent emission vertex sits behind the diffuser plane
    let z_eff = z_haz + w_f / (theta_d / 2.0).tan();
    let cos_psi = z_eff / (z_eff * z_eff + r_p * r_p).sqrt();
    let fraction = ((1.0 - cos_psi) / (1.0 - (theta_d / 2.0).cos())).min(1.0);
    Ok(SafetyResult {
        p_t_max: mpe.mpe * PI * r_p * r_p / fraction,
        z_haz,
        alpha,
        eta_or_fraction: fraction,
        mpe,
        method: Method::UniformDiffuser,
    })
}

/// Skin-hazard-limited transmit power of an ideal Gaussian beam behind a
/// shield. Beams narrower than the limiting aperture are limited by their
/// unaveraged exposure, MPE * pi W^2.
pub fn ptmax_skin_gaussian(
    beam: &BeamParams,
    shield: &ShieldContext,
    ctx: &ExposureContext,
) -> Result<SafetyResult> {
    if ctx.wavelength() < 1400e-9 {
        return Err(Error::Domain(format!(
            "skin pipeline requires wavelength >= 1400 nm (eye limits govern below); got {:.1} nm",
            ctx.wavelength() * 1e9
        )));
    }
    let w = beam.spot_radius(shield.shield_distance);
    let a_s = PI * w * w;
    let mpe = skin_mpe(ctx, a_s)?;
    let r_a = skin_limiting_aperture_diameter(ctx.exposure_duration()) / 2.0;
    let (p_t_max, fraction) = if w < r_a {
        (mpe.mpe * PI * w * w, 1.0)
    } else {
        let f = 1.0 - (-2.0 * r_a * r_a / (w * w)).exp();
        (mpe.mpe * PI * r_a * r_a / f, f)
    };
    Ok(SafetyResult {
        p_t_max,
        z_haz: shield.shield_distance,
        alpha: 0.0,
        eta_or_fraction: fraction,
        mpe,
        method: Method::SkinGaussian,
    })
}

/// Skin-hazard-limited transmit power of a multimode beam: the captured
/// fraction is integrated through the limiting aperture around the
/// irradiance peak at the shield plane.
pub fn ptmax_skin_multimode(
    combo: &ModeCombination,
    beam: &BeamParams,
    shield: &ShieldContext,
    ctx: &ExposureContext,
) -> Result<SafetyResult> {
    if ctx.wavelength() < 1400e-9 {
        return Err(Error::Domain(format!(
            "skin pipeline requires wavelength >= 1400 nm (eye limits govern below); got {:.1} nm",
            ctx.wavelength() * 1e9
        )));
    }
    let a_s = shield.exposed_area(beam);
    let mpe = skin_mpe(ctx, a_s)?;
    let r_a = skin_limiting_aperture_diameter(ctx.exposure_duration()) / 2.0;
    let z = shield.shield_distance;
    let peak = peak_irradiance_location(combo, beam, z);
    let fraction = power_through_disk(combo, beam, 1.0, (peak.x, peak.y), r_a, z)?;
    Ok(SafetyResult {
        p_t_max: mpe.mpe * PI * r_a * r_a / fraction,
        z_haz: z,
        alpha: 0.0,
        eta_or_fraction: fraction,
        mpe,
        method: Method::SkinMultimode,
    })
}

/// Most hazardous position: argmax of exposure level over limit on
/// [0.1 m, z_upper], by logarithmic scan with golden-section refinement.
pub fn most_hazardous_position<F>(profile: F, z_upper: f64) -> f64
where
    F: Fn(f64) -> (f64, f64),
{
    let ratio = |z: f64| {
        let (i, mpe) = profile(z);
        i / mpe
    };
    numerics::argmax_scan(
        ratio,
        MIN_EVALUATION_DISTANCE,
        z_upper.max(MIN_EVALUATION_DISTANCE * 1.001),
        200,
        1e-6,
    )
}

/// Convenient irradiance-over-limit profile for a single-mode beam viewed
/// through the subtense rule; exposed for hazard-position scans.
pub fn gaussian_hazard_profile<'a>(
    beam: &'a BeamParams,
    ctx: &'a ExposureContext,
    p_t: f64,
) -> impl Fn(f64) -> (f64, f64) + 'a {
    move |z: f64| {
        let i = beam.irradiance(p_t, 0.0, z);
        let alpha = limits::subtense_angle(2.0 * beam.waist_radius(), z);
        let mpe = eye_mpe(ctx, alpha).map(|m| m.mpe).unwrap_or(f64::INFINITY);
        (i, mpe)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::presets;

    fn ctx850(t: f64) -> ExposureContext {
        ExposureContext::with_default_pupil(850e-9, t).unwrap()
    }

    fn beam() -> BeamParams {
        BeamParams::new(850e-9, 5e-6).unwrap()
    }

    #[test]
    fn single_mode_reference_values() {
        let r = ptmax_single_mode(&beam(), &ctx850(100.0)).unwrap();
        assert!((r.p_t_max - 1.3546e-3).abs() < 2e-6, "{}", r.p_t_max);
        assert_eq!(r.z_haz, 0.1);
        assert!((r.alpha - 1e-4).abs() < 1e-7);
        assert!((r.eta_or_fraction - 0.56686).abs() < 1e-4);
        assert_eq!(r.mpe.branch_id, "eye.point.700-1050.long");

        let b950 = BeamParams::new(950e-9, 5e-6).unwrap();
        let ctx = ExposureContext::with_default_pupil(950e-9, 100.0).unwrap();
        let r950 = ptmax_single_mode(&b950, &ctx).unwrap();
        assert!((r950.p_t_max - 2.4928e-3).abs() < 2e-6);
    }

    #[test]
    fn single_mode_constant_beyond_ten_seconds() {
        let base = ptmax_single_mode(&beam(), &ctx850(10.0)).unwrap().p_t_max;
        for t in [100.0, 1e3, 3e4] {
            let p = ptmax_single_mode(&beam(), &ctx850(t)).unwrap().p_t_max;
            assert!((p - base).abs() / base < 1e-12);
        }
    }

    #[test]
    fn single_mode_nonincreasing_below_ten_seconds() {
        let mut last = f64::INFINITY;
        for t in [1e-3, 1e-2, 0.1, 1.0, 5.0, 9.99] {
            let p = ptmax_single_mode(&beam(), &ctx850(t)).unwrap().p_t_max;
            assert!(p <= last);
            last = p;
        }
    }

    #[test]
    fn single_mode_nondecreasing_in_wavelength() {
        let mut last = 0.0;
        for nm in (700..1050).step_by(25) {
            let b = BeamParams::new(nm as f64 * 1e-9, 5e-6).unwrap();
            let c = ExposureContext::with_default_pupil(nm as f64 * 1e-9, 100.0).unwrap();
            let p = ptmax_single_mode(&b, &c).unwrap().p_t_max;
            assert!(p >= last);
            last = p;
        }
    }

    #[test]
    fn msquared_reduces_to_single_mode_at_unit_ratio() {
        let b = beam();
        let r1 = ptmax_single_mode(&b, &ctx850(100.0)).unwrap();
        let r2 = ptmax_multimode_msquared(b.divergence_angle_paraxial(), &ctx850(100.0)).unwrap();
        assert!((r1.p_t_max - r2.p_t_max).abs() / r1.p_t_max < 1e-12);
    }

    #[test]
    fn msquared_ordering_across_divergence_ratios() {
        let b = beam();
        let th = b.divergence_angle_paraxial();
        let p_c4 = ptmax_multimode_msquared(1.9451 * th, &ctx850(100.0)).unwrap();
        let p_c2 = ptmax_multimode_msquared(1.3248 * th, &ctx850(100.0)).unwrap();
        assert!(p_c4.p_t_max > p_c2.p_t_max);
    }

    #[test]
    fn decomposition_of_pure_gaussian_matches_single_mode() {
        let b = beam();
        let combo = presets::lg_comb(1);
        let dec = ptmax_multimode_decomposition(&combo, &b, &ctx850(100.0), 0.1).unwrap();
        let single = ptmax_single_mode(&b, &ctx850(100.0)).unwrap();
        assert!((dec.p_t_max - single.p_t_max).abs() / single.p_t_max < 0.01);
    }

    #[test]
    fn lens_two_f_matches_no_lens_closely() {
        let b = beam();
        let lens = ThinLensSpec { focal_length: 0.04, object_distance: 0.08 };
        let with = ptmax_with_lens(&b, &lens, &ctx850(100.0)).unwrap();
        let without = ptmax_single_mode(&b, &ctx850(100.0)).unwrap();
        assert!((with.p_t_max - without.p_t_max).abs() / without.p_t_max < 1e-5);
    }

    #[test]
    fn lens_focal_point_is_most_restrictive() {
        let b = beam();
        let c = ctx850(100.0);
        let mut values = vec![];
        for d1 in [0.02, 0.04, 0.06, 0.08] {
            let lens = ThinLensSpec { focal_length: 0.04, object_distance: d1 };
            values.push(ptmax_with_lens(&b, &lens, &c).unwrap().p_t_max);
        }
        let at_f = values[1];
        assert!(values.iter().all(|&p| at_f <= p + 1e-18));
        assert!(at_f < values[0] && at_f < values[3]);
    }

    #[test]
    fn lens_longer_focal_peak_inside_focal_distance() {
        // sweep d1 for f = 8 cm: the maximum is attained between lens and
        // focal point and the collimated case d1 = f is far below it
        let b = beam();
        let c = ctx850(100.0);
        let sweep = [0.02, 0.04, 0.06, 0.07, 0.075, 0.08];
        let values: Vec<f64> = sweep
            .iter()
            .map(|&d1| {
                let lens = ThinLensSpec { focal_length: 0.08, object_distance: d1 };
                ptmax_with_lens(&b, &lens, &c).unwrap().p_t_max
            })
            .collect();
        let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let at_7cm = values[3];
        assert!((at_7cm - max).abs() / max < 1e-9);
        assert!(values[5] < 0.1 * at_7cm);
    }

    #[test]
    fn array_single_element_matches_single_source() {
        let spec = ArraySpec {
            side_count: 1,
            pitch: 0.0,
            emitter: beam(),
            per_emitter_combo: None,
        };
        let arr = ptmax_array(&spec, &ctx850(100.0)).unwrap();
        let single = ptmax_single_mode(&beam(), &ctx850(100.0)).unwrap();
        assert!((arr.p_t_max - single.p_t_max).abs() / single.p_t_max < 1e-3);
    }

    #[test]
    fn array_per_emitter_below_single_and_growing_with_pitch() {
        let c = ctx850(100.0);
        let single = ptmax_single_mode(&beam(), &c).unwrap().p_t_max;
        for n in [2u32, 3, 5] {
            let mut last = 0.0;
            for pitch in [0.0, 125e-6, 250e-6] {
                let spec = ArraySpec {
                    side_count: n,
                    pitch,
                    emitter: beam(),
                    per_emitter_combo: None,
                };
                let p = ptmax_array(&spec, &c).unwrap().p_t_max;
                assert!(p <= single, "N={n} pitch={pitch}: {p} vs single {single}");
                assert!(p >= last, "per-emitter power must grow with pitch");
                last = p;
            }
        }
    }

    #[test]
    fn diffuser_capture_fraction_limits() {
        let b = beam();
        let c = ctx850(100.0);
        let spec = DiffuserSpec {
            kind: DiffuserKind::Lambertian { order: 1.0 },
            diameter: 0.025,
            collimating_focal_length: 5e-3,
        };
        let r = ptmax_lambertian_diffuser(&spec, &b, &c, 0.1).unwrap();
        assert!(r.eta_or_fraction > 0.0 && r.eta_or_fraction <= 1.0);
        // capture-everything limit: P -> MPE pi r_p^2
        let r2 = ptmax_lambertian_diffuser(&spec, &b, &c, 1e-4).unwrap();
        let floor = r2.mpe.mpe * PI * c.pupil_radius() * c.pupil_radius();
        assert!((r2.p_t_max - floor) / floor < 0.05);
    }

    #[test]
    fn uniform_diffuser_wider_cone_relaxes_limit() {
        let b = beam();
        let c = ctx850(100.0);
        let mk = |deg: f64| DiffuserSpec {
            kind: DiffuserKind::Uniform { fwhm_angle: (deg as f64).to_radians() },
            diameter: 0.025,
            collimating_focal_length: 5e-3,
        };
        let p20 = ptmax_uniform_diffuser(&mk(20.0), &b, &c, 0.1).unwrap().p_t_max;
        let p50 = ptmax_uniform_diffuser(&mk(50.0), &b, &c, 0.1).unwrap().p_t_max;
        assert!(p50 > p20);
    }

    #[test]
    fn skin_gaussian_reference_value() {
        // beam chosen so W(d_sh) = 0.2 m; the large-area cell applies
        let lam = 1550e-9;
        let theta = 2f64.to_radians();
        let w0 = lam / (PI * theta);
        let b = BeamParams::new(lam, w0).unwrap();
        let dsh = {
            // solve W(dsh) = 0.2 on the far-field branch
            let z0 = b.rayleigh_range();
            z0 * ((0.2 / w0) * (0.2 / w0) - 1.0f64).sqrt()
        };
        let c = ExposureContext::with_default_pupil(lam, 100.0).unwrap();
        let r = ptmax_skin_gaussian(&b, &ShieldContext::new(dsh).unwrap(), &c).unwrap();
        assert_eq!(r.mpe.mpe, 100.0);
        assert!((r.p_t_max - 6.2837).abs() < 1e-3, "{}", r.p_t_max);
    }

    #[test]
    fn skin_rejects_retinal_band() {
        let b = beam();
        let c = ctx850(100.0);
        assert!(matches!(
            ptmax_skin_gaussian(&b, &ShieldContext::new(0.1).unwrap(), &c),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn skin_multimode_fundamental_matches_gaussian() {
        let lam = 1550e-9;
        let b = BeamParams::new(lam, 5e-6).unwrap();
        let c = ExposureContext::with_default_pupil(lam, 100.0).unwrap();
        let shield = ShieldContext::new(0.05).unwrap();
        let combo = ModeCombination::single(crate::modes::ModeIndex::laguerre(0, 0).unwrap());
        let mm = ptmax_skin_multimode(&combo, &b, &shield, &c).unwrap();
        let sm = ptmax_skin_gaussian(&b, &shield, &c).unwrap();
        assert!((mm.p_t_max - sm.p_t_max).abs() / sm.p_t_max < 0.01);
    }

    #[test]
    fn hazard_position_monotone_profile_hits_floor() {
        let b = beam();
        let c = ctx850(100.0);
        let z = most_hazardous_position(gaussian_hazard_profile(&b, &c, 1e-3), 10.0);
        assert!((z - MIN_EVALUATION_DISTANCE).abs() < 1e-3);
    }
}
