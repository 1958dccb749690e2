//! Exposure-limit engine: angular subtense, source classification, eye and
//! skin maximum permissible exposure with their coefficient systems, and the
//! limiting-aperture rules.
//!
//! Wavelengths are meters internally; the coefficient formulas that are
//! written against nanometer or milliradian scales convert locally. Branch
//! boundaries are lower-inclusive: a duration of 10 s uses the long-duration
//! cell and a wavelength of 1050 nm the upper band.

use serde::Serialize;

use crate::error::{Error, Result};

/// Angular subtense below which a source is treated as a point source (rad).
pub const ALPHA_MIN: f64 = 1.5e-3;

/// Default pupil radius used by the eye pipelines (7 mm diameter).
pub const DEFAULT_PUPIL_RADIUS: f64 = 3.5e-3;

/// Shortest supported exposure duration (s).
pub const T_EX_MIN: f64 = 1e-3;

/// Longest supported exposure duration (s).
pub const T_EX_MAX: f64 = 3e4;

/// Upper subtense clamp: 200 sqrt(t) mrad for t < 0.25 s, 100 mrad beyond.
pub fn alpha_max(t_ex: f64) -> f64 {
    if t_ex < 0.25 {
        200e-3 * t_ex.sqrt()
    } else {
        100e-3
    }
}

/// Angle subtended by an apparent source of the given diameter viewed from
/// `distance`: 2 atan(D / 2z). For non-circular sources pass the arithmetic
/// mean of the extreme dimensions.
pub fn subtense_angle(source_diameter: f64, distance: f64) -> f64 {
    debug_assert!(distance > 0.0 && source_diameter >= 0.0);
    2.0 * (source_diameter / (2.0 * distance)).atan()
}

/// Exposure geometry shared by the limit lookups.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExposureContext {
    wavelength: f64,
    exposure_duration: f64,
    pupil_radius: f64,
}

impl ExposureContext {
    pub fn new(wavelength: f64, exposure_duration: f64, pupil_radius: f64) -> Result<Self> {
        if !(wavelength > 0.0) {
            return Err(Error::Parameter(format!(
                "wavelength must be positive, got {wavelength}"
            )));
        }
        if !(T_EX_MIN..=T_EX_MAX).contains(&exposure_duration) {
            return Err(Error::Domain(format!(
                "exposure duration {exposure_duration} s outside supported range \
                 [{T_EX_MIN}, {T_EX_MAX}] s"
            )));
        }
        if !(pupil_radius > 0.0) {
            return Err(Error::Parameter(format!(
                "pupil radius must be positive, got {pupil_radius}"
            )));
        }
        Ok(ExposureContext {
            wavelength,
            exposure_duration,
            pupil_radius,
        })
    }

    /// Context with the standard 3.5 mm pupil radius.
    pub fn with_default_pupil(wavelength: f64, exposure_duration: f64) -> Result<Self> {
        Self::new(wavelength, exposure_duration, DEFAULT_PUPIL_RADIUS)
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn exposure_duration(&self) -> f64 {
        self.exposure_duration
    }

    pub fn pupil_radius(&self) -> f64 {
        self.pupil_radius
    }
}

/// Source size class by angular subtense.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceClass {
    Point,
    Intermediate,
    Large,
}

/// Angular subtense with its classification.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SourceExtent {
    pub alpha: f64,
    pub class: SourceClass,
}

/// Classifies a subtense angle for the given exposure duration.
pub fn classify_source(alpha: f64, t_ex: f64) -> SourceExtent {
    let class = if alpha <= ALPHA_MIN {
        SourceClass::Point
    } else if alpha < alpha_max(t_ex) {
        SourceClass::Intermediate
    } else {
        SourceClass::Large
    };
    SourceExtent { alpha, class }
}

/// Exposure limit with the coefficients and table cell that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct MpeResult {
    /// Limit in W/m^2.
    pub mpe: f64,
    pub c4: f64,
    pub c6: f64,
    pub c7: f64,
    /// Extended-source time break point T2 in seconds.
    pub t2: f64,
    /// Source classification; not applicable to skin limits.
    pub source_class: Option<SourceClass>,
    /// Stable identifier of the table cell used.
    pub branch_id: &'static str,
}

/// C4 = 10^(0.002 (lambda_nm - 700)) below 1050 nm, 5 above.
pub fn c4(wavelength: f64) -> f64 {
    let nm = wavelength * 1e9;
    if nm < 1050.0 {
        10f64.powf(0.002 * (nm - 700.0))
    } else {
        5.0
    }
}

/// C6: 1 for point sources, alpha/alpha_min up to alpha_max, clamped beyond.
pub fn c6(alpha: f64, t_ex: f64) -> f64 {
    let amax = alpha_max(t_ex);
    if alpha <= ALPHA_MIN {
        1.0
    } else if alpha <= amax {
        alpha / ALPHA_MIN
    } else {
        amax / ALPHA_MIN
    }
}

/// C7: 1 below 1150 nm, 10^(0.018 (lambda_nm - 1150)) to 1200 nm, then 8.
pub fn c7(wavelength: f64) -> f64 {
    let nm = wavelength * 1e9;
    if nm < 1150.0 {
        1.0
    } else if nm < 1200.0 {
        10f64.powf(0.018 * (nm - 1150.0))
    } else {
        8.0
    }
}

/// Extended-source time break point T2 (s), clamped to [10, 100].
pub fn t2(alpha: f64, t_ex: f64) -> f64 {
    let amax = alpha_max(t_ex);
    if alpha <= ALPHA_MIN {
        10.0
    } else if alpha <= amax {
        10.0 * 10f64.powf((alpha - ALPHA_MIN) * 1e3 / 98.5)
    } else {
        100.0
    }
}

/// Retinal-hazard exposure limit for 700 nm <= lambda < 1400 nm.
///
/// Point sources use the two duration cells per band; extended sources
/// branch on T2. The 1050-1400 nm short-duration point cell is
/// 90 t^0.75 / t with no C7 factor, as tabulated.
pub fn eye_mpe(ctx: &ExposureContext, alpha: f64) -> Result<MpeResult> {
    let nm = ctx.wavelength * 1e9;
    if !(700.0..1400.0).contains(&nm) {
        return Err(Error::Domain(format!(
            "eye exposure limits cover 700 nm <= wavelength < 1400 nm, got {nm:.1} nm"
        )));
    }
    let t = ctx.exposure_duration;
    let extent = classify_source(alpha, t);
    let c4v = c4(ctx.wavelength);
    let c6v = c6(alpha, t);
    let c7v = c7(ctx.wavelength);
    let t2v = t2(alpha, t);
    let lower_band = nm < 1050.0;
    let (mpe, branch_id) = if extent.class == SourceClass::Point {
        match (lower_band, t < 10.0) {
            (true, true) => (18.0 * t.powf(0.75) * c4v / t, "eye.point.700-1050.short"),
            (true, false) => (10.0 * c4v * c7v, "eye.point.700-1050.long"),
            (false, true) => (90.0 * t.powf(0.75) / t, "eye.point.1050-1400.short"),
            (false, false) => (10.0 * c4v * c7v, "eye.point.1050-1400.long"),
        }
    } else {
        match (lower_band, t <= t2v) {
            (true, true) => (
                18.0 * t.powf(0.75) * c4v * c6v / t,
                "eye.extended.700-1050.below-t2",
            ),
            (true, false) => (
                18.0 * c4v * c6v * t2v.powf(-0.25),
                "eye.extended.700-1050.above-t2",
            ),
            (false, true) => (
                90.0 * t.powf(0.75) * c6v * c7v / t,
                "eye.extended.1050-1400.below-t2",
            ),
            (false, false) => (
                90.0 * c6v * c7v * t2v.powf(-0.25),
                "eye.extended.1050-1400.above-t2",
            ),
        }
    };
    Ok(MpeResult {
        mpe,
        c4: c4v,
        c6: c6v,
        c7: c7v,
        t2: t2v,
        source_class: Some(extent.class),
        branch_id,
    })
}

/// Skin exposure limit for 1400 nm <= lambda < 10^5 nm, branched on the
/// exposed skin area `a_s` (m^2) and the exposure duration.
pub fn skin_mpe(ctx: &ExposureContext, a_s: f64) -> Result<MpeResult> {
    let nm = ctx.wavelength * 1e9;
    if !(1400.0..1e5).contains(&nm) {
        return Err(Error::Domain(format!(
            "skin exposure limits cover 1400 nm <= wavelength < 1e5 nm, got {nm:.1} nm"
        )));
    }
    if !(a_s > 0.0) {
        return Err(Error::Parameter(format!(
            "exposed skin area must be positive, got {a_s}"
        )));
    }
    let t = ctx.exposure_duration;
    let lower_band = nm < 1500.0;
    let short = t < 10.0;
    let (mpe, branch_id) = match (lower_band, short) {
        (true, true) => {
            if a_s <= 0.01 {
                (5600.0 * t.powf(-0.75), "skin.1400-1500.short.a<=0.01")
            } else if a_s <= 0.1 {
                (56.0 * t.powf(-0.75) / a_s, "skin.1400-1500.short.0.01<a<=0.1")
            } else {
                (560.0 * t.powf(-0.75), "skin.1400-1500.short.a>0.1")
            }
        }
        (true, false) => {
            if a_s <= 0.01 {
                (1000.0, "skin.1400-1500.long.a<=0.01")
            } else if a_s <= 0.1 {
                (10.0 / a_s, "skin.1400-1500.long.0.01<a<=0.1")
            } else {
                (100.0, "skin.1400-1500.long.a>0.1")
            }
        }
        (false, true) => {
            if a_s <= 0.01 {
                (1e4 / t, "skin.1500-1e5.short.a<=0.01")
            } else if a_s <= 0.1 {
                (1e2 / (t * a_s), "skin.1500-1e5.short.0.01<a<=0.1")
            } else {
                (1e3 / t, "skin.1500-1e5.short.a>0.1")
            }
        }
        (false, false) => {
            if a_s <= 0.01 {
                (1000.0, "skin.1500-1e5.long.a<=0.01")
            } else if a_s <= 0.1 {
                (10.0 / a_s, "skin.1500-1e5.long.0.01<a<=0.1")
            } else {
                (100.0, "skin.1500-1e5.long.a>0.1")
            }
        }
    };
    Ok(MpeResult {
        mpe,
        c4: 1.0,
        c6: 1.0,
        c7: 1.0,
        t2: 10.0,
        source_class: None,
        branch_id,
    })
}

/// Limiting aperture diameter for skin measurements: 3.5 mm at all
/// tabulated durations.
pub fn skin_limiting_aperture_diameter(_t_ex: f64) -> f64 {
    3.5e-3
}

/// Limiting aperture diameter for eye measurements in the skin-safety
/// table: 1 mm below 0.35 s, 1.5 t^(3/8) mm to 10 s, 3.5 mm beyond.
pub fn eye_limiting_aperture_diameter(t_ex: f64) -> f64 {
    if t_ex < 0.35 {
        1e-3
    } else if t_ex < 10.0 {
        1.5e-3 * t_ex.powf(0.375)
    } else {
        3.5e-3
    }
}
