//! Hermite-Gaussian and Laguerre-Gaussian transverse modes: polynomial
//! evaluation, per-mode and combined irradiance, peak location, power through
//! an offset aperture, per-mode spot radius and the embedded-Gaussian
//! reduction used by the beam-quality pipeline.
//!
//! Mode irradiances are normalized so the integral over a transverse plane
//! is exactly one; multiply by the mode power coefficient and the transmit
//! power to get physical irradiance in W/m^2.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::BeamParams;
use crate::numerics::{self, QuadratureSpec};

/// Largest supported polynomial index; recurrences stay stable and the
/// normalization factorials finite well past this, the cap just keeps
/// runaway inputs out.
pub const MAX_MODE_INDEX: u32 = 30;

/// Mode power coefficients must sum to one within this tolerance; inputs
/// outside it are rejected rather than silently renormalized.
pub const COEFFICIENT_SUM_TOLERANCE: f64 = 1e-9;

/// Transverse mode family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeFamily {
    HermiteGaussian,
    LaguerreGaussian,
}

/// A single transverse mode order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModeIndex {
    family: ModeFamily,
    l: u32,
    m: u32,
}

impl ModeIndex {
    pub fn new(family: ModeFamily, l: u32, m: u32) -> Result<Self> {
        if l > MAX_MODE_INDEX || m > MAX_MODE_INDEX {
            return Err(Error::Parameter(format!(
                "mode index ({l},{m}) exceeds the supported cap {MAX_MODE_INDEX}"
            )));
        }
        Ok(ModeIndex { family, l, m })
    }

    pub fn hermite(l: u32, m: u32) -> Result<Self> {
        Self::new(ModeFamily::HermiteGaussian, l, m)
    }

    pub fn laguerre(l: u32, m: u32) -> Result<Self> {
        Self::new(ModeFamily::LaguerreGaussian, l, m)
    }

    pub fn family(&self) -> ModeFamily {
        self.family
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Principal mode number: l + m + 1 (Hermite) or l + 2m + 1 (Laguerre).
    pub fn principal_mode_number(&self) -> u32 {
        match self.family {
            ModeFamily::HermiteGaussian => self.l + self.m + 1,
            ModeFamily::LaguerreGaussian => self.l + 2 * self.m + 1,
        }
    }
}

/// Incoherent superposition of same-family modes with unit total power.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeCombination {
    entries: Vec<(ModeIndex, f64)>,
}

impl ModeCombination {
    pub fn new(entries: Vec<(ModeIndex, f64)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Parameter("mode combination is empty".into()));
        }
        let family = entries[0].0.family();
        let mut sum = 0.0;
        for (mode, c) in &entries {
            if mode.family() != family {
                return Err(Error::Parameter(
                    "mode combination mixes Hermite and Laguerre families".into(),
                ));
            }
            if !(*c >= 0.0) {
                return Err(Error::Parameter(format!(
                    "mode power coefficient must be non-negative, got {c}"
                )));
            }
            sum += c;
        }
        if (sum - 1.0).abs() > COEFFICIENT_SUM_TOLERANCE {
            return Err(Error::Parameter(format!(
                "mode power coefficients sum to {sum}, expected 1 within {COEFFICIENT_SUM_TOLERANCE:e}"
            )));
        }
        Ok(ModeCombination { entries })
    }

    /// Single-mode combination carrying all the power.
    pub fn single(mode: ModeIndex) -> Self {
        ModeCombination {
            entries: vec![(mode, 1.0)],
        }
    }

    pub fn family(&self) -> ModeFamily {
        self.entries[0].0.family()
    }

    pub fn entries(&self) -> &[(ModeIndex, f64)] {
        &self.entries
    }
}

/// Physicists' Hermite polynomial H_l(u) by the stable three-term
/// recurrence H_{n+1} = 2u H_n - 2n H_{n-1}.
pub fn hermite_polynomial(l: u32, u: f64) -> Result<f64> {
    if l > MAX_MODE_INDEX {
        return Err(Error::Parameter(format!(
            "Hermite index {l} exceeds the supported cap {MAX_MODE_INDEX}"
        )));
    }
    Ok(hermite_unchecked(l, u))
}

fn hermite_unchecked(l: u32, u: f64) -> f64 {
    match l {
        0 => 1.0,
        1 => 2.0 * u,
        _ => {
            let mut prev = 1.0;
            let mut cur = 2.0 * u;
            for n in 1..l {
                let next = 2.0 * u * cur - 2.0 * n as f64 * prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Generalized Laguerre polynomial L_m^l(x) by the stable recurrence in m.
pub fn laguerre_polynomial(l: u32, m: u32, x: f64) -> Result<f64> {
    if l > MAX_MODE_INDEX || m > MAX_MODE_INDEX {
        return Err(Error::Parameter(format!(
            "Laguerre index ({l},{m}) exceeds the supported cap {MAX_MODE_INDEX}"
        )));
    }
    Ok(laguerre_unchecked(l, m, x))
}

fn laguerre_unchecked(l: u32, m: u32, x: f64) -> f64 {
    match m {
        0 => 1.0,
        _ => {
            let lf = l as f64;
            let mut prev = 1.0;
            let mut cur = 1.0 + lf - x;
            for k in 1..m {
                let kf = k as f64;
                let next = ((2.0 * kf + lf + 1.0 - x) * cur - (kf + lf) * prev) / (kf + 1.0);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Unit-power irradiance density of a single mode at Cartesian (x, y) in the
/// plane z. The (0,0) order of either family is the ideal Gaussian profile.
pub fn mode_irradiance(mode: &ModeIndex, beam: &BeamParams, x: f64, y: f64, z: f64) -> f64 {
    let w = beam.spot_radius(z);
    match mode.family() {
        ModeFamily::HermiteGaussian => {
            // amplitude normalization squared: 2^(1-l-m) / (pi l! m!), scaled
            // by 1/W^2 so the plane integral is one
            let a2 = 2f64.powi(1 - mode.l as i32 - mode.m as i32)
                / (PI * factorial(mode.l) * factorial(mode.m));
            let u = std::f64::consts::SQRT_2 * x / w;
            let v = std::f64::consts::SQRT_2 * y / w;
            let hu = hermite_unchecked(mode.l, u);
            let hv = hermite_unchecked(mode.m, v);
            a2 / (w * w) * hu * hu * hv * hv * (-u * u - v * v).exp()
        }
        ModeFamily::LaguerreGaussian => {
            // amplitude normalization squared: 2 m! / (pi (m+l)!), scaled by 1/W^2
            let a2 = 2.0 * factorial(mode.m) / (PI * factorial(mode.m + mode.l));
            let r2 = x * x + y * y;
            let arg = 2.0 * r2 / (w * w);
            let lag = laguerre_unchecked(mode.l, mode.m, arg);
            a2 / (w * w) * arg.powi(mode.l as i32) * lag * lag * (-arg).exp()
        }
    }
}

/// Weighted irradiance density of a mode combination (unit total power).
pub fn combination_irradiance(
    combo: &ModeCombination,
    beam: &BeamParams,
    x: f64,
    y: f64,
    z: f64,
) -> f64 {
    combo
        .entries()
        .iter()
        .map(|(mode, c)| c * mode_irradiance(mode, beam, x, y, z))
        .sum()
}

/// Location of the irradiance maximum in a transverse plane, with the
/// residual of the analytic stationarity conditions as a diagnostic.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PeakLocation {
    pub x: f64,
    pub y: f64,
    /// max(|dI/dx|, |dI/dy|) at the returned point (W/m^3).
    pub stationarity_residual: f64,
}

/// Analytic gradient of the combination irradiance.
fn irradiance_gradient(
    combo: &ModeCombination,
    beam: &BeamParams,
    x: f64,
    y: f64,
    z: f64,
) -> (f64, f64) {
    let w = beam.spot_radius(z);
    let mut gx = 0.0;
    let mut gy = 0.0;
    for (mode, c) in combo.entries() {
        match mode.family() {
            ModeFamily::HermiteGaussian => {
                let a2 = 2f64.powi(1 - mode.l as i32 - mode.m as i32)
                    / (PI * factorial(mode.l) * factorial(mode.m));
                let s = std::f64::consts::SQRT_2 / w;
                let u = s * x;
                let v = s * y;
                let hu = hermite_unchecked(mode.l, u);
                let hv = hermite_unchecked(mode.m, v);
                let hu1 = if mode.l > 0 {
                    hermite_unchecked(mode.l - 1, u)
                } else {
                    0.0
                };
                let hv1 = if mode.m > 0 {
                    hermite_unchecked(mode.m - 1, v)
                } else {
                    0.0
                };
                let e = (-u * u - v * v).exp();
                let base = a2 / (w * w) * e;
                // d/du [H_l^2 e^{-u^2}] = 2 H_l (2 l H_{l-1} - u H_l) e^{-u^2}
                gx += c * base * hv * hv * 2.0 * hu * (2.0 * mode.l as f64 * hu1 - u * hu) * s;
                gy += c * base * hu * hu * 2.0 * hv * (2.0 * mode.m as f64 * hv1 - v * hv) * s;
            }
            ModeFamily::LaguerreGaussian => {
                let a2 = 2.0 * factorial(mode.m) / (PI * factorial(mode.m + mode.l));
                let r2 = x * x + y * y;
                let arg = 2.0 * r2 / (w * w);
                let lag = laguerre_unchecked(mode.l, mode.m, arg);
                // d/dx L_m^l(x) = -L_{m-1}^{l+1}(x)
                let dlag = if mode.m > 0 {
                    -laguerre_unchecked(mode.l + 1, mode.m - 1, arg)
                } else {
                    0.0
                };
                let l = mode.l as f64;
                // d/darg [arg^l L^2 e^{-arg}]; the arg^(l-1) factor cancels
                // against the bracket for l = 0
                let dval = if mode.l == 0 {
                    (2.0 * lag * dlag - lag * lag) * (-arg).exp()
                } else {
                    arg.powi(mode.l as i32 - 1)
                        * ((l - arg) * lag * lag + 2.0 * arg * lag * dlag)
                        * (-arg).exp()
                };
                let scale = c * a2 / (w * w) * dval * 4.0 / (w * w);
                gx += scale * x;
                gy += scale * y;
            }
        }
    }
    (gx, gy)
}

/// Outer search radius for scans over a combination profile.
fn scan_window(combo: &ModeCombination, beam: &BeamParams, z: f64) -> f64 {
    let max_pmn = combo
        .entries()
        .iter()
        .map(|(m, _)| m.principal_mode_number())
        .max()
        .unwrap_or(1);
    // 4x the spot radius of the widest constituent mode, conservatively
    // bounded by the sqrt(PMN) growth of mode extent
    4.0 * beam.spot_radius(z) * (max_pmn as f64).sqrt()
}

/// Finds the global irradiance maximum in the plane z by dense scan plus
/// golden-section refinement. Laguerre combinations reduce to a radial
/// search; Hermite combinations scan the 2D window and refine by coordinate
/// descent. Always returns a candidate.
pub fn peak_irradiance_location(
    combo: &ModeCombination,
    beam: &BeamParams,
    z: f64,
) -> PeakLocation {
    let w = beam.spot_radius(z);
    let window = scan_window(combo, beam, z);
    let tol = 1e-8 * w;
    let (px, py) = match combo.family() {
        ModeFamily::LaguerreGaussian => {
            let profile = |r: f64| combination_irradiance(combo, beam, r, 0.0, z);
            let n = 4000;
            let mut best_i = 0;
            let mut best_v = f64::NEG_INFINITY;
            for i in 0..=n {
                let r = window * i as f64 / n as f64;
                let v = profile(r);
                if v > best_v {
                    best_v = v;
                    best_i = i;
                }
            }
            let step = window / n as f64;
            let lo = (best_i as f64 - 1.0).max(0.0) * step;
            let hi = ((best_i + 1) as f64).min(n as f64) * step;
            let r = numerics::golden_section_max(profile, lo, hi, tol);
            // an axial peak refines to a tiny positive r; snap it back
            if r < step { (pick_axis_or_zero(profile, r), 0.0) } else { (r, 0.0) }
        }
        ModeFamily::HermiteGaussian => {
            let n = 160;
            let mut best = (0.0, 0.0);
            let mut best_v = f64::NEG_INFINITY;
            for i in 0..=n {
                let x = -window + 2.0 * window * i as f64 / n as f64;
                for j in 0..=n {
                    let y = -window + 2.0 * window * j as f64 / n as f64;
                    let v = combination_irradiance(combo, beam, x, y, z);
                    if v > best_v {
                        best_v = v;
                        best = (x, y);
                    }
                }
            }
            let cell = 2.0 * window / n as f64;
            let (mut x, mut y) = best;
            for _ in 0..6 {
                x = numerics::golden_section_max(
                    |xx| combination_irradiance(combo, beam, xx, y, z),
                    x - cell,
                    x + cell,
                    tol,
                );
                y = numerics::golden_section_max(
                    |yy| combination_irradiance(combo, beam, x, yy, z),
                    y - cell,
                    y + cell,
                    tol,
                );
            }
            // snap near-axis coordinates produced by refining a symmetric peak
            if x.abs() < cell * 1e-4 { x = 0.0; }
            if y.abs() < cell * 1e-4 { y = 0.0; }
            (x, y)
        }
    };
    let (gx, gy) = irradiance_gradient(combo, beam, px, py, z);
    PeakLocation {
        x: px,
        y: py,
        stationarity_residual: gx.abs().max(gy.abs()),
    }
}

fn pick_axis_or_zero(profile: impl Fn(f64) -> f64, r: f64) -> f64 {
    if profile(0.0) >= profile(r) { 0.0 } else { r }
}

/// Largest gradient magnitude over the scan window; normalization scale for
/// stationarity residuals.
pub fn max_gradient_magnitude(combo: &ModeCombination, beam: &BeamParams, z: f64) -> f64 {
    let window = scan_window(combo, beam, z);
    let n = 200;
    let mut best: f64 = 0.0;
    for i in 0..=n {
        let x = -window + 2.0 * window * i as f64 / n as f64;
        for j in 0..=n {
            let y = -window + 2.0 * window * j as f64 / n as f64;
            let (gx, gy) = irradiance_gradient(combo, beam, x, y, z);
            best = best.max(gx.abs().max(gy.abs()));
        }
    }
    best
}

/// Power of a mode combination passing a disk of radius `r_p` centered at
/// `center` in the plane z, by adaptive quadrature to 1e-8 relative.
pub fn power_through_disk(
    combo: &ModeCombination,
    beam: &BeamParams,
    p_t: f64,
    center: (f64, f64),
    r_p: f64,
    z: f64,
) -> Result<f64> {
    if !(r_p > 0.0) {
        return Err(Error::Parameter(format!(
            "aperture radius must be positive, got {r_p}"
        )));
    }
    let spec = QuadratureSpec::default();
    let (fraction, _err) = numerics::integrate_disk(
        |x, y| combination_irradiance(combo, beam, x, y, z),
        center,
        r_p,
        &spec,
    )?;
    Ok(p_t * fraction)
}

/// Azimuthal maximum of the irradiance at radius r; equals the radial
/// profile for Laguerre modes and extends the spot-radius definition to
/// Hermite modes.
fn radial_envelope(combo: &ModeCombination, beam: &BeamParams, r: f64, z: f64) -> f64 {
    match combo.family() {
        ModeFamily::LaguerreGaussian => combination_irradiance(combo, beam, r, 0.0, z),
        ModeFamily::HermiteGaussian => {
            let n = 64;
            let mut best = f64::NEG_INFINITY;
            for k in 0..n {
                let phi = PI * k as f64 / n as f64; // half turn suffices by symmetry
                let v = combination_irradiance(combo, beam, r * phi.cos(), r * phi.sin(), z);
                if v > best {
                    best = v;
                }
            }
            best
        }
    }
}

/// Spot radius of an arbitrary combination profile: the radius beyond the
/// outermost local maximum at which the irradiance falls to 1/e^2 of the
/// global maximum.
pub fn combination_spot_radius(combo: &ModeCombination, beam: &BeamParams, z: f64) -> f64 {
    let window = scan_window(combo, beam, z).max(3.0 * beam.spot_radius(z));
    let n = 6000;
    let step = window / n as f64;
    let mut values = Vec::with_capacity(n + 1);
    for i in 0..=n {
        values.push(radial_envelope(combo, beam, i as f64 * step, z));
    }
    let global_max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let target = global_max * (-2.0f64).exp();
    // last sample above the threshold marks the outer crossing
    let mut last_above = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > target {
            last_above = i;
        }
    }
    let lo = last_above as f64 * step;
    let hi = ((last_above + 1) as f64).min(n as f64) * step;
    numerics::find_root_bracketed(
        |r| radial_envelope(combo, beam, r, z) - target,
        lo,
        hi,
        1e-7 * beam.spot_radius(z),
    )
    .unwrap_or(lo)
}

/// Spot radius of a single mode (1/e^2-of-maximum measure).
pub fn mode_spot_radius(mode: &ModeIndex, beam: &BeamParams, z: f64) -> f64 {
    combination_spot_radius(&ModeCombination::single(*mode), beam, z)
}

/// Ratio of the combination's far-field divergence to the paraxial
/// divergence of the fundamental mode, measured from the 1/e^2 spot radius
/// at z = 100 z0.
pub fn combination_divergence_ratio(combo: &ModeCombination, beam: &BeamParams) -> f64 {
    let z = 100.0 * beam.rayleigh_range();
    let spot = combination_spot_radius(combo, beam, z);
    (spot / z) / beam.divergence_angle_paraxial()
}

/// The fictitious ideal Gaussian sharing the real beam's far-field
/// divergence, used by the beam-quality safety pipeline.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EmbeddedGaussian {
    /// Divergence of the embedded beam (equals the real beam's).
    pub theta_em: f64,
    /// Waist of the embedded beam: lambda / (pi theta_em).
    pub w0_em: f64,
    /// Beam propagation factor pi w0_real theta_R / lambda of the real beam.
    pub m_squared: f64,
}

/// Builds the embedded Gaussian for a real beam of far-field divergence
/// `theta_r` and waist `real_waist`.
pub fn embedded_gaussian(theta_r: f64, wavelength: f64, real_waist: f64) -> Result<EmbeddedGaussian> {
    if !(theta_r > 0.0) {
        return Err(Error::Parameter(format!(
            "divergence must be positive, got {theta_r}"
        )));
    }
    let w0_em = wavelength / (PI * theta_r);
    Ok(EmbeddedGaussian {
        theta_em: theta_r,
        w0_em,
        m_squared: m_squared(real_waist, theta_r, wavelength),
    })
}

/// Beam propagation factor pi w0 theta / lambda.
pub fn m_squared(waist_radius: f64, divergence: f64, wavelength: f64) -> f64 {
    PI * waist_radius * divergence / wavelength
}

/// Named mode-combination presets for multimode sources built from the first
/// six Laguerre-Gaussian modes; degenerate orders share their group's power.
pub mod presets {
    use super::{ModeCombination, ModeIndex};

    /// The six constituent modes, in preset row order:
    /// (0,0), (1,0), (2,0), (0,1), (3,0), (1,1).
    pub const MODE_ORDERS: [(u32, u32); 6] = [(0, 0), (1, 0), (2, 0), (0, 1), (3, 0), (1, 1)];

    const COEFFICIENTS: [[f64; 6]; 7] = [
        [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.5, 0.5, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.5, 0.25, 0.25, 0.0, 0.0],
        [0.0, 0.0, 0.25, 0.25, 0.25, 0.25],
        [0.125, 0.75, 0.0625, 0.0625, 0.0, 0.0],
        [0.0, 0.125, 0.375, 0.375, 0.0625, 0.0625],
        [0.06, 0.44, 0.22, 0.22, 0.03, 0.03],
    ];

    /// Preset names as accepted by configuration files.
    pub fn names() -> [&'static str; 7] {
        [
            "LG-Comb 1", "LG-Comb 2", "LG-Comb 3", "LG-Comb 4", "LG-Comb 5", "LG-Comb 6",
            "LG-Comb 7",
        ]
    }

    /// Preset k in 1..=7.
    pub fn lg_comb(k: usize) -> ModeCombination {
        assert!((1..=7).contains(&k), "preset index out of range");
        let row = &COEFFICIENTS[k - 1];
        let entries = MODE_ORDERS
            .iter()
            .zip(row)
            .filter(|(_, c)| **c > 0.0)
            .map(|((l, m), c)| (ModeIndex::laguerre(*l, *m).unwrap(), *c))
            .collect();
        ModeCombination::new(entries).expect("presets are valid by construction")
    }

    /// Looks up a preset by its configuration name.
    pub fn by_name(name: &str) -> Option<ModeCombination> {
        names()
            .iter()
            .position(|n| n.eq_ignore_ascii_case(name))
            .map(|i| lg_comb(i + 1))
    }
}
