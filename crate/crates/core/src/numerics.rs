//! Shared numerical kernels: Gauss-Legendre quadrature over disks,
//! bracketed root finding and log-grid argmax with golden-section refinement.
//!
//! All routines are deterministic: node tables are computed from fixed
//! Newton iterations and sums are accumulated in a fixed order (radial
//! nodes innermost, then angular nodes, then cells in index order).

use crate::error::{Error, Result};

/// Controls the adaptive disk quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureSpec {
    /// Stop once two successive dyadic refinements agree to this relative tolerance.
    pub relative_tolerance: f64,
    /// Maximum number of dyadic refinement levels before giving up.
    pub max_subdivisions: usize,
    /// Gauss-Legendre nodes per axis on each cell.
    pub base_order: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            relative_tolerance: 1e-8,
            max_subdivisions: 20,
            base_order: 16,
        }
    }
}

/// Gauss-Legendre nodes and weights on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; nodes are symmetric and the
/// iteration count is fixed by a convergence threshold well below f64 eps
/// accumulation, so results are bit-stable for a given `n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "at least two nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative by the three-term recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Integrates `f(x, y)` over a disk of the given radius about `center`.
///
/// Tensor-product Gauss-Legendre in polar coordinates about the disk center,
/// refined dyadically (each level splits every cell in radius and angle)
/// until two successive levels agree to `spec.relative_tolerance`. Returns
/// the integral and the last refinement delta as an error estimate.
pub fn integrate_disk<F>(
    f: F,
    center: (f64, f64),
    radius: f64,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)>
where
    F: Fn(f64, f64) -> f64,
{
    if radius <= 0.0 {
        return Err(Error::Parameter(format!(
            "disk radius must be positive, got {radius}"
        )));
    }
    if spec.relative_tolerance <= 0.0 || spec.base_order < 2 {
        return Err(Error::Parameter(
            "quadrature spec requires positive tolerance and order >= 2".into(),
        ));
    }
    let (nodes, weights) = gauss_legendre(spec.base_order);
    let two_pi = 2.0 * std::f64::consts::PI;

    let eval_level = |level: u32| -> f64 {
        let cells = 1usize << level;
        let dr = radius / cells as f64;
        let dphi = two_pi / cells as f64;
        let mut total = 0.0;
        for cphi in 0..cells {
            let phi_lo = cphi as f64 * dphi;
            for cr in 0..cells {
                let r_lo = cr as f64 * dr;
                let mut cell = 0.0;
                for (pn, pw) in nodes.iter().zip(&weights) {
                    let phi = phi_lo + 0.5 * dphi * (pn + 1.0);
                    let (sin_phi, cos_phi) = phi.sin_cos();
                    let mut line = 0.0;
                    for (rn, rw) in nodes.iter().zip(&weights) {
                        let r = r_lo + 0.5 * dr * (rn + 1.0);
                        let x = center.0 + r * cos_phi;
                        let y = center.1 + r * sin_phi;
                        line += rw * f(x, y) * r;
                    }
                    cell += pw * line;
                }
                total += cell * 0.25 * dr * dphi;
            }
        }
        total
    };

    // Dyadic refinement doubles cell count per axis each level; cap the level
    // so a pathological integrand cannot demand unbounded work.
    let hard_cap = 8u32;
    let max_level = (spec.max_subdivisions as u32).min(hard_cap);
    let mut prev = eval_level(0);
    let mut delta = f64::INFINITY;
    for level in 1..=max_level {
        let cur = eval_level(level);
        delta = (cur - prev).abs();
        let scale = cur.abs().max(f64::MIN_POSITIVE);
        if delta <= spec.relative_tolerance * scale {
            return Ok((cur, delta));
        }
        prev = cur;
    }
    Err(Error::Numerics(format!(
        "disk quadrature did not converge: partial value {prev:.12e}, residual estimate {delta:.3e}"
    )))
}

/// Bisection on a bracketing interval: requires `g(lo)` and `g(hi)` of
/// opposite sign, refines until `hi - lo < tol`.
pub fn find_root_bracketed<G>(g: G, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    G: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = (lo, hi);
    let mut glo = g(lo);
    let ghi = g(hi);
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo * ghi > 0.0 {
        return Err(Error::Numerics(format!(
            "no sign change on bracket [{lo}, {hi}]: g(lo)={glo:.3e}, g(hi)={ghi:.3e}"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break; // interval at floating-point resolution
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Ok(mid);
        }
        if glo * gm < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            glo = gm;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for the maximum of a unimodal function on [a, b].
pub fn golden_section_max<H>(h: H, a: f64, b: f64, tol: f64) -> f64
where
    H: Fn(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut hc = h(c);
    let mut hd = h(d);
    while (b - a).abs() > tol {
        if hc >= hd {
            b = d;
            d = c;
            hd = hc;
            c = b - INV_PHI * (b - a);
            hc = h(c);
        } else {
            a = c;
            c = d;
            hc = hd;
            d = a + INV_PHI * (b - a);
            hd = h(d);
        }
    }
    0.5 * (a + b)
}

/// Argmax of `h` on [lo, hi] by logarithmically spaced scan followed by
/// golden-section refinement around the best sample.
pub fn argmax_scan<H>(h: H, lo: f64, hi: f64, points_per_decade: usize, refine_tol: f64) -> f64
where
    H: Fn(f64) -> f64,
{
    assert!(lo > 0.0 && hi > lo, "argmax_scan needs 0 < lo < hi");
    let decades = (hi / lo).log10();
    let n = ((decades * points_per_decade as f64).ceil() as usize).max(2);
    let log_lo = lo.ln();
    let log_hi = hi.ln();
    let mut best_i = 0;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..=n {
        let z = (log_lo + (log_hi - log_lo) * i as f64 / n as f64).exp();
        let v = h(z);
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let at = |i: i64| (log_lo + (log_hi - log_lo) * i as f64 / n as f64).exp();
    let a = at((best_i as i64 - 1).max(0));
    let b = at(((best_i + 1) as i64).min(n as i64));
    golden_section_max(h, a, b, refine_tol)
}
