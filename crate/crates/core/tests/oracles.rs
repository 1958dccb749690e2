//! Independent numerical oracles: seeded Monte-Carlo integration against the
//! adaptive quadrature, bisection inversion of the d86 distance, and dense
//! scans validating the argmax machinery.

use std::f64::consts::PI;

use beamsafe_core::gaussian::BeamParams;
use beamsafe_core::modes::{self, presets, ModeCombination, ModeIndex};
use beamsafe_core::numerics::{argmax_scan, find_root_bracketed};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn beam() -> BeamParams {
    BeamParams::new(850e-9, 5e-6).unwrap()
}

/// Monte-Carlo estimate of the combination power through a disk: uniform
/// samples over the disk, mean times area, with the standard error.
fn mc_disk_power(
    combo: &ModeCombination,
    beam: &BeamParams,
    center: (f64, f64),
    r_p: f64,
    z: f64,
    samples: usize,
    seed: u64,
) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let area = PI * r_p * r_p;
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let u: f64 = rng.gen();
        let v: f64 = rng.gen();
        let r = r_p * u.sqrt();
        let phi = 2.0 * PI * v;
        let x = center.0 + r * phi.cos();
        let y = center.1 + r * phi.sin();
        let f = modes::combination_irradiance(combo, beam, x, y, z);
        sum += f;
        sum_sq += f * f;
    }
    let mean = sum / samples as f64;
    let var = (sum_sq / samples as f64 - mean * mean).max(0.0);
    let sigma = (var / samples as f64).sqrt() * area;
    (mean * area, sigma)
}

fn random_combination(rng: &mut ChaCha8Rng) -> ModeCombination {
    let orders = presets::MODE_ORDERS;
    let count = rng.gen_range(2..=4);
    let mut picks: Vec<usize> = (0..orders.len()).collect();
    picks.shuffle(rng);
    picks.truncate(count);
    let weights: Vec<f64> = (0..count).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let entries = picks
        .iter()
        .zip(&weights)
        .map(|(&i, w)| {
            let (l, m) = orders[i];
            (ModeIndex::laguerre(l, m).unwrap(), w / total)
        })
        .collect();
    ModeCombination::new(entries).unwrap()
}

#[test]
fn quadrature_matches_monte_carlo_on_random_combinations() {
    let b = beam();
    let z = 0.1;
    let r_p = 3.5e-3;
    let mut rng = ChaCha8Rng::seed_from_u64(20240211);
    for case in 0..10 {
        let combo = random_combination(&mut rng);
        let peak = modes::peak_irradiance_location(&combo, &b, z);
        let quad = modes::power_through_disk(&combo, &b, 1.0, (peak.x, peak.y), r_p, z).unwrap();
        let (mc, sigma) = mc_disk_power(&combo, &b, (peak.x, peak.y), r_p, z, 1_000_000, 7 + case);
        assert!(
            (quad - mc).abs() <= 3.0 * sigma,
            "case {case}: quad {quad} vs mc {mc} +- {sigma}"
        );
    }
}

#[test]
fn wide_aperture_captures_everything() {
    // an aperture of five spot radii swallows effectively all the power; the
    // Monte-Carlo estimate agrees within its own statistics
    let b = beam();
    let z = 0.1;
    let combo = presets::lg_comb(4);
    let r_wide = 5.0 * modes::combination_spot_radius(&combo, &b, z);
    let quad = modes::power_through_disk(&combo, &b, 1.0, (0.0, 0.0), r_wide, z).unwrap();
    assert!(quad >= 0.999);
    assert!(quad <= 1.0 + 1e-8);
    let (mc, sigma) = mc_disk_power(&combo, &b, (0.0, 0.0), r_wide, z, 10_000_000, 99);
    assert!((quad - mc).abs() <= 3.0 * sigma + 1e-9);
}

#[test]
fn d86_distance_agrees_with_bisection_on_the_capture_curve() {
    for (lam, expect_mm) in [(850e-9, 65.235), (950e-9, 58.368)] {
        let b = BeamParams::new(lam, 5e-6).unwrap();
        let r_p = 3.5e-3;
        let closed = b.d86_distance(r_p);
        assert!((closed - expect_mm * 1e-3).abs() < 2e-5, "{closed}");
        // independent route: solve the full capture expression for z
        let root = find_root_bracketed(
            |z| b.power_through_centered_aperture(1.0, r_p, z) - 0.86,
            1e-3,
            1.0,
            1e-12,
        )
        .unwrap();
        // the closed form uses the far-field spot radius; the two agree to
        // the (z0/d86)^2 scale
        assert!((closed - root).abs() / root < 2e-6);
    }
}

#[test]
fn spot_radius_search_agrees_with_direct_root() {
    // ring mode (1,0): profile x e^{-x} peaks at x = 1 and crosses 1/e^2 of
    // the peak where x e^{-x} = e^{-3}
    let b = beam();
    let z = 0.05;
    let w = b.spot_radius(z);
    let mode = ModeIndex::laguerre(1, 0).unwrap();
    let s = modes::mode_spot_radius(&mode, &b, z);
    let x_cross = find_root_bracketed(|x| x * (-x).exp() - (-3.0f64).exp(), 1.0, 20.0, 1e-13).unwrap();
    let expect = w * (x_cross / 2.0).sqrt();
    assert!((s - expect).abs() / expect < 1e-5);
    assert!((s - 1.500 * w).abs() < 1e-3 * w);
}

#[test]
fn argmax_scan_matches_dense_linear_scan_on_hazard_ratio() {
    // a ratio profile with an interior maximum: irradiance of a beam whose
    // waist sits downstream, against a constant limit
    let b = BeamParams::new(850e-9, 5e-6).unwrap();
    let h = |z: f64| b.irradiance(1.0, 0.0, z - 0.35);
    let coarse = argmax_scan(h, 0.1, 10.0, 200, 1e-7);
    let n = 1_000_000usize;
    let mut best = (0.0, f64::NEG_INFINITY);
    for i in 0..=n {
        let z = 0.1 + (10.0 - 0.1) * i as f64 / n as f64;
        let v = h(z);
        if v > best.1 {
            best = (z, v);
        }
    }
    assert!((coarse - best.0).abs() < 1e-4);
    assert!((coarse - 0.35).abs() < 1e-4);
}
