//! Laser-safety computation engine.
//!
//! Models the propagation of single-mode, multimode, lensed, arrayed and
//! diffused laser sources and evaluates the maximum permissible transmit
//! power against tabulated eye- and skin-exposure limits for the near
//! infrared. All quantities are SI (meters, seconds, watts, radians); unit
//! conversion belongs to the application boundary.
//!
//! The main entry points are the pipelines in [`safety`]:
//!
//! ```
//! use beamsafe_core::{BeamParams, ExposureContext, safety};
//!
//! let beam = BeamParams::new(850e-9, 5e-6).unwrap();
//! let ctx = ExposureContext::with_default_pupil(850e-9, 100.0).unwrap();
//! let result = safety::ptmax_single_mode(&beam, &ctx).unwrap();
//! assert!((result.p_t_max - 1.35e-3).abs() < 0.01e-3);
//! ```

pub mod elements;
pub mod error;
pub mod gaussian;
pub mod limits;
pub mod modes;
pub mod numerics;
pub mod safety;

pub use elements::{DiffuserKind, DiffuserSpec, RayMatrix, ThickLensSpec, ThinLensSpec};
pub use error::{Error, Result};
pub use gaussian::{BeamParams, ComplexBeamParameter, WavefrontCurvature};
pub use limits::{ExposureContext, MpeResult, SourceClass, SourceExtent};
pub use modes::{EmbeddedGaussian, ModeCombination, ModeFamily, ModeIndex};
pub use safety::{ArraySpec, Method, SafetyResult, ShieldContext};
