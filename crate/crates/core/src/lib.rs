//! Orthogonal polynomials on the unit circle driven by their reflection coefficients.
//!
//! Everything numerical is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! at the bottom of this file fix `f64` for everyday use.
//!
//! ```
//! use opuc::{evaluate, Complex, Sequence};
//!
//! let seq = Sequence::constant(Complex::new(0.5, 0.0)).unwrap();
//! let s = evaluate(&seq, 10, Complex::new(0.0, 1.0)).unwrap();
//! assert!(s.phi.norm().is_finite());
//! ```

pub mod domain;
pub mod eigen;
pub mod error;
pub mod examples;
pub mod geronimus;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod perturbation;
pub mod quadrature;
pub mod scalar;
pub mod spectral;
pub mod szego;

pub use num_complex::Complex;

pub use domain::{
    arc_from_a, coeff_at, rotate_sequence, ArcSpec, ReflectionSequence, SignPattern,
    UnitCirclePoint, VerblunskyCoeff,
};
pub use error::{OpucError, Result};
pub use geronimus::{closed_eval, envelope_check, mu_a_spec, v_alpha, EnvelopeReport, VAlpha};
pub use matrix::Transfer2x2;
pub use parse::parse_sequence;
pub use perturbation::{classify_conditions, comparison_identity, ConditionReport, Verdict};
pub use scalar::Scalar;
pub use spectral::{hessenberg, krein_check, support_report, truncation_zeros, SupportReport};
pub use szego::{evaluate, evaluate_path, kappa, SzegoState};

pub type C64 = Complex<f64>;
pub type Coeff = VerblunskyCoeff<f64>;
pub type Sequence = ReflectionSequence<f64>;
pub type State = SzegoState<f64>;
pub type Arc64 = ArcSpec<f64>;
pub type Matrix = Transfer2x2<f64>;
