//! Reflection-coefficient sequences, arcs of the unit circle and points on it.

use std::sync::Arc;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{OpucError, Result};
use crate::examples::{arc_reflection_exact, ArcMeasureParams};
use crate::scalar::{angle_0_2pi, cis, lit, pow_polar, powu, real, wrap_0_2pi, Scalar};

/// Tolerance on `| |τ| - 1 |` when accepting a rotation.
const ROTATION_TOL: f64 = 1e-12;

/// A reflection coefficient Φ_n(0), strictly inside the unit disk.
///
/// Alongside the value it stores `ln(1 - |Φ|²)`. For sequences that approach
/// the unit circle geometrically (the Zhedanov sequence) the value itself
/// rounds onto the circle long before the defect underflows, so recurrences
/// read the defect from here instead of recomputing it from the value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerblunskyCoeff<T: Scalar> {
    value: Complex<T>,
    log_defect: T,
}

impl<T: Scalar> VerblunskyCoeff<T> {
    pub fn new(value: Complex<T>) -> Result<Self> {
        let r = value.norm();
        if !(r < T::one()) {
            return Err(OpucError::InvalidCoefficient { modulus: r.as_f64() });
        }
        let log_defect = ((T::one() - r) * (T::one() + r)).ln();
        Ok(Self { value, log_defect })
    }

    /// Builds a coefficient from its value and an independently known `ln(1 - |Φ|²)`.
    pub fn with_log_defect(value: Complex<T>, log_defect: T) -> Result<Self> {
        if !log_defect.is_finite() || log_defect > T::zero() {
            return Err(OpucError::InvalidCoefficient {
                modulus: value.norm().as_f64(),
            });
        }
        Ok(Self { value, log_defect })
    }

    pub fn zero() -> Self {
        Self {
            value: Complex::new(T::zero(), T::zero()),
            log_defect: T::zero(),
        }
    }

    #[inline]
    pub fn value(&self) -> Complex<T> {
        self.value
    }

    /// `1 - |Φ|²`.
    #[inline]
    pub fn defect(&self) -> T {
        self.log_defect.exp()
    }

    #[inline]
    pub fn log_defect(&self) -> T {
        self.log_defect
    }

    /// `√(1 - |Φ|²)`.
    #[inline]
    pub fn rho(&self) -> T {
        (self.log_defect * lit(0.5)).exp()
    }

    /// `1 - |Φ|² > 0`, judged on the stored defect (which stays accurate after `|Φ|` rounds to 1).
    pub fn is_inside(&self) -> bool {
        self.log_defect.is_finite() && self.log_defect <= T::zero()
    }

    fn negated(self) -> Self {
        Self {
            value: -self.value,
            log_defect: self.log_defect,
        }
    }

    fn rotated(self, factor: Complex<T>) -> Self {
        Self {
            value: self.value * factor,
            log_defect: self.log_defect,
        }
    }
}

/// Sign pattern `s_k` of a perturbed sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignPattern {
    /// `s_k = 1`
    Plain,
    /// `s_k = (-1)^k`
    Alt,
}

#[derive(Clone, Debug)]
enum SequenceKind<T: Scalar> {
    Constant(Complex<T>),
    Explicit(Arc<Vec<VerblunskyCoeff<T>>>),
    Rotated(Complex<T>, Box<ReflectionSequence<T>>),
    Negated(Box<ReflectionSequence<T>>),
    Zhedanov(T),
    JacobiArc(ArcMeasureParams<T>),
    Perturbed {
        a: Complex<T>,
        amplitude: T,
        decay: T,
        sign: SignPattern,
    },
}

/// A rule `n ↦ Φ_n(0)`, `n ≥ 1`.
///
/// Sequences are evaluation rules, never materialized, so any index can be
/// requested in O(1) (O(n) for the Jacobi-arc kind). `Explicit` wraps a finite
/// list and fails past its end.
#[derive(Clone, Debug)]
pub struct ReflectionSequence<T: Scalar> {
    kind: SequenceKind<T>,
}

impl<T: Scalar> ReflectionSequence<T> {
    /// `Φ_n(0) = a` for all `n`, `0 < |a| < 1`.
    pub fn constant(a: Complex<T>) -> Result<Self> {
        let r = a.norm();
        if !(r > T::zero() && r < T::one()) {
            return Err(OpucError::OutOfRange(format!(
                "constant sequence needs 0 < |a| < 1, got |a| = {}",
                r
            )));
        }
        Ok(Self {
            kind: SequenceKind::Constant(a),
        })
    }

    /// The sequence `Φ_n(0) = 0`; its polynomials are `z^n`.
    pub fn zero() -> Self {
        Self {
            kind: SequenceKind::Constant(Complex::new(T::zero(), T::zero())),
        }
    }

    /// Finite list `Φ_1(0), …, Φ_L(0)`.
    pub fn explicit(values: &[Complex<T>]) -> Result<Self> {
        let coeffs = values
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                VerblunskyCoeff::new(v).map_err(|_| OpucError::InvalidSequence {
                    index: i as u64 + 1,
                    modulus: v.norm().as_f64(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            kind: SequenceKind::Explicit(Arc::new(coeffs)),
        })
    }

    pub fn from_coeffs(coeffs: Vec<VerblunskyCoeff<T>>) -> Self {
        Self {
            kind: SequenceKind::Explicit(Arc::new(coeffs)),
        }
    }

    /// `Φ_n(0) = 2q^n - 1`, `0 < q < 1`.
    pub fn zhedanov(q: T) -> Result<Self> {
        if !(q > T::zero() && q < T::one()) {
            return Err(OpucError::OutOfRange(format!(
                "zhedanov sequence needs 0 < q < 1, got {}",
                q
            )));
        }
        Ok(Self {
            kind: SequenceKind::Zhedanov(q),
        })
    }

    /// Reflection coefficients of the Jacobi-type arc weight, computed exactly.
    pub fn jacobi_arc(alpha: T, gamma: T, delta: T) -> Result<Self> {
        let params = ArcMeasureParams::new(alpha, gamma, delta)?;
        Ok(Self {
            kind: SequenceKind::JacobiArc(params),
        })
    }

    /// `Φ_k(0) = a + amplitude · s_k · (k+1)^{-decay}`.
    ///
    /// The shift `k+1` keeps the first coefficients inside the disk for the
    /// usual `amplitude = 1, |a| = 1/2` experiments without changing the tail.
    pub fn perturbed(a: Complex<T>, amplitude: T, decay: T, sign: SignPattern) -> Result<Self> {
        if !(a.norm() < T::one()) {
            return Err(OpucError::OutOfRange(format!(
                "perturbed sequence needs |a| < 1, got {}",
                a.norm()
            )));
        }
        if !(amplitude >= T::zero()) || !(decay > T::zero()) {
            return Err(OpucError::OutOfRange(
                "perturbed sequence needs amplitude >= 0 and decay exponent > 0".into(),
            ));
        }
        let seq = Self {
            kind: SequenceKind::Perturbed {
                a,
                amplitude,
                decay,
                sign,
            },
        };
        // |a + t| is convex in t, so the extremes over all k sit at k = 1, k = 2 or the limit a.
        for k in 1..=2u64 {
            seq.coeff_at(k)?;
        }
        Ok(seq)
    }

    /// Rotated sequence `τ^n Φ_n(0)`; corresponds to rotating the measure by `τ`.
    pub fn rotate(&self, tau: Complex<T>) -> Result<Self> {
        check_unit(tau)?;
        Ok(Self {
            kind: SequenceKind::Rotated(tau, Box::new(self.clone())),
        })
    }

    /// Sequence `-Φ_n(0)`, which generates the second-kind polynomials.
    pub fn negated(&self) -> Self {
        Self {
            kind: SequenceKind::Negated(Box::new(self.clone())),
        }
    }

    /// Length for explicit lists, `None` for infinite rules.
    pub fn len_hint(&self) -> Option<usize> {
        match &self.kind {
            SequenceKind::Explicit(v) => Some(v.len()),
            SequenceKind::Rotated(_, b) | SequenceKind::Negated(b) => b.len_hint(),
            _ => None,
        }
    }

    /// `Φ_n(0)` for `n ≥ 1`.
    pub fn coeff_at(&self, n: u64) -> Result<VerblunskyCoeff<T>> {
        if n == 0 {
            return Err(OpucError::OutOfRange(
                "reflection coefficients are indexed from 1".into(),
            ));
        }
        let invalid = |v: Complex<T>| OpucError::InvalidSequence {
            index: n,
            modulus: v.norm().as_f64(),
        };
        match &self.kind {
            SequenceKind::Constant(a) => VerblunskyCoeff::new(*a).map_err(|_| invalid(*a)),
            SequenceKind::Explicit(list) => {
                list.get((n - 1) as usize)
                    .copied()
                    .ok_or(OpucError::IndexOutOfRange {
                        index: n,
                        len: list.len(),
                    })
            }
            SequenceKind::Rotated(tau, base) => {
                Ok(base.coeff_at(n)?.rotated(pow_polar(*tau, n)))
            }
            SequenceKind::Negated(base) => Ok(base.coeff_at(n)?.negated()),
            SequenceKind::Zhedanov(q) => {
                let qn = powu(*q, n);
                let value = real(lit::<T>(2.0) * qn - T::one());
                // 1 - (2q^n - 1)^2 = 4 q^n (1 - q^n)
                let log_defect = lit::<T>(4.0).ln() + T::from_count(n) * q.ln() + (-qn).ln_1p();
                VerblunskyCoeff::with_log_defect(value, log_defect).map_err(|_| invalid(value))
            }
            SequenceKind::JacobiArc(p) => {
                let v = real(arc_reflection_exact(p, n)?);
                VerblunskyCoeff::new(v).map_err(|_| invalid(v))
            }
            SequenceKind::Perturbed {
                a,
                amplitude,
                decay,
                sign,
            } => {
                let s = match sign {
                    SignPattern::Plain => T::one(),
                    SignPattern::Alt if n % 2 == 1 => -T::one(),
                    SignPattern::Alt => T::one(),
                };
                let bump = *amplitude * s * (T::from_count(n) + T::one()).powf(-*decay);
                let v = *a + real(bump);
                VerblunskyCoeff::new(v).map_err(|_| invalid(v))
            }
        }
    }

    /// `Φ_1(0), …, Φ_n(0)`.
    pub fn coeffs(&self, n: usize) -> Result<Vec<VerblunskyCoeff<T>>> {
        (1..=n as u64).map(|k| self.coeff_at(k)).collect()
    }

    /// Values only, `Φ_1(0), …, Φ_n(0)`.
    pub fn values(&self, n: usize) -> Result<Vec<Complex<T>>> {
        Ok(self.coeffs(n)?.into_iter().map(|c| c.value()).collect())
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match &self.kind {
            SequenceKind::Constant(a) => format!("const({a})"),
            SequenceKind::Explicit(v) => format!("explicit(len={})", v.len()),
            SequenceKind::Rotated(t, b) => format!("rotated({t}, {})", b.describe()),
            SequenceKind::Negated(b) => format!("negated({})", b.describe()),
            SequenceKind::Zhedanov(q) => format!("zhedanov(q={q})"),
            SequenceKind::JacobiArc(p) => format!(
                "jacobi-arc(alpha={}, gamma={}, delta={})",
                p.alpha, p.gamma, p.delta
            ),
            SequenceKind::Perturbed {
                a,
                amplitude,
                decay,
                sign,
            } => format!("perturbed(a={a}, amp={amplitude}, p={decay}, sign={sign:?})"),
        }
    }
}

fn check_unit<T: Scalar>(tau: Complex<T>) -> Result<()> {
    let m = tau.norm();
    if (m - T::one()).abs() > lit(ROTATION_TOL) {
        return Err(OpucError::InvalidRotation { modulus: m.as_f64() });
    }
    Ok(())
}

/// Free-function form of [`ReflectionSequence::coeff_at`].
pub fn coeff_at<T: Scalar>(seq: &ReflectionSequence<T>, n: u64) -> Result<VerblunskyCoeff<T>> {
    seq.coeff_at(n)
}

/// Free-function form of [`ReflectionSequence::rotate`].
pub fn rotate_sequence<T: Scalar>(
    seq: &ReflectionSequence<T>,
    tau: Complex<T>,
) -> Result<ReflectionSequence<T>> {
    seq.rotate(tau)
}

/// The arc `τ·{e^{iθ} : α ≤ θ ≤ 2π - α}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ArcSpec<T: Scalar> {
    pub alpha: T,
    pub tau: Complex<T>,
}

impl<T: Scalar> ArcSpec<T> {
    pub fn new(alpha: T, tau: Complex<T>) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::PI()) {
            return Err(OpucError::OutOfRange(format!(
                "arc half-gap alpha must lie in (0, pi), got {alpha}"
            )));
        }
        check_unit(tau)?;
        Ok(Self { alpha, tau })
    }

    /// `|a| = sin(α/2)`, inverse of [`arc_from_a`].
    pub fn modulus(&self) -> T {
        (self.alpha * lit(0.5)).sin()
    }

    fn unrotate(&self, theta: T) -> T {
        wrap_0_2pi(theta - self.tau.arg())
    }

    /// Whether `e^{iθ}` lies on the closed (or open) arc.
    pub fn contains(&self, theta: T, closed: bool) -> bool {
        let t = self.unrotate(theta);
        let hi = T::TAU() - self.alpha;
        if closed {
            t >= self.alpha && t <= hi
        } else {
            t > self.alpha && t < hi
        }
    }

    /// Angular distance from `e^{iθ}` to the closed arc (0 on the arc).
    pub fn distance(&self, theta: T) -> T {
        let t = self.unrotate(theta);
        if t >= self.alpha && t <= T::TAU() - self.alpha {
            T::zero()
        } else if t < self.alpha {
            self.alpha - t
        } else {
            t - (T::TAU() - self.alpha)
        }
    }

    /// `|cos α - cos(θ - arg τ)|`.
    pub fn cos_gap(&self, theta: T) -> T {
        (self.alpha.cos() - (theta - self.tau.arg()).cos()).abs()
    }

    /// `m` equally spaced angles on `[α + ε, 2π - α - ε]`, rotated by `arg τ`.
    pub fn grid(&self, eps: T, m: usize) -> Vec<T> {
        let lo = self.alpha + eps;
        let hi = T::TAU() - self.alpha - eps;
        let rot = self.tau.arg();
        if m <= 1 {
            return vec![wrap_0_2pi((lo + hi) * lit(0.5) + rot)];
        }
        let step = (hi - lo) / T::from_count(m as u64 - 1);
        (0..m)
            .map(|i| wrap_0_2pi(lo + step * T::from_count(i as u64) + rot))
            .collect()
    }
}

/// Arc determined by a limit coefficient `a`: `cos(α/2) = √(1 - |a|²)`.
pub fn arc_from_a<T: Scalar>(a: Complex<T>, tau: Complex<T>) -> Result<ArcSpec<T>> {
    let r = a.norm();
    if !(r > T::zero() && r < T::one()) {
        return Err(OpucError::OutOfRange(format!(
            "arc needs 0 < |a| < 1, got |a| = {r}"
        )));
    }
    let alpha = lit::<T>(2.0) * ((T::one() - r) * (T::one() + r)).sqrt().acos();
    ArcSpec::new(alpha, tau)
}

/// A point `z = e^{iθ}`, `θ ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UnitCirclePoint<T: Scalar> {
    pub theta: T,
    pub z: Complex<T>,
}

impl<T: Scalar> UnitCirclePoint<T> {
    pub fn from_angle(theta: T) -> Self {
        let theta = wrap_0_2pi(theta);
        Self {
            theta,
            z: cis(theta),
        }
    }

    pub fn from_complex(z: Complex<T>) -> Result<Self> {
        check_unit(z)?;
        Ok(Self::from_angle(angle_0_2pi(z)))
    }
}
