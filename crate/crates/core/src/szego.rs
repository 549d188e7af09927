//! Pointwise evaluation of orthonormal, reversed and second-kind polynomials.
//!
//! Three routes compute the same quantities and are cross-checked in tests:
//! the scalar recurrences ([`step`]/[`evaluate`]), the 2×2 matrix product
//! ([`evaluate_matrix`]) and the Christoffel-type sum ([`schur_sum_eval`]).

use num_complex::Complex;
use serde::Serialize;

use crate::domain::{ReflectionSequence, VerblunskyCoeff};
use crate::error::{OpucError, Result};
use crate::matrix::Transfer2x2;
use crate::scalar::{lit, real, CompensatedSum, Scalar};

/// Values `(φ_n, φ*_n, ψ_n, ψ*_n)` at `z` together with `κ_n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SzegoState<T: Scalar> {
    pub n: u64,
    pub phi: Complex<T>,
    pub phi_star: Complex<T>,
    pub psi: Complex<T>,
    pub psi_star: Complex<T>,
    pub kappa: T,
    pub log_kappa: T,
    pub z: Complex<T>,
}

impl<T: Scalar> SzegoState<T> {
    /// Degree-zero state: all four polynomials equal 1, `κ_0 = 1`.
    pub fn initial(z: Complex<T>) -> Self {
        let one = real(T::one());
        Self {
            n: 0,
            phi: one,
            phi_star: one,
            psi: one,
            psi_star: one,
            kappa: T::one(),
            log_kappa: T::zero(),
            z,
        }
    }

    /// Advances one degree with `Φ_{n+1}(0) = coeff`.
    pub fn step(&self, coeff: &VerblunskyCoeff<T>) -> Result<Self> {
        if !coeff.is_inside() {
            return Err(OpucError::InvalidCoefficient {
                modulus: coeff.value().norm().as_f64(),
            });
        }
        let n = self.n.checked_add(1).ok_or_else(|| {
            OpucError::OutOfRange("degree counter overflow".into())
        })?;
        let c = coeff.value();
        let cc = c.conj();
        let z = self.z;
        let r = coeff.rho().recip();
        let zphi = z * self.phi;
        let zpsi = z * self.psi;
        let log_kappa = self.log_kappa - coeff.log_defect() * lit(0.5);
        Ok(Self {
            n,
            phi: (zphi + c * self.phi_star).scale(r),
            phi_star: (cc * zphi + self.phi_star).scale(r),
            psi: (zpsi - c * self.psi_star).scale(r),
            psi_star: (self.psi_star - cc * zpsi).scale(r),
            kappa: log_kappa.exp(),
            log_kappa,
            z,
        })
    }

    /// `(φ_n ψ_n; φ*_n -ψ*_n)`.
    pub fn matrix(&self) -> Transfer2x2<T> {
        Transfer2x2::new(self.phi, self.psi, self.phi_star, -self.psi_star)
    }

    /// Monic value `Φ_n(z) = φ_n(z)/κ_n`.
    pub fn monic_phi(&self) -> Complex<T> {
        self.phi.unscale(self.kappa)
    }
}

/// Free-function form of [`SzegoState::step`].
pub fn step<T: Scalar>(state: &SzegoState<T>, coeff: &VerblunskyCoeff<T>) -> Result<SzegoState<T>> {
    state.step(coeff)
}

/// State at degree `n` obtained by folding [`step`] from degree 0.
pub fn evaluate<T: Scalar>(
    seq: &ReflectionSequence<T>,
    n: u64,
    z: Complex<T>,
) -> Result<SzegoState<T>> {
    let mut s = SzegoState::initial(z);
    for k in 1..=n {
        s = s.step(&seq.coeff_at(k)?)?;
    }
    Ok(s)
}

/// States at every degree `0..=n`.
pub fn evaluate_path<T: Scalar>(
    seq: &ReflectionSequence<T>,
    n: u64,
    z: Complex<T>,
) -> Result<Vec<SzegoState<T>>> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut s = SzegoState::initial(z);
    out.push(s);
    for k in 1..=n {
        s = s.step(&seq.coeff_at(k)?)?;
        out.push(s);
    }
    Ok(out)
}

/// Same as [`evaluate_path`] but over a precomputed coefficient slice, for grid sweeps.
pub fn path_from_coeffs<T: Scalar>(
    coeffs: &[VerblunskyCoeff<T>],
    z: Complex<T>,
) -> Result<Vec<SzegoState<T>>> {
    let mut out = Vec::with_capacity(coeffs.len() + 1);
    let mut s = SzegoState::initial(z);
    out.push(s);
    for c in coeffs {
        s = s.step(c)?;
        out.push(s);
    }
    Ok(out)
}

/// `(φ_n ψ_n; φ*_n -ψ*_n)` as an ordered product of one-step transfer matrices
/// applied to `(1 1; 1 -1)`.
pub fn evaluate_matrix<T: Scalar>(
    seq: &ReflectionSequence<T>,
    n: u64,
    z: Complex<T>,
) -> Result<Transfer2x2<T>> {
    let mut m = Transfer2x2::sigma();
    for k in 1..=n {
        let c = seq.coeff_at(k)?;
        let v = c.value();
        let t = Transfer2x2::new(z, v, z * v.conj(), real(T::one())).scale_real(c.rho().recip());
        m = t * m;
    }
    Ok(m)
}

/// `κ_n = ∏ (1 - |Φ_k(0)|²)^{-1/2}`, accumulated in log space.
pub fn kappa<T: Scalar>(seq: &ReflectionSequence<T>, n: u64) -> Result<T> {
    log_kappa(seq, n).map(|l| l.exp())
}

pub fn log_kappa<T: Scalar>(seq: &ReflectionSequence<T>, n: u64) -> Result<T> {
    let mut acc = T::zero();
    for k in 1..=n {
        acc -= seq.coeff_at(k)?.log_defect() * lit(0.5);
    }
    Ok(acc)
}

/// `κ_n φ*_n(z)` computed as `Σ_{k=0}^{n} conj(Φ_k(0)) κ_k φ_k(z)` with `Φ_0(0) = 1`.
pub fn schur_sum_eval<T: Scalar>(
    seq: &ReflectionSequence<T>,
    n: u64,
    z: Complex<T>,
) -> Result<Complex<T>> {
    let mut s = SzegoState::initial(z);
    let mut sum = CompensatedSum::new();
    sum.add(s.phi);
    for k in 1..=n {
        let c = seq.coeff_at(k)?;
        s = s.step(&c)?;
        sum.add(c.value().conj() * s.phi.scale(s.kappa));
    }
    Ok(sum.value())
}

/// `φ_n·(-ψ*_n) - ψ_n·φ*_n`, identically `-2 z^n`.
pub fn wronskian<T: Scalar>(state: &SzegoState<T>) -> Complex<T> {
    state.phi * (-state.psi_star) - state.psi * state.phi_star
}

/// `∫ z |φ_n|² dμ = -Φ_{n+1}(0) conj(Φ_n(0))`, with `Φ_0(0) = 1`.
pub fn expected_z_moment<T: Scalar>(seq: &ReflectionSequence<T>, n: u64) -> Result<Complex<T>> {
    let next = seq.coeff_at(n + 1)?.value();
    let cur = if n == 0 {
        real(T::one())
    } else {
        seq.coeff_at(n)?.value()
    };
    Ok(-next * cur.conj())
}

/// Coefficients of the monic `Φ_n` in ascending powers of `z`.
///
/// Runs the monic recurrence on coefficient arrays, O(n²).
pub fn monic_coefficients<T: Scalar>(
    seq: &ReflectionSequence<T>,
    n: usize,
) -> Result<Vec<Complex<T>>> {
    let mut p = vec![real(T::one())];
    for k in 1..=n {
        let c = seq.coeff_at(k as u64)?.value();
        // Φ*_{k-1}[j] = conj(Φ_{k-1}[k-1-j])
        let mut next = vec![real(T::zero()); k + 1];
        for (j, &pj) in p.iter().enumerate() {
            next[j + 1] += pj;
        }
        for j in 0..k {
            next[j] += c * p[k - 1 - j].conj();
        }
        p = next;
    }
    Ok(p)
}

/// Horner evaluation of an ascending coefficient vector.
pub fn horner<T: Scalar>(coeffs: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    coeffs
        .iter()
        .rev()
        .fold(real(T::zero()), |acc, &c| acc * z + c)
}
