//! Closed forms for a constant reflection coefficient `a` and its orthogonality measure.

use num_complex::Complex;
use serde::Serialize;

use crate::domain::{arc_from_a, ReflectionSequence};
use crate::error::{OpucError, Result};
use crate::matrix::Transfer2x2;
use crate::scalar::{cis, lit, pow_polar, real, wrap_0_2pi, Scalar};
use crate::szego::{self, SzegoState};

/// Divided differences lose roughly six digits once `|z1 - z2|` drops below
/// this multiple of `1 + |z|`; closer than that the recurrence is used.
pub const BRANCH_SWITCH_TOL: f64 = 1e-6;

/// Eigenvalues of `(z a; z ā 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EigenPair<T: Scalar> {
    pub z1: Complex<T>,
    pub z2: Complex<T>,
    /// `false` when `z` sits on (or numerically next to) a branch point `e^{±iα}`.
    pub branch_ok: bool,
}

/// `z1, z2 = (z + 1 ± w)/2` with `w = √((z - e^{iα})(z - e^{-iα}))`.
///
/// `w` is the principal root of the product, negated when `Re(z̄ w) < 0`, so
/// that `w/z → 1` at infinity and `w` is continuous along the real axis.
pub fn eigen_pair<T: Scalar>(z: Complex<T>, alpha: T) -> EigenPair<T> {
    let e = cis(alpha);
    let prod = (z - e) * (z - e.conj());
    let mid = (z + real(T::one())).scale(lit(0.5));
    if prod.norm() == T::zero() {
        return EigenPair {
            z1: mid,
            z2: mid,
            branch_ok: false,
        };
    }
    let mut w = prod.sqrt();
    if (z.conj() * w).re < T::zero() {
        w = -w;
    }
    let half_w = w.scale(lit(0.5));
    let tol = lit::<T>(BRANCH_SWITCH_TOL) * (T::one() + z.norm());
    EigenPair {
        z1: mid + half_w,
        z2: mid - half_w,
        branch_ok: w.norm() >= tol,
    }
}

/// `φ̂_n, φ̂*_n, ψ̂_n, ψ̂*_n` for the constant sequence `a`, from the divided
/// difference formulas; falls back to the recurrence inside the branch band.
pub fn closed_eval<T: Scalar>(a: Complex<T>, n: u64, z: Complex<T>) -> Result<SzegoState<T>> {
    let arc = arc_from_a(a, real(T::one()))?;
    let d = T::one() - a.norm_sqr();
    let log_kappa = -d.ln() * T::from_count(n) * lit(0.5);
    if n == 0 {
        return Ok(SzegoState::initial(z));
    }
    let pair = eigen_pair(z, arc.alpha);
    if !pair.branch_ok {
        return szego::evaluate(&ReflectionSequence::constant(a)?, n, z);
    }
    let sd = d.sqrt();
    // Powers of z_i/√d stay O(1) on the arc, so nothing under- or overflows at large n.
    let u1 = pair.z1.unscale(sd);
    let u2 = pair.z2.unscale(sd);
    let gap = pair.z1 - pair.z2;
    let dn = (pow_polar(u1, n) - pow_polar(u2, n)) / gap;
    let dn1 = (pow_polar(u1, n - 1) - pow_polar(u2, n - 1)) / gap.scale(sd);
    let tail = (z * dn1).scale(d);
    let one = real(T::one());
    let ac = a.conj();
    Ok(SzegoState {
        n,
        phi: (z + a) * dn - tail,
        phi_star: (one + ac * z) * dn - tail,
        psi: (z - a) * dn - tail,
        psi_star: (one - ac * z) * dn - tail,
        kappa: log_kappa.exp(),
        log_kappa,
        z,
    })
}

/// Value of `v_α(θ) = sin(θ/2) |cos α - cos θ|^{-1/2}`; infinite at the arc endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum VAlpha<T: Scalar> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> VAlpha<T> {
    /// `min(n, v_α(θ))`.
    pub fn min_with(&self, n: T) -> T {
        match self {
            VAlpha::Finite(v) => n.min(*v),
            VAlpha::Infinite => n,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, VAlpha::Infinite)
    }
}

pub fn v_alpha<T: Scalar>(theta: T, alpha: T) -> Result<VAlpha<T>> {
    let slack = lit::<T>(1e-12);
    if theta < alpha - slack || theta > T::TAU() - alpha + slack {
        return Err(OpucError::Domain(format!(
            "theta = {theta} lies outside the closed arc [{alpha}, {}]",
            T::TAU() - alpha
        )));
    }
    let gap = (alpha.cos() - theta.cos()).abs();
    if gap == T::zero() {
        return Ok(VAlpha::Infinite);
    }
    Ok(VAlpha::Finite((theta * lit(0.5)).sin() / gap.sqrt()))
}

/// Empirical constants for `|φ̂_n| ≤ C min(n, v_α)` and `|φ̂_n| ≤ C(ε)` on a grid.
#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeReport<T: Scalar> {
    pub max_degree: u64,
    /// `max |φ̂_n(θ)| / min(n, v_α(θ))` over the grid and `1 ≤ n ≤ N`.
    pub c_ratio: T,
    pub c_ratio_at: (u64, T),
    /// `max |φ̂_n(θ)|` over the grid and `1 ≤ n ≤ N`.
    pub c_sup: T,
    /// sup over `n ∈ [1, N/2]`.
    pub sup_lower: T,
    /// sup over `n ∈ [N/2, N]`.
    pub sup_upper: T,
    /// `sup_upper ≤ 1.05 · sup_lower`.
    pub stable: bool,
}

/// Stability margin for sup-over-degree comparisons.
pub const STABILITY_FACTOR: f64 = 1.05;

pub fn envelope_check<T: Scalar>(
    a: Complex<T>,
    max_degree: u64,
    grid: &[T],
) -> Result<EnvelopeReport<T>> {
    let arc = arc_from_a(a, real(T::one()))?;
    let half = max_degree / 2;
    let mut rep = EnvelopeReport {
        max_degree,
        c_ratio: T::zero(),
        c_ratio_at: (0, T::zero()),
        c_sup: T::zero(),
        sup_lower: T::zero(),
        sup_upper: T::zero(),
        stable: false,
    };
    for &theta in grid {
        let v = v_alpha(theta, arc.alpha)?;
        let z = cis(theta);
        for n in 1..=max_degree {
            let m = closed_eval(a, n, z)?.phi.norm();
            let ratio = m / v.min_with(T::from_count(n));
            if ratio > rep.c_ratio {
                rep.c_ratio = ratio;
                rep.c_ratio_at = (n, theta);
            }
            rep.c_sup = rep.c_sup.max(m);
            if n <= half.max(1) {
                rep.sup_lower = rep.sup_lower.max(m);
            }
            if n >= half {
                rep.sup_upper = rep.sup_upper.max(m);
            }
        }
    }
    rep.stable = rep.sup_upper <= lit::<T>(STABILITY_FACTOR) * rep.sup_lower;
    Ok(rep)
}

/// `(φ̂_n ψ̂_n; φ̂*_n -ψ̂*_n)` from the closed forms.
pub fn closed_matrix<T: Scalar>(a: Complex<T>, n: u64, z: Complex<T>) -> Result<Transfer2x2<T>> {
    Ok(closed_eval(a, n, z)?.matrix())
}

/// Empirical `C*` in `‖M̂_n^{±1}‖ ≤ C* min(n, v_α(θ))` over a grid of the closed arc.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixEnvelope<T: Scalar> {
    pub max_degree: u64,
    pub c_star: T,
    /// Same constant using only degrees `n ≤ N/2`.
    pub c_star_half: T,
}

pub fn matrix_envelope<T: Scalar>(
    a: Complex<T>,
    max_degree: u64,
    grid: &[T],
) -> Result<MatrixEnvelope<T>> {
    let arc = arc_from_a(a, real(T::one()))?;
    let half = max_degree / 2;
    let mut c_star = T::zero();
    let mut c_half = T::zero();
    for &theta in grid {
        let v = v_alpha(theta, arc.alpha)?;
        let z = cis(theta);
        for n in 1..=max_degree {
            let m = closed_matrix(a, n, z)?;
            let inv = m.inverse().ok_or_else(|| {
                OpucError::Degenerate(format!("singular comparison matrix at n={n}"))
            })?;
            let r = m.norm().max(inv.norm()) / v.min_with(T::from_count(n));
            c_star = c_star.max(r);
            if n <= half {
                c_half = c_half.max(r);
            }
        }
    }
    Ok(MatrixEnvelope {
        max_degree,
        c_star,
        c_star_half: c_half,
    })
}

/// Orthogonality measure of the constant sequence `a`: an arc density plus at most one mass point.
#[derive(Clone, Debug, Serialize)]
pub struct GeronimusMeasure<T: Scalar> {
    pub a: Complex<T>,
    pub alpha: T,
    /// Location of the possible mass point, `e^{iβ} = (1 - a)/(1 - ā)`, `β ∈ [0, 2π)`.
    pub beta: T,
    /// Mass at `e^{iβ}`, normalized so that the measure has total mass 1.
    pub j_beta: T,
    /// The mass as given by the classical printed formula `(2|a|² - a - ā)/|1 - a|`.
    pub j_beta_printed: T,
    /// `|1 - a|`: ratio between the printed density and the normalized one.
    pub printed_scale: T,
}

impl<T: Scalar> GeronimusMeasure<T> {
    /// Normalized density on `(α, 2π - α)`; zero elsewhere.
    pub fn density(&self, theta: T) -> T {
        self.printed_density(theta) / self.printed_scale
    }

    /// `√(sin((θ+α)/2) sin((θ-α)/2)) / (2π sin((θ-β)/2))` as printed, without normalization.
    pub fn printed_density(&self, theta: T) -> T {
        let t = wrap_0_2pi(theta);
        if t <= self.alpha || t >= T::TAU() - self.alpha {
            return T::zero();
        }
        let half = lit::<T>(0.5);
        let num = (((t + self.alpha) * half).sin() * ((t - self.alpha) * half).sin())
            .max(T::zero())
            .sqrt();
        num / (T::TAU() * ((t - self.beta) * half).sin().abs())
    }

    pub fn has_mass_point(&self) -> bool {
        self.j_beta > T::zero()
    }
}

pub fn mu_a_spec<T: Scalar>(a: Complex<T>) -> Result<GeronimusMeasure<T>> {
    let arc = arc_from_a(a, real(T::one()))?;
    let one = real(T::one());
    let beta = wrap_0_2pi(((one - a) / (one - a.conj())).arg());
    let one_minus = (one - a).norm();
    let numer = lit::<T>(2.0) * a.norm_sqr() - lit::<T>(2.0) * a.re;
    let has_mass = (one - a.scale(lit(2.0))).norm() > T::one();
    let (j_beta, j_printed) = if has_mass {
        (numer / (one_minus * one_minus), numer / one_minus)
    } else {
        (T::zero(), T::zero())
    };
    Ok(GeronimusMeasure {
        a,
        alpha: arc.alpha,
        beta,
        j_beta,
        j_beta_printed: j_printed,
        printed_scale: one_minus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type C = Complex<f64>;

    #[test]
    fn eigen_pair_real_axis() {
        let p = eigen_pair(C::new(1.0, 0.0), PI / 3.0);
        assert!((p.z1 - C::new(1.5, 0.0)).norm() < 1e-14);
        assert!((p.z2 - C::new(0.5, 0.0)).norm() < 1e-14);
        assert!(p.branch_ok);
    }

    #[test]
    fn eigen_pair_at_branch_point() {
        let e = cis(PI / 3.0);
        let p = eigen_pair(e, PI / 3.0);
        assert!(!p.branch_ok);
        assert!((p.z1 - (e + 1.0) * 0.5).norm() < 1e-8);
        assert!((p.z2 - (e + 1.0) * 0.5).norm() < 1e-8);
    }

    #[test]
    fn eigen_moduli_on_arc() {
        let p = eigen_pair(C::new(-1.0, 0.0), PI / 3.0);
        assert!((p.z1.norm() - 0.75f64.sqrt()).abs() < 1e-14);
        assert!((p.z2.norm() - 0.75f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn closed_eval_low_degrees() {
        let a = C::new(0.3, 0.4);
        let z = C::new(0.2, -1.3);
        let s0 = closed_eval(a, 0, z).unwrap();
        assert_eq!(s0, SzegoState::initial(z));
        let s1 = closed_eval(a, 1, z).unwrap();
        let expect = (z + a) / (1.0 - a.norm_sqr()).sqrt();
        assert!((s1.phi - expect).norm() < 1e-14);
    }

    #[test]
    fn closed_eval_matches_recurrence_at_high_degree() {
        let a = C::new(0.5, 0.0);
        let z = cis(3.0);
        let closed = closed_eval(a, 100, z).unwrap();
        let rec = szego::evaluate(&ReflectionSequence::constant(a).unwrap(), 100, z).unwrap();
        for (x, y) in [
            (closed.phi, rec.phi),
            (closed.phi_star, rec.phi_star),
            (closed.psi, rec.psi),
            (closed.psi_star, rec.psi_star),
        ] {
            assert!((x - y).norm() <= 1e-8 * y.norm().max(1.0));
        }
    }

    #[test]
    fn v_alpha_values() {
        match v_alpha(PI, PI / 3.0).unwrap() {
            VAlpha::Finite(v) => assert!((v - 1.5f64.sqrt().recip()).abs() < 1e-14),
            VAlpha::Infinite => panic!(),
        }
        assert!(v_alpha(PI / 3.0, PI / 3.0).unwrap().is_infinite());
        match v_alpha(PI, PI / 2.0).unwrap() {
            VAlpha::Finite(v) => assert!((v - 1.0).abs() < 1e-14),
            VAlpha::Infinite => panic!(),
        }
        assert!(matches!(v_alpha(0.1, PI / 3.0), Err(OpucError::Domain(_))));
    }

    #[test]
    fn degree_one_bound() {
        let a = C::new(0.5, 0.0);
        let arc = arc_from_a(a, C::new(1.0, 0.0)).unwrap();
        let grid = arc.grid(0.0, 41);
        let rep = envelope_check(a, 1, &grid).unwrap();
        let bound = (1.0 + 0.5) / 0.75f64.sqrt();
        assert!(rep.c_sup <= bound + 1e-12);
        assert!(rep.c_sup <= rep.c_ratio * 1.0 + 1e-12);
    }

    #[test]
    fn measure_parameters() {
        let m = mu_a_spec(C::new(0.5, 0.0)).unwrap();
        assert_eq!(m.beta, 0.0);
        assert_eq!(m.j_beta, 0.0);
        let printed = m.printed_density(PI);
        assert!((printed - 3f64.sqrt() / (4.0 * PI)).abs() < 1e-14);
        assert!((printed - 0.13783).abs() < 1e-5);
        assert!((m.density(PI) - 3f64.sqrt() / (2.0 * PI)).abs() < 1e-14);
        assert_eq!(m.density(0.5), 0.0);

        let m = mu_a_spec(C::new(-0.5, 0.0)).unwrap();
        assert!(m.has_mass_point());
        assert_eq!(m.beta, 0.0);
        assert!((m.j_beta_printed - 1.0).abs() < 1e-14);
        assert!((m.j_beta - 2.0 / 3.0).abs() < 1e-14);
    }
}
