//! Adaptive Gauss–Kronrod (7/15) quadrature with optional algebraic endpoint regularization.

use num_complex::Complex;

use crate::error::{OpucError, Result};
use crate::scalar::{lit, real, Scalar};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances and panel budget for [`integrate`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureRule {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for QuadratureRule {
    fn default() -> Self {
        Self {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_panels: 4000,
        }
    }
}

impl QuadratureRule {
    pub fn with_tol(abs_tol: f64, rel_tol: f64) -> Self {
        Self {
            abs_tol,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }
}

#[derive(Clone, Copy, Debug)]
pub struct QuadResult<T: Scalar> {
    pub value: Complex<T>,
    pub error: T,
    pub panels: usize,
}

#[derive(Clone, Copy)]
struct Panel<T: Scalar> {
    lo: T,
    hi: T,
    value: Complex<T>,
    error: T,
}

fn gk15<T: Scalar, F: Fn(T) -> Complex<T>>(f: &F, lo: T, hi: T) -> Panel<T> {
    let half = (hi - lo) * lit(0.5);
    let center = (hi + lo) * lit(0.5);
    let fc = f(center);
    let mut kron = fc.scale(lit(WGK[7]));
    let mut gauss = fc.scale(lit(WG[3]));
    for j in 0..7 {
        let dx = half * lit(XGK[j]);
        let s = f(center - dx) + f(center + dx);
        kron += s.scale(lit(WGK[j]));
        if j % 2 == 1 {
            gauss += s.scale(lit(WG[j / 2]));
        }
    }
    let value = kron.scale(half);
    let error = (kron - gauss).scale(half).norm();
    Panel {
        lo,
        hi,
        value,
        error,
    }
}

/// `∫_lo^hi f` by globally adaptive bisection of the worst panel.
///
/// Fails with an accuracy error once the budget is spent with the summed
/// error estimate still above `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<T: Scalar, F: Fn(T) -> Complex<T>>(
    f: F,
    lo: T,
    hi: T,
    rule: &QuadratureRule,
) -> Result<QuadResult<T>> {
    if !(hi > lo) {
        return Ok(QuadResult {
            value: real(T::zero()),
            error: T::zero(),
            panels: 0,
        });
    }
    let mut panels = vec![gk15(&f, lo, hi)];
    loop {
        let total: Complex<T> = panels.iter().fold(real(T::zero()), |acc, p| acc + p.value);
        let err: T = panels.iter().fold(T::zero(), |acc, p| acc + p.error);
        let target = lit::<T>(rule.abs_tol).max(lit::<T>(rule.rel_tol) * total.norm());
        if err <= target {
            return Ok(QuadResult {
                value: total,
                error: err,
                panels: panels.len(),
            });
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, T::neg_infinity()), |(bi, be), (i, p)| {
                if p.error > be {
                    (i, p.error)
                } else {
                    (bi, be)
                }
            });
        let p = panels[worst];
        let mid = (p.lo + p.hi) * lit(0.5);
        if panels.len() >= rule.max_panels || !(mid > p.lo && mid < p.hi) {
            return Err(OpucError::Accuracy {
                estimate: err.as_f64(),
                tolerance: target.as_f64(),
                panels: panels.len(),
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
        panels[worst] = gk15(&f, p.lo, mid);
        panels.push(gk15(&f, mid, p.hi));
    }
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<T: Scalar, F: Fn(T) -> T>(
    f: F,
    lo: T,
    hi: T,
    rule: &QuadratureRule,
) -> Result<QuadResult<T>> {
    integrate(|x| real(f(x)), lo, hi, rule)
}

/// `∫_lo^hi f` where `f` behaves like `(x - lo)^{e_lo}` and `(hi - x)^{e_hi}` at the ends.
///
/// Each half of the interval is mapped by `x = end ± h·u^p`, `p = 2/(1+e)`,
/// which turns the endpoint factor into a smooth one; `None` or integer
/// exponents skip the substitution on that side.
pub fn integrate_endpoints<T: Scalar, F: Fn(T) -> Complex<T>>(
    f: F,
    lo: T,
    hi: T,
    e_lo: Option<T>,
    e_hi: Option<T>,
    rule: &QuadratureRule,
) -> Result<QuadResult<T>> {
    if !(hi > lo) {
        return integrate(f, lo, hi, rule);
    }
    let mid = (lo + hi) * lit(0.5);
    let h = mid - lo;
    let half_rule = QuadratureRule {
        abs_tol: rule.abs_tol * 0.5,
        ..*rule
    };
    let left = side(&f, lo, h, T::one(), e_lo, &half_rule)?;
    let right = side(&f, hi, h, -T::one(), e_hi, &half_rule)?;
    Ok(QuadResult {
        value: left.value + right.value,
        error: left.error + right.error,
        panels: left.panels + right.panels,
    })
}

fn side<T: Scalar, F: Fn(T) -> Complex<T>>(
    f: &F,
    end: T,
    h: T,
    dir: T,
    e: Option<T>,
    rule: &QuadratureRule,
) -> Result<QuadResult<T>> {
    let p = match e {
        Some(e) if e > -T::one() && e.fract() != T::zero() => lit::<T>(2.0) / (T::one() + e),
        _ => T::one(),
    };
    // x = end + dir·h·u^p, dx = h·p·u^{p-1} du, u ∈ (0, 1]
    integrate(
        |u: T| {
            if u <= T::zero() {
                return real(T::zero());
            }
            let x = end + dir * h * u.powf(p);
            if x == end {
                // below the resolution of `end`; the weight u^{p-1} makes this node negligible
                return real(T::zero());
            }
            f(x).scale(h * p * u.powf(p - T::one()))
        },
        T::zero(),
        T::one(),
        rule,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate_real(|x: f64| x.powi(5) - 2.0 * x, 0.0, 2.0, &QuadratureRule::default())
            .unwrap();
        assert!((r.value.re - (64.0 / 6.0 - 4.0)).abs() < 1e-13);
        assert_eq!(r.panels, 1);
    }

    #[test]
    fn oscillatory_complex() {
        let r = integrate(
            |t: f64| Complex::new(0.0, -7.0 * t).exp(),
            0.0,
            std::f64::consts::TAU,
            &QuadratureRule::default(),
        )
        .unwrap();
        assert!(r.value.norm() < 1e-12);
    }

    #[test]
    fn singular_endpoints() {
        // ∫_0^1 x^{-1/2} (1-x)^{-1/2} dx = π; the singularity at 1 is only resolved to
        // about 1e-11 because 1 - x is formed after rounding x
        let r = integrate_endpoints(
            |x: f64| real(1.0 / (x * (1.0 - x)).sqrt()),
            0.0,
            1.0,
            Some(-0.5),
            Some(-0.5),
            &QuadratureRule::with_tol(1e-10, 1e-10),
        )
        .unwrap();
        assert!((r.value.re - std::f64::consts::PI).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let rule = QuadratureRule::default().with_budget(3);
        let err = integrate_real(|x: f64| x.abs().sqrt().recip(), -1.0, 1.0, &rule).unwrap_err();
        assert!(err.is_numerical());
    }
}
