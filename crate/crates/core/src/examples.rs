//! Exact generators and asymptotic expansions for the worked examples:
//! the Zhedanov / q-Hermite sequence and the Jacobi-type arc weight.

use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{OpucError, Result};
use crate::quadrature::{integrate_endpoints, QuadratureRule};
use crate::scalar::{lit, real, Scalar};

/// Jacobi exponents `(a, b)`, both `> -1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct JacobiParams<T: Scalar> {
    pub a: T,
    pub b: T,
}

impl<T: Scalar> JacobiParams<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(a > -T::one() && b > -T::one()) {
            return Err(OpucError::OutOfRange(format!(
                "Jacobi exponents must exceed -1, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }
}

/// `P_n^{(a,b)}(x)` by the three-term recurrence, normalized by `P_n(1) = binom(n+a, n)`.
pub fn jacobi_value<T: Scalar>(p: &JacobiParams<T>, n: u64, x: T) -> T {
    let (a, b) = (p.a, p.b);
    let two = lit::<T>(2.0);
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = (a + T::one()) + (a + b + two) * (x - T::one()) / two;
    for k in 2..=n {
        let k = T::from_count(k);
        let s = two * k + a + b;
        let c1 = two * k * (k + a + b) * (s - two);
        let c2 = (s - T::one()) * (s * (s - two) * x + a * a - b * b);
        let c3 = two * (k + a - T::one()) * (k + b - T::one()) * s;
        let next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    cur
}

/// `binom(n + a, n)` through log-gamma.
pub fn binomial<T: Scalar>(n: u64, a: T) -> T {
    let nf = n as f64;
    let a = a.as_f64();
    let l = libm::lgamma(nf + a + 1.0) - libm::lgamma(nf + 1.0) - libm::lgamma(a + 1.0);
    lit(l.exp())
}

/// `P_{n+1}(x)/P_n(x)` for `x > 1` by the forward ratio recurrence.
///
/// Both polynomials are positive for `x > 1`; a non-positive or non-finite
/// ratio means the recurrence has left its stable regime and is reported.
pub fn jacobi_ratio<T: Scalar>(p: &JacobiParams<T>, n: u64, x: T) -> Result<T> {
    if !(x > T::one()) {
        return Err(OpucError::Domain(format!("ratio needs x > 1, got {x}")));
    }
    let (a, b) = (p.a, p.b);
    let two = lit::<T>(2.0);
    let mut r = (a + T::one()) + (a + b + two) * (x - T::one()) / two;
    for k in 1..=n {
        let k = T::from_count(k);
        let s = two * k + a + b;
        let c1 = two * (k + T::one()) * (k + a + b + T::one()) * s;
        let c2 = (s + T::one()) * (a * a - b * b);
        let c3 = s * (s + T::one()) * (s + two);
        let c4 = two * (k + a) * (k + b) * (s + two);
        r = ((c2 + c3 * x) - c4 / r) / c1;
        if !(r.is_finite() && r > T::zero()) {
            return Err(OpucError::Degenerate(format!(
                "Jacobi ratio recurrence lost positivity at k = {k}"
            )));
        }
    }
    Ok(r)
}

/// Parameters of the weight `C|cos θ - cos α|^γ |cos(θ/2)|^δ |sin(θ/2)|` on `(α, 2π - α)`.
#[derive(Clone, Debug)]
pub struct ArcMeasureParams<T: Scalar> {
    pub alpha: T,
    pub gamma: T,
    pub delta: T,
    normalization: Arc<OnceLock<T>>,
}

impl<T: Scalar> ArcMeasureParams<T> {
    pub fn new(alpha: T, gamma: T, delta: T) -> Result<Self> {
        if !(alpha >= T::zero() && alpha < T::PI()) {
            return Err(OpucError::OutOfRange(format!(
                "alpha must lie in [0, pi), got {alpha}"
            )));
        }
        if !(gamma > -T::one() && delta > -T::one()) {
            return Err(OpucError::OutOfRange(format!(
                "gamma and delta must exceed -1, got {gamma}, {delta}"
            )));
        }
        Ok(Self {
            alpha,
            gamma,
            delta,
            normalization: Arc::new(OnceLock::new()),
        })
    }

    /// Unnormalized weight (`C = 1`).
    pub fn raw_weight(&self, theta: T) -> T {
        if theta <= self.alpha || theta >= T::TAU() - self.alpha {
            return T::zero();
        }
        let half = theta * lit(0.5);
        (theta.cos() - self.alpha.cos()).abs().powf(self.gamma)
            * half.cos().abs().powf(self.delta)
            * half.sin().abs()
    }

    /// Breakpoints of the weight with the local exponent at each.
    pub fn singular_points(&self) -> Vec<(T, T)> {
        if self.alpha > T::zero() {
            vec![
                (self.alpha, self.gamma),
                (T::PI(), self.delta),
                (T::TAU() - self.alpha, self.gamma),
            ]
        } else {
            // |cos θ - 1|^γ |sin(θ/2)| ~ θ^{2γ+1} at θ = 0
            let e = lit::<T>(2.0) * self.gamma + T::one();
            vec![(T::zero(), e), (T::PI(), self.delta), (T::TAU(), e)]
        }
    }

    /// `C`, computed once by quadrature and cached.
    pub fn normalization(&self) -> Result<T> {
        if let Some(c) = self.normalization.get() {
            return Ok(*c);
        }
        let pts = self.singular_points();
        let rule = QuadratureRule::default();
        let mut total = T::zero();
        for w in pts.windows(2) {
            let r = integrate_endpoints(
                |t| real(self.raw_weight(t)),
                w[0].0,
                w[1].0,
                Some(w[0].1),
                Some(w[1].1),
                &rule,
            )?;
            total += r.value.re;
        }
        let c = total.recip();
        Ok(*self.normalization.get_or_init(|| c))
    }

    /// Normalized density `μ'(θ)`.
    pub fn density(&self, theta: T) -> Result<T> {
        Ok(self.normalization()? * self.raw_weight(theta))
    }

    fn jacobi(&self) -> JacobiParams<T> {
        JacobiParams {
            a: self.gamma,
            b: (self.delta - T::one()) * lit(0.5),
        }
    }

    /// `(3 - cos α)/(1 + cos α)`, the image of `x = 1` on the real line.
    pub fn x_point(&self) -> T {
        let c = self.alpha.cos();
        (lit::<T>(3.0) - c) / (T::one() + c)
    }
}

/// `(m + A + B + 1)/(2m + A + B + 1)`, taken as 1 at `m = 0` where both vanish together.
fn shared_factor<T: Scalar>(m: u64, s: T) -> T {
    if m == 0 {
        return T::one();
    }
    let m = T::from_count(m);
    (m + s + T::one()) / (lit::<T>(2.0) * m + s + T::one())
}

/// `R_m(1)`, with the Jacobi ratio at the image point from the recurrence.
pub fn r_plus<T: Scalar>(p: &ArcMeasureParams<T>, m: u64) -> Result<T> {
    let jp = p.jacobi();
    let s = jp.a + jp.b;
    let mf = T::from_count(m);
    let two = lit::<T>(2.0);
    let ratio = if p.alpha == T::zero() {
        // x = 1: P_n(1) = binom(n+a, n), so the ratio is (n+1+a)/(n+1)
        (mf + T::one() + jp.a) / (mf + T::one())
    } else {
        jacobi_ratio(&jp, m, p.x_point())?
    };
    let pref = (T::one() + p.alpha.cos()) * (mf + T::one()) * shared_factor(m, s)
        / (two * mf + s + two);
    Ok(pref * ratio)
}

/// `R_m(-1)`, closed rational form.
pub fn r_minus<T: Scalar>(p: &ArcMeasureParams<T>, m: u64) -> T {
    let jp = p.jacobi();
    let s = jp.a + jp.b;
    let mf = T::from_count(m);
    let two = lit::<T>(2.0);
    -(T::one() + p.alpha.cos()) * (mf + jp.b + T::one()) * shared_factor(m, s)
        / (two * mf + s + two)
}

/// Reflection coefficient `Φ_n(0)` of the arc weight by the parity formulas.
pub fn arc_reflection_exact<T: Scalar>(p: &ArcMeasureParams<T>, n: u64) -> Result<T> {
    if n == 0 {
        return Err(OpucError::OutOfRange(
            "reflection coefficients are indexed from 1".into(),
        ));
    }
    let m = n / 2;
    if n.is_multiple_of(2) {
        Ok(r_plus(p, m)? - r_minus(p, m) - T::one())
    } else {
        let rp = r_plus(p, m)?;
        let rm = r_minus(p, m);
        let den = rp - rm;
        if den == T::zero() {
            return Err(OpucError::Degenerate(format!(
                "R({m})(1) = R({m})(-1) in the odd-index formula"
            )));
        }
        Ok((rp + rm) / den)
    }
}

fn trig_parts<T: Scalar>(p: &ArcMeasureParams<T>) -> Result<(T, T, T)> {
    if !(p.alpha > T::zero()) {
        return Err(OpucError::Domain(
            "the expansion needs alpha > 0 (cot(alpha/2) is singular at 0)".into(),
        ));
    }
    let h = p.alpha * lit(0.5);
    Ok((h.sin(), h.cos(), h.cos() / h.sin()))
}

/// Four-term asymptotic expansion of `Φ_n(0)` for the arc weight.
pub fn arc_expansion<T: Scalar>(p: &ArcMeasureParams<T>, n: u64) -> Result<T> {
    let (s, c, cot) = trig_parts(p)?;
    let (g, d) = (p.gamma, p.delta);
    let nf = T::from_count(n);
    let sgn = if n.is_multiple_of(2) { T::one() } else { -T::one() };
    let c2 = c * c;
    Ok(s + sgn * d * c2 / (lit::<T>(2.0) * nf)
        + c * cot * (lit::<T>(-2.0) - d * d + lit::<T>(8.0) * g * g + d * d * p.alpha.cos())
            / (lit::<T>(16.0) * nf * nf)
        - sgn * d * c2 * (T::one() + d + lit::<T>(2.0) * g - s) / (lit::<T>(4.0) * nf * nf))
}

/// Per-parity expansions: `Φ_{2m}` in powers of `1/m`, and `Φ_{2m+1}` both in
/// powers of `1/m` and in powers of `1/(2m+1)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParityExpansions<T: Scalar> {
    pub m: u64,
    pub even: T,
    pub odd_in_m: T,
    pub odd_in_n: T,
}

pub fn parity_expansions<T: Scalar>(p: &ArcMeasureParams<T>, m: u64) -> Result<ParityExpansions<T>> {
    if m == 0 {
        return Err(OpucError::OutOfRange("parity expansions need m >= 1".into()));
    }
    let (s, c, cot) = trig_parts(p)?;
    let (g, d) = (p.gamma, p.delta);
    let ca = p.alpha.cos();
    let l = |x: f64| lit::<T>(x);
    let mf = T::from_count(m);
    let c2 = c * c;
    let lead = c * cot;
    let even = s + d * c2 / (l(4.0) * mf)
        + lead / (l(64.0) * mf * mf)
            * (l(-2.0) + l(2.0) * d - d * d + l(8.0) * g * g - l(2.0) * d * ca + d * d * ca
                - l(4.0) * d * s
                - l(4.0) * d * d * s
                - l(8.0) * d * g * s);
    let odd_in_m = s - d * c2 / (l(4.0) * mf)
        + lead / (l(64.0) * mf * mf)
            * (l(-2.0) - l(2.0) * d - d * d + l(8.0) * g * g + l(2.0) * d * ca + d * d * ca
                + l(12.0) * d * s
                + l(4.0) * d * d * s
                + l(8.0) * d * g * s);
    let nn = l(2.0) * mf + T::one();
    let odd_in_n = s - d * c2 / (l(2.0) * nn)
        + lead / (l(16.0) * nn * nn)
            * (l(-2.0) - l(2.0) * d - d * d + l(8.0) * g * g + l(2.0) * d * ca + d * d * ca
                + l(4.0) * d * s
                + l(4.0) * d * d * s
                + l(8.0) * d * g * s);
    Ok(ParityExpansions {
        m,
        even,
        odd_in_m,
        odd_in_n,
    })
}

/// `A(x, a, b)` in closed form.
pub fn elliott_a<T: Scalar>(x: T, a: T, b: T) -> Result<T> {
    if !(x > T::one()) {
        return Err(OpucError::Domain(format!("A(x, a, b) needs x > 1, got {x}")));
    }
    let s = (x * x - T::one()).sqrt();
    Ok(b * b / (x + T::one() + s) - a * a / (x - T::one() + s)
        + lit::<T>(0.25) / (s * (x + s)))
}

/// `A(x, a, b)` assembled from the antiderivatives in `y`, `x = cosh 2y`.
pub fn elliott_a_integral_route<T: Scalar>(x: T, a: T, b: T) -> Result<T> {
    if !(x > T::one()) {
        return Err(OpucError::Domain(format!("A(x, a, b) needs x > 1, got {x}")));
    }
    let e2y = x + (x * x - T::one()).sqrt();
    let e4y = e2y * e2y;
    // -1/2 [2a²/(e^{2y}-1) - 2b²/(e^{2y}+1) - 1/(e^{4y}-1)]
    Ok(-a * a / (e2y - T::one()) + b * b / (e2y + T::one())
        + lit::<T>(0.5) / (e4y - T::one()))
}

/// Exact and expanded normalized Jacobi ratio at `x > 1`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RatioCheck<T: Scalar> {
    pub n: u64,
    pub exact: T,
    pub expansion: T,
}

impl<T: Scalar> RatioCheck<T> {
    pub fn residual(&self) -> T {
        self.exact - self.expansion
    }
}

pub fn elliott_ratio_check<T: Scalar>(p: &JacobiParams<T>, x: T, n: u64) -> Result<RatioCheck<T>> {
    if n < 2 {
        return Err(OpucError::OutOfRange("ratio check needs n >= 2".into()));
    }
    let nf = T::from_count(n);
    let (a, b) = (p.a, p.b);
    let two = lit::<T>(2.0);
    let pref = (nf + T::one()) * (nf + a + b + T::one())
        / ((two * nf + a + b + two) * (two * nf + a + b + T::one()));
    let exact = pref * jacobi_ratio(p, n, x)?;
    let big_a = elliott_a(x, a, b)?;
    let expansion = (x + (x * x - T::one()).sqrt()) * lit(0.25) * (T::one() - big_a / (two * nf * nf));
    Ok(RatioCheck {
        n,
        exact,
        expansion,
    })
}

/// `(x + √(x²-1), 2(1 + sin(α/2))²/(1 + cos α))` at `x = (3 - cos α)/(1 + cos α)`.
pub fn trig_identity<T: Scalar>(alpha: T) -> Result<(T, T)> {
    if !(alpha > T::zero() && alpha < T::PI()) {
        return Err(OpucError::OutOfRange(format!(
            "alpha must lie in (0, pi), got {alpha}"
        )));
    }
    let c = alpha.cos();
    let x = (lit::<T>(3.0) - c) / (T::one() + c);
    let lhs = x + (x * x - T::one()).sqrt();
    let sp = T::one() + (alpha * lit(0.5)).sin();
    let rhs = lit::<T>(2.0) * sp * sp / (T::one() + c);
    Ok((lhs, rhs))
}

/// `H_n(x; q)` from `H_{n+1} = x H_n - q^{n-1}(1 - q^n) H_{n-1}`, `H_0 = 1`, `H_1 = x`.
pub fn qhermite_value<T: Scalar>(q: T, n: u64, x: T) -> T {
    let mut prev = T::one();
    if n == 0 {
        return prev;
    }
    let mut cur = x;
    let mut qk = T::one(); // q^{k-1}
    for _ in 1..n {
        let qn = qk * q;
        let next = x * cur - qk * (T::one() - qn) * prev;
        prev = cur;
        cur = next;
        qk = qn;
    }
    cur
}

/// `(H_{n+1}(1;q)/H_n(1;q), q^n)`.
pub fn qhermite_ratio_check<T: Scalar>(q: T, n: u64) -> Result<(T, T)> {
    if !(q > T::zero() && q < T::one()) {
        return Err(OpucError::OutOfRange(format!("q must lie in (0, 1), got {q}")));
    }
    if n == 0 {
        return Err(OpucError::OutOfRange("ratio check needs n >= 1".into()));
    }
    let ratio = qhermite_value(q, n + 1, T::one()) / qhermite_value(q, n, T::one());
    Ok((ratio, q.powi(n as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn jacobi_start_values() {
        let p = JacobiParams::new(0.0, 0.0).unwrap();
        assert_eq!(jacobi_value(&p, 0, 0.3), 1.0);
        assert!((jacobi_value(&p, 1, 0.3f64) - 0.3).abs() < 1e-15);
        // Legendre P_2
        assert!((jacobi_value(&p, 2, 0.3f64) - (1.5 * 0.09 - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn jacobi_endpoint_values() {
        let p = JacobiParams::new(0.3, 0.7).unwrap();
        for n in 0..=20u64 {
            let at_one = jacobi_value(&p, n, 1.0f64);
            assert!((at_one / binomial(n, 0.3) - 1.0).abs() < 1e-12, "n={n}");
            let at_minus = jacobi_value(&p, n, -1.0f64);
            let sign: f64 = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((at_minus / (sign * binomial(n, 0.7)) - 1.0).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn ratio_matches_values() {
        let p = JacobiParams::new(0.3, -0.15).unwrap();
        for n in 0..30u64 {
            let r = jacobi_ratio(&p, n, 3.0f64).unwrap();
            let direct = jacobi_value(&p, n + 1, 3.0) / jacobi_value(&p, n, 3.0);
            assert!((r / direct - 1.0).abs() < 1e-12, "n={n}");
        }
        assert!(jacobi_ratio(&p, 3, 1.0).is_err());
    }

    #[test]
    fn arc_coefficients_known_values() {
        let p = ArcMeasureParams::new(PI / 2.0, 0.3, 0.7).unwrap();
        let expect = [
            0.604651162791,
            0.760754543363,
            0.654392852308,
            0.739808049649,
            0.674162001962,
            0.731040708508,
            0.683212606827,
            0.725943085083,
        ];
        for (i, e) in expect.iter().enumerate() {
            let v = arc_reflection_exact(&p, i as u64 + 1).unwrap();
            assert!((v - e).abs() < 1e-11, "n={} got {v}", i + 1);
        }
    }

    #[test]
    fn lee_yang_case_is_exact_sine() {
        for &g in &[0.5, -0.5] {
            let p = ArcMeasureParams::new(1.1, g, 0.0).unwrap();
            for n in [1u64, 5, 40] {
                assert!((arc_expansion(&p, n).unwrap() - (0.55f64).sin()).abs() < 1e-15);
            }
        }
        let p = ArcMeasureParams::new(0.0, 0.3, 0.7).unwrap();
        assert!(matches!(arc_expansion(&p, 3), Err(OpucError::Domain(_))));
        assert!(arc_reflection_exact(&p, 3).is_ok());
    }

    #[test]
    fn normalization_integrates_to_one() {
        let p = ArcMeasureParams::new(PI / 2.0, 0.3, 0.7).unwrap();
        let c = p.normalization().unwrap();
        assert!(c > 0.0);
        assert_eq!(p.normalization().unwrap(), c);
        assert_eq!(p.density(0.1).unwrap(), 0.0);
    }

    #[test]
    fn elliott_a_values() {
        assert!((elliott_a(1.25f64, 0.0, 0.0).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        let v = elliott_a(1.25f64, 1.0, 1.0).unwrap();
        assert!((v - (1.0 / 3.0 - 1.0 + 1.0 / 6.0)).abs() < 1e-15);
        assert!(elliott_a(1.0, 0.0, 0.0).is_err());
        assert!((elliott_a_integral_route(1.25, 1.0, 1.0).unwrap() - v).abs() < 1e-14);
    }

    #[test]
    fn trig_identity_at_right_angle() {
        let (l, r) = trig_identity(PI / 2.0).unwrap();
        let e = 3.0 + 2.0 * 2f64.sqrt();
        assert!((l - e).abs() < 1e-14 && (r - e).abs() < 1e-14);
    }

    #[test]
    fn qhermite_first_ratio() {
        let (ratio, expected) = qhermite_ratio_check(0.5f64, 1).unwrap();
        assert!((ratio - 0.5).abs() < 1e-15 && expected == 0.5);
        for n in 0..10 {
            let plus = qhermite_value(0.5f64, n, 1.0);
            let minus = qhermite_value(0.5f64, n, -1.0);
            let sign: f64 = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((minus - sign * plus).abs() < 1e-15);
        }
    }
}
