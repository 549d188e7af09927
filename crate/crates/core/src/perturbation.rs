//! Comparison with the constant-coefficient system `a`: perturbation matrices,
//! the additive and multiplicative comparison identities, condition
//! diagnostics and empirical envelope bounds.

use num_complex::Complex;
use serde::Serialize;

use crate::domain::{arc_from_a, ArcSpec, ReflectionSequence, VerblunskyCoeff};
use crate::error::{OpucError, Result};
use crate::geronimus::{closed_matrix, eigen_pair, v_alpha, STABILITY_FACTOR};
use crate::matrix::Transfer2x2;
use crate::scalar::{cis, lit, pow_polar, real, Scalar};
use crate::szego::{path_from_coeffs, SzegoState};

fn defect<T: Scalar>(a: Complex<T>) -> Result<T> {
    let r = a.norm();
    if !(r > T::zero() && r < T::one()) {
        return Err(OpucError::OutOfRange(format!(
            "comparison coefficient needs 0 < |a| < 1, got |a| = {r}"
        )));
    }
    Ok((T::one() - r) * (T::one() + r))
}

/// `(φ̃_n ψ̃_n; φ̃*_n -ψ̃*_n)` with `φ̃_n = φ_n / (κ_n (1-|a|²)^{n/2})`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NormalizedState<T: Scalar> {
    pub n: u64,
    pub matrix: Transfer2x2<T>,
    pub z: Complex<T>,
}

impl<T: Scalar> NormalizedState<T> {
    pub fn from_state(s: &SzegoState<T>, a: Complex<T>) -> Result<Self> {
        let d = defect(a)?;
        let scale = (-s.log_kappa - d.ln() * T::from_count(s.n) * lit(0.5)).exp();
        Ok(Self {
            n: s.n,
            matrix: s.matrix().scale_real(scale),
            z: s.z,
        })
    }
}

pub fn normalized_state<T: Scalar>(
    seq: &ReflectionSequence<T>,
    a: Complex<T>,
    n: u64,
    z: Complex<T>,
) -> Result<NormalizedState<T>> {
    NormalizedState::from_state(&crate::szego::evaluate(seq, n, z)?, a)
}

/// Normalized states for degrees `0..=n`.
pub fn normalized_path<T: Scalar>(
    seq: &ReflectionSequence<T>,
    a: Complex<T>,
    n: u64,
    z: Complex<T>,
) -> Result<Vec<Transfer2x2<T>>> {
    let coeffs = seq.coeffs(n as usize)?;
    path_from_coeffs(&coeffs, z)?
        .iter()
        .map(|s| NormalizedState::from_state(s, a).map(|ns| ns.matrix))
        .collect()
}

/// `Ω(a, z) = (1-|a|²)^{-1/2} (z a; z ā 1)`.
pub fn omega<T: Scalar>(a: Complex<T>, z: Complex<T>) -> Result<Transfer2x2<T>> {
    let d = defect(a)?;
    Ok(Transfer2x2::new(z, a, z * a.conj(), real(T::one())).scale_real(d.sqrt().recip()))
}

/// `Ω^n = ½ M̂_n σ`, from the closed forms.
pub fn omega_power_closed<T: Scalar>(a: Complex<T>, n: u64, z: Complex<T>) -> Result<Transfer2x2<T>> {
    Ok((closed_matrix(a, n, z)? * Transfer2x2::sigma()).half())
}

/// `Ω^{-n} = (2zⁿ)^{-1} σ (ψ̂*_n ψ̂_n; φ̂*_n -φ̂_n)`, from the closed forms.
pub fn omega_inv_power_closed<T: Scalar>(
    a: Complex<T>,
    n: u64,
    z: Complex<T>,
) -> Result<Transfer2x2<T>> {
    if z.norm() == T::zero() {
        return Err(OpucError::Domain("Omega is singular at z = 0".into()));
    }
    let s = crate::geronimus::closed_eval(a, n, z)?;
    let inner = Transfer2x2::new(s.psi_star, s.psi, s.phi_star, -s.phi);
    let pre = pow_polar(z, n).scale(lit(2.0)).inv();
    Ok((Transfer2x2::sigma() * inner).scale(pre))
}

/// Residuals of the closed forms for `Ω^{±n}` against repeated multiplication.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct OmegaIdentityReport<T: Scalar> {
    pub n: u64,
    pub power_residual: T,
    pub inverse_power_residual: T,
    /// `‖Ω^{-n} Ω^n - I‖` entrywise, both factors from the closed forms.
    pub product_residual: T,
}

pub fn omega_identities<T: Scalar>(
    a: Complex<T>,
    z: Complex<T>,
    n: u64,
) -> Result<OmegaIdentityReport<T>> {
    let om = omega(a, z)?;
    let direct = om.powu(n);
    let direct_inv = om
        .inverse()
        .ok_or_else(|| OpucError::Domain("Omega is singular at z = 0".into()))?
        .powu(n);
    let pos = omega_power_closed(a, n, z)?;
    let neg = omega_inv_power_closed(a, n, z)?;
    Ok(OmegaIdentityReport {
        n,
        power_residual: pos.rel_diff(&direct),
        inverse_power_residual: neg.rel_diff(&direct_inv),
        product_residual: (neg * pos).max_diff(&Transfer2x2::identity()),
    })
}

/// `E_n = (1-|a|²)^{-1/2} (0, Φ_n(0) - a; z(conj Φ_n(0) - ā), 0)`.
pub fn e_matrix<T: Scalar>(
    coeff: &VerblunskyCoeff<T>,
    a: Complex<T>,
    z: Complex<T>,
) -> Result<Transfer2x2<T>> {
    let d = defect(a)?;
    let diff = coeff.value() - a;
    let zero = real(T::zero());
    Ok(Transfer2x2::new(zero, diff, z * diff.conj(), zero).scale_real(d.sqrt().recip()))
}

fn branch_degenerate<T: Scalar>(a: Complex<T>, z: Complex<T>) -> Result<bool> {
    let arc = arc_from_a(a, real(T::one()))?;
    Ok(!eigen_pair(z, arc.alpha).branch_ok)
}

/// Both sides of the additive comparison identity, plus the residual of its
/// equivalent form written with `M̂_{n-k-1}`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ComparisonIdentity<T: Scalar> {
    pub n: u64,
    /// `Ω^{-n} M̃_n`.
    pub lhs: Transfer2x2<T>,
    /// `σ + Σ_{k<n} Ω^{-k-1} E_{k+1} M̃_k`.
    pub rhs: Transfer2x2<T>,
    /// Entrywise difference normalized by the largest entry.
    pub residual: T,
    /// Same normalization for `M̃_n` against `M̂_n + ½ Σ M̂_{n-k-1} σ E_{k+1} M̃_k`.
    pub expanded_residual: T,
    /// `z` lies in the branch band, where the closed forms fall back to the recurrence.
    pub degenerate: bool,
}

pub fn comparison_identity<T: Scalar>(
    seq: &ReflectionSequence<T>,
    a: Complex<T>,
    n: u64,
    z: Complex<T>,
) -> Result<ComparisonIdentity<T>> {
    let degenerate = branch_degenerate(a, z)?;
    let coeffs = seq.coeffs(n as usize)?;
    let path = normalized_path(seq, a, n, z)?;
    let sigma = Transfer2x2::sigma();
    let mut rhs = sigma;
    let mut expanded = closed_matrix(a, n, z)?;
    for k in 0..n as usize {
        let e = e_matrix(&coeffs[k], a, z)?;
        let corr = e * path[k];
        rhs = rhs + omega_inv_power_closed(a, k as u64 + 1, z)? * corr;
        let hat = closed_matrix(a, n - k as u64 - 1, z)?;
        expanded = expanded + (hat * sigma * corr).half();
    }
    let lhs = omega_inv_power_closed(a, n, z)? * path[n as usize];
    Ok(ComparisonIdentity {
        n,
        lhs,
        rhs,
        residual: lhs.rel_diff(&rhs),
        expanded_residual: path[n as usize].rel_diff(&expanded),
        degenerate,
    })
}

/// `B_n` by definition (`Ω^{-n} M̃_n`) and by the ordered product
/// `∏_{k=1}^{n} (I + Ω^{-k} E_k Ω^{k-1}) σ`, factors applied right (`k = 1`) to left.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BState<T: Scalar> {
    pub n: u64,
    pub definition: Transfer2x2<T>,
    pub product: Transfer2x2<T>,
    pub residual: T,
    pub degenerate: bool,
}

fn b_product_path<T: Scalar>(
    coeffs: &[VerblunskyCoeff<T>],
    a: Complex<T>,
    z: Complex<T>,
) -> Result<Vec<Transfer2x2<T>>> {
    let mut out = Vec::with_capacity(coeffs.len() + 1);
    let mut acc = Transfer2x2::sigma();
    out.push(acc);
    for (i, c) in coeffs.iter().enumerate() {
        let k = i as u64 + 1;
        let factor = Transfer2x2::identity()
            + omega_inv_power_closed(a, k, z)? * e_matrix(c, a, z)? * omega_power_closed(a, k - 1, z)?;
        acc = factor * acc;
        out.push(acc);
    }
    Ok(out)
}

pub fn b_state<T: Scalar>(
    seq: &ReflectionSequence<T>,
    a: Complex<T>,
    n: u64,
    z: Complex<T>,
) -> Result<BState<T>> {
    let degenerate = branch_degenerate(a, z)?;
    let coeffs = seq.coeffs(n as usize)?;
    let product = *b_product_path(&coeffs, a, z)?.last().expect("path starts at degree 0");
    let definition = omega_inv_power_closed(a, n, z)? * normalized_state(seq, a, n, z)?.matrix;
    Ok(BState {
        n,
        definition,
        product,
        residual: definition.rel_diff(&product),
        degenerate,
    })
}

/// `‖B_{2m} - B_m‖` for `m = m0, 2m0, 4m0, …` while `2m ≤ max_degree`.
pub fn b_cauchy<T: Scalar>(
    seq: &ReflectionSequence<T>,
    a: Complex<T>,
    z: Complex<T>,
    m0: u64,
    max_degree: u64,
) -> Result<Vec<(u64, T)>> {
    if m0 == 0 {
        return Err(OpucError::OutOfRange("Cauchy diagnostic needs m0 >= 1".into()));
    }
    let coeffs = seq.coeffs(max_degree as usize)?;
    let path = b_product_path(&coeffs, a, z)?;
    let mut out = Vec::new();
    let mut m = m0;
    while 2 * m <= max_degree {
        out.push((m, (path[2 * m as usize] - path[m as usize]).norm()));
        m *= 2;
    }
    Ok(out)
}

/// Trend-based verdict on a summability condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

/// Partial sums and verdict for one condition.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionEntry<T: Scalar> {
    pub condition: String,
    pub partial_sum: Vec<T>,
    pub verdict: Verdict,
    /// Fitted decay exponent of the weighted terms over `[N/10, N]`; `None` when the tail vanishes.
    pub tail_slope: Option<T>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionReport<T: Scalar> {
    pub schema_version: u32,
    pub max_degree: usize,
    pub conditions: Vec<ConditionEntry<T>>,
}

impl<T: Scalar> ConditionReport<T> {
    pub fn get(&self, name: &str) -> Option<&ConditionEntry<T>> {
        self.conditions.iter().find(|c| c.condition == name)
    }
}

/// Decay exponent thresholds: a weighted tail `k^{-s}` is summable iff `s > 1`.
pub const SUMMABLE_HOLDS: f64 = 1.2;
pub const SUMMABLE_FAILS: f64 = 1.05;
/// For the `O(log n)` growth condition the boundary is `s = 1` itself.
pub const LOG_GROWTH_HOLDS: f64 = 0.95;
pub const LOG_GROWTH_FAILS: f64 = 0.8;
/// Tail terms `|τ^k Φ_k - a|` at or below this many ulps count as zero.
pub const TAIL_NOISE_ULPS: f64 = 64.0;

/// Least-squares decay exponent `s` of `terms[k-1] ~ k^{-s}` over `k ∈ [lo, hi]`.
fn decay_exponent<T: Scalar>(terms: &[T], lo: usize, hi: usize) -> Option<T> {
    let pts: Vec<(f64, f64)> = (lo.max(1)..=hi)
        .filter_map(|k| {
            let t = terms[k - 1].as_f64();
            (t > 0.0).then(|| ((k as f64).ln(), t.ln()))
        })
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(lit(-sxy / sxx))
}

fn verdict_for<T: Scalar>(slope: Option<T>, holds: f64, fails: f64, tail_zero: bool) -> Verdict {
    match slope {
        None if tail_zero => Verdict::Holds,
        None => Verdict::Inconclusive,
        Some(s) if s >= lit(holds) => Verdict::Holds,
        Some(s) if s <= lit(fails) => Verdict::Fails,
        Some(_) => Verdict::Inconclusive,
    }
}

/// Partial sums of the four summability conditions on `|τ^k Φ_k(0) - a|` through `N`.
///
/// Verdicts come from the decay exponent of the weighted terms over the last
/// decade `[N/10, N]`; a finite sum can never prove convergence, so borderline
/// exponents are reported as inconclusive.
pub fn classify_conditions<T: Scalar>(
    seq: &ReflectionSequence<T>,
    a: Complex<T>,
    tau: Complex<T>,
    max_degree: usize,
) -> Result<ConditionReport<T>> {
    if max_degree < 10 {
        return Err(OpucError::OutOfRange("condition checks need N >= 10".into()));
    }
    defect(a)?;
    if (tau.norm() - T::one()).abs() > lit(1e-12) {
        return Err(OpucError::InvalidRotation {
            modulus: tau.norm().as_f64(),
        });
    }
    let terms: Vec<T> = (1..=max_degree as u64)
        .map(|k| Ok((pow_polar(tau, k) * seq.coeff_at(k)?.value() - a).norm()))
        .collect::<Result<_>>()?;
    let lo = max_degree / 10;
    let floor = T::epsilon() * lit(TAIL_NOISE_ULPS);
    let tail_zero = terms[lo.max(1) - 1..].iter().all(|t| *t <= floor);
    let weights: [(&str, fn(T) -> T); 4] = [
        ("summable", |_| T::one()),
        ("log_weighted", |k| k.ln()),
        ("first_moment_log", |k| k),
        ("first_moment", |k| k),
    ];
    let mut conditions = Vec::with_capacity(4);
    for (name, w) in weights {
        let weighted: Vec<T> = terms
            .iter()
            .enumerate()
            .map(|(i, t)| w(T::from_count(i as u64 + 1)) * *t)
            .collect();
        let mut acc = T::zero();
        let partial_sum: Vec<T> = weighted
            .iter()
            .enumerate()
            .map(|(i, t)| {
                acc += *t;
                if name == "first_moment_log" {
                    acc / (T::from_count(i as u64 + 2)).ln()
                } else {
                    acc
                }
            })
            .collect();
        let slope = if tail_zero {
            None
        } else {
            decay_exponent(&weighted, lo, max_degree)
        };
        let verdict = if name == "first_moment_log" {
            verdict_for(slope, LOG_GROWTH_HOLDS, LOG_GROWTH_FAILS, tail_zero)
        } else {
            verdict_for(slope, SUMMABLE_HOLDS, SUMMABLE_FAILS, tail_zero)
        };
        conditions.push(ConditionEntry {
            condition: name.to_string(),
            partial_sum,
            verdict,
            tail_slope: slope,
        });
    }
    Ok(ConditionReport {
        schema_version: 1,
        max_degree,
        conditions,
    })
}

/// `κ_N (1-|a|²)^{N/2}` and whether it has settled.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct KappaLimit<T: Scalar> {
    pub value: T,
    /// Relative change over the last ten degrees.
    pub rel_change: T,
    pub converged: bool,
}

pub const KAPPA_CONVERGENCE_TOL: f64 = 1e-6;

pub fn kappa_limit<T: Scalar>(
    seq: &ReflectionSequence<T>,
    a: Complex<T>,
    max_degree: u64,
) -> Result<KappaLimit<T>> {
    if max_degree < 10 {
        return Err(OpucError::OutOfRange("kappa limit needs N >= 10".into()));
    }
    let half_ld = defect(a)?.ln() * lit(0.5);
    let mut log_k = T::zero();
    let mut at_back = T::zero();
    for k in 1..=max_degree {
        log_k -= seq.coeff_at(k)?.log_defect() * lit(0.5);
        if k == max_degree - 10 {
            at_back = log_k + half_ld * T::from_count(k);
        }
    }
    let last = log_k + half_ld * T::from_count(max_degree);
    let rel_change = (last - at_back).exp_m1().abs();
    Ok(KappaLimit {
        value: last.exp(),
        rel_change,
        converged: rel_change < lit(KAPPA_CONVERGENCE_TOL),
    })
}

/// `S_n = 1 + Σ_{k<n} ‖E_{k+1}‖ ‖M̃_k‖` and its Gronwall-type majorant.
#[derive(Clone, Debug, Serialize)]
pub struct SnBound<T: Scalar> {
    /// `S_0, …, S_n`.
    pub s: Vec<T>,
    /// `S_1 exp(C₁* Σ_{k=2}^{n} min(k, v_α) ‖E_k‖)`.
    pub gronwall_cap: T,
    /// `max_k ‖M̃_{k-1}‖ / (S_{k-1} min(k, v_α))`, the constant that makes each step of the cap valid.
    pub c1_star: T,
    /// `log max|M̃_n| ≤ log C + C Σ ‖E_k‖` with `C = max_{m ≤ n} ‖M̂_m‖`.
    pub gronwall_holds: bool,
}

impl<T: Scalar> SnBound<T> {
    pub fn s_n(&self) -> T {
        *self.s.last().expect("S_0 always present")
    }
}

pub fn s_n_bound<T: Scalar>(
    seq: &ReflectionSequence<T>,
    a: Complex<T>,
    n: u64,
    theta: T,
) -> Result<SnBound<T>> {
    let arc = arc_from_a(a, real(T::one()))?;
    let v = v_alpha(theta, arc.alpha)?;
    let z = cis(theta);
    let coeffs = seq.coeffs(n as usize)?;
    let path = normalized_path(seq, a, n, z)?;
    let mut s = vec![T::one()];
    let mut c1 = T::zero();
    let mut weighted = T::zero();
    let mut e_sum = T::zero();
    let mut hat_sup = closed_matrix(a, 0, z)?.norm();
    let mut gronwall_holds = true;
    for k in 1..=n as usize {
        let e = e_matrix(&coeffs[k - 1], a, z)?.norm();
        let prev = s[k - 1];
        let mk = path[k - 1].norm();
        s.push(prev + e * mk);
        let w = v.min_with(T::from_count(k as u64));
        c1 = c1.max(mk / (prev * w));
        if k >= 2 {
            weighted += w * e;
        }
        e_sum += e;
        hat_sup = hat_sup.max(closed_matrix(a, k as u64, z)?.norm());
        let lhs = path[k].max_abs().ln();
        let rhs = hat_sup.ln() + hat_sup * e_sum;
        gronwall_holds &= lhs <= rhs * (T::one() + lit(1e-12));
    }
    let s1 = s.get(1).copied().unwrap_or(T::one());
    Ok(SnBound {
        gronwall_cap: s1 * (c1 * weighted).exp(),
        c1_star: c1,
        s,
        gronwall_holds,
    })
}

/// Angle set for [`sup_envelope`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Region<T: Scalar> {
    /// `[α, 2π - α]`, endpoints included.
    ClosedArc,
    /// `[α + ε, 2π - α - ε]`.
    Subarc(T),
}

/// Weight applied to `|φ_n|` before taking the supremum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnvelopeWeight {
    One,
    InvN,
    SqrtCosGap,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnvelopeSup<T: Scalar> {
    /// `max_θ w |φ_n(e^{iθ})|` for `n = 1..=N`.
    pub per_degree: Vec<T>,
    /// Supremum over `n ∈ [1, N/2]`.
    pub sup_lower: T,
    /// Supremum over `n ∈ [N/2, N]`.
    pub sup_upper: T,
    pub sup: T,
    /// `sup_upper ≤ 1.05 · sup_lower`.
    pub stable: bool,
}

pub fn sup_envelope<T: Scalar>(
    seq: &ReflectionSequence<T>,
    a: Complex<T>,
    region: Region<T>,
    max_degree: usize,
    weight: EnvelopeWeight,
    grid_points: usize,
) -> Result<EnvelopeSup<T>> {
    let arc: ArcSpec<T> = arc_from_a(a, real(T::one()))?;
    let grid = match region {
        Region::ClosedArc => arc.grid(T::zero(), grid_points),
        Region::Subarc(eps) => arc.grid(eps, grid_points),
    };
    let coeffs = seq.coeffs(max_degree)?;
    let mut per_degree = vec![T::zero(); max_degree];
    for &t in &grid {
        let gap_w = arc.cos_gap(t).sqrt();
        let mut s = SzegoState::initial(cis(t));
        for (i, c) in coeffs.iter().enumerate() {
            s = s.step(c)?;
            let w = match weight {
                EnvelopeWeight::One => T::one(),
                EnvelopeWeight::InvN => T::from_count(i as u64 + 1).recip(),
                EnvelopeWeight::SqrtCosGap => gap_w,
            };
            per_degree[i] = per_degree[i].max(w * s.phi.norm());
        }
    }
    let half = (max_degree / 2).max(1);
    let sup_lower = per_degree[..half].iter().fold(T::zero(), |m, v| m.max(*v));
    let sup_upper = per_degree[half - 1..].iter().fold(T::zero(), |m, v| m.max(*v));
    Ok(EnvelopeSup {
        sup: sup_lower.max(sup_upper),
        stable: sup_upper <= lit::<T>(STABILITY_FACTOR) * sup_lower,
        per_degree,
        sup_lower,
        sup_upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::SignPattern;

    type C = Complex<f64>;

    fn a() -> C {
        C::new(0.5, 0.0)
    }

    #[test]
    fn e_matrix_vanishes_on_the_constant() {
        let c = VerblunskyCoeff::new(a()).unwrap();
        assert_eq!(e_matrix(&c, a(), cis(1.0)).unwrap().max_abs(), 0.0);
        let c = VerblunskyCoeff::new(C::new(0.6, 0.0)).unwrap();
        let e = e_matrix(&c, a(), C::new(1.0, 0.0)).unwrap();
        let v = 0.1 / 0.75f64.sqrt();
        assert!((e.get(0, 1).re - v).abs() < 1e-15 && (e.get(1, 0).re - v).abs() < 1e-15);
    }

    #[test]
    fn constant_sequence_is_fixed_point() {
        let seq = ReflectionSequence::constant(a()).unwrap();
        for n in [0u64, 1, 7, 40] {
            let ci = comparison_identity(&seq, a(), n, cis(2.0)).unwrap();
            assert!(ci.lhs.max_diff(&Transfer2x2::sigma()) < 1e-10, "n={n}");
            assert!(ci.rhs.max_diff(&Transfer2x2::sigma()) == 0.0);
            let b = b_state(&seq, a(), n, cis(2.0)).unwrap();
            assert!(b.product.max_diff(&Transfer2x2::sigma()) == 0.0);
        }
        let k = kappa_limit(&seq, a(), 100).unwrap();
        assert!((k.value - 1.0).abs() < 1e-12 && k.converged);
        let sb = s_n_bound(&seq, a(), 50, 3.0).unwrap();
        assert!(sb.s.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn omega_closed_forms() {
        let r = omega_identities(a(), cis(2.5), 40).unwrap();
        assert!(r.power_residual < 1e-9 && r.inverse_power_residual < 1e-9);
        assert!(r.product_residual < 1e-10);
        let r0 = omega_identities(a(), cis(2.5), 0).unwrap();
        assert!(r0.product_residual < 1e-15);
    }

    #[test]
    fn condition_verdicts_for_power_decay() {
        let s2 = ReflectionSequence::perturbed(a(), 1.0, 2.0, SignPattern::Plain).unwrap();
        let r = classify_conditions(&s2, a(), C::new(1.0, 0.0), 4000).unwrap();
        let v: Vec<_> = r.conditions.iter().map(|c| c.verdict).collect();
        assert_eq!(v, [Verdict::Holds, Verdict::Holds, Verdict::Holds, Verdict::Fails]);
        let s3 = ReflectionSequence::perturbed(a(), 1.0, 3.0, SignPattern::Plain).unwrap();
        let r = classify_conditions(&s3, a(), C::new(1.0, 0.0), 4000).unwrap();
        assert!(r.conditions.iter().all(|c| c.verdict == Verdict::Holds));
        for c in &r.conditions {
            if c.condition != "first_moment_log" {
                assert!(c.partial_sum.windows(2).all(|w| w[1] >= w[0]));
            }
        }
    }
}
