//! Hessenberg (GGT) truncations, their spectra, and support diagnostics.

use num_complex::Complex;
use serde::Serialize;

use crate::domain::{arc_from_a, ReflectionSequence, UnitCirclePoint};
use crate::eigen::{hessenberg_eigenvalues, Dense};
use crate::error::{OpucError, Result};
use crate::scalar::{angle_0_2pi, lit, real, Scalar};
use crate::szego::SzegoState;

/// Default cap on the truncation size.
pub const MAX_TRUNCATION: usize = 2000;

/// `N×N` leading block of the Hessenberg matrix of multiplication by `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct HessenbergTruncation<T: Scalar> {
    pub n: usize,
    pub entries: Dense<T>,
}

impl<T: Scalar> HessenbergTruncation<T> {
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.entries.get(i, j)
    }

    /// `Σ_i |u_ij|²` for column `j`.
    pub fn column_norm_sqr(&self, j: usize) -> T {
        (0..self.n).fold(T::zero(), |s, i| s + self.get(i, j).norm_sqr())
    }
}

/// `u_ij = -Φ_{j+1}(0) conj(Φ_i(0)) ∏_{k=i+1}^{j} ρ_k` for `i ≤ j`, `u_{j+1,j} = ρ_{j+1}`,
/// with `Φ_0(0) = 1`.
pub fn hessenberg<T: Scalar>(seq: &ReflectionSequence<T>, n: usize) -> Result<HessenbergTruncation<T>> {
    if n == 0 || n > MAX_TRUNCATION {
        return Err(OpucError::OutOfRange(format!(
            "truncation size must lie in 1..={MAX_TRUNCATION}, got {n}"
        )));
    }
    let coeffs = seq.coeffs(n)?;
    // phi[k] = Φ_k(0), rho[k] = ρ_k, index 0 reserved for Φ_0 = 1
    let mut phi = vec![real(T::one())];
    let mut rho = vec![T::one()];
    for c in &coeffs {
        phi.push(c.value());
        rho.push(c.rho());
    }
    let mut m = Dense::zeros(n);
    for j in 0..n {
        let mut prod = T::one();
        for i in (0..=j).rev() {
            m.set(i, j, -phi[j + 1] * phi[i].conj().scale(prod));
            prod *= rho[i];
        }
        if j + 1 < n {
            m.set(j + 1, j, real(rho[j + 1]));
        }
    }
    Ok(HessenbergTruncation { n, entries: m })
}

/// Sup-norm of the `j`-th diagonal (`j = -1` is the subdiagonal) and its product bound.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DiagonalNorm<T: Scalar> {
    pub j: i64,
    pub norm: T,
    /// `sup_i ∏_{k=i+1}^{i+j} ρ_k` (1 for `j ≤ 0`).
    pub bound: T,
}

pub fn diagonal_norms<T: Scalar>(
    seq: &ReflectionSequence<T>,
    n: usize,
    max_j: usize,
) -> Result<Vec<DiagonalNorm<T>>> {
    if max_j >= n {
        return Err(OpucError::OutOfRange(format!(
            "diagonal index {max_j} must be below the truncation size {n}"
        )));
    }
    let h = hessenberg(seq, n)?;
    let rho: Vec<T> = std::iter::once(T::one())
        .chain(seq.coeffs(n)?.iter().map(|c| c.rho()))
        .collect();
    let mut out = Vec::with_capacity(max_j + 2);
    out.push(DiagonalNorm {
        j: -1,
        norm: (0..n - 1).fold(T::zero(), |m, i| m.max(h.get(i + 1, i).norm())),
        bound: T::one(),
    });
    for j in 0..=max_j {
        let mut norm = T::zero();
        let mut bound = if j == 0 { T::one() } else { T::zero() };
        for i in 0..n - j {
            norm = norm.max(h.get(i, i + j).norm());
            if j > 0 {
                let p = rho[i + 1..=i + j].iter().fold(T::one(), |p, r| p * *r);
                bound = bound.max(p);
            }
        }
        out.push(DiagonalNorm {
            j: j as i64,
            norm,
            bound,
        });
    }
    Ok(out)
}

/// Zeros of the monic `Φ_N`, as eigenvalues of the `N×N` truncation.
pub fn truncation_zeros<T: Scalar>(seq: &ReflectionSequence<T>, n: usize) -> Result<Vec<Complex<T>>> {
    hessenberg_eigenvalues(&hessenberg(seq, n)?.entries)
}

/// Classification of the zeros of `Φ_N` relative to an arc.
#[derive(Clone, Debug, Serialize)]
pub struct SupportReport<T: Scalar> {
    pub schema_version: u32,
    #[serde(rename = "N")]
    pub n: usize,
    /// `[re, im]` pairs.
    pub zeros: Vec<[T; 2]>,
    /// Half-gap `α` of the reference arc, when one was given.
    pub alpha: Option<T>,
    /// Share of zeros whose argument lies within `tol` of the closed arc.
    pub coverage: Option<T>,
    /// Share of 20 equal bins of the arc that contain a zero argument.
    pub bin_fill: Option<T>,
    /// Arguments (in `[0, 2π)`) of zeros farther than `tol` from the arc.
    pub outliers: Vec<T>,
    /// Outliers with a counterpart among the outliers of `Φ_{N/2}` within [`PERSISTENCE_TOL`].
    pub persistent_outliers: Vec<T>,
    pub min_gap_to_circle: T,
    pub max_gap_to_circle: T,
    pub mean_gap_to_circle: T,
    pub max_modulus: T,
    pub all_inside: bool,
}

/// Argument distance below which an outlier at `N` and one at `N/2` count as the same point.
pub const PERSISTENCE_TOL: f64 = 1e-2;

fn circular_distance<T: Scalar>(a: T, b: T) -> T {
    let d = (a - b).abs() % T::TAU();
    d.min(T::TAU() - d)
}

fn outliers_of<T: Scalar>(args: &[T], alpha: T, tol: T) -> Vec<T> {
    args.iter()
        .copied()
        .filter(|&t| t < alpha - tol || t > T::TAU() - alpha + tol)
        .collect()
}

pub fn support_report<T: Scalar>(
    seq: &ReflectionSequence<T>,
    a: Option<Complex<T>>,
    n: usize,
    tol: T,
) -> Result<SupportReport<T>> {
    if n < 2 {
        return Err(OpucError::OutOfRange("support report needs N >= 2".into()));
    }
    let zeros = truncation_zeros(seq, n)?;
    let mut args: Vec<T> = zeros.iter().map(|z| angle_0_2pi(*z)).collect();
    args.sort_by(|x, y| x.partial_cmp(y).expect("finite arguments"));
    let gaps: Vec<T> = zeros.iter().map(|z| T::one() - z.norm()).collect();
    let max_modulus = zeros.iter().fold(T::zero(), |m, z| m.max(z.norm()));
    let mut report = SupportReport {
        schema_version: 1,
        n,
        zeros: zeros.iter().map(|z| [z.re, z.im]).collect(),
        alpha: None,
        coverage: None,
        bin_fill: None,
        outliers: Vec::new(),
        persistent_outliers: Vec::new(),
        min_gap_to_circle: gaps.iter().fold(T::infinity(), |m, g| m.min(*g)),
        max_gap_to_circle: gaps.iter().fold(T::neg_infinity(), |m, g| m.max(*g)),
        mean_gap_to_circle: gaps.iter().fold(T::zero(), |s, g| s + *g) / T::from_count(n as u64),
        max_modulus,
        all_inside: max_modulus < T::one(),
    };
    let Some(a) = a else {
        return Ok(report);
    };
    let arc = arc_from_a(a, real(T::one()))?;
    let alpha = arc.alpha;
    let outliers = outliers_of(&args, alpha, tol);
    let inside = args.len() - outliers.len();
    const BINS: usize = 20;
    let width = (T::TAU() - lit::<T>(2.0) * alpha) / T::from_count(BINS as u64);
    let mut filled = [false; BINS];
    for &t in &args {
        if t >= alpha && t <= T::TAU() - alpha {
            let b = ((t - alpha) / width).floor().to_usize().unwrap_or(0).min(BINS - 1);
            filled[b] = true;
        }
    }
    let half_zeros = truncation_zeros(seq, n / 2)?;
    let half_args: Vec<T> = half_zeros.iter().map(|z| angle_0_2pi(*z)).collect();
    let half_out = outliers_of(&half_args, alpha, tol);
    report.persistent_outliers = outliers
        .iter()
        .copied()
        .filter(|&t| {
            half_out
                .iter()
                .any(|&u| circular_distance(t, u) <= lit(PERSISTENCE_TOL))
        })
        .collect();
    report.alpha = Some(alpha);
    report.coverage = Some(T::from_count(inside as u64) / T::from_count(n as u64));
    report.bin_fill =
        Some(T::from_count(filled.iter().filter(|f| **f).count() as u64) / T::from_count(BINS as u64));
    report.outliers = outliers;
    Ok(report)
}

/// Tolerance used to decide that `|p_n|` has settled at 1 and that a sequence has converged.
pub const KREIN_TOL: f64 = 1e-2;
/// Running `max |Φ_n(0)|` above `1 - SINGULAR_MARGIN` flags a singular-type sequence.
pub const SINGULAR_MARGIN: f64 = 1e-3;

#[derive(Clone, Debug, Serialize)]
pub struct KreinReport<T: Scalar> {
    pub schema_version: u32,
    #[serde(rename = "N")]
    pub n: usize,
    /// `p_n = Φ_{n+1}(0) conj(Φ_n(0))` for `n = 1..N-1`.
    pub p: Vec<[T; 2]>,
    /// `-p_{N-1}` when `|p_n|` has settled near 1.
    pub tau_estimate: Option<[T; 2]>,
    /// `(1 + Φ_n)(1 - Φ_{n+1})` for real sequences.
    pub geronimus_condition: Option<Vec<T>>,
    pub singular: bool,
    /// `max_{N/2 ≤ n ≤ N} |Φ_n(0) - Φ_N(0)|`.
    pub tail_spread: T,
    pub coefficients_converge: bool,
}

pub fn krein_check<T: Scalar>(seq: &ReflectionSequence<T>, n: usize) -> Result<KreinReport<T>> {
    if n < 10 {
        return Err(OpucError::OutOfRange("krein check needs N >= 10".into()));
    }
    let vals = seq.values(n)?;
    let p: Vec<Complex<T>> = vals.windows(2).map(|w| w[1] * w[0].conj()).collect();
    let tol = lit::<T>(KREIN_TOL);
    let last = *p.last().expect("N >= 10");
    let mid = p[p.len() / 2];
    let settled = (last.norm() - T::one()).abs() <= tol && (last - mid).norm() <= tol;
    let real_seq = vals.iter().all(|v| v.im == T::zero());
    let geronimus_condition = real_seq.then(|| {
        vals.windows(2)
            .map(|w| (T::one() + w[0].re) * (T::one() - w[1].re))
            .collect()
    });
    let singular = seq
        .coeffs(n)?
        .iter()
        .any(|c| c.defect() < lit::<T>(2.0 * SINGULAR_MARGIN) || c.value().norm() > T::one() - lit(SINGULAR_MARGIN));
    let fin = vals[n - 1];
    let tail_spread = vals[n / 2..]
        .iter()
        .fold(T::zero(), |m, v| m.max((*v - fin).norm()));
    Ok(KreinReport {
        schema_version: 1,
        n,
        p: p.iter().map(|v| [v.re, v.im]).collect(),
        tau_estimate: settled.then(|| [-last.re, -last.im]),
        geronimus_condition,
        singular,
        coefficients_converge: tail_spread <= tol,
        tail_spread,
    })
}

/// Running Christoffel sums `Σ_{k≤n} |φ_k(z)|²` and the mass estimate at `z`.
///
/// At a mass point the forward recurrence follows the decaying mode only if `z`
/// is exact; otherwise rounding feeds the growing mode and the sums eventually
/// diverge, so the estimate is only reliable for exactly representable points.
#[derive(Clone, Debug, Serialize)]
pub struct ChristoffelReport<T: Scalar> {
    pub theta: T,
    pub partial_sums: Vec<T>,
    /// `1 / Σ_{k≤N}`, or 0 when the sum is still growing.
    pub mass_estimate: T,
    /// Relative change of the reciprocal over the last doubling of `N`.
    pub rel_change: T,
    pub converged: bool,
    pub diverging: bool,
}

pub const CHRISTOFFEL_CONVERGED: f64 = 1e-4;
pub const CHRISTOFFEL_DIVERGING: f64 = 1e-2;

pub fn christoffel_sum<T: Scalar>(
    seq: &ReflectionSequence<T>,
    z: UnitCirclePoint<T>,
    n: usize,
) -> Result<ChristoffelReport<T>> {
    if n < 2 {
        return Err(OpucError::OutOfRange("christoffel sum needs N >= 2".into()));
    }
    let mut s = SzegoState::initial(z.z);
    let mut acc = s.phi.norm_sqr();
    let mut partial_sums = Vec::with_capacity(n + 1);
    partial_sums.push(acc);
    for k in 1..=n as u64 {
        s = s.step(&seq.coeff_at(k)?)?;
        acc += s.phi.norm_sqr();
        partial_sums.push(acc);
    }
    let full = partial_sums[n];
    let half = partial_sums[n / 2];
    let rel_change = if full.is_finite() {
        (full - half) / full
    } else {
        T::infinity()
    };
    let diverging = rel_change > lit(CHRISTOFFEL_DIVERGING);
    Ok(ChristoffelReport {
        theta: z.theta,
        mass_estimate: if diverging { T::zero() } else { full.recip() },
        converged: rel_change < lit(CHRISTOFFEL_CONVERGED),
        rel_change,
        diverging,
        partial_sums,
    })
}
