//! Measure-side ground truth: moments by quadrature, reflection coefficients by
//! orthogonalization, and measure recovery from polynomial values.

use std::fmt;
use std::io::{Read, Write};
use std::sync::Arc;

use num_complex::Complex;
use serde::Serialize;

use crate::domain::{ArcSpec, ReflectionSequence, VerblunskyCoeff};
use crate::error::{OpucError, Result};
use crate::examples::ArcMeasureParams;
use crate::geronimus::mu_a_spec;
use crate::quadrature::{integrate, integrate_endpoints, QuadratureRule};
use crate::scalar::{cis, lit, real, wrap_0_2pi, CompensatedSum, Scalar};
use crate::szego::{path_from_coeffs, SzegoState};

/// Largest tolerated `|μ(𝕋) - 1|`.
pub const MASS_TOL: f64 = 1e-8;
/// Smallest accepted pivot `⟨Φ_k, Φ_k⟩` during orthogonalization.
pub const PIVOT_TOL: f64 = 1e-12;
/// Largest accepted quadrature error estimate for a moment.
pub const MOMENT_TOL: f64 = 1e-10;

type Density<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// One integration piece `[lo, hi]` with the density's local exponents at the ends.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Piece<T: Scalar> {
    pub lo: T,
    pub hi: T,
    pub e_lo: Option<T>,
    pub e_hi: Option<T>,
}

/// A probability measure on the circle: density over pieces plus point masses.
#[derive(Clone)]
pub struct MeasureSpec<T: Scalar> {
    density: Option<Density<T>>,
    pieces: Vec<Piece<T>>,
    point_masses: Vec<(T, T)>,
    pub rule: QuadratureRule,
    label: String,
}

impl<T: Scalar> fmt::Debug for MeasureSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MeasureSpec")
            .field("label", &self.label)
            .field("pieces", &self.pieces)
            .field("point_masses", &self.point_masses)
            .finish()
    }
}

impl<T: Scalar> MeasureSpec<T> {
    /// Arbitrary density on the given pieces plus point masses `(θ, mass)`.
    pub fn custom(
        label: impl Into<String>,
        density: impl Fn(T) -> T + Send + Sync + 'static,
        pieces: Vec<Piece<T>>,
        point_masses: Vec<(T, T)>,
    ) -> Result<Self> {
        for &(_, m) in &point_masses {
            if !(m >= T::zero()) {
                return Err(OpucError::OutOfRange(format!("negative point mass {m}")));
            }
        }
        Ok(Self {
            density: Some(Arc::new(density)),
            pieces,
            point_masses,
            rule: QuadratureRule::default(),
            label: label.into(),
        })
    }

    /// `dθ/2π`.
    pub fn lebesgue() -> Self {
        Self {
            density: Some(Arc::new(|_| T::one() / T::TAU())),
            pieces: vec![Piece {
                lo: T::zero(),
                hi: T::TAU(),
                e_lo: None,
                e_hi: None,
            }],
            point_masses: Vec::new(),
            rule: QuadratureRule::default(),
            label: "lebesgue".into(),
        }
    }

    /// Unit mass at `e^{iθ}`.
    pub fn point_mass(theta: T) -> Self {
        Self {
            density: None,
            pieces: Vec::new(),
            point_masses: vec![(wrap_0_2pi(theta), T::one())],
            rule: QuadratureRule::default(),
            label: format!("mass(theta={theta})"),
        }
    }

    /// Orthogonality measure of the constant sequence `a`.
    pub fn geronimus(a: Complex<T>) -> Result<Self> {
        let m = mu_a_spec(a)?;
        let alpha = m.alpha;
        let masses = if m.has_mass_point() {
            vec![(m.beta, m.j_beta)]
        } else {
            Vec::new()
        };
        let half = Some(lit::<T>(0.5));
        let label = format!("geronimus(a={a})");
        let mm = m.clone();
        Ok(Self {
            density: Some(Arc::new(move |t| mm.density(t))),
            pieces: vec![Piece {
                lo: alpha,
                hi: T::TAU() - alpha,
                e_lo: half,
                e_hi: half,
            }],
            point_masses: masses,
            rule: QuadratureRule::default(),
            label,
        })
    }

    /// The Jacobi-type arc weight, normalized.
    pub fn example17(p: ArcMeasureParams<T>) -> Result<Self> {
        let c = p.normalization()?;
        let pts = p.singular_points();
        let pieces = pts
            .windows(2)
            .map(|w| Piece {
                lo: w[0].0,
                hi: w[1].0,
                e_lo: Some(w[0].1),
                e_hi: Some(w[1].1),
            })
            .collect();
        let label = format!(
            "example17(alpha={}, gamma={}, delta={})",
            p.alpha, p.gamma, p.delta
        );
        Ok(Self {
            density: Some(Arc::new(move |t| c * p.raw_weight(t))),
            pieces,
            point_masses: Vec::new(),
            rule: QuadratureRule::default(),
            label,
        })
    }

    pub fn with_rule(mut self, rule: QuadratureRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn point_masses(&self) -> &[(T, T)] {
        &self.point_masses
    }

    pub fn density_at(&self, theta: T) -> T {
        self.density
            .as_ref()
            .map_or(T::zero(), |d| d(wrap_0_2pi(theta)))
    }

    /// `∫ f dμ_ac` over all pieces, with quadrature failures surfaced.
    pub fn integrate_ac(&self, f: impl Fn(T) -> Complex<T>) -> Result<Complex<T>> {
        let Some(d) = &self.density else {
            return Ok(real(T::zero()));
        };
        let mut sum = CompensatedSum::new();
        for p in &self.pieces {
            let r = integrate_endpoints(|t| f(t).scale(d(t)), p.lo, p.hi, p.e_lo, p.e_hi, &self.rule)?;
            if r.error > lit(MOMENT_TOL) {
                return Err(OpucError::Accuracy {
                    estimate: r.error.as_f64(),
                    tolerance: MOMENT_TOL,
                    panels: r.panels,
                    lo: p.lo.as_f64(),
                    hi: p.hi.as_f64(),
                });
            }
            sum.add(r.value);
        }
        Ok(sum.value())
    }

    pub fn total_mass(&self) -> Result<T> {
        let ac = self.integrate_ac(|_| real(T::one()))?.re;
        Ok(ac + self.point_masses.iter().fold(T::zero(), |s, &(_, m)| s + m))
    }
}

/// Trigonometric moments `c_k = ∫ e^{-ikθ} dμ`, stored for `k = 0..=K`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrigMoments<T: Scalar> {
    pub order: usize,
    c: Vec<Complex<T>>,
}

impl<T: Scalar> TrigMoments<T> {
    /// From `c_0..c_K`; `c_0` must be 1 within [`MASS_TOL`] and is then set to exactly 1.
    pub fn from_nonnegative(mut c: Vec<Complex<T>>) -> Result<Self> {
        let Some(c0) = c.first().copied() else {
            return Err(OpucError::OutOfRange("empty moment table".into()));
        };
        if (c0 - real(T::one())).norm() > lit(MASS_TOL) {
            return Err(OpucError::Domain(format!(
                "total mass c_0 = {c0} differs from 1"
            )));
        }
        c[0] = real(T::one());
        Ok(Self {
            order: c.len() - 1,
            c,
        })
    }

    /// `c_k` for any `|k| ≤ K`; negative indices by Hermitian symmetry.
    pub fn get(&self, k: i64) -> Complex<T> {
        let v = self.c[k.unsigned_abs() as usize];
        if k < 0 {
            v.conj()
        } else {
            v
        }
    }

    pub fn nonnegative(&self) -> &[Complex<T>] {
        &self.c
    }

    /// CSV table `k,re,im` for `k = -K..=K`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(["k", "re", "im"])?;
        let k = self.order as i64;
        for i in -k..=k {
            let v = self.get(i);
            wr.write_record([
                i.to_string(),
                format!("{:.16e}", v.re),
                format!("{:.16e}", v.im),
            ])?;
        }
        wr.flush()?;
        Ok(())
    }

    /// Reads a `k,re,im` table; rows with `k < 0` must be conjugates of their mirror.
    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let headers = rd.headers()?.clone();
        if headers.iter().map(str::trim).collect::<Vec<_>>() != ["k", "re", "im"] {
            return Err(OpucError::Parse {
                spec: headers.iter().collect::<Vec<_>>().join(","),
                reason: "expected header `k,re,im`".into(),
            });
        }
        let mut rows: Vec<(i64, Complex<T>)> = Vec::new();
        for rec in rd.records() {
            let rec = rec?;
            let field = |i: usize| rec.get(i).unwrap_or("").trim().to_string();
            let bad = |s: &str| OpucError::Parse {
                spec: s.to_string(),
                reason: "not a number".into(),
            };
            let k: i64 = field(0).parse().map_err(|_| bad(&field(0)))?;
            let re: f64 = field(1).parse().map_err(|_| bad(&field(1)))?;
            let im: f64 = field(2).parse().map_err(|_| bad(&field(2)))?;
            rows.push((k, Complex::new(lit(re), lit(im))));
        }
        let order = rows.iter().map(|(k, _)| k.unsigned_abs()).max().unwrap_or(0) as usize;
        let mut c = vec![None; order + 1];
        for &(k, v) in rows.iter().filter(|(k, _)| *k >= 0) {
            c[k as usize] = Some(v);
        }
        let c: Vec<Complex<T>> = c
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                v.ok_or_else(|| OpucError::Parse {
                    spec: format!("k={k}"),
                    reason: "missing moment".into(),
                })
            })
            .collect::<Result<_>>()?;
        for &(k, v) in rows.iter().filter(|(k, _)| *k < 0) {
            let mirror = c[k.unsigned_abs() as usize];
            if (mirror.conj() - v).norm() > lit::<T>(1e-12) * mirror.norm().max(T::one()) {
                return Err(OpucError::Domain(format!(
                    "moment table is not Hermitian at k = {k}"
                )));
            }
        }
        Self::from_nonnegative(c)
    }
}

/// `c_k` for `k = 0..=K`: quadrature over the density plus exact point-mass terms.
pub fn trig_moments<T: Scalar>(m: &MeasureSpec<T>, order: usize) -> Result<TrigMoments<T>> {
    let mut c = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let kf = T::from_count(k as u64);
        let mut v = m.integrate_ac(|t| cis(-kf * t))?;
        for &(theta, mass) in &m.point_masses {
            v += cis(-kf * theta).scale(mass);
        }
        c.push(v);
    }
    TrigMoments::from_nonnegative(c)
}

/// Output of [`verblunsky_from_moments`].
#[derive(Clone, Debug, Serialize)]
pub struct MomentInversion<T: Scalar> {
    pub coeffs: Vec<VerblunskyCoeff<T>>,
    /// `κ_k = ⟨Φ_k, Φ_k⟩^{-1/2}` for `k = 0..=n`.
    pub kappas: Vec<T>,
}

impl<T: Scalar> MomentInversion<T> {
    pub fn values(&self) -> Vec<Complex<T>> {
        self.coeffs.iter().map(|c| c.value()).collect()
    }

    pub fn kappa(&self) -> T {
        *self.kappas.last().expect("kappa_0 always present")
    }
}

/// `⟨f, g⟩ = Σ f_i conj(g_j) c_{j-i}` for ascending coefficient vectors.
fn inner<T: Scalar>(mom: &TrigMoments<T>, f: &[Complex<T>], g: &[Complex<T>]) -> Complex<T> {
    let mut s = CompensatedSum::new();
    for (i, &fi) in f.iter().enumerate() {
        for (j, &gj) in g.iter().enumerate() {
            s.add(fi * gj.conj() * mom.get(j as i64 - i as i64));
        }
    }
    s.value()
}

/// Monic orthogonal polynomials by Gram–Schmidt (with one re-orthogonalization pass)
/// under the moment inner product; `Φ_k(0)` are their constant terms.
pub fn verblunsky_from_moments<T: Scalar>(
    mom: &TrigMoments<T>,
    n: usize,
) -> Result<MomentInversion<T>> {
    if n > mom.order {
        return Err(OpucError::OutOfRange(format!(
            "{n} coefficients need moments through order {n}, table has {}",
            mom.order
        )));
    }
    let zero = real(T::zero());
    let mut basis: Vec<Vec<Complex<T>>> = vec![vec![real(T::one())]];
    let mut norms = vec![T::one()];
    let mut coeffs = Vec::with_capacity(n);
    for k in 1..=n {
        let mut p = vec![zero; k + 1];
        p[k] = real(T::one());
        for _pass in 0..2 {
            for (q, &nq) in basis.iter().zip(&norms) {
                let proj = inner(mom, &p, q).unscale(nq);
                for (pi, &qi) in p.iter_mut().zip(q) {
                    *pi -= proj * qi;
                }
            }
        }
        let pivot = inner(mom, &p, &p).re;
        if !(pivot > lit(PIVOT_TOL)) {
            return Err(OpucError::Rank {
                order: k,
                pivot: pivot.as_f64(),
            });
        }
        let prev = norms[k - 1];
        // 1 - |Φ_k(0)|² = ⟨Φ_k,Φ_k⟩ / ⟨Φ_{k-1},Φ_{k-1}⟩
        let ld = (pivot / prev).min(T::one()).ln();
        coeffs.push(VerblunskyCoeff::with_log_defect(p[0], ld)?);
        basis.push(p);
        norms.push(pivot);
    }
    Ok(MomentInversion {
        coeffs,
        kappas: norms.iter().map(|&v| v.sqrt().recip()).collect(),
    })
}

/// `(1/2π) ∫_{θ₁}^{θ₂} |φ_n(e^{iθ})|^{-2} dθ`.
pub fn reconstruct_arc_mass<T: Scalar>(
    seq: &ReflectionSequence<T>,
    subarc: (T, T),
    n: usize,
) -> Result<T> {
    let (t1, t2) = subarc;
    if n == 0 || !(t1 < t2) {
        return Err(OpucError::OutOfRange(
            "reconstruction needs n >= 1 and theta1 < theta2".into(),
        ));
    }
    let coeffs = seq.coeffs(n)?;
    let f = |t: T| -> Complex<T> {
        let mut s = SzegoState::initial(cis(t));
        for c in &coeffs {
            s = s.step(c).expect("coefficients validated by the sequence");
        }
        real(s.phi.norm_sqr().recip())
    };
    let rule = QuadratureRule::with_tol(1e-9, 1e-9).with_budget(40_000);
    let r = integrate(f, t1, t2, &rule)?;
    Ok(r.value.re / T::TAU())
}

/// Lower bounds `1/(2π max_{N/2 ≤ n ≤ N} |φ_n(e^{iθ})|²)` on a grid.
#[derive(Clone, Debug, Serialize)]
pub struct DensityFloor<T: Scalar> {
    pub window: (usize, usize),
    pub theta: Vec<T>,
    pub floor: Vec<T>,
}

impl<T: Scalar> DensityFloor<T> {
    /// Largest `D` with `floor(θ) ≥ D |cos α - cos θ|^{power}` on the grid.
    pub fn fit_constant(&self, arc: &ArcSpec<T>, power: T) -> T {
        self.theta
            .iter()
            .zip(&self.floor)
            .filter(|(t, _)| arc.cos_gap(**t) > T::zero())
            .fold(T::infinity(), |d, (t, f)| d.min(*f / arc.cos_gap(*t).powf(power)))
    }
}

pub fn mu_prime_floor<T: Scalar>(
    seq: &ReflectionSequence<T>,
    grid: &[T],
    max_degree: usize,
) -> Result<DensityFloor<T>> {
    let lo = max_degree / 2;
    let coeffs = seq.coeffs(max_degree)?;
    let mut floor = Vec::with_capacity(grid.len());
    for &t in grid {
        let path = path_from_coeffs(&coeffs, cis(t))?;
        let peak = path[lo..]
            .iter()
            .fold(T::zero(), |m, s| m.max(s.phi.norm_sqr()));
        floor.push((T::TAU() * peak).recip());
    }
    Ok(DensityFloor {
        window: (lo, max_degree),
        theta: grid.to_vec(),
        floor,
    })
}
