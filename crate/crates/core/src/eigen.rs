//! Eigenvalues of a complex upper Hessenberg matrix by shifted QR with Givens rotations.

use num_complex::Complex;

use crate::error::{OpucError, Result};
use crate::scalar::{lit, real, Scalar};

/// Iterations allowed per eigenvalue before giving up.
const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Row-major dense square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense<T: Scalar> {
    pub n: usize,
    pub data: Vec<Complex<T>>,
}

impl<T: Scalar> Dense<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![real(T::zero()); n * n],
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<T>) {
        self.data[i * self.n + j] = v;
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.norm()))
    }
}

/// Rotation `G = (c s; -s̄ c)` with real `c` chosen so that `G (x, y)ᵀ = (r, 0)ᵀ`.
fn givens<T: Scalar>(x: Complex<T>, y: Complex<T>) -> (T, Complex<T>) {
    let ax = x.norm();
    let r = ax.hypot(y.norm());
    if r == T::zero() {
        return (T::one(), real(T::zero()));
    }
    if ax == T::zero() {
        return (T::zero(), real(T::one()));
    }
    let c = ax / r;
    let s = x.unscale(ax) * y.conj().unscale(r);
    (c, s)
}

/// Eigenvalue of the trailing 2×2 block `(a b; c d)` closer to `d`.
fn wilkinson<T: Scalar>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    let half = lit::<T>(0.5);
    let m = (a + d).scale(half);
    let disc = ((a - d).scale(half).powu(2) + b * c).sqrt();
    let l1 = m + disc;
    let l2 = m - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// All eigenvalues of an upper Hessenberg matrix (entries below the subdiagonal are ignored).
///
/// No balancing is applied, so the Hessenberg structure passed in is the one iterated on.
pub fn hessenberg_eigenvalues<T: Scalar>(h: &Dense<T>) -> Result<Vec<Complex<T>>> {
    let n = h.n;
    let mut a = h.clone();
    let mut eig = vec![real(T::zero()); n];
    if n == 0 {
        return Ok(eig);
    }
    let eps = T::epsilon();
    let scale = a.max_abs();
    let mut hi = n - 1;
    let mut its = 0usize;
    let mut total = 0usize;
    loop {
        if hi == 0 {
            eig[0] = a.get(0, 0);
            break;
        }
        // Find the start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = a.get(lo, lo - 1).norm();
            let mut diag = a.get(lo - 1, lo - 1).norm() + a.get(lo, lo).norm();
            if diag == T::zero() {
                diag = scale;
            }
            if sub <= eps * diag || sub <= T::min_positive_value() {
                a.set(lo, lo - 1, real(T::zero()));
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = a.get(hi, hi);
            hi -= 1;
            its = 0;
            continue;
        }
        its += 1;
        total += 1;
        if its > MAX_SWEEPS_PER_EIGENVALUE {
            let sub_min = (1..n).fold(T::infinity(), |m, i| m.min(a.get(i, i - 1).norm()));
            return Err(OpucError::Eigen {
                n,
                iterations: total,
                condition: (scale / sub_min.max(T::min_positive_value())).as_f64(),
            });
        }
        let mut shift = wilkinson(
            a.get(hi - 1, hi - 1),
            a.get(hi - 1, hi),
            a.get(hi, hi - 1),
            a.get(hi, hi),
        );
        if its.is_multiple_of(11) {
            // exceptional shift to break cycles
            shift = a.get(hi, hi) + real(a.get(hi, hi - 1).norm() * lit(0.75));
        }
        for i in lo..=hi {
            a.set(i, i, a.get(i, i) - shift);
        }
        let mut rots = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(a.get(k, k), a.get(k + 1, k));
            for j in k..=hi {
                let x = a.get(k, j);
                let y = a.get(k + 1, j);
                a.set(k, j, x.scale(c) + s * y);
                a.set(k + 1, j, y.scale(c) - s.conj() * x);
            }
            rots.push((c, s));
        }
        for (off, &(c, s)) in rots.iter().enumerate() {
            let k = lo + off;
            for i in lo..=(k + 1).min(hi) {
                let x = a.get(i, k);
                let y = a.get(i, k + 1);
                a.set(i, k, x.scale(c) + y * s.conj());
                a.set(i, k + 1, y.scale(c) - x * s);
            }
        }
        for i in lo..=hi {
            a.set(i, i, a.get(i, i) + shift);
        }
    }
    Ok(eig)
}
