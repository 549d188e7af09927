//! Complex 2×2 matrices used for transfer and comparison states.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use serde::Serialize;

use crate::scalar::{lit, real, Scalar};

/// A complex 2×2 matrix `[[m00, m01], [m10, m11]]`.
///
/// [`Transfer2x2::norm`] is the maximum absolute column sum; every bound in the
/// crate is stated in that norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Transfer2x2<T: Scalar> {
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Scalar> Transfer2x2<T> {
    pub fn new(m00: Complex<T>, m01: Complex<T>, m10: Complex<T>, m11: Complex<T>) -> Self {
        Self {
            m: [[m00, m01], [m10, m11]],
        }
    }

    pub fn zero() -> Self {
        let z = real(T::zero());
        Self::new(z, z, z, z)
    }

    pub fn identity() -> Self {
        let (o, z) = (real(T::one()), real(T::zero()));
        Self::new(o, z, z, o)
    }

    /// `(1 1; 1 -1)`, the initial comparison state.
    pub fn sigma() -> Self {
        let o = real(T::one());
        Self::new(o, o, o, -o)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.m[i][j]
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.norm() == T::zero() || !d.norm().is_finite() {
            return None;
        }
        let inv = d.inv();
        Some(Self::new(
            self.m[1][1] * inv,
            -self.m[0][1] * inv,
            -self.m[1][0] * inv,
            self.m[0][0] * inv,
        ))
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(
            self.m[0][0] * s,
            self.m[0][1] * s,
            self.m[1][0] * s,
            self.m[1][1] * s,
        )
    }

    pub fn scale_real(&self, s: T) -> Self {
        self.scale(real(s))
    }

    /// Maximum absolute column sum.
    pub fn norm(&self) -> T {
        let c0 = self.m[0][0].norm() + self.m[1][0].norm();
        let c1 = self.m[0][1].norm() + self.m[1][1].norm();
        c0.max(c1)
    }

    pub fn max_abs(&self) -> T {
        self.m
            .iter()
            .flatten()
            .fold(T::zero(), |acc, v| acc.max(v.norm()))
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    /// Entrywise difference normalized by `max(1, max entry of either side)`.
    pub fn rel_diff(&self, other: &Self) -> T {
        let scale = self.max_abs().max(other.max_abs()).max(T::one());
        self.max_diff(other) / scale
    }

    pub fn is_finite(&self) -> bool {
        self.m
            .iter()
            .flatten()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }

    /// `self^n` by repeated squaring.
    pub fn powu(&self, mut n: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::identity();
        while n > 0 {
            if n & 1 == 1 {
                acc = base * acc;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    pub fn half(&self) -> Self {
        self.scale_real(lit(0.5))
    }
}

impl<T: Scalar> Mul for Transfer2x2<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl<T: Scalar> Add for Transfer2x2<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.m[0][0] + rhs.m[0][0],
            self.m[0][1] + rhs.m[0][1],
            self.m[1][0] + rhs.m[1][0],
            self.m[1][1] + rhs.m[1][1],
        )
    }
}

impl<T: Scalar> Sub for Transfer2x2<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(
            self.m[0][0] - rhs.m[0][0],
            self.m[0][1] - rhs.m[0][1],
            self.m[1][0] - rhs.m[1][0],
            self.m[1][1] - rhs.m[1][1],
        )
    }
}
