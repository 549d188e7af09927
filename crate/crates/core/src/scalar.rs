//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use serde::Serialize;

/// Real floating-point type the library computes in: `f32` or `f64`.
///
/// Tolerances quoted throughout the docs and tests assume `f64`; the `f32`
/// instantiation compiles and runs but only meets single-precision versions
/// of them.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + LowerExp
    + Default
    + Serialize
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal into `Self`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_count(n: u64) -> Self {
        Self::from_u64(n).expect("count representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar converts to f64")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Shorthand for [`Scalar::lit`].
#[inline]
pub fn lit<T: Scalar>(x: f64) -> T {
    T::lit(x)
}

#[inline]
pub fn cplx<T: Scalar>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn real<T: Scalar>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// `e^{iθ}`.
#[inline]
pub fn cis<T: Scalar>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Angle of `z` mapped into `[0, 2π)`.
pub fn angle_0_2pi<T: Scalar>(z: Complex<T>) -> T {
    wrap_0_2pi(z.arg())
}

pub fn wrap_0_2pi<T: Scalar>(theta: T) -> T {
    let two_pi = T::TAU();
    let mut t = theta % two_pi;
    if t < T::zero() {
        t += two_pi;
    }
    if t >= two_pi {
        t -= two_pi;
    }
    t
}

/// `z^n` in polar form: modulus by repeated squaring, phase as `n·arg z`.
pub fn pow_polar<T: Scalar>(z: Complex<T>, n: u64) -> Complex<T> {
    if n == 0 {
        return Complex::new(T::one(), T::zero());
    }
    let r = z.norm();
    if r == T::zero() {
        return Complex::new(T::zero(), T::zero());
    }
    let modulus = powu(r, n);
    let phase = z.arg() * T::from_count(n);
    Complex::new(modulus * phase.cos(), modulus * phase.sin())
}

/// Real power by repeated squaring.
pub fn powu<T: Scalar>(x: T, mut n: u64) -> T {
    let mut base = x;
    let mut acc = T::one();
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

/// Neumaier-compensated accumulator for complex sums.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum<T: Scalar> {
    sum: Complex<T>,
    carry: Complex<T>,
}

impl<T: Scalar> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: Complex::new(T::zero(), T::zero()),
            carry: Complex::new(T::zero(), T::zero()),
        }
    }

    pub fn add(&mut self, x: Complex<T>) {
        self.sum.re = neumaier(self.sum.re, x.re, &mut self.carry.re);
        self.sum.im = neumaier(self.sum.im, x.im, &mut self.carry.im);
    }

    pub fn value(&self) -> Complex<T> {
        self.sum + self.carry
    }
}

fn neumaier<T: Scalar>(sum: T, x: T, carry: &mut T) -> T {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *carry += (sum - t) + x;
    } else {
        *carry += (x - t) + sum;
    }
    t
}
