//! Forward-mode dual numbers.
//!
//! The evaluator is generic over [`Scalar`], so plain and dual evaluation run
//! the same arithmetic in the same order and their value parts agree bit for
//! bit.

use core::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic the evaluator needs.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn constant(v: f64) -> Self;
    fn value(self) -> f64;
    fn exp(self) -> Self;
    /// Integer power by repeated multiplication.
    fn powi(self, p: u32) -> Self {
        let mut acc = Self::constant(1.0);
        for _ in 0..p {
            acc = acc * self;
        }
        acc
    }
    fn max(self, other: Self) -> Self;
}

impl Scalar for f64 {
    fn constant(v: f64) -> Self {
        v
    }
    fn value(self) -> f64 {
        self
    }
    fn exp(self) -> Self {
        libm::exp(self)
    }
    fn max(self, other: Self) -> Self {
        if other > self { other } else { self }
    }
}

/// `v + d·ε` with ε² = 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn new(v: f64, d: f64) -> Self {
        Self { v, d }
    }
}

impl Add for Dual {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.v + o.v, self.d + o.d)
    }
}

impl Sub for Dual {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.v - o.v, self.d - o.d)
    }
}

impl Mul for Dual {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual::new(self.v * o.v, self.d * o.v + self.v * o.d)
    }
}

impl Div for Dual {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Dual::new(self.v / o.v, (self.d * o.v - self.v * o.d) / (o.v * o.v))
    }
}

impl Neg for Dual {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.v, -self.d)
    }
}

impl Scalar for Dual {
    fn constant(v: f64) -> Self {
        Dual::new(v, 0.0)
    }
    fn value(self) -> f64 {
        self.v
    }
    fn exp(self) -> Self {
        let e = libm::exp(self.v);
        Dual::new(e, e * self.d)
    }
    /// On a value tie the tangent is the larger one: that is the one-sided
    /// directional derivative of max in the seeded direction.
    fn max(self, other: Self) -> Self {
        if other.v > self.v {
            other
        } else if self.v > other.v {
            self
        } else {
            Dual::new(self.v, if other.d > self.d { other.d } else { self.d })
        }
    }
}
