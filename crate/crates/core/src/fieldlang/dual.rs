//! Forward-mode dual numbers.
//!
//! A `Dual` carries a value and the directional derivative of that value
//! along whatever direction was seeded into the variables. Arithmetic
//! propagates derivatives by the product, quotient, and chain rules exactly
//! (up to floating-point rounding). Domain checks live in the evaluator;
//! the operations here assume their arguments are in range.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::real::Real;

/// Value plus directional derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual<T> {
    pub value: T,
    pub derivative: T,
}

impl<T: Real> Dual<T> {
    pub fn new(value: T, derivative: T) -> Self {
        Self { value, derivative }
    }

    /// A constant: derivative zero.
    pub fn constant(value: T) -> Self {
        Self {
            value,
            derivative: T::zero(),
        }
    }

    pub fn sin(self) -> Self {
        Self::new(self.value.sin(), self.value.cos() * self.derivative)
    }

    pub fn cos(self) -> Self {
        Self::new(self.value.cos(), -self.value.sin() * self.derivative)
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        Self::new(e, e * self.derivative)
    }

    pub fn ln(self) -> Self {
        Self::new(self.value.ln(), self.derivative / self.value)
    }

    pub fn sqrt(self) -> Self {
        let r = self.value.sqrt();
        Self::new(r, self.derivative / (T::lit(2.0) * r))
    }

    pub fn tanh(self) -> Self {
        let t = self.value.tanh();
        Self::new(t, (T::one() - t * t) * self.derivative)
    }

    /// Absolute value with subgradient 0 at the origin.
    pub fn abs(self) -> Self {
        let s = if self.value > T::zero() {
            T::one()
        } else if self.value < T::zero() {
            -T::one()
        } else {
            T::zero()
        };
        Self::new(self.value.abs(), s * self.derivative)
    }

    /// Integer power, valid for any base.
    pub fn powi(self, n: i32) -> Self {
        let value = self.value.powi(n);
        let derivative = T::lit(n as f64) * self.value.powi(n - 1) * self.derivative;
        Self::new(value, derivative)
    }

    /// Real power with constant exponent; requires a positive base.
    pub fn powf_const(self, exponent: T) -> Self {
        let value = self.value.powf(exponent);
        let derivative = exponent * self.value.powf(exponent - T::one()) * self.derivative;
        Self::new(value, derivative)
    }

    /// General power `a^b` with varying exponent; requires a positive base.
    pub fn pow_general(self, exponent: Self) -> Self {
        let value = self.value.powf(exponent.value);
        let derivative = value
            * (exponent.derivative * self.value.ln()
                + exponent.value * self.derivative / self.value);
        Self::new(value, derivative)
    }

    pub fn is_finite(self) -> bool {
        self.value.is_finite() && self.derivative.is_finite()
    }
}

impl<T: Real> Add for Dual<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(self.value + rhs.value, self.derivative + rhs.derivative)
    }
}

impl<T: Real> Sub for Dual<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self::new(self.value - rhs.value, self.derivative - rhs.derivative)
    }
}

impl<T: Real> Mul for Dual<T> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.value * rhs.value,
            self.value * rhs.derivative + self.derivative * rhs.value,
        )
    }
}

impl<T: Real> Div for Dual<T> {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        Self::new(
            self.value / rhs.value,
            (self.derivative * rhs.value - self.value * rhs.derivative) / (rhs.value * rhs.value),
        )
    }
}

impl<T: Real> Neg for Dual<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.value, -self.derivative)
    }
}
