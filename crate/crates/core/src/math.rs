//! Scalar activation and membership functions shared by both network variants.

use crate::error::{Error, Result};

/// Binary sigmoid `1 / (1 + e^-x)`.
///
/// Evaluated in the form that never exponentiates a large positive number,
/// so it saturates to 0 or 1 instead of overflowing.
#[inline]
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Sigmoid derivative expressed through the activation `f = sigmoid(x)`.
#[inline]
pub fn sigmoid_derivative_from_activation(f: f64) -> f64 {
    f * (1.0 - f)
}

/// Extremes `a < b` of the sloped region of the S-shaped membership function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SMembershipParams {
    a: f64,
    b: f64,
}

impl SMembershipParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidMembership { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    /// Membership degree of `x`, see [`s_membership`].
    pub fn degree(&self, x: f64) -> Result<f64> {
        s_membership(x, self)
    }
}

/// Spline-based S-shaped membership function.
///
/// ```text
///   0                       x < a
///   2((x-a)/(b-a))^2        a <= x <= (a+b)/2
///   1 - 2((x-b)/(b-a))^2    (a+b)/2 <= x <= b
///   1                       x > b
/// ```
pub fn s_membership(x: f64, p: &SMembershipParams) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFiniteInput(x));
    }
    let (a, b) = (p.a, p.b);
    let width = b - a;
    let value = if x <= a {
        0.0
    } else if x >= b {
        1.0
    } else if x == p.midpoint() {
        0.5
    } else if x < p.midpoint() {
        let r = (x - a) / width;
        (2.0 * r * r).min(0.5)
    } else {
        let r = (x - b) / width;
        (1.0 - 2.0 * r * r).max(0.5)
    };
    Ok(value)
}
