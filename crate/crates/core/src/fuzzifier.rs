//! Input fuzzification with per-attribute S-shaped membership functions and
//! nearest-class defuzzification of the scalar network output.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::math::{s_membership, SMembershipParams};

/// Membership degree reported for attributes that never vary in the fitted data.
pub const CONSTANT_MEMBERSHIP: f64 = 0.5;

/// How one attribute is mapped to a membership degree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AttributeMembership {
    Spline(SMembershipParams),
    /// Column had a single observed value.
    Constant(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzifierModel {
    attributes: Vec<AttributeMembership>,
}

impl FuzzifierModel {
    /// Fits `a` and `b` of every attribute to the column minimum and maximum.
    pub fn fit(rows: &[Vec<f64>]) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::EmptyData("cannot fit a fuzzifier to zero rows".into()))?;
        let n = first.len();
        if n == 0 {
            return Err(Error::EmptyData("cannot fit a fuzzifier to zero columns".into()));
        }
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: row.len() });
            }
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFiniteInput(x));
                }
                lo[j] = lo[j].min(x);
                hi[j] = hi[j].max(x);
            }
        }
        let attributes = lo
            .into_iter()
            .zip(hi)
            .map(|(a, b)| {
                if a < b {
                    SMembershipParams::new(a, b).map(AttributeMembership::Spline)
                } else {
                    Ok(AttributeMembership::Constant(a))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Self { attributes })
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn attributes(&self) -> &[AttributeMembership] {
        &self.attributes
    }

    /// Spline parameters of attribute `j`, `None` for a constant column.
    pub fn params(&self, j: usize) -> Option<SMembershipParams> {
        match self.attributes.get(j)? {
            AttributeMembership::Spline(p) => Some(*p),
            AttributeMembership::Constant(_) => None,
        }
    }

    pub fn constant_columns(&self) -> BTreeSet<usize> {
        self.attributes
            .iter()
            .enumerate()
            .filter(|(_, m)| matches!(m, AttributeMembership::Constant(_)))
            .map(|(j, _)| j)
            .collect()
    }

    pub fn fuzzify(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.attributes.len() {
            return Err(Error::DimensionMismatch { expected: self.attributes.len(), actual: x.len() });
        }
        x.iter()
            .zip(&self.attributes)
            .map(|(&xj, m)| match m {
                AttributeMembership::Spline(p) => s_membership(xj, p),
                AttributeMembership::Constant(_) if xj.is_finite() => Ok(CONSTANT_MEMBERSHIP),
                AttributeMembership::Constant(_) => Err(Error::NonFiniteInput(xj)),
            })
            .collect()
    }

    pub fn fuzzify_all(&self, rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
        rows.iter().map(|row| self.fuzzify(row)).collect()
    }
}

/// Maps a network output to the class whose encoded target is nearest,
/// breaking exact ties toward the lower class index.
///
/// Class `k` of `K` is encoded as `(k + 1) / (K + 1)`, so the nearest class is
/// `y * (K + 1) - 1` rounded half-down and clamped to `[0, K - 1]`.
pub fn defuzzify(y: f64, class_count: usize) -> usize {
    debug_assert!(class_count >= 1);
    let last = class_count.saturating_sub(1);
    let pos = y * (class_count as f64 + 1.0) - 1.0;
    let k = (pos - 0.5).ceil();
    if k.is_nan() || k <= 0.0 {
        0
    } else if k >= last as f64 {
        last
    } else {
        k as usize
    }
}
