//! Closed-form values and bounds for the metric dimension of `AG(R)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::RingSpec;

/// Which regime the ring falls in, by number of maximal ideals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    /// One maximal ideal.
    Local,
    /// Two maximal ideals.
    TwoMaximal,
    /// Three or more.
    General,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Local => "Local",
            Case::TwoMaximal => "TwoMaximal",
            Case::General => "General",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimBounds {
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
    pub case: Case,
    pub epsilon: u64,
    pub beta: u64,
}

/// `ceil(log2(beta))` for `beta >= 1`, and 0 for `beta = 0`, in integer arithmetic.
pub fn epsilon_general(beta: i64) -> Result<u64> {
    if beta < 0 {
        return Err(Error::Domain(format!("field count must be ≥ 0, got {beta}")));
    }
    if beta <= 1 {
        return Ok(0);
    }
    // bit length of beta - 1
    Ok(u64::from(64 - (beta as u64 - 1).leading_zeros()))
}

pub fn dim_bounds(spec: &RingSpec) -> DimBounds {
    let orders = spec.orders();
    let beta = spec.field_count() as u64;
    let sum: u64 = orders.iter().map(|&n| u64::from(n)).sum();
    let n = orders.len() as u64;
    let exact = |value: u64, case: Case, epsilon: u64| DimBounds {
        lower: value,
        upper: value,
        exact: Some(value),
        case,
        epsilon,
        beta,
    };
    match orders {
        [n1] => exact((u64::from(*n1) - 1) / 2, Case::Local, 0),
        [1, 1] => exact(1, Case::TwoMaximal, 1),
        [_, _] => exact(sum - 2, Case::TwoMaximal, 0),
        _ => {
            let epsilon = epsilon_general(beta as i64).expect("non-negative");
            let lower = sum - n + epsilon;
            DimBounds {
                lower,
                upper: sum,
                exact: (lower == sum).then_some(sum),
                case: Case::General,
                epsilon,
                beta,
            }
        }
    }
}
