//! Finite commutative principal rings, described up to annihilating-ideal
//! graph isomorphism by the nilpotency orders of their chain-ring factors.
//!
//! A ring `R = R_1 x ... x R_n` with each `R_i` a local chain ring whose
//! radical `J_i` has nilpotency order `n_i` has exactly the ideals
//! `J_1^{m_1} x ... x J_n^{m_n}` with `0 <= m_i <= n_i`. Products and
//! annihilators act on the exponents, so the whole ideal lattice is encoded
//! by [`IdealVector`]s.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The tuple `(n_1, ..., n_n)` of nilpotency orders, in the caller's order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct RingSpec {
    orders: Vec<u32>,
}

/// An ideal `J_1^{m_1} x ... x J_n^{m_n}` stored as its exponents.
///
/// `m_i = 0` is the whole factor `R_i`, `m_i = n_i` is the zero ideal.
/// The derived `Ord` is lexicographic on the exponents, which is the global
/// vertex order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IdealVector {
    exps: Vec<u32>,
}

impl IdealVector {
    /// Unchecked constructor; validate against a spec with [`RingSpec::ideal`].
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }
}

impl fmt::Display for IdealVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, m) in self.exps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str(")")
    }
}

/// Parses an exponent tuple such as `0,1` or `(0,1)`. Zero entries are allowed.
impl FromStr for IdealVector {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let exps = split_tokens(inner)?
            .into_iter()
            .map(|tok| {
                let value: i64 = tok.parse().map_err(|_| Error::Parse {
                    token: tok.to_string(),
                    reason: "not an integer".into(),
                })?;
                u32::try_from(value).map_err(|_| Error::Parse {
                    token: tok.to_string(),
                    reason: "exponent must be a non-negative 32-bit integer".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { exps })
    }
}

fn split_tokens(text: &str) -> Result<Vec<&str>> {
    if text.trim().is_empty() {
        return Err(Error::Parse {
            token: text.to_string(),
            reason: "empty list".into(),
        });
    }
    Ok(text.split(',').map(str::trim).collect())
}

impl RingSpec {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Domain("a ring needs at least one factor".into()));
        }
        if orders.contains(&0) {
            return Err(Error::Domain("order must be ≥ 1".into()));
        }
        Ok(Self { orders })
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Number of local factors, i.e. maximal ideals.
    pub fn factor_count(&self) -> usize {
        self.orders.len()
    }

    /// Number of factors that are fields (`n_i = 1`).
    pub fn field_count(&self) -> usize {
        self.orders.iter().filter(|&&n| n == 1).count()
    }

    /// Total number of ideals, `prod(n_i + 1)`.
    pub fn ideal_count(&self) -> u128 {
        self.orders
            .iter()
            .try_fold(1u128, |acc, &n| acc.checked_mul(u128::from(n) + 1))
            .unwrap_or(u128::MAX)
    }

    /// Number of vertices of the annihilating-ideal graph, `prod(n_i + 1) - 2`.
    pub fn vertex_count(&self) -> u128 {
        self.ideal_count() - 2
    }

    /// Same spec with orders sorted descending; equal for isomorphic graphs.
    pub fn canonicalize(&self) -> RingSpec {
        let mut orders = self.orders.clone();
        orders.sort_unstable_by(|a, b| b.cmp(a));
        RingSpec { orders }
    }

    /// Validates `exps` as an ideal of this ring.
    pub fn ideal(&self, exps: Vec<u32>) -> Result<IdealVector> {
        let ideal = IdealVector::new(exps);
        self.check(&ideal)?;
        Ok(ideal)
    }

    pub fn check(&self, ideal: &IdealVector) -> Result<()> {
        if ideal.len() != self.orders.len() {
            return Err(Error::Domain(format!(
                "ideal {ideal} has {} components, ring has {} factors",
                ideal.len(),
                self.orders.len()
            )));
        }
        for (k, (&m, &n)) in ideal.exps.iter().zip(&self.orders).enumerate() {
            if m > n {
                return Err(Error::Domain(format!(
                    "component {} of {ideal} is {m}, above the nilpotency order {n}",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    /// `Ann(J^m) = J^{n-m}` in each chain-ring factor.
    pub fn annihilator(&self, ideal: &IdealVector) -> Result<IdealVector> {
        self.check(ideal)?;
        Ok(IdealVector::new(
            self.orders.iter().zip(&ideal.exps).map(|(n, m)| n - m).collect(),
        ))
    }

    /// Product of two ideals: exponents add, capped at the order.
    pub fn product(&self, a: &IdealVector, b: &IdealVector) -> Result<IdealVector> {
        self.check(a)?;
        self.check(b)?;
        Ok(IdealVector::new(
            self.orders
                .iter()
                .zip(a.exps.iter().zip(&b.exps))
                .map(|(&n, (&x, &y))| (x + y).min(n))
                .collect(),
        ))
    }

    pub fn is_zero_ideal(&self, ideal: &IdealVector) -> bool {
        ideal.exps == self.orders
    }

    /// A vertex is a nonzero ideal with a nonzero annihilator.
    pub fn is_vertex(&self, ideal: &IdealVector) -> Result<bool> {
        self.check(ideal)?;
        let nonzero = ideal.exps.iter().zip(&self.orders).any(|(m, n)| m < n);
        let has_annihilator = ideal.exps.iter().any(|&m| m > 0);
        Ok(nonzero && has_annihilator)
    }

    /// Explains why `ideal` is not a vertex, or `None` if it is one.
    pub fn non_vertex_reason(&self, ideal: &IdealVector) -> Result<Option<&'static str>> {
        self.check(ideal)?;
        if ideal.exps.iter().all(|&m| m == 0) {
            Ok(Some("the whole ring has zero annihilator"))
        } else if self.is_zero_ideal(ideal) {
            Ok(Some("the zero ideal is not a vertex"))
        } else {
            Ok(None)
        }
    }

    /// All vertices in lexicographic order.
    pub fn vertices(&self) -> Vec<IdealVector> {
        let total = self.ideal_count();
        let mut out = Vec::with_capacity(total.saturating_sub(2).min(1 << 20) as usize);
        let mut exps = vec![0u32; self.orders.len()];
        loop {
            // odometer increment, last component fastest
            let mut k = exps.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if exps[k] < self.orders[k] {
                    exps[k] += 1;
                    break;
                }
                exps[k] = 0;
            }
            if exps != self.orders {
                out.push(IdealVector::new(exps.clone()));
            }
        }
    }

    /// Position of `ideal` in [`RingSpec::vertices`], if it is a vertex.
    pub fn vertex_index(&self, ideal: &IdealVector) -> Option<usize> {
        if !self.is_vertex(ideal).ok()? {
            return None;
        }
        let rank = ideal
            .exps
            .iter()
            .zip(&self.orders)
            .fold(0u128, |acc, (&m, &n)| acc * (u128::from(n) + 1) + u128::from(m));
        usize::try_from(rank - 1).ok()
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.orders.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{n}")?;
        }
        Ok(())
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_spec(text)
    }
}

impl TryFrom<Vec<u32>> for RingSpec {
    type Error = Error;

    fn try_from(orders: Vec<u32>) -> Result<Self> {
        RingSpec::new(orders)
    }
}

impl From<RingSpec> for Vec<u32> {
    fn from(spec: RingSpec) -> Self {
        spec.orders
    }
}

/// Parses `order ("," order)*` with every order a decimal integer `>= 1`.
pub fn parse_spec(text: &str) -> Result<RingSpec> {
    let mut orders = Vec::new();
    for tok in split_tokens(text)? {
        let value: i64 = tok.parse().map_err(|_| Error::Parse {
            token: tok.to_string(),
            reason: "not an integer".into(),
        })?;
        if value < 1 {
            return Err(Error::Parse {
                token: tok.to_string(),
                reason: "order must be ≥ 1".into(),
            });
        }
        let order = u32::try_from(value).map_err(|_| Error::Parse {
            token: tok.to_string(),
            reason: "order does not fit in 32 bits".into(),
        })?;
        orders.push(order);
    }
    RingSpec::new(orders)
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut a = 0;
        while n.is_multiple_of(p) {
            *n /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
    };
    push(2, &mut n);
    let mut p = 3u64;
    while u128::from(p) * u128::from(p) <= u128::from(n) {
        push(p, &mut n);
        p += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Z/N` splits as `prod Z/p_i^{a_i}`; each factor is a chain ring of order `a_i`.
pub fn spec_from_modulus(modulus: u64) -> Result<RingSpec> {
    if modulus < 2 {
        return Err(Error::Domain(format!("modulus must be ≥ 2, got {modulus}")));
    }
    RingSpec::new(factorize(modulus).into_iter().map(|(_, a)| a).collect())
}
