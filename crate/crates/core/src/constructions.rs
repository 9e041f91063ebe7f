//! Explicit ideal families and the resolving sets built from them.
//!
//! Factor indices `s` are 1-based throughout, matching how rings are
//! usually written `R_1 x ... x R_n`.

use crate::error::{Error, Result};
use crate::ring::{IdealVector, RingSpec};

fn check_index(spec: &RingSpec, s: usize, k: u32) -> Result<u32> {
    let n = spec.factor_count();
    if s == 0 || s > n {
        return Err(Error::Domain(format!("factor index {s} outside 1..={n}")));
    }
    let order = spec.orders()[s - 1];
    if k >= order {
        return Err(Error::Domain(format!("exponent parameter {k} outside 0..={} for factor {s}", order - 1)));
    }
    Ok(order)
}

/// `I_{s,k}`: `J_s^k` in factor `s`, zero elsewhere.
pub fn ideal_i(spec: &RingSpec, s: usize, k: u32) -> Result<IdealVector> {
    check_index(spec, s, k)?;
    let mut exps = spec.orders().to_vec();
    exps[s - 1] = k;
    Ok(IdealVector::new(exps))
}

/// `L_{s,k}`: `J_s^{n_s - k}` in factor `s`, the whole ring elsewhere.
pub fn ideal_l(spec: &RingSpec, s: usize, k: u32) -> Result<IdealVector> {
    let order = check_index(spec, s, k)?;
    let mut exps = vec![0; spec.factor_count()];
    exps[s - 1] = order - k;
    Ok(IdealVector::new(exps))
}

fn i_family(spec: &RingSpec, s: usize, ks: std::ops::Range<u32>) -> impl Iterator<Item = IdealVector> + '_ {
    ks.map(move |k| ideal_i(spec, s, k).expect("in range"))
}

/// The resolving set realizing the upper bound for each case.
///
/// * one factor: `J, J^2, ..., J^{floor((n_1 - 1) / 2)}`
/// * two fields: `{I_{1,0}}`
/// * two factors, one a field: `I_{s,k}` for the non-field `s`, `k <= n_s - 2`
/// * two non-fields: `I_{s,k}` for `s in {1, 2}`, `k <= n_s - 2`
/// * three or more: every `I_{s,k}`
///
/// Output is sorted by `(s, k)`, or by ascending power in the local case.
pub fn constructed_resolving_set(spec: &RingSpec) -> Vec<IdealVector> {
    match spec.orders() {
        [n1] => (1..=(n1 - 1) / 2).map(|k| IdealVector::new(vec![k])).collect(),
        [1, 1] => vec![ideal_i(spec, 1, 0).expect("in range")],
        &[n1, n2] if n1 == 1 || n2 == 1 => {
            let (s, order) = if n2 == 1 { (1, n1) } else { (2, n2) };
            i_family(spec, s, 0..order - 1).collect()
        }
        &[n1, n2] => i_family(spec, 1, 0..n1 - 1).chain(i_family(spec, 2, 0..n2 - 1)).collect(),
        orders => orders
            .iter()
            .enumerate()
            .flat_map(|(i, &order)| i_family(spec, i + 1, 0..order))
            .collect(),
    }
}
