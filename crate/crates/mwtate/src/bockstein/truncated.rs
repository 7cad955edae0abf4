use serde::Serialize;

use crate::motives::{mod_two_power_eta, AtomicBlock, NormalForm};

use super::page::{pages, Page};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedFailure {
    pub page: u32,
    pub p: i64,
    pub q: i64,
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedReport {
    pub holds: bool,
    pub bidegrees_checked: usize,
    pub failures: Vec<TruncatedFailure>,
}

/// Rows and weights that can carry classes of `A` or `A/2ʲη`.
fn window(a: &NormalForm, j: u32) -> (std::ops::RangeInclusive<i64>, std::ops::RangeInclusive<i64>) {
    let weights: Vec<i64> = a
        .blocks()
        .iter()
        .map(|b| match *b {
            AtomicBlock::Free { weight } | AtomicBlock::DyadicEta { weight, .. } => weight,
            AtomicBlock::OddTorsion { shift, .. } => shift,
        })
        .collect();
    let lo = weights.iter().copied().min().unwrap_or(0);
    let hi = weights.iter().copied().max().unwrap_or(0);
    (lo - 2..=hi + 4, lo - 3..=hi + 2 * j as i64 + 8)
}

/// Checks the short exact sequence `0 → E_i^{*−2,*−1}(A) → E_i(A/2ʲη) → E_i(A) → 0` for
/// `2 ≤ i ≤ j + 1` dimensionwise, and at page `j + 2` the count
/// `dim E(A/2ʲη)^{P,Q} = dim coker(ρʲ into E^{P−2,Q−1}(A)) + dim ker(ρʲ out of E^{P,Q}(A))`.
pub fn truncated_check(a: &NormalForm, j: u32) -> TruncatedReport {
    assert!(j >= 1, "truncation exponent must be positive");
    let cone = mod_two_power_eta(a, j);
    let (rows, qs) = window(a, j);
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut record = |page: u32, p: i64, q: i64, expected: usize, found: usize| {
        checked += 1;
        if expected != found {
            failures.push(TruncatedFailure { page, p, q, expected, found });
        }
    };
    for i in 2..=j + 1 {
        let (ea, ec) = (pages(a, i).expect("i >= 2"), pages(&cone, i).expect("i >= 2"));
        for n in rows.clone() {
            for q in qs.clone() {
                let p = q + n;
                record(i, p, q, ea.dim_at(p, q) + ea.dim_at(p - 2, q - 1), ec.dim_at(p, q));
            }
        }
    }
    let i = j + 2;
    let (ea, ec) = (pages(a, i).expect("i >= 2"), pages(&cone, i).expect("i >= 2"));
    for n in rows {
        for q in qs.clone() {
            let p = q + n;
            record(i, p, q, les_count(&ea, p, q, j), ec.dim_at(p, q));
        }
    }
    TruncatedReport { holds: failures.is_empty(), bidegrees_checked: checked, failures }
}

fn les_count(ea: &Page, p: i64, q: i64, j: u32) -> usize {
    let jj = j as i64;
    let coker = ea.dim_at(p - 2, q - 1) - ea.rho_rank(p - 2 - jj, q - 1 - jj, j);
    let ker = ea.dim_at(p, q) - ea.rho_rank(p, q, j);
    coker + ker
}
