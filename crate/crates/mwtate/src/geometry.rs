//! Geometric inputs: rank-`n` bundles on `HP¹`, projective bundles over `HP¹`, and blow-ups.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::cohomology::witt_integral;
use crate::motives::{
    cone_eta_map, decompose, tensor, twist, AtomicBlock, Attachment, Cell, MotiveError, NormalForm, TateComplex,
    Violation,
};
use crate::wittring::{kx_orbit_canonical, GWElement, WittError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("bundle rank {0} is below 2")]
    RankTooSmall(u32),
    #[error(transparent)]
    InvalidParity(#[from] WittError),
    #[error("rank 2 needs an Euler class in GW, higher ranks an integer c2")]
    DatumMismatch,
    #[error("codimension {0} is not a positive even integer")]
    OddCodimension(i64),
    #[error("Gysin entry {from} -> {to} does not join adjacent weights")]
    IllegalGysinEntry { from: String, to: String },
    #[error("the blow-up cone is not a complex: {0:?}")]
    NonComposableResult(Vec<Violation>),
    #[error(transparent)]
    Motive(MotiveError),
}

impl From<MotiveError> for GeometryError {
    fn from(e: MotiveError) -> Self {
        match e {
            MotiveError::IllegalEntry { from, to } => GeometryError::IllegalGysinEntry { from, to },
            MotiveError::NonComposableResult(v) => GeometryError::NonComposableResult(v),
            other => GeometryError::Motive(other),
        }
    }
}

/// The classifying datum of a bundle on `HP¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hp1Datum {
    /// Euler class in `GW(k)`, for rank 2.
    Euler(GWElement),
    /// Second Chern class, for rank at least 3.
    C2(BigInt),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hp1BundleClass {
    pub rank: u32,
    /// Canonical `k^×`-orbit representative of the Euler class (rank 2 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler: Option<GWElement>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_bigint")]
    pub c2: Option<BigInt>,
    pub is_free: bool,
    pub stably_free_nontrivial: bool,
}

mod opt_bigint {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => crate::json::serialize(x, s),
            None => s.serialize_none(),
        }
    }
}

pub fn hp1_classify(n: u32, datum: &Hp1Datum) -> Result<Hp1BundleClass, GeometryError> {
    if n < 2 {
        return Err(GeometryError::RankTooSmall(n));
    }
    match (n, datum) {
        (2, Hp1Datum::Euler(e)) => {
            let rep = kx_orbit_canonical(e)?;
            let is_free = rep.rank().is_zero() && rep.signature().is_zero();
            let stably_free_nontrivial = rep.rank().is_zero() && !rep.signature().is_zero();
            Ok(Hp1BundleClass { rank: 2, euler: Some(rep), c2: None, is_free, stably_free_nontrivial })
        }
        (n, Hp1Datum::C2(c)) if n >= 3 => Ok(Hp1BundleClass {
            rank: n,
            euler: None,
            c2: Some(c.clone()),
            is_free: c.is_zero(),
            stably_free_nontrivial: false,
        }),
        _ => Err(GeometryError::DatumMismatch),
    }
}

/// `P(E)` for a rank-2 bundle on `HP¹` with Euler class `e`: cells of weight `0..=3` and
/// `signature(e)·η` from the weight-2 cell to the weight-1 cell.
pub fn projective_bundle_hp1(e: &GWElement) -> Result<TateComplex, GeometryError> {
    e.validate()?;
    let s = e.signature();
    let attach = if s.is_zero() { vec![] } else { vec![Attachment::new("x2", "x1", s.clone())] };
    Ok(TateComplex::new(&[("x0", 0), ("x1", 1), ("x2", 2), ("x3", 3)], attach))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupMotive {
    pub total: NormalForm,
    /// The decomposed cone of the Gysin `η`-map.
    pub cone_part: NormalForm,
    /// `⊕ ℤ(Z)/η(2i−1)[4i−2]` for `1 ≤ i < n/2`.
    pub eta_terms: NormalForm,
}

fn fresh_id(id: &str, taken: &BTreeSet<String>) -> String {
    let mut candidate = format!("th.{id}");
    while taken.contains(&candidate) {
        candidate = format!("th.{candidate}");
    }
    candidate
}

/// Assembles the blow-up of `X` along `Z` of codimension `n` from the Thom complex `th` and the
/// Gysin coefficients `g` (from `X`-cells of weight `u` to `th`-cells of weight `u − n + 1`).
pub fn blowup_motive(
    x: &TateComplex,
    z: &NormalForm,
    n: i64,
    th: &TateComplex,
    g: &[Attachment],
) -> Result<BlowupMotive, GeometryError> {
    if n < 2 || n % 2 != 0 {
        return Err(GeometryError::OddCodimension(n));
    }
    let taken: BTreeSet<String> = x.cells.iter().map(|c| c.id.clone()).collect();
    let rename = |id: &str| if taken.contains(id) { fresh_id(id, &taken) } else { id.to_string() };
    let shifted = TateComplex {
        cells: th.cells.iter().map(|c| Cell { id: rename(&c.id), weight: c.weight + n - 2 }).collect(),
        attach: th
            .attach
            .iter()
            .map(|a| Attachment { from: rename(&a.from), to: rename(&a.to), coeff: a.coeff.clone() })
            .collect(),
    };
    let gysin: Vec<Attachment> =
        g.iter().map(|a| Attachment { from: a.from.clone(), to: rename(&a.to), coeff: a.coeff.clone() }).collect();
    let cone = cone_eta_map(x, &shifted, &gysin)?;
    let cone_part = decompose(&cone)?;
    let z_mod_eta = tensor(z, &NormalForm::single(AtomicBlock::DyadicEta { t: 0, weight: 0 }).expect("valid block"));
    let mut eta_terms = NormalForm::zero();
    for i in 1..n / 2 {
        eta_terms = eta_terms.direct_sum(&twist(&z_mod_eta, 2 * i - 1));
    }
    Ok(BlowupMotive { total: cone_part.direct_sum(&eta_terms), cone_part, eta_terms })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlowupEtaReport {
    pub holds: bool,
    /// The `ℤ(Z)/η` summands have zero Witt cohomology.
    pub eta_terms_vanish: bool,
    /// `H^*(total, W) = H^*(cone part, W)`.
    pub witt_matches_cone: bool,
}

pub fn blowup_eta_check(b: &BlowupMotive) -> BlowupEtaReport {
    let eta_terms_vanish = witt_integral(&b.eta_terms).is_zero();
    let witt_matches_cone = witt_integral(&b.total) == witt_integral(&b.cone_part);
    BlowupEtaReport { holds: eta_terms_vanish && witt_matches_cone, eta_terms_vanish, witt_matches_cone }
}

/// `v₂(|s|)`, with `0` for `s = 0`.
pub fn dyadic_valuation(s: &BigInt) -> u32 {
    let m: BigUint = s.magnitude().clone();
    m.trailing_zeros().unwrap_or(0) as u32
}
