//! Grothendieck–Witt and Witt arithmetic of a Euclidean field.
//!
//! `GW(k)` is modelled by `(rank, signature)` with equal parity and `W(k) = ℤ` by the
//! signature. The fundamental ideal power `Iᵠ` is `2ᵠℤ`, and `Iᵐ = W(k)` for `m ≤ 0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactalg::FormalGroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WittError {
    #[error("rank {rank} and signature {signature} have different parity")]
    InvalidParity { rank: BigInt, signature: BigInt },
    #[error("expected an odd positive integer, got {0}")]
    EvenInput(BigInt),
    #[error("the odd part s must be odd, got {0}")]
    EvenS(BigInt),
}

/// An element of `GW(k)`; `rank ≡ signature (mod 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GWElement {
    #[serde(with = "crate::json")]
    rank: BigInt,
    #[serde(with = "crate::json")]
    signature: BigInt,
}

impl GWElement {
    pub fn new(rank: impl Into<BigInt>, signature: impl Into<BigInt>) -> Result<Self, WittError> {
        let (rank, signature) = (rank.into(), signature.into());
        if (&rank - &signature).is_odd() {
            return Err(WittError::InvalidParity { rank, signature });
        }
        Ok(GWElement { rank, signature })
    }

    /// Re-checks parity, e.g. after deserialisation.
    pub fn validate(&self) -> Result<(), WittError> {
        Self::new(self.rank.clone(), self.signature.clone()).map(|_| ())
    }

    pub fn rank(&self) -> &BigInt {
        &self.rank
    }

    pub fn signature(&self) -> &BigInt {
        &self.signature
    }

    pub fn zero() -> Self {
        GWElement { rank: BigInt::zero(), signature: BigInt::zero() }
    }

    pub fn one() -> Self {
        GWElement { rank: BigInt::one(), signature: BigInt::one() }
    }

    /// `ε = −⟨−1⟩`.
    pub fn epsilon() -> Self {
        GWElement { rank: -BigInt::one(), signature: BigInt::one() }
    }

    /// `⟨−1⟩`.
    pub fn minus_one_form() -> Self {
        GWElement { rank: BigInt::one(), signature: -BigInt::one() }
    }

    pub fn witt_class(&self) -> WittClass {
        WittClass(self.signature.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        GWElement { rank: &self.rank + &o.rank, signature: &self.signature + &o.signature }
    }

    pub fn mul(&self, o: &Self) -> Self {
        GWElement { rank: &self.rank * &o.rank, signature: &self.signature * &o.signature }
    }

    pub fn neg(&self) -> Self {
        GWElement { rank: -&self.rank, signature: -&self.signature }
    }
}

impl fmt::Display for GWElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.rank, self.signature)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GwOp {
    Add,
    Mul,
    /// Negates the first operand; the second is only parity-checked.
    Neg,
}

pub fn gw_ring(op: GwOp, a: &GWElement, b: &GWElement) -> Result<GWElement, WittError> {
    a.validate()?;
    b.validate()?;
    Ok(match op {
        GwOp::Add => a.add(b),
        GwOp::Mul => a.mul(b),
        GwOp::Neg => a.neg(),
    })
}

/// `𝐩 = Σ_{i<p} εⁱ = (1, p)` for odd `p ≥ 1`.
pub fn p_bold(p: impl Into<BigInt>) -> Result<GWElement, WittError> {
    let p = p.into();
    if p.is_even() || !p.is_positive() {
        return Err(WittError::EvenInput(p));
    }
    Ok(GWElement { rank: BigInt::one(), signature: p })
}

/// A class in `W(k) = ℤ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WittClass(#[serde(with = "crate::json")] pub BigInt);

impl WittClass {
    /// Membership in `Iᵠ = 2ᵠℤ`; every class lies in `Iᵠ` for `q ≤ 0`.
    pub fn in_ideal_power(&self, q: i64) -> bool {
        if q <= 0 || self.0.is_zero() {
            return true;
        }
        let two_q = num_traits::pow(BigInt::from(2), q as usize);
        self.0.is_multiple_of(&two_q)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealFiltration {
    pub in_iq: bool,
    /// `Iᵠ/sIᵠ`.
    pub iq_mod_s: FormalGroup,
    /// `Iᵠ⁻¹/2ᵗIᵠ`.
    pub iq1_mod_2t_iq: FormalGroup,
}

/// Exponent `e` with `Iᵐ = 2ᵉℤ`.
fn ideal_exponent(m: i64) -> u64 {
    m.max(0) as u64
}

/// `Iᵠ⁻¹/2ᵗIᵠ ≅ ℤ/2^(t + e(q) − e(q−1))`.
pub fn iq1_mod_2t_iq(q: i64, t: u32) -> FormalGroup {
    let exp = t as u64 + ideal_exponent(q) - ideal_exponent(q - 1);
    FormalGroup::dyadic(exp as u32)
}

pub fn ideal_filtration(w: &WittClass, q: i64, s: impl Into<BigInt>, t: u32) -> Result<IdealFiltration, WittError> {
    let s = s.into();
    if s.is_even() {
        return Err(WittError::EvenS(s));
    }
    Ok(IdealFiltration {
        in_iq: w.in_ideal_power(q),
        iq_mod_s: FormalGroup::cyclic(s.magnitude().clone()),
        iq1_mod_2t_iq: iq1_mod_2t_iq(q, t),
    })
}

/// Canonical representative of the `k^×`-orbit `{(r, s), (r, −s)}`.
pub fn kx_orbit_canonical(e: &GWElement) -> Result<GWElement, WittError> {
    e.validate()?;
    Ok(GWElement { rank: e.rank.clone(), signature: e.signature.abs() })
}

/// Coefficient model for motivic cohomology of the base field.
///
/// Only the minimal Euclidean model exists: the 2-divisible summands `2K^M_q`, `q ≥ 1`, are
/// set to zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientModel {
    #[default]
    #[serde(rename = "minimal-euclidean")]
    MinimalEuclidean,
}

impl CoefficientModel {
    pub fn name(self) -> &'static str {
        "minimal-euclidean"
    }

    /// `H^{a,b}_M(k, ℤ/2)`: `ℤ/2·ρᵃτᵇ⁻ᵃ` for `0 ≤ a ≤ b`.
    pub fn h_mod2(self, a: i64, b: i64) -> FormalGroup {
        if 0 <= a && a <= b {
            FormalGroup::cyclic(2u32)
        } else {
            FormalGroup::zero()
        }
    }

    /// `H^{a,b}_M(k, ℤ)`: `ℤ` at `(0,0)`, `ℤ/2` on the diagonal `a = b ≥ 1`.
    pub fn h_int(self, a: i64, b: i64) -> FormalGroup {
        match (a, b) {
            (0, 0) => FormalGroup::free(1),
            (a, b) if a == b && a >= 1 => FormalGroup::cyclic(2u32),
            _ => FormalGroup::zero(),
        }
    }

    /// `2K^M_q(k)`: `ℤ` for `q = 0`, zero otherwise.
    pub fn two_k_milnor(self, q: i64) -> FormalGroup {
        if q == 0 {
            FormalGroup::free(1)
        } else {
            FormalGroup::zero()
        }
    }

    /// `K^MW_n(k)` as an abstract group: `GW = ℤ²` at `0`, `W = ℤ` below, `Iⁿ ×_{Iⁿ/Iⁿ⁺¹} ℤ/2 ≅ ℤ`
    /// above.
    pub fn k_milnor_witt(self, n: i64) -> FormalGroup {
        if n == 0 {
            FormalGroup::free(2)
        } else {
            FormalGroup::free(1)
        }
    }
}

impl FromStr for CoefficientModel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "minimal-euclidean" => Ok(CoefficientModel::MinimalEuclidean),
            other => Err(format!("unknown coefficient model {other:?}; only minimal-euclidean is supported")),
        }
    }
}

impl fmt::Display for CoefficientModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `BigUint` power of two, used for moduli `2ʲ`.
pub fn two_pow(j: u32) -> BigUint {
    num_traits::pow(BigUint::from(2u32), j as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gw(r: i64, s: i64) -> GWElement {
        GWElement::new(r, s).unwrap()
    }

    #[test]
    fn ring_examples() {
        let e = GWElement::epsilon();
        assert_eq!(gw_ring(GwOp::Mul, &e, &e).unwrap(), gw(1, 1));
        let p15 = gw_ring(GwOp::Mul, &p_bold(3).unwrap(), &p_bold(5).unwrap()).unwrap();
        assert_eq!(p15, p_bold(15).unwrap());
        let m = GWElement::minus_one_form();
        assert_eq!(gw_ring(GwOp::Add, &m, &m).unwrap(), gw(2, -2));
        assert!(matches!(GWElement::new(1, 2), Err(WittError::InvalidParity { .. })));
    }

    #[test]
    fn bold_p() {
        assert_eq!(p_bold(1).unwrap(), gw(1, 1));
        assert_eq!(p_bold(3).unwrap(), gw(1, 3));
        assert_eq!(p_bold(7).unwrap(), gw(1, 7));
        assert!(matches!(p_bold(4), Err(WittError::EvenInput(_))));
    }

    #[test]
    fn filtration() {
        assert!(WittClass(4.into()).in_ideal_power(2));
        assert!(!WittClass(6.into()).in_ideal_power(2));
        let f = ideal_filtration(&WittClass(4.into()), 2, 3, 1).unwrap();
        assert_eq!(f.iq_mod_s, FormalGroup::cyclic(3u32));
        assert_eq!(f.iq1_mod_2t_iq, FormalGroup::cyclic(4u32));
        assert!(matches!(ideal_filtration(&WittClass(0.into()), 2, 2, 0), Err(WittError::EvenS(_))));
    }

    #[test]
    fn orbits() {
        assert_eq!(kx_orbit_canonical(&gw(0, -4)).unwrap(), gw(0, 4));
        assert_eq!(kx_orbit_canonical(&gw(0, 4)).unwrap(), gw(0, 4));
        assert_eq!(kx_orbit_canonical(&gw(3, -1)).unwrap(), gw(3, 1));
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&gw(2, -2)).unwrap();
        assert_eq!(s, r#"{"rank":2,"signature":-2}"#);
    }
}
