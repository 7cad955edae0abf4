use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// A prime power `p^e` with `e ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub prime: BigUint,
    pub exp: u32,
}

impl PrimePower {
    pub fn new(prime: impl Into<BigUint>, exp: u32) -> Self {
        assert!(exp >= 1, "prime power exponent must be positive");
        PrimePower { prime: prime.into(), exp }
    }

    pub fn value(&self) -> BigUint {
        num_traits::pow(self.prime.clone(), self.exp as usize)
    }

    pub fn is_two(&self) -> bool {
        self.prime == BigUint::from(2u32)
    }
}

/// Splits `n ≥ 2` into prime powers by trial division.
pub fn factor(n: &BigUint) -> Vec<PrimePower> {
    let mut out = Vec::new();
    let mut n = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push(PrimePower::new(p.clone(), e));
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if n > BigUint::one() {
        out.push(PrimePower::new(n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A finitely generated abelian group `ℤ^free ⊕ ⊕ ℤ/pᵉ`.
///
/// Torsion is stored CRT-split into prime powers and kept sorted, so structural equality is
/// isomorphism.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalGroup {
    free_rank: usize,
    torsion: Vec<PrimePower>,
}

impl FormalGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FormalGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// `ℤ/n`, where `n = 0` means `ℤ` and `n = 1` the zero group.
    pub fn cyclic(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            Self::free(1)
        } else if n.is_one() {
            Self::zero()
        } else {
            FormalGroup { free_rank: 0, torsion: factor(&n) }.normalized()
        }
    }

    /// `ℤ/2ᵗ`, the zero group for `t = 0`.
    pub fn dyadic(t: u32) -> Self {
        if t == 0 {
            Self::zero()
        } else {
            Self::from_parts(0, vec![PrimePower::new(2u32, t)])
        }
    }

    pub fn from_parts(free_rank: usize, torsion: Vec<PrimePower>) -> Self {
        FormalGroup { free_rank, torsion }.normalized()
    }

    /// Builds a group from invariant factors (entries `0` count as `ℤ`).
    pub fn from_invariants(free_rank: usize, factors: &[BigInt]) -> Self {
        let mut g = Self::free(free_rank);
        for d in factors {
            g = g.direct_sum(&Self::cyclic(d.magnitude().clone()));
        }
        g
    }

    fn normalized(mut self) -> Self {
        self.torsion.sort();
        self
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[PrimePower] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &FormalGroup) -> FormalGroup {
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().cloned());
        FormalGroup { free_rank: self.free_rank + other.free_rank, torsion }.normalized()
    }

    /// `self ⊗_ℤ other`.
    pub fn tensor(&self, other: &FormalGroup) -> FormalGroup {
        let mut out = Self::free(self.free_rank * other.free_rank);
        for _ in 0..self.free_rank {
            out = out.direct_sum(&Self::from_parts(0, other.torsion.clone()));
        }
        for _ in 0..other.free_rank {
            out = out.direct_sum(&Self::from_parts(0, self.torsion.clone()));
        }
        // ℤ/pᵃ ⊗ ℤ/pᵇ = ℤ/p^min(a,b), the same value as the Tor term.
        out.direct_sum(&self.tor(other))
    }

    /// `Tor₁^ℤ(self, other)`; only torsion pairs at a common prime contribute.
    pub fn tor(&self, other: &FormalGroup) -> FormalGroup {
        let mut torsion = Vec::new();
        for a in &self.torsion {
            for b in &other.torsion {
                if a.prime == b.prime {
                    torsion.push(PrimePower::new(a.prime.clone(), a.exp.min(b.exp)));
                }
            }
        }
        Self::from_parts(0, torsion)
    }

    /// The 2-primary torsion exponents.
    pub fn dyadic_exponents(&self) -> Vec<u32> {
        self.torsion.iter().filter(|t| t.is_two()).map(|t| t.exp).collect()
    }

    /// The part of the torsion at odd primes.
    pub fn odd_part(&self) -> FormalGroup {
        Self::from_parts(0, self.torsion.iter().filter(|t| !t.is_two()).cloned().collect())
    }

    /// `dim_{ℤ/2} (G ⊗ ℤ/2)`.
    pub fn mod2_dim(&self) -> usize {
        self.free_rank + self.dyadic_exponents().len()
    }

    /// `G ⊗ ℤ/m ⊕ Tor(G, ℤ/m)` split as `(quotient, kernel)` for `m ≥ 1`.
    pub fn coefficient_parts(&self, m: &BigUint) -> (FormalGroup, FormalGroup) {
        let zm = Self::cyclic(m.clone());
        if m.is_zero() {
            return (self.clone(), Self::zero());
        }
        (self.tensor(&zm), self.tor(&zm))
    }

    pub fn order(&self) -> Option<BigUint> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().fold(BigUint::one(), |acc, t| acc * t.value()))
    }

    /// Invariant-factor values of the torsion, for display.
    pub fn torsion_values(&self) -> Vec<BigUint> {
        self.torsion.iter().map(PrimePower::value).collect()
    }
}

impl fmt::Display for FormalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            n => parts.push(format!("Z^{n}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", t.value()));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn serialize_biguint_list<S: Serializer>(values: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        match v.to_u64() {
            Some(x) => seq.serialize_element(&x)?,
            None => seq.serialize_element(&v.to_string())?,
        }
    }
    seq.end()
}

struct TorsionList<'a>(&'a [BigUint]);

impl Serialize for TorsionList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_biguint_list(self.0, s)
    }
}

impl Serialize for FormalGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FormalGroup", 2)?;
        st.serialize_field("free", &self.free_rank)?;
        st.serialize_field("torsion", &TorsionList(&self.torsion_values()))?;
        st.end()
    }
}

/// A degree-indexed family of [`FormalGroup`]s with finite support.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GradedGroup {
    groups: BTreeMap<i64, FormalGroup>,
}

impl GradedGroup {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, degree: i64) -> FormalGroup {
        self.groups.get(&degree).cloned().unwrap_or_default()
    }

    /// Adds `g` as a direct summand at `degree`.
    pub fn add(&mut self, degree: i64, g: &FormalGroup) {
        if g.is_zero() {
            return;
        }
        let e = self.groups.entry(degree).or_default();
        *e = e.direct_sum(g);
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &FormalGroup)> {
        self.groups.iter().map(|(d, g)| (*d, g))
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn support(&self) -> Vec<i64> {
        self.groups.keys().copied().collect()
    }

    pub fn direct_sum(&self, other: &GradedGroup) -> GradedGroup {
        let mut out = self.clone();
        for (d, g) in other.iter() {
            out.add(d, g);
        }
        out
    }

    /// Graded Künneth over `ℤ` in the cochain convention: tensor terms at `a + b`, Tor terms at
    /// `a + b - 1`.
    pub fn kunneth(&self, other: &GradedGroup) -> GradedGroup {
        let mut out = GradedGroup::new();
        for (a, ga) in self.iter() {
            for (b, gb) in other.iter() {
                out.add(a + b, &ga.tensor(gb));
                out.add(a + b - 1, &ga.tor(gb));
            }
        }
        out
    }
}

impl Serialize for GradedGroup {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.groups.len()))?;
        for (d, g) in &self.groups {
            seq.serialize_element(&GradedEntry { degree: *d, group: g })?;
        }
        seq.end()
    }
}

struct GradedEntry<'a> {
    degree: i64,
    group: &'a FormalGroup,
}

impl Serialize for GradedEntry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GradedEntry", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("free", &self.group.free_rank())?;
        st.serialize_field("torsion", &TorsionList(&self.group.torsion_values()))?;
        st.end()
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.groups.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.groups.iter().map(|(d, g)| format!("H^{d} = {g}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_splits_into_prime_powers() {
        let g = FormalGroup::cyclic(12u32);
        assert_eq!(g.torsion_values(), vec![BigUint::from(4u32), BigUint::from(3u32)]);
        assert_eq!(FormalGroup::cyclic(1u32), FormalGroup::zero());
        assert_eq!(FormalGroup::cyclic(0u32), FormalGroup::free(1));
    }

    #[test]
    fn tensor_and_tor_of_cyclics() {
        let a = FormalGroup::cyclic(4u32);
        let b = FormalGroup::cyclic(6u32);
        assert_eq!(a.tensor(&b), FormalGroup::cyclic(2u32));
        assert_eq!(a.tor(&b), FormalGroup::cyclic(2u32));
        assert_eq!(FormalGroup::free(1).tensor(&b), b);
    }

    #[test]
    fn kunneth_places_tor_one_below() {
        let mut x = GradedGroup::new();
        x.add(1, &FormalGroup::cyclic(2u32));
        let k = x.kunneth(&x);
        assert_eq!(k.get(2), FormalGroup::cyclic(2u32));
        assert_eq!(k.get(1), FormalGroup::cyclic(2u32));
    }

    #[test]
    fn primes() {
        assert!(is_prime(3) && is_prime(97) && !is_prime(1) && !is_prime(91));
    }
}
