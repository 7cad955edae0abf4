//! Cohomological invariants of normal forms.
//!
//! Every integral answer is computed in the minimal Euclidean coefficient model
//! ([`CoefficientModel::MinimalEuclidean`]). Witt cohomology uses the cochain convention: the
//! torsion of `ℤ/2ᵗη(i)[2i]` sits in degree `i + 1`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::exactalg::{FormalGroup, GradedGroup, PrimePower};
use crate::motives::{AtomicBlock, NormalForm};
use crate::wittring::{iq1_mod_2t_iq, CoefficientModel};

const MODEL: CoefficientModel = CoefficientModel::MinimalEuclidean;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("l must be positive, got {0}")]
    NonpositiveL(i64),
}

/// `CH^*(A)`, or `CH^*(A)/2` when `mod2` is set.
pub fn chow(a: &NormalForm, mod2: bool) -> GradedGroup {
    let unit = if mod2 { FormalGroup::cyclic(2u32) } else { FormalGroup::free(1) };
    let mut out = GradedGroup::new();
    for b in a.blocks() {
        match *b {
            AtomicBlock::Free { weight } => out.add(weight, &unit),
            AtomicBlock::DyadicEta { weight, .. } => {
                out.add(weight, &unit);
                out.add(weight + 1, &unit);
            }
            AtomicBlock::OddTorsion { .. } => {}
        }
    }
    out
}

/// Integral Witt cohomology of one block.
fn block_witt(b: &AtomicBlock) -> (i64, FormalGroup) {
    match *b {
        AtomicBlock::Free { weight } => (weight, FormalGroup::free(1)),
        AtomicBlock::DyadicEta { t, weight } => (weight + 1, FormalGroup::dyadic(t)),
        AtomicBlock::OddTorsion { p, r, shift } => (shift + 1, FormalGroup::from_parts(0, vec![PrimePower::new(p, r)])),
    }
}

/// `H^*(A, W/m)`; `m = 0` gives `W = ℤ` coefficients.
///
/// For `m ≠ 0` the coefficient sequence contributes `Hᵈ ⊗ ℤ/m` in degree `d` and
/// `Tor(Hᵈ, ℤ/m)` in degree `d − 1`.
pub fn witt_cohomology(a: &NormalForm, modulus: &BigUint) -> GradedGroup {
    let mut out = GradedGroup::new();
    for b in a.blocks() {
        let (d, g) = block_witt(b);
        let (quotient, tor) = g.coefficient_parts(modulus);
        out.add(d, &quotient);
        out.add(d - 1, &tor);
    }
    out
}

pub fn witt_integral(a: &NormalForm) -> GradedGroup {
    witt_cohomology(a, &BigUint::from(0u32))
}

/// A free bigraded module over `h = ℤ/2[ρ, τ]`, `|ρ| = (1,1)`, `|τ| = (0,1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct HModule {
    /// Generator bidegrees `(p, q)`, sorted.
    pub generators: Vec<(i64, i64)>,
}

impl HModule {
    pub fn new(mut generators: Vec<(i64, i64)>) -> Self {
        generators.sort();
        HModule { generators }
    }

    pub fn count_at(&self, p: i64, q: i64) -> usize {
        self.generators.iter().filter(|&&g| g == (p, q)).count()
    }

    /// `dim_{ℤ/2}` in bidegree `(p, q)`; a generator at `(a, b)` spans `ρᶜτᵉ` with `c, e ≥ 0`.
    pub fn dim_at(&self, p: i64, q: i64) -> usize {
        self.generators.iter().map(|&(a, b)| MODEL.h_mod2(p - a, q - b).mod2_dim()).sum()
    }
}

/// `H^{*,*}_M(A, ℤ/2)` as a free `h`-module.
pub fn mod2_motivic(a: &NormalForm) -> HModule {
    let mut gens = Vec::new();
    for b in a.blocks() {
        match *b {
            AtomicBlock::Free { weight: i } => gens.push((2 * i, i)),
            AtomicBlock::DyadicEta { weight: i, .. } => {
                gens.push((2 * i, i));
                gens.push((2 * i + 2, i + 1));
            }
            AtomicBlock::OddTorsion { .. } => {}
        }
    }
    HModule::new(gens)
}

/// `H^{p,q}_η(A) = I^{2q−p}·H^{p−q}(A, W)` as an abstract group.
pub fn eta_inverted(a: &NormalForm, p: i64, q: i64) -> FormalGroup {
    let m = 2 * q - p;
    let h = witt_integral(a).get(p - q);
    if m <= 0 {
        return h;
    }
    let mut out = FormalGroup::free(h.free_rank());
    for pp in h.torsion() {
        if pp.is_two() {
            out = out.direct_sum(&FormalGroup::dyadic((pp.exp as i64 - m).max(0) as u32));
        } else {
            out = out.direct_sum(&FormalGroup::from_parts(0, vec![pp.clone()]));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Category {
    /// Milnor–Witt motives.
    Mw,
    /// The η-inverted (Witt) category.
    W,
}

/// `Hom(ℤ/lη, ℤ(q)[p])` in the given category, minimal model.
pub fn hom_cone(l: i64, p: i64, q: i64, category: Category) -> Result<FormalGroup, CohomologyError> {
    if l <= 0 {
        return Err(CohomologyError::NonpositiveL(l));
    }
    let t = l.trailing_zeros();
    let s = (l >> t) as u64;
    let g = if p == q + 1 {
        let mut g = FormalGroup::cyclic(s).direct_sum(&iq1_mod_2t_iq(q, t));
        if category == Category::Mw {
            g = g.direct_sum(&MODEL.two_k_milnor(q - 1));
        }
        g
    } else if p == q {
        match category {
            Category::Mw => MODEL.two_k_milnor(q).direct_sum(&MODEL.h_int(p - 2, q - 1)),
            Category::W => MODEL.h_mod2(p - 2, q - 1),
        }
    } else {
        match category {
            Category::Mw => MODEL.h_int(p, q).direct_sum(&MODEL.h_int(p - 2, q - 1)),
            Category::W => MODEL.h_mod2(p, q).direct_sum(&MODEL.h_mod2(p - 2, q - 1)),
        }
    };
    Ok(g)
}

/// `H^{2n,n}_{MW}(A)`, assembled block by block.
pub fn mw_diagonal(a: &NormalForm, n: i64) -> FormalGroup {
    let mut out = FormalGroup::zero();
    for b in a.blocks() {
        let g = match *b {
            AtomicBlock::Free { weight } => MODEL.k_milnor_witt(n - weight),
            AtomicBlock::DyadicEta { t, weight } => {
                let k = n - weight;
                hom_cone(1i64 << t, 2 * k, k, Category::Mw).expect("2^t is positive")
            }
            AtomicBlock::OddTorsion { p, r, shift } => {
                let k = n - shift;
                let l = i64::try_from(u64::pow(p, r)).expect("odd block order fits in i64");
                hom_cone(l, 2 * k, k, Category::Mw).expect("p^r is positive").odd_part()
            }
        };
        out = out.direct_sum(&g);
    }
    out
}

/// Generator counts of `mod2_motivic` keyed by bidegree.
pub fn generator_counts(h: &HModule) -> BTreeMap<(i64, i64), usize> {
    let mut out = BTreeMap::new();
    for &g in &h.generators {
        *out.entry(g).or_default() += 1;
    }
    out
}
