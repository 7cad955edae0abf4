use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};

use super::group::{FormalGroup, GradedGroup};
use super::lattice::{column_basis, preimage, quotient_invariants};
use super::snf::smith;
use super::{ExactAlgError, IntMatrix};

/// A bounded chain complex of free `ℤ`-modules with differentials `d_w : C_{w+1} → C_w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeComplex {
    ranks: BTreeMap<i64, usize>,
    diffs: BTreeMap<i64, IntMatrix>,
}

impl FreeComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_rank(&mut self, degree: i64, rank: usize) {
        if rank == 0 {
            self.ranks.remove(&degree);
        } else {
            self.ranks.insert(degree, rank);
        }
    }

    /// Sets `d_w : C_{w+1} → C_w`.
    ///
    /// # Panics
    /// Panics unless the shape is `rank(w) × rank(w+1)`.
    pub fn set_differential(&mut self, w: i64, m: IntMatrix) {
        assert_eq!((m.rows(), m.cols()), (self.rank(w), self.rank(w + 1)), "differential shape");
        if m.is_zero() {
            self.diffs.remove(&w);
        } else {
            self.diffs.insert(w, m);
        }
    }

    pub fn rank(&self, degree: i64) -> usize {
        self.ranks.get(&degree).copied().unwrap_or(0)
    }

    /// `d_w : C_{w+1} → C_w`, zero when unset.
    pub fn differential(&self, w: i64) -> IntMatrix {
        self.diffs.get(&w).cloned().unwrap_or_else(|| IntMatrix::zeros(self.rank(w), self.rank(w + 1)))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.ranks.keys().copied().collect()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    /// The first degree `w` with `d_w · d_{w+1} ≠ 0`, if any.
    pub fn composability_defect(&self) -> Option<i64> {
        self.diffs.keys().copied().find(|&w| !(&self.differential(w) * &self.differential(w + 1)).is_zero())
    }

    pub fn check_composable(&self) -> Result<(), ExactAlgError> {
        match self.composability_defect() {
            Some(degree) => Err(ExactAlgError::NonComposable { degree }),
            None => Ok(()),
        }
    }

    /// Applies the unimodular base changes `P_w` (new basis = old coordinates times `P_w⁻¹`).
    ///
    /// `d_w ↦ P_w · d_w · P_{w+1}⁻¹`; missing degrees use the identity.
    pub fn change_basis(&self, p: &BTreeMap<i64, (IntMatrix, IntMatrix)>) -> FreeComplex {
        let mut out = self.clone();
        for w in self.degrees() {
            let d = self.differential(w);
            let left = p.get(&w).map(|(m, _)| m.clone()).unwrap_or_else(|| IntMatrix::identity(d.rows()));
            let right = p.get(&(w + 1)).map(|(_, inv)| inv.clone()).unwrap_or_else(|| IntMatrix::identity(d.cols()));
            out.set_differential(w, &(&left * &d) * &right);
        }
        out
    }
}

/// An elementary summand of a free integer complex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Summand {
    /// `ℤ` in one degree.
    FreeCell { degree: i64 },
    /// `ℤ →n ℤ` from `lower_degree + 1` to `lower_degree`, with `n ≥ 1`.
    ConePair { n: BigUint, lower_degree: i64 },
}

/// Splits `c` into elementary summands, sorted.
///
/// The `n` of each `ConePair` at `w` runs over the positive invariant factors of `d_w`, units
/// included; free cells fill the remaining rank.
pub fn decompose_free_complex(c: &FreeComplex) -> Result<Vec<Summand>, ExactAlgError> {
    c.check_composable()?;
    let mut ranks: BTreeMap<i64, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for w in c.degrees().into_iter().flat_map(|w| [w - 1, w]).collect::<std::collections::BTreeSet<_>>() {
        let d = c.differential(w);
        if d.rows() == 0 || d.cols() == 0 {
            continue;
        }
        let f = smith(&d);
        for n in f.invariant_factors() {
            out.push(Summand::ConePair { n: n.magnitude().clone(), lower_degree: w });
        }
        *ranks.entry(w).or_default() += f.rank;
        *ranks.entry(w + 1).or_default() += f.rank;
    }
    for w in c.degrees() {
        let used = ranks.get(&w).copied().unwrap_or(0);
        for _ in used..c.rank(w) {
            out.push(Summand::FreeCell { degree: w });
        }
    }
    out.sort();
    Ok(out)
}

/// Reassembles a summand list into a block-diagonal complex.
pub fn assemble(summands: &[Summand]) -> FreeComplex {
    let mut cells: BTreeMap<i64, usize> = BTreeMap::new();
    let mut entries: Vec<(i64, usize, usize, BigUint)> = Vec::new();
    for s in summands {
        match s {
            Summand::FreeCell { degree } => *cells.entry(*degree).or_default() += 1,
            Summand::ConePair { n, lower_degree: w } => {
                let lo = cells.entry(*w).or_default();
                let row = *lo;
                *lo += 1;
                let hi = cells.entry(w + 1).or_default();
                let col = *hi;
                *hi += 1;
                entries.push((*w, row, col, n.clone()));
            }
        }
    }
    let mut c = FreeComplex::new();
    for (&w, &r) in &cells {
        c.set_rank(w, r);
    }
    let mut mats: BTreeMap<i64, IntMatrix> = BTreeMap::new();
    for (w, row, col, n) in entries {
        let m = mats.entry(w).or_insert_with(|| IntMatrix::zeros(c.rank(w), c.rank(w + 1)));
        m.set(row, col, BigInt::from(n));
    }
    for (w, m) in mats {
        c.set_differential(w, m);
    }
    c
}

/// Cohomology of `Hom(C, ℤ/m)` in the cochain convention (`m = 0` means `ℤ`).
///
/// Computed directly from cocycle and coboundary lattices, independent of
/// [`decompose_free_complex`].
pub fn integer_cohomology(c: &FreeComplex, m: &BigUint) -> Result<GradedGroup, ExactAlgError> {
    c.check_composable()?;
    let mi = BigInt::from(m.clone());
    let mut out = GradedGroup::new();
    for w in c.degrees() {
        let n = c.rank(w);
        let delta = c.differential(w).transpose();
        let delta_prev = c.differential(w - 1).transpose();
        let cocycles = preimage(&delta, &IntMatrix::identity(delta.rows()).scaled(&mi));
        let coboundaries = column_basis(&delta_prev.hcat(&IntMatrix::identity(n).scaled(&mi)));
        let (free, torsion) = quotient_invariants(&cocycles, &coboundaries);
        out.add(w, &FormalGroup::from_invariants(free, &torsion));
    }
    Ok(out)
}

/// Cohomology read off a summand list: `ConePair(n, w)` gives `ℤ/n` in degree `w + 1`, `FreeCell(w)`
/// gives `ℤ` in degree `w`, and `ℤ/m` coefficients follow the universal coefficient sequence.
pub fn summand_cohomology(summands: &[Summand], m: &BigUint) -> GradedGroup {
    let mut out = GradedGroup::new();
    for s in summands {
        match s {
            Summand::FreeCell { degree } => out.add(*degree, &FormalGroup::free(1).coefficient_parts(m).0),
            Summand::ConePair { n, lower_degree } => {
                let (quotient, kernel) = FormalGroup::cyclic(n.clone()).coefficient_parts(m);
                out.add(lower_degree + 1, &quotient);
                out.add(*lower_degree, &kernel);
            }
        }
    }
    out
}
