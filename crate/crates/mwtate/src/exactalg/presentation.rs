use num_bigint::BigInt;
use num_traits::Zero;

use super::group::FormalGroup;
use super::lattice::{column_basis, is_sublattice, preimage, presentation_invariants, solve_matrix, sum};
use super::IntMatrix;

/// A finitely presented abelian group `ℤ^gens / span(relations)`.
///
/// Elements are coordinate vectors in `ℤ^gens`; subgroups are lattices containing the relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbGroup {
    gens: usize,
    relations: IntMatrix,
}

impl AbGroup {
    pub fn new(gens: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows(), gens, "relation matrix height");
        AbGroup { gens, relations: column_basis(&relations) }
    }

    pub fn zero() -> Self {
        AbGroup { gens: 0, relations: IntMatrix::zeros(0, 0) }
    }

    pub fn free(rank: usize) -> Self {
        AbGroup { gens: rank, relations: IntMatrix::zeros(rank, 0) }
    }

    /// `⊕ ℤ/dᵢ`, with `0` meaning `ℤ`.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let mut rel = IntMatrix::zeros(n, n);
        for (i, d) in orders.iter().enumerate() {
            rel.set(i, i, d.clone());
        }
        AbGroup::new(n, rel)
    }

    pub fn gens(&self) -> usize {
        self.gens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn invariants(&self) -> FormalGroup {
        let (free, torsion) = presentation_invariants(&self.relations);
        FormalGroup::from_invariants(free, &torsion)
    }

    /// The lattice of the whole group, `ℤ^gens`.
    pub fn everything(&self) -> IntMatrix {
        IntMatrix::identity(self.gens)
    }

    /// `span(s) + relations`, normalised.
    pub fn subgroup(&self, s: &IntMatrix) -> IntMatrix {
        sum(s, &self.relations)
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        x.iter().all(Zero::is_zero) || super::lattice::contains(&self.relations, x)
    }

    /// The quotient `span(num)/span(den)` as a new presentation in coordinates of a basis of
    /// `num`. Returns the group and that basis.
    pub fn subquotient(num: &IntMatrix, den: &IntMatrix) -> (AbGroup, IntMatrix) {
        let basis = column_basis(num);
        let rel = solve_matrix(&basis, den).expect("denominator must lie in numerator");
        (AbGroup::new(basis.cols(), rel), basis)
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let mut rel = IntMatrix::zeros(self.gens + other.gens, self.relations.cols() + other.relations.cols());
        for i in 0..self.gens {
            for j in 0..self.relations.cols() {
                rel.set(i, j, self.relations.get(i, j).clone());
            }
        }
        for i in 0..other.gens {
            for j in 0..other.relations.cols() {
                rel.set(self.gens + i, self.relations.cols() + j, other.relations.get(i, j).clone());
            }
        }
        AbGroup::new(self.gens + other.gens, rel)
    }
}

/// A homomorphism `src → dst` given on generators.
#[derive(Clone, Debug)]
pub struct Hom<'a> {
    pub src: &'a AbGroup,
    pub dst: &'a AbGroup,
    pub matrix: &'a IntMatrix,
}

impl Hom<'_> {
    /// Checks that relations map to relations.
    pub fn is_well_defined(&self) -> bool {
        is_sublattice(&(self.matrix * &self.src.relations), &self.dst.relations)
    }

    /// The kernel as a lattice in source coordinates (contains the source relations).
    pub fn kernel(&self) -> IntMatrix {
        preimage(self.matrix, &self.dst.relations)
    }

    /// The image as a lattice in target coordinates (contains the target relations).
    pub fn image(&self) -> IntMatrix {
        sum(self.matrix, &self.dst.relations)
    }

    /// Preimage of a subgroup lattice `s` of the target.
    pub fn preimage(&self, s: &IntMatrix) -> IntMatrix {
        preimage(self.matrix, &sum(s, &self.dst.relations))
    }

    /// Image of a subgroup lattice `s` of the source.
    pub fn image_of(&self, s: &IntMatrix) -> IntMatrix {
        sum(&(self.matrix * s), &self.dst.relations)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_kernel() {
        // ℤ/4 → ℤ/2 reduction has kernel ℤ/2.
        let src = AbGroup::from_orders(&[BigInt::from(4)]);
        let dst = AbGroup::from_orders(&[BigInt::from(2)]);
        let m = IntMatrix::identity(1);
        let h = Hom { src: &src, dst: &dst, matrix: &m };
        assert!(h.is_well_defined());
        let (k, _) = AbGroup::subquotient(&h.kernel(), src.relations());
        assert_eq!(k.invariants(), FormalGroup::cyclic(2u32));
    }
}
