//! Exact linear algebra over `ℤ` and over `ℤ/2[ρ]`.
//!
//! * [`smith_normal_form`] diagonalises an [`IntMatrix`] by unimodular row and column
//!   operations, keeping both transforms.
//! * [`decompose_free_complex`] splits a bounded complex of free abelian groups into free cells
//!   and two-term cones `ℤ →n ℤ`.
//! * [`integer_cohomology`] computes cochain cohomology with `ℤ` or `ℤ/m` coefficients.
//! * [`rho_module_tensor`] is the derived tensor product of the small complexes of
//!   `ℤ/2[ρ]`-modules that present Bockstein pages.
//!
//! All integers are [`num_bigint::BigInt`]; nothing here can overflow.

mod complex;
mod group;
pub mod lattice;
mod matrix;
mod presentation;
mod rho;
mod snf;

pub use complex::{assemble, decompose_free_complex, integer_cohomology, summand_cohomology, FreeComplex, Summand};
pub use group::{factor, is_prime, FormalGroup, GradedGroup, PrimePower};
pub use matrix::IntMatrix;
pub use presentation::{AbGroup, Hom};
pub use rho::{rho_homology, rho_module_tensor, RhoComplex, RhoHomology, RhoShape, RhoSummand};
pub use snf::{smith, Snf};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactAlgError {
    #[error("differentials out of degree {degree} do not compose to zero")]
    NonComposable { degree: i64 },
}

/// `(U, S, V)` with `U·M·V = S`; see [`smith`] for the inverses as well.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let f = smith(m);
    (f.u, f.s, f.v)
}

#[cfg(test)]
mod tests {
    use num_bigint::{BigInt, BigUint};

    use super::*;

    fn diag(s: &IntMatrix) -> Vec<i64> {
        (0..s.rows().min(s.cols())).map(|i| i64::try_from(s.get(i, i)).unwrap()).collect()
    }

    fn det2(m: &IntMatrix) -> BigInt {
        m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)
    }

    #[test]
    fn snf_identity_and_zero() {
        let (_, s, _) = smith_normal_form(&IntMatrix::identity(2));
        assert_eq!(diag(&s), vec![1, 1]);
        let (_, s, _) = smith_normal_form(&IntMatrix::zeros(2, 3));
        assert!(s.is_zero());
    }

    #[test]
    fn snf_two_by_two() {
        // gcd of entries is 2 and |det| = 8, so the invariant factors are 2 and 4.
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let (u, s, v) = smith_normal_form(&m);
        assert_eq!(diag(&s), vec![2, 4]);
        assert_eq!(&(&u * &m) * &v, s);
        assert_eq!(det2(&u).magnitude(), &BigUint::from(1u32));
        assert_eq!(det2(&v).magnitude(), &BigUint::from(1u32));
    }

    #[test]
    fn snf_inverses() {
        let m = IntMatrix::from_rows(&[vec![3, 5, 7], vec![-2, 4, 0], vec![6, 10, 14]]);
        let f = smith(&m);
        assert_eq!(&f.u * &f.u_inv, IntMatrix::identity(3));
        assert_eq!(&f.v * &f.v_inv, IntMatrix::identity(3));
        assert_eq!(&(&f.u * &m) * &f.v, f.s);
    }

    fn four_cell() -> FreeComplex {
        // a(0); b, c(1); d(2); d(b→a)=2, d(c→a)=0, d(d→c)=3, d(d→b)=0.
        let mut c = FreeComplex::new();
        c.set_rank(0, 1);
        c.set_rank(1, 2);
        c.set_rank(2, 1);
        c.set_differential(0, IntMatrix::from_rows(&[vec![2, 0]]));
        c.set_differential(1, IntMatrix::from_rows(&[vec![0], vec![3]]));
        c
    }

    fn cone(n: u32, w: i64) -> Summand {
        Summand::ConePair { n: BigUint::from(n), lower_degree: w }
    }

    #[test]
    fn decompose_examples() {
        let mut c = FreeComplex::new();
        c.set_rank(0, 1);
        assert_eq!(decompose_free_complex(&c).unwrap(), vec![Summand::FreeCell { degree: 0 }]);

        let mut c = FreeComplex::new();
        c.set_rank(0, 1);
        c.set_rank(1, 1);
        c.set_differential(0, IntMatrix::from_rows(&[vec![6]]));
        assert_eq!(decompose_free_complex(&c).unwrap(), vec![cone(6, 0)]);

        assert_eq!(decompose_free_complex(&four_cell()).unwrap(), vec![cone(2, 0), cone(3, 1)]);
    }

    #[test]
    fn non_composable_is_rejected() {
        let mut c = FreeComplex::new();
        c.set_rank(0, 1);
        c.set_rank(1, 1);
        c.set_rank(2, 1);
        c.set_differential(0, IntMatrix::from_rows(&[vec![2]]));
        c.set_differential(1, IntMatrix::from_rows(&[vec![3]]));
        assert_eq!(decompose_free_complex(&c), Err(ExactAlgError::NonComposable { degree: 0 }));
    }

    #[test]
    fn cohomology_examples() {
        let zero = BigUint::from(0u32);
        let c = assemble(&[cone(2, 0)]);
        let h = integer_cohomology(&c, &zero).unwrap();
        assert_eq!(h.get(1), FormalGroup::cyclic(2u32));
        assert!(h.get(0).is_zero());

        let h = integer_cohomology(&assemble(&[Summand::FreeCell { degree: 3 }]), &zero).unwrap();
        assert_eq!(h.get(3), FormalGroup::free(1));

        // ℤ →4 ℤ with ℤ/2 coefficients: the differential vanishes mod 2.
        let h = integer_cohomology(&assemble(&[cone(4, 1)]), &BigUint::from(2u32)).unwrap();
        assert_eq!(h.get(1), FormalGroup::cyclic(2u32));
        assert_eq!(h.get(2), FormalGroup::cyclic(2u32));
    }

    #[test]
    fn rho_tensor_examples() {
        let s = |d| RhoSummand { degree: d, shape: RhoShape::FreeTower };
        let sj = |j, d| RhoSummand { degree: d, shape: RhoShape::ConeTower { j } };
        let x = RhoComplex::new(vec![s(0)]);
        assert_eq!(rho_module_tensor(&x, &x), RhoComplex::new(vec![s(0), s(1)]));
        let y = RhoComplex::new(vec![sj(2, 0)]);
        assert_eq!(rho_module_tensor(&x, &y), RhoComplex::new(vec![sj(2, 0), sj(2, 1)]));
        let z = RhoComplex::new(vec![sj(1, 0)]);
        assert_eq!(rho_module_tensor(&z, &z), RhoComplex::new(vec![sj(1, 0), sj(1, 1)]));
    }
}
