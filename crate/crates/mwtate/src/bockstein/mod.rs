//! The `ρ`-Bockstein spectral sequence of Tate motives.
//!
//! Pages are computed in closed form from atomic blocks and checked against Witt cohomology,
//! the Künneth formula, the truncated long exact sequences and the Leibniz rule. A generic
//! exact-couple engine derives pages from integer presentations, and a small rewriting system
//! composes the Steenrod operator matrix.

pub mod couple;
pub(crate) mod f2;
mod kunneth;
mod leibniz;
mod page;
pub mod steenrod;
mod truncated;
mod vgroup;

pub use couple::{
    bockstein_couple, classical_e_infinity, couple_analyze, couple_derive, direct_page, torsion_order, CoupleAnalysis,
    CoupleError, ExactCouple,
};
pub use kunneth::{kunneth_e2, page_from_rho, rho_presentation, KunnethDiscrepancy, KunnethReport};
pub use leibniz::{leibniz_check, LeibnizReport};
pub use page::{
    block_pages, degeneracy_page, e2_sq2, pages, pages_from_witt, DiffEntry, Height, Label, Page, Tower, WittProfile,
};
pub use steenrod::{steenrod_dsquare_check, SteenrodReport};
pub use truncated::{truncated_check, TruncatedFailure, TruncatedReport};
pub use vgroup::{v_group, VGroupRecord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BocksteinError {
    #[error("page index {0} is below 2")]
    PageTooSmall(u32),
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;

    use super::*;
    use crate::cohomology::witt_cohomology;
    use crate::exactalg::{FormalGroup, FreeComplex, GradedGroup, IntMatrix};
    use crate::motives::{AtomicBlock, NormalForm};

    fn nf(blocks: &[AtomicBlock]) -> NormalForm {
        NormalForm::new(blocks.to_vec()).unwrap()
    }

    fn dy(t: u32, weight: i64) -> AtomicBlock {
        AtomicBlock::DyadicEta { t, weight }
    }

    fn free(weight: i64) -> AtomicBlock {
        AtomicBlock::Free { weight }
    }

    fn towers(p: &Page) -> Vec<(i64, i64, Height, Label)> {
        p.towers.iter().map(|t| (t.p, t.q, t.height, t.label)).collect()
    }

    #[test]
    fn block_page_examples() {
        let p = block_pages(&dy(2, 0), 2).unwrap();
        assert_eq!(towers(&p), vec![(0, 0, Height::Inf, Label::U), (2, 1, Height::Inf, Label::V)]);
        assert!(p.differential.is_empty());
        let p = block_pages(&dy(2, 0), 4).unwrap();
        assert_eq!(towers(&p), vec![(2, 1, Height::Finite(2), Label::V)]);
        let p = block_pages(&free(3), 7).unwrap();
        assert_eq!(towers(&p), vec![(6, 3, Height::Inf, Label::Plain)]);
        assert_eq!(
            block_pages(&dy(2, 0), 3).unwrap().differential,
            vec![DiffEntry { source: (0, 0), target: (2, 1), rho: 2 }]
        );
        assert_eq!(block_pages(&free(0), 1), Err(BocksteinError::PageTooSmall(1)));
    }

    #[test]
    fn page_examples() {
        let a = nf(&[free(0), dy(2, 1), free(3)]);
        let p = pages(&a, 2).unwrap();
        let bases: Vec<(i64, i64)> = p.towers.iter().map(|t| (t.p, t.q)).collect();
        assert_eq!(bases, vec![(0, 0), (2, 1), (4, 2), (6, 3)]);
        assert!(pages(&nf(&[AtomicBlock::OddTorsion { p: 3, r: 1, shift: 1 }]), 3).unwrap().is_empty());
        assert!(pages(&NormalForm::zero(), 5).unwrap().is_empty());
        assert_eq!(pages(&NormalForm::zero(), 0), Err(BocksteinError::PageTooSmall(0)));
    }

    #[test]
    fn witt_page_examples() {
        let mut h = GradedGroup::new();
        h.add(0, &FormalGroup::free(1));
        h.add(2, &FormalGroup::dyadic(2));
        h.add(3, &FormalGroup::free(1));
        let a = nf(&[free(0), dy(2, 1), free(3)]);
        assert_eq!(pages_from_witt(&h, 2).unwrap(), pages(&a, 2).unwrap());
        let p4 = pages_from_witt(&h, 4).unwrap();
        assert_eq!(p4.rows(), vec![0, 2, 3]);
        assert!(p4.towers.iter().any(|t| t.row() == 2 && t.height == Height::Finite(2)));
        assert_eq!(witt_cohomology(&a, &BigUint::from(0u32)), h);
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy_page(&nf(&[free(0)])), 2);
        assert_eq!(degeneracy_page(&nf(&[free(0), dy(2, 1), free(3)])), 4);
        assert_eq!(degeneracy_page(&nf(&[AtomicBlock::OddTorsion { p: 3, r: 1, shift: 0 }, free(0)])), 2);
    }

    #[test]
    fn kunneth_examples() {
        assert!(kunneth_e2(&nf(&[dy(1, 0)]), &nf(&[dy(1, 0)])).equal);
        assert!(kunneth_e2(&nf(&[free(0)]), &nf(&[dy(3, 2), free(1)])).equal);
        assert!(kunneth_e2(&nf(&[dy(1, 0)]), &nf(&[dy(2, 0)])).equal);
    }

    #[test]
    fn truncated_examples() {
        assert!(truncated_check(&nf(&[free(0)]), 2).holds);
        assert!(truncated_check(&nf(&[dy(1, 1)]), 3).holds);
        assert!(truncated_check(&NormalForm::zero(), 1).holds);
    }

    #[test]
    fn leibniz_examples() {
        let r = leibniz_check(1, 1);
        assert!(r.holds, "{r:?}");
        assert_eq!(r.beta_uu, "rho^1(uxv + vxu)");
        assert!(leibniz_check(1, 2).holds);
        assert!(leibniz_check(3, 3).holds);
    }

    #[test]
    fn v_group_examples() {
        assert_eq!(v_group(&nf(&[free(0)]), 1, 0).dim_v, 1);
        assert_eq!(v_group(&NormalForm::zero(), 2, 3).dim_v, 0);
        let r = v_group(&nf(&[dy(1, 0)]), 1, 0);
        assert_eq!(r.dim_v, 1);
        assert_eq!(r.fiber_product, FormalGroup::dyadic(1));
        assert_eq!(v_group(&nf(&[free(0)]), 3, 0).fiber_product, FormalGroup::dyadic(3));
        assert_eq!(v_group(&nf(&[dy(0, 0)]), 2, 0).fiber_product, FormalGroup::dyadic(1));
    }

    fn two_complex() -> FreeComplex {
        let mut c = FreeComplex::default();
        c.set_rank(0, 1);
        c.set_rank(1, 1);
        c.set_differential(0, IntMatrix::from_rows(&[vec![2]]));
        c
    }

    #[test]
    fn couple_of_multiplication_by_two() {
        let x = bockstein_couple(&two_complex());
        x.check_exact().unwrap();
        let a = couple_analyze(&x, 3).unwrap();
        let e1 = &a.pages[0];
        assert_eq!(e1.support().len(), 2);
        assert!(e1.iter().all(|(_, g)| *g == FormalGroup::dyadic(1)));
        assert!(a.pages[1].is_zero());
        assert!(a.e_infinity.is_zero());
        assert_eq!(a.torsion_order, Some(1));
        assert!(a.four_term_exactness && a.identification_holds && a.pages_consistent);
    }

    #[test]
    fn couple_with_zero_d() {
        let mut x = ExactCouple { shifts: (0, 0, 1), ..Default::default() };
        x.e.insert(0, crate::exactalg::AbGroup::zero());
        let a = couple_analyze(&x, 3).unwrap();
        assert!(a.pages.iter().all(|p| *p == a.pages[0]));
        assert_eq!(a.torsion_order, Some(1));
    }

    #[test]
    fn inexact_couple_is_rejected() {
        let mut x = ExactCouple { shifts: (0, 0, 1), ..Default::default() };
        x.d.insert(0, crate::exactalg::AbGroup::free(1));
        x.i.insert(0, IntMatrix::from_rows(&[vec![2]]));
        assert!(matches!(x.check_exact(), Err(CoupleError::InexactCouple { .. })));
    }

    #[test]
    fn steenrod_entries() {
        let r = steenrod_dsquare_check();
        assert!(r.quoted.entries[0].is_zero);
        assert!(r.quoted.entries[1].is_zero);
        assert!(r.quoted.entries[2].is_zero);
        assert_eq!(r.quoted.entries[3].result, "rho Sq1 Sq2 + rho Sq2 Sq1");
        assert!(!r.holds);
        assert!(r.extended.all_zero);
        assert!(r.mutation_detected && r.identity_ok);
    }
}
