//! The block calculus of Tate MW-motives over a Euclidean field.
//!
//! A [`TateComplex`] lists cells `ℤ(w)[2w]` and integer multiples of `η` between adjacent
//! weights. [`decompose`] turns it into a [`NormalForm`], a sorted multiset of
//! [`AtomicBlock`]s, via Smith normal form of the attaching matrices. Tensor products and
//! twists are computed on normal forms only, using the fusion rules of [`block::fuse`].

pub mod block;
mod complex;
mod normal_form;

pub use block::AtomicBlock;
pub use complex::{
    cone_blocks, cone_eta_map, decompose, realize, validate_complex, Attachment, Cell, TateComplex, ValidationReport,
    Violation,
};
pub use normal_form::{mod_two_power_eta, tensor, twist, NormalForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MotiveError {
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("invalid complex: {0:?}")]
    InvalidComplex(Vec<Violation>),
    #[error("odd block {0} has no cell presentation")]
    OddBlockNotRealizable(AtomicBlock),
    #[error("entry {from} -> {to} does not join adjacent weights")]
    IllegalEntry { from: String, to: String },
    #[error("the cone is not a complex: {0:?}")]
    NonComposableResult(Vec<Violation>),
    #[error("malformed JSON: {0}")]
    Json(String),
}

#[cfg(test)]
mod tests {
    use super::AtomicBlock::*;
    use super::*;

    fn nf(b: Vec<AtomicBlock>) -> NormalForm {
        NormalForm::new(b).unwrap()
    }

    #[test]
    fn validation_examples() {
        let one = TateComplex::new(&[("a", 0)], vec![]);
        assert!(validate_complex(&one).valid);

        let skip = TateComplex::new(&[("a", 0), ("b", 2)], vec![Attachment::new("b", "a", 1)]);
        let r = validate_complex(&skip);
        assert!(matches!(r.violations.as_slice(), [Violation::NonAdjacent { .. }]));

        let chain = TateComplex::new(
            &[("a", 0), ("b", 1), ("c", 2)],
            vec![Attachment::new("b", "a", 2), Attachment::new("c", "b", 3)],
        );
        let r = validate_complex(&chain);
        assert_eq!(r.violations, vec![Violation::NonComposable { weight: 0, from: "c".into(), to: "a".into() }]);
    }

    #[test]
    fn decompose_examples() {
        let six = TateComplex::new(&[("a", 0), ("b", 1)], vec![Attachment::new("b", "a", 6)]);
        assert_eq!(
            decompose(&six).unwrap(),
            nf(vec![DyadicEta { t: 1, weight: 0 }, OddTorsion { p: 3, r: 1, shift: 0 }])
        );
        assert_eq!(decompose(&TateComplex::new(&[("a", 2)], vec![])).unwrap(), nf(vec![Free { weight: 2 }]));

        let four = TateComplex::new(
            &[("a", 0), ("b", 1), ("c", 1), ("d", 2)],
            vec![Attachment::new("b", "a", 2), Attachment::new("d", "c", 3)],
        );
        assert_eq!(
            decompose(&four).unwrap(),
            nf(vec![DyadicEta { t: 1, weight: 0 }, DyadicEta { t: 0, weight: 1 }, OddTorsion { p: 3, r: 1, shift: 1 }])
        );
    }

    #[test]
    fn negative_coefficients_normalise() {
        let c = TateComplex::new(&[("a", 0), ("b", 1)], vec![Attachment::new("b", "a", -4)]);
        assert_eq!(decompose(&c).unwrap(), nf(vec![DyadicEta { t: 2, weight: 0 }]));
    }

    #[test]
    fn realize_examples() {
        let c = realize(&nf(vec![Free { weight: 0 }])).unwrap();
        assert_eq!(c.cells.len(), 1);
        let c = realize(&nf(vec![DyadicEta { t: 2, weight: 1 }])).unwrap();
        assert_eq!(c.cells.iter().map(|c| c.weight).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(c.attach[0].coeff, 4.into());
        let odd = nf(vec![OddTorsion { p: 3, r: 1, shift: 0 }]);
        assert!(matches!(realize(&odd), Err(MotiveError::OddBlockNotRealizable(_))));
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(
            tensor(&nf(vec![Free { weight: 2 }]), &nf(vec![DyadicEta { t: 3, weight: 1 }])),
            nf(vec![DyadicEta { t: 3, weight: 3 }])
        );
        assert_eq!(
            tensor(&nf(vec![DyadicEta { t: 1, weight: 0 }]), &nf(vec![DyadicEta { t: 2, weight: 0 }])),
            nf(vec![DyadicEta { t: 1, weight: 1 }, DyadicEta { t: 1, weight: 0 }])
        );
        let p3 = nf(vec![OddTorsion { p: 3, r: 1, shift: 0 }]);
        assert!(tensor(&p3, &nf(vec![OddTorsion { p: 5, r: 1, shift: 0 }])).is_empty());
        assert!(tensor(&nf(vec![DyadicEta { t: 2, weight: 0 }]), &p3).is_empty());
    }

    #[test]
    fn cone_examples() {
        let src = TateComplex::new(&[("u", 1)], vec![]);
        let tgt = TateComplex::new(&[("v", 0)], vec![]);
        let split = cone_eta_map(&src, &tgt, &[]).unwrap();
        assert_eq!(decompose(&split).unwrap(), nf(vec![Free { weight: 0 }, Free { weight: 1 }]));
        let c = cone_eta_map(&src, &tgt, &[Attachment::new("u", "v", 2)]).unwrap();
        assert_eq!(decompose(&c).unwrap(), nf(vec![DyadicEta { t: 1, weight: 0 }]));

        let src = TateComplex::new(&[("u1", 1), ("u2", 2)], vec![]);
        let c = cone_eta_map(&src, &tgt, &[Attachment::new("u1", "v", 3)]).unwrap();
        assert_eq!(
            decompose(&c).unwrap(),
            nf(vec![DyadicEta { t: 0, weight: 0 }, OddTorsion { p: 3, r: 1, shift: 0 }, Free { weight: 2 }])
        );
        assert!(matches!(
            cone_eta_map(&src, &tgt, &[Attachment::new("u2", "v", 1)]),
            Err(MotiveError::IllegalEntry { .. })
        ));
    }

    #[test]
    fn twist_examples() {
        assert_eq!(twist(&nf(vec![Free { weight: 1 }]), 2), nf(vec![Free { weight: 3 }]));
        assert_eq!(
            twist(&nf(vec![OddTorsion { p: 3, r: 1, shift: 0 }]), 1),
            nf(vec![OddTorsion { p: 3, r: 1, shift: 1 }])
        );
        assert_eq!(twist(&nf(vec![DyadicEta { t: 2, weight: 1 }]), -1), nf(vec![DyadicEta { t: 2, weight: 0 }]));
    }

    #[test]
    fn json_codec() {
        let a = nf(vec![Free { weight: 0 }, DyadicEta { t: 2, weight: 1 }, OddTorsion { p: 3, r: 1, shift: 1 }]);
        let s = a.to_json();
        assert_eq!(
            s,
            r#"[{"kind":"free","weight":0},{"kind":"dyadic","t":2,"weight":1},{"kind":"odd","p":3,"r":1,"shift":1}]"#
        );
        assert_eq!(NormalForm::from_json(&s).unwrap(), a);
        assert!(NormalForm::from_json(r#"[{"kind":"odd","p":9,"r":1,"shift":0}]"#).is_err());

        let c = TateComplex::from_json(
            r#"{"cells":[{"id":"a","weight":0},{"id":"b","weight":1}],"attach":[{"from":"b","to":"a","coeff":"123456789012345678901234567890"}]}"#,
        )
        .unwrap();
        assert_eq!(TateComplex::from_json(&c.to_json()).unwrap(), c);
    }
}
