use num_bigint::BigInt;
use proptest::prelude::*;

use mwtate::wittring::{gw_ring, kx_orbit_canonical, p_bold, GWElement, GwOp, WittClass};

/// A virtual form `a⟨1⟩ + b⟨−1⟩ − c⟨1⟩ − d⟨−1⟩` as signed counts of the two basic forms.
#[derive(Clone, Copy, Debug)]
struct Virtual {
    plus: i64,
    minus: i64,
}

impl Virtual {
    fn element(self) -> GWElement {
        GWElement::new(self.plus + self.minus, self.plus - self.minus).unwrap()
    }

    /// Term-by-term product: `⟨1⟩⟨1⟩ = ⟨−1⟩⟨−1⟩ = ⟨1⟩`, `⟨1⟩⟨−1⟩ = ⟨−1⟩`.
    fn mul(self, o: Virtual) -> Virtual {
        Virtual { plus: self.plus * o.plus + self.minus * o.minus, minus: self.plus * o.minus + self.minus * o.plus }
    }
}

fn virtual_form() -> impl Strategy<Value = Virtual> {
    (-30i64..=30, -30i64..=30).prop_map(|(plus, minus)| Virtual { plus, minus })
}

proptest! {
    #[test]
    fn rank_and_signature_are_ring_maps(x in virtual_form(), y in virtual_form()) {
        let (a, b) = (x.element(), y.element());
        let sum = Virtual { plus: x.plus + y.plus, minus: x.minus + y.minus };
        prop_assert_eq!(gw_ring(GwOp::Add, &a, &b).unwrap(), sum.element());
        prop_assert_eq!(gw_ring(GwOp::Mul, &a, &b).unwrap(), x.mul(y).element());
        prop_assert_eq!(gw_ring(GwOp::Neg, &a, &b).unwrap(), Virtual { plus: -x.plus, minus: -x.minus }.element());
    }

    #[test]
    fn bold_p_is_a_sum_of_epsilon_powers(k in 0i64..=20) {
        let p = 2 * k + 1;
        let mut power = GWElement::one();
        let mut sum = GWElement::zero();
        for _ in 0..p {
            sum = sum.add(&power);
            power = power.mul(&GWElement::epsilon());
        }
        prop_assert_eq!(p_bold(p).unwrap(), sum.clone());
        prop_assert_eq!(sum.signature(), &BigInt::from(p));
    }

    #[test]
    fn orbit_canonicalisation(x in virtual_form()) {
        let e = x.element();
        let c = kx_orbit_canonical(&e).unwrap();
        prop_assert_eq!(kx_orbit_canonical(&c).unwrap(), c.clone());
        prop_assert_eq!(kx_orbit_canonical(&GWElement::minus_one_form().mul(&e)).unwrap(), c);
    }

    #[test]
    fn ideal_powers_descend(w in -1000i64..=1000, q in -2i64..=12) {
        let w = WittClass(BigInt::from(w));
        if w.in_ideal_power(q + 1) {
            prop_assert!(w.in_ideal_power(q));
        }
    }

    #[test]
    fn parity_is_enforced(r in -50i64..=50, s in -50i64..=50) {
        prop_assert_eq!(GWElement::new(r, s).is_ok(), (r - s) % 2 == 0);
    }
}
