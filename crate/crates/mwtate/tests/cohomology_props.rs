mod common;

use num_bigint::BigUint;
use num_integer::Integer;
use proptest::prelude::*;

use mwtate::cohomology::{chow, eta_inverted, mod2_motivic, witt_cohomology, witt_integral};
use mwtate::exactalg::{FormalGroup, GradedGroup};
use mwtate::motives::tensor;

use common::normal_form;

/// Cyclic summands of a group: `0` for `ℤ`, `n` for `ℤ/n`.
fn cyclics(g: &FormalGroup) -> Vec<u64> {
    let mut out = vec![0; g.free_rank()];
    out.extend(g.torsion_values().iter().map(|v| u64::try_from(v).unwrap()));
    out
}

fn cyclic(n: u64) -> FormalGroup {
    if n == 0 {
        FormalGroup::free(1)
    } else {
        FormalGroup::cyclic(n)
    }
}

/// `ℤ/a ⊗ ℤ/b = ℤ/gcd(a, b)` and `Tor(ℤ/a, ℤ/b) = ℤ/gcd(a, b)`, with `ℤ = ℤ/0`.
fn kunneth_oracle(x: &GradedGroup, y: &GradedGroup) -> GradedGroup {
    let mut out = GradedGroup::new();
    for (d, g) in x.iter() {
        for (e, h) in y.iter() {
            for a in cyclics(g) {
                for b in cyclics(h) {
                    let gcd = a.gcd(&b);
                    out.add(d + e, &cyclic(gcd));
                    if a != 0 && b != 0 {
                        out.add(d + e - 1, &cyclic(gcd));
                    }
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn witt_kunneth(a in normal_form(5, true), b in normal_form(5, true)) {
        let lhs = witt_integral(&tensor(&a, &b));
        prop_assert_eq!(lhs, kunneth_oracle(&witt_integral(&a), &witt_integral(&b)));
    }

    #[test]
    fn chow_kunneth(a in normal_form(5, true), b in normal_form(5, true)) {
        let lhs = chow(&tensor(&a, &b), false);
        let (x, y) = (chow(&a, false), chow(&b, false));
        let mut rhs = GradedGroup::new();
        for (d, g) in x.iter() {
            for (e, h) in y.iter() {
                rhs.add(d + e, &FormalGroup::free(g.free_rank() * h.free_rank()));
            }
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mod2_generators_follow_chow(a in normal_form(8, true)) {
        let h = mod2_motivic(&a);
        let ch = chow(&a, true);
        for i in -6..=6 {
            prop_assert_eq!(h.count_at(2 * i, i), ch.get(i).mod2_dim());
        }
        prop_assert!(h.generators.iter().all(|&(p, q)| p == 2 * q));
    }

    /// The shift `(1)[1]` raises `m = 2q − p` by one: free and odd parts are periodic, and
    /// dyadic parts agree once `m + 1 ≤ 0`, otherwise every `ℤ/2ᵗ` loses one factor of 2.
    #[test]
    fn eta_inverted_under_the_shift(a in normal_form(8, true), p in -6i64..=6, q in -6i64..=6) {
        let (here, there) = (eta_inverted(&a, p, q), eta_inverted(&a, p + 1, q + 1));
        prop_assert_eq!(here.free_rank(), there.free_rank());
        prop_assert_eq!(here.odd_part(), there.odd_part());
        if 2 * q - p < 0 {
            prop_assert_eq!(here, there);
        } else {
            let shrink: Vec<u32> = here.dyadic_exponents().iter().filter(|&&t| t > 1).map(|t| t - 1).collect();
            prop_assert_eq!(there.dyadic_exponents(), shrink);
        }
    }

    /// Universal coefficients: `|H^d(W/m)| = |H^d ⊗ ℤ/m| · |Tor(H^{d+1}, ℤ/m)|`.
    #[test]
    fn coefficient_sequence(a in normal_form(8, true), m in 1u64..=12) {
        let h = witt_integral(&a);
        let hm = witt_cohomology(&a, &BigUint::from(m));
        for d in -6..=6 {
            let mut order = BigUint::from(1u32);
            for c in cyclics(&h.get(d)) {
                order *= if c == 0 { m } else { c.gcd(&m) };
            }
            for c in cyclics(&h.get(d + 1)) {
                if c != 0 {
                    order *= c.gcd(&m);
                }
            }
            prop_assert_eq!(hm.get(d).order(), Some(order));
        }
    }
}
