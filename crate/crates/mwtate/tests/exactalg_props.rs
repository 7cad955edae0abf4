use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use mwtate::checks::{random_automorphism, random_complex, rng};
use mwtate::exactalg::{
    assemble, decompose_free_complex, integer_cohomology, rho_module_tensor, smith, summand_cohomology, IntMatrix,
    RhoComplex, RhoShape, RhoSummand,
};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..=5, 0usize..=5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-20i64..=20, c), r).prop_map(move |rows| {
            let mut m = IntMatrix::zeros(r, c);
            for (i, row) in rows.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m.set(i, j, BigInt::from(v));
                }
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_normal_form_is_exact(m in matrix()) {
        let f = smith(&m);
        prop_assert_eq!(&(&f.u * &m) * &f.v, f.s.clone());
        prop_assert_eq!(&f.u * &f.u_inv, IntMatrix::identity(m.rows()));
        prop_assert_eq!(&f.v * &f.v_inv, IntMatrix::identity(m.cols()));
        prop_assert!(f.s.is_diagonal());
        let d = f.invariant_factors();
        prop_assert!(d.iter().all(|x| x.is_positive()));
        prop_assert!(d.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
        prop_assert!((f.rank..m.rows().min(m.cols())).all(|i| f.s.get(i, i).is_zero()));
    }

    #[test]
    fn summands_reassemble(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_complex(&mut r);
        let parts = decompose_free_complex(&c).unwrap();
        let again = assemble(&parts);
        for m in [0u32, 2, 3, 4, 6, 8, 9] {
            let m = BigUint::from(m);
            let direct = integer_cohomology(&c, &m).unwrap();
            prop_assert_eq!(&integer_cohomology(&again, &m).unwrap(), &direct);
            prop_assert_eq!(&summand_cohomology(&parts, &m), &direct);
        }
        let moved = random_automorphism(&mut r, &c);
        prop_assert_eq!(decompose_free_complex(&moved).unwrap(), parts);
    }
}

/// An explicit complex of free `ℤ/2[ρ]`-modules: generators with chain degrees and a differential
/// whose entries are polynomials in `ρ` as bitmasks.
struct Explicit {
    degrees: Vec<i64>,
    edges: Vec<(usize, usize, u64)>,
}

fn explicit(s: &RhoSummand) -> Explicit {
    let d = s.degree;
    match s.shape {
        RhoShape::Unit => Explicit { degrees: vec![d], edges: vec![] },
        RhoShape::FreeTower => Explicit { degrees: vec![d, d + 1], edges: vec![] },
        RhoShape::ConeTower { j } => Explicit { degrees: vec![d, d + 1], edges: vec![(0, 1, 1 << j)] },
    }
}

fn explicit_sum(x: &RhoComplex) -> Explicit {
    let mut out = Explicit { degrees: vec![], edges: vec![] };
    for s in x.summands() {
        let e = explicit(s);
        let off = out.degrees.len();
        out.degrees.extend(e.degrees);
        out.edges.extend(e.edges.into_iter().map(|(a, b, p)| (a + off, b + off, p)));
    }
    out
}

/// Tensor product over `ℤ/2[ρ]` with the Leibniz differential (no signs mod 2).
fn explicit_tensor(x: &Explicit, y: &Explicit) -> Explicit {
    let n = y.degrees.len();
    let idx = |a: usize, b: usize| a * n + b;
    let mut degrees = Vec::new();
    for &da in &x.degrees {
        for &db in &y.degrees {
            degrees.push(da + db);
        }
    }
    let mut edges = Vec::new();
    for &(a, a2, p) in &x.edges {
        for b in 0..n {
            edges.push((idx(a, b), idx(a2, b), p));
        }
    }
    for &(b, b2, p) in &y.edges {
        for a in 0..x.degrees.len() {
            edges.push((idx(a, b), idx(a, b2), p));
        }
    }
    Explicit { degrees, edges }
}

fn f2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                rows[r].iter_mut().zip(pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    rank
}

/// `dim H_c(X ⊗ ℤ/2[ρ]/ρᴺ)` for every chain degree `c` in `lo..=hi`.
fn truncated_homology(x: &Explicit, n: usize, lo: i64, hi: i64) -> Vec<usize> {
    let basis = |c: i64| -> Vec<(usize, usize)> {
        x.degrees.iter().enumerate().filter(|(_, &d)| d == c).flat_map(|(g, _)| (0..n).map(move |k| (g, k))).collect()
    };
    let diff_rank = |c: i64| {
        let (src, tgt) = (basis(c), basis(c + 1));
        let rows: Vec<Vec<bool>> = src
            .iter()
            .map(|&(g, k)| {
                let mut row = vec![false; tgt.len()];
                for &(_, b, p) in x.edges.iter().filter(|e| e.0 == g) {
                    for e in (0..64).filter(|e| p >> e & 1 == 1) {
                        if let Some(pos) = tgt.iter().position(|&t| t == (b, k + e)) {
                            row[pos] ^= true;
                        }
                    }
                }
                row
            })
            .collect();
        if tgt.is_empty() {
            0
        } else {
            f2_rank(rows)
        }
    };
    (lo..=hi).map(|c| basis(c).len() - diff_rank(c) - diff_rank(c - 1)).collect()
}

fn rho_complex() -> impl Strategy<Value = RhoComplex> {
    let shape = prop_oneof![
        Just(RhoShape::Unit),
        Just(RhoShape::FreeTower),
        (1u32..=4).prop_map(|j| RhoShape::ConeTower { j }),
    ];
    prop::collection::vec((-2i64..=2, shape), 0..=3)
        .prop_map(|v| RhoComplex::new(v.into_iter().map(|(degree, shape)| RhoSummand { degree, shape }).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn rho_tensor_laws(x in rho_complex(), y in rho_complex(), z in rho_complex()) {
        prop_assert_eq!(rho_module_tensor(&x, &y), rho_module_tensor(&y, &x));
        prop_assert_eq!(
            rho_module_tensor(&rho_module_tensor(&x, &y), &z),
            rho_module_tensor(&x, &rho_module_tensor(&y, &z))
        );
    }

    /// The closed-form tensor and the explicit one have the same homology after reduction mod
    /// every `ρᴺ`, which pins free ranks and torsion exponents per chain degree.
    #[test]
    fn rho_tensor_matches_brute_force(x in rho_complex(), y in rho_complex()) {
        let brute = explicit_tensor(&explicit_sum(&x), &explicit_sum(&y));
        let closed = explicit_sum(&rho_module_tensor(&x, &y));
        for n in 1..=6 {
            prop_assert_eq!(truncated_homology(&brute, n, -5, 7), truncated_homology(&closed, n, -5, 7), "N = {}", n);
        }
    }
}
