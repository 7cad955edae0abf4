//! Named property suites over seeded random corpora.
//!
//! Every suite is deterministic in its seed. The same entry points back `mwtate check` and the
//! integration tests.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bockstein::{
    block_pages, bockstein_couple, classical_e_infinity, couple_analyze, degeneracy_page, e2_sq2, kunneth_e2,
    leibniz_check, pages, pages_from_witt, steenrod_dsquare_check, truncated_check, v_group, Height, Label,
};
use crate::cohomology::{chow, hom_cone, witt_cohomology, witt_integral, Category};
use crate::exactalg::{integer_cohomology, lattice, FormalGroup, FreeComplex, GradedGroup, IntMatrix};
use crate::geometry::{dyadic_valuation, hp1_classify, projective_bundle_hp1, Hp1Datum};
use crate::motives::{decompose, realize, tensor, AtomicBlock, NormalForm, TateComplex};
use crate::wittring::{kx_orbit_canonical, two_pow, GWElement};

pub const SUITES: &[&str] = &[
    "block-tables",
    "torsion-profile",
    "degeneration",
    "decomposition",
    "pbundle",
    "kunneth",
    "tensor-witt",
    "bounded",
    "couple",
    "steenrod",
    "truncated",
    "hom-cone",
    "hp1",
    "leibniz",
    "vgroup",
];

const MAX_REPORTED: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub passed: bool,
    /// The first few failing cases.
    pub failures: Vec<String>,
}

struct Tally {
    cases: usize,
    failures: Vec<String>,
    failed: usize,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: Vec::new(), failed: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(what());
            }
        }
    }

    fn finish(self, suite: &str, seed: u64) -> SuiteReport {
        SuiteReport { suite: suite.into(), seed, cases: self.cases, passed: self.failed == 0, failures: self.failures }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const ODD_PRIMES: [u64; 3] = [3, 5, 7];

pub fn random_block(rng: &mut impl Rng, odd: bool) -> AtomicBlock {
    let weight = rng.gen_range(-3..=3);
    match rng.gen_range(0..if odd { 3 } else { 2 }) {
        0 => AtomicBlock::Free { weight },
        1 => AtomicBlock::DyadicEta { t: rng.gen_range(0..=4), weight },
        _ => AtomicBlock::OddTorsion {
            p: *ODD_PRIMES.choose(rng).expect("nonempty"),
            r: rng.gen_range(1..=2),
            shift: weight,
        },
    }
}

/// A normal form with at most `max_blocks` blocks, odd blocks included when `odd` is set.
pub fn random_normal_form(rng: &mut impl Rng, max_blocks: usize, odd: bool) -> NormalForm {
    let n = rng.gen_range(0..=max_blocks);
    NormalForm::new((0..n).map(|_| random_block(rng, odd)).collect()).expect("generated blocks are valid")
}

/// A random unimodular `n × n` matrix and its inverse, as a product of elementary operations.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut m = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n == 0 {
        return (m, inv);
    }
    for _ in 0..2 * n + 2 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut e = IntMatrix::identity(n);
        let mut e_inv = IntMatrix::identity(n);
        if i == j {
            e.set(i, i, BigInt::from(-1));
            e_inv.set(i, i, BigInt::from(-1));
        } else {
            let c: i64 = rng.gen_range(-2..=2);
            e.set(i, j, BigInt::from(c));
            e_inv.set(i, j, BigInt::from(-c));
        }
        m = &e * &m;
        inv = &inv * &e_inv;
    }
    (m, inv)
}

pub fn random_automorphism(rng: &mut impl Rng, c: &FreeComplex) -> FreeComplex {
    let p: BTreeMap<i64, (IntMatrix, IntMatrix)> =
        c.degrees().into_iter().map(|w| (w, random_unimodular(rng, c.rank(w)))).collect();
    c.change_basis(&p)
}

fn random_entry(rng: &mut impl Rng) -> BigInt {
    BigInt::from(rng.gen_range(-9i64..=9))
}

/// A composable complex in adjacent degrees `0..=2` with at most 8 cells and entries in
/// `[−9, 9]`.
pub fn random_complex(rng: &mut impl Rng) -> FreeComplex {
    let degrees = rng.gen_range(2..=3);
    let mut ranks = vec![0usize; degrees];
    let cells = rng.gen_range(1..=8);
    for _ in 0..cells {
        let k = rng.gen_range(0..degrees);
        ranks[k] += 1;
    }
    let mut c = FreeComplex::new();
    for (w, &r) in ranks.iter().enumerate() {
        c.set_rank(w as i64, r);
    }
    let mut d0 = IntMatrix::zeros(ranks[0], ranks[1]);
    for i in 0..ranks[0] {
        for j in 0..ranks[1] {
            d0.set(i, j, random_entry(rng));
        }
    }
    c.set_differential(0, d0.clone());
    if degrees == 3 {
        // Columns of d₁ are small combinations of a kernel basis of d₀.
        let ker = lattice::kernel(&d0);
        let mut d1 = IntMatrix::zeros(ranks[1], ranks[2]);
        if ker.cols() > 0 {
            for j in 0..ranks[2] {
                let coeffs: Vec<BigInt> = (0..ker.cols()).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect();
                let col = ker.mul_vec(&coeffs);
                if col.iter().all(|v| v.magnitude() <= &BigUint::from(9u32)) {
                    for (i, v) in col.into_iter().enumerate() {
                        d1.set(i, j, v);
                    }
                }
            }
        }
        c.set_differential(1, d1);
    }
    c
}

/// `E_i^{p,q}(ℤ/2ʲη(0)[0])` from the closed-form table: `ρ^q·u` for `p = q ≥ 0` and
/// `i ≤ j + 1`; `ρ^{q−1}·v` for `p = q + 1`, `q ≥ 1`, when `i ≤ j + 1` or `q ≤ j`.
pub fn dyadic_table_dim(j: u32, i: u32, p: i64, q: i64) -> usize {
    let early = i <= j + 1;
    let u = p == q && q >= 0 && early;
    let v = p == q + 1 && q >= 1 && (early || q <= j as i64);
    usize::from(u) + usize::from(v)
}

/// Rank of the page differential out of `(p, q)` in the closed-form table.
pub fn dyadic_table_diff(j: u32, i: u32, p: i64, q: i64) -> usize {
    usize::from(i == j + 1 && p == q && q >= 0)
}

fn block_tables(_seed: u64) -> Tally {
    let mut t = Tally::new();
    for j in 1..=3u32 {
        let b = AtomicBlock::DyadicEta { t: j, weight: 0 };
        for i in 2..=j + 3 {
            let page = block_pages(&b, i).expect("i >= 2");
            for q in -2..=10 {
                for p in q - 2..=q + 3 {
                    let (d, r) = (page.dim_at(p, q), page.diff_rank_at(p, q));
                    t.check(d == dyadic_table_dim(j, i, p, q) && r == dyadic_table_diff(j, i, p, q), || {
                        format!("j={j} i={i} (p,q)=({p},{q}): dim {d}, diff rank {r}")
                    });
                }
            }
            if i >= j + 2 {
                let ok = page.towers.iter().all(|tw| tw.label == Label::V && tw.height == Height::Finite(j));
                t.check(ok, || format!("j={j} i={i}: truncated v-tower expected"));
            }
        }
    }
    t
}

fn torsion_profile(seed: u64, n: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let a = random_normal_form(&mut rng, 12, true);
        let h = witt_integral(&a);
        for i in 2..=degeneracy_page(&a) + 2 {
            let ok = pages_from_witt(&h, i).expect("i >= 2") == pages(&a, i).expect("i >= 2");
            t.check(ok, || format!("{a} at page {i}"));
        }
    }
    t
}

/// `r` with `2ʳ` the largest dyadic block order (`r = 0` if none).
fn max_block_exponent(a: &NormalForm) -> u32 {
    a.blocks()
        .iter()
        .filter_map(|b| match *b {
            AtomicBlock::DyadicEta { t, .. } => Some(t),
            _ => None,
        })
        .max()
        .unwrap_or(0)
}

fn degeneration(seed: u64, n: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let a = random_normal_form(&mut rng, 12, true);
        let r = max_block_exponent(&a);
        t.check(degeneracy_page(&a) == r + 2, || format!("{a}: degeneracy page {} vs {}", degeneracy_page(&a), r + 2));
        let stable = pages(&a, r + 2).expect("i >= 2");
        for m in r + 3..=r + 5 {
            t.check(pages(&a, m).expect("i >= 2").same_content(&stable), || format!("{a}: page {m} moved"));
        }
        if r >= 1 {
            let before = pages(&a, r + 1).expect("i >= 2");
            t.check(!before.same_content(&stable), || format!("{a}: page {} equals page {}", r + 1, r + 2));
        }
    }
    t
}

fn chow_direct(c: &FreeComplex) -> GradedGroup {
    let mut g = GradedGroup::new();
    for w in c.degrees() {
        g.add(w, &FormalGroup::free(c.rank(w)));
    }
    g
}

fn decomposition(seed: u64, forms: usize, complexes: usize, autos: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::new();
    let zero = BigUint::from(0u32);
    for _ in 0..forms {
        let a = random_normal_form(&mut rng, 12, false);
        let c = realize(&a).expect("odd-free");
        t.check(decompose(&c).ok().as_ref() == Some(&a), || format!("decompose(realize({a}))"));
        let fc = c.free_complex();
        let witt_ok = integer_cohomology(&fc, &zero).expect("composable") == witt_integral(&a);
        t.check(witt_ok, || format!("{a}: Witt cohomology of the complex"));
        t.check(chow_direct(&fc) == chow(&a, false), || format!("{a}: Chow groups of the complex"));
    }
    for _ in 0..complexes {
        let fc = random_complex(&mut rng);
        let base = decompose(&TateComplex::from_free_complex(&fc)).expect("random complexes compose");
        let witt_ok = integer_cohomology(&fc, &zero).expect("composable") == witt_integral(&base);
        t.check(witt_ok, || format!("{base}: Witt cohomology of a random complex"));
        t.check(chow_direct(&fc) == chow(&base, false), || format!("{base}: Chow groups of a random complex"));
        for _ in 0..autos {
            let moved = random_automorphism(&mut rng, &fc);
            let got = decompose(&TateComplex::from_free_complex(&moved)).expect("automorphisms preserve d² = 0");
            t.check(got == base, || format!("{base} vs {got} after an automorphism"));
        }
    }
    t
}

fn pbundle(_seed: u64) -> Tally {
    let mut t = Tally::new();
    for n in 1..=6u32 {
        let e = GWElement::new(0, 1i64 << n).expect("even signature, rank 0");
        let a = decompose(&projective_bundle_hp1(&e).expect("valid")).expect("valid");
        let h2 = witt_integral(&a).get(2);
        t.check(h2 == FormalGroup::dyadic(n), || format!("n={n}: H^2 = {h2}"));
        t.check(degeneracy_page(&a) == n + 2, || format!("n={n}: degeneracy page {}", degeneracy_page(&a)));
    }
    let e = GWElement::new(1, 3).expect("odd parity");
    let a = decompose(&projective_bundle_hp1(&e).expect("valid")).expect("valid");
    let h2 = witt_integral(&a).get(2);
    t.check(h2 == FormalGroup::cyclic(3u32), || format!("signature 3: H^2 = {h2}"));
    t.check(degeneracy_page(&a) == 2, || "signature 3: degeneracy page".into());
    for s in -12i64..=12 {
        let e = GWElement::new(s.rem_euclid(2), s).expect("parity");
        let a = decompose(&projective_bundle_hp1(&e).expect("valid")).expect("valid");
        let r = dyadic_valuation(&BigInt::from(s));
        let expected = if s == 0 { 2 } else { r + 2 };
        t.check(degeneracy_page(&a) == expected, || format!("signature {s}: degeneracy page"));
    }
    t
}

fn kunneth(seed: u64, n: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::new();
    for s in 0..=4 {
        for u in 0..=4 {
            let a = NormalForm::single(AtomicBlock::DyadicEta { t: s, weight: 0 }).expect("valid");
            let b = NormalForm::single(AtomicBlock::DyadicEta { t: u, weight: 0 }).expect("valid");
            let r = kunneth_e2(&a, &b);
            t.check(r.equal, || format!("{a} x {b}: {:?}", r.first_discrepancy));
        }
    }
    for _ in 0..n {
        let a = random_normal_form(&mut rng, 8, true);
        let b = random_normal_form(&mut rng, 8, true);
        let r = kunneth_e2(&a, &b);
        t.check(r.equal, || format!("{a} x {b}: {:?}", r.first_discrepancy));
    }
    t
}

fn tensor_witt(seed: u64, n: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let a = random_normal_form(&mut rng, 8, true);
        let b = random_normal_form(&mut rng, 8, true);
        let lhs = witt_integral(&tensor(&a, &b));
        let rhs = witt_integral(&a).kunneth(&witt_integral(&b));
        t.check(lhs == rhs, || format!("{a} x {b}"));
    }
    t
}

fn bounded(seed: u64, n: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::new();
    let two = BigUint::from(2u32);
    for _ in 0..n {
        let a = random_normal_form(&mut rng, 12, true);
        let e2 = pages(&a, 2).expect("i >= 2");
        t.check(e2_sq2(&a).towers == e2.towers, || format!("{a}: Sq2 cohomology differs from E2"));
        let h = witt_cohomology(&a, &two);
        for q in -10..10 {
            for p in q - 10..q + 10 {
                let expected = if p <= 2 * q { h.get(p - q).mod2_dim() } else { 0 };
                t.check(e2.dim_at(p, q) == expected, || format!("{a} at ({p},{q})"));
            }
        }
    }
    t
}

fn couple(seed: u64, n: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let c = random_complex(&mut rng);
        let x = bockstein_couple(&c);
        match couple_analyze(&x, 2) {
            Err(e) => t.check(false, || format!("{c:?}: {e}")),
            Ok(r) => {
                t.check(r.e_infinity == classical_e_infinity(&c), || format!("{c:?}: E_inf {:?}", r.e_infinity));
                t.check(r.degenerates && r.pages_consistent, || format!("{c:?}: degeneration"));
                t.check(r.four_term_exactness, || format!("{c:?}: four-term sequence"));
                t.check(r.identification_holds, || format!("{c:?}: identification"));
                if let Some(cart) = r.cartesian {
                    t.check(cart, || format!("{c:?}: Cartesian square"));
                }
            }
        }
    }
    t
}

fn steenrod(_seed: u64) -> Tally {
    let mut t = Tally::new();
    let r = steenrod_dsquare_check();
    for (k, e) in r.quoted.entries.iter().enumerate() {
        t.check(e.is_zero, || format!("entry ({}, {}) leaves {}", k / 2 + 1, k % 2 + 1, e.result));
    }
    t.check(r.mutation_detected, || "dropping Sq2 Sq2 = tau Sq3 Sq1 went unnoticed".into());
    t.check(r.identity_ok, || "identity matrix does not square to itself".into());
    t
}

fn truncated(seed: u64, n: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let a = random_normal_form(&mut rng, 6, true);
        for j in 1..=3 {
            let r = truncated_check(&a, j);
            t.check(r.holds, || format!("{a}, j={j}: {:?}", r.failures.first()));
        }
    }
    t
}

fn hom_cone_suite(_seed: u64) -> Tally {
    let mut t = Tally::new();
    let spot = hom_cone(6, 3, 2, Category::Mw).expect("l > 0");
    let expected = FormalGroup::cyclic(3u32).direct_sum(&FormalGroup::dyadic(2));
    t.check(spot == expected, || format!("l=6, q=2, p=3: {spot}"));
    for l in 1..=24i64 {
        let two_part = 1i64 << l.trailing_zeros();
        let cone = TateComplex::new(&[("a", 0), ("b", 1)], vec![crate::motives::Attachment::new("b", "a", l)]);
        let odd_witt = witt_integral(&decompose(&cone).expect("two cells")).get(1).odd_part();
        for q in -6..=6 {
            for p in -6..=6 {
                for cat in [Category::Mw, Category::W] {
                    let g = hom_cone(l, p, q, cat).expect("l > 0");
                    let dyadic = hom_cone(two_part, p, q, cat).expect("l > 0");
                    let odd = if p == q + 1 { odd_witt.clone() } else { FormalGroup::zero() };
                    t.check(g == dyadic.direct_sum(&odd), || format!("l={l} p={p} q={q} {cat:?}: {g}"));
                }
            }
        }
    }
    t
}

fn hp1(_seed: u64) -> Tally {
    let mut t = Tally::new();
    for r in -8i64..=8 {
        for s in -8i64..=8 {
            let Ok(e) = GWElement::new(r, s) else { continue };
            let c = kx_orbit_canonical(&e).expect("valid");
            t.check(kx_orbit_canonical(&c).ok().as_ref() == Some(&c), || format!("({r},{s}): not idempotent"));
            let flipped = GWElement::minus_one_form().mul(&e);
            let (a, b) = (hp1_classify(2, &Hp1Datum::Euler(e.clone())), hp1_classify(2, &Hp1Datum::Euler(flipped)));
            t.check(a.is_ok() && a == b, || format!("({r},{s}): not orbit-constant"));
            let class = a.expect("valid rank 2 datum");
            t.check(class.stably_free_nontrivial == (r == 0 && s != 0), || format!("({r},{s}): predicate"));
            t.check(class.is_free == (r == 0 && s == 0), || format!("({r},{s}): freeness"));
        }
    }
    t
}

fn leibniz(_seed: u64) -> Tally {
    let mut t = Tally::new();
    for j in 1..=4 {
        for k in 1..=4 {
            let r = leibniz_check(j, k);
            t.check(r.holds, || format!("({j},{k}): {:?}", r.mismatches.first()));
        }
    }
    t
}

fn vgroup(seed: u64, n: usize) -> Tally {
    let mut rng = rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let a = random_normal_form(&mut rng, 8, true);
        for deg in -3..=4 {
            let dims: Vec<usize> = (1..=4).map(|j| v_group(&a, j, deg).dim_v).collect();
            t.check(dims.windows(2).all(|w| w[1] <= w[0]), || format!("{a} at n={deg}: {dims:?}"));
            // Without ℤ/η blocks the fiber product is the 2-primary part of Hⁿ(A, W/2ʲ).
            let stripped = NormalForm::new(
                a.blocks().iter().copied().filter(|b| !matches!(b, AtomicBlock::DyadicEta { t: 0, .. })).collect(),
            )
            .expect("valid blocks");
            for j in 1..=3 {
                let h = witt_cohomology(&stripped, &two_pow(j)).get(deg);
                let dyadic = FormalGroup::from_parts(0, h.torsion().iter().filter(|pp| pp.is_two()).cloned().collect());
                let fp = v_group(&stripped, j, deg).fiber_product;
                t.check(fp == dyadic, || format!("{stripped} at n={deg}, j={j}: {fp} vs {dyadic}"));
            }
        }
    }
    t
}

/// Runs a named suite; `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64) -> Option<SuiteReport> {
    let tally = match name {
        "block-tables" => block_tables(seed),
        "torsion-profile" => torsion_profile(seed, 300),
        "degeneration" => degeneration(seed, 300),
        "decomposition" => decomposition(seed, 500, 20, 100),
        "pbundle" => pbundle(seed),
        "kunneth" => kunneth(seed, 100),
        "tensor-witt" => tensor_witt(seed, 200),
        "bounded" => bounded(seed, 100),
        "couple" => couple(seed, 100),
        "steenrod" => steenrod(seed),
        "truncated" => truncated(seed, 50),
        "hom-cone" => hom_cone_suite(seed),
        "hp1" => hp1(seed),
        "leibniz" => leibniz(seed),
        "vgroup" => vgroup(seed, 50),
        _ => return None,
    };
    Some(tally.finish(name, seed))
}
