use num_bigint::BigInt;
use serde::Serialize;

use crate::cohomology::witt_cohomology;
use crate::exactalg::{AbGroup, FormalGroup, Hom, IntMatrix};
use crate::motives::{mod_two_power_eta, AtomicBlock, NormalForm};
use crate::wittring::two_pow;

use super::f2::{self, F2Vec};
use super::page::{block_pages, Label, Tower};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VGroupRecord {
    /// `dim_{F₂} V(A, j)ⁿ`.
    pub dim_v: usize,
    pub fiber_product: FormalGroup,
}

/// A generator of `E₁` of one block: label, row, and the last page on which it is a cycle.
struct Generator {
    label: Label,
    row: i64,
    /// `Some(r)`: a cycle through `Z_r` exactly; `None`: a permanent cycle.
    cycle_until: Option<u32>,
}

fn generators(b: &AtomicBlock) -> Vec<Generator> {
    match *b {
        AtomicBlock::Free { weight } => vec![Generator { label: Label::Plain, row: weight, cycle_until: None }],
        AtomicBlock::DyadicEta { t, weight } => vec![
            Generator { label: Label::U, row: weight, cycle_until: Some(t) },
            Generator { label: Label::V, row: weight + 1, cycle_until: None },
        ],
        AtomicBlock::OddTorsion { .. } => vec![],
    }
}

fn in_cycles(g: &Generator, r: u32) -> bool {
    g.cycle_until.is_none_or(|t| r <= t)
}

/// `dim V` of one block: pairs `(x, y) ∈ Z_j^{2n,n} × Z_{j+1}^{2n+2,n+1}` with `β^{j+1}x = ρʲy`.
fn block_dim_v(b: &AtomicBlock, j: u32, n: i64) -> usize {
    let page = block_pages(b, j + 1).expect("j + 1 >= 2");
    let target = (2 * n + 2 + j as i64, n + 1 + j as i64);
    let coords: Vec<&Tower> = page.towers.iter().filter(|t| t.contains(target.0, target.1)).collect();
    let unit = |tower: &Tower| -> F2Vec { coords.iter().map(|c| *c == tower).collect() };
    let own = |g: &Generator| page.towers.iter().find(|t| t.label == g.label && t.row() == g.row);
    let gens = generators(b);
    let mut cols = Vec::new();
    for g in gens.iter().filter(|g| g.row == n && in_cycles(g, j)) {
        let image = own(g)
            .and_then(|src| page.differential.iter().find(|d| d.source == (src.p, src.q)))
            .and_then(|d| page.towers.iter().find(|t| (t.p, t.q) == d.target && t.label == Label::V));
        cols.push(image.filter(|t| t.contains(target.0, target.1)).map_or(vec![false; coords.len()], unit));
    }
    for g in gens.iter().filter(|g| g.row == n + 1 && in_cycles(g, j + 1)) {
        let image = own(g).filter(|t| t.offset(target.0, target.1) == Some(j as i64) && t.contains(target.0, target.1));
        cols.push(image.map_or(vec![false; coords.len()], unit));
    }
    cols.len() - f2::rank(&cols).min(cols.len())
}

/// `V_b ×_{E_b} H_b` for one block, with `E_b` the towers of `E_{j+2}(b/2ʲη)` based at
/// `(2n+2, n+1)`.
fn block_fiber_product(b: &AtomicBlock, j: u32, n: i64, dim_v: usize) -> FormalGroup {
    let single = NormalForm::single(*b).expect("blocks of a normal form are valid");
    let h = witt_cohomology(&single, &two_pow(j)).get(n);
    let cone = mod_two_power_eta(&single, j);
    let e_page = super::page::pages(&cone, j + 2).expect("j + 2 >= 2");
    let de = e_page.towers.iter().filter(|t| (t.p, t.q) == (2 * n + 2, n + 1)).count();

    let h_orders: Vec<BigInt> = std::iter::repeat_n(BigInt::ZERO, h.free_rank())
        .chain(h.torsion_values().into_iter().map(BigInt::from))
        .collect();
    let v_group = AbGroup::from_orders(&vec![BigInt::from(2); dim_v]);
    let h_group = AbGroup::from_orders(&h_orders);
    let e_group = AbGroup::from_orders(&vec![BigInt::from(2); de]);
    let src = v_group.direct_sum(&h_group);
    let mut m = IntMatrix::zeros(de, src.gens());
    for k in 0..de {
        if k < dim_v {
            m.set(k, k, BigInt::from(1));
        }
        if k < h_orders.len() {
            m.set(k, dim_v + k, BigInt::from(-1));
        }
    }
    let hom = Hom { src: &src, dst: &e_group, matrix: &m };
    let (g, _) = AbGroup::subquotient(&hom.kernel(), src.relations());
    g.invariants()
}

/// `V(A, j)ⁿ` and its fiber product with `Hⁿ(A, W/2ʲ)` over `E_{j+2}^{2n+2,n+1}(A/2ʲη)`.
pub fn v_group(a: &NormalForm, j: u32, n: i64) -> VGroupRecord {
    assert!(j >= 1, "j must be positive");
    let mut dim_v = 0;
    let mut fiber = FormalGroup::zero();
    for b in a.blocks() {
        let d = block_dim_v(b, j, n);
        dim_v += d;
        fiber = fiber.direct_sum(&block_fiber_product(b, j, n, d));
    }
    VGroupRecord { dim_v, fiber_product: fiber }
}
