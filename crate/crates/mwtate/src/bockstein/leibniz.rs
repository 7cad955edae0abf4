use std::collections::BTreeMap;

use serde::Serialize;

use crate::motives::{tensor, AtomicBlock, NormalForm};

use super::f2::{self, F2Vec, Subspace};
use super::page::pages;

/// Products `x × y` of the generators `u ∈ E^{0,0}`, `v ∈ E^{2,1}` of two dyadic cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mono {
    UU,
    UV,
    VU,
    VV,
}

const MONOS: [Mono; 4] = [Mono::UU, Mono::UV, Mono::VU, Mono::VV];

impl Mono {
    fn bidegree(self, a: i64) -> (i64, i64) {
        match self {
            Mono::UU => (a, a),
            Mono::UV | Mono::VU => (a + 2, a + 1),
            Mono::VV => (a + 4, a + 2),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Mono::UU => "uxu",
            Mono::UV => "uxv",
            Mono::VU => "vxu",
            Mono::VV => "vxv",
        }
    }
}

/// `ρᵃ·m` for `a ≤ top`, as coordinates of a truncated `F₂`-basis.
struct Window {
    top: i64,
}

impl Window {
    fn dim(&self) -> usize {
        4 * (self.top as usize + 1)
    }

    fn index(&self, a: i64, m: Mono) -> Option<usize> {
        (0..=self.top).contains(&a).then(|| 4 * a as usize + m as usize)
    }

    fn unit(&self, a: i64, m: Mono) -> F2Vec {
        let mut v = vec![false; self.dim()];
        if let Some(k) = self.index(a, m) {
            v[k] = true;
        }
        v
    }

    fn decode(&self, k: usize) -> (i64, Mono) {
        ((k / 4) as i64, MONOS[k % 4])
    }

    fn bidegrees(&self) -> Vec<(i64, i64)> {
        let mut out: Vec<(i64, i64)> = (0..=self.top).flat_map(|a| MONOS.iter().map(move |m| m.bidegree(a))).collect();
        out.sort();
        out.dedup();
        out
    }

    fn basis_at(&self, b: (i64, i64)) -> Vec<F2Vec> {
        (0..=self.top)
            .flat_map(|a| MONOS.iter().map(move |&m| (a, m)))
            .filter(|&(a, m)| m.bidegree(a) == b)
            .map(|(a, m)| self.unit(a, m))
            .collect()
    }
}

/// `β_i` on product classes by the Leibniz rule, with `β_{j+1}(u) = ρʲv` in the first factor
/// and `β_{k+1}(u) = ρᵏv` in the second.
fn leibniz_d(w: &Window, j: u32, k: u32, i: u32, x: &[bool]) -> F2Vec {
    let mut out = vec![false; w.dim()];
    let (bj, bk) = (i == j + 1, i == k + 1);
    for (idx, _) in x.iter().enumerate().filter(|(_, &b)| b) {
        let (a, m) = w.decode(idx);
        let terms: &[(bool, i64, Mono)] = match m {
            Mono::UU => &[(bj, j as i64, Mono::VU), (bk, k as i64, Mono::UV)],
            Mono::UV => &[(bj, j as i64, Mono::VV)],
            Mono::VU => &[(bk, k as i64, Mono::VV)],
            Mono::VV => &[],
        };
        for &(on, shift, target) in terms {
            if on {
                f2::add_into(&mut out, &w.unit(a + shift, target));
            }
        }
    }
    out
}

fn describe(w: &Window, x: &[bool]) -> String {
    let terms: Vec<(i64, Mono)> = x.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| w.decode(k)).collect();
    if terms.is_empty() {
        return "0".into();
    }
    let a = terms[0].0;
    let names: Vec<&str> = terms.iter().map(|(_, m)| m.name()).collect();
    if terms.iter().all(|t| t.0 == a) {
        format!("rho^{a}({})", names.join(" + "))
    } else {
        terms.iter().map(|(a, m)| format!("rho^{a} {}", m.name())).collect::<Vec<_>>().join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeibnizReport {
    pub holds: bool,
    pub pages_checked: Vec<u32>,
    pub d_squared_zero: bool,
    pub well_defined: bool,
    /// `β_{m+1}(u × u)` for `m = min(j, k)`.
    pub beta_uu: String,
    pub mismatches: Vec<String>,
}

/// Runs the spectral sequence of `ℤ/2ʲη ⊗ ℤ/2ᵏη` on product representatives with Leibniz
/// differentials and compares every page with the block tables of the tensor product.
pub fn leibniz_check(j: u32, k: u32) -> LeibnizReport {
    assert!(j >= 1 && k >= 1, "block exponents must be positive");
    let top = 3 * j.max(k) as i64 + 12;
    let w = Window { top };
    // Classes whose differentials may leave the window are not compared.
    let reliable_q = top - j.max(k) as i64 - 4;
    let bidegrees = w.bidegrees();
    let mut z: BTreeMap<(i64, i64), Subspace> =
        bidegrees.iter().map(|&b| (b, Subspace::spanned_by(w.dim(), &w.basis_at(b)))).collect();
    let mut bd: BTreeMap<(i64, i64), Subspace> = bidegrees.iter().map(|&b| (b, Subspace::new(w.dim()))).collect();

    let nf = |t| NormalForm::single(AtomicBlock::DyadicEta { t, weight: 0 }).expect("valid block");
    let product = tensor(&nf(j), &nf(k));
    let m = j.min(k);
    let beta_uu = describe(&w, &leibniz_d(&w, j, k, m + 1, &w.unit(0, Mono::UU)));

    let mut mismatches = Vec::new();
    let (mut d_squared_zero, mut well_defined) = (true, true);
    let last = j.max(k) + 3;
    let empty = Subspace::new(w.dim());
    for i in 2..=last {
        let page = pages(&product, i).expect("i >= 2");
        let shift = (i as i64 + 1, i as i64);
        let mut next_z = BTreeMap::new();
        let mut next_b = bd.clone();
        for &b in &bidegrees {
            let target = (b.0 + shift.0, b.1 + shift.1);
            let zb = &z[&b];
            let (bt, zt) = (bd.get(&target).unwrap_or(&empty), z.get(&target).unwrap_or(&empty));
            let images: Vec<F2Vec> = zb.basis().map(|x| leibniz_d(&w, j, k, i, x)).collect();
            let inside = b.1 <= reliable_q;
            if inside {
                for (x, dx) in zb.basis().zip(&images) {
                    let ddx = leibniz_d(&w, j, k, i, dx);
                    let tt = (target.0 + shift.0, target.1 + shift.1);
                    if !bd.get(&tt).unwrap_or(&empty).contains(&ddx) {
                        d_squared_zero = false;
                    }
                    if !zt.contains(dx) {
                        well_defined = false;
                    }
                    if bd[&b].contains(x) && !bt.contains(dx) {
                        well_defined = false;
                    }
                }
            }
            let reduced: Vec<F2Vec> = images.iter().map(|v| bt.reduce(v)).collect();
            let mut zn = Subspace::new(w.dim());
            let basis: Vec<&F2Vec> = zb.basis().collect();
            for comb in f2::kernel(&reduced, w.dim()) {
                let mut v = vec![false; w.dim()];
                for (c, x) in comb.iter().zip(&basis) {
                    if *c {
                        f2::add_into(&mut v, x);
                    }
                }
                zn.insert(&v);
            }
            for x in bd[&b].basis() {
                zn.insert(x);
            }
            let rank = bt.sum(&Subspace::spanned_by(w.dim(), &images)).dim() - bt.dim();
            if inside {
                let dim = zb.dim() - bd[&b].dim();
                if dim != page.dim_at(b.0, b.1) {
                    mismatches.push(format!("page {i} at {b:?}: dim {dim} vs {}", page.dim_at(b.0, b.1)));
                }
                if rank != page.diff_rank_at(b.0, b.1) {
                    mismatches.push(format!("page {i} at {b:?}: rank {rank} vs {}", page.diff_rank_at(b.0, b.1)));
                }
            }
            next_z.insert(b, zn);
            if let Some(nb) = next_b.get_mut(&target) {
                for v in &images {
                    nb.insert(v);
                }
            }
        }
        z = next_z;
        bd = next_b;
    }
    LeibnizReport {
        holds: mismatches.is_empty() && d_squared_zero && well_defined,
        pages_checked: (2..=last).collect(),
        d_squared_zero,
        well_defined,
        beta_uu,
        mismatches,
    }
}
