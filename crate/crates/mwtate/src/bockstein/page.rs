use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::cohomology::{mod2_motivic, witt_integral};
use crate::exactalg::GradedGroup;
use crate::motives::{AtomicBlock, NormalForm};

use super::BocksteinError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Height {
    Finite(u32),
    Inf,
}

impl Height {
    /// Whether offset `k` lies inside the tower.
    pub fn covers(self, k: i64) -> bool {
        k >= 0
            && match self {
                Height::Inf => true,
                Height::Finite(h) => k < h as i64,
            }
    }
}

impl Serialize for Height {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Height::Finite(h) => s.serialize_u32(*h),
            Height::Inf => s.serialize_str("inf"),
        }
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(h) => write!(f, "{h}"),
            Height::Inf => f.write_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    U,
    V,
    Plain,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::U => "u",
            Label::V => "v",
            Label::Plain => "plain",
        })
    }
}

/// A `ρ`-cyclic tower: entries at `(p + k, q + k)` for `0 ≤ k < height`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Tower {
    pub p: i64,
    pub q: i64,
    pub height: Height,
    pub label: Label,
}

impl Tower {
    /// A tower based at `(2n, n)`, on row `n = p − q`.
    pub fn on_row(n: i64, height: Height, label: Label) -> Self {
        Tower { p: 2 * n, q: n, height, label }
    }

    pub fn row(&self) -> i64 {
        self.p - self.q
    }

    /// Offset of `(p, q)` in the tower if it lies on the tower's diagonal.
    pub fn offset(&self, p: i64, q: i64) -> Option<i64> {
        (p - self.p == q - self.q).then_some(p - self.p)
    }

    pub fn contains(&self, p: i64, q: i64) -> bool {
        self.offset(p, q).is_some_and(|k| self.height.covers(k))
    }
}

/// The page differential sends the tower based at `source` onto `ρ^rho` times the tower based
/// at `target`, with bidegree `(rho + 2, rho + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DiffEntry {
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub rho: u32,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Page {
    pub page: u32,
    pub towers: Vec<Tower>,
    pub differential: Vec<DiffEntry>,
}

impl Page {
    pub fn new(page: u32, mut towers: Vec<Tower>, mut differential: Vec<DiffEntry>) -> Self {
        towers.sort();
        differential.sort();
        Page { page, towers, differential }
    }

    pub fn is_empty(&self) -> bool {
        self.towers.is_empty()
    }

    pub fn direct_sum(&self, other: &Page) -> Page {
        let mut t = self.towers.clone();
        t.extend_from_slice(&other.towers);
        let mut d = self.differential.clone();
        d.extend_from_slice(&other.differential);
        Page::new(self.page, t, d)
    }

    /// Equality of towers and differentials, ignoring the page index.
    pub fn same_content(&self, other: &Page) -> bool {
        self.towers == other.towers && self.differential == other.differential
    }

    pub fn dim_at(&self, p: i64, q: i64) -> usize {
        self.towers.iter().filter(|t| t.contains(p, q)).count()
    }

    /// Rank of `ρʲ : E^{p,q} → E^{p+j,q+j}`; towers are independent, so this counts the towers
    /// that still contain the target.
    pub fn rho_rank(&self, p: i64, q: i64, j: u32) -> usize {
        self.towers.iter().filter(|t| t.contains(p, q) && t.contains(p + j as i64, q + j as i64)).count()
    }

    /// Rank of the differential out of `(p, q)`.
    pub fn diff_rank_at(&self, p: i64, q: i64) -> usize {
        self.differential
            .iter()
            .filter(|d| {
                let src = self.towers.iter().find(|t| (t.p, t.q) == d.source && t.label == Label::U);
                let tgt = self.towers.iter().find(|t| (t.p, t.q) == d.target && t.label == Label::V);
                match (src, tgt) {
                    (Some(s), Some(t)) => s.contains(p, q) && t.contains(p + d.rho as i64 + 2, q + d.rho as i64 + 1),
                    _ => false,
                }
            })
            .count()
    }

    /// Rows `p − q` that carry a tower.
    pub fn rows(&self) -> Vec<i64> {
        let mut r: Vec<i64> = self.towers.iter().map(Tower::row).collect();
        r.sort();
        r.dedup();
        r
    }

    /// Plain-text table, one tower per line.
    pub fn to_table(&self) -> String {
        let mut out = format!("page {}\n{:>6} {:>6} {:>6} {:>6}\n", self.page, "p", "q", "height", "label");
        for t in &self.towers {
            out.push_str(&format!("{:>6} {:>6} {:>6} {:>6}\n", t.p, t.q, t.height.to_string(), t.label.to_string()));
        }
        for d in &self.differential {
            out.push_str(&format!(
                "d: ({},{}) -> rho^{} ({},{})\n",
                d.source.0, d.source.1, d.rho, d.target.0, d.target.1
            ));
        }
        out
    }
}

fn check_page(i: u32) -> Result<(), BocksteinError> {
    if i < 2 {
        Err(BocksteinError::PageTooSmall(i))
    } else {
        Ok(())
    }
}

/// The towers and differential of a cone `ℤ/2ʲη` whose `u` sits on row `n`, at page `i`.
fn dyadic_tower_page(j: u32, n: i64, i: u32, out: &mut Vec<Tower>, diffs: &mut Vec<DiffEntry>) {
    if i <= j + 1 {
        let u = Tower::on_row(n, Height::Inf, Label::U);
        let v = Tower::on_row(n + 1, Height::Inf, Label::V);
        if i == j + 1 {
            diffs.push(DiffEntry { source: (u.p, u.q), target: (v.p, v.q), rho: j });
        }
        out.push(u);
        out.push(v);
    } else {
        out.push(Tower::on_row(n + 1, Height::Finite(j), Label::V));
    }
}

/// `E_i` of a single block.
pub fn block_pages(b: &AtomicBlock, i: u32) -> Result<Page, BocksteinError> {
    check_page(i)?;
    let (mut towers, mut diffs) = (Vec::new(), Vec::new());
    match *b {
        AtomicBlock::Free { weight } => towers.push(Tower::on_row(weight, Height::Inf, Label::Plain)),
        AtomicBlock::DyadicEta { t, weight } if t >= 1 => dyadic_tower_page(t, weight, i, &mut towers, &mut diffs),
        AtomicBlock::DyadicEta { .. } | AtomicBlock::OddTorsion { .. } => {}
    }
    Ok(Page::new(i, towers, diffs))
}

/// `E_i(A)`, the direct sum of the block pages.
pub fn pages(a: &NormalForm, i: u32) -> Result<Page, BocksteinError> {
    check_page(i)?;
    let mut out = Page::new(i, vec![], vec![]);
    for b in a.blocks() {
        out = out.direct_sum(&block_pages(b, i)?);
    }
    Ok(out)
}

/// Multiplicities `x_{n,j}` of `ℤ/2ʲ` summands of `Hⁿ(A, W)`; `None` stands for `ℤ = ℤ/2^∞`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WittProfile {
    pub multiplicities: BTreeMap<(i64, Option<u32>), usize>,
}

impl WittProfile {
    /// Odd torsion is dropped.
    pub fn from_graded(h: &GradedGroup) -> Self {
        let mut m = BTreeMap::new();
        for (d, g) in h.iter() {
            if g.free_rank() > 0 {
                *m.entry((d, None)).or_default() += g.free_rank();
            }
            for j in g.dyadic_exponents() {
                *m.entry((d, Some(j))).or_default() += 1;
            }
        }
        WittProfile { multiplicities: m }
    }

    pub fn max_dyadic_exponent(&self) -> u32 {
        self.multiplicities.keys().filter_map(|&(_, j)| j).max().unwrap_or(0)
    }
}

/// `E_i` read off integral Witt cohomology in the cochain convention.
///
/// `ℤ` in degree `d` is a tower on row `d`; `ℤ/2ʲ` in degree `d` is a `u`-tower on row `d − 1`
/// and a `v`-tower on row `d`, the pair behaving like the block `ℤ/2ʲη(d−1)[2d−2]`.
pub fn pages_from_witt(h: &GradedGroup, i: u32) -> Result<Page, BocksteinError> {
    check_page(i)?;
    log::debug!("pages_from_witt: torsion rows placed as (u: d-1, v: d), free rows as d");
    let profile = WittProfile::from_graded(h);
    let (mut towers, mut diffs) = (Vec::new(), Vec::new());
    for (&(d, j), &mult) in &profile.multiplicities {
        for _ in 0..mult {
            match j {
                None => towers.push(Tower::on_row(d, Height::Inf, Label::Plain)),
                Some(j) => dyadic_tower_page(j, d - 1, i, &mut towers, &mut diffs),
            }
        }
    }
    Ok(Page::new(i, towers, diffs))
}

/// `r + 2`, where `2ʳ` is the largest dyadic torsion order in `H^*(A, W)`.
pub fn degeneracy_page(a: &NormalForm) -> u32 {
    WittProfile::from_graded(&witt_integral(a)).max_dyadic_exponent() + 2
}

/// `E_2` as `Sq²`-cohomology of `H^{*,*}(A, ℤ/2)/τ`.
///
/// Modulo `τ` each generator spans a free `ℤ/2[ρ]`; `Sq²` pairs the two generators of a `ℤ/η`
/// block and vanishes on everything else.
pub fn e2_sq2(a: &NormalForm) -> Page {
    let mut towers = Vec::new();
    for b in a.blocks() {
        let single = NormalForm::single(*b).expect("blocks of a normal form are valid");
        let gens = mod2_motivic(&single).generators;
        let sq2_pairs = matches!(b, AtomicBlock::DyadicEta { t: 0, .. });
        if sq2_pairs {
            continue;
        }
        let labels: &[Label] = match b {
            AtomicBlock::DyadicEta { .. } => &[Label::U, Label::V],
            _ => &[Label::Plain],
        };
        for (&(p, q), &label) in gens.iter().zip(labels) {
            towers.push(Tower { p, q, height: Height::Inf, label });
        }
    }
    Page::new(2, towers, vec![])
}
