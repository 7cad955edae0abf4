use serde::Serialize;

use crate::exactalg::{rho_module_tensor, RhoComplex, RhoShape, RhoSummand};
use crate::motives::{tensor, AtomicBlock, NormalForm};

use super::degeneracy_page;
use super::page::{pages, DiffEntry, Height, Label, Page, Tower};

/// `E_i(A)` with its differential as a complex of free `ℤ/2[ρ]`-modules.
///
/// `ℤ(w)[2w]` is a unit in degree `w`; `ℤ/2ᵗη(w)[2w]` is `S` in degree `w` while `i < t + 1`
/// and `S_t` from page `t + 1` on.
pub fn rho_presentation(a: &NormalForm, i: u32) -> RhoComplex {
    let mut out = Vec::new();
    for b in a.blocks() {
        match *b {
            AtomicBlock::Free { weight } => out.push(RhoSummand { degree: weight, shape: RhoShape::Unit }),
            AtomicBlock::DyadicEta { t, weight } if t >= 1 => {
                let shape = if i < t + 1 { RhoShape::FreeTower } else { RhoShape::ConeTower { j: t } };
                out.push(RhoSummand { degree: weight, shape });
            }
            _ => {}
        }
    }
    RhoComplex::new(out)
}

/// The page a `ℤ/2[ρ]`-complex stands for at page `i`.
///
/// `S_j` with `j = i − 1` still shows both towers and the differential; with `j < i − 1` only
/// its homology `ℤ/2[ρ]/ρʲ` remains.
pub fn page_from_rho(x: &RhoComplex, i: u32) -> Page {
    let (mut towers, mut diffs) = (Vec::new(), Vec::new());
    for s in x.summands() {
        let d = s.degree;
        match s.shape {
            RhoShape::Unit => towers.push(Tower::on_row(d, Height::Inf, Label::Plain)),
            RhoShape::ConeTower { j } if j + 1 < i => towers.push(Tower::on_row(d + 1, Height::Finite(j), Label::V)),
            shape => {
                let u = Tower::on_row(d, Height::Inf, Label::U);
                let v = Tower::on_row(d + 1, Height::Inf, Label::V);
                if let RhoShape::ConeTower { j } = shape {
                    if j + 1 == i {
                        diffs.push(DiffEntry { source: (u.p, u.q), target: (v.p, v.q), rho: j });
                    }
                }
                towers.push(u);
                towers.push(v);
            }
        }
    }
    Page::new(i, towers, diffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethDiscrepancy {
    pub page: u32,
    pub tensor_of_pages: String,
    pub page_of_tensor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethReport {
    pub equal: bool,
    pub pages_checked: Vec<u32>,
    pub first_discrepancy: Option<KunnethDiscrepancy>,
}

/// Compares `E_i(A) ⊗_{ℤ/2[ρ]} E_i(B)` with `E_i(A ⊗ B)` on every page until all three sides
/// have degenerated, both as `ℤ/2[ρ]`-complexes and as pages.
pub fn kunneth_e2(a: &NormalForm, b: &NormalForm) -> KunnethReport {
    let ab = tensor(a, b);
    let last = degeneracy_page(a).max(degeneracy_page(b)).max(degeneracy_page(&ab)) + 1;
    let mut checked = Vec::new();
    for i in 2..=last {
        checked.push(i);
        let lhs = rho_module_tensor(&rho_presentation(a, i), &rho_presentation(b, i));
        let rhs = rho_presentation(&ab, i);
        let direct = pages(&ab, i).expect("i >= 2");
        if lhs != rhs || !page_from_rho(&lhs, i).same_content(&direct) {
            return KunnethReport {
                equal: false,
                pages_checked: checked,
                first_discrepancy: Some(KunnethDiscrepancy {
                    page: i,
                    tensor_of_pages: lhs.to_string(),
                    page_of_tensor: rhs.to_string(),
                }),
            };
        }
    }
    KunnethReport { equal: true, pages_checked: checked, first_discrepancy: None }
}
