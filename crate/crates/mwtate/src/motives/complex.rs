use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exactalg::{decompose_free_complex, factor, FreeComplex, IntMatrix, Summand};

use super::block::AtomicBlock;
use super::normal_form::NormalForm;
use super::MotiveError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cell {
    pub id: String,
    pub weight: i64,
}

/// An `η`-multiple from cell `from` (weight `w + 1`) to cell `to` (weight `w`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Attachment {
    pub from: String,
    pub to: String,
    #[serde(with = "crate::json")]
    pub coeff: BigInt,
}

impl Attachment {
    pub fn new(from: &str, to: &str, coeff: impl Into<BigInt>) -> Self {
        Attachment { from: from.into(), to: to.into(), coeff: coeff.into() }
    }
}

/// A cell complex of pure Tate motives `ℤ(w)[2w]` glued by multiples of `η`.
///
/// Repeated attachments on the same pair add up.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TateComplex {
    pub cells: Vec<Cell>,
    #[serde(default)]
    pub attach: Vec<Attachment>,
}

/// One reason a [`TateComplex`] is rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    DuplicateCell {
        id: String,
    },
    UnknownCell {
        id: String,
    },
    /// The attachment does not go from weight `w + 1` to weight `w`.
    NonAdjacent {
        from: String,
        to: String,
        from_weight: i64,
        to_weight: i64,
    },
    /// The composite through weight `weight + 1` is nonzero on `(from, to)`.
    NonComposable {
        weight: i64,
        from: String,
        to: String,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl TateComplex {
    pub fn new(cells: &[(&str, i64)], attach: Vec<Attachment>) -> Self {
        TateComplex { cells: cells.iter().map(|&(id, weight)| Cell { id: id.into(), weight }).collect(), attach }
    }

    pub fn weight_of(&self, id: &str) -> Option<i64> {
        self.cells.iter().find(|c| c.id == id).map(|c| c.weight)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complexes always serialise")
    }

    pub fn from_json(s: &str) -> Result<Self, MotiveError> {
        serde_json::from_str(s).map_err(|e| MotiveError::Json(e.to_string()))
    }

    /// One cell `w{w}.{k}` per basis vector of `c`, one attachment per nonzero entry.
    pub fn from_free_complex(c: &FreeComplex) -> Self {
        let id = |w: i64, k: usize| format!("w{w}.{k}");
        let mut out = TateComplex::default();
        for w in c.degrees() {
            for k in 0..c.rank(w) {
                out.cells.push(Cell { id: id(w, k), weight: w });
            }
            let d = c.differential(w);
            for i in 0..d.rows() {
                for j in 0..d.cols() {
                    if !d.get(i, j).is_zero() {
                        out.attach.push(Attachment { from: id(w + 1, j), to: id(w, i), coeff: d.get(i, j).clone() });
                    }
                }
            }
        }
        out
    }

    /// Cell ids per weight, in list order; this fixes the bases of [`Self::free_complex`].
    fn layout(&self) -> BTreeMap<i64, Vec<&str>> {
        let mut by_weight: BTreeMap<i64, Vec<&str>> = BTreeMap::new();
        for c in &self.cells {
            by_weight.entry(c.weight).or_default().push(&c.id);
        }
        by_weight
    }

    /// The underlying free complex, `d_w : ℤ^{cells of weight w+1} → ℤ^{cells of weight w}`.
    ///
    /// Assumes ids are unique and attachments adjacent.
    pub fn free_complex(&self) -> FreeComplex {
        let layout = self.layout();
        let index = |id: &str| -> (i64, usize) {
            let w = self.weight_of(id).expect("known cell");
            (w, layout[&w].iter().position(|&c| c == id).expect("known cell"))
        };
        let mut fc = FreeComplex::new();
        for (&w, ids) in &layout {
            fc.set_rank(w, ids.len());
        }
        let mut mats: BTreeMap<i64, IntMatrix> = BTreeMap::new();
        for a in &self.attach {
            let (w, row) = index(&a.to);
            let (_, col) = index(&a.from);
            let m = mats.entry(w).or_insert_with(|| IntMatrix::zeros(fc.rank(w), fc.rank(w + 1)));
            let v = m.get(row, col) + &a.coeff;
            m.set(row, col, v);
        }
        for (w, m) in mats {
            fc.set_differential(w, m);
        }
        fc
    }
}

pub fn validate_complex(c: &TateComplex) -> ValidationReport {
    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    for cell in &c.cells {
        if !seen.insert(cell.id.as_str()) {
            violations.push(Violation::DuplicateCell { id: cell.id.clone() });
        }
    }
    let mut unknown = BTreeSet::new();
    for a in &c.attach {
        for id in [&a.from, &a.to] {
            if c.weight_of(id).is_none() && unknown.insert(id.clone()) {
                violations.push(Violation::UnknownCell { id: id.clone() });
            }
        }
        if let (Some(fw), Some(tw)) = (c.weight_of(&a.from), c.weight_of(&a.to)) {
            if fw != tw + 1 {
                violations.push(Violation::NonAdjacent {
                    from: a.from.clone(),
                    to: a.to.clone(),
                    from_weight: fw,
                    to_weight: tw,
                });
            }
        }
    }
    if violations.is_empty() {
        let fc = c.free_complex();
        let layout = c.layout();
        for w in fc.degrees() {
            let composite = &fc.differential(w) * &fc.differential(w + 1);
            for i in 0..composite.rows() {
                for j in 0..composite.cols() {
                    if !composite.get(i, j).is_zero() {
                        violations.push(Violation::NonComposable {
                            weight: w,
                            from: layout[&(w + 2)][j].to_string(),
                            to: layout[&w][i].to_string(),
                        });
                    }
                }
            }
        }
    }
    ValidationReport { valid: violations.is_empty(), violations }
}

fn require_valid(c: &TateComplex) -> Result<(), MotiveError> {
    let report = validate_complex(c);
    if report.valid {
        Ok(())
    } else {
        Err(MotiveError::InvalidComplex(report.violations))
    }
}

/// Blocks of a cone `ℤ(w+1)[2w+2] →nη ℤ(w)[2w]` for `n ≥ 1`: the dyadic part and one odd block
/// per odd prime power of `n`.
pub fn cone_blocks(n: &BigUint, w: i64) -> Vec<AtomicBlock> {
    let t = n.trailing_zeros().unwrap_or(0) as u32;
    let s = n >> t;
    let mut out = vec![AtomicBlock::DyadicEta { t, weight: w }];
    if !s.is_one() {
        for pp in factor(&s) {
            let p = pp.prime.to_u64().expect("odd prime factors fit in u64");
            out.push(AtomicBlock::OddTorsion { p, r: pp.exp, shift: w });
        }
    }
    out
}

pub fn decompose(c: &TateComplex) -> Result<NormalForm, MotiveError> {
    require_valid(c)?;
    let summands = decompose_free_complex(&c.free_complex()).expect("validated complexes compose");
    let mut blocks = Vec::new();
    for s in summands {
        match s {
            Summand::FreeCell { degree } => blocks.push(AtomicBlock::Free { weight: degree }),
            Summand::ConePair { n, lower_degree } => blocks.extend(cone_blocks(&n, lower_degree)),
        }
    }
    Ok(NormalForm::from_valid(blocks))
}

/// The canonical cell presentation of an odd-free normal form.
pub fn realize(a: &NormalForm) -> Result<TateComplex, MotiveError> {
    let mut out = TateComplex::default();
    for (k, b) in a.blocks().iter().enumerate() {
        match *b {
            AtomicBlock::Free { weight } => out.cells.push(Cell { id: format!("c{k}"), weight }),
            AtomicBlock::DyadicEta { t, weight } => {
                let (lo, hi) = (format!("c{k}a"), format!("c{k}b"));
                out.cells.push(Cell { id: lo.clone(), weight });
                out.cells.push(Cell { id: hi.clone(), weight: weight + 1 });
                let coeff = BigInt::one() << t as usize;
                out.attach.push(Attachment { from: hi, to: lo, coeff });
            }
            AtomicBlock::OddTorsion { .. } => return Err(MotiveError::OddBlockNotRealizable(*b)),
        }
    }
    Ok(out)
}

/// The cone of an `η`-matrix `F` from `source` to `target`.
///
/// Cells and attachments are unioned; ids must not collide.
pub fn cone_eta_map(source: &TateComplex, target: &TateComplex, f: &[Attachment]) -> Result<TateComplex, MotiveError> {
    require_valid(source)?;
    require_valid(target)?;
    for a in f {
        let (Some(u), Some(v)) = (source.weight_of(&a.from), target.weight_of(&a.to)) else {
            return Err(MotiveError::IllegalEntry { from: a.from.clone(), to: a.to.clone() });
        };
        if u != v + 1 {
            return Err(MotiveError::IllegalEntry { from: a.from.clone(), to: a.to.clone() });
        }
    }
    let mut out = target.clone();
    out.cells.extend(source.cells.iter().cloned());
    out.attach.extend(source.attach.iter().cloned());
    out.attach.extend(f.iter().filter(|a| !a.coeff.is_zero()).cloned());
    let report = validate_complex(&out);
    if !report.valid {
        return Err(MotiveError::NonComposableResult(report.violations));
    }
    Ok(out)
}
