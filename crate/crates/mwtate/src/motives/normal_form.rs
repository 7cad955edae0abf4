use std::fmt;

use serde::{Deserialize, Serialize};

use super::block::{fuse, AtomicBlock};
use super::MotiveError;

/// A finite direct sum of atomic blocks in canonical order.
///
/// Two normal forms are equal exactly when they are equal as multisets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<AtomicBlock>", into = "Vec<AtomicBlock>")]
pub struct NormalForm {
    blocks: Vec<AtomicBlock>,
}

impl NormalForm {
    pub fn new(blocks: Vec<AtomicBlock>) -> Result<Self, MotiveError> {
        for b in &blocks {
            b.validate()?;
        }
        Ok(Self::from_valid(blocks))
    }

    pub(crate) fn from_valid(mut blocks: Vec<AtomicBlock>) -> Self {
        blocks.sort();
        NormalForm { blocks }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit `ℤ = {Free{0}}`.
    pub fn unit() -> Self {
        NormalForm { blocks: vec![AtomicBlock::Free { weight: 0 }] }
    }

    pub fn single(b: AtomicBlock) -> Result<Self, MotiveError> {
        Self::new(vec![b])
    }

    pub fn blocks(&self) -> &[AtomicBlock] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_odd_free(&self) -> bool {
        !self.blocks.iter().any(|b| matches!(b, AtomicBlock::OddTorsion { .. }))
    }

    pub fn direct_sum(&self, other: &NormalForm) -> NormalForm {
        let mut b = self.blocks.clone();
        b.extend_from_slice(&other.blocks);
        Self::from_valid(b)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("normal forms always serialise")
    }

    pub fn from_json(s: &str) -> Result<Self, MotiveError> {
        serde_json::from_str(s).map_err(|e| MotiveError::Json(e.to_string()))
    }
}

impl TryFrom<Vec<AtomicBlock>> for NormalForm {
    type Error = MotiveError;

    fn try_from(blocks: Vec<AtomicBlock>) -> Result<Self, MotiveError> {
        NormalForm::new(blocks)
    }
}

impl From<NormalForm> for Vec<AtomicBlock> {
    fn from(n: NormalForm) -> Self {
        n.blocks
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.blocks.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Bilinear extension of the block fusion rules.
pub fn tensor(a: &NormalForm, b: &NormalForm) -> NormalForm {
    let mut out = Vec::new();
    for &x in &a.blocks {
        for &y in &b.blocks {
            out.extend(fuse(x, y));
        }
    }
    NormalForm::from_valid(out)
}

/// `A(q)[2q]`: weights and odd shifts move by `q`.
pub fn twist(a: &NormalForm, q: i64) -> NormalForm {
    NormalForm::from_valid(a.blocks.iter().map(|b| b.twisted(q)).collect())
}

/// `A/2ʲη = A ⊗ ℤ/2ʲη`.
pub fn mod_two_power_eta(a: &NormalForm, j: u32) -> NormalForm {
    tensor(a, &NormalForm::from_valid(vec![AtomicBlock::DyadicEta { t: j, weight: 0 }]))
}
