use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactalg::is_prime;

use super::MotiveError;

/// One indecomposable summand of a Tate MW-motive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
pub enum AtomicBlock {
    /// `ℤ(i)[2i]`.
    #[serde(rename = "free")]
    Free { weight: i64 },
    /// `ℤ/2ᵗη(i)[2i]`, the cone of `2ᵗη`; `t = 0` is `ℤ/η`.
    #[serde(rename = "dyadic")]
    DyadicEta { t: u32, weight: i64 },
    /// `ℤ/𝐩ʳ[s]` for an odd prime `p` and `r ≥ 1`; these are η-periodic.
    #[serde(rename = "odd")]
    OddTorsion { p: u64, r: u32, shift: i64 },
}

impl AtomicBlock {
    pub fn validate(&self) -> Result<(), MotiveError> {
        match *self {
            AtomicBlock::OddTorsion { p, r, .. } => {
                if p == 2 || !is_prime(p) {
                    Err(MotiveError::InvalidBlock(format!("odd block needs an odd prime, got p = {p}")))
                } else if r == 0 {
                    Err(MotiveError::InvalidBlock("odd block needs r >= 1".into()))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Twist by `ℤ(q)[2q]`; odd blocks absorb the twist into their shift.
    pub fn twisted(self, q: i64) -> AtomicBlock {
        match self {
            AtomicBlock::Free { weight } => AtomicBlock::Free { weight: weight + q },
            AtomicBlock::DyadicEta { t, weight } => AtomicBlock::DyadicEta { t, weight: weight + q },
            AtomicBlock::OddTorsion { p, r, shift } => AtomicBlock::OddTorsion { p, r, shift: shift + q },
        }
    }

    fn sort_key(&self) -> (u8, i64, u64, u32) {
        match *self {
            AtomicBlock::Free { weight } => (0, weight, 0, 0),
            AtomicBlock::DyadicEta { t, weight } => (1, weight, 0, t),
            AtomicBlock::OddTorsion { p, r, shift } => (2, shift, p, r),
        }
    }
}

impl Ord for AtomicBlock {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for AtomicBlock {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AtomicBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AtomicBlock::Free { weight } => write!(f, "Z({weight})"),
            AtomicBlock::DyadicEta { t: 0, weight } => write!(f, "Z/eta({weight})"),
            AtomicBlock::DyadicEta { t, weight } => write!(f, "Z/2^{t}eta({weight})"),
            AtomicBlock::OddTorsion { p, r: 1, shift } => write!(f, "Z/{p}[{shift}]"),
            AtomicBlock::OddTorsion { p, r, shift } => write!(f, "Z/{p}^{r}[{shift}]"),
        }
    }
}

/// `ℤ/2ᵗη(i)[2i] ⊗ ℤ/2ᵘη(j)[2j] = ℤ/2ᵐη(i+j+1)[2i+2j+2] ⊕ ℤ/2ᵐη(i+j)[2i+2j]` with `m = min(t, u)`, and
/// the analogous rule for odd blocks of the same prime; everything else mixes to zero.
pub fn fuse(a: AtomicBlock, b: AtomicBlock) -> Vec<AtomicBlock> {
    use AtomicBlock::*;
    match (a, b) {
        (Free { weight }, x) | (x, Free { weight }) => vec![x.twisted(weight)],
        (DyadicEta { t: t1, weight: i }, DyadicEta { t: t2, weight: j }) => {
            let t = t1.min(t2);
            vec![DyadicEta { t, weight: i + j }, DyadicEta { t, weight: i + j + 1 }]
        }
        (OddTorsion { p, r: r1, shift: s1 }, OddTorsion { p: q, r: r2, shift: s2 }) if p == q => {
            let r = r1.min(r2);
            vec![OddTorsion { p, r, shift: s1 + s2 }, OddTorsion { p, r, shift: s1 + s2 + 1 }]
        }
        _ => Vec::new(),
    }
}
