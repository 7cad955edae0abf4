#![allow(dead_code)]

use proptest::prelude::*;

use mwtate::motives::{AtomicBlock, NormalForm};

pub fn block(odd: bool) -> BoxedStrategy<AtomicBlock> {
    let free = (-4i64..=4).prop_map(|weight| AtomicBlock::Free { weight });
    let dyadic = (0u32..=4, -4i64..=4).prop_map(|(t, weight)| AtomicBlock::DyadicEta { t, weight });
    if !odd {
        return prop_oneof![free, dyadic].boxed();
    }
    let odd_block = (prop::sample::select(vec![3u64, 5, 7]), 1u32..=2, -4i64..=4)
        .prop_map(|(p, r, shift)| AtomicBlock::OddTorsion { p, r, shift });
    prop_oneof![free, dyadic, odd_block].boxed()
}

pub fn normal_form(max: usize, odd: bool) -> impl Strategy<Value = NormalForm> {
    prop::collection::vec(block(odd), 0..=max).prop_map(|b| NormalForm::new(b).expect("generated blocks are valid"))
}

/// Every block with parameters at most 4 and weight or shift in `-1..=1`.
pub fn small_blocks() -> Vec<AtomicBlock> {
    let mut out = Vec::new();
    for w in -1..=1 {
        out.push(AtomicBlock::Free { weight: w });
        for t in 0..=4 {
            out.push(AtomicBlock::DyadicEta { t, weight: w });
        }
        for p in [3, 5, 7] {
            for r in 1..=2 {
                out.push(AtomicBlock::OddTorsion { p, r, shift: w });
            }
        }
    }
    out
}
