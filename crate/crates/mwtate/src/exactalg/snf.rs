use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U·M·V = S` together with the inverses of both transforms.
///
/// `S` is diagonal with nonnegative entries `d₁ | d₂ | … | d_rank`, followed by zeros.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Snf {
    /// The nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Computes the Smith normal form of `m`; see [`Snf`].
pub fn smith(m: &IntMatrix) -> Snf {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, t) else { break };
        row_swap(&mut a, &mut u, &mut u_inv, t, pi);
        col_swap(&mut a, &mut v, &mut v_inv, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                row_add(&mut a, &mut u, &mut u_inv, i, t, &-q);
                if !a.get(i, t).is_zero() {
                    row_swap(&mut a, &mut u, &mut u_inv, t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                col_add(&mut a, &mut v, &mut v_inv, j, t, &-q);
                if !a.get(t, j).is_zero() {
                    col_swap(&mut a, &mut v, &mut v_inv, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // Pivot row and column are clear; enforce divisibility of the remainder.
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => row_add(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one()),
                None => break,
            }
        }

        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank += 1;
    }

    Snf { u, u_inv, s: a, v, v_inv, rank }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn row_swap(a: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, x: usize, y: usize) {
    a.swap_rows(x, y);
    u.swap_rows(x, y);
    u_inv.swap_cols(x, y);
}

fn col_swap(a: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, x: usize, y: usize) {
    a.swap_cols(x, y);
    v.swap_cols(x, y);
    v_inv.swap_rows(x, y);
}

/// `row[dst] += k·row[src]`, with `U⁻¹` updated by the inverse column operation.
fn row_add(a: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    a.add_row_multiple(dst, src, k);
    u.add_row_multiple(dst, src, k);
    u_inv.add_col_multiple(src, dst, &-k);
}

/// `col[dst] += k·col[src]`, with `V⁻¹` updated by the inverse row operation.
fn col_add(a: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, dst: usize, src: usize, k: &BigInt) {
    a.add_col_multiple(dst, src, k);
    v.add_col_multiple(dst, src, k);
    v_inv.add_row_multiple(src, dst, &-k);
}
