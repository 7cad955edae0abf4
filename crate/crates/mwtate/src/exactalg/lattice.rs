//! Sublattices of `ℤⁿ` given by spanning columns.
//!
//! Every routine goes through [`smith`](super::snf::smith), so results are exact. Returned
//! bases have linearly independent columns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::snf::smith;
use super::IntMatrix;

/// The column Hermite basis of `span(a)`: columns in echelon form with positive pivots and
/// entries beside each pivot reduced into `[0, pivot)`. Equal lattices give equal bases.
pub fn column_basis(a: &IntMatrix) -> IntMatrix {
    let rows = a.rows();
    let mut pool: Vec<Vec<BigInt>> = a.columns().into_iter().filter(|c| c.iter().any(|x| !x.is_zero())).collect();
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for r in 0..rows {
        loop {
            let live: Vec<usize> = (0..pool.len()).filter(|&k| !pool[k][r].is_zero()).collect();
            let Some(&pivot) = live.iter().min_by_key(|&&k| pool[k][r].magnitude().clone()) else { break };
            if live.len() == 1 {
                let mut p = pool.swap_remove(pivot);
                if p[r].is_negative() {
                    p.iter_mut().for_each(|x| *x = -&*x);
                }
                for (_, b) in basis.iter_mut() {
                    let q = b[r].div_floor(&p[r]);
                    if !q.is_zero() {
                        b.iter_mut().zip(&p).for_each(|(x, y)| *x -= &q * y);
                    }
                }
                basis.push((r, p));
                break;
            }
            let p = pool[pivot].clone();
            for &k in &live {
                if k != pivot {
                    let q = pool[k][r].div_floor(&p[r]);
                    pool[k].iter_mut().zip(&p).for_each(|(x, y)| *x -= &q * y);
                }
            }
            pool.retain(|c| c.iter().any(|x| !x.is_zero()));
        }
    }
    let cols: Vec<Vec<BigInt>> = basis.into_iter().map(|(_, c)| c).collect();
    IntMatrix::from_columns(rows, &cols)
}

/// A basis of `{x ∈ ℤ^cols : a·x = 0}`.
pub fn kernel(a: &IntMatrix) -> IntMatrix {
    let f = smith(a);
    column_basis(&f.v.col_slice(f.rank, a.cols()))
}

/// An integer solution of `a·x = b`, if one exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let f = smith(a);
    solve_with(&f, a.cols(), b)
}

fn solve_with(f: &super::snf::Snf, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let y = f.u.mul_vec(b);
    let mut z = vec![BigInt::zero(); cols];
    for (i, yi) in y.iter().enumerate() {
        if i < f.rank {
            let (q, r) = yi.div_rem(f.s.get(i, i));
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(f.v.mul_vec(&z))
}

/// Solves `a·X = B` column by column.
pub fn solve_matrix(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let f = smith(a);
    let cols: Option<Vec<Vec<BigInt>>> = b.columns().iter().map(|c| solve_with(&f, a.cols(), c)).collect();
    cols.map(|c| IntMatrix::from_columns(a.cols(), &c))
}

/// A basis of `{x : f·x ∈ span(s)}`.
pub fn preimage(f: &IntMatrix, s: &IntMatrix) -> IntMatrix {
    let n = f.cols();
    let k = kernel(&f.hcat(&s.scaled(&-BigInt::one())));
    column_basis(&k.row_slice(0, n))
}

/// A basis of `span(l1) ∩ span(l2)`.
pub fn intersect(l1: &IntMatrix, l2: &IntMatrix) -> IntMatrix {
    let k = kernel(&l1.hcat(&l2.scaled(&-BigInt::one())));
    column_basis(&(l1 * &k.row_slice(0, l1.cols())))
}

/// A basis of `span(l1) + span(l2)`.
pub fn sum(l1: &IntMatrix, l2: &IntMatrix) -> IntMatrix {
    column_basis(&l1.hcat(l2))
}

pub fn contains(l: &IntMatrix, v: &[BigInt]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    solve(l, v).is_some()
}

/// `span(small) ⊆ span(big)`.
pub fn is_sublattice(small: &IntMatrix, big: &IntMatrix) -> bool {
    if small.cols() == 0 {
        return true;
    }
    let f = smith(big);
    small.columns().iter().all(|c| solve_with(&f, big.cols(), c).is_some())
}

pub fn lattice_eq(a: &IntMatrix, b: &IntMatrix) -> bool {
    is_sublattice(a, b) && is_sublattice(b, a)
}

/// Invariant factors of `span(l)/span(m)` for `span(m) ⊆ span(l)`, as `(free rank, torsion)`.
///
/// `l` must have independent columns. Torsion lists the invariant factors `> 1`.
///
/// # Panics
/// Panics if `span(m) ⊄ span(l)`.
pub fn quotient_invariants(l: &IntMatrix, m: &IntMatrix) -> (usize, Vec<BigInt>) {
    let coords = solve_matrix(l, m).expect("quotient of non-nested lattices");
    presentation_invariants(&coords)
}

/// Invariant factors of `ℤ^rows / span(rel)`, as `(free rank, torsion)`.
pub fn presentation_invariants(rel: &IntMatrix) -> (usize, Vec<BigInt>) {
    let f = smith(rel);
    let torsion = f.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
    (rel.rows() - f.rank, torsion)
}
