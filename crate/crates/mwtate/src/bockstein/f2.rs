//! Dense linear algebra over `ℤ/2`.

pub type F2Vec = Vec<bool>;

pub fn add_into(dst: &mut [bool], src: &[bool]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= *s;
    }
}

pub fn is_zero(v: &[bool]) -> bool {
    !v.iter().any(|&b| b)
}

/// A subspace of `F₂ⁿ` kept in echelon form; each stored row has a distinct pivot.
#[derive(Clone, Debug)]
pub struct Subspace {
    n: usize,
    rows: Vec<(usize, F2Vec)>,
}

impl Subspace {
    pub fn new(n: usize) -> Self {
        Subspace { n, rows: Vec::new() }
    }

    pub fn spanned_by<'a>(n: usize, vs: impl IntoIterator<Item = &'a F2Vec>) -> Self {
        let mut s = Subspace::new(n);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &F2Vec> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &[bool]) -> F2Vec {
        debug_assert_eq!(v.len(), self.n, "ambient dimension");
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot] {
                add_into(&mut v, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[bool]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[bool]) -> bool {
        let r = self.reduce(v);
        match r.iter().position(|&b| b) {
            None => false,
            Some(p) => {
                for (_, row) in self.rows.iter_mut() {
                    if row[p] {
                        add_into(row, &r);
                    }
                }
                self.rows.push((p, r));
                true
            }
        }
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in other.basis() {
            s.insert(v);
        }
        s
    }
}

/// Kernel of the linear map sending the `k`-th basis vector of `F₂^cols.len()` to `cols[k]`.
pub fn kernel(cols: &[F2Vec], target_dim: usize) -> Vec<F2Vec> {
    let n = cols.len();
    // Row-reduce the augmented vectors (image | identity).
    let mut rows: Vec<(F2Vec, F2Vec)> = cols
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut id = vec![false; n];
            id[k] = true;
            let mut img = c.clone();
            img.resize(target_dim, false);
            (img, id)
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..target_dim {
        let Some(r) = (pivot_row..rows.len()).find(|&r| rows[r].0[col]) else { continue };
        rows.swap(pivot_row, r);
        let (pi, pk) = rows[pivot_row].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != pivot_row && row.0[col] {
                add_into(&mut row.0, &pi);
                add_into(&mut row.1, &pk);
            }
        }
        pivot_row += 1;
    }
    rows.into_iter().skip(pivot_row).map(|(_, k)| k).collect()
}

pub fn rank(cols: &[F2Vec]) -> usize {
    let n = cols.first().map_or(0, Vec::len);
    Subspace::spanned_by(n, cols).dim()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_rank() {
        let cols = vec![vec![true, false], vec![true, false], vec![false, true]];
        assert_eq!(rank(&cols), 2);
        let k = kernel(&cols, 2);
        assert_eq!(k, vec![vec![true, true, false]]);
    }

    #[test]
    fn subspace_membership() {
        let s = Subspace::spanned_by(3, &[vec![true, true, false], vec![false, true, true]]);
        assert!(s.contains(&[true, false, true]));
        assert!(!s.contains(&[true, false, false]));
    }
}
