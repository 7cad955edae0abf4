use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::exactalg::lattice::{column_basis, intersect, lattice_eq, preimage, solve, solve_matrix, sum};
use crate::exactalg::{AbGroup, FormalGroup, FreeComplex, GradedGroup, Hom, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoupleError {
    #[error("the couple is not exact at {position} in degree {degree}")]
    InexactCouple { position: &'static str, degree: i64 },
    #[error("map {map} in degree {degree} does not respect relations")]
    IllDefinedMap { map: &'static str, degree: i64 },
}

/// A singly graded exact couple `D →i D →j E →k D`.
///
/// `i : Dⁿ → D^{n+si}`, `j : Dⁿ → E^{n+sj}`, `k : Eⁿ → D^{n+sk}`, all given on generators.
/// Missing groups are zero and missing maps are zero.
#[derive(Clone, Debug, Default)]
pub struct ExactCouple {
    pub d: BTreeMap<i64, AbGroup>,
    pub e: BTreeMap<i64, AbGroup>,
    pub i: BTreeMap<i64, IntMatrix>,
    pub j: BTreeMap<i64, IntMatrix>,
    pub k: BTreeMap<i64, IntMatrix>,
    /// `(si, sj, sk)`.
    pub shifts: (i64, i64, i64),
}

impl ExactCouple {
    pub fn d_at(&self, n: i64) -> AbGroup {
        self.d.get(&n).cloned().unwrap_or_else(AbGroup::zero)
    }

    pub fn e_at(&self, n: i64) -> AbGroup {
        self.e.get(&n).cloned().unwrap_or_else(AbGroup::zero)
    }

    fn map_at(&self, which: &BTreeMap<i64, IntMatrix>, n: i64, rows: usize, cols: usize) -> IntMatrix {
        match which.get(&n) {
            Some(m) => {
                assert_eq!((m.rows(), m.cols()), (rows, cols), "map shape in degree {n}");
                m.clone()
            }
            None => IntMatrix::zeros(rows, cols),
        }
    }

    pub fn i_at(&self, n: i64) -> IntMatrix {
        let (si, _, _) = self.shifts;
        self.map_at(&self.i, n, self.d_at(n + si).gens(), self.d_at(n).gens())
    }

    pub fn j_at(&self, n: i64) -> IntMatrix {
        let (_, sj, _) = self.shifts;
        self.map_at(&self.j, n, self.e_at(n + sj).gens(), self.d_at(n).gens())
    }

    pub fn k_at(&self, n: i64) -> IntMatrix {
        let (_, _, sk) = self.shifts;
        self.map_at(&self.k, n, self.d_at(n + sk).gens(), self.e_at(n).gens())
    }

    /// Every degree in which `D` or `E` is nonzero, widened by the shifts.
    pub fn degrees(&self) -> Vec<i64> {
        let (si, sj, sk) = self.shifts;
        let spread = si.abs() + sj.abs() + sk.abs() + 1;
        let keys: BTreeSet<i64> = self.d.keys().chain(self.e.keys()).copied().collect();
        let lo = keys.first().copied().unwrap_or(0) - spread;
        let hi = keys.last().copied().unwrap_or(0) + spread;
        (lo..=hi).collect()
    }

    /// `iʳ : Dⁿ → D^{n+r·si}`.
    pub fn i_pow(&self, n: i64, r: u32) -> IntMatrix {
        let (si, _, _) = self.shifts;
        let mut m = IntMatrix::identity(self.d_at(n).gens());
        for s in 0..r as i64 {
            m = &self.i_at(n + s * si) * &m;
        }
        m
    }

    /// `ker(iʳ) ⊆ Dⁿ` as a lattice containing the relations, built one factor at a time so
    /// entries stay small.
    pub fn ker_i_pow(&self, n: i64, r: u32) -> IntMatrix {
        let (si, _, _) = self.shifts;
        if r == 0 {
            return self.d_at(n).relations().clone();
        }
        preimage(&self.i_at(n), &self.ker_i_pow(n + si, r - 1))
    }

    /// `Im(iʳ) ⊆ Dⁿ` as a lattice containing the relations.
    pub fn im_i_pow(&self, n: i64, r: u32) -> IntMatrix {
        let (si, _, _) = self.shifts;
        if r == 0 {
            return self.d_at(n).everything();
        }
        sum(&(&self.i_at(n - si) * &self.im_i_pow(n - si, r - 1)), self.d_at(n).relations())
    }

    pub fn check_exact(&self) -> Result<(), CoupleError> {
        let (si, sj, sk) = self.shifts;
        for n in self.degrees() {
            let (dn, en) = (self.d_at(n), self.e_at(n));
            let maps: [(&'static str, AbGroup, AbGroup, IntMatrix); 3] = [
                ("i", dn.clone(), self.d_at(n + si), self.i_at(n)),
                ("j", dn.clone(), self.e_at(n + sj), self.j_at(n)),
                ("k", en.clone(), self.d_at(n + sk), self.k_at(n)),
            ];
            for (name, src, dst, m) in &maps {
                if !(Hom { src, dst, matrix: m }).is_well_defined() {
                    return Err(CoupleError::IllDefinedMap { map: name, degree: n });
                }
            }
            let im_i = sum(&self.i_at(n - si), dn.relations());
            let ker_j = preimage(&self.j_at(n), self.e_at(n + sj).relations());
            if !lattice_eq(&im_i, &ker_j) {
                return Err(CoupleError::InexactCouple { position: "D (im i = ker j)", degree: n });
            }
            let im_j = sum(&self.j_at(n - sj), en.relations());
            let ker_k = preimage(&self.k_at(n), self.d_at(n + sk).relations());
            if !lattice_eq(&im_j, &ker_k) {
                return Err(CoupleError::InexactCouple { position: "E (im j = ker k)", degree: n });
            }
            let im_k = sum(&self.k_at(n - sk), dn.relations());
            let ker_i = preimage(&self.i_at(n), self.d_at(n + si).relations());
            if !lattice_eq(&im_k, &ker_i) {
                return Err(CoupleError::InexactCouple { position: "D (im k = ker i)", degree: n });
            }
        }
        Ok(())
    }

    /// `E` as a graded group of invariants.
    pub fn e_groups(&self) -> GradedGroup {
        let mut g = GradedGroup::new();
        for (&n, e) in &self.e {
            g.add(n, &e.invariants());
        }
        g
    }
}

/// The derived couple: `D' = i(D)`, `E' = ker(jk)/im(jk)`, `i' = i|_{D'}`, `j'(i y) = [j y]`,
/// `k'[z] = k z`.
pub fn couple_derive(x: &ExactCouple) -> Result<ExactCouple, CoupleError> {
    x.check_exact()?;
    let (si, sj, sk) = x.shifts;
    let s_d = sj + sk;
    let degrees = x.degrees();
    let mut out = ExactCouple { shifts: (si, sj - si, sk), ..Default::default() };

    // D'ⁿ is generated by the images i(e_k) of the generators of D^{n−si}.
    for &n in &degrees {
        let src = x.d_at(n - si);
        if src.gens() == 0 {
            continue;
        }
        let rel = preimage(&x.i_at(n - si), x.d_at(n).relations());
        out.d.insert(n, AbGroup::new(src.gens(), rel));
    }
    // E'ᵐ = Z/B in coordinates of a basis of Z.
    let mut zbasis: BTreeMap<i64, IntMatrix> = BTreeMap::new();
    for &m in &degrees {
        let em = x.e_at(m);
        if em.gens() == 0 {
            continue;
        }
        let dm = &x.j_at(m + sk) * &x.k_at(m);
        let z = preimage(&dm, x.e_at(m + s_d).relations());
        let dprev = &x.j_at(m - s_d + sk) * &x.k_at(m - s_d);
        let b = sum(&dprev, em.relations());
        let (g, basis) = AbGroup::subquotient(&z, &b);
        out.e.insert(m, g);
        zbasis.insert(m, basis);
    }
    for &n in &degrees {
        let dn = out.d_at(n);
        if dn.gens() == 0 {
            continue;
        }
        out.i.insert(n, x.i_at(n - si));
        let target = n - si + sj;
        if let Some(zb) = zbasis.get(&target) {
            let jm = x.j_at(n - si);
            let coords = solve_matrix(zb, &jm).expect("j lands in the cycles of jk");
            out.j.insert(n, coords);
        }
    }
    for (&m, zb) in &zbasis {
        let target = m + sk;
        let dt = out.d_at(target);
        if dt.gens() == 0 {
            continue;
        }
        let kz = &x.k_at(m) * zb;
        let lift = x.i_at(target - si).hcat(x.d_at(target).relations());
        let cols: Vec<Vec<BigInt>> = kz
            .columns()
            .iter()
            .map(|c| {
                let y = solve(&lift, c).expect("k of a cycle lies in the image of i");
                y[..dt.gens()].to_vec()
            })
            .collect();
        out.k.insert(m, IntMatrix::from_columns(dt.gens(), &cols));
    }
    out.d.retain(|_, g| g.gens() > 0);
    Ok(out)
}

/// `E_{r+1} = Z_r/B_r` with `Z_r = k⁻¹(Im iʳ)` and `B_r = j(ker iʳ)`, straight from the couple.
pub fn direct_page(x: &ExactCouple, r: u32) -> GradedGroup {
    let (si, sj, sk) = x.shifts;
    let mut out = GradedGroup::new();
    for m in x.degrees() {
        let em = x.e_at(m);
        if em.gens() == 0 {
            continue;
        }
        let z = preimage(&x.k_at(m), &x.im_i_pow(m + sk, r));
        let src = m - sj;
        let b = sum(&(&x.j_at(src) * &x.ker_i_pow(src, r)), em.relations());
        let (g, _) = AbGroup::subquotient(&z, &b);
        let _ = si;
        out.add(m, &g.invariants());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoupleAnalysis {
    /// `E_1, …, E_r`.
    pub pages: Vec<GradedGroup>,
    pub e_infinity: GradedGroup,
    /// The least `r ≥ 1` with `ker(i^{r+1}) = ker(iʳ)`.
    pub torsion_order: Option<u32>,
    /// `E_{r+1} ≅ E_∞`.
    pub degenerates: bool,
    pub pages_consistent: bool,
    pub four_term_exactness: bool,
    pub identification_holds: bool,
    /// For `r = 1`: `D₁ ∩ ker(i^∞) = 0`, so the square `D, ker k, D̄, E₂` is Cartesian.
    pub cartesian: Option<bool>,
}

const MAX_TORSION_ORDER: u32 = 64;

pub fn torsion_order(x: &ExactCouple) -> Option<u32> {
    (1..MAX_TORSION_ORDER)
        .find(|&r| x.degrees().into_iter().all(|n| lattice_eq(&x.ker_i_pow(n, r + 1), &x.ker_i_pow(n, r))))
}

fn quotient(num: &IntMatrix, den: &IntMatrix) -> FormalGroup {
    AbGroup::subquotient(&column_basis(num), den).0.invariants()
}

/// Runs the couple for `r_max` pages and checks degeneration, the four-term sequence
/// `0 → D₁ ∩ ker(i^∞) → D → ker(k) ⊕ D̄ → E_∞ → 0` and the vanishing criterion via `j⁽ⁿ⁾`.
///
/// The vanishing criterion is tested on `ker(i^∞)`, where `j⁽ⁿ⁾` detects nonzero classes.
pub fn couple_analyze(x: &ExactCouple, r_max: u32) -> Result<CoupleAnalysis, CoupleError> {
    x.check_exact()?;
    let (si, sj, sk) = x.shifts;
    let order = torsion_order(x);
    let depth = r_max.max(order.map_or(0, |r| r + 1));

    let mut pages = vec![x.e_groups()];
    let mut current = x.clone();
    let mut consistent = true;
    for r in 1..depth {
        current = couple_derive(&current)?;
        let derived = current.e_groups();
        consistent &= derived == direct_page(x, r);
        pages.push(derived);
    }

    let Some(r) = order else {
        return Ok(CoupleAnalysis {
            pages: pages.into_iter().take(r_max as usize).collect(),
            e_infinity: GradedGroup::new(),
            torsion_order: None,
            degenerates: false,
            pages_consistent: consistent,
            four_term_exactness: false,
            identification_holds: false,
            cartesian: None,
        });
    };

    let mut e_inf = GradedGroup::new();
    let mut four_term = true;
    let mut identification = true;
    let mut cartesian = true;
    for n in x.degrees() {
        let dn = x.d_at(n);
        let m = n + sj;
        let em = x.e_at(m);
        let kk = x.ker_i_pow(n, r);
        let d1 = x.im_i_pow(n, 1);
        let jn = x.j_at(n);

        let ker_k = preimage(&x.k_at(m), x.d_at(m + sk).relations());
        let jk_rel = sum(&(&x.j_at(m - sj) * &x.ker_i_pow(m - sj, r)), em.relations());
        e_inf.add(m, &quotient(&ker_k, &jk_rel));

        if dn.gens() == 0 {
            continue;
        }
        let ker_jp = intersect(&preimage(&jn, em.relations()), &kk);
        four_term &= lattice_eq(&ker_jp, &intersect(&d1, &kk));
        cartesian &= lattice_eq(&intersect(&d1, &kk), dn.relations());

        // (j, p) into ker(k) ⊕ D̄, both written in ℤ^{E gens} ⊕ ℤ^{D gens}.
        let (ge, gd) = (em.gens(), dn.gens());
        let graph = jn.vcat(&IntMatrix::identity(gd));
        let rel_e = em.relations().vcat(&IntMatrix::zeros(gd, em.relations().cols()));
        let rel_d = IntMatrix::zeros(ge, kk.cols()).vcat(&kk);
        let image = sum(&sum(&graph, &rel_e), &rel_d);
        let psi = IntMatrix::identity(ge).hcat(&jn.scaled(&BigInt::from(-1)));
        let ker_psi = intersect(
            &preimage(&psi, &sum(&(&jn * &kk), em.relations())),
            &direct_sum_lattice(&ker_k, &IntMatrix::identity(gd)),
        );
        four_term &= lattice_eq(&image, &ker_psi);

        identification &= check_identification(x, n, r, &kk);
    }
    let degenerates = pages.get(r as usize).is_some_and(|p| *p == e_inf);
    four_term &= degenerates;
    let _ = si;
    Ok(CoupleAnalysis {
        pages: pages.into_iter().take(r_max as usize).collect(),
        e_infinity: e_inf,
        torsion_order: Some(r),
        degenerates,
        pages_consistent: consistent,
        four_term_exactness: four_term,
        identification_holds: identification,
        cartesian: (r == 1).then_some(cartesian),
    })
}

fn direct_sum_lattice(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let top = a.hcat(&IntMatrix::zeros(a.rows(), b.cols()));
    let bottom = IntMatrix::zeros(b.rows(), a.cols()).hcat(b);
    top.vcat(&bottom)
}

/// For `x ∈ ker(i^∞) ⊆ Dⁿ`: `x = 0` iff for every `m < r`, `x = iᵐ(y)` with `j(y) ∈ B_m`.
fn check_identification(x: &ExactCouple, n: i64, r: u32, kk: &IntMatrix) -> bool {
    let (si, sj, _) = x.shifts;
    let dn = x.d_at(n);
    let mut samples: Vec<Vec<BigInt>> = kk.columns();
    let cols = kk.columns();
    for a in 0..cols.len() {
        for b in a + 1..cols.len() {
            samples.push(cols[a].iter().zip(&cols[b]).map(|(p, q)| p + q).collect());
        }
    }
    samples.iter().all(|v| {
        let detected_zero = (0..r).all(|m| {
            let src = n - m as i64 * si;
            let lift = x.i_pow(src, m).hcat(dn.relations());
            let Some(sol) = solve(&lift, v) else { return false };
            let y = &sol[..x.d_at(src).gens()];
            let jy = x.j_at(src).mul_vec(y);
            let bm = sum(&(&x.j_at(src) * &x.ker_i_pow(src, m)), x.e_at(src + sj).relations());
            crate::exactalg::lattice::contains(&bm, &jy)
        });
        detected_zero == dn.is_zero_element(v)
    })
}

/// The mod-2 Bockstein couple of a free cochain complex: `D = H(C; ℤ)`, `E = H(C; ℤ/2)`,
/// `i = 2`, `j` reduction and `k = δ/2` raising degree by one.
pub fn bockstein_couple(c: &FreeComplex) -> ExactCouple {
    let two = BigInt::from(2);
    let mut out = ExactCouple { shifts: (0, 0, 1), ..Default::default() };
    let mut zd: BTreeMap<i64, IntMatrix> = BTreeMap::new();
    let mut ze: BTreeMap<i64, IntMatrix> = BTreeMap::new();
    for n in c.degrees() {
        let rank = c.rank(n);
        let delta = c.differential(n).transpose();
        let delta_prev = c.differential(n - 1).transpose();
        let cocycles = preimage(&delta, &IntMatrix::zeros(delta.rows(), 0));
        let mod2 = preimage(&delta, &IntMatrix::identity(delta.rows()).scaled(&two));
        let cob = column_basis(&delta_prev);
        let (dg, db) = AbGroup::subquotient(&cocycles, &cob);
        let (eg, eb) = AbGroup::subquotient(&mod2, &sum(&cob, &IntMatrix::identity(rank).scaled(&two)));
        if dg.gens() > 0 {
            out.d.insert(n, dg);
        }
        if eg.gens() > 0 {
            out.e.insert(n, eg);
        }
        zd.insert(n, db);
        ze.insert(n, eb);
    }
    for (&n, db) in &zd {
        if db.cols() == 0 {
            continue;
        }
        out.i.insert(n, IntMatrix::identity(db.cols()).scaled(&two));
        let eb = &ze[&n];
        out.j.insert(n, solve_matrix(eb, db).expect("integral cocycles are mod-2 cocycles"));
    }
    for (&n, eb) in &ze {
        let Some(target) = zd.get(&(n + 1)) else { continue };
        if eb.cols() == 0 || target.cols() == 0 {
            continue;
        }
        let delta = c.differential(n).transpose();
        let halves: Vec<Vec<BigInt>> =
            (&delta * eb).columns().into_iter().map(|col| col.into_iter().map(|v| v / &two).collect()).collect();
        let half = IntMatrix::from_columns(delta.rows(), &halves);
        out.k.insert(n, solve_matrix(target, &half).expect("δa/2 is a cocycle"));
    }
    out
}

/// The classical convergence oracle: `E_∞ⁿ ≅ (ℤ/2)^{rank Hⁿ(C; ℤ)}`.
pub fn classical_e_infinity(c: &FreeComplex) -> GradedGroup {
    let h = crate::exactalg::integer_cohomology(c, &BigUint::from(0u32)).expect("composable complex");
    let mut out = GradedGroup::new();
    for (n, g) in h.iter() {
        let mut e = FormalGroup::zero();
        for _ in 0..g.free_rank() {
            e = e.direct_sum(&FormalGroup::cyclic(2u32));
        }
        out.add(n, &e);
    }
    out
}
