use std::fmt;

use serde::Serialize;

/// Shape of a summand of a complex of free `ℤ/2[ρ]`-modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum RhoShape {
    /// A single copy of `ℤ/2[ρ]` in one chain degree.
    Unit,
    /// `S`: `ℤ/2[ρ] → ℤ/2[ρ]` with zero differential, in degrees `d` and `d + 1`.
    FreeTower,
    /// `S_j`: `ℤ/2[ρ] →ρʲ ℤ/2[ρ]` in degrees `d` and `d + 1`, with `j ≥ 1`.
    ConeTower { j: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RhoSummand {
    pub degree: i64,
    #[serde(flatten)]
    pub shape: RhoShape,
}

/// A direct sum of [`RhoSummand`]s, kept sorted by degree then shape.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct RhoComplex {
    summands: Vec<RhoSummand>,
}

impl RhoComplex {
    pub fn new(mut summands: Vec<RhoSummand>) -> Self {
        for s in &summands {
            if let RhoShape::ConeTower { j } = s.shape {
                assert!(j >= 1, "cone towers need j >= 1");
            }
        }
        summands.sort();
        RhoComplex { summands }
    }

    pub fn summands(&self) -> &[RhoSummand] {
        &self.summands
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn direct_sum(&self, other: &RhoComplex) -> RhoComplex {
        let mut s = self.summands.clone();
        s.extend_from_slice(&other.summands);
        RhoComplex::new(s)
    }
}

/// Derived tensor product over `ℤ/2[ρ]`, summand by summand.
///
/// `S⊗S = S⊕S[1]`, `S⊗S_j = S_j⊕S_j[1]`, and `S_a⊗S_b = S_a⊕S_a[1]` for `a ≤ b`; a `Unit`
/// only shifts.
pub fn rho_module_tensor(x: &RhoComplex, y: &RhoComplex) -> RhoComplex {
    let mut out = Vec::new();
    for a in &x.summands {
        for b in &y.summands {
            let d = a.degree + b.degree;
            let pair = |shape| [RhoSummand { degree: d, shape }, RhoSummand { degree: d + 1, shape }];
            match (a.shape, b.shape) {
                (RhoShape::Unit, shape) | (shape, RhoShape::Unit) => out.push(RhoSummand { degree: d, shape }),
                (RhoShape::FreeTower, RhoShape::FreeTower) => out.extend(pair(RhoShape::FreeTower)),
                (RhoShape::FreeTower, cone @ RhoShape::ConeTower { .. })
                | (cone @ RhoShape::ConeTower { .. }, RhoShape::FreeTower) => out.extend(pair(cone)),
                (RhoShape::ConeTower { j: p }, RhoShape::ConeTower { j: q }) => {
                    out.extend(pair(RhoShape::ConeTower { j: p.min(q) }))
                }
            }
        }
    }
    RhoComplex::new(out)
}

/// Homology class of a summand: `ℤ/2[ρ]` (`None`) or `ℤ/2[ρ]/ρᵏ` in a chain degree.
pub type RhoHomology = Vec<(i64, Option<u32>)>;

/// Homology of a [`RhoComplex`] as a sorted list of cyclic modules.
pub fn rho_homology(x: &RhoComplex) -> RhoHomology {
    let mut out = Vec::new();
    for s in &x.summands {
        match s.shape {
            RhoShape::Unit => out.push((s.degree, None)),
            RhoShape::FreeTower => {
                out.push((s.degree, None));
                out.push((s.degree + 1, None));
            }
            RhoShape::ConeTower { j } => out.push((s.degree + 1, Some(j))),
        }
    }
    out.sort();
    out
}

impl fmt::Display for RhoComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| match s.shape {
                RhoShape::Unit => format!("R[{}]", s.degree),
                RhoShape::FreeTower => format!("S[{}]", s.degree),
                RhoShape::ConeTower { j } => format!("S_{j}[{}]", s.degree),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
