//! Symbolic composition of the 2×2 Steenrod operator matrix over a mod-2 rewriting system.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sym {
    Rho,
    Tau,
    Sq(u8),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sym::Rho => f.write_str("rho"),
            Sym::Tau => f.write_str("tau"),
            Sym::Sq(k) => write!(f, "Sq{k}"),
        }
    }
}

pub type Word = Vec<Sym>;

/// A mod-2 sum of words; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(BTreeSet<Word>);

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn word(w: &[Sym]) -> Self {
        let mut p = Poly::zero();
        p.toggle(w.to_vec());
        p
    }

    pub fn one() -> Self {
        Poly::word(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn toggle(&mut self, w: Word) {
        if !self.0.remove(&w) {
            self.0.insert(w);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for w in &other.0 {
            out.toggle(w.clone());
        }
        out
    }

    /// Concatenation, bilinear over `F₂`.
    pub fn compose(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for a in &self.0 {
            for b in &other.0 {
                out.toggle(a.iter().chain(b).copied().collect());
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(Sym::to_string).collect::<Vec<_>>().join(" ")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[derive(Clone, Debug)]
pub struct Rule {
    pub name: String,
    pub lhs: Word,
    pub rhs: Vec<Word>,
}

impl Rule {
    fn new(name: &str, lhs: &[Sym], rhs: &[&[Sym]]) -> Self {
        Rule { name: name.to_string(), lhs: lhs.to_vec(), rhs: rhs.iter().map(|w| w.to_vec()).collect() }
    }
}

use Sym::{Rho as R, Sq, Tau as T};

/// `ρ` is central; rules moving it to the left of every other symbol.
fn rho_central() -> Vec<Rule> {
    [T, Sq(1), Sq(2), Sq(3), Sq(5)]
        .into_iter()
        .map(|x| Rule::new(&format!("{x} rho = rho {x}"), &[x, R], &[&[R, x]]))
        .collect()
}

/// The identities used by the `D² = 0` argument, together with `Sq¹Sq¹ = 0`,
/// `Sq¹Sq³Sq¹ = 0`, central `ρ`, and `τ` commuting with the odd squares.
pub fn quoted_rules() -> Vec<Rule> {
    let mut rules = rho_central();
    for k in [1, 3, 5] {
        rules.push(Rule::new(&format!("Sq{k} tau = tau Sq{k}"), &[Sq(k), T], &[&[T, Sq(k)]]));
    }
    rules.extend([
        Rule::new("Sq2 tau = tau Sq2 + tau rho Sq1", &[Sq(2), T], &[&[T, Sq(2)], &[T, R, Sq(1)]]),
        Rule::new("Sq2 Sq2 = tau Sq3 Sq1", &[Sq(2), Sq(2)], &[&[T, Sq(3), Sq(1)]]),
        Rule::new("Sq2 Sq3 Sq1 = Sq5 Sq1", &[Sq(2), Sq(3), Sq(1)], &[&[Sq(5), Sq(1)]]),
        Rule::new("Sq3 Sq1 Sq2 = Sq5 Sq1", &[Sq(3), Sq(1), Sq(2)], &[&[Sq(5), Sq(1)]]),
        Rule::new("Sq3 Sq3 = Sq5 Sq1", &[Sq(3), Sq(3)], &[&[Sq(5), Sq(1)]]),
        Rule::new("Sq1 Sq1 = 0", &[Sq(1), Sq(1)], &[]),
        Rule::new("Sq1 Sq3 Sq1 = 0", &[Sq(1), Sq(3), Sq(1)], &[]),
    ]);
    rules
}

/// The quoted set with the motivic commutators `Sq¹τ = τSq¹ + ρ`, `Sq³τ = τSq³ + ρSq² + ρ²Sq¹`
/// and the Adem relation `Sq¹Sq² = Sq³` in place of plain commutation.
pub fn extended_rules() -> Vec<Rule> {
    let mut rules: Vec<Rule> =
        quoted_rules().into_iter().filter(|r| r.name != "Sq1 tau = tau Sq1" && r.name != "Sq3 tau = tau Sq3").collect();
    rules.extend([
        Rule::new("Sq1 tau = tau Sq1 + rho", &[Sq(1), T], &[&[T, Sq(1)], &[R]]),
        Rule::new("Sq3 tau = tau Sq3 + rho Sq2 + rho^2 Sq1", &[Sq(3), T], &[&[T, Sq(3)], &[R, Sq(2)], &[R, R, Sq(1)]]),
        Rule::new("Sq1 Sq2 = Sq3", &[Sq(1), Sq(2)], &[&[Sq(3)]]),
    ]);
    rules
}

const MAX_STEPS: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub input: String,
    pub result: String,
    pub is_zero: bool,
    /// One line per rewrite: rule name and the sum after applying it.
    pub trace: Vec<String>,
}

/// Rewrites the leftmost redex of the first reducible word until none remains.
pub fn reduce(p: &Poly, rules: &[Rule]) -> Reduction {
    let mut cur = p.clone();
    let mut trace = Vec::new();
    'outer: for _ in 0..MAX_STEPS {
        for w in &cur.0 {
            for pos in 0..w.len() {
                if let Some(rule) = rules.iter().find(|r| w[pos..].starts_with(&r.lhs)) {
                    let (pre, post) = (&w[..pos], &w[pos + rule.lhs.len()..]);
                    let mut next = cur.clone();
                    next.toggle(w.clone());
                    for r in &rule.rhs {
                        next.toggle(pre.iter().chain(r).chain(post).copied().collect());
                    }
                    cur = next;
                    trace.push(format!("{}: {}", rule.name, cur));
                    continue 'outer;
                }
            }
        }
        break;
    }
    Reduction { input: p.to_string(), result: cur.to_string(), is_zero: cur.is_zero(), trace }
}

pub type OpMatrix = [[Poly; 2]; 2];

pub fn compose(a: &OpMatrix, b: &OpMatrix) -> OpMatrix {
    let e = |r: usize, c: usize| a[r][0].compose(&b[0][c]).add(&a[r][1].compose(&b[1][c]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// `D = (Sq², τ; Sq³Sq¹, Sq² + ρSq¹)`.
pub fn d_matrix() -> OpMatrix {
    [
        [Poly::word(&[Sq(2)]), Poly::word(&[T])],
        [Poly::word(&[Sq(3), Sq(1)]), Poly::word(&[Sq(2)]).add(&Poly::word(&[R, Sq(1)]))],
    ]
}

pub fn identity_matrix() -> OpMatrix {
    [[Poly::one(), Poly::zero()], [Poly::zero(), Poly::one()]]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareCheck {
    pub all_zero: bool,
    /// Row-major entries of the square.
    pub entries: Vec<Reduction>,
}

pub fn square_check(m: &OpMatrix, rules: &[Rule]) -> SquareCheck {
    let sq = compose(m, m);
    let entries: Vec<Reduction> = sq.iter().flatten().map(|p| reduce(p, rules)).collect();
    SquareCheck { all_zero: entries.iter().all(|e| e.is_zero), entries }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SteenrodReport {
    /// `D²` reduces to zero under the quoted identities alone.
    pub holds: bool,
    pub quoted: SquareCheck,
    /// `D²` under the quoted identities plus the motivic `τ`-commutators.
    pub extended: SquareCheck,
    /// Without `Sq²Sq² = τSq³Sq¹` the top-left entry survives under both rule sets.
    pub mutation_detected: bool,
    /// The identity matrix squares to itself.
    pub identity_ok: bool,
}

pub fn steenrod_dsquare_check() -> SteenrodReport {
    let d = d_matrix();
    let quoted = square_check(&d, &quoted_rules());
    let extended = square_check(&d, &extended_rules());
    let drop =
        |rules: Vec<Rule>| -> Vec<Rule> { rules.into_iter().filter(|r| r.name != "Sq2 Sq2 = tau Sq3 Sq1").collect() };
    let mutated_q = square_check(&d, &drop(quoted_rules()));
    let mutated_e = square_check(&d, &drop(extended_rules()));
    let mutation_detected = !mutated_q.entries[0].is_zero && !mutated_e.entries[0].is_zero && !mutated_e.all_zero;
    let id = identity_matrix();
    let id_sq = compose(&id, &id);
    let identity_ok = id_sq.iter().flatten().zip(id.iter().flatten()).all(|(a, b)| {
        let (ra, rb) = (reduce(a, &quoted_rules()), reduce(b, &quoted_rules()));
        ra.result == rb.result
    });
    SteenrodReport { holds: quoted.all_zero, quoted, extended, mutation_detected, identity_ok }
}
