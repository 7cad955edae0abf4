//! Exact computations with Tate Milnor–Witt motives over a Euclidean field.

pub mod bockstein;
pub mod checks;
pub mod cohomology;
pub mod exactalg;
pub mod geometry;
pub mod json;
pub mod motives;
pub mod wittring;

/// Guide chapters, compiled as doctests.
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/witt_ring.md")]
    pub mod witt_ring {}
    #[doc = include_str!("../../../book/src/normal_forms.md")]
    pub mod normal_forms {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    pub mod cohomology {}
    #[doc = include_str!("../../../book/src/bockstein.md")]
    pub mod bockstein {}
    #[doc = include_str!("../../../book/src/exact_couples.md")]
    pub mod exact_couples {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    pub mod geometry {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
