pub mod abelian;
pub mod bench;
pub mod error;
pub mod ext;
pub mod fixture;
pub mod galois;
pub mod group;
pub mod matrix;
pub mod metacyclic;
pub mod normality;
pub mod orbit;
pub mod poly;
pub mod scalar;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/orbit-sums.md")]
    mod orbit_sums {}
    #[doc = include_str!("../../../book/src/abelian.md")]
    mod abelian {}
    #[doc = include_str!("../../../book/src/metacyclic.md")]
    mod metacyclic {}
    #[doc = include_str!("../../../book/src/normality.md")]
    mod normality {}
    #[doc = include_str!("../../../book/src/conversion.md")]
    mod conversion {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/benchmarks.md")]
    mod benchmarks {}
}
