//! Finite-quotient C*-seminorms on group algebras of residually finite
//! groups, truncated inverse systems of finite quotients, and constructive
//! separation witnesses.
//!
//! See the guide in `book/` for a walk-through.

pub mod descriptor;
mod error;
pub mod finite_group;
pub mod group_algebra;
pub mod linalg;
pub mod prostructure;
pub mod quotients;
pub mod sampling;
pub mod seminorms;
pub mod suites;
pub mod tolerances;
pub mod witnesses;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/finite-groups.md")]
    struct FiniteGroups;
    #[doc = include_str!("../../../book/src/group-algebras.md")]
    struct GroupAlgebras;
    #[doc = include_str!("../../../book/src/seminorms.md")]
    struct Seminorms;
    #[doc = include_str!("../../../book/src/inverse-systems.md")]
    struct InverseSystems;
    #[doc = include_str!("../../../book/src/witnesses.md")]
    struct Witnesses;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
