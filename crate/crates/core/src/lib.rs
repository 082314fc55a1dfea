//! Exact combinatorics of scaffolds for integer points of the positive tropical
//! Grassmannian of 3-planes.

pub mod cat0;
pub mod error;
pub mod gen;
pub mod io;
pub mod map;
pub mod matroids;
pub mod nc;
pub mod pluecker;
pub mod reconstruct;
pub mod render;
pub mod subsets;
pub mod web;

pub use error::{Error, Result};
pub use pluecker::{PlueckerVector, TMatrix};
pub use subsets::{Triple, Q};
pub use map::PlanarMap;
pub use cat0::LabeledGraph;

/// Guide chapters, compiled as doctests so their snippets stay in sync.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/pluecker.md")]
    pub mod pluecker {}
    #[doc = include_str!("../../../book/src/scaffolds.md")]
    pub mod scaffolds {}
    #[doc = include_str!("../../../book/src/webs.md")]
    pub mod webs {}
    #[doc = include_str!("../../../book/src/tableaux.md")]
    pub mod tableaux {}
    #[doc = include_str!("../../../book/src/reconstruct.md")]
    pub mod reconstruct {}
    #[doc = include_str!("../../../book/src/matroids.md")]
    pub mod matroids {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
