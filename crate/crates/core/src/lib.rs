//! Computational homological algebra over finite-dimensional algebras over
//! prime fields: resolutions, Ext and Tor, stable hom-sets, Tate
//! cohomology, and acyclicity classes of complexes of injectives and
//! projectives.

pub mod algebra;
pub mod catalog;
pub mod complexes;
pub mod counterexamples;
pub mod error;
pub mod exactla;
pub mod homalg;
pub mod modrep;
pub mod stable;

pub use error::{Error, Result};

// The guide's snippets run as doctests.
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/rings.md")]
mod book_rings {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/resolutions.md")]
mod book_resolutions {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/complexes.md")]
mod book_complexes {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/acyclicity.md")]
mod book_acyclicity {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/stable.md")]
mod book_stable {}
#[cfg(doctest)]
#[doc = include_str!("../../../book/src/filtrations.md")]
mod book_filtrations {}
