//! Convex polyhedra in hyperbolic 3-space.
//!
//! The crate covers the hyperboloid and projective models of H³, combinatorial
//! polyhedra, polyhedra cut out by half-spaces, their polar duals as spherical
//! cone metrics, admissibility checks on such metrics, Andreev's dihedral-angle
//! conditions and Pogorelov's map with the equal-edge-length prism pairs it
//! produces.
//!
//! | module | contents |
//! |---|---|
//! | [`minkowski`] | Minkowski form, hyperboloid and de Sitter points, Lorentz transforms |
//! | [`spherical`] | spherical trigonometry helpers |
//! | [`models`] | Klein, Poincaré, upper half-space and exterior models |
//! | [`combinatorics`] | abstract polyhedra, duality, Steinitz test, stellation |
//! | [`hpolyhedron`] | half-space polyhedra and their metric quantities |
//! | [`polar`] | Gauss images, cone metrics, admissibility, t-expansion |
//! | [`andreev`] | Andreev conditions and the dual Andreev metric |
//! | [`pogorelov`] | Pogorelov's map and non-congruent prism pairs |
//! | [`io`] | JSON file formats |
//!
//! The guide in `book/` walks through each part; its code blocks are compiled
//! and run as doctests of this crate.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod andreev;
pub mod combinatorics;
pub mod error;
pub mod hpolyhedron;
pub mod io;
pub mod minkowski;
pub mod models;
pub mod pogorelov;
pub mod polar;
pub mod report;
pub mod spherical;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/models.md")]
    pub struct Models;
    #[doc = include_str!("../../../book/src/combinatorics.md")]
    pub struct Combinatorics;
    #[doc = include_str!("../../../book/src/halfspaces.md")]
    pub struct HalfSpaces;
    #[doc = include_str!("../../../book/src/gauss-image.md")]
    pub struct GaussImage;
    #[doc = include_str!("../../../book/src/ideal.md")]
    pub struct Ideal;
    #[doc = include_str!("../../../book/src/andreev.md")]
    pub struct Andreev;
    #[doc = include_str!("../../../book/src/pogorelov.md")]
    pub struct Pogorelov;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
