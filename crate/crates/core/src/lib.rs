//! Graded commutative algebra over `Q` and prime fields.
//!
//! Polynomial rings with weighted gradings, Groebner bases of submodules of free modules,
//! minimal free resolutions, Ext and Tor, local cohomology, sheaf cohomology and
//! Castelnuovo-Mumford regularity, flat families over a line, and Pluecker coordinates.

pub mod error;
pub mod families;
pub mod field;
pub mod grassmann;
pub mod groebner;
pub mod homology;
pub mod linalg;
pub mod local;
pub mod monomial;
pub mod poly;
pub mod projective;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use groebner::{groebner_basis, syzygies, FreeElement, GroebnerBasis, Submodule};
pub use monomial::{ModuleOrder, Monomial, MonomialOrder};
pub use poly::{MultiPoly, PolyRing, RingRef};
