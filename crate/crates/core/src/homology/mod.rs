//! Graded free modules, presented modules, resolutions, Ext and Tor, Hilbert functions.

mod derived;
mod free;
mod hilbert;
mod module;
mod resolution;

pub use derived::{ext_module, hom_module, subquotient, tensor_product, tor_module};
pub use free::{GradedFreeModule, GradedMap};
pub use hilbert::{hilbert_polynomial, hilbert_series, krull_dimension, HilbertSeries, NumericalPolynomial};
pub use module::{GradedDims, PresentedModule};
pub use resolution::{betti_table, minimal_free_resolution, projective_dimension, BettiTable, FreeResolution};

pub(crate) use hilbert::binom;
