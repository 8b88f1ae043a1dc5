//! Continuous-time quantum search with a mistuned driving Hamiltonian.
//!
//! The model: a rank-1 oracle term E|w><w| marks an unknown state |w>; the
//! experimenter adds a driving term E'|s><s| built from the prepared initial
//! state |s> and lets the Schrodinger equation run. The dynamics stays in
//! the plane spanned by |w> and |s> and oscillates sinusoidally, so
//! everything about the search — peak success probability, peak time, the
//! cost of repeated trials — has a closed form.
//!
//! The crate provides that closed form ([`closed_form`]), the exact model
//! objects ([`model`]), two independent brute-force evolutions that validate
//! it ([`oracle`]), and Haar-random overlap statistics ([`stats`]).
//!
//! Tuned driving (E' = E) reaches |w> with certainty after a time growing
//! like sqrt(N); any fixed mistuning E' != E knocks the peak probability
//! down to O(1/N) and the repeated-trial cost back to the classical O(N).

pub mod closed_form;
pub mod error;
pub mod model;
pub mod oracle;
pub mod stats;

pub use closed_form::{DerivedQuantities, PeakReport};
pub use error::{Error, Result};
pub use model::{HamiltonianDense, SearchParams, StateVector, DENSE_DIM_CAP};
pub use oracle::{ErrorReport, PropagationMethod, Trajectory, STEP_GUARD};
pub use stats::{OverlapLaw, OverlapSampleSet};
