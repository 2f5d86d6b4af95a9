//! Sampled simulation of the quantum subroutines.
//!
//! Every subroutine is measured at its end, so a run is a Markov chain over
//! classical states whose transition laws are computed exactly in the
//! two-dimensional Grover subspace.

pub mod amplify;
pub mod grover;
pub mod predicate;
pub mod qmax;
pub mod search;

/// Per-trial random stream.
pub type SimRng = rand_chacha::ChaCha8Rng;

pub use amplify::{amplitude_amplify, boost, boost_count, AmplifyMode, BaseRoutine};
pub use grover::{grover_success_prob, sample_grover_run, GroverSpec, OutcomeSample};
pub use predicate::Predicate;
pub use qmax::{qmax, Candidates, QmaxOutcome};
pub use search::{first_one, last_one, qsearch, SearchParams};
