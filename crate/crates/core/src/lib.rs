//! Sparsity-augmented probabilistic collaborative representation
//! classification (SA-ProCRC) and its baselines SRC, CRC, ProCRC and SA-CRC.
//!
//! A dictionary `X` holds training samples as columns, grouped by class. Dense
//! coders ([`coders::fit_crc`], [`coders::fit_procrc`]) precompute a projector
//! mapping a test sample to its coefficient vector; the sparse coder
//! [`coders::omp`] selects at most `k` atoms. The sparsity-augmented rule
//! ([`classify::classify_sa`]) sums the two codes, normalizes the sum, and
//! picks the class with the largest coefficient mass.

pub mod bench;
pub mod classify;
pub mod coders;
pub mod data;
pub mod error;
pub mod io;
pub mod linalg;
pub mod model;

pub use classify::{ClassDecision, DecisionRule, LabelMatrix};
pub use coders::{CrcProjector, DenseCoder, ProCrcProjector, SparseCode};
pub use data::{Dataset, Split, SynthSpec};
pub use error::{Error, ErrorKind, Result};
pub use linalg::{Mat, Vector};
pub use model::{Classifier, Method, MethodParams, TrainingSet};
