//! Exact distributions for generalized (k1,k2)-run patterns in independent
//! Bernoulli trials.
//!
//! Three pattern families are supported (see [`PatternSpec`]). For each the
//! crate computes the count distribution in `n` trials and the distribution
//! of the waiting time until the `r`-th occurrence, through several
//! independent backends that cross-check one another:
//!
//! - [`chain`]: Markov chain embedding evaluated by iteration;
//! - [`count`]: PGF/PMF/moment recursions and explicit multinomial sums;
//! - [`waiting`]: closed-form waiting-time PGFs, their series expansion,
//!   PMF recursions and moment solves;
//! - [`oracle`]: exhaustive enumeration over all `2^n` sequences.
//!
//! ```
//! use krun::{count, PatternSpec, TrialParams};
//!
//! let spec = PatternSpec::t3(1, 2, 1, 1).unwrap();
//! let params = TrialParams::new(0.35).unwrap();
//! let pmf = count::pmf_recursive(&spec, &params, 60).unwrap();
//! assert!((pmf.prob(0) - 0.0081259).abs() < 1e-6);
//! ```

pub mod chain;
pub mod combin;
pub mod count;
mod dd;
pub mod error;
pub mod fibwords;
pub mod oracle;
pub mod pattern;
pub mod pmf;
pub mod poly;
pub mod scanner;
pub mod sequence;
pub mod waiting;

pub use chain::{build_chain, ChainEmbedding};
pub use error::{Error, Result};
pub use pattern::{derived_constants, DerivedConstants, PatternKind, PatternSpec, TrialParams};
pub use pmf::{MomentVector, Pmf};
pub use poly::Polynomial;
pub use sequence::BitSequence;
pub use waiting::RationalFunction;
