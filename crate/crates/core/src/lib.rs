//! Three-gender stable marriage (3GSM) and three-person stable assignment
//! (3PSA): instances, instability counting, greedy approximations, exact
//! oracles, instance families and the 3DM reduction chain.

pub mod approx;
pub mod cli;
pub mod error;
pub mod exact;
pub mod format;
pub mod generators;
pub mod instance;
pub mod reductions;
pub mod solution;
pub mod stability;

pub use error::{Error, Result};
pub use instance::{DmInstance, Gender, GsmInstance, PsaInstance, UNMATCHED};
pub use solution::{Family, Marriage, Matching, Submarriage, Submatching};
