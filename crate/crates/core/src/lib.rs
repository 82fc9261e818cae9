pub mod albert;
pub mod error;
pub mod exact;
pub mod multiplicity;
pub mod nesting;
pub mod octonion;
pub mod pairings;
pub mod parallel;
pub mod spin;
pub mod verify;
pub mod wick;

pub use error::{Error, Result};
pub use exact::{ExactRational, MomentPolynomial, TruncatedSeries};
pub use multiplicity::MultiplicityVector;
pub use parallel::{with_workers, RunOptions};
