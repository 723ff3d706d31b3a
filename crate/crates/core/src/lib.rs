//! Large tandem walks in the quarter plane and generalized 3-ballot walks.
//!
//! The crate enumerates both families exactly (and in log-scaled floating
//! point), maps walks between them, evaluates the critical point, growth
//! constant and critical exponent of the excursion sequence in closed form
//! and numerically, classifies which models carry an irrational exponent
//! (and therefore a non-D-finite excursion generating function), fits
//! exponents from counting data and guesses P-recursive recurrences over
//! exact rationals.
//!
//! The crate is `no_std` (with `alloc`) when built without the default
//! `std` feature. The `parallel` feature enables rayon inside the
//! dynamic-programming sweeps and the recurrence search; results are
//! identical with or without it.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod bijection;
pub mod classify;
pub mod enumerate;
pub mod exponent;
pub mod fit;
pub mod guess;
pub mod model;

mod limbs;
mod linalg;
mod math;

pub use enumerate::{CountSequence, Mode};
pub use exponent::ExponentReport;
pub use model::{BallotModel, ModelError, StepSet, TandemModel};

/// The fifteen ballot models `(a,b,c)` tabulated by the `table1` subcommand.
pub const TABLE1_BALLOT: [[u64; 3]; 15] = [
    [1, 1, 1],
    [1, 2, 2],
    [1, 1, 2],
    [1, 3, 3],
    [2, 3, 6],
    [2, 3, 3],
    [1, 1, 3],
    [2, 2, 3],
    [1, 4, 4],
    [1, 2, 4],
    [3, 4, 12],
    [3, 4, 6],
    [3, 4, 4],
    [1, 1, 4],
    [3, 3, 4],
];
