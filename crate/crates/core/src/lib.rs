//! Exact contextuality measures for systems of binary random variables
//! measured in pairs.
//!
//! Two measures are computed with rational arithmetic throughout:
//!
//! * `Γ_min`, the smallest total negative mass of a signed joint measure that
//!   reproduces every observed pair ([`measures::gamma_min_lp`]);
//! * `Δ_min`, the smallest expected number of mismatches between copies of the
//!   same property in a proper coupling of all context-indexed variables
//!   ([`measures::delta_min_lp`]).
//!
//! For the three-time Leggett-Garg and the two-party, two-setting EPR-Bell
//! shapes both measures have closed forms in terms of the pair correlations,
//! and the two coincide. [`derive`] rebuilds the bounds on `Δ` by
//! Fourier–Motzkin elimination and checks the underlying system against the
//! joint distributions directly.
//!
//! ```
//! use contexture::exact::q;
//! use contexture::measures::{delta_min_lp, gamma_min_lp};
//! use contexture::scenario::{Probs, Scenario};
//!
//! let same = Probs::new(q(1, 2), q(0, 1), q(0, 1), q(1, 2));
//! let opposite = Probs::new(q(0, 1), q(1, 2), q(1, 2), q(0, 1));
//! let pr_box = Scenario::epr_bell([same.clone(), same.clone(), same, opposite]).unwrap();
//! assert_eq!(gamma_min_lp(&pr_box).unwrap().value, q(1, 1));
//! assert_eq!(delta_min_lp(&pr_box).unwrap().value, q(1, 1));
//! ```

// Dense tableau code indexes several parallel arrays at once, and the error
// enums carry exact values for reporting.
#![allow(clippy::needless_range_loop, clippy::result_large_err)]

pub mod cli;
pub mod derive;
pub mod exact;
pub mod measures;
pub mod polyhedra;
pub mod random;
pub mod scenario;
