//! Analysis of reaction networks with Hill-type and poly-PL quotient kinetics.

// Tolerance checks are written `!(r < tol)` so that NaN counts as a failure.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod graph;
pub mod linalg;
pub mod network;
pub mod num;

pub use error::{Error, Result};
pub use network::{Complex, GraphIndices, Network, Reaction, Species};
pub use num::Num;
pub mod kinetics;
pub mod poly;
pub mod pyk;
pub mod transforms;
pub mod lp;
pub mod numerics;
pub mod specieswise;
pub mod structural;
pub mod io;
pub mod report;
