//! Structural analysis: SF-pairs, robustness certificates, decompositions,
//! complex-balancing properties and the sign-vector criterion.

mod balancing;
mod certificate;
mod decomposition;
mod robustness;
mod sf;
mod sign;

pub use balancing::*;
pub use certificate::*;
pub use decomposition::*;
pub use robustness::*;
pub use sf::*;
pub use sign::*;
