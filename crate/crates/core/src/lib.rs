//! Weight-homogeneous planar polynomial centers, their first-order Melnikov
//! functions, and direct verification of bifurcating limit cycles.

pub mod dd;
pub mod error;
pub mod exponents;
pub mod melnikov;
pub mod ode;
pub mod oval;
pub mod poly;
pub mod properties;
pub mod quad;
pub mod shoot;
pub mod whsys;

pub use error::{Error, Result};
pub use poly::{parse_rational, PowerSeries1, Poly2, Rational};
