//! Arithmetic of the elliptic threefold `y^2 = x^3 + 16(z0^6 + z1^6 + z2^6 - 2(...))`
//! in P(2,3,1,1,1): point counts over F_p, the singular locus, Jacobian-ring and
//! Milnor-number inputs, and the integer feasibility problem that pins down
//! `h^4(Y)` and the Mordell-Weil rank of the associated elliptic curve over
//! `Qbar(s, t)`.

pub mod algebra;
pub mod betti;
pub mod curve;
pub mod enumerate;
pub mod error;
pub mod hodge;
pub mod linalg;
pub mod sections;
pub mod singular;
pub mod wps_count;

pub use enumerate::CountOptions;
pub use error::{Error, Result};
