pub mod closure;
pub mod corpus;
pub mod decision;
pub mod enumerate;
pub mod error;
pub mod factor;
pub mod hurwitz;
pub mod intfactor;
pub mod ivp;
pub mod lattice;
pub mod linalg;
pub mod modpoly;
pub mod order;
pub mod poly;
pub mod rational;
pub mod semisimple;

pub use error::{Error, Result};
pub use order::{load_order, AlgebraElement, ZOrder};
pub use poly::RationalPolynomial;
