//! Exact graded commutative algebra over weighted quotient rings k[x]/J:
//! Groebner bases, minimal resolutions, Ext/Tor, stable Hom, depth and
//! injective dimension probes, and predicates on ideals (weakly m-full,
//! m-full, Burch).

pub mod artinian;
pub mod error;
pub mod field;
pub mod fpmodule;
pub mod groebner;
pub mod homalg;
pub mod idealkit;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod ring;
pub mod semigroup;
pub mod scenario;
pub mod vector;

pub use error::{Error, Result};
pub use field::{Field, Fp, Rat, Q};
pub use ring::{Ring, RingRef};
