//! Combinatorics and finite-field linear algebra of exotic Spaltenstein
//! varieties: partitions and bitableaux, exact linear algebra over 𝔽_p,
//! exotic nilpotent points and their Jordan data, flag enumeration with
//! point-count fitting, and relative positions of flag pairs.

pub mod error;
pub mod exactla;

pub use error::{Error, Result};
pub mod combinatorics;
pub mod polyid;
pub mod symplectic;
pub mod jordan;
pub mod spaltenstein;
pub mod steinberg;
pub mod checks;
pub mod cli;
