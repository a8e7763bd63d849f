//! Hyperbolic Pascal triangles for the regular mosaics `{4,q}`.
//!
//! The crate grows the triangle row by row with exact big-integer values
//! ([`triangle`]), evaluates the row-size, row-sum and alternating-sum
//! sequences in closed form and by recurrence ([`sequences`]), checks those
//! against brute-force construction ([`analysis`]) and serializes rows and
//! reports ([`export`]).
//!
//! ```
//! use hpt_core::{triangle, CellCap, Mosaic};
//!
//! let q6 = Mosaic::new(6).unwrap();
//! let row = triangle::row(q6, 3, CellCap::default()).unwrap();
//! let values: Vec<u32> = row.values().map(|v| v.try_into().unwrap()).collect();
//! assert_eq!(values, [1, 3, 2, 2, 3, 1]);
//! ```

pub mod analysis;
mod cap;
mod error;
pub mod export;
mod mosaic;
pub mod sequences;
pub mod triangle;

pub use cap::{CellCap, DEFAULT_MAX_CELLS, MAX_CELLS_ENV};
pub use error::{Error, Result};
pub use mosaic::{Mosaic, Parity};
