//! Diagonal gates on CSS and stabilizer codes.
//!
//! The crate decides, exactly, whether a diagonal physical gate with dyadic
//! phases preserves a CSS code and which diagonal logical gate it induces. The
//! decision runs over the coset `C1 + y` only, so codes with tens of physical
//! qubits stay within reach. Alongside it:
//!
//! - [`gf2`] and [`code`]: bit-packed GF(2) linear algebra and binary codes.
//! - [`codespace`]: CSS codes, encoded states, stabilizer standard form.
//! - [`diaggate`] and [`symbolic`]: diagonal gate representations.
//! - [`cyclotomic`]: exact arithmetic in `Z[ζ_{2^L}][1/2]`.
//! - [`gencoeff`]: generator coefficients, preservation, induced logicals.
//! - [`qforms`]: quadratic forms and the simplex-based `T†` code family.
//! - [`oracle`]: a floating-point sparse-state simulator used as an
//!   independent cross-check.
//! - [`io`]: JSON file formats.

pub mod code;
pub mod codespace;
pub mod cyclotomic;
pub mod diaggate;
pub mod error;
pub mod gencoeff;
pub mod gf2;
pub mod io;
pub mod oracle;
pub mod qforms;
pub mod state;
pub mod symbolic;

pub use code::{coset_reps, min_weight_bounded, LinearCode, DEFAULT_ENUM_CAP};
pub use codespace::{standard_form, tower_from_standard_form, CssCode, StabilizerStandardForm};
pub use cyclotomic::CyclotomicNumber;
pub use diaggate::{DyadicDiagonalGate, LocalFactor};
pub use error::{Error, Result};
pub use gencoeff::LogicalDiagonal;
pub use gf2::{BitMatrix, BitVector};
pub use state::SparseState;
pub use symbolic::{LinearForm, SymbolicPhaseGate};
