//! Exact computations for linear sum-rank metric codes over small finite
//! fields.

pub mod anticode;
pub mod code;
pub mod cover;
pub mod error;
pub mod genweights;
pub mod gf;
pub mod io;
pub mod isom;
pub mod matfq;
pub mod msrd;
pub mod wiretap;

pub use code::{LinearCode, MatrixTuple, Shape};
pub use error::{Error, Result};
pub use gf::{Field, FieldContext, FieldElement};
pub use matfq::{MatrixFq, Subspace};

/// Limits on brute-force work. Exceeding one yields
/// [`Error::EnumerationTooLarge`] or [`Error::GroupTooLarge`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Codewords visited by a full enumeration (`q^dim`).
    pub codewords: u128,
    /// Subspaces per enumeration, and members of an anticode family.
    pub subspaces: u128,
    /// Elements of an isometry group searched for equivalences.
    pub group: u128,
    /// Message/codeword pairs in the mutual-information oracle.
    pub mi: u128,
    /// Longest run of trailing scalar blocks whose Hamming anticodes are
    /// enumerated.
    pub tail_len: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { codewords: 1 << 24, subspaces: 1_000_000, group: 10_000_000, mi: 1 << 20, tail_len: 6 }
    }
}
