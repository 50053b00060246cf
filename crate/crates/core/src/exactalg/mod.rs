//! Exact rational linear algebra behind the combinatorics: the symplectic
//! form, points of quiver Grassmannians, the Lie algebras `g ⊇ g^sp`, the
//! orbit-rank dimension oracle, automorphism equations and degenerations.
//!
//! Every comparison here is an equality of rationals; nothing is rounded.

mod aut;
mod degeneration;
mod forms;
mod lie;
mod matrix;
mod oracle;
mod point;

pub use aut::{
    build_aut_from_tuple, check_aut_equations, first_columns, preserves_form, random_gsp_element,
};
pub use degeneration::{degeneration_path, line_cell_point, path_between, segment_path};
pub use forms::{omega, pairing, tau1, tau1z};
pub use lie::{lie_basis, x, y, EndoTuple};
pub use matrix::{random_nonzero, random_rational, rat, ratio, Rational, RationalMatrix};
pub use oracle::{oracle_report, orbit_dimension, orbit_dimension_at, OracleRow};
pub use point::QuiverPoint;

use thiserror::Error;

use crate::mutations::MutationError;
use crate::patterns::{JugglingPattern, PatternError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("size {0} is odd")]
    OddSize(usize),
    #[error("pattern {0} is not symplectic")]
    NotSymplectic(JugglingPattern),
    #[error("first-column entry a_1 at vertex {vertex} vanishes")]
    SingularDiagonal { vertex: usize },
    #[error("move is not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("block {vertex} does not have full column rank")]
    RankDeficient { vertex: usize },
    #[error("tau_1 maps block {vertex} outside block {}", .vertex + 1)]
    NotInvariant { vertex: usize },
    #[error("inconsistent block shapes")]
    ShapeMismatch,
    #[error(transparent)]
    Mutation(#[from] MutationError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}
