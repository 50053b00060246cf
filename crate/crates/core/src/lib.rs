//! Cell structure of the cyclic-quiver Grassmannian `X(k, n)` and of its
//! symplectic subvariety `X(k, 2n)^sp`.
//!
//! The crate is organised bottom-up:
//!
//! * [`patterns`]: juggling patterns, the Gale-type order, the `R` involution
//!   and the symplectic predicate.
//! * [`mutations`]: coefficient-quiver mutations, symplectic mutations with the
//!   correction move, cell dimensions.
//! * [`poset`]: reachability posets and Hasse diagrams over patterns.
//! * [`stats`]: Euler characteristics, Poincaré polynomials and the embedded
//!   reference tables in [`golden`].
//! * [`exactalg`]: exact rational linear algebra for points, Lie algebras, the
//!   orbit-rank dimension oracle, automorphisms and degeneration paths.
//! * [`afflag`]: the truncated lattice model of the affine flag variety.
//!
//! Per-pattern work runs on a rayon pool when the `parallel` feature is enabled
//! (the default) and sequentially otherwise; see [`Exec`].

pub mod afflag;
pub mod exactalg;
pub mod export;
pub mod golden;
pub mod mutations;
pub mod par;
pub mod patterns;
pub mod poset;
pub mod stats;

pub use par::Exec;
pub use patterns::{BitSubset, JugglingPattern, PatternError};
