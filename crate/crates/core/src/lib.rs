//! Finite permutation groups and sections of direct products.
//!
//! The crate turns a section configuration `G ≤ X × Y`, `H ⊴ G`,
//! `G/H ≅ D` with `D = C_{p^n} ⋊ C_q` acting nontrivially into an explicit
//! witness that `D` is a section of `X` or of `Y`, and provides an
//! independent brute-force oracle to check such witnesses.

pub mod analysis;
pub mod arith;
pub mod caps;
pub mod catalog;
mod chain;
pub mod construct;
pub mod error;
pub mod formats;
pub mod group;
pub mod hom;
pub mod iso;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod pipeline;
pub mod table;
pub mod witness;

pub use construct::{DirectProduct, MetacyclicSpec, Quotient, Side, Target};
pub use error::{Error, Result};
pub use group::PermGroup;
pub use hom::GroupHom;
pub use perm::Permutation;
pub use pipeline::{run_pipeline, SectionConfig};
pub use witness::{Section, SectionWitness};
