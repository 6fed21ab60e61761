//! Finite permutation groups and the surfaces built from them.
//!
//! - [`group`]: permutation groups, conjugacy classes, automorphisms.
//! - [`triangle`]: generating triples, Riemann-Hurwitz genus, stabilizer sets.
//! - [`beauville`]: unmixed Beauville structures and their surfaces.
//! - [`abc`]: bidouble covers of the quadric and abc-surfaces.
//! - [`hyperelliptic`]: Möbius equivalence of rational branch sets.
//! - [`braid`]: braid words, factorizations, Hurwitz and node-pair moves.

pub mod abc;
pub mod beauville;
pub mod bitset;
pub mod braid;
pub mod group;
pub mod hyperelliptic;
pub mod invariants;
pub mod triangle;

pub use beauville::{BeauvilleStructure, ScanEntry};
pub use group::{GroupMap, PermGroup, Permutation};
pub use invariants::SurfaceInvariants;
pub use triangle::{SphericalTriple, TripleType};
