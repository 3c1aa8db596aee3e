//! Dense rank-revealing factorizations.

pub mod dblock;
pub mod elim;
pub mod inertia;
pub mod ldl;
pub mod lu;

pub use dblock::DBlock;
pub use elim::{edge_eliminate, vertex_eliminate, Elimination};
pub use inertia::{inertia_from_d, Inertia};
pub use ldl::{base_ldl, fast_ldl, pivoted_ldl, LDLResult};
pub use lu::{fast_lu, LUResult};
