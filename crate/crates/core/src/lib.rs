//! Voltage graphs over finitely generated abelian groups, their derived
//! graphs and covers, and a decision procedure for isomorphism of derived
//! graphs (which may be infinite) through common covers of the quotients.
//!
//! The integer algebra is generic over [`Scalar`]; the aliases below fix it
//! to arbitrary-precision integers.

pub mod common_cover;
pub mod cover;
pub mod decide;
pub mod error;
pub mod graph;
pub mod group;
pub mod lattice;
pub mod oracle;
pub mod scalar;
pub mod voltage;

pub use common_cover::{find_common_covers, CommonCover, DEFAULT_BUDGET};
pub use cover::{CoverMap, Monodromy, ProperLift};
pub use decide::{decide_isomorphism, AlphaScope, decide_with_trees, precheck, test_cover, CoverTest, DecideOptions, Input, Outcome, Reason};
pub use error::{Error, Result};
pub use graph::{
    automorphisms_fixing_tree, degree_profile, directed_product, is_connected, is_covering, return_walk, spanning_tree, Dir,
    EdgeId, GraphHom, Multigraph, Step, TreeSet, VertexId, Walk,
};
pub use group::{generator_map_extends_to_iso, Index};
pub use lattice::hermite_normal_form;
pub use scalar::Scalar;
pub use voltage::Ambient;

/// Exact integer used throughout the default aliases.
pub type Int = num_bigint::BigInt;
pub type GroupSpec = group::GroupSpec<Int>;
pub type Element = group::GroupElement<Int>;
pub type IntegerLattice = lattice::Lattice<Int>;
pub type VoltageGraph = voltage::VoltageGraph<Int>;
pub type Verdict = decide::Verdict<Int>;
pub type Witness = decide::Witness<Int>;
pub type SubgroupIndex = group::Index<Int>;
