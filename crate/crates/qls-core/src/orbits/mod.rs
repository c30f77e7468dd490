//! Adjoint orbits of skew maps for orthogonal and symplectic forms.

mod canonical;
mod decide;
mod invariant;
mod jordan;
mod partition;
pub mod spectrum;

pub use canonical::{canonical_skew_map, is_skew, jordan_block, jordan_pair_map};
pub use decide::{decide_i_isomorphic, decide_isomorphic, Decision};
pub use invariant::{
    invertible_triple, orbit_invariant, pair_representative, projective_same_orbit, projective_scale, same_orbit,
    scale_candidates, InvertibleTriple, OrbitInvariant, TripleEntry,
};
pub use jordan::{fitting, jordan_partition, FittingResult};
pub use partition::{all_partitions, enumerate_partitions, FormKind, Partition};
