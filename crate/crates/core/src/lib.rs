//! Verifiable sets over finite universes of possibilities.
//!
//! Observations are step machines that either succeed or run forever. The
//! sets they can confirm form a topology, continuous maps between such
//! topologies correspond to consistent maps between their open sets, and the
//! continuous maps themselves carry a basis-to-basis topology.

pub mod cli;
pub mod function_space;
pub mod observation;
pub mod points;
pub mod relationship;
pub mod scheduler;
pub mod topology;

pub use function_space::{
    compare_open_open, enumerate_continuous, generate_b2b_topology, BasisToBasisTopology, FunctionSpace,
    FunctionSpaceError, Relation,
};
pub use observation::{conjunction, disjunction, Observation, ObservationStream, Script, Statement, Test, Verdict};
pub use points::{PointSet, Possibilities};
pub use relationship::{
    borel_extend, is_continuous, preimage_map, reconstruct_function, validate_observation_map, ObservationMap,
    PointMap,
};
pub use scheduler::{run_all, run_any, Fuel, RunOutcome, RunReport, TestStream};
pub use topology::{generate_basis, generate_topology, is_hausdorff, SubBasis, Topology};
