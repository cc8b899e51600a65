//! Network graphs, the standard families and random coefficient data.

mod case;
mod generators;
mod io;
mod topology;

pub use case::{sample_case, sample_second_block, CoefficientMode, NetworkCase, SecondBlock};
pub use generators::{
    ieee14_topology, make_bridged_cliques, make_clique_chain, make_complete, make_glued_cliques, make_path,
    make_random_tree, make_ring, prufer_decode,
};
pub use io::{case_to_json, load_case, load_input, load_topology, to_pretty_json, topology_to_json, NetworkInput};
pub use topology::Topology;
