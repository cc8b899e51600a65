//! Builds one network of every family and prints its size and edge list.

use topoflow::network::{
    ieee14_topology, make_bridged_cliques, make_clique_chain, make_complete, make_glued_cliques, make_path,
    make_random_tree, make_ring, topology_to_json, Topology,
};

fn families() -> topoflow::Result<Vec<(&'static str, Topology)>> {
    Ok(vec![
        ("path(5)", make_path(5)?),
        ("ring(5)", make_ring(5)?),
        ("complete(4)", make_complete(4)?),
        ("tree(6, seed 7)", make_random_tree(6, 7)?),
        ("glued(3,4,2)", make_glued_cliques(3, 4, 2)?),
        ("chain(3,2)", make_clique_chain(3, 2)?),
        ("bridged(3,3)", make_bridged_cliques(3, 3)?),
        ("ieee14", ieee14_topology()),
    ])
}

fn main() -> topoflow::Result<()> {
    for (name, t) in families()? {
        let edges: Vec<String> = t.edges().map(|(i, j)| format!("{i}-{j}")).collect();
        println!("{name:<16} |B|={:<3} n={:<3} edges: {}", t.bus_count(), t.n(), edges.join(" "));
    }
    println!("\n{}", topology_to_json(&make_path(3)?));
    Ok(())
}
