//! A graph's automorphism group realized as Aut of an evolution algebra.
//!
//! cargo run --example frucht_lift

use evoalg::factory::{complete_graph, cycle_graph, frucht_lift, path_graph};
use evoalg::solver::automorphism_group;
use evoalg::{Digraph, Field};

fn main() -> evoalg::Result<()> {
    let q = Field::rationals();
    let graphs = [
        ("C_5", cycle_graph(5)?),
        ("P_4", path_graph(4)?),
        ("K_4", complete_graph(4)?),
        // An edge plus an isolated vertex: B and B + I are both singular.
        (
            "K_2 + K_1",
            Digraph::from_adjacency(vec![vec![false, true, false], vec![true, false, false], vec![false; 3]])?,
        ),
    ];
    for (name, g) in graphs {
        let lift = frucht_lift(&g, &q)?;
        let aut = automorphism_group(&lift.algebra)?;
        println!(
            "{name}: m = {}, |Aut Γ| = {}, |Aut E| = {} ({})",
            lift.shift,
            aut.graph_automorphisms,
            aut.group.order(),
            aut.group.name()?.unwrap_or_default()
        );
    }
    Ok(())
}
