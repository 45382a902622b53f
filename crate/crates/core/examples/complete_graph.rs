//! Aut(E(K_n)) is S_n, except that K_2 picks up a diagonal C_3 once the field
//! has cube roots of unity.
//!
//! cargo run --example complete_graph

use evoalg::factory::complete_graph_algebra;
use evoalg::solver::automorphism_group;
use evoalg::Field;

fn main() -> evoalg::Result<()> {
    let q = Field::rationals();
    for n in 2..=5 {
        let alg = complete_graph_algebra(n, &q)?;
        let g = automorphism_group(&alg)?.group;
        println!("K_{n} over {q}: det {}, |Aut| = {}, {}", alg.determinant(), g.order(), g.name()?.unwrap_or_default());
    }
    let k3 = Field::cyclotomic(3)?;
    let g = automorphism_group(&complete_graph_algebra(2, &k3)?)?.group;
    println!("K_2 over {k3}: |Aut| = {}, {}", g.order(), g.name()?.unwrap_or_default());
    for m in g.elements() {
        println!("  {m}");
    }
    Ok(())
}
