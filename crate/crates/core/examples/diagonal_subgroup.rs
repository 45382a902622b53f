//! The diagonal subgroup D from the congruences x_i = 2 x_j (mod N).
//!
//! cargo run --example diagonal_subgroup

use evoalg::factory::cycle_algebra;
use evoalg::solver::diagonal_subgroup;
use evoalg::{EvolutionAlgebra, Field};

fn show(label: &str, alg: &EvolutionAlgebra) -> evoalg::Result<()> {
    let d = diagonal_subgroup(alg)?;
    println!(
        "{label} over {}: |D| = {}, t_A = {}, roots of unity: {}, field large enough: {}",
        alg.field(),
        d.lattice.order(),
        d.t_a,
        d.lattice.modulus,
        d.conductor_sufficient
    );
    for (g, o) in d.lattice.generators.iter().zip(&d.lattice.orders) {
        println!("  generator g^{g:?} of order {o}");
    }
    Ok(())
}

fn main() -> evoalg::Result<()> {
    for m in [1, 7, 21] {
        let f = if m == 1 { Field::rationals() } else { Field::cyclotomic(m)? };
        show("3-cycle", &cycle_algebra(3, &f, None)?)?;
    }
    let f = Field::prime(29)?;
    show("3-cycle", &cycle_algebra(3, &f, None)?)?;
    // Two disjoint 2-cycles: D = C_3 × C_3, well below 2^4 - 1.
    let k = Field::cyclotomic(3)?;
    let a = EvolutionAlgebra::from_i64(&k, &[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]])?;
    show("(12)(34)", &a)
}
