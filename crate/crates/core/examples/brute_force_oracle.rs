//! The search-based group against exhaustive enumeration, and every
//! invertible automorphism of the 2×2 algebras over GF(3) is monomial.
//!
//! cargo run --example brute_force_oracle

use evoalg::groups::MonomialMap;
use evoalg::solver::{all_invertible_automorphisms, automorphism_group, brute_force_automorphisms};
use evoalg::{EvolutionAlgebra, Field, Matrix};

fn main() -> evoalg::Result<()> {
    let f = Field::prime(3)?;
    let (mut algebras, mut agree, mut monomial) = (0, 0, 0);
    for code in 0..81u64 {
        let a = Matrix::from_fn(&f, 2, 2, |i, j| f.residue(code / 3u64.pow((2 * i + j) as u32) % 3).unwrap());
        let alg = EvolutionAlgebra::new(a)?;
        if !alg.is_idempotent() {
            continue;
        }
        algebras += 1;
        let fast = automorphism_group(&alg)?.group;
        agree += (fast.elements() == brute_force_automorphisms(&alg)?.elements()) as u32;
        let all = all_invertible_automorphisms(&alg)?;
        monomial += all.iter().all(|g| MonomialMap::from_matrix(g).is_some_and(|m| fast.contains(&m))) as u32;
    }
    println!("{algebras} idempotent algebras over {f}: search = brute force for {agree}, all automorphisms monomial for {monomial}");
    Ok(())
}
