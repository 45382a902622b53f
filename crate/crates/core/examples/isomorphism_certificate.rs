//! Deciding isomorphism and checking the certificate independently.
//!
//! cargo run --example isomorphism_certificate

use evoalg::factory::{cycle_algebra, two_param_algebra};
use evoalg::solver::{check_matrix_map, isomorphism, IsomorphismOutcome};
use evoalg::{io, Field};

fn main() -> evoalg::Result<()> {
    let q = Field::rationals();
    let b: Vec<_> = ["128", "1", "1"].iter().map(|s| q.parse(s)).collect::<Result<_, _>>()?;
    let p = cycle_algebra(3, &q, None)?;
    let pb = cycle_algebra(3, &q, Some(&b))?;
    if let IsomorphismOutcome::Isomorphic(cert) = isomorphism(&p, &pb)? {
        println!("E(P) -> E(P·diag(128,1,1)): {}", io::certificate_json(&cert));
        let again = check_matrix_map(p.structure(), pb.structure(), &cert.map.matrix())?;
        println!("rechecked: {again:?}");
    }

    let e01 = two_param_algebra(4, &q.zero(), &q.one(), &q)?;
    let e12 = two_param_algebra(4, &q.one(), &q.from_i64(2), &q)?;
    println!("E(0,1) vs E(1,2): {:?}", isomorphism(&e01, &e12)?);
    let e24 = two_param_algebra(4, &q.from_i64(2), &q.from_i64(4), &q)?;
    if let IsomorphismOutcome::Isomorphic(cert) = isomorphism(&e24, &e12)? {
        println!("E(2,4) -> E(1,2): {}", cert.map);
    }
    Ok(())
}
