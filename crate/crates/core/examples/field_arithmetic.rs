//! Exact arithmetic over Q, GF(p) and Q(zeta_m), and k-th roots.
//!
//! cargo run --example field_arithmetic

use evoalg::scalars::RootsOutcome;
use evoalg::Field;

fn main() -> evoalg::Result<()> {
    let k = Field::new("Q(zeta_7)".parse()?)?;
    let z = k.zeta().expect("cyclotomic");
    let x = k.parse("1/2 + 3*z^2")?;
    println!("in {k}: ({x}) * z^6 = {}", x.checked_mul(&z.pow(6))?);
    println!("z^7 = {}, z has order {:?}", z.pow(7), z.mult_order()?);

    let g7 = Field::prime(7).unwrap();
    let roots = g7.kth_roots(&g7.from_i64(6), 3)?;
    println!("cube roots of 6 in {g7}: {:?}", roots.roots().unwrap().iter().map(|r| r.to_string()).collect::<Vec<_>>());

    let q = Field::rationals();
    let c = q.parse("1/268435456")?; // 2^-28
    if let RootsOutcome::Roots(r) = q.kth_roots(&c, 7)? {
        println!("x^7 = 2^-28 over Q: {}", r[0]);
    }
    println!("x^2 = 2 over Q: {:?}", q.kth_roots(&q.from_i64(2), 2)?.roots().map(<[_]>::len));
    match k.kth_roots(&k.parse("1 + 2*z")?, 3)? {
        RootsOutcome::Indeterminate(eq) => println!("undecided: {eq}"),
        RootsOutcome::Roots(r) => println!("{} roots", r.len()),
    }
    Ok(())
}
