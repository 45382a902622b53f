//! Representatives of the algebras with Aut = S_n, checked pairwise.
//!
//! cargo run --example sn_classification

use evoalg::factory::{default_samples, sn_representatives};
use evoalg::solver::{automorphism_group, isomorphism, IsomorphismOutcome};
use evoalg::Field;

fn main() -> evoalg::Result<()> {
    for f in [Field::rationals(), Field::cyclotomic(3)?, Field::prime(7)?] {
        for n in 1..=4 {
            let reps = sn_representatives(n, &f, &default_samples(&f))?;
            let mut line = Vec::new();
            for r in &reps.items {
                line.push(format!("{} (|Aut| {})", r.label, automorphism_group(&r.algebra)?.group.order()));
            }
            let mut distinct = true;
            for (i, a) in reps.items.iter().enumerate() {
                for b in &reps.items[i + 1..] {
                    distinct &= matches!(isomorphism(&a.algebra, &b.algebra)?, IsomorphismOutcome::NonIsomorphic { .. });
                }
            }
            println!("{f} n={n}: {} | distinct: {distinct}", line.join(", "));
            for o in &reps.omitted {
                println!("    omitted {}: {}", o.label, o.reason);
            }
        }
    }
    Ok(())
}
