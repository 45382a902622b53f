//! Histogram of |Aut| over every nonsingular 2×2 matrix on GF(5), and a
//! seeded sample of 3×3 ones.
//!
//! cargo run --release --example census

use evoalg::cli::{census, CensusMode};
use evoalg::Field;

fn main() -> evoalg::Result<()> {
    let f = Field::prime(5)?;
    let all = census(&f, 2, CensusMode::Exhaustive, 0, None)?;
    println!("{f}, n = 2: {} of {} nonsingular", all.processed, all.examined);
    println!("  |Aut|: {:?}", all.aut_order_histogram);
    println!("  |D|:   {:?}", all.diagonal_order_histogram);
    let sample = census(&f, 3, CensusMode::Random(500), 7, None)?;
    println!("{f}, n = 3, 500 samples: |Aut| {:?}", sample.aut_order_histogram);
    println!("all |D| odd: {}", all.all_diagonal_orders_odd && sample.all_diagonal_orders_odd);
    Ok(())
}
