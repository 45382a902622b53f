//! Solving B·D^(2) = D·P_σ for B = P_σ·diag(b) along the cycle.
//!
//! cargo run --example cycle_normalizer

use evoalg::factory::cycle_normalizer;
use evoalg::solver::SolveOutcome;
use evoalg::Field;

fn main() -> evoalg::Result<()> {
    let q = Field::rationals();
    let k7 = Field::cyclotomic(7)?;
    let cases = [
        (q.clone(), "128;1;1"),
        (q.clone(), "2;1;1"),
        (k7.clone(), "1;1;1"),
        (k7.clone(), "-1/8;z;1"),
        (k7.clone(), "1 + z;1;1"),
    ];
    for (f, b) in cases {
        let b: Vec<_> = b.split(';').map(|x| f.parse(x)).collect::<Result<_, _>>()?;
        let shown: Vec<String> = b.iter().map(ToString::to_string).collect();
        match cycle_normalizer(&b, &f)? {
            SolveOutcome::Complete(maps) => {
                println!("b = ({}) over {f}: {} solutions, first {}", shown.join(", "), maps.len(), maps[0]);
            }
            SolveOutcome::NoSolution => println!("b = ({}) over {f}: none", shown.join(", ")),
            SolveOutcome::Indeterminate(eqs) => println!("b = ({}) over {f}: undecided {eqs:?}", shown.join(", ")),
        }
    }
    Ok(())
}
