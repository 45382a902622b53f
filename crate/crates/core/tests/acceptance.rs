//! Acceptance criteria 1–9. Every check is exact (tolerance: none). Each
//! criterion prints `criterion <k> [<clause>]: PASS|FAIL` to stderr, bypassing
//! the test harness's output capture so the lines show up in plain
//! `cargo test` logs.

use std::collections::BTreeSet;
use std::io::Write;

use evoalg::cli;
use evoalg::factory::{
    complete_graph, complete_graph_algebra, cycle_algebra, cycle_graph, cycle_normalizer, default_samples,
    frucht_lift, path_graph, sn_representatives, two_param_algebra,
};
use evoalg::groups::GroupTarget;
use evoalg::solver::{
    automorphism_group, brute_force_automorphisms, diagonal_subgroup, isomorphism, IsomorphismOutcome,
};
use evoalg::verify::{
    multicycle_algebra, random_binary_algebra, random_cyclotomic_algebra, random_multicycle,
    random_prime_field_algebra, random_rational, solvable_cycle_weights,
};
use evoalg::{Digraph, EvolutionAlgebra, Field, Matrix, MonomialMap, Scalar};
use num::{BigInt, BigRational, One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn line(criterion: u32, clause: &str, pass: bool, detail: impl AsRef<str>) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(
        std::io::stderr(),
        "criterion {criterion} [{clause}]: {verdict} ({}; tolerance: exact)",
        detail.as_ref()
    );
}

// ---------------------------------------------------------------------------
// Oracles written independently of the library's search code.

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn perm_order(p: &[usize]) -> u64 {
    let mut order = 1u64;
    let mut seen = vec![false; p.len()];
    for s in 0..p.len() {
        let mut len = 0u64;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len > 0 {
            order = num::integer::lcm(order, len);
        }
    }
    order
}

fn nonzero(a: &Matrix) -> Vec<Vec<bool>> {
    (0..a.rows()).map(|i| (0..a.cols()).map(|j| !a.get(i, j).is_zero()).collect()).collect()
}

/// Permutations σ with `a_ij ≠ 0 ⇔ a_σ(i)σ(j) ≠ 0`, by trying all of them.
fn graph_automorphisms(pattern: &[Vec<bool>]) -> Vec<Vec<usize>> {
    let n = pattern.len();
    permutations(n)
        .into_iter()
        .filter(|s| (0..n).all(|i| (0..n).all(|j| pattern[i][j] == pattern[s[i]][s[j]])))
        .collect()
}

fn t_a(a: &Matrix) -> u64 {
    let pat = nonzero(a);
    permutations(a.rows())
        .into_iter()
        .filter(|t| (0..t.len()).all(|j| pat[t[j]][j]))
        .map(|t| perm_order(&t))
        .min()
        .expect("nonsingular matrices have a transversal")
}

/// `P[σ(i)][i] = d_i`.
fn monomial(field: &Field, sigma: &[usize], d: &[Scalar]) -> Matrix {
    let n = sigma.len();
    Matrix::from_fn(field, n, n, |r, c| if sigma[c] == r { d[c].clone() } else { field.zero() })
}

/// `B·P^(2) = P·A`, computed with plain matrix products.
fn is_hom(a: &Matrix, b: &Matrix, p: &Matrix) -> bool {
    b.mul(&p.entrywise_square()).unwrap() == p.mul(a).unwrap()
}

fn map_matrix(m: &MonomialMap) -> Matrix {
    monomial(m.field(), m.sigma().images(), m.scalars())
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn exact_root(x: &BigInt, k: u32) -> bool {
    let r = x.abs().nth_root(k);
    num::pow(r, k as usize) == x.abs()
}

/// Whether a nonzero rational is `±r^k` (k odd, so the sign is absorbed).
fn is_signed_rational_power(q: &BigRational, k: u32) -> bool {
    exact_root(q.numer(), k) && exact_root(q.denom(), k)
}

// ---------------------------------------------------------------------------

#[test]
fn criterion_1_complete_graphs() {
    let q = Field::rationals();
    let mut ok = true;
    for (n, expected) in [(3usize, 6u64), (4, 24), (5, 120)] {
        let g = automorphism_group(&complete_graph_algebra(n, &q).unwrap()).unwrap().group;
        let named = g.recognize(GroupTarget::Symmetric(n as u64)).unwrap().matched;
        let pass = g.order() == expected && named;
        line(1, &format!("|Aut E(K_{n})| = {expected} over Q"), pass, format!("got {}", g.order()));
        ok &= pass;
    }
    let k2q = automorphism_group(&complete_graph_algebra(2, &q).unwrap()).unwrap().group;
    line(1, "|Aut E(K_2)| = 2 over Q", k2q.order() == 2, format!("got {}", k2q.order()));
    ok &= k2q.order() == 2;

    let k3 = Field::cyclotomic(3).unwrap();
    let alg = complete_graph_algebra(2, &k3).unwrap();
    let g = automorphism_group(&alg).unwrap().group;
    let s3 = g.recognize(GroupTarget::Symmetric(3)).unwrap().matched;
    line(1, "Aut E(K_2) ≅ S_3 over Q(zeta_3)", g.order() == 6 && s3, format!("order {}", g.order()));
    ok &= g.order() == 6 && s3;

    let d = diagonal_subgroup(&alg).unwrap();
    let z = k3.zeta().unwrap();
    let gen = MonomialMap::diagonal(&k3, vec![z.clone(), z.square()]).unwrap();
    let listed = d.group.as_ref().unwrap();
    // The three elements are exactly the powers of diag(z, z²).
    let powers: BTreeSet<MonomialMap> = (0..3).map(|e| gen.pow(e)).collect();
    let elements: BTreeSet<MonomialMap> = listed.elements().iter().cloned().collect();
    let pass = d.lattice.order() == 3 && powers == elements && is_hom(alg.structure(), alg.structure(), &map_matrix(&gen));
    line(1, "D(E(K_2)) = <diag(z, z^2)> of order 3 over Q(zeta_3)", pass, format!("|D| = {}", d.lattice.order()));
    assert!(ok && pass);
}

fn check_diagonal_structure(alg: &EvolutionAlgebra) -> Result<(), String> {
    let aut = automorphism_group(alg).map_err(|e| e.to_string())?;
    if !aut.unsolved.is_empty() {
        return Err(format!("undecided: {:?}", aut.unsolved));
    }
    let g = &aut.group;
    let diag: Vec<&MonomialMap> = g.elements().iter().filter(|m| m.sigma().is_identity()).collect();
    let bound = (1u64 << t_a(alg.structure())) - 1;
    for d in &diag {
        let mut order = 1u64;
        let mut p = (*d).clone();
        while !p.is_identity() {
            p = p.compose(d).unwrap();
            order += 1;
        }
        if order.is_multiple_of(2) || !bound.is_multiple_of(order) {
            return Err(format!("diagonal element of order {order}, bound {bound}"));
        }
    }
    for x in g.elements() {
        let xi = x.inverse();
        for d in &diag {
            let c = x.compose(d).unwrap().compose(&xi).unwrap();
            if !c.sigma().is_identity() || !g.contains(&c) {
                return Err("D is not normal".into());
            }
        }
    }
    let auts: BTreeSet<Vec<usize>> = graph_automorphisms(&nonzero(alg.structure())).into_iter().collect();
    let image: BTreeSet<Vec<usize>> = g.elements().iter().map(|m| m.sigma().images().to_vec()).collect();
    if !image.is_subset(&auts) {
        return Err("φ-image leaves Aut(Γ)".into());
    }
    // |G| = |D|·|φ(G)| means the induced map G/D → Aut(Γ) is injective.
    if g.order() != diag.len() as u64 * image.len() as u64 {
        return Err("G/D does not embed".into());
    }
    Ok(())
}

/// `P_σ·diag(b)` for a random 3-cycle σ and `b_i = ±z^k`, plus each other
/// entry set to `±z^k` with probability 1/10.
fn cycle_supported_algebra(rng: &mut ChaCha8Rng, field: &Field) -> EvolutionAlgebra {
    let z = field.zeta().unwrap();
    let entry = |rng: &mut ChaCha8Rng| {
        let sign = field.from_i64(if rng.gen_bool(0.5) { -1 } else { 1 });
        &sign * &z.pow(rng.gen_range(0..7))
    };
    loop {
        let sigma = if rng.gen_bool(0.5) { [1usize, 2, 0] } else { [2, 0, 1] };
        let a = Matrix::from_fn(field, 3, 3, |i, j| {
            if sigma[j] == i || rng.gen_bool(0.1) {
                entry(rng)
            } else {
                field.zero()
            }
        });
        let alg = EvolutionAlgebra::new(a).unwrap();
        if alg.is_idempotent() {
            return alg;
        }
    }
}

#[test]
fn criterion_2_diagonal_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(2002);
    let fields: Vec<Field> = [3u32, 5, 7].iter().map(|&p| Field::prime(p).unwrap()).collect();
    let mut failures = Vec::new();
    for i in 0..200 {
        let f = &fields[i % 3];
        let n = rng.gen_range(2..=3);
        let alg = random_prime_field_algebra(&mut rng, f, n);
        if let Err(e) = check_diagonal_structure(&alg) {
            failures.push(format!("{f} #{i}: {e}"));
        }
    }
    line(2, "200 algebras over GF(3)/GF(5)/GF(7), n in {2,3}", failures.is_empty(), format!("{} failures", failures.len()));
    let k7 = Field::cyclotomic(7).unwrap();
    let mut cyclo_failures = Vec::new();
    let mut nontrivial = 0;
    for i in 0..50 {
        // Half of the sample sits on a 3-cycle pattern, where D can reach order 7.
        let alg = if i % 2 == 0 {
            random_cyclotomic_algebra(&mut rng, &k7, 3)
        } else {
            cycle_supported_algebra(&mut rng, &k7)
        };
        nontrivial += (diagonal_subgroup(&alg).unwrap().lattice.order() > 1) as usize;
        if let Err(e) = check_diagonal_structure(&alg) {
            cyclo_failures.push(format!("#{i}: {e}"));
        }
    }
    line(
        2,
        "50 algebras over Q(zeta_7), n = 3",
        cyclo_failures.is_empty(),
        format!("{} failures, {nontrivial} with nontrivial D", cyclo_failures.len()),
    );
    assert!(failures.is_empty() && cyclo_failures.is_empty(), "{failures:?} {cyclo_failures:?}");
}

#[test]
fn criterion_3_binary_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(2003);
    let mut failures = Vec::new();
    for i in 0..30 {
        let n = rng.gen_range(1..=5);
        let alg = random_binary_algebra(&mut rng, n);
        let aut = automorphism_group(&alg).unwrap().group;
        let graph = graph_automorphisms(&nonzero(alg.structure())).len() as u64;
        // Over Q the only roots of unity are ±1; find D among sign vectors.
        let q = alg.field();
        let a = alg.structure();
        let d_count = (0..1u32 << n)
            .filter(|mask| {
                let d: Vec<Scalar> = (0..n).map(|i| q.from_i64(if mask >> i & 1 == 1 { -1 } else { 1 })).collect();
                let id: Vec<usize> = (0..n).collect();
                is_hom(a, a, &monomial(q, &id, &d))
            })
            .count() as u64;
        if aut.order() != d_count * graph {
            failures.push(format!("#{i}: |Aut| = {}, |D| = {d_count}, |Aut Γ| = {graph}", aut.order()));
        }
    }
    line(3, "|Aut E| = |D|·|Aut Γ| for 30 random 0/1 matrices, n <= 5", failures.is_empty(), format!("{} failures", failures.len()));
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_4_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2004);
    let fields = [Field::prime(3).unwrap(), Field::prime(5).unwrap()];
    let mut failures = Vec::new();
    for i in 0..200 {
        let f = &fields[i % 2];
        let n = rng.gen_range(2..=3);
        let alg = random_prime_field_algebra(&mut rng, f, n);
        let fast = automorphism_group(&alg).unwrap().group;
        let slow = brute_force_automorphisms(&alg).unwrap();
        // A second enumeration over σ and d, written here.
        let p = f.characteristic() as u64;
        let mut local = Vec::new();
        for sigma in permutations(n) {
            for code in 0..(p - 1).pow(n as u32) {
                let d: Vec<Scalar> = (0..n).map(|k| f.residue(code / (p - 1).pow(k as u32) % (p - 1) + 1).unwrap()).collect();
                if is_hom(alg.structure(), alg.structure(), &monomial(f, &sigma, &d)) {
                    local.push((sigma.clone(), d));
                }
            }
        }
        let fast_set: BTreeSet<(Vec<usize>, Vec<Scalar>)> =
            fast.elements().iter().map(|m| (m.sigma().images().to_vec(), m.scalars().to_vec())).collect();
        let local_set: BTreeSet<(Vec<usize>, Vec<Scalar>)> = local.into_iter().collect();
        if fast.elements() != slow.elements() || fast_set != local_set {
            failures.push(format!("{f} #{i}"));
        }
    }
    line(4, "automorphism_group = brute force on 200 algebras over GF(3), GF(5)", failures.is_empty(), format!("{} mismatches", failures.len()));
    assert!(failures.is_empty(), "{failures:?}");
}

#[test]
fn criterion_5_frucht_lifts() {
    let q = Field::rationals();
    let mut ok = true;
    for (label, g, expected) in [
        ("5-cycle", cycle_graph(5).unwrap(), 10u64),
        ("path on 4 vertices", path_graph(4).unwrap(), 2),
        ("K_4", complete_graph(4).unwrap(), 24),
    ] {
        let pattern: Vec<Vec<bool>> = g.adjacency().to_vec();
        let graph_count = graph_automorphisms(&pattern).len() as u64;
        let lift = frucht_lift(&g, &q).unwrap();
        let aut = automorphism_group(&lift.algebra).unwrap().group;
        let d = diagonal_subgroup(&lift.algebra).unwrap().lattice.order();
        let pass = graph_count == expected && lift.algebra.is_idempotent() && aut.order() == graph_count && d == 1;
        line(5, &format!("{label}: |Aut E| = |Aut Γ| = {expected}, D trivial"), pass, format!("m = {}, |Aut E| = {}", lift.shift, aut.order()));
        ok &= pass;
    }
    assert!(ok);
}

fn non_isomorphic(a: &EvolutionAlgebra, b: &EvolutionAlgebra) -> bool {
    matches!(isomorphism(a, b).unwrap(), IsomorphismOutcome::NonIsomorphic { .. })
}

#[test]
fn criterion_6_sn_classification() {
    let q = Field::rationals();
    let samples = default_samples(&q);
    let (mut distinct, mut k_separate, mut scaling, mut orders) = (true, true, true, true);
    let mut counts = [0usize; 4];
    for n in 2..=5usize {
        let one = q.one();
        let admissible: Vec<&Scalar> = samples
            .iter()
            .filter(|c| two_param_algebra(n, &one, c, &q).is_ok() && (n != 2 || c.square() != one))
            .collect();
        for (i, c) in admissible.iter().enumerate() {
            let ec = two_param_algebra(n, &one, c, &q).unwrap();
            for b in &admissible[i + 1..] {
                counts[0] += 1;
                distinct &= non_isomorphic(&ec, &two_param_algebra(n, &one, b, &q).unwrap());
            }
            counts[1] += 1;
            k_separate &= non_isomorphic(&two_param_algebra(n, &q.zero(), &one, &q).unwrap(), &ec);
        }
        for a in &samples {
            for b in &samples {
                let Ok(eab) = two_param_algebra(n, a, b, &q) else { continue };
                counts[2] += 1;
                let target = two_param_algebra(n, &one, &(b / a), &q).unwrap();
                let id: Vec<usize> = (0..n).collect();
                let scale = monomial(&q, &id, &vec![a.clone(); n]);
                let found = matches!(isomorphism(&eab, &target).unwrap(), IsomorphismOutcome::Isomorphic(c) if c.check.passed());
                scaling &= found && is_hom(eab.structure(), target.structure(), &scale);
            }
        }
        for r in sn_representatives(n, &q, &samples).unwrap().items {
            counts[3] += 1;
            orders &= automorphism_group(&r.algebra).unwrap().group.order() == factorial(n as u64);
        }
    }
    line(6, "E(1,c) ≇ E(1,b) for c != b", distinct, format!("{} pairs", counts[0]));
    line(6, "E(0,1) ≇ E(1,c)", k_separate, format!("{} pairs", counts[1]));
    line(6, "E(a,b) ≅ E(1,b/a) with certificate d_i = a", scaling, format!("{} algebras", counts[2]));
    line(6, "each representative has |Aut| = n!", orders, format!("{} representatives", counts[3]));
    assert!(distinct && k_separate && scaling && orders);
}

fn weights_product(b: &[Scalar]) -> BigRational {
    let n = b.len();
    b.iter()
        .enumerate()
        .map(|(i, x)| num::pow(x.to_rational().unwrap(), 1usize << (n - 1 - i)))
        .fold(BigRational::one(), |acc, x| acc * x)
}

#[test]
fn criterion_7_maximal_diagonal_subgroup() {
    let mut rng = ChaCha8Rng::seed_from_u64(2007);
    let mut structure = true;
    let (mut solvable_ok, mut solvable_total) = (true, 0);
    let (mut literal_iso, mut literal_total, mut oracle_agrees) = (0, 0, true);
    for n in 2..=4usize {
        let k = (1u64 << n) - 1;
        let field = Field::cyclotomic(k as u32).unwrap();
        let p = cycle_algebra(n, &field, None).unwrap();
        let aut = automorphism_group(&p).unwrap().group;
        let d = diagonal_subgroup(&p).unwrap().lattice.order();
        let named = aut.recognize(GroupTarget::SemidirectCyclic(k, n as u64)).unwrap().matched;
        let pass = d == k as u128 && aut.order() == n as u64 * k && named;
        line(7, &format!("n = {n}: |D| = {k}, |Aut| = {}, C_{k}⋊C_{n}", n as u64 * k), pass, format!("|D| = {d}, |Aut| = {}", aut.order()));
        structure &= pass;

        for _ in 0..10 {
            // Weights whose closing equation has a rational solution.
            let b = solvable_cycle_weights(&mut rng, &field, n);
            solvable_total += 1;
            let target = cycle_algebra(n, &field, Some(&b)).unwrap();
            solvable_ok &= match isomorphism(&target, &p).unwrap() {
                IsomorphismOutcome::Isomorphic(c) => c.check.passed() && is_hom(target.structure(), p.structure(), &map_matrix(&c.map)),
                _ => false,
            };

            // Literal random weights; decidable because the closing equation
            // is x^(2^n - 1) = (rational)^(-1).
            let b: Vec<Scalar> = (0..n).map(|_| random_rational(&mut rng, &field)).collect();
            literal_total += 1;
            let target = cycle_algebra(n, &field, Some(&b)).unwrap();
            let iso = matches!(isomorphism(&target, &p).unwrap(), IsomorphismOutcome::Isomorphic(ref c) if c.check.passed());
            literal_iso += iso as usize;
            oracle_agrees &= iso == is_signed_rational_power(&weights_product(&b), k as u32);
        }
    }
    line(7, "cycle(b) ≅ cycle(1) for 30 weight vectors with a rational (2^n-1)-th root", solvable_ok, format!("{solvable_total} vectors"));
    line(
        7,
        "cycle(b) ≅ cycle(1) for 30 literal random rational b",
        literal_iso == literal_total,
        format!("{literal_iso}/{literal_total} isomorphic; only holds over an algebraically closed field"),
    );
    line(7, "decisions on literal b agree with the rational-power oracle", oracle_agrees, format!("{literal_total} vectors"));

    let mut bound_ok = true;
    for _ in 0..50 {
        let (sigma, lengths) = random_multicycle(&mut rng, 5);
        let (alg, bound) = multicycle_algebra(&mut rng, &sigma, &lengths).unwrap();
        let d = diagonal_subgroup(&alg).unwrap().lattice.order();
        let full = (1u128 << sigma.len()) - 1;
        bound_ok &= d <= bound && bound < full;
    }
    line(7, "|D| <= ∏(2^n_i - 1) < 2^n - 1 for 50 multi-cycle patterns", bound_ok, "50 algebras");
    assert!(structure && solvable_ok && oracle_agrees && bound_ok);
}

/// The literal clause: random rational weights give algebras isomorphic to
/// `E(P_σ)` over `Q(zeta_(2^n-1))`. False for most weights, since e.g. `1/4`
/// has no cube root there; kept so the failure is reproducible.
#[test]
#[ignore = "fails: the field is not algebraically closed"]
fn criterion_7_literal_random_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(2007);
    for n in 2..=4usize {
        let field = Field::cyclotomic(((1u64 << n) - 1) as u32).unwrap();
        let p = cycle_algebra(n, &field, None).unwrap();
        for _ in 0..10 {
            let b: Vec<Scalar> = (0..n).map(|_| random_rational(&mut rng, &field)).collect();
            let target = cycle_algebra(n, &field, Some(&b)).unwrap();
            assert!(
                matches!(isomorphism(&target, &p).unwrap(), IsomorphismOutcome::Isomorphic(_)),
                "b = {b:?}"
            );
        }
    }
}

#[test]
fn criterion_8_worked_example() {
    let q = Field::rationals();
    let b: Vec<Scalar> = ["128", "1", "1"].iter().map(|s| q.parse(s).unwrap()).collect();
    let expected: Vec<Scalar> = ["1/16", "1/2", "1/4"].iter().map(|s| q.parse(s).unwrap()).collect();
    let out = cycle_normalizer(&b, &q).unwrap();
    let found = out.maps().iter().any(|m| m.scalars() == expected.as_slice());
    // B·D^(2) = D·P_σ with B = P_σ·diag(b), σ = (1 2 3).
    let sigma = [1usize, 2, 0];
    let pb = monomial(&q, &sigma, &b);
    let ps = monomial(&q, &sigma, &vec![q.one(); 3]);
    let d = monomial(&q, &[0, 1, 2], &expected);
    let holds = pb.mul(&d.entrywise_square()).unwrap() == d.mul(&ps).unwrap();
    line(8, "b = (128,1,1) gives d = (1/16,1/2,1/4) and B·D^(2) = D·P_σ", found && holds, format!("{} solutions", out.maps().len()));
    assert!(found && holds);
}

#[test]
fn criterion_9_census_determinism() {
    let one = cli::render(&cli::cmd_census("GF(3)", 2, "exhaustive", 0, Some(1)));
    let eight = cli::render(&cli::cmd_census("GF(3)", 2, "exhaustive", 0, Some(8)));
    let again = cli::render(&cli::cmd_census("GF(3)", 2, "exhaustive", 0, Some(8)));
    let pass = one == eight && eight == again && one.contains("\"processed\": 48");
    line(9, "GF(3), n = 2 exhaustive: identical reports on 1 and 8 threads", pass, format!("{} bytes", one.len()));
    assert!(pass, "{one}\n{eight}");
}

#[test]
fn graph_oracle_sanity() {
    // The test oracles themselves, against known values.
    assert_eq!(permutations(4).len(), 24);
    assert_eq!(perm_order(&[1, 2, 0, 4, 3]), 6);
    let c5 = Digraph::from_adjacency(cycle_graph(5).unwrap().adjacency().to_vec()).unwrap();
    assert_eq!(graph_automorphisms(c5.adjacency()).len(), 10);
    assert!(is_signed_rational_power(&BigRational::new((-8).into(), 27.into()), 3));
    assert!(!is_signed_rational_power(&BigRational::new(1.into(), 4.into()), 3));
}
