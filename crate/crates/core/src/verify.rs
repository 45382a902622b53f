//! Named self-check suites, each a list of pass/fail assertions.

use num::integer::lcm;
use num::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::EvolutionAlgebra;
use crate::digraph::{Digraph, Permutation};
use crate::error::Result;
use crate::factory::{
    complete_graph, complete_graph_algebra, cycle_algebra, cycle_graph, default_samples, frucht_lift, path_graph, sn_representatives, two_param_algebra,
};
use crate::groups::{quotient_embedding_check, GroupTarget, MonomialMap};
use crate::matrix::Matrix;
use crate::scalars::{Field, Scalar};
use crate::solver::{automorphism_group, diagonal_subgroup, isomorphism, verify_map, IsomorphismOutcome};

pub const SUITES: [&str; 6] = ["example31", "thm22", "thm23", "thm31", "thm32", "thm41"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Default)]
struct Log(Vec<Assertion>);

impl Log {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Assertion {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records a check whose evaluation may fail; errors (including
    /// undecided root extractions) count as failures.
    fn attempt(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        match f() {
            Ok((passed, detail)) => self.check(name, passed, detail),
            Err(e) => self.check(name, false, format!("error: {e}")),
        }
    }
}

/// Runs a suite by name; `n` bounds the dimension where the suite has one.
pub fn run_suite(name: &str, n: Option<usize>) -> Option<Vec<Assertion>> {
    Some(match name {
        "example31" => complete_graph_suite(),
        "thm22" => diagonal_structure_suite(n.unwrap_or(3)),
        "thm23" => graph_quotient_suite(n.unwrap_or(5)),
        "thm31" => frucht_suite(),
        "thm32" => classification_suite(n.unwrap_or(5)),
        "thm41" => maximal_diagonal_suite(n.unwrap_or(4)),
        _ => return None,
    })
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Aut(E(K_n)) ≅ S_n over Q, and S_3 for K_2 once cube roots of unity exist.
pub fn complete_graph_suite() -> Vec<Assertion> {
    let mut log = Log::default();
    let q = Field::rationals();
    for n in 2..=6usize {
        log.attempt(format!("det K_{n} = (-1)^(n-1)(n-1)"), || {
            let det = complete_graph_algebra(n, &q)?.determinant().clone();
            let sign = if n % 2 == 0 { -1 } else { 1 };
            Ok((det == q.from_i64(sign * (n as i64 - 1)), det.to_string()))
        });
    }
    for n in 2..=5usize {
        log.attempt(format!("|Aut E(K_{n})| = {n}! over Q"), || {
            let g = automorphism_group(&complete_graph_algebra(n, &q)?)?.group;
            let named = n < 3 || g.recognize(GroupTarget::Symmetric(n as u64))?.matched;
            Ok((g.order() == factorial(n) && named, format!("order {}", g.order())))
        });
    }
    let k3 = Field::cyclotomic(3).expect("valid modulus");
    log.attempt("Aut E(K_2) ≅ S_3 over Q(zeta_3)", || {
        let g = automorphism_group(&complete_graph_algebra(2, &k3)?)?.group;
        let rec = g.recognize(GroupTarget::Symmetric(3))?;
        Ok((g.order() == 6 && rec.matched, format!("order {}", g.order())))
    });
    log.attempt("D(E(K_2)) = <diag(z, z^2)> over Q(zeta_3)", || {
        let d = diagonal_subgroup(&complete_graph_algebra(2, &k3)?)?;
        let z = k3.zeta().expect("cyclotomic");
        let gen = MonomialMap::diagonal(&k3, vec![z.clone(), z.square()])?;
        let ok = d.lattice.order() == 3 && d.group.as_ref().is_some_and(|g| g.contains(&gen));
        Ok((ok, format!("order {}", d.lattice.order())))
    });
    log.0
}

/// A random nonsingular matrix over GF(p): each entry zero with probability
/// one half, otherwise a uniform nonzero residue.
pub fn random_prime_field_algebra<R: Rng>(rng: &mut R, field: &Field, n: usize) -> EvolutionAlgebra {
    let p = field.characteristic() as u64;
    loop {
        let a = Matrix::from_fn(field, n, n, |_, _| {
            if rng.gen_bool(0.5) {
                field.zero()
            } else {
                field.residue(rng.gen_range(1..p)).expect("prime field")
            }
        });
        if let Ok(alg) = EvolutionAlgebra::new(a) {
            if alg.is_idempotent() {
                return alg;
            }
        }
    }
}

/// A random nonsingular matrix over `Q(zeta_m)` whose nonzero entries are
/// `±1` or `±2` times a power of `z`, so that every root extraction met by the
/// solver involves a rational times a root of unity. Entries are zero with
/// probability 2/3, which leaves room for nontrivial diagonal automorphisms.
pub fn random_cyclotomic_algebra<R: Rng>(rng: &mut R, field: &Field, n: usize) -> EvolutionAlgebra {
    let m = field.unity_group().order;
    let z = field.zeta().expect("cyclotomic field");
    loop {
        let a = Matrix::from_fn(field, n, n, |_, _| {
            if rng.gen_bool(2.0 / 3.0) {
                field.zero()
            } else {
                let c = *[-2i64, -1, 1, 2].choose(rng).expect("nonempty");
                &field.from_i64(c) * &z.pow(rng.gen_range(0..m))
            }
        });
        if let Ok(alg) = EvolutionAlgebra::new(a) {
            if alg.is_idempotent() {
                return alg;
            }
        }
    }
}

/// A random nonsingular 0/1 matrix over Q.
pub fn random_binary_algebra<R: Rng>(rng: &mut R, n: usize) -> EvolutionAlgebra {
    let q = Field::rationals();
    loop {
        let a = Matrix::from_fn(&q, n, n, |_, _| q.from_i64(rng.gen_bool(0.5) as i64));
        let alg = EvolutionAlgebra::new(a).expect("square");
        if alg.is_idempotent() {
            return alg;
        }
    }
}

/// A random nonzero rational `±p/q` with `p, q ≤ 9`.
pub fn random_rational<R: Rng>(rng: &mut R, field: &Field) -> Scalar {
    let num = rng.gen_range(1..=9i64) * if rng.gen_bool(0.5) { -1 } else { 1 };
    let den = rng.gen_range(1..=9i64);
    field
        .from_rational(&BigRational::new(num.into(), den.into()))
        .expect("characteristic 0")
}

/// Diagonal entries are roots of `x^(2^t_A - 1) - 1`, `D` is normal, and
/// `G/D` embeds in Aut(Γ_A).
pub fn diagonal_structure_suite(max_n: usize) -> Vec<Assertion> {
    let mut log = Log::default();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut cases: Vec<EvolutionAlgebra> = Vec::new();
    for p in [3u32, 5, 7] {
        let f = Field::prime(p).expect("prime");
        for n in 2..=max_n.clamp(2, 3) {
            for _ in 0..10 {
                cases.push(random_prime_field_algebra(&mut rng, &f, n));
            }
        }
    }
    let k7 = Field::cyclotomic(7).expect("valid modulus");
    for _ in 0..10 {
        cases.push(random_cyclotomic_algebra(&mut rng, &k7, 3));
    }
    for (i, alg) in cases.iter().enumerate() {
        log.attempt(format!("case {i} over {}: diagonal orders", alg.field()), || {
            let aut = automorphism_group(alg)?;
            let diag = diagonal_subgroup(alg)?;
            let bound = (1u64 << diag.t_a) - 1;
            let orders: Vec<u64> = aut.group.kernel().iter().filter_map(MonomialMap::order).collect();
            let ok = orders.len() == aut.group.kernel().len() && orders.iter().all(|o| o % 2 == 1 && bound.is_multiple_of(*o));
            Ok((ok, format!("|D| = {}, t_A = {}", orders.len(), diag.t_a)))
        });
        log.attempt(format!("case {i} over {}: D normal, G/D in Aut(Γ)", alg.field()), || {
            let aut = automorphism_group(alg)?;
            let rep = quotient_embedding_check(&aut.group, alg)?;
            Ok((rep.holds(), format!("{rep:?}")))
        });
    }
    log.0
}

/// For 0/1 structure matrices every graph automorphism lifts, so
/// `|Aut E| = |D|·|Aut Γ|`.
pub fn graph_quotient_suite(max_n: usize) -> Vec<Assertion> {
    let mut log = Log::default();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for i in 0..30 {
        let n = rng.gen_range(1..=max_n.clamp(1, 6));
        let alg = random_binary_algebra(&mut rng, n);
        log.attempt(format!("case {i} (n = {n})"), || {
            let aut = automorphism_group(&alg)?;
            let d = diagonal_subgroup(&alg)?.lattice.order() as u64;
            let lifts = alg
                .graph()
                .automorphisms()?
                .into_iter()
                .all(|s| aut.group.contains(&MonomialMap::permutation(alg.field(), s)));
            let ok = aut.group.order() == d * aut.graph_automorphisms as u64 && lifts;
            Ok((ok, format!("|Aut| = {}, |D| = {d}, |Aut Γ| = {}", aut.group.order(), aut.graph_automorphisms)))
        });
    }
    log.0
}

/// Aut(Γ) by trying every permutation.
pub fn brute_force_graph_automorphisms(g: &Digraph) -> u64 {
    fn go(g: &Digraph, cur: &mut Vec<usize>, used: &mut Vec<bool>) -> u64 {
        let n = g.n();
        if cur.len() == n {
            let ok = (0..n).all(|i| (0..n).all(|j| g.has_edge(i, j) == g.has_edge(cur[i], cur[j])));
            return ok as u64;
        }
        let mut total = 0;
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                total += go(g, cur, used);
                cur.pop();
                used[x] = false;
            }
        }
        total
    }
    go(g, &mut Vec::new(), &mut vec![false; g.n()])
}

/// The lift `B + m·I` of a graph has automorphism group Aut(Γ).
pub fn frucht_suite() -> Vec<Assertion> {
    let mut log = Log::default();
    let q = Field::rationals();
    let graphs = [
        ("5-cycle", cycle_graph(5)),
        ("path on 4 vertices", path_graph(4)),
        ("K_4", complete_graph(4)),
    ];
    for (label, g) in graphs {
        log.attempt(format!("{label}: |Aut E| = |Aut Γ|, D trivial"), || {
            let g = g?;
            let lift = frucht_lift(&g, &q)?;
            let aut = automorphism_group(&lift.algebra)?;
            let d = diagonal_subgroup(&lift.algebra)?.lattice.order();
            let expected = brute_force_graph_automorphisms(&g);
            let ok = lift.algebra.is_idempotent() && aut.group.order() == expected && d == 1;
            Ok((ok, format!("m = {}, |Aut E| = {}, |Aut Γ| = {expected}", lift.shift, aut.group.order())))
        });
    }
    log.0
}

fn expect_isomorphic(a: &EvolutionAlgebra, b: &EvolutionAlgebra) -> Result<Option<MonomialMap>> {
    Ok(match isomorphism(a, b)? {
        IsomorphismOutcome::Isomorphic(c) if c.check.passed() => Some(c.map),
        _ => None,
    })
}

/// The S_n representatives are pairwise non-isomorphic with `Aut ≅ S_n`, and
/// `E(a, b) ≅ E(1, b/a)` through `e_i ↦ a·e_i`.
pub fn classification_suite(max_n: usize) -> Vec<Assertion> {
    let mut log = Log::default();
    let q = Field::rationals();
    let samples = default_samples(&q);
    for n in 2..=max_n.max(2) {
        let reps = match sn_representatives(n, &q, &samples) {
            Ok(r) => r,
            Err(e) => {
                log.check(format!("n = {n}: representatives"), false, e.to_string());
                continue;
            }
        };
        for r in &reps.items {
            log.attempt(format!("n = {n}: |Aut {}| = {n}!", r.label), || {
                let order = automorphism_group(&r.algebra)?.group.order();
                Ok((order == factorial(n), format!("order {order}")))
            });
        }
        for (i, x) in reps.items.iter().enumerate() {
            for y in &reps.items[i + 1..] {
                log.attempt(format!("n = {n}: {} ≇ {}", x.label, y.label), || {
                    let out = isomorphism(&x.algebra, &y.algebra)?;
                    Ok((matches!(out, IsomorphismOutcome::NonIsomorphic { .. }), format!("{out:?}")))
                });
            }
        }
        for a in &samples {
            for b in &samples {
                let Ok(eab) = two_param_algebra(n, a, b, &q) else { continue };
                log.attempt(format!("n = {n}: E({a},{b}) ≅ E(1,{}) by e_i ↦ {a}·e_i", b / a), || {
                    let target = two_param_algebra(n, &q.one(), &(b / a), &q)?;
                    let scaling = MonomialMap::diagonal(&q, vec![a.clone(); n])?;
                    let found = expect_isomorphic(&eab, &target)?;
                    let ok = verify_map(eab.structure(), target.structure(), &scaling) && found.is_some();
                    Ok((ok, found.map(|m| m.to_string()).unwrap_or_default()))
                });
            }
        }
    }
    log.0
}

/// Over `Q(zeta_(2^n - 1))`: `E(P_σ)` has `D ≅ C_(2^n-1)` and
/// `Aut ≅ C_(2^n-1) ⋊ C_n`; cycle algebras with solvable weights are
/// isomorphic to it; and several shorter cycles give a smaller `D`.
pub fn maximal_diagonal_suite(max_n: usize) -> Vec<Assertion> {
    let mut log = Log::default();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for n in 2..=max_n.clamp(2, 5) {
        let k = (1u64 << n) - 1;
        let field = match Field::cyclotomic(k as u32) {
            Ok(f) => f,
            Err(e) => {
                log.check(format!("n = {n}: field"), false, e.to_string());
                continue;
            }
        };
        log.attempt(format!("n = {n}: |D| = {k}, Aut ≅ C_{k}⋊C_{n}"), || {
            let p = cycle_algebra(n, &field, None)?;
            let aut = automorphism_group(&p)?.group;
            let d = diagonal_subgroup(&p)?.lattice.order();
            let rec = aut.recognize(GroupTarget::SemidirectCyclic(k, n as u64))?;
            let ok = d == k as u128 && aut.order() == n as u64 * k && rec.matched;
            Ok((ok, format!("|D| = {d}, |Aut| = {}", aut.order())))
        });
        for trial in 0..3 {
            let b = solvable_cycle_weights(&mut rng, &field, n);
            log.attempt(format!("n = {n}, trial {trial}: cycle(b) ≅ cycle(1)"), || {
                let p = cycle_algebra(n, &field, None)?;
                let target = cycle_algebra(n, &field, Some(&b))?;
                let found = expect_isomorphic(&target, &p)?;
                Ok((found.is_some(), b.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            });
        }
    }
    for trial in 0..10 {
        let (sigma, lengths) = random_multicycle(&mut rng, max_n.clamp(2, 5));
        log.attempt(format!("multi-cycle trial {trial}: |D| = ∏(2^n_i - 1) < 2^n - 1"), || {
            let (alg, bound) = multicycle_algebra(&mut rng, &sigma, &lengths)?;
            let d = diagonal_subgroup(&alg)?.lattice.order();
            let full = (1u128 << sigma.len()) - 1;
            Ok((d <= bound && bound < full, format!("{sigma}: |D| = {d}, bound {bound}")))
        });
    }
    log.0
}

/// Nonzero rational weights `b` with `∏ b_i^(2^(n-i))` equal to `±r^(2^n - 1)`,
/// which makes `cycle(b)` isomorphic to `cycle(1)` over any field.
pub fn solvable_cycle_weights<R: Rng>(rng: &mut R, field: &Field, n: usize) -> Vec<Scalar> {
    let k = (1u64 << n) - 1;
    let mut b: Vec<Scalar> = (0..n - 1).map(|_| random_rational(rng, field)).collect();
    let mut head = field.one();
    for bi in &b {
        head = &head.square() * bi;
    }
    // ∏ = head² · b_n, so b_n = ±r^k / head².
    let r = random_rational(rng, field);
    let sign = field.from_i64(if rng.gen_bool(0.5) { -1 } else { 1 });
    b.push(&(&sign * &r.pow(k)) / &head.square());
    b
}

/// A random permutation of `2..=max_n` points with at least two cycles
/// (fixed points included), with its cycle lengths.
pub fn random_multicycle<R: Rng>(rng: &mut R, max_n: usize) -> (Permutation, Vec<usize>) {
    loop {
        let n = rng.gen_range(2..=max_n);
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        let sigma = Permutation::new(images).expect("shuffled identity");
        let lengths: Vec<usize> = sigma.cycles().iter().map(Vec::len).collect();
        if lengths.len() >= 2 {
            return (sigma, lengths);
        }
    }
}

/// `P_σ·diag(b)` with random rational `b` over `Q(zeta_m)`, `m` the lcm of the
/// `2^n_i - 1`, together with `∏(2^n_i - 1)`.
pub fn multicycle_algebra<R: Rng>(rng: &mut R, sigma: &Permutation, lengths: &[usize]) -> Result<(EvolutionAlgebra, u128)> {
    let m = lengths.iter().fold(1u64, |acc, &l| lcm(acc, (1u64 << l) - 1));
    let field = if m == 1 { Field::rationals() } else { Field::cyclotomic(m as u32)? };
    let n = sigma.len();
    let b: Vec<Scalar> = (0..n).map(|_| random_rational(rng, &field)).collect();
    let alg = EvolutionAlgebra::new(Matrix::from_fn(&field, n, n, |i, j| {
        if sigma.apply(j) == i {
            b[j].clone()
        } else {
            field.zero()
        }
    }))?;
    let bound = lengths.iter().map(|&l| (1u128 << l) - 1).product();
    Ok((alg, bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(log: &[Assertion]) {
        let failed: Vec<_> = log.iter().filter(|a| !a.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(!log.is_empty());
    }

    #[test]
    fn small_suites_pass() {
        all_pass(&complete_graph_suite());
        all_pass(&frucht_suite());
        all_pass(&graph_quotient_suite(4));
        all_pass(&classification_suite(3));
        all_pass(&maximal_diagonal_suite(3));
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", None).is_none());
    }

    #[test]
    fn solvable_weights_are_solvable() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let q = Field::rationals();
        for n in 2..=4 {
            let b = solvable_cycle_weights(&mut rng, &q, n);
            let out = crate::factory::cycle_normalizer(&b, &q).unwrap();
            assert_eq!(out.maps().len(), 1, "{b:?}");
        }
    }
}
