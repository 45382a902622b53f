//! Monomial solutions of `B·P^(2) = P·A`: diagonal subgroups, automorphism
//! groups, isomorphism certificates, and a brute-force oracle.
//!
//! A monomial map `e_i ↦ d_i e_{σ(i)}` is a homomorphism `E(A) → E(B)` exactly
//! when `d_k·a_kj = d_j²·b_{σ(k)σ(j)}` for all `k, j`.

use std::collections::HashMap;

use num::Integer;
use rayon::prelude::*;

use crate::algebra::EvolutionAlgebra;
use crate::digraph::{min_transversal_order, Permutation, Transversals};
use crate::error::{Error, Result};
use crate::groups::{MonomialGroup, MonomialMap, CLOSURE_CAP};
use crate::matrix::Matrix;
use crate::scalars::{Field, RootsOutcome, Scalar};
use crate::snf::smith_normal_form;

/// Diagonal subgroups up to this order are listed element by element.
pub const MATERIALIZE_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Every solution, sorted by scalar vector; never empty.
    Complete(Vec<MonomialMap>),
    NoSolution,
    /// Some root extraction could not be decided; carries the equations.
    Indeterminate(Vec<String>),
}

impl SolveOutcome {
    pub fn maps(&self) -> &[MonomialMap] {
        match self {
            SolveOutcome::Complete(v) => v,
            _ => &[],
        }
    }
}

fn check_pair(a: &EvolutionAlgebra, b: &EvolutionAlgebra) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("dimensions {} and {}", a.n(), b.n())));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch {
            left: a.field().to_string(),
            right: b.field().to_string(),
        });
    }
    a.require_idempotent()?;
    b.require_idempotent()
}

/// Largest cycle length whose closing exponent `2^L - 1` fits in 64 bits.
const MAX_CYCLE: usize = 63;

/// All `d` making `e_i ↦ d_i e_{σ(i)}` a homomorphism `E(A) → E(B)`.
///
/// Each constraint reads `d_k = w_kj·d_j²` with `w_kj = b_{σ(k)σ(j)} / a_kj`.
/// Along the cycles of a nonzero transversal `τ` of `A` every `d` is a known
/// multiple of a power of the cycle's first entry `x`, and closing the cycle of
/// length `L` gives `x^(2^L - 1) = c`. The candidate roots of these equations
/// are then combined per connected component of the constraint graph and
/// filtered against every remaining constraint.
pub fn solve_monomial(a: &EvolutionAlgebra, b: &EvolutionAlgebra, sigma: &Permutation) -> Result<SolveOutcome> {
    check_pair(a, b)?;
    let n = a.n();
    if sigma.len() != n {
        return Err(Error::DimensionMismatch(format!("permutation on {} points for dimension {n}", sigma.len())));
    }
    let field = a.field();
    let (am, bm) = (a.structure(), b.structure());

    let mut constraints: Vec<(usize, usize, Scalar)> = Vec::new();
    let mut weight: HashMap<(usize, usize), Scalar> = HashMap::new();
    for k in 0..n {
        for j in 0..n {
            let akj = am.get(k, j);
            let bkj = bm.get(sigma.apply(k), sigma.apply(j));
            if akj.is_zero() != bkj.is_zero() {
                return Ok(SolveOutcome::NoSolution);
            }
            if !akj.is_zero() {
                let w = bkj.checked_div(akj)?;
                weight.insert((k, j), w.clone());
                constraints.push((k, j, w));
            }
        }
    }

    let tau = Transversals::new(am).next().ok_or(Error::NoTransversal)?;
    let cycles = tau.cycles();
    let mut cycle_of = vec![0usize; n];
    for (c, cycle) in cycles.iter().enumerate() {
        for &v in cycle {
            cycle_of[v] = c;
        }
    }

    // Candidate assignments for each cycle, from its closing equation.
    let mut candidates: Vec<Vec<Vec<(usize, Scalar)>>> = Vec::with_capacity(cycles.len());
    let mut unsolved = Vec::new();
    let mut empty = false;
    for cycle in &cycles {
        let len = cycle.len();
        if len > MAX_CYCLE {
            return Err(Error::CapExceeded {
                what: "transversal cycle length".into(),
                limit: MAX_CYCLE as u64,
            });
        }
        // d_{v_i} = coef_i · x^(2^i), with coef_0 = 1 and coef_{i+1} = w·coef_i².
        let mut coef = field.one();
        for i in 0..len - 1 {
            coef = &weight[&(cycle[i + 1], cycle[i])] * &coef.square();
        }
        let closing = &weight[&(cycle[0], cycle[len - 1])] * &coef.square();
        let k = (1u64 << len) - 1;
        match field.kth_roots(&closing.inv()?, k)? {
            RootsOutcome::Roots(xs) if xs.is_empty() => empty = true,
            RootsOutcome::Roots(xs) => {
                let assignments = xs
                    .into_iter()
                    .map(|x| {
                        let mut out = Vec::with_capacity(len);
                        let mut cur = x;
                        for i in 0..len {
                            out.push((cycle[i], cur.clone()));
                            if i + 1 < len {
                                cur = &weight[&(cycle[i + 1], cycle[i])] * &cur.square();
                            }
                        }
                        out
                    })
                    .collect();
                candidates.push(assignments);
                continue;
            }
            RootsOutcome::Indeterminate(eq) => unsolved.push(eq),
        }
        candidates.push(Vec::new());
    }
    if empty {
        return Ok(SolveOutcome::NoSolution);
    }
    if !unsolved.is_empty() {
        return Ok(SolveOutcome::Indeterminate(unsolved));
    }

    // Weakly connected components of the constraint graph, on cycles.
    let mut parent: Vec<usize> = (0..cycles.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    for &(k, j, _) in &constraints {
        let (rk, rj) = (find(&mut parent, cycle_of[k]), find(&mut parent, cycle_of[j]));
        if rk != rj {
            parent[rk.max(rj)] = rk.min(rj);
        }
    }
    let mut components: Vec<Vec<usize>> = Vec::new();
    let mut comp_index: HashMap<usize, usize> = HashMap::new();
    for c in 0..cycles.len() {
        let r = find(&mut parent, c);
        let idx = *comp_index.entry(r).or_insert_with(|| {
            components.push(Vec::new());
            components.len() - 1
        });
        components[idx].push(c);
    }

    let mut per_component: Vec<Vec<Vec<(usize, Scalar)>>> = Vec::new();
    for comp in &components {
        let mut d: Vec<Option<Scalar>> = vec![None; n];
        let mut found = Vec::new();
        search_component(comp, 0, &candidates, &cycles, &constraints, &mut d, &mut found);
        if found.is_empty() {
            return Ok(SolveOutcome::NoSolution);
        }
        per_component.push(found);
    }

    let mut vectors: Vec<Vec<Option<Scalar>>> = vec![vec![None; n]];
    for sols in &per_component {
        let mut next = Vec::with_capacity(vectors.len() * sols.len());
        for partial in &vectors {
            for sol in sols {
                let mut v = partial.clone();
                for (i, x) in sol {
                    v[*i] = Some(x.clone());
                }
                next.push(v);
            }
        }
        vectors = next;
    }
    let mut maps = vectors
        .into_iter()
        .map(|v| MonomialMap::new(field, sigma.clone(), v.into_iter().map(|x| x.expect("every vertex assigned")).collect()))
        .collect::<Result<Vec<_>>>()?;
    maps.sort();
    maps.dedup();
    Ok(SolveOutcome::Complete(maps))
}

/// Backtracks over the cycles of one component, checking each constraint as
/// soon as both of its endpoints are assigned.
fn search_component(
    comp: &[usize],
    pos: usize,
    candidates: &[Vec<Vec<(usize, Scalar)>>],
    cycles: &[Vec<usize>],
    constraints: &[(usize, usize, Scalar)],
    d: &mut Vec<Option<Scalar>>,
    found: &mut Vec<Vec<(usize, Scalar)>>,
) {
    if pos == comp.len() {
        let sol = comp
            .iter()
            .flat_map(|&c| cycles[c].iter().map(|&v| (v, d[v].clone().expect("assigned"))))
            .collect();
        found.push(sol);
        return;
    }
    let c = comp[pos];
    for assignment in &candidates[c] {
        for (v, x) in assignment {
            d[*v] = Some(x.clone());
        }
        let ok = constraints.iter().all(|(k, j, w)| {
            let touches = cycles[c].contains(k) || cycles[c].contains(j);
            match (touches, &d[*k], &d[*j]) {
                (true, Some(dk), Some(dj)) => *dk == w * &dj.square(),
                _ => true,
            }
        });
        if ok {
            search_component(comp, pos + 1, candidates, cycles, constraints, d, found);
        }
        for (v, _) in assignment {
            d[*v] = None;
        }
    }
}

/// The diagonal subgroup in exponent form: `d_i = g^{x_i}` for a generator `g`
/// of the field's roots of unity, `x` ranging over the subgroup of `(ℤ/N)ⁿ`
/// spanned by `generators` (with the given cyclic orders).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalLattice {
    pub modulus: u64,
    pub generators: Vec<Vec<u64>>,
    pub orders: Vec<u64>,
}

impl DiagonalLattice {
    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    /// Every exponent vector, each exactly once.
    pub fn exponent_vectors(&self, n: usize) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0u64; n]];
        for (gen, &ord) in self.generators.iter().zip(&self.orders) {
            let mut next = Vec::with_capacity(out.len() * ord as usize);
            for base in &out {
                let mut cur = base.clone();
                for _ in 0..ord {
                    next.push(cur.clone());
                    for (c, g) in cur.iter_mut().zip(gen) {
                        *c = ((*c as u128 + *g as u128) % self.modulus as u128) as u64;
                    }
                }
            }
            out = next;
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct DiagonalSubgroup {
    pub lattice: DiagonalLattice,
    /// The elements as diagonal maps, when the order is at most [`MATERIALIZE_CAP`].
    pub group: Option<MonomialGroup>,
    pub t_a: u64,
    /// The field holds all roots of `x^(2^{t_A} - 1) - 1`, so the group is as
    /// large as over an algebraically closed field.
    pub conductor_sufficient: bool,
}

/// The diagonal automorphisms, from the congruences `x_i ≡ 2 x_j (mod N)` for
/// every `a_ij ≠ 0`, solved through a Smith normal form.
pub fn diagonal_subgroup(alg: &EvolutionAlgebra) -> Result<DiagonalSubgroup> {
    alg.require_idempotent()?;
    let n = alg.n();
    let field = alg.field();
    let unity = field.unity_group();
    let modulus = unity.order;
    let a = alg.structure();

    let mut rows: Vec<Vec<i128>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if !a.get(i, j).is_zero() {
                let mut r = vec![0i128; n];
                r[i] += 1;
                r[j] -= 2;
                rows.push(r);
            }
        }
    }
    rows.sort();
    rows.dedup();
    let smith = smith_normal_form(&rows)?;
    let diag = smith.diagonal();
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for t in 0..n {
        let s = diag.get(t).copied().unwrap_or(0).unsigned_abs();
        let order = (s % modulus as u128).gcd(&(modulus as u128)) as u64;
        let order = if s == 0 { modulus } else { order };
        if order == 1 {
            continue;
        }
        let step = (modulus / order) as i128;
        let gen = (0..n)
            .map(|i| {
                let x = smith.v[i][t].checked_mul(step).ok_or(Error::CapExceeded {
                    what: "exponent overflow".into(),
                    limit: i128::MAX as u64,
                })?;
                Ok(x.rem_euclid(modulus as i128) as u64)
            })
            .collect::<Result<Vec<u64>>>()?;
        generators.push(gen);
        orders.push(order);
    }
    let lattice = DiagonalLattice {
        modulus,
        generators,
        orders,
    };

    let group = if lattice.order() <= MATERIALIZE_CAP {
        let mut powers: HashMap<u64, Scalar> = HashMap::new();
        let maps = lattice
            .exponent_vectors(n)
            .into_iter()
            .map(|x| {
                let d = x
                    .iter()
                    .map(|&e| powers.entry(e).or_insert_with(|| unity.generator.pow(e)).clone())
                    .collect();
                MonomialMap::diagonal(field, d)
            })
            .collect::<Result<Vec<_>>>()?;
        Some(MonomialGroup::from_elements(field, n, maps, false)?)
    } else {
        None
    };

    let t_a = min_transversal_order(a)?;
    let needed = (1u128 << t_a.min(127)) - 1;
    Ok(DiagonalSubgroup {
        lattice,
        group,
        t_a,
        conductor_sufficient: (modulus as u128).is_multiple_of(needed),
    })
}

/// `Aut(E(A))` assembled from `solve_monomial(A, A, σ)` over σ ∈ Aut(Γ_A).
#[derive(Clone, Debug)]
pub struct Automorphisms {
    pub group: MonomialGroup,
    /// Equations left undecided; nonempty exactly when the group is partial.
    pub unsolved: Vec<String>,
    pub graph_automorphisms: usize,
}

pub fn automorphism_group(alg: &EvolutionAlgebra) -> Result<Automorphisms> {
    alg.require_idempotent()?;
    let mut auts = Vec::new();
    let over = alg.graph().for_each_isomorphism(alg.graph(), |s| {
        if auts.len() as u64 >= CLOSURE_CAP {
            return std::ops::ControlFlow::Break(());
        }
        auts.push(s.clone());
        std::ops::ControlFlow::Continue(())
    })?;
    if over.is_some() {
        return Err(Error::CapExceeded {
            what: "graph automorphisms".into(),
            limit: CLOSURE_CAP,
        });
    }
    let outcomes: Vec<SolveOutcome> = auts
        .par_iter()
        .map(|sigma| solve_monomial(alg, alg, sigma))
        .collect::<Result<_>>()?;
    let mut elements = Vec::new();
    let mut unsolved = Vec::new();
    for outcome in outcomes {
        match outcome {
            SolveOutcome::Complete(maps) => elements.extend(maps),
            SolveOutcome::NoSolution => {}
            SolveOutcome::Indeterminate(eqs) => unsolved.extend(eqs),
        }
    }
    let partial = !unsolved.is_empty();
    let group = MonomialGroup::from_elements(alg.field(), alg.n(), elements, partial)?;
    if !partial && !group.is_closed() {
        return Err(Error::NotClosed);
    }
    Ok(Automorphisms {
        group,
        unsolved,
        graph_automorphisms: auts.len(),
    })
}

/// Results of checking `B·P^(2) = P·A` and `B·(P∗P) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapCheck {
    pub bp2_eq_pa: bool,
    pub b_pstar_p_zero: bool,
}

impl MapCheck {
    pub fn passed(&self) -> bool {
        self.bp2_eq_pa && self.b_pstar_p_zero
    }
}

/// Checks both identities for an arbitrary square matrix `P`, where `P∗P` has
/// columns indexed by pairs `i < j` and entries `p_ki·p_kj`.
pub fn check_matrix_map(a: &Matrix, b: &Matrix, p: &Matrix) -> Result<MapCheck> {
    let n = a.rows();
    for m in [a, b, p] {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch("maps must be square of the algebra's dimension".into()));
        }
    }
    let bp2_eq_pa = b.mul(&p.entrywise_square())? == p.mul(a)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let pstar = Matrix::from_fn(a.field(), n, pairs.len(), |k, c| {
        let (i, j) = pairs[c];
        p.get(k, i) * p.get(k, j)
    });
    let b_pstar_p_zero = b.mul(&pstar)?.is_zero();
    Ok(MapCheck {
        bp2_eq_pa,
        b_pstar_p_zero,
    })
}

/// Whether the monomial map is an isomorphism `E(A) → E(B)`.
pub fn verify_map(a: &Matrix, b: &Matrix, m: &MonomialMap) -> bool {
    check_matrix_map(a, b, &m.matrix()).is_ok_and(|c| c.passed())
}

/// A checked isomorphism witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub map: MonomialMap,
    pub check: MapCheck,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsomorphismOutcome {
    Isomorphic(Certificate),
    /// No pattern isomorphism extends; `candidates` pattern isomorphisms were tried.
    NonIsomorphic { candidates: usize },
}

/// Searches σ over the pattern isomorphisms Γ_A → Γ_B in lexicographic order
/// and returns the first solution found, with its certificate.
///
/// When no witness exists but some σ was undecided, the result is
/// [`Error::Indeterminate`].
pub fn isomorphism(a: &EvolutionAlgebra, b: &EvolutionAlgebra) -> Result<IsomorphismOutcome> {
    check_pair(a, b)?;
    let mut candidates = 0usize;
    let mut unsolved = Vec::new();
    let mut failure = None;
    let found = a.graph().for_each_isomorphism(b.graph(), |sigma| {
        candidates += 1;
        match solve_monomial(a, b, sigma) {
            Ok(SolveOutcome::Complete(maps)) => std::ops::ControlFlow::Break(maps[0].clone()),
            Ok(SolveOutcome::NoSolution) => std::ops::ControlFlow::Continue(()),
            Ok(SolveOutcome::Indeterminate(eqs)) => {
                unsolved.extend(eqs);
                std::ops::ControlFlow::Continue(())
            }
            Err(e) => {
                failure = Some(e);
                std::ops::ControlFlow::Break(MonomialMap::identity(a.field(), 0))
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    match found {
        Some(map) => {
            let check = check_matrix_map(a.structure(), b.structure(), &map.matrix())?;
            Ok(IsomorphismOutcome::Isomorphic(Certificate { map, check }))
        }
        None if unsolved.is_empty() => Ok(IsomorphismOutcome::NonIsomorphic { candidates }),
        None => Err(Error::Indeterminate(unsolved)),
    }
}

/// Bounds for the brute-force oracle.
pub const BRUTE_FORCE_MAX_PRIME: u32 = 13;
pub const BRUTE_FORCE_MAX_DIM: usize = 4;

fn small_prime_field(alg: &EvolutionAlgebra, max_p: u32, max_n: usize) -> Result<u32> {
    let p = alg.field().characteristic();
    if p == 0 {
        return Err(Error::Inadmissible(format!("brute force needs a prime field, got {}", alg.field())));
    }
    if p > max_p {
        return Err(Error::CapExceeded {
            what: format!("brute force over GF({p})"),
            limit: max_p as u64,
        });
    }
    if alg.n() > max_n {
        return Err(Error::CapExceeded {
            what: format!("brute force in dimension {}", alg.n()),
            limit: max_n as u64,
        });
    }
    Ok(p)
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if cur.len() == n {
            out.push(Permutation::new(cur.clone()).expect("bijection"));
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every tuple in `0..base` of length `len`, in lexicographic order.
fn tuples(base: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = base.pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut t = vec![0u64; len];
        for slot in t.iter_mut().rev() {
            *slot = idx % base;
            idx /= base;
        }
        t
    })
}

/// Oracle: all monomial `G = P_σ·diag(d)` over GF(p) with `A·G^(2) = G·A`,
/// by exhaustive enumeration of the `n!·(p-1)ⁿ` candidates.
pub fn brute_force_automorphisms(alg: &EvolutionAlgebra) -> Result<MonomialGroup> {
    let p = small_prime_field(alg, BRUTE_FORCE_MAX_PRIME, BRUTE_FORCE_MAX_DIM)?;
    alg.require_idempotent()?;
    let field = alg.field();
    let a = alg.structure();
    let n = alg.n();
    let mut found = Vec::new();
    for sigma in all_permutations(n) {
        for d in tuples(p as u64 - 1, n) {
            let d: Vec<Scalar> = d.iter().map(|&x| field.residue(x + 1).expect("prime field")).collect();
            let g = MonomialMap::new(field, sigma.clone(), d)?;
            let gm = g.matrix();
            if a.mul(&gm.entrywise_square())? == gm.mul(a)? {
                found.push(g);
            }
        }
    }
    MonomialGroup::from_elements(field, n, found, false)
}

/// Oracle over every invertible matrix (GF(p), `p ≤ 3`, `n ≤ 2`): all `G` with
/// `A·G^(2) = G·A` and `A·(G∗G) = 0`.
pub fn all_invertible_automorphisms(alg: &EvolutionAlgebra) -> Result<Vec<Matrix>> {
    let p = small_prime_field(alg, 3, 2)?;
    alg.require_idempotent()?;
    let field = alg.field();
    let a = alg.structure();
    let n = alg.n();
    let mut out = Vec::new();
    for entries in tuples(p as u64, n * n) {
        let g = Matrix::from_fn(field, n, n, |i, j| field.residue(entries[i * n + j]).expect("prime field"));
        if g.determinant()?.is_zero() {
            continue;
        }
        if check_matrix_map(a, a, &g)?.passed() {
            out.push(g);
        }
    }
    Ok(out)
}

/// Convenience: the σ-only maps `P_σ` for a list of permutations.
pub fn permutation_maps(field: &Field, perms: &[Permutation]) -> Vec<MonomialMap> {
    perms.iter().map(|s| MonomialMap::permutation(field, s.clone())).collect()
}
