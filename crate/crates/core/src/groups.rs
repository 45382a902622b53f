//! Monomial maps `e_i ↦ d_i e_{σ(i)}` (matrix form `P_σ·diag(d)`), the finite
//! groups they form, and recognition against a handful of named groups.
//!
//! Composition follows matrix multiplication of the `P_σ·D` forms:
//! `(σ₁, d)·(σ₂, d′) = (σ₁σ₂, d″)` with `d″_i = d_{σ₂(i)}·d′_i`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use num::Integer;

use crate::algebra::EvolutionAlgebra;
use crate::digraph::Permutation;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::{Field, Scalar};

/// Default bound on the size of a group built by closure.
pub const CLOSURE_CAP: u64 = 1_000_000;

/// Largest group order accepted by [`MonomialGroup::recognize`].
pub const RECOGNITION_CAP: u64 = 100_000;

#[derive(Clone)]
pub struct MonomialMap {
    field: Field,
    sigma: Permutation,
    d: Vec<Scalar>,
}

impl MonomialMap {
    pub fn new(field: &Field, sigma: Permutation, d: Vec<Scalar>) -> Result<MonomialMap> {
        if sigma.len() != d.len() {
            return Err(Error::DimensionMismatch(format!(
                "permutation on {} points with {} scalars",
                sigma.len(),
                d.len()
            )));
        }
        for x in &d {
            if x.field() != field {
                return Err(Error::FieldMismatch {
                    left: field.to_string(),
                    right: x.field().to_string(),
                });
            }
            if x.is_zero() {
                return Err(Error::DivisionByZero);
            }
        }
        Ok(MonomialMap {
            field: field.clone(),
            sigma,
            d,
        })
    }

    pub fn identity(field: &Field, n: usize) -> MonomialMap {
        MonomialMap {
            field: field.clone(),
            sigma: Permutation::identity(n),
            d: vec![field.one(); n],
        }
    }

    pub fn permutation(field: &Field, sigma: Permutation) -> MonomialMap {
        let n = sigma.len();
        MonomialMap {
            field: field.clone(),
            sigma,
            d: vec![field.one(); n],
        }
    }

    pub fn diagonal(field: &Field, d: Vec<Scalar>) -> Result<MonomialMap> {
        MonomialMap::new(field, Permutation::identity(d.len()), d)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn scalars(&self) -> &[Scalar] {
        &self.d
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.is_identity() && self.d.iter().all(Scalar::is_one)
    }

    pub fn is_diagonal(&self) -> bool {
        self.sigma.is_identity()
    }

    /// Matrix form `P_σ·diag(d)`: column `i` holds `d_i` in row `σ(i)`.
    pub fn matrix(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            m.set(self.sigma.apply(i), i, self.d[i].clone());
        }
        m
    }

    /// Reads a matrix back as a monomial map, if it is one.
    pub fn from_matrix(m: &Matrix) -> Option<MonomialMap> {
        if !m.is_square() {
            return None;
        }
        let n = m.rows();
        let mut images = Vec::with_capacity(n);
        let mut d = Vec::with_capacity(n);
        for j in 0..n {
            let mut nonzero = (0..n).filter(|&i| !m.get(i, j).is_zero());
            let i = nonzero.next()?;
            if nonzero.next().is_some() {
                return None;
            }
            images.push(i);
            d.push(m.get(i, j).clone());
        }
        let sigma = Permutation::new(images).ok()?;
        MonomialMap::new(m.field(), sigma, d).ok()
    }

    pub fn compose(&self, other: &MonomialMap) -> Result<MonomialMap> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        let sigma = self.sigma.compose(&other.sigma)?;
        let d = (0..self.n())
            .map(|i| &self.d[other.sigma.apply(i)] * &other.d[i])
            .collect();
        Ok(MonomialMap {
            field: self.field.clone(),
            sigma,
            d,
        })
    }

    pub fn inverse(&self) -> MonomialMap {
        let inv = self.sigma.inverse();
        let d = (0..self.n())
            .map(|j| self.d[inv.apply(j)].inv().expect("monomial scalars are nonzero"))
            .collect();
        MonomialMap {
            field: self.field.clone(),
            sigma: inv,
            d,
        }
    }

    pub fn pow(&self, mut e: u64) -> MonomialMap {
        let mut acc = MonomialMap::identity(&self.field, self.n());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base).expect("same shape");
            }
        }
        acc
    }

    /// Element order, or `None` when some power is a diagonal map with an
    /// entry that is not a root of unity.
    pub fn order(&self) -> Option<u64> {
        let k = self.sigma.order();
        let diag = self.pow(k);
        let mut o = 1u64;
        for x in diag.scalars() {
            o = o.lcm(&x.mult_order().ok()??);
        }
        Some(k * o)
    }

    fn key(&self) -> (&Permutation, &[Scalar]) {
        (&self.sigma, &self.d)
    }
}

impl PartialEq for MonomialMap {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for MonomialMap {}

impl std::hash::Hash for MonomialMap {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for MonomialMap {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonomialMap {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.d.iter().map(ToString::to_string).collect();
        write!(f, "{}·diag({})", self.sigma, d.join(", "))
    }
}

impl fmt::Debug for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Named groups that [`MonomialGroup::recognize`] can test for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupTarget {
    Trivial,
    Cyclic(u64),
    Symmetric(u64),
    Dihedral(u64),
    /// `C_m ⋊ C_n`.
    SemidirectCyclic(u64, u64),
}

impl fmt::Display for GroupTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupTarget::Trivial => write!(f, "1"),
            GroupTarget::Cyclic(k) => write!(f, "C_{k}"),
            GroupTarget::Symmetric(k) => write!(f, "S_{k}"),
            GroupTarget::Dihedral(k) => write!(f, "D_{k}"),
            GroupTarget::SemidirectCyclic(m, n) => write!(f, "C_{m}⋊C_{n}"),
        }
    }
}

/// Elements exhibiting a recognized structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Trivial,
    Cyclic { generator: MonomialMap },
    /// Images of the adjacent transpositions `(1 2), …, (k-1 k)`.
    Symmetric { generators: Vec<MonomialMap> },
    Dihedral { rotation: MonomialMap, reflection: MonomialMap },
    /// `complement·normal·complement⁻¹ = normal^action`.
    Semidirect {
        normal: MonomialMap,
        complement: MonomialMap,
        action: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognition {
    pub target: GroupTarget,
    pub matched: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupProfile {
    pub order: u64,
    pub is_abelian: bool,
    /// Element order → number of elements of that order.
    pub histogram: BTreeMap<u64, u64>,
    /// Order of the kernel of `g ↦ σ` (the diagonal part).
    pub kernel_order: u64,
    /// Order of the permutation image.
    pub quotient_order: u64,
}

/// A finite set of monomial maps, stored sorted and duplicate-free.
#[derive(Clone, Debug)]
pub struct MonomialGroup {
    field: Field,
    n: usize,
    elements: Vec<MonomialMap>,
    closed: bool,
    partial: bool,
}

impl MonomialGroup {
    /// Wraps a set of maps, sorting and deduplicating; the `closed` flag is
    /// established by [`MonomialGroup::verify_closure`].
    pub fn from_elements(field: &Field, n: usize, elements: Vec<MonomialMap>, partial: bool) -> Result<MonomialGroup> {
        for g in &elements {
            if g.n() != n || g.field() != field {
                return Err(Error::DimensionMismatch(format!("element {g} does not act on {n} points over {field}")));
            }
        }
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        let mut group = MonomialGroup {
            field: field.clone(),
            n,
            elements,
            closed: false,
            partial,
        };
        group.closed = group.verify_closure();
        Ok(group)
    }

    /// The group generated by `gens`, by breadth-first closure.
    pub fn close_generators(field: &Field, n: usize, gens: &[MonomialMap], cap: u64) -> Result<MonomialGroup> {
        for g in gens {
            if g.n() != n || g.field() != field {
                return Err(Error::DimensionMismatch(format!("generator {g} does not act on {n} points over {field}")));
            }
        }
        let identity = MonomialMap::identity(field, n);
        let mut seen: HashSet<MonomialMap> = HashSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.compose(g)?;
                if !seen.contains(&y) {
                    if seen.len() as u64 >= cap {
                        return Err(Error::CapExceeded {
                            what: "group closure".into(),
                            limit: cap,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<MonomialMap> = seen.into_iter().collect();
        elements.sort();
        Ok(MonomialGroup {
            field: field.clone(),
            n,
            elements,
            closed: true,
            partial: false,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[MonomialMap] {
        &self.elements
    }

    pub fn contains(&self, g: &MonomialMap) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Set when some candidate maps could not be decided upstream.
    pub fn is_partial(&self) -> bool {
        self.partial
    }

    /// Greedy generating set: walk the sorted elements and keep each one not
    /// already in the subgroup generated so far. Returns `None` if a product
    /// leaves the set (so the set is not a group).
    fn greedy_generators(&self) -> Option<Vec<MonomialMap>> {
        let members: HashSet<&MonomialMap> = self.elements.iter().collect();
        let identity = MonomialMap::identity(&self.field, self.n);
        if !members.contains(&identity) {
            return None;
        }
        let mut gens: Vec<MonomialMap> = Vec::new();
        let mut reached: HashSet<MonomialMap> = HashSet::from([identity]);
        for candidate in &self.elements {
            if reached.contains(candidate) {
                continue;
            }
            gens.push(candidate.clone());
            // Re-close from everything reached so far with all generators.
            let mut queue: VecDeque<MonomialMap> = reached.iter().cloned().collect();
            while let Some(x) = queue.pop_front() {
                for g in &gens {
                    let y = x.compose(g).ok()?;
                    if !reached.contains(&y) {
                        if !members.contains(&y) {
                            return None;
                        }
                        reached.insert(y.clone());
                        queue.push_back(y);
                    }
                }
            }
        }
        (reached.len() == self.elements.len()).then_some(gens)
    }

    /// Whether the elements form a group (identity present, closed under
    /// composition; inverses follow by finiteness).
    pub fn verify_closure(&self) -> bool {
        self.greedy_generators().is_some()
    }

    /// A generating set, chosen greedily from the sorted element list.
    pub fn generators(&self) -> Result<Vec<MonomialMap>> {
        self.greedy_generators().ok_or(Error::NotClosed)
    }

    /// The diagonal elements, i.e. the kernel of `g ↦ σ`.
    pub fn kernel(&self) -> Vec<MonomialMap> {
        self.elements.iter().filter(|g| g.is_diagonal()).cloned().collect()
    }

    /// The permutation parts, sorted and duplicate-free.
    pub fn phi_image(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = self.elements.iter().map(|g| g.sigma().clone()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn profile(&self) -> Result<GroupProfile> {
        let gens = self.generators()?;
        let is_abelian = gens
            .iter()
            .all(|a| gens.iter().all(|b| a.compose(b).ok() == b.compose(a).ok()));
        let mut histogram = BTreeMap::new();
        for g in &self.elements {
            let o = g.order().ok_or(Error::NotClosed)?;
            *histogram.entry(o).or_insert(0) += 1;
        }
        Ok(GroupProfile {
            order: self.order(),
            is_abelian,
            histogram,
            kernel_order: self.kernel().len() as u64,
            quotient_order: self.phi_image().len() as u64,
        })
    }

    /// Tests the group against a named target, returning a witness on success.
    pub fn recognize(&self, target: GroupTarget) -> Result<Recognition> {
        if !self.closed {
            return Err(Error::NotClosed);
        }
        if self.order() > RECOGNITION_CAP {
            return Err(Error::CapExceeded {
                what: "group recognition".into(),
                limit: RECOGNITION_CAP,
            });
        }
        let ctx = Ctx::new(self);
        let witness = match target {
            GroupTarget::Trivial => (self.order() == 1).then_some(Witness::Trivial),
            GroupTarget::Cyclic(k) => ctx.cyclic(k),
            GroupTarget::Symmetric(k) => ctx.symmetric(k),
            GroupTarget::Dihedral(k) => ctx.dihedral(k),
            GroupTarget::SemidirectCyclic(m, k) => ctx.semidirect(m, k),
        };
        Ok(Recognition {
            target,
            matched: witness.is_some(),
            witness,
        })
    }

    /// The first matching name among trivial, cyclic, symmetric, dihedral and
    /// semidirect `C_m⋊C_n` (split over the diagonal kernel first).
    pub fn name(&self) -> Result<Option<String>> {
        let order = self.order();
        let mut targets = vec![GroupTarget::Trivial, GroupTarget::Cyclic(order)];
        let mut k = 1u64;
        let mut fact = 1u64;
        while fact < order {
            k += 1;
            fact *= k;
        }
        if fact == order && k >= 3 {
            targets.push(GroupTarget::Symmetric(k));
        }
        if order.is_multiple_of(2) && order >= 6 {
            targets.push(GroupTarget::Dihedral(order / 2));
        }
        let kernel = self.kernel().len() as u64;
        if kernel > 1 && kernel < order {
            targets.push(GroupTarget::SemidirectCyclic(kernel, order / kernel));
        }
        for m in (2..order).filter(|m| order.is_multiple_of(*m) && *m != kernel) {
            targets.push(GroupTarget::SemidirectCyclic(m, order / m));
        }
        for t in targets {
            let r = self.recognize(t)?;
            if let Some(w) = r.witness {
                return Ok(Some(match (t, w) {
                    (GroupTarget::SemidirectCyclic(m, n), Witness::Semidirect { action, .. }) if action % m == 1 % m => {
                        format!("C_{m}×C_{n}")
                    }
                    _ => t.to_string(),
                }));
            }
        }
        Ok(None)
    }
}

/// Index-based view of a group used by recognition.
struct Ctx<'a> {
    group: &'a MonomialGroup,
    index: HashMap<&'a MonomialMap, usize>,
    identity: usize,
    orders: Vec<u64>,
}

impl<'a> Ctx<'a> {
    fn new(group: &'a MonomialGroup) -> Ctx<'a> {
        let index: HashMap<&MonomialMap, usize> = group.elements.iter().enumerate().map(|(i, g)| (g, i)).collect();
        let identity = index[&MonomialMap::identity(&group.field, group.n)];
        let orders = group
            .elements
            .iter()
            .map(|g| g.order().expect("elements of a finite group have finite order"))
            .collect();
        Ctx {
            group,
            index,
            identity,
            orders,
        }
    }

    fn el(&self, i: usize) -> &MonomialMap {
        &self.group.elements[i]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let c = self.el(a).compose(self.el(b)).expect("same shape");
        self.index[&c]
    }

    fn inv(&self, a: usize) -> usize {
        self.index[&self.el(a).inverse()]
    }

    /// Powers `a^0, a^1, …, a^{o-1}`.
    fn cyclic_subgroup(&self, a: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut cur = a;
        while cur != self.identity {
            out.push(cur);
            cur = self.mul(cur, a);
        }
        out
    }

    fn order(&self) -> u64 {
        self.group.order()
    }

    fn elements_of_order(&self, k: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.orders.len()).filter(move |&i| self.orders[i] == k)
    }

    fn cyclic(&self, k: u64) -> Option<Witness> {
        if self.order() != k {
            return None;
        }
        let g = self.elements_of_order(k).next()?;
        Some(Witness::Cyclic {
            generator: self.el(g).clone(),
        })
    }

    fn dihedral(&self, k: u64) -> Option<Witness> {
        if self.order() != 2 * k {
            return None;
        }
        for r in self.elements_of_order(k) {
            let powers: HashSet<usize> = self.cyclic_subgroup(r).into_iter().collect();
            let r_inv = self.inv(r);
            for s in self.elements_of_order(2) {
                if !powers.contains(&s) && self.mul(self.mul(s, r), s) == r_inv {
                    return Some(Witness::Dihedral {
                        rotation: self.el(r).clone(),
                        reflection: self.el(s).clone(),
                    });
                }
            }
        }
        None
    }

    fn is_normal(&self, sub: &HashSet<usize>, gens: &[usize], normal_gen: usize) -> bool {
        gens.iter().all(|&g| {
            let conj = self.mul(self.mul(g, normal_gen), self.inv(g));
            sub.contains(&conj)
        })
    }

    fn semidirect(&self, m: u64, k: u64) -> Option<Witness> {
        if self.order() != m * k {
            return None;
        }
        let gens: Vec<usize> = self
            .group
            .generators()
            .ok()?
            .iter()
            .map(|g| self.index[g])
            .collect();
        // Prefer a generator of the diagonal kernel when it has the right order.
        let mut candidates: Vec<usize> = self
            .elements_of_order(m)
            .filter(|&a| self.el(a).is_diagonal())
            .collect();
        candidates.extend(self.elements_of_order(m).filter(|&a| !self.el(a).is_diagonal()));
        let mut tried: HashSet<Vec<usize>> = HashSet::new();
        for a in candidates {
            let powers = self.cyclic_subgroup(a);
            let mut key = powers.clone();
            key.sort_unstable();
            if !tried.insert(key) {
                continue;
            }
            let sub: HashSet<usize> = powers.iter().copied().collect();
            if !self.is_normal(&sub, &gens, a) {
                continue;
            }
            for c in self.elements_of_order(k) {
                let cpow = self.cyclic_subgroup(c);
                if cpow[1..].iter().any(|x| sub.contains(x)) {
                    continue;
                }
                let conj = self.mul(self.mul(c, a), self.inv(c));
                let action = powers.iter().position(|&x| x == conj)? as u64;
                return Some(Witness::Semidirect {
                    normal: self.el(a).clone(),
                    complement: self.el(c).clone(),
                    action,
                });
            }
        }
        None
    }

    fn symmetric(&self, k: u64) -> Option<Witness> {
        let fact: u64 = (1..=k).product();
        if self.order() != fact {
            return None;
        }
        if k <= 1 {
            return Some(Witness::Symmetric { generators: vec![] });
        }
        // Faithful action on the basis: σ-images are all of S_k with trivial kernel.
        let n = self.group.n as u64;
        if n == k && self.group.kernel().len() == 1 && self.group.phi_image().len() as u64 == fact {
            let generators = (0..self.group.n - 1)
                .map(|i| {
                    let mut images: Vec<usize> = (0..self.group.n).collect();
                    images.swap(i, i + 1);
                    let t = Permutation::new(images).expect("transposition");
                    self.group
                        .elements
                        .iter()
                        .find(|g| *g.sigma() == t)
                        .expect("image is all of S_n")
                        .clone()
                })
                .collect();
            return Some(Witness::Symmetric { generators });
        }
        // Otherwise search for Coxeter generators t_1..t_{k-1}:
        // t_i² = 1, (t_i t_{i+1})³ = 1, (t_i t_j)² = 1 for |i - j| ≥ 2.
        let involutions: Vec<usize> = self.elements_of_order(2).collect();
        let mut chosen = Vec::new();
        if self.coxeter(k as usize - 1, &involutions, &mut chosen) {
            return Some(Witness::Symmetric {
                generators: chosen.iter().map(|&i| self.el(i).clone()).collect(),
            });
        }
        None
    }

    fn coxeter(&self, len: usize, involutions: &[usize], chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == len {
            let gens: Vec<MonomialMap> = chosen.iter().map(|&i| self.el(i).clone()).collect();
            return MonomialGroup::close_generators(&self.group.field, self.group.n, &gens, self.order())
                .map(|h| h.order() == self.order())
                .unwrap_or(false);
        }
        for &t in involutions {
            if chosen.contains(&t) {
                continue;
            }
            let fits = chosen.iter().enumerate().all(|(i, &s)| {
                let prod = self.mul(s, t);
                let want = if i + 1 == chosen.len() { 3 } else { 2 };
                self.orders[prod] == want
            });
            if fits {
                chosen.push(t);
                if self.coxeter(len, involutions, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
}

/// Outcome of comparing `G = Aut(E(A))` with its diagonal subgroup and with
/// the automorphisms of Γ_A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub kernel_order: u64,
    pub diagonal_order: u64,
    /// `ker(g ↦ σ)` equals the independently computed diagonal subgroup.
    pub kernel_is_diagonal: bool,
    /// `g·D·g⁻¹ ⊆ D` for every `g`.
    pub diagonal_is_normal: bool,
    pub quotient_order: u64,
    pub graph_automorphism_count: u64,
    /// Every σ-image is an automorphism of Γ_A.
    pub image_in_graph_automorphisms: bool,
    /// `|G| / |ker| = |image|`, i.e. `G/D` injects into Aut(Γ_A).
    pub injective_on_quotient: bool,
}

impl QuotientReport {
    pub fn holds(&self) -> bool {
        self.kernel_is_diagonal && self.diagonal_is_normal && self.image_in_graph_automorphisms && self.injective_on_quotient
    }
}

/// Checks that the diagonal subgroup is the normal kernel of `g ↦ σ` and that
/// `G/D` embeds in Aut(Γ_A).
pub fn quotient_embedding_check(g: &MonomialGroup, alg: &EvolutionAlgebra) -> Result<QuotientReport> {
    if !g.is_closed() {
        return Err(Error::NotClosed);
    }
    let kernel = g.kernel();
    let diag = crate::solver::diagonal_subgroup(alg)?;
    let kernel_is_diagonal = match &diag.group {
        Some(d) => d.elements() == kernel.as_slice(),
        None => diag.lattice.order() == kernel.len() as u128,
    };
    let kernel_set: HashSet<&MonomialMap> = kernel.iter().collect();
    let gens = g.generators()?;
    let diagonal_is_normal = gens.iter().all(|x| {
        let x_inv = x.inverse();
        kernel.iter().all(|dk| {
            let conj = x.compose(dk).and_then(|y| y.compose(&x_inv));
            conj.is_ok_and(|c| kernel_set.contains(&c))
        })
    });
    let image = g.phi_image();
    let graph = alg.graph();
    let auts = graph.automorphisms()?;
    let image_in_graph_automorphisms = image.iter().all(|s| graph.is_isomorphism(graph, s));
    Ok(QuotientReport {
        kernel_order: kernel.len() as u64,
        diagonal_order: u64::try_from(diag.lattice.order()).unwrap_or(u64::MAX),
        kernel_is_diagonal,
        diagonal_is_normal,
        quotient_order: image.len() as u64,
        graph_automorphism_count: auts.len() as u64,
        image_in_graph_automorphisms,
        injective_on_quotient: g.order() == kernel.len() as u64 * image.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k3() -> Field {
        Field::cyclotomic(3).unwrap()
    }

    fn swap() -> Permutation {
        Permutation::from_cycles(2, &[&[1, 2]]).unwrap()
    }

    fn diag_zeta() -> MonomialMap {
        let f = k3();
        let z = f.zeta().unwrap();
        MonomialMap::diagonal(&f, vec![z.clone(), z.square()]).unwrap()
    }

    #[test]
    fn compose_matches_matrix_product() {
        let f = k3();
        let s = MonomialMap::permutation(&f, swap());
        let d = diag_zeta();
        for (a, b) in [(&s, &d), (&d, &s), (&d, &d)] {
            let c = a.compose(b).unwrap();
            assert_eq!(c.matrix(), a.matrix().mul(&b.matrix()).unwrap());
        }
        let id = MonomialMap::identity(&f, 2);
        assert_eq!(id.compose(&d).unwrap(), d);
        let q = Field::rationals();
        let c = MonomialMap::permutation(&q, Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap());
        let ci = c.inverse();
        assert_eq!(ci.sigma().to_string(), "(132)");
        assert!(ci.scalars().iter().all(Scalar::is_one));
        assert!(MonomialMap::from_matrix(&d.matrix()).unwrap() == d);
    }

    #[test]
    fn closure_examples() {
        let f = k3();
        let trivial = MonomialGroup::close_generators(&f, 2, &[], CLOSURE_CAP).unwrap();
        assert_eq!(trivial.order(), 1);
        let c3 = MonomialGroup::close_generators(&f, 2, &[diag_zeta()], CLOSURE_CAP).unwrap();
        assert_eq!(c3.order(), 3);
        assert!(c3.recognize(GroupTarget::Cyclic(3)).unwrap().matched);
        let s3 = MonomialGroup::close_generators(&f, 2, &[MonomialMap::permutation(&f, swap()), diag_zeta()], CLOSURE_CAP)
            .unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.verify_closure());
        assert!(s3.recognize(GroupTarget::Symmetric(3)).unwrap().matched);
        assert!(s3.recognize(GroupTarget::Dihedral(3)).unwrap().matched);
        assert!(!s3.recognize(GroupTarget::Cyclic(6)).unwrap().matched);
        assert_eq!(s3.name().unwrap().as_deref(), Some("S_3"));
        let err = MonomialGroup::close_generators(&f, 2, &[MonomialMap::permutation(&f, swap()), diag_zeta()], 4);
        assert!(matches!(err, Err(Error::CapExceeded { .. })));
        let profile = s3.profile().unwrap();
        assert_eq!(profile.histogram, BTreeMap::from([(1, 1), (2, 3), (3, 2)]));
        assert!(!profile.is_abelian);
        assert_eq!((profile.kernel_order, profile.quotient_order), (3, 2));
    }

    #[test]
    fn unclosed_sets_are_detected() {
        let f = k3();
        let set = vec![MonomialMap::identity(&f, 2), diag_zeta()];
        let g = MonomialGroup::from_elements(&f, 2, set, false).unwrap();
        assert!(!g.is_closed());
        assert_eq!(g.recognize(GroupTarget::Trivial).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn semidirect_recognition() {
        // diag(z, z^2, z^4) and the 3-cycle over Q(ζ_7) generate C_7 ⋊ C_3.
        let f = Field::cyclotomic(7).unwrap();
        let z = f.zeta().unwrap();
        let d = MonomialMap::diagonal(&f, vec![z.clone(), z.pow(2), z.pow(4)]).unwrap();
        let c = MonomialMap::permutation(&f, Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap());
        let g = MonomialGroup::close_generators(&f, 3, &[d, c], CLOSURE_CAP).unwrap();
        assert_eq!(g.order(), 21);
        let r = g.recognize(GroupTarget::SemidirectCyclic(7, 3)).unwrap();
        let Some(Witness::Semidirect { normal, complement, action }) = r.witness else {
            panic!("expected a semidirect witness");
        };
        assert!(normal.is_diagonal());
        assert_eq!(complement.order(), Some(3));
        assert!(action == 2 || action == 4);
        assert_eq!(g.name().unwrap().as_deref(), Some("C_7⋊C_3"));
        assert!(!g.recognize(GroupTarget::Dihedral(7)).unwrap().matched);
    }

    #[test]
    fn symmetric_recognition_by_coxeter_search() {
        // S_3 acting on 3 points but embedded with a nontrivial diagonal twist is
        // still S_3; S_4 from its permutation action on 4 points.
        let q = Field::rationals();
        let s4 = MonomialGroup::close_generators(
            &q,
            4,
            &[
                MonomialMap::permutation(&q, Permutation::from_cycles(4, &[&[1, 2]]).unwrap()),
                MonomialMap::permutation(&q, Permutation::from_cycles(4, &[&[1, 2, 3, 4]]).unwrap()),
            ],
            CLOSURE_CAP,
        )
        .unwrap();
        assert!(s4.recognize(GroupTarget::Symmetric(4)).unwrap().matched);
        // S_3 acting on 4 points: no fast path, Coxeter search.
        let s3 = MonomialGroup::close_generators(
            &q,
            4,
            &[
                MonomialMap::permutation(&q, Permutation::from_cycles(4, &[&[1, 2]]).unwrap()),
                MonomialMap::permutation(&q, Permutation::from_cycles(4, &[&[1, 2, 3]]).unwrap()),
            ],
            CLOSURE_CAP,
        )
        .unwrap();
        assert!(s3.recognize(GroupTarget::Symmetric(3)).unwrap().matched);
        // C_6 has the order of S_3 but is not S_3.
        let c6 = MonomialGroup::close_generators(
            &q,
            5,
            &[MonomialMap::permutation(&q, Permutation::from_cycles(5, &[&[1, 2, 3], &[4, 5]]).unwrap())],
            CLOSURE_CAP,
        )
        .unwrap();
        assert!(!c6.recognize(GroupTarget::Symmetric(3)).unwrap().matched);
        assert_eq!(c6.name().unwrap().as_deref(), Some("C_6"));
    }

    fn arb_map(n: usize) -> impl Strategy<Value = MonomialMap> {
        let f = Field::prime(7).unwrap();
        let images = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (images, prop::collection::vec(1u64..7, n)).prop_map(move |(images, d)| {
            MonomialMap::new(
                &f,
                Permutation::new(images).unwrap(),
                d.into_iter().map(|x| f.residue(x).unwrap()).collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn compose_is_associative_with_inverses((a, b, c) in (arb_map(4), arb_map(4), arb_map(4))) {
            let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
            let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(&ab_c, &a_bc);
            prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
            prop_assert!(a.inverse().compose(&a).unwrap().is_identity());
            let ab = a.compose(&b).unwrap();
            prop_assert_eq!(ab.sigma(), &a.sigma().compose(b.sigma()).unwrap());
            prop_assert_eq!(a.compose(&b).unwrap().matrix(), a.matrix().mul(&b.matrix()).unwrap());
        }

        #[test]
        fn conjugating_a_diagonal_permutes_its_entries((s, d) in (arb_map(4), arb_map(4))) {
            // P_σ⁻¹ · diag(d) · P_σ = diag(d∘σ).
            let f = s.field().clone();
            let p = MonomialMap::permutation(&f, s.sigma().clone());
            let dm = MonomialMap::diagonal(&f, d.scalars().to_vec()).unwrap();
            let lhs = p.inverse().compose(&dm).unwrap().compose(&p).unwrap();
            let expected: Vec<Scalar> = (0..4).map(|i| d.scalars()[s.sigma().apply(i)].clone()).collect();
            prop_assert_eq!(lhs, MonomialMap::diagonal(&f, expected).unwrap());
        }

        #[test]
        fn closure_of_random_generators_is_a_group(gens in prop::collection::vec(arb_map(3), 0..3)) {
            let f = Field::prime(7).unwrap();
            let g = MonomialGroup::close_generators(&f, 3, &gens, CLOSURE_CAP).unwrap();
            prop_assert!(g.verify_closure());
            let profile = g.profile().unwrap();
            prop_assert_eq!(profile.histogram.values().sum::<u64>(), g.order());
            prop_assert_eq!(g.order(), profile.kernel_order * profile.quotient_order);
            let greedy = g.generators().unwrap();
            let regenerated = MonomialGroup::close_generators(&f, 3, &greedy, CLOSURE_CAP).unwrap();
            prop_assert_eq!(regenerated.elements(), g.elements());
        }
    }
}
