//! The zero-pattern digraph Γ_A, permutations, graph automorphisms and the
//! nonzero transversals of a structure matrix.
//!
//! Permutations are stored 0-based (`images[i] = σ(i)`); JSON and cycle
//! notation use 1-based labels.

use std::fmt;
use std::ops::ControlFlow;

use num::Integer;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Largest vertex count accepted by the exhaustive automorphism search.
pub const AUTOMORPHISM_CAP: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From 0-based images; fails unless `images` is a bijection of `0..n`.
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::Parse(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation { images })
    }

    /// From 1-based images, as in the JSON form `[2,3,1]`.
    pub fn from_one_based(images: &[usize]) -> Result<Permutation> {
        if images.contains(&0) {
            return Err(Error::Parse(format!("{images:?} is not 1-based")));
        }
        Permutation::new(images.iter().map(|x| x - 1).collect())
    }

    /// From disjoint cycles in 1-based labels, e.g. `&[&[1, 2, 3]]` for (123).
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Permutation> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                if x == 0 || x > n || y == 0 || y > n {
                    return Err(Error::Parse(format!("cycle label out of range 1..={n}")));
                }
                images[x - 1] = y - 1;
            }
        }
        Permutation::new(images)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "permutations on {} and {} points",
                self.len(),
                other.len()
            )));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles (0-based), each starting at its smallest point, fixed
    /// points included as 1-cycles, ordered by first point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based labels; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        let sep = if self.len() >= 10 { " " } else { "" };
        for c in cycles {
            let labels: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", labels.join(sep))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A digraph on `0..n` given by its 0/1 adjacency matrix; loops allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    adj: Vec<Vec<bool>>,
}

impl Digraph {
    pub fn from_adjacency(adj: Vec<Vec<bool>>) -> Result<Digraph> {
        let n = adj.len();
        if adj.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidGraph("adjacency matrix is not square".into()));
        }
        Ok(Digraph { adj })
    }

    /// Γ_A: an edge `i → j` wherever `a_ij ≠ 0`.
    pub fn of_matrix(a: &Matrix) -> Digraph {
        Digraph { adj: a.pattern() }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.adj
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| self.adj[i][j] == self.adj[j][i]))
    }

    fn invariant(&self, v: usize) -> (usize, usize, bool) {
        let out = self.adj[v].iter().filter(|&&e| e).count();
        let inn = self.adj.iter().filter(|r| r[v]).count();
        (inn, out, self.adj[v][v])
    }

    /// Whether `σ` maps edges of `self` exactly onto edges of `other`.
    pub fn is_isomorphism(&self, other: &Digraph, sigma: &Permutation) -> bool {
        let n = self.n();
        n == other.n()
            && sigma.len() == n
            && (0..n).all(|i| (0..n).all(|j| self.adj[i][j] == other.adj[sigma.apply(i)][sigma.apply(j)]))
    }

    /// Visits every isomorphism `self → other` in lexicographic order of image
    /// vectors until `visit` breaks.
    pub fn for_each_isomorphism<B>(
        &self,
        other: &Digraph,
        mut visit: impl FnMut(&Permutation) -> ControlFlow<B>,
    ) -> Result<Option<B>> {
        let n = self.n();
        if n > AUTOMORPHISM_CAP {
            return Err(Error::CapExceeded {
                what: format!("graph search on {n} vertices"),
                limit: AUTOMORPHISM_CAP as u64,
            });
        }
        if n != other.n() {
            return Ok(None);
        }
        let inv_a: Vec<_> = (0..n).map(|v| self.invariant(v)).collect();
        let inv_b: Vec<_> = (0..n).map(|v| other.invariant(v)).collect();
        let mut sorted_a = inv_a.clone();
        let mut sorted_b = inv_b.clone();
        sorted_a.sort_unstable();
        sorted_b.sort_unstable();
        if sorted_a != sorted_b {
            return Ok(None);
        }
        let mut images = vec![usize::MAX; n];
        let mut used = vec![false; n];
        Ok(self.extend(other, &inv_a, &inv_b, 0, &mut images, &mut used, &mut visit))
    }

    #[allow(clippy::too_many_arguments)]
    fn extend<B>(
        &self,
        other: &Digraph,
        inv_a: &[(usize, usize, bool)],
        inv_b: &[(usize, usize, bool)],
        v: usize,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        visit: &mut impl FnMut(&Permutation) -> ControlFlow<B>,
    ) -> Option<B> {
        let n = self.n();
        if v == n {
            let sigma = Permutation { images: images.clone() };
            return match visit(&sigma) {
                ControlFlow::Break(b) => Some(b),
                ControlFlow::Continue(()) => None,
            };
        }
        for w in 0..n {
            if used[w] || inv_a[v] != inv_b[w] {
                continue;
            }
            // Edges between v and every already-mapped vertex must agree.
            let consistent = (0..v).all(|u| {
                self.adj[v][u] == other.adj[w][images[u]] && self.adj[u][v] == other.adj[images[u]][w]
            });
            if !consistent {
                continue;
            }
            images[v] = w;
            used[w] = true;
            if let Some(b) = self.extend(other, inv_a, inv_b, v + 1, images, used, visit) {
                return Some(b);
            }
            used[w] = false;
        }
        images[v] = usize::MAX;
        None
    }

    /// All isomorphisms `self → other`, lexicographically ordered.
    pub fn isomorphisms_to(&self, other: &Digraph) -> Result<Vec<Permutation>> {
        let mut out = Vec::new();
        self.for_each_isomorphism::<()>(other, |s| {
            out.push(s.clone());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    /// Aut(Γ), lexicographically ordered; the identity comes first.
    pub fn automorphisms(&self) -> Result<Vec<Permutation>> {
        self.isomorphisms_to(self)
    }
}

/// Lazy enumeration of the permutations `τ` with `a_{τ(j) j} ≠ 0` for all `j`,
/// in lexicographic order of image vectors.
pub struct Transversals {
    support: Vec<Vec<bool>>,
    /// `choice[j]` is the row currently assigned to column `j`.
    choice: Vec<usize>,
    used: Vec<bool>,
    /// Number of columns currently assigned.
    depth: usize,
    started: bool,
    done: bool,
}

impl Transversals {
    pub fn new(a: &Matrix) -> Transversals {
        Transversals::from_pattern(a.pattern())
    }

    /// From a row-major 0/1 pattern (`pattern[i][j]` set when `a_ij ≠ 0`).
    pub fn from_pattern(pattern: Vec<Vec<bool>>) -> Transversals {
        let n = pattern.len();
        Transversals {
            support: pattern,
            choice: vec![0; n],
            used: vec![false; n],
            depth: 0,
            started: false,
            done: false,
        }
    }

    /// Whether the unassigned columns `from..` can still be matched to unused
    /// rows (Hall's condition via augmenting paths).
    fn completable(&self, from: usize) -> bool {
        let n = self.support.len();
        let mut row_owner: Vec<Option<usize>> = vec![None; n];
        for col in from..n {
            let mut visited = vec![false; n];
            if !self.augment(col, &mut row_owner, &mut visited) {
                return false;
            }
        }
        true
    }

    fn augment(&self, col: usize, row_owner: &mut Vec<Option<usize>>, visited: &mut Vec<bool>) -> bool {
        for row in 0..self.support.len() {
            if self.used[row] || visited[row] || !self.support[row][col] {
                continue;
            }
            visited[row] = true;
            let free = match row_owner[row] {
                None => true,
                Some(c) => self.augment(c, row_owner, visited),
            };
            if free {
                row_owner[row] = Some(col);
                return true;
            }
        }
        false
    }

    /// Tries to place column `depth` at a row `>= start`; returns success.
    fn place(&mut self, start: usize) -> bool {
        let n = self.support.len();
        let col = self.depth;
        for row in start..n {
            if self.used[row] || !self.support[row][col] {
                continue;
            }
            self.used[row] = true;
            if self.completable(col + 1) {
                self.choice[col] = row;
                self.depth += 1;
                return true;
            }
            self.used[row] = false;
        }
        false
    }

    /// Undoes the last column and retries it from its next row; backtracks
    /// further when exhausted.
    fn advance(&mut self) -> bool {
        loop {
            if self.depth == 0 {
                return false;
            }
            self.depth -= 1;
            let col = self.depth;
            let row = self.choice[col];
            self.used[row] = false;
            if self.place(row + 1) {
                return true;
            }
        }
    }

    fn fill(&mut self) -> bool {
        while self.depth < self.support.len() {
            if !self.place(0) {
                return false;
            }
        }
        true
    }
}

impl Iterator for Transversals {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let n = self.support.len();
        let ok = if !self.started {
            self.started = true;
            if n == 0 {
                self.done = true;
                return Some(Permutation::identity(0));
            }
            self.completable(0) && self.fill()
        } else {
            // Pruning guarantees every placed prefix extends, so `fill` succeeds.
            self.advance() && self.fill()
        };
        if !ok {
            self.done = true;
            return None;
        }
        Some(Permutation {
            images: self.choice.clone(),
        })
    }
}

/// `t_A`: the least order of a transversal permutation.
pub fn min_transversal_order(a: &Matrix) -> Result<u64> {
    let n = a.rows();
    if (0..n).all(|i| !a.get(i, i).is_zero()) {
        return Ok(1);
    }
    let mut best: Option<u64> = None;
    for tau in Transversals::new(a) {
        let o = tau.order();
        best = Some(best.map_or(o, |b| b.min(o)));
        // Order 1 is only the identity, excluded above.
        if o == 2 {
            break;
        }
    }
    best.ok_or(Error::NoTransversal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Field;
    use proptest::prelude::*;

    fn all_perms(n: usize) -> Vec<Permutation> {
        fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation::new(cur.clone()).unwrap());
                return;
            }
            for x in 0..n {
                if !cur.contains(&x) {
                    cur.push(x);
                    go(n, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), &mut out);
        out
    }

    fn graph(rows: &[&[u8]]) -> Digraph {
        Digraph::from_adjacency(rows.iter().map(|r| r.iter().map(|&x| x == 1).collect()).collect()).unwrap()
    }

    fn brute_automorphisms(g: &Digraph) -> Vec<Permutation> {
        all_perms(g.n()).into_iter().filter(|s| g.is_isomorphism(g, s)).collect()
    }

    #[test]
    fn permutation_operations() {
        let s = Permutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(s.order(), 2);
        let c = Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let t = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(c.compose(&t).unwrap().to_string(), "(13)");
        let u = Permutation::from_cycles(5, &[&[1, 2, 3], &[4, 5]]).unwrap();
        assert_eq!(u.order(), 6);
        assert_eq!(u.to_string(), "(123)(45)");
        assert_eq!(c.inverse().to_string(), "(132)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(c.one_based(), vec![2, 3, 1]);
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(c.compose(&s).is_err());
    }

    #[test]
    fn automorphism_examples() {
        let cyc3 = graph(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        let auts = cyc3.automorphisms().unwrap();
        assert_eq!(auts.len(), 3);
        assert_eq!(auts, brute_automorphisms(&cyc3));

        let c5 = Digraph::from_adjacency(
            (0..5).map(|i| (0..5).map(|j| (i + 1) % 5 == j || (j + 1) % 5 == i).collect()).collect(),
        )
        .unwrap();
        assert_eq!(c5.automorphisms().unwrap().len(), 10);
        assert_eq!(brute_automorphisms(&c5).len(), 10);

        let k4 = Digraph::from_adjacency((0..4).map(|i| (0..4).map(|j| i != j).collect()).collect()).unwrap();
        assert_eq!(k4.automorphisms().unwrap().len(), 24);

        let big = Digraph::from_adjacency(vec![vec![false; 13]; 13]).unwrap();
        assert!(matches!(big.automorphisms(), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn transversal_examples() {
        let q = Field::rationals();
        let id = Matrix::identity(&q, 3);
        assert_eq!(Transversals::new(&id).collect::<Vec<_>>(), vec![Permutation::identity(3)]);
        let p123 = Matrix::from_i64(&q, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let ts: Vec<_> = Transversals::new(&p123).collect();
        assert_eq!(ts, vec![Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap()]);
        let k3 = Matrix::from_i64(&q, &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        let ts: Vec<String> = Transversals::new(&k3).map(|t| t.to_string()).collect();
        assert_eq!(ts, vec!["(123)", "(132)"]);
        let singular = Matrix::from_i64(&q, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(Transversals::new(&singular).count(), 0);
    }

    #[test]
    fn transversal_order_examples() {
        let q = Field::rationals();
        let full = Matrix::from_i64(&q, &[vec![1, 5], vec![2, 3]]).unwrap();
        assert_eq!(min_transversal_order(&full).unwrap(), 1);
        for n in 2..=6usize {
            let p = Matrix::from_fn(&q, n, n, |i, j| q.from_i64(((j + 1) % n == i) as i64));
            assert_eq!(min_transversal_order(&p).unwrap(), n as u64);
        }
        let k3 = Matrix::from_i64(&q, &[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]).unwrap();
        assert_eq!(min_transversal_order(&k3).unwrap(), 3);
        let singular = Matrix::from_i64(&q, &[vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(min_transversal_order(&singular).unwrap_err(), Error::NoTransversal);
    }

    fn arb_pattern() -> impl Strategy<Value = Vec<Vec<bool>>> {
        (1usize..=6).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(prop::bool::weighted(0.45), n), n))
    }

    proptest! {
        #[test]
        fn transversals_count_is_permanent(pattern in arb_pattern()) {
            let n = pattern.len();
            let listed: Vec<Permutation> = Transversals::from_pattern(pattern.clone()).collect();
            let brute: Vec<Permutation> = all_perms(n)
                .into_iter()
                .filter(|t| (0..n).all(|j| pattern[t.apply(j)][j]))
                .collect();
            prop_assert_eq!(listed, brute);
        }

        #[test]
        fn automorphisms_match_brute_force_and_form_group(pattern in arb_pattern()) {
            let g = Digraph::from_adjacency(pattern).unwrap();
            let auts = g.automorphisms().unwrap();
            prop_assert_eq!(&auts, &brute_automorphisms(&g));
            prop_assert!(auts[0].is_identity());
            for s in &auts {
                prop_assert!(auts.contains(&s.inverse()));
                for t in &auts {
                    prop_assert!(auts.contains(&s.compose(t).unwrap()));
                }
            }
        }

        #[test]
        fn automorphism_iff_commutes_with_pattern(pattern in arb_pattern(), seed in 0usize..720) {
            let n = pattern.len();
            let perms = all_perms(n);
            let s = &perms[seed % perms.len()];
            let g = Digraph::from_adjacency(pattern.clone()).unwrap();
            // P_σ A = A P_σ over 0/1 integer matrices, with (P_σ)_{ij} = [σ(j) = i].
            let p = |i: usize, j: usize| (s.apply(j) == i) as i32;
            let a = |i: usize, j: usize| pattern[i][j] as i32;
            let commutes = (0..n).all(|i| (0..n).all(|j| {
                let lhs: i32 = (0..n).map(|k| p(i, k) * a(k, j)).sum();
                let rhs: i32 = (0..n).map(|k| a(i, k) * p(k, j)).sum();
                lhs == rhs
            }));
            prop_assert_eq!(commutes, g.is_isomorphism(&g, s));
        }

        #[test]
        fn transversal_order_invariant_under_relabeling(pattern in arb_pattern(), seed in 0usize..720) {
            let n = pattern.len();
            let q = Field::rationals();
            let a = Matrix::from_fn(&q, n, n, |i, j| q.from_i64(pattern[i][j] as i64));
            let perms = all_perms(n);
            let s = &perms[seed % perms.len()];
            let relabeled = Matrix::from_fn(&q, n, n, |i, j| a.get(s.apply(i), s.apply(j)).clone());
            prop_assert_eq!(min_transversal_order(&a).ok(), min_transversal_order(&relabeled).ok());
        }
    }
}
