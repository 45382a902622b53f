//! Concrete families of idempotent evolution algebras.

use std::fmt;
use std::path::Path;

use crate::algebra::EvolutionAlgebra;
use crate::digraph::{Digraph, Permutation};
use crate::error::{Error, Result};
use crate::groups::MonomialMap;
use crate::matrix::Matrix;
use crate::scalars::{Field, FieldDescriptor, RootsOutcome, Scalar};
use crate::solver::{diagonal_subgroup, SolveOutcome};

/// `K_n`: zero diagonal, ones elsewhere.
pub fn complete_graph_algebra(n: usize, field: &Field) -> Result<EvolutionAlgebra> {
    if n < 2 {
        return Err(Error::Inadmissible(format!("K_n needs n >= 2, got {n}")));
    }
    idempotent(Matrix::from_fn(field, n, n, |i, j| field.from_i64((i != j) as i64)))
}

/// `A(a, b)`: `a` on the diagonal, `b` elsewhere.
pub fn two_param_algebra(n: usize, a: &Scalar, b: &Scalar, field: &Field) -> Result<EvolutionAlgebra> {
    if n < 1 {
        return Err(Error::Inadmissible("dimension must be positive".into()));
    }
    for x in [a, b] {
        if x.field() != field {
            return Err(Error::FieldMismatch {
                left: x.field().to_string(),
                right: field.to_string(),
            });
        }
    }
    idempotent(Matrix::from_fn(field, n, n, |i, j| if i == j { a.clone() } else { b.clone() }))
}

/// `P_σ·diag(b)` for `σ = (1 2 … n)`, so `e_j² = b_j e_{j+1}`; `b` defaults to ones.
pub fn cycle_algebra(n: usize, field: &Field, b: Option<&[Scalar]>) -> Result<EvolutionAlgebra> {
    if n < 1 {
        return Err(Error::Inadmissible("dimension must be positive".into()));
    }
    let b: Vec<Scalar> = match b {
        Some(b) if b.len() != n => {
            return Err(Error::DimensionMismatch(format!("{} weights for a {n}-cycle", b.len())));
        }
        Some(b) => b.to_vec(),
        None => vec![field.one(); n],
    };
    if b.iter().any(Scalar::is_zero) {
        return Err(Error::Inadmissible("cycle weights must be nonzero".into()));
    }
    if b.iter().any(|x| x.field() != field) {
        return Err(Error::FieldMismatch {
            left: b[0].field().to_string(),
            right: field.to_string(),
        });
    }
    idempotent(Matrix::from_fn(field, n, n, |i, j| {
        if (j + 1) % n == i {
            b[j].clone()
        } else {
            field.zero()
        }
    }))
}

fn idempotent(a: Matrix) -> Result<EvolutionAlgebra> {
    let alg = EvolutionAlgebra::new(a)?;
    alg.require_idempotent()?;
    Ok(alg)
}

#[derive(Clone, Debug)]
pub struct FruchtLift {
    pub algebra: EvolutionAlgebra,
    /// The `m` in `B + m·I`.
    pub shift: u64,
}

/// `B + m·I` for the adjacency matrix `B` of a simple undirected graph, with
/// the least `m` making it nonsingular and its diagonal subgroup trivial.
///
/// Any `m > 0` has a nonzero diagonal and hence a trivial diagonal subgroup;
/// `m = 0` is taken only when that holds too.
pub fn frucht_lift(graph: &Digraph, field: &Field) -> Result<FruchtLift> {
    if field.characteristic() != 0 {
        return Err(Error::Inadmissible(format!("the lift needs characteristic 0, got {field}")));
    }
    let n = graph.n();
    if n == 0 {
        return Err(Error::InvalidGraph("empty graph".into()));
    }
    if !graph.is_symmetric() {
        return Err(Error::InvalidGraph("adjacency matrix is not symmetric".into()));
    }
    if (0..n).any(|i| graph.has_edge(i, i)) {
        return Err(Error::InvalidGraph("simple graphs have no loops".into()));
    }
    // det(B + xI) has at most n roots, so one of 1..=n+1 works.
    for m in 0..=(n as u64 + 1) {
        let a = Matrix::from_fn(field, n, n, |i, j| {
            if i == j {
                field.from_i64(m as i64)
            } else {
                field.from_i64(graph.has_edge(i, j) as i64)
            }
        });
        let alg = EvolutionAlgebra::new(a)?;
        if !alg.is_idempotent() {
            continue;
        }
        if m == 0 && diagonal_subgroup(&alg)?.lattice.order() != 1 {
            continue;
        }
        return Ok(FruchtLift { algebra: alg, shift: m });
    }
    unreachable!("a degree-n polynomial has at most n roots")
}

pub const DEFAULT_SAMPLES: [i64; 3] = [2, 3, -1];

#[derive(Clone, Debug)]
pub struct Representative {
    pub label: String,
    pub algebra: EvolutionAlgebra,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Omission {
    pub label: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct Representatives {
    pub items: Vec<Representative>,
    pub omitted: Vec<Omission>,
}

impl Representatives {
    fn push(&mut self, label: String, a: Matrix) -> Result<()> {
        let algebra = idempotent(a)?;
        self.items.push(Representative { label, algebra });
        Ok(())
    }

    fn omit(&mut self, label: String, reason: impl Into<String>) {
        self.omitted.push(Omission {
            label,
            reason: reason.into(),
        });
    }
}

/// The default samples `{2, 3, -1}` mapped into the field.
pub fn default_samples(field: &Field) -> Vec<Scalar> {
    DEFAULT_SAMPLES.iter().map(|&c| field.from_i64(c)).collect()
}

/// Representatives of the idempotent algebras with `Aut ≅ S_n`, with the
/// continuous family instantiated at each sample `c`. Items whose conditions
/// fail over this field are listed under `omitted` with the reason.
pub fn sn_representatives(n: usize, field: &Field, samples: &[Scalar]) -> Result<Representatives> {
    if n < 1 {
        return Err(Error::Inadmissible("dimension must be positive".into()));
    }
    let mut cs: Vec<Scalar> = Vec::new();
    for c in samples {
        if c.field() != field {
            return Err(Error::FieldMismatch {
                left: c.field().to_string(),
                right: field.to_string(),
            });
        }
        if !cs.contains(c) {
            cs.push(c.clone());
        }
    }
    let cube_roots = field.roots_of_unity(3).len();
    let char2 = field.characteristic() == 2;
    let one = field.one();
    let family = |c: &Scalar| Matrix::from_fn(field, n, n, |i, j| if i == j { one.clone() } else { c.clone() });
    let mut out = Representatives::default();
    match n {
        1 => out.push("(1)".into(), Matrix::identity(field, 1))?,
        2 => {
            for c in &cs {
                let label = format!("A(1,{c})");
                if c.square() == one {
                    out.omit(label, "needs c^2 != 1");
                } else {
                    out.push(label, family(c))?;
                }
            }
            if cube_roots == 1 {
                out.push("K_2".into(), Matrix::from_i64(field, &[vec![0, 1], vec![1, 0]])?)?;
            } else {
                out.omit("K_2".into(), "x^3 - 1 has three roots in the field");
            }
        }
        3 => {
            let minus_half = if char2 { None } else { Some((-&one).checked_div(&field.from_i64(2))?) };
            for c in &cs {
                let label = format!("A(1,{c})");
                match &minus_half {
                    None => out.omit(label, "not defined in characteristic 2"),
                    Some(h) if *c == one || c == h => out.omit(label, "needs c != 1, -1/2"),
                    Some(_) => out.push(label, family(c))?,
                }
            }
            if cube_roots == 3 {
                out.push(
                    "K_2+(1)".into(),
                    Matrix::from_i64(field, &[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]])?,
                )?;
            } else {
                out.omit("K_2+(1)".into(), "x^3 - 1 lacks three distinct roots in the field");
            }
            if char2 {
                out.omit("K_3".into(), "not defined in characteristic 2");
            } else {
                out.push("K_3".into(), complete_graph_algebra(3, field)?.structure().clone())?;
            }
        }
        _ => {
            let excluded = |c: &Scalar| *c == one || (&one + &(&field.from_i64(n as i64 - 1) * c)).is_zero();
            for c in &cs {
                let label = format!("A(1,{c})");
                if excluded(c) {
                    out.omit(label, format!("needs c != 1 and 1 + {}c != 0", n - 1));
                } else {
                    out.push(label, family(c))?;
                }
            }
            let label = format!("K_{n}");
            let p = field.characteristic() as usize;
            if p != 0 && (n - 1).is_multiple_of(p) {
                out.omit(label, format!("characteristic divides {}", n - 1));
            } else {
                out.push(label, complete_graph_algebra(n, field)?.structure().clone())?;
            }
        }
    }
    Ok(out)
}

/// The diagonal maps `D` with `B·D^(2) = D·P_σ` for `B = P_σ·diag(b)`, i.e.
/// the isomorphisms `E(P_σ) → E(B)` fixing the labels, found by solving
/// `(∏ b_i^(2^(n-i)))·d_1^(2^n - 1) = 1` and propagating `d_{i+1} = b_i·d_i²`.
pub fn cycle_normalizer(b: &[Scalar], field: &Field) -> Result<SolveOutcome> {
    let n = b.len();
    if n == 0 {
        return Err(Error::Inadmissible("empty weight vector".into()));
    }
    if n > 63 {
        return Err(Error::CapExceeded {
            what: "cycle length".into(),
            limit: 63,
        });
    }
    if b.iter().any(Scalar::is_zero) {
        return Err(Error::Inadmissible("cycle weights must be nonzero".into()));
    }
    // ∏ b_i^(2^(n-i)) by Horner: ((b_1² · b_2)² · …)² · b_n.
    let mut prod = field.one();
    for bi in b {
        prod = &prod.square() * bi;
    }
    let k = (1u64 << n) - 1;
    let roots = match field.kth_roots(&prod.inv()?, k)? {
        RootsOutcome::Roots(r) => r,
        RootsOutcome::Indeterminate(eq) => return Ok(SolveOutcome::Indeterminate(vec![eq])),
    };
    if roots.is_empty() {
        return Ok(SolveOutcome::NoSolution);
    }
    let mut maps = roots
        .into_iter()
        .map(|d1| {
            let mut d = vec![d1];
            for bi in &b[..n - 1] {
                let next = bi * &d.last().expect("nonempty").square();
                d.push(next);
            }
            MonomialMap::diagonal(field, d)
        })
        .collect::<Result<Vec<_>>>()?;
    maps.sort();
    Ok(SolveOutcome::Complete(maps))
}

#[derive(Clone, Debug)]
pub enum Family {
    CompleteGraph(usize),
    TwoParam { n: usize, a: String, b: String },
    Cycle { n: usize, b: Option<Vec<String>> },
    FruchtLift(Digraph),
    /// 1-based index into [`sn_representatives`] with the default samples.
    SnRepresentative { n: usize, index: usize },
    SmallCase(String),
}

#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub family: Family,
    pub field: FieldDescriptor,
}

#[derive(Clone, Debug)]
pub struct Built {
    pub label: String,
    pub algebra: EvolutionAlgebra,
    pub frucht_shift: Option<u64>,
}

pub const SMALL_CASES: [&str; 2] = ["unit", "swap-loop"];

fn parse_params(s: &str) -> Result<Vec<(&str, &str)>> {
    s.split(',')
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{p}`")))
        })
        .collect()
}

fn param<'a>(params: &[(&'a str, &'a str)], key: &str) -> Result<&'a str> {
    params
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| Error::Parse(format!("missing parameter `{key}`")))
}

fn parse_usize(s: &str) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse(format!("not a nonnegative integer: `{s}`")))
}

impl FamilySpec {
    /// Parses `complete:n=4`, `twoparam:n=4,a=1,b=2`, `cycle:n=3,b=128;1;1`,
    /// `frucht:<graph.json>`, `sn:n=3,index=2` or `small:<tag>`. A Frucht
    /// graph file is read here.
    pub fn parse(text: &str, field: FieldDescriptor) -> Result<FamilySpec> {
        let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
        let family = match kind.trim() {
            "complete" => Family::CompleteGraph(parse_usize(param(&parse_params(rest)?, "n")?)?),
            "twoparam" => {
                let p = parse_params(rest)?;
                Family::TwoParam {
                    n: parse_usize(param(&p, "n")?)?,
                    a: param(&p, "a")?.to_string(),
                    b: param(&p, "b")?.to_string(),
                }
            }
            "cycle" => {
                let p = parse_params(rest)?;
                let b = p
                    .iter()
                    .find(|(k, _)| *k == "b")
                    .map(|(_, v)| v.split(';').map(|x| x.trim().to_string()).collect());
                Family::Cycle {
                    n: parse_usize(param(&p, "n")?)?,
                    b,
                }
            }
            "frucht" => Family::FruchtLift(crate::io::read_graph(Path::new(rest))?),
            "sn" => {
                let p = parse_params(rest)?;
                Family::SnRepresentative {
                    n: parse_usize(param(&p, "n")?)?,
                    index: parse_usize(param(&p, "index")?)?,
                }
            }
            "small" if SMALL_CASES.contains(&rest) => Family::SmallCase(rest.to_string()),
            "small" => return Err(Error::Parse(format!("unknown small case `{rest}`"))),
            other => return Err(Error::Parse(format!("unknown family `{other}`"))),
        };
        Ok(FamilySpec { family, field })
    }

    pub fn build(&self) -> Result<Built> {
        let field = Field::new(self.field)?;
        let built = |label: String, algebra| Built {
            label,
            algebra,
            frucht_shift: None,
        };
        Ok(match &self.family {
            Family::CompleteGraph(n) => built(format!("K_{n}"), complete_graph_algebra(*n, &field)?),
            Family::TwoParam { n, a, b } => {
                let (a, b) = (field.parse(a)?, field.parse(b)?);
                built(format!("A({a},{b})"), two_param_algebra(*n, &a, &b, &field)?)
            }
            Family::Cycle { n, b } => {
                let b = b
                    .as_ref()
                    .map(|b| b.iter().map(|x| field.parse(x)).collect::<Result<Vec<_>>>())
                    .transpose()?;
                built(format!("cycle_{n}"), cycle_algebra(*n, &field, b.as_deref())?)
            }
            Family::FruchtLift(g) => {
                let lift = frucht_lift(g, &field)?;
                Built {
                    label: format!("frucht(m={})", lift.shift),
                    algebra: lift.algebra,
                    frucht_shift: Some(lift.shift),
                }
            }
            Family::SnRepresentative { n, index } => {
                let reps = sn_representatives(*n, &field, &default_samples(&field))?;
                let count = reps.items.len();
                let rep = index
                    .checked_sub(1)
                    .and_then(|i| reps.items.into_iter().nth(i))
                    .ok_or_else(|| Error::Inadmissible(format!("index {index} outside 1..={count}")))?;
                built(rep.label, rep.algebra)
            }
            Family::SmallCase(tag) => {
                let rows: Vec<Vec<i64>> = match tag.as_str() {
                    "unit" => vec![vec![1]],
                    _ => vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]],
                };
                built(tag.clone(), idempotent(Matrix::from_i64(&field, &rows)?)?)
            }
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::CompleteGraph(n) => write!(f, "complete:n={n}"),
            Family::TwoParam { n, a, b } => write!(f, "twoparam:n={n},a={a},b={b}"),
            Family::Cycle { n, b: None } => write!(f, "cycle:n={n}"),
            Family::Cycle { n, b: Some(b) } => write!(f, "cycle:n={n},b={}", b.join(";")),
            Family::FruchtLift(g) => write!(f, "frucht:<graph on {} vertices>", g.n()),
            Family::SnRepresentative { n, index } => write!(f, "sn:n={n},index={index}"),
            Family::SmallCase(tag) => write!(f, "small:{tag}"),
        }
    }
}

/// The `n`-cycle as an undirected graph.
pub fn cycle_graph(n: usize) -> Result<Digraph> {
    Digraph::from_adjacency(
        (0..n)
            .map(|i| (0..n).map(|j| n > 2 && ((i + 1) % n == j || (j + 1) % n == i)).collect())
            .collect(),
    )
}

/// The path `1 - 2 - … - n`.
pub fn path_graph(n: usize) -> Result<Digraph> {
    Digraph::from_adjacency(
        (0..n)
            .map(|i| (0..n).map(|j| i + 1 == j || j + 1 == i).collect())
            .collect(),
    )
}

/// The complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Result<Digraph> {
    Digraph::from_adjacency((0..n).map(|i| (0..n).map(|j| i != j).collect()).collect())
}

/// The permutation `(1 2 … n)`.
pub fn long_cycle(n: usize) -> Permutation {
    Permutation::new((0..n).map(|i| (i + 1) % n).collect()).expect("a cycle is a bijection")
}
