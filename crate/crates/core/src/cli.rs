//! Subcommands behind the `evoalg` binary. Each returns an exit code and a
//! JSON report; printing and timing are left to the caller.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::EvolutionAlgebra;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::factory::FamilySpec;
use crate::io::{self, MatrixFile};
use crate::matrix::Matrix;
use crate::scalars::{Field, FieldDescriptor};
use crate::solver::{automorphism_group, diagonal_subgroup, isomorphism, IsomorphismOutcome};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_SINGULAR: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;
pub const EXIT_NEGATIVE: i32 = 4;
pub const EXIT_CAP: i32 = 5;

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub code: i32,
    pub body: Value,
}

impl Report {
    fn ok(body: Value) -> Report {
        Report { code: EXIT_OK, body }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Singular | Error::NoTransversal => EXIT_SINGULAR,
        Error::Indeterminate(_) => EXIT_INDETERMINATE,
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

pub fn error_report(e: &Error) -> Report {
    let mut body = json!({"status": "error", "message": e.to_string()});
    if let Error::Indeterminate(eqs) = e {
        body["status"] = json!("indeterminate");
        body["unsolved"] = json!(eqs);
    }
    Report {
        code: exit_code(e),
        body,
    }
}

fn report(r: Result<Report>) -> Report {
    r.unwrap_or_else(|e| error_report(&e))
}

fn parse_field(field: Option<&str>) -> Result<Option<Field>> {
    field.map(|f| Field::new(f.parse::<FieldDescriptor>()?)).transpose()
}

fn load(path: &Path, field: Option<&str>) -> Result<EvolutionAlgebra> {
    EvolutionAlgebra::new(io::read_matrix(path, parse_field(field)?.as_ref())?)
}

/// Automorphism group, its name when recognized, the diagonal subgroup and
/// the size of Aut(Γ_A).
pub fn cmd_aut(path: &Path, field: Option<&str>) -> Report {
    report((|| {
        let alg = load(path, field)?;
        let aut = automorphism_group(&alg)?;
        let diag = diagonal_subgroup(&alg)?;
        let mut body = json!({
            "status": "ok",
            "field": alg.field().to_string(),
            "n": alg.n(),
            "group": io::group_json(&aut.group)?,
            "diagonal": io::diagonal_json(&diag),
            "graph_automorphisms": aut.graph_automorphisms,
        });
        if aut.unsolved.is_empty() {
            return Ok(Report::ok(body));
        }
        body["status"] = json!("indeterminate");
        body["unsolved"] = json!(aut.unsolved);
        Ok(Report {
            code: EXIT_INDETERMINATE,
            body,
        })
    })())
}

pub fn cmd_diag(path: &Path, field: Option<&str>) -> Report {
    report((|| {
        let alg = load(path, field)?;
        let diag = diagonal_subgroup(&alg)?;
        let mut body = json!({"status": "ok", "field": alg.field().to_string(), "n": alg.n()});
        body["diagonal"] = io::diagonal_json(&diag);
        if let Some(g) = &diag.group {
            body["elements"] = json!(g.elements().iter().map(io::map_json).collect::<Vec<_>>());
        }
        Ok(Report::ok(body))
    })())
}

/// Listed automorphisms are capped; the count is always exact.
pub const GRAPH_LIST_CAP: usize = 1000;

/// Aut(Γ) for a graph file (`adjacency`) or the pattern of a matrix file.
pub fn cmd_graph_aut(path: &Path, field: Option<&str>) -> Report {
    report((|| {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        let graph = if value.get("adjacency").is_some() {
            io::read_graph(path)?
        } else {
            let file: MatrixFile = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
            Digraph::of_matrix(&file.to_matrix(parse_field(field)?.as_ref())?)
        };
        let mut count = 0u64;
        let mut listed = Vec::new();
        graph.for_each_isomorphism(&graph, |s| {
            count += 1;
            if listed.len() < GRAPH_LIST_CAP {
                listed.push(s.one_based());
            }
            ControlFlow::<()>::Continue(())
        })?;
        Ok(Report::ok(json!({
            "status": "ok",
            "n": graph.n(),
            "count": count,
            "automorphisms": listed,
            "truncated": count as usize > listed.len(),
        })))
    })())
}

/// Certificate `E(A) → E(B)`, or the number of pattern isomorphisms tried.
pub fn cmd_iso(a: &Path, b: &Path, field: Option<&str>) -> Report {
    report((|| {
        let (ea, eb) = (load(a, field)?, load(b, field)?);
        Ok(match isomorphism(&ea, &eb)? {
            IsomorphismOutcome::Isomorphic(cert) => Report::ok(json!({
                "status": "isomorphic",
                "certificate": io::certificate_json(&cert),
                "cycle_notation": cert.map.sigma().to_string(),
            })),
            IsomorphismOutcome::NonIsomorphic { candidates } => Report {
                code: EXIT_NEGATIVE,
                body: json!({"status": "non-isomorphic", "candidates_tried": candidates}),
            },
        })
    })())
}

/// Builds a family member; the matrix goes to `out` if given, else into the report.
pub fn cmd_make(spec: &str, field: Option<&str>, out: Option<&Path>) -> Report {
    report((|| {
        let desc = field.unwrap_or("Q").parse::<FieldDescriptor>()?;
        let built = FamilySpec::parse(spec, desc)?.build()?;
        let file = MatrixFile::from_matrix(built.algebra.structure(), built.frucht_shift);
        let mut body = json!({"status": "ok", "label": built.label});
        match out {
            Some(path) => {
                io::write_json(path, &file)?;
                body["written"] = json!(path.display().to_string());
            }
            None => body["matrix"] = serde_json::to_value(&file).map_err(|e| Error::Io(e.to_string()))?,
        }
        Ok(Report::ok(body))
    })())
}

pub fn cmd_verify(suite: &str, n: Option<usize>) -> Report {
    let Some(assertions) = verify::run_suite(suite, n) else {
        return error_report(&Error::Parse(format!(
            "unknown suite `{suite}`; expected one of {}",
            verify::SUITES.join(", ")
        )));
    };
    let passed = assertions.iter().all(|a| a.passed);
    Report {
        code: if passed { EXIT_OK } else { EXIT_NEGATIVE },
        body: json!({
            "status": if passed { "pass" } else { "fail" },
            "suite": suite,
            "passed": assertions.iter().filter(|a| a.passed).count(),
            "failed": assertions.iter().filter(|a| !a.passed).count(),
            "assertions": assertions,
        }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    Exhaustive,
    Random(u64),
}

impl FromStr for CensusMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<CensusMode> {
        match s.split_once(':') {
            None if s == "exhaustive" => Ok(CensusMode::Exhaustive),
            Some(("random", k)) => k
                .parse()
                .map(CensusMode::Random)
                .map_err(|_| Error::Parse(format!("bad sample count `{k}`"))),
            _ => Err(Error::Parse(format!("mode must be `exhaustive` or `random:<k>`, got `{s}`"))),
        }
    }
}

pub const EXHAUSTIVE_CAP: u64 = 100_000_000;
pub const RANDOM_CAP: u64 = 10_000_000;
const CHUNK: u64 = 1024;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub field: String,
    pub n: usize,
    pub mode: String,
    pub seed: Option<u64>,
    /// Matrices examined, singular ones included.
    pub examined: u64,
    pub singular: u64,
    /// Nonsingular matrices whose groups were computed.
    pub processed: u64,
    pub indeterminate: u64,
    pub aut_order_histogram: BTreeMap<u64, u64>,
    pub diagonal_order_histogram: BTreeMap<u64, u64>,
    pub all_diagonal_orders_odd: bool,
}

#[derive(Default)]
struct Tally {
    singular: u64,
    processed: u64,
    indeterminate: u64,
    aut: BTreeMap<u64, u64>,
    diag: BTreeMap<u64, u64>,
}

impl Tally {
    fn add(&mut self, a: Matrix) -> Result<()> {
        let alg = EvolutionAlgebra::new(a)?;
        if !alg.is_idempotent() {
            self.singular += 1;
            return Ok(());
        }
        let aut = automorphism_group(&alg)?;
        self.processed += 1;
        if !aut.unsolved.is_empty() {
            self.indeterminate += 1;
        }
        *self.aut.entry(aut.group.order()).or_default() += 1;
        *self.diag.entry(aut.group.kernel().len() as u64).or_default() += 1;
        Ok(())
    }

    fn merge(&mut self, other: Tally) {
        self.singular += other.singular;
        self.processed += other.processed;
        self.indeterminate += other.indeterminate;
        for (k, v) in other.aut {
            *self.aut.entry(k).or_default() += v;
        }
        for (k, v) in other.diag {
            *self.diag.entry(k).or_default() += v;
        }
    }
}

fn matrix_from_index(field: &Field, n: usize, mut idx: u64) -> Matrix {
    let p = field.characteristic() as u64;
    let mut digits = vec![0u64; n * n];
    for d in digits.iter_mut().rev() {
        *d = idx % p;
        idx /= p;
    }
    Matrix::from_fn(field, n, n, |i, j| field.residue(digits[i * n + j]).expect("prime field"))
}

/// Histograms of |Aut| and |D| over all (or `k` random) matrices over GF(p).
///
/// Work is split into fixed chunks whose tallies are merged in input order, so
/// the report does not depend on `threads`.
pub fn census(field: &Field, n: usize, mode: CensusMode, seed: u64, threads: Option<usize>) -> Result<CensusReport> {
    let p = field.characteristic() as u64;
    if p == 0 {
        return Err(Error::InvalidField(format!("census needs GF(p), got {field}")));
    }
    if n == 0 {
        return Err(Error::Inadmissible("dimension must be positive".into()));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Error::Io(e.to_string()))?;

    let (examined, tally) = match mode {
        CensusMode::Exhaustive => {
            let total = p
                .checked_pow((n * n) as u32)
                .filter(|&t| t <= EXHAUSTIVE_CAP)
                .ok_or_else(|| Error::CapExceeded {
                    what: format!("exhaustive census of GF({p}) matrices of size {n}"),
                    limit: EXHAUSTIVE_CAP,
                })?;
            let chunks = total.div_ceil(CHUNK);
            let parts: Vec<Tally> = pool.install(|| {
                (0..chunks)
                    .into_par_iter()
                    .map(|c| {
                        let mut t = Tally::default();
                        for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                            t.add(matrix_from_index(field, n, idx))?;
                        }
                        Ok(t)
                    })
                    .collect::<Result<_>>()
            })?;
            (total, parts)
        }
        CensusMode::Random(k) => {
            if k > RANDOM_CAP {
                return Err(Error::CapExceeded {
                    what: "random census size".into(),
                    limit: RANDOM_CAP,
                });
            }
            // Draw sequentially so the sample depends only on the seed.
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut accepted = Vec::with_capacity(k as usize);
            let mut examined = 0u64;
            while (accepted.len() as u64) < k {
                let a = Matrix::from_fn(field, n, n, |_, _| field.residue(rng.gen_range(0..p)).expect("prime field"));
                examined += 1;
                if !a.determinant()?.is_zero() {
                    accepted.push(a);
                }
            }
            let parts: Vec<Tally> = pool.install(|| {
                accepted
                    .par_chunks(CHUNK as usize)
                    .map(|chunk| {
                        let mut t = Tally::default();
                        for a in chunk {
                            t.add(a.clone())?;
                        }
                        Ok(t)
                    })
                    .collect::<Result<_>>()
            })?;
            let mut parts = parts;
            parts.push(Tally {
                singular: examined - k,
                ..Tally::default()
            });
            (examined, parts)
        }
    };
    let mut total = Tally::default();
    for t in tally {
        total.merge(t);
    }
    Ok(CensusReport {
        field: field.to_string(),
        n,
        mode: match mode {
            CensusMode::Exhaustive => "exhaustive".into(),
            CensusMode::Random(k) => format!("random:{k}"),
        },
        seed: matches!(mode, CensusMode::Random(_)).then_some(seed),
        examined,
        singular: total.singular,
        processed: total.processed,
        indeterminate: total.indeterminate,
        all_diagonal_orders_odd: total.diag.keys().all(|d| d % 2 == 1),
        aut_order_histogram: total.aut,
        diagonal_order_histogram: total.diag,
    })
}

pub fn cmd_census(field: &str, n: usize, mode: &str, seed: u64, threads: Option<usize>) -> Report {
    report((|| {
        let field = Field::new(field.parse::<FieldDescriptor>()?)?;
        let report = census(&field, n, mode.parse()?, seed, threads)?;
        let mut body = serde_json::to_value(&report).map_err(|e| Error::Io(e.to_string()))?;
        body["status"] = json!("ok");
        Ok(Report::ok(body))
    })())
}

/// Serializes a report the same way every time.
pub fn render(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(&report.body).expect("JSON values serialize");
    s.push('\n');
    s
}
