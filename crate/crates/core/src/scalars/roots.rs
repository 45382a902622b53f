//! Roots of unity and exact k-th root extraction.
//!
//! Every field here has a finite cyclic group of roots of unity `μ = ⟨g⟩` of
//! order `N`: `N = 2` for ℚ, `N = p - 1` for GF(p), and for ℚ(ζ_m) `N = m` when
//! `m` is even and `2m` otherwise. Equations `x^k = c` are solved in exponent
//! space over `ℤ/N` whenever `c` factors as a positive rational times a root of
//! unity; see [`Field::kth_roots`] for exactly which cases are decided.

use std::collections::HashMap;

use num::{BigInt, BigRational, Integer, Signed};

use super::{Backend, Field, Repr, Scalar};
use crate::error::{Error, Result};

/// The cyclic group of all roots of unity in a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOfUnityGroup {
    pub order: u64,
    pub generator: Scalar,
}

/// Result of solving `x^k = c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootsOutcome {
    /// Every solution in the field, sorted; possibly empty.
    Roots(Vec<Scalar>),
    /// The backend cannot decide this equation; carries it in readable form.
    Indeterminate(String),
}

impl RootsOutcome {
    pub fn roots(&self) -> Option<&[Scalar]> {
        match self {
            RootsOutcome::Roots(r) => Some(r),
            RootsOutcome::Indeterminate(_) => None,
        }
    }
}

/// Integer k-th root of a nonnegative integer when it is exact.
fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    (num::pow::pow(r.clone(), k as usize) == *n).then_some(r)
}

/// Positive rational k-th root of a positive rational when it exists.
fn rational_root(q: &BigRational, k: u64) -> Option<BigRational> {
    debug_assert!(q.is_positive());
    let k32 = u32::try_from(k).ok()?;
    let num = exact_root(q.numer(), k32)?;
    let den = exact_root(q.denom(), k32)?;
    Some(BigRational::new(num, den))
}

/// All `y` in `ℤ/n` with `k*y ≡ e (mod n)`.
fn solve_linear_congruence(k: u64, e: u64, n: u64) -> Vec<u64> {
    let g = k.gcd(&n);
    if !e.is_multiple_of(g) {
        return Vec::new();
    }
    let (n_red, k_red, e_red) = (n / g, (k / g) % (n / g), e / g);
    let y0 = if n_red == 1 {
        0
    } else {
        let inv = mod_inverse(k_red, n_red).expect("k/g is a unit modulo n/g");
        (e_red as u128 * inv as u128 % n_red as u128) as u64
    };
    (0..g).map(|t| y0 + t * n_red).collect()
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(n as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(n as i128) as u64)
}

impl Field {
    /// The group μ of roots of unity: its order and a generator.
    pub fn unity_group(&self) -> RootOfUnityGroup {
        match &self.inner.backend {
            Backend::Rational => RootOfUnityGroup {
                order: 2,
                generator: self.from_i64(-1),
            },
            Backend::Prime(pd) => RootOfUnityGroup {
                order: pd.p - 1,
                generator: self.wrap(Repr::Residue(pd.generator % pd.p)),
            },
            Backend::Cyclotomic(c) => {
                let z = self.zeta().expect("cyclotomic field has z");
                if c.m % 2 == 0 {
                    RootOfUnityGroup {
                        order: c.m as u64,
                        generator: z,
                    }
                } else {
                    RootOfUnityGroup {
                        order: 2 * c.m as u64,
                        generator: -z,
                    }
                }
            }
        }
    }

    /// Exponent `e` with `generator^e = x`, when `x` is a root of unity.
    pub fn unity_log(&self, x: &Scalar) -> Option<u64> {
        if let Backend::Prime(_) = &self.inner.backend {
            return self.dlog_residue(x.residue()?);
        }
        let table = self.inner.unity_log.get_or_init(|| {
            let group = self.unity_group();
            let mut table = HashMap::new();
            let mut cur = self.one();
            for e in 0..group.order {
                table.insert(cur.repr.clone(), e);
                cur = &cur * &group.generator;
            }
            table
        });
        table.get(&x.repr).copied()
    }

    /// Every `x` in the field with `x^k = 1`; there are `gcd(k, N)` of them.
    pub fn roots_of_unity(&self, k: u64) -> Vec<Scalar> {
        assert!(k >= 1, "roots_of_unity needs k >= 1");
        let group = self.unity_group();
        let d = k.gcd(&group.order);
        let step = group.generator.pow(group.order / d);
        let mut out = Vec::with_capacity(d as usize);
        let mut cur = self.one();
        for _ in 0..d {
            out.push(cur.clone());
            cur = &cur * &step;
        }
        out.sort();
        out
    }

    /// Splits `c` as `r·ω` with `r` a positive rational and `ω` a root of unity,
    /// returning `(r, log ω)`.
    fn split_rational_unit(&self, c: &Scalar) -> Option<(BigRational, u64)> {
        if let Some(q) = c.to_rational() {
            let r = q.abs();
            let omega = if q.is_negative() { -self.one() } else { self.one() };
            return Some((r, self.unity_log(&omega)?));
        }
        let order = self.unity_group().order;
        let q = c.pow(order).to_rational()?;
        if !q.is_positive() {
            return None;
        }
        let r = rational_root(&q, order)?;
        let omega = c.checked_div(&self.from_rational(&r).ok()?).ok()?;
        Some((r, self.unity_log(&omega)?))
    }

    /// All solutions of `x^k = c` when decidable by this backend.
    ///
    /// Decided cases:
    /// - GF(p): always, through the discrete logarithm.
    /// - `k = 1`: the single solution `c`.
    /// - ℚ and ℚ(ζ_m), `c = r·ω` with `r > 0` rational and `ω` a root of unity,
    ///   when `r` is a rational k-th power (solutions are `r^{1/k}·η` with
    ///   `η^k = ω`), or when `k` is odd (then no solution exists), or in ℚ.
    ///
    /// Otherwise the equation is returned as [`RootsOutcome::Indeterminate`].
    pub fn kth_roots(&self, c: &Scalar, k: u64) -> Result<RootsOutcome> {
        if *c.field() != *self {
            return Err(Error::FieldMismatch {
                left: self.to_string(),
                right: c.field().to_string(),
            });
        }
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert!(k >= 1, "kth_roots needs k >= 1");
        if k == 1 {
            return Ok(RootsOutcome::Roots(vec![c.clone()]));
        }
        let group = self.unity_group();
        let n = group.order;
        let from_exponents = |scale: &Scalar, exps: Vec<u64>| {
            let mut out: Vec<Scalar> = exps
                .into_iter()
                .map(|y| scale * &group.generator.pow(y))
                .collect();
            out.sort();
            RootsOutcome::Roots(out)
        };

        if let Backend::Prime(_) = &self.inner.backend {
            let e = self.unity_log(c).expect("nonzero residues are roots of unity");
            return Ok(from_exponents(&self.one(), solve_linear_congruence(k, e, n)));
        }

        let undecided = || RootsOutcome::Indeterminate(format!("x^{k} = {c} over {self}"));
        let Some((r, log_omega)) = self.split_rational_unit(c) else {
            return Ok(undecided());
        };
        match rational_root(&r, k) {
            Some(s) => {
                let scale = self.from_rational(&s)?;
                Ok(from_exponents(&scale, solve_linear_congruence(k % n, log_omega, n)))
            }
            None if k % 2 == 1 => Ok(RootsOutcome::Roots(Vec::new())),
            None if matches!(self.inner.backend, Backend::Rational) => {
                Ok(RootsOutcome::Roots(Vec::new()))
            }
            None => Ok(undecided()),
        }
    }
}

impl Scalar {
    /// Multiplicative order when `self` is a root of unity, `None` otherwise.
    pub fn mult_order(&self) -> Result<Option<u64>> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.field.unity_group().order;
        if !self.pow(n).is_one() {
            return Ok(None);
        }
        let mut divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
        divisors.sort_unstable();
        Ok(divisors.into_iter().find(|&d| self.pow(d).is_one()))
    }
}
