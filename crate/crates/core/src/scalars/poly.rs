//! Dense univariate polynomials used by the cyclotomic backend.
//!
//! Coefficients are stored in ascending order of degree.

use num::{BigInt, BigRational, One, Zero};

/// The `m`-th cyclotomic polynomial, obtained by dividing `x^m - 1` by every
/// `Φ_d` with `d | m`, `d < m`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic polynomial needs m >= 1");
    let mut quotient = vec![BigInt::zero(); m as usize + 1];
    quotient[0] = BigInt::from(-1);
    quotient[m as usize] = BigInt::one();
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let divisor = cyclotomic_polynomial(d);
        quotient = exact_div_monic(&quotient, &divisor);
    }
    quotient
}

/// Divides `a` by the monic polynomial `b`, asserting a zero remainder.
fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return vec![BigInt::zero()];
    }
    let mut q = vec![BigInt::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        q[i - db] = c.clone();
        for (t, bt) in b.iter().enumerate() {
            rem[i - db + t] -= &c * bt;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

pub(crate) fn trim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Reduces `p` modulo the monic integer polynomial `modulus`, returning a
/// vector of exactly `deg(modulus)` coefficients.
pub(crate) fn reduce(mut p: Vec<BigRational>, modulus: &[BigInt]) -> Vec<BigRational> {
    let deg = modulus.len() - 1;
    for i in (deg..p.len()).rev() {
        let c = std::mem::take(&mut p[i]);
        if c.is_zero() {
            continue;
        }
        for (t, mt) in modulus.iter().enumerate().take(deg) {
            if !mt.is_zero() {
                p[i - deg + t] -= &c * BigRational::from_integer(mt.clone());
            }
        }
    }
    p.resize(deg, BigRational::zero());
    p
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    let mut out = out;
    trim(&mut out);
    out
}

/// Polynomial long division over ℚ. `b` must be nonzero and trimmed.
fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (t, bt) in b.iter().enumerate() {
            rem[shift + t] -= &c * bt;
        }
        q[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut q);
    (q, rem)
}

/// Inverse of `a` modulo the irreducible `modulus`, or `None` when `a ≡ 0`.
pub(crate) fn inverse_mod(a: &[BigRational], modulus: &[BigInt]) -> Option<Vec<BigRational>> {
    let mut r0: Vec<BigRational> = modulus
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    // Invariant: s_i * a ≡ r_i (mod modulus).
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    // r0 is a nonzero constant because the modulus is irreducible.
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let out: Vec<BigRational> = s0.into_iter().map(|x| x * &c).collect();
    Some(reduce(out, modulus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(7), ints(&[1, 1, 1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn phi_105_has_a_coefficient_minus_two() {
        let phi = cyclotomic_polynomial(105);
        assert_eq!(phi.len(), 49);
        assert!(phi.contains(&BigInt::from(-2)));
    }

    #[test]
    fn product_of_divisor_polys_is_x_m_minus_one() {
        for m in 1..=30u32 {
            let mut prod = vec![BigRational::one()];
            for d in (1..=m).filter(|d| m % d == 0) {
                let phi: Vec<BigRational> = cyclotomic_polynomial(d)
                    .into_iter()
                    .map(BigRational::from_integer)
                    .collect();
                prod = mul(&prod, &phi);
            }
            let mut expected = vec![BigRational::zero(); m as usize + 1];
            expected[0] = -BigRational::one();
            expected[m as usize] = BigRational::one();
            assert_eq!(prod, expected, "m = {m}");
        }
    }
}
