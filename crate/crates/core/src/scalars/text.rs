//! String forms of scalars: `"-3/4"` in ℚ, `"5"` in GF(p), and polynomials in
//! `z` such as `"1/2 + 3*z^2"` in ℚ(ζ_m).

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::{Field, Repr, Scalar};
use crate::error::{Error, Result};

fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse(format!("bad rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

/// One signed monomial `c*z^k` of a polynomial string.
fn parse_term(term: &str, negative: bool) -> Result<(BigRational, usize)> {
    let err = || Error::Parse(format!("bad term {term:?}"));
    let (coeff, power) = match term.find('z') {
        None => (parse_rational(term)?, 0),
        Some(pos) => {
            let head = term[..pos].trim_end_matches('*');
            let coeff = if head.is_empty() {
                BigRational::one()
            } else {
                parse_rational(head)?
            };
            let tail = &term[pos + 1..];
            let power = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^')
                    .ok_or_else(err)?
                    .parse::<usize>()
                    .map_err(|_| err())?
            };
            (coeff, power)
        }
    };
    Ok((if negative { -coeff } else { coeff }, power))
}

fn parse_polynomial(s: &str) -> Result<Vec<BigRational>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let mut coeffs: Vec<BigRational> = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let negative = rest.starts_with('-');
        if rest.starts_with('-') || rest.starts_with('+') {
            rest = &rest[1..];
        }
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let term = &rest[..end];
        if term.is_empty() {
            return Err(Error::Parse(format!("bad scalar {s:?}")));
        }
        let (c, k) = parse_term(term, negative)?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, BigRational::zero());
        }
        coeffs[k] += c;
        rest = &rest[end..];
    }
    Ok(coeffs)
}

impl Field {
    /// Parses a scalar string in this field.
    ///
    /// Rationals are accepted by every backend (GF(p) reduces them); powers of
    /// `z` only by cyclotomic fields.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        self.from_coefficients(parse_polynomial(s)?)
    }
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &BigRational, power: usize) -> fmt::Result {
    if power == 0 {
        return write!(f, "{c}");
    }
    let monomial = if power == 1 { "z".to_string() } else { format!("z^{power}") };
    if c.is_one() {
        write!(f, "{monomial}")
    } else {
        write!(f, "{c}*{monomial}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(x) => write!(f, "{x}"),
            Repr::Residue(x) => write!(f, "{x}"),
            Repr::Cyclotomic(v) => {
                let mut first = true;
                for (k, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    if first {
                        if c.is_negative() {
                            write!(f, "-")?;
                        }
                        first = false;
                    } else if c.is_negative() {
                        write!(f, " - ")?;
                    } else {
                        write!(f, " + ")?;
                    }
                    write_coefficient(f, &c.abs(), k)?;
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}
