//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

pub fn half() -> Rat {
    rat(1, 2)
}

/// Parses `-? [0-9]+ ( "/" [1-9][0-9]* )?`. Decimals and exponents are
/// rejected on purpose: they do not say whether the value is exact.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let body = s.strip_prefix('-').unwrap_or(s);
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut value = BigInt::parse_bytes(num.as_bytes(), 10).ok_or_else(bad)?;
    if s.starts_with('-') {
        value = -value;
    }
    let den = match den {
        Some(d) => {
            let bytes = d.as_bytes();
            if bytes.is_empty()
                || !bytes.iter().all(|b| b.is_ascii_digit())
                || bytes[0] == b'0'
            {
                return Err(bad());
            }
            BigInt::parse_bytes(bytes, 10).ok_or_else(bad)?
        }
        None => BigInt::one(),
    };
    Ok(Rat::new(value, den))
}

/// Canonical string form: `n` for integers, `n/d` otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Returns `Some(q)` with `q*q == r` when `r` is the square of a rational.
pub fn rational_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

pub fn vec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

/// `acc += s * v`
pub fn vec_axpy(acc: &mut [Rat], s: &Rat, v: &[Rat]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += s * x;
        }
    }
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![zero(); n];
    v[i] = one();
    v
}

pub fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| int(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        assert_eq!(parse_rat("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rat("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rat("0").unwrap(), zero());
        assert_eq!(parse_rat("-12").unwrap(), int(-12));
        for bad in ["", "-", "1.5", "1e3", "1/0", "1/03", "+1", "1/", "/2", "1/-2", " 1"] {
            assert!(parse_rat(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(fmt_rat(&rat(2, 4)), "1/2");
        assert_eq!(fmt_rat(&rat(-6, 3)), "-2");
        assert_eq!(fmt_rat(&zero()), "0");
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&rat(25, 9)), Some(rat(5, 3)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
    }
}
