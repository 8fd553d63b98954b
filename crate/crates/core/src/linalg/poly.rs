//! Univariate polynomials over Q, minimal polynomials of matrices and
//! coprime splitting.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mat::{Echelon, Mat};
use super::rat::{fmt_rat, int, Rat};

/// Coefficients low to high, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    /// `t - r`
    pub fn linear(r: &Rat) -> Self {
        Poly::new(vec![-r.clone(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        Poly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Rat::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &q * dc;
            }
            quot[i - dd] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, u, v)` with `u*self + v*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let l = r0.leading();
        if l.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Poly::constant(l.recip());
        (r0.mul(&inv), s0.mul(&inv), t0.mul(&inv))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let n = m.rows();
        let mut acc = Mat::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", fmt_rat(&mag))?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Monic minimal polynomial of a square matrix: the first linear dependency
/// among `I, M, M^2, ...`.
pub fn minimal_polynomial(m: &Mat) -> Poly {
    assert!(m.is_square());
    let n = m.rows();
    let mut ech = Echelon::new(n * n);
    let mut power = Mat::identity(n);
    for k in 0..=n {
        if !ech.push(power.row_iter().flatten().cloned().collect()) {
            return dependency(m, k);
        }
        power = &power * m;
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

/// Solves `M^k = sum_{i<k} c_i M^i` for the monic relation of degree `k`.
fn dependency(m: &Mat, k: usize) -> Poly {
    let n = m.rows();
    let mut powers = Vec::with_capacity(k + 1);
    let mut p = Mat::identity(n);
    for _ in 0..=k {
        powers.push(p.clone());
        p = &p * m;
    }
    let mut system = Mat::zeros(n * n, k);
    let mut rhs = Vec::with_capacity(n * n);
    for (idx, (r, c)) in (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).enumerate() {
        for (i, pw) in powers[..k].iter().enumerate() {
            system[(idx, i)] = pw[(r, c)].clone();
        }
        rhs.push(powers[k][(r, c)].clone());
    }
    let sol = system.solve(&rhs).expect("powers are dependent");
    let mut coeffs: Vec<Rat> = sol.into_iter().map(|c| -c).collect();
    coeffs.push(Rat::one());
    Poly::new(coeffs)
}

/// Splits a nonconstant polynomial into pairwise coprime monic factors whose
/// product is the monic associate of the input.
///
/// Squarefree decomposition (Yun) first, then rational roots are peeled off
/// each squarefree part. This is not a full factorization over Q.
pub fn coprime_split(p: &Poly) -> Vec<Poly> {
    assert!(!p.is_constant(), "coprime_split needs a nonconstant polynomial");
    let mut out = Vec::new();
    for (mult, part) in squarefree_parts(&p.monic()) {
        let (roots, rest) = rational_roots(&part);
        for r in roots {
            out.push(Poly::linear(&r).pow(mult));
        }
        if !rest.is_constant() {
            out.push(rest.pow(mult));
        }
    }
    out
}

/// Yun's algorithm: `p = prod a_i^i` with squarefree, pairwise coprime `a_i`.
fn squarefree_parts(p: &Poly) -> Vec<(u32, Poly)> {
    let mut parts = Vec::new();
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let c = dp.div_rem(&a0).0;
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        let nb = b.div_rem(&a).0;
        let nc = d.div_rem(&a).0;
        d = nc.sub(&nb.derivative());
        b = nb;
        if !a.is_constant() {
            parts.push((i, a));
        }
        i += 1;
    }
    parts
}

/// Rational roots of a squarefree polynomial, found p-adically: roots modulo
/// a prime that keeps the polynomial squarefree are Hensel-lifted, then
/// rationally reconstructed and checked exactly. Returns the roots and the
/// cofactor left after dividing them out.
fn rational_roots(p: &Poly) -> (Vec<Rat>, Poly) {
    let mut rest = p.clone();
    let mut roots = Vec::new();
    while rest.coeffs.first().is_some_and(Zero::is_zero) && !rest.is_constant() {
        roots.push(Rat::zero());
        rest = rest.div_rem(&Poly::from_ints(&[0, 1])).0;
    }
    if rest.is_constant() {
        return (roots, rest);
    }
    let lcm = rest.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let f: Vec<BigInt> = rest.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
    let a0 = f[0].abs();
    let an = f.last().unwrap().abs();
    // |num| ≤ |a0| and 0 < den ≤ |an| for every root in lowest terms
    let bound = BigInt::from(2) * &a0 * &an;
    let prime = good_prime(&f);
    let df: Vec<BigInt> = (1..f.len()).map(|i| &f[i] * BigInt::from(i)).collect();
    for r0 in roots_mod(&f, prime) {
        let mut x = BigInt::from(r0);
        let mut m = BigInt::from(prime);
        while m <= bound {
            m = &m * &m;
            let d = eval_int(&df, &x).mod_floor(&m);
            let inv = mod_inverse(&d, &m).expect("simple root modulo the prime");
            x = (&x - eval_int(&f, &x) * inv).mod_floor(&m);
        }
        if let Some(r) = reconstruct(&x, &m, &a0) {
            if rest.eval(&r).is_zero() {
                rest = rest.div_rem(&Poly::linear(&r)).0;
                roots.push(r);
            }
        }
    }
    roots.sort();
    (roots, rest)
}

fn eval_int(f: &[BigInt], x: &BigInt) -> BigInt {
    f.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// `p/q ≡ x (mod m)` with `|p| ≤ num_bound`, by the half-extended Euclid.
fn reconstruct(x: &BigInt, m: &BigInt, num_bound: &BigInt) -> Option<Rat> {
    let (mut r0, mut r1) = (m.clone(), x.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > num_bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r2, t1, t2);
    }
    (!t1.is_zero()).then(|| Rat::new(r1, t1))
}

/// Smallest prime not dividing the leading coefficient for which `f` stays
/// squarefree. Only finitely many primes divide the discriminant.
fn good_prime(f: &[BigInt]) -> u64 {
    (3u64..)
        .filter(|&q| (2..).take_while(|d| d * d <= q).all(|d| q % d != 0))
        .find(|&q| {
            let fm = reduce_mod(f, q);
            fm.len() == f.len() && {
                let dfm = reduce_mod(&(1..f.len()).map(|i| &f[i] * BigInt::from(i)).collect::<Vec<_>>(), q);
                gcd_mod(fm, dfm, q).len() == 1
            }
        })
        .expect("some prime keeps a squarefree polynomial squarefree")
}

fn reduce_mod(f: &[BigInt], q: u64) -> Vec<u64> {
    let qb = BigInt::from(q);
    let mut out: Vec<u64> = f.iter().map(|c| c.mod_floor(&qb).to_u64().unwrap()).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

/// Polynomial gcd over `Z/q`, coefficients low to high.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, q: u64) -> Vec<u64> {
    while !b.is_empty() {
        let inv = pow_mod(*b.last().unwrap(), q - 2, q);
        while a.len() >= b.len() {
            let c = a.last().unwrap() * inv % q;
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = (a[shift + i] + q - c * bi % q) % q;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn roots_mod(f: &[BigInt], q: u64) -> Vec<u64> {
    let fm = reduce_mod(f, q);
    (0..q).filter(|&x| fm.iter().rev().fold(0, |acc, &c| (acc * x + c) % q) == 0).collect()
}
