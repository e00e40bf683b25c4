//! Finite fields `F_{p^m}` in a polynomial basis, and reduction of cyclotomic
//! numbers into them.
//!
//! The defining polynomial is the smallest monic irreducible of degree `m`
//! when coefficient vectors are read as base-`p` integers with the constant
//! term least significant. Elements are enumerated in the same order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclotomic::{is_prime_u64, CycNum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} divides the denominator of a coefficient")]
    DenominatorDivisible { p: u64 },
    #[error("root has order {found}, expected {expected}")]
    WrongRootOrder { found: u64, expected: u64 },
    #[error("{p} divides the conductor {k}")]
    PrimeDividesConductor { p: u64, k: u32 },
    #[error("field size {0} too large for enumeration")]
    TooLarge(u128),
}

/// An element of `F_{p^m}`: coefficients of `1, x, ..., x^(m-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FFElem(pub Vec<u64>);

/// The field `F_p[x]/(f)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    pub p: u64,
    pub m: usize,
    /// Monic modulus, constant term first, length `m + 1`.
    pub modulus: Vec<u64>,
}

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            let idx = top - db + i;
            r[idx] = (r[idx] + p - c * bi % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_rem(&out, f, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `x^(p^e) mod f`.
fn frobenius_power(f: &[u64], p: u64, e: usize) -> Vec<u64> {
    let mut cur = poly_rem(&[0, 1], f, p);
    for _ in 0..e {
        let mut acc = vec![1u64];
        let mut base = cur.clone();
        let mut n = p;
        while n > 0 {
            if n & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            n >>= 1;
        }
        cur = acc;
    }
    cur
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test for a monic `f` over `F_p`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let minus_x = |g: Vec<u64>| {
        let mut g = g;
        g.resize(g.len().max(2), 0);
        g[1] = (g[1] + p - 1) % p;
        poly_trim(&mut g);
        g
    };
    if !minus_x(frobenius_power(f, p, m)).is_empty() {
        return false;
    }
    prime_divisors(m as u64).into_iter().all(|r| {
        let g = minus_x(frobenius_power(f, p, m / r as usize));
        poly_gcd(f, &g, p).len() == 1
    })
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Multiplicative order of `p` modulo `k`; `k` and `p` coprime.
pub fn multiplicative_order(p: u64, k: u64) -> usize {
    if k == 1 {
        return 1;
    }
    let mut x = p % k;
    let mut m = 1;
    while x != 1 {
        x = x * p % k;
        m += 1;
    }
    m
}

impl FiniteField {
    /// `F_{p^m}` with the smallest monic irreducible modulus.
    pub fn new(p: u64, m: usize) -> Result<Self, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        let size = (p as u128).pow(m as u32);
        if size > (1u128 << 62) {
            return Err(FieldError::TooLarge(size));
        }
        for code in 0..(p as u128).pow(m as u32) {
            let mut f = Vec::with_capacity(m + 1);
            let mut c = code;
            for _ in 0..m {
                f.push((c % p as u128) as u64);
                c /= p as u128;
            }
            f.push(1);
            if m > 1 && f[0] == 0 {
                continue;
            }
            if is_irreducible(&f, p) {
                return Ok(FiniteField { p, m, modulus: f });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.m as u32)
    }

    pub fn zero(&self) -> FFElem {
        FFElem(vec![0; self.m])
    }

    pub fn one(&self) -> FFElem {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> FFElem {
        let mut e = self.zero();
        e.0[0] = v.rem_euclid(self.p as i64) as u64;
        e
    }

    /// The element with base-`p` code `n`.
    pub fn from_index(&self, mut n: u128) -> FFElem {
        let mut e = self.zero();
        for c in e.0.iter_mut() {
            *c = (n % self.p as u128) as u64;
            n /= self.p as u128;
        }
        e
    }

    pub fn index_of(&self, a: &FFElem) -> u128 {
        a.0.iter().rev().fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        FFElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.p).collect())
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        FFElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + self.p - y) % self.p).collect())
    }

    pub fn neg(&self, a: &FFElem) -> FFElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        let mut out = self.zero();
        self.mul_into(&a.0, &b.0, &mut out.0);
        out
    }

    /// `out = a * b` on raw coefficient slices of length `m`.
    pub fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let p = self.p;
        let m = self.m;
        if m == 1 {
            out[0] = ((a[0] as u128 * b[0] as u128) % p as u128) as u64;
            return;
        }
        let mut buf = [0u64; 32];
        for i in 0..m {
            if a[i] == 0 {
                continue;
            }
            for j in 0..m {
                buf[i + j] = (buf[i + j] + a[i] * b[j] % p) % p;
            }
        }
        for top in (m..2 * m - 1).rev() {
            let c = buf[top];
            if c != 0 {
                for i in 0..m {
                    let idx = top - m + i;
                    buf[idx] = (buf[idx] + p - c * self.modulus[i] % p) % p;
                }
            }
        }
        out.copy_from_slice(&buf[..m]);
    }

    pub fn pow(&self, a: &FFElem, mut e: u128) -> FFElem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    pub fn is_zero(a: &FFElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn inv(&self, a: &FFElem) -> Option<FFElem> {
        if Self::is_zero(a) {
            return None;
        }
        Some(self.pow(a, self.size() - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: &FFElem) -> u64 {
        let n = (self.size() - 1) as u64;
        let mut ord = n;
        for r in prime_divisors(n) {
            while ord % r == 0 && self.pow(a, (ord / r) as u128) == self.one() {
                ord /= r;
            }
        }
        ord
    }

    /// Image of an integer (or rational with `p`-free denominator).
    pub fn from_bigint(&self, n: &BigInt) -> FFElem {
        let r = n.mod_floor(&BigInt::from(self.p));
        self.from_int(r.to_i64().expect("residue fits"))
    }
}

/// The smallest element of order exactly `k` in `F_{p^m}`, `m = ord_k(p)`.
pub fn find_order_k_root(p: u64, k: u32) -> Result<(FiniteField, FFElem), FieldError> {
    if !is_prime_u64(p) {
        return Err(FieldError::NotPrime(p));
    }
    if k as u64 % p == 0 {
        return Err(FieldError::PrimeDividesConductor { p, k });
    }
    let m = multiplicative_order(p, k as u64);
    let field = FiniteField::new(p, m)?;
    for n in 1..field.size() {
        let a = field.from_index(n);
        if field.pow(&a, k as u128) == field.one() && field.order(&a) == k as u64 {
            return Ok((field, a));
        }
    }
    unreachable!("the multiplicative group is cyclic of order divisible by k")
}

/// Image of `a` under the ring map sending `z_k` to `root`.
pub fn reduce_mod_p(a: &CycNum, field: &FiniteField, root: &FFElem) -> Result<FFElem, FieldError> {
    let k = a.conductor();
    let ord = field.order(root);
    if k > 1 && ord != k as u64 {
        return Err(FieldError::WrongRootOrder { found: ord, expected: k as u64 });
    }
    let den = a.denominator();
    if (&den % BigInt::from(field.p)).is_zero() {
        return Err(FieldError::DenominatorDivisible { p: field.p });
    }
    let den_inv = field.inv(&field.from_bigint(&den)).expect("nonzero");
    let mut acc = field.zero();
    let mut pw = field.one();
    for c in a.coeffs() {
        let t = field.from_bigint(c.numer());
        let t = field.mul(&t, &field.from_bigint(&(&den / c.denom())));
        acc = field.add(&acc, &field.mul(&t, &pw));
        pw = field.mul(&pw, root);
    }
    Ok(field.mul(&acc, &den_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus, vec![1, 1, 0, 1]);
        assert_eq!(FiniteField::new(2, 2).unwrap().modulus, vec![1, 1, 1]);
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus, vec![1, 0, 1]);
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(43, 21), 1);
        assert_eq!(multiplicative_order(31, 15), 1);
        assert_eq!(multiplicative_order(5, 63), 6);
        assert_eq!(multiplicative_order(2, 7), 3);
    }

    #[test]
    fn brute_force_root_search() {
        let (f, r) = find_order_k_root(43, 21).unwrap();
        let brute = (1..43u64).find(|&a| {
            let o = (1..=42).find(|&e| pow_mod(a, e, 43) == 1).unwrap();
            o == 21
        });
        assert_eq!(r.0[0], brute.unwrap());
        assert_eq!(f.m, 1);
    }

    #[test]
    fn degree_two_field_inverse() {
        let (f, r) = find_order_k_root(31, 60).unwrap();
        assert_eq!(f.m, 2);
        assert_eq!(f.order(&r), 60);
        for n in 1..f.size() {
            let a = f.from_index(n);
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        }
    }

    #[test]
    fn reduction_respects_relations() {
        let (f, r) = find_order_k_root(29, 7).unwrap();
        let w = &(&CycNum::zeta(7, 1) + &CycNum::zeta(7, 2)) + &CycNum::zeta(7, 4);
        let w2 = &w * &w;
        let rw = reduce_mod_p(&w, &f, &r).unwrap();
        assert_eq!(reduce_mod_p(&w2, &f, &r).unwrap(), f.mul(&rw, &rw));
        let half = CycNum::from_rational(7, &BigRational::new(1.into(), 2.into()));
        assert_eq!(f.mul(&reduce_mod_p(&half, &f, &r).unwrap(), &f.from_int(2)), f.one());
        let bad = CycNum::from_rational(7, &BigRational::new(1.into(), 29.into()));
        assert!(matches!(reduce_mod_p(&bad, &f, &r), Err(FieldError::DenominatorDivisible { p: 29 })));
    }
}
