//! Exact arithmetic in cyclotomic fields `Q(z)`, `z = exp(2*pi*i/k)`.
//!
//! An element is stored in the power basis `1, z, ..., z^(phi(k)-1)` modulo
//! the k-th cyclotomic polynomial, as an integer numerator vector over one
//! positive common denominator. Numerators and denominator are kept coprime,
//! so the representation is canonical. Values whose parts fit in `i64` stay
//! on an allocation-free path; anything larger moves to `BigInt` and moves
//! back as soon as it fits again.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest `phi(k)` over the supported conductors (`phi(60) = 16`).
pub const MAX_PHI: usize = 16;

/// Conductors with precomputed tables.
pub const SUPPORTED_CONDUCTORS: [u32; 15] = [1, 2, 3, 4, 5, 6, 7, 9, 10, 12, 15, 20, 21, 30, 60];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("unsupported conductor {0}")]
    UnsupportedConductor(u32),
    #[error("conductor mismatch: {0} and {1} have unsupported lcm {2}")]
    ConductorMismatch(u32, u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois exponent {0} is not a unit modulo {1}")]
    NotAUnit(i64, u32),
    #[error("value does not lie in Q(zeta_{0})")]
    NotInSubfield(u32),
    #[error("malformed cyclotomic literal: {0}")]
    Parse(String),
}

/// Precomputed data for one conductor.
#[derive(Debug)]
pub struct Conductor {
    pub k: u32,
    pub phi: usize,
    /// Coefficients of the cyclotomic polynomial, constant term first.
    pub poly: Vec<i64>,
    /// `powers[e]` is `z^e` in the power basis, for `0 <= e < k`.
    powers: Vec<[i64; MAX_PHI]>,
    /// Residues modulo `k` coprime to `k`, ascending.
    pub units: Vec<u32>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn cyclotomic_poly(k: u32) -> Vec<i64> {
    let mut p = vec![0i64; k as usize + 1];
    p[0] = -1;
    p[k as usize] = 1;
    for d in 1..k {
        if k % d == 0 {
            p = poly_div_exact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn build_conductor(k: u32) -> Conductor {
    let poly = cyclotomic_poly(k);
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(k as usize);
    let mut cur = [0i64; MAX_PHI];
    cur[0] = 1;
    for _ in 0..k {
        powers.push(cur);
        let top = if phi == 0 { 0 } else { cur[phi - 1] };
        let mut next = [0i64; MAX_PHI];
        for i in (1..phi).rev() {
            next[i] = cur[i - 1];
        }
        for (i, n) in next.iter_mut().enumerate().take(phi) {
            *n -= top * poly[i];
        }
        cur = next;
    }
    let units = (0..k.max(1)).filter(|&j| j.gcd(&k) == 1 || k == 1).collect::<Vec<_>>();
    let units = if k == 1 { vec![0] } else { units };
    Conductor { k, phi, poly, powers, units }
}

/// Precomputed tables for conductor `k`.
pub fn conductor(k: u32) -> Result<&'static Conductor, CycError> {
    static TABLES: OnceLock<Vec<Option<Conductor>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        (0..=60u32)
            .map(|k| SUPPORTED_CONDUCTORS.contains(&k).then(|| build_conductor(k)))
            .collect()
    });
    tables
        .get(k as usize)
        .and_then(|c| c.as_ref())
        .ok_or(CycError::UnsupportedConductor(k))
}

fn phi_of(k: u32) -> usize {
    conductor(k).expect("conductor validated at construction").phi
}

#[derive(Clone, Debug)]
enum Repr {
    Small { num: [i64; MAX_PHI], den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An element of `Q(z_k)`.
#[derive(Clone, Debug)]
pub struct CycNum {
    k: u32,
    repr: Repr,
}

fn gcd_u128(a: u128, b: u128) -> u128 {
    a.gcd(&b)
}

impl CycNum {
    pub fn zero(k: u32) -> Self {
        conductor(k).expect("unsupported conductor");
        CycNum { k, repr: Repr::Small { num: [0; MAX_PHI], den: 1 } }
    }

    pub fn one(k: u32) -> Self {
        Self::from_int(k, 1)
    }

    pub fn from_int(k: u32, v: i64) -> Self {
        let mut z = Self::zero(k);
        if let Repr::Small { num, .. } = &mut z.repr {
            num[0] = v;
        }
        z
    }

    pub fn from_rational(k: u32, v: &BigRational) -> Self {
        let phi = phi_of(k);
        let mut num = vec![BigInt::zero(); phi];
        num[0] = v.numer().clone();
        Self::from_big(k, num, v.denom().clone())
    }

    /// `z_k^e` for any integer `e`.
    pub fn zeta(k: u32, e: i64) -> Self {
        let c = conductor(k).expect("unsupported conductor");
        let e = e.rem_euclid(k as i64) as usize;
        CycNum { k, repr: Repr::Small { num: c.powers[e], den: 1 } }
    }

    /// Builds `sum c_e z^e`; exponents may exceed `phi(k)` and are reduced.
    pub fn from_terms(k: u32, terms: &[(i64, BigRational)]) -> Result<Self, CycError> {
        conductor(k)?;
        let mut acc = Self::zero(k);
        for (e, c) in terms {
            acc = &acc + &Self::zeta(k, *e).scale(c);
        }
        Ok(acc)
    }

    /// Builds an element from its power-basis coordinates.
    pub fn from_coeffs(k: u32, coeffs: &[BigRational]) -> Result<Self, CycError> {
        let c = conductor(k)?;
        if coeffs.len() != c.phi {
            return Err(CycError::Parse(format!(
                "expected {} coefficients for k = {}, got {}",
                c.phi,
                k,
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let num = coeffs.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Ok(Self::from_big(k, num, den))
    }

    fn from_i128(k: u32, num: &[i128], den: i128) -> Self {
        debug_assert!(den != 0);
        let mut g = den.unsigned_abs();
        for &x in num {
            if x != 0 {
                g = gcd_u128(g, x.unsigned_abs());
            }
        }
        let sign: i128 = if den < 0 { -1 } else { 1 };
        let g = g as i128;
        let den = den / g * sign;
        let mut out = [0i64; MAX_PHI];
        let mut fits = i64::try_from(den).is_ok();
        if fits {
            for (o, &x) in out.iter_mut().zip(num) {
                match i64::try_from(x / g * sign) {
                    Ok(v) => *o = v,
                    Err(_) => {
                        fits = false;
                        break;
                    }
                }
            }
        }
        if fits {
            CycNum { k, repr: Repr::Small { num: out, den: den as i64 } }
        } else {
            let num = num.iter().map(|&x| BigInt::from(x / g * sign)).collect();
            CycNum { k, repr: Repr::Big { num, den: BigInt::from(den) } }
        }
    }

    fn from_big(k: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        let mut g = den.abs();
        for x in &num {
            if !x.is_zero() {
                g = g.gcd(x);
            }
        }
        if den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for x in num.iter_mut() {
                *x /= &g;
            }
            den /= &g;
        }
        if let Some(d) = den.to_i64() {
            let mut out = [0i64; MAX_PHI];
            if num.iter().zip(out.iter_mut()).all(|(x, o)| match x.to_i64() {
                Some(v) => {
                    *o = v;
                    true
                }
                None => false,
            }) {
                return CycNum { k, repr: Repr::Small { num: out, den: d } };
            }
        }
        CycNum { k, repr: Repr::Big { num, den } }
    }

    fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small { num, den } => (
                num[..phi_of(self.k)].iter().map(|&x| BigInt::from(x)).collect(),
                BigInt::from(*den),
            ),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.k
    }

    /// Power-basis coordinates as reduced rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let (num, den) = self.big_parts();
        num.into_iter().map(|n| BigRational::new(n, den.clone())).collect()
    }

    /// The positive common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        match &self.repr {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big { den, .. } => den.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&x| x == 0),
            Repr::Big { num, .. } => num.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        self.is_rational() && self.rational_value().map(|v| v.is_one()).unwrap_or(false)
    }

    /// True iff the value lies in `Q`.
    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num[1..].iter().all(|&x| x == 0),
            Repr::Big { num, .. } => num[1..].iter().all(|x| x.is_zero()),
        }
    }

    pub fn rational_value(&self) -> Option<BigRational> {
        if !self.is_rational() {
            return None;
        }
        let (num, den) = self.big_parts();
        Some(BigRational::new(num[0].clone(), den))
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> Self {
        let (num, den) = self.big_parts();
        let num = num.into_iter().map(|x| x * q.numer()).collect();
        Self::from_big(self.k, num, den * q.denom())
    }

    fn common_conductor(&self, other: &Self) -> Result<u32, CycError> {
        if self.k == other.k || other.is_rational() {
            Ok(self.k)
        } else if self.is_rational() {
            Ok(other.k)
        } else {
            let l = self.k.lcm(&other.k);
            conductor(l).map(|_| l).map_err(|_| CycError::ConductorMismatch(self.k, other.k, l))
        }
    }

    /// The same value over `Q(z_k)`; rational values move freely.
    pub fn to_conductor(&self, k: u32) -> Result<Self, CycError> {
        if self.k == k {
            Ok(self.clone())
        } else if self.is_rational() {
            Ok(Self::from_rational(k, &self.rational_value().expect("rational")))
        } else {
            self.embed(k)
        }
    }

    fn add_same(&self, other: &Self, negate: bool) -> Self {
        let k = self.k;
        let phi = phi_of(k);
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) =
            (&self.repr, &other.repr)
        {
            let fast = || -> Option<Self> {
                let (da, db) = (*da as i128, *db as i128);
                let g = da.gcd(&db);
                let ma = db / g;
                let mut mb = da / g;
                if negate {
                    mb = -mb;
                }
                let mut out = [0i128; MAX_PHI];
                for i in 0..phi {
                    out[i] = (a[i] as i128)
                        .checked_mul(ma)?
                        .checked_add((b[i] as i128).checked_mul(mb)?)?;
                }
                Some(Self::from_i128(k, &out[..phi], da.checked_mul(ma)?))
            };
            if let Some(r) = fast() {
                return r;
            }
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let num = a
            .iter()
            .zip(&b)
            .map(|(x, y)| if negate { x * &db - y * &da } else { x * &db + y * &da })
            .collect();
        Self::from_big(k, num, da * db)
    }

    fn mul_same(&self, other: &Self) -> Self {
        let c = conductor(self.k).expect("validated");
        let (k, phi) = (c.k as usize, c.phi);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.k);
        }
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) =
            (&self.repr, &other.repr)
        {
            let fast = || -> Option<Self> {
                let mut acc = [0i128; 60];
                for i in 0..phi {
                    if a[i] == 0 {
                        continue;
                    }
                    let ai = a[i] as i128;
                    for j in 0..phi {
                        if b[j] != 0 {
                            let e = (i + j) % k.max(1);
                            acc[e] = acc[e].checked_add(ai * b[j] as i128)?;
                        }
                    }
                }
                let mut out = [0i128; MAX_PHI];
                out[..phi].copy_from_slice(&acc[..phi]);
                for e in phi..k {
                    if acc[e] != 0 {
                        for t in 0..phi {
                            let p = c.powers[e][t];
                            if p != 0 {
                                out[t] = out[t].checked_add(acc[e].checked_mul(p as i128)?)?;
                            }
                        }
                    }
                }
                Some(Self::from_i128(self.k, &out[..phi], (*da as i128) * (*db as i128)))
            };
            if let Some(r) = fast() {
                return r;
            }
        }
        let (a, da) = self.big_parts();
        let (b, db) = other.big_parts();
        let mut acc = vec![BigInt::zero(); k.max(1)];
        for i in 0..phi {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..phi {
                if !b[j].is_zero() {
                    acc[(i + j) % k.max(1)] += &a[i] * &b[j];
                }
            }
        }
        let mut out: Vec<BigInt> = acc[..phi].to_vec();
        for e in phi..k {
            if !acc[e].is_zero() {
                for (t, o) in out.iter_mut().enumerate() {
                    let p = c.powers[e][t];
                    if p != 0 {
                        *o += &acc[e] * p;
                    }
                }
            }
        }
        Self::from_big(self.k, out, da * db)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycError> {
        let k = self.common_conductor(other)?;
        Ok(self.to_conductor(k)?.add_same(&other.to_conductor(k)?, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycError> {
        let k = self.common_conductor(other)?;
        Ok(self.to_conductor(k)?.add_same(&other.to_conductor(k)?, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        let k = self.common_conductor(other)?;
        if self.k == k && other.k == k {
            return Ok(self.mul_same(other));
        }
        Ok(self.to_conductor(k)?.mul_same(&other.to_conductor(k)?))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CycError> {
        self.try_mul(&other.inv()?)
    }

    /// Multiplicative inverse via the product of the nontrivial conjugates.
    pub fn inv(&self) -> Result<Self, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(q) = self.rational_value() {
            return Ok(Self::from_rational(self.k, &q.recip()));
        }
        let c = conductor(self.k)?;
        let mut prod = Self::one(self.k);
        for &j in c.units.iter().filter(|&&j| j != 1) {
            prod = prod.mul_same(&self.galois(j as i64)?);
        }
        let norm = self.mul_same(&prod).rational_value().expect("norm is rational");
        Ok(prod.scale(&norm.recip()))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            base = base.mul_same(&base);
            e >>= 1;
        }
        acc
    }

    fn map_exponents(&self, target: u32, f: impl Fn(usize) -> usize) -> Self {
        let tc = conductor(target).expect("validated");
        let (num, den) = self.big_parts();
        let mut out = vec![BigInt::zero(); tc.phi];
        for (i, x) in num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let p = &tc.powers[f(i) % tc.k.max(1) as usize];
            for (t, o) in out.iter_mut().enumerate() {
                if p[t] != 0 {
                    *o += x * p[t];
                }
            }
        }
        Self::from_big(target, out, den)
    }

    /// The automorphism `z -> z^j`.
    pub fn galois(&self, j: i64) -> Result<Self, CycError> {
        let k = self.k as i64;
        let jj = j.rem_euclid(k.max(1));
        if k > 1 && jj.gcd(&k) != 1 {
            return Err(CycError::NotAUnit(j, self.k));
        }
        if self.is_rational() {
            return Ok(self.clone());
        }
        Ok(self.map_exponents(self.k, |i| i * jj as usize))
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1).expect("-1 is always a unit")
    }

    /// Image under `Q(z_k) -> Q(z_m)`, `z_k -> z_m^(m/k)`; requires `k | m`.
    pub fn embed(&self, m: u32) -> Result<Self, CycError> {
        conductor(m)?;
        if m % self.k != 0 {
            return Err(CycError::ConductorMismatch(self.k, m, self.k.lcm(&m)));
        }
        if m == self.k {
            return Ok(self.clone());
        }
        let step = (m / self.k) as usize;
        Ok(self.map_exponents(m, |i| i * step))
    }

    /// Rewrites the value over `Q(z_d)` for `d | k`, if it lies there.
    pub fn descend(&self, d: u32) -> Result<Self, CycError> {
        conductor(d)?;
        if self.k % d != 0 {
            return Err(CycError::NotInSubfield(d));
        }
        if d == self.k {
            return Ok(self.clone());
        }
        let dphi = phi_of(d);
        let basis: Vec<Vec<BigRational>> =
            (0..dphi).map(|i| Self::zeta(d, i as i64).embed(self.k).map(|x| x.coeffs())).collect::<Result<_, _>>()?;
        let target = self.coeffs();
        let rows = target.len();
        let mut m: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = basis.iter().map(|b| b[r].clone()).collect();
                row.push(target[r].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..dphi {
            let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(rank, p);
            let inv = m[rank][col].recip();
            for x in m[rank].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..rows {
                if r != rank && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..=dphi {
                        let v = &m[rank][c] * &f;
                        m[r][c] = &m[r][c] - v;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if m[rank..].iter().any(|row| !row[dphi].is_zero()) {
            return Err(CycError::NotInSubfield(d));
        }
        let mut sol = vec![BigRational::zero(); dphi];
        for (r, &c) in pivots.iter().enumerate() {
            sol[c] = m[r][dphi].clone();
        }
        Self::from_coeffs(d, &sol)
    }

    /// Smallest `d | k` with the value in `Q(z_d)`.
    pub fn minimal_conductor(&self) -> u32 {
        let mut divs: Vec<u32> = (1..=self.k).filter(|d| self.k % d == 0).collect();
        divs.sort_unstable();
        for d in divs {
            if conductor(d).is_ok() && self.descend(d).is_ok() {
                return d;
            }
        }
        self.k
    }

    /// Primes dividing the common denominator of the coordinates.
    pub fn denominator_primes(&self) -> BTreeSet<u64> {
        prime_factors(&self.denominator())
    }

    /// Numerical value in `C`.
    pub fn to_complex(&self) -> (f64, f64) {
        let (num, den) = self.big_parts();
        let den = den.to_f64().unwrap_or(f64::INFINITY);
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, x) in num.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * i as f64 / self.k as f64;
            let x = x.to_f64().unwrap_or(f64::NAN) / den;
            re += x * t.cos();
            im += x * t.sin();
        }
        (re, im)
    }

    /// Coordinates as strings, `"p/q"` or `"p"`.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(rational_to_string).collect()
    }
}

pub fn rational_to_string(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, CycError> {
    let s = s.trim();
    let bad = || CycError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Prime factors by trial division then Pollard rho on the cofactor.
pub fn prime_factors(n: &BigInt) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    let mut n = n.abs();
    let mut p = 2u64;
    while p < 100_000 && !n.is_one() && !n.is_zero() {
        let bp = BigInt::from(p);
        if (&n % &bp).is_zero() {
            out.insert(p);
            while (&n % &bp).is_zero() {
                n /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigInt::one() {
        if let Some(v) = n.to_u64() {
            factor_u64(v, &mut out);
        } else {
            // Cofactors beyond 64 bits do not occur for the group orders here.
            out.insert(u64::MAX);
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn factor_u64(n: u64, out: &mut BTreeSet<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.insert(n);
        return;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            factor_u64(d, out);
            factor_u64(n / d, out);
            return;
        }
        c += 1;
    }
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.k == other.k {
            return match (&self.repr, &other.repr) {
                (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) => {
                    da == db && a == b
                }
                (Repr::Big { num: a, den: da }, Repr::Big { num: b, den: db }) => {
                    da == db && a == b
                }
                _ => false,
            };
        }
        match (self.rational_value(), other.rational_value()) {
            (Some(a), Some(b)) => return a == b,
            (Some(_), None) | (None, Some(_)) => return false,
            _ => {}
        }
        if let Ok(k) = self.common_conductor(other) {
            return self.to_conductor(k).ok() == other.to_conductor(k).ok();
        }
        let d = self.k.gcd(&other.k);
        match (self.descend(d), other.descend(d)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for CycNum {}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            /// Panics if the conductors have no supported common field.
            fn $m(self, rhs: &CycNum) -> CycNum {
                self.$f(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::zero(self.k).add_same(self, true)
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Display for CycNum {
    /// Polynomial in `z` with rational coefficients, e.g. `1/8*z^2 - z + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        let mut first = true;
        for (i, c) in coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if mono.is_empty() {
                write!(f, "{}", rational_to_string(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", rational_to_string(&a))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    k: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycJson { k: self.k, coeffs: self.coeff_strings() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = CycJson::deserialize(d)?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        CycNum::from_coeffs(j.k, &coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(7), vec![1; 7]);
        assert_eq!(cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(conductor(60).unwrap().phi, 16);
        assert_eq!(conductor(21).unwrap().phi, 12);
        assert!(conductor(63).is_err());
    }

    #[test]
    fn zeta_seven_sum_vanishes() {
        let s = (0..7).fold(CycNum::zero(7), |a, e| &a + &CycNum::zeta(7, e));
        assert!(s.is_zero());
    }

    #[test]
    fn gauss_sum_of_seven_squares_to_minus_two() {
        // w = z + z^2 + z^4 satisfies w^2 + w + 2 = 0.
        let w = &(&CycNum::zeta(7, 1) + &CycNum::zeta(7, 2)) + &CycNum::zeta(7, 4);
        let lhs = &(&(&w * &w) + &w) + &CycNum::from_int(7, 2);
        assert!(lhs.is_zero());
    }

    #[test]
    fn inverse_and_galois() {
        let a = CycNum::from_terms(7, &[(0, q(1, 2)), (3, q(-2, 3))]).unwrap();
        assert!((&a * &a.inv().unwrap()).is_one());
        let w = &CycNum::zeta(7, 2) + &CycNum::zeta(7, 5);
        assert_eq!(w.conj(), w);
        assert_eq!(CycNum::zeta(7, 1).galois(-1).unwrap(), CycNum::zeta(7, 6));
        assert!(CycNum::zeta(9, 1).galois(3).is_err());
    }

    #[test]
    fn embedding_and_mixed_arithmetic() {
        let z3 = CycNum::zeta(3, 1);
        let z15 = CycNum::zeta(15, 5);
        assert_eq!(z3.embed(15).unwrap(), z15);
        assert_eq!(z3, z15);
        let s = CycNum::zeta(3, 1).try_add(&CycNum::zeta(5, 1)).unwrap();
        assert_eq!(s.conductor(), 15);
        let bad = CycNum::zeta(9, 1).try_mul(&CycNum::zeta(7, 1));
        assert!(matches!(bad, Err(CycError::ConductorMismatch(9, 7, 63))));
        // Rational values mix with anything.
        let r = CycNum::from_int(9, 3).try_mul(&CycNum::zeta(7, 1)).unwrap();
        assert_eq!(r.conductor(), 7);
    }

    #[test]
    fn descend_finds_subfield() {
        let z = CycNum::zeta(21, 7);
        assert_eq!(z.descend(3).unwrap(), CycNum::zeta(3, 1));
        assert_eq!(z.minimal_conductor(), 3);
        assert!(CycNum::zeta(21, 1).descend(7).is_err());
    }

    #[test]
    fn canonical_and_json() {
        let a = CycNum::from_terms(7, &[(2, q(1, 8))]).unwrap();
        let j = serde_json::to_string(&a).unwrap();
        assert_eq!(j, r#"{"k":7,"coeffs":["0","0","1/8","0","0","0"]}"#);
        let b: CycNum = serde_json::from_str(&j).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/8*z^2");
        assert_eq!(a.denominator_primes(), BTreeSet::from([2]));
    }

    #[test]
    fn big_path_round_trips_to_small() {
        let big = CycNum::from_int(5, i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.repr, Repr::Big { .. }));
        let back = &sq * &CycNum::from_rational(5, &BigRational::new(1.into(), BigInt::from(i64::MAX)));
        assert_eq!(back, big);
        assert!(matches!(back.repr, Repr::Small { .. }));
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(&BigInt::from(232)), BTreeSet::from([2, 29]));
        assert_eq!(prime_factors(&BigInt::from(1_000_003u64 * 999_983)), BTreeSet::from([999_983, 1_000_003]));
    }
}
