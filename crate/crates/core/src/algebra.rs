//! Elements of the group algebra `Q(z_k)[G]`, dense in the group's
//! enumeration order.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use crate::cyclotomic::{CycError, CycNum};
use crate::group::{FiniteGroup, GroupElem, GroupError};
use crate::linalg::Matrix;

/// Which side a multiplier or ideal sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Right ideal `c R`, or the equation `c x = b`.
    Right,
    /// Left ideal `R c`, or the equation `x c = b`.
    Left,
}

#[derive(Clone)]
pub struct AlgElem {
    pub group: Arc<FiniteGroup>,
    pub k: u32,
    pub coeffs: Vec<CycNum>,
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElem[{}; k={}] {}", self.group.name, self.k, self)
    }
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.coeffs == other.coeffs
    }
}

impl AlgElem {
    pub fn zero(group: &Arc<FiniteGroup>, k: u32) -> AlgElem {
        AlgElem { group: group.clone(), k, coeffs: vec![CycNum::zero(k); group.order()] }
    }

    pub fn one(group: &Arc<FiniteGroup>, k: u32) -> AlgElem {
        Self::basis(group, k, 0)
    }

    /// The group element with index `i`, as an algebra element.
    pub fn basis(group: &Arc<FiniteGroup>, k: u32, i: usize) -> AlgElem {
        let mut z = Self::zero(group, k);
        z.coeffs[i] = CycNum::one(k);
        z
    }

    pub fn from_elem(group: &Arc<FiniteGroup>, k: u32, g: &GroupElem) -> Result<AlgElem, GroupError> {
        let i = group
            .index_of(g)
            .ok_or_else(|| GroupError::NotInGroup(g.to_string(), group.name.clone()))?;
        Ok(Self::basis(group, k, i))
    }

    /// `sum c_g g` from explicit terms; repeated elements accumulate.
    pub fn from_terms(
        group: &Arc<FiniteGroup>,
        k: u32,
        terms: &[(GroupElem, CycNum)],
    ) -> Result<AlgElem, GroupError> {
        let mut z = Self::zero(group, k);
        for (g, c) in terms {
            let i = group
                .index_of(g)
                .ok_or_else(|| GroupError::NotInGroup(g.to_string(), group.name.clone()))?;
            z.coeffs[i] = &z.coeffs[i] + c;
        }
        Ok(z)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Indices with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&i| !self.coeffs[i].is_zero()).collect()
    }

    pub fn scale(&self, c: &CycNum) -> AlgElem {
        let k = if c.is_rational() || c.conductor() == self.k {
            self.k
        } else {
            num_integer::Integer::lcm(&self.k, &c.conductor())
        };
        let me = self.embed(k).unwrap_or_else(|e| panic!("{e}"));
        let c = c.to_conductor(k).unwrap_or_else(|e| panic!("{e}"));
        let coeffs = me.coeffs.iter().map(|x| if x.is_zero() { x.clone() } else { x * &c }).collect();
        AlgElem { group: self.group.clone(), k, coeffs }
    }

    pub fn scale_rational(&self, q: &BigRational) -> AlgElem {
        AlgElem { group: self.group.clone(), k: self.k, coeffs: self.coeffs.iter().map(|x| x.scale(q)).collect() }
    }

    /// Image under the coefficient embedding `Q(z_k) -> Q(z_m)`.
    pub fn embed(&self, m: u32) -> Result<AlgElem, CycError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_conductor(m))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AlgElem { group: self.group.clone(), k: m, coeffs })
    }

    /// Applies `z -> z^j` to every coefficient.
    pub fn galois(&self, j: i64) -> Result<AlgElem, CycError> {
        let coeffs = self.coeffs.iter().map(|c| c.galois(j)).collect::<Result<Vec<_>, _>>()?;
        Ok(AlgElem { group: self.group.clone(), k: self.k, coeffs })
    }

    fn check_same(&self, o: &AlgElem) {
        assert!(Arc::ptr_eq(&self.group, &o.group), "algebra elements over different groups");
    }

    fn common_k(&self, o: &AlgElem) -> u32 {
        if self.k == o.k {
            self.k
        } else {
            num_integer::Integer::lcm(&self.k, &o.k)
        }
    }

    /// Both operands over their common coefficient field.
    fn aligned(&self, o: &AlgElem) -> (AlgElem, AlgElem) {
        let k = self.common_k(o);
        let f = |x: &AlgElem| if x.k == k { x.clone() } else { x.embed(k).unwrap_or_else(|e| panic!("{e}")) };
        (f(self), f(o))
    }

    /// Product, touching only nonzero coefficient pairs.
    pub fn mul_elem(&self, o: &AlgElem) -> AlgElem {
        self.check_same(o);
        if self.k != o.k {
            let (a, b) = self.aligned(o);
            return a.mul_elem(&b);
        }
        let g = &self.group;
        let k = self.common_k(o);
        let mut out = vec![CycNum::zero(k); g.order()];
        let sb = o.support();
        for x in self.support() {
            let a = &self.coeffs[x];
            for &y in &sb {
                let z = g.mul_idx(x, y);
                out[z] = &out[z] + &(a * &o.coeffs[y]);
            }
        }
        AlgElem { group: g.clone(), k, coeffs: out }
    }

    /// `g x g^-1` for the group element with index `gi`.
    pub fn conj_by(&self, gi: usize) -> AlgElem {
        let g = &self.group;
        let mut out = vec![CycNum::zero(self.k); g.order()];
        for x in self.support() {
            out[g.conj_idx(gi, x)] = self.coeffs[x].clone();
        }
        AlgElem { group: g.clone(), k: self.k, coeffs: out }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul_elem(self) == *self
    }

    /// Central iff it commutes with every generator of the group.
    pub fn is_central(&self) -> bool {
        self.group.generators().iter().all(|s| {
            let i = self.group.index_of(s).expect("generator in group");
            self.conj_by(i) == *self
        })
    }

    /// Matrix of `x -> self * x` (`Side::Right`, columns `self * g`) or of
    /// `x -> x * self` (`Side::Left`, columns `g * self`).
    pub fn mul_matrix(&self, side: Side) -> Matrix {
        let g = &self.group;
        let n = g.order();
        let mut m = Matrix::zeros(self.k, n, n);
        let supp = self.support();
        for col in 0..n {
            for &x in &supp {
                let row = match side {
                    Side::Right => g.mul_idx(x, col),
                    Side::Left => g.mul_idx(col, x),
                };
                m.rows[row][col] = self.coeffs[x].clone();
            }
        }
        m
    }

    pub fn left_mul_matrix(&self) -> Matrix {
        self.mul_matrix(Side::Right)
    }

    pub fn right_mul_matrix(&self) -> Matrix {
        self.mul_matrix(Side::Left)
    }

    /// Translates spanning the one-sided ideal: `self * g` for a right
    /// ideal, `g * self` for a left ideal.
    pub fn translates(&self, side: Side) -> Vec<Vec<CycNum>> {
        let g = &self.group;
        let n = g.order();
        let supp = self.support();
        (0..n)
            .map(|t| {
                let mut v = vec![CycNum::zero(self.k); n];
                for &x in &supp {
                    let i = match side {
                        Side::Right => g.mul_idx(x, t),
                        Side::Left => g.mul_idx(t, x),
                    };
                    v[i] = self.coeffs[x].clone();
                }
                v
            })
            .collect()
    }

    pub fn from_vec(group: &Arc<FiniteGroup>, k: u32, v: Vec<CycNum>) -> AlgElem {
        AlgElem { group: group.clone(), k, coeffs: v }
    }

    /// Primes dividing any coefficient denominator.
    pub fn denominator_primes(&self) -> std::collections::BTreeSet<u64> {
        self.coeffs.iter().flat_map(|c| c.denominator_primes()).collect()
    }

    /// Nonzero terms as `(element, coefficient)` in enumeration order.
    pub fn terms(&self) -> Vec<(GroupElem, CycNum)> {
        self.support().into_iter().map(|i| (*self.group.element(i), self.coeffs[i].clone())).collect()
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{g}")?;
        }
        Ok(())
    }
}

impl Add for &AlgElem {
    type Output = AlgElem;
    fn add(self, o: &AlgElem) -> AlgElem {
        self.check_same(o);
        if self.k != o.k {
            let (a, b) = self.aligned(o);
            return &a + &b;
        }
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        AlgElem { group: self.group.clone(), k: self.common_k(o), coeffs }
    }
}

impl Sub for &AlgElem {
    type Output = AlgElem;
    fn sub(self, o: &AlgElem) -> AlgElem {
        self.check_same(o);
        if self.k != o.k {
            let (a, b) = self.aligned(o);
            return &a - &b;
        }
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
        AlgElem { group: self.group.clone(), k: self.common_k(o), coeffs }
    }
}

impl Mul for &AlgElem {
    type Output = AlgElem;
    fn mul(self, o: &AlgElem) -> AlgElem {
        self.mul_elem(o)
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem { group: self.group.clone(), k: self.k, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;

    #[test]
    fn multiplication_matrices_agree_with_product() {
        let g = Arc::new(FiniteGroup::from_strings("S3", Family::Perm, &["(1,2)", "(1,2,3)"]).unwrap());
        let mut a = AlgElem::zero(&g, 3);
        a.coeffs[1] = CycNum::zeta(3, 1);
        a.coeffs[2] = CycNum::from_int(3, 2);
        let mut b = AlgElem::zero(&g, 3);
        b.coeffs[3] = CycNum::one(3);
        b.coeffs[5] = CycNum::from_int(3, -1);
        let ab = &a * &b;
        assert_eq!(a.mul_matrix(Side::Right).mul_vec(&b.coeffs), ab.coeffs);
        assert_eq!(b.mul_matrix(Side::Left).mul_vec(&a.coeffs), ab.coeffs);
        let ba = &b * &a;
        assert_ne!(ab, ba);
    }
}
