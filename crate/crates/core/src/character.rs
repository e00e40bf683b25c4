//! Class functions on the ambient group and degree-one characters of
//! subgroups, with induction, inner products and the associated idempotents.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::algebra::AlgElem;
use crate::cyclotomic::{CycError, CycNum};
use crate::group::{FiniteGroup, GroupElem, GroupError};

#[derive(Debug, thiserror::Error)]
pub enum CharError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error("assignment on {0} does not extend to a homomorphism")]
    Inconsistent(String),
    #[error("value assigned to {0} is not a root of unity")]
    NotRootOfUnity(String),
    #[error("character has degree zero")]
    DegreeZero,
    #[error("no class of {group} contains {elem}")]
    ClassMatch { group: String, elem: String },
}

/// Conductor large enough for every value; rationals impose nothing.
pub fn common_conductor(values: &[CycNum]) -> Result<u32, CycError> {
    let mut k = 1u32;
    for v in values {
        if v.is_rational() {
            continue;
        }
        let m = v.minimal_conductor();
        let l = num_integer::Integer::lcm(&k, &m);
        crate::cyclotomic::conductor(l)?;
        k = l;
    }
    Ok(k)
}

/// A class function of the ambient group: one value per conjugacy class in
/// the group's class order.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    pub group: Arc<FiniteGroup>,
    pub values: Vec<CycNum>,
}

impl PartialEq for ClassFunction {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.group, &o.group) && self.values == o.values
    }
}

impl PartialEq for SubgroupFunction {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.group, &o.group) && self.members == o.members && self.values == o.values
    }
}

impl ClassFunction {
    pub fn new(group: &Arc<FiniteGroup>, values: Vec<CycNum>) -> ClassFunction {
        assert_eq!(values.len(), group.conjugacy_classes().len());
        ClassFunction { group: group.clone(), values }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> ClassFunction {
        let n = group.conjugacy_classes().len();
        Self::new(group, vec![CycNum::one(1); n])
    }

    /// Value at the identity class.
    pub fn degree(&self) -> CycNum {
        self.values[self.group.class_of(0)].clone()
    }

    pub fn value_at(&self, elem: usize) -> &CycNum {
        &self.values[self.group.class_of(elem)]
    }

    pub fn conductor(&self) -> Result<u32, CycError> {
        common_conductor(&self.values)
    }

    pub fn try_add(&self, o: &ClassFunction) -> Result<ClassFunction, CycError> {
        let values = self.values.iter().zip(&o.values).map(|(a, b)| a.try_add(b)).collect::<Result<_, _>>()?;
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn try_sub(&self, o: &ClassFunction) -> Result<ClassFunction, CycError> {
        let values = self.values.iter().zip(&o.values).map(|(a, b)| a.try_sub(b)).collect::<Result<_, _>>()?;
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    pub fn scale_int(&self, a: i64) -> ClassFunction {
        let q = BigRational::from_integer(BigInt::from(a));
        ClassFunction { group: self.group.clone(), values: self.values.iter().map(|v| v.scale(&q)).collect() }
    }

    pub fn galois(&self, j: i64) -> Result<ClassFunction, CycError> {
        let values = self
            .values
            .iter()
            .map(|v| if v.is_rational() { Ok(v.clone()) } else { v.galois(j) })
            .collect::<Result<_, _>>()?;
        Ok(ClassFunction { group: self.group.clone(), values })
    }

    /// `(1/|G|) sum_g chi(g) conj(psi(g))`.
    pub fn inner_product(&self, o: &ClassFunction) -> Result<CycNum, CycError> {
        let g = &self.group;
        let mut acc = CycNum::zero(1);
        for (c, cls) in g.conjugacy_classes().iter().enumerate() {
            let t = self.values[c].try_mul(&o.values[c].conj())?;
            if !t.is_zero() {
                let size = BigRational::from_integer(BigInt::from(cls.size));
                acc = acc.try_add(&t.scale(&size))?;
            }
        }
        Ok(acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(g.order()))))
    }

    /// `e = (chi(1)/|G|) sum_g chi(g^-1) g` over `Q(z_k)`.
    pub fn central_idempotent(&self, k: u32) -> Result<AlgElem, CharError> {
        let g = &self.group;
        let deg = self.degree();
        if deg.is_zero() {
            return Err(CharError::DegreeZero);
        }
        let f = deg.scale(&BigRational::new(BigInt::from(1), BigInt::from(g.order()))).to_conductor(k)?;
        let per_class: Vec<CycNum> =
            self.values.iter().map(|v| Ok(f.try_mul(&v.conj().to_conductor(k)?)?)).collect::<Result<_, CycError>>()?;
        let coeffs = (0..g.order()).map(|x| per_class[g.class_of(x)].clone()).collect();
        Ok(AlgElem::from_vec(g, k, coeffs))
    }

    /// Restriction to a subgroup given by its member indices.
    pub fn restrict(&self, members: &[usize]) -> SubgroupFunction {
        let mut values = vec![None; self.group.order()];
        for &m in members {
            values[m] = Some(self.value_at(m).clone());
        }
        SubgroupFunction { group: self.group.clone(), members: members.to_vec(), values }
    }
}

/// A function on a subgroup `H` of the ambient group, stored on `H`'s
/// element indices inside the ambient group.
#[derive(Clone, Debug)]
pub struct SubgroupFunction {
    pub group: Arc<FiniteGroup>,
    /// Sorted ambient indices of `H`.
    pub members: Vec<usize>,
    values: Vec<Option<CycNum>>,
}

impl SubgroupFunction {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn get(&self, x: usize) -> Option<&CycNum> {
        self.values[x].as_ref()
    }

    pub fn degree(&self) -> &CycNum {
        self.values[0].as_ref().expect("identity lies in every subgroup")
    }

    /// Trivial character of the subgroup.
    pub fn trivial(group: &Arc<FiniteGroup>, members: &[usize]) -> SubgroupFunction {
        let mut values = vec![None; group.order()];
        for &m in members {
            values[m] = Some(CycNum::one(1));
        }
        let mut members = members.to_vec();
        members.sort_unstable();
        SubgroupFunction { group: group.clone(), members, values }
    }

    /// `x -> self(g^-1 x g)` on `g H g^-1`, for ambient index `g`.
    pub fn transport(&self, g: usize) -> SubgroupFunction {
        let grp = &self.group;
        let mut values = vec![None; grp.order()];
        let mut members: Vec<usize> = Vec::with_capacity(self.members.len());
        for &h in &self.members {
            let y = grp.conj_idx(g, h);
            values[y] = self.values[h].clone();
            members.push(y);
        }
        members.sort_unstable();
        SubgroupFunction { group: grp.clone(), members, values }
    }

    pub fn galois(&self, j: i64) -> Result<SubgroupFunction, CycError> {
        let mut out = self.clone();
        for v in out.values.iter_mut().flatten() {
            if !v.is_rational() {
                *v = v.galois(j)?;
            }
        }
        Ok(out)
    }

    pub fn conductor(&self) -> Result<u32, CycError> {
        let vals: Vec<CycNum> = self.members.iter().map(|&m| self.values[m].clone().unwrap()).collect();
        common_conductor(&vals)
    }

    /// `Ind_H^G`: `(1/|H|) sum_{x in G} f(x^-1 g x)` at each class.
    pub fn induce(&self) -> Result<ClassFunction, CycError> {
        let g = &self.group;
        let n = g.order();
        let inv_h = BigRational::new(BigInt::from(1), BigInt::from(self.order()));
        let values = g
            .conjugacy_classes()
            .iter()
            .map(|cls| {
                let r = cls.representative;
                let mut acc = CycNum::zero(1);
                for x in 0..n {
                    if let Some(v) = &self.values[g.conj_idx(g.inv_idx(x), r)] {
                        acc = acc.try_add(v)?;
                    }
                }
                Ok(acc.scale(&inv_h))
            })
            .collect::<Result<Vec<_>, CycError>>()?;
        Ok(ClassFunction::new(g, values))
    }

    /// `e = (f(1)/|H|) sum_{h in H} f(h^-1) h` inside `Q(z_k)[G]`.
    pub fn idempotent(&self, k: u32) -> Result<AlgElem, CharError> {
        let g = &self.group;
        let deg = self.degree().clone();
        if deg.is_zero() {
            return Err(CharError::DegreeZero);
        }
        let f = deg.scale(&BigRational::new(BigInt::from(1), BigInt::from(self.order()))).to_conductor(k)?;
        let mut coeffs = vec![CycNum::zero(k); g.order()];
        for &h in &self.members {
            let v = self.values[g.inv_idx(h)].as_ref().expect("subgroup closed under inverses");
            coeffs[h] = f.try_mul(&v.to_conductor(k)?)?;
        }
        Ok(AlgElem::from_vec(g, k, coeffs))
    }

    /// `(1/|H|) sum_h f(h) conj(f'(h))` for two functions on the same subgroup.
    pub fn inner_product(&self, o: &SubgroupFunction) -> Result<CycNum, CycError> {
        let mut acc = CycNum::zero(1);
        for &h in &self.members {
            let a = self.values[h].as_ref().unwrap();
            let b = o.values[h].as_ref().unwrap();
            acc = acc.try_add(&a.try_mul(&b.conj())?)?;
        }
        Ok(acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(self.order()))))
    }
}

fn is_root_of_unity(v: &CycNum) -> bool {
    if v.is_zero() {
        return false;
    }
    let k = v.minimal_conductor();
    let bound = 2 * k.max(2);
    let mut p = v.clone();
    for _ in 0..bound {
        if p.is_one() {
            return true;
        }
        p = p.try_mul(v).expect("same conductor");
    }
    false
}

/// Extends `generator -> value` to a homomorphism on the subgroup the
/// generators span, failing if the assignment is not multiplicative.
pub fn degree_one_char(
    group: &Arc<FiniteGroup>,
    label: &str,
    pairs: &[(GroupElem, CycNum)],
) -> Result<SubgroupFunction, CharError> {
    let n = group.order();
    let mut gens = Vec::with_capacity(pairs.len());
    for (g, v) in pairs {
        let i = group.index_of(g).ok_or_else(|| GroupError::NotInGroup(g.to_string(), group.name.clone()))?;
        if !is_root_of_unity(v) {
            return Err(CharError::NotRootOfUnity(g.to_string()));
        }
        gens.push((i, v.clone()));
    }
    let mut values: Vec<Option<CycNum>> = vec![None; n];
    values[0] = Some(CycNum::one(1));
    let mut members = vec![0usize];
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (s, v) in &gens {
            let y = group.mul_idx(x, *s);
            let val = values[x].as_ref().unwrap().try_mul(v)?;
            match &values[y] {
                Some(old) if *old != val => return Err(CharError::Inconsistent(label.to_string())),
                Some(_) => {}
                None => {
                    values[y] = Some(val);
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
    for &a in &members {
        for &b in &members {
            let ab = group.mul_idx(a, b);
            let prod = values[a].as_ref().unwrap().try_mul(values[b].as_ref().unwrap())?;
            if values[ab].as_ref() != Some(&prod) {
                return Err(CharError::Inconsistent(label.to_string()));
            }
        }
    }
    members.sort_unstable();
    Ok(SubgroupFunction { group: group.clone(), members, values })
}

/// All degree-one characters of a subgroup, enumerated through its
/// abelianization. Values lie in `Q(z_k)`, `k` the abelianization exponent.
pub fn linear_characters(group: &Arc<FiniteGroup>, members: &[usize]) -> Result<Vec<SubgroupFunction>, CharError> {
    let elems: Vec<GroupElem> = members.iter().map(|&i| *group.element(i)).collect();
    let h = FiniteGroup::generate("H", &elems)?;
    let (coset_of, count) = h.abelianization();
    // Each coset is represented by its first element; a homomorphism on the
    // abelian quotient is determined by values on a generating set.
    let reps: Vec<usize> = (0..count).map(|c| coset_of.iter().position(|&x| x == c).unwrap()).collect();
    let qmul = |a: usize, b: usize| coset_of[h.mul_idx(reps[a], reps[b])];
    let qorder = |a: usize| {
        let mut x = a;
        let mut o = 1;
        while x != coset_of[0] {
            x = qmul(x, a);
            o += 1;
        }
        o
    };
    let exponent = (0..count).map(qorder).fold(1usize, num_integer::lcm);
    let exponent = u32::try_from(exponent).expect("small exponent");
    let mut gens: Vec<usize> = Vec::new();
    let mut span: BTreeSet<usize> = BTreeSet::from([coset_of[0]]);
    for c in 0..count {
        if !span.contains(&c) {
            gens.push(c);
            let mut frontier: Vec<usize> = span.iter().copied().collect();
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = qmul(x, g);
                    if span.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    let orders: Vec<usize> = gens.iter().map(|&g| qorder(g)).collect();
    let total: usize = orders.iter().product();
    for mut code in 0..total {
        let mut pairs = Vec::new();
        for (gi, &g) in gens.iter().enumerate() {
            let o = orders[gi];
            let e = code % o;
            code /= o;
            let step = exponent as usize / o;
            let hidx = reps[g];
            pairs.push((*h.element(hidx), CycNum::zeta(exponent, (e * step) as i64)));
        }
        // Generators of the quotient need not generate H; add kernel
        // generators of the projection so the extension covers H.
        let mut all_pairs = pairs.clone();
        for x in 0..h.order() {
            if coset_of[x] == coset_of[0] {
                all_pairs.push((*h.element(x), CycNum::one(exponent)));
            }
        }
        match degree_one_char(group, "linear", &all_pairs) {
            Ok(ch) if ch.order() == members.len() => out.push(ch),
            Ok(_) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Finds the ambient conjugacy class containing `elem`.
pub fn class_index(group: &FiniteGroup, elem: &GroupElem) -> Result<usize, CharError> {
    let i = group
        .index_of(elem)
        .ok_or_else(|| CharError::ClassMatch { group: group.name.clone(), elem: elem.to_string() })?;
    Ok(group.class_of(i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Family;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_strings("S3", Family::Perm, &["(1,2)", "(1,2,3)"]).unwrap())
    }

    #[test]
    fn sign_character_and_induction() {
        let g = s3();
        let t = GroupElem::parse("(1,2)", Family::Perm).unwrap();
        let c = GroupElem::parse("(1,2,3)", Family::Perm).unwrap();
        let sign = degree_one_char(&g, "sign", &[(t, CycNum::from_int(1, -1)), (c, CycNum::one(1))]).unwrap();
        assert_eq!(sign.order(), 6);
        let ind = sign.induce().unwrap();
        assert_eq!(ind.degree(), CycNum::one(1));
        assert!(degree_one_char(&g, "bad", &[(c, CycNum::from_int(1, -1))]).is_err());

        let c3: Vec<usize> = vec![0, g.index_of(&c).unwrap(), g.index_of(&c.mul(&c)).unwrap()];
        let triv = SubgroupFunction::trivial(&g, &c3);
        let ind = triv.induce().unwrap();
        assert_eq!(ind.degree(), CycNum::from_int(1, 2));
        assert_eq!(ind.inner_product(&ind).unwrap(), CycNum::from_int(1, 2));
        let e = triv.idempotent(1).unwrap();
        assert!(e.is_idempotent());
        assert!(e.is_central());
    }

    #[test]
    fn linear_characters_of_cyclic_group() {
        let g = s3();
        let c = GroupElem::parse("(1,2,3)", Family::Perm).unwrap();
        let c3: Vec<usize> = vec![0, g.index_of(&c).unwrap(), g.index_of(&c.mul(&c)).unwrap()];
        let chars = linear_characters(&g, &c3).unwrap();
        assert_eq!(chars.len(), 3);
        for a in &chars {
            for b in &chars {
                let ip = a.inner_product(b).unwrap();
                assert_eq!(ip.is_one(), a == b);
                assert_eq!(ip.is_zero(), a != b);
            }
        }
        assert_eq!(linear_characters(&g, &(0..6).collect::<Vec<_>>()).unwrap().len(), 2);
    }
}
