//! Concrete finite groups: permutations of at most eight points and 2x2
//! matrices over GF(8), enumerated by breadth-first closure.
//!
//! Products follow function composition: in `a * b` the right factor acts
//! first. For permutations `(1,2)(3,4) * (1,2,3) = (2,4,3)`; for matrices it
//! is the ordinary matrix product.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Upper bound on enumerated group orders.
pub const MAX_GROUP_ORDER: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("cannot parse group element `{0}`")]
    Parse(String),
    #[error("generators mix permutations and matrices")]
    MixedFamilies,
    #[error("generated group exceeds {MAX_GROUP_ORDER} elements")]
    TooLarge,
    #[error("element {0} is not in group {1}")]
    NotInGroup(String, String),
    #[error("no generators given")]
    NoGenerators,
}

/// A permutation of `{1..8}`, stored as 0-based images.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(pub [u8; 8]);

impl Perm {
    pub const IDENTITY: Perm = Perm([0, 1, 2, 3, 4, 5, 6, 7]);

    /// Parses cycle notation such as `(1,8,2)(4,5,6)`; `()` and `Id(G)` give
    /// the identity.
    pub fn parse(s: &str) -> Result<Perm, GroupError> {
        let bad = || GroupError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t == "()" || t == "Id(G)" || t == "1" {
            return Ok(Perm::IDENTITY);
        }
        let mut img = Perm::IDENTITY.0;
        let mut seen = [false; 8];
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = inner.find(')').ok_or_else(bad)?;
            let pts = inner[..close]
                .split(',')
                .map(|x| x.parse::<u8>().ok().filter(|&v| (1..=8).contains(&v)).map(|v| v - 1))
                .collect::<Option<Vec<u8>>>()
                .ok_or_else(bad)?;
            for &p in &pts {
                if std::mem::replace(&mut seen[p as usize], true) {
                    return Err(bad());
                }
            }
            for (i, &p) in pts.iter().enumerate() {
                img[p as usize] = pts[(i + 1) % pts.len()];
            }
            rest = &inner[close + 1..];
        }
        Ok(Perm(img))
    }

    /// `self * other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        let mut out = [0u8; 8];
        for (x, o) in out.iter_mut().enumerate() {
            *o = self.0[other.0[x] as usize];
        }
        Perm(out)
    }

    pub fn inverse(&self) -> Perm {
        let mut out = [0u8; 8];
        for (x, &y) in self.0.iter().enumerate() {
            out[y as usize] = x as u8;
        }
        Perm(out)
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: u8) -> u8 {
        self.0[x as usize - 1] + 1
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut done = [false; 8];
        let mut any = false;
        for start in 0..8 {
            if done[start] || self.0[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "({}", start + 1)?;
            done[start] = true;
            let mut x = self.0[start] as usize;
            while x != start {
                write!(f, ",{}", x + 1)?;
                done[x] = true;
                x = self.0[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Choice of defining polynomial for GF(8); `a` is the class of `x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub enum Gf8Poly {
    /// `x^3 + x + 1`
    #[default]
    Primary,
    /// `x^3 + x^2 + 1`
    Fallback,
}

struct Gf8Tables {
    mul: [[u8; 8]; 8],
    /// `exp[i] = a^i`
    exp: [u8; 7],
    /// `log[exp[i]] = i`; `log[0]` unused.
    log: [u8; 8],
}

impl Gf8Poly {
    pub fn bits(self) -> u8 {
        match self {
            Gf8Poly::Primary => 0b1011,
            Gf8Poly::Fallback => 0b1101,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Gf8Poly::Primary => "x^3+x+1",
            Gf8Poly::Fallback => "x^3+x^2+1",
        }
    }

    fn tables(self) -> &'static Gf8Tables {
        static T: OnceLock<[Gf8Tables; 2]> = OnceLock::new();
        let t = T.get_or_init(|| [Self::build(0b1011), Self::build(0b1101)]);
        &t[self as usize]
    }

    fn build(modulus: u8) -> Gf8Tables {
        let clmul = |a: u8, b: u8| {
            let mut r: u8 = 0;
            for i in 0..3 {
                if b >> i & 1 == 1 {
                    r ^= a << i;
                }
            }
            for i in (3..5).rev() {
                if r >> i & 1 == 1 {
                    r ^= modulus << (i - 3);
                }
            }
            r
        };
        let mut mul = [[0u8; 8]; 8];
        for (a, row) in mul.iter_mut().enumerate() {
            for (b, v) in row.iter_mut().enumerate() {
                *v = clmul(a as u8, b as u8);
            }
        }
        let mut exp = [0u8; 7];
        let mut log = [0u8; 8];
        let mut x = 1u8;
        for i in 0..7 {
            exp[i] = x;
            log[x as usize] = i as u8;
            x = mul[x as usize][2];
        }
        Gf8Tables { mul, exp, log }
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        self.tables().mul[a as usize][b as usize]
    }

    /// `a^i`.
    pub fn power(self, i: u32) -> u8 {
        self.tables().exp[(i % 7) as usize]
    }

    fn entry_string(self, v: u8) -> String {
        match v {
            0 => "0".into(),
            1 => "1".into(),
            _ => match self.tables().log[v as usize] {
                1 => "a".into(),
                e => format!("a^{e}"),
            },
        }
    }

    fn parse_entry(self, s: &str) -> Option<u8> {
        match s {
            "0" => Some(0),
            "1" => Some(1),
            "a" => Some(self.power(1)),
            _ => s.strip_prefix("a^").and_then(|e| e.parse::<u32>().ok()).map(|e| self.power(e)),
        }
    }
}

/// A 2x2 matrix over GF(8), row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mat2 {
    pub e: [u8; 4],
    pub poly: Gf8Poly,
}

impl Mat2 {
    pub fn identity(poly: Gf8Poly) -> Mat2 {
        Mat2 { e: [1, 0, 0, 1], poly }
    }

    /// Parses `[[a^3,a],[a^4,a]]`.
    pub fn parse(s: &str, poly: Gf8Poly) -> Result<Mat2, GroupError> {
        let bad = || GroupError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = t.strip_prefix("[[").and_then(|x| x.strip_suffix("]]")).ok_or_else(bad)?;
        let (r0, r1) = body.split_once("],[").ok_or_else(bad)?;
        let vals = r0
            .split(',')
            .chain(r1.split(','))
            .map(|x| poly.parse_entry(x))
            .collect::<Option<Vec<u8>>>()
            .ok_or_else(bad)?;
        if vals.len() != 4 {
            return Err(bad());
        }
        Ok(Mat2 { e: [vals[0], vals[1], vals[2], vals[3]], poly })
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let p = self.poly;
        let m = |a, b| p.mul(a, b);
        let [a, b, c, d] = self.e;
        let [w, x, y, z] = o.e;
        Mat2 { e: [m(a, w) ^ m(b, y), m(a, x) ^ m(b, z), m(c, w) ^ m(d, y), m(c, x) ^ m(d, z)], poly: p }
    }

    pub fn det(&self) -> u8 {
        let p = self.poly;
        p.mul(self.e[0], self.e[3]) ^ p.mul(self.e[1], self.e[2])
    }

    /// Inverse of a determinant-one matrix (characteristic two, no signs).
    pub fn inverse(&self) -> Mat2 {
        debug_assert_eq!(self.det(), 1);
        Mat2 { e: [self.e[3], self.e[1], self.e[2], self.e[0]], poly: self.poly }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |i: usize| self.poly.entry_string(self.e[i]);
        write!(f, "[[{},{}],[{},{}]]", s(0), s(1), s(2), s(3))
    }
}

/// A group element from either concrete family.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum GroupElem {
    Perm(Perm),
    Mat(Mat2),
}

/// Which concrete family a group lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    Perm,
    Mat(Gf8Poly),
}

impl GroupElem {
    pub fn parse(s: &str, family: Family) -> Result<GroupElem, GroupError> {
        match family {
            Family::Perm => Perm::parse(s).map(GroupElem::Perm),
            Family::Mat(p) => Mat2::parse(s, p).map(GroupElem::Mat),
        }
    }

    pub fn family(&self) -> Family {
        match self {
            GroupElem::Perm(_) => Family::Perm,
            GroupElem::Mat(m) => Family::Mat(m.poly),
        }
    }

    pub fn identity(family: Family) -> GroupElem {
        match family {
            Family::Perm => GroupElem::Perm(Perm::IDENTITY),
            Family::Mat(p) => GroupElem::Mat(Mat2::identity(p)),
        }
    }

    /// Panics when the families differ.
    pub fn mul(&self, o: &GroupElem) -> GroupElem {
        match (self, o) {
            (GroupElem::Perm(a), GroupElem::Perm(b)) => GroupElem::Perm(a.compose(b)),
            (GroupElem::Mat(a), GroupElem::Mat(b)) if a.poly == b.poly => GroupElem::Mat(a.mul(b)),
            _ => panic!("product of elements from different families"),
        }
    }

    pub fn inverse(&self) -> GroupElem {
        match self {
            GroupElem::Perm(a) => GroupElem::Perm(a.inverse()),
            GroupElem::Mat(m) => GroupElem::Mat(m.inverse()),
        }
    }

    /// `g * self * g^-1`.
    pub fn conjugate_by(&self, g: &GroupElem) -> GroupElem {
        g.mul(self).mul(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElem::identity(self.family())
    }

    pub fn order(&self) -> usize {
        let mut x = *self;
        let mut n = 1;
        while !x.is_identity() {
            x = x.mul(self);
            n += 1;
        }
        n
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElem::Perm(p) => p.fmt(f),
            GroupElem::Mat(m) => m.fmt(f),
        }
    }
}

/// A conjugacy class of an enumerated group.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// First element of the class in enumeration order.
    pub representative: usize,
    pub size: usize,
    pub element_order: usize,
    /// Element indices, ascending.
    pub members: Vec<usize>,
}

#[derive(Debug)]
struct ClassData {
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
}

/// A fully enumerated finite group. Index 0 is the identity.
#[derive(Debug)]
pub struct FiniteGroup {
    pub name: String,
    family: Family,
    gens: Vec<GroupElem>,
    elements: Vec<GroupElem>,
    index: HashMap<GroupElem, usize>,
    inverses: Vec<usize>,
    table: OnceLock<Vec<u32>>,
    classes: OnceLock<ClassData>,
}

impl FiniteGroup {
    /// Breadth-first closure of `gens` from the identity, multiplying by
    /// generators on the right.
    pub fn generate(name: &str, gens: &[GroupElem]) -> Result<FiniteGroup, GroupError> {
        let family = gens.first().ok_or(GroupError::NoGenerators)?.family();
        if gens.iter().any(|g| g.family() != family) {
            return Err(GroupError::MixedFamilies);
        }
        let id = GroupElem::identity(family);
        let mut elements = vec![id];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let y = elements[i].mul(g);
                if !index.contains_key(&y) {
                    if elements.len() >= MAX_GROUP_ORDER {
                        return Err(GroupError::TooLarge);
                    }
                    index.insert(y, elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let inverses = elements.iter().map(|x| index[&x.inverse()]).collect();
        Ok(FiniteGroup {
            name: name.to_string(),
            family,
            gens: gens.to_vec(),
            elements,
            index,
            inverses,
            table: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    /// Parses generators in the family's notation and generates.
    pub fn from_strings(name: &str, family: Family, gens: &[&str]) -> Result<FiniteGroup, GroupError> {
        let gens = gens.iter().map(|s| GroupElem::parse(s, family)).collect::<Result<Vec<_>, _>>()?;
        Self::generate(name, &gens)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn generators(&self) -> &[GroupElem] {
        &self.gens
    }

    pub fn elements(&self) -> &[GroupElem] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElem {
        &self.elements[i]
    }

    pub fn index_of(&self, g: &GroupElem) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GroupElem) -> bool {
        self.index.contains_key(g)
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.inverses[i]
    }

    fn product_table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let n = self.order();
            let mut t = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    t[i * n + j] = self.index[&self.elements[i].mul(&self.elements[j])] as u32;
                }
            }
            t
        })
    }

    /// Index of `elements[i] * elements[j]`.
    #[inline]
    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.product_table()[i * self.order() + j] as usize
    }

    /// Index of `g_i * x_j * g_i^-1`.
    pub fn conj_idx(&self, g: usize, x: usize) -> usize {
        self.mul_idx(self.mul_idx(g, x), self.inverses[g])
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| {
            let n = self.order();
            let mut class_of = vec![usize::MAX; n];
            let mut raw: Vec<Vec<usize>> = Vec::new();
            for x in 0..n {
                if class_of[x] != usize::MAX {
                    continue;
                }
                let members: BTreeSet<usize> = (0..n).map(|g| self.conj_idx(g, x)).collect();
                for &m in &members {
                    class_of[m] = raw.len();
                }
                raw.push(members.into_iter().collect());
            }
            let mut classes: Vec<ConjugacyClass> = raw
                .into_iter()
                .map(|members| ConjugacyClass {
                    representative: members[0],
                    size: members.len(),
                    element_order: self.elements[members[0]].order(),
                    members,
                })
                .collect();
            classes.sort_by_key(|c| (c.element_order, c.size, c.representative));
            for (ci, c) in classes.iter().enumerate() {
                for &m in &c.members {
                    class_of[m] = ci;
                }
            }
            ClassData { classes, class_of }
        })
    }

    /// Classes sorted by element order, then size, then first element.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &self.class_data().classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_data().class_of[i]
    }

    /// Indices (in `self`) of the elements of `h`.
    pub fn indices_of(&self, h: &FiniteGroup) -> Result<Vec<usize>, GroupError> {
        h.elements
            .iter()
            .map(|x| self.index_of(x).ok_or_else(|| GroupError::NotInGroup(x.to_string(), self.name.clone())))
            .collect()
    }

    /// Sorted index set of `h` inside `self`.
    pub fn element_set(&self, h: &FiniteGroup) -> Result<Vec<usize>, GroupError> {
        let mut v = self.indices_of(h)?;
        v.sort_unstable();
        Ok(v)
    }

    /// The subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, name: &str, gens: &[GroupElem]) -> Result<FiniteGroup, GroupError> {
        for g in gens {
            if !self.contains(g) {
                return Err(GroupError::NotInGroup(g.to_string(), self.name.clone()));
            }
        }
        Self::generate(name, gens)
    }

    /// `g h g^-1` generated from conjugated generators.
    pub fn conjugate_subgroup(&self, name: &str, h: &FiniteGroup, g: &GroupElem) -> FiniteGroup {
        let gens: Vec<GroupElem> = h.gens.iter().map(|x| x.conjugate_by(g)).collect();
        Self::generate(name, &gens).expect("conjugate of a valid subgroup")
    }

    fn conjugate_set(&self, hset: &[usize], g: usize) -> Vec<usize> {
        let mut v: Vec<usize> = hset.iter().map(|&x| self.conj_idx(g, x)).collect();
        v.sort_unstable();
        v
    }

    /// The conjugacy class of `h` as distinct element sets, each paired with
    /// the first conjugator (in enumeration order) producing it. The first
    /// entry is `h` itself with the identity.
    pub fn all_conjugates(&self, h: &FiniteGroup) -> Result<Vec<(Vec<usize>, usize)>, GroupError> {
        let hset = self.element_set(h)?;
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut out = Vec::new();
        for g in 0..self.order() {
            let s = self.conjugate_set(&hset, g);
            if !seen.contains_key(&s) {
                seen.insert(s.clone(), g);
                out.push((s, g));
            }
        }
        Ok(out)
    }

    /// First `g` in enumeration order with `g h1 g^-1 = h2`.
    pub fn find_conjugator(&self, h1: &FiniteGroup, h2: &FiniteGroup) -> Result<Option<usize>, GroupError> {
        let s1 = self.element_set(h1)?;
        let s2 = self.element_set(h2)?;
        if s1.len() != s2.len() {
            return Ok(None);
        }
        Ok((0..self.order()).find(|&g| self.conjugate_set(&s1, g) == s2))
    }

    /// Sorted element indices common to two subgroups.
    pub fn intersection(&self, h1: &FiniteGroup, h2: &FiniteGroup) -> Result<Vec<usize>, GroupError> {
        let a: BTreeSet<usize> = self.indices_of(h1)?.into_iter().collect();
        let b: BTreeSet<usize> = self.indices_of(h2)?.into_iter().collect();
        Ok(a.intersection(&b).copied().collect())
    }

    /// The commutator subgroup `[G, G]`.
    pub fn derived_subgroup(&self) -> FiniteGroup {
        let n = self.order();
        let mut comms: BTreeSet<usize> = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul_idx(a, b);
                let ba = self.mul_idx(b, a);
                comms.insert(self.mul_idx(ab, self.inverses[ba]));
            }
        }
        let mut gens: Vec<GroupElem> = comms.into_iter().map(|i| self.elements[i]).collect();
        if gens.is_empty() {
            gens.push(GroupElem::identity(self.family));
        }
        let name = format!("[{},{}]", self.name, self.name);
        let full = Self::generate(&name, &gens).expect("commutators generate a subgroup");
        // Regenerate from a short generating set for cheaper downstream work.
        let mut small: Vec<GroupElem> = Vec::new();
        let mut have = Self::generate(&name, &[GroupElem::identity(self.family)]).expect("trivial");
        for g in full.elements() {
            if !have.contains(g) {
                small.push(*g);
                have = Self::generate(&name, &small).expect("subgroup");
            }
        }
        have
    }

    /// Cosets of the derived subgroup: `(coset index of each element,
    /// number of cosets)`.
    pub fn abelianization(&self) -> (Vec<usize>, usize) {
        let d = self.derived_subgroup();
        let dset = self.indices_of(&d).expect("derived subgroup lies in the group");
        let mut coset_of = vec![usize::MAX; self.order()];
        let mut count = 0;
        for x in 0..self.order() {
            if coset_of[x] == usize::MAX {
                for &h in &dset {
                    coset_of[self.mul_idx(x, h)] = count;
                }
                count += 1;
            }
        }
        (coset_of, count)
    }

    /// Representatives of right cosets `H g`, one per coset, smallest index.
    pub fn right_coset_reps(&self, h: &FiniteGroup) -> Result<Vec<usize>, GroupError> {
        let hidx = self.indices_of(h)?;
        let mut done = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in 0..self.order() {
            if !done[g] {
                reps.push(g);
                for &x in &hidx {
                    done[self.mul_idx(x, g)] = true;
                }
            }
        }
        Ok(reps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GroupElem {
        GroupElem::Perm(Perm::parse(s).unwrap())
    }

    #[test]
    fn composition_convention() {
        assert_eq!(p("(1,2)(3,4)").mul(&p("(1,2,3)")), p("(2,4,3)"));
        assert_eq!(p("(2,4,3)").to_string(), "(2,4,3)");
        assert_eq!(p("()").to_string(), "()");
        assert!(Perm::parse("(1,9)").is_err());
        assert!(Perm::parse("(1,2)(2,3)").is_err());
    }

    #[test]
    fn gf8_matrix_square() {
        let m = Mat2::parse("[[0,1],[1,1]]", Gf8Poly::Primary).unwrap();
        assert_eq!(m.mul(&m).to_string(), "[[1,1],[1,0]]");
        let g = Mat2::parse("[[a^3,a],[a^4,a]]", Gf8Poly::Primary).unwrap();
        assert_eq!(g.det(), 1);
        assert_eq!(g.to_string(), "[[a^3,a],[a^4,a]]");
    }

    #[test]
    fn small_groups() {
        let s3 = FiniteGroup::from_strings("S3", Family::Perm, &["(1,2)", "(1,2,3)"]).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.element(0).is_identity());
        let cls = s3.conjugacy_classes();
        assert_eq!(cls.iter().map(|c| c.size).collect::<Vec<_>>(), vec![1, 3, 2]);
        assert_eq!(s3.derived_subgroup().order(), 3);
        assert_eq!(s3.abelianization().1, 2);
        let c2 = s3.subgroup("C2", &[p("(1,2)")]).unwrap();
        assert_eq!(s3.all_conjugates(&c2).unwrap().len(), 3);
        assert_eq!(s3.right_coset_reps(&c2).unwrap().len(), 3);
    }
}
