//! One-sided ideals of `Q(z_k)[G]`, annihilators, in-algebra equation
//! solving and the certificates that record solutions.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, Side};
use crate::cyclotomic::CycNum;
use crate::group::{FiniteGroup, GroupElem, GroupError};
use crate::linalg::{combine, nullspace, solve_particular, Matrix, Subspace};

/// Pivot rule of the row reduction, recorded in certificates.
pub const PIVOT_RULE: &str = "first-nonzero-row, left-to-right columns";

/// A one-sided ideal `c R` (right) or `R c` (left) with its RREF span.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    pub side: Side,
    pub generator: String,
    pub space: Subspace,
}

impl IdealBasis {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, a: &AlgElem) -> bool {
        self.space.contains(&a.embed(self.space.k).unwrap_or_else(|e| panic!("{e}")).coeffs)
    }
}

/// The ideal generated by `c` on the given side.
pub fn ideal_of(c: &AlgElem, side: Side, generator: &str) -> IdealBasis {
    let n = c.group.order();
    IdealBasis { side, generator: generator.to_string(), space: Subspace::span(c.k, n, c.translates(side)) }
}

/// Solves `c q = b` (`Side::Right`) or `q c = b` (`Side::Left`).
pub fn solve_in_algebra(c: &AlgElem, b: &AlgElem, side: Side) -> Option<AlgElem> {
    let k = num_integer::Integer::lcm(&c.k, &b.k);
    let c = c.embed(k).ok()?;
    let b = b.embed(k).ok()?;
    if b.is_idempotent() {
        return solve_in_idempotent_ideal(&c, &b, side);
    }
    let m = c.mul_matrix(side);
    solve_particular(&m, &b.coeffs).map(|x| AlgElem::from_vec(&c.group, k, x))
}

/// For idempotent `b`, a solution `q` may be replaced by `q b` (or `b q`),
/// so the unknown ranges over `R b` (or `b R`) only.
fn solve_in_idempotent_ideal(c: &AlgElem, b: &AlgElem, side: Side) -> Option<AlgElem> {
    let (k, n) = (c.k, c.group.order());
    let ideal = match side {
        Side::Right => Subspace::span(k, n, b.translates(Side::Left)),
        Side::Left => Subspace::span(k, n, b.translates(Side::Right)),
    };
    let images: Vec<Vec<CycNum>> = ideal
        .basis
        .iter()
        .map(|v| {
            let v = AlgElem::from_vec(&c.group, k, v.clone());
            match side {
                Side::Right => (c * &v).coeffs,
                Side::Left => (&v * c).coeffs,
            }
        })
        .collect();
    let y = solve_particular(&Matrix::from_columns(k, n, &images), &b.coeffs)?;
    Some(AlgElem::from_vec(&c.group, k, combine(k, n, &ideal.basis, &y)))
}

fn stacked(elems: &[AlgElem], side: Side) -> Matrix {
    let k = elems.iter().fold(1u32, |a, e| num_integer::Integer::lcm(&a, &e.k));
    let n = elems[0].group.order();
    let mut rows = Vec::with_capacity(n * elems.len());
    for e in elems {
        let m = e.embed(k).unwrap_or_else(|err| panic!("{err}")).mul_matrix(side);
        rows.extend(m.rows);
    }
    Matrix::from_rows(k, n, rows)
}

/// `{x : e x = 0 for all e}` (`Side::Right`) or `{x : x e = 0}` (`Side::Left`).
pub fn annihilator(elems: &[AlgElem], side: Side) -> Subspace {
    assert!(!elems.is_empty(), "annihilator of an empty list");
    let m = stacked(elems, side);
    Subspace::span(m.k, m.cols, nullspace(&m))
}

/// The annihilator intersected with `within`, computed in coordinates of
/// `within`'s basis.
pub fn annihilator_within(elems: &[AlgElem], side: Side, within: &Subspace) -> Subspace {
    assert!(!elems.is_empty(), "annihilator of an empty list");
    let group = &elems[0].group;
    let k = elems.iter().fold(within.k, |a, e| num_integer::Integer::lcm(&a, &e.k));
    let n = group.order();
    let basis: Vec<AlgElem> = within
        .basis
        .iter()
        .map(|v| AlgElem::from_vec(group, within.k, v.clone()).embed(k).unwrap_or_else(|e| panic!("{e}")))
        .collect();
    let columns: Vec<Vec<CycNum>> = basis
        .iter()
        .map(|u| {
            elems
                .iter()
                .flat_map(|e| match side {
                    Side::Right => e.mul_elem(u).embed(k).unwrap_or_else(|err| panic!("{err}")).coeffs,
                    Side::Left => u.mul_elem(e).embed(k).unwrap_or_else(|err| panic!("{err}")).coeffs,
                })
                .collect()
        })
        .collect();
    let m = Matrix::from_columns(k, n * elems.len(), &columns);
    let vecs: Vec<Vec<CycNum>> = nullspace(&m)
        .into_iter()
        .map(|coef| {
            let b: Vec<Vec<CycNum>> = basis.iter().map(|u| u.coeffs.clone()).collect();
            combine(k, n, &b, &coef)
        })
        .collect();
    Subspace::span(k, n, vecs)
}

pub fn denominator_primes_of(a: &AlgElem) -> BTreeSet<u64> {
    a.denominator_primes()
}

/// Outcome of comparing two one-sided ideals by mutual membership.
#[derive(Clone, Debug)]
pub struct IdealEquality {
    pub holds: bool,
    /// `q` with `lhs = rhs q` (right) or `lhs = q rhs` (left).
    pub lhs_from_rhs: Option<AlgElem>,
    /// `q` with `rhs = lhs q` (right) or `rhs = q lhs` (left).
    pub rhs_from_lhs: Option<AlgElem>,
}

impl IdealEquality {
    /// Primes from both witnesses.
    pub fn denominator_primes(&self) -> BTreeSet<u64> {
        let mut s = BTreeSet::new();
        for q in self.lhs_from_rhs.iter().chain(self.rhs_from_lhs.iter()) {
            s.extend(q.denominator_primes());
        }
        s
    }
}

/// `lhs R = rhs R` (`Side::Right`) or `R lhs = R rhs` (`Side::Left`).
pub fn certify_ideal_equality(lhs: &AlgElem, rhs: &AlgElem, side: Side) -> IdealEquality {
    if lhs == rhs {
        let one = AlgElem::one(&lhs.group, lhs.k);
        return IdealEquality { holds: true, lhs_from_rhs: Some(one.clone()), rhs_from_lhs: Some(one) };
    }
    let a = solve_in_algebra(rhs, lhs, side);
    let b = if a.is_some() { solve_in_algebra(lhs, rhs, side) } else { None };
    IdealEquality { holds: a.is_some() && b.is_some(), lhs_from_rhs: a, rhs_from_lhs: b }
}

/// An equation between two products of named factors. Factors are names
/// bound by the claim's environment or the certificate, `1`, `0`, or
/// `(1-NAME)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equation {
    pub lhs: String,
    pub rhs: String,
}

impl Equation {
    pub fn new(lhs: &str, rhs: &str) -> Equation {
        Equation { lhs: lhs.to_string(), rhs: rhs.to_string() }
    }
}

/// Solver provenance carried by every certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineMeta {
    pub pivot_rule: String,
    pub gf8_polynomial: Option<String>,
}

/// Sparse algebra element: `(group element, coefficient)` pairs.
pub type SparseElem = Vec<(String, CycNum)>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    /// Lemma id plus part and witness label, e.g. `2.1(4)/q1`.
    pub claim: String,
    pub lemma: String,
    pub group: String,
    pub conductor: u32,
    /// Which side of the equation's generator the witness multiplies.
    pub side: Side,
    pub equation: Equation,
    /// Further equations the bound elements must satisfy.
    #[serde(default)]
    pub side_conditions: Vec<Equation>,
    /// The main witness, bound as `q`.
    pub witness: SparseElem,
    /// Additional named elements used by the equations.
    #[serde(default)]
    pub auxiliary: BTreeMap<String, SparseElem>,
    pub denominator_primes: Vec<u64>,
    pub engine: EngineMeta,
    pub provenance: String,
}

pub fn to_sparse(a: &AlgElem) -> SparseElem {
    a.terms().into_iter().map(|(g, c)| (g.to_string(), c)).collect()
}

pub fn from_sparse(group: &Arc<FiniteGroup>, k: u32, s: &SparseElem) -> Result<AlgElem, GroupError> {
    let terms = s
        .iter()
        .map(|(g, c)| Ok((GroupElem::parse(g, group.family())?, c.to_conductor(k).map_err(|_| GroupError::Parse(c.to_string()))?)))
        .collect::<Result<Vec<_>, GroupError>>()?;
    AlgElem::from_terms(group, k, &terms)
}

#[derive(Debug, thiserror::Error)]
pub enum CertError {
    #[error("{claim}: unknown name `{name}`")]
    UnknownName { claim: String, name: String },
    #[error("{claim}: malformed expression `{expr}`")]
    Syntax { claim: String, expr: String },
    #[error("{claim}: {source}")]
    Group { claim: String, source: GroupError },
    #[error("{claim}: equation `{lhs} = {rhs}` does not hold")]
    Failed { claim: String, lhs: String, rhs: String },
    #[error("{claim}: recorded primes {recorded:?} differ from witness primes {actual:?}")]
    Primes { claim: String, recorded: Vec<u64>, actual: Vec<u64> },
}

impl CertError {
    pub fn claim(&self) -> &str {
        match self {
            CertError::UnknownName { claim, .. }
            | CertError::Syntax { claim, .. }
            | CertError::Group { claim, .. }
            | CertError::Failed { claim, .. }
            | CertError::Primes { claim, .. } => claim,
        }
    }
}

/// Evaluates a product expression against named elements.
pub fn eval_product(
    expr: &str,
    group: &Arc<FiniteGroup>,
    k: u32,
    lookup: &dyn Fn(&str) -> Option<AlgElem>,
    claim: &str,
) -> Result<AlgElem, CertError> {
    let syntax = || CertError::Syntax { claim: claim.to_string(), expr: expr.to_string() };
    let unknown = |n: &str| CertError::UnknownName { claim: claim.to_string(), name: n.to_string() };
    let atom = |name: &str| -> Result<AlgElem, CertError> {
        match name {
            "1" => Ok(AlgElem::one(group, k)),
            "0" => Ok(AlgElem::zero(group, k)),
            _ if !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') => {
                lookup(name).ok_or_else(|| unknown(name))
            }
            _ => Err(syntax()),
        }
    };
    let mut acc: Option<AlgElem> = None;
    for raw in expr.split('*') {
        let f = raw.trim();
        let v = if let Some(inner) = f.strip_prefix('(').and_then(|x| x.strip_suffix(')')) {
            let (one, name) = inner.split_once('-').ok_or_else(syntax)?;
            if one.trim() != "1" {
                return Err(syntax());
            }
            &AlgElem::one(group, k) - &atom(name.trim())?
        } else {
            atom(f)?
        };
        acc = Some(match acc {
            None => v,
            Some(a) => a.mul_elem(&v),
        });
    }
    acc.ok_or_else(syntax)
}

impl Certificate {
    pub fn witness_elem(&self, group: &Arc<FiniteGroup>) -> Result<AlgElem, CertError> {
        from_sparse(group, self.conductor, &self.witness)
            .map_err(|source| CertError::Group { claim: self.claim.clone(), source })
    }

    /// Re-substitutes the witness and auxiliary elements into every
    /// equation. `env` resolves the catalog names.
    pub fn check(&self, group: &Arc<FiniteGroup>, env: &dyn Fn(&str) -> Option<AlgElem>) -> Result<(), CertError> {
        let k = self.conductor;
        let q = self.witness_elem(group)?;
        let mut aux = BTreeMap::new();
        for (name, s) in &self.auxiliary {
            let a = from_sparse(group, k, s).map_err(|source| CertError::Group { claim: self.claim.clone(), source })?;
            aux.insert(name.clone(), a);
        }
        let lookup = |name: &str| -> Option<AlgElem> {
            if name == "q" {
                return Some(q.clone());
            }
            if let Some(a) = aux.get(name) {
                return Some(a.clone());
            }
            env(name).and_then(|a| if a.k == k { Some(a) } else { a.embed(k).ok() })
        };
        for eq in std::iter::once(&self.equation).chain(&self.side_conditions) {
            let l = eval_product(&eq.lhs, group, k, &lookup, &self.claim)?;
            let r = eval_product(&eq.rhs, group, k, &lookup, &self.claim)?;
            if l.embed(k).ok() != r.embed(k).ok() {
                return Err(CertError::Failed { claim: self.claim.clone(), lhs: eq.lhs.clone(), rhs: eq.rhs.clone() });
            }
        }
        let actual: Vec<u64> = q.denominator_primes().into_iter().collect();
        if actual != self.denominator_primes {
            return Err(CertError::Primes {
                claim: self.claim.clone(),
                recorded: self.denominator_primes.clone(),
                actual,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::ClassFunction;
    use crate::group::Family;

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_strings("S3", Family::Perm, &["(1,2)", "(1,2,3)"]).unwrap())
    }

    #[test]
    fn ideals_of_unit_and_trivial_idempotent() {
        let g = s3();
        assert_eq!(ideal_of(&AlgElem::one(&g, 1), Side::Right, "1").dim(), 6);
        let e1 = ClassFunction::trivial(&g).central_idempotent(1).unwrap();
        assert_eq!(ideal_of(&e1, Side::Left, "e1").dim(), 1);
        assert_eq!(ideal_of(&e1, Side::Right, "e1").dim(), 1);
    }

    #[test]
    fn annihilators() {
        let g = s3();
        assert_eq!(annihilator(&[AlgElem::one(&g, 1)], Side::Right).dim(), 0);
        let e1 = ClassFunction::trivial(&g).central_idempotent(1).unwrap();
        assert_eq!(annihilator(&[e1.clone()], Side::Right).dim(), 5);
        let full = Subspace::span(1, 6, AlgElem::one(&g, 1).translates(Side::Right));
        assert_eq!(annihilator_within(&[e1], Side::Left, &full).dim(), 5);
    }

    #[test]
    fn solving() {
        let g = s3();
        let mut c = AlgElem::one(&g, 3);
        c.coeffs[1] = CycNum::zeta(3, 1);
        let q = solve_in_algebra(&c, &c, Side::Right).unwrap();
        assert_eq!(&c * &q, c);
        let z = AlgElem::zero(&g, 3);
        assert!(solve_in_algebra(&z, &c, Side::Left).is_none());
        let eq = certify_ideal_equality(&c, &c, Side::Right);
        assert!(eq.holds && eq.denominator_primes().is_empty());
    }

    #[test]
    fn certificate_round_trip_and_tamper() {
        let g = s3();
        let e1 = ClassFunction::trivial(&g).central_idempotent(1).unwrap();
        let env = |n: &str| if n == "e1" { Some(e1.clone()) } else { None };
        let q = AlgElem::one(&g, 1);
        let mut cert = Certificate {
            claim: "t/q".into(),
            lemma: "t".into(),
            group: "S3".into(),
            conductor: 1,
            side: Side::Right,
            equation: Equation::new("e1*q", "e1"),
            side_conditions: vec![Equation::new("e1*(1-e1)", "0")],
            witness: to_sparse(&q),
            auxiliary: BTreeMap::new(),
            denominator_primes: vec![],
            engine: EngineMeta { pivot_rule: PIVOT_RULE.into(), gf8_polynomial: None },
            provenance: "solver".into(),
        };
        cert.check(&g, &env).unwrap();
        let s = serde_json::to_string_pretty(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cert);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), s);
        cert.witness[0].1 = CycNum::from_int(1, 2);
        let err = cert.check(&g, &env).unwrap_err();
        assert_eq!(err.claim(), "t/q");
    }
}
