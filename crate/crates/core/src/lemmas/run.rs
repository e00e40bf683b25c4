//! Check bookkeeping shared by all lemma suites.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;

use crate::algebra::{AlgElem, Side};
use crate::cyclotomic::prime_factors;
use crate::ideal::{
    annihilator_within, eval_product, ideal_of, solve_in_algebra, to_sparse, Certificate, EngineMeta, Equation,
    PIVOT_RULE,
};

use super::defs::Defs;
use super::{CheckResult, VerifyConfig, Verdict};

pub(crate) type Outcome = Result<String, String>;

pub(crate) struct Run<'a> {
    pub d: &'a Defs,
    cfg: &'a VerifyConfig,
    checks: Vec<CheckResult>,
    certs: Vec<Certificate>,
}

fn fmt_primes(s: &BTreeSet<u64>) -> String {
    let v: Vec<String> = s.iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", v.join(","))
}

impl<'a> Run<'a> {
    pub fn new(d: &'a Defs, cfg: &'a VerifyConfig) -> Run<'a> {
        Run { d, cfg, checks: Vec::new(), certs: Vec::new() }
    }

    pub fn finish(self) -> (Vec<CheckResult>, Vec<Certificate>) {
        (self.checks, self.certs)
    }

    pub fn has_certificates(&self) -> bool {
        !self.certs.is_empty()
    }

    pub fn id(&self) -> &str {
        &self.d.lemma
    }

    pub fn claim(&self, part: &str, label: &str) -> String {
        format!("{}{part}/{label}", self.id())
    }

    pub fn check(&mut self, part: &str, label: &str, desc: impl Into<String>, heavy: bool, f: impl FnOnce(&mut Self) -> Outcome) {
        let name = self.claim(part, label);
        let description = desc.into();
        if heavy && self.cfg.skip_heavy {
            self.checks.push(CheckResult {
                name,
                part: part.to_string(),
                description,
                verdict: Verdict::Skipped,
                detail: "heavy check skipped by configuration".into(),
                heavy,
                certificates: Vec::new(),
                elapsed_ms: None,
            });
            return;
        }
        let before = self.certs.len();
        let start = Instant::now();
        let out = f(self);
        let elapsed_ms = self.cfg.timings.then(|| start.elapsed().as_millis() as u64);
        let certificates = self.certs[before..].iter().map(|c| c.claim.clone()).collect();
        let (verdict, detail) = match out {
            Ok(s) => (Verdict::Pass, s),
            Err(s) => (Verdict::Fail, s),
        };
        self.checks.push(CheckResult {
            name,
            part: part.to_string(),
            description,
            verdict,
            detail,
            heavy,
            certificates,
            elapsed_ms,
        });
    }

    pub fn e(&self, name: &str) -> &AlgElem {
        self.d.elem(name)
    }

    pub fn eval(&self, expr: &str) -> Result<AlgElem, String> {
        let lookup = |n: &str| self.d.lookup(n);
        eval_product(expr, &self.d.top.group, self.d.k, &lookup, self.id()).map_err(|e| e.to_string())
    }

    fn engine(&self) -> EngineMeta {
        EngineMeta {
            pivot_rule: PIVOT_RULE.to_string(),
            gf8_polynomial: self.d.top.gf8_poly.map(|p| p.describe().to_string()),
        }
    }

    /// Records a certificate after re-checking it against the definitions.
    fn push_cert(&mut self, cert: Certificate) -> Result<(), String> {
        let lookup = |n: &str| self.d.lookup(n);
        cert.check(&self.d.top.group, &lookup).map_err(|e| e.to_string())?;
        self.certs.push(cert);
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn certificate(
        &self,
        claim: String,
        side: Side,
        equation: Equation,
        side_conditions: Vec<Equation>,
        q: &AlgElem,
        auxiliary: Vec<(String, &AlgElem)>,
    ) -> Certificate {
        Certificate {
            claim,
            lemma: self.id().to_string(),
            group: self.d.top.id.clone(),
            conductor: self.d.k,
            side,
            equation,
            side_conditions,
            witness: to_sparse(q),
            auxiliary: auxiliary.into_iter().map(|(n, a)| (n, to_sparse(a))).collect(),
            denominator_primes: q.denominator_primes().into_iter().collect(),
            engine: self.engine(),
            provenance: "solver".into(),
        }
    }

    /// `Ind` combination of named subgroup characters equals the lemma's `chi`.
    pub fn char_identity(&mut self, part: &str, label: &str, plus: &[&str], minus: &[&str]) {
        let chi = self.d.chi;
        let desc = {
            let mut s = format!("chi{chi} =");
            for p in plus {
                s.push_str(&format!(" + Ind {p}"));
            }
            for m in minus {
                s.push_str(&format!(" - Ind {m}"));
            }
            s
        };
        let plus: Vec<String> = plus.iter().map(|s| s.to_string()).collect();
        let minus: Vec<String> = minus.iter().map(|s| s.to_string()).collect();
        self.check(part, label, desc, false, move |r| {
            let mut acc: Option<crate::character::ClassFunction> = None;
            for (sign, n) in plus.iter().map(|n| (1, n)).chain(minus.iter().map(|n| (-1, n))) {
                let ind = r.d.char(n).induce().map_err(|e| e.to_string())?;
                acc = Some(match acc {
                    None => ind.scale_int(sign),
                    Some(a) if sign > 0 => a.try_add(&ind).map_err(|e| e.to_string())?,
                    Some(a) => a.try_sub(&ind).map_err(|e| e.to_string())?,
                });
            }
            let acc = acc.ok_or("empty combination")?;
            if acc == *r.d.target() {
                Ok(format!("equal on all {} classes", acc.values.len()))
            } else {
                let got: Vec<String> = acc.values.iter().map(|v| v.to_string()).collect();
                Err(format!("combination gives [{}]", got.join(", ")))
            }
        });
    }

    /// The lemma's own induction identity.
    pub fn brauer_identity(&mut self, part: &str, label: &str) {
        let terms = self.d.brauer_terms();
        let plus: Vec<&str> = terms.iter().filter(|t| t.0 > 0).map(|t| t.1.as_str()).collect();
        let minus: Vec<&str> = terms.iter().filter(|t| t.0 < 0).map(|t| t.1.as_str()).collect();
        self.char_identity(part, label, &plus, &minus);
    }

    /// Two product expressions evaluate to the same element.
    pub fn equal(&mut self, part: &str, label: &str, lhs: &str, rhs: &str) {
        let (l, rr) = (lhs.to_string(), rhs.to_string());
        self.check(part, label, format!("{lhs} = {rhs}"), false, move |r| {
            let a = r.eval(&l)?;
            let b = r.eval(&rr)?;
            if a == b {
                Ok(format!("exact equality, support {}", a.support().len()))
            } else {
                Err(format!("differ: lhs support {}, rhs support {}", a.support().len(), b.support().len()))
            }
        });
    }

    /// Solves `c q = b` or `q c = b` and records the witness.
    pub fn solve(&mut self, part: &str, label: &str, c_expr: &str, b_expr: &str, side: Side, heavy: bool) {
        let lhs = match side {
            Side::Right => format!("{c_expr}*q"),
            Side::Left => format!("q*{c_expr}"),
        };
        let eq = Equation::new(&lhs, b_expr);
        let claim = self.claim(part, label);
        let (c_expr, b_expr) = (c_expr.to_string(), b_expr.to_string());
        self.check(part, label, format!("exists q: {lhs} = {b_expr}"), heavy, move |r| {
            let c = r.eval(&c_expr)?;
            let b = r.eval(&b_expr)?;
            let q = solve_in_algebra(&c, &b, side).ok_or("no solution over the coefficient field")?;
            let primes = q.denominator_primes();
            let cert = r.certificate(claim, side, eq, Vec::new(), &q, Vec::new());
            r.push_cert(cert)?;
            Ok(format!("witness support {}, denominator primes {}", q.support().len(), fmt_primes(&primes)))
        });
    }

    /// `lhs R = rhs R` (right) or `R lhs = R rhs` (left), one check per
    /// direction: `labels.0` expresses `rhs` through `lhs`, `labels.1` the converse.
    pub fn ideal_equality(&mut self, part: &str, lhs: &str, rhs: &str, side: Side, labels: (&str, &str), heavy: bool) {
        self.solve(part, labels.0, lhs, rhs, side, heavy);
        self.solve(part, labels.1, rhs, lhs, side, heavy);
    }

    /// `e_i e_j = delta_ij e_i` over a family.
    pub fn orthogonality(&mut self, part: &str, names: &[String]) {
        let names = names.to_vec();
        let desc = format!("e_i e_j = delta_ij e_i for {} idempotents", names.len());
        self.check(part, "orthogonal", desc, false, move |r| {
            for (i, a) in names.iter().enumerate() {
                for (j, b) in names.iter().enumerate() {
                    let p = r.e(a) * r.e(b);
                    let ok = if i == j { p == *r.e(a) } else { p.is_zero() };
                    if !ok {
                        return Err(format!("{a}*{b} is wrong"));
                    }
                }
            }
            Ok(format!("{} products", names.len() * names.len()))
        });
    }

    fn find_conjugator(&self, a: &AlgElem, b: &AlgElem) -> Option<usize> {
        (0..self.d.top.group.order()).find(|&g| b.conj_by(g) == *a)
    }

    fn show(&self, g: usize) -> String {
        self.d.top.group.element(g).to_string()
    }

    /// Searches `g` with `g b g^-1 = a`.
    pub fn conj_search(&mut self, part: &str, label: &str, a: &str, b: &str) {
        let (a, b) = (a.to_string(), b.to_string());
        self.check(part, label, format!("exists g: g {b} g^-1 = {a}"), false, move |r| {
            match r.find_conjugator(r.e(&a), r.e(&b)) {
                Some(g) => Ok(format!("g = {}", r.show(g))),
                None => Err("no conjugator".into()),
            }
        });
    }

    /// No `g` with `g b g^-1 = a`.
    pub fn conj_none(&mut self, part: &str, label: &str, a: &str, b: &str) {
        let (a, b) = (a.to_string(), b.to_string());
        self.check(part, label, format!("no g: g {b} g^-1 = {a}"), false, move |r| {
            match r.find_conjugator(r.e(&a), r.e(&b)) {
                Some(g) => Err(format!("conjugator exists: {}", r.show(g))),
                None => Ok(format!("none among {} elements", r.d.top.group.order())),
            }
        });
    }

    /// `x b x^-1 = a` for a given conjugator `x`.
    pub fn conj_listed(&mut self, part: &str, label: &str, x: usize, a: &str, b: &str) {
        let (a, b) = (a.to_string(), b.to_string());
        let xs = self.show(x);
        self.check(part, label, format!("x {b} x^-1 = {a} for x = {xs}"), false, move |r| {
            if r.e(&b).conj_by(x) == *r.e(&a) {
                Ok("exact".into())
            } else {
                Err("conjugate differs".into())
            }
        });
    }

    /// Each conjugator sends `base` to a distinct member of `targets`, and
    /// together they reach all of them.
    pub fn conj_orbit(&mut self, part: &str, label: &str, base: &str, xs: &[usize], targets: &[String]) {
        let base = base.to_string();
        let xs = xs.to_vec();
        let targets = targets.to_vec();
        let desc = format!("listed conjugators map {base} onto the other {} idempotents", targets.len());
        self.check(part, label, desc, false, move |r| {
            let mut hit = BTreeSet::new();
            let mut parts = Vec::new();
            for &x in &xs {
                let c = r.e(&base).conj_by(x);
                let t = targets.iter().find(|t| *r.e(t) == c).ok_or_else(|| format!("{} maps outside the family", r.show(x)))?;
                if !hit.insert(t.clone()) {
                    return Err(format!("{} repeats {t}", r.show(x)));
                }
                parts.push(format!("{} -> {t}", r.show(x)));
            }
            if hit.len() != targets.len() {
                return Err(format!("only {} of {} reached", hit.len(), targets.len()));
            }
            Ok(parts.join("; "))
        });
    }

    /// For each `j`, a nonzero `r_j` in `e_j R` killed on the right by the
    /// other `e_i`, with `central * e_j` in `R r_j central e_j`.
    pub fn r_family(&mut self, part: &str, names: &[String], central: &str) {
        for j in 0..names.len() {
            let names = names.to_vec();
            let central = central.to_string();
            let ej = names[j].clone();
            let label = format!("r{}", j + 1);
            let claim = self.claim(part, &label);
            let desc = format!("r in {ej} R, r e_i = 0 (i != {}), {central} {ej} in R r {central} {ej}", j + 1);
            self.check(part, &label, desc, false, move |r| {
                let e = r.e(&ej).clone();
                let others: Vec<AlgElem> = names.iter().filter(|n| **n != ej).map(|n| r.e(n).clone()).collect();
                let within = ideal_of(&e, Side::Right, &ej).space;
                let ann = annihilator_within(&others, Side::Left, &within);
                let target = r.e(&central) * &e;
                if target.is_zero() {
                    return Err(format!("{central} {ej} = 0"));
                }
                let rname = format!("r{}", j + 1);
                for (idx, v) in ann.basis.iter().enumerate() {
                    let rj = AlgElem::from_vec(&e.group, ann.k, v.clone());
                    let c = &(&rj * r.e(&central)) * &e;
                    if c.is_zero() {
                        continue;
                    }
                    if let Some(q) = solve_in_algebra(&c, &target, Side::Left) {
                        let eq = Equation::new(&format!("q*{rname}*{central}*{ej}"), &format!("{central}*{ej}"));
                        let mut conds: Vec<Equation> =
                            names.iter().filter(|n| **n != ej).map(|n| Equation::new(&format!("{rname}*{n}"), "0")).collect();
                        conds.push(Equation::new(&format!("{ej}*{rname}"), &rname));
                        let cert = r.certificate(claim, Side::Left, eq, conds, &q, vec![(rname, &rj)]);
                        r.push_cert(cert)?;
                        return Ok(format!(
                            "annihilator dim {}, basis vector {} chosen, r nonzero with support {}, r {central} {ej} nonzero, primes {}",
                            ann.dim(),
                            idx + 1,
                            rj.support().len(),
                            fmt_primes(&q.denominator_primes())
                        ));
                    }
                }
                Err(format!("no basis vector of the {}-dimensional annihilator works", ann.dim()))
            });
        }
    }

    /// Union of certificate primes and the primes dividing `|G|`.
    pub fn exceptional_primes(&self) -> BTreeSet<u64> {
        let mut s = prime_factors(&BigInt::from(self.d.top.group.order()));
        for c in &self.certs {
            s.extend(c.denominator_primes.iter().copied());
        }
        s
    }

    pub fn note_primes(&self) -> String {
        format!("exceptional-prime superset {}", fmt_primes(&self.exceptional_primes()))
    }

    pub fn elem_index(&self, s: &str) -> Result<usize, String> {
        self.d.top.elem_index(s).map_err(|e| e.to_string())
    }
}
