//! Finite modules over `F_{p^m}[G]`: isotypic dimensions, the dimension form
//! of the induction identities, and the A6 degree-8 proposition.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::AlgElem;
use crate::catalog::{top, TopGroup};
use crate::cyclotomic::prime_factors;
use crate::finite_field::{find_order_k_root, reduce_mod_p, FFElem, FieldError, FiniteField};
use crate::group::FiniteGroup;
use crate::lemmas::{definitions, select_lemmas, LemmaError};

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{p} divides |G| = {order}")]
    PrimeDividesOrder { p: u64, order: usize },
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("bad module kind `{0}` (expected regular, perm:<subgroup> or quotient:<seed>)")]
    BadKind(String),
    #[error("the degree-8 proposition needs the group a6")]
    Prop45Group,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Lemma(#[from] LemmaError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModuleKind {
    Regular,
    /// Permutation module on the left cosets of a catalog subgroup.
    Perm(String),
    /// `R / R a` for a seeded random `a` in the augmentation ideal.
    Quotient(u64),
}

impl FromStr for ModuleKind {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        if s == "regular" {
            return Ok(ModuleKind::Regular);
        }
        if let Some(sub) = s.strip_prefix("perm:").filter(|x| !x.is_empty()) {
            return Ok(ModuleKind::Perm(sub.to_string()));
        }
        if let Some(seed) = s.strip_prefix("quotient:") {
            return seed.parse().map(ModuleKind::Quotient).map_err(|_| LabError::BadKind(s.to_string()));
        }
        Err(LabError::BadKind(s.to_string()))
    }
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleKind::Regular => write!(f, "regular"),
            ModuleKind::Perm(s) => write!(f, "perm:{s}"),
            ModuleKind::Quotient(s) => write!(f, "quotient:{s}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModSpec {
    pub group: String,
    pub prime: u64,
    pub kind: ModuleKind,
}

impl ModSpec {
    /// Spec with the group's default prime.
    pub fn new(group: &str, kind: ModuleKind) -> Result<ModSpec, LabError> {
        Ok(ModSpec { group: group.to_string(), prime: default_prime(group)?, kind })
    }
}

/// A prime `p = 1 mod k` for the group's lab conductor where one is small,
/// so that `m = 1` for PSL(2,7) and PSL(2,8).
pub fn default_prime(group: &str) -> Result<u64, LabError> {
    match group {
        "psl27" => Ok(43),
        "psl28" => Ok(127),
        "a6" => Ok(31),
        _ => Err(LabError::UnknownGroup(group.to_string())),
    }
}

/// Order of the root of unity adjoined: covers the table and every lemma field.
pub fn lab_conductor(group: &str) -> Result<u32, LabError> {
    match group {
        "psl27" => Ok(21),
        "psl28" => Ok(63),
        "a6" => Ok(60),
        _ => Err(LabError::UnknownGroup(group.to_string())),
    }
}

/// Dense matrix over `F_{p^m}`, entries stored as `m` consecutive coefficients.
struct FMat {
    rows: usize,
    cols: usize,
    m: usize,
    data: Vec<u64>,
}

impl FMat {
    fn zeros(rows: usize, cols: usize, m: usize) -> FMat {
        FMat { rows, cols, m, data: vec![0; rows * cols * m] }
    }

    fn at(&self, r: usize, c: usize) -> &[u64] {
        let i = (r * self.cols + c) * self.m;
        &self.data[i..i + self.m]
    }

    fn add_at(&mut self, r: usize, c: usize, v: &[u64], p: u64) {
        let i = (r * self.cols + c) * self.m;
        for (x, y) in self.data[i..i + self.m].iter_mut().zip(v) {
            *x = (*x + y) % p;
        }
    }

    fn rank(mut self, f: &FiniteField) -> usize {
        let (m, p, cols) = (self.m, f.p, self.cols);
        let mut rank = 0;
        let mut tmp = vec![0u64; m];
        for c in 0..cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| self.at(r, c).iter().any(|&x| x != 0)) else {
                continue;
            };
            if piv != rank {
                for j in 0..cols * m {
                    self.data.swap(piv * cols * m + j, rank * cols * m + j);
                }
            }
            let inv = f.inv(&FFElem(self.at(rank, c).to_vec())).expect("pivot is nonzero");
            for j in c..cols {
                let i = (rank * cols + j) * m;
                f.mul_into(&self.data[i..i + m].to_vec(), &inv.0, &mut tmp);
                self.data[i..i + m].copy_from_slice(&tmp);
            }
            let pivot_row: Vec<u64> = self.data[rank * cols * m..(rank + 1) * cols * m].to_vec();
            for r in rank + 1..self.rows {
                let factor = self.at(r, c).to_vec();
                if factor.iter().all(|&x| x == 0) {
                    continue;
                }
                for j in c..cols {
                    let src = &pivot_row[j * m..(j + 1) * m];
                    if src.iter().all(|&x| x == 0) {
                        continue;
                    }
                    f.mul_into(&factor, src, &mut tmp);
                    let i = (r * cols + j) * m;
                    for (x, y) in self.data[i..i + m].iter_mut().zip(&tmp) {
                        *x = (*x + p - y) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

enum Repr {
    /// Basis: left cosets `gH`; `image[x][c]` is the coset `x * rep(c)`.
    Cosets { image: Vec<Vec<usize>> },
    /// Basis: group elements; the submodule `L = R a` by its spanning rows.
    Quotient { a: Vec<FFElem>, l_rank: usize },
}

/// A finite `F_{p^m}[G]`-module with a chosen image of `z_K`.
pub struct Module {
    pub spec: ModSpec,
    pub field: FiniteField,
    pub conductor: u32,
    root: FFElem,
    group: std::sync::Arc<FiniteGroup>,
    repr: Repr,
    pub dim: usize,
}

fn coset_image(g: &FiniteGroup, members: &[usize]) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for &h in members {
                coset_of[g.mul_idx(x, h)] = id;
            }
        }
    }
    (0..n).map(|x| reps.iter().map(|&r| coset_of[g.mul_idx(x, r)]).collect()).collect()
}

/// Seeded element of the augmentation ideal with four terms.
fn random_augmentation_element(n: usize, p: u64, seed: u64, f: &FiniteField) -> Vec<FFElem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = vec![f.zero(); n];
    let mut total = 0u64;
    for _ in 0..3 {
        let g = rng.gen_range(0..n);
        let c = rng.gen_range(1..p);
        a[g] = f.add(&a[g], &f.from_int(c as i64));
        total = (total + c) % p;
    }
    let g = rng.gen_range(0..n);
    a[g] = f.sub(&a[g], &f.from_int(total as i64));
    a
}

pub fn build_module(spec: &ModSpec) -> Result<Module, LabError> {
    let t = top(&spec.group).map_err(|_| LabError::UnknownGroup(spec.group.clone()))?;
    let order = t.group.order();
    if order as u64 % spec.prime == 0 {
        return Err(LabError::PrimeDividesOrder { p: spec.prime, order });
    }
    let conductor = lab_conductor(&spec.group)?;
    let (field, root) = find_order_k_root(spec.prime, conductor)?;
    let g = &t.group;
    let (repr, dim) = match &spec.kind {
        ModuleKind::Regular => (Repr::Cosets { image: coset_image(g, &[0]) }, order),
        ModuleKind::Perm(sub) => {
            let members = t.members(sub).map_err(LemmaError::from)?;
            (Repr::Cosets { image: coset_image(g, &members) }, order / members.len())
        }
        ModuleKind::Quotient(seed) => {
            let a = random_augmentation_element(order, spec.prime, *seed, &field);
            let l = left_ideal_rows(g, &a, &field);
            let l_rank = l.rank(&field);
            (Repr::Quotient { a, l_rank }, order - l_rank)
        }
    };
    Ok(Module { spec: spec.clone(), field, conductor, root, group: g.clone(), repr, dim })
}

/// Rows `g a` for all `g`, in group-element coordinates.
fn left_ideal_rows(g: &FiniteGroup, a: &[FFElem], f: &FiniteField) -> FMat {
    let n = g.order();
    let mut mat = FMat::zeros(n, n, f.m);
    for x in 0..n {
        for (y, c) in a.iter().enumerate() {
            if !FiniteField::is_zero(c) {
                mat.add_at(x, g.mul_idx(x, y), &c.0, f.p);
            }
        }
    }
    mat
}

impl Module {
    fn reduce(&self, a: &AlgElem) -> Result<Vec<FFElem>, LabError> {
        let k = a.k;
        let root = self.field.pow(&self.root, (self.conductor / k) as u128);
        a.coeffs.iter().map(|c| Ok(reduce_mod_p(c, &self.field, &root)?)).collect()
    }

    /// `dim_F (a M)`.
    pub fn image_dim(&self, a: &AlgElem) -> Result<usize, LabError> {
        if self.conductor % a.k != 0 {
            return Err(LabError::Field(FieldError::WrongRootOrder { found: self.conductor as u64, expected: a.k as u64 }));
        }
        let x = self.reduce(a)?;
        let f = &self.field;
        let g = &self.group;
        let n = g.order();
        Ok(match &self.repr {
            Repr::Cosets { image } => {
                let d = self.dim;
                let mut mat = FMat::zeros(d, d, f.m);
                for (el, c) in x.iter().enumerate() {
                    if FiniteField::is_zero(c) {
                        continue;
                    }
                    for (col, &row) in image[el].iter().enumerate() {
                        mat.add_at(row, col, &c.0, f.p);
                    }
                }
                mat.rank(f)
            }
            Repr::Quotient { a, l_rank } => {
                let mut mat = FMat::zeros(2 * n, n, f.m);
                for h in 0..n {
                    for (el, c) in x.iter().enumerate() {
                        if !FiniteField::is_zero(c) {
                            mat.add_at(h, g.mul_idx(el, h), &c.0, f.p);
                        }
                    }
                    for (el, c) in a.iter().enumerate() {
                        if !FiniteField::is_zero(c) {
                            mat.add_at(n + h, g.mul_idx(h, el), &c.0, f.p);
                        }
                    }
                }
                mat.rank(f) - l_rank
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharDim {
    pub chi: usize,
    pub degree: u64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDim {
    pub coefficient: i64,
    pub character: String,
    pub index: usize,
    pub dim: usize,
}

/// `dim e_chi M = deg(chi) * d` with `d = sum a_i dim e_psi_i M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionCheck {
    pub lemma: String,
    pub chi: usize,
    pub dim_isotypic: usize,
    pub degree: u64,
    pub terms: Vec<TermDim>,
    pub d: Option<i64>,
    pub sum: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop45Report {
    pub dim_e4: usize,
    pub dim_e_psi2: usize,
    pub dim_d2: usize,
    pub dim_e_psi5: usize,
    pub dim_d5: usize,
    pub dim_e_sigma: usize,
    /// `dim d_i e_sigma M`, the rank of `f_{d_i}`.
    pub rank_f_d2: usize,
    pub rank_f_d5: usize,
    pub dim_one_minus_d2_e_sigma: usize,
    pub decomposition_holds: bool,
    pub f_d2_surjective: bool,
    pub f_d5_surjective: bool,
    pub kernel_dim_f_d2: usize,
    /// `dim Ker f_d2 = dim e_sigma M - dim d2 M`.
    pub kernel_rank_identity: bool,
    /// `dim Ker f_d2 = dim (1 - d2) e_sigma M`.
    pub kernel_image_identity: bool,
    pub kernel_identity_holds: bool,
    /// `(1 - e_psi5)(1 - d2) e_sigma M = 0`; reported, never required.
    pub cor46_condition_ii: bool,
}

impl Prop45Report {
    pub fn passed(&self) -> bool {
        self.decomposition_holds && self.f_d2_surjective && self.f_d5_surjective && self.kernel_identity_holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotypicReport {
    pub group: String,
    pub prime: u64,
    pub field_degree: usize,
    pub conductor: u32,
    pub module: String,
    pub dim: usize,
    pub characters: Vec<CharDim>,
    pub partition_holds: bool,
    /// Regular modules only: `dim e_chi M = deg(chi)^2` for every `chi`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular_law_holds: Option<bool>,
    pub decompositions: Vec<DecompositionCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prop45: Option<Prop45Report>,
}

impl IsotypicReport {
    pub fn passed(&self) -> bool {
        self.partition_holds
            && self.regular_law_holds != Some(false)
            && self.decompositions.iter().all(|d| d.holds)
            && self.prop45.as_ref().map_or(true, |p| p.passed())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.characters.iter().map(|c| c.dim).collect()
    }
}

fn degree_of(t: &TopGroup, i: usize) -> u64 {
    t.chi(i).degree().rational_value().and_then(|q| u64::try_from(q.to_integer()).ok()).unwrap_or(0)
}

pub fn isotypic_dims(module: &Module) -> Result<Vec<CharDim>, LabError> {
    let t = top(&module.spec.group).map_err(LemmaError::from)?;
    (1..=t.table.len())
        .into_par_iter()
        .map(|i| {
            let chi = t.chi(i);
            let e = chi.central_idempotent(chi.conductor().map_err(LemmaError::from)?).map_err(LemmaError::from)?;
            Ok(CharDim { chi: i, degree: degree_of(t, i), dim: module.image_dim(&e)? })
        })
        .collect()
}

pub fn check_decomposition(module: &Module, lemma: &str, chi_dims: &[CharDim]) -> Result<DecompositionCheck, LabError> {
    let d = definitions(lemma)?;
    let t = d.top;
    let g_order = t.group.order();
    let mut terms = Vec::new();
    let mut sum = 0i64;
    for (a, name) in d.brauer_terms() {
        let dim = module.image_dim(d.elem(&format!("e{name}")))?;
        sum += a * dim as i64;
        let index = g_order / d.char(&name).order();
        terms.push(TermDim { coefficient: a, character: name, index, dim });
    }
    let cd = &chi_dims[d.chi - 1];
    let q = (cd.degree > 0 && cd.dim as u64 % cd.degree == 0).then(|| (cd.dim as u64 / cd.degree) as i64);
    Ok(DecompositionCheck {
        lemma: lemma.to_string(),
        chi: d.chi,
        dim_isotypic: cd.dim,
        degree: cd.degree,
        terms,
        d: q,
        sum,
        holds: q == Some(sum),
    })
}

pub fn check_prop45(module: &Module) -> Result<Prop45Report, LabError> {
    if module.spec.group != "a6" {
        return Err(LabError::Prop45Group);
    }
    let d = definitions("4.4")?;
    let g = &d.top.group;
    let one = AlgElem::one(g, d.k);
    let e4 = d.elem("e4");
    let (p2, p5, sigma) = (d.elem("eP_2"), d.elem("eP_5"), d.elem("eC5"));
    let d2 = &(&one - e4) * p2;
    let d5 = &(&one - e4) * p5;
    let one_minus_d2_sigma = &(&one - &d2) * sigma;
    let cor = &(&one - p5) * &one_minus_d2_sigma;
    let elems: Vec<AlgElem> =
        vec![e4.clone(), p2.clone(), d2.clone(), p5.clone(), d5.clone(), sigma.clone(), &d2 * sigma, &d5 * sigma, one_minus_d2_sigma, cor];
    let dims = elems.par_iter().map(|a| module.image_dim(a)).collect::<Result<Vec<_>, _>>()?;
    let [e4m, p2m, d2m, p5m, d5m, sm, f2, f5, om, corm]: [usize; 10] = dims.try_into().expect("ten dimensions");
    let quotient = (p2m - d2m + p5m - d5m) as i64;
    let kernel = sm - f2;
    let rank_ok = sm >= d2m && kernel == sm - d2m;
    let image_ok = kernel == om;
    Ok(Prop45Report {
        dim_e4: e4m,
        dim_e_psi2: p2m,
        dim_d2: d2m,
        dim_e_psi5: p5m,
        dim_d5: d5m,
        dim_e_sigma: sm,
        rank_f_d2: f2,
        rank_f_d5: f5,
        dim_one_minus_d2_e_sigma: om,
        decomposition_holds: e4m as i64 == 4 * quotient,
        f_d2_surjective: f2 == d2m,
        f_d5_surjective: f5 == d5m,
        kernel_dim_f_d2: kernel,
        kernel_rank_identity: rank_ok,
        kernel_image_identity: image_ok,
        kernel_identity_holds: rank_ok && image_ok,
        cor46_condition_ii: corm == 0,
    })
}

/// Builds the module and runs every check that applies to it.
pub fn run_lab(spec: &ModSpec, prop45: bool) -> Result<IsotypicReport, LabError> {
    let module = build_module(spec)?;
    let characters = isotypic_dims(&module)?;
    let partition_holds = characters.iter().map(|c| c.dim).sum::<usize>() == module.dim;
    let regular_law_holds = (spec.kind == ModuleKind::Regular)
        .then(|| characters.iter().all(|c| c.dim as u64 == c.degree * c.degree));
    let lemmas = select_lemmas(Some(&spec.group), None)?;
    let decompositions = lemmas
        .par_iter()
        .map(|id| check_decomposition(&module, id, &characters))
        .collect::<Result<Vec<_>, _>>()?;
    let prop45 = if prop45 { Some(check_prop45(&module)?) } else { None };
    Ok(IsotypicReport {
        group: spec.group.clone(),
        prime: spec.prime,
        field_degree: module.field.m,
        conductor: module.conductor,
        module: spec.kind.to_string(),
        dim: module.dim,
        characters,
        partition_holds,
        regular_law_holds,
        decompositions,
        prop45,
    })
}

/// Primes dividing `|G|`, which the lab rejects.
pub fn excluded_primes(group: &str) -> Result<Vec<u64>, LabError> {
    let t = top(group).map_err(|_| LabError::UnknownGroup(group.to_string()))?;
    Ok(prime_factors(&BigInt::from(t.group.order())).into_iter().collect())
}
