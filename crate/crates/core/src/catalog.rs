//! Bundled data: the three groups, their printed character tables and the
//! subgroups referenced by the verification suites.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Deserialize;

use crate::character::{ClassFunction, CharError};
use crate::cyclotomic::{parse_rational, CycError, CycNum};
use crate::group::{Family, FiniteGroup, Gf8Poly, GroupElem, GroupError};

const TABLES: &str = include_str!("../data/tables.toml");
const SUBGROUPS: &str = include_str!("../data/subgroups.toml");

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("catalog data: {0}")]
    Data(String),
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("unknown subgroup `{0}` of {1}")]
    UnknownSubgroup(String, String),
    #[error("subgroup {name} has order {got}, expected {expected}")]
    SubgroupOrder { name: String, got: usize, expected: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cyc(#[from] CycError),
    #[error(transparent)]
    Char(#[from] CharError),
}

#[derive(Deserialize)]
struct ConstantRaw {
    k: u32,
    terms: Vec<(i64, String)>,
}

#[derive(Deserialize)]
struct CorrectionRaw {
    row: usize,
    reason: String,
    values: Vec<String>,
}

#[derive(Deserialize)]
struct GroupRaw {
    id: String,
    family: String,
    order: usize,
    generators: Vec<String>,
    classes: Vec<String>,
    rows: Vec<Vec<String>>,
    #[serde(default)]
    corrections: Vec<CorrectionRaw>,
}

#[derive(Deserialize)]
struct TablesRaw {
    constants: BTreeMap<String, ConstantRaw>,
    group: Vec<GroupRaw>,
}

#[derive(Deserialize, Clone, Debug)]
pub struct SubgroupSpec {
    pub group: String,
    pub name: String,
    pub order: usize,
    #[serde(default)]
    pub generators: Vec<String>,
    #[serde(default)]
    pub conjugate_of: Option<String>,
    #[serde(default)]
    pub by: Option<String>,
}

#[derive(Deserialize)]
struct SubgroupsRaw {
    subgroup: Vec<SubgroupSpec>,
}

struct Raw {
    constants: BTreeMap<String, CycNum>,
    groups: Vec<GroupRaw>,
    subgroups: Vec<SubgroupSpec>,
}

fn raw() -> &'static Raw {
    static RAW: OnceLock<Raw> = OnceLock::new();
    RAW.get_or_init(|| {
        let t: TablesRaw = toml::from_str(TABLES).expect("bundled tables parse");
        let s: SubgroupsRaw = toml::from_str(SUBGROUPS).expect("bundled subgroups parse");
        let constants = t
            .constants
            .iter()
            .map(|(name, c)| {
                let terms: Vec<_> =
                    c.terms.iter().map(|(e, q)| (*e, parse_rational(q).expect("constant coefficient"))).collect();
                (name.clone(), CycNum::from_terms(c.k, &terms).expect("constant"))
            })
            .collect();
        Raw { constants, groups: t.group, subgroups: s.subgroup }
    })
}

/// Named irrational constants used by the tables.
pub fn constant(name: &str) -> Option<CycNum> {
    raw().constants.get(name).cloned()
}

/// Parses a table entry: an integer, `NAME`, `-NAME`, `NAME#j` (Galois image
/// under `z -> z^j`) or `~NAME` (complex conjugate).
pub fn parse_entry(s: &str) -> Result<CycNum, CatalogError> {
    let s = s.trim();
    if let Ok(v) = s.parse::<i64>() {
        return Ok(CycNum::from_int(1, v));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s),
    };
    let (bar, body) = match body.strip_prefix('~') {
        Some(b) => (true, b),
        None => (false, body),
    };
    let (name, j) = match body.split_once('#') {
        Some((n, j)) => (n, j.parse::<i64>().map_err(|_| CatalogError::Data(format!("bad entry `{s}`")))?),
        None => (body, 1),
    };
    let mut v = constant(name).ok_or_else(|| CatalogError::Data(format!("unknown constant `{name}`")))?;
    if j != 1 {
        v = v.galois(j)?;
    }
    if bar {
        v = v.conj();
    }
    Ok(if neg { -&v } else { v })
}

/// One of the three top groups with its character table.
#[derive(Debug)]
pub struct TopGroup {
    pub id: String,
    pub group: Arc<FiniteGroup>,
    pub expected_order: usize,
    pub gf8_poly: Option<Gf8Poly>,
    /// Printed class representatives, in column order.
    pub class_reps: Vec<GroupElem>,
    /// `columns[i]` is the class index of the `i`-th printed column.
    pub columns: Vec<usize>,
    /// Rows exactly as printed.
    pub printed: Vec<ClassFunction>,
    /// Rows after substitutions.
    pub table: Vec<ClassFunction>,
    /// 1-based row numbers replaced by corrections, with the catalog's reason.
    pub corrected_rows: Vec<(usize, String)>,
}

impl TopGroup {
    /// The `i`-th irreducible character, 1-based as in the tables.
    pub fn chi(&self, i: usize) -> &ClassFunction {
        &self.table[i - 1]
    }

    pub fn parse_elem(&self, s: &str) -> Result<GroupElem, GroupError> {
        GroupElem::parse(s, self.group.family())
    }

    pub fn elem_index(&self, s: &str) -> Result<usize, GroupError> {
        let g = self.parse_elem(s)?;
        self.group.index_of(&g).ok_or_else(|| GroupError::NotInGroup(s.to_string(), self.id.clone()))
    }

    /// Generates a catalog subgroup by name.
    pub fn subgroup(&self, name: &str) -> Result<FiniteGroup, CatalogError> {
        let spec = subgroup_spec(&self.id, name)?;
        let h = if let (Some(base), Some(by)) = (&spec.conjugate_of, &spec.by) {
            let b = self.subgroup(base)?;
            let g = self.parse_elem(by)?;
            self.group.conjugate_subgroup(name, &b, &g)
        } else {
            let gens = spec.generators.iter().map(|s| self.parse_elem(s)).collect::<Result<Vec<_>, _>>()?;
            self.group.subgroup(name, &gens)?
        };
        if h.order() != spec.order {
            return Err(CatalogError::SubgroupOrder { name: name.to_string(), got: h.order(), expected: spec.order });
        }
        Ok(h)
    }

    /// Sorted ambient indices of a catalog subgroup.
    pub fn members(&self, name: &str) -> Result<Vec<usize>, CatalogError> {
        Ok(self.group.element_set(&self.subgroup(name)?)?)
    }
}

pub fn group_ids() -> Vec<&'static str> {
    raw().groups.iter().map(|g| g.id.as_str()).collect()
}

pub fn subgroup_specs(group: &str) -> Vec<&'static SubgroupSpec> {
    raw().subgroups.iter().filter(|s| s.group == group).collect()
}

pub fn subgroup_spec(group: &str, name: &str) -> Result<&'static SubgroupSpec, CatalogError> {
    raw()
        .subgroups
        .iter()
        .find(|s| s.group == group && s.name == name)
        .ok_or_else(|| CatalogError::UnknownSubgroup(name.to_string(), group.to_string()))
}

fn build(g: &GroupRaw, poly: Option<Gf8Poly>) -> Result<TopGroup, CatalogError> {
    let family = match g.family.as_str() {
        "perm" => Family::Perm,
        "gf8" => Family::Mat(poly.unwrap_or_default()),
        f => return Err(CatalogError::Data(format!("unknown family `{f}`"))),
    };
    let gens: Vec<&str> = g.generators.iter().map(String::as_str).collect();
    let group = Arc::new(FiniteGroup::from_strings(&g.id, family, &gens)?);
    let class_reps =
        g.classes.iter().map(|s| GroupElem::parse(s, family)).collect::<Result<Vec<GroupElem>, _>>()?;
    let columns = class_reps
        .iter()
        .map(|r| crate::character::class_index(&group, r))
        .collect::<Result<Vec<usize>, _>>()?;
    let nclass = group.conjugacy_classes().len();
    let to_cf = |row: &[String]| -> Result<ClassFunction, CatalogError> {
        if row.len() != columns.len() {
            return Err(CatalogError::Data(format!("{}: row length {}", g.id, row.len())));
        }
        let mut values = vec![CycNum::zero(1); nclass];
        for (col, entry) in row.iter().enumerate() {
            values[columns[col]] = parse_entry(entry)?;
        }
        Ok(ClassFunction::new(&group, values))
    };
    let printed = g.rows.iter().map(|r| to_cf(r)).collect::<Result<Vec<_>, _>>()?;
    let mut table = printed.clone();
    let mut corrected_rows = Vec::new();
    for c in &g.corrections {
        table[c.row - 1] = to_cf(&c.values)?;
        corrected_rows.push((c.row, c.reason.clone()));
    }
    Ok(TopGroup {
        id: g.id.clone(),
        group,
        expected_order: g.order,
        gf8_poly: poly,
        class_reps,
        columns,
        printed,
        table,
        corrected_rows,
    })
}

fn subgroups_ok(t: &TopGroup) -> bool {
    subgroup_specs(&t.id).iter().all(|s| t.subgroup(&s.name).is_ok())
}

/// Builds a top group by id. Matrix groups try `x^3+x+1` first and fall back
/// to `x^3+x^2+1` when the group or a catalog subgroup has the wrong order.
pub fn load(id: &str) -> Result<TopGroup, CatalogError> {
    let g = raw().groups.iter().find(|g| g.id == id).ok_or_else(|| CatalogError::UnknownGroup(id.to_string()))?;
    if g.family != "gf8" {
        return build(g, None);
    }
    let primary = build(g, Some(Gf8Poly::Primary));
    if let Ok(t) = &primary {
        if t.group.order() == g.order && subgroups_ok(t) {
            return primary;
        }
    }
    let fb = build(g, Some(Gf8Poly::Fallback))?;
    if fb.group.order() == g.order && subgroups_ok(&fb) {
        Ok(fb)
    } else {
        primary
    }
}

/// Cached top group.
pub fn top(id: &str) -> Result<&'static TopGroup, CatalogError> {
    static CACHE: OnceLock<Vec<(String, OnceLock<Result<TopGroup, String>>)>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| group_ids().into_iter().map(|i| (i.to_string(), OnceLock::new())).collect());
    let slot = cache.iter().find(|(i, _)| i == id).ok_or_else(|| CatalogError::UnknownGroup(id.to_string()))?;
    slot.1.get_or_init(|| load(id).map_err(|e| e.to_string())).as_ref().map_err(|e| CatalogError::Data(e.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_parse() {
        let w7 = parse_entry("w7").unwrap();
        assert_eq!(&(&w7 * &w7) + &w7, CycNum::from_int(7, -2));
        assert_eq!(parse_entry("~w7").unwrap(), w7.galois(-1).unwrap());
        assert_eq!(parse_entry("-3").unwrap(), CycNum::from_int(1, -3));
        let w5 = parse_entry("w5").unwrap();
        assert_eq!(&(&w5 * &w5) - &w5, CycNum::one(5));
        assert!(parse_entry("nope").is_err());
    }

    #[test]
    fn groups_and_subgroups_load() {
        for id in group_ids() {
            let t = top(id).unwrap();
            assert_eq!(t.group.order(), t.expected_order);
            for s in subgroup_specs(id) {
                assert_eq!(t.subgroup(&s.name).unwrap().order(), s.order, "{id} {}", s.name);
            }
        }
        assert_eq!(top("psl28").unwrap().gf8_poly, Some(Gf8Poly::Primary));
    }
}
