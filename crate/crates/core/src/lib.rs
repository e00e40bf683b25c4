//! Exact group-algebra arithmetic over cyclotomic fields, with
//! certificate-producing checks of induction identities for PSL(2,7),
//! PSL(2,8) and A6.

pub mod algebra;
pub mod catalog;
pub mod character;
pub mod cyclotomic;
pub mod finite_field;
pub mod group;
pub mod ideal;
pub mod lemmas;
pub mod linalg;
pub mod modlab;
pub mod report;

pub use algebra::{AlgElem, Side};
pub use catalog::{top, TopGroup};
pub use character::{ClassFunction, SubgroupFunction};
pub use cyclotomic::CycNum;
pub use group::{FiniteGroup, GroupElem};
pub use ideal::{Certificate, Equation};
pub use lemmas::{verify_lemma, CheckResult, LemmaReport, Verdict, VerifyConfig};
pub use modlab::{run_lab, IsotypicReport, ModSpec, ModuleKind};
pub use report::{Report, RunInfo};
