//! Which part of which lemma each check belongs to.

/// One lemma sub-claim. Variant ids (`3.2-chi4`, ...) use their base entry.
#[derive(Clone, Copy, Debug)]
pub struct ClaimEntry {
    pub lemma: &'static str,
    pub part: &'static str,
    pub claim: &'static str,
}

const fn c(lemma: &'static str, part: &'static str, claim: &'static str) -> ClaimEntry {
    ClaimEntry { lemma, part, claim }
}

pub const CLAIM_MAP: &[ClaimEntry] = &[
    c("2.1", "(1)", "chi2 is Ind of each C7 character minus Ind of the D4 character"),
    c("2.1", "(2)", "e2 times the sum of the three C7 idempotents is e2"),
    c("2.1", "(3)", "the three C7 idempotents are conjugate by h"),
    c("2.1", "(4)", "(1-e2) eC7 and eC7 eD4 generate the same right ideal"),
    c("2.1", "(5)", "eC7 eD4 and eD4 generate the same left ideal"),
    c("2.2", "(1)", "chi4 is Ind from A4 minus Ind from F21"),
    c("2.2", "(2)", "e4 lies in the right ideal of the A4 idempotent sum"),
    c("2.2", "(3)", "annihilator elements r_j separate the A4 idempotents"),
    c("2.2", "(4)", "the A4 idempotents are conjugate to the first"),
    c("2.2", "(5)", "right ideal equality for (1-e4) eA4"),
    c("2.2", "(6)", "left ideal equality for eA4 eH"),
    c("2.3", "(1)", "chi5 is Ind of the sign-type character of S4"),
    c("2.3", "(2)", "e5 is the sum of the S4 idempotents"),
    c("2.3", "(3)", "the S4 idempotents are orthogonal"),
    c("2.3", "(4)", "the S4 idempotents are conjugate"),
    c("2.4", "(1)", "chi6 is Ind from each F21"),
    c("2.4", "(2)", "e6 is the sum of the F21 idempotents"),
    c("2.4", "(3)", "the F21 idempotents are orthogonal"),
    c("2.4", "(4)", "the F21 idempotents are conjugate by involutions"),
    c("3.1", "(1)", "chi2 is Ind from E8 minus Ind from C9"),
    c("3.1", "(2)", "the E8 idempotent sum absorbs e2"),
    c("3.1", "(3)", "the nontrivial E8 idempotents are conjugate"),
    c("3.1", "(4)", "right ideal equality for (1-e2) eE8"),
    c("3.1", "(5)", "left ideal equality for eE8 eC9"),
    c("3.2", "(1)", "chi is Ind from E8 minus Ind from C9 with a primitive ninth root"),
    c("3.2", "(2)", "the E8 idempotent sum absorbs the central idempotent"),
    c("3.2", "(3)", "right ideal equality over Q(z9)"),
    c("3.2", "(4)", "left ideal equality over Q(z9)"),
    c("3.3", "(1)", "chi6 is Ind from D7 minus Ind from D9"),
    c("3.3", "(2)", "e6 lies in the right ideal of the D7 idempotent sum"),
    c("3.3", "(3)", "annihilator elements r_j separate the D7 idempotents"),
    c("3.3", "(4)", "the D7 idempotents are conjugate by involutions"),
    c("3.3", "(5)", "right ideal equality for (1-e6) eD7"),
    c("3.3", "(6)", "left ideal equality for eD7 eD9"),
    c("3.4", "(1)", "chi is Ind from F56"),
    c("3.4", "(2)", "the central idempotent is the sum of the F56 idempotents"),
    c("3.4", "(3)", "the F56 idempotents are orthogonal"),
    c("3.4", "(4)", "the F56 idempotents are conjugate"),
    c("4.1", "(setup)", "the five D4 conjugates meet trivially"),
    c("4.1", "(1)", "chi is Ind from D4 minus Ind from E9"),
    c("4.1", "(2)", "the central idempotent lies in the right ideal of the D4 sum"),
    c("4.1", "(3)", "annihilator elements r_j separate the D4 idempotents"),
    c("4.1", "(4)", "the D4 idempotents are conjugate by the listed h_i"),
    c("4.1", "(5)", "right ideal equality for (1-e) eD4"),
    c("4.1", "(6)", "left ideal equality for eD4 eE9"),
    c("4.2", "(1)", "chi6 is Ind from S4 minus Ind from A5"),
    c("4.2", "(2)", "e6 lies in the right ideal of the S4 sum"),
    c("4.2", "(3)", "annihilator elements r_j separate the S4 idempotents"),
    c("4.2", "(4)", "the S4 idempotents are conjugate by involutions"),
    c("4.2", "(5)", "right ideal equality for (1-e6) eS4"),
    c("4.2", "(6)", "left ideal equality for eS4 eA5"),
    c("4.3", "(1)", "chi7 is Ind from H36"),
    c("4.3", "(2)", "e7 is the sum of the H36 idempotents"),
    c("4.3", "(3)", "the H36 idempotents are orthogonal"),
    c("4.3", "(4)", "the H36 idempotents are conjugate"),
    c("4.4", "(1)", "chi4 is Ind psi2 plus Ind psi5 minus Ind sigma"),
    c("4.4", "(2)", "the nontrivial E9 idempotent sum absorbs e4 and e5"),
    c("4.4", "(3)", "psi2 and psi5 orbits under conjugation, and psi2 is not conjugate to psi5"),
    c("4.4", "(4)", "eP and eP eC5 generate the same right ideal"),
];

/// Entries of a lemma id, variants resolved to their base.
pub fn claims_of(id: &str) -> Vec<&'static ClaimEntry> {
    let base = id.split('-').next().unwrap_or(id);
    CLAIM_MAP.iter().filter(|c| c.lemma == base).collect()
}
