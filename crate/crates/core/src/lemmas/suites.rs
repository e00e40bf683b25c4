//! The check list of every lemma.

use crate::algebra::Side;

use super::defs::{family, A6_D4_CONJUGATORS};
use super::run::Run;
use super::LemmaError;

pub(crate) fn run_suite(r: &mut Run) -> Result<(), LemmaError> {
    let id = r.id().to_string();
    match id.split('-').next().unwrap_or(&id) {
        "2.1" => lemma_2_1(r),
        "2.2" => lemma_2_2(r),
        "2.3" => lemma_2_3(r),
        "2.4" => lemma_2_4(r),
        "3.1" => lemma_3_1(r),
        "3.2" => lemma_3_2(r),
        "3.3" => lemma_3_3(r),
        "3.4" => lemma_3_4(r),
        "4.1" => lemma_4_1(r),
        "4.2" => lemma_4_2(r),
        "4.3" => lemma_4_3(r),
        "4.4" => lemma_4_4(r),
        _ => return Err(LemmaError::UnknownLemma(id)),
    }
    .map_err(LemmaError::Setup)
}

type Res = Result<(), String>;

fn e_names(prefix: &str, n: usize) -> Vec<String> {
    family(&format!("e{prefix}"), 1..=n)
}

/// `x b x^-1 = a` for each listed conjugator.
fn listed(r: &mut Run, part: &str, label: &str, xs: &[&str], a: &str, b: &str) -> Res {
    for (n, x) in xs.iter().enumerate() {
        let xi = r.elem_index(x)?;
        let l = if xs.len() == 1 { label.to_string() } else { format!("{label}.{}", n + 1) };
        r.conj_listed(part, &l, xi, a, b);
    }
    Ok(())
}

fn orbit(r: &mut Run, part: &str, base: &str, xs: &[&str], targets: &[String]) -> Res {
    let xs = xs.iter().map(|x| r.elem_index(x)).collect::<Result<Vec<_>, _>>()?;
    r.conj_orbit(part, "listed", base, &xs, targets);
    Ok(())
}

fn lemma_2_1(r: &mut Run) -> Res {
    for i in [1, 2, 4] {
        r.char_identity("(1)", &format!("i={i}"), &[&format!("C7_{i}")], &["D4"]);
    }
    r.equal("(2)", "sum", "e2*sumC7", "e2");
    let h = r.elem_index("(1,7,8)(3,5,4)")?;
    let h_inv = r.d.top.group.inv_idx(h);
    r.conj_listed("(3)", "i=4", h_inv, "eC7_4", "eC7_2");
    r.conj_listed("(3)", "i=1", h, "eC7_1", "eC7_2");
    r.ideal_equality("(4)", "(1-e2)*eC7_1", "eC7_1*eD4", Side::Right, ("q1", "q2"), false);
    r.ideal_equality("(5)", "eC7_1*eD4", "eD4", Side::Left, ("q3", "q4"), false);
    Ok(())
}

const PSL27_A4_CONJUGATORS: [(usize, &[&str]); 5] = [
    (2, &["(1,2)(3,4)(5,7)(6,8)", "(1,5)(2,7)(3,8)(4,6)"]),
    (3, &["(1,5)(2,6)(3,7)(4,8)", "(1,4)(2,3)(5,8)(6,7)"]),
    (4, &["(1,3)(2,6)(4,7)(5,8)", "(1,4)(2,5)(3,7)(6,8)"]),
    (5, &["(1,2)(3,8)(4,7)(5,6)", "(1,8)(2,3)(4,6)(5,7)"]),
    (6, &["(1,8)(2,4)(3,5)(6,7)", "(1,6)(2,5)(3,4)(7,8)"]),
];

fn lemma_2_2(r: &mut Run) -> Res {
    r.brauer_identity("(1)", "ind");
    r.solve("(2)", "r0", "sumA4", "e4", Side::Right, false);
    r.r_family("(3)", &e_names("A4", 6), "e4");
    for i in 2..=6 {
        r.conj_search("(4)", &format!("i={i}/search"), "eA4_1", &format!("eA4_{i}"));
    }
    for (i, xs) in PSL27_A4_CONJUGATORS {
        listed(r, "(4)", &format!("i={i}/g"), xs, "eA4_1", &format!("eA4_{i}"))?;
    }
    r.ideal_equality("(5)", "(1-e4)*eA4_1", "eA4_1*eH", Side::Right, ("q1", "q2"), false);
    r.ideal_equality("(6)", "eA4_1*eH", "eH", Side::Left, ("q3", "q4"), false);
    Ok(())
}

fn lemma_2_3(r: &mut Run) -> Res {
    let names = e_names("S4", 7);
    r.brauer_identity("(1)", "ind");
    r.equal("(2)", "sum", "e5", "sumS4");
    r.orthogonality("(3)", &names);
    for i in 2..=7 {
        r.conj_search("(4)", &format!("i={i}/search"), &names[i - 1], "eS4_1");
    }
    let xs = [
        "(1,6)(2,7)(3,5)(4,8)",
        "(1,2)(3,4)(5,7)(6,8)",
        "(1,4)(2,3)(5,8)(6,7)",
        "(1,4)(2,5)(3,7)(6,8)",
        "(1,8)(2,3)(4,6)(5,7)",
        "(1,8)(2,4)(3,5)(6,7)",
    ];
    orbit(r, "(4)", "eS4_1", &xs, &names[1..])
}

const PSL27_F21_CONJUGATORS: [&str; 7] = [
    "(1,8)(2,7)(3,6)(4,5)",
    "(1,8)(2,4)(3,5)(6,7)",
    "(1,2)(3,8)(4,7)(5,6)",
    "(1,2)(3,5)(4,6)(7,8)",
    "(1,2)(3,4)(5,7)(6,8)",
    "(1,3)(2,6)(4,7)(5,8)",
    "(1,6)(2,5)(3,4)(7,8)",
];

fn lemma_2_4(r: &mut Run) -> Res {
    let names = e_names("F21", 8);
    for i in 1..=8 {
        r.char_identity("(1)", &format!("i={i}"), &[&format!("F21_{i}")], &[]);
    }
    r.equal("(2)", "sum", "e6", "sumF21");
    r.orthogonality("(3)", &names);
    for (i, x) in (2..=8).zip(PSL27_F21_CONJUGATORS) {
        listed(r, "(4)", &format!("i={i}/g"), &[x], &names[i - 1], "eF21_1")?;
    }
    Ok(())
}

fn lemma_3_1(r: &mut Run) -> Res {
    let names = e_names("E8", 7);
    r.brauer_identity("(1)", "ind");
    r.equal("(2)", "sum", "sumE8*e2", "e2");
    for i in 2..=7 {
        r.conj_search("(3)", &format!("i={i}/search"), &names[i - 1], "eE8_1");
    }
    let gg = r.elem_index("[[a^6,a^3],[0,a]]")?;
    let grp = r.d.top.group.clone();
    let mut xs = Vec::new();
    let mut x = 0;
    for _ in 1..=6 {
        x = grp.mul_idx(x, gg);
        xs.push(x);
    }
    r.conj_orbit("(3)", "listed", "eE8_1", &xs, &names[1..]);
    r.ideal_equality("(4)", "(1-e2)*eE8_1", "eE8_1*eC9", Side::Right, ("q1", "q2"), false);
    r.ideal_equality("(5)", "eE8_1*eC9", "eC9", Side::Left, ("q3", "q4"), false);
    Ok(())
}

fn lemma_3_2(r: &mut Run) -> Res {
    let m = r.d.chi;
    let e = format!("e{m}");
    r.brauer_identity("(1)", "ind");
    r.equal("(2)", "sum", &format!("sumE8*{e}"), &e);
    r.ideal_equality("(3)", &format!("(1-{e})*eE8_1"), "eE8_1*eC9", Side::Right, ("q1", "q2"), true);
    r.ideal_equality("(4)", "eE8_1*eC9", "eC9", Side::Left, ("q3", "q4"), true);
    Ok(())
}

const PSL28_D7_CONJUGATORS: [&str; 7] = [
    "[[0,a^4],[a^3,0]]",
    "[[a^2,a^3],[a^2,a^2]]",
    "[[a,1],[a^6,a]]",
    "[[a^4,a^2],[a,a^4]]",
    "[[a^3,a^5],[a^4,a^3]]",
    "[[a^5,a],[1,a^5]]",
    "[[a^6,a^6],[a^5,a^6]]",
];

fn lemma_3_3(r: &mut Run) -> Res {
    let names = e_names("D7", 8);
    r.brauer_identity("(1)", "ind");
    r.solve("(2)", "r0", "sumD7", "e6", Side::Right, false);
    r.r_family("(3)", &names, "e6");
    for (i, x) in (2..=8).zip(PSL28_D7_CONJUGATORS) {
        listed(r, "(4)", &format!("i={i}/g"), &[x], &names[i - 1], "eD7_1")?;
    }
    r.ideal_equality("(5)", "(1-e6)*eD7_1", "eD7_1*eD9", Side::Right, ("q1", "q2"), false);
    r.ideal_equality("(6)", "eD7_1*eD9", "eD9", Side::Left, ("q3", "q4"), false);
    Ok(())
}

fn lemma_3_4(r: &mut Run) -> Res {
    let names = e_names("F56", 9);
    let e = format!("e{}", r.d.chi);
    r.brauer_identity("(1)", "ind");
    r.equal("(2)", "sum", &e, "sumF56");
    r.orthogonality("(3)", &names);
    for i in 2..=9 {
        r.conj_search("(4)", &format!("i={i}/search"), &names[i - 1], "eF56_1");
    }
    let xs = [
        "[[1,a^3],[0,1]]",
        "[[1,a^4],[0,1]]",
        "[[1,a],[0,1]]",
        "[[1,1],[0,1]]",
        "[[1,a^2],[0,1]]",
        "[[1,a^6],[0,1]]",
        "[[1,a^5],[0,1]]",
        "[[1,0],[a^2,1]]",
    ];
    orbit(r, "(4)", "eF56_1", &xs, &names[1..])
}

fn lemma_4_1(r: &mut Run) -> Res {
    let names = e_names("D4", 5);
    let e = format!("e{}", r.d.chi);
    let pick = if r.d.chi == 2 { "eD4_2" } else { "eD4_1" };
    r.check("(setup)", "intersections", "D4_i and D4_j meet trivially for i != j", false, |r| {
        let t = r.d.top;
        let sets = (1..=5).map(|i| t.members(&format!("D4_{i}"))).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
        for i in 0..5 {
            for j in i + 1..5 {
                let common = sets[i].iter().filter(|x| sets[j].contains(x)).count();
                if common != 1 {
                    return Err(format!("D4_{} and D4_{} share {common} elements", i + 1, j + 1));
                }
            }
        }
        Ok("10 pairs".into())
    });
    r.brauer_identity("(1)", "ind");
    r.solve("(2)", "r0", "sumD4", &e, Side::Right, false);
    r.r_family("(3)", &names, &e);
    for (i, h) in (2..=5).zip(&A6_D4_CONJUGATORS[1..]) {
        listed(r, "(4)", &format!("i={i}/h"), &[h], &names[i - 1], "eD4_1")?;
    }
    r.ideal_equality("(5)", &format!("(1-{e})*{pick}"), &format!("{pick}*eE9"), Side::Right, ("q1", "q2"), false);
    r.ideal_equality("(6)", &format!("{pick}*eE9"), "eE9", Side::Left, ("q3", "q4"), false);
    Ok(())
}

const A6_S4_CONJUGATORS: [(usize, &[&str]); 8] = [
    (2, &["(2,4)(3,5)", "(1,3)(4,6)", "(1,5)(2,6)"]),
    (3, &["(2,4)(3,6)", "(1,5)(3,6)"]),
    (4, &["(1,3)(4,5)", "(2,6)(4,5)"]),
    (5, &["(1,3)(2,4)", "(1,5)(4,6)", "(2,6)(3,5)"]),
    (6, &["(2,4)(5,6)", "(1,6)(3,4)", "(1,5)(2,3)"]),
    (7, &["(1,4)(3,6)", "(2,5)(3,6)"]),
    (8, &["(1,4)(2,3)", "(2,5)(4,6)", "(1,6)(3,5)"]),
    (9, &["(2,3)(4,5)", "(1,6)(4,5)"]),
];

fn lemma_4_2(r: &mut Run) -> Res {
    let names = e_names("S4", 9);
    r.brauer_identity("(1)", "ind");
    r.solve("(2)", "r0", "sumS4", "e6", Side::Right, false);
    r.r_family("(3)", &names, "e6");
    for (i, xs) in A6_S4_CONJUGATORS {
        listed(r, "(4)", &format!("i={i}/g"), xs, &names[i - 1], "eS4_1")?;
    }
    r.ideal_equality("(5)", "(1-e6)*eS4_1", "eS4_1*eA5a", Side::Right, ("q1", "q2"), false);
    r.ideal_equality("(6)", "eS4_1*eA5a", "eA5a", Side::Left, ("q3", "q4"), false);
    Ok(())
}

fn lemma_4_3(r: &mut Run) -> Res {
    let names = e_names("H36", 10);
    r.brauer_identity("(1)", "ind");
    r.equal("(2)", "sum", "e7", "sumH36");
    r.orthogonality("(3)", &names);
    for i in 2..=10 {
        r.conj_search("(4)", &format!("i={i}/search"), &names[i - 1], "eH36_1");
    }
    let xs = [
        "(1,2)(3,4)",
        "(1,4)(3,6)",
        "(2,3)(4,5)",
        "(1,3)(4,5)",
        "(1,3)(2,5)",
        "(2,4)(3,5)",
        "(1,5)(4,6)",
        "(2,5)(3,4)",
        "(3,4)(5,6)",
    ];
    orbit(r, "(4)", "eH36_1", &xs, &names[1..])
}

fn lemma_4_4(r: &mut Run) -> Res {
    r.brauer_identity("(1)", "ind");
    r.equal("(2)", "e4", "sumP*e4", "e4");
    r.equal("(2)", "e5", "sumP*e5", "e5");
    for i in [3, 4, 7] {
        r.conj_search("(3)", &format!("psi{i}/search"), "eP_2", &format!("eP_{i}"));
    }
    for j in [6, 8, 9] {
        r.conj_search("(3)", &format!("psi{j}/search"), "eP_5", &format!("eP_{j}"));
    }
    r.conj_none("(3)", "psi2-psi5/none", "eP_5", "eP_2");
    let cases = [("(2,3)(4,5)", 3, 9), ("(1,4)(2,6,3,5)", 4, 6), ("(1,4,2,5)(3,6)", 7, 8)];
    for (x, a, b) in cases {
        let xi = r.elem_index(x)?;
        r.conj_listed("(3)", &format!("psi{a}/g"), xi, &format!("eP_{a}"), "eP_2");
        r.conj_listed("(3)", &format!("psi{b}/g"), xi, &format!("eP_{b}"), "eP_5");
    }
    for i in [2, 5] {
        let e = format!("eP_{i}");
        r.ideal_equality("(4)", &e, &format!("{e}*eC5"), Side::Right, (&format!("i={i}/q1"), &format!("i={i}/q2")), false);
    }
    Ok(())
}
