use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::amalgam::{build_amalgam, FreeAmalgam, Side};
use crate::arith::{gcd, is_prime};
use crate::catalog::{catalog_p_groups, cyclic};
use crate::compat::{
    enumerate_compatible_pairs, family_separability, is_p_compatible, scan_compatible_free_pairs, Description,
    FactorElement, Mode, Verdict,
};
use crate::fingrp::{subgroup_generated, Elem};
use crate::freegrp::{FreeWord, GenImages};

use super::EngineError;

/// The case studies, by their command-line names `thm21`, `sec3` and
/// `cyclic-remark`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseId {
    /// `A = F(a,b)`, `B = F(c,d)`, `H = <a, b^-1 a b>`, `K = <c, d^-1 c^2 d>`:
    /// every compatible pair up to `bound` sends `a` to an element of odd
    /// order lying in `<a^2>`.
    FreeFactors { bound: usize },
    /// `<a, b; a^p = b^p>` and its quotient with cyclic factors of order
    /// `p^n`: `h = ab a^{p x}` with `q x = 1 mod p^n` is a q-th root of
    /// `g = (ab)^q a^p` there.
    Counterexample { p: u64, q: u64, n: u32 },
    /// Random amalgams of finite p-groups over cyclic subgroups: plain
    /// compatible pairs are p-compatible.
    CyclicAmalgamation { trials: usize, seed: u64 },
}

impl CaseId {
    pub fn name(&self) -> &'static str {
        match self {
            CaseId::FreeFactors { .. } => "thm21",
            CaseId::Counterexample { .. } => "sec3",
            CaseId::CyclicAmalgamation { .. } => "cyclic-remark",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseStudyReport {
    pub case: String,
    pub parameters: BTreeMap<String, String>,
    pub assertions: Vec<Assertion>,
    pub artifacts: BTreeMap<String, String>,
}

impl CaseStudyReport {
    fn new(case: CaseId, parameters: &[(&str, String)]) -> Self {
        CaseStudyReport {
            case: case.name().into(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            assertions: Vec::new(),
            artifacts: BTreeMap::new(),
        }
    }

    fn check(&mut self, name: &str, claim: &str, passed: bool, detail: String) {
        self.assertions.push(Assertion { name: name.into(), claim: claim.into(), passed, detail });
    }

    fn artifact(&mut self, name: &str, value: impl ToString) {
        self.artifacts.insert(name.into(), value.to_string());
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

pub fn run_case_study(case: CaseId) -> Result<CaseStudyReport, EngineError> {
    match case {
        CaseId::FreeFactors { bound } => free_factors(bound),
        CaseId::Counterexample { p, q, n } => counterexample(p, q, n),
        CaseId::CyclicAmalgamation { trials, seed } => cyclic_amalgamation(trials, seed),
    }
}

/// Least `x ≥ 1` with `q x ≡ 1 (mod p^n)`, by scanning.
pub fn congruence_inverse(p: u64, q: u64, n: u32) -> Option<u64> {
    let m = p.checked_pow(n)?;
    (1..=m).find(|x| (q % m) * x % m == 1 % m)
}

fn counterexample(p: u64, q: u64, n: u32) -> Result<CaseStudyReport, EngineError> {
    if !is_prime(p) || q < 2 || gcd(p, q) != 1 || n == 0 {
        return Err(EngineError::PreconditionViolated(format!(
            "need p prime, q >= 2 coprime to p and n >= 1; got p = {p}, q = {q}, n = {n}"
        )));
    }
    let case = CaseId::Counterexample { p, q, n };
    let mut report = CaseStudyReport::new(case, &[("p", p.to_string()), ("q", q.to_string()), ("n", n.to_string())]);
    let fa = FreeAmalgam::parse_new(vec!["a".into()], vec!["b".into()], &[&format!("a^{p}")], &[&format!("b^{p}")])?;
    let order = p.pow(n) as usize;
    let z = Arc::new(cyclic(order));
    let qa = fa.quotient(&GenImages::new(Arc::clone(&z), vec![1]), &GenImages::new(z, vec![1]))?;
    let x = congruence_inverse(p, q, n).expect("q is a unit mod p^n");
    let g = fa.parse(&format!("{} A:a^{p}", vec!["A:a B:b"; q as usize].join(" ")))?;
    let h = fa.parse(&format!("A:a B:b A:a^{}", p * x))?;
    let (hq, gq) = (qa.project_free(&h), qa.project_free(&g));
    report.artifact("x_n", x);
    report.artifact("g", &g);
    report.artifact("h", &h);
    report.artifact("g_quotient", gq.normal_form_string());
    report.artifact("h_quotient", hq.normal_form_string());

    let member = gq.cyclic_member(&hq)?;
    report.check(
        "h_outside",
        "h is not in <g> in the quotient",
        !member.is_member(),
        format!("{member:?}"),
    );
    let power = gq.cyclic_member(&hq.power(q as i64))?;
    report.check("power_inside", "h^q is in <g> in the quotient", power.is_member(), format!("{power:?}"));
    let root = gq.p_prime_root(p)?;
    if let Some(cert) = &root {
        report.artifact("root", format!("q = {}, root = {}", cert.q, cert.root.normal_form_string()));
    }
    report.check(
        "not_isolated",
        &format!("<g> is not {p}'-isolated in the quotient"),
        root.is_some(),
        format!("root found: {}", root.is_some()),
    );
    Ok(report)
}

fn free_factors(bound: usize) -> Result<CaseStudyReport, EngineError> {
    let case = CaseId::FreeFactors { bound };
    let mut report = CaseStudyReport::new(case, &[("bound", bound.to_string())]);
    let fa = FreeAmalgam::parse_new(
        vec!["a".into(), "b".into()],
        vec!["c".into(), "d".into()],
        &["a", "b^-1 a b"],
        &["c", "d^-1 c^2 d"],
    )?;
    let scan = scan_compatible_free_pairs(&fa, bound, Mode::Plain);
    report.artifact("pairs", scan.entries.len());
    let a = FreeWord::generator(0);
    let a2 = FreeWord::gen_power(0, 2);
    let mut even = Vec::new();
    let mut outside = Vec::new();
    let mut seven = None;
    for e in &scan.entries {
        let (x, _) = e.pair.free_sides().expect("free scan");
        let t = x.target();
        let order = t.element_order(x.eval(&a));
        if order % 2 == 0 {
            even.push(e.family_a.name());
        }
        if !subgroup_generated(t, [x.eval(&a2)]).contains(x.eval(&a)) {
            outside.push(e.family_a.name());
        }
        if order == 7 && seven.is_none() {
            let (x, y) = e.pair.free_sides().expect("free scan");
            seven = Some(format!(
                "A -> {} images {:?}, B -> {} images {:?}",
                e.family_a.name(),
                x.images(),
                e.family_b.name(),
                y.images()
            ));
        }
    }
    report.check(
        "odd_a_image",
        "a has odd order under every compatible pair",
        even.is_empty(),
        format!("{} pairs, {} with even order", scan.entries.len(), even.len()),
    );
    report.check(
        "a_in_a_squared",
        "a lies in <a^2> under every compatible pair",
        outside.is_empty(),
        format!("{} exceptions", outside.len()),
    );
    report.check(
        "order_seven",
        "some compatible pair sends a to an element of order 7",
        seven.is_some(),
        seven.clone().unwrap_or_else(|| "none found".into()),
    );
    if let Some(s) = seven {
        report.artifact("order_seven_pair", s);
    }
    let desc = Description::Free(Arc::clone(&fa));
    for (side, g, name) in [(Side::A, "a^2", "lambda_a"), (Side::B, "c^2", "lambda_b")] {
        let w = FreeWord::parse(g, fa.names(side))?;
        let v = family_separability(&desc, side, &FactorElement::Free(w), Mode::Plain, bound)?;
        let hit = matches!(v.verdict, Verdict::NotSeparated { .. });
        report.check(
            name,
            &format!("<{g}> is not separable by the side-{side} members of compatible pairs"),
            hit,
            format!("{:?} after {} members", v.verdict, v.members_inspected),
        );
    }
    Ok(report)
}

fn cyclic_amalgamation(trials: usize, seed: u64) -> Result<CaseStudyReport, EngineError> {
    let case = CaseId::CyclicAmalgamation { trials, seed };
    let mut report = CaseStudyReport::new(case, &[("trials", trials.to_string()), ("seed", seed.to_string())]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    let mut pairs_checked = 0;
    let mut failures = Vec::new();
    let mut trial = 0;
    while trial < trials {
        let p = *[2u64, 3].choose(&mut rng).unwrap();
        let groups: Vec<_> = catalog_p_groups(27, p).into_iter().filter(|f| f.order() > 1).collect();
        let (fa, fb) = (groups.choose(&mut rng).unwrap().clone(), groups.choose(&mut rng).unwrap().clone());
        let (a, b) = (fa.group(), fb.group());
        let x = rng.gen_range(0..a.order());
        let d = a.element_order(x);
        let ys: Vec<Elem> = b.elements().filter(|&y| b.element_order(y) == d).collect();
        let Some(&y) = ys.choose(&mut rng) else { continue };
        trial += 1;
        let phi: HashMap<Elem, Elem> = (0..d as i64).map(|i| (a.pow(x, i), b.pow(y, i))).collect();
        let (h, k) = (subgroup_generated(&a, [x]), subgroup_generated(&b, [y]));
        let pres = build_amalgam(a, b, h, k, &phi)?;
        let mut ok = true;
        for pair in enumerate_compatible_pairs(&pres, Mode::Plain) {
            let (r, s) = pair.finite_sides().expect("finite pair");
            pairs_checked += 1;
            if is_p_compatible(&pres, r, s, p)?.is_none() {
                ok = false;
                failures.push(format!("{} * {} over order {d}: R of order {}, S of order {}", fa.name(), fb.name(), r.order(), s.order()));
            }
        }
        passed += ok as usize;
    }
    report.artifact("pairs_checked", pairs_checked);
    if !failures.is_empty() {
        report.artifact("failures", failures.join("; "));
    }
    report.check(
        "compatible_is_p_compatible",
        "every compatible pair of normal subgroups of p-power index is p-compatible",
        passed == trials,
        format!("{passed}/{trials} amalgams"),
    );
    Ok(report)
}
