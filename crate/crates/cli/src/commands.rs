//! One handler per subcommand. Each returns a status, a one-line summary
//! and the JSON result.

use std::path::Path;

use serde_json::{json, Value};

use amalgsep::amalgam::{AmalgamPresentation, CyclicMembership, Order, Side};
use amalgsep::arith::{is_prime, prime_divisors};
use amalgsep::compat::{
    enumerate_compatible_pairs, is_compatible, is_p_compatible, scan_compatible_free_pairs, CompatiblePair, Description,
    Mode, PCertificate,
};
use amalgsep::engine::{run_case_study, separate_from_cyclic, Bounds, CaseId, EngineError, Obstruction, Outcome};
use amalgsep::fingrp::{FiniteGroup, NormalChain, Subgroup};

use crate::input::{self, InputError};
use crate::report::Status;

pub struct Done {
    pub status: Status,
    pub summary: String,
    pub result: Value,
}

pub enum Failure {
    Input(String),
    BoundExhausted(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::BoundExhausted(_) => Failure::BoundExhausted(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn input_err(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

type Handled = Result<Done, Failure>;

fn done(status: Status, summary: impl Into<String>, result: Value) -> Handled {
    Ok(Done { status, summary: summary.into(), result })
}

pub fn mode_for(p: Option<u64>) -> Result<Mode, Failure> {
    match p {
        None => Ok(Mode::Plain),
        Some(p) if is_prime(p) => Ok(Mode::P(p)),
        Some(p) => Err(Failure::Input(format!("{p} is not prime"))),
    }
}

fn names(g: &FiniteGroup, s: &Subgroup) -> Vec<String> {
    s.members().iter().map(|&x| g.name(x)).collect()
}

fn chain_json(g: &FiniteGroup, c: &NormalChain) -> Value {
    json!({ "prime": c.prime, "links": c.links.iter().map(|l| names(g, l)).collect::<Vec<_>>() })
}

fn certificate_json(pres: &AmalgamPresentation, c: &PCertificate) -> Value {
    let (a, b) = (pres.factor(Side::A), pres.factor(Side::B));
    json!({
        "chain_a": chain_json(a, &c.chain_a),
        "chain_b": chain_json(b, &c.chain_b),
        "h_sets": c.h_sets.iter().map(|s| names(a, s)).collect::<Vec<_>>(),
        "k_sets": c.k_sets.iter().map(|s| names(b, s)).collect::<Vec<_>>(),
    })
}

fn finite_pair_json(pres: &AmalgamPresentation, pair: &CompatiblePair) -> Value {
    let (r, s) = pair.finite_sides().expect("finite pair");
    json!({
        "r": names(pres.factor(Side::A), r),
        "s": names(pres.factor(Side::B), s),
        "certificate": pair.certificate.as_ref().map(|c| certificate_json(pres, c)),
    })
}

fn order_json(o: Order) -> Value {
    match o {
        Order::Finite(n) => json!(n),
        Order::Infinite => json!("infinite"),
    }
}

fn order_text(o: Order) -> String {
    match o {
        Order::Finite(n) => n.to_string(),
        Order::Infinite => "infinite".into(),
    }
}

pub fn group_check(file: &Path) -> Handled {
    let g = input::load_group(file)?;
    let orders: Vec<Value> =
        g.elements().map(|x| json!({ "element": g.name(x), "order": g.element_order(x) })).collect();
    let summary = format!(
        "valid group of order {}, {}, exponent {}",
        g.order(),
        if g.is_abelian() { "abelian" } else { "non-abelian" },
        g.exponent()
    );
    done(
        Status::Success,
        summary,
        json!({ "order": g.order(), "abelian": g.is_abelian(), "exponent": g.exponent(), "element_orders": orders }),
    )
}

pub fn amalgam_build(desc: &Description) -> Handled {
    match desc {
        Description::Finite(pres) => {
            let (a, b) = (pres.factor(Side::A), pres.factor(Side::B));
            let (h, k) = (pres.amalgamated(Side::A), pres.amalgamated(Side::B));
            let phi: Vec<Value> =
                h.members().iter().map(|&x| json!([a.name(x), b.name(pres.phi(x))])).collect();
            let mut primes = prime_divisors((a.order() * b.order()) as u64);
            primes.dedup();
            let residually: serde_json::Map<String, Value> =
                primes.iter().map(|&p| (p.to_string(), json!(pres.is_residually_p(p)))).collect();
            let summary = format!(
                "A of order {}, B of order {}, amalgamated subgroup of order {} (indices {}, {})",
                a.order(),
                b.order(),
                h.order(),
                h.index(),
                k.index()
            );
            done(
                Status::Success,
                summary,
                json!({
                    "kind": "finite",
                    "a_order": a.order(),
                    "b_order": b.order(),
                    "h": names(a, h),
                    "k": names(b, k),
                    "phi": phi,
                    "residually_p": residually,
                }),
            )
        }
        Description::Free(fa) => {
            let spell = |side: Side| -> Vec<String> {
                fa.amalgam_gens(side).iter().map(|w| w.display_with(fa.names(side))).collect()
            };
            let summary = format!(
                "free factors of ranks {} and {}, amalgamated subgroup of rank {}",
                fa.rank(Side::A),
                fa.rank(Side::B),
                fa.amalgam_gens(Side::A).len()
            );
            done(
                Status::Success,
                summary,
                json!({
                    "kind": "free",
                    "a_gens": fa.names(Side::A),
                    "b_gens": fa.names(Side::B),
                    "h": spell(Side::A),
                    "k": spell(Side::B),
                }),
            )
        }
    }
}

pub fn amalgam_reduce(desc: &Description, word: &str) -> Handled {
    match desc {
        Description::Finite(pres) => {
            let x = pres.parse(word).map_err(input_err)?;
            let (y, c) = x.cyclically_reduce();
            let order = x.element_order();
            let summary = format!("{x}: length {}, order {}", x.syllable_length(), order_text(order));
            done(
                Status::Success,
                summary,
                json!({
                    "input": word,
                    "normal_form": x.to_string(),
                    "core_and_syllables": x.normal_form_string(),
                    "syllable_length": x.syllable_length(),
                    "cyclic_reduction": { "reduced": y.to_string(), "conjugator": c.to_string() },
                    "order": order_json(order),
                }),
            )
        }
        Description::Free(fa) => {
            let x = fa.parse(word).map_err(input_err)?;
            let (y, c) = x.cyclically_reduce();
            // free amalgams are torsion-free
            let order = if x.syllables().is_empty() { Order::Finite(1) } else { Order::Infinite };
            let summary = format!("{x}: length {}, order {}", x.syllable_length(), order_text(order));
            done(
                Status::Success,
                summary,
                json!({
                    "input": word,
                    "normal_form": x.to_string(),
                    "syllable_length": x.syllable_length(),
                    "cyclic_reduction": { "reduced": y.to_string(), "conjugator": c.to_string() },
                    "order": order_json(order),
                }),
            )
        }
    }
}

fn membership(m: CyclicMembership) -> Handled {
    match m {
        CyclicMembership::Member(k) => {
            done(Status::Negative, format!("member: h = g^{k}"), json!({ "membership": "member", "k": k }))
        }
        CyclicMembership::NonMember(reason) => done(
            Status::Success,
            format!("not a member ({reason:?})"),
            json!({ "membership": "non_member", "reason": format!("{reason:?}") }),
        ),
    }
}

pub fn amalgam_member(desc: &Description, h: &str, g: &str) -> Handled {
    match desc {
        Description::Finite(pres) => {
            let (h, g) = (pres.parse(h).map_err(input_err)?, pres.parse(g).map_err(input_err)?);
            membership(g.cyclic_member(&h).map_err(input_err)?)
        }
        Description::Free(fa) => {
            let (h, g) = (fa.parse(h).map_err(input_err)?, fa.parse(g).map_err(input_err)?);
            membership(g.cyclic_member(&h).map_err(input_err)?)
        }
    }
}

pub fn isolate(desc: &Description, g: &str, p: u64) -> Handled {
    let pres = input::finite(desc, "isolate")?;
    mode_for(Some(p))?;
    let x = pres.parse(g).map_err(input_err)?;
    let root = x.p_prime_root(p).map_err(input_err)?;
    let (f, j) = x.isolated_closure(p).map_err(input_err)?;
    let closure = json!({ "generator": f.to_string(), "index": j });
    match root {
        None => done(
            Status::Success,
            format!("<{x}> is {p}'-isolated"),
            json!({ "isolated": true, "closure": closure }),
        ),
        Some(cert) => done(
            Status::Negative,
            format!("<{x}> is not {p}'-isolated: ({})^{} = g", cert.root, cert.q),
            json!({
                "isolated": false,
                "root": { "q": cert.q, "root": cert.root.to_string() },
                "closure": closure,
            }),
        ),
    }
}

pub fn compat_check(desc: &Description, p: Option<u64>, r: Option<&str>, s: Option<&str>) -> Handled {
    let pres = input::finite(desc, "compat check")?;
    let mode = mode_for(p)?;
    let rs = input::parse_subgroup(&pres, Side::A, r)?;
    let ss = input::parse_subgroup(&pres, Side::B, s)?;
    let (a, b) = (pres.factor(Side::A), pres.factor(Side::B));
    let base = json!({ "r": names(a, &rs), "s": names(b, &ss) });
    let (ok, cert) = match mode {
        Mode::Plain => (is_compatible(&pres, &rs, &ss).map_err(input_err)?, None),
        Mode::P(p) => {
            let pair = is_p_compatible(&pres, &rs, &ss, p).map_err(input_err)?;
            (pair.is_some(), pair.and_then(|c| c.certificate).map(|c| certificate_json(&pres, &c)))
        }
    };
    let what = match mode {
        Mode::Plain => "compatible".to_string(),
        Mode::P(p) => format!("{p}-compatible"),
    };
    let mut result = base;
    result["compatible"] = json!(ok);
    if let Some(c) = cert {
        result["certificate"] = c;
    }
    let status = if ok { Status::Success } else { Status::Negative };
    let summary = format!("(R, S) of orders ({}, {}) is {}{what}", rs.order(), ss.order(), if ok { "" } else { "not " });
    done(status, summary, result)
}

pub fn compat_enum(desc: &Description, p: Option<u64>, bound: usize) -> Handled {
    let mode = mode_for(p)?;
    match desc {
        Description::Finite(pres) => {
            let pairs: Vec<Value> =
                enumerate_compatible_pairs(pres, mode).iter().map(|c| finite_pair_json(pres, c)).collect();
            done(Status::Success, format!("{} pairs", pairs.len()), json!({ "kind": "finite", "pairs": pairs }))
        }
        Description::Free(fa) => {
            let scan = scan_compatible_free_pairs(fa, bound, mode);
            let pairs: Vec<Value> = scan
                .entries
                .iter()
                .map(|e| {
                    let (x, y) = e.pair.free_sides().expect("free pair");
                    let spell = |m: &amalgsep::freegrp::GenImages| -> Vec<String> {
                        m.images().iter().map(|&v| m.target().name(v)).collect()
                    };
                    json!({
                        "target_a": e.family_a.name(),
                        "images_a": spell(x),
                        "target_b": e.family_b.name(),
                        "images_b": spell(y),
                    })
                })
                .collect();
            done(
                Status::Success,
                format!("{} pairs with targets of order at most {bound}", pairs.len()),
                json!({ "kind": "free", "bound": bound, "pairs": pairs }),
            )
        }
    }
}

pub fn witness(desc: &Description, h: &str, g: &str, p: Option<u64>, bounds: Bounds) -> Handled {
    let mode = mode_for(p)?;
    let report = separate_from_cyclic(desc, h, g, mode, bounds)?;
    let (status, summary) = match &report.outcome {
        Outcome::Separated(c) => (
            Status::Success,
            format!("separated onto {} (order {}), verified: {}", c.target, c.target_order, c.verified),
        ),
        Outcome::Member { k } => (Status::Negative, format!("member: h = g^{k}")),
        Outcome::Obstructed(Obstruction::BoundExhausted { bound }) => {
            (Status::BoundExhausted, format!("no witness among targets of order at most {bound}"))
        }
        Outcome::Obstructed(o) => (Status::Negative, format!("obstructed: {o:?}")),
    };
    done(status, summary, serde_json::to_value(&report).expect("report serializes"))
}

pub fn case(id: CaseId) -> Handled {
    let report = run_case_study(id)?;
    let passed = report.assertions.iter().filter(|a| a.passed).count();
    let status = if report.passed() { Status::Success } else { Status::Negative };
    let summary = format!("{}: {passed}/{} assertions passed", report.case, report.assertions.len());
    done(status, summary, serde_json::to_value(&report).expect("report serializes"))
}
