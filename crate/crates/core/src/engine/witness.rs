use std::sync::Arc;

use rayon::prelude::*;

use crate::amalgam::{AmalgamElement, AmalgamPresentation, CyclicMembership, FreeAmalgam, FreeElement, Order, Side};
use crate::arith::{is_power_of, is_prime, p_prime_part};
use crate::catalog::Family;
use crate::compat::{
    build_quotient_amalgam, family_separability, free_pair_is_compatible, free_pair_is_p_compatible,
    is_p_compatible, scan_compatible_free_pairs, CompatiblePair, Description, FactorElement, Mode, PairSide,
    Projection, QuotientAmalgam, ScanEntry, Verdict,
};
use crate::fingrp::{subgroup_generated, Elem, FiniteGroup, Homomorphism, Subgroup};
use crate::freegrp::{FreeWord, GenImages};

use super::homs::{enumerate_amalgam_homs, enumerate_free_homs, witness_targets, AmalgamHom, FreeHom};
use super::{Bounds, Certificate, EngineError, Obstruction, Outcome, Query, Theta, WitnessReport};

/// The input group, with `h` and `g` conjugated so that `g` is cyclically
/// reduced.
enum Parent {
    Finite { pres: Arc<AmalgamPresentation>, h: AmalgamElement, g: AmalgamElement },
    Free { fa: Arc<FreeAmalgam>, h: FreeElement, g: FreeElement },
}

/// A homomorphism of the parent whose kernel refines the pair.
enum Refinement {
    Finite(AmalgamHom),
    Free(FreeHom),
}

fn trivial_pair(pres: &AmalgamPresentation, mode: Mode) -> Result<CompatiblePair, EngineError> {
    let (r, s) = (Subgroup::trivial(pres.factor(Side::A)), Subgroup::trivial(pres.factor(Side::B)));
    match mode {
        Mode::Plain => Ok(CompatiblePair { mode, r: PairSide::Finite(r), s: PairSide::Finite(s), certificate: None }),
        Mode::P(p) => is_p_compatible(pres, &r, &s, p)?
            .ok_or_else(|| EngineError::PreconditionViolated(format!("the amalgam is not residually {p}-finite"))),
    }
}

/// Whether `ψ` keeps the factor word `w` outside the image of the
/// amalgamated subgroup.
fn keeps_outside(fa: &FreeAmalgam, side: Side, psi: &GenImages, w: &FreeWord) -> bool {
    let t = psi.target();
    let sub = subgroup_generated(t, fa.amalgam_gens(side).iter().map(|u| psi.eval(u)));
    !sub.contains(psi.eval(w))
}

fn side_map(e: &ScanEntry, side: Side) -> &GenImages {
    let (x, y) = e.pair.free_sides().expect("free scan");
    if side == Side::A {
        x
    } else {
        y
    }
}

fn free_length_preserving_pair(
    fa: &FreeAmalgam,
    elements: &[FreeElement],
    mode: Mode,
    bound: usize,
) -> Result<CompatiblePair, EngineError> {
    let mut syllables: Vec<(Side, FreeWord)> = Vec::new();
    for e in elements.iter().filter(|e| e.syllable_length() >= 1) {
        for s in e.syllables() {
            if !syllables.contains(s) {
                syllables.push(s.clone());
            }
        }
    }
    let mut steps: Vec<usize> = [8, 16, 32, 64, 128].into_iter().filter(|&b| b < bound).collect();
    steps.push(bound);
    for b in steps {
        let scan = scan_compatible_free_pairs(fa, b, mode);
        let keeps = |e: &ScanEntry, (side, w): &(Side, FreeWord)| keeps_outside(fa, *side, side_map(e, *side), w);
        if let Some(e) = scan.entries.iter().find(|e| syllables.iter().all(|s| keeps(e, s))) {
            return Ok(e.pair.clone());
        }
        let chosen: Option<Vec<&ScanEntry>> =
            syllables.iter().map(|s| scan.entries.iter().find(|e| keeps(e, s))).collect();
        let Some(chosen) = chosen else { continue };
        let (mut x, mut y) = (side_map(chosen[0], Side::A).clone(), side_map(chosen[0], Side::B).clone());
        for e in &chosen[1..] {
            x = x.intersect(side_map(e, Side::A))?;
            y = y.intersect(side_map(e, Side::B))?;
        }
        match mode {
            Mode::Plain => {
                debug_assert!(free_pair_is_compatible(fa, &x, &y)?);
                return Ok(CompatiblePair { mode, r: PairSide::Free(x), s: PairSide::Free(y), certificate: None });
            }
            Mode::P(p) => {
                if let Some(pair) = free_pair_is_p_compatible(fa, &x, &y, p)? {
                    return Ok(pair);
                }
            }
        }
    }
    Err(EngineError::BoundExhausted(bound))
}

/// A compatible pair under whose quotient every listed element keeps its
/// syllable length. Finite factors give `(1, 1)`; free factors combine
/// catalog pairs (realized as maps onto groups of order at most `bound`)
/// keeping each syllable outside the amalgamated subgroup.
pub fn find_length_preserving_pair(
    desc: &Description,
    elements: &[&str],
    mode: Mode,
    bound: usize,
) -> Result<CompatiblePair, EngineError> {
    match desc {
        Description::Finite(pres) => {
            for e in elements {
                pres.parse(e)?;
            }
            trivial_pair(pres, mode)
        }
        Description::Free(fa) => {
            let els = elements.iter().map(|e| fa.parse(e)).collect::<Result<Vec<_>, _>>()?;
            free_length_preserving_pair(fa, &els, mode, bound)
        }
    }
}

fn describe_pair(pair: &CompatiblePair) -> String {
    match (&pair.r, &pair.s) {
        (PairSide::Finite(r), PairSide::Finite(s)) => format!("pair (R, S) of orders ({}, {})", r.order(), s.order()),
        (PairSide::Free(x), PairSide::Free(y)) => {
            format!("pair of kernels of index ({}, {}), generator images {:?} and {:?}", x.index(), y.index(), x.images(), y.images())
        }
        _ => unreachable!("mixed pair"),
    }
}

impl Parent {
    fn quotient(&self, pair: &CompatiblePair) -> Result<QuotientAmalgam, EngineError> {
        match (self, &pair.r, &pair.s) {
            (Parent::Finite { pres, .. }, PairSide::Finite(r), PairSide::Finite(s)) => {
                Ok(build_quotient_amalgam(pres, r, s)?)
            }
            (Parent::Free { fa, .. }, PairSide::Free(x), PairSide::Free(y)) => Ok(fa.quotient(x, y)?),
            _ => unreachable!("pair does not match the presentation"),
        }
    }

    fn project(&self, qa: &QuotientAmalgam) -> (AmalgamElement, AmalgamElement) {
        match self {
            Parent::Finite { h, g, .. } => (qa.project(h), qa.project(g)),
            Parent::Free { h, g, .. } => (qa.project_free(h), qa.project_free(g)),
        }
    }

    /// First homomorphism onto a catalog target under which both
    /// `h^{-a} g^{k}` and `h^{-a} g^{-k}` survive.
    fn find_refinement(&self, a: i64, k: i64, mode: Mode, max_order: usize) -> Option<(Family, Refinement)> {
        let targets = witness_targets(mode, max_order);
        match self {
            Parent::Finite { pres, h, g } => {
                let xs: Vec<AmalgamElement> = [k, -k].iter().map(|&e| h.power(-a).mul(&g.power(e))).collect();
                targets.par_iter().find_map_first(|f| {
                    let t = f.group();
                    let homs = enumerate_amalgam_homs(pres, &t).ok()?;
                    homs.into_iter()
                        .find(|th| xs.iter().all(|x| th.apply(x) != 0))
                        .map(|th| (f.clone(), Refinement::Finite(th)))
                })
            }
            Parent::Free { fa, h, g } => {
                let xs: Vec<FreeElement> = [k, -k].iter().map(|&e| h.power(-a).mul(&g.power(e))).collect();
                targets.par_iter().find_map_first(|f| {
                    let t = f.group();
                    let homs = enumerate_free_homs(fa, &t).ok()?;
                    homs.into_iter()
                        .find(|th| xs.iter().all(|x| th.apply(x) != 0))
                        .map(|th| (f.clone(), Refinement::Free(th)))
                })
            }
        }
    }

    fn refine(&self, pair: &CompatiblePair, l: &Refinement) -> Result<CompatiblePair, EngineError> {
        let (r, s) = match (&pair.r, &pair.s, l) {
            (PairSide::Finite(r), PairSide::Finite(s), Refinement::Finite(th)) => {
                let (ka, kb) = th.kernels();
                (PairSide::Finite(r.intersection(&ka)), PairSide::Finite(s.intersection(&kb)))
            }
            (PairSide::Free(x), PairSide::Free(y), Refinement::Free(th)) => {
                (PairSide::Free(x.intersect(&th.a)?), PairSide::Free(y.intersect(&th.b)?))
            }
            _ => unreachable!("refinement does not match the pair"),
        };
        Ok(CompatiblePair { mode: pair.mode, r, s, certificate: None })
    }

    /// The factor element conjugate to `g` when `l(g) ≤ 1`.
    fn factor_element(&self) -> (Side, FactorElement) {
        match self {
            Parent::Finite { g, .. } => {
                let l = g.as_factor_element().expect("length at most one");
                (l.side, FactorElement::Finite(l.elem))
            }
            Parent::Free { g, .. } => {
                let (side, w) = g.syllables().first().cloned().unwrap_or((Side::A, FreeWord::identity()));
                (side, FactorElement::Free(w))
            }
        }
    }
}

/// First catalog homomorphism of the quotient amalgam with `hθ ∉ <gθ>`.
fn search_witness(
    q: &AmalgamPresentation,
    h: &AmalgamElement,
    g: &AmalgamElement,
    mode: Mode,
    max_order: usize,
) -> Option<(Family, AmalgamHom)> {
    witness_targets(mode, max_order).par_iter().find_map_first(|f| {
        let t = f.group();
        let homs = enumerate_amalgam_homs(q, &t).ok()?;
        homs.into_iter()
            .find(|th| !subgroup_generated(&t, [th.apply(g)]).contains(th.apply(h)))
            .map(|th| (f.clone(), th))
    })
}

/// `θ` pulled back from the quotient to the parent factors.
fn compose(qa: &QuotientAmalgam, th: &AmalgamHom) -> Theta {
    match &qa.projection {
        Projection::Finite { a, b } => Theta::Finite {
            a: a.map().iter().map(|&x| th.factor_map(Side::A)[x]).collect(),
            b: b.map().iter().map(|&x| th.factor_map(Side::B)[x]).collect(),
        },
        Projection::Free { a, b } => Theta::Free {
            a: a.images().iter().map(|&x| th.factor_map(Side::A)[x]).collect(),
            b: b.images().iter().map(|&x| th.factor_map(Side::B)[x]).collect(),
        },
    }
}

/// Whether `theta` defines a homomorphism of the amalgam into `t`.
fn theta_is_homomorphism(desc: &Description, theta: &Theta, t: &Arc<FiniteGroup>) -> bool {
    match (desc, theta) {
        (Description::Finite(pres), Theta::Finite { a, b }) => {
            let hom = |side: Side, m: &[Elem]| {
                Homomorphism::new(Arc::clone(pres.factor(side)), Arc::clone(t), m.to_vec()).is_some()
            };
            hom(Side::A, a)
                && hom(Side::B, b)
                && pres.amalgamated(Side::A).members().iter().all(|&x| a[x] == b[pres.phi(x)])
        }
        (Description::Free(fa), Theta::Free { a, b }) => {
            if a.len() != fa.rank(Side::A) || b.len() != fa.rank(Side::B) {
                return false;
            }
            if a.iter().chain(b).any(|&x| x >= t.order()) {
                return false;
            }
            let (ma, mb) = (GenImages::new(Arc::clone(t), a.clone()), GenImages::new(Arc::clone(t), b.clone()));
            fa.amalgam_gens(Side::A)
                .iter()
                .zip(fa.amalgam_gens(Side::B))
                .all(|(u, v)| ma.eval(u) == mb.eval(v))
        }
        _ => false,
    }
}

fn theta_value(desc: &Description, theta: &Theta, t: &Arc<FiniteGroup>, s: &str) -> Result<Elem, EngineError> {
    match (desc, theta) {
        (Description::Finite(pres), Theta::Finite { a, b }) => Ok(pres
            .parse(s)?
            .letters()
            .iter()
            .fold(0, |acc, l| t.mul(acc, if l.side == Side::A { a[l.elem] } else { b[l.elem] }))),
        (Description::Free(fa), Theta::Free { a, b }) => {
            let th = FreeHom { a: GenImages::new(Arc::clone(t), a.clone()), b: GenImages::new(Arc::clone(t), b.clone()) };
            Ok(th.apply(&fa.parse(s)?))
        }
        _ => Err(EngineError::PreconditionViolated("homomorphism does not match the presentation".into())),
    }
}

/// Checks a certificate from scratch: `θ` is a homomorphism into the
/// embedded target table, the recorded images are right, and `hθ` is not a
/// power of `gθ`.
pub fn verify_certificate(desc: &Description, h: &str, g: &str, cert: &Certificate) -> Result<bool, EngineError> {
    let t = Arc::new(FiniteGroup::from_json(&cert.target_table)?);
    if t.order() != cert.target_order || !theta_is_homomorphism(desc, &cert.theta, &t) {
        return Ok(false);
    }
    let (hi, gi) = (theta_value(desc, &cert.theta, &t, h)?, theta_value(desc, &cert.theta, &t, g)?);
    Ok(hi == cert.h_image
        && gi == cert.g_image
        && t.element_order(gi) == cert.g_image_order
        && !subgroup_generated(&t, [gi]).contains(hi))
}

fn certificate(
    desc: &Description,
    query: &Query,
    qa: &QuotientAmalgam,
    family: &Family,
    th: &AmalgamHom,
) -> Result<Certificate, EngineError> {
    let t = family.group();
    let theta = compose(qa, th);
    let (hi, gi) = (theta_value(desc, &theta, &t, &query.h)?, theta_value(desc, &theta, &t, &query.g)?);
    let values: Vec<Elem> = match &theta {
        Theta::Finite { a, b } | Theta::Free { a, b } => a.iter().chain(b).copied().collect(),
    };
    let mut cert = Certificate {
        target: family.name(),
        target_order: t.order(),
        image_order: subgroup_generated(&t, values).order(),
        theta,
        h_image: hi,
        g_image: gi,
        g_image_order: t.element_order(gi),
        verified: false,
        target_table: t.to_json(),
    };
    let p_ok = query.mode.prime().is_none_or(|p| is_power_of(t.order() as u64, p));
    cert.verified = p_ok && verify_certificate(desc, &query.h, &query.g, &cert)?;
    Ok(cert)
}

/// Separates `h` from `<g>` by a homomorphism onto a finite group (a finite
/// p-group in p-mode), or reports why not.
///
/// `g` and `h` are conjugated so that `g` is cyclically reduced, then pushed
/// into a quotient amalgam `G_{R,S}` where both keep their syllable lengths.
/// With `n = l(g) ≥ 2` and `m = l(h)`: if the lengths decide (`n ∤ m`, in
/// p-mode `n ∤ m n′` with `n′` the p′-part of `n`) the pair is kept;
/// otherwise `m = nk` (resp. `m n′ = nk`) and the pair is refined by the
/// kernel of the first homomorphism under which `h^{-1} g^{±k}` (resp.
/// `h^{-n′} g^{±k}`) survive. The certificate is the first catalog
/// homomorphism of the final quotient that separates, by increasing order.
pub fn separate_from_cyclic(
    desc: &Description,
    h: &str,
    g: &str,
    mode: Mode,
    bounds: Bounds,
) -> Result<WitnessReport, EngineError> {
    if let Mode::P(p) = mode {
        if !is_prime(p) {
            return Err(EngineError::PreconditionViolated(format!("{p} is not prime")));
        }
    }
    let query = Query { h: h.into(), g: g.into(), mode };
    let mut trail = Vec::new();
    let (parent, pair) = match desc {
        Description::Finite(pres) => {
            let (h0, g0) = (pres.parse(h)?, pres.parse(g)?);
            if g0.is_identity() {
                return Err(EngineError::TrivialG);
            }
            if let CyclicMembership::Member(k) = g0.cyclic_member(&h0)? {
                trail.push(format!("h = g^{k}"));
                return Ok(WitnessReport { query, outcome: Outcome::Member { k }, trail });
            }
            let (g1, c) = g0.cyclically_reduce();
            let h1 = h0.conjugate_by(&c);
            trail.push(format!("conjugated by {c}: g' = {g1}, h' = {h1}"));
            if let (Mode::P(p), Order::Infinite) = (mode, g1.element_order()) {
                if let Some(cert) = g0.p_prime_root(p)? {
                    let root = cert.root.to_letter_string();
                    trail.push(format!("g = r^{} with r = {root}, so <g> is not {p}'-isolated", cert.q));
                    let outcome = Outcome::Obstructed(Obstruction::NotIsolated { q: cert.q, root });
                    return Ok(WitnessReport { query, outcome, trail });
                }
                trail.push(format!("<g> is {p}'-isolated"));
            }
            (Parent::Finite { pres: Arc::clone(pres), h: h1, g: g1 }, trivial_pair(pres, mode)?)
        }
        Description::Free(fa) => {
            let (h0, g0) = (fa.parse(h)?, fa.parse(g)?);
            if g0.is_identity() {
                return Err(EngineError::TrivialG);
            }
            if let CyclicMembership::Member(k) = g0.cyclic_member(&h0)? {
                trail.push(format!("h = g^{k}"));
                return Ok(WitnessReport { query, outcome: Outcome::Member { k }, trail });
            }
            let (g1, c) = g0.cyclically_reduce();
            let h1 = h0.conjugate_by(&c);
            trail.push(format!("conjugated by {c}: g' = {g1}, h' = {h1}"));
            let pair = match free_length_preserving_pair(fa, &[h1.clone(), g1.clone()], mode, bounds.catalog) {
                Ok(pair) => pair,
                Err(EngineError::BoundExhausted(b)) => {
                    trail.push(format!("no length-preserving pair up to order {b}"));
                    let outcome = Outcome::Obstructed(Obstruction::BoundExhausted { bound: b });
                    return Ok(WitnessReport { query, outcome, trail });
                }
                Err(e) => return Err(e),
            };
            (Parent::Free { fa: Arc::clone(fa), h: h1, g: g1 }, pair)
        }
    };
    trail.push(describe_pair(&pair));
    let mut qa = parent.quotient(&pair)?;
    let (mut hq, mut gq) = parent.project(&qa);
    let (n, m) = (gq.syllable_length(), hq.syllable_length());
    trail.push(format!("in the quotient: l(g) = {n}, l(h) = {m}"));

    let exhausted = |trail: Vec<String>, bound: usize| WitnessReport {
        query: query.clone(),
        outcome: Outcome::Obstructed(Obstruction::BoundExhausted { bound }),
        trail,
    };
    if n <= 1 {
        trail.push("g has finite order in the quotient; searching directly".into());
        if let Some((f, th)) = search_witness(&qa.quotient, &hq, &gq, mode, bounds.max_order) {
            let cert = certificate(desc, &query, &qa, &f, &th)?;
            return Ok(WitnessReport { query, outcome: Outcome::Separated(cert), trail });
        }
        let (side, fe) = parent.factor_element();
        let verdict = family_separability(desc, side, &fe, mode, bounds.catalog)?;
        if let Verdict::NotSeparated { x, .. } = verdict.verdict {
            trail.push(format!("<g> is not separated from {x} by the factor family on side {side}"));
            let outcome = Outcome::Obstructed(Obstruction::LambdaFamily { side, excluded: x });
            return Ok(WitnessReport { query, outcome, trail });
        }
        return Ok(exhausted(trail, bounds.max_order));
    }

    // exponent `a` of h in the elements that must survive refinement
    let refine_with: Option<(i64, i64)> = match mode {
        Mode::Plain => {
            if m % n != 0 {
                trail.push("n does not divide m: lengths separate h from <g>".into());
                None
            } else {
                let k = (m / n) as i64;
                trail.push(format!("m = n k with k = {k}: refining by a kernel excluding h^-1 g^(+-{k})"));
                Some((1, k))
            }
        }
        Mode::P(p) => {
            let (f, j) = gq.isolated_closure(p)?;
            trail.push(format!("isolated closure in the quotient: g = f^{j}, f = {f}"));
            let n1 = p_prime_part(n as u64, p) as usize;
            if (m * n1) % n != 0 {
                let outside = !f.cyclic_member(&hq)?.is_member() && !gq.cyclic_member(&hq.power(n1 as i64))?.is_member();
                trail.push(format!("case 1: n = {n} does not divide m n' = {}; h outside <f>: {outside}", m * n1));
                None
            } else {
                let k = (m * n1 / n) as i64;
                trail.push(format!("case 2: m n' = n k with n' = {n1}, k = {k}: refining by a kernel excluding h^-{n1} g^(+-{k})"));
                Some((n1 as i64, k))
            }
        }
    };
    if let Some((a, k)) = refine_with {
        let Some((family, l)) = parent.find_refinement(a, k, mode, bounds.max_order) else {
            trail.push(format!("no refining homomorphism up to order {}", bounds.max_order));
            return Ok(exhausted(trail, bounds.max_order));
        };
        trail.push(format!("refining kernel from a map into {}", family.name()));
        let refined = parent.refine(&pair, &l)?;
        trail.push(describe_pair(&refined));
        qa = parent.quotient(&refined)?;
        (hq, gq) = parent.project(&qa);
    }
    match search_witness(&qa.quotient, &hq, &gq, mode, bounds.max_order) {
        Some((f, th)) => {
            trail.push(format!("separating homomorphism into {}", f.name()));
            let cert = certificate(desc, &query, &qa, &f, &th)?;
            Ok(WitnessReport { query, outcome: Outcome::Separated(cert), trail })
        }
        None => {
            trail.push(format!("no separating homomorphism up to order {}", bounds.max_order));
            Ok(exhausted(trail, bounds.max_order))
        }
    }
}
