//! Acceptance suite: one pass/fail line per criterion. Each check is backed
//! by an independent brute-force computation where one is feasible.

use std::collections::{BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use amalgsep::amalgam::{build_amalgam, AmalgamElement, AmalgamPresentation, FreeAmalgam, Letter, Side};
use amalgsep::arith::{is_power_of, prime_divisors};
use amalgsep::catalog::{catalog, catalog_p_groups, cyclic, symmetric, Family};
use amalgsep::compat::{
    enumerate_compatible_pairs, free_pair_is_compatible, is_compatible, is_p_compatible, Description, Mode,
};
use amalgsep::engine::{
    enumerate_amalgam_homs, run_case_study, separate_from_cyclic, verify_certificate, Bounds, CaseId, Obstruction,
    Outcome,
};
use amalgsep::fingrp::{
    all_p_chains, enumerate_normal_subgroups, enumerate_subgroups, is_p_prime_isolated_cyclic_finite,
    separating_core, subgroup_as_group, subgroup_generated, Elem, FiniteGroup, Subgroup,
};
use amalgsep::freegrp::GenImages;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `Z4 *_{Z2} Z4`, identity on the common `<x^2>`.
fn z4_amalgam() -> Arc<AmalgamPresentation> {
    let z4 = Arc::new(cyclic(4));
    let h = Subgroup::try_new(&z4, [0, 2]).unwrap();
    build_amalgam(Arc::clone(&z4), z4, h.clone(), h, &HashMap::from([(0, 0), (2, 2)])).unwrap()
}

/// `S3 *_{Z2} Z4`, a transposition identified with `x^2`.
fn s3_z4_amalgam() -> Arc<AmalgamPresentation> {
    let s3 = Arc::new(symmetric(3));
    let z4 = Arc::new(cyclic(4));
    let h = Subgroup::try_new(&s3, [0, 1]).unwrap();
    let k = Subgroup::try_new(&z4, [0, 2]).unwrap();
    build_amalgam(s3, z4, h, k, &HashMap::from([(0, 0), (1, 2)])).unwrap()
}

fn square_amalgam() -> Arc<FreeAmalgam> {
    FreeAmalgam::parse_new(vec!["a".into()], vec!["b".into()], &["a^2"], &["b^2"]).unwrap()
}

/// Non-trivial coset representatives on one side.
fn reps(pres: &AmalgamPresentation, side: Side) -> Vec<Elem> {
    let g = pres.factor(side);
    let set: BTreeSet<Elem> = g.elements().map(|x| pres.transversal(side, x)).collect();
    set.into_iter().filter(|&x| !pres.amalgamated(side).contains(x)).collect()
}

/// Every element of syllable length exactly `l`, built from letters.
fn elements_of_length(pres: &Arc<AmalgamPresentation>, l: usize) -> Vec<AmalgamElement> {
    let core: Vec<Elem> = pres.amalgamated(Side::A).members().to_vec();
    if l == 0 {
        return core.iter().map(|&h| pres.letter(Side::A, h)).collect();
    }
    let mut out = Vec::new();
    for start in [Side::A, Side::B] {
        let mut seqs: Vec<Vec<Letter>> = vec![Vec::new()];
        for i in 0..l {
            let side = if i % 2 == 0 { start } else { start.other() };
            let rs = reps(pres, side);
            seqs = seqs
                .into_iter()
                .flat_map(|s| rs.iter().map(move |&r| [s.clone(), vec![Letter::new(side, r)]].concat()))
                .collect();
        }
        for s in &seqs {
            for &h in &core {
                let letters: Vec<Letter> = std::iter::once(Letter::new(Side::A, h)).chain(s.iter().copied()).collect();
                out.push(pres.normalize(&letters));
            }
        }
    }
    out
}

/// `(hπ, gπ)` and the quotient for the counterexample family, built here
/// without the case-study code.
fn counterexample_quotient(p: u64, q: u64, n: u32) -> (AmalgamElement, AmalgamElement) {
    let fa =
        FreeAmalgam::parse_new(vec!["a".into()], vec!["b".into()], &[&format!("a^{p}")], &[&format!("b^{p}")]).unwrap();
    let m = p.pow(n);
    let z = Arc::new(cyclic(m as usize));
    let qa = fa.quotient(&GenImages::new(Arc::clone(&z), vec![1]), &GenImages::new(z, vec![1])).unwrap();
    let x = (1..m).find(|x| q * x % m == 1).unwrap();
    let mut g = String::new();
    for _ in 0..q {
        g.push_str("A:a B:b ");
    }
    g.push_str(&format!("A:a^{p}"));
    let h = format!("A:a B:b A:a^{}", p * x);
    (qa.project_free(&fa.parse(&h).unwrap()), qa.project_free(&fa.parse(&g).unwrap()))
}

fn criterion_1() -> Check {
    let mut lines = Vec::new();
    for (p, q, n) in [(2, 3, 2), (2, 3, 3), (3, 2, 2)] {
        let start = Instant::now();
        let report = run_case_study(CaseId::Counterexample { p, q, n }).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure(report.passed(), || format!("({p},{q},{n}): {:?}", report.assertions))?;
        ensure(report.assertions.len() == 3, || "expected three assertions".into())?;
        ensure(elapsed < Duration::from_secs(10), || format!("({p},{q},{n}) took {elapsed:?}"))?;

        // oracle: powers of g up to length l(h) q, and roots among short elements
        let (h, g) = counterexample_quotient(p, q, n);
        let (lh, lg) = (h.syllable_length(), g.syllable_length());
        let kmax = (lh * q as usize / lg + 1) as i64;
        let powers: Vec<AmalgamElement> = (-kmax..=kmax).map(|k| g.power(k)).collect();
        ensure(!powers.contains(&h), || format!("({p},{q},{n}): h is a power of g"))?;
        ensure(powers.contains(&h.power(q as i64)), || format!("({p},{q},{n}): h^q is not a power of g"))?;
        let has_root = prime_divisors(lg as u64).into_iter().filter(|&r| r != p).any(|r| {
            elements_of_length(g.presentation(), lg / r as usize).iter().any(|u| u.power(r as i64) == g)
        });
        ensure(has_root, || format!("({p},{q},{n}): no root found by brute force"))?;
        lines.push(format!("({p},{q},{n}) {:.2}s", elapsed.as_secs_f64()));
    }
    Ok(lines.join(", "))
}

fn criterion_2() -> Check {
    let g = z4_amalgam();
    let pairs = enumerate_compatible_pairs(&g, Mode::Plain);
    let got: Vec<(Subgroup, Subgroup)> =
        pairs.iter().map(|c| c.finite_sides().map(|(r, s)| (r.clone(), s.clone())).unwrap()).collect();
    // oracle: (R ∩ H)φ = S ∩ K by direct set comparison over all 9 candidates
    let (a, b) = (g.factor(Side::A), g.factor(Side::B));
    let mut oracle = Vec::new();
    for r in enumerate_normal_subgroups(a) {
        for s in enumerate_normal_subgroups(b) {
            let lhs: BTreeSet<Elem> =
                r.members().iter().filter(|&&x| g.amalgamated(Side::A).contains(x)).map(|&x| g.phi(x)).collect();
            let rhs: BTreeSet<Elem> =
                s.members().iter().filter(|&&y| g.amalgamated(Side::B).contains(y)).copied().collect();
            if lhs == rhs {
                oracle.push((r.clone(), s.clone()));
            }
        }
    }
    ensure(got.len() == 5, || format!("{} pairs", got.len()))?;
    ensure(got == oracle, || "pairs differ from brute force".into())?;
    let orders: Vec<(usize, usize)> = got.iter().map(|(r, s)| (r.order(), s.order())).collect();
    ensure(orders == vec![(1, 1), (2, 2), (2, 4), (4, 2), (4, 4)], || format!("orders {orders:?}"))?;

    let (one_a, one_b) = (Subgroup::trivial(a), Subgroup::trivial(b));
    let cert = is_p_compatible(&g, &one_a, &one_b, 2)
        .map_err(|e| e.to_string())?
        .and_then(|c| c.certificate)
        .ok_or("(1,1) rejected at p = 2")?;
    ensure(cert.chain_a.is_valid(a) && cert.chain_b.is_valid(b), || "invalid chain".into())?;
    let sets_a: BTreeSet<Subgroup> = cert.chain_a.links.iter().map(|l| l.intersection(g.amalgamated(Side::A))).collect();
    let sets_b: BTreeSet<Subgroup> = cert.chain_b.links.iter().map(|l| l.intersection(g.amalgamated(Side::B))).collect();
    let mapped: BTreeSet<BTreeSet<Elem>> =
        sets_a.iter().map(|x| x.members().iter().map(|&m| g.phi(m)).collect()).collect();
    let target: BTreeSet<BTreeSet<Elem>> = sets_b.iter().map(|x| x.members().iter().copied().collect()).collect();
    ensure(mapped == target, || "chain intersection sets do not correspond".into())?;
    ensure(is_p_compatible(&g, &one_a, &one_b, 3).map_err(|e| e.to_string())?.is_none(), || {
        "(1,1) accepted at p = 3".into()
    })?;
    Ok("5 pairs match brute force; (1,1) certified at p = 2, rejected at p = 3".into())
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let report = run_case_study(CaseId::FreeFactors { bound: 48 }).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.passed(), || format!("{:#?}", report.assertions))?;
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;

    // oracle: in Z7:2Z3 take a -> x of order 7, b -> y generating, c -> x
    // and d -> v with v^-1 x^2 v = y^-1 x y; both restrictions to the
    // amalgamated subgroups then agree, so the pair is compatible by
    // construction
    let fa = FreeAmalgam::parse_new(
        vec!["a".into(), "b".into()],
        vec!["c".into(), "d".into()],
        &["a", "b^-1 a b"],
        &["c", "d^-1 c^2 d"],
    )
    .map_err(|e| e.to_string())?;
    let t = Family::Metacyclic { m: 7, k: 2, j: 3 }.group();
    let conj = |x: Elem, by: Elem| t.mul(t.mul(t.inv(by), x), by);
    let mut built = None;
    'search: for x in t.elements().filter(|&x| t.element_order(x) == 7) {
        for y in t.elements().filter(|&y| subgroup_generated(&t, [x, y]).is_whole()) {
            if let Some(v) = t.elements().find(|&v| conj(t.mul(x, x), v) == conj(x, y)) {
                built = Some((x, y, v));
                break 'search;
            }
        }
    }
    let (x, y, v) = built.ok_or("no order-7 pair constructed")?;
    let psi_a = GenImages::new(Arc::clone(&t), vec![x, y]);
    let psi_b = GenImages::new(Arc::clone(&t), vec![x, v]);
    ensure(free_pair_is_compatible(&fa, &psi_a, &psi_b).map_err(|e| e.to_string())?, || {
        "constructed order-7 pair rejected".into()
    })?;
    Ok(format!("{} compatible pairs, {:.1}s", report.artifacts["pairs"], elapsed.as_secs_f64()))
}

/// Every cyclic `C ≤ Y` that is 2′-isolated in `Y` is separated from each
/// `y ∉ C` by a normal subgroup of 2-power index in `Y`.
fn isolated_cyclics_separable(y: &FiniteGroup, p: u64) -> bool {
    let normals: Vec<Subgroup> =
        enumerate_normal_subgroups(y).into_iter().filter(|m| is_power_of(m.index() as u64, p)).collect();
    enumerate_subgroups(y)
        .into_iter()
        .filter(|c| c.cyclic_generator(y).is_some())
        .filter(|c| is_p_prime_isolated_cyclic_finite(y, c, p).unwrap())
        .all(|c| y.elements().filter(|&x| !c.contains(x)).all(|x| normals.iter().any(|m| !c.product_set(y, m).contains(&x))))
}

fn criterion_4() -> Check {
    use rayon::prelude::*;
    let p = 2;
    let corpus: Vec<_> = catalog(48).into_iter().filter(|f| f.order() > 1).collect();
    let results: Vec<Result<(usize, usize, usize), String>> = corpus
        .par_iter()
        .map(|fam| {
            let x = fam.group();
            let normals = enumerate_normal_subgroups(&x);
            let two_power: Vec<&Subgroup> = normals.iter().filter(|n| is_power_of(n.index() as u64, p)).collect();
            let cyclics: Vec<Subgroup> = enumerate_subgroups(&x)
                .into_iter()
                .filter(|f| f.cyclic_generator(&x).is_some())
                .filter(|f| is_p_prime_isolated_cyclic_finite(&x, f, p).unwrap())
                .collect();
            let (mut cases, mut skipped_y, mut ys) = (0, 0, 0);
            for y in normals.iter().filter(|y| matches!(y.index(), 2 | 4)) {
                let (yg, _) = subgroup_as_group(&x, y);
                if !isolated_cyclics_separable(&yg, p) {
                    skipped_y += 1;
                    continue;
                }
                ys += 1;
                for f in &cyclics {
                    for g in x.elements().filter(|&g| !f.contains(g)) {
                        let n = separating_core(&x, y, f, g, p).map_err(|e| format!("{}: {e}", fam.name()))?;
                        let ok = n.is_normal_in(&x) && is_power_of(n.index() as u64, p) && !f.product_set(&x, &n).contains(&g);
                        if !ok {
                            return Err(format!("{}: postcondition fails", fam.name()));
                        }
                        // brute force agrees that some normal subgroup of 2-power index works
                        if !two_power.iter().any(|m| !f.product_set(&x, m).contains(&g)) {
                            return Err(format!("{}: brute force finds no separating subgroup", fam.name()));
                        }
                        cases += 1;
                    }
                }
            }
            Ok((cases, ys, skipped_y))
        })
        .collect();
    let (mut cases, mut ys, mut skipped) = (0, 0, 0);
    for r in results {
        let (c, y, s) = r?;
        cases += c;
        ys += y;
        skipped += s;
    }
    ensure(cases > 0, || "empty corpus".into())?;
    Ok(format!("{cases} instances over {ys} pairs (X, Y), 100% success; {skipped} Y excluded by hypothesis"))
}

fn criterion_5() -> Check {
    let g2 = z4_amalgam();
    let mut checked = 0;
    for l in 2..=6 {
        for g in elements_of_length(&g2, l).into_iter().filter(|g| g.is_cyclically_reduced()) {
            let claimed = g.is_p_prime_isolated(2).map_err(|e| e.to_string())?;
            let root_exists = prime_divisors(l as u64)
                .into_iter()
                .filter(|&q| q != 2)
                .any(|q| elements_of_length(&g2, l / q as usize).iter().any(|u| u.power(q as i64) == g));
            ensure(claimed != root_exists, || format!("{g:?}: isolated = {claimed}, root = {root_exists}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} cyclically reduced elements agree"))
}

fn random_element(pres: &Arc<AmalgamPresentation>, rng: &mut ChaCha8Rng, max_letters: usize) -> (Vec<Letter>, AmalgamElement) {
    let n = rng.gen_range(0..=max_letters);
    let letters: Vec<Letter> = (0..n)
        .map(|_| {
            let side = *[Side::A, Side::B].choose(rng).unwrap();
            Letter::new(side, rng.gen_range(0..pres.factor(side).order()))
        })
        .collect();
    let x = pres.normalize(&letters);
    (letters, x)
}

/// Syllables alternate, each is a non-trivial coset representative.
fn canonical(x: &AmalgamElement) -> bool {
    let pres = x.presentation();
    let s = x.syllables();
    pres.amalgamated(Side::A).contains(x.core())
        && s.windows(2).all(|w| w[0].side != w[1].side)
        && s.iter().all(|t| pres.transversal(t.side, t.elem) == t.elem && !pres.amalgamated(t.side).contains(t.elem))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let presentations = [z4_amalgam(), s3_z4_amalgam()];
    let mut power_checks = 0;
    for case in 0..1000 {
        let pres = &presentations[case % 2];
        let (letters, x) = random_element(pres, &mut rng, 10);
        let (_, y) = random_element(pres, &mut rng, 10);
        let (_, z) = random_element(pres, &mut rng, 10);
        let fail = |what: &str| format!("case {case}: {what} for {x:?}");
        ensure(canonical(&x), || fail("non-canonical normal form"))?;
        ensure(pres.normalize(&x.letters()) == x, || fail("normal form not idempotent"))?;
        // inserting u u^-1 anywhere leaves the normal form unchanged
        let i = rng.gen_range(0..=letters.len());
        let side = *[Side::A, Side::B].choose(&mut rng).unwrap();
        let f = pres.factor(side);
        let u = rng.gen_range(0..f.order());
        let mut padded = letters.clone();
        padded.splice(i..i, [Letter::new(side, u), Letter::new(side, f.inv(u))]);
        ensure(pres.normalize(&padded) == x, || fail("padding changed the normal form"))?;
        let mul = |a: &AmalgamElement, b: &AmalgamElement| a.multiply(b).unwrap();
        ensure(mul(&mul(&x, &y), &z) == mul(&x, &mul(&y, &z)), || fail("bracketing"))?;
        ensure(mul(&x, &x.invert()).is_identity(), || fail("inverse"))?;
        let (c, _) = x.cyclically_reduce();
        if c.syllable_length() >= 2 {
            let k = rng.gen_range(-6i64..=6);
            let lk = c.power(k).syllable_length();
            ensure(lk == k.unsigned_abs() as usize * c.syllable_length(), || fail(&format!("l(g^{k}) = {lk}")))?;
            power_checks += 1;
        }
    }
    Ok(format!("1000 cases, {power_checks} power-length checks, 0 failures"))
}

fn criterion_7() -> Check {
    // part 1: free factors, a 2-group witness
    let fa = square_amalgam();
    let desc = Description::Free(Arc::clone(&fa));
    let (h, g) = ("A:a B:b^7", "A:a B:b A:a B:b A:a B:b A:a^2");
    let start = Instant::now();
    let report = separate_from_cyclic(&desc, h, g, Mode::P(2), Bounds::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let Outcome::Separated(cert) = &report.outcome else {
        return Err(format!("part 1: {:?}\n{}", report.outcome, report.trail.join("\n")));
    };
    ensure(is_power_of(cert.target_order as u64, 2), || format!("target {} of order {}", cert.target, cert.target_order))?;
    ensure(verify_certificate(&desc, h, g, cert).map_err(|e| e.to_string())?, || "certificate fails".into())?;

    // part 2: not isolated, hence no 2-group separates
    let g2 = z4_amalgam();
    let desc = Description::Finite(Arc::clone(&g2));
    let (h, g) = ("A:x B:x A:x^2", "A:x B:x A:x B:x A:x B:x A:x^2");
    let report = separate_from_cyclic(&desc, h, g, Mode::P(2), Bounds::default()).map_err(|e| e.to_string())?;
    let Outcome::Obstructed(Obstruction::NotIsolated { q, root }) = &report.outcome else {
        return Err(format!("part 2: {:?}", report.outcome));
    };
    let (he, ge) = (g2.parse(h).unwrap(), g2.parse(g).unwrap());
    let r = g2.parse(root).map_err(|e| e.to_string())?;
    ensure(r.power(*q as i64) == ge, || format!("root {root} does not give g"))?;
    let targets: Vec<_> = catalog_p_groups(64, 2);
    use rayon::prelude::*;
    let separating = targets.par_iter().find_map_any(|fam| {
        let t = fam.group();
        enumerate_amalgam_homs(&g2, &t).unwrap().into_iter().find_map(|theta| {
            let (x, y) = (theta.apply(&he), theta.apply(&ge));
            let powers = subgroup_generated(&t, [y]);
            (!powers.contains(x)).then(|| fam.name())
        })
    });
    ensure(separating.is_none(), || format!("{separating:?} separates"))?;
    Ok(format!(
        "part 1 separated in {} ({:.1}s); part 2 root with q = {q}, none of {} 2-groups separates",
        cert.target,
        elapsed.as_secs_f64(),
        targets.len()
    ))
}

/// `(R, S)` is p-compatible iff some chains from `R` and `S` have intersection
/// sets corresponding under `φ`, checked over all chains.
fn p_compatible_by_chains(pres: &AmalgamPresentation, r: &Subgroup, s: &Subgroup, p: u64) -> bool {
    let (a, b) = (pres.factor(Side::A), pres.factor(Side::B));
    let sets = |g: &FiniteGroup, x: &Subgroup, side: Side| -> BTreeSet<BTreeSet<BTreeSet<Elem>>> {
        all_p_chains(g, x, p)
            .unwrap()
            .iter()
            .map(|c| {
                c.links
                    .iter()
                    .map(|l| {
                        l.members()
                            .iter()
                            .filter(|&&m| pres.amalgamated(side).contains(m))
                            .map(|&m| if side == Side::A { pres.phi(m) } else { m })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    };
    !sets(a, r, Side::A).is_disjoint(&sets(b, s, Side::B))
}

fn criterion_8() -> Check {
    let report = run_case_study(CaseId::CyclicAmalgamation { trials: 100, seed: 2024 }).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("{:?}", report.artifacts))?;

    // oracle on independently drawn instances
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (mut amalgams, mut pairs) = (0, 0);
    while amalgams < 30 {
        let p = *[2u64, 3].choose(&mut rng).unwrap();
        let groups: Vec<_> = catalog_p_groups(16, p).into_iter().filter(|f| f.order() > 1).collect();
        let (a, b) = (groups.choose(&mut rng).unwrap().group(), groups.choose(&mut rng).unwrap().group());
        let x = rng.gen_range(0..a.order());
        let d = a.element_order(x);
        let ys: Vec<Elem> = b.elements().filter(|&y| b.element_order(y) == d).collect();
        let Some(&y) = ys.choose(&mut rng) else { continue };
        amalgams += 1;
        let phi: HashMap<Elem, Elem> = (0..d as i64).map(|i| (a.pow(x, i), b.pow(y, i))).collect();
        let pres = build_amalgam(
            Arc::clone(&a),
            Arc::clone(&b),
            subgroup_generated(&a, [x]),
            subgroup_generated(&b, [y]),
            &phi,
        )
        .map_err(|e| e.to_string())?;
        for r in enumerate_normal_subgroups(&a) {
            for s in enumerate_normal_subgroups(&b) {
                if !is_compatible(&pres, &r, &s).unwrap() {
                    continue;
                }
                pairs += 1;
                ensure(p_compatible_by_chains(&pres, &r, &s, p), || format!("pair of orders {}, {}", r.order(), s.order()))?;
            }
        }
    }
    Ok(format!("case study {}; oracle: {pairs} pairs over {amalgams} amalgams", report.artifacts["pairs_checked"]))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("counterexample family", criterion_1),
        ("compatible pairs of the Z4 amalgam", criterion_2),
        ("free-factor catalog scan", criterion_3),
        ("separating core", criterion_4),
        ("isolation versus roots", criterion_5),
        ("normal forms and power lengths", criterion_6),
        ("witness engine", criterion_7),
        ("cyclic amalgamation", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: PASS {name} [{secs:.1}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{secs:.1}s] {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
