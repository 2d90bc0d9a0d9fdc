use std::collections::HashSet;

use serde::Serialize;

use crate::amalgam::Side;
use crate::fingrp::{subgroup_generated, Elem, Subgroup};
use crate::freegrp::{fold_subgroup, graph_member, FreeWord, GenImages, Letter as FreeLetter};

use super::{enumerate_compatible_pairs, scan_compatible_free_pairs, CompatError, Description, Mode, PairSide};

/// `Ω_A`, `Ω_B` and their p-versions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FamilyKind {
    Omega(Side),
    OmegaP(Side, u64),
}

/// An element of a factor: an index in a finite factor or a word in a free one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorElement {
    Finite(Elem),
    Free(FreeWord),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// The element kept out of `<g>M`.
    pub excluded: String,
    /// The family member `M`, as a member list or as generator images.
    pub member: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Separable { witnesses: Vec<Witness> },
    /// `x ∉ <g>` but `x ∈ <g>M` for every member inspected. `bounded` marks
    /// a free-factor verdict relative to the catalog scan.
    NotSeparated { x: String, bounded: bool },
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyVerdict {
    pub subject: String,
    pub family: FamilyKind,
    pub verdict: Verdict,
    /// Catalog order bound for free factors.
    pub bound: Option<usize>,
    pub members_inspected: usize,
}

/// Whether `<g>` is separable by the family of side-`side` members of
/// compatible pairs. Finite factors are decided exactly; free factors are
/// scanned over catalog targets of order at most `bound`, testing the
/// reduced words of length at most 2 as candidate excluded elements.
pub fn family_separability(
    desc: &Description,
    side: Side,
    g: &FactorElement,
    mode: Mode,
    bound: usize,
) -> Result<FamilyVerdict, CompatError> {
    let family = match mode {
        Mode::Plain => FamilyKind::Omega(side),
        Mode::P(p) => FamilyKind::OmegaP(side, p),
    };
    match (desc, g) {
        (Description::Finite(pres), FactorElement::Finite(g)) => {
            let grp = pres.factor(side);
            if *g >= grp.order() {
                return Err(CompatError::WrongSide(side));
            }
            let members = finite_members(desc, side, mode);
            let f = subgroup_generated(grp, [*g]);
            let mut witnesses = Vec::new();
            for x in grp.elements().filter(|&x| !f.contains(x)) {
                match members.iter().find(|m| !f.product_set(grp, m).contains(&x)) {
                    Some(m) => witnesses.push(Witness { excluded: grp.name(x), member: format!("{:?}", m.members()) }),
                    None => {
                        return Ok(FamilyVerdict {
                            subject: grp.name(*g),
                            family,
                            verdict: Verdict::NotSeparated { x: grp.name(x), bounded: false },
                            bound: None,
                            members_inspected: members.len(),
                        })
                    }
                }
            }
            Ok(FamilyVerdict {
                subject: grp.name(*g),
                family,
                verdict: Verdict::Separable { witnesses },
                bound: None,
                members_inspected: members.len(),
            })
        }
        (Description::Free(fa), FactorElement::Free(g)) => {
            let names = fa.names(side);
            if g.max_gen().is_some_and(|m| m >= names.len()) {
                return Err(CompatError::WrongSide(side));
            }
            let members = free_members(desc, side, mode, bound);
            let cyclic = fold_subgroup(std::slice::from_ref(g), names.len());
            let mut witnesses = Vec::new();
            for x in short_words(names.len(), 2) {
                if graph_member(&cyclic, &x) {
                    continue;
                }
                let separating = members.iter().find(|m| {
                    let t = m.target();
                    let gi = subgroup_generated(t, [m.eval(g)]);
                    !gi.contains(m.eval(&x))
                });
                match separating {
                    Some(m) => witnesses.push(Witness {
                        excluded: x.display_with(names),
                        member: format!("images {:?} in a group of order {}", m.images(), m.target().order()),
                    }),
                    None => {
                        return Ok(FamilyVerdict {
                            subject: g.display_with(names),
                            family,
                            verdict: Verdict::NotSeparated { x: x.display_with(names), bounded: true },
                            bound: Some(bound),
                            members_inspected: members.len(),
                        })
                    }
                }
            }
            let verdict = if members.is_empty() { Verdict::Inconclusive } else { Verdict::Separable { witnesses } };
            Ok(FamilyVerdict {
                subject: g.display_with(names),
                family,
                verdict,
                bound: Some(bound),
                members_inspected: members.len(),
            })
        }
        _ => Err(CompatError::WrongSide(side)),
    }
}

/// Distinct side-`side` members of compatible pairs of a finite presentation.
fn finite_members(desc: &Description, side: Side, mode: Mode) -> Vec<Subgroup> {
    let Description::Finite(pres) = desc else { unreachable!() };
    let mut seen = HashSet::new();
    enumerate_compatible_pairs(pres, mode)
        .into_iter()
        .filter_map(|c| {
            let (r, s) = c.finite_sides().expect("finite pair");
            let m = if side == Side::A { r } else { s }.clone();
            seen.insert(m.clone()).then_some(m)
        })
        .collect()
}

/// Distinct side-`side` kernels occurring in compatible pairs of the scan.
fn free_members(desc: &Description, side: Side, mode: Mode, bound: usize) -> Vec<GenImages> {
    let Description::Free(fa) = desc else { unreachable!() };
    let scan = scan_compatible_free_pairs(fa, bound, mode);
    let mut seen = HashSet::new();
    scan.entries
        .into_iter()
        .filter_map(|e| {
            let m = match if side == Side::A { e.pair.r } else { e.pair.s } {
                PairSide::Free(m) => m,
                PairSide::Finite(_) => unreachable!(),
            };
            seen.insert(m.kernel_key()).then_some(m)
        })
        .collect()
}

/// Reduced words of length `1..=max_len`, shortest first.
fn short_words(rank: usize, max_len: usize) -> Vec<FreeWord> {
    let letters: Vec<FreeLetter> = (0..rank).flat_map(|g| [FreeLetter::new(g, false), FreeLetter::new(g, true)]).collect();
    let mut out = Vec::new();
    let mut frontier = vec![FreeWord::identity()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &letters {
                if w.letters().last() == Some(&l.inv()) {
                    continue;
                }
                next.push(w.mul(&crate::freegrp::reduce_word([l])));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
