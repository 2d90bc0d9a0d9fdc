//! Compatible pairs of normal subgroups of the factors, plain and with
//! index-p chains, the quotient amalgams they define, and family
//! separability verdicts.

mod family;
mod free;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::amalgam::{
    build_amalgam, AmalgamElement, AmalgamError, AmalgamPresentation, FreeAmalgam, FreeElement, Letter, Side,
};
use crate::arith::is_power_of;
use crate::fingrp::{
    enumerate_normal_subgroups, quotient_with_projection, Elem, FiniteGroup, GroupError, Homomorphism,
    NormalChain, Subgroup,
};
use crate::freegrp::{FreeGroupError, GenImages};

pub use family::{family_separability, FactorElement, FamilyKind, FamilyVerdict, Verdict, Witness};
pub use free::{
    free_pair_is_compatible, free_pair_is_p_compatible, scan_compatible_free_pairs, FreePairScan, ScanEntry,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompatError {
    #[error("subgroup is not normal in its factor")]
    NotNormal,
    #[error("the pair is not compatible")]
    NotCompatible,
    #[error("element does not lie in factor {0}")]
    WrongSide(Side),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    FreeGroup(#[from] FreeGroupError),
    #[error(transparent)]
    Amalgam(#[from] AmalgamError),
}

/// An amalgam with finite factors, or with free factors.
#[derive(Debug, Clone)]
pub enum Description {
    Finite(Arc<AmalgamPresentation>),
    Free(Arc<FreeAmalgam>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Mode {
    Plain,
    P(u64),
}

impl Mode {
    pub fn prime(&self) -> Option<u64> {
        match self {
            Mode::Plain => None,
            Mode::P(p) => Some(*p),
        }
    }
}

/// Chains `R = R_0 ⊴ … ⊴ A` and `S = S_0 ⊴ … ⊴ B` whose intersection sets
/// `{R_i ∩ H}` and `{S_j ∩ K}` correspond under `φ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PCertificate {
    pub chain_a: NormalChain,
    pub chain_b: NormalChain,
    pub h_sets: Vec<Subgroup>,
    pub k_sets: Vec<Subgroup>,
}

/// One side of a pair: a normal subgroup of a finite factor, or a map of a
/// free factor onto a finite group standing for its kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairSide {
    Finite(Subgroup),
    Free(GenImages),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatiblePair {
    pub mode: Mode,
    pub r: PairSide,
    pub s: PairSide,
    /// In p-mode: for finite factors the chains of `(R, S)`; for free factors
    /// the chains of `(1, 1)` in the quotient amalgam.
    pub certificate: Option<PCertificate>,
}

impl CompatiblePair {
    pub fn finite_sides(&self) -> Option<(&Subgroup, &Subgroup)> {
        match (&self.r, &self.s) {
            (PairSide::Finite(r), PairSide::Finite(s)) => Some((r, s)),
            _ => None,
        }
    }

    pub fn free_sides(&self) -> Option<(&GenImages, &GenImages)> {
        match (&self.r, &self.s) {
            (PairSide::Free(r), PairSide::Free(s)) => Some((r, s)),
            _ => None,
        }
    }
}

fn phi_image(pres: &AmalgamPresentation, x: &Subgroup) -> Subgroup {
    Subgroup::from_members(pres.factor(Side::B).order(), x.members().iter().map(|&m| pres.phi(m)))
}

fn check_normal(pres: &AmalgamPresentation, r: &Subgroup, s: &Subgroup) -> Result<(), CompatError> {
    if r.is_normal_in(pres.factor(Side::A)) && s.is_normal_in(pres.factor(Side::B)) {
        Ok(())
    } else {
        Err(CompatError::NotNormal)
    }
}

/// `(R ∩ H)φ = S ∩ K`
pub fn is_compatible(pres: &AmalgamPresentation, r: &Subgroup, s: &Subgroup) -> Result<bool, CompatError> {
    check_normal(pres, r, s)?;
    let rh = r.intersection(pres.amalgamated(Side::A));
    Ok(phi_image(pres, &rh) == s.intersection(pres.amalgamated(Side::B)))
}

/// Every set `{R_i ∩ sub}` realized by some chain from `r` to `group` with
/// normal index-`p` steps, each with one chain realizing it. Depth-first
/// from `r`, smallest canonical links first; states `(link, set so far)`
/// are visited once.
pub(crate) fn intersection_sets(
    group: &FiniteGroup,
    r: &Subgroup,
    sub: &Subgroup,
    p: u64,
) -> Vec<(BTreeSet<Subgroup>, NormalChain)> {
    if !is_power_of(r.index() as u64, p) {
        return Vec::new();
    }
    let normals: Vec<Subgroup> = enumerate_normal_subgroups(group)
        .into_iter()
        .filter(|n| r.is_subset_of(n) && is_power_of(n.index() as u64, p))
        .collect();
    let mut out: Vec<(BTreeSet<Subgroup>, NormalChain)> = Vec::new();
    let mut found: HashSet<BTreeSet<Subgroup>> = HashSet::new();
    let mut visited: HashSet<(Subgroup, BTreeSet<Subgroup>)> = HashSet::new();
    let mut path = vec![r.clone()];
    let start = BTreeSet::from([r.intersection(sub)]);
    ascend(&normals, group.order(), sub, p as usize, &mut path, start, &mut visited, &mut found, &mut out);
    out.into_iter()
        .map(|(set, chain)| (set, NormalChain { prime: p, links: chain.links }))
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn ascend(
    normals: &[Subgroup],
    order: usize,
    sub: &Subgroup,
    p: usize,
    path: &mut Vec<Subgroup>,
    set: BTreeSet<Subgroup>,
    visited: &mut HashSet<(Subgroup, BTreeSet<Subgroup>)>,
    found: &mut HashSet<BTreeSet<Subgroup>>,
    out: &mut Vec<(BTreeSet<Subgroup>, NormalChain)>,
) {
    let cur = path.last().unwrap().clone();
    if !visited.insert((cur.clone(), set.clone())) {
        return;
    }
    if cur.order() == order {
        if found.insert(set.clone()) {
            out.push((set, NormalChain { prime: p as u64, links: path.clone() }));
        }
        return;
    }
    for next in normals.iter().filter(|n| n.order() == cur.order() * p && cur.is_subset_of(n)) {
        let mut s = set.clone();
        s.insert(next.intersection(sub));
        path.push(next.clone());
        ascend(normals, order, sub, p, path, s, visited, found, out);
        path.pop();
    }
}

/// A certificate that `(R, S)` is p-compatible, or `None`.
pub fn is_p_compatible(
    pres: &AmalgamPresentation,
    r: &Subgroup,
    s: &Subgroup,
    p: u64,
) -> Result<Option<CompatiblePair>, CompatError> {
    check_normal(pres, r, s)?;
    Ok(p_certificate(pres, r, s, p).map(|certificate| CompatiblePair {
        mode: Mode::P(p),
        r: PairSide::Finite(r.clone()),
        s: PairSide::Finite(s.clone()),
        certificate: Some(certificate),
    }))
}

fn p_certificate(pres: &AmalgamPresentation, r: &Subgroup, s: &Subgroup, p: u64) -> Option<PCertificate> {
    let (a, b) = (pres.factor(Side::A), pres.factor(Side::B));
    let sets_a = intersection_sets(a, r, pres.amalgamated(Side::A), p);
    if sets_a.is_empty() {
        return None;
    }
    let sets_b = intersection_sets(b, s, pres.amalgamated(Side::B), p);
    let by_set: HashMap<&BTreeSet<Subgroup>, &NormalChain> = sets_b.iter().map(|(set, c)| (set, c)).collect();
    sets_a.iter().find_map(|(set, chain_a)| {
        let image: BTreeSet<Subgroup> = set.iter().map(|x| phi_image(pres, x)).collect();
        by_set.get(&image).map(|chain_b| PCertificate {
            chain_a: chain_a.clone(),
            chain_b: (*chain_b).clone(),
            h_sets: set.iter().cloned().collect(),
            k_sets: image.into_iter().collect(),
        })
    })
}

/// Whether the amalgam of finite groups is residually p-finite, i.e. whether
/// `(1, 1)` is p-compatible.
pub fn presentation_is_residually_p(pres: &AmalgamPresentation, p: u64) -> bool {
    let (a, b) = (pres.factor(Side::A), pres.factor(Side::B));
    p_certificate(pres, &Subgroup::trivial(a), &Subgroup::trivial(b), p).is_some()
}

/// All compatible pairs, lexicographic in `(R, S)` canonical order.
pub fn enumerate_compatible_pairs(pres: &AmalgamPresentation, mode: Mode) -> Vec<CompatiblePair> {
    let na = enumerate_normal_subgroups(pres.factor(Side::A));
    let nb = enumerate_normal_subgroups(pres.factor(Side::B));
    let candidates: Vec<(&Subgroup, &Subgroup)> = na.iter().flat_map(|r| nb.iter().map(move |s| (r, s))).collect();
    candidates
        .par_iter()
        .filter_map(|&(r, s)| match mode {
            Mode::Plain => is_compatible(pres, r, s).expect("normal by construction").then(|| CompatiblePair {
                mode,
                r: PairSide::Finite(r.clone()),
                s: PairSide::Finite(s.clone()),
                certificate: None,
            }),
            Mode::P(p) => is_p_compatible(pres, r, s, p).expect("normal by construction"),
        })
        .collect()
}

/// `hR ↦ (hφ)S` as a map between the quotient factor elements, given the
/// projections.
fn glue_iso(
    pres: &AmalgamPresentation,
    proj_a: &Homomorphism,
    proj_b: &Homomorphism,
) -> Result<HashMap<Elem, Elem>, CompatError> {
    let mut map: HashMap<Elem, Elem> = HashMap::new();
    let mut inverse: HashMap<Elem, Elem> = HashMap::new();
    for &h in pres.amalgamated(Side::A).members() {
        let (x, y) = (proj_a.apply(h), proj_b.apply(pres.phi(h)));
        if *map.entry(x).or_insert(y) != y || *inverse.entry(y).or_insert(x) != x {
            return Err(CompatError::NotCompatible);
        }
    }
    Ok(map)
}

/// The induced isomorphism `HR/R → KS/S` on quotient element indices.
pub fn induced_iso(pres: &AmalgamPresentation, r: &Subgroup, s: &Subgroup) -> Result<HashMap<Elem, Elem>, CompatError> {
    check_normal(pres, r, s)?;
    let (_, pa) = quotient_with_projection(pres.factor(Side::A), r)?;
    let (_, pb) = quotient_with_projection(pres.factor(Side::B), s)?;
    glue_iso(pres, &pa, &pb)
}

/// How the parent maps onto the quotient amalgam.
#[derive(Debug, Clone)]
pub enum Projection {
    /// Factor projections `A → A/R`, `B → B/S`.
    Finite { a: Homomorphism, b: Homomorphism },
    /// Free generator images in the quotient factors.
    Free { a: GenImages, b: GenImages },
}

/// `G_{R,S}` together with `π_{R,S}`.
#[derive(Debug, Clone)]
pub struct QuotientAmalgam {
    pub quotient: Arc<AmalgamPresentation>,
    pub projection: Projection,
    /// `hR ↦ (hφ)S` on quotient element indices.
    pub induced_phi: HashMap<Elem, Elem>,
}

impl QuotientAmalgam {
    pub fn project_letter(&self, side: Side, x: Elem) -> Letter {
        match &self.projection {
            Projection::Finite { a, b } => Letter::new(side, if side == Side::A { a.apply(x) } else { b.apply(x) }),
            Projection::Free { .. } => panic!("finite letter projected through a free-factor projection"),
        }
    }

    /// `π` on an element of a finite-factor parent.
    pub fn project(&self, x: &AmalgamElement) -> AmalgamElement {
        let letters: Vec<Letter> = x.letters().iter().map(|l| self.project_letter(l.side, l.elem)).collect();
        self.quotient.normalize(&letters)
    }

    /// `π` on an element of a free-factor parent.
    pub fn project_free(&self, x: &FreeElement) -> AmalgamElement {
        let Projection::Free { a, b } = &self.projection else {
            panic!("free element projected through a finite-factor projection");
        };
        let letters: Vec<Letter> = x
            .syllables()
            .iter()
            .map(|(side, w)| Letter::new(*side, if *side == Side::A { a.eval(w) } else { b.eval(w) }))
            .collect();
        self.quotient.normalize(&letters)
    }
}

/// `G_{R,S} = (A/R * B/S; HR/R = KS/S, φ_{R,S})` for a compatible pair of a
/// finite-factor amalgam.
pub fn build_quotient_amalgam(
    pres: &AmalgamPresentation,
    r: &Subgroup,
    s: &Subgroup,
) -> Result<QuotientAmalgam, CompatError> {
    if !is_compatible(pres, r, s)? {
        return Err(CompatError::NotCompatible);
    }
    let (qa, pa) = quotient_with_projection(pres.factor(Side::A), r)?;
    let (qb, pb) = quotient_with_projection(pres.factor(Side::B), s)?;
    let induced_phi = glue_iso(pres, &pa, &pb)?;
    let h = Subgroup::from_members(qa.order(), induced_phi.keys().copied());
    let k = Subgroup::from_members(qb.order(), induced_phi.values().copied());
    let quotient = build_amalgam(qa, qb, h, k, &induced_phi)?;
    Ok(QuotientAmalgam { quotient, projection: Projection::Finite { a: pa, b: pb }, induced_phi })
}

/// Whether `G_{R,S}` is residually p-finite.
pub fn is_residually_p(qa: &QuotientAmalgam, p: u64) -> bool {
    qa.quotient.is_residually_p(p)
}
