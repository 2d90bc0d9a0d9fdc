use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::amalgam::{build_amalgam, FreeAmalgam, Side};
use crate::catalog::{catalog, catalog_p_groups, Family};
use crate::fingrp::{generated_group, Elem, Subgroup};
use crate::freegrp::{enumerate_gen_images, kernel_key, kernels_equal, GenImages, DEFAULT_SIZE_CAP};

use super::{p_certificate, CompatError, CompatiblePair, Mode, PairSide, Projection, QuotientAmalgam};

fn check_ranks(fa: &FreeAmalgam, psi_a: &GenImages, psi_b: &GenImages) -> Result<(), CompatError> {
    for (side, psi) in [(Side::A, psi_a), (Side::B, psi_b)] {
        if psi.rank() != fa.rank(side) {
            return Err(crate::freegrp::FreeGroupError::RankMismatch(psi.rank(), fa.rank(side)).into());
        }
    }
    Ok(())
}

/// The kernels of `ψ_A` on `H` and of `ψ_B ∘ φ` on `H` agree.
pub fn free_pair_is_compatible(fa: &FreeAmalgam, psi_a: &GenImages, psi_b: &GenImages) -> Result<bool, CompatError> {
    check_ranks(fa, psi_a, psi_b)?;
    Ok(kernels_equal(&psi_a.restrict(fa.amalgam_gens(Side::A)), &psi_b.restrict(fa.amalgam_gens(Side::B)))?)
}

impl FreeAmalgam {
    /// `G_{R,S}` for the kernels `R = ker ψ_A`, `S = ker ψ_B`.
    pub fn quotient(&self, psi_a: &GenImages, psi_b: &GenImages) -> Result<QuotientAmalgam, CompatError> {
        if !free_pair_is_compatible(self, psi_a, psi_b)? {
            return Err(CompatError::NotCompatible);
        }
        let (a, b) = (psi_a.onto_image(), psi_b.onto_image());
        let (qa, qb) = (Arc::clone(a.target()), Arc::clone(b.target()));
        let ha: Vec<Elem> = self.amalgam_gens(Side::A).iter().map(|w| a.eval(w)).collect();
        let kb: Vec<Elem> = self.amalgam_gens(Side::B).iter().map(|w| b.eval(w)).collect();
        let gens: Vec<(Elem, Elem)> = ha.into_iter().zip(kb).collect();
        let (_, pairs) = generated_group((0, 0), &gens, |x, y| (qa.mul(x.0, y.0), qb.mul(x.1, y.1)));
        let induced_phi: HashMap<Elem, Elem> = pairs.iter().copied().collect();
        if induced_phi.len() != pairs.len() || induced_phi.values().collect::<HashSet<_>>().len() != pairs.len() {
            return Err(CompatError::NotCompatible);
        }
        let h = Subgroup::from_members(qa.order(), induced_phi.keys().copied());
        let k = Subgroup::from_members(qb.order(), induced_phi.values().copied());
        let quotient = build_amalgam(qa, qb, h, k, &induced_phi)?;
        Ok(QuotientAmalgam { quotient, projection: Projection::Free { a, b }, induced_phi })
    }
}

/// A p-compatible pair: both images are p-groups, the pair is compatible and
/// `G_{R,S}` is residually p-finite, certified by chains of `(1, 1)` there.
pub fn free_pair_is_p_compatible(
    fa: &FreeAmalgam,
    psi_a: &GenImages,
    psi_b: &GenImages,
    p: u64,
) -> Result<Option<CompatiblePair>, CompatError> {
    if !free_pair_is_compatible(fa, psi_a, psi_b)? {
        return Ok(None);
    }
    if !crate::arith::is_power_of(psi_a.index() as u64, p) || !crate::arith::is_power_of(psi_b.index() as u64, p) {
        return Ok(None);
    }
    let qa = fa.quotient(psi_a, psi_b)?;
    let q = &qa.quotient;
    let one = |s: Side| Subgroup::trivial(q.factor(s));
    Ok(p_certificate(q, &one(Side::A), &one(Side::B), p).map(|c| CompatiblePair {
        mode: Mode::P(p),
        r: PairSide::Free(psi_a.clone()),
        s: PairSide::Free(psi_b.clone()),
        certificate: Some(c),
    }))
}

/// One compatible pair found by the catalog scan.
#[derive(Debug, Clone)]
pub struct ScanEntry {
    pub family_a: Family,
    pub family_b: Family,
    pub pair: CompatiblePair,
}

/// All compatible pairs whose kernels are realized by maps into catalog
/// groups of order at most `bound`, one entry per pair of kernels.
#[derive(Debug, Clone)]
pub struct FreePairScan {
    pub bound: usize,
    pub mode: Mode,
    pub entries: Vec<ScanEntry>,
}

struct Kernel {
    family: Family,
    map: GenImages,
    /// Key of the restriction to the amalgam basis.
    join_key: Vec<u32>,
}

/// Distinct kernels of maps from side `side` into the targets, first
/// realization in catalog order.
fn kernels(fa: &FreeAmalgam, side: Side, targets: &[Family]) -> Vec<Kernel> {
    let rank = fa.rank(side);
    let basis = fa.amalgam_gens(side);
    let per_family: Vec<Vec<(Vec<u32>, Kernel)>> = targets
        .par_iter()
        .map(|f| {
            let t = f.group();
            let Ok(maps) = enumerate_gen_images(rank, &t, DEFAULT_SIZE_CAP) else { return Vec::new() };
            maps.into_iter()
                .map(|m| {
                    let key = m.kernel_key();
                    let r = m.restrict(basis);
                    let join_key = kernel_key(r.target(), r.images());
                    (key, Kernel { family: f.clone(), map: m, join_key })
                })
                .collect()
        })
        .collect();
    let mut seen = HashSet::new();
    per_family
        .into_iter()
        .flatten()
        .filter_map(|(key, k)| seen.insert(key).then_some(k))
        .collect()
}

/// Scans the catalog (p-groups only in p-mode) for compatible pairs; pairs
/// are joined on the restriction of each map to the amalgamated subgroup.
pub fn scan_compatible_free_pairs(fa: &FreeAmalgam, bound: usize, mode: Mode) -> FreePairScan {
    let targets = match mode {
        Mode::Plain => catalog(bound),
        Mode::P(p) => catalog_p_groups(bound, p),
    };
    let ka = kernels(fa, Side::A, &targets);
    let kb = kernels(fa, Side::B, &targets);
    let mut by_key: HashMap<&[u32], Vec<&Kernel>> = HashMap::new();
    for k in &kb {
        by_key.entry(&k.join_key).or_default().push(k);
    }
    let candidates: Vec<(&Kernel, &Kernel)> = ka
        .iter()
        .flat_map(|x| by_key.get(x.join_key.as_slice()).into_iter().flatten().map(move |y| (x, *y)))
        .collect();
    let entries = candidates
        .par_iter()
        .filter_map(|(x, y)| {
            let pair = match mode {
                Mode::Plain => Some(CompatiblePair {
                    mode,
                    r: PairSide::Free(x.map.clone()),
                    s: PairSide::Free(y.map.clone()),
                    certificate: None,
                }),
                Mode::P(p) => free_pair_is_p_compatible(fa, &x.map, &y.map, p).ok().flatten(),
            }?;
            Some(ScanEntry { family_a: x.family.clone(), family_b: y.family.clone(), pair })
        })
        .collect();
    FreePairScan { bound, mode, entries }
}
