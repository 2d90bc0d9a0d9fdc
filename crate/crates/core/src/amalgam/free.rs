//! Amalgams of two finitely generated free groups over free subgroups
//! `H ≤ A`, `K ≤ B` with `φ` given on free bases. No unique normal form is
//! kept; elements are reduced forms and equality is decided by reducing the
//! quotient.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::freegrp::{fold_subgroup, FreeWord, SubgroupGraph};

use super::reduce::{CyclicMembership, NonMemberReason};
use super::Side;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAmalgamError {
    #[error("H has {0} generators but K has {1}")]
    GensMismatch(usize, usize),
    #[error("the generators of side {0} are not a free basis of the subgroup they generate")]
    NotFreeBasis(Side),
    #[error("generator index out of range on side {0}")]
    GeneratorOutOfRange(Side),
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error("elements belong to different presentations")]
    PresentationMismatch,
}

#[derive(Debug)]
pub struct FreeAmalgam {
    names_a: Vec<String>,
    names_b: Vec<String>,
    h_gens: Vec<FreeWord>,
    k_gens: Vec<FreeWord>,
    h_graph: SubgroupGraph,
    k_graph: SubgroupGraph,
}

/// A reduced form: syllables from alternating factors, none in the
/// amalgamated subgroup, or a single amalgam element written on side A.
#[derive(Debug, Clone)]
pub struct FreeElement {
    pres: Arc<FreeAmalgam>,
    syllables: Vec<(Side, FreeWord)>,
}

impl FreeAmalgam {
    /// `φ` sends `h_gens[i]` to `k_gens[i]`; both lists must be free bases.
    pub fn new(
        names_a: Vec<String>,
        names_b: Vec<String>,
        h_gens: Vec<FreeWord>,
        k_gens: Vec<FreeWord>,
    ) -> Result<Arc<Self>, FreeAmalgamError> {
        if h_gens.len() != k_gens.len() {
            return Err(FreeAmalgamError::GensMismatch(h_gens.len(), k_gens.len()));
        }
        for (side, gens, rank) in [(Side::A, &h_gens, names_a.len()), (Side::B, &k_gens, names_b.len())] {
            if gens.iter().any(|w| w.max_gen().is_some_and(|g| g >= rank)) {
                return Err(FreeAmalgamError::GeneratorOutOfRange(side));
            }
        }
        let h_graph = fold_subgroup(&h_gens, names_a.len());
        let k_graph = fold_subgroup(&k_gens, names_b.len());
        if !h_graph.has_free_basis() || h_gens.iter().any(FreeWord::is_empty) {
            return Err(FreeAmalgamError::NotFreeBasis(Side::A));
        }
        if !k_graph.has_free_basis() || k_gens.iter().any(FreeWord::is_empty) {
            return Err(FreeAmalgamError::NotFreeBasis(Side::B));
        }
        Ok(Arc::new(Self { names_a, names_b, h_gens, k_gens, h_graph, k_graph }))
    }

    /// Parses generator lists written over the factor names.
    pub fn parse_new(
        names_a: Vec<String>,
        names_b: Vec<String>,
        h_gens: &[&str],
        k_gens: &[&str],
    ) -> Result<Arc<Self>, FreeAmalgamError> {
        let parse = |s: &&str, names: &[String]| FreeWord::parse(s, names).map_err(|e| FreeAmalgamError::Parse(e.to_string()));
        let h = h_gens.iter().map(|s| parse(s, &names_a)).collect::<Result<Vec<_>, _>>()?;
        let k = k_gens.iter().map(|s| parse(s, &names_b)).collect::<Result<Vec<_>, _>>()?;
        Self::new(names_a, names_b, h, k)
    }

    pub fn names(&self, side: Side) -> &[String] {
        match side {
            Side::A => &self.names_a,
            Side::B => &self.names_b,
        }
    }

    pub fn rank(&self, side: Side) -> usize {
        self.names(side).len()
    }

    /// Free basis of `H` (side A) or of `K` (side B); `φ` matches them up.
    pub fn amalgam_gens(&self, side: Side) -> &[FreeWord] {
        match side {
            Side::A => &self.h_gens,
            Side::B => &self.k_gens,
        }
    }

    pub fn graph(&self, side: Side) -> &SubgroupGraph {
        match side {
            Side::A => &self.h_graph,
            Side::B => &self.k_graph,
        }
    }

    /// `w` in terms of the amalgam basis, if `w` lies in `H` (resp. `K`).
    pub fn express(&self, side: Side, w: &FreeWord) -> Option<FreeWord> {
        self.graph(side).express(w)
    }

    pub fn identity(self: &Arc<Self>) -> FreeElement {
        FreeElement { pres: Arc::clone(self), syllables: Vec::new() }
    }

    pub fn from_letters(self: &Arc<Self>, letters: &[(Side, FreeWord)]) -> FreeElement {
        // `core` is an amalgam element in the basis words.
        let mut core = FreeWord::identity();
        let mut stack: Vec<(Side, FreeWord)> = Vec::new();
        for (side, w) in letters {
            if let Some(e) = self.express(*side, w) {
                self.absorb(&mut core, &mut stack, &e);
                continue;
            }
            match stack.last_mut() {
                Some(top) if top.0 == *side => {
                    let merged = top.1.mul(w);
                    if let Some(e) = self.express(*side, &merged) {
                        stack.pop();
                        self.absorb(&mut core, &mut stack, &e);
                    } else {
                        top.1 = merged;
                    }
                }
                _ => stack.push((*side, w.clone())),
            }
        }
        match stack.first_mut() {
            Some(first) => first.1 = core.substitute(self.amalgam_gens(first.0)).mul(&first.1),
            None if !core.is_empty() => stack.push((Side::A, core.substitute(&self.h_gens))),
            None => {}
        }
        FreeElement { pres: Arc::clone(self), syllables: stack }
    }

    fn absorb(&self, core: &mut FreeWord, stack: &mut [(Side, FreeWord)], e: &FreeWord) {
        match stack.last_mut() {
            Some(top) => top.1 = top.1.mul(&e.substitute(self.amalgam_gens(top.0))),
            None => *core = core.mul(e),
        }
    }

    /// Parses `"A:a B:b^7 A:a^-1"`; each token is one generator power of the
    /// tagged factor, `1` is the identity.
    pub fn parse(self: &Arc<Self>, s: &str) -> Result<FreeElement, FreeAmalgamError> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            let err = || FreeAmalgamError::Parse(token.into());
            let (tag, word) = token.split_once(':').ok_or_else(err)?;
            let side = match tag {
                "A" => Side::A,
                "B" => Side::B,
                _ => return Err(err()),
            };
            letters.push((side, FreeWord::parse(word, self.names(side)).map_err(|_| err())?));
        }
        Ok(self.from_letters(&letters))
    }
}

impl FreeElement {
    pub fn presentation(&self) -> &Arc<FreeAmalgam> {
        &self.pres
    }

    /// The reduced form; an amalgam element appears as one A-side word in `H`.
    pub fn syllables(&self) -> &[(Side, FreeWord)] {
        &self.syllables
    }

    pub fn syllable_length(&self) -> usize {
        match self.syllables.as_slice() {
            [(Side::A, w)] if self.pres.express(Side::A, w).is_some() => 0,
            s => s.len(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    fn check(&self, other: &Self) -> Result<(), FreeAmalgamError> {
        if Arc::ptr_eq(&self.pres, &other.pres) {
            Ok(())
        } else {
            Err(FreeAmalgamError::PresentationMismatch)
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, FreeAmalgamError> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        let mut letters = self.syllables.clone();
        letters.extend(other.syllables.iter().cloned());
        self.pres.from_letters(&letters)
    }

    pub fn invert(&self) -> Self {
        let letters: Vec<(Side, FreeWord)> = self.syllables.iter().rev().map(|(s, w)| (*s, w.inverse())).collect();
        self.pres.from_letters(&letters)
    }

    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.invert() } else { self.clone() };
        (0..k.unsigned_abs()).fold(self.pres.identity(), |acc, _| acc.mul(&base))
    }

    pub fn equals(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.pres, &other.pres) && self.mul(&other.invert()).is_identity()
    }

    /// `c⁻¹ · self · c`
    pub fn conjugate_by(&self, c: &Self) -> Self {
        c.invert().mul(self).mul(c)
    }

    /// `(y, c)` with `self = c y c⁻¹` and the first and last syllables of `y`
    /// in different factors (or `l(y) ≤ 1`).
    pub fn cyclically_reduce(&self) -> (FreeElement, FreeElement) {
        let mut y = self.clone();
        let mut c = self.pres.identity();
        while y.syllables.len() >= 2 && y.syllables[0].0 == y.syllables[y.syllables.len() - 1].0 {
            let step = self.pres.from_letters(&y.syllables[..1]);
            y = y.conjugate_by(&step);
            c = c.mul(&step);
        }
        (y, c)
    }

    /// The element as a word of the given factor, when it lies in it.
    pub fn in_factor(&self, side: Side) -> Option<FreeWord> {
        match self.syllables.as_slice() {
            [] => Some(FreeWord::identity()),
            [(s, w)] if *s == side => Some(w.clone()),
            [(Side::A, w)] => {
                let e = self.pres.express(Side::A, w)?;
                Some(e.substitute(self.pres.amalgam_gens(side)))
            }
            _ => None,
        }
    }

    /// Decides `h = self^k`. Factors are torsion-free, so for `l ≤ 1` the
    /// exponent is bounded by the length of `h` as a factor word.
    pub fn cyclic_member(&self, h: &FreeElement) -> Result<CyclicMembership, FreeAmalgamError> {
        self.check(h)?;
        let (g1, c) = self.cyclically_reduce();
        let h1 = h.conjugate_by(&c);
        let n = g1.syllables.len();
        if n >= 2 {
            let m = h1.syllables.len();
            if m % n != 0 {
                return Ok(CyclicMembership::NonMember(NonMemberReason::LengthMismatch));
            }
            let k = (m / n) as i64;
            for e in if k == 0 { vec![0] } else { vec![k, -k] } {
                if g1.power(e).equals(&h1) {
                    return Ok(CyclicMembership::Member(e));
                }
            }
            return Ok(CyclicMembership::NonMember(NonMemberReason::ExponentTest));
        }
        if h1.is_identity() {
            return Ok(CyclicMembership::Member(0));
        }
        let Some(&(side, ref gw)) = g1.syllables.first() else {
            return Ok(CyclicMembership::NonMember(NonMemberReason::FiniteOrbit));
        };
        // An amalgam element may also be read on side B.
        let sides: Vec<Side> = if g1.syllable_length() == 0 { vec![Side::A, Side::B] } else { vec![side] };
        for s in sides {
            let (Some(gs), Some(hs)) = (g1.in_factor(s), h1.in_factor(s)) else { continue };
            debug_assert!(s != side || gs == *gw);
            let bound = hs.len() as i64 + 1;
            for k in (1..=bound).flat_map(|k| [k, -k]) {
                if gs.pow(k) == hs {
                    return Ok(CyclicMembership::Member(k));
                }
            }
        }
        Ok(CyclicMembership::NonMember(NonMemberReason::ExponentTest))
    }

    /// Tagged letter string, one token per generator power.
    pub fn to_letter_string(&self) -> String {
        if self.syllables.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        for (side, w) in &self.syllables {
            for token in w.display_with(self.pres.names(*side)).split(' ') {
                parts.push(format!("{side}:{token}"));
            }
        }
        parts.join(" ")
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_letter_string())
    }
}
