//! Exact arithmetic in an amalgamated free product `(A * B; H = K, φ)` of two
//! finite groups: unique normal forms, cyclic reduction, orders, cyclic
//! membership and roots.
//!
//! Normal form: an element is `core · t_1 · … · t_n` with `core ∈ H` and the
//! `t_i` non-trivial right-coset representatives (of `H` in `A`, or of `K` in
//! `B`) from alternating factors. Representatives are the least element index
//! in each coset.

mod free;
mod reduce;
mod roots;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fingrp::{Elem, FiniteGroup, GroupError, Subgroup};

pub use free::{FreeAmalgam, FreeAmalgamError, FreeElement};
pub use reduce::{CyclicMembership, NonMemberReason, Order};
pub use roots::RootCertificate;

#[cfg(test)]
pub(crate) use free::tests as free_tests;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmalgamError {
    #[error("phi is not an isomorphism H -> K: fails at ({0}, {1})")]
    NotIsomorphism(Elem, Elem),
    #[error("{0} is not a subgroup of its factor")]
    NotSubgroup(&'static str),
    #[error("elements belong to different presentations")]
    PresentationMismatch,
    #[error("cannot parse element: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// A factor element tagged with its factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub side: Side,
    pub elem: Elem,
}

impl Letter {
    pub fn new(side: Side, elem: Elem) -> Self {
        Self { side, elem }
    }
}

#[derive(Debug)]
pub struct AmalgamPresentation {
    a: Arc<FiniteGroup>,
    b: Arc<FiniteGroup>,
    h: Subgroup,
    k: Subgroup,
    /// `phi[x]` for `x ∈ H`, `usize::MAX` elsewhere.
    phi: Vec<Elem>,
    phi_inv: Vec<Elem>,
    trans_a: Vec<Elem>,
    trans_b: Vec<Elem>,
    residual_p: Mutex<HashMap<u64, bool>>,
}

/// Validates the data and computes the coset transversals.
pub fn build_amalgam(
    a: Arc<FiniteGroup>,
    b: Arc<FiniteGroup>,
    h: Subgroup,
    k: Subgroup,
    phi: &HashMap<Elem, Elem>,
) -> Result<Arc<AmalgamPresentation>, AmalgamError> {
    if h.parent_order() != a.order() || Subgroup::try_new(&a, h.members().iter().copied()).is_none() {
        return Err(AmalgamError::NotSubgroup("H"));
    }
    if k.parent_order() != b.order() || Subgroup::try_new(&b, k.members().iter().copied()).is_none() {
        return Err(AmalgamError::NotSubgroup("K"));
    }
    let mut phi_vec = vec![usize::MAX; a.order()];
    let mut phi_inv = vec![usize::MAX; b.order()];
    for &x in h.members() {
        let y = *phi.get(&x).ok_or(AmalgamError::NotIsomorphism(x, x))?;
        if !k.contains(y) || phi_inv[y] != usize::MAX {
            return Err(AmalgamError::NotIsomorphism(x, x));
        }
        phi_vec[x] = y;
        phi_inv[y] = x;
    }
    if h.order() != k.order() {
        return Err(AmalgamError::NotIsomorphism(0, 0));
    }
    for &x in h.members() {
        for &y in h.members() {
            if phi_vec[a.mul(x, y)] != b.mul(phi_vec[x], phi_vec[y]) {
                return Err(AmalgamError::NotIsomorphism(x, y));
            }
        }
    }
    let trans_a = a.elements().map(|x| h.right_coset_rep(&a, x)).collect();
    let trans_b = b.elements().map(|x| k.right_coset_rep(&b, x)).collect();
    Ok(Arc::new(AmalgamPresentation {
        a,
        b,
        h,
        k,
        phi: phi_vec,
        phi_inv,
        trans_a,
        trans_b,
        residual_p: Mutex::new(HashMap::new()),
    }))
}

impl AmalgamPresentation {
    pub fn factor(&self, side: Side) -> &Arc<FiniteGroup> {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    /// `H` for side A, `K` for side B.
    pub fn amalgamated(&self, side: Side) -> &Subgroup {
        match side {
            Side::A => &self.h,
            Side::B => &self.k,
        }
    }

    pub fn phi(&self, x: Elem) -> Elem {
        self.phi[x]
    }

    pub fn phi_inv(&self, y: Elem) -> Elem {
        self.phi_inv[y]
    }

    pub fn transversal(&self, side: Side, x: Elem) -> Elem {
        match side {
            Side::A => self.trans_a[x],
            Side::B => self.trans_b[x],
        }
    }

    /// An `H`-element (stored on side A) moved to `side`.
    fn core_to(&self, side: Side, core: Elem) -> Elem {
        match side {
            Side::A => core,
            Side::B => self.phi[core],
        }
    }

    /// An amalgamated element of `side` moved to its A-side name.
    fn core_from(&self, side: Side, x: Elem) -> Elem {
        match side {
            Side::A => x,
            Side::B => self.phi_inv[x],
        }
    }

    /// Whether the amalgam is residually p-finite (cached per prime).
    pub fn is_residually_p(&self, p: u64) -> bool {
        if let Some(&v) = self.residual_p.lock().unwrap().get(&p) {
            return v;
        }
        let v = crate::compat::presentation_is_residually_p(self, p);
        self.residual_p.lock().unwrap().insert(p, v);
        v
    }

    fn in_amalgam(&self, l: Letter) -> bool {
        self.amalgamated(l.side).contains(l.elem)
    }

    pub fn identity(self: &Arc<Self>) -> AmalgamElement {
        AmalgamElement { pres: Arc::clone(self), core: 0, syllables: Vec::new() }
    }

    pub fn letter(self: &Arc<Self>, side: Side, elem: Elem) -> AmalgamElement {
        self.normalize(&[Letter::new(side, elem)])
    }

    /// Unique normal form of a product of factor letters.
    pub fn normalize(self: &Arc<Self>, letters: &[Letter]) -> AmalgamElement {
        // Reduced form: leading amalgam element plus non-amalgam letters from
        // alternating factors.
        let mut core = 0;
        let mut stack: Vec<Letter> = Vec::new();
        for &l in letters {
            if self.in_amalgam(l) {
                self.absorb(&mut core, &mut stack, self.core_from(l.side, l.elem));
                continue;
            }
            match stack.last_mut() {
                Some(top) if top.side == l.side => {
                    let merged = Letter::new(l.side, self.factor(l.side).mul(top.elem, l.elem));
                    if self.in_amalgam(merged) {
                        stack.pop();
                        self.absorb(&mut core, &mut stack, self.core_from(merged.side, merged.elem));
                    } else {
                        *top = merged;
                    }
                }
                _ => stack.push(l),
            }
        }
        self.finish(core, stack)
    }

    /// Multiplies an amalgam element (A-side name) onto the right end.
    fn absorb(&self, core: &mut Elem, stack: &mut [Letter], x: Elem) {
        match stack.last_mut() {
            Some(top) => top.elem = self.factor(top.side).mul(top.elem, self.core_to(top.side, x)),
            None => *core = self.a.mul(*core, x),
        }
    }

    /// Right-to-left carry pass turning a reduced form into the normal form.
    fn finish(self: &Arc<Self>, core: Elem, stack: Vec<Letter>) -> AmalgamElement {
        let mut carry = 0;
        let mut syllables = vec![Letter::new(Side::A, 0); stack.len()];
        for (i, l) in stack.iter().enumerate().rev() {
            let g = self.factor(l.side);
            let x = g.mul(l.elem, self.core_to(l.side, carry));
            let t = self.transversal(l.side, x);
            syllables[i] = Letter::new(l.side, t);
            carry = self.core_from(l.side, g.mul(x, g.inv(t)));
        }
        AmalgamElement { pres: Arc::clone(self), core: self.a.mul(core, carry), syllables }
    }

    /// Parses `"A:a B:b A:a^3"`. Each token is a factor tag and an element
    /// name, index or `name^k`; a trailing integer is read as an exponent
    /// when the name is otherwise unknown (`A:a3` = `A:a^3`). `1` or the
    /// empty string is the identity.
    pub fn parse(self: &Arc<Self>, s: &str) -> Result<AmalgamElement, AmalgamError> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (tag, name) = token.split_once(':').ok_or_else(|| AmalgamError::Parse(token.into()))?;
            let side = match tag {
                "A" => Side::A,
                "B" => Side::B,
                _ => return Err(AmalgamError::Parse(token.into())),
            };
            letters.push(Letter::new(side, parse_factor_element(self.factor(side), name)?));
        }
        Ok(self.normalize(&letters))
    }
}

fn parse_factor_element(g: &FiniteGroup, name: &str) -> Result<Elem, AmalgamError> {
    if let Ok(x) = g.parse_element(name) {
        return Ok(x);
    }
    let split = name.trim_end_matches(|c: char| c.is_ascii_digit());
    if !split.is_empty() && split.len() < name.len() {
        if let (Ok(x), Ok(k)) = (g.parse_element(split), name[split.len()..].parse::<i64>()) {
            return Ok(g.pow(x, k));
        }
    }
    Err(AmalgamError::Parse(name.into()))
}

/// An element in normal form.
#[derive(Clone)]
pub struct AmalgamElement {
    pres: Arc<AmalgamPresentation>,
    core: Elem,
    syllables: Vec<Letter>,
}

impl PartialEq for AmalgamElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.pres, &other.pres) && self.core == other.core && self.syllables == other.syllables
    }
}

impl Eq for AmalgamElement {}

impl Hash for AmalgamElement {
    fn hash<S: Hasher>(&self, state: &mut S) {
        self.core.hash(state);
        self.syllables.hash(state);
    }
}

impl AmalgamElement {
    pub fn presentation(&self) -> &Arc<AmalgamPresentation> {
        &self.pres
    }

    /// The `H`-part, as an element of `A`.
    pub fn core(&self) -> Elem {
        self.core
    }

    pub fn syllables(&self) -> &[Letter] {
        &self.syllables
    }

    pub fn syllable_length(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_identity(&self) -> bool {
        self.core == 0 && self.syllables.is_empty()
    }

    /// Letters multiplying to this element: the core merged into the first
    /// syllable, so the sequence is reduced.
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = self.syllables.clone();
        match out.first_mut() {
            Some(first) => {
                let g = self.pres.factor(first.side);
                first.elem = g.mul(self.pres.core_to(first.side, self.core), first.elem);
            }
            None if self.core != 0 => out.push(Letter::new(Side::A, self.core)),
            None => {}
        }
        out
    }

    /// The element as a factor element when `l ≤ 1`.
    pub fn as_factor_element(&self) -> Option<Letter> {
        match self.syllables.as_slice() {
            [] => Some(Letter::new(Side::A, self.core)),
            [t] => {
                let g = self.pres.factor(t.side);
                Some(Letter::new(t.side, g.mul(self.pres.core_to(t.side, self.core), t.elem)))
            }
            _ => None,
        }
    }

    fn check(&self, other: &Self) -> Result<(), AmalgamError> {
        if Arc::ptr_eq(&self.pres, &other.pres) {
            Ok(())
        } else {
            Err(AmalgamError::PresentationMismatch)
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, AmalgamError> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub(crate) fn mul(&self, other: &Self) -> Self {
        debug_assert!(Arc::ptr_eq(&self.pres, &other.pres));
        let mut letters = self.letters();
        letters.extend(other.letters());
        self.pres.normalize(&letters)
    }

    pub fn invert(&self) -> Self {
        let letters: Vec<Letter> = self
            .letters()
            .iter()
            .rev()
            .map(|l| Letter::new(l.side, self.pres.factor(l.side).inv(l.elem)))
            .collect();
        self.pres.normalize(&letters)
    }

    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut acc = self.pres.identity();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            e >>= 1;
        }
        acc
    }

    /// `c⁻¹ · self · c`
    pub fn conjugate_by(&self, c: &Self) -> Self {
        c.invert().mul(self).mul(c)
    }

    /// Tagged letter string that parses back to this element.
    pub fn to_letter_string(&self) -> String {
        let letters = self.letters();
        if letters.is_empty() {
            return "1".into();
        }
        letters
            .iter()
            .map(|l| format!("{}:{}", l.side, self.pres.factor(l.side).name(l.elem)))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Core and syllables spelled out separately.
    pub fn normal_form_string(&self) -> String {
        let mut s = format!("[{}]", self.pres.a.name(self.core));
        for t in &self.syllables {
            s.push_str(&format!(" {}:{}", t.side, self.pres.factor(t.side).name(t.elem)));
        }
        s
    }
}

impl fmt::Debug for AmalgamElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.normal_form_string())
    }
}

impl fmt::Display for AmalgamElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_letter_string())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::catalog::{cyclic, symmetric};

    /// `Z4 *_{Z2} Z4`: both factors `<x>`, amalgamating `x^2` with `x^2`.
    pub(crate) fn z4_amalgam() -> Arc<AmalgamPresentation> {
        let z4 = Arc::new(cyclic(4));
        let h = Subgroup::try_new(&z4, [0, 2]).unwrap();
        build_amalgam(Arc::clone(&z4), Arc::clone(&z4), h.clone(), h, &HashMap::from([(0, 0), (2, 2)])).unwrap()
    }

    /// `S3 *_{Z2} Z4`, amalgamating a transposition with `x^2`.
    pub(crate) fn s3_z4_amalgam() -> Arc<AmalgamPresentation> {
        let s3 = Arc::new(symmetric(3));
        let z4 = Arc::new(cyclic(4));
        let t = s3.elements().find(|&x| x != 0 && s3.mul(x, x) == 0).unwrap();
        let h = Subgroup::try_new(&s3, [0, t]).unwrap();
        let k = Subgroup::try_new(&z4, [0, 2]).unwrap();
        build_amalgam(s3, z4, h, k, &HashMap::from([(0, 0), (t, 2)])).unwrap()
    }

    #[test]
    fn build_examples() {
        let g = z4_amalgam();
        assert_eq!(g.transversal(Side::A, 3), 1);
        let z4 = Arc::new(cyclic(4));
        let h = Subgroup::try_new(&z4, [0, 2]).unwrap();
        let bad = build_amalgam(Arc::clone(&z4), Arc::clone(&z4), h.clone(), h, &HashMap::from([(0, 0), (2, 0)]));
        assert!(matches!(bad, Err(AmalgamError::NotIsomorphism(..))));
        // full amalgamation: G is A itself
        let all = Subgroup::whole(&z4);
        let phi: HashMap<Elem, Elem> = (0..4).map(|i| (i, (3 * i) % 4)).collect();
        let full = build_amalgam(Arc::clone(&z4), Arc::clone(&z4), all.clone(), all, &phi).unwrap();
        assert_eq!(full.parse("A:x B:x").unwrap().syllable_length(), 0);
        // phi(x^3) = x, so b = a^3 and ab = 1
        assert!(full.parse("A:x B:x").unwrap().is_identity());
        let s3 = Arc::new(symmetric(3));
        let not_sub = Subgroup::from_members(6, [0, 1, 3]);
        assert!(Subgroup::try_new(&s3, [0, 1, 3]).is_none());
        assert!(matches!(
            build_amalgam(Arc::clone(&s3), s3, not_sub.clone(), not_sub, &HashMap::new()),
            Err(AmalgamError::NotSubgroup("H"))
        ));
    }

    #[test]
    fn normal_form_examples() {
        let g = z4_amalgam();
        let a2 = g.parse("A:x^2").unwrap();
        assert_eq!(a2.syllable_length(), 0);
        assert_eq!(a2.core(), 2);
        assert_eq!(g.parse("A:x B:x").unwrap().syllable_length(), 2);
        assert!(g.parse("A:x A:x^3").unwrap().is_identity());
        assert!(g.parse("A:x").unwrap().multiply(&g.parse("A:x3").unwrap()).unwrap().is_identity());
        let ab = g.parse("A:x B:x").unwrap();
        assert_eq!(ab.invert(), g.parse("B:x^3 A:x^3").unwrap());
        assert_eq!(ab.power(3).syllable_length(), 6);
        assert_eq!(g.identity().syllable_length(), 0);
        assert_eq!(g.parse("A:x").unwrap().syllable_length(), 1);
        // b^2 = a^2
        assert_eq!(g.parse("B:x^2").unwrap(), a2);
        assert!(matches!(ab.multiply(&z4_amalgam().identity()), Err(AmalgamError::PresentationMismatch)));
        assert!(g.parse("C:x").is_err());
        for e in [ab.power(3), a2, g.identity(), g.parse("B:x A:x^3 B:x").unwrap()] {
            assert_eq!(g.parse(&e.to_letter_string()).unwrap(), e);
        }
    }

    fn letters(max: usize) -> impl Strategy<Value = Vec<(bool, usize)>> {
        prop::collection::vec((any::<bool>(), 0usize..24), 0..max)
    }

    fn to_letters(pres: &AmalgamPresentation, raw: &[(bool, usize)]) -> Vec<Letter> {
        raw.iter()
            .map(|&(b, i)| {
                let side = if b { Side::B } else { Side::A };
                Letter::new(side, i % pres.factor(side).order())
            })
            .collect()
    }

    /// Multiplies the letters as single elements under an arbitrary bracketing.
    fn bracketed(pres: &Arc<AmalgamPresentation>, ls: &[Letter], cuts: &[usize]) -> AmalgamElement {
        if ls.len() <= 1 {
            return pres.normalize(ls);
        }
        let cut = 1 + cuts.first().copied().unwrap_or(0) % (ls.len() - 1);
        let rest = if cuts.is_empty() { cuts } else { &cuts[1..] };
        bracketed(pres, &ls[..cut], rest).mul(&bracketed(pres, &ls[cut..], rest))
    }

    fn random_cyclically_reduced(pres: &Arc<AmalgamPresentation>, raw: &[(bool, usize)]) -> Option<AmalgamElement> {
        let g = pres.normalize(&to_letters(pres, raw)).cyclically_reduce().0;
        (g.syllable_length() >= 2).then_some(g)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn normal_form_is_independent_of_bracketing(
            raw in letters(16),
            cuts in prop::collection::vec(0usize..16, 0..16),
            which in any::<bool>(),
        ) {
            let pres = if which { z4_amalgam() } else { s3_z4_amalgam() };
            let ls = to_letters(&pres, &raw);
            let direct = pres.normalize(&ls);
            prop_assert_eq!(&bracketed(&pres, &ls, &cuts), &direct);
            prop_assert!(direct.syllables().windows(2).all(|w| w[0].side != w[1].side));
            prop_assert!(direct.syllables().iter().all(|t| t.elem != 0 && pres.transversal(t.side, t.elem) == t.elem));
            prop_assert!(direct.mul(&direct.invert()).is_identity());
            prop_assert_eq!(&pres.normalize(&direct.letters()), &direct);
        }

        #[test]
        fn power_length_law(raw in letters(12), k in -5i64..=5, which in any::<bool>()) {
            let pres = if which { z4_amalgam() } else { s3_z4_amalgam() };
            if let Some(g) = random_cyclically_reduced(&pres, &raw) {
                let gk = g.power(k);
                prop_assert_eq!(gk.syllable_length(), k.unsigned_abs() as usize * g.syllable_length());
                prop_assert!(gk.is_cyclically_reduced());
                if k != 0 {
                    prop_assert_eq!(g.cyclic_member(&gk).unwrap(), reduce::CyclicMembership::Member(k));
                }
            }
        }

        #[test]
        fn cyclic_reduction_conjugates_back(raw in letters(12), which in any::<bool>()) {
            let pres = if which { z4_amalgam() } else { s3_z4_amalgam() };
            let x = pres.normalize(&to_letters(&pres, &raw));
            let (y, c) = x.cyclically_reduce();
            prop_assert!(y.is_cyclically_reduced());
            prop_assert_eq!(c.mul(&y).mul(&c.invert()), x);
        }

        #[test]
        fn membership_of_powers(raw in letters(8), k in -5i64..=5, which in any::<bool>()) {
            let pres = if which { z4_amalgam() } else { s3_z4_amalgam() };
            let g = pres.normalize(&to_letters(&pres, &raw));
            if !g.is_identity() {
                match g.cyclic_member(&g.power(k)).unwrap() {
                    reduce::CyclicMembership::Member(j) => prop_assert_eq!(g.power(j), g.power(k)),
                    other => prop_assert!(false, "{:?}", other),
                }
            }
        }

        #[test]
        fn roots_of_powers(raw in letters(4), q in 2u64..=3, which in any::<bool>()) {
            let pres = if which { z4_amalgam() } else { s3_z4_amalgam() };
            let h = pres.normalize(&to_letters(&pres, &raw));
            if h.syllable_length() <= 2 {
                let g = h.power(q as i64);
                let r = g.extract_root(q);
                prop_assert!(r.is_some());
                prop_assert_eq!(r.unwrap().power(q as i64), g);
            }
        }
    }
}
