use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use super::{AmalgamElement, AmalgamError, AmalgamPresentation, Letter, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Order {
    Finite(usize),
    Infinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NonMemberReason {
    /// `l(h')` is not a multiple of `l(g')`.
    LengthMismatch,
    /// The only exponents allowed by length were tested and failed.
    ExponentTest,
    /// `g` has finite order and no power equals `h`.
    FiniteOrbit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CyclicMembership {
    Member(i64),
    NonMember(NonMemberReason),
}

impl CyclicMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, CyclicMembership::Member(_))
    }
}

impl AmalgamPresentation {
    /// Factor elements conjugate in the amalgam to `start`, each with a
    /// conjugator `w` such that `start = w · z · w⁻¹`. Conjugation runs inside
    /// a factor and crosses to the other factor through the amalgamated
    /// subgroup, which reaches every factor element conjugate to `start`.
    pub(crate) fn factor_conjugates(self: &Arc<Self>, start: Letter) -> Vec<(Letter, AmalgamElement)> {
        let canon = |l: Letter| if self.in_amalgam(l) { Letter::new(Side::A, self.core_from(l.side, l.elem)) } else { l };
        let start = canon(start);
        let mut seen: HashMap<Letter, AmalgamElement> = HashMap::from([(start, self.identity())]);
        let mut order = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(z) = queue.pop_front() {
            let w = seen[&z].clone();
            let in_h = self.h.contains(z.elem) && z.side == Side::A;
            let sides: &[Side] = if in_h { &[Side::A, Side::B] } else { &[z.side] };
            for &side in sides {
                let g = self.factor(side);
                let zs = if side == z.side { z.elem } else { self.core_to(side, z.elem) };
                for x in g.elements() {
                    let y = canon(Letter::new(side, g.conj(zs, x)));
                    if !seen.contains_key(&y) {
                        // z = x y x⁻¹, so start = (w x) y (w x)⁻¹
                        seen.insert(y, w.mul(&self.letter(side, x)));
                        order.push(y);
                        queue.push_back(y);
                    }
                }
            }
        }
        order.into_iter().map(|z| { let w = seen.remove(&z).unwrap(); (z, w) }).collect()
    }
}

impl AmalgamElement {
    /// Returns `(y, c)` with `self = c · y · c⁻¹`, `y` cyclically reduced and
    /// of minimal syllable length among conjugates.
    pub fn cyclically_reduce(&self) -> (AmalgamElement, AmalgamElement) {
        let pres = &self.pres;
        let mut y = self.clone();
        let mut c = pres.identity();
        while y.syllables.len() >= 2 && y.syllables[0].side == y.syllables[y.syllables.len() - 1].side {
            let step = pres.normalize(&y.letters()[..1]);
            y = y.conjugate_by(&step);
            c = c.mul(&step);
        }
        if y.syllables.len() == 1 {
            // Drop to length 0 when some factor conjugate lies in the amalgam.
            let z = y.as_factor_element().unwrap();
            let g = pres.factor(z.side);
            let sub = pres.amalgamated(z.side);
            if let Some(x) = g.elements().find(|&x| sub.contains(g.conj(z.elem, x))) {
                let step = pres.letter(z.side, x);
                y = y.conjugate_by(&step);
                c = c.mul(&step);
            }
        }
        (y, c)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        let s = &self.syllables;
        s.len() <= 1 || s[0].side != s[s.len() - 1].side
    }

    pub fn element_order(&self) -> Order {
        let (y, _) = self.cyclically_reduce();
        match y.as_factor_element() {
            Some(z) => Order::Finite(self.pres.factor(z.side).element_order(z.elem)),
            None => Order::Infinite,
        }
    }

    /// Decides whether `h = self^k` for some `k`.
    pub fn cyclic_member(&self, h: &AmalgamElement) -> Result<CyclicMembership, AmalgamError> {
        self.check(h)?;
        let (g1, c) = self.cyclically_reduce();
        let h1 = h.conjugate_by(&c);
        let n = g1.syllable_length();
        if n >= 2 {
            let m = h1.syllable_length();
            if m % n != 0 {
                return Ok(CyclicMembership::NonMember(NonMemberReason::LengthMismatch));
            }
            let k = (m / n) as i64;
            if k == 0 {
                return Ok(if h1.is_identity() {
                    CyclicMembership::Member(0)
                } else {
                    CyclicMembership::NonMember(NonMemberReason::ExponentTest)
                });
            }
            for e in [k, -k] {
                if g1.power(e) == h1 {
                    return Ok(CyclicMembership::Member(e));
                }
            }
            return Ok(CyclicMembership::NonMember(NonMemberReason::ExponentTest));
        }
        let mut x = self.pres.identity();
        let mut k = 0;
        loop {
            if x == h1 {
                return Ok(CyclicMembership::Member(k));
            }
            x = x.mul(&g1);
            k += 1;
            if x.is_identity() {
                return Ok(CyclicMembership::NonMember(NonMemberReason::FiniteOrbit));
            }
        }
    }
}
