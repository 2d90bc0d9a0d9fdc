use crate::arith::{is_prime, prime_divisors};

use super::reduce::Order;
use super::{AmalgamElement, AmalgamError, Letter, Side};

/// `root^q` equals the element the certificate was issued for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootCertificate {
    pub q: u64,
    pub root: AmalgamElement,
}

impl AmalgamElement {
    /// Some `h` with `h^q = self`, if one exists.
    ///
    /// For a cyclically reduced `g` of length `n ≥ 2` a root is, up to
    /// rotating `g`, the length-`n/q` prefix of the rotation times an element
    /// of `H`; all rotations and all of `H` are tried. Elements of finite
    /// order are searched through every factor conjugate.
    pub fn extract_root(&self, q: u64) -> Option<AmalgamElement> {
        let pres = &self.pres;
        let (g1, c) = self.cyclically_reduce();
        let n = g1.syllable_length();
        let root_of_g1 = if n >= 2 {
            if n as u64 % q != 0 {
                return None;
            }
            let m = n / q as usize;
            let letters = g1.letters();
            (0..n).find_map(|r| {
                let prefix = pres.normalize(&letters[..r]);
                let rotated = g1.conjugate_by(&prefix);
                let stem = pres.normalize(&rotated.letters()[..m]);
                pres.h.members().iter().find_map(|&z| {
                    let u = stem.mul(&pres.letter(Side::A, z));
                    (u.power(q as i64) == rotated).then(|| prefix.mul(&u).mul(&prefix.invert()))
                })
            })?
        } else {
            let z = g1.as_factor_element().expect("length at most one");
            pres.factor_conjugates(z).into_iter().find_map(|(y, w)| {
                let mut targets = vec![y];
                if y.side == Side::A && pres.h.contains(y.elem) {
                    targets.push(Letter::new(Side::B, pres.phi(y.elem)));
                }
                targets.into_iter().find_map(|t| {
                    let g = pres.factor(t.side);
                    g.elements()
                        .find(|&f| g.pow(f, q as i64) == t.elem)
                        .map(|f| w.mul(&pres.letter(t.side, f)).mul(&w.invert()))
                })
            })?
        };
        let root = c.mul(&root_of_g1).mul(&c.invert());
        debug_assert_eq!(root.power(q as i64), *self);
        Some(root)
    }

    fn require_isolation_hypotheses(&self, p: u64) -> Result<(), AmalgamError> {
        if !is_prime(p) {
            return Err(AmalgamError::PreconditionViolated(format!("{p} is not prime")));
        }
        if self.element_order() != Order::Infinite {
            return Err(AmalgamError::PreconditionViolated("element has finite order".into()));
        }
        if !self.pres.is_residually_p(p) {
            return Err(AmalgamError::PreconditionViolated(format!(
                "the amalgam is not residually {p}-finite"
            )));
        }
        Ok(())
    }

    /// A root `h^q = self` with `q ≠ p` prime, if any. Only primes dividing
    /// the cyclically reduced length can occur.
    pub fn p_prime_root(&self, p: u64) -> Result<Option<RootCertificate>, AmalgamError> {
        self.require_isolation_hypotheses(p)?;
        let n = self.cyclically_reduce().0.syllable_length() as u64;
        Ok(prime_divisors(n)
            .into_iter()
            .filter(|&q| q != p)
            .find_map(|q| self.extract_root(q).map(|root| RootCertificate { q, root })))
    }

    /// Whether `<self>` is p′-isolated, by the root criterion valid in
    /// residually p-finite groups.
    pub fn is_p_prime_isolated(&self, p: u64) -> Result<bool, AmalgamError> {
        Ok(self.p_prime_root(p)?.is_none())
    }

    /// `(f, j)` with `self = f^j`, `gcd(j, p) = 1` and `<f>` p′-isolated.
    pub fn isolated_closure(&self, p: u64) -> Result<(AmalgamElement, u64), AmalgamError> {
        let mut f = self.clone();
        let mut j = 1;
        while let Some(cert) = f.p_prime_root(p)? {
            f = cert.root;
            j *= cert.q;
        }
        Ok((f, j))
    }
}
