use std::collections::HashMap;
use std::sync::Arc;

use crate::amalgam::{AmalgamElement, AmalgamPresentation, FreeAmalgam, FreeElement, Letter, Side};
use crate::catalog::{catalog, catalog_p_groups, Family};
use crate::compat::{Mode, QuotientAmalgam};
use crate::fingrp::{enumerate_homomorphisms, subgroup_generated, Elem, FiniteGroup, Subgroup};
use crate::freegrp::{enumerate_gen_images, GenImages, DEFAULT_SIZE_CAP};

use super::EngineError;

/// Catalog groups searched for witnesses: p-groups in p-mode, everything in
/// plain mode, by increasing order.
pub fn witness_targets(mode: Mode, max_order: usize) -> Vec<Family> {
    match mode {
        Mode::Plain => catalog(max_order),
        Mode::P(p) => catalog_p_groups(max_order, p),
    }
}

/// A homomorphism from an amalgam of finite groups into a finite group,
/// given by its restrictions to the two factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmalgamHom {
    target: Arc<FiniteGroup>,
    a: Vec<Elem>,
    b: Vec<Elem>,
}

impl AmalgamHom {
    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn factor_map(&self, side: Side) -> &[Elem] {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    pub fn apply_letter(&self, l: Letter) -> Elem {
        self.factor_map(l.side)[l.elem]
    }

    pub fn apply(&self, x: &AmalgamElement) -> Elem {
        x.letters().iter().fold(0, |acc, &l| self.target.mul(acc, self.apply_letter(l)))
    }

    pub fn image(&self) -> Subgroup {
        subgroup_generated(&self.target, self.a.iter().chain(&self.b).copied())
    }

    /// Kernels of the two factor maps.
    pub fn kernels(&self) -> (Subgroup, Subgroup) {
        let ker = |m: &[Elem]| Subgroup::from_members(m.len(), (0..m.len()).filter(|&x| m[x] == 0));
        (ker(&self.a), ker(&self.b))
    }
}

/// All homomorphisms of the amalgam into `target`: pairs of factor
/// homomorphisms agreeing on the amalgamated subgroup, ordered by the A-map
/// and then the B-map.
pub fn enumerate_amalgam_homs(
    pres: &AmalgamPresentation,
    target: &Arc<FiniteGroup>,
) -> Result<Vec<AmalgamHom>, EngineError> {
    let homs_a = enumerate_homomorphisms(pres.factor(Side::A), target, DEFAULT_SIZE_CAP)?;
    let homs_b = enumerate_homomorphisms(pres.factor(Side::B), target, DEFAULT_SIZE_CAP)?;
    let h = pres.amalgamated(Side::A).members();
    let mut by_key: HashMap<Vec<Elem>, Vec<usize>> = HashMap::new();
    for (i, beta) in homs_b.iter().enumerate() {
        by_key.entry(h.iter().map(|&x| beta.apply(pres.phi(x))).collect()).or_default().push(i);
    }
    let mut out = Vec::new();
    for alpha in &homs_a {
        let key: Vec<Elem> = h.iter().map(|&x| alpha.apply(x)).collect();
        for &i in by_key.get(&key).into_iter().flatten() {
            out.push(AmalgamHom {
                target: Arc::clone(target),
                a: alpha.map().to_vec(),
                b: homs_b[i].map().to_vec(),
            });
        }
    }
    Ok(out)
}

/// All homomorphisms of `G_{R,S}` into `target`.
pub fn enumerate_quotient_homs(qa: &QuotientAmalgam, target: &Arc<FiniteGroup>) -> Result<Vec<AmalgamHom>, EngineError> {
    enumerate_amalgam_homs(&qa.quotient, target)
}

/// A homomorphism from an amalgam of free groups into a finite group, by
/// generator images on each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeHom {
    pub a: GenImages,
    pub b: GenImages,
}

impl FreeHom {
    pub fn target(&self) -> &Arc<FiniteGroup> {
        self.a.target()
    }

    pub fn apply(&self, x: &FreeElement) -> Elem {
        let t = self.target();
        x.syllables().iter().fold(0, |acc, (side, w)| {
            t.mul(acc, if *side == Side::A { self.a.eval(w) } else { self.b.eval(w) })
        })
    }
}

/// All homomorphisms of the free amalgam into `target`: generator
/// assignments on both sides with `ψ_A(h_i) = ψ_B(k_i)`.
pub fn enumerate_free_homs(fa: &FreeAmalgam, target: &Arc<FiniteGroup>) -> Result<Vec<FreeHom>, EngineError> {
    let maps_a = enumerate_gen_images(fa.rank(Side::A), target, DEFAULT_SIZE_CAP)?;
    let maps_b = enumerate_gen_images(fa.rank(Side::B), target, DEFAULT_SIZE_CAP)?;
    let key = |m: &GenImages, side: Side| -> Vec<Elem> { fa.amalgam_gens(side).iter().map(|w| m.eval(w)).collect() };
    let mut by_key: HashMap<Vec<Elem>, Vec<usize>> = HashMap::new();
    for (i, m) in maps_b.iter().enumerate() {
        by_key.entry(key(m, Side::B)).or_default().push(i);
    }
    let mut out = Vec::new();
    for m in &maps_a {
        for &i in by_key.get(&key(m, Side::A)).into_iter().flatten() {
            out.push(FreeHom { a: m.clone(), b: maps_b[i].clone() });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::free_tests::square_amalgam;
    use crate::amalgam::tests::z4_amalgam;
    use crate::catalog::cyclic;
    use crate::compat::build_quotient_amalgam;
    use crate::fingrp::FiniteGroup;

    #[test]
    fn z4_amalgam_into_z4() {
        let g = z4_amalgam();
        let z4 = Arc::new(cyclic(4));
        let homs = enumerate_amalgam_homs(&g, &z4).unwrap();
        // oracle: a -> i, b -> j with 2i = 2j mod 4
        let oracle = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).filter(|(i, j)| (2 * i) % 4 == (2 * j) % 4).count();
        assert_eq!(oracle, 8);
        assert_eq!(homs.len(), oracle);
        let qa = build_quotient_amalgam(&g, &Subgroup::trivial(g.factor(Side::A)), &Subgroup::trivial(g.factor(Side::B)))
            .unwrap();
        assert_eq!(enumerate_quotient_homs(&qa, &z4).unwrap().len(), 8);
    }

    #[test]
    fn trivial_and_mismatched_targets() {
        let g = z4_amalgam();
        let one = Arc::new(FiniteGroup::trivial());
        assert_eq!(enumerate_amalgam_homs(&g, &one).unwrap().len(), 1);
        // Z3 has no element of order 2 or 4
        let homs = enumerate_amalgam_homs(&g, &Arc::new(cyclic(3))).unwrap();
        assert_eq!(homs.len(), 1);
        assert!(homs[0].image().is_trivial());
    }

    #[test]
    fn homs_respect_multiplication() {
        let g = z4_amalgam();
        let d4 = crate::catalog::Family::Dihedral(4).group();
        let homs = enumerate_amalgam_homs(&g, &d4).unwrap();
        assert!(!homs.is_empty());
        let words = ["A:x B:x", "B:x^3 A:x^2 B:x", "A:x^3 B:x A:x"];
        for theta in &homs {
            for u in words {
                for v in words {
                    let (x, y) = (g.parse(u).unwrap(), g.parse(v).unwrap());
                    assert_eq!(theta.apply(&x.mul(&y)), d4.mul(theta.apply(&x), theta.apply(&y)));
                }
            }
        }
    }

    #[test]
    fn free_homs_of_the_square_amalgam() {
        let g = square_amalgam();
        // a -> i, b -> j in Z_n with 2i = 2j mod n
        for n in [2usize, 4, 6, 8] {
            let homs = enumerate_free_homs(&g, &Arc::new(cyclic(n))).unwrap();
            let oracle = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| (2 * i) % n == (2 * j) % n).count();
            assert_eq!(homs.len(), oracle, "n = {n}");
        }
    }
}
