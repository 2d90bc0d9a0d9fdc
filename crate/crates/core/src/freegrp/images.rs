use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::fingrp::{generated_group, Elem, FiniteGroup, Subgroup};
use crate::fingrp::subgroup_generated;

use super::{FreeGroupError, FreeWord};

/// Default cap on `|target|^rank` for [`enumerate_gen_images`].
pub const DEFAULT_SIZE_CAP: u128 = 10_000_000;

/// A homomorphism from the free group of rank `rank` to `target`, given by
/// the images of the free generators. It stands for its kernel, a normal
/// subgroup of finite index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenImages {
    rank: usize,
    target: Arc<FiniteGroup>,
    images: Vec<Elem>,
}

impl GenImages {
    pub fn new(target: Arc<FiniteGroup>, images: Vec<Elem>) -> Self {
        assert!(images.iter().all(|&x| x < target.order()));
        Self { rank: images.len(), target, images }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn eval(&self, w: &FreeWord) -> Elem {
        w.letters().iter().fold(0, |acc, l| {
            let x = self.images[l.gen];
            self.target.mul(acc, if l.inverse { self.target.inv(x) } else { x })
        })
    }

    pub fn image(&self) -> Subgroup {
        subgroup_generated(&self.target, self.images.iter().copied())
    }

    /// Index of the kernel: the order of the image.
    pub fn index(&self) -> usize {
        self.image().order()
    }

    /// The composite map on the free group with basis `words`.
    pub fn restrict(&self, words: &[FreeWord]) -> GenImages {
        GenImages { rank: words.len(), target: Arc::clone(&self.target), images: words.iter().map(|w| self.eval(w)).collect() }
    }

    /// The same kernel, with the target replaced by the image (elements in
    /// breadth-first order from the identity).
    pub fn onto_image(&self) -> GenImages {
        let t = &self.target;
        let (g, elems) = generated_group(0usize, &self.images, |&x, &y| t.mul(x, y));
        let index: HashMap<Elem, Elem> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        GenImages { rank: self.rank, target: Arc::new(g), images: self.images.iter().map(|x| index[x]).collect() }
    }

    /// The kernel intersection `ker(self) ∩ ker(other)`, realized onto the
    /// image of the product map in `target(self) × target(other)`.
    pub fn intersect(&self, other: &GenImages) -> Result<GenImages, FreeGroupError> {
        if self.rank != other.rank {
            return Err(FreeGroupError::RankMismatch(self.rank, other.rank));
        }
        let (s, t) = (&self.target, &other.target);
        let gens: Vec<(Elem, Elem)> = self.images.iter().copied().zip(other.images.iter().copied()).collect();
        let (g, elems) = generated_group((0, 0), &gens, |a, b| (s.mul(a.0, b.0), t.mul(a.1, b.1)));
        let index: HashMap<(Elem, Elem), Elem> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(GenImages { rank: self.rank, target: Arc::new(g), images: gens.iter().map(|x| index[x]).collect() })
    }
}

/// All `|target|^rank` generator assignments, lexicographic with the first
/// generator most significant.
pub fn enumerate_gen_images(rank: usize, target: &Arc<FiniteGroup>, cap: u128) -> Result<Vec<GenImages>, FreeGroupError> {
    let n = target.order() as u128;
    let count = n.checked_pow(rank as u32).unwrap_or(u128::MAX);
    if count > cap {
        return Err(FreeGroupError::SizeCap { count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut images = vec![0usize; rank];
    loop {
        out.push(GenImages { rank, target: Arc::clone(target), images: images.clone() });
        // odometer, last generator fastest
        let mut pos = rank;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            images[pos] += 1;
            if images[pos] < target.order() {
                break;
            }
            images[pos] = 0;
        }
    }
}

/// `ker(u) = ker(v)`, decided by closing the diagonal subgroup
/// `D = <(u_i, v_i)>` of `target(u) × target(v)`: the kernels agree iff `D`
/// meets both coordinate axes trivially, i.e. `D` is the graph of a bijection.
pub fn kernels_equal(u: &GenImages, v: &GenImages) -> Result<bool, FreeGroupError> {
    if u.rank != v.rank {
        return Err(FreeGroupError::RankMismatch(u.rank, v.rank));
    }
    let (s, t) = (&u.target, &v.target);
    let gens: Vec<(Elem, Elem)> = u.images.iter().copied().zip(v.images.iter().copied()).collect();
    let mut seen: HashSet<(Elem, Elem)> = HashSet::from([(0, 0)]);
    let mut stack = vec![(0, 0)];
    while let Some(x) = stack.pop() {
        if (x.0 == 0) != (x.1 == 0) {
            return Ok(false);
        }
        for g in &gens {
            let y = (s.mul(x.0, g.0), t.mul(x.1, g.1));
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    Ok(true)
}

/// A canonical fingerprint of the kernel: the Cayley graph of the image with
/// respect to the generator images, with vertices numbered breadth-first
/// from the identity. Two maps of the same rank have equal keys iff their
/// kernels coincide.
pub fn kernel_key(target: &FiniteGroup, images: &[Elem]) -> Vec<u32> {
    let mut label: HashMap<Elem, u32> = HashMap::from([(0, 0)]);
    let mut order = vec![0usize];
    let mut key = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for &g in images {
            let y = target.mul(x, g);
            let next = label.len() as u32;
            let l = *label.entry(y).or_insert_with(|| {
                order.push(y);
                next
            });
            key.push(l);
        }
        i += 1;
    }
    key
}

impl GenImages {
    pub fn kernel_key(&self) -> Vec<u32> {
        kernel_key(&self.target, &self.images)
    }
}
