use std::sync::Arc;

use super::{subgroup_generated, Elem, FiniteGroup, GroupError, Subgroup};

/// A map between finite groups, checked to respect multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<Elem>,
}

impl Homomorphism {
    /// Validates the homomorphism property on all pairs.
    pub fn new(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>, map: Vec<Elem>) -> Option<Self> {
        let h = Self { source, target, map };
        h.is_valid().then_some(h)
    }

    pub fn is_valid(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        self.map.len() == s.order()
            && self.map[0] == 0
            && self.map.iter().all(|&y| y < t.order())
            && s.elements()
                .all(|x| s.elements().all(|y| self.map[s.mul(x, y)] == t.mul(self.map[x], self.map[y])))
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_members(self.source.order(), self.source.elements().filter(|&x| self.map[x] == 0))
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::from_members(self.target.order(), self.map.iter().copied())
    }
}

/// `G / N` on canonical coset representatives, with the natural projection.
///
/// Quotient element `i` is the `i`-th smallest coset representative, so the
/// identity coset is element 0.
pub fn quotient_with_projection(
    group: &Arc<FiniteGroup>,
    normal: &Subgroup,
) -> Result<(Arc<FiniteGroup>, Homomorphism), GroupError> {
    if !normal.is_normal_in(group) {
        return Err(GroupError::NotNormal);
    }
    let reps: Vec<Elem> = {
        let mut r: Vec<Elem> = group.elements().map(|x| normal.right_coset_rep(group, x)).collect();
        r.sort_unstable();
        r.dedup();
        r
    };
    let mut rep_index = vec![usize::MAX; group.order()];
    for (i, &r) in reps.iter().enumerate() {
        rep_index[r] = i;
    }
    let map: Vec<Elem> = group.elements().map(|x| rep_index[normal.right_coset_rep(group, x)]).collect();
    let quotient = Arc::new(FiniteGroup::from_fn(reps.len(), |i, j| map[group.mul(reps[i], reps[j])]));
    let proj = Homomorphism { source: Arc::clone(group), target: Arc::clone(&quotient), map };
    Ok((quotient, proj))
}

/// A small generating set: greedily the element enlarging the span most,
/// smallest index on ties.
pub fn generating_set(group: &FiniteGroup) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut span = subgroup_generated(group, []);
    while span.order() < group.order() {
        let (_, x, next) = group
            .elements()
            .filter(|&x| !span.contains(x))
            .map(|x| {
                let next = subgroup_generated(group, gens.iter().copied().chain([x]));
                (std::cmp::Reverse(next.order()), x, next)
            })
            .min_by_key(|(o, x, _)| (*o, *x))
            .expect("span is proper");
        gens.push(x);
        span = next;
    }
    gens
}

/// Extends generator images along the Cayley graph; `None` if some edge
/// disagrees, which happens exactly when no homomorphism has these images.
fn extend(source: &FiniteGroup, gens: &[Elem], images: &[Elem], target: &FiniteGroup) -> Option<Vec<Elem>> {
    let mut map = vec![usize::MAX; source.order()];
    map[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for (&g, &y) in gens.iter().zip(images) {
            let (xg, v) = (source.mul(x, g), target.mul(map[x], y));
            if map[xg] == usize::MAX {
                map[xg] = v;
                queue.push(xg);
            } else if map[xg] != v {
                return None;
            }
        }
    }
    Some(map)
}

/// Every homomorphism `source → target`, ordered by the images of
/// [`generating_set`] (last generator fastest). A generator may only go to
/// an element whose order divides its own.
pub fn enumerate_homomorphisms(
    source: &Arc<FiniteGroup>,
    target: &Arc<FiniteGroup>,
    cap: u128,
) -> Result<Vec<Homomorphism>, GroupError> {
    let gens = generating_set(source);
    let choices: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let o = source.element_order(g);
            target.elements().filter(|&y| o % target.element_order(y) == 0).collect()
        })
        .collect();
    let total = choices.iter().map(|c| c.len() as u128).product::<u128>();
    if total > cap {
        return Err(GroupError::SizeCap(total));
    }
    let mut out = Vec::new();
    let mut idx = vec![0; gens.len()];
    loop {
        let images: Vec<Elem> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if let Some(map) = extend(source, &gens, &images, target) {
            out.push(Homomorphism { source: Arc::clone(source), target: Arc::clone(target), map });
        }
        let mut pos = gens.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}
