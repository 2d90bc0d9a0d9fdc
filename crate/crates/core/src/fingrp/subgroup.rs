use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Elem, FiniteGroup};

/// A subgroup of a [`FiniteGroup`], identified by its sorted member list.
///
/// Ordering is the canonical one used by every enumeration: by order, then
/// lexicographically by member list.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    members: Vec<Elem>,
    #[serde(skip)]
    mask: Vec<bool>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

impl Subgroup {
    /// Wraps a member set that is already known to be a subgroup.
    pub(crate) fn from_members(parent_order: usize, members: impl IntoIterator<Item = Elem>) -> Self {
        let mut mask = vec![false; parent_order];
        for m in members {
            mask[m] = true;
        }
        let members = (0..parent_order).filter(|&x| mask[x]).collect();
        Self { members, mask }
    }

    /// Checks closure and wraps the set; `None` if it is not a subgroup.
    pub fn try_new(group: &FiniteGroup, members: impl IntoIterator<Item = Elem>) -> Option<Self> {
        let s = Self::from_members(group.order(), members);
        if !s.contains(0) {
            return None;
        }
        for &x in &s.members {
            if !s.contains(group.inv(x)) {
                return None;
            }
            for &y in &s.members {
                if !s.contains(group.mul(x, y)) {
                    return None;
                }
            }
        }
        Some(s)
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::from_members(group.order(), [0])
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self::from_members(group.order(), group.elements())
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    pub fn index(&self) -> usize {
        self.parent_order() / self.order()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.mask.len()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Self::from_members(self.parent_order(), self.members.iter().copied().filter(|&x| other.contains(x)))
    }

    pub fn join(&self, group: &FiniteGroup, other: &Subgroup) -> Subgroup {
        subgroup_generated(group, self.members.iter().chain(other.members.iter()).copied())
    }

    pub fn is_normal_in(&self, group: &FiniteGroup) -> bool {
        group
            .elements()
            .all(|g| self.members.iter().all(|&x| self.contains(group.conj(x, g))))
    }

    /// Conjugate subgroup `g^-1 S g`.
    pub fn conjugate(&self, group: &FiniteGroup, g: Elem) -> Subgroup {
        Self::from_members(self.parent_order(), self.members.iter().map(|&x| group.conj(x, g)))
    }

    /// Canonical representative (least index) of the right coset `S x`.
    pub fn right_coset_rep(&self, group: &FiniteGroup, x: Elem) -> Elem {
        self.members.iter().map(|&h| group.mul(h, x)).min().expect("nonempty")
    }

    /// The set `S T = {st}`; a subgroup whenever one factor is normal.
    pub fn product_set(&self, group: &FiniteGroup, other: &Subgroup) -> BTreeSet<Elem> {
        self.members
            .iter()
            .flat_map(|&s| other.members.iter().map(move |&t| group.mul(s, t)))
            .collect()
    }

    /// A generator if the subgroup is cyclic.
    pub fn cyclic_generator(&self, group: &FiniteGroup) -> Option<Elem> {
        self.members.iter().copied().find(|&x| group.element_order(x) == self.order())
    }
}

/// Least subgroup containing `gens`, by closure.
pub fn subgroup_generated(group: &FiniteGroup, gens: impl IntoIterator<Item = Elem>) -> Subgroup {
    let gens: Vec<Elem> = gens.into_iter().filter(|&g| g != 0).collect();
    let mut mask = vec![false; group.order()];
    mask[0] = true;
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = group.mul(x, g);
            if !mask[y] {
                mask[y] = true;
                frontier.push(y);
            }
        }
    }
    Subgroup::from_members(group.order(), (0..group.order()).filter(|&x| mask[x]))
}

/// Least normal subgroup containing `gens`.
pub fn normal_closure(group: &FiniteGroup, gens: impl IntoIterator<Item = Elem>) -> Subgroup {
    let mut all = BTreeSet::new();
    for g in gens {
        for x in group.elements() {
            all.insert(group.conj(g, x));
        }
    }
    subgroup_generated(group, all)
}

/// Every subgroup exactly once, in canonical order.
///
/// Cyclic subgroups are joined pairwise until no new subgroup appears.
pub fn enumerate_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let cyclic: BTreeSet<Subgroup> = group.elements().map(|x| subgroup_generated(group, [x])).collect();
    let cyclic: Vec<Subgroup> = cyclic.into_iter().collect();
    let mut all: BTreeSet<Subgroup> = cyclic.iter().cloned().collect();
    let mut frontier: Vec<Subgroup> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &cyclic {
                if c.is_subset_of(s) {
                    continue;
                }
                let j = s.join(group, c);
                if all.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    all.into_iter().collect()
}

/// Every normal subgroup exactly once, sorted by (order, member list).
///
/// Normal subgroups are exactly the joins of normal closures of single
/// elements, so the lattice is closed from those.
pub fn enumerate_normal_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let closures: BTreeSet<Subgroup> = group.elements().map(|x| normal_closure(group, [x])).collect();
    let closures: Vec<Subgroup> = closures.into_iter().collect();
    let mut all: BTreeSet<Subgroup> = closures.iter().cloned().collect();
    let mut frontier: Vec<Subgroup> = all.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for c in &closures {
                if c.is_subset_of(s) {
                    continue;
                }
                let j = s.join(group, c);
                if all.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    all.into_iter().collect()
}

/// The subgroup as a group in its own right, with the embedding into the
/// parent (`embedding[i]` is the parent index of the `i`-th member).
pub fn subgroup_as_group(group: &FiniteGroup, sub: &Subgroup) -> (FiniteGroup, Vec<Elem>) {
    let embedding = sub.members().to_vec();
    let mut back = vec![usize::MAX; group.order()];
    for (i, &m) in embedding.iter().enumerate() {
        back[m] = i;
    }
    let g = FiniteGroup::from_fn(embedding.len(), |x, y| back[group.mul(embedding[x], embedding[y])]);
    (g, embedding)
}
