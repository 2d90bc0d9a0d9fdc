use serde::Serialize;

use super::{enumerate_normal_subgroups, FiniteGroup, GroupError, Subgroup};

/// `R = R_0 <= R_1 <= ... <= R_m = G`, every link normal in `G`, every step
/// of index `prime`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalChain {
    pub prime: u64,
    pub links: Vec<Subgroup>,
}

impl NormalChain {
    /// Number of index-`p` steps (`m`).
    pub fn length(&self) -> usize {
        self.links.len() - 1
    }

    pub fn is_valid(&self, group: &FiniteGroup) -> bool {
        self.links.last().is_some_and(|top| top.is_whole())
            && self.links.iter().all(|l| l.is_normal_in(group))
            && self.links.windows(2).all(|w| {
                w[0].is_subset_of(&w[1]) && w[1].order() == w[0].order() * self.prime as usize
            })
    }
}

/// Normal subgroups of `group` that lie in `top`, contain `bottom` and have
/// index `p` in `top`, in canonical order.
fn index_p_below<'a>(
    normals: &'a [Subgroup],
    bottom: &'a Subgroup,
    top: &'a Subgroup,
    p: usize,
) -> impl Iterator<Item = &'a Subgroup> + 'a {
    normals.iter().filter(move |n| {
        n.order() * p == top.order() && bottom.is_subset_of(n) && n.is_subset_of(top)
    })
}

/// A chain from `r` up to `group` with index-`p` steps, all links normal.
///
/// Depth-first from the top: at each link the smallest canonical normal
/// subgroup of index `p` (still containing `r`) is tried first.
pub fn find_p_chain(group: &FiniteGroup, r: &Subgroup, p: u64) -> Result<Option<NormalChain>, GroupError> {
    if !r.is_normal_in(group) {
        return Err(GroupError::NotNormal);
    }
    if !crate::arith::is_power_of(r.index() as u64, p) {
        return Ok(None);
    }
    let normals = enumerate_normal_subgroups(group);
    let top = Subgroup::whole(group);
    let mut path = vec![top];
    if descend(&normals, r, p as usize, &mut path) {
        path.reverse();
        Ok(Some(NormalChain { prime: p, links: path }))
    } else {
        Ok(None)
    }
}

fn descend(normals: &[Subgroup], r: &Subgroup, p: usize, path: &mut Vec<Subgroup>) -> bool {
    let top = path.last().expect("path starts at the whole group").clone();
    if top == *r {
        return true;
    }
    for next in index_p_below(normals, r, &top, p) {
        path.push(next.clone());
        if descend(normals, r, p, path) {
            return true;
        }
        path.pop();
    }
    false
}

/// Every chain from `r` to `group` with index-`p` normal steps. Exponential;
/// meant for cross-checks on small groups.
pub fn all_p_chains(group: &FiniteGroup, r: &Subgroup, p: u64) -> Result<Vec<NormalChain>, GroupError> {
    if !r.is_normal_in(group) {
        return Err(GroupError::NotNormal);
    }
    let normals = enumerate_normal_subgroups(group);
    let mut out = Vec::new();
    let mut path = vec![r.clone()];
    ascend_all(&normals, group.order(), p as usize, &mut path, &mut out);
    Ok(out.into_iter().map(|links| NormalChain { prime: p, links }).collect())
}

fn ascend_all(normals: &[Subgroup], order: usize, p: usize, path: &mut Vec<Subgroup>, out: &mut Vec<Vec<Subgroup>>) {
    let cur = path.last().unwrap().clone();
    if cur.order() == order {
        out.push(path.clone());
        return;
    }
    for next in normals.iter().filter(|n| n.order() == cur.order() * p && cur.is_subset_of(n)) {
        path.push(next.clone());
        ascend_all(normals, order, p, path, out);
        path.pop();
    }
}
