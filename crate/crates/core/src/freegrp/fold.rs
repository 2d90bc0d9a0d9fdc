use std::collections::HashMap;

use serde::Serialize;

use super::{reduce_word, FreeWord};

/// Folded Stallings graph of a finitely generated subgroup of a free group.
///
/// Every edge carries a label in the free group on the subgroup generators;
/// the product of labels along a closed path at the base spells the element
/// read by that path in terms of the given generators.
#[derive(Debug, Clone, Serialize)]
pub struct SubgroupGraph {
    rank: usize,
    states: usize,
    /// `forward[(state, gen)] = (target, label)`
    #[serde(skip)]
    forward: HashMap<(usize, usize), (usize, FreeWord)>,
    /// `backward[(state, gen)] = (source, label)` for the edge ending at `state`
    #[serde(skip)]
    backward: HashMap<(usize, usize), (usize, FreeWord)>,
    /// False when folding exposed a relation among the given generators.
    free_basis: bool,
}

#[derive(Debug, Clone)]
struct Edge {
    from: usize,
    gen: usize,
    to: usize,
    label: FreeWord,
}

impl SubgroupGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn base(&self) -> usize {
        0
    }

    pub fn edge_count(&self) -> usize {
        self.forward.len()
    }

    pub fn has_free_basis(&self) -> bool {
        self.free_basis
    }

    /// Follows `w` from the base; the end state and accumulated label.
    fn read(&self, w: &FreeWord) -> Option<(usize, FreeWord)> {
        let mut state = 0;
        let mut label = Vec::new();
        for l in w.letters() {
            if l.inverse {
                let (src, lab) = self.backward.get(&(state, l.gen))?;
                state = *src;
                label.extend(lab.inverse().letters().iter().copied());
            } else {
                let (dst, lab) = self.forward.get(&(state, l.gen))?;
                state = *dst;
                label.extend(lab.letters().iter().copied());
            }
        }
        Some((state, reduce_word(label)))
    }

    /// Writes `w` as a word in the subgroup generators, if `w` is a member.
    pub fn express(&self, w: &FreeWord) -> Option<FreeWord> {
        match self.read(w) {
            Some((0, label)) => Some(label),
            _ => None,
        }
    }
}

/// Stallings folding of the bouquet of the generator words.
pub fn fold_subgroup(gens: &[FreeWord], rank: usize) -> SubgroupGraph {
    let mut edges: Vec<Option<Edge>> = Vec::new();
    let mut states = 1;
    for (i, w) in gens.iter().enumerate() {
        if w.is_empty() {
            continue;
        }
        let n = w.len();
        let mut prev = 0;
        for (pos, l) in w.letters().iter().enumerate() {
            assert!(l.gen < rank, "generator index out of range");
            let next = if pos + 1 == n {
                0
            } else {
                states += 1;
                states - 1
            };
            let label = if pos == 0 {
                FreeWord::gen_power(i, if l.inverse { -1 } else { 1 })
            } else {
                FreeWord::identity()
            };
            let e = if l.inverse {
                Edge { from: next, gen: l.gen, to: prev, label }
            } else {
                Edge { from: prev, gen: l.gen, to: next, label }
            };
            edges.push(Some(e));
            prev = next;
        }
    }

    let mut alive = vec![true; states];
    let mut free_basis = true;
    loop {
        let Some((i, j, forward)) = find_fold(&edges) else { break };
        let (e1, e2) = (edges[i].clone().unwrap(), edges[j].clone().unwrap());
        // Vertices to identify and the label shift for the absorbed one.
        let (keep, drop, shift) = if forward {
            let (k, d) = (e1.to, e2.to);
            let c = e1.label.inverse().mul(&e2.label);
            if d == 0 {
                (d, k, c.inverse())
            } else {
                (k, d, c)
            }
        } else {
            let (k, d) = (e1.from, e2.from);
            let c = e1.label.mul(&e2.label.inverse());
            if d == 0 {
                (d, k, c.inverse())
            } else {
                (k, d, c)
            }
        };
        if keep == drop {
            if e1.label != e2.label {
                free_basis = false;
            }
            edges[j] = None;
            continue;
        }
        for e in edges.iter_mut().flatten() {
            let (src, dst) = (e.from == drop, e.to == drop);
            if src {
                e.label = shift.mul(&e.label);
                e.from = keep;
            }
            if dst {
                e.label = e.label.mul(&shift.inverse());
                e.to = keep;
            }
        }
        alive[drop] = false;
        // After relabelling the two edges coincide up to their labels.
        let (a, b) = (edges[i].as_ref().unwrap(), edges[j].as_ref().unwrap());
        if a.label != b.label {
            free_basis = false;
        }
        edges[j] = None;
    }

    // Compact state numbering; base stays 0.
    let mut renumber = vec![usize::MAX; states];
    let mut count = 0;
    for (s, &live) in alive.iter().enumerate() {
        if live {
            renumber[s] = count;
            count += 1;
        }
    }
    let mut forward = HashMap::new();
    let mut backward = HashMap::new();
    for e in edges.into_iter().flatten() {
        let (from, to) = (renumber[e.from], renumber[e.to]);
        forward.insert((from, e.gen), (to, e.label.clone()));
        backward.insert((to, e.gen), (from, e.label));
    }
    SubgroupGraph { rank, states: count, forward, backward, free_basis }
}

/// Two distinct edges sharing a source and label (`forward`) or a target and
/// label (`!forward`).
fn find_fold(edges: &[Option<Edge>]) -> Option<(usize, usize, bool)> {
    let mut by_source: HashMap<(usize, usize), usize> = HashMap::new();
    let mut by_target: HashMap<(usize, usize), usize> = HashMap::new();
    for (idx, e) in edges.iter().enumerate() {
        let Some(e) = e else { continue };
        if let Some(&other) = by_source.get(&(e.from, e.gen)) {
            return Some((other, idx, true));
        }
        if let Some(&other) = by_target.get(&(e.to, e.gen)) {
            return Some((other, idx, false));
        }
        by_source.insert((e.from, e.gen), idx);
        by_target.insert((e.to, e.gen), idx);
    }
    None
}

/// Membership of `w` in the subgroup recognized by `graph`.
pub fn graph_member(graph: &SubgroupGraph, w: &FreeWord) -> bool {
    graph.express(w).is_some()
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::super::Letter;
    use super::*;

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    fn w(s: &str) -> FreeWord {
        FreeWord::parse(s, &names()).unwrap()
    }

    #[test]
    fn single_generator_loop() {
        let g = fold_subgroup(&[w("a")], 2);
        assert_eq!(g.states(), 1);
        assert_eq!(g.edge_count(), 1);
        assert!(graph_member(&g, &w("a^5")));
        assert!(!graph_member(&g, &w("b")));
    }

    #[test]
    fn square_gives_two_cycle() {
        let g = fold_subgroup(&[FreeWord::gen_power(0, 2)], 1);
        assert_eq!(g.states(), 2);
        assert!(graph_member(&g, &FreeWord::gen_power(0, -4)));
        assert!(!graph_member(&g, &FreeWord::gen_power(0, 3)));
        assert_eq!(g.express(&FreeWord::gen_power(0, 6)), Some(FreeWord::gen_power(0, 3)));
    }

    #[test]
    fn conjugate_pair() {
        // <a, b^-1 a b>: the b^-1 a b petal folds onto itself at the b-end.
        let g = fold_subgroup(&[w("a"), w("b^-1 a b")], 2);
        assert_eq!(g.states(), 2);
        assert!(g.has_free_basis());
        assert!(graph_member(&g, &FreeWord::identity()));
        assert!(graph_member(&g, &w("b^-1 a b")));
        assert!(!graph_member(&g, &w("a b")));
        // a^2 (b^-1 a^-1 b) a -> y0^2 y1^-1 y0
        let e = g.express(&w("a^2 b^-1 a^-1 b a")).unwrap();
        assert_eq!(e, w("a^2 b^-1 a"));
    }

    #[test]
    fn relation_detected() {
        let g = fold_subgroup(&[w("a"), w("a^2")], 2);
        assert!(!g.has_free_basis());
        assert!(graph_member(&g, &w("a^3")));
    }

    /// Subgroup elements of bounded length by products of generators.
    fn naive_members(gens: &[FreeWord], max_len: usize) -> HashSet<FreeWord> {
        let mut all: Vec<FreeWord> = gens.iter().flat_map(|g| [g.clone(), g.inverse()]).collect();
        all.retain(|g| !g.is_empty());
        let mut seen: HashSet<FreeWord> = HashSet::from([FreeWord::identity()]);
        let mut frontier = vec![FreeWord::identity()];
        // Products of up to 6 generator letters; intermediate words may be long.
        for _ in 0..6 {
            let mut next = Vec::new();
            for x in &frontier {
                for g in &all {
                    let y = x.mul(g);
                    if y.len() <= 3 * max_len && seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        seen.into_iter().filter(|x| x.len() <= max_len).collect()
    }

    fn all_words(max_len: usize) -> Vec<FreeWord> {
        let letters = [Letter::new(0, false), Letter::new(0, true), Letter::new(1, false), Letter::new(1, true)];
        let mut out = vec![FreeWord::identity()];
        let mut frontier = vec![FreeWord::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for x in &frontier {
                for &l in &letters {
                    if x.letters().last() == Some(&l.inv()) {
                        continue;
                    }
                    let y = x.mul(&reduce_word([l]));
                    next.push(y.clone());
                    out.push(y);
                }
            }
            frontier = next;
        }
        out
    }

    #[test]
    fn folding_agrees_with_naive_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let words = all_words(6);
        for _ in 0..40 {
            let k = rng.gen_range(1..=3);
            let gens: Vec<FreeWord> = (0..k)
                .map(|_| {
                    let len = rng.gen_range(1..=4);
                    reduce_word((0..len).map(|_| Letter::new(rng.gen_range(0..2), rng.gen_bool(0.5))))
                })
                .collect();
            let g = fold_subgroup(&gens, 2);
            let naive = naive_members(&gens, 6);
            for x in &naive {
                assert!(graph_member(&g, x), "{x:?} in <{gens:?}>");
                if g.has_free_basis() {
                    let e = g.express(x).unwrap();
                    assert_eq!(e.substitute(&gens), *x);
                }
            }
            // Every accepted short word must be a genuine member: check by
            // substituting the recovered expression.
            for x in &words {
                if let Some(e) = g.express(x) {
                    if g.has_free_basis() {
                        assert_eq!(e.substitute(&gens), *x);
                    }
                }
            }
        }
    }
}
