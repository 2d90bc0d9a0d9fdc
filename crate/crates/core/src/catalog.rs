//! Built-in catalog of finite target groups for homomorphism searches.
//!
//! Families: cyclic `Z_n` (n <= 64), dihedral `D_n` of order `2n`
//! (n <= 12), split metacyclic `Z_m ⋊_k Z_j` (m <= 32, j <= 64, one `k` per
//! nontrivial cyclic subgroup of units), symmetric `S_n` (n <= 5), and direct
//! products of two members of those families. Entries are listed by group
//! order, then family, then parameters.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::arith::{is_power_of, mult_order};
use crate::fingrp::FiniteGroup;

pub const MAX_CYCLIC: usize = 64;
pub const MAX_DIHEDRAL: usize = 12;
pub const MAX_METACYCLIC_M: usize = 32;
pub const MAX_METACYCLIC_J: usize = 64;
pub const MAX_SYMMETRIC: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Cyclic(usize),
    Dihedral(usize),
    Metacyclic { m: usize, k: usize, j: usize },
    Symmetric(usize),
    Product(Box<Family>, Box<Family>),
}

impl Family {
    pub fn order(&self) -> usize {
        match self {
            Family::Cyclic(n) => *n,
            Family::Dihedral(n) => 2 * n,
            Family::Metacyclic { m, j, .. } => m * j,
            Family::Symmetric(n) => (1..=*n).product(),
            Family::Product(a, b) => a.order() * b.order(),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Family::Cyclic(_) => 0,
            Family::Dihedral(_) => 1,
            Family::Metacyclic { .. } => 2,
            Family::Symmetric(_) => 3,
            Family::Product(..) => 4,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Family::Cyclic(n) => format!("Z{n}"),
            Family::Dihedral(n) => format!("D{n}"),
            Family::Metacyclic { m, k, j } => format!("Z{m}:{k}Z{j}"),
            Family::Symmetric(n) => format!("S{n}"),
            Family::Product(a, b) => format!("{}x{}", a.name(), b.name()),
        }
    }

    fn build(&self) -> FiniteGroup {
        match self {
            Family::Cyclic(n) => cyclic(*n),
            Family::Dihedral(n) => dihedral(*n),
            Family::Metacyclic { m, k, j } => metacyclic(*m, *k, *j),
            Family::Symmetric(n) => symmetric(*n),
            Family::Product(a, b) => a.group().direct_product(&b.group()),
        }
    }

    /// The group, built once and cached process-wide.
    pub fn group(&self) -> Arc<FiniteGroup> {
        static CACHE: OnceLock<Mutex<HashMap<Family, Arc<FiniteGroup>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(g) = cache.lock().unwrap().get(self) {
            return Arc::clone(g);
        }
        let g = Arc::new(self.build());
        Arc::clone(cache.lock().unwrap().entry(self.clone()).or_insert(g))
    }
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let names = (0..n)
        .map(|i| match i {
            0 => "e".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    FiniteGroup::from_fn(n, |a, b| (a + b) % n).with_names(names).expect("names match order")
}

/// Dihedral group of order `2n`: element `r^i s^e` has index `i + n e`.
pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(n, (n - 1) % n.max(1), 2)
}

/// `Z_m ⋊_k Z_j` with `y x y^-1 = x^k`: element `x^i y^e` has index `i + m e`.
pub fn metacyclic(m: usize, k: usize, j: usize) -> FiniteGroup {
    let mut kpow = vec![1 % m; j];
    for e in 1..j {
        kpow[e] = kpow[e - 1] * k % m;
    }
    assert_eq!(kpow[j - 1] * k % m, 1 % m, "k^j must be 1 mod m");
    FiniteGroup::from_fn(m * j, |u, v| {
        let (i1, e1) = (u % m, u / m);
        let (i2, e2) = (v % m, v / m);
        (i1 + kpow[e1] * i2) % m + m * ((e1 + e2) % j)
    })
}

/// Symmetric group on `n` points; permutations in lexicographic order
/// (identity first), product `(p q)(x) = q(p(x))`.
pub fn symmetric(n: usize) -> FiniteGroup {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        perms.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    let index: HashMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    FiniteGroup::from_fn(perms.len(), |a, b| {
        let (p, q) = (&perms[a], &perms[b]);
        index[&(0..n).map(|x| q[p[x]]).collect::<Vec<_>>()]
    })
}

fn base_families(max_order: usize) -> Vec<Family> {
    let mut out = Vec::new();
    for n in 1..=MAX_CYCLIC.min(max_order) {
        out.push(Family::Cyclic(n));
    }
    for n in 2..=MAX_DIHEDRAL {
        if 2 * n <= max_order {
            out.push(Family::Dihedral(n));
        }
    }
    for m in 3..=MAX_METACYCLIC_M {
        for j in 2..=MAX_METACYCLIC_J {
            if m * j > max_order {
                break;
            }
            for k in metacyclic_multipliers(m, j) {
                if k == m - 1 && j == 2 && m <= MAX_DIHEDRAL {
                    continue; // already listed as dihedral
                }
                out.push(Family::Metacyclic { m, k, j });
            }
        }
    }
    for n in 3..=MAX_SYMMETRIC {
        let f = Family::Symmetric(n);
        if f.order() <= max_order {
            out.push(f);
        }
    }
    out
}

/// One multiplier per nontrivial cyclic subgroup of `(Z/m)^*` whose order
/// divides `j`: the least element generating it.
fn metacyclic_multipliers(m: usize, j: usize) -> Vec<usize> {
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut out = Vec::new();
    for k in 2..m {
        let Some(d) = mult_order(k as u64, m as u64) else { continue };
        if j as u64 % d != 0 {
            continue;
        }
        let mut sub: Vec<usize> = (0..d).map(|e| (0..e).fold(1, |acc, _| acc * k % m)).collect();
        sub.sort_unstable();
        if !seen.contains(&sub) {
            seen.push(sub);
            out.push(k);
        }
    }
    out
}

fn sort_key(f: &Family) -> (usize, u8, String) {
    (f.order(), f.rank(), format!("{:?}", f))
}

/// All catalog groups of order at most `max_order`, canonical order.
pub fn catalog(max_order: usize) -> Vec<Family> {
    let base = base_families(max_order);
    let mut out = base.clone();
    let nontrivial: Vec<&Family> = base.iter().filter(|f| f.order() > 1).collect();
    for (i, a) in nontrivial.iter().enumerate() {
        for b in &nontrivial[i..] {
            if a.order() * b.order() <= max_order {
                out.push(Family::Product(Box::new((*a).clone()), Box::new((*b).clone())));
            }
        }
    }
    out.sort_by_cached_key(sort_key);
    out
}

/// Catalog groups whose order is a power of `p` (the trivial group included).
pub fn catalog_p_groups(max_order: usize, p: u64) -> Vec<Family> {
    catalog(max_order).into_iter().filter(|f| is_power_of(f.order() as u64, p)).collect()
}

/// Whether the family is abelian, decided from parameters.
pub fn is_abelian_family(f: &Family) -> bool {
    match f {
        Family::Cyclic(_) => true,
        Family::Dihedral(n) => *n <= 2,
        Family::Metacyclic { m, k, .. } => k % m == 1 % m,
        Family::Symmetric(n) => *n <= 2,
        Family::Product(a, b) => is_abelian_family(a) && is_abelian_family(b),
    }
}
