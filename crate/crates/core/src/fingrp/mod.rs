//! Finite groups given by complete multiplication tables.
//!
//! Elements are indices `0..order`; index 0 is always the identity. Tables are
//! row-major: `table[x][y]` is the product `x * y`.

mod chain;
mod hom;
mod isolation;
mod subgroup;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use chain::{all_p_chains, find_p_chain, NormalChain};
pub use hom::{enumerate_homomorphisms, generating_set, quotient_with_projection, Homomorphism};
pub use isolation::{is_p_prime_isolated_cyclic_finite, separating_core};
pub use subgroup::{
    enumerate_normal_subgroups, enumerate_subgroups, normal_closure, subgroup_as_group, subgroup_generated,
    Subgroup,
};

/// Element index inside a [`FiniteGroup`].
pub type Elem = usize;

/// Orders up to this bound get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;
/// Number of random triples checked above [`EXHAUSTIVE_ASSOC_LIMIT`].
pub const SAMPLED_ASSOC_TRIPLES: usize = 10_000;
/// Documented working cap for desk-scale computations. Larger groups can be
/// constructed (witness targets go beyond it) but are not the design point.
pub const PRACTICAL_ORDER_CAP: usize = 255;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry table[{row}][{col}] = {value} is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("element 0 is not a two-sided identity (fails at element {element})")]
    NoIdentity { element: Elem },
    #[error("element {element} has no two-sided inverse (row/column is not a permutation)")]
    NotInvertible { element: Elem },
    #[error("not associative: ({x}*{y})*{z} != {x}*({y}*{z})")]
    NotAssociative { x: Elem, y: Elem, z: Elem },
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not cyclic")]
    NotCyclic,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no normal subgroup M of p-power index in Y with y outside (F ∩ Y)M")]
    NoSuchM,
    #[error("names list has {names} entries for a group of order {order}")]
    BadNames { names: usize, order: usize },
    #[error("unknown element name {0:?}")]
    UnknownName(String),
    #[error("{0} candidate maps exceed the search cap")]
    SizeCap(u128),
}

/// A finite group as a verified multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    names: Option<Vec<String>>,
    associativity_verified: bool,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("associativity_verified", &self.associativity_verified)
            .finish_non_exhaustive()
    }
}

/// Serialized form: `{"order": n, "table": [[...]], "names": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// Builds and validates a group from a row-major table.
pub fn construct_group(table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    let order = table.len();
    if order == 0 {
        return Err(GroupError::Empty);
    }
    let mut flat = Vec::with_capacity(order * order);
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != order {
            return Err(GroupError::NotSquare { row, len: entries.len(), order });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= order {
                return Err(GroupError::EntryOutOfRange { row, col, value });
            }
            flat.push(value as u32);
        }
    }
    FiniteGroup::from_flat(order, flat)
}

impl FiniteGroup {
    /// Validates a flat row-major table.
    pub fn from_flat(order: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        assert_eq!(table.len(), order * order);
        let at = |x: usize, y: usize| table[x * order + y] as usize;
        for x in 0..order {
            if at(0, x) != x || at(x, 0) != x {
                return Err(GroupError::NoIdentity { element: x });
            }
        }
        // Latin square: every row and column is a permutation.
        let mut seen = vec![usize::MAX; order];
        for x in 0..order {
            for y in 0..order {
                let v = at(x, y);
                if seen[v] == x {
                    return Err(GroupError::NotInvertible { element: x });
                }
                seen[v] = x;
            }
        }
        seen.fill(usize::MAX);
        for y in 0..order {
            for x in 0..order {
                let v = at(x, y);
                if seen[v] == y {
                    return Err(GroupError::NotInvertible { element: y });
                }
                seen[v] = y;
            }
        }
        let mut inverse = vec![0u32; order];
        for x in 0..order {
            let y = (0..order).find(|&y| at(x, y) == 0).expect("latin row hits identity");
            if at(y, x) != 0 {
                return Err(GroupError::NotInvertible { element: x });
            }
            inverse[x] = y as u32;
        }
        let check = |x: usize, y: usize, z: usize| at(at(x, y), z) == at(x, at(y, z));
        let associativity_verified = order <= EXHAUSTIVE_ASSOC_LIMIT;
        if associativity_verified {
            for x in 0..order {
                for y in 0..order {
                    for z in 0..order {
                        if !check(x, y, z) {
                            return Err(GroupError::NotAssociative { x, y, z });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let (x, y, z) =
                    (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order));
                if !check(x, y, z) {
                    return Err(GroupError::NotAssociative { x, y, z });
                }
            }
        }
        Ok(Self { order, table, inverse, names: None, associativity_verified })
    }

    /// Builds a group from a closed multiplication on `0..order` that is
    /// known to be a group law (catalog constructions). Associativity is still
    /// checked when the order is small.
    pub(crate) fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                table.push(mul(x, y) as u32);
            }
        }
        Self::from_flat(order, table).expect("catalog construction yields a group")
    }

    pub fn from_json(json: &GroupJson) -> Result<Self, GroupError> {
        if let Some(s) = json.schema {
            if s != 1 {
                return Err(GroupError::PreconditionViolated(format!("unsupported schema {s}")));
            }
        }
        if json.table.len() != json.order {
            return Err(GroupError::NotSquare { row: json.table.len(), len: json.table.len(), order: json.order });
        }
        let g = construct_group(&json.table)?;
        match &json.names {
            Some(names) => g.with_names(names.clone()),
            None => Ok(g),
        }
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            schema: None,
            order: self.order,
            table: (0..self.order).map(|x| (0..self.order).map(|y| self.mul(x, y)).collect()).collect(),
            names: self.names.clone(),
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self, GroupError> {
        if names.len() != self.order {
            return Err(GroupError::BadNames { names: names.len(), order: self.order });
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn associativity_verified(&self) -> bool {
        self.associativity_verified
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.table[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inverse[x] as usize
    }

    /// `x^-1 y x`
    pub fn conj(&self, y: Elem, x: Elem) -> Elem {
        self.mul(self.mul(self.inv(x), y), x)
    }

    pub fn pow(&self, x: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(x) } else { x };
        let mut e = k.unsigned_abs();
        let mut acc = 0;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: Elem) -> usize {
        let mut y = x;
        let mut n = 1;
        while y != 0 {
            y = self.mul(y, x);
            n += 1;
        }
        n
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> usize {
        self.elements()
            .fold(1u64, |acc, x| crate::arith::lcm(acc, self.element_order(x) as u64)) as usize
    }

    pub fn is_p_group(&self, p: u64) -> bool {
        crate::arith::is_power_of(self.order as u64, p)
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|x| (x + 1..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display name of an element (its index when unnamed).
    pub fn name(&self, x: Elem) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    /// Resolves an element by name, by decimal index, or as `name^k`.
    pub fn parse_element(&self, s: &str) -> Result<Elem, GroupError> {
        let s = s.trim();
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == s) {
                return Ok(i);
            }
        }
        if let Ok(i) = s.parse::<usize>() {
            if i < self.order {
                return Ok(i);
            }
        }
        if let Some((base, exp)) = s.rsplit_once('^') {
            let k: i64 = exp.parse().map_err(|_| GroupError::UnknownName(s.to_string()))?;
            let x = self.parse_element(base)?;
            return Ok(self.pow(x, k));
        }
        Err(GroupError::UnknownName(s.to_string()))
    }

    /// Direct product; element `(x, y)` has index `x * other.order + y`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order;
        FiniteGroup::from_fn(self.order * m, |u, v| {
            self.mul(u / m, v / m) * m + other.mul(u % m, v % m)
        })
    }

    /// The trivial group.
    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_fn(1, |_, _| 0)
    }
}

/// The group generated by `gens` inside an ambient structure given by `mul`,
/// materialized as a table. Element 0 is `identity`; the rest follow in
/// breadth-first order over right multiplication by the generators. Returns
/// the group and the ambient value of each element.
pub fn generated_group<T: Clone + Eq + std::hash::Hash>(
    identity: T,
    gens: &[T],
    mul: impl Fn(&T, &T) -> T,
) -> (FiniteGroup, Vec<T>) {
    let mut elems = vec![identity.clone()];
    let mut index: std::collections::HashMap<T, usize> = std::collections::HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let y = mul(&elems[i], g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elems.len());
                elems.push(y);
            }
        }
        i += 1;
    }
    let n = elems.len();
    let mut table = Vec::with_capacity(n * n);
    for x in &elems {
        for y in &elems {
            table.push(index[&mul(x, y)] as u32);
        }
    }
    let g = FiniteGroup::from_flat(n, table).expect("closure of group elements is a group");
    (g, elems)
}
