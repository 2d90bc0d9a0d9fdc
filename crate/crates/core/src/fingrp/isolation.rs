use crate::arith::{is_power_of, is_prime, prime_divisors};

use super::subgroup::subgroup_as_group;
use super::{enumerate_normal_subgroups, Elem, FiniteGroup, GroupError, Subgroup};

/// Whether the cyclic subgroup `f` is p′-isolated in `group`: `y^q ∈ F` for a
/// prime `q != p` forces `y ∈ F`.
///
/// Only primes dividing the group order matter: for any other `q`, `y^q`
/// generates the same cyclic subgroup as `y`.
pub fn is_p_prime_isolated_cyclic_finite(group: &FiniteGroup, f: &Subgroup, p: u64) -> Result<bool, GroupError> {
    if f.cyclic_generator(group).is_none() {
        return Err(GroupError::NotCyclic);
    }
    let primes: Vec<u64> = prime_divisors(group.order() as u64).into_iter().filter(|&q| q != p).collect();
    Ok(group.elements().all(|y| {
        f.contains(y) || primes.iter().all(|&q| !f.contains(group.pow(y, q as i64)))
    }))
}

/// Builds a normal subgroup `N` of `x_group` of p-power index with
/// `g ∉ F N`, following the extension argument: either `Y` itself works, or
/// `g = f y` and a subgroup `M` of `Y` separating `y` from `F ∩ Y` is
/// intersected over its `X`-conjugates.
pub fn separating_core(
    x_group: &FiniteGroup,
    y_sub: &Subgroup,
    f_sub: &Subgroup,
    g: Elem,
    p: u64,
) -> Result<Subgroup, GroupError> {
    let pre = |m: &str| GroupError::PreconditionViolated(m.to_string());
    if !is_prime(p) {
        return Err(pre("p is not prime"));
    }
    if !y_sub.is_normal_in(x_group) {
        return Err(pre("Y is not normal in X"));
    }
    if !is_power_of(y_sub.index() as u64, p) {
        return Err(pre("[X : Y] is not a power of p"));
    }
    if f_sub.cyclic_generator(x_group).is_none() {
        return Err(pre("F is not cyclic"));
    }
    if f_sub.contains(g) {
        return Err(pre("g lies in F"));
    }
    if !is_p_prime_isolated_cyclic_finite(x_group, f_sub, p)? {
        return Err(pre("F is not p'-isolated"));
    }

    let fy = f_sub.product_set(x_group, y_sub);
    let n = if !fy.contains(&g) {
        y_sub.clone()
    } else {
        let f = f_sub
            .members()
            .iter()
            .copied()
            .find(|&f| y_sub.contains(x_group.mul(x_group.inv(f), g)))
            .expect("g ∈ FY");
        let y = x_group.mul(x_group.inv(f), g);
        let f_cap_y = f_sub.intersection(y_sub);
        let m = separating_normal_in_y(x_group, y_sub, &f_cap_y, y, p).ok_or(GroupError::NoSuchM)?;
        x_group
            .elements()
            .fold(m.clone(), |acc, x| acc.intersection(&m.conjugate(x_group, x)))
    };

    debug_assert!(n.is_normal_in(x_group));
    assert!(is_power_of(n.index() as u64, p), "separating core must have p-power index");
    assert!(!f_sub.product_set(x_group, &n).contains(&g), "separating core must exclude g");
    Ok(n)
}

/// First (canonical order) `M ⊴ Y` of p-power index in `Y` with `y ∉ (F ∩ Y) M`.
fn separating_normal_in_y(
    x_group: &FiniteGroup,
    y_sub: &Subgroup,
    f_cap_y: &Subgroup,
    y: Elem,
    p: u64,
) -> Option<Subgroup> {
    let (y_group, embedding) = subgroup_as_group(x_group, y_sub);
    enumerate_normal_subgroups(&y_group)
        .into_iter()
        .filter(|m| is_power_of(m.index() as u64, p))
        .map(|m| Subgroup::from_members(x_group.order(), m.members().iter().map(|&i| embedding[i])))
        .find(|m| !f_cap_y.product_set(x_group, m).contains(&y))
}
