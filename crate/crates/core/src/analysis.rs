//! Structural queries: Sylow subgroups, normalizers, normal subgroups,
//! subgroup classes, and the normal-subgroup chain checks on `D`.

use std::collections::HashSet;

use crate::arith::{is_power_of, p_part};
use crate::caps::caps;
use crate::construct::{centralizer_in, MetacyclicSpec};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::table::{ElementTable, SubgroupSet};

/// Sylow `r`-subgroup of `within`, computed on a table.
///
/// Starts from the least `r`-element of maximal order and climbs: while the
/// current `r`-subgroup `P` is not Sylow, `N(P)/P` has an element of order
/// `r`, and the least `y ∈ N(P) \ P` with `y^r ∈ P` extends `P`.
pub fn sylow_in_table(t: &ElementTable, within: &SubgroupSet, r: u64) -> SubgroupSet {
    let target = p_part(within.order() as u64, r) as usize;
    if target == 1 {
        return t.trivial();
    }
    let start = within
        .elements()
        .iter()
        .copied()
        .filter(|&x| x != 0 && is_power_of(t.order_of(x) as u64, r))
        .max_by(|&a, &b| t.order_of(a).cmp(&t.order_of(b)).then(b.cmp(&a)))
        .expect("Cauchy: an r-element exists");
    let mut p = t.closure(&[start]);
    while p.order() < target {
        let n = t.normalizer(within, &p);
        let y = n
            .elements()
            .iter()
            .copied()
            .find(|&y| !p.contains(y) && p.contains(t.pow(y, r)))
            .expect("N(P)/P has an element of order r");
        p = t.join(&p, &[y]);
    }
    p
}

pub fn sylow(g: &PermGroup, r: u64) -> Result<PermGroup> {
    if p_part(g.order(), r) == 1 {
        return Ok(PermGroup::trivial(g.degree()));
    }
    let t = g.table()?;
    Ok(t.to_group(&sylow_in_table(&t, &t.whole(), r)))
}

/// `N_G(S) = {g ∈ G : S^g = S}`, by enumerating `G`.
pub fn normalizer(g: &PermGroup, s: &PermGroup) -> Result<PermGroup> {
    if !s.is_subgroup_of(g) {
        return Err(Error::NotAMember);
    }
    let elements = g.elements()?;
    Ok(crate::construct::subgroup_from_elements(
        g.degree(),
        elements
            .iter()
            .filter(|x| s.generators().iter().all(|y| s.has(&y.conjugate_by(x)))),
    ))
}

/// All normal subgroups, sorted by order.
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let t = g.table()?;
    Ok(t.normal_subgroups(&t.whole())
        .iter()
        .map(|n| t.to_group(n))
        .collect())
}

pub fn conjugacy_classes(g: &PermGroup) -> Result<Vec<Vec<Permutation>>> {
    let t = g.table()?;
    Ok(t.classes(&t.whole())
        .into_iter()
        .map(|c| c.into_iter().map(|i| t.element(i).clone()).collect())
        .collect())
}

/// True iff the groups are totally ordered by inclusion.
pub fn is_chain(groups: &[PermGroup]) -> bool {
    groups.iter().enumerate().all(|(i, a)| {
        groups[i + 1..]
            .iter()
            .all(|b| a.is_subgroup_of(b) || b.is_subgroup_of(a))
    })
}

pub fn is_p_group(g: &PermGroup, p: u64) -> bool {
    is_power_of(g.order(), p)
}

/// One representative per conjugacy class of subgroups, optionally keeping
/// only those whose order passes `order_filter`. Sorted by order.
pub fn subgroups_up_to_conjugacy(
    g: &PermGroup,
    order_filter: Option<&dyn Fn(u64) -> bool>,
) -> Result<Vec<PermGroup>> {
    subgroups_up_to_conjugacy_capped(g, order_filter, caps().oracle)
}

pub fn subgroups_up_to_conjugacy_capped(
    g: &PermGroup,
    order_filter: Option<&dyn Fn(u64) -> bool>,
    cap: u64,
) -> Result<Vec<PermGroup>> {
    let order = g.order();
    if order > cap {
        return Err(Error::cap("subgroup enumeration", order, cap));
    }
    let t = g.table()?;
    Ok(t.subgroup_classes(&t.whole())
        .iter()
        .filter(|s| order_filter.is_none_or(|f| f(s.order() as u64)))
        .map(|s| t.to_group(s))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainReport {
    /// Orders of all normal subgroups, increasing.
    pub normal_orders: Vec<u64>,
    pub is_chain: bool,
    /// Every proper normal subgroup is a `p`-group.
    pub proper_are_p_groups: bool,
}

pub fn chain_report(g: &PermGroup, p: u64) -> Result<ChainReport> {
    let normals = normal_subgroups(g)?;
    let order = g.order();
    Ok(ChainReport {
        normal_orders: normals.iter().map(|n| n.order()).collect(),
        is_chain: is_chain(&normals),
        proper_are_p_groups: normals
            .iter()
            .filter(|n| n.order() < order)
            .all(|n| is_p_group(n, p)),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetReport {
    pub chain: ChainReport,
    pub centralizer_order: u64,
    /// `|⋃_i B^{a^i}|`.
    pub conjugate_union: u64,
    /// `1 + p^n(q−1)`.
    pub conjugate_bound: u64,
}

/// Checks the structure of `D ≅ C_{p^n} ⋊ C_q`: normal subgroups form a
/// chain of `p`-groups below `D`, `C_A(B) = 1`, and the conjugates of `B`
/// cover `1 + p^n(q−1) > |D|/2` elements.
pub fn check_target_structure(d: &PermGroup, spec: &MetacyclicSpec) -> Result<TargetReport> {
    let fail = |m: String| Err(Error::TargetStructure(m));
    if d.order() != spec.order() {
        return fail(format!("|D| = {} but p^n q = {}", d.order(), spec.order()));
    }
    let chain = chain_report(d, spec.p)?;
    if !chain.is_chain {
        return fail("normal subgroups are not a chain".into());
    }
    if !chain.proper_are_p_groups {
        return fail("a proper normal subgroup is not a p-group".into());
    }
    let a = sylow(d, spec.p)?;
    let b = sylow(d, spec.q)?;
    let elements = a.elements()?;
    let Some(gen) = elements.iter().find(|x| x.order() == a.order()) else {
        return fail("the Sylow p-subgroup is not cyclic".into());
    };
    let centralizer_order = centralizer_in(&a, &b)?.order();
    if centralizer_order != 1 {
        return fail(format!("C_A(B) has order {centralizer_order}"));
    }
    let b_elements = b.elements()?;
    let mut union: HashSet<Permutation> = HashSet::new();
    let mut conj = Permutation::identity(d.degree());
    for _ in 0..a.order() {
        for y in b_elements.iter() {
            union.insert(y.conjugate_by(&conj));
        }
        conj = conj.then(gen);
    }
    let conjugate_union = union.len() as u64;
    let conjugate_bound = 1 + spec.modulus() * (spec.q - 1);
    if conjugate_union != conjugate_bound {
        return fail(format!(
            "conjugates of B cover {conjugate_union} elements, expected {conjugate_bound}"
        ));
    }
    if 2 * conjugate_bound <= spec.order() {
        return fail("conjugate union does not exceed |D|/2".into());
    }
    Ok(TargetReport {
        chain,
        centralizer_order,
        conjugate_union,
        conjugate_bound,
    })
}
