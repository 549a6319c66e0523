//! Isomorphism testing for small groups.
//!
//! Cheap invariants reject most non-isomorphic pairs. Otherwise a fixed
//! generating sequence of the first group is mapped, one generator at a
//! time, to candidates in the second group with matching element order and
//! class size; every partial assignment must extend to an injective
//! homomorphism on the subgroup generated so far.

use std::collections::BTreeMap;

use crate::caps::caps;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::GroupHom;
use crate::table::ElementTable;

pub struct IsoResult {
    pub isomorphic: bool,
    /// A bijective homomorphism from the first group onto the second.
    pub witness: Option<GroupHom>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub order: u64,
    pub abelian: bool,
    pub order_histogram: BTreeMap<u32, u32>,
    pub center: u64,
    pub derived: u64,
    /// Number of elements for each (element order, class size) pair.
    pub class_profile: BTreeMap<(u32, u32), u32>,
}

fn class_sizes(t: &ElementTable) -> Vec<u32> {
    let mut sizes = vec![0u32; t.len()];
    for class in t.classes(&t.whole()) {
        for &x in &class {
            sizes[x as usize] = class.len() as u32;
        }
    }
    sizes
}

pub fn fingerprint(g: &PermGroup) -> Result<Fingerprint> {
    let t = g.table()?;
    Ok(fingerprint_table(&t))
}

fn fingerprint_table(t: &ElementTable) -> Fingerprint {
    let whole = t.whole();
    let sizes = class_sizes(t);
    let mut order_histogram = BTreeMap::new();
    let mut class_profile = BTreeMap::new();
    for x in 0..t.len() as u32 {
        *order_histogram.entry(t.order_of(x)).or_insert(0) += 1;
        *class_profile
            .entry((t.order_of(x), sizes[x as usize]))
            .or_insert(0) += 1;
    }
    let center = sizes.iter().filter(|&&s| s == 1).count() as u64;
    let gens = whole.gens().to_vec();
    let comms: Vec<u32> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| t.mul(t.inv(a), t.conj(a, b)))
        .collect();
    let derived = t.normal_closure(&whole, &comms).order() as u64;
    Fingerprint {
        order: t.len() as u64,
        abelian: center == t.len() as u64,
        order_histogram,
        center,
        derived,
        class_profile,
    }
}

/// A short generating sequence: elements in decreasing order of element
/// order (ties by index), kept when they enlarge the span.
fn generating_sequence(t: &ElementTable, given: &[u32]) -> Vec<u32> {
    let reduced = t.closure(given).gens().to_vec();
    let mut by_order: Vec<u32> = (1..t.len() as u32).collect();
    by_order.sort_by(|&a, &b| t.order_of(b).cmp(&t.order_of(a)).then(a.cmp(&b)));
    let mut greedy = Vec::new();
    let mut span = t.trivial();
    for x in by_order {
        if span.order() == t.len() {
            break;
        }
        if !span.contains(x) {
            greedy.push(x);
            span = t.closure(&greedy);
        }
    }
    if reduced.len() <= greedy.len() {
        reduced
    } else {
        greedy
    }
}

pub fn is_isomorphic(g1: &PermGroup, g2: &PermGroup) -> Result<IsoResult> {
    let no = || {
        Ok(IsoResult {
            isomorphic: false,
            witness: None,
        })
    };
    let (o1, o2) = (g1.order(), g2.order());
    let cap = caps().iso;
    if o1.max(o2) > cap {
        return Err(Error::cap("isomorphism", o1.max(o2), cap));
    }
    if o1 != o2 {
        return no();
    }
    let t1 = g1.table()?;
    let t2 = g2.table()?;
    if fingerprint_table(&t1) != fingerprint_table(&t2) {
        return no();
    }
    let sizes1 = class_sizes(&t1);
    let sizes2 = class_sizes(&t2);
    let seq = generating_sequence(&t1, t1.gens());
    let candidates: Vec<Vec<u32>> = seq
        .iter()
        .map(|&x| {
            (0..t2.len() as u32)
                .filter(|&y| t2.order_of(y) == t1.order_of(x) && sizes2[y as usize] == sizes1[x as usize])
                .collect()
        })
        .collect();
    let mut chosen: Vec<u32> = Vec::with_capacity(seq.len());
    let Some(map) = search(&t1, &t2, &seq, &candidates, &mut chosen) else {
        return no();
    };
    let images = t1
        .gens()
        .iter()
        .map(|&g| t2.element(map[g as usize]).clone())
        .collect();
    let witness = GroupHom::new(g1.clone(), g2.clone(), images)?;
    debug_assert!(witness.is_bijective());
    Ok(IsoResult {
        isomorphic: true,
        witness: Some(witness),
    })
}

fn search(
    t1: &ElementTable,
    t2: &ElementTable,
    seq: &[u32],
    candidates: &[Vec<u32>],
    chosen: &mut Vec<u32>,
) -> Option<Vec<u32>> {
    let depth = chosen.len();
    if depth == seq.len() {
        return partial_map(t1, t2, seq, chosen);
    }
    for &y in &candidates[depth] {
        chosen.push(y);
        if let Some(map) = partial_map(t1, t2, &seq[..=depth], chosen) {
            if depth + 1 == seq.len() {
                return Some(map);
            }
            if let Some(full) = search(t1, t2, seq, candidates, chosen) {
                return Some(full);
            }
        }
        chosen.pop();
    }
    None
}

/// Extends `seq[i] ↦ images[i]` over `⟨seq⟩`; `None` if inconsistent or
/// not injective. Unreached entries are `u32::MAX`.
fn partial_map(t1: &ElementTable, t2: &ElementTable, seq: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let mut map = vec![u32::MAX; t1.len()];
    let mut used = vec![false; t2.len()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = map[x as usize];
        for (&s, &fs) in seq.iter().zip(images) {
            let y = t1.mul(x, s);
            let fy = t2.mul(fx, fs);
            let cur = map[y as usize];
            if cur == u32::MAX {
                if used[fy as usize] {
                    return None;
                }
                used[fy as usize] = true;
                map[y as usize] = fy;
                queue.push(y);
            } else if cur != fy {
                return None;
            }
        }
    }
    Some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{abelian, cyclic, dihedral, quaternion, symmetric, MetacyclicSpec, Target};

    #[test]
    fn d18_models_agree() {
        let t = Target::new(MetacyclicSpec::new(3, 2, 2, 8).unwrap());
        let res = is_isomorphic(&dihedral(9), &t.d).unwrap();
        assert!(res.isomorphic);
        assert!(res.witness.unwrap().is_bijective());
    }

    #[test]
    fn c6_vs_s3() {
        assert!(!is_isomorphic(&cyclic(6), &symmetric(3)).unwrap().isomorphic);
        assert!(is_isomorphic(&cyclic(6), &abelian(&[2, 3])).unwrap().isomorphic);
    }

    #[test]
    fn self_isomorphism() {
        let q = quaternion();
        let r = is_isomorphic(&q, &q).unwrap();
        assert!(r.isomorphic);
        assert!(!is_isomorphic(&q, &dihedral(4)).unwrap().isomorphic);
        assert!(
            is_isomorphic(&PermGroup::trivial(1), &PermGroup::trivial(3))
                .unwrap()
                .isomorphic
        );
    }

    #[test]
    fn iso_cap() {
        let s7 = symmetric(7);
        assert!(matches!(is_isomorphic(&s7, &s7), Err(Error::CapExceeded { .. })));
    }
}
