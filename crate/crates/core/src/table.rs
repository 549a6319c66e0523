//! Cayley tables for small permutation groups.
//!
//! Elements are indexed in increasing [`Permutation`] order, so index `0`
//! is the identity and "least index" coincides with the crate-wide element
//! ordering. Subgroups of the tabulated group are [`SubgroupSet`]s: a
//! bitset over element indices plus a generating list.

use std::collections::{HashMap, HashSet, VecDeque};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

pub struct ElementTable {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    /// Indices of the group's generators, aligned with `PermGroup::generators`.
    gens: Vec<u32>,
}

/// A subgroup of a tabulated group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupSet {
    set: FixedBitSet,
    elements: Vec<u32>,
    gens: Vec<u32>,
}

impl SubgroupSet {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.set.contains(x as usize)
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.set
    }

    pub fn is_subset_of(&self, other: &SubgroupSet) -> bool {
        self.set.is_subset(&other.set)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

impl ElementTable {
    pub(crate) fn build(group: &PermGroup, elements: &[Permutation]) -> Self {
        let n = elements.len();
        let elements: Vec<Permutation> = elements.to_vec();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let gens: Vec<u32> = group.generators().iter().map(|g| index[g]).collect();

        // Right multiplication by each generator.
        let right: Vec<Vec<u32>> = gens
            .iter()
            .map(|&g| {
                let gp = &elements[g as usize];
                elements.iter().map(|x| index[&x.then(gp)]).collect()
            })
            .collect();

        // Spanning tree of the right Cayley graph rooted at the identity.
        let mut parent: Vec<Option<(u32, usize)>> = vec![None; n];
        let mut order_bfs = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[0] = true;
        order_bfs.push(0u32);
        let mut head = 0;
        while head < order_bfs.len() {
            let x = order_bfs[head];
            head += 1;
            for (s, r) in right.iter().enumerate() {
                let y = r[x as usize];
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    parent[y as usize] = Some((x, s));
                    order_bfs.push(y);
                }
            }
        }
        debug_assert_eq!(order_bfs.len(), n);

        let mut mul = vec![0u32; n * n];
        for x in 0..n {
            let row = x * n;
            mul[row] = x as u32;
            for &y in &order_bfs[1..] {
                let (py, s) = parent[y as usize].unwrap();
                let v = mul[row + py as usize];
                mul[row + y as usize] = right[s][v as usize];
            }
        }
        let inv: Vec<u32> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let mut orders = vec![0u32; n];
        for x in 0..n {
            let mut y = x;
            let mut k = 1;
            while y != 0 {
                y = mul[y * n + x] as usize;
                k += 1;
            }
            orders[x] = k;
        }
        ElementTable {
            elements,
            index,
            mul,
            inv,
            orders,
            gens,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn gens(&self) -> &[u32] {
        &self.gens
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.elements.len() + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn order_of(&self, a: u32) -> u32 {
        self.orders[a as usize]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: u32, e: u64) -> u32 {
        let mut acc = 0;
        for _ in 0..(e % self.order_of(x) as u64) {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn whole(&self) -> SubgroupSet {
        self.closure(&self.gens)
    }

    pub fn trivial(&self) -> SubgroupSet {
        self.closure(&[])
    }

    /// Subgroup generated by `gens`. Generators that are already in the
    /// closure of the earlier ones are dropped.
    pub fn closure(&self, gens: &[u32]) -> SubgroupSet {
        let n = self.len();
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(0);
        let mut elements = vec![0u32];
        let mut kept: Vec<u32> = Vec::new();
        for &g in gens {
            if set.contains(g as usize) {
                continue;
            }
            kept.push(g);
            // Rerun the closure over every element with the enlarged list.
            let mut i = 0;
            while i < elements.len() {
                let x = elements[i];
                for &s in &kept {
                    let y = self.mul(x, s);
                    if !set.contains(y as usize) {
                        set.insert(y as usize);
                        elements.push(y);
                    }
                }
                i += 1;
            }
        }
        elements.sort_unstable();
        SubgroupSet {
            set,
            elements,
            gens: kept,
        }
    }

    pub fn join(&self, a: &SubgroupSet, extra: &[u32]) -> SubgroupSet {
        let mut gens = a.gens.clone();
        gens.extend_from_slice(extra);
        self.closure(&gens)
    }

    /// Subgroup from a set already known to be closed under multiplication.
    pub fn from_closed_set(&self, set: FixedBitSet) -> SubgroupSet {
        let mut gens = Vec::new();
        let mut current = self.trivial();
        for x in set.ones() {
            if !current.contains(x as u32) {
                gens.push(x as u32);
                current = self.closure(&gens);
            }
        }
        debug_assert_eq!(current.set, set);
        current
    }

    pub fn subgroup_of(&self, group: &PermGroup) -> Result<SubgroupSet> {
        let gens = group
            .generators()
            .iter()
            .map(|g| self.index_of(g).ok_or(Error::NotAMember))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.closure(&gens))
    }

    pub fn to_group(&self, sub: &SubgroupSet) -> PermGroup {
        let degree = self.elements[0].degree();
        let gens = sub
            .gens
            .iter()
            .map(|&g| self.elements[g as usize].clone())
            .collect();
        PermGroup::from_trusted(degree, gens)
    }

    pub fn conjugate_bits(&self, set: &FixedBitSet, g: u32) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for x in set.ones() {
            out.insert(self.conj(x as u32, g) as usize);
        }
        out
    }

    pub fn conjugate(&self, s: &SubgroupSet, g: u32) -> SubgroupSet {
        let gens: Vec<u32> = s.gens.iter().map(|&x| self.conj(x, g)).collect();
        let mut elements: Vec<u32> = s.elements.iter().map(|&x| self.conj(x, g)).collect();
        elements.sort_unstable();
        let mut set = FixedBitSet::with_capacity(self.len());
        for &x in &elements {
            set.insert(x as usize);
        }
        SubgroupSet { set, elements, gens }
    }

    pub fn is_normal_in(&self, within: &SubgroupSet, s: &SubgroupSet) -> bool {
        s.is_subset_of(within)
            && within
                .gens
                .iter()
                .all(|&g| s.gens.iter().all(|&x| s.contains(self.conj(x, g))))
    }

    pub fn normalizer(&self, within: &SubgroupSet, s: &SubgroupSet) -> SubgroupSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for &g in &within.elements {
            if s.gens.iter().all(|&x| s.contains(self.conj(x, g))) {
                set.insert(g as usize);
            }
        }
        self.from_closed_set(set)
    }

    /// Elements of `within` commuting with every element of `s`.
    pub fn centralizer(&self, within: &SubgroupSet, s: &[u32]) -> SubgroupSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for &g in &within.elements {
            if s.iter().all(|&x| self.mul(x, g) == self.mul(g, x)) {
                set.insert(g as usize);
            }
        }
        self.from_closed_set(set)
    }

    pub fn intersection(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
        let mut set = a.set.clone();
        set.intersect_with(&b.set);
        self.from_closed_set(set)
    }

    /// Smallest subgroup of `within` containing the `seed` elements and
    /// normalized by `within`.
    pub fn normal_closure(&self, within: &SubgroupSet, seed: &[u32]) -> SubgroupSet {
        let mut current = self.closure(seed);
        loop {
            let mut extra = Vec::new();
            for &g in &within.gens {
                for &x in &current.gens {
                    let y = self.conj(x, g);
                    if !current.contains(y) && !extra.contains(&y) {
                        extra.push(y);
                    }
                }
            }
            if extra.is_empty() {
                return current;
            }
            current = self.join(&current, &extra);
        }
    }

    /// Conjugacy classes of `within`, each sorted, ordered by least member.
    pub fn classes(&self, within: &SubgroupSet) -> Vec<Vec<u32>> {
        let mut seen = FixedBitSet::with_capacity(self.len());
        let mut out = Vec::new();
        for &x in &within.elements {
            if seen.contains(x as usize) {
                continue;
            }
            seen.insert(x as usize);
            let mut class = vec![x];
            let mut i = 0;
            while i < class.len() {
                let y = class[i];
                for &g in &within.gens {
                    let z = self.conj(y, g);
                    if !seen.contains(z as usize) {
                        seen.insert(z as usize);
                        class.push(z);
                    }
                }
                i += 1;
            }
            class.sort_unstable();
            out.push(class);
        }
        out
    }

    /// All normal subgroups of `within`, sorted by order then by bitset.
    ///
    /// Every normal subgroup is a union of classes, so closing the trivial
    /// group under "join with one more class" reaches all of them.
    pub fn normal_subgroups(&self, within: &SubgroupSet) -> Vec<SubgroupSet> {
        let classes = self.classes(within);
        let trivial = self.trivial();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        seen.insert(trivial.set.clone());
        let mut list = vec![trivial];
        let mut i = 0;
        while i < list.len() {
            let n = list[i].clone();
            for class in &classes {
                if n.contains(class[0]) {
                    continue;
                }
                let next = self.join(&n, class);
                if seen.insert(next.set.clone()) {
                    list.push(next);
                }
            }
            i += 1;
        }
        list.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.set.cmp(&b.set)));
        list
    }

    /// Representatives of the cyclic subgroups of `within` of prime-power
    /// order, each given by its least generator.
    pub fn prime_power_cyclics(&self, within: &SubgroupSet) -> Vec<u32> {
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut out = Vec::new();
        for &x in &within.elements {
            let o = self.order_of(x) as u64;
            if o == 1 || crate::arith::factorize(o).len() != 1 {
                continue;
            }
            let c = self.closure(&[x]);
            if seen.insert(c.set) {
                out.push(x);
            }
        }
        out
    }

    /// Least bitset in the conjugacy class of `s` under `within`, plus the
    /// whole class.
    pub fn conjugacy_orbit(&self, within: &SubgroupSet, s: &FixedBitSet) -> Vec<FixedBitSet> {
        let mut orbit = vec![s.clone()];
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        seen.insert(s.clone());
        let mut i = 0;
        while i < orbit.len() {
            for &g in &within.gens {
                let t = self.conjugate_bits(&orbit[i], g);
                if seen.insert(t.clone()) {
                    orbit.push(t);
                }
            }
            i += 1;
        }
        orbit
    }

    /// One representative per conjugacy class of subgroups of `within`.
    ///
    /// Every subgroup is a join of prime-power cyclic subgroups, so joining
    /// class representatives with every such cyclic subgroup reaches a
    /// conjugate of every subgroup, perfect ones included. Representatives
    /// are the least bitset of their class; output is sorted by order then
    /// bitset.
    pub fn subgroup_classes(&self, within: &SubgroupSet) -> Vec<SubgroupSet> {
        let cyclics = self.prime_power_cyclics(within);
        let mut known: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut reps: Vec<SubgroupSet> = Vec::new();
        let mut queue: VecDeque<usize> = VecDeque::new();

        let register = |sub: SubgroupSet,
                        known: &mut HashMap<FixedBitSet, usize>,
                        reps: &mut Vec<SubgroupSet>,
                        queue: &mut VecDeque<usize>| {
            if known.contains_key(&sub.set) {
                return;
            }
            let id = reps.len();
            let orbit = self.conjugacy_orbit(within, &sub.set);
            let least = orbit.iter().min().unwrap().clone();
            for b in orbit {
                known.insert(b, id);
            }
            let rep = if least == sub.set {
                sub
            } else {
                self.from_closed_set(least)
            };
            reps.push(rep);
            queue.push_back(id);
        };

        register(self.trivial(), &mut known, &mut reps, &mut queue);
        while let Some(id) = queue.pop_front() {
            let u = reps[id].clone();
            for &c in &cyclics {
                if u.contains(c) {
                    continue;
                }
                let v = self.join(&u, &[c]);
                register(v, &mut known, &mut reps, &mut queue);
            }
        }
        reps.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.set.cmp(&b.set)));
        reps
    }

    /// Set product `a·b` as a bitset.
    pub fn product_set(&self, a: &SubgroupSet, b: &SubgroupSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.len());
        for &x in &a.elements {
            for &y in &b.elements {
                out.insert(self.mul(x, y) as usize);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::construct::symmetric;

    #[test]
    fn table_multiplication_matches_composition() {
        let s4 = symmetric(4);
        let t = s4.table().unwrap();
        assert_eq!(t.len(), 24);
        assert!(t.element(0).is_identity());
        for a in 0..24u32 {
            for b in 0..24u32 {
                let expect = t.element(a).then(t.element(b));
                assert_eq!(t.element(t.mul(a, b)), &expect);
            }
            assert_eq!(t.mul(a, t.inv(a)), 0);
            assert_eq!(t.order_of(a) as u64, t.element(a).order());
        }
    }

    #[test]
    fn s4_normal_subgroups_and_classes() {
        let t = symmetric(4).table().unwrap();
        let whole = t.whole();
        assert_eq!(t.classes(&whole).len(), 5);
        let orders: Vec<usize> = t.normal_subgroups(&whole).iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        // S4 has 11 conjugacy classes of subgroups.
        assert_eq!(t.subgroup_classes(&whole).len(), 11);
    }
}
