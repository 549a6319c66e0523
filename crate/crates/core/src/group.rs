//! Permutation groups given by generators.
//!
//! A [`PermGroup`] is an immutable value. Its stabilizer chain, sorted
//! element list and Cayley table are computed on first use and cached in
//! `OnceLock`s, so concurrent readers see either nothing or a complete
//! cache. Cloning is cheap.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use crate::caps::caps;
use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::table::ElementTable;

#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

struct Inner {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<StabChain>,
    elements: OnceLock<Arc<Vec<Permutation>>>,
    table: OnceLock<Arc<ElementTable>>,
}

impl PermGroup {
    /// Group generated by `gens`, all of which must have degree `degree`.
    /// Generators are kept exactly as given (identities included), which
    /// keeps homomorphisms defined by generator images aligned.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                found: 0,
            });
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        Ok(Self::from_trusted(degree, gens))
    }

    pub(crate) fn from_trusted(degree: usize, gens: Vec<Permutation>) -> Self {
        PermGroup {
            inner: Arc::new(Inner {
                degree,
                gens,
                chain: OnceLock::new(),
                elements: OnceLock::new(),
                table: OnceLock::new(),
            }),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_trusted(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.gens
    }

    fn chain(&self) -> &StabChain {
        self.inner
            .chain
            .get_or_init(|| StabChain::build(self.inner.degree, &self.inner.gens))
    }

    pub fn order(&self) -> u64 {
        self.chain().order()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain().base()
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.gens.iter().all(|g| g.is_identity())
    }

    /// Membership test by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: p.degree(),
            });
        }
        Ok(self.chain().contains(p))
    }

    /// Membership test that treats a degree mismatch as "not a member".
    pub fn has(&self, p: &Permutation) -> bool {
        self.contains(p).unwrap_or(false)
    }

    /// Sorted element list, limited by the enumeration cap.
    pub fn elements(&self) -> Result<Arc<Vec<Permutation>>> {
        self.elements_capped(caps().enumeration)
    }

    pub fn elements_capped(&self, cap: u64) -> Result<Arc<Vec<Permutation>>> {
        if let Some(e) = self.inner.elements.get() {
            return Ok(e.clone());
        }
        let order = self.order();
        if order > cap {
            return Err(Error::cap("enumeration", order, cap));
        }
        Ok(self
            .inner
            .elements
            .get_or_init(|| {
                let mut e = self.chain().enumerate();
                e.sort_unstable();
                Arc::new(e)
            })
            .clone())
    }

    /// Cayley table, limited by the table cap.
    pub fn table(&self) -> Result<Arc<ElementTable>> {
        if let Some(t) = self.inner.table.get() {
            return Ok(t.clone());
        }
        let order = self.order();
        let cap = caps().table;
        if order > cap {
            return Err(Error::cap("table", order, cap));
        }
        let elements = self.elements()?;
        Ok(self
            .inner
            .table
            .get_or_init(|| Arc::new(ElementTable::build(self, &elements)))
            .clone())
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree() && self.inner.gens.iter().all(|g| other.has(g))
    }

    /// Equality as sets of permutations.
    pub fn same_as(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// `self ⊴ other`.
    pub fn is_normal_in(&self, other: &PermGroup) -> bool {
        self.is_subgroup_of(other)
            && other
                .inner
                .gens
                .iter()
                .all(|g| self.inner.gens.iter().all(|x| self.has(&x.conjugate_by(g))))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.inner.gens;
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Subgroup generated by these generators together with `extra`.
    pub fn with_generators(&self, extra: &[Permutation]) -> PermGroup {
        let mut gens = self.inner.gens.clone();
        gens.extend_from_slice(extra);
        PermGroup::from_trusted(self.degree(), gens)
    }

    /// Same group, with generators that lie in the span of earlier ones
    /// removed.
    pub fn reduced(&self) -> PermGroup {
        let mut kept: Vec<Permutation> = Vec::new();
        let mut current = PermGroup::trivial(self.degree());
        for g in &self.inner.gens {
            if !current.has(g) {
                kept.push(g.clone());
                current = PermGroup::from_trusted(self.degree(), kept.clone());
            }
        }
        current
    }

    /// Orbit of `point`, in breadth-first discovery order.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut i = 0;
        while i < orbit.len() {
            for g in &self.inner.gens {
                let y = g.apply(orbit[i]);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit
    }

    /// Point orbits, ordered by least point, each sorted.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for p in 0..self.degree() {
            if seen[p] {
                continue;
            }
            let mut o = self.orbit(p);
            for &x in &o {
                seen[x] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    /// Orbits of the group on a finite set of objects under a right action.
    ///
    /// The action is checked: the identity must fix every object, images
    /// must stay inside the object set, and `(x·g)·h = x·(gh)` is verified
    /// on every object for every ordered pair of generators. Orbits are
    /// ordered by their least object (under `Ord`) and each orbit is sorted.
    pub fn orbits_on<T, F>(&self, objects: &[T], action: F) -> Result<Vec<Vec<T>>>
    where
        T: Clone + Eq + Hash + Ord,
        F: Fn(&T, &Permutation) -> T,
    {
        let id = Permutation::identity(self.degree());
        let members: HashSet<&T> = objects.iter().collect();
        for x in objects {
            if action(x, &id) != *x {
                return Err(Error::internal("orbits_on", "identity moves an object"));
            }
        }
        let gens: Vec<&Permutation> = self.inner.gens.iter().collect();
        for x in objects {
            for g in &gens {
                let xg = action(x, g);
                if !members.contains(&xg) {
                    return Err(Error::internal("orbits_on", "action leaves the object set"));
                }
                for h in &gens {
                    if action(&xg, h) != action(x, &g.then(h)) {
                        return Err(Error::internal("orbits_on", "action is not compatible"));
                    }
                }
            }
        }
        let mut sorted: Vec<T> = objects.to_vec();
        sorted.sort();
        sorted.dedup();
        let position: HashMap<T, usize> = sorted.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let mut seen = vec![false; sorted.len()];
        let mut out = Vec::new();
        for start in 0..sorted.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![sorted[start].clone()];
            let mut queue = VecDeque::from([sorted[start].clone()]);
            while let Some(x) = queue.pop_front() {
                for g in &gens {
                    let y = action(&x, g);
                    let k = position[&y];
                    if !seen[k] {
                        seen[k] = true;
                        orbit.push(y.clone());
                        queue.push_back(y);
                    }
                }
            }
            orbit.sort();
            out.push(orbit);
        }
        Ok(out)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, gens [", self.degree())?;
        for (i, g) in self.inner.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    /// Closure by repeated right multiplication; independent of the chain.
    fn brute_closure(g: &PermGroup) -> HashSet<Permutation> {
        let mut seen = HashSet::new();
        let id = Permutation::identity(g.degree());
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for s in g.generators() {
                let y = x.then(s);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn symmetric_group_order_by_closure() {
        let s4 = PermGroup::new(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        assert_eq!(brute_closure(&s4).len(), 24);
        assert_eq!(s4.order(), 24);
        assert_eq!(PermGroup::trivial(3).order(), 1);
    }

    #[test]
    fn membership_cases() {
        let c3 = PermGroup::new(3, vec![cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert!(c3.contains(&cyc(3, &[&[0, 2, 1]])).unwrap());
        assert!(!c3.contains(&cyc(3, &[&[0, 1]])).unwrap());
        assert!(c3.contains(&Permutation::identity(3)).unwrap());
        assert!(c3.contains(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn elements_are_sorted_and_capped() {
        let g = PermGroup::new(2, vec![cyc(2, &[&[0, 1]])]).unwrap();
        let e = g.elements().unwrap();
        assert_eq!(e.as_slice(), &[Permutation::identity(2), cyc(2, &[&[0, 1]])]);
        let trivial = PermGroup::trivial(5);
        assert_eq!(trivial.elements().unwrap().len(), 1);
        let s5 = crate::construct::symmetric(5);
        assert!(matches!(s5.elements_capped(100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn point_orbits() {
        let c3 = PermGroup::new(3, vec![cyc(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(c3.orbits(), vec![vec![0, 1, 2]]);
        let t = PermGroup::trivial(3);
        assert_eq!(t.orbits(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn object_orbits_with_bad_action_rejected() {
        let c2 = PermGroup::new(2, vec![cyc(2, &[&[0, 1]])]).unwrap();
        let objects = vec![0u8, 1u8];
        let err = c2.orbits_on(&objects, |x, _| *x + 1);
        assert!(err.is_err());
    }

    #[test]
    fn degree_checked_on_construction() {
        assert!(PermGroup::new(3, vec![Permutation::identity(4)]).is_err());
    }
}
