//! Permutations of `0..degree`.
//!
//! Composition is apply-left-first throughout the crate: `p.then(&q)` (and
//! `&p * &q`) sends `x` to `q(p(x))`. Group actions are right actions, so
//! the image of a point `b` under `g` is written `g.apply(b)` and conjugation
//! is `x^g = g⁻¹·x·g`.
//!
//! The derived `Ord` compares image sequences lexicographically. This is
//! the element ordering used for every deterministic tie-break; the
//! identity is the least permutation of each degree.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &x in &images {
            let x = x as usize;
            if x >= degree || seen[x] {
                return Err(Error::NotBijective { degree });
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles over `0..degree`.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= degree || used[x] {
                    return Err(Error::NotBijective { degree });
                }
                used[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`. Panics on degree mismatch; see
    /// [`Permutation::compose`] for the checked form.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in then()");
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    /// Checked composition: the result maps `x` to `other(self(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `other⁻¹ · self · other`.
    pub fn conjugate_by(&self, other: &Permutation) -> Permutation {
        other.inverse().then(self).then(other)
    }

    /// `self⁻¹ · other⁻¹ · self · other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse().then(&self.conjugate_by(other))
    }

    pub fn pow(&self, mut exp: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            exp >>= 1;
        }
        acc
    }

    /// Element order, the lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }

    /// Least point moved, if any.
    pub fn first_moved(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.apply(i) != i)
    }

    /// Restriction to the points `offset..offset+len`, relabelled to `0..len`.
    /// The block must be invariant.
    pub fn restrict(&self, offset: usize, len: usize) -> Permutation {
        let images = (offset..offset + len)
            .map(|x| {
                let y = self.apply(x);
                debug_assert!((offset..offset + len).contains(&y));
                (y - offset) as u32
            })
            .collect();
        Permutation { images }
    }

    /// Places `self` on the points `offset..offset+self.degree()` of a
    /// permutation of degree `total`, fixing everything else.
    pub fn shift(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Permutation { images }
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / crate::arith::gcd(a, b) * b
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    #[test]
    fn apply_left_first_canary() {
        // (0 1) then (1 2): 0->1->2, 1->0->0, 2->2->1, i.e. (0 2 1).
        let p = cyc(3, &[&[0, 1]]);
        let q = cyc(3, &[&[1, 2]]);
        let r = p.compose(&q).unwrap();
        assert_eq!(r.images(), &[2, 0, 1]);
        assert_eq!(r, cyc(3, &[&[0, 2, 1]]));
        assert_eq!(&p * &q, r);
    }

    #[test]
    fn identity_and_involutions() {
        let q = cyc(4, &[&[0, 3, 1]]);
        let e = Permutation::identity(4);
        assert_eq!(e.compose(&q).unwrap(), q);
        let t = cyc(3, &[&[0, 1]]);
        assert!(t.then(&t).is_identity());
        assert_eq!(t.inverse(), t);
    }

    #[test]
    fn inverse_of_three_cycle() {
        let c = cyc(3, &[&[0, 1, 2]]);
        assert_eq!(c.inverse(), cyc(3, &[&[0, 2, 1]]));
        assert!(c.then(&c.inverse()).is_identity());
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
    }

    #[test]
    fn degree_mismatch_is_reported() {
        let a = Permutation::identity(2);
        let b = Permutation::identity(3);
        assert_eq!(
            a.compose(&b),
            Err(Error::DegreeMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn display_and_order() {
        let p = cyc(9, &[&[1, 8], &[2, 7], &[3, 6], &[4, 5]]);
        assert_eq!(p.to_string(), "(1 8)(2 7)(3 6)(4 5)");
        assert_eq!(p.order(), 2);
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert_eq!(cyc(5, &[&[0, 1], &[2, 3, 4]]).order(), 6);
    }

    #[test]
    fn identity_is_least() {
        let e = Permutation::identity(4);
        let p = cyc(4, &[&[2, 3]]);
        assert!(e < p);
    }

    #[test]
    fn shift_and_restrict_round_trip() {
        let p = cyc(3, &[&[0, 1, 2]]);
        let s = p.shift(2, 6);
        assert_eq!(s.restrict(2, 3), p);
        assert!(s.restrict(0, 2).is_identity());
    }
}
