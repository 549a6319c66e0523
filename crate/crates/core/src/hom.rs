use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::table::ElementTable;

/// A homomorphism given by the images of the source's generators.
///
/// Construction walks the right Cayley graph of the source and checks that
/// `φ(x·s) = φ(x)·φ(s)` on every edge. That is exactly the condition for
/// the generator assignment to extend to a homomorphism, so a constructed
/// `GroupHom` is always well defined.
#[derive(Clone)]
pub struct GroupHom {
    source: PermGroup,
    target: PermGroup,
    images: Vec<Permutation>,
    table: Arc<ElementTable>,
    values: Arc<Vec<Permutation>>,
}

impl GroupHom {
    pub fn new(source: PermGroup, target: PermGroup, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::NotHomomorphism);
        }
        for h in &images {
            if h.degree() != target.degree() {
                return Err(Error::DegreeMismatch {
                    expected: target.degree(),
                    found: h.degree(),
                });
            }
            if !target.has(h) {
                return Err(Error::NotAMember);
            }
        }
        let table = source.table()?;
        let values = extend_on_table(&table, &images, target.degree()).ok_or(Error::NotHomomorphism)?;
        Ok(GroupHom {
            source,
            target,
            images,
            table,
            values: Arc::new(values),
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn apply(&self, g: &Permutation) -> Result<Permutation> {
        let i = self.table.index_of(g).ok_or(Error::NotAMember)?;
        Ok(self.values[i as usize].clone())
    }

    pub fn kernel(&self) -> PermGroup {
        let mut set = fixedbitset::FixedBitSet::with_capacity(self.table.len());
        for (i, v) in self.values.iter().enumerate() {
            if v.is_identity() {
                set.insert(i);
            }
        }
        self.table.to_group(&self.table.from_closed_set(set))
    }

    pub fn image(&self) -> PermGroup {
        PermGroup::from_trusted(self.target.degree(), self.images.clone())
    }

    pub fn is_injective(&self) -> bool {
        self.values.iter().filter(|v| v.is_identity()).count() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// Extends generator images along the Cayley graph; `None` when some
/// relation is violated.
pub(crate) fn extend_on_table(
    table: &ElementTable,
    images: &[Permutation],
    target_degree: usize,
) -> Option<Vec<Permutation>> {
    let n = table.len();
    let mut values: Vec<Option<Permutation>> = vec![None; n];
    values[0] = Some(Permutation::identity(target_degree));
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let vx = values[x as usize].clone().unwrap();
        for (j, &s) in table.gens().iter().enumerate() {
            let y = table.mul(x, s);
            let expect = vx.then(&images[j]);
            match &values[y as usize] {
                None => {
                    values[y as usize] = Some(expect);
                    queue.push(y);
                }
                Some(v) if *v == expect => {}
                Some(_) => return None,
            }
        }
    }
    Some(values.into_iter().map(|v| v.unwrap()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cyclic, symmetric};

    #[test]
    fn sign_map_is_a_homomorphism() {
        let s3 = symmetric(3);
        let c2 = cyclic(2);
        let t = c2.generators()[0].clone();
        // Generators are (0 1) and the even 3-cycle.
        let images = vec![t.clone(), Permutation::identity(2)];
        let sign = GroupHom::new(s3.clone(), c2, images).unwrap();
        assert_eq!(sign.kernel().order(), 3);
        assert!(sign.is_surjective());
        assert!(!sign.is_injective());
    }

    #[test]
    fn inconsistent_images_rejected() {
        // (0 1 2) cannot map to an involution.
        let c3 = cyclic(3);
        let c2 = cyclic(2);
        let t = c2.generators()[0].clone();
        assert_eq!(GroupHom::new(c3, c2, vec![t]).err(), Some(Error::NotHomomorphism));
    }
}
