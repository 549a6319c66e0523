//! Group constructions: standard families, the metacyclic target group,
//! direct products with their projections, coset-action quotients, and the
//! Remak embedding `G/(N1∩N2) → G/N1 × G/N2`.

use std::collections::HashMap;
use std::fmt;

use crate::arith::{is_prime, pow_mod};
use crate::caps::caps;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::GroupHom;
use crate::perm::Permutation;

pub fn cyclic(n: usize) -> PermGroup {
    assert!(n >= 1);
    let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let gen = Permutation::from_images_unchecked(images);
    if n == 1 {
        PermGroup::trivial(1)
    } else {
        PermGroup::from_trusted(n, vec![gen])
    }
}

/// Dihedral group of order `2m` acting on the `m`-gon, `m ≥ 3`.
pub fn dihedral(m: usize) -> PermGroup {
    assert!(m >= 3);
    let rot = Permutation::from_images_unchecked((0..m as u32).map(|i| (i + 1) % m as u32).collect());
    let refl = Permutation::from_images_unchecked((0..m as u32).map(|i| (m as u32 - i) % m as u32).collect());
    PermGroup::from_trusted(m, vec![rot, refl])
}

pub fn symmetric(n: usize) -> PermGroup {
    if n <= 1 {
        return PermGroup::trivial(1);
    }
    let t = Permutation::from_cycles(n, &[vec![0, 1]]).unwrap();
    if n == 2 {
        return PermGroup::from_trusted(2, vec![t]);
    }
    let c = Permutation::from_cycles(n, &[(0..n).collect()]).unwrap();
    PermGroup::from_trusted(n, vec![t, c])
}

pub fn alternating(n: usize) -> PermGroup {
    if n <= 2 {
        return PermGroup::trivial(n.max(1));
    }
    let gens = (0..n - 2)
        .map(|i| Permutation::from_cycles(n, &[vec![i, i + 1, i + 2]]).unwrap())
        .collect();
    PermGroup::from_trusted(n, gens)
}

/// Quaternion group of order 8 in its regular representation.
pub fn quaternion() -> PermGroup {
    // Elements ±1, ±i, ±j, ±k encoded as 2*unit + sign, unit ∈ {1,i,j,k}.
    const UNIT: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mul = |a: usize, b: usize| -> usize {
        let (u, neg) = UNIT[a / 2][b / 2];
        let sign = (a % 2 == 1) ^ (b % 2 == 1) ^ neg;
        2 * u + sign as usize
    };
    let right = |g: usize| Permutation::from_images_unchecked((0..8).map(|x| mul(x, g) as u32).collect());
    PermGroup::from_trusted(8, vec![right(2), right(4)])
}

/// Direct product of cyclic groups of the given orders, on disjoint points.
pub fn abelian(orders: &[usize]) -> PermGroup {
    let degree: usize = orders.iter().sum::<usize>().max(1);
    let mut gens = Vec::new();
    let mut offset = 0;
    for &m in orders {
        if m > 1 {
            let c = cyclic(m).generators()[0].clone();
            gens.push(c.shift(offset, degree));
        }
        offset += m;
    }
    PermGroup::from_trusted(degree, gens)
}

/// Parameters of `C_{p^n} ⋊ C_q` where the generator of `C_q` acts by
/// `x ↦ x^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MetacyclicSpec {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub r: u64,
}

impl MetacyclicSpec {
    pub fn new(p: u64, n: u32, q: u64, r: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidSpec(format!("p = {p} is not prime")));
        }
        if !is_prime(q) {
            return Err(Error::InvalidSpec(format!("q = {q} is not prime")));
        }
        if p == q {
            return Err(Error::InvalidSpec("p and q must differ".into()));
        }
        if n == 0 {
            return Err(Error::InvalidSpec("n must be positive".into()));
        }
        let m = p
            .checked_pow(n)
            .ok_or_else(|| Error::InvalidSpec("p^n overflows".into()))?;
        if r <= 1 || r >= m {
            return Err(Error::InvalidSpec(format!(
                "r = {r} must satisfy 1 < r < {m} (trivial action is excluded)"
            )));
        }
        if pow_mod(r, q, m) != 1 {
            return Err(Error::InvalidSpec(format!("r^{q} is not 1 mod {m}")));
        }
        Ok(MetacyclicSpec { p, n, q, r })
    }

    /// All admissible action exponents, increasing.
    pub fn valid_exponents(p: u64, n: u32, q: u64) -> Vec<u64> {
        let Some(m) = p.checked_pow(n) else {
            return Vec::new();
        };
        (2..m)
            .filter(|&r| MetacyclicSpec::new(p, n, q, r).is_ok())
            .collect()
    }

    /// The smallest admissible exponent.
    pub fn canonical(p: u64, n: u32, q: u64) -> Result<Self> {
        if !is_prime(p) || !is_prime(q) || p == q || n == 0 {
            // Reuse the precise message from `new`.
            return MetacyclicSpec::new(p, n, q, 2);
        }
        let r = *MetacyclicSpec::valid_exponents(p, n, q).first().ok_or_else(|| {
            Error::InvalidSpec(format!(
                "no r with r^{q} = 1, r != 1 mod {p}^{n}; q must divide {p}^({n}-1)*({p}-1)"
            ))
        })?;
        MetacyclicSpec::new(p, n, q, r)
    }

    /// Every valid spec (all exponents) with `p^n·q ≤ max_order`.
    pub fn enumerate(max_order: u64) -> Vec<MetacyclicSpec> {
        let mut out = Vec::new();
        for p in (2..=max_order).filter(|&p| is_prime(p)) {
            for q in (2..=max_order).filter(|&q| is_prime(q) && q != p) {
                let mut n = 1;
                while let Some(m) = p.checked_pow(n) {
                    if m * q > max_order {
                        break;
                    }
                    for r in MetacyclicSpec::valid_exponents(p, n, q) {
                        out.push(MetacyclicSpec { p, n, q, r });
                    }
                    n += 1;
                }
            }
        }
        out.sort();
        out
    }

    pub fn modulus(&self) -> u64 {
        self.p.pow(self.n)
    }

    pub fn order(&self) -> u64 {
        self.modulus() * self.q
    }
}

impl fmt::Display for MetacyclicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.p, self.n, self.q, self.r)
    }
}

/// `D = A ⋊ B` as affine maps `x ↦ r^j·x + i` on `Z/p^n`, with
/// `a: x ↦ x+1` and `b: x ↦ r·x`.
pub fn construct_metacyclic(spec: &MetacyclicSpec) -> (PermGroup, PermGroup, PermGroup) {
    let m = spec.modulus();
    let a = Permutation::from_images_unchecked((0..m).map(|x| ((x + 1) % m) as u32).collect());
    let b = Permutation::from_images_unchecked((0..m).map(|x| (x * spec.r % m) as u32).collect());
    let degree = m as usize;
    let d = PermGroup::from_trusted(degree, vec![a.clone(), b.clone()]);
    (
        d,
        PermGroup::from_trusted(degree, vec![a]),
        PermGroup::from_trusted(degree, vec![b]),
    )
}

/// The target group `D` together with its defining data.
#[derive(Clone, Debug)]
pub struct Target {
    pub spec: MetacyclicSpec,
    pub d: PermGroup,
    pub a: PermGroup,
    pub b: PermGroup,
}

impl Target {
    pub fn new(spec: MetacyclicSpec) -> Self {
        let (d, a, b) = construct_metacyclic(&spec);
        Target { spec, d, a, b }
    }

    pub fn order(&self) -> u64 {
        self.spec.order()
    }

    pub fn gen_a(&self) -> &Permutation {
        &self.d.generators()[0]
    }

    pub fn gen_b(&self) -> &Permutation {
        &self.d.generators()[1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "X",
            Side::Y => "Y",
        })
    }
}

/// `F = X × Y` realized on disjoint points: `X` moves `0..deg X`, `Y`
/// moves the next `deg Y` points.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    x: PermGroup,
    y: PermGroup,
    f: PermGroup,
}

impl DirectProduct {
    pub fn new(x: PermGroup, y: PermGroup) -> Self {
        let total = x.degree() + y.degree();
        let off = x.degree();
        let gens = x
            .generators()
            .iter()
            .map(|g| g.shift(0, total))
            .chain(y.generators().iter().map(|g| g.shift(off, total)))
            .collect();
        let f = PermGroup::from_trusted(total, gens);
        DirectProduct { x, y, f }
    }

    pub fn x(&self) -> &PermGroup {
        &self.x
    }

    pub fn y(&self) -> &PermGroup {
        &self.y
    }

    pub fn f(&self) -> &PermGroup {
        &self.f
    }

    pub fn side(&self, side: Side) -> &PermGroup {
        match side {
            Side::X => &self.x,
            Side::Y => &self.y,
        }
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn embed(&self, side: Side, p: &Permutation) -> Permutation {
        match side {
            Side::X => p.shift(0, self.degree()),
            Side::Y => p.shift(self.x.degree(), self.degree()),
        }
    }

    pub fn pair(&self, px: &Permutation, py: &Permutation) -> Permutation {
        self.embed(Side::X, px).then(&self.embed(Side::Y, py))
    }

    pub fn project(&self, side: Side, p: &Permutation) -> Permutation {
        match side {
            Side::X => p.restrict(0, self.x.degree()),
            Side::Y => p.restrict(self.x.degree(), self.y.degree()),
        }
    }

    pub fn embedding(&self, side: Side) -> Result<GroupHom> {
        let src = self.side(side).clone();
        let images = src.generators().iter().map(|g| self.embed(side, g)).collect();
        GroupHom::new(src, self.f.clone(), images)
    }

    /// `S_X` or `S_Y`: the group generated by the projected generators.
    pub fn projection_of_subgroup(&self, s: &PermGroup, side: Side) -> Result<PermGroup> {
        if !s.is_subgroup_of(&self.f) {
            return Err(Error::NotAMember);
        }
        let gens = s.generators().iter().map(|g| self.project(side, g)).collect();
        Ok(PermGroup::from_trusted(self.side(side).degree(), gens))
    }

    /// `(K1, K2)`: the elements of `G` trivial on `Y` and trivial on `X`
    /// respectively, as subgroups of `F`.
    pub fn kernel_intersections(&self, g: &PermGroup) -> Result<(PermGroup, PermGroup)> {
        if !g.is_subgroup_of(&self.f) {
            return Err(Error::NotAMember);
        }
        let t = g.table()?;
        let mut k1 = fixedbitset::FixedBitSet::with_capacity(t.len());
        let mut k2 = fixedbitset::FixedBitSet::with_capacity(t.len());
        for (i, e) in t.elements().iter().enumerate() {
            if self.project(Side::Y, e).is_identity() {
                k1.insert(i);
            }
            if self.project(Side::X, e).is_identity() {
                k2.insert(i);
            }
        }
        Ok((
            t.to_group(&t.from_closed_set(k1)),
            t.to_group(&t.from_closed_set(k2)),
        ))
    }

    /// The part of `S ≤ F` lying in the given factor, as a subgroup of that
    /// factor: `{x : (x,1) ∈ S}` for `Side::X`.
    pub fn factor_part(&self, s: &PermGroup, side: Side) -> Result<PermGroup> {
        let t = s.table()?;
        let other = side.other();
        let mut bits = fixedbitset::FixedBitSet::with_capacity(t.len());
        for (i, e) in t.elements().iter().enumerate() {
            if self.project(other, e).is_identity() {
                bits.insert(i);
            }
        }
        let sub = t.from_closed_set(bits);
        let gens = sub
            .gens()
            .iter()
            .map(|&i| self.project(side, t.element(i)))
            .collect();
        Ok(PermGroup::from_trusted(self.side(side).degree(), gens))
    }
}

pub fn direct_product(x: &PermGroup, y: &PermGroup) -> DirectProduct {
    DirectProduct::new(x.clone(), y.clone())
}

/// `G/N` realized as the action of `G` on the right cosets of `N`.
///
/// Cosets are numbered in increasing order of their least element, so coset
/// `0` is `N` itself and `reps[i]` is the least element of coset `i`.
#[derive(Clone)]
pub struct Quotient {
    source: PermGroup,
    normal: PermGroup,
    group: PermGroup,
    reps: Vec<Permutation>,
    coset_of: HashMap<Permutation, u32>,
}

impl Quotient {
    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn normal(&self) -> &PermGroup {
        &self.normal
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    pub fn coset_index(&self, g: &Permutation) -> Option<u32> {
        self.coset_of.get(g).copied()
    }

    /// Image of `g ∈ G` in the quotient.
    pub fn map(&self, g: &Permutation) -> Result<Permutation> {
        self.coset_of.get(g).ok_or(Error::NotAMember)?;
        let images = self.reps.iter().map(|r| self.coset_of[&r.then(g)]).collect();
        Ok(Permutation::from_images_unchecked(images))
    }

    /// Least element of the coset represented by a quotient element.
    pub fn preimage(&self, q: &Permutation) -> Permutation {
        self.reps[q.apply(0)].clone()
    }

    /// The image of a subgroup of `G` in the quotient.
    pub fn map_subgroup(&self, s: &PermGroup) -> Result<PermGroup> {
        let gens = s
            .generators()
            .iter()
            .map(|g| self.map(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(PermGroup::from_trusted(self.index(), gens))
    }

    /// Full preimage of a subgroup of the quotient: generated by the coset
    /// representatives of its generators together with `N`.
    pub fn preimage_subgroup(&self, s: &PermGroup) -> PermGroup {
        let gens: Vec<Permutation> = s.generators().iter().map(|q| self.preimage(q)).collect();
        self.normal.with_generators(&gens)
    }

    pub fn hom(&self) -> Result<GroupHom> {
        GroupHom::new(
            self.source.clone(),
            self.group.clone(),
            self.group.generators().to_vec(),
        )
    }
}

pub fn quotient(g: &PermGroup, n: &PermGroup) -> Result<Quotient> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let index = g.order() / n.order();
    let cap = caps().quotient;
    if index > cap {
        return Err(Error::cap("quotient index", index, cap));
    }
    let elements = g.elements()?;
    let n_elements = n.elements()?;
    let mut coset_of: HashMap<Permutation, u32> = HashMap::with_capacity(elements.len());
    let mut reps = Vec::with_capacity(index as usize);
    for x in elements.iter() {
        if coset_of.contains_key(x) {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x.clone());
        for m in n_elements.iter() {
            coset_of.insert(m.then(x), id);
        }
    }
    let gens = g
        .generators()
        .iter()
        .map(|s| Permutation::from_images_unchecked(reps.iter().map(|r| coset_of[&r.then(s)]).collect()))
        .collect();
    let group = PermGroup::from_trusted(reps.len(), gens);
    Ok(Quotient {
        source: g.clone(),
        normal: n.clone(),
        group,
        reps,
        coset_of,
    })
}

/// The Remak map `g ↦ (gN1, gN2)`.
pub struct RemakEmbedding {
    pub product: DirectProduct,
    pub first: Quotient,
    pub second: Quotient,
    /// `G/(N1∩N2)`.
    pub reduced: Quotient,
    /// The induced map `G/(N1∩N2) → G/N1 × G/N2`.
    pub embedding: GroupHom,
    /// `g ↦ (gN1, gN2)` on `G` itself.
    pub on_source: GroupHom,
}

impl RemakEmbedding {
    /// Image of `g ∈ G` in the product.
    pub fn map(&self, g: &Permutation) -> Result<Permutation> {
        Ok(self.product.pair(&self.first.map(g)?, &self.second.map(g)?))
    }

    /// The image of `G`, a subdirect product of the two factors.
    pub fn image(&self) -> PermGroup {
        self.on_source.image()
    }
}

pub fn remak_embed(g: &PermGroup, n1: &PermGroup, n2: &PermGroup) -> Result<RemakEmbedding> {
    let first = quotient(g, n1)?;
    let second = quotient(g, n2)?;
    let product = DirectProduct::new(first.group.clone(), second.group.clone());
    let images: Vec<Permutation> = first
        .group
        .generators()
        .iter()
        .zip(second.group.generators())
        .map(|(a, b)| product.pair(a, b))
        .collect();
    let meet = intersection(n1, n2)?;
    let reduced = quotient(g, &meet)?;
    let embedding = GroupHom::new(reduced.group.clone(), product.f.clone(), images.clone())?;
    let on_source = GroupHom::new(g.clone(), product.f.clone(), images)?;
    Ok(RemakEmbedding {
        product,
        first,
        second,
        reduced,
        embedding,
        on_source,
    })
}

/// Group generated greedily from an element list that is known to be a
/// subgroup; elements are scanned in the given order.
pub fn subgroup_from_elements<'a>(
    degree: usize,
    elements: impl IntoIterator<Item = &'a Permutation>,
) -> PermGroup {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut current = PermGroup::trivial(degree);
    for x in elements {
        if !current.has(x) {
            gens.push(x.clone());
            current = PermGroup::from_trusted(degree, gens.clone());
        }
    }
    current
}

pub fn intersection(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            expected: a.degree(),
            found: b.degree(),
        });
    }
    let (small, large) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let elements = small.elements()?;
    Ok(subgroup_from_elements(
        a.degree(),
        elements.iter().filter(|x| large.has(x)),
    ))
}

/// Smallest normal subgroup of `ambient` containing `s`.
pub fn normal_closure(ambient: &PermGroup, s: &PermGroup) -> Result<PermGroup> {
    if !s.is_subgroup_of(ambient) {
        return Err(Error::NotAMember);
    }
    let mut current = s.clone();
    loop {
        let mut extra: Vec<Permutation> = Vec::new();
        for g in ambient.generators() {
            for x in current.generators() {
                let y = x.conjugate_by(g);
                if !current.has(&y) && !extra.contains(&y) {
                    extra.push(y);
                }
            }
        }
        if extra.is_empty() {
            return Ok(current.reduced());
        }
        current = current.with_generators(&extra);
    }
}

/// `[A, B]`: the normal closure in `⟨A, B⟩` of the commutators of
/// generators.
pub fn commutator_subgroup(a: &PermGroup, b: &PermGroup, ambient: &PermGroup) -> Result<PermGroup> {
    if !a.is_subgroup_of(ambient) || !b.is_subgroup_of(ambient) {
        return Err(Error::NotAMember);
    }
    let joined = a.with_generators(b.generators());
    let comms: Vec<Permutation> = a
        .generators()
        .iter()
        .flat_map(|x| b.generators().iter().map(move |y| x.commutator(y)))
        .collect();
    let seed = PermGroup::from_trusted(a.degree(), comms);
    normal_closure(&joined, &seed)
}

/// `C_A(B)`: elements of `A` commuting with every generator of `B`.
pub fn centralizer_in(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let elements = a.elements()?;
    Ok(subgroup_from_elements(
        a.degree(),
        elements
            .iter()
            .filter(|x| b.generators().iter().all(|y| x.then(y) == y.then(x))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn d18() -> Target {
        Target::new(MetacyclicSpec::new(3, 2, 2, 8).unwrap())
    }

    #[test]
    fn metacyclic_d18() {
        let t = d18();
        assert_eq!(t.d.order(), 18);
        assert_eq!(t.a.order(), 9);
        assert_eq!(t.b.order(), 2);
        assert!(t.a.is_normal_in(&t.d));
        assert!(!t.d.is_abelian());
    }

    #[test]
    fn metacyclic_rejects_trivial_action() {
        assert!(MetacyclicSpec::new(3, 2, 2, 1).is_err());
        assert!(MetacyclicSpec::new(4, 1, 2, 3).is_err());
        assert!(MetacyclicSpec::new(3, 2, 3, 2).is_err());
        // q = 3 cannot act nontrivially on C4.
        assert!(MetacyclicSpec::canonical(2, 2, 3).is_err());
        assert_eq!(MetacyclicSpec::canonical(3, 2, 2).unwrap().r, 8);
        assert_eq!(MetacyclicSpec::canonical(7, 1, 3).unwrap().r, 2);
    }

    #[test]
    fn s3_from_metacyclic_matches_multiplication_table() {
        // (3,1,2,2) should be S3 acting naturally on 3 points: compare the
        // permutation sets.
        let (d, _, _) = construct_metacyclic(&MetacyclicSpec::new(3, 1, 2, 2).unwrap());
        let s3 = symmetric(3);
        let a: HashSet<_> = d.elements().unwrap().iter().cloned().collect();
        let b: HashSet<_> = s3.elements().unwrap().iter().cloned().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn direct_product_orders_and_maps() {
        let c2 = cyclic(2);
        let dp = direct_product(&c2, &c2);
        assert_eq!(dp.f().order(), 4);
        assert!(dp.f().is_abelian());
        let t = d18();
        let dp = direct_product(&t.d, &t.d);
        assert_eq!(dp.f().order(), 324);
        assert_eq!(dp.degree(), 18);
        let a = t.gen_a();
        assert_eq!(&dp.project(Side::X, &dp.embed(Side::X, a)), a);
        assert!(dp.project(Side::Y, &dp.embed(Side::X, a)).is_identity());
        let triv = direct_product(&PermGroup::trivial(1), &t.d);
        assert_eq!(triv.f().order(), 18);
    }

    #[test]
    fn projections_and_kernels() {
        let t = d18();
        let dp = direct_product(&t.d, &t.d);
        let diag = PermGroup::new(18, t.d.generators().iter().map(|g| dp.pair(g, g)).collect()).unwrap();
        assert_eq!(diag.order(), 18);
        assert!(dp.projection_of_subgroup(&diag, Side::X).unwrap().same_as(&t.d));
        let (k1, k2) = dp.kernel_intersections(&diag).unwrap();
        assert_eq!((k1.order(), k2.order()), (1, 1));

        let ex = dp.embedding(Side::X).unwrap().image();
        assert_eq!(dp.projection_of_subgroup(&ex, Side::Y).unwrap().order(), 1);
        let (k1, k2) = dp.kernel_intersections(&ex).unwrap();
        assert!(k1.same_as(&ex));
        assert_eq!(k2.order(), 1);

        let (k1, k2) = dp.kernel_intersections(dp.f()).unwrap();
        assert_eq!((k1.order(), k2.order()), (18, 18));
        assert!(dp.projection_of_subgroup(dp.f(), Side::X).unwrap().same_as(&t.d));
    }

    #[test]
    fn quotients_of_d18() {
        let t = d18();
        let q = quotient(&t.d, &t.a).unwrap();
        assert_eq!(q.group().order(), 2);
        let q1 = quotient(&t.d, &PermGroup::trivial(9)).unwrap();
        assert_eq!(q1.group().order(), 18);
        let three = PermGroup::new(9, vec![t.gen_a().pow(3)]).unwrap();
        let q3 = quotient(&t.d, &three).unwrap();
        assert_eq!(q3.group().order(), 6);
        assert!(!q3.group().is_abelian());
        let hom = q3.hom().unwrap();
        assert!(hom.kernel().same_as(&three));
        assert!(quotient(&t.d, &t.b).is_err());
    }

    #[test]
    fn quotient_preimages_are_least_coset_elements() {
        let t = d18();
        let q = quotient(&t.d, &t.a).unwrap();
        assert!(q.representatives()[0].is_identity());
        for rep in q.representatives() {
            let img = q.map(rep).unwrap();
            assert_eq!(&q.preimage(&img), rep);
        }
    }

    #[test]
    fn remak_crt_case() {
        let c6 = cyclic(6);
        let g = c6.generators()[0].clone();
        let n2 = PermGroup::new(6, vec![g.pow(3)]).unwrap();
        let n3 = PermGroup::new(6, vec![g.pow(2)]).unwrap();
        let r = remak_embed(&c6, &n2, &n3).unwrap();
        assert_eq!(r.product.f().order(), 6);
        assert!(r.on_source.is_bijective());
        assert!(r.embedding.is_injective());
    }

    #[test]
    fn remak_klein_and_diagonal() {
        let v = abelian(&[2, 2]);
        let gens = v.generators().to_vec();
        let n1 = PermGroup::new(4, vec![gens[0].clone()]).unwrap();
        let n2 = PermGroup::new(4, vec![gens[1].clone()]).unwrap();
        let r = remak_embed(&v, &n1, &n2).unwrap();
        assert!(r.on_source.is_injective());
        assert_eq!(r.image().order(), 4);

        let t = d18();
        let r = remak_embed(&t.d, &t.a, &t.a).unwrap();
        assert_eq!(r.image().order(), 2);
        assert!(r.on_source.kernel().same_as(&t.a));
        assert!(r.embedding.is_injective());
    }

    #[test]
    fn commutators_centralizers_closures() {
        let t = d18();
        let comm = commutator_subgroup(&t.a, &t.b, &t.d).unwrap();
        assert!(comm.same_as(&t.a));
        assert_eq!(centralizer_in(&t.a, &t.b).unwrap().order(), 1);
        let triv = PermGroup::trivial(9);
        assert_eq!(commutator_subgroup(&t.a, &triv, &t.d).unwrap().order(), 1);
        assert!(centralizer_in(&t.a, &triv).unwrap().same_as(&t.a));
        assert!(centralizer_in(&t.a, &t.a).unwrap().same_as(&t.a));
        let c = abelian(&[3, 3]);
        let x = PermGroup::new(6, vec![c.generators()[0].clone()]).unwrap();
        let y = PermGroup::new(6, vec![c.generators()[1].clone()]).unwrap();
        assert_eq!(commutator_subgroup(&x, &y, &c).unwrap().order(), 1);

        assert_eq!(normal_closure(&t.d, &t.b).unwrap().order(), 18);
        assert!(normal_closure(&t.d, &t.a).unwrap().same_as(&t.a));
        assert_eq!(normal_closure(&t.d, &triv).unwrap().order(), 1);
    }

    #[test]
    fn families() {
        assert_eq!(quaternion().order(), 8);
        assert!(!quaternion().is_abelian());
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(symmetric(5).order(), 120);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(abelian(&[2, 6]).order(), 12);
        assert_eq!(cyclic(1).order(), 1);
    }
}
