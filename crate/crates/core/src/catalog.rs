//! Named small groups: a generated catalog up to a given order and the
//! fixed lists used for theorem sweeps.

use crate::arith::{divisors, gcd, is_prime, pow_mod};
use crate::caps::caps;
use crate::construct::{
    abelian, alternating, construct_metacyclic, cyclic, dihedral, quaternion, symmetric, DirectProduct,
    MetacyclicSpec,
};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::iso::{fingerprint, is_isomorphic, Fingerprint};
use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: PermGroup,
}

impl CatalogEntry {
    pub fn new(name: impl Into<String>, group: PermGroup) -> Self {
        CatalogEntry {
            name: name.into(),
            group,
        }
    }
}

/// `x ↦ x + 1` and `x ↦ r·x` on `Z/m`.
pub fn affine(m: usize, r: usize) -> PermGroup {
    assert!(m >= 2 && gcd(m as u64, r as u64) == 1);
    let m32 = m as u32;
    let shift = Permutation::from_images((0..m32).map(|x| (x + 1) % m32).collect()).unwrap();
    let scale = Permutation::from_images((0..m).map(|x| (x * r % m) as u32).collect()).unwrap();
    PermGroup::new(m, vec![shift, scale]).unwrap()
}

/// `A ⋊ C2` with the involution inverting the abelian group `A` given by
/// its cyclic factors.
pub fn generalized_dihedral(orders: &[usize]) -> PermGroup {
    let base = abelian(orders);
    let degree = base.degree();
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut offset = 0;
    for &m in orders {
        for i in 0..m {
            images[offset + i] = (offset + (m - i) % m) as u32;
        }
        offset += m;
    }
    let inv = Permutation::from_images(images).unwrap();
    base.with_generators(&[inv])
}

pub fn product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    DirectProduct::new(a.clone(), b.clone()).f().clone()
}

fn abelian_name(factors: &[usize]) -> String {
    factors
        .iter()
        .map(|d| format!("C{d}"))
        .collect::<Vec<_>>()
        .join("x")
}

/// Invariant-factor lists `d1 | d2 | … | dk` with `k ≥ 2`, `d1 > 1` and
/// product `n`.
fn invariant_factor_lists(n: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 1 {
            if prefix.len() >= 2 {
                out.push(prefix.clone());
            }
            return;
        }
        for d in divisors(rem as u64).into_iter().map(|d| d as usize) {
            if d == 1 || prefix.last().is_some_and(|&l| d % l != 0) {
                continue;
            }
            let rest = rem / d;
            if rest != 1 && !rest.is_multiple_of(d) {
                continue;
            }
            prefix.push(d);
            rec(rest, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Multiplicative order of `r` modulo `m`.
fn mult_order(r: u64, m: u64) -> u64 {
    (1..=m).find(|&e| pow_mod(r, e, m) == 1).unwrap_or(m)
}

fn base_families(max: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for n in 2..=max {
        out.push(CatalogEntry::new(format!("C{n}"), cyclic(n)));
    }
    for n in 4..=max {
        for f in invariant_factor_lists(n) {
            out.push(CatalogEntry::new(abelian_name(&f), abelian(&f)));
        }
    }
    for m in 3..=max / 2 {
        let name = if m == 3 {
            "S3".to_string()
        } else {
            format!("D{}", 2 * m)
        };
        out.push(CatalogEntry::new(name, dihedral(m)));
    }
    if max >= 8 {
        out.push(CatalogEntry::new("Q8", quaternion()));
    }
    for n in 4..=max / 2 {
        for f in invariant_factor_lists(n) {
            if *f.last().unwrap() > 2 {
                out.push(CatalogEntry::new(
                    format!("Dih({})", abelian_name(&f)),
                    generalized_dihedral(&f),
                ));
            }
        }
    }
    for spec in MetacyclicSpec::enumerate(max as u64) {
        let m = spec.modulus();
        if spec.q == 2 && spec.r == m - 1 {
            continue;
        }
        let (d, _, _) = construct_metacyclic(&spec);
        out.push(CatalogEntry::new(format!("C{m}:C{}", spec.q), d));
    }
    for p in (5..=max).filter(|&p| is_prime(p as u64)) {
        let g = (2..p as u64)
            .find(|&g| mult_order(g, p as u64) == p as u64 - 1)
            .unwrap();
        for e in divisors(p as u64 - 1) {
            if e < 4 || is_prime(e) || p * e as usize > max {
                continue;
            }
            let r = pow_mod(g, (p as u64 - 1) / e, p as u64) as usize;
            out.push(CatalogEntry::new(format!("C{p}:C{e}"), affine(p, r)));
        }
    }
    let small = [
        ("A4", alternating(4)),
        ("S4", symmetric(4)),
        ("A5", alternating(5)),
        ("S5", symmetric(5)),
    ];
    for (name, g) in small {
        if g.order() as usize <= max {
            out.push(CatalogEntry::new(name, g));
        }
    }
    out
}

/// Cyclic, abelian, dihedral, generalized dihedral, metacyclic and affine
/// groups, `Q8`, symmetric and alternating groups of degree at most 5, and
/// direct products of these with a non-abelian factor, all of order at
/// most `max_order`, one per isomorphism type. Sorted by order; within an
/// order, by family in the order listed.
pub fn generate_catalog(max_order: u64) -> Result<Vec<CatalogEntry>> {
    let cap = caps().oracle;
    if max_order > cap {
        return Err(Error::cap("catalog order", max_order, cap));
    }
    let max = max_order as usize;
    let mut candidates = vec![CatalogEntry::new("C1", PermGroup::trivial(1))];
    let base = base_families(max);
    let mut products = Vec::new();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            let order = a.group.order() * b.group.order();
            if order <= max_order && (!a.group.is_abelian() || !b.group.is_abelian()) {
                products.push(CatalogEntry::new(
                    format!("{}x{}", a.name, b.name),
                    product(&a.group, &b.group),
                ));
            }
        }
    }
    candidates.extend(base);
    candidates.extend(products);
    candidates.sort_by_key(|e| e.group.order());

    let mut kept: Vec<(CatalogEntry, Fingerprint)> = Vec::new();
    for e in candidates {
        let fp = fingerprint(&e.group)?;
        let mut duplicate = false;
        for (k, kfp) in &kept {
            if *kfp == fp && is_isomorphic(&k.group, &e.group)?.isomorphic {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            kept.push((e, fp));
        }
    }
    Ok(kept.into_iter().map(|(e, _)| e).collect())
}

/// The fixed sweep list for a target: small groups with and without a
/// section isomorphic to `D`, all of order at most 100.
pub fn sweep_catalog(spec: &MetacyclicSpec) -> Result<Vec<CatalogEntry>> {
    let e = CatalogEntry::new;
    let meta = |p, n, q| construct_metacyclic(&MetacyclicSpec::canonical(p, n, q).unwrap()).0;
    let list = match (spec.p, spec.n, spec.q) {
        (3, 2, 2) => vec![
            e("C2", cyclic(2)),
            e("C3", cyclic(3)),
            e("C6", cyclic(6)),
            e("C9", cyclic(9)),
            e("C18", cyclic(18)),
            e("S3", dihedral(3)),
            e("C3xC3", abelian(&[3, 3])),
            e("D8", dihedral(4)),
            e("Q8", quaternion()),
            e("A4", alternating(4)),
            e("D18", dihedral(9)),
            e("C3xS3", product(&cyclic(3), &dihedral(3))),
            e("Dih(C3xC3)", generalized_dihedral(&[3, 3])),
            e("C2xD18", product(&cyclic(2), &dihedral(9))),
        ],
        (5, 1, 2) => vec![
            e("C2", cyclic(2)),
            e("C5", cyclic(5)),
            e("C10", cyclic(10)),
            e("S3", dihedral(3)),
            e("D10", dihedral(5)),
            e("C5xC5", abelian(&[5, 5])),
            e("D20", dihedral(10)),
            e("C5:C4", affine(5, 2)),
            e("Dih(C5xC5)", generalized_dihedral(&[5, 5])),
            e("C5xD10", product(&cyclic(5), &dihedral(5))),
            e("A5", alternating(5)),
        ],
        (7, 1, 3) => vec![
            e("C3", cyclic(3)),
            e("C7", cyclic(7)),
            e("C21", cyclic(21)),
            e("S3", dihedral(3)),
            e("C3xC3", abelian(&[3, 3])),
            e("A4", alternating(4)),
            e("C7:C3", meta(7, 1, 3)),
            e("C7:C6", affine(7, 3)),
            e("C2xC7:C3", product(&cyclic(2), &meta(7, 1, 3))),
            e("C3xC7:C3", product(&cyclic(3), &meta(7, 1, 3))),
        ],
        _ => generate_catalog((2 * spec.order()).min(caps().oracle))?,
    };
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factors_of_small_orders() {
        assert_eq!(invariant_factor_lists(4), vec![vec![2, 2]]);
        assert_eq!(invariant_factor_lists(8), vec![vec![2, 2, 2], vec![2, 4]]);
        assert_eq!(invariant_factor_lists(12), vec![vec![2, 6]]);
        assert!(invariant_factor_lists(7).is_empty());
    }

    #[test]
    fn helper_groups_have_expected_orders() {
        assert_eq!(affine(5, 2).order(), 20);
        assert_eq!(affine(7, 3).order(), 42);
        assert_eq!(generalized_dihedral(&[3, 3]).order(), 18);
        assert!(!generalized_dihedral(&[3, 3]).is_abelian());
    }

    #[test]
    fn catalog_contents() {
        let c = generate_catalog(18).unwrap();
        let names: Vec<&str> = c.iter().map(|e| e.name.as_str()).collect();
        for want in ["C18", "D18", "C3xS3", "Q8", "A4", "Dih(C3xC3)"] {
            assert!(names.contains(&want), "{want} missing from {names:?}");
        }
        // Number of groups of order n for n ≤ 18, except that C3:C4 (order
        // 12) is not built by these families and order 16 is incomplete.
        let counts = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 4, 1, 2, 1, 14, 1, 5];
        for (i, &want) in counts.iter().enumerate() {
            let n = i as u64 + 1;
            let got = c.iter().filter(|e| e.group.order() == n).count();
            if n == 16 {
                assert!(got <= want);
            } else {
                assert_eq!(got, want, "order {n}");
            }
        }
        assert_eq!(generate_catalog(1).unwrap().len(), 1);
        assert!(generate_catalog(60).unwrap().iter().any(|e| e.name == "A5"));
        assert!(generate_catalog(10_000).is_err());
    }
}
