//! Section certificates and their independent verification.

use std::fmt;

use crate::construct::{quotient, Side};
use crate::error::Result;
use crate::group::PermGroup;
use crate::hom::GroupHom;
use crate::perm::Permutation;

/// `K/N ≅ D` inside some group: `N ⊴ K`, and `iso` lists pairs
/// `(k, d)` meaning `kN ↦ d`.
#[derive(Clone, Debug)]
pub struct Section {
    pub k: PermGroup,
    pub n: PermGroup,
    pub iso: Vec<(Permutation, Permutation)>,
}

/// A section of one factor of the original direct product.
#[derive(Clone, Debug)]
pub struct SectionWitness {
    pub side: Side,
    pub section: Section,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    Degree,
    Containment,
    Normality,
    Index,
    IsoNotGenerating,
    IsoNotHom,
    IsoNotBijective,
    /// The check itself exceeded a size cap.
    Cap,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::Degree => "degree",
            Reason::Containment => "containment",
            Reason::Normality => "normality",
            Reason::Index => "index",
            Reason::IsoNotGenerating => "iso-not-generating",
            Reason::IsoNotHom => "iso-not-hom",
            Reason::IsoNotBijective => "iso-not-bijective",
            Reason::Cap => "cap",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(Reason),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

/// Rechecks a section from scratch: `K ≤ ambient`, `N ⊴ K`,
/// `|K:N| = |D|`, the listed representatives generate `K` modulo `N`, and
/// `kN ↦ d` extends to a bijective homomorphism `K/N → D`.
pub fn verify_witness(section: &Section, ambient: &PermGroup, d: &PermGroup) -> Verdict {
    match check(section, ambient, d) {
        Ok(v) => v,
        Err(_) => Verdict::Invalid(Reason::Cap),
    }
}

fn check(s: &Section, ambient: &PermGroup, d: &PermGroup) -> Result<Verdict> {
    use Reason::*;
    let bad = |r| Ok(Verdict::Invalid(r));
    let deg = ambient.degree();
    let k_ok = s.k.degree() == deg && s.n.degree() == deg;
    let reps_ok = s
        .iso
        .iter()
        .all(|(k, img)| k.degree() == deg && img.degree() == d.degree());
    if !k_ok || !reps_ok {
        return bad(Degree);
    }
    if !s.k.is_subgroup_of(ambient) || !s.n.is_subgroup_of(&s.k) {
        return bad(Containment);
    }
    if !s.n.is_normal_in(&s.k) {
        return bad(Normality);
    }
    if s.n.order() * d.order() != s.k.order() {
        return bad(Index);
    }
    if !s.iso.iter().all(|(k, _)| s.k.has(k)) {
        return bad(Containment);
    }
    let reps: Vec<Permutation> = s.iso.iter().map(|(k, _)| k.clone()).collect();
    let spanned = s.n.with_generators(&reps);
    if spanned.order() != s.k.order() {
        return bad(IsoNotGenerating);
    }
    if !s.iso.iter().all(|(_, img)| d.has(img)) {
        return bad(IsoNotHom);
    }
    // Quotient generators are the images of `spanned`'s generators: first
    // those of N (trivial), then the representatives.
    let q = quotient(&spanned, &s.n)?;
    let images: Vec<Permutation> =
        std::iter::repeat_n(Permutation::identity(d.degree()), s.n.generators().len())
            .chain(s.iso.iter().map(|(_, img)| img.clone()))
            .collect();
    let Ok(hom) = GroupHom::new(q.group().clone(), d.clone(), images) else {
        return bad(IsoNotHom);
    };
    if !hom.is_bijective() {
        return bad(IsoNotBijective);
    }
    Ok(Verdict::Valid)
}
