use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::analysis::sylow_in_table;
use crate::arith::log_exact;
use crate::error::{Error, Result};
use crate::formats::parse_permutation;
use crate::group::PermGroup;
use crate::perm::Permutation;
use crate::table::{ElementTable, SubgroupSet};

use super::stages::Choices;
use super::trace::{Stage, StageRecord};
use super::SectionConfig;

/// Counting data of one search, with the exact values that the two
/// identities compare.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FindTReport {
    pub p: u64,
    pub n: u32,
    /// `|H| = p^k`.
    pub k: u32,
    pub p_order: u64,
    pub p_cyclic: bool,
    /// `|{x ∈ P : H⟨x⟩ = P}|`.
    pub generating: u64,
    /// `N_i`: number of cyclic `⟨x⟩` of order `p^{n+i}` over generating `x`.
    pub class_counts: Vec<u64>,
    pub j: usize,
    /// Number of `Q`-fixed subgroups among those of order `p^{n+j}`.
    pub fixed_points: usize,
    /// Digest of the element sets of `P`, `H` and `Q`.
    pub key: String,
}

pub struct FoundT {
    pub t: PermGroup,
    pub generator: Permutation,
    pub q: PermGroup,
    pub report: FindTReport,
    pub record: StageRecord,
}

fn digest_sets(t: &ElementTable, sets: &[&SubgroupSet]) -> String {
    let mut h = Sha256::new();
    for s in sets {
        h.update(b"|");
        for &x in s.elements() {
            for &i in t.element(x).images() {
                h.update(i.to_le_bytes());
            }
        }
    }
    hex::encode(h.finalize())
}

/// Finds a cyclic `T ≤ P` with `HT = P` and `T^Q = T`.
///
/// The subgroups `⟨x⟩` for `x` generating `P` modulo `H` are counted by
/// order; the least `j` with `q ∤ N_j` leaves a `Q`-fixed subgroup among
/// those of order `p^{n+j}`, and the one whose least generator is smallest
/// is taken.
pub fn find_t(cfg: &SectionConfig, choices: &Choices) -> Result<FoundT> {
    let stage = Stage::FindT;
    let fail = |m: String| Error::internal(stage.name(), m);
    let spec = cfg.target().spec;
    let (p, n, q) = (spec.p, spec.n, spec.q);
    let t = cfg.g().table()?;
    let whole = t.whole();
    let p_set = sylow_in_table(&t, &whole, p);
    if !t.is_normal_in(&whole, &p_set) {
        return Err(fail("the Sylow p-subgroup is not normal".into()));
    }
    let q_set = sylow_in_table(&t, &whole, q);
    if q_set.order() as u64 != q {
        return Err(fail(format!("|Q| = {} instead of {q}", q_set.order())));
    }
    let h_set = t.subgroup_of(cfg.h())?;
    let h_order = h_set.order() as u64;
    let k = log_exact(h_order, p).ok_or_else(|| fail("H is not a p-group".into()))?;
    let p_order = p_set.order() as u64;
    if p_order != p.pow(n + k) {
        return Err(fail(format!("|P| = {p_order}, expected p^(n+k)")));
    }

    // Cyclic subgroups keyed by sorted element indices, with their least
    // generating element.
    let mut omega: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    let mut generating = 0u64;
    let mut p_cyclic = false;
    for &x in p_set.elements() {
        let mut powers = vec![x];
        let mut y = x;
        while y != 0 {
            y = t.mul(y, x);
            powers.push(y);
        }
        let order = powers.len() as u64;
        p_cyclic |= order == p_order;
        let meet = powers.iter().filter(|&&z| h_set.contains(z)).count() as u64;
        if h_order * order / meet == p_order {
            generating += 1;
            powers.sort_unstable();
            omega.entry(powers).or_insert(x);
        }
    }
    let mut class_counts = vec![0u64; k as usize + 1];
    for key in omega.keys() {
        let e = log_exact(key.len() as u64, p)
            .filter(|&e| e >= n && e <= n + k)
            .ok_or_else(|| fail(format!("cyclic subgroup of order {}", key.len())))?;
        class_counts[(e - n) as usize] += 1;
    }
    let phi = |e: u32| p.pow(e - 1) * (p - 1);
    if generating != phi(n + k) {
        return Err(fail(format!("|𝒢| = {generating}, expected {}", phi(n + k))));
    }
    let sum: u64 = class_counts
        .iter()
        .enumerate()
        .map(|(i, &c)| c * phi(n + i as u32))
        .sum();
    if sum != generating {
        return Err(fail(format!("Σ N_i φ(p^(n+i)) = {sum}, expected {generating}")));
    }
    let j = class_counts
        .iter()
        .position(|&c| c % q != 0)
        .ok_or_else(|| fail("q divides every N_i".into()))?;

    let layer: Vec<Vec<u32>> = omega
        .keys()
        .filter(|key| key.len() as u64 == p.pow(n + j as u32))
        .cloned()
        .collect();
    let q_group = t.to_group(&q_set);
    let orbits = q_group.orbits_on(&layer, |s, g| {
        let gi = t.index_of(g).expect("Q lies in G");
        let mut v: Vec<u32> = s.iter().map(|&x| t.conj(x, gi)).collect();
        v.sort_unstable();
        v
    })?;
    let fixed: Vec<&Vec<u32>> = orbits.iter().filter(|o| o.len() == 1).map(|o| &o[0]).collect();
    let chosen = match choices.t.as_deref() {
        Some(text) => {
            let g = parse_permutation(text, cfg.dp().degree()).map_err(|e| Error::Replay {
                stage: stage.name(),
                detail: e.to_string(),
            })?;
            let gi = t.index_of(&g).ok_or_else(|| Error::Replay {
                stage: stage.name(),
                detail: "recorded T generator is not in G".into(),
            })?;
            let mut key: Vec<u32> = t.closure(&[gi]).elements().to_vec();
            key.sort_unstable();
            if !fixed.contains(&&key) || omega[&key] != gi {
                return Err(Error::Replay {
                    stage: stage.name(),
                    detail: "recorded T is not a Q-fixed member of the chosen layer".into(),
                });
            }
            gi
        }
        None => fixed
            .iter()
            .map(|key| omega[*key])
            .min()
            .ok_or_else(|| fail("no Q-fixed cyclic subgroup".into()))?,
    };
    let generator = t.element(chosen).clone();
    let report = FindTReport {
        p,
        n,
        k,
        p_order,
        p_cyclic,
        generating,
        class_counts: class_counts.clone(),
        j,
        fixed_points: fixed.len(),
        key: digest_sets(&t, &[&p_set, &h_set, &q_set]),
    };
    let counts = class_counts
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",");
    let o = cfg.orders();
    let record = StageRecord {
        stage,
        before: o,
        after: o,
        decisions: vec![
            ("generating".into(), generating.to_string()),
            ("class-counts".into(), counts),
            ("j".into(), j.to_string()),
            ("fixed-points".into(), fixed.len().to_string()),
            ("t".into(), generator.to_string()),
        ],
    };
    Ok(FoundT {
        t: PermGroup::new(cfg.dp().degree(), vec![generator.clone()])?,
        generator,
        q: q_group,
        report,
        record,
    })
}
