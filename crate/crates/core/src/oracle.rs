//! Brute-force ground truth: direct section search, enumeration of section
//! configurations inside a product, and the sweep that runs the pipeline
//! against the oracle on every configuration.

use std::collections::{BTreeSet, HashMap};
use std::time::{Duration, Instant};

use crate::analysis::{normal_subgroups, subgroups_up_to_conjugacy};
use crate::caps::caps;
use crate::catalog::CatalogEntry;
use crate::construct::{quotient, DirectProduct, MetacyclicSpec, Side, Target};
use crate::error::{Error, Result};
use crate::formats::WitnessFile;
use crate::group::PermGroup;
use crate::iso::is_isomorphic;
use crate::par::{self, Execution};
use crate::perm::Permutation;
use crate::pipeline::{run_pipeline, FindTReport, SectionConfig};
use crate::witness::{verify_witness, Section, Verdict};

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub found: bool,
    pub witness: Option<Section>,
    pub subgroups_examined: usize,
    pub elapsed: Duration,
}

/// Searches `K/N ≅ D` over one subgroup `K` per conjugacy class of `X`.
///
/// If `K/N ≅ D` then `K^g/N^g ≅ D` for every `g ∈ X`, so one representative
/// per class of `K` loses nothing.
pub fn is_section_bruteforce(d: &PermGroup, x: &PermGroup) -> Result<OracleReport> {
    let start = Instant::now();
    let d_order = d.order();
    let classes = subgroups_up_to_conjugacy(x, Some(&|o| o % d_order == 0))?;
    let mut examined = 0;
    for k in &classes {
        examined += 1;
        let index_order = k.order() / d_order;
        for n in normal_subgroups(k)?.iter().filter(|n| n.order() == index_order) {
            let q = quotient(k, n)?;
            let Some(iso) = is_isomorphic(q.group(), d)?.witness else {
                continue;
            };
            let pairs = k
                .generators()
                .iter()
                .map(|g| Ok((g.clone(), iso.apply(&q.map(g)?)?)))
                .collect::<Result<Vec<_>>>()?;
            return Ok(OracleReport {
                found: true,
                witness: Some(Section {
                    k: k.clone(),
                    n: n.clone(),
                    iso: pairs,
                }),
                subgroups_examined: examined,
                elapsed: start.elapsed(),
            });
        }
    }
    Ok(OracleReport {
        found: false,
        witness: None,
        subgroups_examined: examined,
        elapsed: start.elapsed(),
    })
}

/// Exact necessary conditions for `D` to be a section of `F`: `|D|`
/// divides `|F|`, and every element order of `D` divides some element
/// order of `F`.
fn section_possible(d: &PermGroup, f: &PermGroup) -> Result<bool> {
    if !f.order().is_multiple_of(d.order()) {
        return Ok(false);
    }
    let f_orders: BTreeSet<u64> = f.elements()?.iter().map(Permutation::order).collect();
    let d_orders: BTreeSet<u64> = d.elements()?.iter().map(Permutation::order).collect();
    Ok(d_orders.iter().all(|&m| f_orders.iter().any(|&o| o % m == 0)))
}

/// `(|G|, |H|, G, H)` with `G` and `H` as element indices.
type ConfigKey = (usize, usize, Vec<u32>, Vec<u32>);

/// Section configurations `(G, H)` in `F = X × Y` with `G/H ≅ D`, one per
/// `F`-conjugacy class of pairs, sorted by `(|G|, |H|, elements)` and
/// thinned to `limit` evenly spaced entries.
pub fn enumerate_section_configs(
    dp: &DirectProduct,
    target: &Target,
    limit: usize,
) -> Result<Vec<SectionConfig>> {
    let f = dp.f();
    let cap = caps().config;
    if f.order() > cap {
        return Err(Error::cap("section configuration", f.order(), cap));
    }
    if limit == 0 || !section_possible(&target.d, f)? {
        return Ok(Vec::new());
    }
    let d_order = target.order() as usize;
    let t = f.table()?;
    let whole = t.whole();
    let mut found: Vec<(ConfigKey, SectionConfig)> = Vec::new();
    for g_set in t.subgroup_classes(&whole) {
        if g_set.order() % d_order != 0 {
            continue;
        }
        let h_order = g_set.order() / d_order;
        let normalizer = t.normalizer(&whole, &g_set);
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
        for h_set in t.normal_subgroups(&g_set) {
            if h_set.order() != h_order {
                continue;
            }
            let canonical = normalizer
                .elements()
                .iter()
                .map(|&n| {
                    let mut v: Vec<u32> = h_set.elements().iter().map(|&x| t.conj(x, n)).collect();
                    v.sort_unstable();
                    v
                })
                .min()
                .unwrap();
            if !seen.insert(canonical) {
                continue;
            }
            let g = t.to_group(&g_set);
            let h = t.to_group(&h_set);
            match SectionConfig::new(dp.clone(), g, h, target.clone()) {
                Ok(cfg) => {
                    let key = (
                        g_set.order(),
                        h_set.order(),
                        g_set.elements().to_vec(),
                        h_set.elements().to_vec(),
                    );
                    found.push((key, cfg));
                }
                Err(Error::InvalidConfig(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    let total = found.len();
    let picked: Vec<SectionConfig> = if total <= limit {
        found.into_iter().map(|(_, c)| c).collect()
    } else {
        let wanted: BTreeSet<usize> = (0..limit).map(|i| i * total / limit).collect();
        found
            .into_iter()
            .enumerate()
            .filter(|(i, _)| wanted.contains(i))
            .map(|(_, (_, c))| c)
            .collect()
    };
    Ok(picked)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Pipeline failure, invalid witness, or a side the oracle rejects.
    Discrepancy(String),
}

#[derive(Debug, Clone)]
pub struct SweepRecord {
    pub pair: String,
    pub config_id: usize,
    pub pipeline_side: Option<Side>,
    pub oracle_sides: Vec<Side>,
    pub status: Status,
    /// Rendered witness file, when the pipeline produced one.
    pub witness: Option<String>,
    pub find_t: Option<FindTReport>,
}

impl SweepRecord {
    /// `pair,config-id,pipeline-side,oracle-sides,status`.
    pub fn line(&self) -> String {
        let side = self
            .pipeline_side
            .map_or_else(|| "-".to_string(), |s| s.to_string());
        let oracle: String = if self.oracle_sides.is_empty() {
            "-".into()
        } else {
            self.oracle_sides.iter().map(|s| s.to_string()).collect()
        };
        let status = match &self.status {
            Status::Ok => "ok".to_string(),
            Status::Discrepancy(m) => format!("discrepancy:{}", m.replace(',', ";")),
        };
        format!("{},{},{},{},{}", self.pair, self.config_id, side, oracle, status)
    }
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub records: Vec<SweepRecord>,
    pub pairs_examined: usize,
    /// Pairs whose product exceeds the configuration cap.
    pub skipped_pairs: Vec<String>,
}

impl SweepReport {
    pub fn discrepancies(&self) -> Vec<&SweepRecord> {
        self.records.iter().filter(|r| r.status != Status::Ok).collect()
    }

    pub fn find_t_reports(&self) -> impl Iterator<Item = &FindTReport> {
        self.records.iter().filter_map(|r| r.find_t.as_ref())
    }

    /// One record per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.line());
            out.push('\n');
        }
        out
    }
}

enum PairOutcome {
    Skipped(String),
    Records(Vec<SweepRecord>),
}

/// Runs the pipeline on every enumerated configuration of every pair and
/// checks each witness and its side against the oracle. When both
/// catalogs are the same list only unordered pairs are visited.
pub fn theorem_sweep(
    catalog_x: &[CatalogEntry],
    catalog_y: &[CatalogEntry],
    spec: MetacyclicSpec,
    limit: usize,
    exec: Execution,
) -> Result<SweepReport> {
    let target = Target::new(spec);
    let same =
        catalog_x.len() == catalog_y.len() && catalog_x.iter().zip(catalog_y).all(|(a, b)| a.name == b.name);
    let mut pairs: Vec<(&CatalogEntry, &CatalogEntry)> = Vec::new();
    for (i, x) in catalog_x.iter().enumerate() {
        for (j, y) in catalog_y.iter().enumerate() {
            if !same || i <= j {
                pairs.push((x, y));
            }
        }
    }

    let mut distinct: Vec<&CatalogEntry> = Vec::new();
    for e in catalog_x.iter().chain(catalog_y) {
        if !distinct.iter().any(|d| d.name == e.name) {
            distinct.push(e);
        }
    }
    let oracle_results = par::map(exec, &distinct, |e| {
        (
            e.name.clone(),
            is_section_bruteforce(&target.d, &e.group).map(|r| r.found),
        )
    });
    let oracle: HashMap<String, Result<bool>> = oracle_results.into_iter().collect();

    let outcomes = par::map(exec, &pairs, |&(x, y)| sweep_pair(x, y, &target, limit, &oracle));
    let mut report = SweepReport::default();
    for outcome in outcomes {
        match outcome? {
            PairOutcome::Skipped(name) => report.skipped_pairs.push(name),
            PairOutcome::Records(r) => {
                report.pairs_examined += 1;
                report.records.extend(r);
            }
        }
    }
    Ok(report)
}

fn sweep_pair(
    x: &CatalogEntry,
    y: &CatalogEntry,
    target: &Target,
    limit: usize,
    oracle: &HashMap<String, Result<bool>>,
) -> Result<PairOutcome> {
    let pair = format!("{}/{}", x.name, y.name);
    if x.group.order() * y.group.order() > caps().config {
        return Ok(PairOutcome::Skipped(pair));
    }
    let dp = DirectProduct::new(x.group.clone(), y.group.clone());
    let configs = enumerate_section_configs(&dp, target, limit)?;
    let mut oracle_sides = Vec::new();
    let mut oracle_error = None;
    for (side, e) in [(Side::X, x), (Side::Y, y)] {
        match &oracle[&e.name] {
            Ok(true) => oracle_sides.push(side),
            Ok(false) => {}
            Err(err) => oracle_error = Some(format!("oracle on {}: {err}", e.name)),
        }
    }
    let mut records = Vec::with_capacity(configs.len());
    for (id, cfg) in configs.iter().enumerate() {
        let mut rec = SweepRecord {
            pair: pair.clone(),
            config_id: id,
            pipeline_side: None,
            oracle_sides: oracle_sides.clone(),
            status: Status::Ok,
            witness: None,
            find_t: None,
        };
        match run_pipeline(cfg) {
            Err(e) => rec.status = Status::Discrepancy(format!("pipeline: {e}")),
            Ok(run) => {
                let side = run.witness.side;
                rec.pipeline_side = Some(side);
                let side_group = cfg.dp().side(side);
                let file = WitnessFile::new(
                    &run.witness.section,
                    Some(side),
                    side_group,
                    Some(if side == Side::X { &x.name } else { &y.name }),
                    &target.d,
                    Some(run.trace.digest()),
                );
                rec.witness = Some(file.render());
                rec.find_t = run.find_t;
                if let Verdict::Invalid(reason) = verify_witness(&run.witness.section, side_group, &target.d)
                {
                    rec.status = Status::Discrepancy(format!("witness rejected: {reason}"));
                } else if let Some(e) = &oracle_error {
                    rec.status = Status::Discrepancy(e.clone());
                } else if !oracle_sides.contains(&side) {
                    rec.status = Status::Discrepancy(format!("oracle finds no section in {side}"));
                }
            }
        }
        records.push(rec);
    }
    Ok(PairOutcome::Records(records))
}
