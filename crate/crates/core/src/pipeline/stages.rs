use crate::analysis::{is_chain, is_p_group, normal_subgroups, sylow};
use crate::arith::{is_power_of, prime_divisors};
use crate::construct::{quotient, remak_embed, DirectProduct, Quotient, Side};
use crate::error::{Error, Result};
use crate::formats::parse_permutation;
use crate::group::PermGroup;
use crate::hom::GroupHom;
use crate::perm::Permutation;
use crate::witness::{Section, SectionWitness};

use super::find_t::FoundT;
use super::trace::{PipelineTrace, Stage, StageRecord};
use super::SectionConfig;

/// Decisions forced from a recorded trace; `None` means "decide afresh".
#[derive(Debug, Clone, Default)]
pub struct Choices {
    pub u: Option<String>,
    pub v: Option<String>,
    pub primes: Option<Vec<u64>>,
    pub t: Option<String>,
    pub side: Option<Side>,
}

impl Choices {
    pub fn from_trace(trace: &PipelineTrace) -> Result<Choices> {
        let replay_err = |stage: Stage, detail: &str| Error::Replay {
            stage: stage.name(),
            detail: detail.to_string(),
        };
        let mut c = Choices::default();
        let mut primes = Vec::new();
        for rec in &trace.stages {
            match rec.stage {
                Stage::ReduceProjections => {
                    c.u = rec.decision("u").map(str::to_string);
                    c.v = rec.decision("v").map(str::to_string);
                }
                Stage::ReduceH => match rec.decision("prime") {
                    Some("none") | None => {}
                    Some(r) => primes.push(r.parse().map_err(|_| replay_err(rec.stage, "bad prime"))?),
                },
                Stage::FindT => c.t = rec.decision("t").map(str::to_string),
                Stage::Assemble => {
                    c.side = match rec.decision("side") {
                        Some("X") => Some(Side::X),
                        Some("Y") => Some(Side::Y),
                        _ => return Err(replay_err(rec.stage, "missing side")),
                    }
                }
                Stage::ReduceKernels => {}
            }
        }
        c.primes = Some(primes);
        Ok(c)
    }
}

/// How a section of the reduced configuration's factor becomes a section
/// of the previous configuration's factor on the same side.
#[derive(Clone)]
pub enum Lift {
    /// The new factor is a subgroup of the old one.
    Inclusion,
    /// The new factor is the old one modulo a normal subgroup.
    Quotients {
        x: Option<Quotient>,
        y: Option<Quotient>,
    },
    /// The new factors are `G/K2S` and `G/K1S` for `G` inside the old
    /// product; a section is pulled back to `G` and projected.
    Remak {
        previous: DirectProduct,
        to_x: Quotient,
        to_y: Quotient,
    },
}

impl Lift {
    pub fn apply(&self, w: SectionWitness) -> Result<SectionWitness> {
        let side = w.side;
        let Section { n, iso, .. } = w.section;
        let (n, iso) = match self {
            Lift::Inclusion => (n, iso),
            Lift::Quotients { x, y } => {
                let q = match side {
                    Side::X => x,
                    Side::Y => y,
                };
                match q {
                    None => (n, iso),
                    Some(q) => {
                        let n = q.preimage_subgroup(&n).reduced();
                        let iso = iso.into_iter().map(|(k, d)| (q.preimage(&k), d)).collect();
                        (n, iso)
                    }
                }
            }
            Lift::Remak { previous, to_x, to_y } => {
                let q = match side {
                    Side::X => to_x,
                    Side::Y => to_y,
                };
                let pulled = q.preimage_subgroup(&n);
                let gens = pulled
                    .generators()
                    .iter()
                    .map(|g| previous.project(side, g))
                    .collect();
                let n = PermGroup::new(previous.side(side).degree(), gens)?.reduced();
                let iso = iso
                    .into_iter()
                    .map(|(k, d)| (previous.project(side, &q.preimage(&k)), d))
                    .collect();
                (n, iso)
            }
        };
        let reps: Vec<Permutation> = iso.iter().map(|(k, _)| k.clone()).collect();
        let k = n.with_generators(&reps);
        Ok(SectionWitness {
            side,
            section: Section { k, n, iso },
        })
    }
}

pub struct Step {
    pub config: SectionConfig,
    pub lift: Lift,
    pub record: StageRecord,
}

pub enum KernelOutcome {
    /// One of the kernels already maps isomorphically onto `D`.
    Witness {
        witness: SectionWitness,
        lift: Lift,
        record: StageRecord,
    },
    Reduced(Step),
}

fn epi_images(cfg: &SectionConfig, gens: &[Permutation]) -> Result<Vec<Permutation>> {
    gens.iter().map(|g| cfg.epi().apply(g)).collect()
}

fn restrict_epi(cfg: &SectionConfig, sub: &PermGroup) -> Result<GroupHom> {
    let images = epi_images(cfg, sub.generators())?;
    GroupHom::new(sub.clone(), cfg.target().d.clone(), images)
}

fn forced_perm(text: &Option<String>, degree: usize, stage: Stage) -> Result<Option<Permutation>> {
    text.as_deref()
        .map(|s| {
            parse_permutation(s, degree).map_err(|e| Error::Replay {
                stage: stage.name(),
                detail: e.to_string(),
            })
        })
        .transpose()
}

/// Least element of `G` mapping to `d`.
fn least_preimage(cfg: &SectionConfig, d: &Permutation) -> Result<Permutation> {
    for x in cfg.g().elements()?.iter() {
        if cfg.epi().apply(x)? == *d {
            return Ok(x.clone());
        }
    }
    Err(Error::internal(
        Stage::ReduceProjections.name(),
        "epimorphism is not surjective",
    ))
}

/// Replaces `G` by `⟨u, v⟩` for the least preimages `u`, `v` of `D`'s
/// generators, `H` by its intersection with that subgroup, and `X`, `Y` by
/// the projections of the new `G`.
pub fn reduce_projections(cfg: &SectionConfig, choices: &Choices) -> Result<Step> {
    let stage = Stage::ReduceProjections;
    let target = cfg.target();
    let (a, b) = (target.gen_a(), target.gen_b());
    let pick = |forced: &Option<String>, image: &Permutation| -> Result<Permutation> {
        match forced_perm(forced, cfg.dp().degree(), stage)? {
            Some(x) => {
                if !cfg.g().has(&x) || cfg.epi().apply(&x)? != *image {
                    return Err(Error::Replay {
                        stage: stage.name(),
                        detail: format!("{x} is not a preimage of {image}"),
                    });
                }
                Ok(x)
            }
            None => least_preimage(cfg, image),
        }
    };
    let u = pick(&choices.u, a)?;
    let v = pick(&choices.v, b)?;
    let g = PermGroup::new(cfg.dp().degree(), vec![u.clone(), v.clone()])?;
    let epi = GroupHom::new(g.clone(), target.d.clone(), vec![a.clone(), b.clone()])?;
    let x = cfg.dp().projection_of_subgroup(&g, Side::X)?;
    let y = cfg.dp().projection_of_subgroup(&g, Side::Y)?;
    let dp = DirectProduct::new(x, y);
    let config = SectionConfig::from_epi(dp, g, epi, target.clone())?;
    let record = StageRecord {
        stage,
        before: cfg.orders(),
        after: config.orders(),
        decisions: vec![("u".into(), u.to_string()), ("v".into(), v.to_string())],
    };
    Ok(Step {
        config,
        lift: Lift::Inclusion,
        record,
    })
}

/// Factors out `L_X = {x : (x,1) ∈ H}` and `L_Y`, after which `K1 ∩ H` and
/// `K2 ∩ H` are trivial. Returns a witness directly when a kernel maps
/// isomorphically onto `D`; otherwise checks that both kernels are
/// `p`-groups.
pub fn reduce_kernels(cfg: &SectionConfig) -> Result<KernelOutcome> {
    let stage = Stage::ReduceKernels;
    let fail = |m: &str| Error::internal(stage.name(), m.to_string());
    let dp = cfg.dp();
    let lx = dp.factor_part(cfg.h(), Side::X)?;
    let ly = dp.factor_part(cfg.h(), Side::Y)?;
    let qx = if lx.is_trivial() {
        None
    } else {
        Some(quotient(dp.x(), &lx)?)
    };
    let qy = if ly.is_trivial() {
        None
    } else {
        Some(quotient(dp.y(), &ly)?)
    };
    let new_x = qx.as_ref().map_or_else(|| dp.x().clone(), |q| q.group().clone());
    let new_y = qy.as_ref().map_or_else(|| dp.y().clone(), |q| q.group().clone());
    let new_dp = DirectProduct::new(new_x, new_y);
    let map_side = |q: &Option<Quotient>, side: Side, g: &Permutation| -> Result<Permutation> {
        let part = dp.project(side, g);
        match q {
            Some(q) => q.map(&part),
            None => Ok(part),
        }
    };
    let gens = cfg
        .g()
        .generators()
        .iter()
        .map(|g| Ok(new_dp.pair(&map_side(&qx, Side::X, g)?, &map_side(&qy, Side::Y, g)?)))
        .collect::<Result<Vec<_>>>()?;
    let g = PermGroup::new(new_dp.degree(), gens)?;
    let epi = GroupHom::new(
        g.clone(),
        cfg.target().d.clone(),
        cfg.epi().generator_images().to_vec(),
    )
    .map_err(|_| fail("G/H does not descend modulo L_X × L_Y"))?;
    let config = SectionConfig::from_epi(new_dp, g, epi, cfg.target().clone())?;
    let (k1, k2) = config.dp().kernel_intersections(config.g())?;

    let mut decisions = vec![
        ("kernel-x".to_string(), lx.order().to_string()),
        ("kernel-y".to_string(), ly.order().to_string()),
        ("k1".to_string(), k1.order().to_string()),
        ("k2".to_string(), k2.order().to_string()),
    ];
    let lift = Lift::Quotients { x: qx, y: qy };
    let d_order = cfg.target().order();
    for (side, k) in [(Side::X, &k1), (Side::Y, &k2)] {
        if k.order() != d_order {
            continue;
        }
        let hom = restrict_epi(&config, k)?;
        if !hom.is_bijective() {
            continue;
        }
        decisions.push(("early".into(), side.to_string()));
        let cdp = config.dp();
        let iso = k
            .generators()
            .iter()
            .zip(hom.generator_images())
            .map(|(x, d)| (cdp.project(side, x), d.clone()))
            .collect::<Vec<_>>();
        let n = PermGroup::trivial(cdp.side(side).degree());
        let reps: Vec<Permutation> = iso.iter().map(|(x, _)| x.clone()).collect();
        let witness = SectionWitness {
            side,
            section: Section {
                k: n.with_generators(&reps),
                n,
                iso,
            },
        };
        let record = StageRecord {
            stage,
            before: cfg.orders(),
            after: config.orders(),
            decisions,
        };
        return Ok(KernelOutcome::Witness {
            witness,
            lift,
            record,
        });
    }
    decisions.push(("early".into(), "none".into()));
    let p = cfg.target().spec.p;
    if !is_p_group(&k1, p) || !is_p_group(&k2, p) {
        return Err(fail("a kernel is not a p-group"));
    }
    let h = config.h();
    for k in [&k1, &k2] {
        if k.elements()?.iter().filter(|x| h.has(x)).count() != 1 {
            return Err(fail("a kernel meets H nontrivially"));
        }
    }
    let record = StageRecord {
        stage,
        before: cfg.orders(),
        after: config.orders(),
        decisions,
    };
    Ok(KernelOutcome::Reduced(Step { config, lift, record }))
}

/// One Frattini-plus-Remak pass for the prime `r`: `G` becomes `N_G(S)`
/// for a Sylow `r`-subgroup `S` of `H`, and is then mapped into
/// `G/K2S × G/K1S`, which kills `S`.
fn reduce_prime(cfg: &SectionConfig, r: u64) -> Result<Step> {
    let stage = Stage::ReduceH;
    let fail = |m: &str| Error::internal(stage.name(), m.to_string());
    let s = sylow(cfg.h(), r)?;
    let t = cfg.g().table()?;
    let s_set = t.subgroup_of(&s)?;
    let g1 = t.to_group(&t.normalizer(&t.whole(), &s_set));
    let epi1 = restrict_epi(cfg, &g1)?;
    if !epi1.is_surjective() {
        return Err(fail("Frattini argument failed: N_G(S) does not cover G/H"));
    }
    let (k1, k2) = cfg.dp().kernel_intersections(&g1)?;
    let k1s = k1.with_generators(s.generators());
    let k2s = k2.with_generators(s.generators());
    let remak = remak_embed(&g1, &k2s, &k1s)?;
    let g = remak.image();
    let epi = GroupHom::new(
        g.clone(),
        cfg.target().d.clone(),
        epi1.generator_images().to_vec(),
    )
    .map_err(|_| fail("K1S ∩ K2S is not contained in H"))?;
    let config = SectionConfig::from_epi(remak.product.clone(), g, epi, cfg.target().clone())?;
    let record = StageRecord {
        stage,
        before: cfg.orders(),
        after: config.orders(),
        decisions: vec![
            ("prime".into(), r.to_string()),
            ("sylow-order".into(), s.order().to_string()),
            ("normalizer-order".into(), g1.order().to_string()),
        ],
    };
    Ok(Step {
        config,
        lift: Lift::Remak {
            previous: cfg.dp().clone(),
            to_x: remak.first,
            to_y: remak.second,
        },
        record,
    })
}

/// Removes every prime other than `p` from `|H|`, least prime first.
pub fn reduce_h_to_p_group(cfg: &SectionConfig, choices: &Choices) -> Result<Vec<Step>> {
    let stage = Stage::ReduceH;
    let p = cfg.target().spec.p;
    let mut steps: Vec<Step> = Vec::new();
    let mut forced = choices.primes.as_ref().map(|v| v.iter().copied());
    loop {
        let current = steps.last().map_or(cfg, |s| &s.config);
        let pending: Vec<u64> = prime_divisors(current.h().order())
            .into_iter()
            .filter(|&r| r != p)
            .collect();
        let r = match forced.as_mut() {
            Some(it) => match it.next() {
                Some(r) if pending.contains(&r) => r,
                Some(r) => {
                    return Err(Error::Replay {
                        stage: stage.name(),
                        detail: format!("prime {r} does not divide |H| = {}", current.h().order()),
                    })
                }
                None if pending.is_empty() => break,
                None => {
                    return Err(Error::Replay {
                        stage: stage.name(),
                        detail: "recorded primes leave |H| with a prime other than p".into(),
                    })
                }
            },
            None => match pending.first() {
                Some(&r) => r,
                None => break,
            },
        };
        let step = reduce_prime(current, r)?;
        steps.push(step);
    }
    if steps.is_empty() {
        let o = cfg.orders();
        steps.push(Step {
            config: cfg.clone(),
            lift: Lift::Inclusion,
            record: StageRecord {
                stage,
                before: o,
                after: o,
                decisions: vec![("prime".into(), "none".into())],
            },
        });
    }
    let last = &steps.last().unwrap().config;
    if !is_power_of(last.h().order(), p) {
        return Err(Error::internal(
            stage.name(),
            "H is not a p-group after reduction",
        ));
    }
    Ok(steps)
}

/// `R = ⟨T, Q⟩` maps onto `D` with kernel `H ∩ R`; its normal subgroups
/// form a chain, so `K1 ∩ R` or `K2 ∩ R` is trivial and `R` embeds into the
/// corresponding factor.
pub fn assemble_witness(
    cfg: &SectionConfig,
    found: &FoundT,
    choices: &Choices,
) -> Result<(SectionWitness, StageRecord)> {
    let stage = Stage::Assemble;
    let fail = |m: &str| Error::internal(stage.name(), m.to_string());
    let mut gens = vec![found.generator.clone()];
    gens.extend(found.q.generators().iter().cloned());
    let r = PermGroup::new(cfg.dp().degree(), gens)?;
    if !r.is_subgroup_of(cfg.g()) {
        return Err(fail("R is not a subgroup of G"));
    }
    let epi = restrict_epi(cfg, &r)?;
    let hr = epi.kernel();
    if !epi.is_surjective() || r.order() != hr.order() * cfg.target().order() {
        return Err(fail("R/(H∩R) is not isomorphic to D"));
    }
    if !is_chain(&normal_subgroups(&r)?) {
        return Err(fail("normal subgroups of R do not form a chain"));
    }
    let dp = cfg.dp();
    let elements = r.elements()?;
    let k1r = elements
        .iter()
        .filter(|e| dp.project(Side::Y, e).is_identity())
        .count();
    let k2r = elements
        .iter()
        .filter(|e| dp.project(Side::X, e).is_identity())
        .count();
    let side = match choices.side {
        Some(side) => {
            let meet = if side == Side::X { k2r } else { k1r };
            if meet != 1 {
                return Err(Error::Replay {
                    stage: stage.name(),
                    detail: format!("R does not embed into {side}"),
                });
            }
            side
        }
        None if k2r == 1 => Side::X,
        None if k1r == 1 => Side::Y,
        None => return Err(fail("both K1∩R and K2∩R are nontrivial")),
    };
    let n_gens = hr.generators().iter().map(|g| dp.project(side, g)).collect();
    let n = PermGroup::new(dp.side(side).degree(), n_gens)?;
    let iso: Vec<(Permutation, Permutation)> = r
        .generators()
        .iter()
        .zip(epi.generator_images())
        .map(|(x, d)| (dp.project(side, x), d.clone()))
        .collect();
    let reps: Vec<Permutation> = iso.iter().map(|(k, _)| k.clone()).collect();
    let witness = SectionWitness {
        side,
        section: Section {
            k: n.with_generators(&reps),
            n,
            iso,
        },
    };
    let record = StageRecord {
        stage,
        before: cfg.orders(),
        after: cfg.orders(),
        decisions: vec![
            ("r-order".into(), r.order().to_string()),
            ("k1-meet-r".into(), k1r.to_string()),
            ("k2-meet-r".into(), k2r.to_string()),
            ("side".into(), side.to_string()),
        ],
    };
    Ok((witness, record))
}
