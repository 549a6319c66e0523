//! The reduction pipeline: a section configuration `G ≤ X × Y`, `H ⊴ G`,
//! `G/H ≅ D` is reduced stage by stage until a cyclic `T` with `HT = P`
//! normalized by a Sylow `q`-subgroup `Q` is found; `R = TQ` then embeds
//! into one factor, and the resulting section is carried back to the
//! original factor through the recorded lifts.
//!
//! Every stage keeps an explicit epimorphism `G → D` whose kernel is `H`,
//! so the quotient condition is re-verified whenever `G` changes.

mod find_t;
mod stages;
mod trace;

pub use find_t::{find_t, FindTReport};
pub use stages::{
    assemble_witness, reduce_h_to_p_group, reduce_kernels, reduce_projections, Choices, KernelOutcome, Lift,
    Step,
};
pub use trace::{Orders, PipelineTrace, Stage, StageRecord, TRACE_HEADER};

use crate::construct::{quotient, DirectProduct, Target};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::GroupHom;
use crate::iso::is_isomorphic;
use crate::witness::{verify_witness, Section, SectionWitness, Verdict};

/// `G ≤ F = X × Y` with `H ⊴ G` and a fixed epimorphism `G → D` with kernel
/// `H`.
#[derive(Clone)]
pub struct SectionConfig {
    dp: DirectProduct,
    g: PermGroup,
    h: PermGroup,
    target: Target,
    epi: GroupHom,
}

impl SectionConfig {
    /// Validates `G ≤ F`, `H ⊴ G` and `G/H ≅ D`, and fixes an epimorphism
    /// from the isomorphism found.
    pub fn new(dp: DirectProduct, g: PermGroup, h: PermGroup, target: Target) -> Result<Self> {
        if g.degree() != dp.degree() || !g.is_subgroup_of(dp.f()) {
            return Err(Error::InvalidConfig("G is not a subgroup of X×Y".into()));
        }
        if !h.is_subgroup_of(&g) {
            return Err(Error::InvalidConfig("H is not a subgroup of G".into()));
        }
        if !h.is_normal_in(&g) {
            return Err(Error::InvalidConfig("H is not normal in G".into()));
        }
        if g.order() != h.order() * target.order() {
            return Err(Error::InvalidConfig(format!(
                "|G:H| = {} but |D| = {}",
                g.order() / h.order(),
                target.order()
            )));
        }
        let q = quotient(&g, &h)?;
        let iso = is_isomorphic(q.group(), &target.d)?;
        let Some(iso) = iso.witness else {
            return Err(Error::InvalidConfig("G/H is not isomorphic to D".into()));
        };
        let images = g
            .generators()
            .iter()
            .map(|x| iso.apply(&q.map(x)?))
            .collect::<Result<Vec<_>>>()?;
        let epi = GroupHom::new(g.clone(), target.d.clone(), images)?;
        SectionConfig::from_epi(dp, g, epi, target)
    }

    /// Configuration whose `H` is the kernel of `epi`.
    pub(crate) fn from_epi(dp: DirectProduct, g: PermGroup, epi: GroupHom, target: Target) -> Result<Self> {
        if !g.is_subgroup_of(dp.f()) {
            return Err(Error::internal("config", "G left the ambient product"));
        }
        let h = epi.kernel();
        if !epi.is_surjective() || g.order() != h.order() * target.order() {
            return Err(Error::internal("config", "G/H is no longer isomorphic to D"));
        }
        Ok(SectionConfig {
            dp,
            g,
            h,
            target,
            epi,
        })
    }

    pub fn dp(&self) -> &DirectProduct {
        &self.dp
    }

    pub fn g(&self) -> &PermGroup {
        &self.g
    }

    pub fn h(&self) -> &PermGroup {
        &self.h
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    /// The epimorphism `G → D`.
    pub fn epi(&self) -> &GroupHom {
        &self.epi
    }

    pub fn orders(&self) -> Orders {
        Orders {
            x: self.dp.x().order(),
            y: self.dp.y().order(),
            g: self.g.order(),
            h: self.h.order(),
        }
    }
}

#[derive(Debug)]
pub struct PipelineRun {
    pub witness: SectionWitness,
    pub trace: PipelineTrace,
    /// Absent when the run ended early because a kernel was already `D`.
    pub find_t: Option<FindTReport>,
}

pub fn run_pipeline(cfg: &SectionConfig) -> Result<PipelineRun> {
    run_with(cfg, &Choices::default())
}

/// Re-runs the pipeline forcing the decisions recorded in `trace`, and
/// checks that the same trace comes out.
pub fn replay(cfg: &SectionConfig, trace: &PipelineTrace) -> Result<PipelineRun> {
    let choices = Choices::from_trace(trace)?;
    let run = run_with(cfg, &choices)?;
    if run.trace.stages.len() != trace.stages.len() {
        return Err(Error::Replay {
            stage: "pipeline",
            detail: format!(
                "{} stages recorded, {} replayed",
                trace.stages.len(),
                run.trace.stages.len()
            ),
        });
    }
    for (want, got) in trace.stages.iter().zip(&run.trace.stages) {
        if want != got {
            return Err(Error::Replay {
                stage: got.stage.name(),
                detail: "replayed record differs from the recorded one".into(),
            });
        }
    }
    Ok(run)
}

fn run_with(cfg: &SectionConfig, choices: &Choices) -> Result<PipelineRun> {
    let mut lifts: Vec<Lift> = Vec::new();
    let mut trace = PipelineTrace::default();

    let step = reduce_projections(cfg, choices)?;
    trace.stages.push(step.record);
    lifts.push(step.lift);

    let (witness, find_t_report) = match reduce_kernels(&step.config)? {
        KernelOutcome::Witness {
            witness,
            lift,
            record,
        } => {
            trace.stages.push(record);
            lifts.push(lift);
            (witness, None)
        }
        KernelOutcome::Reduced(step) => {
            trace.stages.push(step.record);
            lifts.push(step.lift);
            let mut current = step.config;
            for step in reduce_h_to_p_group(&current, choices)? {
                trace.stages.push(step.record);
                lifts.push(step.lift);
                current = step.config;
            }
            let found = find_t(&current, choices)?;
            trace.stages.push(found.record.clone());
            let (witness, record) = assemble_witness(&current, &found, choices)?;
            trace.stages.push(record);
            (witness, Some(found.report))
        }
    };

    let mut witness = witness;
    for lift in lifts.iter().rev() {
        witness = lift.apply(witness)?;
    }
    let witness = finalize(witness);
    let side_group = cfg.dp().side(witness.side);
    if let Verdict::Invalid(reason) = verify_witness(&witness.section, side_group, &cfg.target().d) {
        return Err(Error::internal(
            "lift",
            format!("lifted witness fails verification: {reason}"),
        ));
    }
    Ok(PipelineRun {
        witness,
        trace,
        find_t: find_t_report,
    })
}

fn finalize(w: SectionWitness) -> SectionWitness {
    let n = w.section.n.reduced();
    let reps: Vec<_> = w.section.iso.iter().map(|(k, _)| k.clone()).collect();
    let k = n.with_generators(&reps).reduced();
    SectionWitness {
        side: w.side,
        section: Section {
            k,
            n,
            iso: w.section.iso,
        },
    }
}
