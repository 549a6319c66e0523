use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use sectionkit::analysis::chain_report;
use sectionkit::catalog::{generate_catalog, sweep_catalog};
use sectionkit::construct::{MetacyclicSpec, Side, Target};
use sectionkit::formats::{parse_group, render_group, NamedGroup, WitnessFile};
use sectionkit::iso::is_isomorphic;
use sectionkit::oracle::{is_section_bruteforce, theorem_sweep};
use sectionkit::par::{self, Execution};
use sectionkit::pipeline::{replay, run_pipeline, PipelineTrace};
use sectionkit::witness::{Section, Verdict};
use sectionkit::{DirectProduct, Error, PermGroup, SectionConfig};

const FOUND: u8 = 0;
const NOT_FOUND: u8 = 1;
const USAGE: u8 = 2;
const CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sectionkit",
    version,
    about = "Sections of direct products of finite permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the group file of C_{p^n} ⋊ C_q.
    ConstructD {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        /// Action exponent; the least valid one by default.
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the normal subgroups of a group and whether they form a chain
    /// of p-groups below the whole group.
    CheckChain {
        file: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Search a group for a section isomorphic to D by brute force.
    FindSection {
        #[arg(long)]
        d: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the reduction pipeline on a section configuration.
    RunPipeline(PipelineArgs),
    /// Check a witness file against its group and target.
    VerifyWitness {
        #[arg(long)]
        witness: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        d: PathBuf,
    },
    /// Run the pipeline against the oracle on every configuration of every
    /// pair of catalog groups.
    Sweep {
        #[arg(long)]
        catalog_max: Option<u64>,
        /// Use the fixed sweep list for the spec instead of a generated
        /// catalog.
        #[arg(long, conflicts_with = "catalog_max")]
        curated: bool,
        /// `p,n,q` or `p,n,q,r`.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        jobs: Option<usize>,
        /// Configurations examined per pair.
        #[arg(long, default_value_t = 25)]
        limit: usize,
    },
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long)]
    x: PathBuf,
    #[arg(long)]
    y: PathBuf,
    /// G on the points of X followed by those of Y.
    #[arg(long)]
    g: PathBuf,
    #[arg(long)]
    h: PathBuf,
    #[arg(long)]
    d: PathBuf,
    /// `p,n,q` or `p,n,q,r`; detected from D when omitted.
    #[arg(long)]
    spec: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Where to write the trace.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Force the decisions of a recorded trace.
    #[arg(long)]
    replay: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(Error::CapExceeded { .. }) => CAP,
        Some(Error::Internal { .. } | Error::Replay { .. } | Error::TargetStructure(_)) => NOT_FOUND,
        _ => USAGE,
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::ConstructD { p, n, q, r, out } => {
            let spec = match r {
                Some(r) => MetacyclicSpec::new(p, n, q, r)?,
                None => MetacyclicSpec::canonical(p, n, q)?,
            };
            let target = Target::new(spec);
            let text = render_group(&target.d, Some(&format!("D({spec})")));
            emit(out.as_deref(), &text)?;
            Ok(FOUND)
        }
        Command::CheckChain { file, p } => {
            let g = read_group(&file)?.group;
            let report = chain_report(&g, p)?;
            let orders: Vec<String> = report.normal_orders.iter().map(u64::to_string).collect();
            println!("normal subgroup orders: {}", orders.join(","));
            println!("chain={}", report.is_chain);
            println!("proper-p-groups={}", report.proper_are_p_groups);
            Ok(if report.is_chain && report.proper_are_p_groups {
                FOUND
            } else {
                NOT_FOUND
            })
        }
        Command::FindSection { d, input, out } => {
            let d = read_group(&d)?.group;
            let named = read_group(&input)?;
            let report = is_section_bruteforce(&d, &named.group)?;
            eprintln!(
                "examined {} subgroup classes in {:.3}s",
                report.subgroups_examined,
                report.elapsed.as_secs_f64()
            );
            match report.witness {
                None => {
                    println!("not found");
                    Ok(NOT_FOUND)
                }
                Some(section) => {
                    let name = group_name(&named, &input);
                    let file = WitnessFile::new(&section, None, &named.group, Some(&name), &d, None);
                    write_witness(out.as_deref(), &file, &named.group, &d)?;
                    Ok(FOUND)
                }
            }
        }
        Command::RunPipeline(args) => run_pipeline_command(args),
        Command::VerifyWitness { witness, input, d } => {
            let text = read(&witness)?;
            let file = WitnessFile::parse(&text).with_context(|| format!("reading {}", witness.display()))?;
            let ambient = read_group(&input)?.group;
            let d = read_group(&d)?.group;
            match file.verify(&ambient, &d) {
                Verdict::Valid => {
                    println!("valid");
                    Ok(FOUND)
                }
                Verdict::Invalid(reason) => {
                    println!("invalid: {}", reason.code());
                    Ok(NOT_FOUND)
                }
            }
        }
        Command::Sweep {
            catalog_max,
            curated,
            spec,
            jobs,
            limit,
        } => {
            let spec = parse_spec(&spec)?;
            let catalog = match (curated, catalog_max) {
                (true, _) => sweep_catalog(&spec)?,
                (false, Some(max)) => generate_catalog(max)?,
                (false, None) => bail!("one of --catalog-max or --curated is required"),
            };
            let exec = if jobs == Some(1) {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let sweep = || theorem_sweep(&catalog, &catalog, spec, limit, exec);
            let report = match jobs {
                Some(k) if k > 1 => par::with_threads(k, sweep)?,
                _ => sweep()?,
            };
            print!("{}", report.render());
            let bad = report.discrepancies().len();
            println!("# spec {spec}");
            println!("# groups {}", catalog.len());
            println!("# pairs {}", report.pairs_examined);
            println!("# skipped-pairs {}", report.skipped_pairs.len());
            println!("# configurations {}", report.records.len());
            println!("# find-t {}", report.find_t_reports().count());
            println!("# discrepancies {bad}");
            Ok(if bad == 0 { FOUND } else { NOT_FOUND })
        }
    }
}

fn run_pipeline_command(args: PipelineArgs) -> Result<u8> {
    let x = read_group(&args.x)?;
    let y = read_group(&args.y)?;
    let g = read_group(&args.g)?.group;
    let h = read_group(&args.h)?.group;
    let d = read_group(&args.d)?.group;
    let spec = match &args.spec {
        Some(s) => parse_spec(s)?,
        None => detect_spec(&d)?,
    };
    let target = Target::new(spec);
    let to_user = is_isomorphic(&target.d, &d)?
        .witness
        .ok_or_else(|| anyhow!("D is not isomorphic to the group of spec {spec}"))?;
    let dp = DirectProduct::new(x.group.clone(), y.group.clone());
    let cfg = SectionConfig::new(dp, g, h, target)?;
    let run = match &args.replay {
        Some(path) => {
            let trace =
                PipelineTrace::parse(&read(path)?).with_context(|| format!("reading {}", path.display()))?;
            replay(&cfg, &trace)?
        }
        None => run_pipeline(&cfg)?,
    };
    let side = run.witness.side;
    let (named, path) = match side {
        Side::X => (&x, &args.x),
        Side::Y => (&y, &args.y),
    };
    let section = Section {
        k: run.witness.section.k.clone(),
        n: run.witness.section.n.clone(),
        iso: run
            .witness
            .section
            .iso
            .iter()
            .map(|(k, img)| Ok((k.clone(), to_user.apply(img)?)))
            .collect::<sectionkit::Result<Vec<_>>>()?,
    };
    let name = group_name(named, path);
    let trace_text = run.trace.render();
    if let Some(t) = &args.trace {
        fs::write(t, &trace_text).with_context(|| format!("writing {}", t.display()))?;
    }
    let file = WitnessFile::new(
        &section,
        Some(side),
        &named.group,
        Some(&name),
        &d,
        Some(run.trace.digest()),
    );
    eprintln!("section of {side} ({name})");
    write_witness(args.out.as_deref(), &file, &named.group, &d)?;
    Ok(FOUND)
}

/// The least-exponent spec whose group is isomorphic to `d`.
fn detect_spec(d: &PermGroup) -> Result<MetacyclicSpec> {
    let order = d.order();
    for spec in MetacyclicSpec::enumerate(order) {
        if spec.order() == order && is_isomorphic(&Target::new(spec).d, d)?.isomorphic {
            return Ok(spec);
        }
    }
    bail!("D (order {order}) is not C_(p^n) ⋊ C_q with a nontrivial action; pass --spec")
}

fn parse_spec(text: &str) -> Result<MetacyclicSpec> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let num = |s: &str| -> Result<u64> {
        s.parse()
            .map_err(|_| anyhow!("bad number `{s}` in spec `{text}`"))
    };
    match parts.as_slice() {
        [p, n, q] => Ok(MetacyclicSpec::canonical(num(p)?, num(n)? as u32, num(q)?)?),
        [p, n, q, r] => Ok(MetacyclicSpec::new(num(p)?, num(n)? as u32, num(q)?, num(r)?)?),
        _ => bail!("spec must be p,n,q or p,n,q,r, got `{text}`"),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_group(path: &Path) -> Result<NamedGroup> {
    parse_group(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn group_name(named: &NamedGroup, path: &Path) -> String {
    named.name.clone().unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "group".into())
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Writes the witness, reads it back and verifies what was read.
fn write_witness(out: Option<&Path>, file: &WitnessFile, ambient: &PermGroup, d: &PermGroup) -> Result<()> {
    let text = file.render();
    emit(out, &text)?;
    let written = match out {
        Some(path) => read(path)?,
        None => text,
    };
    let reread = WitnessFile::parse(&written).context("re-reading the witness")?;
    match reread.verify(ambient, d) {
        Verdict::Valid => Ok(()),
        Verdict::Invalid(reason) => Err(Error::Internal {
            stage: "witness",
            detail: format!("written witness fails verification: {}", reason.code()),
        }
        .into()),
    }
}
