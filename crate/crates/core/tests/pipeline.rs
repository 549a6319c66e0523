use sectionkit::construct::{abelian, cyclic, dihedral, DirectProduct, MetacyclicSpec, Side, Target};
use sectionkit::error::Error;
use sectionkit::iso::is_isomorphic;
use sectionkit::oracle::is_section_bruteforce;
use sectionkit::pipeline::{replay, PipelineTrace, Stage};
use sectionkit::witness::verify_witness;
use sectionkit::{run_pipeline, PermGroup, Permutation, SectionConfig};

fn d18() -> Target {
    Target::new(MetacyclicSpec::new(3, 2, 2, 8).unwrap())
}

fn rot_refl(m: usize) -> (Permutation, Permutation) {
    let g = dihedral(m);
    (g.generators()[0].clone(), g.generators()[1].clone())
}

fn group(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::new(degree, gens).unwrap()
}

fn diagonal_d18() -> SectionConfig {
    let dp = DirectProduct::new(dihedral(9), dihedral(9));
    let (a, b) = rot_refl(9);
    let g = group(18, vec![dp.pair(&a, &a), dp.pair(&b, &b)]);
    SectionConfig::new(dp, g, PermGroup::trivial(18), d18()).unwrap()
}

/// `{(x, y) : x ≡ y mod ⟨a³⟩}` in `D18 × D18` with `H = ⟨(a³, a⁻³)⟩`; its
/// Sylow 3-subgroup is `C9 × C3`.
fn fibered_d18() -> SectionConfig {
    let dp = DirectProduct::new(dihedral(9), dihedral(9));
    let (a, b) = rot_refl(9);
    let id = Permutation::identity(9);
    let a3 = a.pow(3);
    let g = group(18, vec![dp.pair(&a, &a), dp.pair(&b, &b), dp.pair(&a3, &id)]);
    let h = group(18, vec![dp.pair(&a3, &a3.inverse())]);
    SectionConfig::new(dp, g, h, d18()).unwrap()
}

fn assert_valid(cfg: &SectionConfig) -> Side {
    let run = run_pipeline(cfg).unwrap();
    let side = run.witness.side;
    let ambient = cfg.dp().side(side);
    assert!(verify_witness(&run.witness.section, ambient, &cfg.target().d).is_valid());
    assert!(is_section_bruteforce(&cfg.target().d, ambient).unwrap().found);
    side
}

#[test]
fn diagonal_d18_yields_a_valid_witness() {
    let cfg = diagonal_d18();
    assert_eq!(cfg.g().order(), 18);
    assert_valid(&cfg);
}

#[test]
fn fibered_product_witness_and_search_data() {
    let cfg = fibered_d18();
    assert_eq!((cfg.g().order(), cfg.h().order()), (54, 3));
    assert_valid(&cfg);
    let run = run_pipeline(&cfg).unwrap();
    if let Some(r) = &run.find_t {
        assert_eq!(r.generating, r.p.pow(r.n + r.k - 1) * (r.p - 1));
    }
}

#[test]
fn kernel_already_isomorphic_to_d_ends_early() {
    // G = X × Y with X = D18 and Y = C2; H = Y, so the kernel on Y is G ∩ X.
    let dp = DirectProduct::new(dihedral(9), cyclic(2));
    let c = cyclic(2).generators()[0].clone();
    let h = group(11, vec![dp.embed(Side::Y, &c)]);
    let cfg = SectionConfig::new(dp.clone(), dp.f().clone(), h, d18()).unwrap();
    let run = run_pipeline(&cfg).unwrap();
    assert!(run.find_t.is_none());
    assert_eq!(run.witness.side, Side::X);
    assert!(run.trace.stages.iter().all(|s| s.stage != Stage::FindT));
    assert_eq!(run.trace.stages[1].decision("early"), Some("X"));
}

#[test]
fn nontrivial_h_of_order_two() {
    // X = D18, Y = C2 × C3; G = ⟨(a, 1), (b, c)⟩ · (1, C3) is not a product.
    let y = abelian(&[2, 3]);
    let dp = DirectProduct::new(dihedral(9), y.clone());
    let (a, b) = rot_refl(9);
    let c2 = y.generators()[0].clone();
    let c3 = y.generators()[1].clone();
    let id9 = Permutation::identity(9);
    let g = group(
        14,
        vec![
            dp.pair(&a, &y.generators()[0].pow(2)),
            dp.pair(&b, &c2),
            dp.pair(&id9, &c3),
        ],
    );
    let h = group(14, vec![dp.pair(&id9, &c3)]);
    let cfg = SectionConfig::new(dp, g, h, d18()).unwrap();
    assert_eq!(cfg.h().order(), 3);
    assert_eq!(assert_valid(&cfg), Side::X);

    let dp = DirectProduct::new(dihedral(9), cyclic(2));
    let c = cyclic(2).generators()[0].clone();
    let g = group(
        11,
        vec![
            dp.pair(&a, &Permutation::identity(2)),
            dp.pair(&b, &c),
            dp.embed(Side::Y, &c),
        ],
    );
    let h = group(11, vec![dp.embed(Side::Y, &c)]);
    let cfg = SectionConfig::new(dp, g, h, d18()).unwrap();
    assert_eq!(cfg.h().order(), 2);
    assert_valid(&cfg);
}

#[test]
fn replay_reproduces_the_trace() {
    for cfg in [diagonal_d18(), fibered_d18()] {
        let run = run_pipeline(&cfg).unwrap();
        let text = run.trace.render();
        let parsed = PipelineTrace::parse(&text).unwrap();
        assert_eq!(parsed, run.trace);
        let again = replay(&cfg, &parsed).unwrap();
        assert_eq!(again.trace.render(), text);
        assert_eq!(again.trace.digest(), run.trace.digest());
    }
}

#[test]
fn tampered_trace_is_rejected() {
    let cfg = diagonal_d18();
    let run = run_pipeline(&cfg).unwrap();
    let text = run.trace.render();
    let line = text.lines().find(|l| l.starts_with("decide u ")).unwrap();
    let tampered = text.replace(line, "decide u ()");
    let err = replay(&cfg, &PipelineTrace::parse(&tampered).unwrap()).unwrap_err();
    assert!(matches!(err, Error::Replay { .. }), "{err}");
}

#[test]
fn invalid_configurations_are_rejected() {
    let dp = DirectProduct::new(dihedral(9), dihedral(9));
    let (a, b) = rot_refl(9);
    let g = group(18, vec![dp.pair(&a, &a), dp.pair(&b, &b)]);
    // Wrong index.
    let h = group(18, vec![dp.pair(&a.pow(3), &a.pow(3))]);
    assert!(matches!(
        SectionConfig::new(dp.clone(), g.clone(), h, d18()),
        Err(Error::InvalidConfig(_))
    ));
    // Not normal.
    let g2 = dp.f().clone();
    let h2 = group(18, vec![dp.embed(Side::X, &b)]);
    assert!(matches!(
        SectionConfig::new(dp.clone(), g2, h2, d18()),
        Err(Error::InvalidConfig(_))
    ));
    // Right index, wrong quotient: C18 over the trivial group.
    let dpc = DirectProduct::new(cyclic(18), cyclic(1));
    let gc = group(19, vec![dpc.embed(Side::X, &cyclic(18).generators()[0])]);
    assert!(matches!(
        SectionConfig::new(dpc, gc, PermGroup::trivial(19), d18()),
        Err(Error::InvalidConfig(_))
    ));
}

#[test]
fn targets_for_different_exponents_are_isomorphic() {
    for p in [5u64, 7, 13] {
        for q in [2u64, 3] {
            let rs = MetacyclicSpec::valid_exponents(p, 1, q);
            if rs.len() < 2 {
                continue;
            }
            let base = Target::new(MetacyclicSpec::new(p, 1, q, rs[0]).unwrap());
            for &r in &rs[1..] {
                let other = Target::new(MetacyclicSpec::new(p, 1, q, r).unwrap());
                assert!(
                    is_isomorphic(&base.d, &other.d).unwrap().isomorphic,
                    "p={p} q={q} r={r}"
                );
            }
        }
    }
    let rs = MetacyclicSpec::valid_exponents(3, 2, 2);
    assert_eq!(rs, vec![8]);
}
