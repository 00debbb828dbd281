//! Exit criteria. Each test prints one `criterion N ... PASS|FAIL` line.

mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use omball::bounded::{upper_tope_shellings, AffineOM};
use omball::io::parse_arrangement_file;
use omball::realization::{random_generic, realize};
use omball::report::{boundedness_oracle, verify, Verdict, VerificationReport, VerifyOptions};
use omball::topology::{classify_links, find_collapse, LinkClass, ShellingMode, SimplicialComplex};
use omball::{Arrangement, CovectorSet};

const FOUR_LINES: &str = "dim 2\nx 1 0 0\ny 0 1 0\ns 1 1 1\nt 1 1 -1\n";
const TRIANGLE: &str = "dim 2\nx 1 0 0\ny 0 1 0\ns 1 1 1\n";
const LINE: &str = "dim 1\na 1 0\nb 1 1\n";

const SEEDS_PER_SHAPE: u64 = 4;
const MIN_INSTANCES: usize = 50;
const FOUR_LINE_LIMIT: Duration = Duration::from_secs(5);
const PIPELINE_LIMIT: Duration = Duration::from_secs(600);
const EXTENSIONS_PER_CELL: usize = 10;

fn report_line(n: u32, name: &str, ok: bool, detail: &str) {
    println!("criterion {n} {name}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
}

struct Instance {
    d: usize,
    n: usize,
    seed: u64,
    arr: Arrangement,
    om: CovectorSet,
    report: VerificationReport,
}

/// Every shape `d ∈ {1,2,3}`, `d + 1 ≤ n ≤ 7`, several seeds each.
fn pipeline() -> &'static (Vec<Instance>, Duration) {
    static CELL: OnceLock<(Vec<Instance>, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let mut out = Vec::new();
        for d in 1..=3 {
            for n in d + 1..=7 {
                for seed in 1..=SEEDS_PER_SHAPE {
                    let arr = random_generic(seed, n, d, 1000).expect("generic instance");
                    let om = realize(&arr).expect("realizes");
                    let report = verify(om.clone(), Some(&arr), &VerifyOptions::default()).expect("verifies");
                    out.push(Instance {
                        d,
                        n,
                        seed,
                        arr,
                        om,
                        report,
                    });
                }
            }
        }
        (out, start.elapsed())
    })
}

#[test]
fn criterion_1_four_line_regression() {
    let start = Instant::now();
    let arr = parse_arrangement_file("four", FOUR_LINES).unwrap();
    let r = verify(realize(&arr).unwrap(), Some(&arr), &VerifyOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let b = r.bounded.as_ref().unwrap();
    let oracle = r.oracle.as_ref().unwrap();
    let links = r.links.as_ref().unwrap();
    let bad: Vec<_> = links
        .vertices
        .iter()
        .filter(|v| v.classification.class == LinkClass::Other)
        .collect();
    let checks = [
        ("not uniform", !r.instance.is_uniform),
        ("f-vector (5,6,2)", b.f_vector == [5, 6, 2]),
        ("oracle census (5,6,2)", oracle.f_vector == [5, 6, 2] && oracle.mismatches.is_empty()),
        ("euler 1", b.euler_characteristic == 1),
        ("pure of dim 2", b.pure && b.dim == Some(2)),
        (
            "collapse found",
            r.order_complex.as_ref().unwrap().collapse.certificate().is_some(),
        ),
        ("one other vertex", bad.len() == 1 && links.other.len() == 1),
        (
            "its link has two components",
            bad.first().is_some_and(|v| v.classification.homology.betti().first() == Some(&2)),
        ),
        ("verdict refuted", r.verdict == Verdict::Refuted),
        ("under 5 s", elapsed < FOUR_LINE_LIMIT),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    report_line(
        1,
        "four-line regression",
        failed.is_empty(),
        &format!("{:.3}s; failed: {failed:?}", elapsed.as_secs_f64()),
    );
    assert!(failed.is_empty(), "{failed:?}");
}

#[test]
fn criterion_2_generic_instances_are_certified_balls() {
    let (instances, elapsed) = pipeline();
    let mut failures = Vec::new();
    for i in instances {
        let r = &i.report;
        let b = r.bounded.as_ref().unwrap();
        let links = r.links.as_ref().unwrap();
        let ok = r.verdict == Verdict::BallCertified
            && r.checks_passed
            && b.pure
            && b.dim == Some(i.d)
            && b.euler_characteristic == 1
            && r.order_complex.as_ref().unwrap().collapse.certificate().is_some()
            && links
                .vertices
                .iter()
                .all(|v| matches!(v.classification.class, LinkClass::SphereLike | LinkClass::BallLike));
        if !ok {
            failures.push(format!("d={} n={} seed={}: {:?} {:?}", i.d, i.n, i.seed, r.verdict, r.notes));
        }
    }
    let ok = failures.is_empty() && instances.len() >= MIN_INSTANCES && *elapsed < PIPELINE_LIMIT;
    report_line(
        2,
        "generic instances are certified balls",
        ok,
        &format!(
            "{} instances in {:.1}s, {} failed",
            instances.len(),
            elapsed.as_secs_f64(),
            failures.len()
        ),
    );
    assert!(ok, "{failures:#?}");
}

#[test]
fn criterion_3_local_cell_constructions() {
    let (instances, _) = pipeline();
    let mut cells = 0;
    let mut cube = 0;
    let mut bijection = 0;
    let mut ideals = 0;
    let mut shelling = 0;
    let mut shelling_any_base = 0;
    let mut equivalence = 0;
    let mut examples = Vec::new();
    for i in instances {
        let Some(local) = i.report.local.as_ref() else {
            equivalence += 1;
            examples.push(format!("d={} n={} seed={}: local checks missing", i.d, i.n, i.seed));
            continue;
        };
        equivalence += local.boundary_equivalence.failures.len();
        for c in &local.cells {
            cells += 1;
            cube += usize::from(c.cube != Some(true));
            let pairing_ok = c.bijection.passed && c.bijection.pairs.len() == c.unbounded_topes;
            bijection += usize::from(!pairing_ok);
            ideals += usize::from(c.dx_shelling.as_ref().is_some_and(|s| !s.prefixes_are_ideals));
            if let Some(s) = &c.induced_shelling {
                if !s.verdict.passed {
                    shelling += 1;
                    if examples.len() < 3 {
                        examples.push(format!(
                            "d={} n={} seed={} cell {}: {:?}",
                            i.d, i.n, i.seed, c.cell, s.verdict.failures
                        ));
                    }
                }
            }
            shelling_any_base += usize::from(!c.passed_with_some_base());
        }
    }
    let ok = cube + bijection + ideals + shelling + equivalence == 0;
    report_line(
        3,
        "local cell constructions",
        ok,
        &format!(
            "{cells} cells; cube failures {cube}, equivalence failures {equivalence}, \
             bijection failures {bijection}, non-ideal prefixes {ideals}, \
             induced shelling failures {shelling} (default base), {shelling_any_base} with every base tried"
        ),
    );
    for e in &examples {
        println!("    {e}");
    }
    assert!(ok, "induced shelling failures: {shelling}; see the lines above");
}

#[test]
fn criterion_4_upper_tope_shellings() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut instances = 0;
    let mut sampled = 0;
    let mut failures = Vec::new();
    for d in 1..=2 {
        for n in d + 1..=d + 4 {
            for seed in 1..=2 {
                let om = realize(&random_generic(seed, n, d, 1000).unwrap()).unwrap();
                assert!(om.rank() <= 3 && om.is_uniform());
                instances += 1;
                let mut per_instance = 0;
                for x in om.iter().filter(|x| !x.is_zero() && !x.zero_set().is_empty()) {
                    let verdicts = upper_tope_shellings(&om, x, EXTENSIONS_PER_CELL, &mut rng).unwrap();
                    for v in verdicts {
                        per_instance += 1;
                        if v.mode != ShellingMode::Simplicial || !v.passed {
                            failures.push(format!("d={d} n={n} seed={seed} X={x}: {:?}", v.failures));
                        }
                    }
                }
                sampled += per_instance;
                if per_instance < EXTENSIONS_PER_CELL {
                    failures.push(format!("d={d} n={n} seed={seed}: only {per_instance} extensions"));
                }
            }
        }
    }
    let ok = failures.is_empty();
    report_line(
        4,
        "upper tope shellings",
        ok,
        &format!("{instances} instances, {sampled} extensions, {} failures", failures.len()),
    );
    assert!(ok, "{failures:#?}");
}

#[test]
fn criterion_5_boundedness_oracle() {
    let (instances, _) = pipeline();
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut check = |name: String, arr: &Arrangement, om: &CovectorSet| {
        let aom = AffineOM::new(om.clone()).unwrap();
        let bc = aom.bounded_complex();
        let o = boundedness_oracle(arr, &aom, &bc).unwrap();
        checked += o.checked;
        if !o.passed(&bc) {
            failures.push(format!("{name}: {:?}", o.mismatches));
        }
    };
    for i in instances {
        check(format!("d={} n={} seed={}", i.d, i.n, i.seed), &i.arr, &i.om);
    }
    for (name, text) in [("four-line", FOUR_LINES), ("triangle", TRIANGLE), ("line", LINE)] {
        let arr = parse_arrangement_file(name, text).unwrap();
        check(name.into(), &arr, &realize(&arr).unwrap());
    }

    let arr = random_generic(1, 4, 2, 1000).unwrap();
    let aom = AffineOM::new(realize(&arr).unwrap()).unwrap();
    let bc = aom.bounded_complex();
    let census = boundedness_oracle(&arr, &aom, &bc).unwrap().f_vector;
    let four_generic = census == [6, 8, 3] && bc.f_vector() == census && bc.euler_characteristic() == 1;
    if !four_generic {
        failures.push(format!("four generic lines: census {census:?}, f-vector {:?}", bc.f_vector()));
    }
    let ok = failures.is_empty();
    report_line(
        5,
        "boundedness oracle",
        ok,
        &format!(
            "{} instances, {checked} faces compared; four generic lines census {census:?}",
            instances.len() + 3
        ),
    );
    assert!(ok, "{failures:#?}");
}

fn simplex(k: usize) -> SimplicialComplex {
    let f: Vec<String> = (0..=k).map(|i| format!("v{i}")).collect();
    SimplicialComplex::from_facets(&[f]).unwrap()
}

#[test]
fn criterion_6_topology_engine() {
    let mut failures = Vec::new();
    for k in 0..=4usize {
        let solid = simplex(k);
        let mut ball = vec![0; k + 1];
        ball[0] = 1;
        if solid.homology().betti() != ball || !solid.homology().torsion_free() {
            failures.push(format!("solid {k}-simplex: {:?}", solid.homology().betti()));
        }
        if k >= 1 {
            let sphere = solid.boundary();
            let mut expected = vec![0; k];
            expected[0] += 1;
            expected[k - 1] += 1;
            if sphere.homology().betti() != expected || !sphere.homology().is_sphere(k - 1) {
                failures.push(format!("boundary of {k}-simplex: {:?}", sphere.homology().betti()));
            }
        }
    }

    let k = simplex(2).boundary();
    let e = SimplicialComplex::minus_one_sphere();
    if e.join(&k, false).unwrap().facet_labels() != k.facet_labels() {
        failures.push("{∅} * K differs from K".into());
    }
    let s0a = SimplicialComplex::from_facets(&[vec!["a"], vec!["b"]]).unwrap();
    let s0b = SimplicialComplex::from_facets(&[vec!["c"], vec!["d"]]).unwrap();
    let j = s0a.join(&s0b, false).unwrap();
    let degrees_two = (0..j.num_vertices() as u32).all(|v| j.link(v).unwrap().num_vertices() == 2);
    if !(j.f_vector() == [4, 4] && j.is_connected() && degrees_two) {
        failures.push(format!("S0 * S0 is not a 4-cycle: {:?}", j.facet_labels()));
    }

    // every certificate the engine emits replays
    let mut certificates = 0;
    let mut complexes: Vec<SimplicialComplex> = (0..=4).map(simplex).collect();
    for text in [TRIANGLE, FOUR_LINES, LINE] {
        let arr = parse_arrangement_file("t", text).unwrap();
        complexes.push(AffineOM::new(realize(&arr).unwrap()).unwrap().bounded_complex().order_complex());
    }
    for seed in 1..=3 {
        let arr = random_generic(seed, 5, 2, 1000).unwrap();
        complexes.push(AffineOM::new(realize(&arr).unwrap()).unwrap().bounded_complex().order_complex());
    }
    for k in &complexes {
        if let Some(c) = find_collapse(k, 1_000_000).unwrap().certificate() {
            certificates += 1;
            if let Err(e) = c.verify(k) {
                failures.push(format!("collapse replay: {e}"));
            }
        }
        for v in classify_links(k, 1_000_000) {
            if let Some(c) = &v.classification.collapse {
                certificates += 1;
                let link = k.link_by_label(&v.vertex).unwrap();
                if let Err(e) = c.verify(&link) {
                    failures.push(format!("link collapse replay at {}: {e}", v.vertex));
                }
            }
        }
    }
    let ok = failures.is_empty();
    report_line(
        6,
        "topology engine",
        ok,
        &format!("simplex tables to dim 4, join identities, {certificates} certificates replayed"),
    );
    assert!(ok, "{failures:#?}");
}

#[test]
fn criterion_7_axiom_verifier() {
    let (instances, _) = pipeline();
    let mut failures: Vec<String> = instances
        .iter()
        .filter(|i| !i.om.verify_covector_axioms().all_ok())
        .map(|i| format!("realized d={} n={} seed={} fails", i.d, i.n, i.seed))
        .collect();
    for om in [common::triangle_om(), common::line_om()] {
        if !om.verify_covector_axioms().all_ok() {
            failures.push("realized example fails".into());
        }
    }
    let mutations = common::mutations();
    for (name, om, vs) in &mutations {
        if let Err(e) = common::check_mutation(name, om, vs) {
            failures.push(e);
        }
    }
    let ok = failures.is_empty() && mutations.len() >= 10;
    report_line(
        7,
        "axiom verifier",
        ok,
        &format!("{} realized sets pass, {} mutations caught", instances.len() + 2, mutations.len()),
    );
    assert!(ok, "{failures:#?}");
}
