//! The end-to-end verification pipeline and its JSON report.

use serde::Serialize;

use crate::bounded::{AffineOM, BoundaryReport, BoundedComplex, CellReport, LocalAnalysis};
use crate::error::{Error, Result};
use crate::om::{AxiomReport, CovectorSet};
use crate::realization::{face_is_bounded, rational_rank, Arrangement};
use crate::signvec::{ElementSet, SignVector};
use crate::topology::collapse::DEFAULT_BUDGET;
use crate::topology::{classify_links, find_collapse, CollapseOutcome, HomologyTable, LinkClass, Strength, VertexLink};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    BallCertified,
    EvidenceOnly,
    Refuted,
    NotApplicable,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub source: String,
    pub budget: u64,
    /// Seconds since the Unix epoch to record, if any.
    pub timestamp: Option<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            source: String::new(),
            budget: DEFAULT_BUDGET,
            timestamp: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InstanceInfo {
    pub source: String,
    pub elements: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub rank: usize,
    pub g: String,
    pub covectors: usize,
    pub is_uniform: bool,
    /// First element set witnessing non-uniformity, by label.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniformity_witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundedStage {
    pub f_vector: Vec<usize>,
    pub dim: Option<usize>,
    pub pure: bool,
    pub support: Option<Vec<String>>,
    pub euler_characteristic: i64,
    pub maximal_cells: Vec<SignVector>,
    pub cells: Vec<SignVector>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RestrictionStage {
    pub removed: Vec<String>,
    pub isomorphic: bool,
}

/// Cross-check of the combinatorial bounded complex against metric boundedness.
#[derive(Debug, Clone, Serialize)]
pub struct OracleStage {
    pub checked: usize,
    pub f_vector: Vec<usize>,
    pub mismatches: Vec<SignVector>,
}

impl OracleStage {
    pub fn passed(&self, bounded: &BoundedComplex) -> bool {
        self.mismatches.is_empty() && self.f_vector == bounded.f_vector()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderComplexStage {
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub homology: HomologyTable,
    pub collapse: CollapseOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellStage {
    pub boundary_equivalence: BoundaryReport,
    /// Cells failing any check with the default shelling base.
    pub failed_cells: usize,
    /// Cells that still fail when every base of `D_X` may be tried.
    pub failed_cells_any_base: usize,
    pub cells: Vec<CellReport>,
}

impl CellStage {
    pub fn passed(&self) -> bool {
        self.failed_cells == 0 && self.boundary_equivalence.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LinkStage {
    pub manifold: Strength,
    pub other: Vec<String>,
    pub vertices: Vec<VertexLink>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub instance: InstanceInfo,
    pub axioms: AxiomReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounded: Option<BoundedStage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restriction: Option<RestrictionStage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleStage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order_complex: Option<OrderComplexStage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local: Option<CellStage>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub links: Option<LinkStage>,
    pub verdict: Verdict,
    /// True when every integrity check that ran passed: metric oracle,
    /// restriction isomorphism, certificate replay.
    pub checks_passed: bool,
    /// Outcome of the per-cell local checks; `None` when they were skipped.
    /// These test the local lemmas and do not enter the verdict.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local_checks_passed: Option<bool>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Whether any stage stopped early on its search budget.
    pub fn budget_exhausted(&self) -> bool {
        matches!(
            self.order_complex.as_ref().map(|o| &o.collapse),
            Some(CollapseOutcome::Exhausted { .. })
        ) || self.links.as_ref().is_some_and(|l| {
            l.vertices
                .iter()
                .any(|v| v.classification.strength == Strength::EvidenceOnly)
        })
    }
}

/// Compare `L⁺⁺` with the faces of `arr` that are metrically bounded.
pub fn boundedness_oracle(arr: &Arrangement, aom: &AffineOM, bounded: &BoundedComplex) -> Result<OracleStage> {
    let g = aom.g();
    let normals: Vec<_> = arr.hyperplanes().iter().map(|h| h.normal.clone()).collect();
    let mut f = Vec::new();
    let mut mismatches = Vec::new();
    let positive = aom.positive_part();
    for x in &positive {
        let pattern = x.del(ElementSet::singleton(g));
        let is_bounded = face_is_bounded(arr, &pattern)?;
        if is_bounded != bounded.contains(x) {
            mismatches.push(*x);
        }
        if is_bounded {
            let zeros: Vec<_> = pattern.zero_set().iter().map(|i| normals[i].clone()).collect();
            let dim = arr.dim() - rational_rank(&zeros);
            if f.len() <= dim {
                f.resize(dim + 1, 0);
            }
            f[dim] += 1;
        }
    }
    Ok(OracleStage {
        checked: positive.len(),
        f_vector: f,
        mismatches,
    })
}

/// Run every stage on a covector set with `g` designated. `arrangement`
/// enables the metric cross-check.
pub fn verify(om: CovectorSet, arrangement: Option<&Arrangement>, opts: &VerifyOptions) -> Result<VerificationReport> {
    let ground = om.ground().clone();
    let g = ground
        .g_index()
        .ok_or_else(|| Error::Precondition("no element designated as g (use --g)".into()))?;
    let uniformity = om.uniformity();
    let axioms = om.verify_covector_axioms();
    let mut report = VerificationReport {
        schema: SCHEMA_VERSION,
        generated_at: opts.timestamp,
        instance: InstanceInfo {
            source: opts.source.clone(),
            elements: ground.len(),
            dim: arrangement.map(Arrangement::dim),
            rank: om.rank(),
            g: ground.label(g).to_string(),
            covectors: om.len(),
            is_uniform: uniformity.is_uniform(),
            uniformity_witness: uniformity.witness().map(|w| ground.labels_of(w)),
        },
        axioms: axioms.clone(),
        bounded: None,
        restriction: None,
        oracle: None,
        order_complex: None,
        local: None,
        links: None,
        verdict: Verdict::NotApplicable,
        checks_passed: true,
        local_checks_passed: None,
        notes: Vec::new(),
    };
    if !axioms.all_ok() {
        report.checks_passed = false;
        report.notes.push("covector axioms fail; not an oriented matroid".into());
        return Ok(report);
    }
    let aom = AffineOM::from_verified(om)?;
    let bounded = aom.bounded_complex();
    report.bounded = Some(BoundedStage {
        f_vector: bounded.f_vector(),
        dim: bounded.dim(),
        pure: bounded.is_pure(),
        support: bounded.support().map(|s| ground.labels_of(s)),
        euler_characteristic: bounded.euler_characteristic(),
        maximal_cells: bounded.maximal_cells(),
        cells: bounded.cells().to_vec(),
    });
    let mut certified = true;
    let mut refuted = false;
    if !bounded.is_pure() {
        refuted = true;
        report.notes.push("bounded complex is not pure".into());
    }
    if bounded.euler_characteristic() != 1 {
        refuted = true;
        report.notes.push("Euler characteristic differs from 1".into());
    }

    if let Some(arr) = arrangement {
        let oracle = boundedness_oracle(arr, &aom, &bounded)?;
        if !oracle.passed(&bounded) {
            report.checks_passed = false;
            report.notes.push("bounded complex disagrees with metric boundedness".into());
        }
        report.oracle = Some(oracle);
    }

    // a single bounded point supported only on g leaves nothing to localize
    let local = match LocalAnalysis::new(&aom) {
        Ok(local) => Some(local),
        Err(Error::Precondition(why)) => {
            report.notes.push(format!("local analysis skipped: {why}"));
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(local) = &local {
        let removed = local.removed();
        let isomorphic = bounded.is_isomorphic_by_deletion(local.bounded(), removed);
        if !isomorphic {
            report.checks_passed = false;
            report.notes.push("restriction to the common support changed the bounded complex".into());
        }
        report.restriction = Some(RestrictionStage {
            removed: ground.labels_of(removed),
            isomorphic,
        });
    }

    let delta = bounded.order_complex();
    let homology = delta.homology();
    if !homology.is_acyclic() {
        refuted = true;
        report.notes.push("order complex is not acyclic".into());
    }
    let collapse = find_collapse(&delta, opts.budget)?;
    if let Some(c) = collapse.certificate() {
        if let Err(e) = c.verify(&delta) {
            report.checks_passed = false;
            report.notes.push(format!("collapse certificate does not replay: {e}"));
        }
    } else {
        certified = false;
        report.notes.push("collapse search budget exhausted".into());
    }
    report.order_complex = Some(OrderComplexStage {
        f_vector: delta.f_vector(),
        euler_characteristic: delta.euler_characteristic(),
        homology,
        collapse,
    });

    if let (true, Some(local)) = (report.instance.is_uniform, &local) {
        let cells = local.check_cells(true)?;
        let boundary_equivalence = local.boundary_equivalence();
        let failed_cells = cells.iter().filter(|c| !c.passed()).count();
        let failed_cells_any_base = cells.iter().filter(|c| !c.passed_with_some_base()).count();
        if failed_cells > 0 {
            report.notes.push(format!(
                "{failed_cells} cells failed the local checks ({failed_cells_any_base} with every shelling base)"
            ));
        }
        if !boundary_equivalence.failures.is_empty() {
            report.notes.push(format!(
                "{} covectors break the boundary equivalence",
                boundary_equivalence.failures.len()
            ));
        }
        let stage = CellStage {
            boundary_equivalence,
            failed_cells,
            failed_cells_any_base,
            cells,
        };
        report.local_checks_passed = Some(stage.passed());
        report.local = Some(stage);
    } else if !report.instance.is_uniform {
        report.notes.push("local cell checks skipped: not uniform".into());
    }

    let vertices = classify_links(&delta, opts.budget);
    let other: Vec<String> = vertices
        .iter()
        .filter(|v| v.classification.class == LinkClass::Other)
        .map(|v| v.vertex.clone())
        .collect();
    let manifold = vertices
        .iter()
        .map(|v| v.classification.strength)
        .min()
        .unwrap_or(Strength::Certified);
    match manifold {
        Strength::Refuted => {
            refuted = true;
            report.notes.push(format!("{} vertex links are neither spheres nor balls", other.len()));
        }
        Strength::EvidenceOnly => certified = false,
        Strength::Certified => {}
    }
    report.links = Some(LinkStage {
        manifold,
        other,
        vertices,
    });

    report.verdict = if refuted {
        Verdict::Refuted
    } else if certified && report.checks_passed {
        Verdict::BallCertified
    } else {
        Verdict::EvidenceOnly
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::realize;
    use crate::realization::tests::{four_line, line, triangle};

    fn run(arr: &Arrangement) -> VerificationReport {
        verify(realize(arr).unwrap(), Some(arr), &VerifyOptions::default()).unwrap()
    }

    #[test]
    fn small_balls_are_certified() {
        for (arr, d) in [(line(), 1), (triangle(), 2)] {
            let r = run(&arr);
            assert_eq!(r.verdict, Verdict::BallCertified, "{:?}", r.notes);
            assert_eq!(r.bounded.as_ref().unwrap().dim, Some(d));
            assert!(r.checks_passed);
        }
    }

    #[test]
    fn four_lines_are_refuted_at_one_vertex() {
        let r = run(&four_line());
        assert_eq!(r.verdict, Verdict::Refuted);
        assert!(!r.instance.is_uniform);
        let links = r.links.as_ref().unwrap();
        assert_eq!(links.other.len(), 1);
        let bad = &links.vertices.iter().find(|v| v.vertex == links.other[0]).unwrap();
        assert_eq!(bad.classification.homology.betti()[0], 2);
        assert!(r.order_complex.as_ref().unwrap().collapse.certificate().is_some());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(&triangle()).to_json();
        let b = run(&triangle()).to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"schema\": 1"));
    }

    #[test]
    fn axiom_failure_is_not_applicable() {
        let om = realize(&triangle()).unwrap();
        let dropped = om.topes()[0];
        let broken = CovectorSet::new(om.ground().clone(), om.iter().copied().filter(|x| *x != dropped)).unwrap();
        let r = verify(broken, None, &VerifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(!r.checks_passed);
    }
}
