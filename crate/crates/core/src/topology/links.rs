//! Sphere and ball recognition for vertex links.
//!
//! A complex is called certified sphere-like when it is a closed, strongly
//! connected pseudomanifold with sphere homology whose vertex links are
//! recursively certified sphere-like. It is certified ball-like when it has
//! ball homology, every ridge lies in at most two facets, a collapse to a
//! vertex was found, and its boundary is certified sphere-like. A complex
//! whose invariants rule out both is refuted; anything in between is
//! reported as evidence only.

use rayon::prelude::*;
use serde::Serialize;

use super::collapse::{find_collapse, CollapseCertificate, CollapseOutcome};
use super::homology::HomologyTable;
use super::SimplicialComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkClass {
    SphereLike,
    BallLike,
    Other,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strength {
    Refuted,
    EvidenceOnly,
    Certified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkClassification {
    pub class: LinkClass,
    pub strength: Strength,
    pub dim: isize,
    pub f_vector: Vec<usize>,
    pub homology: HomologyTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collapse: Option<CollapseCertificate>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexLink {
    pub vertex: String,
    #[serde(flatten)]
    pub classification: LinkClassification,
}

/// Classify `k` as a sphere or ball of dimension `dim`.
pub fn classify_complex(k: &SimplicialComplex, dim: isize, budget: u64) -> LinkClassification {
    let homology = k.homology();
    let f_vector = k.f_vector();
    let mk = |class, strength, collapse, note: &str| LinkClassification {
        class,
        strength,
        dim: k.dim(),
        f_vector: f_vector.clone(),
        homology: homology.clone(),
        collapse,
        note: note.to_string(),
    };
    if dim == -1 {
        return if k.is_minus_one_sphere() {
            mk(LinkClass::SphereLike, Strength::Certified, None, "empty sphere")
        } else {
            mk(LinkClass::Other, Strength::Refuted, None, "expected the empty complex")
        };
    }
    if k.is_void() || k.is_minus_one_sphere() || k.dim() != dim || !k.is_pure() {
        return mk(LinkClass::Other, Strength::Refuted, None, "not pure of the expected dimension");
    }
    let d = dim as usize;
    let ridges = k.ridge_counts();
    if ridges.iter().any(|(_, c)| *c > 2) {
        return mk(LinkClass::Other, Strength::Refuted, None, "a ridge lies in more than two facets");
    }
    let closed = ridges.iter().all(|(_, c)| *c == 2);
    if homology.is_sphere(d) {
        if !closed || !k.is_strongly_connected() {
            return mk(LinkClass::Other, Strength::Refuted, None, "sphere homology but not a closed pseudomanifold");
        }
        let sub = weakest_vertex_link(k, dim - 1, budget, LinkClass::SphereLike);
        return match sub {
            Strength::Certified => mk(LinkClass::SphereLike, Strength::Certified, None, "vertex links are spheres"),
            Strength::EvidenceOnly => mk(LinkClass::SphereLike, Strength::EvidenceOnly, None, "some vertex link is uncertified"),
            Strength::Refuted => mk(LinkClass::Other, Strength::Refuted, None, "some vertex link is not a sphere"),
        };
    }
    if homology.is_acyclic() {
        if closed {
            return mk(LinkClass::Other, Strength::Refuted, None, "acyclic but without boundary");
        }
        let boundary = classify_complex(&k.boundary(), dim - 1, budget);
        if boundary.class != LinkClass::SphereLike {
            return mk(LinkClass::Other, Strength::Refuted, None, "boundary is not a sphere");
        }
        let collapse = find_collapse(k, budget).ok().and_then(|o| match o {
            CollapseOutcome::Collapsed(c) => Some(c),
            CollapseOutcome::Exhausted { .. } => None,
        });
        let strength = if collapse.is_some() { boundary.strength } else { Strength::EvidenceOnly };
        let note = if collapse.is_some() {
            "collapsible with sphere boundary"
        } else {
            "collapse search exhausted"
        };
        return mk(LinkClass::BallLike, strength, collapse, note);
    }
    mk(LinkClass::Other, Strength::Refuted, None, "homology is neither a sphere nor a ball")
}

/// Weakest strength over all vertex links, requiring `class` for each.
fn weakest_vertex_link(k: &SimplicialComplex, dim: isize, budget: u64, class: LinkClass) -> Strength {
    (0..k.num_vertices() as u32)
        .into_par_iter()
        .map(|v| {
            let link = k.link(v).expect("vertex exists");
            let c = classify_complex(&link, dim, budget);
            if c.class == class {
                c.strength
            } else {
                Strength::Refuted
            }
        })
        .min()
        .unwrap_or(Strength::Certified)
}

/// Classify the link of every vertex of a pure complex as a sphere or ball
/// one dimension lower.
pub fn classify_links(k: &SimplicialComplex, budget: u64) -> Vec<VertexLink> {
    let dim = k.dim() - 1;
    (0..k.num_vertices() as u32)
        .into_par_iter()
        .map(|v| VertexLink {
            vertex: k.label(v).to_string(),
            classification: classify_complex(&k.link(v).expect("vertex exists"), dim, budget),
        })
        .collect()
}
