//! Finite posets, abstract simplicial complexes and the topological
//! certificates built on them.

pub mod collapse;
pub mod homology;
pub mod links;
pub mod shelling;

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;


use crate::error::{Error, Result};

pub use collapse::{find_collapse, CollapseCertificate, CollapseOutcome, CollapseStep};
pub use homology::{HomologyGroup, HomologyTable};
pub use links::{classify_complex, classify_links, LinkClass, LinkClassification, Strength, VertexLink};
pub use shelling::{verify_shelling, ShellingMode, ShellingVerdict};

/// A finite poset on labeled elements, stored as a strict-order matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    less: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// `less(i, j)` must be a strict partial order; this is checked.
    pub fn from_fn(labels: Vec<String>, less: impl Fn(usize, usize) -> bool) -> Result<FinitePoset> {
        let n = labels.len();
        let m: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i != j && less(i, j)).collect()).collect();
        for i in 0..n {
            for j in 0..n {
                if m[i][j] && m[j][i] {
                    return Err(Error::Validation(format!(
                        "order is not antisymmetric at {} / {}",
                        labels[i], labels[j]
                    )));
                }
                if m[i][j] {
                    for k in 0..n {
                        if m[j][k] && !m[i][k] {
                            return Err(Error::Validation(format!(
                                "order is not transitive at {} < {} < {}",
                                labels[i], labels[j], labels[k]
                            )));
                        }
                    }
                }
            }
        }
        Ok(FinitePoset { labels, less: m })
    }

    pub fn empty() -> FinitePoset {
        FinitePoset {
            labels: Vec::new(),
            less: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i][j]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.less[i][j]
    }

    /// `i ⋖ j`: `i < j` with nothing strictly between.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.less[i][j] && !(0..self.len()).any(|k| self.less[i][k] && self.less[k][j])
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !(0..self.len()).any(|j| self.less[j][i]))
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !(0..self.len()).any(|j| self.less[i][j]))
            .collect()
    }

    /// Induced subposet on `keep`, in the given order.
    pub fn restrict(&self, keep: &[usize]) -> FinitePoset {
        FinitePoset {
            labels: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            less: keep
                .iter()
                .map(|&i| keep.iter().map(|&j| self.less[i][j]).collect())
                .collect(),
        }
    }

    /// `P_{<x}`.
    pub fn open_below(&self, x: usize) -> FinitePoset {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.less[i][x]).collect();
        self.restrict(&keep)
    }

    /// `P_{>x}`.
    pub fn open_above(&self, x: usize) -> FinitePoset {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.less[x][i]).collect();
        self.restrict(&keep)
    }

    /// Length of a longest chain ending at each element (minimal elements get 0).
    pub fn heights(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        let below: Vec<usize> = (0..n).map(|i| (0..n).filter(|&j| self.less[j][i]).count()).collect();
        order.sort_by_key(|&i| below[i]);
        let mut h = vec![0usize; n];
        for &i in &order {
            h[i] = (0..n)
                .filter(|&j| self.less[j][i])
                .map(|j| h[j] + 1)
                .max()
                .unwrap_or(0);
        }
        h
    }

    /// Δ(P): vertices are the elements, facets the maximal chains.
    /// The empty poset gives `{∅}`.
    pub fn order_complex(&self) -> SimplicialComplex {
        if self.is_empty() {
            return SimplicialComplex::minus_one_sphere();
        }
        let n = self.len();
        let up: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| self.covers(i, j)).collect())
            .collect();
        let mut facets = Vec::new();
        let mut chain = Vec::new();
        fn walk(i: usize, up: &[Vec<usize>], chain: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            chain.push(i as u32);
            if up[i].is_empty() {
                out.push(chain.clone());
            } else {
                for &j in &up[i] {
                    walk(j, up, chain, out);
                }
            }
            chain.pop();
        }
        for m in self.minimal() {
            walk(m, &up, &mut chain, &mut facets);
        }
        SimplicialComplex::from_index_facets(self.labels.clone(), facets)
    }
}

/// An abstract simplicial complex given by its facets.
///
/// `facets == []` is the void complex; `facets == [[]]` is `{∅}`, the
/// (-1)-sphere. Vertex ids index `labels`; every label occurs in a facet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<Vec<u32>>,
}

impl SimplicialComplex {
    pub fn void() -> SimplicialComplex {
        SimplicialComplex {
            labels: Vec::new(),
            facets: Vec::new(),
        }
    }

    pub fn minus_one_sphere() -> SimplicialComplex {
        SimplicialComplex {
            labels: Vec::new(),
            facets: vec![Vec::new()],
        }
    }

    /// Facets given by vertex labels; non-maximal sets are dropped.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<SimplicialComplex> {
        let mut labels: Vec<String> = Vec::new();
        let mut ids: HashMap<String, u32> = HashMap::new();
        let mut idx = Vec::new();
        for f in facets {
            let mut s = Vec::new();
            for v in f {
                let v = v.as_ref();
                let id = *ids.entry(v.to_string()).or_insert_with(|| {
                    labels.push(v.to_string());
                    (labels.len() - 1) as u32
                });
                if s.contains(&id) {
                    return Err(Error::Validation(format!("vertex {v} repeated in a facet")));
                }
                s.push(id);
            }
            idx.push(s);
        }
        Ok(SimplicialComplex::from_index_facets(labels, idx))
    }

    /// Normalizes: sorts, removes duplicates and non-maximal sets, compacts labels.
    pub(crate) fn from_index_facets(labels: Vec<String>, facets: Vec<Vec<u32>>) -> SimplicialComplex {
        let mut fs: Vec<Vec<u32>> = facets
            .into_iter()
            .map(|mut f| {
                f.sort_unstable();
                f.dedup();
                f
            })
            .collect();
        fs.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        fs.dedup();
        let mut kept: Vec<Vec<u32>> = Vec::new();
        for f in fs {
            if !kept.iter().any(|k| is_subset(&f, k)) {
                kept.push(f);
            }
        }
        // compact labels to used vertices, preserving label order
        let mut used = vec![false; labels.len()];
        for f in &kept {
            for &v in f {
                used[v as usize] = true;
            }
        }
        let mut remap = vec![u32::MAX; labels.len()];
        let mut new_labels = Vec::new();
        for (i, l) in labels.into_iter().enumerate() {
            if used[i] {
                remap[i] = new_labels.len() as u32;
                new_labels.push(l);
            }
        }
        let mut facets: Vec<Vec<u32>> = kept
            .into_iter()
            .map(|f| {
                let mut g: Vec<u32> = f.iter().map(|&v| remap[v as usize]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        facets.sort();
        SimplicialComplex {
            labels: new_labels,
            facets,
        }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: u32) -> &str {
        &self.labels[v as usize]
    }

    pub fn vertex(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn facets(&self) -> &[Vec<u32>] {
        &self.facets
    }

    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|&v| self.labels[v as usize].clone()).collect())
            .collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_minus_one_sphere(&self) -> bool {
        self.facets.len() == 1 && self.facets[0].is_empty()
    }

    /// Dimension; `-1` for `{∅}` and for the void complex.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap_or(-1)
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Nonempty faces grouped by dimension, each group sorted.
    pub fn faces_by_dim(&self) -> Vec<Vec<Vec<u32>>> {
        let d = self.dim();
        if d < 0 {
            return Vec::new();
        }
        let mut sets: Vec<HashSet<Vec<u32>>> = vec![HashSet::new(); d as usize + 1];
        for f in &self.facets {
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let s: Vec<u32> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                sets[s.len() - 1].insert(s);
            }
        }
        sets.into_iter()
            .map(|s| {
                let mut v: Vec<Vec<u32>> = s.into_iter().collect();
                v.sort();
                v
            })
            .collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim().iter().map(Vec::len).collect()
    }

    /// Unreduced Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    pub fn contains_face(&self, face: &[u32]) -> bool {
        let mut s = face.to_vec();
        s.sort_unstable();
        self.facets.iter().any(|f| is_subset(&s, f))
    }

    /// `{σ : v ∉ σ, σ ∪ {v} ∈ K}`.
    pub fn link(&self, v: u32) -> Result<SimplicialComplex> {
        if v as usize >= self.labels.len() {
            return Err(Error::Domain(format!("vertex id {v}")));
        }
        self.link_of_face(&[v])
    }

    pub fn link_by_label(&self, label: &str) -> Result<SimplicialComplex> {
        let v = self
            .vertex(label)
            .ok_or_else(|| Error::Domain(format!("vertex {label}")))?;
        self.link(v)
    }

    pub fn link_of_face(&self, face: &[u32]) -> Result<SimplicialComplex> {
        let mut s = face.to_vec();
        s.sort_unstable();
        let facets: Vec<Vec<u32>> = self
            .facets
            .iter()
            .filter(|f| is_subset(&s, f))
            .map(|f| f.iter().copied().filter(|v| !s.contains(v)).collect())
            .collect();
        if facets.is_empty() {
            return Err(Error::Domain(format!("face {s:?} is not in the complex")));
        }
        Ok(SimplicialComplex::from_index_facets(self.labels.clone(), facets))
    }

    /// `K1 * K2`. Shared labels are an error unless `disambiguate` is set, in
    /// which case they are prefixed with `1:` and `2:`.
    pub fn join(&self, other: &SimplicialComplex, disambiguate: bool) -> Result<SimplicialComplex> {
        let clash: Vec<&String> = self.labels.iter().filter(|l| other.labels.contains(l)).collect();
        let (left, right): (Vec<String>, Vec<String>) = if clash.is_empty() {
            (self.labels.clone(), other.labels.clone())
        } else if disambiguate {
            (
                self.labels.iter().map(|l| format!("1:{l}")).collect(),
                other.labels.iter().map(|l| format!("2:{l}")).collect(),
            )
        } else {
            return Err(Error::VertexCollision(clash[0].clone()));
        };
        let offset = left.len() as u32;
        let labels: Vec<String> = left.into_iter().chain(right).collect();
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                let mut f = a.clone();
                f.extend(b.iter().map(|v| v + offset));
                facets.push(f);
            }
        }
        Ok(SimplicialComplex::from_index_facets(labels, facets))
    }

    /// Ridges lying in exactly one facet, as a complex. Requires purity.
    pub fn boundary(&self) -> SimplicialComplex {
        let counts = self.ridge_counts();
        let facets: Vec<Vec<u32>> = counts
            .into_iter()
            .filter(|(_, c)| *c == 1)
            .map(|(r, _)| r)
            .collect();
        SimplicialComplex::from_index_facets(self.labels.clone(), facets)
    }

    /// Number of facets containing each codimension-one face of a facet.
    pub fn ridge_counts(&self) -> Vec<(Vec<u32>, usize)> {
        let mut counts: HashMap<Vec<u32>, usize> = HashMap::new();
        for f in &self.facets {
            for i in 0..f.len() {
                let mut r = f.clone();
                r.remove(i);
                *counts.entry(r).or_insert(0) += 1;
            }
        }
        let mut v: Vec<(Vec<u32>, usize)> = counts.into_iter().collect();
        v.sort();
        v
    }

    /// Facets connected through shared ridges.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.facets.len();
        if n <= 1 {
            return true;
        }
        let mut by_ridge: HashMap<Vec<u32>, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for k in 0..f.len() {
                let mut r = f.clone();
                r.remove(k);
                by_ridge.entry(r).or_default().push(i);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            let f = &self.facets[i];
            for k in 0..f.len() {
                let mut r = f.clone();
                r.remove(k);
                for &j in &by_ridge[&r] {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.labels.len();
        if n <= 1 {
            return true;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for f in &self.facets {
            for w in f.windows(2) {
                let (a, b) = (find(&mut parent, w[0] as usize), find(&mut parent, w[1] as usize));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (0..n).all(|i| find(&mut parent, i) == root)
    }

    /// Face poset of the nonempty faces, labeled by their vertex labels.
    pub fn face_poset(&self) -> FinitePoset {
        let faces: Vec<Vec<u32>> = self.faces_by_dim().into_iter().flatten().collect();
        let labels: Vec<String> = faces
            .iter()
            .map(|f| {
                let names: Vec<&str> = f.iter().map(|&v| self.label(v)).collect();
                names.join(" ")
            })
            .collect();
        FinitePoset {
            labels,
            less: faces
                .iter()
                .map(|a| faces.iter().map(|b| a.len() < b.len() && is_subset(a, b)).collect())
                .collect(),
        }
    }

    pub fn homology(&self) -> HomologyTable {
        homology::homology(self)
    }

    /// One facet per line, vertices separated by spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in self.facet_labels() {
            let _ = writeln!(s, "{}", f.join(" "));
        }
        s
    }

    pub fn parse_text(source_name: &str, text: &str) -> Result<SimplicialComplex> {
        let mut facets: Vec<Vec<String>> = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let f: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            let mut seen = HashSet::new();
            for v in &f {
                if !seen.insert(v) {
                    return Err(Error::parse(source_name, n + 1, format!("vertex {v} repeated")));
                }
            }
            facets.push(f);
        }
        SimplicialComplex::from_facets(&facets)
    }
}

pub(crate) fn is_subset(a: &[u32], b: &[u32]) -> bool {
    // both sorted
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}
