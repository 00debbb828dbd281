//! Search for elementary collapse sequences down to a single vertex.
//!
//! The search is depth-first: at each step it takes the lexicographically
//! least free face of highest dimension, and on a dead end it backtracks to
//! the next free face at the most recent choice point. A node budget bounds
//! the work; running out is reported as exhaustion, never as a proof of
//! non-collapsibility.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use super::SimplicialComplex;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// One elementary collapse: remove `free` together with its unique proper
/// coface `coface`. Faces are given by vertex labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseStep {
    pub free: Vec<String>,
    pub coface: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseCertificate {
    pub steps: Vec<CollapseStep>,
    pub terminal: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum CollapseOutcome {
    Collapsed(CollapseCertificate),
    /// Budget hit or search space exhausted without reaching a vertex.
    Exhausted { nodes: u64 },
}

impl CollapseOutcome {
    pub fn certificate(&self) -> Option<&CollapseCertificate> {
        match self {
            CollapseOutcome::Collapsed(c) => Some(c),
            CollapseOutcome::Exhausted { .. } => None,
        }
    }
}

struct Faces {
    verts: Vec<Vec<u32>>,
    down: Vec<Vec<u32>>,
    up_count: Vec<u32>,
    up: Vec<Vec<u32>>,
    alive: Vec<bool>,
}

impl Faces {
    /// Ids follow the search priority: higher dimension first, then lexicographic.
    fn new(k: &SimplicialComplex) -> Faces {
        let mut all: Vec<Vec<u32>> = k.faces_by_dim().into_iter().rev().flatten().collect();
        all.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let id: HashMap<&[u32], u32> = all.iter().enumerate().map(|(i, f)| (f.as_slice(), i as u32)).collect();
        let n = all.len();
        let mut down = vec![Vec::new(); n];
        let mut up = vec![Vec::new(); n];
        for (i, f) in all.iter().enumerate() {
            if f.len() < 2 {
                continue;
            }
            for k in 0..f.len() {
                let mut r = f.clone();
                r.remove(k);
                let j = id[r.as_slice()];
                down[i].push(j);
                up[j as usize].push(i as u32);
            }
        }
        let up_count = up.iter().map(|u| u.len() as u32).collect();
        Faces {
            verts: all,
            down,
            up_count,
            up,
            alive: vec![true; n],
        }
    }

    fn is_free(&self, f: u32) -> bool {
        self.alive[f as usize] && self.up_count[f as usize] == 1
    }

    fn coface_of(&self, f: u32) -> u32 {
        *self.up[f as usize]
            .iter()
            .find(|&&t| self.alive[t as usize])
            .expect("free face has a live coface")
    }

    fn refresh(&self, free: &mut BTreeSet<u32>, f: u32) {
        if self.is_free(f) {
            free.insert(f);
        } else {
            free.remove(&f);
        }
    }

    fn apply(&mut self, free: &mut BTreeSet<u32>, s: u32, t: u32) {
        self.alive[s as usize] = false;
        self.alive[t as usize] = false;
        for &r in &self.down[t as usize] {
            self.up_count[r as usize] -= 1;
        }
        for &r in &self.down[s as usize] {
            self.up_count[r as usize] -= 1;
        }
        self.touch(free, s, t);
    }

    fn undo(&mut self, free: &mut BTreeSet<u32>, s: u32, t: u32) {
        self.alive[s as usize] = true;
        self.alive[t as usize] = true;
        for &r in &self.down[t as usize] {
            self.up_count[r as usize] += 1;
        }
        for &r in &self.down[s as usize] {
            self.up_count[r as usize] += 1;
        }
        self.touch(free, s, t);
    }

    fn touch(&self, free: &mut BTreeSet<u32>, s: u32, t: u32) {
        self.refresh(free, s);
        self.refresh(free, t);
        for &r in self.down[t as usize].iter().chain(&self.down[s as usize]) {
            self.refresh(free, r);
        }
    }
}

/// Look for a collapse of `k` to a vertex within `budget` search nodes.
pub fn find_collapse(k: &SimplicialComplex, budget: u64) -> Result<CollapseOutcome> {
    if k.is_void() || k.is_minus_one_sphere() {
        return Err(Error::EmptyComplex);
    }
    let mut faces = Faces::new(k);
    let mut free: BTreeSet<u32> = (0..faces.verts.len() as u32).filter(|&f| faces.is_free(f)).collect();
    let mut remaining = faces.verts.len();
    let mut stack: Vec<(u32, u32)> = Vec::new();
    let mut nodes = 0u64;
    let mut resume_after: Option<u32> = None;
    loop {
        if remaining == 1 {
            break;
        }
        nodes += 1;
        if nodes > budget {
            return Ok(CollapseOutcome::Exhausted { nodes: budget });
        }
        let next = match resume_after {
            None => free.first().copied(),
            Some(prev) => free.range(prev + 1..).next().copied(),
        };
        match next {
            Some(s) => {
                let t = faces.coface_of(s);
                faces.apply(&mut free, s, t);
                stack.push((s, t));
                remaining -= 2;
                resume_after = None;
            }
            None => {
                let Some((s, t)) = stack.pop() else {
                    return Ok(CollapseOutcome::Exhausted { nodes });
                };
                faces.undo(&mut free, s, t);
                remaining += 2;
                resume_after = Some(s);
            }
        }
    }
    let label = |f: u32| -> Vec<String> {
        faces.verts[f as usize].iter().map(|&v| k.label(v).to_string()).collect()
    };
    let terminal = (0..faces.verts.len() as u32)
        .find(|&f| faces.alive[f as usize])
        .map(|f| label(f).remove(0))
        .expect("one vertex remains");
    Ok(CollapseOutcome::Collapsed(CollapseCertificate {
        steps: stack
            .iter()
            .map(|&(s, t)| CollapseStep {
                free: label(s),
                coface: label(t),
            })
            .collect(),
        terminal,
    }))
}

impl CollapseCertificate {
    /// Replay the steps on `k` from scratch, checking each one is an
    /// elementary collapse and that exactly the terminal vertex remains.
    pub fn verify(&self, k: &SimplicialComplex) -> std::result::Result<(), String> {
        let mut present: HashSet<Vec<String>> = HashSet::new();
        for f in k.faces_by_dim().into_iter().flatten() {
            let mut s: Vec<String> = f.iter().map(|&v| k.label(v).to_string()).collect();
            s.sort();
            present.insert(s);
        }
        let vertices: Vec<String> = k.labels().to_vec();
        for (i, step) in self.steps.iter().enumerate() {
            let mut s = step.free.clone();
            s.sort();
            let mut t = step.coface.clone();
            t.sort();
            if !present.contains(&s) || !present.contains(&t) {
                return Err(format!("step {i}: face already removed or never present"));
            }
            if t.len() != s.len() + 1 || !s.iter().all(|v| t.contains(v)) {
                return Err(format!("step {i}: coface does not contain the free face"));
            }
            // present is closed, so s is free iff it has exactly one
            // codimension-one coface
            let cofaces: Vec<&String> = vertices
                .iter()
                .filter(|v| !s.contains(v))
                .filter(|v| {
                    let mut u = s.clone();
                    u.push((*v).clone());
                    u.sort();
                    present.contains(&u)
                })
                .collect();
            if cofaces.len() != 1 {
                return Err(format!("step {i}: face has {} cofaces", cofaces.len()));
            }
            present.remove(&s);
            present.remove(&t);
        }
        let expected = vec![self.terminal.clone()];
        if present.len() != 1 || !present.contains(&expected) {
            return Err(format!("{} faces remain after the last step", present.len()));
        }
        Ok(())
    }
}
