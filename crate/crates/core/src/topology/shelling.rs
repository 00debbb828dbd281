//! Checking coatom orderings for shellability.
//!
//! Meets and covers are taken in the poset with a bottom element `0̂`
//! adjoined. When the poset is the face poset of a simplicial complex the
//! test is exact and works on atom sets. Otherwise meets and covers are
//! computed directly and a pass is only a necessary condition.

use serde::Serialize;

use super::FinitePoset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShellingMode {
    Simplicial,
    NecessaryCondition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShellingVerdict {
    pub mode: ShellingMode,
    pub passed: bool,
    /// `(i, j)` position pairs (`i < j`) with no suitable `k`, as coatom labels.
    pub failures: Vec<(String, String)>,
}

const BOTTOM: usize = usize::MAX;

/// Verify that `order` (indices of the maximal elements of `p`) satisfies
/// the recursive coatom ordering condition: for all `i < j` there is
/// `k < j` with `c_i ∧ c_j ≤ c_k ∧ c_j ⋖ c_j`.
pub fn verify_shelling(p: &FinitePoset, order: &[usize]) -> Result<ShellingVerdict> {
    let maximal = p.maximal();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != maximal {
        return Err(Error::Precondition(
            "order must list each maximal element exactly once".into(),
        ));
    }
    if !is_pure(p) {
        return Err(Error::Precondition("poset is not pure".into()));
    }
    let atoms = p.minimal();
    let atom_sets: Vec<Vec<usize>> = (0..p.len())
        .map(|x| atoms.iter().copied().filter(|&a| p.leq(a, x)).collect())
        .collect();
    let simplicial = is_simplicial(p, &atom_sets);
    let mut failures = Vec::new();
    let n = order.len();
    if simplicial {
        for j in 1..n {
            let aj = &atom_sets[order[j]];
            let cuts: Vec<Vec<usize>> = (0..j).map(|k| intersect(&atom_sets[order[k]], aj)).collect();
            for i in 0..j {
                let ok = (0..j).any(|k| cuts[k].len() + 1 == aj.len() && is_subset(&cuts[i], &cuts[k]));
                if !ok {
                    failures.push((p.label(order[i]).to_string(), p.label(order[j]).to_string()));
                }
            }
        }
    } else {
        let leq = |a: usize, b: usize| a == BOTTOM || (b != BOTTOM && p.leq(a, b));
        let covered_by = |a: usize, b: usize| {
            if a == BOTTOM {
                atoms.contains(&b)
            } else {
                p.covers(a, b)
            }
        };
        for j in 1..n {
            let cj = order[j];
            let mut meets = Vec::with_capacity(j);
            for k in 0..j {
                meets.push(meet(p, order[k], cj)?);
            }
            for i in 0..j {
                let ok = (0..j).any(|k| leq(meets[i], meets[k]) && covered_by(meets[k], cj));
                if !ok {
                    failures.push((p.label(order[i]).to_string(), p.label(cj).to_string()));
                }
            }
        }
    }
    Ok(ShellingVerdict {
        mode: if simplicial {
            ShellingMode::Simplicial
        } else {
            ShellingMode::NecessaryCondition
        },
        passed: failures.is_empty(),
        failures,
    })
}

/// Every maximal chain has the same length.
fn is_pure(p: &FinitePoset) -> bool {
    let n = p.len();
    if n == 0 {
        return true;
    }
    let longest = p.heights();
    // shortest maximal chain ending at each element
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| longest[i]);
    let mut shortest = vec![0usize; n];
    for &i in &order {
        shortest[i] = (0..n)
            .filter(|&j| p.covers(j, i))
            .map(|j| shortest[j] + 1)
            .min()
            .unwrap_or(0);
    }
    let tops = p.maximal();
    let h = longest[tops[0]];
    tops.iter().all(|&t| longest[t] == h && shortest[t] == h)
}

/// Each lower interval is boolean on its atoms, and elements are determined
/// by their atom sets.
fn is_simplicial(p: &FinitePoset, atom_sets: &[Vec<usize>]) -> bool {
    let n = p.len();
    let mut seen = std::collections::HashSet::new();
    for x in 0..n {
        if !seen.insert(atom_sets[x].clone()) {
            return false;
        }
        let a = atom_sets[x].len();
        if a >= usize::BITS as usize - 1 {
            return false;
        }
        let below = (0..n).filter(|&y| p.leq(y, x)).count();
        if below != (1usize << a) - 1 {
            return false;
        }
        // order is inclusion of atom sets
        for y in 0..n {
            if p.leq(y, x) != is_subset(&atom_sets[y], &atom_sets[x]) {
                return false;
            }
        }
    }
    true
}

fn meet(p: &FinitePoset, a: usize, b: usize) -> Result<usize> {
    let lower: Vec<usize> = (0..p.len()).filter(|&x| p.leq(x, a) && p.leq(x, b)).collect();
    if lower.is_empty() {
        return Ok(BOTTOM);
    }
    lower
        .iter()
        .copied()
        .find(|&m| lower.iter().all(|&x| p.leq(x, m)))
        .ok_or_else(|| {
            Error::Validation(format!(
                "{} and {} have no meet; the poset with a bottom adjoined is not a lattice there",
                p.label(a),
                p.label(b)
            ))
        })
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.contains(x)).collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}
