//! Integral simplicial homology via Smith normal form of boundary maps.
//!
//! Boundary matrices are first reduced sparsely on unit pivots (which covers
//! almost everything for subdivided complexes); what is left is diagonalized
//! densely over arbitrary-precision integers and brought into divisibility
//! form.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::SimplicialComplex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors greater than one.
    #[serde(serialize_with = "as_strings")]
    pub torsion: Vec<BigInt>,
}

fn as_strings<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Unreduced integral homology in dimensions `0..=dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyTable {
    pub reduced: bool,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyTable {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    /// Alternating sum of Betti numbers.
    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(k, g)| if k % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    /// Homology of a point: `Z` in degree 0 only.
    pub fn is_acyclic(&self) -> bool {
        self.torsion_free()
            && self.groups.first().is_some_and(|g| g.betti == 1)
            && self.groups.iter().skip(1).all(|g| g.betti == 0)
    }

    /// Homology of the `k`-sphere for `k >= 0`.
    pub fn is_sphere(&self, k: usize) -> bool {
        if !self.torsion_free() || self.groups.len() != k + 1 {
            return false;
        }
        if k == 0 {
            return self.groups[0].betti == 2;
        }
        self.groups[0].betti == 1
            && self.groups[k].betti == 1
            && self.groups[1..k].iter().all(|g| g.betti == 0)
    }
}

pub(crate) fn homology(k: &SimplicialComplex) -> HomologyTable {
    let faces = k.faces_by_dim();
    if faces.is_empty() {
        return HomologyTable {
            reduced: false,
            groups: Vec::new(),
        };
    }
    let index: Vec<HashMap<&[u32], usize>> = faces
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect())
        .collect();
    // invariant factors of ∂_q : C_q -> C_{q-1}, q >= 1
    let mut invariants: Vec<Vec<BigInt>> = vec![Vec::new(); faces.len() + 1];
    for q in 1..faces.len() {
        let mut entries = Vec::new();
        for (j, f) in faces[q].iter().enumerate() {
            for i in 0..f.len() {
                let mut r = f.clone();
                r.remove(i);
                let row = index[q - 1][r.as_slice()];
                entries.push((row, j, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        invariants[q] = invariant_factors(faces[q - 1].len(), faces[q].len(), &entries);
    }
    let groups = (0..faces.len())
        .map(|q| {
            let rank_out = if q >= 1 { invariants[q].len() } else { 0 };
            let rank_in = invariants[q + 1].len();
            HomologyGroup {
                betti: faces[q].len() - rank_out - rank_in,
                torsion: invariants[q + 1].iter().filter(|d| !d.is_one()).cloned().collect(),
            }
        })
        .collect();
    HomologyTable {
        reduced: false,
        groups,
    }
}

/// Nonzero invariant factors (positive, each dividing the next) of a sparse
/// integer matrix given as `(row, col, value)` triples.
pub fn invariant_factors(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> Vec<BigInt> {
    let mut row_data: Vec<HashMap<usize, BigInt>> = vec![HashMap::new(); rows];
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); cols];
    for &(r, c, v) in entries {
        if v == 0 {
            continue;
        }
        let e = row_data[r].entry(c).or_insert_with(BigInt::zero);
        *e += v;
        if e.is_zero() {
            row_data[r].remove(&c);
            col_rows[c].remove(&r);
        } else {
            col_rows[c].insert(r);
        }
    }
    let mut factors = Vec::new();
    let mut col_alive = vec![true; cols];

    // sparse phase: sweep columns, pivoting on a unit entry in the shortest row
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..cols {
            if !col_alive[c] || col_rows[c].is_empty() {
                continue;
            }
            let pick = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| row_data[r][&c].abs().is_one())
                .min_by_key(|&r| (row_data[r].len(), r));
            if let Some(p) = pick {
                eliminate(&mut row_data, &mut col_rows, p, c);
                col_alive[c] = false;
                factors.push(BigInt::one());
                progress = true;
            }
        }
    }
    // dense phase on what remains
    let live_rows: Vec<usize> = (0..rows).filter(|&r| !row_data[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..cols)
        .filter(|&c| col_alive[c] && !col_rows[c].is_empty())
        .collect();
    if !live_rows.is_empty() {
        let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense: Vec<Vec<BigInt>> = live_rows
            .iter()
            .map(|&r| {
                let mut row = vec![BigInt::zero(); live_cols.len()];
                for (c, v) in &row_data[r] {
                    row[col_pos[c]] = v.clone();
                }
                row
            })
            .collect();
        let mut diag = diagonalize(&mut dense);
        factors.append(&mut diag);
    }
    divisibility_chain(&mut factors);
    factors
}

/// Clear column `c` using the unit entry in row `p`, then drop row `p`.
/// Afterwards column `c` is empty, so the pivot's row and column split off.
fn eliminate(
    row_data: &mut [HashMap<usize, BigInt>],
    col_rows: &mut [HashSet<usize>],
    p: usize,
    c: usize,
) {
    let pivot_row = std::mem::take(&mut row_data[p]);
    let a = pivot_row[&c].clone(); // ±1, its own inverse
    let others: Vec<usize> = col_rows[c].iter().copied().filter(|&r| r != p).collect();
    for q in others {
        let f = &row_data[q][&c] * &a;
        for (&cc, v) in &pivot_row {
            let e = row_data[q].entry(cc).or_insert_with(BigInt::zero);
            *e -= &f * v;
            if e.is_zero() {
                row_data[q].remove(&cc);
                col_rows[cc].remove(&q);
            } else {
                col_rows[cc].insert(q);
            }
        }
    }
    for &cc in pivot_row.keys() {
        col_rows[cc].remove(&p);
    }
}

/// Diagonalize in place by unimodular row and column operations; returns
/// the absolute values of the nonzero diagonal entries.
fn diagonalize(m: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((i, j)) = best else {
            break;
        };
        m.swap(t, i);
        for row in m.iter_mut() {
            row.swap(t, j);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                for c in t..cols {
                    let v = &q * &m[t][c];
                    m[i][c] -= v;
                }
                if !m[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut() {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !m[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // move the smallest remainder in row/column t to the pivot
            let mut best = (t, t);
            for i in t + 1..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t + 1..cols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.1 == t {
                m.swap(t, best.0);
            } else {
                for row in m.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        out.push(m[t][t].abs());
        t += 1;
    }
    out
}

/// Replace a list of diagonal entries by the invariant factors of the
/// diagonal matrix: pairwise `(a, b) -> (gcd, lcm)`, then sort.
fn divisibility_chain(d: &mut [BigInt]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d.sort();
}
