//! Covector sets: axiom checks, rank, uniformity, topes, minors and tope posets.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::signvec::{ElementSet, GroundSet, SignVector};

/// A finite set of sign vectors over one ground set.
///
/// Covectors are kept sorted by their sign strings, which fixes the order of
/// every derived listing.
#[derive(Debug)]
pub struct CovectorSet {
    ground: GroundSet,
    covectors: Vec<SignVector>,
    lookup: HashMap<SignVector, usize>,
    ranks: OnceLock<Vec<usize>>,
}

impl Clone for CovectorSet {
    fn clone(&self) -> Self {
        CovectorSet::new(self.ground.clone(), self.covectors.iter().copied())
            .expect("clone of a valid covector set")
    }
}

impl PartialEq for CovectorSet {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.covectors == other.covectors
    }
}

impl Eq for CovectorSet {}

impl CovectorSet {
    /// Build a covector set; duplicates collapse.
    pub fn new(ground: GroundSet, covectors: impl IntoIterator<Item = SignVector>) -> Result<Self> {
        let mut v: Vec<SignVector> = covectors.into_iter().collect();
        for x in &v {
            if x.len() != ground.len() {
                return Err(Error::Dimension {
                    expected: ground.len(),
                    found: x.len(),
                });
            }
        }
        v.sort();
        v.dedup();
        let lookup = v.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        Ok(CovectorSet {
            ground,
            covectors: v,
            lookup,
            ranks: OnceLock::new(),
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn covectors(&self) -> &[SignVector] {
        &self.covectors
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignVector> {
        self.covectors.iter()
    }

    pub fn contains(&self, x: &SignVector) -> bool {
        self.lookup.contains_key(x)
    }

    pub fn position(&self, x: &SignVector) -> Option<usize> {
        self.lookup.get(x).copied()
    }

    /// Same covectors, new designation of `g`.
    pub fn with_ground(&self, ground: GroundSet) -> Result<CovectorSet> {
        if ground.len() != self.ground.len() {
            return Err(Error::Dimension {
                expected: self.ground.len(),
                found: ground.len(),
            });
        }
        CovectorSet::new(ground, self.covectors.iter().copied())
    }

    pub(crate) fn require(&self, x: &SignVector) -> Result<usize> {
        self.position(x).ok_or_else(|| Error::Membership {
            what: format!("sign vector {x}"),
            set: "the covector set".into(),
        })
    }

    /// Elements that vanish on every covector.
    pub fn loops(&self) -> Vec<usize> {
        let supp = self
            .covectors
            .iter()
            .fold(ElementSet::EMPTY, |acc, x| acc.union(x.support()));
        (0..self.ground.len()).filter(|&i| !supp.contains(i)).collect()
    }

    /// Exhaustive check of (L0)–(L3).
    pub fn verify_covector_axioms(&self) -> AxiomReport {
        let n = self.ground.len();
        let has_zero = self.contains(&SignVector::zero(n));

        let l1: Vec<SignVector> = self
            .covectors
            .iter()
            .filter(|x| !self.contains(&-**x))
            .copied()
            .collect();

        let l2: Vec<(SignVector, SignVector)> = self
            .covectors
            .par_iter()
            .flat_map_iter(|x| {
                self.covectors
                    .iter()
                    .filter(move |y| !self.contains(&x.comp(y)))
                    .map(move |y| (*x, *y))
            })
            .collect();

        let l3 = self.elimination_failures();

        AxiomReport {
            l0_ok: has_zero,
            l1_ok: l1.is_empty(),
            l2_ok: l2.is_empty(),
            l3_ok: l3.is_empty(),
            missing_zero: !has_zero,
            l1_witnesses: l1,
            l2_witnesses: l2,
            l3_witnesses: l3,
            loops: self.loops(),
        }
    }

    /// Every `(X, Y, e)` with `e ∈ S(X,Y)` lacking an eliminating covector.
    ///
    /// Pairs are grouped by separation set `S`. For each `S`, covectors are
    /// bucketed by their restriction to `E \ S`; a bucket records the union of
    /// zero positions inside `S`. `(X, Y, e)` is satisfied iff the bucket of
    /// `X ∘ Y` has bit `e`.
    fn elimination_failures(&self) -> Vec<(SignVector, SignVector, usize)> {
        let m = self.covectors.len();
        let mut groups: HashMap<u64, Vec<(u32, u32)>> = HashMap::new();
        for i in 0..m {
            for j in i + 1..m {
                let s = self.covectors[i].sep(&self.covectors[j]);
                if !s.is_empty() {
                    groups.entry(s.bits()).or_default().push((i as u32, j as u32));
                }
            }
        }
        let mut keys: Vec<u64> = groups.keys().copied().collect();
        keys.sort_unstable();
        let mut out: Vec<(SignVector, SignVector, usize)> = keys
            .par_iter()
            .flat_map_iter(|&s| {
                let outside = !s;
                let mut buckets: HashMap<(u64, u64), u64> = HashMap::new();
                for z in &self.covectors {
                    let key = (z.plus_set().bits() & outside, z.minus_set().bits() & outside);
                    *buckets.entry(key).or_insert(0) |= z.zero_set().bits() & s;
                }
                let mut bad = Vec::new();
                for &(i, j) in &groups[&s] {
                    let x = self.covectors[i as usize];
                    let y = self.covectors[j as usize];
                    let w = x.comp(&y);
                    let key = (w.plus_set().bits() & outside, w.minus_set().bits() & outside);
                    let zeros = buckets.get(&key).copied().unwrap_or(0);
                    for e in ElementSet::from_bits(s).iter() {
                        if zeros >> e & 1 == 0 {
                            bad.push((x, y, e));
                        }
                    }
                }
                bad
            })
            .collect();
        out.sort();
        out
    }

    /// Poset height of every covector, parallel to [`covectors`](Self::covectors).
    pub fn ranks(&self) -> &[usize] {
        self.ranks.get_or_init(|| {
            let mut order: Vec<usize> = (0..self.covectors.len()).collect();
            order.sort_by_key(|&i| self.covectors[i].support().len());
            let mut rank = vec![0usize; self.covectors.len()];
            for (k, &i) in order.iter().enumerate() {
                let x = self.covectors[i];
                let mut best = None;
                for &j in &order[..k] {
                    let y = self.covectors[j];
                    if y.less(&x) {
                        best = Some(best.map_or(rank[j], |b: usize| b.max(rank[j])));
                    }
                }
                rank[i] = best.map_or(0, |b| b + 1);
            }
            rank
        })
    }

    /// Length of a longest chain from the bottom to `x`.
    pub fn covector_rank(&self, x: &SignVector) -> Result<usize> {
        let i = self.require(x)?;
        Ok(self.ranks()[i])
    }

    /// Rank of the whole set: maximum covector rank.
    pub fn rank(&self) -> usize {
        self.ranks().iter().copied().max().unwrap_or(0)
    }

    pub fn topes(&self) -> Vec<SignVector> {
        self.covectors
            .iter()
            .filter(|x| !self.covectors.iter().any(|y| x.less(y)))
            .copied()
            .collect()
    }

    pub fn atoms(&self) -> Vec<SignVector> {
        self.covectors
            .iter()
            .filter(|x| !x.is_zero())
            .filter(|x| !self.covectors.iter().any(|y| !y.is_zero() && y.less(x)))
            .copied()
            .collect()
    }

    /// Both uniformity criteria: zero-set census and `rank(X) = r - |z(X)|`.
    pub fn uniformity(&self) -> UniformityReport {
        let n = self.ground.len();
        let r = self.rank();
        let zero_sets: HashSet<u64> = self.covectors.iter().map(|x| x.zero_set().bits()).collect();
        let mut missing = Vec::new();
        for size in 0..r.min(n + 1) {
            for f in subsets_of_size(n, size) {
                if !zero_sets.contains(&f.bits()) {
                    missing.push(f);
                }
            }
        }
        let ranks = self.ranks();
        let rank_violations: Vec<SignVector> = self
            .covectors
            .iter()
            .zip(ranks)
            .filter(|(x, &k)| !x.is_zero() && k + x.zero_set().len() != r)
            .map(|(x, _)| *x)
            .collect();
        UniformityReport {
            rank: r,
            zero_set_criterion: missing.is_empty(),
            rank_criterion: rank_violations.is_empty(),
            missing_zero_sets: missing,
            rank_violations,
        }
    }

    pub fn is_uniform(&self) -> bool {
        self.uniformity().is_uniform()
    }

    /// Deletion minor `L \ A`: restrict every covector to `E \ A`.
    pub fn delete_minor(&self, removed: ElementSet) -> Result<CovectorSet> {
        self.ground.check_subset(removed)?;
        let ground = self.ground.delete(removed)?;
        CovectorSet::new(ground, self.covectors.iter().map(|x| x.del(removed)))
    }

    /// Contraction minor `L / A`: covectors vanishing on `A`, restricted to `E \ A`.
    pub fn contract(&self, removed: ElementSet) -> Result<CovectorSet> {
        self.ground.check_subset(removed)?;
        let ground = self.ground.delete(removed)?;
        CovectorSet::new(
            ground,
            self.covectors
                .iter()
                .filter(|x| x.support().intersection(removed).is_empty())
                .map(|x| x.del(removed)),
        )
    }

    /// `T(L, B)`: topes ordered by containment of separation sets from `base`.
    pub fn tope_poset(&self, base: &SignVector) -> Result<TopePoset> {
        let topes = self.topes();
        if !topes.contains(base) {
            return Err(Error::Membership {
                what: format!("sign vector {base}"),
                set: "the topes".into(),
            });
        }
        Ok(TopePoset::new(*base, topes))
    }
}

/// All subsets of `{0..n}` with exactly `size` elements, in lexicographic order.
pub fn subsets_of_size(n: usize, size: usize) -> Vec<ElementSet> {
    fn rec(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<ElementSet>) {
        if left == 0 {
            out.push(ElementSet::from_indices(cur.iter().copied()));
            return;
        }
        for i in start..n {
            if n - i < left {
                break;
            }
            cur.push(i);
            rec(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

/// Outcome of [`CovectorSet::verify_covector_axioms`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub l0_ok: bool,
    pub l1_ok: bool,
    pub l2_ok: bool,
    pub l3_ok: bool,
    /// L0 witness: the zero vector is absent.
    pub missing_zero: bool,
    /// Covectors whose opposite is absent.
    pub l1_witnesses: Vec<SignVector>,
    /// Ordered pairs whose composition is absent.
    pub l2_witnesses: Vec<(SignVector, SignVector)>,
    /// `(X, Y, e)` with no eliminating covector.
    pub l3_witnesses: Vec<(SignVector, SignVector, usize)>,
    /// Elements that are zero on every covector (reported, not a failure).
    pub loops: Vec<usize>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.l0_ok && self.l1_ok && self.l2_ok && self.l3_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformityReport {
    pub rank: usize,
    pub zero_set_criterion: bool,
    pub rank_criterion: bool,
    /// Sets `F` with `|F| < r` that are nobody's zero set, in (size, lex) order.
    pub missing_zero_sets: Vec<ElementSet>,
    pub rank_violations: Vec<SignVector>,
}

impl UniformityReport {
    pub fn is_uniform(&self) -> bool {
        self.zero_set_criterion && self.rank_criterion
    }

    pub fn criteria_agree(&self) -> bool {
        self.zero_set_criterion == self.rank_criterion
    }

    pub fn witness(&self) -> Option<ElementSet> {
        self.missing_zero_sets.first().copied()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// The tope poset `T(L, B)`.
#[derive(Debug, Clone)]
pub struct TopePoset {
    base: SignVector,
    topes: Vec<SignVector>,
    seps: Vec<ElementSet>,
    relation: Vec<(usize, usize)>,
}

impl TopePoset {
    pub(crate) fn new(base: SignVector, topes: Vec<SignVector>) -> TopePoset {
        let seps: Vec<ElementSet> = topes.iter().map(|t| base.sep(t)).collect();
        let mut relation = Vec::new();
        for i in 0..topes.len() {
            for j in 0..topes.len() {
                if seps[i].is_subset(seps[j]) {
                    relation.push((i, j));
                }
            }
        }
        TopePoset {
            base,
            topes,
            seps,
            relation,
        }
    }

    pub fn base(&self) -> SignVector {
        self.base
    }

    pub fn topes(&self) -> &[SignVector] {
        &self.topes
    }

    pub fn len(&self) -> usize {
        self.topes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.topes.is_empty()
    }

    /// All pairs `(i, j)` with `topes[i] ≤ topes[j]`, reflexive pairs included.
    pub fn relation(&self) -> &[(usize, usize)] {
        &self.relation
    }

    pub fn index_of(&self, t: &SignVector) -> Option<usize> {
        self.topes.iter().position(|x| x == t)
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.seps[i].is_subset(self.seps[j])
    }

    pub fn separation(&self, i: usize) -> ElementSet {
        self.seps[i]
    }

    /// Indices `k` with `i ≤ k ≤ j`.
    pub fn interval(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&k| self.le(i, k) && self.le(k, j))
            .collect()
    }

    /// Deterministic key: `|S(B,T)|`, then `S(B,T)` as a sorted list, then the sign string.
    fn cmp_key(&self, a: usize, b: usize) -> std::cmp::Ordering {
        self.seps[a]
            .len()
            .cmp(&self.seps[b].len())
            .then_with(|| self.seps[a].cmp_lex(self.seps[b]))
            .then_with(|| self.topes[a].cmp(&self.topes[b]))
    }

    /// The deterministic linear extension.
    pub fn linear_extension(&self) -> Vec<SignVector> {
        self.sorted_subset(&(0..self.len()).collect::<Vec<_>>())
    }

    /// `subset` in deterministic linear-extension order.
    pub fn sorted_subset(&self, subset: &[usize]) -> Vec<SignVector> {
        let mut idx = subset.to_vec();
        idx.sort_by(|&a, &b| self.cmp_key(a, b));
        idx.into_iter().map(|i| self.topes[i]).collect()
    }

    /// A uniformly chosen minimal element at every step.
    pub fn random_linear_extension<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<SignVector> {
        let n = self.len();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let mut ready: Vec<usize> = (0..n)
                .filter(|&i| !placed[i])
                .filter(|&i| (0..n).all(|j| j == i || placed[j] || !self.le(j, i)))
                .collect();
            ready.shuffle(rng);
            let i = ready[0];
            placed[i] = true;
            out.push(self.topes[i]);
        }
        out
    }

    /// True iff `seq` lists every tope once and respects the order.
    pub fn is_linear_extension(&self, seq: &[SignVector]) -> bool {
        if seq.len() != self.len() {
            return false;
        }
        self.is_ideal_sequence(seq)
    }

    /// True iff every prefix of `seq` is an order ideal (no repeats).
    pub fn is_ideal_sequence(&self, seq: &[SignVector]) -> bool {
        let mut seen = vec![false; self.len()];
        for t in seq {
            let Some(i) = self.index_of(t) else {
                return false;
            };
            if seen[i] {
                return false;
            }
            if (0..self.len()).any(|j| j != i && self.le(j, i) && !seen[j]) {
                return false;
            }
            seen[i] = true;
        }
        true
    }
}

/// Comparable pairs inside `[lo, hi]` of `T(L, base)`, as tope pairs.
pub fn interval_pairs(
    om: &CovectorSet,
    base: &SignVector,
    lo: &SignVector,
    hi: &SignVector,
) -> Result<Vec<(SignVector, SignVector)>> {
    let p = om.tope_poset(base)?;
    let i = p.index_of(lo).ok_or_else(|| Error::Membership {
        what: lo.to_string(),
        set: "the topes".into(),
    })?;
    let j = p.index_of(hi).ok_or_else(|| Error::Membership {
        what: hi.to_string(),
        set: "the topes".into(),
    })?;
    let iv = p.interval(i, j);
    let mut pairs = Vec::new();
    for &a in &iv {
        for &b in &iv {
            if p.le(a, b) {
                pairs.push((p.topes()[a], p.topes()[b]));
            }
        }
    }
    pairs.sort();
    Ok(pairs)
}
