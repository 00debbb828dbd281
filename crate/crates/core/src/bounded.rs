//! Affine oriented matroids, their bounded complexes, and the local
//! structure of the bounded complex around each of its cells.

use std::collections::HashSet;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::om::CovectorSet;
use crate::signvec::{ElementSet, GroundSet, Sign, SignVector};
use crate::topology::{verify_shelling, FinitePoset, ShellingVerdict, SimplicialComplex};

/// An oriented matroid together with a distinguished non-loop element `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineOM {
    om: CovectorSet,
    g: usize,
}

impl AffineOM {
    /// Checks the covector axioms, then the affine preconditions.
    pub fn new(om: CovectorSet) -> Result<AffineOM> {
        let report = om.verify_covector_axioms();
        if !report.all_ok() {
            return Err(Error::Precondition("covector axioms do not hold".into()));
        }
        AffineOM::from_verified(om)
    }

    /// For covector sets whose axioms the caller has already checked.
    pub fn from_verified(om: CovectorSet) -> Result<AffineOM> {
        let g = om
            .ground()
            .g_index()
            .ok_or_else(|| Error::Precondition("no element designated as g".into()))?;
        if om.ground().len() < 2 {
            return Err(Error::Precondition("ground set must have more than one element".into()));
        }
        if om.loops().contains(&g) {
            return Err(Error::Precondition(format!("g = {} is a loop", om.ground().label(g))));
        }
        Ok(AffineOM { om, g })
    }

    pub fn om(&self) -> &CovectorSet {
        &self.om
    }

    pub fn ground(&self) -> &GroundSet {
        self.om.ground()
    }

    pub fn g(&self) -> usize {
        self.g
    }

    /// `L⁺`: covectors positive at `g`.
    pub fn positive_part(&self) -> Vec<SignVector> {
        self.om.iter().filter(|x| x.get(self.g) == Sign::Plus).copied().collect()
    }

    /// `L⁺⁺`: covectors of `L⁺` all of whose nonzero lower bounds lie in `L⁺`.
    pub fn bounded_complex(&self) -> BoundedComplex {
        let g = self.g;
        let positive = self.positive_part();
        // a nonzero Y below X ∈ L⁺ has Y_g ∈ {0,+}; reject X if some Y_g = 0
        let zero_at_g: Vec<SignVector> = self
            .om
            .iter()
            .filter(|y| !y.is_zero() && y.get(g) == Sign::Zero)
            .copied()
            .collect();
        let cells: Vec<SignVector> = positive
            .par_iter()
            .filter(|x| !zero_at_g.iter().any(|y| y.less(x)))
            .copied()
            .collect();
        BoundedComplex::new(&self.om, cells)
    }

    /// `L/g`.
    pub fn contraction(&self) -> CovectorSet {
        self.om
            .contract(ElementSet::singleton(self.g))
            .expect("g is in the ground set")
    }

    /// Restrict to the common support `E₁` of the maximal bounded cells.
    /// Returns the restricted affine oriented matroid and the removed set.
    pub fn restrict_to_support(&self) -> Result<(AffineOM, ElementSet)> {
        let bc = self.bounded_complex();
        let support = bc.support().ok_or_else(|| {
            Error::Validation("maximal bounded cells do not share a support".into())
        })?;
        let removed = self.ground().all().difference(support);
        if removed.is_empty() {
            return Ok((self.clone(), removed));
        }
        let om = self.om.delete_minor(removed)?;
        Ok((AffineOM::from_verified(om)?, removed))
    }
}

/// `L⁺⁺` as a subposet of `L`, with its cells and face counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedComplex {
    ground: GroundSet,
    cells: Vec<SignVector>,
    dims: Vec<usize>,
    maximal: Vec<usize>,
}

impl BoundedComplex {
    fn new(om: &CovectorSet, mut cells: Vec<SignVector>) -> BoundedComplex {
        cells.sort();
        let ranks = om.ranks();
        let dims: Vec<usize> = cells
            .iter()
            .map(|x| ranks[om.position(x).expect("cell is a covector")] - 1)
            .collect();
        let maximal = (0..cells.len())
            .filter(|&i| !cells.iter().any(|y| cells[i].less(y)))
            .collect();
        BoundedComplex {
            ground: om.ground().clone(),
            cells,
            dims,
            maximal,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn cells(&self) -> &[SignVector] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, x: &SignVector) -> bool {
        self.cells.binary_search(x).is_ok()
    }

    /// Cell dimension: covector rank minus one.
    pub fn cell_dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn maximal_cells(&self) -> Vec<SignVector> {
        self.maximal.iter().map(|&i| self.cells[i]).collect()
    }

    pub fn dim(&self) -> Option<usize> {
        self.dims.iter().copied().max()
    }

    pub fn is_pure(&self) -> bool {
        let mut d = self.maximal.iter().map(|&i| self.dims[i]);
        match d.next() {
            Some(first) => d.all(|x| x == first),
            None => true,
        }
    }

    /// Common support of the maximal cells, if they share one.
    pub fn support(&self) -> Option<ElementSet> {
        let mut s = self.maximal.iter().map(|&i| self.cells[i].support());
        let first = s.next()?;
        s.all(|x| x == first).then_some(first)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; self.dim().map_or(0, |d| d + 1)];
        for &d in &self.dims {
            f[d] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|&d| if d % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// The cells ordered as covectors, labeled by sign strings.
    pub fn face_poset(&self) -> FinitePoset {
        let cells = &self.cells;
        FinitePoset::from_fn(cells.iter().map(ToString::to_string).collect(), |i, j| {
            cells[i].less(&cells[j])
        })
        .expect("covector order is a partial order")
    }

    /// `Δ(L⁺⁺)`, the barycentric subdivision.
    pub fn order_complex(&self) -> SimplicialComplex {
        self.face_poset().order_complex()
    }

    /// Check that deleting `removed` maps this complex isomorphically onto `other`.
    pub fn is_isomorphic_by_deletion(&self, other: &BoundedComplex, removed: ElementSet) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let image: Vec<SignVector> = self.cells.iter().map(|x| x.del(removed)).collect();
        if image.iter().any(|y| !other.contains(y)) {
            return false;
        }
        if image.iter().collect::<HashSet<_>>().len() != image.len() {
            return false;
        }
        (0..self.len()).all(|i| {
            (0..self.len()).all(|j| self.cells[i].leq(&self.cells[j]) == image[i].leq(&image[j]))
        })
    }
}

/// The map `Y ↦ Y \ supp(X)` from `L_{≥X}` to the full sign cube on `z(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CubeReport {
    pub size: usize,
    pub expected: u64,
    pub pairs: Vec<(SignVector, SignVector)>,
    pub isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Cube check for a uniform oriented matroid.
pub fn cube_isomorphism(om: &CovectorSet, x: &SignVector) -> Result<CubeReport> {
    if !om.is_uniform() {
        return Err(Error::Precondition("oriented matroid is not uniform".into()));
    }
    cube_check(om, x)
}

/// Cube check without the uniformity precondition; on non-uniform input it
/// may fail and report why.
pub fn cube_check(om: &CovectorSet, x: &SignVector) -> Result<CubeReport> {
    om.require(x)?;
    if x.is_zero() {
        return Err(Error::Precondition("X must be nonzero".into()));
    }
    let supp = x.support();
    let k = x.zero_set().len();
    let expected = 3u64.pow(k as u32);
    let above: Vec<SignVector> = om.iter().filter(|y| x.leq(y)).copied().collect();
    let pairs: Vec<(SignVector, SignVector)> = above.iter().map(|y| (*y, y.del(supp))).collect();
    let mut counterexample = None;
    if above.len() as u64 != expected {
        counterexample = Some(format!("|L_(>=X)| = {}, expected {expected}", above.len()));
    } else if pairs.iter().map(|p| p.1).collect::<HashSet<_>>().len() != pairs.len() {
        counterexample = Some("restriction is not injective".into());
    } else {
        'outer: for a in &pairs {
            for b in &pairs {
                if a.0.leq(&b.0) != a.1.leq(&b.1) {
                    counterexample = Some(format!("order differs on {} and {}", a.0, b.0));
                    break 'outer;
                }
            }
        }
    }
    Ok(CubeReport {
        size: above.len(),
        expected,
        isomorphic: counterexample.is_none(),
        pairs,
        counterexample,
    })
}

/// Shellings of `L_{>X}` from random linear extensions of the tope poset
/// restricted to the topes above `X`, based at the least such tope.
pub fn upper_tope_shellings<R: Rng + ?Sized>(
    om: &CovectorSet,
    x: &SignVector,
    samples: usize,
    rng: &mut R,
) -> Result<Vec<ShellingVerdict>> {
    om.require(x)?;
    let above: Vec<SignVector> = om.iter().filter(|y| x.less(y)).copied().collect();
    let topes: Vec<SignVector> = om.topes().into_iter().filter(|t| x.leq(t)).collect();
    let base = *topes.first().ok_or_else(|| Error::Validation("no tope above X".into()))?;
    let tp = om.tope_poset(&base)?;
    let keep: Vec<usize> = topes.iter().map(|t| tp.index_of(t).expect("tope")).collect();
    let sub = restricted_tope_poset(&tp, &keep);
    let poset = FinitePoset::from_fn(above.iter().map(ToString::to_string).collect(), |i, j| {
        above[i].less(&above[j])
    })?;
    let mut out = Vec::with_capacity(samples);
    for _ in 0..samples {
        let ext = sub.random_linear_extension(rng);
        let order: Vec<usize> = ext
            .iter()
            .map(|t| above.iter().position(|y| y == t).expect("tope above X"))
            .collect();
        out.push(verify_shelling(&poset, &order)?);
    }
    Ok(out)
}

fn restricted_tope_poset(tp: &crate::om::TopePoset, keep: &[usize]) -> crate::om::TopePoset {
    crate::om::TopePoset::new(tp.base(), keep.iter().map(|&i| tp.topes()[i]).collect())
}

/// Which of the three local situations a cell of `L⁺⁺` is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkCase {
    /// No bounded cell strictly above `X`.
    UpperEmpty,
    /// Every covector above `X` is bounded.
    UpperFull,
    Proper,
}

#[derive(Debug, Clone)]
pub struct LinkDecomposition {
    pub lower: FinitePoset,
    pub upper: FinitePoset,
    pub case: LinkCase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionReport {
    pub pairs: Vec<(SignVector, SignVector)>,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DxShelling {
    pub base: SignVector,
    pub order: Vec<SignVector>,
    pub prefixes_are_ideals: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedShelling {
    pub order: Vec<SignVector>,
    pub verdict: ShellingVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryReport {
    pub checked: usize,
    pub failures: Vec<SignVector>,
}

/// All per-cell checks for one `X ∈ L⁺⁺`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub cell: SignVector,
    pub case: LinkCase,
    pub unbounded_topes: usize,
    pub contraction_topes: usize,
    pub cube: Option<bool>,
    pub bijection: BijectionReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dx_shelling: Option<DxShelling>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced_shelling: Option<InducedShelling>,
    /// When the default base fails, the least base of `D_X` whose induced
    /// order is a shelling (`None` inside means no base works).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alternative_base: Option<Option<SignVector>>,
}

impl CellReport {
    pub fn passed(&self) -> bool {
        self.cube != Some(false)
            && self.bijection.passed
            && self.dx_shelling.as_ref().is_none_or(|s| s.prefixes_are_ideals)
            && self.induced_shelling.as_ref().is_none_or(|s| s.verdict.passed)
    }

    /// Like [`passed`](Self::passed), but accepts a shelling from any base of `D_X`.
    pub fn passed_with_some_base(&self) -> bool {
        self.cube != Some(false)
            && self.bijection.passed
            && self.dx_shelling.as_ref().is_none_or(|s| s.prefixes_are_ideals)
            && (self.induced_shelling.as_ref().is_none_or(|s| s.verdict.passed)
                || matches!(self.alternative_base, Some(Some(_))))
    }
}

/// Local structure of a full-dimensional bounded complex around each cell.
#[derive(Debug, Clone)]
pub struct LocalAnalysis {
    aom: AffineOM,
    removed: ElementSet,
    original_len: usize,
    bounded: BoundedComplex,
    contraction: CovectorSet,
    topes: Vec<SignVector>,
    contraction_topes: Vec<SignVector>,
}

impl LocalAnalysis {
    /// Restricts to `E₁` first when the bounded complex is not full-dimensional.
    pub fn new(aom: &AffineOM) -> Result<LocalAnalysis> {
        let (reduced, removed) = aom.restrict_to_support()?;
        let bounded = reduced.bounded_complex();
        let contraction = reduced.contraction();
        let topes = reduced.om().topes();
        let contraction_topes = contraction.topes();
        Ok(LocalAnalysis {
            original_len: aom.ground().len(),
            aom: reduced,
            removed,
            bounded,
            contraction,
            topes,
            contraction_topes,
        })
    }

    pub fn affine(&self) -> &AffineOM {
        &self.aom
    }

    /// Elements deleted to reach full dimension, as indices of the input.
    pub fn removed(&self) -> ElementSet {
        self.removed
    }

    pub fn bounded(&self) -> &BoundedComplex {
        &self.bounded
    }

    pub fn contraction(&self) -> &CovectorSet {
        &self.contraction
    }

    /// Accepts sign vectors over the input ground set or the restricted one.
    pub fn localize(&self, x: &SignVector) -> Result<SignVector> {
        if x.len() == self.aom.ground().len() {
            Ok(*x)
        } else if x.len() == self.original_len {
            Ok(x.del(self.removed))
        } else {
            Err(Error::Dimension {
                expected: self.aom.ground().len(),
                found: x.len(),
            })
        }
    }

    fn require_cell(&self, x: &SignVector) -> Result<SignVector> {
        let x = self.localize(x)?;
        if !self.bounded.contains(&x) {
            return Err(Error::Membership {
                what: format!("sign vector {x}"),
                set: "the bounded complex".into(),
            });
        }
        if x.del(ElementSet::singleton(self.aom.g)).is_zero() {
            return Err(Error::Precondition(format!("{x} is zero off g")));
        }
        Ok(x)
    }

    /// `r(T) = T \ g`.
    pub fn r(&self, t: &SignVector) -> SignVector {
        t.del(ElementSet::singleton(self.aom.g))
    }

    /// `h(D) = i(D) ∘ X`, where `i` inserts a zero at `g`.
    pub fn h(&self, x: &SignVector, d: &SignVector) -> SignVector {
        d.insert(self.aom.g, Sign::Zero).comp(x)
    }

    /// `C_X`: topes above `X` that are not bounded.
    pub fn unbounded_topes_above(&self, x: &SignVector) -> Result<Vec<SignVector>> {
        let x = self.require_cell(x)?;
        Ok(self
            .topes
            .iter()
            .filter(|t| x.less(t) && !self.bounded.contains(t))
            .copied()
            .collect())
    }

    /// `D_X`: topes of `L/g` agreeing with `X` on the support of `X \ g`.
    pub fn contraction_topes_above(&self, x: &SignVector) -> Result<Vec<SignVector>> {
        let x = self.require_cell(x)?;
        let xd = self.r(&x);
        Ok(self.contraction_topes.iter().filter(|t| xd.leq(t)).copied().collect())
    }

    pub fn check_bijection(&self, x: &SignVector) -> Result<BijectionReport> {
        let x = self.require_cell(x)?;
        let c = self.unbounded_topes_above(&x)?;
        let d = self.contraction_topes_above(&x)?;
        let d_set: HashSet<SignVector> = d.iter().copied().collect();
        let c_set: HashSet<SignVector> = c.iter().copied().collect();
        let mut failures = Vec::new();
        let mut pairs = Vec::new();
        let mut images = HashSet::new();
        for t in &c {
            let rt = self.r(t);
            if !d_set.contains(&rt) {
                failures.push(format!("r({t}) = {rt} is not in D_X"));
            }
            if !images.insert(rt) {
                failures.push(format!("r is not injective at {rt}"));
            }
            if self.h(&x, &rt) != *t {
                failures.push(format!("h(r({t})) differs from {t}"));
            }
            pairs.push((*t, rt));
        }
        for dd in &d {
            let hd = self.h(&x, dd);
            if !c_set.contains(&hd) {
                failures.push(format!("h({dd}) = {hd} is not in C_X"));
            }
            if self.r(&hd) != *dd {
                failures.push(format!("r(h({dd})) differs from {dd}"));
            }
        }
        // every tope above X: unbounded iff its deletion is in D_X
        for t in self.topes.iter().filter(|t| x.less(t)) {
            if c_set.contains(t) != d_set.contains(&self.r(t)) {
                failures.push(format!("{t}: membership in C_X and D_X disagree"));
            }
        }
        Ok(BijectionReport {
            passed: failures.is_empty(),
            pairs,
            failures,
        })
    }

    /// `D_X` in deterministic linear-extension order of `T(L/g, B)`.
    /// `B` defaults to the least tope of `D_X`.
    pub fn shelling_of_dx(&self, x: &SignVector, base: Option<&SignVector>) -> Result<DxShelling> {
        let d = self.contraction_topes_above(x)?;
        if d.is_empty() {
            return Err(Error::Precondition("D_X is empty".into()));
        }
        let base = match base {
            Some(b) if d.contains(b) => *b,
            Some(b) => {
                return Err(Error::Membership {
                    what: format!("tope {b}"),
                    set: "D_X".into(),
                })
            }
            None => *d.iter().min().expect("nonempty"),
        };
        let tp = self.contraction.tope_poset(&base)?;
        let idx: Vec<usize> = d.iter().map(|t| tp.index_of(t).expect("tope of L/g")).collect();
        let order = tp.sorted_subset(&idx);
        Ok(DxShelling {
            base,
            prefixes_are_ideals: tp.is_ideal_sequence(&order),
            order,
        })
    }

    /// Lift a `D_X` order through `h` and check it as a shelling of `[C_X]`.
    pub fn induced_shelling_of_cx(&self, x: &SignVector, dx_order: &[SignVector]) -> Result<InducedShelling> {
        let x = self.require_cell(x)?;
        let order: Vec<SignVector> = dx_order.iter().map(|d| self.h(&x, d)).collect();
        let cells: Vec<SignVector> = self
            .aom
            .om()
            .iter()
            .filter(|y| x.less(y) && order.iter().any(|c| y.leq(c)))
            .copied()
            .collect();
        let poset = FinitePoset::from_fn(cells.iter().map(ToString::to_string).collect(), |i, j| {
            cells[i].less(&cells[j])
        })?;
        let idx: Vec<usize> = order
            .iter()
            .map(|c| {
                cells.iter().position(|y| y == c).ok_or_else(|| Error::Membership {
                    what: format!("tope {c}"),
                    set: "[C_X]".into(),
                })
            })
            .collect::<Result<_>>()?;
        let verdict = verify_shelling(&poset, &idx)?;
        Ok(InducedShelling { order, verdict })
    }

    /// Least `B ∈ D_X` whose induced order passes the shelling check.
    pub fn find_shelling_base(&self, x: &SignVector) -> Result<Option<SignVector>> {
        for b in self.contraction_topes_above(x)? {
            let s = self.shelling_of_dx(x, Some(&b))?;
            if self.induced_shelling_of_cx(x, &s.order)?.verdict.passed {
                return Ok(Some(b));
            }
        }
        Ok(None)
    }

    /// `L⁺⁺_{<X}` and `L⁺⁺_{>X}`, whose order complexes join to the link of `X`.
    pub fn link_decomposition(&self, x: &SignVector) -> Result<LinkDecomposition> {
        let x = self.localize(x)?;
        if !self.bounded.contains(&x) {
            return Err(Error::Membership {
                what: format!("sign vector {x}"),
                set: "the bounded complex".into(),
            });
        }
        let sub = |keep: Vec<SignVector>| {
            FinitePoset::from_fn(keep.iter().map(ToString::to_string).collect(), |i, j| {
                keep[i].less(&keep[j])
            })
            .expect("covector order")
        };
        let cells = self.bounded.cells();
        let lower: Vec<SignVector> = cells.iter().filter(|y| y.less(&x)).copied().collect();
        let upper: Vec<SignVector> = cells.iter().filter(|y| x.less(y)).copied().collect();
        let all_above = self.aom.om().iter().filter(|y| x.less(y)).count();
        let case = if upper.is_empty() {
            LinkCase::UpperEmpty
        } else if upper.len() == all_above {
            LinkCase::UpperFull
        } else {
            LinkCase::Proper
        };
        Ok(LinkDecomposition {
            lower: sub(lower),
            upper: sub(upper),
            case,
        })
    }

    /// For `X ∈ L⁺` with `X \ g ≠ 0`: `X \ g ∈ L/g` iff `X ∉ L⁺⁺`.
    /// Guaranteed for uniform input only; failures are listed.
    pub fn boundary_equivalence(&self) -> BoundaryReport {
        let mut checked = 0;
        let mut failures = Vec::new();
        for x in self.aom.positive_part() {
            let xd = self.r(&x);
            if xd.is_zero() {
                continue;
            }
            checked += 1;
            if self.contraction.contains(&xd) == self.bounded.contains(&x) {
                failures.push(x);
            }
        }
        BoundaryReport { checked, failures }
    }

    /// Every per-cell check, over all cells, in cell order.
    pub fn check_cells(&self, with_cube: bool) -> Result<Vec<CellReport>> {
        self.bounded
            .cells()
            .par_iter()
            .map(|x| self.check_cell(x, with_cube))
            .collect()
    }

    pub fn check_cell(&self, x: &SignVector, with_cube: bool) -> Result<CellReport> {
        let x = self.require_cell(x)?;
        let c = self.unbounded_topes_above(&x)?;
        let d = self.contraction_topes_above(&x)?;
        let case = self.link_decomposition(&x)?.case;
        let cube = if with_cube {
            Some(cube_check(self.aom.om(), &x)?.isomorphic)
        } else {
            None
        };
        let bijection = self.check_bijection(&x)?;
        let (dx_shelling, induced_shelling) = if d.is_empty() {
            (None, None)
        } else {
            let s = self.shelling_of_dx(&x, None)?;
            let induced = if c.is_empty() {
                None
            } else {
                Some(self.induced_shelling_of_cx(&x, &s.order)?)
            };
            (Some(s), induced)
        };
        let alternative_base = match &induced_shelling {
            Some(i) if !i.verdict.passed => Some(self.find_shelling_base(&x)?),
            _ => None,
        };
        Ok(CellReport {
            cell: x,
            case,
            unbounded_topes: c.len(),
            contraction_topes: d.len(),
            cube,
            bijection,
            dx_shelling,
            induced_shelling,
            alternative_base,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::tests::{four_line, line, triangle};
    use crate::realization::realize;

    fn affine(arr: &crate::realization::Arrangement) -> AffineOM {
        AffineOM::new(realize(arr).unwrap()).unwrap()
    }

    #[test]
    fn line_example() {
        let a = affine(&line());
        assert_eq!(a.positive_part().len(), 5);
        let bc = a.bounded_complex();
        assert_eq!(bc.f_vector(), vec![2, 1]);
        assert!(bc.is_pure());
        assert_eq!(bc.euler_characteristic(), 1);
    }

    #[test]
    fn triangle_example() {
        let a = affine(&triangle());
        assert_eq!(a.positive_part().len(), 19);
        let bc = a.bounded_complex();
        assert_eq!(bc.f_vector(), vec![3, 3, 1]);
        assert_eq!(bc.support(), Some(a.ground().all()));
    }

    #[test]
    fn four_line_example() {
        let a = affine(&four_line());
        assert_eq!(a.positive_part().len(), 29);
        let bc = a.bounded_complex();
        assert_eq!(bc.f_vector(), vec![5, 6, 2]);
        let m = bc.maximal_cells();
        assert_eq!(m.len(), 2);
        let shared: Vec<&SignVector> = bc.cells().iter().filter(|v| v.leq(&m[0]) && v.leq(&m[1])).collect();
        assert_eq!(shared.len(), 1);
    }

    #[test]
    fn trivial_and_looped_inputs_are_rejected() {
        let g = GroundSet::new(["g"]).unwrap().with_g("g").unwrap();
        let om = CovectorSet::new(g, ["0", "+", "-"].iter().map(|s| s.parse().unwrap())).unwrap();
        assert!(matches!(AffineOM::new(om), Err(Error::Precondition(_))));
        let g = GroundSet::new(["a", "g"]).unwrap().with_g("g").unwrap();
        let om = CovectorSet::new(g, ["00", "+0", "-0"].iter().map(|s| s.parse().unwrap())).unwrap();
        assert!(matches!(AffineOM::new(om), Err(Error::Precondition(_))));
    }

    #[test]
    fn triangle_origin_vertex() {
        let a = affine(&triangle());
        let la = LocalAnalysis::new(&a).unwrap();
        let x: SignVector = "00-+".parse().unwrap();
        assert_eq!(la.unbounded_topes_above(&x).unwrap().len(), 3);
        assert_eq!(la.contraction_topes_above(&x).unwrap().len(), 3);
        let b = la.check_bijection(&x).unwrap();
        assert!(b.passed, "{:?}", b.failures);
        assert_eq!(b.pairs.len(), 3);
        let s = la.shelling_of_dx(&x, None).unwrap();
        assert_eq!(s.order.len(), 3);
        assert!(s.prefixes_are_ideals);
        let c = la.induced_shelling_of_cx(&x, &s.order).unwrap();
        assert!(c.verdict.passed);
        let dec = la.link_decomposition(&x).unwrap();
        assert_eq!(dec.case, LinkCase::Proper);
        assert_eq!(dec.upper.len(), 3);
        assert!(dec.lower.is_empty());
        let cube = cube_isomorphism(a.om(), &x).unwrap();
        assert_eq!(cube.size, 9);
        assert!(cube.isomorphic);
    }

    #[test]
    fn interior_tope_has_empty_up_sets() {
        let a = affine(&triangle());
        let la = LocalAnalysis::new(&a).unwrap();
        let bc = la.bounded();
        let top = bc.maximal_cells()[0];
        assert!(la.unbounded_topes_above(&top).unwrap().is_empty());
        assert!(la.contraction_topes_above(&top).unwrap().is_empty());
        assert_eq!(la.link_decomposition(&top).unwrap().case, LinkCase::UpperEmpty);
        assert!(la.check_bijection(&top).unwrap().pairs.is_empty());
        assert!(matches!(la.shelling_of_dx(&top, None), Err(Error::Precondition(_))));
    }

    #[test]
    fn membership_is_enforced() {
        let a = affine(&triangle());
        let la = LocalAnalysis::new(&a).unwrap();
        let unbounded = a
            .positive_part()
            .into_iter()
            .find(|x| !la.bounded().contains(x))
            .unwrap();
        assert!(matches!(la.unbounded_topes_above(&unbounded), Err(Error::Membership { .. })));
        let x: SignVector = "00-+".parse().unwrap();
        let not_in_dx = la
            .contraction()
            .topes()
            .into_iter()
            .find(|t| !la.contraction_topes_above(&x).unwrap().contains(t))
            .unwrap();
        assert!(matches!(la.shelling_of_dx(&x, Some(&not_in_dx)), Err(Error::Membership { .. })));
    }

    #[test]
    fn line_vertex() {
        let a = affine(&line());
        let la = LocalAnalysis::new(&a).unwrap();
        let v = la
            .bounded()
            .cells()
            .iter()
            .find(|x| x.get(0) == Sign::Zero)
            .copied()
            .unwrap();
        assert_eq!(la.unbounded_topes_above(&v).unwrap().len(), 1);
        assert_eq!(la.contraction_topes_above(&v).unwrap().len(), 1);
        assert!(la.check_cell(&v, true).unwrap().passed());
    }

    #[test]
    fn boundary_equivalence_holds_on_examples() {
        for arr in [line(), triangle()] {
            let la = LocalAnalysis::new(&affine(&arr)).unwrap();
            let r = la.boundary_equivalence();
            assert!(r.checked > 0);
            assert!(r.failures.is_empty(), "{:?}", r.failures);
        }
    }

    #[test]
    fn boundary_equivalence_fails_between_parallel_lines() {
        // the strips between the parallel lines are unbounded, yet the two
        // lines always agree at infinity
        let la = LocalAnalysis::new(&affine(&four_line())).unwrap();
        let r = la.boundary_equivalence();
        assert_eq!(r.failures.len(), 6);
        assert!(r.failures.iter().all(|x| x.get(2) != x.get(3)));
    }

    #[test]
    fn cube_needs_uniformity() {
        let a = affine(&four_line());
        let x = a.bounded_complex().cells()[0];
        assert!(matches!(cube_isomorphism(a.om(), &x), Err(Error::Precondition(_))));
        // the two parallel lines meet g at infinity: three zeros, fewer than 27 covectors above
        let at_infinity = a.om().iter().find(|v| v.zero_set().len() == 3).copied().unwrap();
        assert!(!cube_check(a.om(), &at_infinity).unwrap().isomorphic);
    }

    #[test]
    fn upper_tope_shellings_pass_on_triangle() {
        use rand::SeedableRng;
        let a = affine(&triangle());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let x: SignVector = "00-+".parse().unwrap();
        let v = upper_tope_shellings(a.om(), &x, 10, &mut rng).unwrap();
        assert!(v.iter().all(|s| s.passed));
    }
}
