//! Rational affine hyperplane arrangements and their covector sets.
//!
//! An arrangement `a_i · x = b_i` in `R^d` homogenizes to the linear forms
//! `(a_i, -b_i)` on `R^{d+1}`, plus the form `t` for the extra coordinate. The
//! sign patterns realized by points of `R^{d+1}` are the covectors; the element
//! `t` plays the role of `g`.

pub mod fm;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::om::CovectorSet;
use crate::signvec::{GroundSet, Sign, SignVector};
use fm::{Constraint, Relation};

/// Label of the homogenizing element.
pub const G_LABEL: &str = "g";

/// Default limit on the number of forms for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub label: String,
    pub normal: Vec<BigRational>,
    pub offset: BigRational,
}

/// `a · x = b` hyperplanes in `R^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    /// Validates dimensions, nonzero normals, unique labels and rejects
    /// repeated hyperplanes (equal up to a nonzero scalar).
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Arrangement> {
        if dim == 0 {
            return Err(Error::Validation("dimension must be at least 1".into()));
        }
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != dim {
                return Err(Error::Validation(format!(
                    "hyperplane {} has {} coefficients, expected {dim}",
                    h.label,
                    h.normal.len()
                )));
            }
            if h.normal.iter().all(Zero::is_zero) {
                return Err(Error::Validation(format!(
                    "hyperplane {} has a zero normal vector",
                    h.label
                )));
            }
            if h.label == G_LABEL {
                return Err(Error::Validation(format!(
                    "label {G_LABEL:?} is reserved for the homogenizing element"
                )));
            }
            for other in &hyperplanes[..i] {
                if other.label == h.label {
                    return Err(Error::Validation(format!("duplicate label {}", h.label)));
                }
                if proportional(&affine_row(other), &affine_row(h)) {
                    return Err(Error::Validation(format!(
                        "hyperplanes {} and {} coincide",
                        other.label, h.label
                    )));
                }
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Ground set: hyperplane labels followed by `g`.
    pub fn ground(&self) -> GroundSet {
        GroundSet::new(
            self.hyperplanes
                .iter()
                .map(|h| h.label.clone())
                .chain(std::iter::once(G_LABEL.to_string())),
        )
        .and_then(|g| g.with_g(G_LABEL))
        .expect("labels validated at construction")
    }

    /// Sign of `a · x - b` at an exact point.
    pub fn sign_at(&self, i: usize, x: &[BigRational]) -> Sign {
        let h = &self.hyperplanes[i];
        let v: BigRational = h.normal.iter().zip(x).map(|(a, x)| a * x).sum::<BigRational>() - &h.offset;
        v.cmp(&BigRational::zero()).into()
    }
}

fn affine_row(h: &Hyperplane) -> Vec<BigRational> {
    h.normal.iter().cloned().chain(std::iter::once(h.offset.clone())).collect()
}

fn proportional(a: &[BigRational], b: &[BigRational]) -> bool {
    let Some(k) = a.iter().position(|x| !x.is_zero()) else {
        return b.iter().all(Zero::is_zero);
    };
    if b[k].is_zero() {
        return false;
    }
    let ratio = &b[k] / &a[k];
    a.iter().zip(b).all(|(x, y)| &(x * &ratio) == y)
}

/// Linear forms on `R^{d+1}`; the last one is `g = t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorConfiguration {
    ground: GroundSet,
    forms: Vec<Vec<BigRational>>,
}

impl VectorConfiguration {
    pub fn new(ground: GroundSet, forms: Vec<Vec<BigRational>>) -> Result<VectorConfiguration> {
        if ground.len() != forms.len() {
            return Err(Error::Dimension {
                expected: ground.len(),
                found: forms.len(),
            });
        }
        let width = forms.first().map_or(0, Vec::len);
        if forms.iter().any(|f| f.len() != width) {
            return Err(Error::Validation("forms of unequal length".into()));
        }
        Ok(VectorConfiguration { ground, forms })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn forms(&self) -> &[Vec<BigRational>] {
        &self.forms
    }

    /// Number of variables `d + 1`.
    pub fn nvars(&self) -> usize {
        self.forms.first().map_or(0, Vec::len)
    }

    fn integer_form(&self, i: usize) -> Vec<BigInt> {
        integer_row(&self.forms[i])
    }

    fn constraint(&self, i: usize, s: Sign) -> Constraint {
        let row = self.integer_form(i);
        match s {
            Sign::Zero => Constraint::homogeneous(row, Relation::Eq),
            Sign::Plus => Constraint::homogeneous(row, Relation::Gt),
            Sign::Minus => Constraint::homogeneous(row, Relation::Gt).negated(),
        }
    }

    /// Exact decision: is there `y` with `sign(form_i(y)) = P_i` for all `i`?
    pub fn pattern_feasible(&self, pattern: &SignVector) -> Result<bool> {
        if pattern.len() != self.forms.len() {
            return Err(Error::Dimension {
                expected: self.forms.len(),
                found: pattern.len(),
            });
        }
        let cs: Vec<Constraint> = pattern
            .signs()
            .enumerate()
            .map(|(i, s)| self.constraint(i, s))
            .collect();
        Ok(fm::feasible(self.nvars(), &cs))
    }

    fn prefix_feasible(&self, prefix: &[Sign]) -> bool {
        let cs: Vec<Constraint> = prefix
            .iter()
            .enumerate()
            .map(|(i, &s)| self.constraint(i, s))
            .collect();
        fm::feasible(self.nvars(), &cs)
    }

    /// Every realized sign pattern, found by depth-first search over
    /// coordinates in `(0, +, -)` order with prefix pruning.
    pub fn enumerate_covectors(&self, cap: usize) -> Result<CovectorSet> {
        let n = self.forms.len();
        if n > cap {
            return Err(Error::Resource(format!(
                "{n} forms exceed the enumeration cap of {cap}"
            )));
        }
        const ORDER: [Sign; 3] = [Sign::Zero, Sign::Plus, Sign::Minus];
        // seed prefixes sequentially, finish them in parallel
        let split = n.min(3);
        let mut seeds: Vec<Vec<Sign>> = vec![Vec::new()];
        for _ in 0..split {
            let mut next = Vec::new();
            for p in &seeds {
                for s in ORDER {
                    let mut q = p.clone();
                    q.push(s);
                    if self.prefix_feasible(&q) {
                        next.push(q);
                    }
                }
            }
            seeds = next;
        }
        let chunks: Vec<Vec<SignVector>> = seeds
            .into_par_iter()
            .map(|mut prefix| {
                let mut out = Vec::new();
                self.extend(&mut prefix, n, &mut out);
                out
            })
            .collect();
        CovectorSet::new(self.ground.clone(), chunks.into_iter().flatten())
    }

    fn extend(&self, prefix: &mut Vec<Sign>, n: usize, out: &mut Vec<SignVector>) {
        if prefix.len() == n {
            out.push(SignVector::from_signs(prefix).expect("length checked"));
            return;
        }
        for s in [Sign::Zero, Sign::Plus, Sign::Minus] {
            prefix.push(s);
            if self.prefix_feasible(prefix) {
                self.extend(prefix, n, out);
            }
            prefix.pop();
        }
    }
}

/// Scale a rational row by the positive lcm of its denominators.
fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let l = row
        .iter()
        .fold(BigInt::one(), |l, x| num_integer::Integer::lcm(&l, x.denom()));
    row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
}

/// `(a_i, -b_i)` for every hyperplane, then `(0, ..., 0, 1)`.
pub fn homogenize(arr: &Arrangement) -> VectorConfiguration {
    let mut forms: Vec<Vec<BigRational>> = arr
        .hyperplanes
        .iter()
        .map(|h| {
            h.normal
                .iter()
                .cloned()
                .chain(std::iter::once(-h.offset.clone()))
                .collect()
        })
        .collect();
    let mut g = vec![BigRational::zero(); arr.dim];
    g.push(BigRational::one());
    forms.push(g);
    VectorConfiguration::new(arr.ground(), forms).expect("consistent by construction")
}

/// Convenience: homogenize and enumerate with the default cap.
pub fn realize(arr: &Arrangement) -> Result<CovectorSet> {
    homogenize(arr).enumerate_covectors(DEFAULT_ENUMERATION_CAP)
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][col].is_zero() {
                let f = &m[r][col] / &pivot;
                for c in col..ncols {
                    let v = &m[rank][c] * &f;
                    m[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Metric boundedness of the face with affine sign pattern `pattern`
/// (one sign per hyperplane, `g` excluded).
///
/// The closed face is bounded iff its recession cone
/// `{v : a_i·v = 0 (P_i = 0), P_i (a_i·v) ≥ 0 (P_i ≠ 0)}` is `{0}`: the
/// normals must span `R^d`, and no `j` with `P_j ≠ 0` admits a recession
/// direction with `P_j (a_j·v) > 0`. The face itself is assumed nonempty.
pub fn face_is_bounded(arr: &Arrangement, pattern: &SignVector) -> Result<bool> {
    if pattern.len() != arr.len() {
        return Err(Error::Dimension {
            expected: arr.len(),
            found: pattern.len(),
        });
    }
    let normals: Vec<Vec<BigRational>> = arr.hyperplanes.iter().map(|h| h.normal.clone()).collect();
    if rational_rank(&normals) < arr.dim {
        return Ok(false);
    }
    let rows: Vec<Vec<BigInt>> = normals.iter().map(|r| integer_row(r)).collect();
    let base: Vec<Constraint> = pattern
        .signs()
        .zip(&rows)
        .map(|(s, r)| match s {
            Sign::Zero => Constraint::homogeneous(r.clone(), Relation::Eq),
            Sign::Plus => Constraint::homogeneous(r.clone(), Relation::Ge),
            Sign::Minus => Constraint::homogeneous(r.clone(), Relation::Ge).negated(),
        })
        .collect();
    for j in pattern.support().iter() {
        let mut cs = base.clone();
        let strict = Constraint::homogeneous(rows[j].clone(), Relation::Gt);
        cs.push(if pattern.get(j) == Sign::Plus {
            strict
        } else {
            strict.negated()
        });
        if fm::feasible(arr.dim, &cs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The unique point of an affine vertex with the given zero set, if it is one.
pub fn vertex_point(arr: &Arrangement, pattern: &SignVector) -> Option<Vec<BigRational>> {
    let d = arr.dim;
    let mut rows: Vec<Vec<BigRational>> = pattern
        .zero_set()
        .iter()
        .filter(|&i| i < arr.len())
        .map(|i| affine_row(&arr.hyperplanes[i]))
        .collect();
    // Gauss-Jordan on [A | b]
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..d {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for c in 0..=d {
            rows[rank][c] = &rows[rank][c] / &pivot;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..=d {
                    let v = &rows[rank][c] * &f;
                    rows[r][c] -= v;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rank < d {
        return None;
    }
    let mut x = vec![BigRational::zero(); d];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r][d].clone();
    }
    Some(x)
}

/// Random arrangement of `n` hyperplanes in `R^d` whose realized oriented
/// matroid is uniform. Integer coefficients in `[-9, 9]`.
pub fn random_generic(seed: u64, n: usize, d: usize, max_tries: usize) -> Result<Arrangement> {
    if d == 0 || n < d + 1 {
        return Err(Error::Precondition(format!(
            "need n >= d + 1 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_tries {
        let hyperplanes: Vec<Hyperplane> = (0..n)
            .map(|i| Hyperplane {
                label: format!("h{}", i + 1),
                normal: (0..d)
                    .map(|_| BigRational::from_integer(rng.gen_range(-9i64..=9).into()))
                    .collect(),
                offset: BigRational::from_integer(rng.gen_range(-9i64..=9).into()),
            })
            .collect();
        let Ok(arr) = Arrangement::new(d, hyperplanes) else {
            continue;
        };
        let config = homogenize(&arr);
        if !all_minors_nonzero(config.forms(), d + 1) {
            continue;
        }
        let om = config.enumerate_covectors(DEFAULT_ENUMERATION_CAP.max(n + 1))?;
        if om.is_uniform() {
            return Ok(arr);
        }
    }
    Err(Error::Resource(format!(
        "no generic arrangement found in {max_tries} draws"
    )))
}

/// Every `k`-subset of rows is linearly independent.
fn all_minors_nonzero(rows: &[Vec<BigRational>], k: usize) -> bool {
    crate::om::subsets_of_size(rows.len(), k).into_iter().all(|s| {
        let sub: Vec<Vec<BigRational>> = s.iter().map(|i| rows[i].clone()).collect();
        rational_rank(&sub) == k
    })
}

/// `p/q` or integer; decimals are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Validation(format!("invalid rational {s:?} (use p/q or an integer)"));
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (s, None),
    };
    let valid_int = |t: &str, signed: bool| {
        let digits = if signed {
            t.strip_prefix(['-', '+']).unwrap_or(t)
        } else {
            t
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return Err(bad());
    }
    let p: BigInt = num.trim_start_matches('+').parse().map_err(|_| bad())?;
    let q: BigInt = match den {
        Some(q) if valid_int(q, false) => q.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(Error::Validation(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(p, q))
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn line() -> Arrangement {
        arr(1, &[("a", &[1], 0), ("b", &[1], 1)])
    }

    pub(crate) fn triangle() -> Arrangement {
        arr(2, &[("x", &[1, 0], 0), ("y", &[0, 1], 0), ("s", &[1, 1], 1)])
    }

    pub(crate) fn four_line() -> Arrangement {
        arr(
            2,
            &[("x", &[1, 0], 0), ("y", &[0, 1], 0), ("s", &[1, 1], 1), ("t", &[1, 1], -1)],
        )
    }

    pub(crate) fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn arr(dim: usize, rows: &[(&str, &[i64], i64)]) -> Arrangement {
        Arrangement::new(
            dim,
            rows.iter()
                .map(|(l, a, b)| Hyperplane {
                    label: l.to_string(),
                    normal: a.iter().map(|&x| q(x)).collect(),
                    offset: q(*b),
                })
                .collect(),
        )
        .unwrap()
    }

    fn forms_of(v: &VectorConfiguration) -> Vec<Vec<i64>> {
        use num_traits::ToPrimitive;
        v.forms()
            .iter()
            .map(|f| f.iter().map(|x| x.to_integer().to_i64().unwrap()).collect())
            .collect()
    }

    #[test]
    fn homogenize_examples() {
        let line = arr(1, &[("a", &[1], 0), ("b", &[1], 1)]);
        assert_eq!(forms_of(&homogenize(&line)), vec![vec![1, 0], vec![1, -1], vec![0, 1]]);
        let tri = arr(2, &[("x", &[1, 0], 0), ("y", &[0, 1], 0), ("s", &[1, 1], 1)]);
        assert_eq!(
            forms_of(&homogenize(&tri)),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, -1], vec![0, 0, 1]]
        );
        let four = arr(
            2,
            &[("x", &[1, 0], 0), ("y", &[0, 1], 0), ("s", &[1, 1], 1), ("t", &[1, 1], -1)],
        );
        assert_eq!(
            forms_of(&homogenize(&four)),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, -1], vec![1, 1, 1], vec![0, 0, 1]]
        );
        assert_eq!(homogenize(&four).ground().g_index(), Some(4));
    }

    #[test]
    fn degenerate_arrangements_rejected() {
        let h = |l: &str, a: &[i64], b: i64| Hyperplane {
            label: l.into(),
            normal: a.iter().map(|&x| q(x)).collect(),
            offset: q(b),
        };
        assert!(Arrangement::new(1, vec![h("a", &[0], 1)]).is_err());
        assert!(Arrangement::new(1, vec![h("a", &[1], 1), h("b", &[2], 2)]).is_err());
        assert!(Arrangement::new(1, vec![h("a", &[1], 1), h("a", &[1], 2)]).is_err());
        assert!(Arrangement::new(2, vec![h("a", &[1], 1)]).is_err());
        assert!(Arrangement::new(1, vec![h("g", &[1], 1)]).is_err());
        // parallel but distinct is fine
        assert!(Arrangement::new(1, vec![h("a", &[1], 1), h("b", &[-2], 2)]).is_ok());
    }

    #[test]
    fn pattern_feasibility_examples() {
        let line = arr(1, &[("a", &[1], 0), ("b", &[1], 1)]);
        let v = homogenize(&line);
        assert!(v.pattern_feasible(&"000".parse().unwrap()).unwrap());
        assert!(!v.pattern_feasible(&"00+".parse().unwrap()).unwrap());
        assert!(v.pattern_feasible(&"+-+".parse().unwrap()).unwrap());
        assert!(v.pattern_feasible(&"+-".parse().unwrap()).is_err());
    }

    #[test]
    fn enumeration_cap() {
        let line = arr(1, &[("a", &[1], 0), ("b", &[1], 1)]);
        assert!(matches!(
            homogenize(&line).enumerate_covectors(2),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn boundedness_on_the_line() {
        let line = arr(1, &[("a", &[1], 0), ("b", &[1], 1)]);
        let b = |s: &str| face_is_bounded(&line, &s.parse().unwrap()).unwrap();
        assert!(b("0-"));
        assert!(b("+0"));
        assert!(b("+-"));
        assert!(!b("--"));
        assert!(!b("++"));
    }

    #[test]
    fn vertex_points() {
        let tri = arr(2, &[("x", &[1, 0], 0), ("y", &[0, 1], 0), ("s", &[1, 1], 1)]);
        let p = vertex_point(&tri, &"0+0+".parse().unwrap()).unwrap();
        assert_eq!(p, vec![q(0), q(1)]);
        assert!(vertex_point(&tri, &"0+-+".parse().unwrap()).is_none());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3").unwrap(), q(3));
        assert_eq!(parse_rational("-6/4").unwrap(), BigRational::new((-3).into(), 2.into()));
        assert_eq!(parse_rational("+2").unwrap(), q(2));
        for bad in ["1.5", "1/0", "", "-", "1/-2", "a", "1e3", "/3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(format_rational(&BigRational::new(6.into(), (-4).into())), "-3/2");
    }

    #[test]
    fn generator_draws_generic_arrangements() {
        let a = random_generic(1, 4, 2, 1000).unwrap();
        assert_eq!(a.len(), 4);
        assert!(realize(&a).unwrap().is_uniform());
        assert_eq!(random_generic(1, 4, 2, 1000).unwrap(), a);
        assert!(random_generic(1, 2, 2, 10).is_err());
    }
}
