//! Sign vectors over an ordered finite ground set.
//!
//! A [`SignVector`] is an element of `{+,-,0}^E`. Entries are packed into two
//! bit masks, so the ground set is limited to [`MAX_ELEMENTS`] elements. The
//! packing is internal: every public constructor and accessor speaks [`Sign`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;

/// One coordinate of a sign vector.
///
/// The derived order `Plus < Minus < Zero` matches the byte order of the
/// display characters `+`, `-`, `0`, so sorting sign vectors sorts their
/// strings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }
}

impl From<std::cmp::Ordering> for Sign {
    fn from(o: std::cmp::Ordering) -> Sign {
        match o {
            Ordering::Greater => Sign::Plus,
            Ordering::Less => Sign::Minus,
            Ordering::Equal => Sign::Zero,
        }
    }
}

/// A subset of ground-set positions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn full(n: usize) -> ElementSet {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> ElementSet {
        ElementSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> ElementSet {
        ElementSet(indices.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn from_bits(bits: u64) -> ElementSet {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Lexicographic comparison of the sorted index lists.
    pub fn cmp_lex(self, other: ElementSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

/// Ordered ground set with an optional distinguished element `g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroundSet {
    labels: Vec<String>,
    g: Option<usize>,
}

impl GroundSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<GroundSet> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::Resource(format!(
                "ground set has {} elements, at most {MAX_ELEMENTS} are supported",
                labels.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::Validation(format!("invalid element label {l:?}")));
            }
            if labels[..i].contains(l) {
                return Err(Error::Validation(format!("duplicate element label {l:?}")));
            }
        }
        Ok(GroundSet { labels, g: None })
    }

    /// Ground set `e1, ..., en`.
    pub fn numbered(n: usize) -> Result<GroundSet> {
        GroundSet::new((1..=n).map(|i| format!("e{i}")))
    }

    pub fn with_g(mut self, label: &str) -> Result<GroundSet> {
        let i = self.index_of(label)?;
        self.g = Some(i);
        Ok(self)
    }

    pub fn with_g_index(mut self, i: usize) -> Result<GroundSet> {
        if i >= self.len() {
            return Err(Error::Domain(format!("index {i}")));
        }
        self.g = Some(i);
        Ok(self)
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

    pub fn g_index(&self) -> Option<usize> {
        self.g
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Domain(label.to_string()))
    }

    pub fn set_of(&self, labels: &[&str]) -> Result<ElementSet> {
        let mut s = ElementSet::EMPTY;
        for l in labels {
            s.insert(self.index_of(l)?);
        }
        Ok(s)
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// The ground set `E \ removed`, order preserved. `g` survives if not removed.
    pub fn delete(&self, removed: ElementSet) -> Result<GroundSet> {
        self.check_subset(removed)?;
        let mut labels = Vec::new();
        let mut g = None;
        for (i, l) in self.labels.iter().enumerate() {
            if removed.contains(i) {
                continue;
            }
            if self.g == Some(i) {
                g = Some(labels.len());
            }
            labels.push(l.clone());
        }
        Ok(GroundSet { labels, g })
    }

    pub(crate) fn check_subset(&self, s: ElementSet) -> Result<()> {
        if s.is_subset(self.all()) {
            Ok(())
        } else {
            let bad = s.difference(self.all()).iter().next().unwrap_or_default();
            Err(Error::Domain(format!("element index {bad}")))
        }
    }

    /// `{a,b,c}` using labels.
    pub fn format_set(&self, s: ElementSet) -> String {
        let inner: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", inner.join(","))
    }

    pub fn labels_of(&self, s: ElementSet) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }
}

/// An element of `{+,-,0}^E`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: u8,
    plus: u64,
    minus: u64,
}

impl SignVector {
    pub fn zero(len: usize) -> SignVector {
        assert!(len <= MAX_ELEMENTS, "sign vector longer than {MAX_ELEMENTS}");
        SignVector {
            len: len as u8,
            plus: 0,
            minus: 0,
        }
    }

    pub fn from_signs(signs: &[Sign]) -> Result<SignVector> {
        if signs.len() > MAX_ELEMENTS {
            return Err(Error::Resource(format!(
                "sign vector of length {} exceeds {MAX_ELEMENTS}",
                signs.len()
            )));
        }
        let mut v = SignVector::zero(signs.len());
        for (i, &s) in signs.iter().enumerate() {
            v.set(i, s);
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Sign {
        assert!(i < self.len(), "index {i} out of range for length {}", self.len);
        if self.plus >> i & 1 == 1 {
            Sign::Plus
        } else if self.minus >> i & 1 == 1 {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, i: usize, s: Sign) {
        assert!(i < self.len(), "index {i} out of range for length {}", self.len);
        let bit = 1u64 << i;
        self.plus &= !bit;
        self.minus &= !bit;
        match s {
            Sign::Plus => self.plus |= bit,
            Sign::Minus => self.minus |= bit,
            Sign::Zero => {}
        }
    }

    pub fn with(mut self, i: usize, s: Sign) -> SignVector {
        self.set(i, s);
        self
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    pub fn is_zero(&self) -> bool {
        self.plus | self.minus == 0
    }

    pub fn support(&self) -> ElementSet {
        ElementSet(self.plus | self.minus)
    }

    pub fn zero_set(&self) -> ElementSet {
        ElementSet::full(self.len()).difference(self.support())
    }

    pub fn plus_set(&self) -> ElementSet {
        ElementSet(self.plus)
    }

    pub fn minus_set(&self) -> ElementSet {
        ElementSet(self.minus)
    }

    pub fn opposite(&self) -> SignVector {
        SignVector {
            len: self.len,
            plus: self.minus,
            minus: self.plus,
        }
    }

    fn check_len(&self, other: &SignVector) -> Result<()> {
        if self.len == other.len {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.len(),
                found: other.len(),
            })
        }
    }

    /// `X ∘ Y`: take `X_e` where nonzero, otherwise `Y_e`.
    pub fn compose(&self, other: &SignVector) -> Result<SignVector> {
        self.check_len(other)?;
        Ok(self.comp(other))
    }

    pub(crate) fn comp(&self, other: &SignVector) -> SignVector {
        debug_assert_eq!(self.len, other.len);
        let free = !(self.plus | self.minus);
        SignVector {
            len: self.len,
            plus: self.plus | (other.plus & free),
            minus: self.minus | (other.minus & free),
        }
    }

    /// Elements where the two vectors carry opposite nonzero signs.
    pub fn separation_set(&self, other: &SignVector) -> Result<ElementSet> {
        self.check_len(other)?;
        Ok(self.sep(other))
    }

    pub(crate) fn sep(&self, other: &SignVector) -> ElementSet {
        debug_assert_eq!(self.len, other.len);
        ElementSet((self.plus & other.minus) | (self.minus & other.plus))
    }

    pub fn is_conformal(&self, other: &SignVector) -> Result<bool> {
        Ok(self.separation_set(other)?.is_empty())
    }

    /// `self ≤ other` in the product order where `0 < +` and `0 < -`.
    pub fn below(&self, other: &SignVector) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.leq(other))
    }

    pub(crate) fn leq(&self, other: &SignVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.plus & !other.plus == 0 && self.minus & !other.minus == 0
    }

    pub(crate) fn less(&self, other: &SignVector) -> bool {
        self != other && self.leq(other)
    }

    /// Drop the coordinates in `removed`, keeping the rest in order.
    pub fn delete(&self, removed: ElementSet) -> Result<SignVector> {
        if !removed.is_subset(ElementSet::full(self.len())) {
            let bad = removed
                .difference(ElementSet::full(self.len()))
                .iter()
                .next()
                .unwrap_or_default();
            return Err(Error::Domain(format!("element index {bad}")));
        }
        Ok(self.del(removed))
    }

    pub(crate) fn del(&self, removed: ElementSet) -> SignVector {
        if removed.is_empty() {
            return *self;
        }
        let mut out = SignVector::zero(self.len() - removed.len());
        let mut j = 0;
        for i in 0..self.len() {
            if removed.contains(i) {
                continue;
            }
            out.set(j, self.get(i));
            j += 1;
        }
        out
    }

    /// Insert `sign` so that it ends up at position `at` of the result.
    pub fn insert(&self, at: usize, sign: Sign) -> SignVector {
        assert!(at <= self.len());
        let mut out = SignVector::zero(self.len() + 1);
        for i in 0..self.len() {
            out.set(if i < at { i } else { i + 1 }, self.get(i));
        }
        out.set(at, sign);
        out
    }

    /// Every sign vector of the given length, in lexicographic `(0,+,-)` order.
    pub fn all_of_len(len: usize) -> impl Iterator<Item = SignVector> {
        let total = 3usize.pow(len as u32);
        (0..total).map(move |mut k| {
            let mut v = SignVector::zero(len);
            for i in (0..len).rev() {
                v.set(
                    i,
                    match k % 3 {
                        0 => Sign::Zero,
                        1 => Sign::Plus,
                        _ => Sign::Minus,
                    },
                );
                k /= 3;
            }
            v
        })
    }
}

impl Neg for SignVector {
    type Output = SignVector;
    fn neg(self) -> SignVector {
        self.opposite()
    }
}

impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.signs()
            .cmp(other.signs())
            .then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.signs() {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<SignVector> {
        let signs = s
            .chars()
            .map(|c| {
                Sign::from_char(c)
                    .ok_or_else(|| Error::Validation(format!("invalid sign character {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if signs.is_empty() {
            return Err(Error::Validation("empty sign vector".into()));
        }
        SignVector::from_signs(&signs)
    }
}

impl Serialize for SignVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parse a sign string and check it against a ground set.
pub fn parse_for(ground: &GroundSet, s: &str) -> Result<SignVector> {
    let v: SignVector = s.parse()?;
    if v.len() != ground.len() {
        return Err(Error::Dimension {
            expected: ground.len(),
            found: v.len(),
        });
    }
    Ok(v)
}
