//! Signed subsets of a finite ordered ground set.
//!
//! Elements are indices into a [`GroundSet`]; sets of elements are bitsets
//! ([`ElementSet`]), which caps ground sets at [`MAX_ELEMENTS`] elements.
//! [`SignVector`] is the ground-free sign pattern used in the hot loops of
//! the checkers, and [`SignedSubset`] pairs a pattern with its ground set so
//! that operations across different ground sets are rejected.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};
use std::sync::Arc;

use crate::error::{domain, Error, Result};

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 64;

/// A set of element indices, stored as a bitset.
///
/// The order is lexicographic on the sorted index lists, so `{0,1,2} <
/// {0,2} < {1}`; every "lexicographically least" witness in the crate uses
/// this order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The first `n` elements.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        debug_assert!(e < MAX_ELEMENTS);
        ElementSet(1u64 << e)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(ElementSet::EMPTY, |acc, e| acc.with(e))
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_ELEMENTS && self.0 >> e & 1 == 1
    }

    #[must_use]
    pub fn with(self, e: usize) -> Self {
        ElementSet(self.0 | 1u64 << e)
    }

    #[must_use]
    pub fn without(self, e: usize) -> Self {
        ElementSet(self.0 & !(1u64 << e))
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

    pub fn is_disjoint(self, other: ElementSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// Renumbers the elements of `self ∩ kept` so that the `k`-th element of
    /// `kept` becomes element `k`.
    pub fn compress(self, kept: ElementSet) -> ElementSet {
        let mut out = 0u64;
        for (k, e) in kept.iter().enumerate() {
            if self.contains(e) {
                out |= 1 << k;
            }
        }
        ElementSet(out)
    }

    /// Inverse of [`compress`](Self::compress).
    pub fn expand(self, kept: ElementSet) -> ElementSet {
        let mut out = 0u64;
        for (k, e) in kept.iter().enumerate() {
            if self.contains(k) {
                out |= 1 << e;
            }
        }
        ElementSet(out)
    }

    /// All subsets of `self`, in increasing numeric order of their bitsets.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        // The set holding the first differing element wins, unless the other
        // set has nothing beyond that point (then it is a proper prefix).
        let above = !(low | (low - 1));
        if self.0 & low != 0 {
            if other.0 & above != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        } else if self.0 & above != 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        ElementSet(self.0 | rhs.0)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        ElementSet(self.0 & rhs.0)
    }
}

impl BitXor for ElementSet {
    type Output = ElementSet;
    fn bitxor(self, rhs: Self) -> Self {
        ElementSet(self.0 ^ rhs.0)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        ElementSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet::from_indices(iter)
    }
}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Elements;
    fn into_iter(self) -> Elements {
        self.iter()
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ElementSet;
    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        // Standard increasing submask walk.
        let succ = (cur | !self.mask).wrapping_add(1) & self.mask;
        self.next = (succ != 0).then_some(succ);
        Some(ElementSet(cur))
    }
}

/// An ordered list of distinct element labels.
///
/// Two ground sets are equal when their label lists are equal; cloning is
/// cheap.
#[derive(Clone)]
pub struct GroundSet(Arc<[String]>);

impl GroundSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(labels: I) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_ELEMENTS {
            return Err(domain(format!(
                "ground set has {} elements; at most {MAX_ELEMENTS} are supported",
                labels.len()
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(|c| c.is_whitespace() || ",#[]".contains(c)) {
                return Err(domain(format!("invalid element label `{l}`")));
            }
            if labels[..i].contains(l) {
                return Err(domain(format!("duplicate element label `{l}`")));
            }
        }
        Ok(GroundSet(labels.into()))
    }

    /// Ground set labelled `1..=n`.
    pub fn numbered(n: usize) -> Self {
        GroundSet::new((1..=n).map(|i| i.to_string())).expect("numbered labels are valid")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn label(&self, e: usize) -> &str {
        &self.0[e]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn set_of<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<ElementSet> {
        labels
            .into_iter()
            .map(|l| self.index_of(l))
            .collect::<Result<Vec<_>>>()
            .map(ElementSet::from_indices)
    }

    /// Fails unless `set` only contains elements of this ground set.
    pub fn check(&self, set: ElementSet) -> Result<()> {
        match (set - self.all()).min() {
            None => Ok(()),
            Some(e) => Err(Error::UnknownElement(format!("#{e}"))),
        }
    }

    /// The ground set made of the elements of `kept`, in order.
    pub fn subset(&self, kept: ElementSet) -> GroundSet {
        GroundSet(kept.iter().map(|e| self.0[e].clone()).collect())
    }

    pub fn format_set(&self, set: ElementSet) -> String {
        let labels: Vec<&str> = set.iter().map(|e| self.label(e)).collect();
        format!("{{{}}}", labels.join(","))
    }
}

impl PartialEq for GroundSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for GroundSet {}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

/// A sign pattern: disjoint positive and negative element sets.
///
/// Ordered by support first (lexicographically), then by the sign string
/// with `+` before `-`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SignVector {
    pos: ElementSet,
    neg: ElementSet,
}

impl SignVector {
    pub const EMPTY: SignVector = SignVector {
        pos: ElementSet::EMPTY,
        neg: ElementSet::EMPTY,
    };

    /// Panics if `pos` and `neg` overlap.
    pub fn new(pos: ElementSet, neg: ElementSet) -> Self {
        assert!(pos.is_disjoint(neg), "positive and negative parts overlap");
        SignVector { pos, neg }
    }

    pub fn try_new(pos: ElementSet, neg: ElementSet) -> Result<Self> {
        if pos.is_disjoint(neg) {
            Ok(SignVector { pos, neg })
        } else {
            Err(domain("positive and negative parts overlap"))
        }
    }

    pub fn positive_on(set: ElementSet) -> Self {
        SignVector {
            pos: set,
            neg: ElementSet::EMPTY,
        }
    }

    pub fn pos(self) -> ElementSet {
        self.pos
    }

    pub fn neg(self) -> ElementSet {
        self.neg
    }

    pub fn support(self) -> ElementSet {
        self.pos | self.neg
    }

    pub fn is_empty(self) -> bool {
        self.support().is_empty()
    }

    pub fn sign(self, e: usize) -> Sign {
        if self.pos.contains(e) {
            Sign::Positive
        } else if self.neg.contains(e) {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    /// Nonempty with no negative element.
    pub fn is_positive(self) -> bool {
        !self.pos.is_empty() && self.neg.is_empty()
    }

    pub fn is_negative(self) -> bool {
        !self.neg.is_empty() && self.pos.is_empty()
    }

    #[must_use]
    pub fn opposite(self) -> Self {
        SignVector {
            pos: self.neg,
            neg: self.pos,
        }
    }

    #[must_use]
    pub fn restrict(self, set: ElementSet) -> Self {
        SignVector {
            pos: self.pos & set,
            neg: self.neg & set,
        }
    }

    /// Swaps the signs on `set`.
    #[must_use]
    pub fn reorient(self, set: ElementSet) -> Self {
        SignVector {
            pos: (self.pos - set) | (self.neg & set),
            neg: (self.neg - set) | (self.pos & set),
        }
    }

    pub fn separator(self, other: SignVector) -> ElementSet {
        (self.pos & other.neg) | (self.neg & other.pos)
    }

    /// `self` is the restriction of `other` to the support of `self`.
    pub fn conforms_to(self, other: SignVector) -> bool {
        self.pos.is_subset(other.pos) && self.neg.is_subset(other.neg)
    }

    /// Disjoint supports, or both an agreeing and a disagreeing common
    /// element.
    pub fn is_orthogonal_to(self, other: SignVector) -> bool {
        let agree = (self.pos & other.pos) | (self.neg & other.neg);
        let disagree = self.separator(other);
        agree.is_empty() == disagree.is_empty()
    }

    /// `self ∘ other`: `self` wins on its support.
    #[must_use]
    pub fn compose(self, other: SignVector) -> Self {
        let free = !self.support().bits();
        SignVector {
            pos: self.pos | ElementSet::from_bits(other.pos.bits() & free),
            neg: self.neg | ElementSet::from_bits(other.neg.bits() & free),
        }
    }

    /// Left-to-right composition of a sequence; the empty sequence gives the
    /// empty sign vector.
    pub fn compose_all<I: IntoIterator<Item = SignVector>>(seq: I) -> Self {
        seq.into_iter().fold(SignVector::EMPTY, SignVector::compose)
    }

    /// One character per element `0..n`.
    pub fn to_sign_string(self, n: usize) -> String {
        (0..n).map(|e| self.sign(e).as_char()).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut pos = ElementSet::EMPTY;
        let mut neg = ElementSet::EMPTY;
        for (e, c) in text.chars().enumerate() {
            if e >= MAX_ELEMENTS {
                return Err(domain("sign vector longer than the element limit"));
            }
            match c {
                '+' => pos = pos.with(e),
                '-' => neg = neg.with(e),
                '0' => {}
                other => return Err(domain(format!("invalid sign character `{other}`"))),
            }
        }
        Ok(SignVector { pos, neg })
    }

    /// The representative of `{self, -self}` whose smallest element is
    /// positive.
    #[must_use]
    pub fn canonical(self) -> Self {
        match self.support().min() {
            Some(e) if self.neg.contains(e) => self.opposite(),
            _ => self,
        }
    }
}

impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.support().cmp(&other.support()).then_with(|| {
            // Same support: the first element where the signs differ decides,
            // with `+` before `-`.
            match (self.pos ^ other.pos).min() {
                None => Ordering::Equal,
                Some(x) if self.pos.contains(x) => Ordering::Less,
                Some(_) => Ordering::Greater,
            }
        })
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.support().max().map_or(0, |m| m + 1);
        write!(f, "SignVector({})", self.to_sign_string(n))
    }
}

/// A signed subset of a specific ground set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedSubset {
    ground: GroundSet,
    signs: SignVector,
}

impl std::hash::Hash for GroundSet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl SignedSubset {
    pub fn new(ground: &GroundSet, pos: ElementSet, neg: ElementSet) -> Result<Self> {
        ground.check(pos | neg)?;
        Ok(SignedSubset {
            ground: ground.clone(),
            signs: SignVector::try_new(pos, neg)?,
        })
    }

    pub fn from_signs(ground: &GroundSet, signs: SignVector) -> Result<Self> {
        SignedSubset::new(ground, signs.pos(), signs.neg())
    }

    pub fn empty(ground: &GroundSet) -> Self {
        SignedSubset {
            ground: ground.clone(),
            signs: SignVector::EMPTY,
        }
    }

    /// Parses the `+`/`-`/`0` form; the string must have one character per
    /// ground element.
    pub fn parse(ground: &GroundSet, text: &str) -> Result<Self> {
        let text = text.trim();
        let len = text.chars().count();
        if len != ground.len() {
            return Err(domain(format!(
                "sign vector `{text}` has {len} entries, ground set has {}",
                ground.len()
            )));
        }
        SignedSubset::from_signs(ground, SignVector::parse(text)?)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn signs(&self) -> SignVector {
        self.signs
    }

    pub fn positive(&self) -> ElementSet {
        self.signs.pos()
    }

    pub fn negative(&self) -> ElementSet {
        self.signs.neg()
    }

    pub fn support(&self) -> ElementSet {
        self.signs.support()
    }

    pub fn sign(&self, e: usize) -> Sign {
        self.signs.sign(e)
    }

    pub fn is_positive(&self) -> bool {
        self.signs.is_positive()
    }

    fn same_ground(&self, other: &SignedSubset) -> Result<()> {
        if self.ground == other.ground {
            Ok(())
        } else {
            Err(Error::GroundMismatch)
        }
    }

    fn derived(&self, signs: SignVector) -> SignedSubset {
        SignedSubset {
            ground: self.ground.clone(),
            signs,
        }
    }

    pub fn restrict(&self, set: ElementSet) -> Result<SignedSubset> {
        self.ground.check(set)?;
        Ok(self.derived(self.signs.restrict(set)))
    }

    /// Whether `self` conforms to `other`.
    pub fn conforms_to(&self, other: &SignedSubset) -> Result<bool> {
        self.same_ground(other)?;
        Ok(self.signs.conforms_to(other.signs))
    }

    pub fn is_orthogonal_to(&self, other: &SignedSubset) -> Result<bool> {
        self.same_ground(other)?;
        Ok(self.signs.is_orthogonal_to(other.signs))
    }

    pub fn separator(&self, other: &SignedSubset) -> Result<ElementSet> {
        self.same_ground(other)?;
        Ok(self.signs.separator(other.signs))
    }

    pub fn opposite(&self) -> SignedSubset {
        self.derived(self.signs.opposite())
    }

    pub fn reorient(&self, set: ElementSet) -> Result<SignedSubset> {
        self.ground.check(set)?;
        Ok(self.derived(self.signs.reorient(set)))
    }

    /// Composition of a finite sequence (earliest member wins on each
    /// element). The empty sequence composes to the empty signed subset.
    pub fn compose(ground: &GroundSet, seq: &[SignedSubset]) -> Result<SignedSubset> {
        let mut acc = SignedSubset::empty(ground);
        for x in seq {
            acc.same_ground(x)?;
            acc.signs = acc.signs.compose(x.signs);
        }
        Ok(acc)
    }
}

impl fmt::Display for SignedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.signs.to_sign_string(self.ground.len()))
    }
}

impl fmt::Debug for SignedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedSubset({self})")
    }
}
