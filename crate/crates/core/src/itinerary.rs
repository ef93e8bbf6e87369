//! Itineraries: the alphabet of monotone pieces, admissible words, and their
//! Cantor-set addresses.
//!
//! A letter `f_{ℓ,j}` maps `I_ℓ` onto `I_{ℓ+j-2}`. Consecutive letters of an
//! admissible word chain: the range of one is the domain of the next. The
//! letter `f_{1,1}` is identified with `f_{1,2}` (the cube root), so interval
//! `I_1` has two outgoing letters and every other interval has three.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::relations::{PieceMap, RelationError};
use crate::xspace::XPoint;

/// Default cap on the number of words an enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ItineraryError {
    #[error("invalid letter f_({ell},{j})")]
    BadLetter { ell: u32, j: u8 },
    #[error("letters at positions {position} and {next} do not chain: {left} then {right}")]
    NotAdmissible {
        position: i64,
        next: i64,
        left: Letter,
        right: Letter,
    },
    #[error("offset {offset} exceeds word length {len}")]
    BadOffset { offset: usize, len: usize },
    #[error("enumeration would exceed the cap of {cap} words")]
    CapExceeded { cap: usize },
    #[error("interval index must be at least 1")]
    BadIndex,
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// A letter `f_{ℓ,j}` of the alphabet.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "(u32, u8)", try_from = "(u32, u8)")]
pub struct Letter {
    ell: u32,
    j: u8,
}

impl From<Letter> for (u32, u8) {
    fn from(l: Letter) -> Self {
        (l.ell, l.j)
    }
}

impl TryFrom<(u32, u8)> for Letter {
    type Error = ItineraryError;

    fn try_from((ell, j): (u32, u8)) -> Result<Self, Self::Error> {
        Letter::new(ell, j)
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f_({},{})", self.ell, self.j)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Letter {
    /// Canonical constructor; `f_{1,1}` normalizes to `f_{1,2}`.
    pub fn new(ell: u32, j: u8) -> Result<Self, ItineraryError> {
        if ell == 0 || !(1..=3).contains(&j) {
            return Err(ItineraryError::BadLetter { ell, j });
        }
        let j = if ell == 1 && j == 1 { 2 } else { j };
        Ok(Letter { ell, j })
    }

    /// Shorthand for letters known to be valid.
    ///
    /// # Panics
    /// On an invalid pair.
    pub fn f(ell: u32, j: u8) -> Self {
        Letter::new(ell, j).expect("valid letter")
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn j(&self) -> u8 {
        self.j
    }

    pub fn domain(&self) -> u32 {
        self.ell
    }

    pub fn range(&self) -> u32 {
        match self.j {
            1 => self.ell - 1,
            2 => self.ell,
            _ => self.ell + 1,
        }
    }

    pub fn piece(&self) -> PieceMap {
        match (self.ell, self.j) {
            (1, 2) => PieceMap::CubeRoot,
            (2, 2) => PieceMap::Square,
            (k, 1) => PieceMap::Down(k),
            (k, 2) => PieceMap::Id(k),
            (k, _) => PieceMap::Up(k),
        }
    }

    /// Identity letters `f_{k,2}` with `k ≥ 3`.
    pub fn is_identity(&self) -> bool {
        self.j == 2 && self.ell >= 3
    }

    pub fn apply(&self, x: XPoint) -> Result<XPoint, ItineraryError> {
        Ok(self.piece().apply(x)?)
    }

    pub fn apply_inverse(&self, y: XPoint) -> Result<XPoint, ItineraryError> {
        Ok(self.piece().apply_inverse(y)?)
    }

    /// Letters with the given domain, in rank order.
    pub fn with_domain(d: u32) -> Vec<Letter> {
        match d {
            0 => Vec::new(),
            1 => vec![Letter::f(1, 2), Letter::f(1, 3)],
            _ => vec![Letter::f(d, 1), Letter::f(d, 2), Letter::f(d, 3)],
        }
    }

    /// Letters with the given range, in rank order.
    pub fn with_range(r: u32) -> Vec<Letter> {
        match r {
            0 => Vec::new(),
            1 => vec![Letter::f(1, 2), Letter::f(2, 1)],
            _ => vec![Letter::f(r - 1, 3), Letter::f(r, 2), Letter::f(r + 1, 1)],
        }
    }
}

/// The chaining rule: every consecutive pair satisfies `range(a) = domain(b)`.
pub fn is_admissible(letters: &[Letter]) -> bool {
    letters.windows(2).all(|w| w[0].range() == w[1].domain())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A finite admissible word. `offset` is the index into `letters` of the
/// letter at transition position 0 (the map `x_0 ↦ x_1`); letters before it
/// sit at negative positions. `offset == len` is allowed and means the word
/// has no letters at non-negative positions.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    #[serde(rename = "word")]
    letters: Vec<Letter>,
    offset: usize,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[")?;
        for (i, l) in self.letters.iter().enumerate() {
            if i == self.offset {
                write!(f, "; ")?;
            } else if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l:?}")?;
        }
        if self.offset == self.letters.len() {
            write!(f, ";")?;
        }
        write!(f, "]")
    }
}

impl Word {
    pub fn new(letters: Vec<Letter>, offset: usize) -> Result<Self, ItineraryError> {
        if offset > letters.len() {
            return Err(ItineraryError::BadOffset {
                offset,
                len: letters.len(),
            });
        }
        for (i, w) in letters.windows(2).enumerate() {
            if w[0].range() != w[1].domain() {
                let position = i as i64 - offset as i64;
                return Err(ItineraryError::NotAdmissible {
                    position,
                    next: position + 1,
                    left: w[0],
                    right: w[1],
                });
            }
        }
        Ok(Word { letters, offset })
    }

    /// A word whose first letter sits at position 0.
    pub fn one_sided(letters: Vec<Letter>) -> Result<Self, ItineraryError> {
        Word::new(letters, 0)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters at negative positions.
    pub fn left_len(&self) -> usize {
        self.offset
    }

    /// Number of letters at non-negative positions.
    pub fn right_len(&self) -> usize {
        self.letters.len() - self.offset
    }

    /// The letter at transition position `i` (mapping `x_i` to `x_{i+1}`).
    pub fn at(&self, i: i64) -> Option<Letter> {
        let idx = self.offset as i64 + i;
        if idx < 0 {
            return None;
        }
        self.letters.get(idx as usize).copied()
    }

    /// Interval index of coordinate `x_0`, when the word determines it.
    pub fn domain_at_zero(&self) -> Option<u32> {
        if let Some(l) = self.letters.get(self.offset) {
            Some(l.domain())
        } else if self.offset > 0 {
            Some(self.letters[self.offset - 1].range())
        } else {
            None
        }
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn push_right(&mut self, l: Letter) -> Result<(), ItineraryError> {
        if let Some(last) = self.last() {
            if last.range() != l.domain() {
                let position = self.right_len() as i64 - 1;
                return Err(ItineraryError::NotAdmissible {
                    position,
                    next: position + 1,
                    left: last,
                    right: l,
                });
            }
        }
        self.letters.push(l);
        Ok(())
    }

    pub fn push_left(&mut self, l: Letter) -> Result<(), ItineraryError> {
        if let Some(first) = self.first() {
            if l.range() != first.domain() {
                let position = -(self.offset as i64) - 1;
                return Err(ItineraryError::NotAdmissible {
                    position,
                    next: position + 1,
                    left: l,
                    right: first,
                });
            }
        }
        self.letters.insert(0, l);
        self.offset += 1;
        Ok(())
    }

    /// The same letters with position 0 moved one step to the right.
    pub fn shifted(&self) -> Option<Word> {
        (self.offset < self.letters.len()).then(|| Word {
            letters: self.letters.clone(),
            offset: self.offset + 1,
        })
    }

    pub fn unshifted(&self) -> Option<Word> {
        (self.offset > 0).then(|| Word {
            letters: self.letters.clone(),
            offset: self.offset - 1,
        })
    }

    /// Letters at positions `lo..hi`, re-anchored so that `lo` keeps its position.
    pub fn slice(&self, lo: i64, hi: i64) -> Option<Word> {
        let a = self.offset as i64 + lo;
        let b = self.offset as i64 + hi;
        if a < 0 || b > self.letters.len() as i64 || a > b || lo > 0 || hi < 0 {
            return None;
        }
        Some(Word {
            letters: self.letters[a as usize..b as usize].to_vec(),
            offset: (-lo) as usize,
        })
    }
}

/// Letters extending `w` admissibly on the given side.
pub fn extensions(w: &Word, side: Side) -> Vec<Letter> {
    match side {
        Side::Right => match w.last() {
            Some(l) => Letter::with_domain(l.range()),
            None => Vec::new(),
        },
        Side::Left => match w.first() {
            Some(l) => Letter::with_range(l.domain()),
            None => Vec::new(),
        },
    }
}

/// All one-sided admissible words of length `n` whose first letter has domain `k`.
pub fn enumerate_words(k: u32, n: usize, cap: usize) -> Result<Vec<Word>, ItineraryError> {
    if k == 0 {
        return Err(ItineraryError::BadIndex);
    }
    let expected = count_words(k, n);
    if expected > cap as u128 {
        return Err(ItineraryError::CapExceeded { cap });
    }
    if n == 0 {
        return Ok(vec![Word {
            letters: Vec::new(),
            offset: 0,
        }]);
    }
    let mut layer: Vec<Vec<Letter>> = Letter::with_domain(k).into_iter().map(|l| vec![l]).collect();
    for _ in 1..n {
        let mut next = Vec::with_capacity(layer.len() * 3);
        for w in &layer {
            let last = *w.last().expect("non-empty");
            for l in Letter::with_domain(last.range()) {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        layer = next;
    }
    Ok(layer
        .into_iter()
        .map(|letters| Word { letters, offset: 0 })
        .collect())
}

/// Branching recurrence: words of length `n` starting in `I_k`.
pub fn count_words(k: u32, n: usize) -> u128 {
    if k == 0 {
        return 0;
    }
    // counts[d] = number of continuations of the remaining length from domain d
    let top = k as usize + n + 2;
    let mut counts = vec![1u128; top + 1];
    for _ in 0..n {
        let mut next = vec![0u128; top + 1];
        for (d, slot) in next.iter_mut().enumerate().take(top).skip(1) {
            *slot = Letter::with_domain(d as u32)
                .iter()
                .map(|l| counts[l.range() as usize])
                .sum();
        }
        counts = next;
    }
    counts[k as usize]
}

/// All admissible words with `left` letters before position 0 and `right`
/// letters from position 0 on, with `x_0 ∈ I_k`.
pub fn enumerate_two_sided(k: u32, left: usize, right: usize, cap: usize) -> Result<Vec<Word>, ItineraryError> {
    if k == 0 {
        return Err(ItineraryError::BadIndex);
    }
    let rights = if right == 0 {
        vec![Vec::new()]
    } else {
        enumerate_words(k, right, cap)?
            .into_iter()
            .map(|w| w.letters)
            .collect()
    };
    // left parts are built backwards from domain k
    let mut lefts: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..left {
        let mut next = Vec::new();
        for w in &lefts {
            let d = w.first().map_or(k, |l| l.domain());
            for l in Letter::with_range(d) {
                let mut v = Vec::with_capacity(w.len() + 1);
                v.push(l);
                v.extend_from_slice(w);
                next.push(v);
            }
        }
        if next.len().saturating_mul(rights.len()) > cap {
            return Err(ItineraryError::CapExceeded { cap });
        }
        lefts = next;
    }
    if lefts.len().saturating_mul(rights.len()) > cap {
        return Err(ItineraryError::CapExceeded { cap });
    }
    let mut out = Vec::with_capacity(lefts.len() * rights.len());
    for l in &lefts {
        for r in &rights {
            let mut letters = l.clone();
            letters.extend_from_slice(r);
            out.push(Word {
                letters,
                offset: left,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LengthCount {
    pub length: usize,
    pub enumerated: u128,
    pub recurrence: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CantorCertificate {
    pub k: u32,
    pub max_length: usize,
    pub pass: bool,
    pub words_checked: u64,
    pub min_right_branching: usize,
    pub min_left_branching: usize,
    pub counts: Vec<LengthCount>,
    pub counts_match: bool,
    /// First word found with fewer than two extensions on some side.
    pub isolated_witness: Option<Word>,
}

/// Walks every admissible word of length `1..=n` starting in `I_k` and checks
/// that each one branches at least twice on both sides.
pub fn cantor_certificate(k: u32, n: usize) -> CantorCertificate {
    let mut enumerated = vec![0u128; n + 1];
    let mut min_right = usize::MAX;
    let mut min_left = usize::MAX;
    let mut witness = None;
    let mut checked = 0u64;
    if k >= 1 && n >= 1 {
        let mut stack: Vec<Vec<Letter>> = Letter::with_domain(k).into_iter().map(|l| vec![l]).collect();
        while let Some(letters) = stack.pop() {
            let len = letters.len();
            enumerated[len] += 1;
            checked += 1;
            let word = Word { letters, offset: 0 };
            let right = extensions(&word, Side::Right);
            let left = extensions(&word, Side::Left);
            min_right = min_right.min(right.len());
            min_left = min_left.min(left.len());
            if (right.len() < 2 || left.len() < 2) && witness.is_none() {
                witness = Some(word.clone());
            }
            if len < n {
                for l in right {
                    let mut v = word.letters.clone();
                    v.push(l);
                    stack.push(v);
                }
            }
        }
    }
    let counts: Vec<LengthCount> = (1..=n)
        .map(|len| LengthCount {
            length: len,
            enumerated: enumerated[len],
            recurrence: count_words(k, len),
        })
        .collect();
    let counts_match = counts.iter().all(|c| c.enumerated == c.recurrence);
    CantorCertificate {
        k,
        max_length: n,
        pass: witness.is_none() && counts_match && checked > 0,
        words_checked: checked,
        min_right_branching: if checked > 0 { min_right } else { 0 },
        min_left_branching: if checked > 0 { min_left } else { 0 },
        counts,
        counts_match,
        isolated_witness: witness,
    }
}

/// A finite ternary address with digits in `{0, 2}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CantorAddress(Vec<u8>);

impl fmt::Debug for CantorAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0.")?;
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        write!(f, "₃")
    }
}

impl fmt::Display for CantorAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl Serialize for CantorAddress {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CantorAddress {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CantorAddress::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl CantorAddress {
    pub fn new(digits: Vec<u8>) -> Result<Self, String> {
        if let Some(d) = digits.iter().find(|d| **d != 0 && **d != 2) {
            return Err(format!("Cantor digit must be 0 or 2, got {d}"));
        }
        Ok(CantorAddress(digits))
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        let digits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '2' => Ok(2u8),
                other => Err(format!("bad Cantor digit {other:?}")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CantorAddress(digits))
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ d_i / 3^i`.
    pub fn value(&self) -> f64 {
        let mut v = 0.0;
        let mut scale = 1.0 / 3.0;
        for &d in &self.0 {
            v += d as f64 * scale;
            scale /= 3.0;
        }
        v
    }

    /// Whether the address denotes the point `0`.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|d| *d == 0)
    }

    pub fn is_prefix_of(&self, other: &CantorAddress) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn concat(&self, other: &CantorAddress) -> CantorAddress {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        CantorAddress(v)
    }

    /// Width of the cylinder of all infinite extensions.
    pub fn cylinder_width(&self) -> f64 {
        3f64.powi(-(self.0.len() as i32))
    }
}

/// Endpoints `c_k, d_k` of the block `C_k = C ∩ [c_k, d_k]`.
pub fn ck_interval(k: u32) -> (f64, f64) {
    let mut c = 0.0;
    let mut d = 1.0 / 3.0;
    for i in 1..k {
        c = d + 3f64.powi(-(i as i32));
        d = c + 3f64.powi(-(i as i32 + 1));
    }
    (c, d)
}

/// Address prefix of `C_k`: `k-1` twos followed by a zero.
pub fn ck_prefix(k: u32) -> CantorAddress {
    let mut v = vec![2u8; k.saturating_sub(1) as usize];
    v.push(0);
    CantorAddress(v)
}

/// Transition positions in encoding order `0, -1, 1, -2, 2, …`.
pub fn interleaved_positions() -> impl Iterator<Item = i64> {
    (0i64..).map(|i| if i % 2 == 0 { i / 2 } else { -(i + 1) / 2 })
}

fn rank_digits(rank: usize, choices: usize, out: &mut Vec<u8>) {
    match (choices, rank) {
        (2, 0) => out.push(0),
        (2, _) => out.push(2),
        (_, 0) => out.extend_from_slice(&[0, 0]),
        (_, 1) => out.extend_from_slice(&[0, 2]),
        _ => out.extend_from_slice(&[2, 0]),
    }
}

/// Choices available at transition position `i`, given the word's letters.
fn choices_at(w: &Word, k: u32, i: i64) -> Vec<Letter> {
    if i == 0 {
        Letter::with_domain(k)
    } else if i > 0 {
        match w.at(i - 1) {
            Some(prev) => Letter::with_domain(prev.range()),
            None => Vec::new(),
        }
    } else {
        let d = if i == -1 {
            k
        } else {
            match w.at(i + 1) {
                Some(next) => next.domain(),
                None => return Vec::new(),
            }
        };
        Letter::with_range(d)
    }
}

/// Address of `w` relative to `K_k`, where `k` is the index of `x_0`.
///
/// Letters are read in the order `0, -1, 1, -2, 2, …`, skipping positions the
/// word does not cover, for at most `depth` letters. A letter chosen from two
/// options contributes one digit (`0` or `2`); one chosen from three options
/// contributes `00`, `02` or `20` by rank. The code is prefix-free at each
/// step, so distinct words of the same shape get distinct addresses, and
/// appending letters in encoding order only appends digits.
pub fn cantor_address(w: &Word, depth: Option<usize>) -> CantorAddress {
    let Some(k) = w.domain_at_zero() else {
        return CantorAddress::default();
    };
    let limit = depth.unwrap_or(usize::MAX);
    let (lo, hi) = (-(w.left_len() as i64), w.right_len() as i64 - 1);
    let mut digits = Vec::new();
    let mut used = 0;
    for i in interleaved_positions() {
        if used >= limit || (i < lo && i > hi) || (i > hi && -i - 1 < lo) {
            break;
        }
        if i < lo || i > hi {
            continue;
        }
        let letter = w.at(i).expect("position inside the word");
        let choices = choices_at(w, k, i);
        let rank = choices
            .iter()
            .position(|c| *c == letter)
            .expect("admissible words only use offered letters");
        rank_digits(rank, choices.len(), &mut digits);
        used += 1;
    }
    CantorAddress(digits)
}

/// The address of `w` placed inside `C_k`.
pub fn address_in_ck(w: &Word, depth: Option<usize>) -> Option<CantorAddress> {
    let k = w.domain_at_zero()?;
    Some(ck_prefix(k).concat(&cantor_address(w, depth)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn f(ell: u32, j: u8) -> Letter {
        Letter::f(ell, j)
    }

    /// Successor sets copied from the three case lists (ℓ = 1, ℓ = 2, ℓ > 2).
    fn literal_successors(h: Letter) -> Vec<Letter> {
        let (ell, j) = (h.ell(), h.j());
        match (ell, j) {
            (1, 2) => vec![f(1, 2), f(1, 3)],
            (1, 3) => vec![f(2, 1), f(2, 2), f(2, 3)],
            (2, 1) => vec![f(1, 2), f(1, 3)],
            (2, 2) => vec![f(2, 1), f(2, 2), f(2, 3)],
            (2, 3) => vec![f(3, 1), f(3, 2), f(3, 3)],
            (l, 1) => vec![f(l - 1, 1), f(l - 1, 2), f(l - 1, 3)],
            (l, 2) => vec![f(l, 1), f(l, 2), f(l, 3)],
            (l, _) => vec![f(l + 1, 1), f(l + 1, 2), f(l + 1, 3)],
        }
    }

    fn literal_admissible(letters: &[Letter]) -> bool {
        letters
            .windows(2)
            .all(|w| literal_successors(w[0]).contains(&w[1]))
    }

    fn alphabet(max_ell: u32) -> Vec<Letter> {
        (1..=max_ell)
            .flat_map(|l| Letter::with_domain(l))
            .collect()
    }

    #[test]
    fn letter_normalization() {
        assert_eq!(Letter::new(1, 1).unwrap(), f(1, 2));
        assert!(Letter::new(0, 2).is_err());
        assert!(Letter::new(3, 4).is_err());
        assert_eq!(f(1, 3).range(), 2);
        assert_eq!(f(2, 1).range(), 1);
        assert_eq!(f(5, 2).range(), 5);
    }

    #[test]
    fn admissibility_examples() {
        assert!(is_admissible(&[f(1, 2), f(1, 3), f(2, 2)]));
        assert!(!is_admissible(&[f(1, 3), f(1, 2)]));
        assert!(is_admissible(&[f(3, 1), f(2, 1), f(1, 2)]));
        assert!(Word::one_sided(vec![f(1, 3), f(1, 2)]).is_err());
    }

    #[test]
    fn chaining_matches_case_lists_on_random_words() {
        let letters = alphabet(7);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut agree_true = 0;
        for i in 0..100_000 {
            let len = rng.gen_range(2..=6);
            let word: Vec<Letter> = if i % 2 == 0 {
                (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect()
            } else {
                // random walk along admissible successors, then maybe perturb
                let mut w = vec![letters[rng.gen_range(0..letters.len())]];
                while w.len() < len {
                    let succ = Letter::with_domain(w.last().unwrap().range());
                    w.push(succ[rng.gen_range(0..succ.len())]);
                }
                if rng.gen_bool(0.3) {
                    let p = rng.gen_range(0..len);
                    w[p] = letters[rng.gen_range(0..letters.len())];
                }
                w
            };
            let a = is_admissible(&word);
            assert_eq!(a, literal_admissible(&word), "{word:?}");
            agree_true += a as usize;
        }
        assert!(agree_true > 10_000);
    }

    #[test]
    fn extension_examples() {
        let w = Word::one_sided(vec![f(1, 2)]).unwrap();
        assert_eq!(extensions(&w, Side::Right), vec![f(1, 2), f(1, 3)]);
        assert_eq!(extensions(&w, Side::Left), vec![f(1, 2), f(2, 1)]);
        let w = Word::one_sided(vec![f(1, 3)]).unwrap();
        assert_eq!(extensions(&w, Side::Right), vec![f(2, 1), f(2, 2), f(2, 3)]);
        let w = Word::one_sided(vec![f(2, 2)]).unwrap();
        assert_eq!(extensions(&w, Side::Left), vec![f(1, 3), f(2, 2), f(3, 1)]);
    }

    #[test]
    fn left_extensions_match_brute_enumeration() {
        let letters = alphabet(12);
        for d in 1..=10u32 {
            let w = Word::one_sided(vec![Letter::with_domain(d)[0]]).unwrap();
            let brute: BTreeSet<Letter> = letters.iter().copied().filter(|l| l.range() == d).collect();
            let got: BTreeSet<Letter> = extensions(&w, Side::Left).into_iter().collect();
            assert_eq!(got, brute, "domain {d}");
        }
    }

    #[test]
    fn enumeration_examples() {
        let ws = enumerate_words(1, 1, DEFAULT_ENUMERATION_CAP).unwrap();
        let set: BTreeSet<Vec<Letter>> = ws.iter().map(|w| w.letters().to_vec()).collect();
        assert_eq!(set, BTreeSet::from([vec![f(1, 2)], vec![f(1, 3)]]));
        assert_eq!(enumerate_words(3, 1, DEFAULT_ENUMERATION_CAP).unwrap().len(), 3);
        assert_eq!(enumerate_words(1, 2, DEFAULT_ENUMERATION_CAP).unwrap().len(), 5);
        assert!(matches!(
            enumerate_words(4, 14, DEFAULT_ENUMERATION_CAP),
            Err(ItineraryError::CapExceeded { .. })
        ));
    }

    /// Brute force over every letter string of length n in a bounded alphabet.
    fn brute_count(k: u32, n: usize) -> u128 {
        let letters = alphabet(k + n as u32 + 1);
        let mut count = 0u128;
        let mut idx = vec![0usize; n];
        loop {
            let word: Vec<Letter> = idx.iter().map(|i| letters[*i]).collect();
            if word[0].domain() == k && literal_admissible(&word) {
                count += 1;
            }
            let mut p = 0;
            loop {
                if p == n {
                    return count;
                }
                idx[p] += 1;
                if idx[p] < letters.len() {
                    break;
                }
                idx[p] = 0;
                p += 1;
            }
        }
    }

    #[test]
    fn recurrence_matches_brute_force() {
        for k in 1..=4 {
            for n in 1..=4 {
                assert_eq!(count_words(k, n), brute_count(k, n), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn recurrence_matches_enumeration() {
        for k in 1..=6 {
            for n in 1..=10 {
                let words = enumerate_words(k, n, DEFAULT_ENUMERATION_CAP).unwrap();
                assert_eq!(words.len() as u128, count_words(k, n), "k={k} n={n}");
            }
        }
        assert_eq!(count_words(1, 2), 5);
    }

    #[test]
    fn index_moves_by_at_most_one() {
        for w in enumerate_words(2, 8, DEFAULT_ENUMERATION_CAP).unwrap() {
            for pair in w.letters().windows(2) {
                assert!(pair[0].domain().abs_diff(pair[1].domain()) <= 1);
            }
        }
    }

    #[test]
    fn certificate_examples() {
        for k in [1, 5] {
            let c = cantor_certificate(k, 12);
            assert!(c.pass, "{c:?}");
            assert_eq!(c.min_right_branching, 2);
            assert!(c.min_left_branching >= 2);
            assert!(c.counts_match);
        }
    }

    #[test]
    fn two_sided_enumeration() {
        let ws = enumerate_two_sided(1, 1, 1, DEFAULT_ENUMERATION_CAP).unwrap();
        // two letters into I_1 times two letters out of I_1
        assert_eq!(ws.len(), 4);
        for w in &ws {
            assert_eq!(w.offset(), 1);
            assert_eq!(w.domain_at_zero(), Some(1));
            assert!(is_admissible(w.letters()));
        }
    }

    #[test]
    fn ck_blocks_are_ternary_cylinders() {
        assert_eq!(ck_interval(1), (0.0, 1.0 / 3.0));
        for k in 1..=12 {
            let (c, d) = ck_interval(k);
            let p = ck_prefix(k);
            assert!((p.value() - c).abs() < 1e-15, "k={k}");
            assert!((c + p.cylinder_width() - d).abs() < 1e-15, "k={k}");
            let (c2, _) = ck_interval(k + 1);
            assert!(c2 > d);
        }
    }

    #[test]
    fn addresses_injective_and_separated() {
        let words = enumerate_words(3, 4, DEFAULT_ENUMERATION_CAP).unwrap();
        let addrs: Vec<CantorAddress> = words.iter().map(|w| address_in_ck(w, None).unwrap()).collect();
        let distinct: BTreeSet<&CantorAddress> = addrs.iter().collect();
        assert_eq!(distinct.len(), addrs.len());
        let min_sep = 3f64.powi(-12);
        for i in 0..addrs.len() {
            for j in i + 1..addrs.len() {
                let d = (addrs[i].value() - addrs[j].value()).abs();
                assert!(d >= min_sep, "{:?} {:?} {d}", words[i], words[j]);
            }
        }
        let six = enumerate_words(2, 6, DEFAULT_ENUMERATION_CAP).unwrap();
        let set: BTreeSet<CantorAddress> = six.iter().map(|w| cantor_address(w, None)).collect();
        assert_eq!(set.len(), six.len());
    }

    #[test]
    fn addresses_refine_under_extension() {
        for w in enumerate_words(2, 5, DEFAULT_ENUMERATION_CAP).unwrap() {
            let a = cantor_address(&w, None);
            for l in extensions(&w, Side::Right) {
                let mut longer = w.clone();
                longer.push_right(l).unwrap();
                assert!(a.is_prefix_of(&cantor_address(&longer, None)));
            }
        }
        // symmetric windows refine when both sides grow
        for w in enumerate_two_sided(4, 2, 2, DEFAULT_ENUMERATION_CAP).unwrap() {
            let a = cantor_address(&w, None);
            let mut longer = w.clone();
            longer.push_left(extensions(&w, Side::Left)[0]).unwrap();
            longer.push_right(extensions(&w, Side::Right)[2]).unwrap();
            assert!(a.is_prefix_of(&cantor_address(&longer, None)));
            assert_eq!(cantor_address(&longer, Some(4)), a);
        }
    }

    #[test]
    fn identity_itinerary_address() {
        let w = Word::new(vec![f(5, 2); 4], 2).unwrap();
        assert_eq!(cantor_address(&w, None).to_string(), "02020202");
    }

    #[test]
    fn word_positions_and_shift() {
        let w = Word::new(vec![f(2, 1), f(1, 2), f(1, 3)], 1).unwrap();
        assert_eq!(w.at(-1), Some(f(2, 1)));
        assert_eq!(w.at(0), Some(f(1, 2)));
        assert_eq!(w.at(2), None);
        assert_eq!(w.domain_at_zero(), Some(1));
        let s = w.shifted().unwrap();
        assert_eq!(s.at(0), Some(f(1, 3)));
        assert_eq!(s.unshifted().unwrap(), w);
        let end = s.shifted().unwrap();
        assert_eq!(end.domain_at_zero(), Some(2));
        assert!(end.shifted().is_none());
        assert_eq!(w.slice(-1, 1).unwrap().letters(), &[f(2, 1), f(1, 2)]);
    }

    #[test]
    fn serde_shape() {
        let w = Word::new(vec![f(1, 3), f(2, 2)], 1).unwrap();
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"word":[[1,3],[2,2]],"offset":1}"#);
    }
}
