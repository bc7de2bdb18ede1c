//! Permutations in one-line notation and the structure maps built on them:
//! inversion sets, standardization, pattern containment (plain and with an
//! adjacent cliff), scrambles, the products `×` and `⋉`, and parabolic
//! factorizations.
//!
//! Values are 1-based and stored as `u8`, so `n <= 255`. Inversion sets are
//! bitmasks over value pairs and therefore require `n <= MAX_BITSET_N`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` whose value pairs fit in a `u64` inversion bitmask.
pub const MAX_BITSET_N: usize = 11;

/// A permutation of `[n]` in one-line notation `x_1 x_2 ... x_n`.
///
/// Ordering is by size first, then lexicographic on the word, which is the
/// canonical basis order used by the Hopf algebra module.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    pub fn new(word: Vec<u8>) -> Result<Self> {
        if !is_permutation_word(&word) {
            return Err(Error::InvalidPermutation(format!("{word:?}")));
        }
        Ok(Permutation { word })
    }

    pub(crate) fn from_word_unchecked(word: Vec<u8>) -> Self {
        debug_assert!(is_permutation_word(&word), "{word:?}");
        Permutation { word }
    }

    pub fn empty() -> Self {
        Permutation { word: Vec::new() }
    }

    /// `1_n`
    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    /// `w_0 = n (n-1) ... 1`
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn into_word(self) -> Vec<u8> {
        self.word
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> u8 {
        self.word[i - 1]
    }

    pub fn inversions(&self) -> InversionSet {
        InversionSet::of_word(&self.word)
    }

    /// The inversion set as explicit pairs `(a, b)` with `a < b` and `b`
    /// appearing before `a`.
    pub fn inversion_set(&self) -> BTreeSet<(u8, u8)> {
        let mut out = BTreeSet::new();
        for (j, &b) in self.word.iter().enumerate() {
            for &a in &self.word[j + 1..] {
                if a < b {
                    out.insert((a, b));
                }
            }
        }
        out
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right descent positions, 1-based.
    pub fn descents(&self) -> Vec<usize> {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] > p[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.len()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { word: inv }
    }

    /// Functional composition `(self · other)_i = self_{other_i}`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(Permutation {
            word: other
                .word
                .iter()
                .map(|&j| self.word[j as usize - 1])
                .collect(),
        })
    }

    /// `w_0 · x`: every value `v` replaced by `n + 1 - v`. Order-reversing on
    /// the weak order.
    pub fn complement(&self) -> Permutation {
        let n = self.len() as u8;
        Permutation {
            word: self.word.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// 1-based position `j` with `x_j = n` and `x_{j+1} = 1`, if any.
    pub fn cliff(&self) -> Option<usize> {
        let n = self.len() as u8;
        self.word
            .windows(2)
            .position(|p| p[0] == n && p[1] == 1)
            .map(|i| i + 1)
    }

    /// Not of the form `1_p × y × 1_q` with `p + q > 0`.
    pub fn is_untranslated(&self) -> bool {
        let n = self.len();
        n > 0 && self.word[0] != 1 && self.word[n - 1] as usize != n
    }

    pub fn is_join_irreducible(&self) -> bool {
        self.descents().len() == 1
    }

    /// Minimal `K ⊆ [n-1]` with `x ∈ (S_n)_K`: the positions `i` where the
    /// prefix `x_1..x_i` is not `{1..i}`.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut max = 0u8;
        for (i, &v) in self
            .word
            .iter()
            .enumerate()
            .take(self.len().saturating_sub(1))
        {
            max = max.max(v);
            if max as usize != i + 1 {
                out.insert(i + 1);
            }
        }
        out
    }

    /// The permutation obtained by swapping the entries at 1-based positions
    /// `i` and `i + 1`.
    pub fn swap_adjacent(&self, i: usize) -> Permutation {
        let mut word = self.word.clone();
        word.swap(i - 1, i);
        Permutation { word }
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("∅");
        }
        if self.len() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "()" {
            return Ok(Permutation::empty());
        }
        let word: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u8>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidPermutation(s.to_string()))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::InvalidPermutation(s.to_string()))?
        };
        Permutation::new(word).map_err(|_| Error::InvalidPermutation(s.to_string()))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma separated list of one-line words, e.g. `"2413,3412"`.
/// Words of size ten or more cannot be listed this way.
pub fn parse_word_list(s: &str) -> Result<Vec<Permutation>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

pub fn is_permutation_word(word: &[u8]) -> bool {
    let n = word.len();
    let mut seen = vec![false; n + 1];
    for &v in word {
        let v = v as usize;
        if v == 0 || v > n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Inversion set of a permutation of `[n]`, `n <= MAX_BITSET_N`, as a
/// bitmask over value pairs `(a, b)`, `a < b`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct InversionSet {
    n: u8,
    bits: u64,
}

#[inline]
pub(crate) fn pair_bit(a: usize, b: usize) -> u64 {
    debug_assert!(1 <= a && a < b);
    1u64 << ((b - 1) * (b - 2) / 2 + (a - 1))
}

impl InversionSet {
    pub fn of_word(word: &[u8]) -> Self {
        assert!(
            word.len() <= MAX_BITSET_N,
            "inversion bitmask needs n <= {MAX_BITSET_N}"
        );
        let mut bits = 0u64;
        for i in 0..word.len() {
            for j in i + 1..word.len() {
                if word[i] > word[j] {
                    bits |= pair_bit(word[j] as usize, word[i] as usize);
                }
            }
        }
        InversionSet {
            n: word.len() as u8,
            bits,
        }
    }

    pub fn from_bits(n: usize, bits: u64) -> Self {
        InversionSet { n: n as u8, bits }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        self.bits & pair_bit(a, b) != 0
    }

    pub fn is_subset(&self, other: &InversionSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn pairs(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        let n = self.n as usize;
        (2..=n)
            .flat_map(move |b| (1..b).map(move |a| (a, b)))
            .filter_map(move |(a, b)| self.contains(a, b).then_some((a as u8, b as u8)))
    }

    /// Smallest transitively closed superset, viewing `(a, b)` as "b precedes
    /// a". For a union of inversion sets this is the inversion set of the join.
    pub fn transitive_closure(&self) -> InversionSet {
        let n = self.n as usize;
        // before[b] has bit a set when b precedes a (a < b)
        let mut before = [0u16; MAX_BITSET_N + 1];
        for (a, b) in self.pairs() {
            before[b as usize] |= 1 << a;
        }
        for k in 1..=n {
            for b in k + 1..=n {
                if before[b] & (1 << k) != 0 {
                    before[b] |= before[k];
                }
            }
        }
        let mut bits = 0;
        for b in 2..=n {
            for a in 1..b {
                if before[b] & (1 << a) != 0 {
                    bits |= pair_bit(a, b);
                }
            }
        }
        InversionSet { n: self.n, bits }
    }

    /// The permutation with exactly this inversion set, if one exists.
    pub fn to_permutation(&self) -> Option<Permutation> {
        let n = self.n as usize;
        let mut word = vec![0u8; n];
        for v in 1..=n {
            // number of values placed before v
            let mut pos = 0;
            for u in 1..=n {
                if u == v {
                    continue;
                }
                let u_first = if u < v {
                    !self.contains(u, v)
                } else {
                    self.contains(v, u)
                };
                if u_first {
                    pos += 1;
                }
            }
            if word[pos] != 0 {
                return None;
            }
            word[pos] = v as u8;
        }
        let p = Permutation::from_word_unchecked(word);
        (p.inversions() == *self).then_some(p)
    }
}

/// `st(a_1, ..., a_p)`: the permutation with the same relative order.
pub fn standardize<T: Ord>(seq: &[T]) -> Result<Permutation> {
    let mut idx: Vec<usize> = (0..seq.len()).collect();
    idx.sort_by(|&i, &j| seq[i].cmp(&seq[j]));
    for w in idx.windows(2) {
        if seq[w[0]] == seq[w[1]] {
            return Err(Error::DuplicateEntry(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    let mut word = vec![0u8; seq.len()];
    for (rank, &i) in idx.iter().enumerate() {
        word[i] = (rank + 1) as u8;
    }
    Ok(Permutation { word })
}

pub(crate) fn standardize_distinct(seq: &[u8]) -> Permutation {
    let mut word = vec![0u8; seq.len()];
    for (i, &a) in seq.iter().enumerate() {
        word[i] = 1 + seq.iter().filter(|&&b| b < a).count() as u8;
    }
    Permutation { word }
}

fn pattern_search(
    y: &[u8],
    x: &[u8],
    adjacent_after: Option<usize>,
    chosen: &mut Vec<usize>,
    start: usize,
) -> bool {
    let t = chosen.len();
    if t == y.len() {
        return true;
    }
    let remaining = y.len() - t;
    let (lo, hi) = match adjacent_after {
        // entry t must sit immediately after entry t - 1
        Some(j) if t == j + 1 => (start, (start + 1).min(x.len())),
        _ => (start, x.len() + 1 - remaining),
    };
    for pos in lo..hi {
        let v = x[pos];
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(s, &p)| (y[s] < y[t]) == (x[p] < v));
        if ok {
            chosen.push(pos);
            if pattern_search(y, x, adjacent_after, chosen, pos + 1) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Whether the pattern `y` occurs in `x`.
pub fn occurs(y: &Permutation, x: &Permutation) -> bool {
    occurs_in_word(y.word(), x.word())
}

pub(crate) fn occurs_in_word(y: &[u8], x: &[u8]) -> bool {
    if y.len() > x.len() {
        return false;
    }
    pattern_search(y, x, None, &mut Vec::with_capacity(y.len()), 0)
}

/// Whether `y` occurs in `x` with the two cliff entries of `y` in adjacent
/// positions of `x`. Errors when `y` has no cliff.
pub fn occurs_with_adjacent_cliff(y: &Permutation, x: &Permutation) -> Result<bool> {
    let j = y.cliff().ok_or_else(|| Error::NoCliff(y.to_string()))?;
    if y.len() > x.len() {
        return Ok(false);
    }
    // 0-based index j - 1 holds the "k", index j the "1"
    Ok(pattern_search(
        y.word(),
        x.word(),
        Some(j - 1),
        &mut Vec::with_capacity(y.len()),
        0,
    ))
}

/// All scrambles of an untranslated join-irreducible `g` with cliff at `j`:
/// permutations with the same cliff and the same set of entries before it.
pub fn scrambles(g: &Permutation) -> Result<BTreeSet<Permutation>> {
    let j = match g.cliff() {
        Some(j) if g.is_join_irreducible() => j,
        _ => return Err(Error::NotUntranslated(g.to_string())),
    };
    let k = g.len() as u8;
    let before: Vec<u8> = g.word()[..j - 1].to_vec();
    let after: Vec<u8> = g.word()[j + 1..].to_vec();
    let mut out = BTreeSet::new();
    for b in permutations_of(&before) {
        for a in permutations_of(&after) {
            let mut word = b.clone();
            word.push(k);
            word.push(1);
            word.extend_from_slice(&a);
            out.insert(Permutation::from_word_unchecked(word));
        }
    }
    Ok(out)
}

fn permutations_of(items: &[u8]) -> Vec<Vec<u8>> {
    let mut sorted = items.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    while next_permutation(&mut sorted) {
        out.push(sorted.clone());
    }
    out
}

/// `u × v`: `u` on the first `p` positions, `v` shifted up by `p` after it.
pub fn times(u: &Permutation, v: &Permutation) -> Permutation {
    let p = u.len() as u8;
    let mut word = u.word.clone();
    word.extend(v.word.iter().map(|&x| x + p));
    Permutation { word }
}

/// `u ⋉ v`: `v` shifted up by `p` first, then `u`.
pub fn ltimes(u: &Permutation, v: &Permutation) -> Permutation {
    let p = u.len() as u8;
    let mut word: Vec<u8> = v.word.iter().map(|&x| x + p).collect();
    word.extend_from_slice(&u.word);
    Permutation { word }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `x = x_K · ^K x`, with `x_K` acting on values.
    Left,
    /// `x = x^K · x_K`, with `x_K` acting on positions.
    Right,
}

/// Consecutive blocks `[lo, hi]` of `[n]` where `i` and `i + 1` share a block
/// exactly when `i ∈ K`.
pub fn parabolic_blocks(n: usize, k: &BTreeSet<usize>) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut lo = 1;
    for i in 1..=n {
        if i == n || !k.contains(&i) {
            blocks.push((lo, i));
            lo = i + 1;
        }
    }
    blocks
}

/// Parabolic factorization of `x` with respect to `K ⊆ [n-1]`.
///
/// Returns `(parabolic part, quotient part)`. For [`Side::Left`] that is
/// `(x_K, ^K x)` with `x = x_K · ^K x`; for [`Side::Right`] it is
/// `(x_K, x^K)` with `x = x^K · x_K`. In both cases the lengths add and the
/// parabolic part has maximal length.
pub fn parabolic_factor(
    x: &Permutation,
    k: &BTreeSet<usize>,
    side: Side,
) -> Result<(Permutation, Permutation)> {
    let n = x.len();
    let blocks = parabolic_blocks(n, k);
    let mut part = vec![0u8; n];
    match side {
        Side::Left => {
            // block_of[v] for values
            let mut next_slot: Vec<usize> = blocks.iter().map(|&(lo, _)| lo).collect();
            let mut block_of = vec![0usize; n + 1];
            for (bi, &(lo, hi)) in blocks.iter().enumerate() {
                for v in lo..=hi {
                    block_of[v] = bi;
                }
            }
            for &v in x.word() {
                let bi = block_of[v as usize];
                part[next_slot[bi] - 1] = v;
                next_slot[bi] += 1;
            }
            let part = Permutation { word: part };
            let quotient = part.inverse().compose(x)?;
            Ok((part, quotient))
        }
        Side::Right => {
            for &(lo, hi) in &blocks {
                let st = standardize_distinct(&x.word()[lo - 1..hi]);
                for (off, &s) in st.word().iter().enumerate() {
                    part[lo - 1 + off] = s + (lo - 1) as u8;
                }
            }
            let part = Permutation { word: part };
            let quotient = x.compose(&part.inverse())?;
            Ok((part, quotient))
        }
    }
}

/// Lexicographic successor in place; returns `false` at the last word.
pub fn next_permutation(word: &mut [u8]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut current: Option<Vec<u8>> = Some((1..=n as u8).collect());
    std::iter::from_fn(move || {
        let word = current.take()?;
        let mut next = word.clone();
        if next_permutation(&mut next) {
            current = Some(next);
        }
        Some(Permutation { word })
    })
}

/// Lexicographic rank of a permutation word (its index in `all_permutations`).
pub fn lex_rank(word: &[u8]) -> usize {
    let n = word.len();
    let mut rank = 0;
    let mut used = 0u32;
    for (i, &v) in word.iter().enumerate() {
        let smaller_unused = (1..v).filter(|&u| used & (1 << u) == 0).count();
        rank = rank * (n - i) + smaller_unused;
        used |= 1 << v;
    }
    rank
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Counts words of `S_n` satisfying `pred`, scanning in parallel over
/// prefixes.
pub fn par_count<F>(n: usize, pred: F) -> u64
where
    F: Fn(&[u8]) -> bool + Sync,
{
    if n <= 2 {
        return all_permutations(n).filter(|p| pred(p.word())).count() as u64;
    }
    let prefixes: Vec<(u8, u8)> = (1..=n as u8)
        .flat_map(|a| (1..=n as u8).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    prefixes
        .par_iter()
        .map(|&(a, b)| {
            let mut word = vec![a, b];
            word.extend((1..=n as u8).filter(|&v| v != a && v != b));
            let mut count = 0u64;
            loop {
                if pred(&word) {
                    count += 1;
                }
                if !next_permutation(&mut word[2..]) {
                    break;
                }
            }
            count
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn inversion_set_examples() {
        assert_eq!(
            p("312").inversion_set(),
            [(1, 3), (2, 3)].into_iter().collect()
        );
        assert!(p("12345").inversion_set().is_empty());
        assert_eq!(
            p("321").inversion_set(),
            [(1, 2), (1, 3), (2, 3)].into_iter().collect()
        );
        assert_eq!(p("321").length(), 3);
    }

    #[test]
    fn bitmask_agrees_with_pairs() {
        for n in 0..=5 {
            for x in all_permutations(n) {
                let bits: BTreeSet<(u8, u8)> = x.inversions().pairs().collect();
                assert_eq!(bits, x.inversion_set());
                assert_eq!(x.inversions().len(), x.length());
                assert_eq!(x.inversions().to_permutation().unwrap(), x);
            }
        }
    }

    #[test]
    fn standardize_examples() {
        assert_eq!(standardize(&[7, 3, 5, 9, 1]).unwrap(), p("42351"));
        assert_eq!(standardize(&[1, 2, 3, 4]).unwrap(), p("1234"));
        assert_eq!(standardize(&[5, 2]).unwrap(), p("21"));
        assert_eq!(standardize::<u8>(&[]).unwrap(), Permutation::empty());
        assert_eq!(standardize(&[4, 2, 4]), Err(Error::DuplicateEntry(0, 2)));
    }

    #[test]
    fn occurs_examples() {
        assert!(!occurs(&p("312"), &p("321")));
        assert!(occurs(&p("2413"), &p("2413")));
        // 2,5,1 standardizes to 231
        assert!(occurs(&p("231"), &p("25314")));
        assert!(occurs(&Permutation::empty(), &p("21")));
        assert!(!occurs(&p("4321"), &p("321")));
    }

    #[test]
    fn adjacent_cliff_examples() {
        assert!(occurs_with_adjacent_cliff(&p("312"), &p("312")).unwrap());
        // 2,3,1 at positions 1,3,4 puts the 3 and the 1 side by side
        assert!(occurs_with_adjacent_cliff(&p("231"), &p("2431")).unwrap());
        // the only 2413 occurrence in 25314 is 2,5,1,4 with 5 and 1 apart
        assert!(occurs(&p("2413"), &p("25314")));
        assert!(!occurs_with_adjacent_cliff(&p("2413"), &p("25314")).unwrap());
        assert_eq!(
            occurs_with_adjacent_cliff(&p("132"), &p("132")),
            Err(Error::NoCliff("132".into()))
        );
    }

    #[test]
    fn scramble_examples() {
        assert_eq!(scrambles(&p("312")).unwrap(), [p("312")].into());
        assert_eq!(scrambles(&p("231")).unwrap(), [p("231")].into());
        assert_eq!(scrambles(&p("2413")).unwrap(), [p("2413")].into());
        assert_eq!(
            scrambles(&p("2341")).unwrap(),
            [p("2341"), p("3241")].into()
        );
        assert_eq!(
            scrambles(&p("24513")).unwrap(),
            [p("24513"), p("42513")].into()
        );
        assert!(scrambles(&p("132")).is_err());
        assert!(scrambles(&p("3412")).is_ok());
        // has a cliff but two descents
        assert!(scrambles(&p("3241")).is_err());
    }

    #[test]
    fn scramble_oracle() {
        // every permutation with the same cliff and the same pre-cliff set
        for g in all_permutations(5).filter(|g| g.cliff().is_some() && g.is_join_irreducible()) {
            let j = g.cliff().unwrap();
            let pre: BTreeSet<u8> = g.word()[..j - 1].iter().copied().collect();
            let expected: BTreeSet<Permutation> = all_permutations(5)
                .filter(|s| {
                    s.at(j) == 5
                        && s.at(j + 1) == 1
                        && s.word()[..j - 1].iter().copied().collect::<BTreeSet<_>>() == pre
                })
                .collect();
            assert_eq!(scrambles(&g).unwrap(), expected, "{g}");
        }
    }

    #[test]
    fn products_examples() {
        assert_eq!(times(&p("21"), &p("1")), p("213"));
        assert_eq!(times(&Permutation::empty(), &p("231")), p("231"));
        assert_eq!(times(&p("12"), &p("21")), p("1243"));
        assert_eq!(ltimes(&p("21"), &p("1")), p("321"));
        assert_eq!(ltimes(&p("2413"), &Permutation::empty()), p("2413"));
        assert_eq!(ltimes(&p("12"), &p("12")), p("3412"));
    }

    #[test]
    fn parabolic_factor_trivial_cases() {
        let x = p("31524");
        let empty = BTreeSet::new();
        let full: BTreeSet<usize> = (1..5).collect();
        assert_eq!(
            parabolic_factor(&x, &empty, Side::Left).unwrap(),
            (Permutation::identity(5), x.clone())
        );
        assert_eq!(
            parabolic_factor(&x, &full, Side::Left).unwrap(),
            (x.clone(), Permutation::identity(5))
        );
        assert_eq!(
            parabolic_factor(&x, &full, Side::Right).unwrap(),
            (x.clone(), Permutation::identity(5))
        );
    }

    /// Brute force: all factorizations with additive length and the parabolic
    /// part in `(S_n)_K`, keeping the one whose parabolic part is longest.
    fn factor_oracle(
        x: &Permutation,
        k: &BTreeSet<usize>,
        side: Side,
    ) -> (Permutation, Permutation) {
        let n = x.len();
        let blocks = parabolic_blocks(n, k);
        let in_subgroup = |a: &Permutation| {
            blocks
                .iter()
                .all(|&(lo, hi)| (lo..=hi).all(|i| (lo..=hi).contains(&(a.at(i) as usize))))
        };
        let mut best: Option<(Permutation, Permutation)> = None;
        for a in all_permutations(n).filter(|a| in_subgroup(a)) {
            let b = match side {
                Side::Left => a.inverse().compose(x).unwrap(),
                Side::Right => x.compose(&a.inverse()).unwrap(),
            };
            if a.length() + b.length() != x.length() {
                continue;
            }
            if best.as_ref().is_none_or(|(ba, _)| a.length() > ba.length()) {
                best = Some((a, b));
            }
        }
        best.unwrap()
    }

    #[test]
    fn parabolic_factor_matches_oracle() {
        let x = p("2143");
        let k: BTreeSet<usize> = [1].into();
        let left = parabolic_factor(&x, &k, Side::Left).unwrap();
        assert_eq!(left, factor_oracle(&x, &k, Side::Left));
        assert_eq!(left, (p("2134"), p("1243")));

        for n in 1..=4 {
            for mask in 0..(1u32 << (n - 1)) {
                let k: BTreeSet<usize> = (1..n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
                for x in all_permutations(n) {
                    for side in [Side::Left, Side::Right] {
                        let got = parabolic_factor(&x, &k, side).unwrap();
                        assert_eq!(got, factor_oracle(&x, &k, side), "{x} {k:?} {side:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn support_and_cliff() {
        assert_eq!(p("2134").support(), [1].into());
        assert_eq!(p("312").support(), [1, 2].into());
        assert!(p("1234").support().is_empty());
        assert_eq!(p("2341").cliff(), Some(3));
        assert_eq!(p("132").cliff(), None);
        assert!(p("312").is_untranslated());
        assert!(!p("1423").is_untranslated());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p("2413").to_string(), "2413");
        let big = Permutation::new(vec![10, 1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap();
        assert_eq!(big.to_string(), "10,1,2,3,4,5,6,7,8,9");
        assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
        assert_eq!(Permutation::empty().to_string(), "∅");
        assert_eq!("∅".parse::<Permutation>().unwrap(), Permutation::empty());
        assert!("122".parse::<Permutation>().is_err());
        assert!("1x".parse::<Permutation>().is_err());
        assert_eq!(
            parse_word_list("2413, 3412").unwrap(),
            vec![p("2413"), p("3412")]
        );
    }

    #[test]
    fn lex_rank_is_position() {
        for (i, x) in all_permutations(5).enumerate() {
            assert_eq!(lex_rank(x.word()), i);
        }
        assert_eq!(par_count(6, |_| true), 720);
        assert_eq!(par_count(1, |_| true), 1);
        assert_eq!(par_count(0, |_| true), 1);
    }
}
