//! The right weak order on `S_n`: covers, joins and meets, join-irreducibles
//! in their subset encoding, and the edge labelling `λ(x, i)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{all_permutations, lex_rank, InversionSet, Permutation, MAX_BITSET_N};
use crate::poset::Poset;

/// Largest `n` for which the whole lattice may be materialized.
pub const MAX_MATERIALIZED_N: usize = 8;

pub fn covers_up(x: &Permutation) -> Vec<Permutation> {
    (1..x.len())
        .filter(|&i| x.at(i) < x.at(i + 1))
        .map(|i| x.swap_adjacent(i))
        .collect()
}

pub fn covers_down(x: &Permutation) -> Vec<Permutation> {
    x.descents()
        .into_iter()
        .map(|i| x.swap_adjacent(i))
        .collect()
}

pub fn leq(x: &Permutation, y: &Permutation) -> bool {
    x.len() == y.len() && x.inversions().is_subset(&y.inversions())
}

fn check_sizes(n: usize, xs: &[Permutation]) -> Result<()> {
    if n > MAX_BITSET_N {
        return Err(Error::Capacity {
            what: "join/meet",
            n,
            max: MAX_BITSET_N,
        });
    }
    for x in xs {
        if x.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: x.len(),
            });
        }
    }
    Ok(())
}

/// Join in `S_n`; `join(n, &[]) = 1_n`.
pub fn join(n: usize, xs: &[Permutation]) -> Result<Permutation> {
    check_sizes(n, xs)?;
    let bits = xs.iter().fold(0u64, |acc, x| acc | x.inversions().bits());
    let closed = InversionSet::from_bits(n, bits).transitive_closure();
    closed
        .to_permutation()
        .ok_or_else(|| Error::Inconsistent("join closure is not an inversion set".into()))
}

/// Meet in `S_n`; `meet(n, &[]) = w_0`.
pub fn meet(n: usize, xs: &[Permutation]) -> Result<Permutation> {
    let flipped: Vec<Permutation> = xs.iter().map(Permutation::complement).collect();
    Ok(join(n, &flipped)?.complement())
}

pub fn join2(x: &Permutation, y: &Permutation) -> Permutation {
    join(x.len(), &[x.clone(), y.clone()]).expect("join of two permutations of equal size")
}

pub fn meet2(x: &Permutation, y: &Permutation) -> Permutation {
    meet(x.len(), &[x.clone(), y.clone()]).expect("meet of two permutations of equal size")
}

/// A join-irreducible of `S_n`, stored as the subset `A ⊆ [n]` of values
/// after its unique descent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JoinIrreducible {
    n: u8,
    set: u32,
}

impl JoinIrreducible {
    /// Bitmask form: bit `v - 1` set iff `v ∈ A`.
    pub fn from_mask(n: usize, set: u32) -> Result<Self> {
        let subset: Vec<usize> = (1..=n).filter(|v| set & (1 << (v - 1)) != 0).collect();
        let invalid = || Error::InvalidSubset {
            subset: subset.clone(),
            n,
        };
        if n > 31 || set == 0 || set >> n != 0 {
            return Err(invalid());
        }
        let m = set.trailing_zeros() as usize + 1;
        let comp = !set & ((1u32 << n) - 1);
        if comp == 0 || (32 - comp.leading_zeros()) as usize <= m {
            return Err(invalid());
        }
        Ok(JoinIrreducible { n: n as u8, set })
    }

    pub fn from_subset(n: usize, a: &BTreeSet<usize>) -> Result<Self> {
        if a.iter().any(|&v| v == 0 || v > n) {
            return Err(Error::InvalidSubset {
                subset: a.iter().copied().collect(),
                n,
            });
        }
        let set = a.iter().fold(0u32, |acc, &v| acc | 1 << (v - 1));
        Self::from_mask(n, set)
    }

    pub fn from_permutation(x: &Permutation) -> Result<Self> {
        let d = x.descents();
        if d.len() != 1 {
            return Err(Error::NotJoinIrreducible(x.to_string()));
        }
        let set = x.word()[d[0]..]
            .iter()
            .fold(0u32, |acc, &v| acc | 1 << (v - 1));
        Self::from_mask(x.len(), set)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn mask(&self) -> u32 {
        self.set
    }

    pub fn contains(&self, v: usize) -> bool {
        v >= 1 && self.set & (1 << (v - 1)) != 0
    }

    pub fn subset(&self) -> BTreeSet<usize> {
        (1..=self.n()).filter(|&v| self.contains(v)).collect()
    }

    /// `m = min A`
    pub fn m(&self) -> usize {
        self.set.trailing_zeros() as usize + 1
    }

    /// `M = max Aᶜ`
    pub fn big_m(&self) -> usize {
        let comp = !self.set & ((1u32 << self.n) - 1);
        (32 - comp.leading_zeros()) as usize
    }

    pub fn degree(&self) -> usize {
        self.big_m() - self.m()
    }

    /// Position of the unique descent, 1-based.
    pub fn descent(&self) -> usize {
        self.n() - self.set.count_ones() as usize
    }

    pub fn to_permutation(&self) -> Permutation {
        let n = self.n();
        let mut word: Vec<u8> = (1..=n)
            .filter(|&v| !self.contains(v))
            .map(|v| v as u8)
            .collect();
        word.extend((1..=n).filter(|&v| self.contains(v)).map(|v| v as u8));
        Permutation::new(word).expect("subset encoding yields a permutation")
    }

    /// `γ_*`, the unique element covered by `γ`.
    pub fn lower_cover(&self) -> Permutation {
        self.to_permutation().swap_adjacent(self.descent())
    }

    pub fn is_untranslated(&self) -> bool {
        self.degree() == self.n() - 1
    }
}

impl fmt::Display for JoinIrreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_permutation(), f)
    }
}

impl fmt::Debug for JoinIrreducible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for JoinIrreducible {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_permutation().serialize(s)
    }
}

pub fn ji_from_subset(a: &BTreeSet<usize>, n: usize) -> Result<Permutation> {
    Ok(JoinIrreducible::from_subset(n, a)?.to_permutation())
}

pub fn subset_from_ji(g: &Permutation) -> Result<BTreeSet<usize>> {
    Ok(JoinIrreducible::from_permutation(g)?.subset())
}

/// All join-irreducibles of `S_n`, ordered by subset mask.
pub fn join_irreducibles(n: usize) -> Vec<JoinIrreducible> {
    if n < 2 {
        return Vec::new();
    }
    (1u32..(1 << n))
        .filter_map(|s| JoinIrreducible::from_mask(n, s).ok())
        .collect()
}

/// `λ(x, i)`, the join-irreducible labelling the edge `x ⋗ x s_i`.
pub fn lambda(x: &Permutation, i: usize) -> Result<JoinIrreducible> {
    if i == 0 || i >= x.len() || x.at(i) < x.at(i + 1) {
        return Err(Error::NotADescent {
            perm: x.to_string(),
            position: i,
        });
    }
    Ok(lambda_unchecked(x.word(), i))
}

#[inline]
pub(crate) fn lambda_mask(w: &[u8], i: usize) -> u32 {
    let (xi, xi1) = (w[i - 1], w[i]);
    let mut set = 0u32;
    for &v in &w[..i] {
        if v > xi {
            set |= 1 << (v - 1);
        }
    }
    for &v in &w[i..] {
        if v >= xi1 {
            set |= 1 << (v - 1);
        }
    }
    set
}

pub(crate) fn lambda_unchecked(w: &[u8], i: usize) -> JoinIrreducible {
    JoinIrreducible {
        n: w.len() as u8,
        set: lambda_mask(w, i),
    }
}

/// The whole weak order on `S_n`, indexed by lexicographic rank.
pub struct WeakOrder {
    n: usize,
    elements: Vec<Permutation>,
    inversions: Vec<u64>,
    up: Vec<Vec<u32>>,
    down: Vec<Vec<u32>>,
    poset: OnceLock<Poset>,
}

impl WeakOrder {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_MATERIALIZED_N {
            return Err(Error::Capacity {
                what: "weak order materialization",
                n,
                max: MAX_MATERIALIZED_N,
            });
        }
        let elements: Vec<Permutation> = all_permutations(n).collect();
        let inversions = elements.iter().map(|x| x.inversions().bits()).collect();
        let mut up = vec![Vec::new(); elements.len()];
        let mut down = vec![Vec::new(); elements.len()];
        for (idx, x) in elements.iter().enumerate() {
            for i in 1..n {
                let y = x.swap_adjacent(i);
                let j = lex_rank(y.word()) as u32;
                if x.at(i) < x.at(i + 1) {
                    up[idx].push(j);
                } else {
                    down[idx].push(j);
                }
            }
        }
        Ok(WeakOrder {
            n,
            elements,
            inversions,
            up,
            down,
            poset: OnceLock::new(),
        })
    }

    /// Process-wide cached instance.
    pub fn shared(n: usize) -> Result<Arc<WeakOrder>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<WeakOrder>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(w) = cache.lock().unwrap().get(&n) {
            return Ok(w.clone());
        }
        let w = Arc::new(WeakOrder::new(n)?);
        Ok(cache.lock().unwrap().entry(n).or_insert(w).clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &Permutation {
        &self.elements[idx]
    }

    pub fn index(&self, x: &Permutation) -> usize {
        assert_eq!(x.len(), self.n);
        lex_rank(x.word())
    }

    pub fn inversion_bits(&self, idx: usize) -> u64 {
        self.inversions[idx]
    }

    pub fn leq_idx(&self, a: usize, b: usize) -> bool {
        self.inversions[a] & !self.inversions[b] == 0
    }

    pub fn up_covers(&self, idx: usize) -> &[u32] {
        &self.up[idx]
    }

    pub fn down_covers(&self, idx: usize) -> &[u32] {
        &self.down[idx]
    }

    pub fn join_idx(&self, a: usize, b: usize) -> usize {
        let closed = InversionSet::from_bits(self.n, self.inversions[a] | self.inversions[b])
            .transitive_closure();
        self.index(
            &closed
                .to_permutation()
                .expect("closure is an inversion set"),
        )
    }

    pub fn meet_idx(&self, a: usize, b: usize) -> usize {
        let ca = self.index(&self.elements[a].complement());
        let cb = self.index(&self.elements[b].complement());
        self.index(&self.elements[self.join_idx(ca, cb)].complement())
    }

    /// Join computed as the unique minimal common upper bound, by search over
    /// up-sets. Errors if the minimal upper bound is not unique.
    pub fn join_by_search(&self, a: usize, b: usize) -> Result<usize> {
        let ua = self.up_set(a);
        let ub = self.up_set(b);
        let common: Vec<usize> = (0..self.len()).filter(|&z| ua[z] && ub[z]).collect();
        let minimal: Vec<usize> = common
            .iter()
            .copied()
            .filter(|&z| {
                !self.down[z]
                    .iter()
                    .any(|&d| ua[d as usize] && ub[d as usize])
            })
            .collect();
        match minimal.as_slice() {
            [z] => Ok(*z),
            _ => Err(Error::Inconsistent(format!(
                "{} minimal upper bounds of {} and {}",
                minimal.len(),
                self.elements[a],
                self.elements[b]
            ))),
        }
    }

    /// Meet by search over down-sets.
    pub fn meet_by_search(&self, a: usize, b: usize) -> Result<usize> {
        let da = self.down_set(a);
        let db = self.down_set(b);
        let maximal: Vec<usize> = (0..self.len())
            .filter(|&z| da[z] && db[z])
            .filter(|&z| !self.up[z].iter().any(|&u| da[u as usize] && db[u as usize]))
            .collect();
        match maximal.as_slice() {
            [z] => Ok(*z),
            _ => Err(Error::Inconsistent(format!(
                "{} maximal lower bounds",
                maximal.len()
            ))),
        }
    }

    fn reach(&self, start: usize, edges: &[Vec<u32>]) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &w in &edges[v] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w as usize);
                }
            }
        }
        seen
    }

    pub fn up_set(&self, idx: usize) -> Vec<bool> {
        self.reach(idx, &self.up)
    }

    pub fn down_set(&self, idx: usize) -> Vec<bool> {
        self.reach(idx, &self.down)
    }

    /// The lattice as a generic poset, built on first use.
    pub fn poset(&self) -> &Poset {
        self.poset.get_or_init(|| {
            let covers: Vec<(usize, usize)> = self
                .up
                .iter()
                .enumerate()
                .flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b as usize)))
                .collect();
            Poset::from_covers(self.len(), &covers).expect("weak order is acyclic")
        })
    }

    pub fn mobius(&self, x: &Permutation, y: &Permutation) -> Result<i64> {
        self.poset()
            .mobius(self.index(x), self.index(y))
            .ok_or_else(|| Error::NotComparable {
                lower: x.to_string(),
                upper: y.to_string(),
            })
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.elements.iter().map(|x| x.to_string()).collect(),
            covers: self
                .up
                .iter()
                .enumerate()
                .flat_map(|(a, ups)| ups.iter().map(move |&b| [a, b as usize]))
                .collect(),
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn cover_examples() {
        assert_eq!(covers_up(&p("123")), vec![p("213"), p("132")]);
        assert!(covers_up(&p("321")).is_empty());
        assert_eq!(covers_down(&p("312")), vec![p("132")]);
    }

    #[test]
    fn join_meet_examples() {
        assert_eq!(join(3, &[p("213"), p("132")]).unwrap(), p("321"));
        assert_eq!(join(3, &[p("231")]).unwrap(), p("231"));
        assert_eq!(join(3, &[]).unwrap(), p("123"));
        assert_eq!(meet(3, &[]).unwrap(), p("321"));
        // common lower bounds of 312 and 231 in S_3 are only 123
        assert_eq!(meet(3, &[p("312"), p("231")]).unwrap(), p("123"));
        assert!(join(3, &[p("12")]).is_err());
    }

    #[test]
    fn join_meet_match_search() {
        for n in 1..=5 {
            let w = WeakOrder::new(n).unwrap();
            for a in 0..w.len() {
                for b in 0..w.len() {
                    assert_eq!(w.join_by_search(a, b).unwrap(), w.join_idx(a, b));
                    assert_eq!(w.meet_by_search(a, b).unwrap(), w.meet_idx(a, b));
                }
            }
        }
    }

    #[test]
    fn subset_encoding_examples() {
        assert_eq!(ji_from_subset(&[1, 2].into(), 3).unwrap(), p("312"));
        assert_eq!(ji_from_subset(&[1, 3].into(), 3).unwrap(), p("213"));
        assert_eq!(subset_from_ji(&p("231")).unwrap(), [1].into());
        assert!(ji_from_subset(&[3].into(), 3).is_err());
        assert!(ji_from_subset(&BTreeSet::new(), 3).is_err());
        assert!(subset_from_ji(&p("321")).is_err());
        let g = JoinIrreducible::from_permutation(&p("2413")).unwrap();
        assert_eq!((g.m(), g.big_m(), g.degree(), g.descent()), (1, 4, 3, 2));
        assert_eq!(g.lower_cover(), p("2143"));
    }

    #[test]
    fn ji_count_and_shape() {
        for n in 0..=8usize {
            let jis = join_irreducibles(n);
            let expected = if n == 0 { 0 } else { (1usize << n) - n - 1 };
            assert_eq!(jis.len(), expected);
            for g in jis {
                let x = g.to_permutation();
                assert_eq!(x.descents(), vec![g.descent()]);
                assert_eq!(x.at(g.descent()) as usize, g.big_m());
                assert_eq!(x.at(g.descent() + 1) as usize, g.m());
                assert_eq!(JoinIrreducible::from_permutation(&x).unwrap(), g);
                assert_eq!(g.is_untranslated(), x.cliff().is_some());
            }
        }
        let direct = all_permutations(5)
            .filter(|x| x.is_join_irreducible())
            .count();
        assert_eq!(direct, join_irreducibles(5).len());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda(&p("3142"), 3).unwrap().to_permutation(), p("1342"));
        assert_eq!(lambda(&p("312"), 1).unwrap().to_permutation(), p("312"));
        assert_eq!(lambda(&p("231"), 2).unwrap().to_permutation(), p("231"));
        assert!(lambda(&p("3142"), 2).is_err());
    }

    #[test]
    fn lambda_bounds() {
        for n in 2..=6 {
            for x in all_permutations(n) {
                for i in x.descents() {
                    let g = lambda(&x, i).unwrap();
                    assert_eq!((g.big_m(), g.m()), (x.at(i) as usize, x.at(i + 1) as usize));
                    assert!(leq(&g.to_permutation(), &x));
                    assert!(leq(&g.lower_cover(), &x.swap_adjacent(i)));
                }
            }
        }
    }

    #[test]
    fn mobius_examples() {
        let w = WeakOrder::new(3).unwrap();
        assert_eq!(w.mobius(&p("213"), &p("213")).unwrap(), 1);
        assert_eq!(w.mobius(&p("123"), &p("213")).unwrap(), -1);
        // hexagon: atoms get -1, the two length-2 elements get 0, the top gets 1
        assert_eq!(w.mobius(&p("123"), &p("231")).unwrap(), 0);
        assert_eq!(w.mobius(&p("123"), &p("321")).unwrap(), 1);
        assert!(w.mobius(&p("213"), &p("132")).is_err());
    }

    #[test]
    fn json_export() {
        let j = WeakOrder::new(2).unwrap().to_json();
        assert_eq!(j.elements, vec!["12", "21"]);
        assert_eq!(j.covers, vec![[0, 1]]);
    }
}
