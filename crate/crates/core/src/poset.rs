//! Finite posets given by their Hasse diagram, with bitset comparability.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }
}

/// A poset on `0..len` built from cover pairs `(a, b)` meaning `a ⋖ b`.
#[derive(Clone, Debug)]
pub struct Poset {
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    /// Elements in a linear extension.
    order: Vec<usize>,
    /// `rank_in_order[x]` is the position of `x` in `order`.
    rank_in_order: Vec<usize>,
    upset: Vec<Bitset>,
}

impl Poset {
    pub fn from_covers(len: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut up = vec![Vec::new(); len];
        let mut down = vec![Vec::new(); len];
        for &(a, b) in covers {
            up[a].push(b);
            down[b].push(a);
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        let mut indeg: Vec<usize> = down.iter().map(Vec::len).collect();
        let mut queue: Vec<usize> = (0..len).filter(|&x| indeg[x] == 0).collect();
        let mut order = Vec::with_capacity(len);
        while let Some(x) = queue.pop() {
            order.push(x);
            for &y in &up[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push(y);
                }
            }
        }
        if order.len() != len {
            return Err(Error::Inconsistent("cover relation has a cycle".into()));
        }
        let mut rank_in_order = vec![0; len];
        for (r, &x) in order.iter().enumerate() {
            rank_in_order[x] = r;
        }
        let mut upset = vec![Bitset::new(len); len];
        for &x in order.iter().rev() {
            let mut s = Bitset::new(len);
            s.insert(x);
            for &y in &up[x] {
                s.union_with(&upset[y]);
            }
            upset[x] = s;
        }
        Ok(Poset {
            up,
            down,
            order,
            rank_in_order,
            upset,
        })
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.upset[a].contains(b)
    }

    pub fn up_covers(&self, a: usize) -> &[usize] {
        &self.up[a]
    }

    pub fn down_covers(&self, a: usize) -> &[usize] {
        &self.down[a]
    }

    pub fn up_set(&self, a: usize) -> &Bitset {
        &self.upset[a]
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.down[x].is_empty())
            .collect()
    }

    /// Elements of `[a, b]` in linear-extension order.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.upset[a].iter().filter(|&z| self.leq(z, b)).collect();
        v.sort_by_key(|&z| self.rank_in_order[z]);
        v
    }

    /// `μ(a, b)`, or `None` when `a ≰ b`.
    pub fn mobius(&self, a: usize, b: usize) -> Option<i64> {
        if !self.leq(a, b) {
            return None;
        }
        Some(self.mobius_from(a)[b])
    }

    /// `μ(a, ·)` on the whole up-set of `a` (zero elsewhere).
    pub fn mobius_from(&self, a: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        let mut members: Vec<usize> = self.upset[a].iter().collect();
        members.sort_by_key(|&z| self.rank_in_order[z]);
        mu[a] = 1;
        for &y in &members[1..] {
            let s: i64 = members
                .iter()
                .take_while(|&&z| z != y)
                .filter(|&&z| self.leq(z, y))
                .map(|&z| mu[z])
                .sum();
            mu[y] = -s;
        }
        mu
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let mut common = self.upset[a].clone();
        common.intersect_with(&self.upset[b]);
        let least = common.iter().min_by_key(|&z| self.rank_in_order[z])?;
        (self.upset[least] == common).then_some(least)
    }

    pub fn join_all(&self, start: usize, xs: &[usize]) -> Option<usize> {
        xs.iter().try_fold(start, |acc, &x| self.join(acc, x))
    }

    /// Atoms of `[a, b]`: up-covers of `a` lying below `b`.
    pub fn atoms(&self, a: usize, b: usize) -> Vec<usize> {
        self.up[a]
            .iter()
            .copied()
            .filter(|&z| self.leq(z, b))
            .collect()
    }

    /// `[a, b]` is atomic when `b` is the join of its atoms.
    pub fn is_atomic_interval(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) && self.join_all(a, &self.atoms(a, b)) == Some(b)
    }

    /// All atomic intervals `[a, join(S)]` for `S` a subset of up-covers of
    /// `a`, as `(a, top, number of atoms)`.
    pub fn atomic_intervals(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            let ups = &self.up[a];
            for mask in 0u64..(1 << ups.len()) {
                let chosen: Vec<usize> = (0..ups.len())
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| ups[i])
                    .collect();
                let Some(top) = self.join_all(a, &chosen) else {
                    continue;
                };
                // distinct subsets with the same join give the same interval;
                // keep only the full atom set
                let atoms = self.atoms(a, top);
                if atoms.len() == chosen.len() {
                    out.push((a, top, atoms.len()));
                }
            }
        }
        out
    }

    /// A linear extension: the stored one when `seed` is `None`, otherwise a
    /// random one drawn by picking uniformly among the currently minimal
    /// remaining elements.
    pub fn linear_extension(&self, seed: Option<u64>) -> Vec<usize> {
        let Some(seed) = seed else {
            return self.order.clone();
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut indeg: Vec<usize> = self.down.iter().map(Vec::len).collect();
        let mut avail: Vec<usize> = (0..self.len()).filter(|&x| indeg[x] == 0).collect();
        let mut out = Vec::with_capacity(self.len());
        while !avail.is_empty() {
            let k = rng.gen_range(0..avail.len());
            let x = avail.swap_remove(k);
            out.push(x);
            for &y in &self.up[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    avail.push(y);
                }
            }
            avail.shuffle(&mut rng);
        }
        out
    }

    pub fn is_linear_extension(&self, order: &[usize]) -> bool {
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        order.len() == self.len()
            && pos.iter().all(|&p| p != usize::MAX)
            && self.covers().iter().all(|&(a, b)| pos[a] < pos[b])
    }
}
