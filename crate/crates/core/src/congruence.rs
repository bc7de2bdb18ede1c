//! Lattice congruences of the weak order on `S_n`.
//!
//! A congruence is stored as a partition of `S_n` (indexed by lexicographic
//! rank) into intervals, with classes numbered in order of their bottom
//! element. Every constructor funnels through [`Congruence::from_labels`],
//! which checks the interval and order-preservation properties.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{lex_rank, parabolic_factor, Permutation, Side};
use crate::poset::{Bitset, Poset};
use crate::weak_order::{join_irreducibles, lambda_mask, JoinIrreducible, WeakOrder};

/// Cost guard for [`closure_bruteforce`].
pub const MAX_BRUTEFORCE_N: usize = 7;
/// Cost guard for [`ForcingOrder`].
pub const MAX_FORCING_N: usize = 9;

pub(crate) struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    pub(crate) fn new(len: usize) -> Self {
        Dsu {
            parent: (0..len as u32).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    /// Returns `true` when two distinct classes were merged.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        true
    }

    pub(crate) fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.find(x)).collect()
    }
}

pub struct Congruence {
    order: Arc<WeakOrder>,
    class_of: Vec<u32>,
    classes: Vec<Vec<u32>>,
    bottom: Vec<u32>,
    top: Vec<u32>,
    contracted: Vec<JoinIrreducible>,
    quotient: OnceLock<QuotientPoset>,
}

impl std::fmt::Debug for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Congruence")
            .field("n", &self.n())
            .field("classes", &self.num_classes())
            .field("contracted", &self.contracted)
            .finish()
    }
}

impl PartialEq for Congruence {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n() && self.class_of == other.class_of
    }
}

impl Eq for Congruence {}

impl Congruence {
    /// Builds a congruence from arbitrary class labels (one per element in
    /// lexicographic order) and verifies that it is a lattice congruence:
    /// every class is an interval and both projections preserve order.
    pub fn from_labels(order: Arc<WeakOrder>, labels: &[usize]) -> Result<Self> {
        let len = order.len();
        if labels.len() != len {
            return Err(Error::SizeMismatch {
                expected: len,
                got: labels.len(),
            });
        }
        // first occurrence in lex order is not the bottom in general, so group
        // first and then sort classes by bottom
        let mut groups: HashMap<usize, Vec<u32>> = HashMap::new();
        for (x, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(x as u32);
        }
        let mut classes: Vec<(u32, u32, Vec<u32>)> = Vec::with_capacity(groups.len());
        for (_, members) in groups {
            let b = *members
                .iter()
                .min_by_key(|&&x| order.inversion_bits(x as usize).count_ones())
                .unwrap();
            let t = *members
                .iter()
                .max_by_key(|&&x| order.inversion_bits(x as usize).count_ones())
                .unwrap();
            classes.push((b, t, members));
        }
        classes.sort_unstable_by_key(|c| c.0);
        let mut class_of = vec![0u32; len];
        for (c, (_, _, members)) in classes.iter().enumerate() {
            for &x in members {
                class_of[x as usize] = c as u32;
            }
        }
        let bottom: Vec<u32> = classes.iter().map(|c| c.0).collect();
        let top: Vec<u32> = classes.iter().map(|c| c.1).collect();
        let classes: Vec<Vec<u32>> = classes.into_iter().map(|c| c.2).collect();
        let contracted = join_irreducibles(order.n())
            .into_iter()
            .filter(|g| {
                class_of[lex_rank(g.to_permutation().word())]
                    == class_of[lex_rank(g.lower_cover().word())]
            })
            .collect();
        let cong = Congruence {
            order,
            class_of,
            classes,
            bottom,
            top,
            contracted,
            quotient: OnceLock::new(),
        };
        cong.verify()?;
        Ok(cong)
    }

    fn verify(&self) -> Result<()> {
        let w = &self.order;
        for (c, members) in self.classes.iter().enumerate() {
            let (b, t) = (self.bottom[c] as usize, self.top[c] as usize);
            if !members
                .iter()
                .all(|&x| w.leq_idx(b, x as usize) && w.leq_idx(x as usize, t))
            {
                return Err(Error::Inconsistent(format!(
                    "class of {} has no unique bottom and top",
                    w.element(b)
                )));
            }
            // the interval [b, t] is reachable from b by up-covers below t
            let mut seen = vec![b];
            let mut stack = vec![b];
            let mut visited = std::collections::HashSet::from([b]);
            while let Some(x) = stack.pop() {
                for &y in w.up_covers(x) {
                    let y = y as usize;
                    if w.leq_idx(y, t) && visited.insert(y) {
                        if self.class_of[y] as usize != c {
                            return Err(Error::Inconsistent(format!(
                                "class [{}, {}] is not an interval",
                                w.element(b),
                                w.element(t)
                            )));
                        }
                        seen.push(y);
                        stack.push(y);
                    }
                }
            }
            if seen.len() != members.len() {
                return Err(Error::Inconsistent("class is not an interval".into()));
            }
        }
        for x in 0..w.len() {
            let cx = self.class_of[x] as usize;
            for &y in w.up_covers(x) {
                let cy = self.class_of[y as usize] as usize;
                if !w.leq_idx(self.bottom[cx] as usize, self.bottom[cy] as usize)
                    || !w.leq_idx(self.top[cx] as usize, self.top[cy] as usize)
                {
                    return Err(Error::Inconsistent(format!(
                        "projections do not preserve {} < {}",
                        w.element(x),
                        w.element(y as usize)
                    )));
                }
            }
        }
        Ok(())
    }

    /// All classes singletons.
    pub fn trivial(n: usize) -> Result<Self> {
        let order = WeakOrder::shared(n)?;
        let labels: Vec<usize> = (0..order.len()).collect();
        Self::from_labels(order, &labels)
    }

    /// A single class.
    pub fn full(n: usize) -> Result<Self> {
        let order = WeakOrder::shared(n)?;
        let labels = vec![0; order.len()];
        Self::from_labels(order, &labels)
    }

    pub fn n(&self) -> usize {
        self.order.n()
    }

    pub fn order(&self) -> &Arc<WeakOrder> {
        &self.order
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: &Permutation) -> usize {
        self.class_of[self.order.index(x)] as usize
    }

    pub fn class_of_idx(&self, idx: usize) -> usize {
        self.class_of[idx] as usize
    }

    pub fn class_labels(&self) -> &[u32] {
        &self.class_of
    }

    pub fn members_idx(&self, class: usize) -> &[u32] {
        &self.classes[class]
    }

    pub fn members(&self, class: usize) -> Vec<Permutation> {
        let mut v: Vec<Permutation> = self.classes[class]
            .iter()
            .map(|&x| self.order.element(x as usize).clone())
            .collect();
        v.sort();
        v
    }

    pub fn bottom_idx(&self, class: usize) -> usize {
        self.bottom[class] as usize
    }

    pub fn top_idx(&self, class: usize) -> usize {
        self.top[class] as usize
    }

    pub fn bottom(&self, class: usize) -> &Permutation {
        self.order.element(self.bottom[class] as usize)
    }

    pub fn top(&self, class: usize) -> &Permutation {
        self.order.element(self.top[class] as usize)
    }

    /// `π_↓ x`
    pub fn pi_down(&self, x: &Permutation) -> &Permutation {
        self.bottom(self.class_of(x))
    }

    /// `π^↑ x`
    pub fn pi_up(&self, x: &Permutation) -> &Permutation {
        self.top(self.class_of(x))
    }

    pub fn is_bottom(&self, x: &Permutation) -> bool {
        self.pi_down(x) == x
    }

    pub fn equivalent(&self, x: &Permutation, y: &Permutation) -> bool {
        self.class_of(x) == self.class_of(y)
    }

    /// Class bottoms in increasing word order.
    pub fn bottoms(&self) -> Vec<Permutation> {
        (0..self.num_classes())
            .map(|c| self.bottom(c).clone())
            .collect()
    }

    pub fn contracted(&self) -> &[JoinIrreducible] {
        &self.contracted
    }

    pub fn contracted_set(&self) -> BTreeSet<JoinIrreducible> {
        self.contracted.iter().copied().collect()
    }

    pub fn contracts(&self, g: &JoinIrreducible) -> bool {
        self.contracted.binary_search(g).is_ok()
    }

    /// Whether every class of `self` lies inside a class of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.n() == other.n()
            && self.classes.iter().all(|members| {
                let c = other.class_of[members[0] as usize];
                members.iter().all(|&x| other.class_of[x as usize] == c)
            })
    }

    pub fn quotient(&self) -> &QuotientPoset {
        self.quotient.get_or_init(|| QuotientPoset::new(self))
    }

    pub fn to_json(&self) -> CongruenceJson {
        CongruenceJson {
            n: self.n(),
            classes: (0..self.num_classes())
                .map(|c| self.members(c).iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct CongruenceJson {
    pub n: usize,
    pub classes: Vec<Vec<String>>,
}

/// The quotient `S_n / Θ`, realized on class bottoms. Element `c` is class
/// `c` of the congruence.
pub struct QuotientPoset {
    elements: Vec<Permutation>,
    poset: Poset,
}

impl QuotientPoset {
    fn new(cong: &Congruence) -> Self {
        let w = cong.order();
        let mut covers = Vec::new();
        for c in 0..cong.num_classes() {
            for &y in w.down_covers(cong.bottom_idx(c)) {
                covers.push((cong.class_of_idx(y as usize), c));
            }
        }
        QuotientPoset {
            elements: cong.bottoms(),
            poset: Poset::from_covers(cong.num_classes(), &covers)
                .expect("quotient of a finite lattice is acyclic"),
        }
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn to_json(&self) -> crate::weak_order::PosetJson {
        crate::weak_order::PosetJson {
            elements: self.elements.iter().map(|x| x.to_string()).collect(),
            covers: self
                .poset
                .covers()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
        }
    }
}

/// Smallest congruence identifying each given pair, by fixed-point
/// enforcement of join and meet compatibility.
pub fn closure_bruteforce(n: usize, pairs: &[(Permutation, Permutation)]) -> Result<Congruence> {
    if n > MAX_BRUTEFORCE_N {
        return Err(Error::Capacity {
            what: "brute-force congruence closure",
            n,
            max: MAX_BRUTEFORCE_N,
        });
    }
    let w = WeakOrder::shared(n)?;
    let len = w.len();
    let mut dsu = Dsu::new(len);
    let mut queue = Vec::new();
    for (x, y) in pairs {
        if x.len() != n || y.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: if x.len() != n { x.len() } else { y.len() },
            });
        }
        let (a, b) = (w.index(x), w.index(y));
        if dsu.union(a, b) {
            queue.push((a, b));
        }
    }
    while let Some((a, b)) = queue.pop() {
        for z in 0..len {
            for (p, q) in [
                (w.join_idx(a, z), w.join_idx(b, z)),
                (w.meet_idx(a, z), w.meet_idx(b, z)),
            ] {
                if dsu.union(p, q) {
                    queue.push((p, q));
                }
            }
        }
    }
    Congruence::from_labels(w, &dsu.labels())
}

/// `Cg(γ)` computed by [`closure_bruteforce`] on the edge `γ ⋗ γ_*`.
pub fn principal_bruteforce(g: &JoinIrreducible) -> Result<Congruence> {
    closure_bruteforce(g.n(), &[(g.to_permutation(), g.lower_cover())])
}

#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `γ₁ → γ₂` means `γ₂ < γ₁`.
    Standard,
    /// Deliberately wrong orientation, kept as a negative control.
    Reversed,
}

/// The forcing order `Irr(Con(S_n))` on join-irreducibles: `γ' ≤ γ` when
/// every congruence contracting `γ` also contracts `γ'`.
pub struct ForcingOrder {
    n: usize,
    jis: Vec<JoinIrreducible>,
    slot: Vec<u32>,
    /// `down[i]` holds `j` iff `jis[j] ≤ jis[i]`.
    down: Vec<Bitset>,
}

fn arrow(a1: &JoinIrreducible, a2: &JoinIrreducible) -> bool {
    let (m1, big1) = (a1.m(), a1.big_m());
    let below_big1 = (1u32 << (big1 - 1)) - 1;
    let above_m1 = !((1u32 << m1) - 1);
    (a1.mask() & below_big1 == a2.mask() & below_big1 && a2.big_m() > big1)
        || (a1.mask() & above_m1 == a2.mask() & above_m1 && a2.m() < m1)
}

impl ForcingOrder {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_orientation(n, Orientation::Standard)
    }

    #[doc(hidden)]
    pub fn with_orientation(n: usize, orientation: Orientation) -> Result<Self> {
        if n > MAX_FORCING_N {
            return Err(Error::Capacity {
                what: "forcing order",
                n,
                max: MAX_FORCING_N,
            });
        }
        let jis = join_irreducibles(n);
        let mut slot = vec![u32::MAX; 1 << n];
        for (i, g) in jis.iter().enumerate() {
            slot[g.mask() as usize] = i as u32;
        }
        let k = jis.len();
        // successor lists: i -> j when contracting jis[i] forces jis[j]
        let mut forces = vec![Vec::new(); k];
        for i in 0..k {
            for j in 0..k {
                if i != j && arrow(&jis[i], &jis[j]) {
                    match orientation {
                        Orientation::Standard => forces[i].push(j),
                        Orientation::Reversed => forces[j].push(i),
                    }
                }
            }
        }
        let mut down = Vec::with_capacity(k);
        for i in 0..k {
            let mut set = Bitset::new(k);
            set.insert(i);
            let mut stack = vec![i];
            while let Some(x) = stack.pop() {
                for &y in &forces[x] {
                    if !set.contains(y) {
                        set.insert(y);
                        stack.push(y);
                    }
                }
            }
            down.push(set);
        }
        Ok(ForcingOrder { n, jis, slot, down })
    }

    pub fn shared(n: usize) -> Result<Arc<ForcingOrder>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ForcingOrder>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&n) {
            return Ok(f.clone());
        }
        let f = Arc::new(ForcingOrder::new(n)?);
        Ok(cache.lock().unwrap().entry(n).or_insert(f).clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[JoinIrreducible] {
        &self.jis
    }

    fn slot_of(&self, g: &JoinIrreducible) -> usize {
        assert_eq!(g.n(), self.n, "join-irreducible of the wrong size");
        self.slot[g.mask() as usize] as usize
    }

    /// `a ≤ b` in the forcing order.
    pub fn leq(&self, a: &JoinIrreducible, b: &JoinIrreducible) -> bool {
        self.down[self.slot_of(b)].contains(self.slot_of(a))
    }

    /// The two-case arrow rule, before transitive closure.
    pub fn arrow(&self, a: &JoinIrreducible, b: &JoinIrreducible) -> bool {
        arrow(a, b)
    }

    /// Elements covered by `g`, from the four-case rule.
    pub fn cover_rule(g: &JoinIrreducible) -> BTreeSet<JoinIrreducible> {
        let n = g.n();
        let (m, big) = (g.m(), g.big_m());
        let a = g.mask();
        let mut out = Vec::new();
        if big < n {
            let bit_next = 1u32 << big;
            out.push(a & !bit_next);
            out.push((a & !bit_next) | 1 << (big - 1));
        }
        if m > 1 {
            let bit_prev = 1u32 << (m - 2);
            out.push(a | bit_prev);
            out.push((a | bit_prev) & !(1 << (m - 1)));
        }
        out.into_iter()
            .filter_map(|mask| JoinIrreducible::from_mask(n, mask).ok())
            .collect()
    }

    /// Elements covered by `g` in the transitive closure.
    pub fn covers_below(&self, g: &JoinIrreducible) -> BTreeSet<JoinIrreducible> {
        let i = self.slot_of(g);
        let below: Vec<usize> = self.down[i].iter().filter(|&j| j != i).collect();
        below
            .iter()
            .filter(|&&j| !below.iter().any(|&k| k != j && self.down[k].contains(j)))
            .map(|&j| self.jis[j])
            .collect()
    }

    /// Checks that the Hasse diagram of the closure matches the cover rule.
    pub fn verify_cover_rule(&self) -> Result<()> {
        for g in &self.jis {
            let closure = self.covers_below(g);
            let rule = Self::cover_rule(g);
            if closure != rule {
                return Err(Error::Inconsistent(format!(
                    "covers of {g}: closure {closure:?}, rule {rule:?}"
                )));
            }
        }
        Ok(())
    }

    pub fn minimal(&self) -> Vec<JoinIrreducible> {
        (0..self.jis.len())
            .filter(|&i| self.down[i].count() == 1)
            .map(|i| self.jis[i])
            .collect()
    }

    /// Order ideal generated by `gens`.
    pub fn ideal(&self, gens: &[JoinIrreducible]) -> BTreeSet<JoinIrreducible> {
        let mut set = Bitset::new(self.jis.len());
        for g in gens {
            set.union_with(&self.down[self.slot_of(g)]);
        }
        set.iter().map(|i| self.jis[i]).collect()
    }

    /// Returns the first violation `(contracted, forced)` if `set` is not an
    /// order ideal.
    pub fn ideal_violation(
        &self,
        set: &BTreeSet<JoinIrreducible>,
    ) -> Option<(JoinIrreducible, JoinIrreducible)> {
        for g in set {
            for j in self.down[self.slot_of(g)].iter() {
                if !set.contains(&self.jis[j]) {
                    return Some((*g, self.jis[j]));
                }
            }
        }
        None
    }
}

/// Contracted set of `Cg(gens)`: the forcing-order ideal generated by `gens`.
pub fn forcing_ideal(n: usize, gens: &[JoinIrreducible]) -> Result<BTreeSet<JoinIrreducible>> {
    if gens.is_empty() {
        return Ok(BTreeSet::new());
    }
    Ok(ForcingOrder::shared(n)?.ideal(gens))
}

/// The congruence contracting exactly `contracted`, which must be an order
/// ideal of the forcing order.
pub fn congruence_from_contracted(
    n: usize,
    contracted: &BTreeSet<JoinIrreducible>,
) -> Result<Congruence> {
    if !contracted.is_empty() {
        let forcing = ForcingOrder::shared(n)?;
        if let Some((g, h)) = forcing.ideal_violation(contracted) {
            return Err(Error::NotAnIdeal {
                contracted: g.to_string(),
                forced: h.to_string(),
            });
        }
    }
    let order = WeakOrder::shared(n)?;
    let mut member = vec![false; 1 << n];
    for g in contracted {
        if g.n() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: g.n(),
            });
        }
        member[g.mask() as usize] = true;
    }
    let mut dsu = Dsu::new(order.len());
    for (idx, x) in order.elements().iter().enumerate() {
        let w = x.word();
        for i in 1..n {
            if w[i - 1] > w[i] && member[lambda_mask(w, i) as usize] {
                dsu.union(idx, lex_rank(x.swap_adjacent(i).word()));
            }
        }
    }
    let cong = Congruence::from_labels(order, &dsu.labels())?;
    if cong.contracted_set() != *contracted {
        return Err(Error::Inconsistent(
            "edge contraction produced a different contracted set".into(),
        ));
    }
    Ok(cong)
}

/// Common refinement of two congruences.
pub fn meet_congruences(a: &Congruence, b: &Congruence) -> Result<Congruence> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            expected: a.n(),
            got: b.n(),
        });
    }
    let k = b.num_classes();
    let labels: Vec<usize> = (0..a.order().len())
        .map(|x| a.class_of_idx(x) * k + b.class_of_idx(x))
        .collect();
    Congruence::from_labels(a.order().clone(), &labels)
}

/// Finest congruence coarser than both.
pub fn join_congruences(a: &Congruence, b: &Congruence) -> Result<Congruence> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            expected: a.n(),
            got: b.n(),
        });
    }
    let union: BTreeSet<JoinIrreducible> = a
        .contracted()
        .iter()
        .chain(b.contracted())
        .copied()
        .collect();
    let joined = congruence_from_contracted(a.n(), &union)?;
    let expected: Vec<Permutation> = a.bottoms().into_iter().filter(|x| b.is_bottom(x)).collect();
    if joined.bottoms() != expected {
        return Err(Error::Inconsistent(
            "join bottoms differ from the intersection of bottom sets".into(),
        ));
    }
    Ok(joined)
}

/// Fibers of `x ↦ x_K`, the left parabolic factor.
pub fn parabolic_congruence(n: usize, k: &BTreeSet<usize>) -> Result<Congruence> {
    let order = WeakOrder::shared(n)?;
    let labels = order
        .elements()
        .iter()
        .map(|x| Ok(lex_rank(parabolic_factor(x, k, Side::Left)?.0.word())))
        .collect::<Result<Vec<usize>>>()?;
    Congruence::from_labels(order, &labels)
}
