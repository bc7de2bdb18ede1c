//! Families of congruences `{Θ_n}` across all `n`, generated by untranslated
//! join-irreducibles.
//!
//! `Tr(C)_n` contracts the forcing-order ideal of all translates of `C`.
//! `H(C)_n` contracts every join-irreducible containing a pattern from `C`;
//! its class bottoms are recognized without building the lattice, by
//! testing each adjacent descent for a cliff-adjacent scramble occurrence.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use crate::congruence::{congruence_from_contracted, forcing_ideal, Congruence};
use crate::error::{Error, Result};
use crate::perm::{
    all_permutations, occurs, occurs_with_adjacent_cliff, par_count, scrambles, times, Permutation,
};
use crate::weak_order::{join_irreducibles, JoinIrreducible, WeakOrder};

/// `L_i(γ)`, for `1 <= i <= n + 1`.
pub fn left_insert(g: &JoinIrreducible, i: usize) -> Result<JoinIrreducible> {
    insert(g, i, false)
}

/// `R_i(γ)`, for `1 <= i <= n + 1`.
pub fn right_insert(g: &JoinIrreducible, i: usize) -> Result<JoinIrreducible> {
    insert(g, i, true)
}

fn insert(g: &JoinIrreducible, i: usize, right: bool) -> Result<JoinIrreducible> {
    let n = g.n();
    if i == 0 || i > n + 1 {
        return Err(Error::InvalidSubset {
            subset: vec![i],
            n: n + 1,
        });
    }
    let low = g.mask() & ((1u32 << (i - 1)) - 1);
    let high = (g.mask() >> (i - 1)) << i;
    let mid = if right { 1u32 << (i - 1) } else { 0 };
    JoinIrreducible::from_mask(n + 1, low | mid | high)
}

fn require_untranslated(g: &JoinIrreducible) -> Result<()> {
    if g.is_untranslated() {
        Ok(())
    } else {
        Err(Error::NotUntranslated(g.to_string()))
    }
}

/// Elements covered by `γ` in `Tr_∞`: `R_1, L_2, R_n, L_{n+1}`.
pub fn tr_covers(g: &JoinIrreducible) -> Result<BTreeSet<JoinIrreducible>> {
    require_untranslated(g)?;
    let n = g.n();
    Ok([
        right_insert(g, 1)?,
        left_insert(g, 2)?,
        right_insert(g, n)?,
        left_insert(g, n + 1)?,
    ]
    .into())
}

/// Elements covered by `γ` in `H_∞`: all insertions that are not
/// translations.
pub fn h_covers(g: &JoinIrreducible) -> Result<BTreeSet<JoinIrreducible>> {
    require_untranslated(g)?;
    let n = g.n();
    let mut out = BTreeSet::new();
    for i in 1..=n {
        out.insert(right_insert(g, i)?);
    }
    for i in 2..=n + 1 {
        out.insert(left_insert(g, i)?);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    Tr,
    H,
}

/// Precomputed shape of a generator for the descent test: its size and, for
/// each of its values `2..k-1`, whether it sits before the cliff.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct CliffShape {
    size: usize,
    before: Vec<bool>,
}

impl CliffShape {
    fn new(g: &Permutation) -> Self {
        let j = g.cliff().expect("generator has a cliff");
        let k = g.len();
        let mut before = vec![false; k + 1];
        for &v in &g.word()[..j - 1] {
            before[v as usize] = true;
        }
        CliffShape {
            size: k,
            before: before[2..k].to_vec(),
        }
    }

    /// Whether a scramble occurs in `w` with its cliff at 0-based positions
    /// `i, i + 1`. `pos[v]` is the position of value `v`.
    #[inline]
    fn matches(&self, w: &[u8], pos: &[usize], i: usize) -> bool {
        let (hi, lo) = (w[i] as usize, w[i + 1] as usize);
        if hi < lo + self.size - 1 {
            return false;
        }
        let mut t = 0;
        for v in lo + 1..hi {
            if t == self.before.len() {
                break;
            }
            if (pos[v] < i) == self.before[t] {
                t += 1;
            }
        }
        t == self.before.len()
    }
}

/// A family `Tr(C)` or `H(C)`, given by its generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    kind: FamilyKind,
    generators: Vec<Permutation>,
    shapes: Vec<CliffShape>,
}

impl FamilySpec {
    pub fn new(
        kind: FamilyKind,
        generators: impl IntoIterator<Item = Permutation>,
    ) -> Result<Self> {
        let set: BTreeSet<Permutation> = generators.into_iter().collect();
        for g in &set {
            if g.cliff().is_none() || !g.is_join_irreducible() {
                return Err(Error::NotUntranslated(g.to_string()));
            }
        }
        let generators: Vec<Permutation> = set.into_iter().collect();
        let shapes = generators.iter().map(CliffShape::new).collect();
        Ok(FamilySpec {
            kind,
            generators,
            shapes,
        })
    }

    pub fn h(generators: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        Self::new(FamilyKind::H, generators)
    }

    pub fn tr(generators: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        Self::new(FamilyKind::Tr, generators)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Join-irreducibles of `S_n` contracted by the family.
    pub fn contracted_jis(&self, n: usize) -> Result<BTreeSet<JoinIrreducible>> {
        match self.kind {
            FamilyKind::H => Ok(join_irreducibles(n)
                .into_iter()
                .filter(|g| {
                    let x = g.to_permutation();
                    self.generators.iter().any(|c| occurs(c, &x))
                })
                .collect()),
            FamilyKind::Tr => {
                let mut gens = Vec::new();
                for c in self.generators.iter().filter(|c| c.len() <= n) {
                    for p in 0..=n - c.len() {
                        let q = n - c.len() - p;
                        let t = times(
                            &times(&Permutation::identity(p), c),
                            &Permutation::identity(q),
                        );
                        gens.push(JoinIrreducible::from_permutation(&t)?);
                    }
                }
                forcing_ideal(n, &gens)
            }
        }
    }

    fn require_h(&self) -> Result<()> {
        match self.kind {
            FamilyKind::H => Ok(()),
            FamilyKind::Tr => Err(Error::RequiresHFamily),
        }
    }

    /// Whether `x` is not a class bottom of `H(C)_n`.
    pub fn is_contracted_perm(&self, x: &Permutation) -> Result<bool> {
        self.require_h()?;
        Ok(self.contracted_descent(x.word()).is_some())
    }

    /// Same as [`is_contracted_perm`](Self::is_contracted_perm) on a raw
    /// word, for hot loops. Only meaningful for H-families.
    pub fn is_contracted_word(&self, w: &[u8]) -> bool {
        self.contracted_descent(w).is_some()
    }

    /// Leftmost 0-based position `i` of a contracted adjacent descent.
    fn contracted_descent(&self, w: &[u8]) -> Option<usize> {
        let n = w.len();
        if n < 2 || self.shapes.is_empty() {
            return None;
        }
        let mut pos = [0usize; 256];
        for (i, &v) in w.iter().enumerate() {
            pos[v as usize] = i;
        }
        (0..n - 1).find(|&i| w[i] > w[i + 1] && self.shapes.iter().any(|s| s.matches(w, &pos, i)))
    }

    /// `π_↓ x` for `H(C)_n`, by repeatedly swapping the leftmost contracted
    /// adjacent descent.
    pub fn pi_down_fast(&self, x: &Permutation) -> Result<Permutation> {
        self.require_h()?;
        let mut w = x.word().to_vec();
        while let Some(i) = self.contracted_descent(&w) {
            w.swap(i, i + 1);
        }
        Permutation::new(w)
    }

    /// Number of class bottoms in `S_n`. H-families scan `S_n` in parallel
    /// with the pattern test; Tr-families build the congruence.
    pub fn count_bottoms(&self, n: usize) -> Result<u64> {
        match self.kind {
            FamilyKind::H => Ok(par_count(n, |w| !self.is_contracted_word(w))),
            FamilyKind::Tr => Ok(Family::new(self.clone()).congruence(n)?.num_classes() as u64),
        }
    }

    /// Class bottoms of `S_n` in lexicographic order, for H-families.
    pub fn bottoms(&self, n: usize) -> Result<Vec<Permutation>> {
        self.require_h()?;
        Ok(all_permutations(n)
            .filter(|x| !self.is_contracted_word(x.word()))
            .collect())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            FamilyKind::Tr => "Tr",
            FamilyKind::H => "H",
        };
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "{kind}({{{}}})", gens.join(","))
    }
}

/// Reference implementation of [`FamilySpec::is_contracted_perm`] that
/// materializes scramble sets and searches for cliff-adjacent occurrences.
pub fn is_contracted_by_scrambles(spec: &FamilySpec, x: &Permutation) -> Result<bool> {
    spec.require_h()?;
    for g in spec.generators() {
        for s in scrambles(g)? {
            if occurs_with_adjacent_cliff(&s, x)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Untranslated join-irreducibles of size `k + 1`.
pub fn untranslated_jis(size: usize) -> Vec<Permutation> {
    join_irreducibles(size)
        .into_iter()
        .filter(|g| g.is_untranslated())
        .map(|g| g.to_permutation())
        .collect()
}

fn perm(s: &str) -> Permutation {
    s.parse().expect("literal permutation")
}

/// Named example families. Accepted names: `tamari`, `descent`,
/// `twisted-baxter`, `snk K`, `pnk K`, `trivial`, `full`. The parameter may
/// be separated by a space or a hyphen.
pub fn named_family(name: &str) -> Result<FamilySpec> {
    let norm = name.trim().to_ascii_lowercase();
    let parts: Vec<&str> = norm
        .split(|c: char| c.is_whitespace() || c == '-' || c == '_')
        .filter(|s| !s.is_empty())
        .collect();
    let param = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .ok()
            .filter(|&k| (1..=30).contains(&k))
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    };
    match parts.as_slice() {
        ["tamari"] => FamilySpec::h([perm("312")]),
        ["descent"] => FamilySpec::h([perm("231"), perm("312")]),
        ["twisted", "baxter"] => FamilySpec::h([perm("2413"), perm("3412")]),
        ["trivial"] => FamilySpec::h([]),
        ["full"] => FamilySpec::h([perm("21")]),
        ["snk", k] => FamilySpec::h(untranslated_jis(param(k)? + 1)),
        ["pnk", k] => {
            let k = param(k)?;
            let mut word = vec![(k + 1) as u8];
            word.extend(1..=k as u8);
            FamilySpec::h([perm("231"), Permutation::new(word)?])
        }
        _ => Err(Error::UnknownFamily(name.to_string())),
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        named_family(s)
    }
}

/// Anything that supplies one congruence per `n`.
pub trait CongruenceFamily: Sync {
    fn congruence(&self, n: usize) -> Result<Arc<Congruence>>;
}

/// A [`FamilySpec`] with memoized per-`n` congruences.
pub struct Family {
    spec: FamilySpec,
    cache: Mutex<HashMap<usize, Arc<Congruence>>>,
}

impl Family {
    pub fn new(spec: FamilySpec) -> Self {
        Family {
            spec,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn named(name: &str) -> Result<Self> {
        Ok(Self::new(named_family(name)?))
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }
}

impl CongruenceFamily for Family {
    fn congruence(&self, n: usize) -> Result<Arc<Congruence>> {
        if let Some(c) = self.cache.lock().unwrap().get(&n) {
            return Ok(c.clone());
        }
        let c = Arc::new(congruence_from_contracted(
            n,
            &self.spec.contracted_jis(n)?,
        )?);
        Ok(self.cache.lock().unwrap().entry(n).or_insert(c).clone())
    }
}

/// A family given explicitly, `congruences[n]` being `Θ_n`.
pub struct ExplicitFamily {
    congruences: Vec<Arc<Congruence>>,
}

impl ExplicitFamily {
    pub fn new(congruences: Vec<Arc<Congruence>>) -> Result<Self> {
        for (n, c) in congruences.iter().enumerate() {
            if c.n() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    got: c.n(),
                });
            }
        }
        Ok(ExplicitFamily { congruences })
    }
}

impl CongruenceFamily for ExplicitFamily {
    fn congruence(&self, n: usize) -> Result<Arc<Congruence>> {
        self.congruences.get(n).cloned().ok_or(Error::Capacity {
            what: "explicit family",
            n,
            max: self.congruences.len().saturating_sub(1),
        })
    }
}

/// For every `p, q >= 1` with `p + q <= max_n`: `u × v ≡ u' × v'` in
/// `Θ_{p+q}` exactly when `u ≡ u'` in `Θ_p` and `v ≡ v'` in `Θ_q`.
pub fn is_translational(family: &dyn CongruenceFamily, max_n: usize) -> Result<bool> {
    for n in 2..=max_n {
        let big = family.congruence(n)?;
        for p in 1..n {
            let q = n - p;
            let (tp, tq) = (family.congruence(p)?, family.congruence(q)?);
            let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
            let mut rev: HashMap<usize, (usize, usize)> = HashMap::new();
            for u in tp.order().elements() {
                for v in tq.order().elements() {
                    let key = (tp.class_of(u), tq.class_of(v));
                    let c = big.class_of(&times(u, v));
                    if *seen.entry(key).or_insert(c) != c || *rev.entry(c).or_insert(key) != key {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Contracted-join-irreducible form of insertionality: for every `γ`
/// contracted by `Θ_n` (`n < max_n`), `Θ_{n+1}` contracts `R_i(γ)` for
/// `i ∈ [m+1, M+1]` and `L_i(γ)` for `i ∈ [m, M]`.
pub fn is_insertional(family: &dyn CongruenceFamily, max_n: usize) -> Result<bool> {
    Ok(insertional_violation(family, max_n)?.is_none())
}

/// First contracted `γ` whose required insertion is not contracted.
pub fn insertional_violation(
    family: &dyn CongruenceFamily,
    max_n: usize,
) -> Result<Option<(JoinIrreducible, JoinIrreducible)>> {
    for n in 1..max_n {
        let (small, big) = (family.congruence(n)?, family.congruence(n + 1)?);
        for g in small.contracted() {
            let (m, big_m) = (g.m(), g.big_m());
            let rights = (m + 1..=big_m + 1).map(|i| right_insert(g, i));
            let lefts = (m..=big_m).map(|i| left_insert(g, i));
            for h in rights.chain(lefts) {
                let h = h?;
                if !big.contracts(&h) {
                    return Ok(Some((*g, h)));
                }
            }
        }
    }
    Ok(None)
}

/// Definition-level insertionality: for every `p + q <= max_n` and every
/// minimal right coset representative `w`, each `(Θ_p × Θ_q)`-class maps by
/// `(u, v) ↦ w · (u × v)` into a single `Θ_{p+q}`-class.
pub fn is_insertional_by_definition(family: &dyn CongruenceFamily, max_n: usize) -> Result<bool> {
    for n in 1..=max_n {
        let big = family.congruence(n)?;
        for p in 0..=n {
            let q = n - p;
            let (tp, tq) = (family.congruence(p)?, family.congruence(q)?);
            for values in subsets_of_size(n, p) {
                let rest: Vec<u8> = (1..=n as u8).filter(|v| !values.contains(v)).collect();
                // w · (u × v): the chosen values arranged by u, then the rest by v
                let place = |u: &Permutation, v: &Permutation| -> Permutation {
                    let mut word: Vec<u8> =
                        u.word().iter().map(|&i| values[i as usize - 1]).collect();
                    word.extend(v.word().iter().map(|&i| rest[i as usize - 1]));
                    Permutation::new(word).expect("coset element")
                };
                for u in tp.order().elements() {
                    for v in tq.order().elements() {
                        let here = big.class_of(&place(u, v));
                        let there = big.class_of(&place(tp.pi_down(u), tq.pi_down(v)));
                        if here != there {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<u8>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (1..=n as u8).filter(|v| m >> (v - 1) & 1 == 1).collect())
        .collect()
}

/// Twisted Baxter: no 2413 or 3412 pattern with its "4" and "1" adjacent.
/// Equivalently no adjacent descent has values strictly between its entries
/// on both sides.
pub fn twisted_baxter(x: &Permutation) -> bool {
    twisted_baxter_word(x.word())
}

pub fn twisted_baxter_word(w: &[u8]) -> bool {
    let mut pos = [0usize; 256];
    for (i, &v) in w.iter().enumerate() {
        pos[v as usize] = i;
    }
    w.windows(2).enumerate().all(|(i, pair)| {
        let (hi, lo) = (pair[0], pair[1]);
        if hi < lo {
            return true;
        }
        let (mut before, mut after) = (false, false);
        for v in lo + 1..hi {
            if pos[v as usize] < i {
                before = true;
            } else {
                after = true;
            }
        }
        !(before && after)
    })
}

/// Baxter: no 2413 with adjacent "4","1" and no 3142 with adjacent "1","4".
pub fn baxter(x: &Permutation) -> bool {
    baxter_word(x.word())
}

pub fn baxter_word(w: &[u8]) -> bool {
    let mut pos = [0usize; 256];
    for (i, &v) in w.iter().enumerate() {
        pos[v as usize] = i;
    }
    w.windows(2).enumerate().all(|(i, pair)| {
        let (a, b) = (pair[0], pair[1]);
        let (lo, hi) = (a.min(b), a.max(b));
        let (mut min_before, mut max_before) = (u8::MAX, 0u8);
        let (mut min_after, mut max_after) = (u8::MAX, 0u8);
        for v in lo + 1..hi {
            if pos[v as usize] < i {
                min_before = min_before.min(v);
                max_before = max_before.max(v);
            } else {
                min_after = min_after.min(v);
                max_after = max_after.max(v);
            }
        }
        if a > b {
            // "2" before and "3" after with 2 < 3
            !(min_before != u8::MAX && max_after != 0 && min_before < max_after)
        } else {
            // "3" before and "2" after with 3 > 2
            !(max_before != 0 && min_after != u8::MAX && max_before > min_after)
        }
    })
}

/// Checks that the family's congruences come out as expected from the
/// lattice: every `H`-bottom test agrees with the materialized congruence.
pub fn verify_against_lattice(spec: &FamilySpec, n: usize) -> Result<bool> {
    spec.require_h()?;
    let cong = Family::new(spec.clone()).congruence(n)?;
    let order = WeakOrder::shared(n)?;
    Ok(order.elements().iter().enumerate().all(|(idx, x)| {
        let bottom = cong.bottom_idx(cong.class_of_idx(idx)) == idx;
        bottom != spec.is_contracted_word(x.word())
            && spec.pi_down_fast(x).ok().as_ref() == Some(cong.pi_down(x))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn ji(s: &str) -> JoinIrreducible {
        JoinIrreducible::from_permutation(&p(s)).unwrap()
    }

    fn words(set: &BTreeSet<JoinIrreducible>) -> Vec<String> {
        set.iter()
            .map(|g| g.to_string())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    #[test]
    fn insertion_examples() {
        let g = ji("312");
        assert_eq!(right_insert(&g, 1).unwrap(), ji("4123"));
        assert_eq!(left_insert(&g, 2).unwrap(), ji("2413"));
        assert_eq!(left_insert(&g, 4).unwrap(), ji("3412"));
        // translations
        assert_eq!(left_insert(&g, 1).unwrap().to_permutation(), p("1423"));
        assert_eq!(right_insert(&g, 4).unwrap().to_permutation(), p("3124"));
        assert!(left_insert(&g, 5).is_err());
    }

    #[test]
    fn tr_cover_examples() {
        assert_eq!(
            words(&tr_covers(&ji("312")).unwrap()),
            ["2413", "3412", "4123"]
        );
        // A = {1}, n = 2: R_1 = {1,2}, L_2 = {1}, R_2 = {1,2}, L_3 = {1}
        assert_eq!(words(&tr_covers(&ji("21")).unwrap()), ["231", "312"]);
        assert!(tr_covers(&ji("132")).is_err());
        for g in ["21", "231", "312", "2413"] {
            let g = ji(g);
            assert!(tr_covers(&g).unwrap().is_subset(&h_covers(&g).unwrap()));
        }
    }

    #[test]
    fn h_infinity_top_ranks() {
        let rank3: BTreeSet<_> = untranslated_jis(4).into_iter().collect();
        assert_eq!(rank3, [p("2341"), p("3412"), p("2413"), p("4123")].into());
        let mut extra = BTreeSet::new();
        for g in &rank3 {
            let g = JoinIrreducible::from_permutation(g).unwrap();
            for h in h_covers(&g).unwrap().difference(&tr_covers(&g).unwrap()) {
                extra.insert((g.to_string(), h.to_string()));
            }
        }
        let expected: BTreeSet<(String, String)> = [("2341", "24513"), ("4123", "35124")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(extra, expected);
        // ranks one and two coincide in both posets
        for g in ["21", "231", "312"] {
            assert_eq!(tr_covers(&ji(g)).unwrap(), h_covers(&ji(g)).unwrap());
        }
    }

    #[test]
    fn contracted_jis_examples() {
        let tamari = named_family("tamari").unwrap();
        let oracle: BTreeSet<JoinIrreducible> = join_irreducibles(4)
            .into_iter()
            .filter(|g| occurs(&p("312"), &g.to_permutation()))
            .collect();
        assert_eq!(tamari.contracted_jis(4).unwrap(), oracle);
        assert!(named_family("trivial")
            .unwrap()
            .contracted_jis(5)
            .unwrap()
            .is_empty());
        for g in ["231", "2413", "3412", "2341"] {
            let h = FamilySpec::h([p(g)]).unwrap();
            let t = FamilySpec::tr([p(g)]).unwrap();
            for n in 1..=6 {
                assert!(t
                    .contracted_jis(n)
                    .unwrap()
                    .is_subset(&h.contracted_jis(n).unwrap()));
            }
        }
    }

    #[test]
    fn contracted_perm_examples() {
        let tamari = named_family("tamari").unwrap();
        assert!(tamari.is_contracted_perm(&p("312")).unwrap());
        assert!(!tamari.is_contracted_perm(&p("321")).unwrap());
        assert!(!named_family("twisted-baxter")
            .unwrap()
            .is_contracted_perm(&Permutation::identity(6))
            .unwrap());
        assert_eq!(tamari.pi_down_fast(&p("312")).unwrap(), p("132"));
        assert_eq!(tamari.pi_down_fast(&p("321")).unwrap(), p("321"));
        assert!(FamilySpec::tr([p("312")])
            .unwrap()
            .is_contracted_perm(&p("312"))
            .is_err());
    }

    #[test]
    fn fast_test_matches_scrambles() {
        let specs = [
            "tamari",
            "descent",
            "twisted-baxter",
            "snk 3",
            "pnk 3",
            "full",
        ];
        for name in specs {
            let spec = named_family(name).unwrap();
            for n in 0..=6 {
                for x in all_permutations(n) {
                    assert_eq!(
                        spec.is_contracted_perm(&x).unwrap(),
                        is_contracted_by_scrambles(&spec, &x).unwrap(),
                        "{name} {x}"
                    );
                }
            }
        }
        let odd = FamilySpec::h([p("24513"), p("35124")]).unwrap();
        for x in all_permutations(7) {
            assert_eq!(
                odd.is_contracted_perm(&x).unwrap(),
                is_contracted_by_scrambles(&odd, &x).unwrap()
            );
        }
    }

    #[test]
    fn fast_projection_matches_lattice() {
        for name in ["tamari", "descent", "twisted-baxter", "snk 3", "pnk 3"] {
            let spec = named_family(name).unwrap();
            for n in 1..=6 {
                assert!(verify_against_lattice(&spec, n).unwrap(), "{name} n={n}");
            }
        }
    }

    #[test]
    fn twisted_baxter_examples() {
        for x in all_permutations(3) {
            assert!(twisted_baxter(&x) && baxter(&x));
        }
        assert!(!twisted_baxter(&p("2413")));
        assert!(!twisted_baxter(&p("3412")));
        assert!(twisted_baxter(&p("3142")));
        assert!(!baxter(&p("3142")));
        assert!(!baxter(&p("2413")));
        assert!(baxter(&p("3412")));
        let tb = named_family("twisted-baxter").unwrap();
        for x in all_permutations(6) {
            assert_eq!(twisted_baxter(&x), !tb.is_contracted_perm(&x).unwrap());
        }
    }

    #[test]
    fn named_families() {
        assert_eq!(named_family("tamari").unwrap().generators(), &[p("312")]);
        assert_eq!(named_family("snk 1").unwrap().generators(), &[p("21")]);
        assert_eq!(
            named_family("snk-2").unwrap(),
            named_family("descent").unwrap()
        );
        assert_eq!(
            named_family("pnk 3").unwrap().generators(),
            &[p("231"), p("4123")]
        );
        assert_eq!(
            named_family("Twisted-Baxter").unwrap().to_string(),
            "H({2413,3412})"
        );
        assert!(matches!(
            named_family("cambrian"),
            Err(Error::UnknownFamily(_))
        ));
        assert!(named_family("snk 0").is_err());
        assert!(FamilySpec::h([p("132")]).is_err());
        assert_eq!(untranslated_jis(4).len(), 4);
    }

    #[test]
    fn h_families_are_translational_and_insertional() {
        for name in ["tamari", "descent", "twisted-baxter", "trivial"] {
            let fam = Family::named(name).unwrap();
            assert!(is_translational(&fam, 6).unwrap(), "{name}");
            assert!(is_insertional(&fam, 6).unwrap(), "{name}");
            assert!(is_insertional_by_definition(&fam, 5).unwrap(), "{name}");
        }
    }

    #[test]
    fn broken_family_is_not_translational() {
        // contract 312 at n = 3 only, nothing elsewhere
        let cs: Vec<Arc<Congruence>> = (0..=4)
            .map(|n| {
                let set = if n == 3 {
                    [ji("312")].into()
                } else {
                    BTreeSet::new()
                };
                Arc::new(congruence_from_contracted(n, &set).unwrap())
            })
            .collect();
        let fam = ExplicitFamily::new(cs).unwrap();
        assert!(!is_translational(&fam, 4).unwrap());
        assert!(!is_insertional(&fam, 4).unwrap());
        assert!(!is_insertional_by_definition(&fam, 4).unwrap());
    }

    #[test]
    fn tr_family_insertionality_agrees_with_definition() {
        for g in ["2413", "3412", "2341", "4123", "231"] {
            let fam = Family::new(FamilySpec::tr([p(g)]).unwrap());
            assert!(is_translational(&fam, 5).unwrap());
            assert_eq!(
                is_insertional(&fam, 5).unwrap(),
                is_insertional_by_definition(&fam, 5).unwrap(),
                "{g}"
            );
        }
    }
}
