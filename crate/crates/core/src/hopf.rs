//! The Malvenuto–Reutenauer Hopf algebra `K[S_∞]` over `Q`, and the quotient
//! algebras `K[Z_∞]` on class bottoms of a family of congruences.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{CongruenceFamily, Family, FamilySpec};
use crate::perm::{
    all_permutations, ltimes, parabolic_factor, standardize_distinct, times, Permutation, Side,
};
use crate::weak_order::{covers_up, leq};

pub type Coeff = BigRational;

fn coeff_string(c: &Coeff) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Finitely supported rational combination of permutations of any size.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct GradedVector {
    terms: BTreeMap<Permutation, Coeff>,
}

impl GradedVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(x: Permutation) -> Self {
        Self::from_terms([(x, Coeff::one())])
    }

    /// The unit `∅`.
    pub fn unit() -> Self {
        Self::basis(Permutation::empty())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Permutation, Coeff)>) -> Self {
        let mut v = Self::zero();
        for (x, c) in terms {
            v.add_term(x, c);
        }
        v
    }

    /// Sum of the given permutations, each with coefficient one.
    pub fn sum_of(xs: impl IntoIterator<Item = Permutation>) -> Self {
        Self::from_terms(xs.into_iter().map(|x| (x, Coeff::one())))
    }

    pub fn add_term(&mut self, x: Permutation, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &GradedVector, c: &Coeff) {
        for (x, d) in &other.terms {
            self.add_term(x.clone(), d * c);
        }
    }

    pub fn scaled(&self, c: &Coeff) -> GradedVector {
        let mut out = GradedVector::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn coeff(&self, x: &Permutation) -> Coeff {
        self.terms.get(x).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &Coeff)> {
        self.terms.iter()
    }

    /// Coefficient of `∅`, the counit.
    pub fn counit(&self) -> Coeff {
        self.coeff(&Permutation::empty())
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(x, c)| TermJson {
                coef: coeff_string(c),
                word: x.to_string(),
            })
            .collect()
    }
}

impl std::ops::Add for &GradedVector {
    type Output = GradedVector;
    fn add(self, rhs: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Coeff::one());
        out
    }
}

impl std::ops::Sub for &GradedVector {
    type Output = GradedVector;
    fn sub(self, rhs: &GradedVector) -> GradedVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Coeff::one());
        out
    }
}

impl std::ops::Neg for &GradedVector {
    type Output = GradedVector;
    fn neg(self) -> GradedVector {
        self.scaled(&-Coeff::one())
    }
}

fn write_terms<'a, K: 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a K, &'a Coeff)>,
    key: impl Fn(&K) -> String,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if !first {
            f.write_str(" ")?;
        }
        first = false;
        let sign = if c.is_negative() { "-" } else { "+" };
        write!(f, "{sign}{}·{}", coeff_string(&c.abs()), key(k))?;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), |x| x.to_string())
    }
}

impl fmt::Debug for GradedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct TermJson {
    pub coef: String,
    pub word: String,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct TensorTermJson {
    pub coef: String,
    pub left: String,
    pub right: String,
}

/// Finitely supported rational combination of pairs `a ⊗ b`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TensorVector {
    terms: BTreeMap<(Permutation, Permutation), Coeff>,
}

impl TensorVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, a: Permutation, b: Permutation, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &TensorVector, c: &Coeff) {
        for ((a, b), d) in &other.terms {
            self.add_term(a.clone(), b.clone(), d * c);
        }
    }

    pub fn coeff(&self, a: &Permutation, b: &Permutation) -> Coeff {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Permutation, Permutation), &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies a linear map to each tensor factor.
    pub fn map_both(
        &self,
        f: impl Fn(&Permutation) -> Result<GradedVector>,
    ) -> Result<TensorVector> {
        let mut out = TensorVector::zero();
        for ((a, b), c) in &self.terms {
            let (fa, fb) = (f(a)?, f(b)?);
            for (x, cx) in fa.iter() {
                for (y, cy) in fb.iter() {
                    out.add_term(x.clone(), y.clone(), c * cx * cy);
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Vec<TensorTermJson> {
        self.terms
            .iter()
            .map(|((a, b), c)| TensorTermJson {
                coef: coeff_string(c),
                left: a.to_string(),
                right: b.to_string(),
            })
            .collect()
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms.iter(), |(a, b)| format!("{a}⊗{b}"))
    }
}

impl fmt::Debug for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

type Triple = (Permutation, Permutation, Permutation);

/// All shuffles of `u` with `v` shifted up by `|u|`.
pub fn shuffles(u: &Permutation, v: &Permutation) -> Vec<Permutation> {
    let p = u.len() as u8;
    let shifted: Vec<u8> = v.word().iter().map(|&x| x + p).collect();
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(u.len() + v.len());
    fn rec(a: &[u8], b: &[u8], buf: &mut Vec<u8>, out: &mut Vec<Permutation>) {
        if a.is_empty() && b.is_empty() {
            out.push(Permutation::new(buf.clone()).expect("shuffle of disjoint words"));
            return;
        }
        if let Some((&x, rest)) = a.split_first() {
            buf.push(x);
            rec(rest, b, buf, out);
            buf.pop();
        }
        if let Some((&y, rest)) = b.split_first() {
            buf.push(y);
            rec(a, rest, buf, out);
            buf.pop();
        }
    }
    rec(u.word(), &shifted, &mut buf, &mut out);
    out
}

/// `u •_S v`: the sum over shuffles.
pub fn mr_product(u: &Permutation, v: &Permutation) -> GradedVector {
    GradedVector::sum_of(shuffles(u, v))
}

/// `u •_S v` computed as the sum over the weak-order interval
/// `[u × v, u ⋉ v]`.
pub fn mr_product_by_interval(u: &Permutation, v: &Permutation) -> GradedVector {
    GradedVector::sum_of(weak_interval(&times(u, v), &ltimes(u, v)))
}

/// Elements of `[lo, hi]` by upward search from `lo`.
pub fn weak_interval(lo: &Permutation, hi: &Permutation) -> Vec<Permutation> {
    if !leq(lo, hi) {
        return Vec::new();
    }
    let mut seen = std::collections::BTreeSet::from([lo.clone()]);
    let mut stack = vec![lo.clone()];
    while let Some(x) = stack.pop() {
        for y in covers_up(&x) {
            if leq(&y, hi) && seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// `Δ_S(x) = Σ_p st(x_1..x_p) ⊗ st(x_{p+1}..x_n)`.
pub fn mr_coproduct(x: &Permutation) -> TensorVector {
    let w = x.word();
    let mut out = TensorVector::zero();
    for p in 0..=w.len() {
        out.add_term(
            standardize_distinct(&w[..p]),
            standardize_distinct(&w[p..]),
            Coeff::one(),
        );
    }
    out
}

/// A graded connected Hopf algebra with a distinguished permutation basis.
pub trait HopfAmbient: Sync {
    fn name(&self) -> String;

    /// Basis elements of the given degree, in increasing order.
    fn basis(&self, degree: usize) -> Result<Vec<Permutation>>;

    fn product(&self, u: &Permutation, v: &Permutation) -> Result<GradedVector>;

    fn coproduct(&self, x: &Permutation) -> Result<TensorVector>;

    /// Antipode on a basis element.
    fn antipode(&self, x: &Permutation) -> Result<GradedVector>;

    fn product_vec(&self, a: &GradedVector, b: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (x, cx) in a.iter() {
            for (y, cy) in b.iter() {
                out.add_scaled(&self.product(x, y)?, &(cx * cy));
            }
        }
        Ok(out)
    }

    fn coproduct_vec(&self, a: &GradedVector) -> Result<TensorVector> {
        let mut out = TensorVector::zero();
        for (x, c) in a.iter() {
            out.add_scaled(&self.coproduct(x)?, c);
        }
        Ok(out)
    }

    fn antipode_vec(&self, a: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (x, c) in a.iter() {
            out.add_scaled(&self.antipode(x)?, c);
        }
        Ok(out)
    }
}

/// Graded recursion `S(x) = -Σ S(a) • b` over the terms `a ⊗ b` of `Δ(x)`
/// with `b ≠ ∅`. Requires `Δ(x)` to contain `x ⊗ ∅` as its only term with an
/// empty right factor.
fn antipode_recursion<H: HopfAmbient + ?Sized>(
    h: &H,
    x: &Permutation,
    memo: &Mutex<HashMap<Permutation, GradedVector>>,
) -> Result<GradedVector> {
    if x.is_empty() {
        return Ok(GradedVector::unit());
    }
    if let Some(s) = memo.lock().unwrap().get(x) {
        return Ok(s.clone());
    }
    let delta = h.coproduct(x)?;
    let mut s = GradedVector::zero();
    let mut primitive_ok = false;
    for ((a, b), c) in delta.iter() {
        if b.is_empty() {
            if a == x && c.is_one() {
                primitive_ok = true;
                continue;
            }
            return Err(Error::Inconsistent(format!(
                "coproduct of {x} has the term {c}·{a}⊗∅"
            )));
        }
        let sa = antipode_recursion(h, a, memo)?;
        let prod = h.product_vec(&sa, &GradedVector::basis(b.clone()))?;
        s.add_scaled(&prod, &-c.clone());
    }
    if !primitive_ok {
        return Err(Error::Inconsistent(format!("coproduct of {x} lacks {x}⊗∅")));
    }
    memo.lock().unwrap().insert(x.clone(), s.clone());
    Ok(s)
}

type ProductCache = Mutex<HashMap<(Permutation, Permutation), GradedVector>>;

/// `K[S_∞]` with the shuffle product and deconcatenation coproduct.
#[derive(Default)]
pub struct MalvenutoReutenauer {
    antipodes: Mutex<HashMap<Permutation, GradedVector>>,
}

impl MalvenutoReutenauer {
    pub fn new() -> Self {
        Self::default()
    }
}

impl HopfAmbient for MalvenutoReutenauer {
    fn name(&self) -> String {
        "MR".into()
    }

    fn basis(&self, degree: usize) -> Result<Vec<Permutation>> {
        Ok(all_permutations(degree).collect())
    }

    fn product(&self, u: &Permutation, v: &Permutation) -> Result<GradedVector> {
        Ok(mr_product(u, v))
    }

    fn coproduct(&self, x: &Permutation) -> Result<TensorVector> {
        Ok(mr_coproduct(x))
    }

    fn antipode(&self, x: &Permutation) -> Result<GradedVector> {
        antipode_recursion(self, x, &self.antipodes)
    }
}

/// `K[Z_∞]` for a family of congruences, on class bottoms.
pub struct QuotientHopf {
    family: Arc<Family>,
    products: ProductCache,
    coproducts: Mutex<HashMap<Permutation, TensorVector>>,
    antipodes: Mutex<HashMap<Permutation, GradedVector>>,
    mr: MalvenutoReutenauer,
}

impl QuotientHopf {
    pub fn new(spec: FamilySpec) -> Self {
        Self::from_family(Arc::new(Family::new(spec)))
    }

    pub fn from_family(family: Arc<Family>) -> Self {
        QuotientHopf {
            family,
            products: Mutex::new(HashMap::new()),
            coproducts: Mutex::new(HashMap::new()),
            antipodes: Mutex::new(HashMap::new()),
            mr: MalvenutoReutenauer::new(),
        }
    }

    pub fn spec(&self) -> &FamilySpec {
        self.family.spec()
    }

    pub fn family(&self) -> &Arc<Family> {
        &self.family
    }

    pub fn is_bottom(&self, x: &Permutation) -> Result<bool> {
        Ok(self.family.congruence(x.len())?.is_bottom(x))
    }

    fn require_bottom(&self, x: &Permutation) -> Result<()> {
        if self.is_bottom(x)? {
            Ok(())
        } else {
            Err(Error::NotABottom(x.to_string()))
        }
    }

    /// `c(x)`: the sum of the class of `x`.
    pub fn c_map(&self, x: &Permutation) -> Result<GradedVector> {
        self.require_bottom(x)?;
        let cong = self.family.congruence(x.len())?;
        Ok(GradedVector::sum_of(cong.members(cong.class_of(x))))
    }

    pub fn c_map_vec(&self, a: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (x, c) in a.iter() {
            out.add_scaled(&self.c_map(x)?, c);
        }
        Ok(out)
    }

    /// `r(w)`: keeps bottoms, drops everything else.
    pub fn r_map(&self, w: &GradedVector) -> Result<GradedVector> {
        let mut out = GradedVector::zero();
        for (x, c) in w.iter() {
            if self.is_bottom(x)? {
                out.add_term(x.clone(), c.clone());
            }
        }
        Ok(out)
    }

    fn r_tensor(&self, t: &TensorVector) -> Result<TensorVector> {
        let mut out = TensorVector::zero();
        for ((a, b), c) in t.iter() {
            if self.is_bottom(a)? && self.is_bottom(b)? {
                out.add_term(a.clone(), b.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// `u •_Z v`, as the sum over bottoms `x` with `x_{p̄} = u × v`.
    pub fn z_product_direct(&self, u: &Permutation, v: &Permutation) -> Result<GradedVector> {
        self.require_bottom(u)?;
        self.require_bottom(v)?;
        let (p, n) = (u.len(), u.len() + v.len());
        let k: std::collections::BTreeSet<usize> = (1..n).filter(|&i| i != p).collect();
        let target = times(u, v);
        let mut out = GradedVector::zero();
        // x_{p̄} = u × v exactly for shuffles of u with v shifted
        for x in shuffles(u, v) {
            if parabolic_factor(&x, &k, Side::Left)?.0 != target {
                return Err(Error::Inconsistent(format!(
                    "shuffle {x} has the wrong parabolic factor"
                )));
            }
            if self.is_bottom(&x)? {
                out.add_term(x, Coeff::one());
            }
        }
        Ok(out)
    }

    /// `u •_Z v = r(c(u) •_S c(v))`.
    pub fn z_product_via_c(&self, u: &Permutation, v: &Permutation) -> Result<GradedVector> {
        let prod = self.mr.product_vec(&self.c_map(u)?, &self.c_map(v)?)?;
        self.r_map(&prod)
    }

    /// `u •_Z v`, computed both ways; errors if they differ.
    pub fn z_product(&self, u: &Permutation, v: &Permutation) -> Result<GradedVector> {
        let key = (u.clone(), v.clone());
        if let Some(p) = self.products.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let direct = self.z_product_direct(u, v)?;
        let via_c = self.z_product_via_c(u, v)?;
        if direct != via_c {
            return Err(Error::Inconsistent(format!(
                "{u} •_Z {v}: direct {direct} but r(c•c) {via_c}"
            )));
        }
        self.products.lock().unwrap().insert(key, direct.clone());
        Ok(direct)
    }

    /// `Δ_Z(x) = (r ⊗ r) Δ_S(c(x))`.
    pub fn z_coproduct_via_c(&self, x: &Permutation) -> Result<TensorVector> {
        let delta = self.mr.coproduct_vec(&self.c_map(x)?)?;
        self.r_tensor(&delta)
    }

    /// `Δ_Z(x)` in the coset form: for each `p` and each `p`-subset `P` of
    /// values, the bottoms `u ∈ Z_p`, `v ∈ Z_{n-p}` such that the word
    /// "`P` arranged by `u`, then the rest arranged by `v`" projects to `x`.
    pub fn z_coproduct_by_cosets(&self, x: &Permutation) -> Result<TensorVector> {
        self.require_bottom(x)?;
        let n = x.len();
        let big = self.family.congruence(n)?;
        let target = big.class_of(x);
        let mut out = TensorVector::zero();
        for p in 0..=n {
            let (zp, zq) = (
                self.family.congruence(p)?.bottoms(),
                self.family.congruence(n - p)?.bottoms(),
            );
            for mask in (0u32..1 << n).filter(|m| m.count_ones() as usize == p) {
                let chosen: Vec<u8> = (1..=n as u8).filter(|v| mask >> (v - 1) & 1 == 1).collect();
                let rest: Vec<u8> = (1..=n as u8).filter(|v| mask >> (v - 1) & 1 == 0).collect();
                for u in &zp {
                    for v in &zq {
                        let mut word: Vec<u8> =
                            u.word().iter().map(|&i| chosen[i as usize - 1]).collect();
                        word.extend(v.word().iter().map(|&i| rest[i as usize - 1]));
                        let y = Permutation::new(word)?;
                        if big.class_of(&y) == target {
                            out.add_term(u.clone(), v.clone(), Coeff::one());
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `Δ_Z(x)`, computed both ways; errors if they differ.
    pub fn z_coproduct(&self, x: &Permutation) -> Result<TensorVector> {
        if let Some(d) = self.coproducts.lock().unwrap().get(x) {
            return Ok(d.clone());
        }
        let via_c = self.z_coproduct_via_c(x)?;
        let cosets = self.z_coproduct_by_cosets(x)?;
        if via_c != cosets {
            return Err(Error::Inconsistent(format!(
                "Δ_Z({x}): (r⊗r)Δ_S c gives {via_c}, coset form gives {cosets}"
            )));
        }
        self.coproducts
            .lock()
            .unwrap()
            .insert(x.clone(), via_c.clone());
        Ok(via_c)
    }

    /// `S_Z = r ∘ S_S ∘ c`.
    pub fn antipode_via_mr(&self, x: &Permutation) -> Result<GradedVector> {
        let sc = self.mr.antipode_vec(&self.c_map(x)?)?;
        self.r_map(&sc)
    }

    /// `S_Z` by the graded recursion inside the quotient.
    pub fn antipode_recursive(&self, x: &Permutation) -> Result<GradedVector> {
        antipode_recursion(self, x, &self.antipodes)
    }
}

impl HopfAmbient for QuotientHopf {
    fn name(&self) -> String {
        format!("K[Z] for {}", self.spec())
    }

    fn basis(&self, degree: usize) -> Result<Vec<Permutation>> {
        Ok(self.family.congruence(degree)?.bottoms())
    }

    fn product(&self, u: &Permutation, v: &Permutation) -> Result<GradedVector> {
        self.z_product(u, v)
    }

    fn coproduct(&self, x: &Permutation) -> Result<TensorVector> {
        self.z_coproduct(x)
    }

    fn antipode(&self, x: &Permutation) -> Result<GradedVector> {
        self.antipode_recursive(x)
    }
}

/// Outcome of one family of identities.
#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct LawResult {
    pub law: String,
    pub cases: usize,
    /// First failing instance, if any.
    pub failure: Option<String>,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub ambient: String,
    pub max_degree: usize,
    pub laws: Vec<LawResult>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<(&str, &str)> {
        self.laws
            .iter()
            .find_map(|l| l.failure.as_deref().map(|f| (l.law.as_str(), f)))
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} up to degree {}", self.ambient, self.max_degree)?;
        for l in &self.laws {
            match &l.failure {
                None => writeln!(f, "  ok    {} ({} cases)", l.law, l.cases)?,
                Some(msg) => writeln!(f, "  FAIL  {}: {}", l.law, msg)?,
            }
        }
        Ok(())
    }
}

fn tensor_product<H: HopfAmbient + ?Sized>(
    h: &H,
    s: &TensorVector,
    t: &TensorVector,
) -> Result<TensorVector> {
    let mut out = TensorVector::zero();
    for ((a, b), c) in s.iter() {
        for ((x, y), d) in t.iter() {
            let left = h.product(a, x)?;
            let right = h.product(b, y)?;
            let cd = c * d;
            for (l, cl) in left.iter() {
                for (r, cr) in right.iter() {
                    out.add_term(l.clone(), r.clone(), &cd * cl * cr);
                }
            }
        }
    }
    Ok(out)
}

fn triple_left<H: HopfAmbient + ?Sized>(h: &H, x: &Permutation) -> Result<BTreeMap<Triple, Coeff>> {
    let mut out: BTreeMap<Triple, Coeff> = BTreeMap::new();
    for ((a, b), c) in h.coproduct(x)?.iter() {
        for ((a1, a2), d) in h.coproduct(a)?.iter() {
            *out.entry((a1.clone(), a2.clone(), b.clone()))
                .or_insert_with(Coeff::zero) += c * d;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn triple_right<H: HopfAmbient + ?Sized>(
    h: &H,
    x: &Permutation,
) -> Result<BTreeMap<Triple, Coeff>> {
    let mut out: BTreeMap<Triple, Coeff> = BTreeMap::new();
    for ((a, b), c) in h.coproduct(x)?.iter() {
        for ((b1, b2), d) in h.coproduct(b)?.iter() {
            *out.entry((a.clone(), b1.clone(), b2.clone()))
                .or_insert_with(Coeff::zero) += c * d;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn run_law<T: Sync>(
    law: &str,
    cases: &[T],
    check: impl Fn(&T) -> Result<Option<String>> + Sync,
) -> LawResult {
    let failure = cases
        .par_iter()
        .map(|t| match check(t) {
            Ok(r) => r,
            Err(e) => Some(e.to_string()),
        })
        .find_first(Option::is_some)
        .flatten();
    LawResult {
        law: law.into(),
        cases: cases.len(),
        failure,
    }
}

/// Checks unit, counit, associativity, coassociativity, compatibility of
/// product and coproduct, and both antipode identities on all basis elements
/// (and tuples of them) of total degree at most `max_degree`.
pub fn check_axioms<H: HopfAmbient + ?Sized>(h: &H, max_degree: usize) -> Result<AxiomReport> {
    let basis: Vec<Vec<Permutation>> = (0..=max_degree)
        .map(|d| h.basis(d))
        .collect::<Result<_>>()?;
    let singles: Vec<Permutation> = basis.iter().flatten().cloned().collect();
    let mut pairs = Vec::new();
    for da in 0..=max_degree {
        for db in 0..=max_degree - da {
            for a in &basis[da] {
                for b in &basis[db] {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
    }
    let mut triples = Vec::new();
    for da in 0..=max_degree {
        for db in 0..=max_degree - da {
            for dc in 0..=max_degree - da - db {
                for a in &basis[da] {
                    for b in &basis[db] {
                        for c in &basis[dc] {
                            triples.push((a.clone(), b.clone(), c.clone()));
                        }
                    }
                }
            }
        }
    }
    let unit = Permutation::empty();
    let mut laws = Vec::new();

    laws.push(run_law("unit", &singles, |x| {
        let e = GradedVector::basis(x.clone());
        let l = h.product(&unit, x)?;
        let r = h.product(x, &unit)?;
        Ok((l != e || r != e).then(|| format!("x = {x}: ∅•x = {l}, x•∅ = {r}")))
    }));

    laws.push(run_law("counit", &singles, |x| {
        let delta = h.coproduct(x)?;
        let mut left = GradedVector::zero();
        let mut right = GradedVector::zero();
        for ((a, b), c) in delta.iter() {
            if a.is_empty() {
                left.add_term(b.clone(), c.clone());
            }
            if b.is_empty() {
                right.add_term(a.clone(), c.clone());
            }
        }
        let e = GradedVector::basis(x.clone());
        Ok((left != e || right != e).then(|| format!("x = {x}: Δ(x) = {delta}")))
    }));

    laws.push(run_law("associativity", &triples, |(a, b, c)| {
        let l = h.product_vec(&h.product(a, b)?, &GradedVector::basis(c.clone()))?;
        let r = h.product_vec(&GradedVector::basis(a.clone()), &h.product(b, c)?)?;
        Ok((l != r).then(|| format!("({a}•{b})•{c} = {l} but {a}•({b}•{c}) = {r}")))
    }));

    laws.push(run_law("coassociativity", &singles, |x| {
        let l = triple_left(h, x)?;
        let r = triple_right(h, x)?;
        Ok((l != r).then(|| format!("x = {x}")))
    }));

    laws.push(run_law("compatibility", &pairs, |(a, b)| {
        let l = h.coproduct_vec(&h.product(a, b)?)?;
        let r = tensor_product(h, &h.coproduct(a)?, &h.coproduct(b)?)?;
        Ok((l != r).then(|| format!("Δ({a}•{b}) = {l} but Δ({a})•Δ({b}) = {r}")))
    }));

    laws.push(run_law("antipode", &singles, |x| {
        let delta = h.coproduct(x)?;
        let mut left = GradedVector::zero();
        let mut right = GradedVector::zero();
        for ((a, b), c) in delta.iter() {
            let bb = GradedVector::basis(b.clone());
            let aa = GradedVector::basis(a.clone());
            left.add_scaled(&h.product_vec(&h.antipode(a)?, &bb)?, c);
            right.add_scaled(&h.product_vec(&aa, &h.antipode(b)?)?, c);
        }
        let expected = if x.is_empty() {
            GradedVector::unit()
        } else {
            GradedVector::zero()
        };
        Ok((left != expected || right != expected)
            .then(|| format!("x = {x}: m(S⊗id)Δ = {left}, m(id⊗S)Δ = {right}")))
    }));

    Ok(AxiomReport {
        ambient: h.name(),
        max_degree,
        laws,
    })
}

/// Checks that `c` is a morphism of algebras and coalgebras and that `r ∘ c`
/// is the identity, on bottoms of total degree at most `max_degree`.
pub fn check_embedding(q: &QuotientHopf, max_degree: usize) -> Result<AxiomReport> {
    let mr = MalvenutoReutenauer::new();
    let basis: Vec<Vec<Permutation>> = (0..=max_degree)
        .map(|d| q.basis(d))
        .collect::<Result<_>>()?;
    let singles: Vec<Permutation> = basis.iter().flatten().cloned().collect();
    let mut pairs = Vec::new();
    for da in 0..=max_degree {
        for db in 0..=max_degree - da {
            for a in &basis[da] {
                for b in &basis[db] {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
    }
    let laws = vec![
        run_law("c is multiplicative", &pairs, |(u, v)| {
            let l = q.c_map_vec(&q.z_product(u, v)?)?;
            let r = mr.product_vec(&q.c_map(u)?, &q.c_map(v)?)?;
            Ok((l != r).then(|| format!("u = {u}, v = {v}")))
        }),
        run_law("c is comultiplicative", &singles, |x| {
            let l = q.z_coproduct(x)?.map_both(|a| q.c_map(a))?;
            let r = mr.coproduct_vec(&q.c_map(x)?)?;
            Ok((l != r).then(|| format!("x = {x}")))
        }),
        run_law("r after c is the identity", &singles, |x| {
            let back = q.r_map(&q.c_map(x)?)?;
            Ok((back != GradedVector::basis(x.clone())).then(|| format!("x = {x}")))
        }),
        run_law("antipode is r S c", &singles, |x| {
            let a = q.antipode_recursive(x)?;
            let b = q.antipode_via_mr(x)?;
            Ok((a != b).then(|| format!("x = {x}: {a} vs {b}")))
        }),
    ];
    Ok(AxiomReport {
        ambient: format!("embedding of {}", q.name()),
        max_degree,
        laws,
    })
}

/// Convenience for integer coefficients.
pub fn int(c: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(c))
}
