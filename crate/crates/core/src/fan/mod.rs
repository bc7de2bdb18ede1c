//! Quotient fans of the braid arrangement in `Rⁿ`.
//!
//! The maximal cones of the fan of a congruence are the unions of the
//! chambers in each class. Everything here is exact: cones are stored in a
//! canonical integer form and rays as primitive integer vectors orthogonal to
//! the lineality space.

mod cone;
pub mod linalg;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

pub use cone::RationalCone;
use linalg::{dot, primitive_mod_ones, rank};

use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poset::Poset;
use crate::weak_order::JoinIrreducible;

/// Largest `n` for which the full face structure is built.
pub const MAX_FAN_N: usize = 6;

/// Point with `p_{x_i} = i`, interior to the chamber of `x`.
pub fn chamber_point(x: &Permutation) -> Vec<i64> {
    let mut p = vec![0i64; x.len()];
    for (i, &v) in x.word().iter().enumerate() {
        p[v as usize - 1] = i as i64 + 1;
    }
    p
}

/// The chamber of `x`: `p_b ≤ p_a` for inversions `(a, b)` of `x` and
/// `p_a ≤ p_b` for non-inversions `a < b`.
pub fn region_cone(x: &Permutation) -> RationalCone {
    let w = x.word();
    let pairs = w
        .windows(2)
        .map(|pair| (pair[0] as usize - 1, pair[1] as usize - 1));
    RationalCone::from_relations(x.len(), pairs)
}

/// Cone of a class: `p_b ≤ p_a` for `(a, b)` in the inversion set of the
/// bottom, `p_a ≤ p_b` for `(a, b)` outside the inversion set of the top.
pub fn class_cone(cong: &Congruence, class: usize) -> RationalCone {
    let n = cong.n();
    let bottom = cong.bottom(class).inversions();
    let top = cong.top(class).inversions();
    let mut pairs = Vec::new();
    for b in 2..=n {
        for a in 1..b {
            if bottom.contains(a, b) {
                pairs.push((b - 1, a - 1));
            }
            if !top.contains(a, b) {
                pairs.push((a - 1, b - 1));
            }
        }
    }
    RationalCone::from_relations(n, pairs)
}

/// Dimension of the intersection of all maximal cones.
pub fn intersection_dim(cong: &Congruence) -> usize {
    class_cone(cong, cong.class_of(&Permutation::identity(cong.n()))).lineality_dim()
}

fn atom(n: usize, i: usize) -> Permutation {
    Permutation::identity(n).swap_adjacent(i)
}

pub fn contracts_atom(cong: &Congruence) -> bool {
    let n = cong.n();
    let e = Permutation::identity(n);
    (1..n).any(|i| cong.equivalent(&e, &atom(n, i)))
}

/// Simpliciality by counting: every class has `#down-covers(bottom) +
/// #up-covers(top) = n − dim(∩F)`.
pub fn is_simplicial(cong: &Congruence) -> bool {
    let target = cong.n() - intersection_dim(cong);
    let w = cong.order();
    (0..cong.num_classes()).all(|c| {
        w.down_covers(cong.bottom_idx(c)).len() + w.up_covers(cong.top_idx(c)).len() == target
    })
}

fn indicator_ray(n: usize, set: impl IntoIterator<Item = usize>) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for a in set {
        v[a - 1] = 1;
    }
    primitive_mod_ones(&v)
}

/// The rays predicted combinatorially: the indicator of `{i+1, …, n}` for
/// each `i < n`, and the indicator of the values after the descent of each
/// join-irreducible that is the top of its class.
pub fn combinatorial_rays(cong: &Congruence) -> Result<Vec<Vec<i64>>> {
    if contracts_atom(cong) {
        return Err(Error::AtomContracted);
    }
    let n = cong.n();
    let mut out: BTreeSet<Vec<i64>> = (1..n).map(|i| indicator_ray(n, i + 1..=n)).collect();
    for g in ji_tops(cong) {
        out.insert(indicator_ray(n, g.subset()));
    }
    Ok(out.into_iter().collect())
}

/// Join-irreducibles `γ` with `π^↑γ = γ`. When the fan is simplicial these
/// are equinumerous with the uncontracted join-irreducibles.
pub fn ji_tops(cong: &Congruence) -> Vec<JoinIrreducible> {
    crate::weak_order::join_irreducibles(cong.n())
        .into_iter()
        .filter(|g| {
            let x = g.to_permutation();
            cong.pi_up(&x) == &x
        })
        .collect()
}

pub fn uncontracted_jis(cong: &Congruence) -> Vec<JoinIrreducible> {
    crate::weak_order::join_irreducibles(cong.n())
        .into_iter()
        .filter(|g| !cong.contracts(g))
        .collect()
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

/// `h` from `Σ f_{i−1}(x−1)^{d−i} = Σ h_i x^{d−i}` with `f_{−1} = 1`; `f`
/// lists `f_0, …, f_{d−1}`.
pub fn h_from_f(f: &[u64]) -> Vec<i64> {
    let d = f.len();
    let fm = |i: usize| if i == 0 { 1 } else { f[i - 1] as i64 };
    (0..=d)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let sign = if (k - i) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(d - i, k - i) * fm(i)
                })
                .sum()
        })
        .collect()
}

/// `h_i` = number of quotient elements covering exactly `i` elements.
pub fn h_from_covers(cong: &Congruence) -> Vec<i64> {
    let d = cong.n() - intersection_dim(cong);
    let q = cong.quotient().poset();
    let mut h = vec![0i64; d + 1];
    for c in 0..q.len() {
        let k = q.down_covers(c).len();
        if k < h.len() {
            h[k] += 1;
        } else {
            h.resize(k + 1, 0);
            h[k] += 1;
        }
    }
    h
}

/// `f_0, …, f_{d−1}` from atomic intervals of the quotient: an atomic
/// interval with `k` atoms corresponds to a face of dimension `n − k`.
pub fn f_vector_combinatorial(cong: &Congruence) -> Vec<u64> {
    let n = cong.n();
    let lin = intersection_dim(cong);
    let d = n - lin;
    let mut f = vec![0u64; d];
    for (_, _, k) in cong.quotient().poset().atomic_intervals() {
        let dim = n - k;
        if dim > lin {
            f[dim - lin - 1] += 1;
        }
    }
    f
}

/// `μ(x, y) = (−1)^{#atoms}` on atomic intervals and `0` otherwise; returns
/// the first violation.
pub fn mobius_violation(poset: &Poset) -> Option<(usize, usize, i64, i64)> {
    (0..poset.len()).into_par_iter().find_map_first(|a| {
        let mu = poset.mobius_from(a);
        poset.up_set(a).iter().find_map(|b| {
            let expected = if poset.is_atomic_interval(a, b) {
                if poset.atoms(a, b).len().is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            } else {
                0
            };
            (mu[b] != expected).then_some((a, b, mu[b], expected))
        })
    })
}

#[derive(Clone, Debug)]
pub struct Face {
    pub cone: RationalCone,
    pub dim: usize,
    /// Indices into [`QuotientFan::rays`].
    pub rays: Vec<usize>,
    /// Maximal cones (class indices) containing this face.
    pub cones: Vec<usize>,
}

pub struct QuotientFan {
    congruence: Arc<Congruence>,
    cones: Vec<RationalCone>,
    lineality_dim: usize,
    rays: Vec<Vec<i64>>,
    cone_rays: Vec<Vec<usize>>,
    faces: Vec<Face>,
    cone_faces: Vec<Vec<usize>>,
}

fn inconsistent(msg: String) -> Error {
    Error::Inconsistent(msg)
}

/// Builds the fan, verifying completeness, that each maximal cone is the
/// union of the chambers in its class, and that pairwise intersections of
/// maximal cones are faces of both.
pub fn build_fan(cong: Arc<Congruence>) -> Result<QuotientFan> {
    let n = cong.n();
    if n > MAX_FAN_N {
        return Err(Error::Capacity {
            what: "fan",
            n,
            max: MAX_FAN_N,
        });
    }
    let k = cong.num_classes();
    let cones: Vec<RationalCone> = (0..k)
        .into_par_iter()
        .map(|c| class_cone(&cong, c))
        .collect();

    let order = cong.order();
    (0..order.len()).into_par_iter().try_for_each(|i| {
        let x = order.element(i);
        let p = chamber_point(x);
        let hits: Vec<usize> = (0..k).filter(|&c| cones[c].contains(&p)).collect();
        if hits != [cong.class_of_idx(i)] {
            return Err(inconsistent(format!(
                "chamber {x} lies in maximal cones {hits:?}"
            )));
        }
        Ok(())
    })?;

    (0..k).into_par_iter().try_for_each(|c| {
        let mut p = vec![0i64; n];
        for &m in cong.members_idx(c) {
            for (s, v) in p.iter_mut().zip(chamber_point(order.element(m as usize))) {
                *s += v;
            }
        }
        if cones[c].dim() != n || !cones[c].contains_in_relative_interior(&p) {
            return Err(inconsistent(format!("class {c} cone is degenerate")));
        }
        Ok(())
    })?;

    (0..k).into_par_iter().try_for_each(|i| {
        for j in i + 1..k {
            let x = cones[i].intersect(&cones[j]);
            if !x.is_face_of(&cones[i]) || !x.is_face_of(&cones[j]) {
                return Err(inconsistent(format!(
                    "cones of classes {i} and {j} meet in a non-face"
                )));
            }
        }
        Ok(())
    })?;

    let per_cone: Vec<Vec<RationalCone>> = cones.par_iter().map(|c| c.faces()).collect();
    // hashing ignores the cached rays
    #[allow(clippy::mutable_key_type)]
    let mut registry: HashMap<RationalCone, Vec<usize>> = HashMap::new();
    for (c, faces) in per_cone.into_iter().enumerate() {
        for f in faces {
            registry.entry(f).or_default().push(c);
        }
    }
    let mut faces: Vec<Face> = registry
        .into_iter()
        .map(|(cone, cones)| Face {
            dim: cone.dim(),
            cone,
            rays: Vec::new(),
            cones,
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.cones).cmp(&(b.dim, &b.cones)));

    let lineality_dim = faces[0].dim;
    if faces.iter().filter(|f| f.dim == lineality_dim).count() != 1
        || cones.iter().any(|c| c.lineality_dim() != lineality_dim)
        || lineality_dim != intersection_dim(&cong)
    {
        return Err(inconsistent("maximal cones disagree on lineality".into()));
    }

    let mut ray_set = BTreeSet::new();
    for f in faces.iter().filter(|f| f.dim == lineality_dim + 1) {
        match f.cone.extreme_rays() {
            [r] => {
                ray_set.insert(r.clone());
            }
            other => {
                return Err(inconsistent(format!(
                    "one-dimensional face with {} rays",
                    other.len()
                )))
            }
        }
    }
    let from_cones: BTreeSet<Vec<i64>> = cones
        .iter()
        .flat_map(|c| c.extreme_rays().iter().cloned())
        .collect();
    if from_cones != ray_set {
        return Err(inconsistent("extreme rays disagree with ray faces".into()));
    }
    let rays: Vec<Vec<i64>> = ray_set.into_iter().collect();
    for f in faces.iter_mut() {
        f.rays = (0..rays.len())
            .filter(|&r| f.cone.contains(&rays[r]))
            .collect();
    }
    let cone_rays = cones
        .iter()
        .map(|c| (0..rays.len()).filter(|&r| c.contains(&rays[r])).collect())
        .collect();
    let mut cone_faces = vec![Vec::new(); k];
    for (i, f) in faces.iter().enumerate() {
        for &c in &f.cones {
            cone_faces[c].push(i);
        }
    }
    Ok(QuotientFan {
        congruence: cong,
        cones,
        lineality_dim,
        rays,
        cone_rays,
        faces,
        cone_faces,
    })
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct FanJson {
    pub n: usize,
    pub lineality_dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub maximal_cones: Vec<Vec<usize>>,
    pub f_vector: Vec<u64>,
    pub h_vector: Vec<i64>,
}

impl QuotientFan {
    pub fn n(&self) -> usize {
        self.congruence.n()
    }

    pub fn congruence(&self) -> &Arc<Congruence> {
        &self.congruence
    }

    /// Maximal cones, indexed by class.
    pub fn cones(&self) -> &[RationalCone] {
        &self.cones
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality_dim
    }

    /// Dimension `d` modulo lineality.
    pub fn reduced_dim(&self) -> usize {
        self.n() - self.lineality_dim
    }

    /// Rays, lexicographically sorted.
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cone_rays(&self) -> &[Vec<usize>] {
        &self.cone_rays
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// `f_0, …, f_{d−1}`: faces of dimension `lineality + 1 + i`.
    pub fn f_vector(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.reduced_dim()];
        for face in &self.faces {
            if face.dim > self.lineality_dim {
                f[face.dim - self.lineality_dim - 1] += 1;
            }
        }
        f
    }

    pub fn h_vector(&self) -> Vec<i64> {
        h_from_f(&self.f_vector())
    }

    /// Every face has exactly as many rays as its dimension modulo lineality.
    pub fn is_simplicial(&self) -> bool {
        self.faces
            .iter()
            .all(|f| f.rays.len() == f.dim - self.lineality_dim)
    }

    /// Pairs of classes whose cones meet in codimension one.
    pub fn adjacency(&self) -> BTreeSet<(usize, usize)> {
        self.faces
            .iter()
            .filter(|f| f.dim + 1 == self.n())
            .map(|f| {
                let (a, b) = (f.cones[0], f.cones[f.cones.len() - 1]);
                (a.min(b), a.max(b))
            })
            .collect()
    }

    /// Outward normal of `cones[lower]` on the wall it shares with
    /// `cones[upper]`.
    fn wall_normal(&self, lower: usize, upper: usize) -> Option<Vec<i64>> {
        let c = &self.cones[lower];
        let wall = c.intersect(&self.cones[upper]);
        (0..c.num_facets())
            .find(|&k| c.facet(k) == wall)
            .map(|k| c.facet_normals()[k].iter().map(|x| -x).collect())
    }

    pub fn to_json(&self) -> FanJson {
        FanJson {
            n: self.n(),
            lineality_dim: self.lineality_dim,
            rays: self.rays.clone(),
            maximal_cones: self.cone_rays.clone(),
            f_vector: self.f_vector(),
            h_vector: self.h_vector(),
        }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct FanReport {
    pub n: usize,
    pub simplicial: bool,
    pub checks: Vec<Check>,
}

impl FanReport {
    pub fn passed(&self) -> bool {
        self.checks
            .iter()
            .all(|c| !matches!(c.outcome, Outcome::Fail(_)))
    }

    pub fn outcome(&self, name: &str) -> Option<&Outcome> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.outcome)
    }
}

impl fmt::Display for FanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, simplicial = {}", self.n, self.simplicial)?;
        for c in &self.checks {
            match &c.outcome {
                Outcome::Pass => writeln!(f, "  ok    {}", c.name)?,
                Outcome::Fail(m) => writeln!(f, "  FAIL  {}: {m}", c.name)?,
                Outcome::Skipped(m) => writeln!(f, "  skip  {}: {m}", c.name)?,
            }
        }
        Ok(())
    }
}

fn outcome(failure: Option<String>) -> Outcome {
    failure.map_or(Outcome::Pass, Outcome::Fail)
}

/// Seeds for sampled linear extensions in the shelling check.
pub const SHELLING_SEEDS: [u64; 3] = [1, 2, 3];

/// Runs the fan-poset checks on a built fan.
pub fn check_fan_poset_properties(fan: &QuotientFan, seeds: &[u64]) -> FanReport {
    let cong = fan.congruence();
    let q = cong.quotient().poset();
    let n = fan.n();
    let simplicial = is_simplicial(cong);
    let mut checks = Vec::new();
    let mut push = |name: &str, o: Outcome| {
        checks.push(Check {
            name: name.into(),
            outcome: o,
        })
    };

    push(
        "simpliciality count matches geometry",
        outcome((simplicial != fan.is_simplicial()).then(|| {
            format!(
                "counting says {simplicial}, geometry says {}",
                fan.is_simplicial()
            )
        })),
    );

    let rays_outcome = match combinatorial_rays(cong) {
        Err(_) => Outcome::Skipped("an atom is contracted".into()),
        Ok(rays) => {
            let predicted = n - 1 + ji_tops(cong).len();
            outcome(
                if simplicial && uncontracted_jis(cong).len() + n - 1 != predicted {
                    Some("tops and uncontracted join-irreducibles differ in number".into())
                } else if rays != fan.rays() {
                    Some(format!("predicted {rays:?}, found {:?}", fan.rays()))
                } else if rays.len() != predicted {
                    Some(format!("{} rays, expected {predicted}", rays.len()))
                } else {
                    None
                },
            )
        }
    };
    push("rays", rays_outcome);

    let hasse: BTreeSet<(usize, usize)> = q
        .covers()
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    push(
        "1-skeleton",
        outcome((hasse != fan.adjacency()).then(|| {
            let extra: Vec<_> = fan
                .adjacency()
                .symmetric_difference(&hasse)
                .copied()
                .collect();
            format!("adjacency and Hasse diagram differ on {extra:?}")
        })),
    );

    push(
        "Möbius",
        outcome(
            mobius_violation(q)
                .map(|(a, b, got, want)| format!("μ({a},{b}) = {got}, expected {want}")),
        ),
    );

    let mut facial = BTreeSet::new();
    let mut failure = None;
    for f in fan.faces() {
        let lo = f
            .cones
            .iter()
            .copied()
            .find(|&c| f.cones.iter().all(|&d| q.leq(c, d)));
        let hi = f
            .cones
            .iter()
            .copied()
            .find(|&c| f.cones.iter().all(|&d| q.leq(d, c)));
        let (Some(lo), Some(hi)) = (lo, hi) else {
            failure = Some(format!("face with cones {:?} has no interval", f.cones));
            break;
        };
        let mut members = q.interval(lo, hi);
        members.sort_unstable();
        if members != f.cones || !q.is_atomic_interval(lo, hi) {
            failure = Some(format!(
                "face with cones {:?} is not an atomic interval",
                f.cones
            ));
            break;
        }
        if f.dim + q.atoms(lo, hi).len() != n {
            failure = Some(format!(
                "face of dimension {} has {} atoms",
                f.dim,
                q.atoms(lo, hi).len()
            ));
            break;
        }
        facial.insert((lo, hi));
    }
    if failure.is_none() {
        let atomic: BTreeSet<(usize, usize)> = q
            .atomic_intervals()
            .into_iter()
            .map(|(a, b, _)| (a, b))
            .collect();
        if atomic != facial {
            failure = Some(format!(
                "{} atomic intervals but {} facial intervals",
                atomic.len(),
                facial.len()
            ));
        } else if f_vector_combinatorial(cong) != fan.f_vector() {
            failure = Some("f-vector from atomic intervals differs".into());
        }
    }
    push("atomic-facial", outcome(failure));

    push("bisimplicial", outcome(bisimplicial_failure(fan)));

    if simplicial {
        let h = fan.h_vector();
        let sym = h.iter().eq(h.iter().rev());
        let covers = h_from_covers(cong);
        push(
            "Dehn-Sommerville",
            outcome(if !sym {
                Some(format!("h = {h:?}"))
            } else if covers != h {
                Some(format!("h from covers {covers:?}, from f {h:?}"))
            } else {
                None
            }),
        );
        push("shelling", outcome(shelling_failure(fan, seeds)));
        push("flag", outcome(flag_failure(fan)));
    } else {
        for name in ["Dehn-Sommerville", "shelling", "flag"] {
            push(name, Outcome::Skipped("not simplicial".into()));
        }
    }

    FanReport {
        n,
        simplicial,
        checks,
    }
}

/// The linear functional `b = (n, n−1, …, 1)`.
pub fn functional(n: usize) -> Vec<i64> {
    (0..n).map(|i| (n - i) as i64).collect()
}

fn bisimplicial_failure(fan: &QuotientFan) -> Option<String> {
    let n = fan.n();
    let b = functional(n);
    let q = fan.congruence().quotient().poset();
    for (lo, hi) in q.covers() {
        match fan.wall_normal(lo, hi) {
            None => return Some(format!("classes {lo} ⋖ {hi} share no wall")),
            Some(nu) if dot(&b, &nu) <= 0 => {
                return Some(format!("b decreases across the wall {lo} ⋖ {hi}"))
            }
            _ => {}
        }
    }
    for (c, cone) in fan.cones().iter().enumerate() {
        let outward: Vec<Vec<i64>> = cone
            .facet_normals()
            .into_iter()
            .map(|nu| nu.into_iter().map(|x| -x).collect())
            .collect();
        if outward.iter().any(|nu| dot(&b, nu) == 0) {
            return Some(format!("class {c} has a facet parallel to b"));
        }
        let (plus, minus): (Vec<Vec<i64>>, Vec<Vec<i64>>) =
            outward.into_iter().partition(|nu| dot(&b, nu) > 0);
        if rank(&plus, n) != plus.len() || rank(&minus, n) != minus.len() {
            return Some(format!("class {c} is not bisimplicial"));
        }
        if minus.len() != q.down_covers(c).len() {
            return Some(format!("class {c}: lower facets do not match down-covers"));
        }
    }
    None
}

/// Condition (ii) of a shelling: each maximal cone after the first meets the
/// union of the earlier ones in a nonempty union of its facets. Also checks
/// that the number of such facets equals the number of lower covers.
fn shelling_failure(fan: &QuotientFan, seeds: &[u64]) -> Option<String> {
    let q = fan.congruence().quotient().poset();
    let n = fan.n();
    for &seed in seeds {
        let order = q.linear_extension(Some(seed));
        let mut pos = vec![0usize; order.len()];
        for (i, &c) in order.iter().enumerate() {
            pos[c] = i;
        }
        for (j, &c) in order.iter().enumerate().skip(1) {
            let shared: Vec<&Face> = fan.cone_faces[c]
                .iter()
                .map(|&i| &fan.faces[i])
                .filter(|f| f.cones.iter().any(|&d| pos[d] < j))
                .collect();
            let walls: Vec<&&Face> = shared.iter().filter(|f| f.dim + 1 == n).collect();
            if walls.is_empty() {
                return Some(format!(
                    "seed {seed}: cone {c} meets earlier cones in no wall"
                ));
            }
            if let Some(f) = shared
                .iter()
                .find(|f| !walls.iter().any(|w| f.cone.is_subset_of(&w.cone)))
            {
                return Some(format!(
                    "seed {seed}: cone {c} meets earlier cones in a face of dimension {} outside any shared wall",
                    f.dim
                ));
            }
            if walls.len() != q.down_covers(c).len() {
                return Some(format!(
                    "seed {seed}: cone {c} has {} restriction facets but {} lower covers",
                    walls.len(),
                    q.down_covers(c).len()
                ));
            }
        }
    }
    None
}

/// Every set of rays that is pairwise a face must be a face.
fn flag_failure(fan: &QuotientFan) -> Option<String> {
    let simplices: HashSet<Vec<usize>> = fan.faces().iter().map(|f| f.rays.clone()).collect();
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for f in fan.faces().iter().filter(|f| f.rays.len() == 2) {
        adj.entry(f.rays[0]).or_default().insert(f.rays[1]);
        adj.entry(f.rays[1]).or_default().insert(f.rays[0]);
    }
    fn extend(
        clique: &mut Vec<usize>,
        candidates: &[usize],
        adj: &BTreeMap<usize, BTreeSet<usize>>,
        simplices: &HashSet<Vec<usize>>,
    ) -> Option<Vec<usize>> {
        if clique.len() >= 3 && !simplices.contains(clique) {
            return Some(clique.clone());
        }
        for (i, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|u| adj.get(&v).is_some_and(|s| s.contains(u)))
                .collect();
            clique.push(v);
            let found = extend(clique, &next, adj, simplices);
            clique.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
    let all: Vec<usize> = (0..fan.rays().len()).collect();
    extend(&mut Vec::new(), &all, &adj, &simplices)
        .map(|c| format!("rays {c:?} are pairwise adjacent but span no face"))
}
