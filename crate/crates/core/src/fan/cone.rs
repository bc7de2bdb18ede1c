//! Cones cut out by inequalities `p_a ≤ p_b`.
//!
//! Every cone arising from the braid arrangement and its coarsenings has an
//! H-representation with normals `e_b − e_a`. Such a cone is determined by
//! the transitively closed relation `{(a, b) : p_a ≤ p_b on the cone}`, which
//! serves as its canonical form. Coordinates are 0-based internally.

use std::fmt;
use std::sync::OnceLock;

use super::linalg::{dot, kernel_line, rank};

/// Relation rows: bit `b` of `le[a]` means `p_a ≤ p_b`.
type Rows = Vec<u16>;

fn close(mut le: Rows) -> Rows {
    let n = le.len();
    for (a, row) in le.iter_mut().enumerate() {
        *row |= 1 << a;
    }
    for k in 0..n {
        for a in 0..n {
            if le[a] >> k & 1 == 1 {
                le[a] |= le[k];
            }
        }
    }
    le
}

/// Closed polyhedral cone `{p ∈ Rⁿ : ⟨ν, p⟩ ≥ 0 for every normal ν}`.
#[derive(Clone)]
pub struct RationalCone {
    le: Rows,
    /// Representative (least member) of the block of each coordinate.
    block: Vec<usize>,
    equalities: Vec<Vec<i64>>,
    facets: Vec<(usize, usize)>,
    rays: OnceLock<Vec<Vec<i64>>>,
}

impl PartialEq for RationalCone {
    fn eq(&self, other: &Self) -> bool {
        self.le == other.le
    }
}

impl Eq for RationalCone {}

impl std::hash::Hash for RationalCone {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.le.hash(state);
    }
}

impl RationalCone {
    /// `{p : p_a ≤ p_b for (a, b) in pairs}` (0-based coordinates).
    pub fn from_relations(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        assert!(n <= 16, "ambient dimension too large");
        let mut le = vec![0u16; n];
        for (a, b) in pairs {
            le[a] |= 1 << b;
        }
        Self::from_closed(close(le))
    }

    /// The whole space.
    pub fn full(n: usize) -> Self {
        Self::from_relations(n, [])
    }

    fn from_closed(le: Rows) -> Self {
        let n = le.len();
        let eq = |a: usize, b: usize| le[a] >> b & 1 == 1 && le[b] >> a & 1 == 1;
        let block: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| eq(a, b)).unwrap())
            .collect();
        let mut equalities = Vec::new();
        for a in 0..n {
            let r = block[a];
            if r != a {
                let mut v = vec![0i64; n];
                v[a] = 1;
                v[r] = -1;
                equalities.push(v.iter().map(|x| -x).collect());
                equalities.push(v);
            }
        }
        // Hasse diagram of the order on blocks
        let reps: Vec<usize> = (0..n).filter(|&a| block[a] == a).collect();
        let strictly = |a: usize, b: usize| le[a] >> b & 1 == 1 && !eq(a, b);
        let mut facets = Vec::new();
        for &a in &reps {
            for &b in &reps {
                if strictly(a, b) && !reps.iter().any(|&c| strictly(a, c) && strictly(c, b)) {
                    facets.push((a, b));
                }
            }
        }
        RationalCone {
            le,
            block,
            equalities,
            facets,
            rays: OnceLock::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.le.len()
    }

    pub fn dim(&self) -> usize {
        self.block
            .iter()
            .enumerate()
            .filter(|&(a, &r)| a == r)
            .count()
    }

    /// Dimension of the largest linear subspace contained in the cone: the
    /// number of connected components of the comparability graph.
    pub fn lineality_dim(&self) -> usize {
        self.components().len()
    }

    fn components(&self) -> Vec<u16> {
        let n = self.ambient_dim();
        let mut comps: Vec<u16> = Vec::new();
        let mut seen = 0u16;
        for a in 0..n {
            if seen >> a & 1 == 1 {
                continue;
            }
            let mut comp = 1u16 << a;
            loop {
                let mut next = comp;
                for b in 0..n {
                    if comp >> b & 1 == 1 {
                        next |= self.le[b];
                    }
                    if self.le[b] & comp != 0 {
                        next |= 1 << b;
                    }
                }
                if next == comp {
                    break;
                }
                comp = next;
            }
            seen |= comp;
            comps.push(comp);
        }
        comps
    }

    pub fn leq_holds(&self, a: usize, b: usize) -> bool {
        self.le[a] >> b & 1 == 1
    }

    /// Facet-defining inequality normals `e_b − e_a` for `p_a ≤ p_b`.
    pub fn facet_normals(&self) -> Vec<Vec<i64>> {
        self.facets
            .iter()
            .map(|&(a, b)| self.normal(a, b))
            .collect()
    }

    /// Equalities as pairs of opposite normals.
    pub fn equality_normals(&self) -> &[Vec<i64>] {
        &self.equalities
    }

    /// Irredundant H-representation: equality pairs, then facet normals.
    pub fn normals(&self) -> Vec<Vec<i64>> {
        let mut out = self.equalities.clone();
        out.extend(self.facet_normals());
        out
    }

    fn normal(&self, a: usize, b: usize) -> Vec<i64> {
        let mut v = vec![0i64; self.ambient_dim()];
        v[b] += 1;
        v[a] -= 1;
        v
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.normals().iter().all(|nu| dot(nu, p) >= 0)
    }

    /// Whether `p` lies in the relative interior.
    pub fn contains_in_relative_interior(&self, p: &[i64]) -> bool {
        self.equalities.iter().all(|nu| dot(nu, p) == 0)
            && self.facet_normals().iter().all(|nu| dot(nu, p) > 0)
    }

    pub fn intersect(&self, other: &RationalCone) -> RationalCone {
        let le = self.le.iter().zip(&other.le).map(|(a, b)| a | b).collect();
        Self::from_closed(close(le))
    }

    pub fn is_subset_of(&self, other: &RationalCone) -> bool {
        self.le.iter().zip(&other.le).all(|(s, o)| o & !s == 0)
    }

    /// The face cut out by the hyperplane of facet `k`.
    pub fn facet(&self, k: usize) -> RationalCone {
        let (a, b) = self.facets[k];
        let mut le = self.le.clone();
        le[b] |= 1 << a;
        Self::from_closed(close(le))
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// All faces, including the cone itself.
    pub fn faces(&self) -> Vec<RationalCone> {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        let mut out = Vec::new();
        seen.insert(self.le.clone());
        while let Some(f) = stack.pop() {
            for k in 0..f.num_facets() {
                let g = f.facet(k);
                if seen.insert(g.le.clone()) {
                    stack.push(g);
                }
            }
            out.push(f);
        }
        out
    }

    /// Whether `self` is a face of `other`: equal to `other` cut by the
    /// hyperplanes of those inequalities of `other` that are tight on `self`.
    pub fn is_face_of(&self, other: &RationalCone) -> bool {
        if !self.is_subset_of(other) {
            return false;
        }
        let n = self.ambient_dim();
        let mut le = other.le.clone();
        for a in 0..n {
            for b in 0..n {
                if other.leq_holds(a, b) && self.leq_holds(b, a) {
                    le[b] |= 1 << a;
                }
            }
        }
        close(le) == self.le
    }

    /// Extreme rays modulo the lineality space, as primitive integer vectors
    /// orthogonal to it. Candidates are lines cut out by subsets of facet
    /// hyperplanes of the right size.
    pub fn extreme_rays(&self) -> &[Vec<i64>] {
        self.rays.get_or_init(|| {
            let n = self.ambient_dim();
            let mut base: Vec<Vec<i64>> = self.equalities.clone();
            for comp in self.components() {
                base.push((0..n).map(|i| (comp >> i & 1) as i64).collect());
            }
            let ineq = self.facet_normals();
            let need = n - 1 - rank(&base, n).min(n - 1);
            let mut out = std::collections::BTreeSet::new();
            for_each_subset(ineq.len(), need, &mut |chosen| {
                let mut rows = base.clone();
                rows.extend(chosen.iter().map(|&k| ineq[k].clone()));
                let Some(v) = kernel_line(&rows, n) else {
                    return;
                };
                for v in [v.clone(), v.iter().map(|x| -x).collect::<Vec<_>>()] {
                    if ineq.iter().all(|nu| dot(nu, &v) >= 0) {
                        out.insert(v);
                    }
                }
            });
            out.into_iter().collect()
        })
    }
}

fn for_each_subset(len: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..len {
            if len - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, len, k, cur, f);
            cur.pop();
        }
    }
    rec(0, len, k, &mut Vec::new(), f);
}

impl fmt::Debug for RationalCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.ambient_dim();
        let mut parts = Vec::new();
        for a in 0..n {
            let r = self.block[a];
            if r != a {
                parts.push(format!("p{}=p{}", r + 1, a + 1));
            }
        }
        for &(a, b) in &self.facets {
            parts.push(format!("p{}≤p{}", a + 1, b + 1));
        }
        write!(f, "Cone[{}]({})", n, parts.join(", "))
    }
}
