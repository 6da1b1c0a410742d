//! Weighted finite posets over label subsets, their extended quasimetrics,
//! and maximal chains of discretizations `Z × P`.

use crate::error::{invalid, Error, Result};
use crate::metric_space::{full_mask, LabeledMetricSpace};
use crate::{LabelSet, Scalar};

/// Largest `k` accepted for power set posets.
pub const MAX_POWER_K: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceKind {
    /// Least total weight along a Hasse path.
    Geodesic,
    /// Least maximal edge weight along a Hasse path.
    Ultrametric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetShape {
    /// All subsets of `[k]` ordered by inclusion.
    Power,
    /// The two-node chain `{1} ≺ {1,2}` used for image landscapes.
    Chain,
}

/// A Hasse edge between element indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<S> {
    pub from: usize,
    pub to: usize,
    /// 0-based label added along the edge.
    pub label: usize,
    pub weight: S,
}

/// A power set or chain poset with weighted Hasse edges and cached
/// geodesic and ultrametric distance tables.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedPoset<S> {
    k: usize,
    shape: PosetShape,
    elements: Vec<LabelSet>,
    edges: Vec<Edge<S>>,
    geodesic: Vec<S>,
    ultrametric: Vec<S>,
}

impl<S: Scalar> WeightedPoset<S> {
    /// Power set of `[k]` with all edge weights zero.
    pub fn power(k: usize) -> Result<Self> {
        if !(1..=MAX_POWER_K).contains(&k) {
            return invalid(format!("power poset needs 1 <= k <= {MAX_POWER_K}, got {k}"));
        }
        let elements: Vec<LabelSet> = (0..1u32 << k).collect();
        let mut edges = Vec::with_capacity(k << (k - 1));
        for (from, &m) in elements.iter().enumerate() {
            for label in 0..k {
                if m & (1 << label) == 0 {
                    let to = (m | 1 << label) as usize;
                    edges.push(Edge { from, to, label, weight: S::zero() });
                }
            }
        }
        Ok(Self::build(k, PosetShape::Power, elements, edges))
    }

    /// The chain `X_1 ≺ X` over a 2-labeled space whose second label is the
    /// whole space. Edge weight zero.
    pub fn chain() -> Self {
        let edges = vec![Edge { from: 0, to: 1, label: 1, weight: S::zero() }];
        Self::build(2, PosetShape::Chain, vec![0b01, 0b11], edges)
    }

    fn build(k: usize, shape: PosetShape, elements: Vec<LabelSet>, edges: Vec<Edge<S>>) -> Self {
        let mut p = Self { k, shape, elements, edges, geodesic: Vec::new(), ultrametric: Vec::new() };
        p.recompute();
        p
    }

    fn recompute(&mut self) {
        let n = self.elements.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (self.elements[i].count_ones(), i));
        let mut out_edges = vec![Vec::new(); n];
        for e in &self.edges {
            out_edges[e.from].push(*e);
        }
        let inf = S::infinity();
        self.geodesic = vec![inf; n * n];
        self.ultrametric = vec![inf; n * n];
        for s in 0..n {
            self.geodesic[s * n + s] = S::zero();
            self.ultrametric[s * n + s] = S::zero();
            for &u in &order {
                let (g, m) = (self.geodesic[s * n + u], self.ultrametric[s * n + u]);
                if g == inf {
                    continue;
                }
                for e in &out_edges[u] {
                    let cell = s * n + e.to;
                    self.geodesic[cell] = self.geodesic[cell].min(g + e.weight);
                    self.ultrametric[cell] = self.ultrametric[cell].min(m.max(e.weight));
                }
            }
        }
    }

    /// Sets every edge weight from `f(from_mask, to_mask)`.
    pub fn with_edge_weights(mut self, f: impl Fn(LabelSet, LabelSet) -> S) -> Result<Self> {
        for e in &mut self.edges {
            let w = f(self.elements[e.from], self.elements[e.to]);
            if !(w >= S::zero()) || !w.is_finite() {
                return invalid("edge weights must be finite and nonnegative");
            }
            e.weight = w;
        }
        self.recompute();
        Ok(self)
    }

    pub fn weight_constant(self, w: S) -> Result<Self> {
        self.with_edge_weights(|_, _| w)
    }

    /// Edge `Q → Q'` weighted by `diam_{Q'}`.
    pub fn weight_diameter(self, lms: &LabeledMetricSpace<S>) -> Result<Self> {
        self.check_k(lms)?;
        self.with_edge_weights(|_, to| lms.diam_mask(to))
    }

    /// Edge `Q → Q'` weighted by `α·H(∪Q, ∪Q')`; edges out of `∅` use
    /// `α·diam_{Q'}`.
    pub fn weight_hausdorff_fraction(self, lms: &LabeledMetricSpace<S>, alpha: S) -> Result<Self> {
        self.check_k(lms)?;
        if !(alpha >= S::zero()) {
            return invalid("hausdorff fraction must be nonnegative");
        }
        self.with_edge_weights(|from, to| {
            if from == 0 {
                alpha * lms.diam_mask(to)
            } else {
                let h = lms.hausdorff(&lms.union(from), &lms.union(to)).expect("nonempty unions");
                alpha * h
            }
        })
    }

    fn check_k(&self, lms: &LabeledMetricSpace<S>) -> Result<()> {
        if lms.k() != self.k {
            return Err(Error::LabelCountMismatch(self.k, lms.k()));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn shape(&self) -> PosetShape {
        self.shape
    }

    pub fn elements(&self) -> &[LabelSet] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    pub fn top(&self) -> LabelSet {
        full_mask(self.k)
    }

    pub fn index_of(&self, mask: LabelSet) -> Option<usize> {
        match self.shape {
            PosetShape::Power => ((mask as usize) < self.elements.len()).then_some(mask as usize),
            PosetShape::Chain => self.elements.iter().position(|&m| m == mask),
        }
    }

    pub fn leq(&self, a: LabelSet, b: LabelSet) -> bool {
        a & !b == 0
    }

    /// Weight of the Hasse edge `a → b`, if it exists.
    pub fn edge_weight(&self, a: LabelSet, b: LabelSet) -> Option<S> {
        let (i, j) = (self.index_of(a)?, self.index_of(b)?);
        self.edges.iter().find(|e| e.from == i && e.to == j).map(|e| e.weight)
    }

    /// Extended distance between elements by index: `+∞` unless `p ≼ q`.
    pub fn distance_idx(&self, p: usize, q: usize, kind: DistanceKind) -> S {
        let n = self.elements.len();
        match kind {
            DistanceKind::Geodesic => self.geodesic[p * n + q],
            DistanceKind::Ultrametric => self.ultrametric[p * n + q],
        }
    }

    /// Extended distance between elements given as masks.
    pub fn distance(&self, p: LabelSet, q: LabelSet, kind: DistanceKind) -> Result<S> {
        match (self.index_of(p), self.index_of(q)) {
            (Some(i), Some(j)) => Ok(self.distance_idx(i, j, kind)),
            _ => invalid(format!("element {p:#b} or {q:#b} is not in the poset")),
        }
    }

    /// Edges leaving an element index.
    pub fn upper_covers(&self, i: usize) -> impl Iterator<Item = &Edge<S>> {
        self.edges.iter().filter(move |e| e.from == i)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuasimetricMode {
    Sum,
    Max,
}

/// Extended quasimetric on `ℝ × P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductQuasimetric {
    pub mode: QuasimetricMode,
    pub kind: DistanceKind,
}

impl Default for ProductQuasimetric {
    fn default() -> Self {
        Self { mode: QuasimetricMode::Sum, kind: DistanceKind::Geodesic }
    }
}

impl ProductQuasimetric {
    /// Combines an `ℝ` offset with a poset distance.
    pub fn combine<S: Scalar>(&self, dr: S, dp: S) -> S {
        match self.mode {
            QuasimetricMode::Sum => dr.abs() + dp,
            QuasimetricMode::Max => dr.abs().max(dp),
        }
    }

    /// `d((r, p), (s, q))` for element indices `p`, `q`.
    pub fn distance<S: Scalar>(&self, poset: &WeightedPoset<S>, r: S, p: usize, s: S, q: usize) -> S {
        self.combine(s - r, poset.distance_idx(p, q, self.kind))
    }
}

/// A finite grid `Z` together with a poset; the product `Z × P`.
#[derive(Debug, Clone, PartialEq)]
pub struct Discretization<S> {
    pub z: Vec<S>,
    pub poset: WeightedPoset<S>,
}

impl<S: Scalar> Discretization<S> {
    pub fn new(z: Vec<S>, poset: WeightedPoset<S>) -> Result<Self> {
        if z.is_empty() {
            return invalid("grid is empty");
        }
        if z.iter().any(|v| !v.is_finite()) || z.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("grid must be finite and strictly increasing");
        }
        Ok(Self { z, poset })
    }

    /// `n` evenly spaced values from `lo` to `hi`.
    pub fn uniform(lo: S, hi: S, n: usize, poset: WeightedPoset<S>) -> Result<Self> {
        Self::new(uniform_grid(lo, hi, n)?, poset)
    }
}

/// `n ≥ 2` evenly spaced values with exact endpoints.
pub fn uniform_grid<S: Scalar>(lo: S, hi: S, n: usize) -> Result<Vec<S>> {
    if n < 2 || !(hi > lo) {
        return invalid("uniform grid needs n >= 2 and hi > lo");
    }
    let steps = S::from_usize(n - 1).expect("grid size");
    Ok((0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * S::from_usize(i).expect("grid index") / steps
            }
        })
        .collect())
}

/// Where paths begin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathStart {
    /// Maximal chains of `Z × P` from the minimal element at `min Z`.
    Bottom,
    /// Paths entering any nonempty element from `r = −∞`.
    AnyElement,
}

/// One vertical move of a path: the edge is crossed at `r = z[z_index]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing<S> {
    pub z_index: usize,
    pub alpha: S,
    /// 0-based label added.
    pub label: usize,
    pub weight: S,
}

/// A monotone path in `Z × P`: it sits at `elements[i]` for grid indices
/// between crossings `i − 1` and `i`, and ends at the top element.
#[derive(Debug, Clone, PartialEq)]
pub struct PosetPath<S> {
    pub start: PathStart,
    pub elements: Vec<LabelSet>,
    pub crossings: Vec<Crossing<S>>,
}

impl<S: Scalar> PosetPath<S> {
    /// Grid index range `[lo, hi]` of segment `i`.
    pub fn segment_range(&self, i: usize, grid_len: usize) -> (usize, usize) {
        let lo = if i == 0 { 0 } else { self.crossings[i - 1].z_index };
        let hi = if i == self.crossings.len() { grid_len - 1 } else { self.crossings[i].z_index };
        (lo, hi)
    }

    /// Whether the path passes through `(z[t], mask)`.
    pub fn contains(&self, t: usize, mask: LabelSet, grid_len: usize) -> bool {
        (0..self.elements.len()).any(|i| {
            let (lo, hi) = self.segment_range(i, grid_len);
            self.elements[i] == mask && lo <= t && t <= hi
        })
    }
}

/// Number of paths `enumerate_paths` would return (without a filter).
pub fn path_count<S: Scalar>(disc: &Discretization<S>, start: PathStart) -> f64 {
    let poset = &disc.poset;
    let z = disc.z.len() as f64;
    let starts = start_elements(poset, start);
    let mut total = 0.0;
    for s in starts {
        let chains = chains_to_top(poset, s);
        for c in chains {
            total += multiset_count(z, c.len());
        }
    }
    total
}

fn multiset_count(z: f64, m: usize) -> f64 {
    // C(z + m - 1, m)
    let mut c = 1.0;
    for i in 0..m {
        c = c * (z + i as f64) / (i as f64 + 1.0);
    }
    c.round()
}

fn start_elements<S: Scalar>(poset: &WeightedPoset<S>, start: PathStart) -> Vec<usize> {
    match start {
        PathStart::Bottom => vec![0],
        PathStart::AnyElement => {
            (0..poset.len()).filter(|&i| poset.elements()[i] != 0).collect()
        }
    }
}

fn chains_to_top<S: Scalar>(poset: &WeightedPoset<S>, from: usize) -> Vec<Vec<Edge<S>>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec<S: Scalar>(
        poset: &WeightedPoset<S>,
        at: usize,
        cur: &mut Vec<Edge<S>>,
        out: &mut Vec<Vec<Edge<S>>>,
    ) {
        let mut any = false;
        for e in poset.upper_covers(at) {
            any = true;
            cur.push(*e);
            rec(poset, e.to, cur, out);
            cur.pop();
        }
        if !any {
            out.push(cur.clone());
        }
    }
    rec(poset, from, &mut cur, &mut out);
    out
}

/// All paths of the given kind, optionally only those through grid point
/// `(z[t], mask)`. Fails if the unfiltered count exceeds `budget`.
pub fn enumerate_paths<S: Scalar>(
    disc: &Discretization<S>,
    start: PathStart,
    through: Option<(usize, LabelSet)>,
    budget: f64,
) -> Result<Vec<PosetPath<S>>> {
    let needed = path_count(disc, start);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    if let Some((t, mask)) = through {
        if t >= disc.z.len() || disc.poset.index_of(mask).is_none() {
            return invalid("grid point outside the discretization");
        }
    }
    let poset = &disc.poset;
    let nz = disc.z.len();
    let mut out = Vec::new();
    for s in start_elements(poset, start) {
        for chain in chains_to_top(poset, s) {
            let mut elements = vec![poset.elements()[s]];
            elements.extend(chain.iter().map(|e| poset.elements()[e.to]));
            let mut idx = vec![0usize; chain.len()];
            loop {
                let path = PosetPath {
                    start,
                    elements: elements.clone(),
                    crossings: chain
                        .iter()
                        .zip(&idx)
                        .map(|(e, &t)| Crossing {
                            z_index: t,
                            alpha: disc.z[t],
                            label: e.label,
                            weight: e.weight,
                        })
                        .collect(),
                };
                if through.map_or(true, |(t, m)| path.contains(t, m, nz)) {
                    out.push(path);
                }
                if !next_nondecreasing(&mut idx, nz) {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Advances a nondecreasing index tuple over `[0, n)` in lex order.
fn next_nondecreasing(idx: &mut [usize], n: usize) -> bool {
    let m = idx.len();
    for i in (0..m).rev() {
        if idx[i] + 1 < n {
            let v = idx[i] + 1;
            for x in &mut idx[i..] {
                *x = v;
            }
            return true;
        }
    }
    false
}
