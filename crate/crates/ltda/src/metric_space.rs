//! Finite labeled metric spaces.

use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::{LabelSet, Scalar};

/// Additive slack for the triangle inequality check.
pub const TRIANGLE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NoPoints,
    NotSquare { row: usize, len: usize },
    NotFinite { i: usize, j: usize },
    NegativeDistance { i: usize, j: usize },
    NonzeroDiagonal { i: usize },
    Asymmetric { i: usize, j: usize },
    Triangle { i: usize, j: usize, m: usize },
    NoLabels,
    EmptyLabel { label: usize },
    IndexOutOfRange { label: usize, index: usize },
    Uncovered { point: usize },
}

impl fmt::Display for Violation {
    // Labels and points are printed 1-based, matching the file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::NoPoints => write!(f, "the space has no points"),
            Violation::NotSquare { row, len } => {
                write!(f, "distance matrix row {} has length {}", row + 1, len)
            }
            Violation::NotFinite { i, j } => write!(f, "d({}, {}) is not finite", i + 1, j + 1),
            Violation::NegativeDistance { i, j } => {
                write!(f, "d({}, {}) is negative", i + 1, j + 1)
            }
            Violation::NonzeroDiagonal { i } => write!(f, "d({0}, {0}) is not zero", i + 1),
            Violation::Asymmetric { i, j } => {
                write!(f, "d({0}, {1}) differs from d({1}, {0})", i + 1, j + 1)
            }
            Violation::Triangle { i, j, m } => write!(
                f,
                "triangle inequality fails: d({0}, {1}) > d({0}, {2}) + d({2}, {1})",
                i + 1,
                j + 1,
                m + 1
            ),
            Violation::NoLabels => write!(f, "no label sets given"),
            Violation::EmptyLabel { label } => write!(f, "label {} is empty", label + 1),
            Violation::IndexOutOfRange { label, index } => write!(
                f,
                "label {} refers to point {} which does not exist",
                label + 1,
                index + 1
            ),
            Violation::Uncovered { point } => write!(f, "point {} carries no label", point + 1),
        }
    }
}

/// Every violated invariant of a candidate labeled metric space.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks the metric and label invariants without building a space.
pub fn validate_parts<S: Scalar>(dist: &[Vec<S>], labels: &[Vec<usize>]) -> ValidationReport {
    let mut out = Vec::new();
    let n = dist.len();
    if n == 0 {
        out.push(Violation::NoPoints);
    }
    let mut square = true;
    for (row, r) in dist.iter().enumerate() {
        if r.len() != n {
            out.push(Violation::NotSquare { row, len: r.len() });
            square = false;
        }
    }
    if square {
        let mut finite = true;
        for i in 0..n {
            for j in 0..n {
                let d = dist[i][j];
                if !d.is_finite() {
                    out.push(Violation::NotFinite { i, j });
                    finite = false;
                } else if d < S::zero() {
                    out.push(Violation::NegativeDistance { i, j });
                }
            }
            if dist[i][i] != S::zero() && dist[i][i].is_finite() {
                out.push(Violation::NonzeroDiagonal { i });
            }
            for j in i + 1..n {
                if dist[i][j] != dist[j][i] {
                    out.push(Violation::Asymmetric { i, j });
                }
            }
        }
        if finite {
            let slack = S::lit(TRIANGLE_SLACK);
            for i in 0..n {
                for j in i + 1..n {
                    for m in 0..n {
                        if m != i && m != j && dist[i][j] > dist[i][m] + dist[m][j] + slack {
                            out.push(Violation::Triangle { i, j, m });
                        }
                    }
                }
            }
        }
    }
    if labels.is_empty() {
        out.push(Violation::NoLabels);
    }
    let mut covered = vec![false; n];
    for (label, set) in labels.iter().enumerate() {
        if set.is_empty() {
            out.push(Violation::EmptyLabel { label });
        }
        for &index in set {
            if index >= n {
                out.push(Violation::IndexOutOfRange { label, index });
            } else {
                covered[index] = true;
            }
        }
    }
    for (point, c) in covered.iter().enumerate() {
        if !c {
            out.push(Violation::Uncovered { point });
        }
    }
    ValidationReport { violations: out }
}

/// A finite metric space with an ordered cover `(X_1, …, X_k)` by nonempty,
/// possibly overlapping label sets. Points are referenced by index.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledMetricSpace<S> {
    n: usize,
    dist: Vec<S>,
    labels: Vec<Vec<usize>>,
    coords: Option<Vec<Vec<S>>>,
}

impl<S: Scalar> LabeledMetricSpace<S> {
    /// Builds a space from a distance matrix, rejecting any invalid input.
    pub fn from_distance_matrix(dist: Vec<Vec<S>>, labels: Vec<Vec<usize>>) -> Result<Self> {
        let report = validate_parts(&dist, &labels);
        if !report.is_valid() {
            return Err(Error::InvalidSpace(report));
        }
        let n = dist.len();
        Ok(Self {
            n,
            dist: dist.into_iter().flatten().collect(),
            labels: normalize(labels),
            coords: None,
        })
    }

    /// Builds a space from points in `ℝ^d` with Euclidean distances.
    pub fn from_point_cloud(coords: Vec<Vec<S>>, labels: Vec<Vec<usize>>) -> Result<Self> {
        if coords.is_empty() {
            return invalid("point cloud is empty");
        }
        let d = coords[0].len();
        if coords.iter().any(|c| c.len() != d) {
            return invalid("points have different dimensions");
        }
        let n = coords.len();
        let mut dist = vec![vec![S::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let e = euclidean(&coords[i], &coords[j]);
                dist[i][j] = e;
                dist[j][i] = e;
            }
        }
        let mut space = Self::from_distance_matrix(dist, labels)?;
        space.coords = Some(coords);
        Ok(space)
    }

    pub fn n_points(&self) -> usize {
        self.n
    }

    /// Number of labels `k`.
    pub fn k(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> S {
        self.dist[i * self.n + j]
    }

    pub fn distance_matrix(&self) -> Vec<Vec<S>> {
        self.dist.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    /// Points of label `i` (0-based).
    pub fn label(&self, i: usize) -> &[usize] {
        &self.labels[i]
    }

    pub fn coords(&self) -> Option<&[Vec<S>]> {
        self.coords.as_deref()
    }

    /// Always empty for a constructed space; kept for symmetry with
    /// [`validate_parts`].
    pub fn validate(&self) -> ValidationReport {
        validate_parts(&self.distance_matrix(), &self.labels)
    }

    /// Sorted points of `∪_{i∈Q} X_i` for a label bitmask `Q`.
    pub fn union(&self, q: LabelSet) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        for (i, set) in self.labels.iter().enumerate() {
            if q & (1 << i) != 0 {
                for &p in set {
                    seen[p] = true;
                }
            }
        }
        (0..self.n).filter(|&p| seen[p]).collect()
    }

    /// Largest distance within a point set (0 for fewer than two points).
    pub fn diam_of(&self, points: &[usize]) -> S {
        let mut best = S::zero();
        for (a, &i) in points.iter().enumerate() {
            for &j in &points[a + 1..] {
                best = best.max(self.dist(i, j));
            }
        }
        best
    }

    /// Diameter of `∪_{i∈Q} X_i`; `q` holds 1-based label indices.
    pub fn diam_q(&self, q: &[usize]) -> Result<S> {
        Ok(self.diam_of(&self.union(self.mask_of(q)?)))
    }

    /// Diameter of the union selected by a bitmask.
    pub fn diam_mask(&self, q: LabelSet) -> S {
        self.diam_of(&self.union(q))
    }

    pub fn diameter(&self) -> S {
        self.diam_of(&(0..self.n).collect::<Vec<_>>())
    }

    /// Hausdorff distance between two nonempty point sets.
    pub fn hausdorff(&self, a: &[usize], b: &[usize]) -> Result<S> {
        if a.is_empty() || b.is_empty() {
            return invalid("hausdorff distance needs nonempty sets");
        }
        if a.iter().chain(b).any(|&p| p >= self.n) {
            return invalid("point index out of range");
        }
        let directed = |x: &[usize], y: &[usize]| {
            x.iter()
                .map(|&i| y.iter().map(|&j| self.dist(i, j)).fold(S::infinity(), S::min))
                .fold(S::zero(), S::max)
        };
        Ok(directed(a, b).max(directed(b, a)))
    }

    /// The `ℓ`-labeled space on `∪_{i∈I} X_i` with labels `(X_{i_1}, …, X_{i_ℓ})`.
    /// `indices` are 1-based and strictly increasing.
    pub fn restrict(&self, indices: &[usize]) -> Result<Self> {
        if indices.is_empty() {
            return invalid("restriction needs at least one label");
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("restriction indices must be strictly increasing");
        }
        let mask = self.mask_of(indices)?;
        let points = self.union(mask);
        let mut new_index = vec![usize::MAX; self.n];
        for (a, &p) in points.iter().enumerate() {
            new_index[p] = a;
        }
        let dist = points
            .iter()
            .map(|&i| points.iter().map(|&j| self.dist(i, j)).collect())
            .collect();
        let labels = indices
            .iter()
            .map(|&i| self.labels[i - 1].iter().map(|&p| new_index[p]).collect())
            .collect();
        let mut out = Self::from_distance_matrix(dist, labels)?;
        out.coords = self
            .coords
            .as_ref()
            .map(|c| points.iter().map(|&p| c[p].clone()).collect());
        Ok(out)
    }

    /// Relabels by `σ`: the new `i`-th label is `X_{σ(i)}`. `sigma` is 0-based.
    pub fn permute_labels(&self, sigma: &[usize]) -> Result<Self> {
        let k = self.k();
        let mut seen = vec![false; k];
        if sigma.len() != k || sigma.iter().any(|&s| s >= k || std::mem::replace(&mut seen[s], true))
        {
            return invalid("not a permutation of the labels");
        }
        let mut out = self.clone();
        out.labels = sigma.iter().map(|&s| self.labels[s].clone()).collect();
        Ok(out)
    }

    /// The `q`-stabilization with `X̂_i = X_{ρ(i)}`. `rho` is 0-based and must be
    /// onto `[k]`.
    pub fn stabilize(&self, rho: &[usize]) -> Result<Self> {
        let k = self.k();
        if rho.len() < k {
            return invalid("stabilization needs q >= k");
        }
        let mut hit = vec![false; k];
        for &r in rho {
            if r >= k {
                return invalid("stabilization map leaves the label range");
            }
            hit[r] = true;
        }
        if hit.iter().any(|h| !h) {
            return invalid("stabilization map is not surjective");
        }
        let mut out = self.clone();
        out.labels = rho.iter().map(|&r| self.labels[r].clone()).collect();
        Ok(out)
    }

    /// The same labels over a single cover set (the underlying metric space).
    pub fn coarsen(&self) -> Self {
        let mut out = self.clone();
        out.labels = vec![(0..self.n).collect()];
        out
    }

    /// Multiplies every distance by `factor > 0`.
    pub fn scaled(&self, factor: S) -> Result<Self> {
        if !(factor > S::zero()) || !factor.is_finite() {
            return invalid("scale factor must be positive and finite");
        }
        let mut out = self.clone();
        for d in &mut out.dist {
            *d = *d * factor;
        }
        if let Some(c) = &mut out.coords {
            for p in c {
                for x in p {
                    *x = *x * factor;
                }
            }
        }
        Ok(out)
    }

    /// Bitmask for 1-based label indices.
    pub fn mask_of(&self, q: &[usize]) -> Result<LabelSet> {
        if q.is_empty() {
            return invalid("empty label subset");
        }
        let mut mask = 0;
        for &i in q {
            if i == 0 || i > self.k() || i > 32 {
                return invalid(format!("label {i} out of range"));
            }
            mask |= 1 << (i - 1);
        }
        Ok(mask)
    }

    /// Mask selecting every label.
    pub fn full_mask(&self) -> LabelSet {
        full_mask(self.k())
    }
}

pub(crate) fn full_mask(k: usize) -> LabelSet {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

fn normalize(labels: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    labels
        .into_iter()
        .map(|mut l| {
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect()
}

fn euclidean<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| (x - y) * (x - y))
        .fold(S::zero(), |acc, v| acc + v)
        .sqrt()
}

/// A metric space with a coloring map and a finite family of color subsets.
#[derive(Debug, Clone)]
pub struct ChromaticInput<S> {
    pub dist: Vec<Vec<S>>,
    pub colors: Vec<u32>,
    pub sigma: Vec<Vec<u32>>,
}

impl<S: Scalar> ChromaticInput<S> {
    /// The labeled space with `X_j = L^{-1}(σ_j)`.
    pub fn to_labeled(&self) -> Result<LabeledMetricSpace<S>> {
        if self.colors.len() != self.dist.len() {
            return invalid("one color per point is required");
        }
        if self.sigma.is_empty() || self.sigma.iter().any(|s| s.is_empty()) {
            return invalid("color subsets must be nonempty");
        }
        for (p, c) in self.colors.iter().enumerate() {
            if !self.sigma.iter().any(|s| s.contains(c)) {
                return invalid(format!("point {} has color {c} outside every subset", p + 1));
            }
        }
        let labels: Vec<Vec<usize>> = self
            .sigma
            .iter()
            .map(|s| (0..self.colors.len()).filter(|&p| s.contains(&self.colors[p])).collect())
            .collect();
        if let Some(j) = labels.iter().position(|l| l.is_empty()) {
            return invalid(format!("no point has a color in subset {}", j + 1));
        }
        LabeledMetricSpace::from_distance_matrix(self.dist.clone(), labels)
    }
}
