//! Vietoris-Rips filtrations and the gap-inserted complexes of poset paths.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{invalid, Result};
use crate::metric_space::LabeledMetricSpace;
use crate::poset::PosetPath;
use crate::{LabelSet, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Simplex<S> {
    /// Sorted point indices of the underlying space.
    pub vertices: Vec<usize>,
    pub value: S,
}

impl<S> Simplex<S> {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Simplices sorted by `(value, dimension, vertices)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex<S> {
    pub simplices: Vec<Simplex<S>>,
    /// Largest simplex dimension that was generated.
    pub max_dim: usize,
    /// Value at which essential classes are closed off, if any.
    pub cap: Option<S>,
}

impl<S: Scalar> FilteredComplex<S> {
    pub fn new(mut simplices: Vec<Simplex<S>>, max_dim: usize, cap: Option<S>) -> Self {
        simplices.sort_by(|a, b| cmp_simplex(a, b));
        Self { simplices, max_dim, cap }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Checks closure under faces and face-monotone values.
    pub fn is_valid(&self) -> bool {
        let index: HashMap<&[usize], S> =
            self.simplices.iter().map(|s| (s.vertices.as_slice(), s.value)).collect();
        self.simplices.iter().all(|s| {
            if s.vertices.len() < 2 {
                return true;
            }
            (0..s.vertices.len()).all(|drop| {
                let face: Vec<usize> =
                    s.vertices.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                matches!(index.get(face.as_slice()), Some(&fv) if fv <= s.value)
            })
        })
    }
}

pub(crate) fn cmp_simplex<S: Scalar>(a: &Simplex<S>, b: &Simplex<S>) -> Ordering {
    a.value
        .partial_cmp(&b.value)
        .unwrap_or(Ordering::Equal)
        .then(a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| a.vertices.cmp(&b.vertices))
}

/// All simplices of dimension at most `max_dim` on `points`, valued by diameter.
fn cliques<S: Scalar>(
    lms: &LabeledMetricSpace<S>,
    points: &[usize],
    max_dim: usize,
    r_max: S,
) -> Vec<Simplex<S>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(max_dim + 1);
    fn rec<S: Scalar>(
        lms: &LabeledMetricSpace<S>,
        points: &[usize],
        start: usize,
        value: S,
        max_dim: usize,
        r_max: S,
        cur: &mut Vec<usize>,
        out: &mut Vec<Simplex<S>>,
    ) {
        for a in start..points.len() {
            let p = points[a];
            let v = cur.iter().fold(value, |m, &q| m.max(lms.dist(p, q)));
            if v > r_max {
                continue;
            }
            cur.push(p);
            out.push(Simplex { vertices: cur.clone(), value: v });
            if cur.len() <= max_dim {
                rec(lms, points, a + 1, v, max_dim, r_max, cur, out);
            }
            cur.pop();
        }
    }
    rec(lms, points, 0, S::zero(), max_dim, r_max, &mut cur, &mut out);
    out
}

/// Vietoris-Rips filtration of `∪_{i∈mask} X_i` with simplices of dimension
/// at most `max_dim` and value at most `r_max` (default: no truncation).
/// Essential classes are capped at the union's diameter.
pub fn vietoris_rips<S: Scalar>(
    lms: &LabeledMetricSpace<S>,
    mask: LabelSet,
    max_dim: usize,
    r_max: Option<S>,
) -> Result<FilteredComplex<S>> {
    let points = lms.union(mask);
    if points.is_empty() {
        return invalid("vietoris-rips of an empty label set");
    }
    vietoris_rips_points(lms, &points, max_dim, r_max)
}

/// Vietoris-Rips filtration on an explicit sorted point list.
pub fn vietoris_rips_points<S: Scalar>(
    lms: &LabeledMetricSpace<S>,
    points: &[usize],
    max_dim: usize,
    r_max: Option<S>,
) -> Result<FilteredComplex<S>> {
    if points.is_empty() {
        return invalid("vietoris-rips of an empty point set");
    }
    if let Some(r) = r_max {
        if !(r >= S::zero()) {
            return invalid("r_max must be nonnegative");
        }
    }
    let r_max = r_max.unwrap_or(S::infinity());
    let simplices = cliques(lms, points, max_dim, r_max);
    Ok(FilteredComplex::new(simplices, max_dim, Some(lms.diam_of(points))))
}

/// One crossing of a Hasse edge along a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gap<S> {
    pub alpha: S,
    /// 0-based label added.
    pub label: usize,
    pub weight: S,
}

/// Crossing triples of a path, in path order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GapAnnotation<S> {
    pub gaps: Vec<Gap<S>>,
}

impl<S: Scalar> GapAnnotation<S> {
    pub fn from_path(path: &PosetPath<S>) -> Self {
        Self {
            gaps: path
                .crossings
                .iter()
                .map(|c| Gap { alpha: c.alpha, label: c.label, weight: c.weight })
                .collect(),
        }
    }

    /// Accumulated weights `W_0 = 0, W_i = w_1 + … + w_i`.
    pub fn prefix_weights(&self) -> Vec<S> {
        let mut w = Vec::with_capacity(self.gaps.len() + 1);
        let mut acc = S::zero();
        w.push(acc);
        for g in &self.gaps {
            acc = acc + g.weight;
            w.push(acc);
        }
        w
    }

    /// Filtration value at which the path arrives at each new union:
    /// `α_i + W_i` for crossing `i` (0-based here).
    pub fn arrivals(&self) -> Vec<S> {
        let w = self.prefix_weights();
        self.gaps.iter().enumerate().map(|(i, g)| g.alpha + w[i + 1]).collect()
    }
}

/// The filtration position range of one path segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment<S> {
    pub element: LabelSet,
    /// Total weight crossed before this segment.
    pub shift: S,
    /// Homology vanishes on the closed interval `[cap, end]` when `cap <= end`.
    pub cap: S,
    /// Position where the path leaves this segment (`+∞` for the last).
    pub end: S,
}

/// A path complex with its crossings and segment bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct PathComplex<S> {
    pub complex: FilteredComplex<S>,
    pub gaps: GapAnnotation<S>,
    pub segments: Vec<Segment<S>>,
}

impl<S: Scalar> PathComplex<S> {
    /// Filtration position of grid value `r` on segment `i`.
    pub fn position(&self, segment: usize, r: S) -> S {
        r + self.segments[segment].shift
    }

    /// Closed intervals of positions where the path module is zero.
    pub fn dead_zones(&self) -> Vec<(S, S)> {
        self.segments
            .iter()
            .filter(|s| s.cap <= s.end)
            .map(|s| (s.cap, s.end))
            .collect()
    }
}

/// Builds the single filtration of a poset path. Each Hasse edge crossed at
/// `α_i` with weight `w_i` opens a gap of length `w_i`: simplices of the new
/// union with value below `α_i` enter on arrival at `α_i + W_i`, and simplices
/// with value `v` otherwise sit at `v` shifted by the weights crossed before `v`.
pub fn path_complex<S: Scalar>(
    lms: &LabeledMetricSpace<S>,
    path: &PosetPath<S>,
    max_dim: usize,
) -> Result<PathComplex<S>> {
    let m = path.crossings.len();
    if path.elements.len() != m + 1 {
        return invalid("path elements and crossings do not line up");
    }
    if path.crossings.windows(2).any(|w| w[0].alpha > w[1].alpha) {
        return invalid("crossing values must be nondecreasing");
    }
    let gaps = GapAnnotation::from_path(path);
    let w = gaps.prefix_weights();
    let arrivals = gaps.arrivals();
    let alpha = |i: usize| if i == 0 { S::neg_infinity() } else { path.crossings[i - 1].alpha };

    let top = *path.elements.last().expect("nonempty path");
    let points = lms.union(top);
    if points.is_empty() {
        return invalid("path ends at the empty set");
    }
    let mut first_seg = vec![usize::MAX; lms.n_points()];
    for (i, &e) in path.elements.iter().enumerate().rev() {
        for p in lms.union(e) {
            first_seg[p] = i;
        }
    }

    let mut simplices = cliques(lms, &points, max_dim, S::infinity());
    for s in &mut simplices {
        let i = s.vertices.iter().map(|&p| first_seg[p]).max().expect("nonempty simplex");
        let v = s.value;
        s.value = if i > 0 && v < alpha(i) {
            arrivals[i - 1]
        } else {
            let mut j = i;
            while j < m && path.crossings[j].alpha < v {
                j += 1;
            }
            v + w[j]
        };
    }
    let complex = FilteredComplex::new(simplices, max_dim, None);
    if cfg!(debug_assertions) {
        assert!(complex.is_valid(), "path complex is not a filtration");
    }

    let segments = (0..=m)
        .map(|i| {
            let e = path.elements[i];
            let diam = if e == 0 { S::neg_infinity() } else { lms.diam_mask(e) };
            Segment {
                element: e,
                shift: w[i],
                cap: diam.max(alpha(i)) + w[i],
                end: if i == m { S::infinity() } else { path.crossings[i].alpha + w[i] },
            }
        })
        .collect();
    Ok(PathComplex { complex, gaps, segments })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{Crossing, PathStart};

    fn line(xs: &[f64], labels: Vec<Vec<usize>>) -> LabeledMetricSpace<f64> {
        LabeledMetricSpace::from_point_cloud(xs.iter().map(|&x| vec![x]).collect(), labels).unwrap()
    }

    #[test]
    fn two_points() {
        let s = line(&[0.0, 1.0], vec![vec![0, 1]]);
        let c = vietoris_rips(&s, 1, 1, None).unwrap();
        let vals: Vec<f64> = c.simplices.iter().map(|s| s.value).collect();
        assert_eq!(vals, vec![0.0, 0.0, 1.0]);
        assert!(c.is_valid());
    }

    #[test]
    fn square_truncated() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        let s = LabeledMetricSpace::from_point_cloud(pts, vec![vec![0, 1, 2, 3]]).unwrap();
        let c = vietoris_rips(&s, 1, 1, Some(1.0)).unwrap();
        assert_eq!(c.simplices.iter().filter(|s| s.dim() == 1).count(), 4);
    }

    #[test]
    fn single_gap() {
        let s = line(&[0.0, 1.0], vec![vec![0], vec![1]]);
        let path = PosetPath {
            start: PathStart::AnyElement,
            elements: vec![0b01, 0b11],
            crossings: vec![Crossing { z_index: 0, alpha: 0.0, label: 1, weight: 10.0 }],
        };
        let pc = path_complex(&s, &path, 1).unwrap();
        let vals: Vec<(Vec<usize>, f64)> =
            pc.complex.simplices.iter().map(|s| (s.vertices.clone(), s.value)).collect();
        assert_eq!(vals, vec![(vec![0], 0.0), (vec![1], 0.0 + 10.0), (vec![0, 1], 11.0)]);
        assert_eq!(pc.segments[0].cap, 0.0);
        assert_eq!(pc.segments[0].end, 0.0);
        assert_eq!(pc.segments[1].cap, 11.0);
    }

    #[test]
    fn zero_weights_match_final_union() {
        let s = line(&[0.0, 0.4, 1.0, 3.0], vec![vec![0, 1, 2], vec![3]]);
        let path = PosetPath {
            start: PathStart::AnyElement,
            elements: vec![0b01, 0b11],
            crossings: vec![Crossing { z_index: 0, alpha: 0.5, label: 1, weight: 0.0 }],
        };
        let pc = path_complex(&s, &path, 1).unwrap();
        for simplex in &pc.complex.simplices {
            if simplex.vertices.contains(&3) && simplex.vertices.len() == 1 {
                assert_eq!(simplex.value, 0.5);
            }
        }
        let vr = vietoris_rips(&s, 0b11, 1, None).unwrap();
        assert_eq!(vr.len(), pc.complex.len());
    }
}
