//! Barcodes over the two-element field, bar bookkeeping for path complexes,
//! exact single-parameter landscapes and explicit finite modules.

use std::collections::HashMap;

use crate::error::{invalid, Error, Result};
use crate::filtration::{FilteredComplex, GapAnnotation, PathComplex};
use crate::gf2::BitMatrix;
use crate::poset::{PosetShape, ProductQuasimetric, WeightedPoset};
use crate::{LabelSet, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bar<S> {
    pub birth: S,
    pub death: S,
}

/// Intervals `[birth, death)` of one homology degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Barcode<S> {
    pub degree: usize,
    pub bars: Vec<Bar<S>>,
}

impl<S: Scalar> Barcode<S> {
    pub fn new(degree: usize, mut bars: Vec<Bar<S>>) -> Self {
        bars.retain(|b| b.birth < b.death);
        bars.sort_by(|a, b| {
            a.birth.partial_cmp(&b.birth).unwrap().then(a.death.partial_cmp(&b.death).unwrap())
        });
        Self { degree, bars }
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Number of bars containing both `a` and `b` (`a <= b`).
    pub fn rank(&self, a: S, b: S) -> usize {
        self.bars.iter().filter(|bar| bar.birth <= a && b < bar.death).count()
    }
}

fn add_columns(a: &mut Vec<usize>, b: &[usize]) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    *a = out;
}

/// Reduces the columns of simplices of dimension `dim`, returning
/// `(low, column)` pairs. Columns in `skip` are not reduced.
fn reduce_dim<S: Scalar>(
    fc: &FilteredComplex<S>,
    index: &HashMap<&[usize], usize>,
    dim: usize,
    skip: &[bool],
) -> (Vec<(usize, usize)>, Vec<usize>) {
    let mut pivot: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut pairs = Vec::new();
    let mut zero = Vec::new();
    for (c, s) in fc.simplices.iter().enumerate() {
        if s.dim() != dim || skip[c] {
            continue;
        }
        let mut col: Vec<usize> = if dim == 0 {
            Vec::new()
        } else {
            let mut col: Vec<usize> = (0..s.vertices.len())
                .map(|drop| {
                    let face: Vec<usize> = s
                        .vertices
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &v)| v)
                        .collect();
                    index[face.as_slice()]
                })
                .collect();
            col.sort_unstable();
            col
        };
        while let Some(&low) = col.last() {
            match pivot.get(&low) {
                Some(other) => add_columns(&mut col, other),
                None => break,
            }
        }
        match col.last() {
            Some(&low) => {
                pairs.push((low, c));
                pivot.insert(low, col);
            }
            None => zero.push(c),
        }
    }
    (pairs, zero)
}

/// Persistence intervals in degree `j`; essential classes get death `+∞`.
pub fn raw_intervals<S: Scalar>(fc: &FilteredComplex<S>, degree: usize) -> Result<Vec<Bar<S>>> {
    if degree >= fc.max_dim {
        return Err(Error::DegreeTooHigh { degree, max_dim: fc.max_dim });
    }
    let index: HashMap<&[usize], usize> =
        fc.simplices.iter().enumerate().map(|(i, s)| (s.vertices.as_slice(), i)).collect();
    let none = vec![false; fc.len()];
    let (pairs, _) = reduce_dim(fc, &index, degree + 1, &none);
    let mut killed = vec![false; fc.len()];
    let mut bars = Vec::new();
    for &(low, c) in &pairs {
        killed[low] = true;
        bars.push(Bar { birth: fc.simplices[low].value, death: fc.simplices[c].value });
    }
    // Killed columns are cycles already; clearing skips them.
    let (_, zero) = reduce_dim(fc, &index, degree, &killed);
    for c in zero {
        bars.push(Bar { birth: fc.simplices[c].value, death: S::infinity() });
    }
    Ok(bars)
}

/// Barcode of a filtered complex in degree `j`, with essential classes
/// closed off at the complex's cap (the diameter for Vietoris-Rips).
pub fn barcode<S: Scalar>(fc: &FilteredComplex<S>, degree: usize) -> Result<Barcode<S>> {
    let mut bars = raw_intervals(fc, degree)?;
    if let Some(cap) = fc.cap {
        for b in &mut bars {
            b.death = b.death.min(cap);
        }
    }
    if bars.iter().any(|b| !b.death.is_finite()) {
        return invalid("complex has essential classes and no cap");
    }
    Ok(Barcode::new(degree, bars))
}

/// Pulls every bar born exactly on arrival at a new union back to the
/// start of the edge just crossed. Other bars are unchanged.
pub fn extend_bars<S: Scalar>(bc: &Barcode<S>, gaps: &GapAnnotation<S>) -> Barcode<S> {
    let arrivals = gaps.arrivals();
    let w = gaps.prefix_weights();
    let bars = bc
        .bars
        .iter()
        .map(|b| match arrivals.iter().position(|&a| a == b.birth) {
            Some(i) => Bar { birth: gaps.gaps[i].alpha + w[i], death: b.death },
            None => *b,
        })
        .collect();
    Barcode::new(bc.degree, bars)
}

/// Removes the closed intervals `zones` from every bar.
pub fn chop_bars<S: Scalar>(bars: &[Bar<S>], zones: &[(S, S)]) -> Vec<Bar<S>> {
    let mut cur: Vec<Bar<S>> = bars.to_vec();
    for &(c, e) in zones {
        let mut next = Vec::with_capacity(cur.len());
        for b in cur {
            if b.birth < c {
                next.push(Bar { birth: b.birth, death: b.death.min(c) });
            }
            if b.death > e {
                next.push(Bar { birth: b.birth.max(e), death: b.death });
            }
        }
        cur = next;
    }
    cur.retain(|b| b.birth < b.death);
    cur
}

/// Barcode of a path module: raw intervals, bar extension, then removal of
/// the regions where the module vanishes.
pub fn path_barcode<S: Scalar>(pc: &PathComplex<S>, degree: usize) -> Result<Barcode<S>> {
    let raw = Barcode { degree, bars: raw_intervals(&pc.complex, degree)? };
    let extended = extend_bars(&raw, &pc.gaps);
    let bars = chop_bars(&extended.bars, &pc.dead_zones());
    if bars.iter().any(|b| !b.death.is_finite()) {
        return invalid("path module has an unbounded bar");
    }
    Ok(Barcode::new(degree, bars))
}

/// Piecewise-linear landscape `λ(n, r)`, stored as vertices per level.
#[derive(Debug, Clone, PartialEq)]
pub struct Landscape1D<S> {
    levels: Vec<Vec<(S, S)>>,
}

impl<S: Scalar> Landscape1D<S> {
    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    /// Vertices of level `n` (1-based).
    pub fn vertices(&self, n: usize) -> &[(S, S)] {
        self.levels.get(n.wrapping_sub(1)).map_or(&[], |v| v.as_slice())
    }

    /// `λ(n, r)`; zero outside the support and for levels past the last.
    pub fn value(&self, n: usize, r: S) -> S {
        interpolate_vertices(self.vertices(n), r)
    }
}

pub(crate) fn interpolate_vertices<S: Scalar>(v: &[(S, S)], r: S) -> S {
    if v.is_empty() || r < v[0].0 || r > v[v.len() - 1].0 {
        return S::zero();
    }
    let i = v.partition_point(|&(x, _)| x <= r);
    if i == 0 {
        return v[0].1;
    }
    let (x0, y0) = v[i - 1];
    if x0 == r || i == v.len() {
        return y0;
    }
    let (x1, y1) = v[i];
    y0 + (y1 - y0) * (r - x0) / (x1 - x0)
}

/// Exact landscape of a finite barcode with `n_max` levels (default: one per
/// bar). Breakpoints can only sit at births, deaths and midpoints `(b_i + d_j)/2`.
pub fn landscape_1d<S: Scalar>(bc: &Barcode<S>, n_max: Option<usize>) -> Result<Landscape1D<S>> {
    if bc.bars.iter().any(|b| !b.birth.is_finite() || !b.death.is_finite()) {
        return invalid("landscape needs a finite barcode");
    }
    let n_max = n_max.unwrap_or(bc.bars.len());
    let half = S::lit(0.5);
    let mut xs = Vec::new();
    for bi in &bc.bars {
        xs.push(bi.birth);
        xs.push(bi.death);
        for bj in &bc.bars {
            if bi.birth < bj.death {
                xs.push((bi.birth + bj.death) * half);
            }
        }
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup();
    let mut levels = vec![Vec::with_capacity(xs.len()); n_max];
    let mut tents = Vec::with_capacity(bc.bars.len());
    for &x in &xs {
        tents.clear();
        tents.extend(bc.bars.iter().map(|b| (x - b.birth).min(b.death - x).max(S::zero())));
        tents.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (n, level) in levels.iter_mut().enumerate() {
            level.push((x, tents.get(n).copied().unwrap_or(S::zero())));
        }
    }
    for level in &mut levels {
        simplify(level);
    }
    Ok(Landscape1D { levels })
}

/// Drops interior vertices on straight runs, keeping exact stored values.
fn simplify<S: Scalar>(v: &mut Vec<(S, S)>) {
    if v.iter().all(|&(_, y)| y == S::zero()) {
        v.clear();
        return;
    }
    let mut out: Vec<(S, S)> = Vec::with_capacity(v.len());
    for &p in v.iter() {
        while out.len() >= 2 {
            let (a, b) = (out[out.len() - 2], out[out.len() - 1]);
            let flat_zero = a.1 == S::zero() && b.1 == S::zero() && p.1 == S::zero();
            if flat_zero {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    *v = out;
}

/// A finite `(ℝ × P)`-module given by dimensions on cells `[c_t, c_{t+1})`
/// and matrices for every cell step and every Hasse edge. Zero below `c_0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitModule<S> {
    poset: WeightedPoset<S>,
    breaks: Vec<S>,
    dims: Vec<Vec<usize>>,
    horizontal: Vec<Vec<BitMatrix>>,
    vertical: Vec<Vec<BitMatrix>>,
}

impl<S: Scalar> ExplicitModule<S> {
    /// `dims[e][t]` is the dimension at element `e` on cell `t`;
    /// `horizontal[e][t]` maps cell `t` to `t + 1`; `vertical[edge][t]` is the
    /// edge map on cell `t`, edges indexed as in [`WeightedPoset::edges`].
    pub fn new(
        poset: WeightedPoset<S>,
        breaks: Vec<S>,
        dims: Vec<Vec<usize>>,
        horizontal: Vec<Vec<BitMatrix>>,
        vertical: Vec<Vec<BitMatrix>>,
    ) -> Result<Self> {
        let cells = breaks.len();
        if cells == 0 || breaks.windows(2).any(|w| w[0] >= w[1]) {
            return invalid("breakpoints must be nonempty and increasing");
        }
        if dims.len() != poset.len() || dims.iter().any(|d| d.len() != cells) {
            return invalid("dimension table has the wrong shape");
        }
        if horizontal.len() != poset.len() || vertical.len() != poset.edges().len() {
            return invalid("map tables have the wrong shape");
        }
        for (e, hs) in horizontal.iter().enumerate() {
            if hs.len() != cells - 1 {
                return invalid("one horizontal map per cell step is required");
            }
            for (t, h) in hs.iter().enumerate() {
                if h.rows() != dims[e][t + 1] || h.cols() != dims[e][t] {
                    return invalid(format!("horizontal map at element {e}, cell {t} has the wrong shape"));
                }
            }
        }
        for (i, vs) in vertical.iter().enumerate() {
            let edge = poset.edges()[i];
            if vs.len() != cells {
                return invalid("one vertical map per cell is required");
            }
            for (t, v) in vs.iter().enumerate() {
                if v.rows() != dims[edge.to][t] || v.cols() != dims[edge.from][t] {
                    return invalid(format!("vertical map on edge {i}, cell {t} has the wrong shape"));
                }
            }
        }
        let m = Self { poset, breaks, dims, horizontal, vertical };
        m.check_commutes()?;
        Ok(m)
    }

    /// The zero module on the given cells.
    pub fn zero(poset: WeightedPoset<S>, breaks: Vec<S>) -> Result<Self> {
        let cells = breaks.len();
        let n = poset.len();
        let ne = poset.edges().len();
        Self::new(
            poset,
            breaks,
            vec![vec![0; cells]; n],
            vec![vec![BitMatrix::zeros(0, 0); cells.saturating_sub(1)]; n],
            vec![vec![BitMatrix::zeros(0, 0); cells]; ne],
        )
    }

    /// The single-parameter module of a barcode, placed on the element `{1}`
    /// of the one-label power set poset.
    pub fn from_barcode(poset: WeightedPoset<S>, bc: &Barcode<S>) -> Result<Self> {
        if poset.k() != 1 || poset.shape() != PosetShape::Power {
            return invalid("barcode modules live on the one-label poset");
        }
        let mut breaks: Vec<S> = bc.bars.iter().flat_map(|b| [b.birth, b.death]).collect();
        if breaks.iter().any(|v| !v.is_finite()) {
            return invalid("barcode must be finite");
        }
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup();
        if breaks.is_empty() {
            return Self::zero(poset, vec![S::zero()]);
        }
        let alive = |t: usize| -> Vec<usize> {
            (0..bc.bars.len())
                .filter(|&i| bc.bars[i].birth <= breaks[t] && breaks[t] < bc.bars[i].death)
                .collect()
        };
        let cells = breaks.len();
        let basis: Vec<Vec<usize>> = (0..cells).map(alive).collect();
        let mut horizontal = Vec::new();
        for t in 0..cells - 1 {
            let mut h = BitMatrix::zeros(basis[t + 1].len(), basis[t].len());
            for (c, bar) in basis[t].iter().enumerate() {
                if let Some(r) = basis[t + 1].iter().position(|b| b == bar) {
                    h.set(r, c, true);
                }
            }
            horizontal.push(h);
        }
        let dims = vec![vec![0; cells], basis.iter().map(|b| b.len()).collect()];
        let vertical = vec![(0..cells).map(|t| BitMatrix::zeros(basis[t].len(), 0)).collect()];
        let empty = vec![BitMatrix::zeros(0, 0); cells - 1];
        Self::new(poset, breaks, dims, vec![empty, horizontal], vertical)
    }

    pub fn poset(&self) -> &WeightedPoset<S> {
        &self.poset
    }

    pub fn breaks(&self) -> &[S] {
        &self.breaks
    }

    /// Cell containing `r`, or `None` below the first break.
    pub fn cell(&self, r: S) -> Option<usize> {
        let i = self.breaks.partition_point(|&c| c <= r);
        i.checked_sub(1)
    }

    fn edge_index(&self, from: usize, to: usize) -> usize {
        self.poset.edges().iter().position(|e| e.from == from && e.to == to).expect("hasse edge")
    }

    /// Vertical map from element `a` to `b` on cell `t` along the chain that
    /// adds labels in increasing order.
    fn vertical_map(&self, a: usize, b: usize, t: usize) -> BitMatrix {
        let els = self.poset.elements();
        let mut cur = a;
        let mut m = BitMatrix::identity(self.dims[a][t]);
        while cur != b {
            let step = self
                .poset
                .upper_covers(cur)
                .find(|e| self.poset.leq(els[e.to], els[b]))
                .expect("comparable elements");
            let i = self.edge_index(cur, step.to);
            m = self.vertical[i][t].mul(&m);
            cur = step.to;
        }
        m
    }

    fn horizontal_map(&self, e: usize, s: usize, t: usize) -> BitMatrix {
        let mut m = BitMatrix::identity(self.dims[e][s]);
        for c in s..t {
            m = self.horizontal[e][c].mul(&m);
        }
        m
    }

    /// Rank of the map from `(cell s, a)` to `(cell t, b)`; `None` cells are
    /// below the first break, where the module vanishes.
    pub fn rank(&self, a: usize, s: Option<usize>, b: usize, t: Option<usize>) -> usize {
        let (Some(s), Some(t)) = (s, t) else { return 0 };
        if self.dims[a][s] == 0 || self.dims[b][t] == 0 {
            return 0;
        }
        let v = self.vertical_map(a, b, s);
        self.horizontal_map(b, s, t).mul(&v).rank()
    }

    fn check_commutes(&self) -> Result<()> {
        let cells = self.breaks.len();
        for (i, e) in self.poset.edges().iter().enumerate() {
            for t in 0..cells - 1 {
                let left = self.horizontal[e.to][t].mul(&self.vertical[i][t]);
                let right = self.vertical[i][t + 1].mul(&self.horizontal[e.from][t]);
                if left != right {
                    return Err(Error::InconsistentModule(format!(
                        "edge {} -> {} does not commute with the step after cell {t}",
                        e.from, e.to
                    )));
                }
            }
        }
        if self.poset.shape() == PosetShape::Power {
            let els = self.poset.elements();
            for p in 0..self.poset.len() {
                let covers: Vec<_> = self.poset.upper_covers(p).copied().collect();
                for (x, ea) in covers.iter().enumerate() {
                    for eb in &covers[x + 1..] {
                        let top = (els[ea.to] | els[eb.to]) as usize;
                        for t in 0..cells {
                            let l = self.vertical[self.edge_index(ea.to, top)][t]
                                .mul(&self.vertical[self.edge_index(p, ea.to)][t]);
                            let r = self.vertical[self.edge_index(eb.to, top)][t]
                                .mul(&self.vertical[self.edge_index(p, eb.to)][t]);
                            if l != r {
                                return Err(Error::InconsistentModule(format!(
                                    "square above element {p} does not commute on cell {t}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Landscape values of an explicit module at `(z, p)` for every grid value and
/// poset element, as `[level − 1][z index][element index]`. The empty label
/// set is ignored as an endpoint and its values are zero.
///
/// For each pair `p ≼ x ≼ q` and each pair of cells, the nearest endpoints in
/// those cells give the smallest `ε` at which a map of rank below `n` enters
/// the ball; the landscape is the least such `ε`.
pub fn oracle_generalized_landscape<S: Scalar>(
    m: &ExplicitModule<S>,
    qm: ProductQuasimetric,
    z: &[S],
    n_max: usize,
) -> Result<Vec<Vec<Vec<S>>>> {
    let poset = &m.poset;
    let els = poset.elements();
    let cells = m.breaks.len();
    let mut out = vec![vec![vec![S::zero(); els.len()]; z.len()]; n_max];
    let cell_lo = |u: Option<usize>| u.map_or(S::neg_infinity(), |u| m.breaks[u]);
    let cell_hi = |u: Option<usize>| match u {
        None => m.breaks[0],
        Some(u) if u + 1 < cells => m.breaks[u + 1],
        Some(_) => S::infinity(),
    };
    let all_cells: Vec<Option<usize>> =
        std::iter::once(None).chain((0..cells).map(Some)).collect();
    for (zi, &r) in z.iter().enumerate() {
        let rc = m.cell(r);
        let lower: Vec<Option<usize>> = all_cells.iter().copied().filter(|&u| u <= rc).collect();
        let upper: Vec<Option<usize>> = all_cells.iter().copied().filter(|&v| v >= rc).collect();
        for x in 0..els.len() {
            if els[x] == 0 {
                continue;
            }
            let mut best = vec![S::infinity(); n_max];
            for p in 0..els.len() {
                let dp = poset.distance_idx(p, x, qm.kind);
                if els[p] == 0 || !dp.is_finite() {
                    continue;
                }
                for q in 0..els.len() {
                    let dq = poset.distance_idx(x, q, qm.kind);
                    if els[q] == 0 || !dq.is_finite() {
                        continue;
                    }
                    for &u in &lower {
                        let da = qm.combine(r - cell_hi(u).min(r), dp);
                        for &v in &upper {
                            let db = qm.combine(cell_lo(v).max(r) - r, dq);
                            let eps = da.max(db);
                            let rank = m.rank(p, u, q, v);
                            for (n, b) in best.iter_mut().enumerate() {
                                if rank < n + 1 && eps < *b {
                                    *b = eps;
                                }
                            }
                        }
                    }
                }
            }
            for n in 0..n_max {
                out[n][zi][x] = best[n];
            }
        }
    }
    Ok(out)
}

/// Label set of an element index, for callers of the oracle.
pub fn element_mask<S: Scalar>(m: &ExplicitModule<S>, i: usize) -> LabelSet {
    m.poset.elements()[i]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::vietoris_rips;
    use crate::metric_space::LabeledMetricSpace;

    fn bars(v: &[(f64, f64)]) -> Barcode<f64> {
        Barcode::new(0, v.iter().map(|&(birth, death)| Bar { birth, death }).collect())
    }

    #[test]
    fn collinear_three() {
        let s = LabeledMetricSpace::from_point_cloud(
            vec![vec![0.0], vec![0.4], vec![1.0]],
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        let bc = barcode(&vietoris_rips(&s, 1, 1, None).unwrap(), 0).unwrap();
        let expect: [(f64, f64); 3] = [(0.0, 0.4), (0.0, 0.6), (0.0, 1.0)];
        assert_eq!(bc.len(), 3);
        for (b, e) in bc.bars.iter().zip(expect) {
            assert_eq!(b.birth, e.0);
            assert!((b.death - e.1).abs() < 1e-12);
        }
    }

    #[test]
    fn square_loop() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        let s = LabeledMetricSpace::from_point_cloud(pts, vec![vec![0, 1, 2, 3]]).unwrap();
        let bc = barcode(&vietoris_rips(&s, 1, 2, None).unwrap(), 1).unwrap();
        assert_eq!(bc.bars, vec![Bar { birth: 1.0, death: 2f64.sqrt() }]);
        assert!(barcode(&vietoris_rips(&s, 1, 1, None).unwrap(), 1).is_err());
    }

    #[test]
    fn extension_rule() {
        let gaps = GapAnnotation {
            gaps: vec![crate::filtration::Gap { alpha: 0.5, label: 1, weight: 0.2 }],
        };
        let out = extend_bars(&bars(&[(0.7, 1.3), (0.71, 1.3)]), &gaps);
        assert_eq!(out, bars(&[(0.5, 1.3), (0.71, 1.3)]));
        let none = GapAnnotation::default();
        assert_eq!(extend_bars(&bars(&[(0.7, 1.3)]), &none), bars(&[(0.7, 1.3)]));
    }

    #[test]
    fn chop() {
        let out = chop_bars(&[Bar { birth: 0.0, death: f64::INFINITY }], &[(1.0, 2.0), (3.0, f64::INFINITY)]);
        assert_eq!(out, vec![Bar { birth: 0.0, death: 1.0 }, Bar { birth: 2.0, death: 3.0 }]);
    }

    #[test]
    fn single_tent() {
        let l = landscape_1d(&bars(&[(0.0, 1.0)]), Some(2)).unwrap();
        assert_eq!(l.value(1, 0.25), 0.25);
        assert_eq!(l.value(1, 0.5), 0.5);
        assert_eq!(l.value(1, 0.75), 0.25);
        assert_eq!(l.value(1, 2.0), 0.0);
        assert_eq!(l.value(2, 0.5), 0.0);
    }

    #[test]
    fn nested_tents() {
        let l = landscape_1d(&bars(&[(0.0, 1.0), (0.0, 0.6), (0.0, 0.4)]), None).unwrap();
        for i in 0..=100 {
            let r = i as f64 / 100.0;
            let f = |d: f64| r.min(d - r).max(0.0);
            assert!((l.value(1, r) - f(1.0)).abs() < 1e-12);
            assert!((l.value(2, r) - f(0.6)).abs() < 1e-12);
            assert!((l.value(3, r) - f(0.4)).abs() < 1e-12);
        }
    }

    #[test]
    fn barcode_module_matches_landscape() {
        let bc = bars(&[(0.0, 1.0), (0.2, 0.9), (0.5, 0.7)]);
        let p = WeightedPoset::<f64>::power(1).unwrap();
        let m = ExplicitModule::from_barcode(p, &bc).unwrap();
        let z: Vec<f64> = (0..=50).map(|i| i as f64 / 50.0).collect();
        let out = oracle_generalized_landscape(&m, ProductQuasimetric::default(), &z, 3).unwrap();
        let l = landscape_1d(&bc, Some(3)).unwrap();
        for n in 0..3 {
            for (zi, &r) in z.iter().enumerate() {
                assert!((out[n][zi][1] - l.value(n + 1, r)).abs() < 1e-12, "n={n} r={r}");
            }
        }
    }
}
