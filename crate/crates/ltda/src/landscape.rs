//! Generalized landscapes of labeled Vietoris-Rips persistent homology on a
//! grid `Z × P`, computed as minima of path landscapes.

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::filtration::{path_complex, vietoris_rips};
use crate::metric_space::LabeledMetricSpace;
use crate::persistence::{barcode, landscape_1d, path_barcode, Landscape1D};
use crate::poset::{enumerate_paths, uniform_grid, Discretization, PathStart, WeightedPoset};
use crate::{LabelSet, Scalar};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandscapeOptions {
    /// Grid size used when no grid is given.
    pub grid_size: usize,
    /// Largest number of paths to enumerate.
    pub path_budget: f64,
}

impl Default for LandscapeOptions {
    fn default() -> Self {
        Self { grid_size: 64, path_budget: 1e7 }
    }
}

/// `λ(n, (z, p))` for `n = 1..=n_max`, every grid value and every poset
/// element. Values at the empty label set are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedLandscape<S> {
    pub z: Vec<S>,
    pub poset: WeightedPoset<S>,
    pub degree: usize,
    pub n_max: usize,
    values: Vec<S>,
    provenance: Vec<usize>,
}

impl<S: Scalar> GeneralizedLandscape<S> {
    fn slot(&self, n: usize, t: usize, e: usize) -> usize {
        ((n - 1) * self.z.len() + t) * self.poset.len() + e
    }

    fn element(&self, mask: LabelSet) -> usize {
        self.poset.index_of(mask).unwrap_or_else(|| panic!("{mask:#b} is not a poset element"))
    }

    /// Value at level `n` (1-based), grid index `t` and element `mask`.
    pub fn value(&self, n: usize, t: usize, mask: LabelSet) -> S {
        if n == 0 || n > self.n_max {
            return S::zero();
        }
        self.values[self.slot(n, t, self.element(mask))]
    }

    pub fn value_mut(&mut self, n: usize, t: usize, mask: LabelSet) -> &mut S {
        let i = self.slot(n, t, self.element(mask));
        &mut self.values[i]
    }

    /// Index of the first path attaining the minimum, in enumeration order.
    pub fn provenance(&self, n: usize, t: usize, mask: LabelSet) -> usize {
        self.provenance[self.slot(n, t, self.element(mask))]
    }

    /// Nonempty elements, in poset order.
    pub fn elements(&self) -> Vec<LabelSet> {
        self.poset.elements().iter().copied().filter(|&m| m != 0).collect()
    }

    /// Linear interpolation in `r` at fixed `p`.
    pub fn interpolate(&self, n: usize, r: S, mask: LabelSet) -> Result<S> {
        self.restrict_to(mask)?.value(n, r)
    }

    /// The `r`-slice at element `mask`.
    pub fn restrict_to(&self, mask: LabelSet) -> Result<Slice<S>> {
        if self.poset.index_of(mask).is_none() {
            return invalid(format!("{mask:#b} is not a poset element"));
        }
        let values = (1..=self.n_max)
            .map(|n| (0..self.z.len()).map(|t| self.value(n, t, mask)).collect())
            .collect();
        Ok(Slice { z: self.z.clone(), values })
    }
}

/// A landscape sampled on a grid: `values[n − 1][t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Slice<S> {
    pub z: Vec<S>,
    pub values: Vec<Vec<S>>,
}

impl<S: Scalar> Slice<S> {
    pub fn n_levels(&self) -> usize {
        self.values.len()
    }

    /// Stored value at grid index `t`; zero past the last level.
    pub fn at(&self, n: usize, t: usize) -> S {
        self.values.get(n.wrapping_sub(1)).map_or(S::zero(), |v| v[t])
    }

    /// Linear interpolation between the bracketing grid values.
    pub fn value(&self, n: usize, r: S) -> Result<S> {
        let (lo, hi) = (self.z[0], self.z[self.z.len() - 1]);
        if !(r >= lo && r <= hi) {
            return invalid(format!("r = {r} outside the grid range [{lo}, {hi}]"));
        }
        let i = self.z.partition_point(|&x| x <= r);
        let t = i - 1;
        if self.z[t] == r || t + 1 == self.z.len() {
            return Ok(self.at(n, t));
        }
        let (x0, x1) = (self.z[t], self.z[t + 1]);
        let (y0, y1) = (self.at(n, t), self.at(n, t + 1));
        Ok(y0 + (y1 - y0) * (r - x0) / (x1 - x0))
    }

    /// Samples a 1-D landscape on `z`.
    pub fn from_landscape(l: &Landscape1D<S>, z: &[S], n_max: usize) -> Self {
        let values = (1..=n_max).map(|n| z.iter().map(|&r| l.value(n, r)).collect()).collect();
        Self { z: z.to_vec(), values }
    }
}

fn default_grid<S: Scalar>(lms: &LabeledMetricSpace<S>, size: usize) -> Result<Vec<S>> {
    let d = lms.diameter();
    if d > S::zero() {
        uniform_grid(S::zero(), d, size.max(2))
    } else {
        Ok(vec![S::zero()])
    }
}

/// Computes `λ^D` on `Z × P` for degree-`j` labeled Vietoris-Rips homology.
/// `z` defaults to `grid_size` values over `[0, diam X]` and `n_max` to the
/// number of points.
pub fn generalized_landscape<S: Scalar>(
    lms: &LabeledMetricSpace<S>,
    poset: &WeightedPoset<S>,
    degree: usize,
    z: Option<Vec<S>>,
    n_max: Option<usize>,
    opts: &LandscapeOptions,
) -> Result<GeneralizedLandscape<S>> {
    if poset.k() != lms.k() {
        return Err(Error::LabelCountMismatch(poset.k(), lms.k()));
    }
    let z = match z {
        Some(z) => z,
        None => default_grid(lms, opts.grid_size)?,
    };
    let disc = Discretization::new(z, poset.clone())?;
    let n_max = n_max.unwrap_or_else(|| lms.union(poset.top()).len());
    let paths = enumerate_paths(&disc, PathStart::AnyElement, None, opts.path_budget)?;
    let nz = disc.z.len();

    // Per path: (grid index, element index, values per level).
    let contributions: Vec<Vec<(usize, usize, Vec<S>)>> = paths
        .par_iter()
        .map(|path| {
            let pc = path_complex(lms, path, degree + 1)?;
            let bc = path_barcode(&pc, degree)?;
            let l = landscape_1d(&bc, Some(n_max))?;
            let mut out = Vec::new();
            for (i, &mask) in path.elements.iter().enumerate() {
                let e = poset.index_of(mask).expect("path element");
                let (lo, hi) = path.segment_range(i, nz);
                for t in lo..=hi {
                    let pos = pc.position(i, disc.z[t]);
                    out.push((t, e, (1..=n_max).map(|n| l.value(n, pos)).collect()));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let ne = poset.len();
    let mut values = vec![S::infinity(); n_max * nz * ne];
    let mut provenance = vec![usize::MAX; n_max * nz * ne];
    for (pi, contrib) in contributions.iter().enumerate() {
        for (t, e, vals) in contrib {
            for (n, &v) in vals.iter().enumerate() {
                let s = (n * nz + t) * ne + e;
                if v < values[s] {
                    values[s] = v;
                    provenance[s] = pi;
                }
            }
        }
    }
    for (s, v) in values.iter_mut().enumerate() {
        if poset.elements()[s % ne] == 0 {
            *v = S::zero();
        } else if !v.is_finite() {
            return invalid("grid point not covered by any path");
        }
    }
    Ok(GeneralizedLandscape { z: disc.z, poset: poset.clone(), degree, n_max, values, provenance })
}

/// Single-parameter landscape of `∪_{i∈mask} X_i`, sampled on `z`.
pub fn plain_landscape<S: Scalar>(
    lms: &LabeledMetricSpace<S>,
    mask: LabelSet,
    degree: usize,
    z: &[S],
    n_max: Option<usize>,
) -> Result<Slice<S>> {
    let fc = vietoris_rips(lms, mask, degree + 1, None)?;
    let bc = barcode(&fc, degree)?;
    let n_max = n_max.unwrap_or_else(|| lms.union(mask).len());
    Ok(Slice::from_landscape(&landscape_1d(&bc, Some(n_max))?, z, n_max))
}

/// Landscape of the image of `H_j(VR(X_1)) → H_j(VR(X))` for a space with
/// labels `(X_1, X)`: the chain landscape with zero edge weight at `X_1`.
pub fn image_landscape<S: Scalar>(
    lms: &LabeledMetricSpace<S>,
    degree: usize,
    z: Option<Vec<S>>,
    n_max: Option<usize>,
    opts: &LandscapeOptions,
) -> Result<Slice<S>> {
    if lms.k() != 2 {
        return Err(Error::LabelCountMismatch(2, lms.k()));
    }
    if lms.label(1).len() != lms.n_points() {
        return invalid("second label must be the whole space");
    }
    let poset = WeightedPoset::chain();
    generalized_landscape(lms, &poset, degree, z, n_max, opts)?.restrict_to(0b01)
}

/// Largest absolute difference over levels, grid values and nonempty elements.
pub fn sup_distance<S: Scalar>(a: &GeneralizedLandscape<S>, b: &GeneralizedLandscape<S>) -> Result<S> {
    if a.z != b.z || a.poset.elements() != b.poset.elements() {
        return Err(Error::GridMismatch("landscapes use different grids or posets".into()));
    }
    let mut best = S::zero();
    for n in 1..=a.n_max.max(b.n_max) {
        for t in 0..a.z.len() {
            for m in a.elements() {
                best = best.max((a.value(n, t, m) - b.value(n, t, m)).abs());
            }
        }
    }
    Ok(best)
}

/// Mean over a uniform resampling of the common `r`-range of the squared
/// differences, summed over levels.
pub fn mse_distance<S: Scalar>(a: &Slice<S>, b: &Slice<S>, resample_count: usize) -> Result<S> {
    if resample_count < 2 {
        return invalid("resample count must be at least 2");
    }
    let lo = a.z[0].max(b.z[0]);
    let hi = a.z[a.z.len() - 1].min(b.z[b.z.len() - 1]);
    if !(hi > lo) {
        return invalid("slices have no common range");
    }
    let rs = uniform_grid(lo, hi, resample_count)?;
    let levels = a.n_levels().max(b.n_levels());
    let mut total = S::zero();
    for &r in &rs {
        for n in 1..=levels {
            let d = a.value(n, r)? - b.value(n, r)?;
            total = total + d * d;
        }
    }
    Ok(total / S::from_usize(resample_count).expect("count"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_label_is_plain() {
        let s = LabeledMetricSpace::from_point_cloud(
            vec![vec![0.0], vec![0.4], vec![1.0]],
            vec![vec![0, 1, 2]],
        )
        .unwrap();
        let p = WeightedPoset::power(1).unwrap();
        let gl = generalized_landscape(&s, &p, 0, None, None, &LandscapeOptions::default()).unwrap();
        let plain = plain_landscape(&s, 1, 0, &gl.z, Some(3)).unwrap();
        assert_eq!(gl.restrict_to(1).unwrap(), plain);
    }

    #[test]
    fn slice_interpolation() {
        let s = Slice { z: vec![0.0, 1.0, 2.0], values: vec![vec![0.0, 1.0, 1.0]] };
        assert_eq!(s.value(1, 1.0).unwrap(), 1.0);
        assert_eq!(s.value(1, 0.5).unwrap(), 0.5);
        assert_eq!(s.value(1, 1.5).unwrap(), 1.0);
        assert!(s.value(1, 2.5).is_err());
    }

    #[test]
    fn mse_constant_difference() {
        let a = Slice { z: vec![0.0, 1.0], values: vec![vec![0.0, 0.0]] };
        let b = Slice { z: vec![0.0, 1.0], values: vec![vec![0.5, 0.5]] };
        assert_eq!(mse_distance(&a, &b, 11).unwrap(), 0.25);
        assert_eq!(mse_distance(&a, &a, 11).unwrap(), 0.0);
    }
}
