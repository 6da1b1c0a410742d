//! Class-aware versus class-naive landscape comparisons.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::landscape::{
    generalized_landscape, mse_distance, plain_landscape, LandscapeOptions, Slice,
};
use crate::metric_space::LabeledMetricSpace;
use crate::poset::WeightedPoset;
use crate::Scalar;

/// How Hasse edges are weighted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Weighting<S> {
    Constant(S),
    Diameter,
    /// Fraction of the Hausdorff distance between the unions.
    Hausdorff(S),
}

impl<S: Scalar> Weighting<S> {
    pub fn apply(&self, poset: WeightedPoset<S>, lms: &LabeledMetricSpace<S>) -> Result<WeightedPoset<S>> {
        match *self {
            Weighting::Constant(w) => poset.weight_constant(w),
            Weighting::Diameter => poset.weight_diameter(lms),
            Weighting::Hausdorff(a) => poset.weight_hausdorff_fraction(lms, a),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Weighting::Constant(w) => format!("constant {w}"),
            Weighting::Diameter => "diameter".into(),
            Weighting::Hausdorff(a) => format!("hausdorff {a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareConfig<S> {
    pub degree: usize,
    pub n_max: Option<usize>,
    pub weighting: Weighting<S>,
    pub resample_count: usize,
    pub options: LandscapeOptions,
}

impl<S: Scalar> Default for CompareConfig<S> {
    fn default() -> Self {
        Self {
            degree: 0,
            n_max: None,
            weighting: Weighting::Hausdorff(S::lit(0.1)),
            resample_count: 200,
            options: LandscapeOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompareResult<S> {
    /// Slice of the labeled landscape at the union of all labels.
    pub aware: Slice<S>,
    /// Landscape of the unlabeled union.
    pub naive: Slice<S>,
    pub mse: S,
    /// Largest difference at grid points.
    pub sup: S,
}

/// Compares the union slice of the labeled landscape with the plain landscape
/// of the same points.
pub fn compare<S: Scalar>(lms: &LabeledMetricSpace<S>, cfg: &CompareConfig<S>) -> Result<CompareResult<S>> {
    let poset = cfg.weighting.apply(WeightedPoset::power(lms.k())?, lms)?;
    let gl = generalized_landscape(lms, &poset, cfg.degree, None, cfg.n_max, &cfg.options)?;
    let top = poset.top();
    let aware = gl.restrict_to(top)?;
    let naive = plain_landscape(lms, top, cfg.degree, &gl.z, Some(gl.n_max))?;
    let mse = if aware.z.len() < 2 {
        S::zero()
    } else {
        mse_distance(&aware, &naive, cfg.resample_count)?
    };
    let mut sup = S::zero();
    for n in 1..=gl.n_max {
        for t in 0..gl.z.len() {
            sup = sup.max((aware.at(n, t) - naive.at(n, t)).abs());
        }
    }
    Ok(CompareResult { aware, naive, mse, sup })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseConfig<S> {
    pub compare: CompareConfig<S>,
    pub samples_per_class: usize,
    pub seed: u64,
    /// Class index pairs to evaluate; all pairs when `None`.
    pub pairs: Option<Vec<(usize, usize)>>,
}

/// Symmetric matrix of comparison MSE values between class pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseResult<S> {
    pub names: Vec<String>,
    /// `None` off the evaluated pairs; zero on the diagonal.
    pub matrix: Vec<Vec<Option<S>>>,
    pub seed: u64,
    pub header: Vec<String>,
}

impl<S: Scalar> PairwiseResult<S> {
    /// CSV with `#` comment lines carrying the configuration and seed, then a
    /// header row of class names and one row per class.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for h in &self.header {
            out.push_str(&format!("# {h}\n"));
        }
        out.push_str("class");
        for n in &self.names {
            out.push(',');
            out.push_str(n);
        }
        out.push('\n');
        for (name, row) in self.names.iter().zip(&self.matrix) {
            out.push_str(name);
            for v in row {
                out.push(',');
                if let Some(v) = v {
                    out.push_str(&format!("{v}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Sorted sample of at most `m` row indices, drawn from a generator seeded
/// by `seed` and the class position.
pub fn sample_indices(len: usize, m: usize, seed: u64, class: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(class as u64));
    let mut idx = sample(&mut rng, len, m.min(len)).into_vec();
    idx.sort_unstable();
    idx
}

/// Runs [`compare`] on the two-labeled union of sampled classes for every
/// selected pair.
pub fn pairwise<S: Scalar>(
    classes: &[(String, Vec<Vec<S>>)],
    cfg: &PairwiseConfig<S>,
) -> Result<PairwiseResult<S>> {
    let c = classes.len();
    if c < 2 {
        return invalid("pairwise comparison needs at least two classes");
    }
    if cfg.samples_per_class == 0 {
        return invalid("samples per class must be positive");
    }
    let samples: Vec<Vec<Vec<S>>> = classes
        .iter()
        .enumerate()
        .map(|(i, (_, pts))| {
            sample_indices(pts.len(), cfg.samples_per_class, cfg.seed, i)
                .into_iter()
                .map(|j| pts[j].clone())
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = match &cfg.pairs {
        Some(p) => p.clone(),
        None => (0..c).flat_map(|a| (a + 1..c).map(move |b| (a, b))).collect(),
    };
    let mut matrix = vec![vec![None; c]; c];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = Some(S::zero());
    }
    for &(a, b) in &pairs {
        if a >= c || b >= c || a == b {
            return invalid(format!("bad class pair ({a}, {b})"));
        }
        if matrix[a][b].is_some() {
            continue;
        }
        let mut pts = samples[a].clone();
        pts.extend(samples[b].iter().cloned());
        let na = samples[a].len();
        let labels = vec![(0..na).collect(), (na..pts.len()).collect()];
        let lms = LabeledMetricSpace::from_point_cloud(pts, labels)?;
        let mse = compare(&lms, &cfg.compare)?.mse;
        matrix[a][b] = Some(mse);
        matrix[b][a] = Some(mse);
    }
    let cc = &cfg.compare;
    let header = vec![
        format!("seed={}", cfg.seed),
        format!("samples_per_class={}", cfg.samples_per_class),
        format!("degree={}", cc.degree),
        format!("levels={}", cc.n_max.map_or("auto".into(), |n| n.to_string())),
        format!("grid={}", cc.options.grid_size),
        format!("weighting={}", cc.weighting.describe()),
        format!("resample={}", cc.resample_count),
    ];
    Ok(PairwiseResult {
        names: classes.iter().map(|(n, _)| n.clone()).collect(),
        matrix,
        seed: cfg.seed,
        header,
    })
}
