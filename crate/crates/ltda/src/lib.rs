//! Labeled metric spaces, labeled Gromov-Hausdorff distances and generalized
//! persistence landscapes of labeled Vietoris-Rips persistent homology.
//!
//! A labeled metric space is a finite metric space together with an ordered
//! cover by `k` nonempty label sets. Its labeled persistent homology is the
//! module `(r, p) ↦ H_j(VR_r(∪_{i∈p} X_i))` over `ℝ × P`, where `P` is the
//! power set of the labels (or a two-element chain). The landscape of that
//! module is computed exactly on a grid `Z × P` by reducing to single-parameter
//! landscapes along poset paths.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`). The aliases
//! at the crate root fix the scalar to `f64`, which is what the CLI uses.
//!
//! ```
//! use ltda::{Space, Poset, generalized_landscape, LandscapeOptions};
//!
//! let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
//! let space = Space::from_point_cloud(pts, vec![vec![0, 1], vec![2, 3]]).unwrap();
//! let poset = Poset::power(2).unwrap().weight_constant(0.25).unwrap();
//! let opts = LandscapeOptions::default();
//! let gl = generalized_landscape(&space, &poset, 0, None, None, &opts).unwrap();
//! assert!(gl.value(1, 0, 0b11) >= 0.0);
//! ```

pub mod error;
pub mod experiment;
pub mod filtration;
pub mod gf2;
pub mod gh;
pub mod io;
pub mod landscape;
pub mod metric_space;
pub mod persistence;
pub mod poset;
pub mod scalar;

pub use error::{Error, Result};
pub use experiment::{
    compare, pairwise, CompareConfig, CompareResult, PairwiseConfig, PairwiseResult, Weighting,
};
pub use filtration::{path_complex, vietoris_rips, FilteredComplex, Gap, GapAnnotation, PathComplex};
pub use gh::{
    gh_k_exact, gh_lower_bound_diam, gh_perm_exact, gh_plain, gh_stab_exact, GhOptions, GhResult,
    MapPair,
};
pub use landscape::{
    generalized_landscape, image_landscape, mse_distance, plain_landscape, sup_distance,
    GeneralizedLandscape, LandscapeOptions, Slice,
};
pub use metric_space::{ChromaticInput, LabeledMetricSpace, ValidationReport, Violation};
pub use persistence::{
    barcode, extend_bars, landscape_1d, oracle_generalized_landscape, Bar, Barcode, ExplicitModule,
    Landscape1D,
};
pub use poset::{
    Discretization, DistanceKind, PathStart, PosetPath, ProductQuasimetric, QuasimetricMode,
    WeightedPoset,
};
pub use scalar::Scalar;

/// Label subsets are bitmasks: bit `i` set means label `i + 1` is included.
pub type LabelSet = u32;

pub type Space = LabeledMetricSpace<f64>;
pub type Poset = WeightedPoset<f64>;
pub type Complex = FilteredComplex<f64>;
pub type Bars = Barcode<f64>;
pub type Landscape = Landscape1D<f64>;
pub type GenLandscape = GeneralizedLandscape<f64>;
pub type Module = ExplicitModule<f64>;
