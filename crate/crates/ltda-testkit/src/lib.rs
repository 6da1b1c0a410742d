//! Reference data and slow, independent oracles for checking `ltda`.
//!
//! Nothing here shares code with the fast pipeline beyond the labeled metric
//! space and poset types: homology is recomputed from scratch by Gaussian
//! elimination on explicit chain bases, and landscapes by scanning every pair
//! of comparable grid cells.

pub mod brute;
pub mod golden;
pub mod instances;

pub use brute::{brute_generalized_landscape, brute_rank, components_at, BRUTE_SIMPLEX_LIMIT};
pub use golden::{three_collinear_points, golden_cases, GoldenCase};
pub use instances::{circle_instance, random_instance, random_registered_pair, synthetic_digits};
