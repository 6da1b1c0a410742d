//! Worked examples with closed-form landscapes.

use ltda::poset::uniform_grid;
use ltda::{LabelSet, Poset, Space};

/// Closed-form value at `(level, r, element)`.
pub type Formula = Box<dyn Fn(usize, f64, LabelSet) -> f64 + Send + Sync>;

pub struct GoldenCase {
    pub name: &'static str,
    /// Where the formula comes from, in words.
    pub source: &'static str,
    pub space: Space,
    pub poset: Poset,
    pub degree: usize,
    pub n_max: usize,
    pub z: Vec<f64>,
    pub formula: Formula,
}

impl std::fmt::Debug for GoldenCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GoldenCase").field("name", &self.name).field("degree", &self.degree).finish()
    }
}

const GRID: usize = 101;

fn tent(r: f64, lo: f64, hi: f64) -> f64 {
    if r < lo || r >= hi {
        0.0
    } else {
        (r - lo).min(hi - r)
    }
}

fn space(points: Vec<[f64; 2]>, labels: Vec<Vec<usize>>) -> Space {
    Space::from_point_cloud(points.into_iter().map(|p| p.to_vec()).collect(), labels).expect("valid example")
}

fn grid_for(s: &Space) -> Vec<f64> {
    uniform_grid(0.0, s.diameter(), GRID).expect("positive diameter")
}

/// Two one-point classes, two two-point classes and two three-point classes,
/// each with constant edge weights.
pub fn golden_cases() -> Vec<GoldenCase> {
    let mut out = Vec::new();

    let d = 0.25;
    let s = space(vec![[0.0, 0.0], [0.0, 1.0]], vec![vec![0], vec![1]]);
    out.push(GoldenCase {
        name: "one-point classes, degree 0",
        source: "hand calculation: the top slice is a tent on [0,1) clipped at d",
        z: grid_for(&s),
        space: s,
        poset: Poset::power(2).unwrap().weight_constant(d).unwrap(),
        degree: 0,
        n_max: 3,
        formula: Box::new(move |n, r, m| match (n, m) {
            (1 | 2, 0b11) => tent(r, 0.0, 1.0).min(d),
            _ => 0.0,
        }),
    });

    let d = 1.0;
    let s = space(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]], vec![vec![0, 1], vec![2, 3]]);
    out.push(GoldenCase {
        name: "two-point classes, degree 1",
        source: "hand calculation: the square's cycle on [1, sqrt 2) appears only in the union",
        z: grid_for(&s),
        space: s,
        poset: Poset::power(2).unwrap().weight_constant(d).unwrap(),
        degree: 1,
        n_max: 2,
        formula: Box::new(move |n, r, m| match (n, m) {
            (1, 0b11) => tent(r, 1.0, 2f64.sqrt()).min(d),
            _ => 0.0,
        }),
    });

    let d = 0.1;
    let s = space(
        vec![[0.0, 0.0], [0.4, 0.0], [1.0, 0.0], [0.0, 1.0], [0.4, 1.0], [1.0, 1.0]],
        vec![vec![0, 1, 2], vec![3, 4, 5]],
    );
    out.push(GoldenCase {
        name: "three-point classes, degree 0",
        source: "hand calculation: levels 1-6 of the union slice and 1-3 of the class slices",
        z: grid_for(&s),
        space: s,
        poset: Poset::power(2).unwrap().weight_constant(d).unwrap(),
        degree: 0,
        n_max: 6,
        formula: Box::new(move |n, r, m| three_point_classes(n, r, m, d)),
    });
    out
}

fn three_point_classes(n: usize, r: f64, m: LabelSet, d: f64) -> f64 {
    if m != 0b11 {
        return match n {
            1 => tent(r, 0.0, 1.0),
            2 => tent(r, 0.0, 0.6),
            3 => tent(r, 0.0, 0.4),
            _ => 0.0,
        };
    }
    if r < 0.0 {
        return 0.0;
    }
    match n {
        1 if r < 2f64.sqrt() => (2f64.sqrt() - r).min(r),
        2 if r < 0.6 => (1.0 - r).min(r).min(d.max(0.6 - r)),
        2 if r < 1.0 => (1.0 - r).min(d),
        3 if r < 0.4 => (0.6 - r).min(r).min(d.max(0.4 - r)),
        3 if r < 0.6 => (0.6 - r).min(d),
        4 if r < 0.6 => d.min(0.6 - r).min(r),
        5 | 6 if r < 0.4 => d.min(0.4 - r).min(r),
        _ => 0.0,
    }
}

/// Three collinear points `{0, 1}` and `{1/2}` with edge weight 1/4. Returns
/// the space, the poset and the expected level-2 degree-0 slice at the first
/// label.
pub fn three_collinear_points() -> (Space, Poset, fn(f64) -> f64) {
    let s = Space::from_point_cloud(vec![vec![0.0], vec![1.0], vec![0.5]], vec![vec![0, 1], vec![2]]).unwrap();
    let poset = Poset::power(2).unwrap().weight_constant(0.25).unwrap();
    fn expected(x: f64) -> f64 {
        if x < 0.0 || x > 1.0 {
            0.0
        } else if x <= 0.375 {
            x
        } else if x <= 0.5 {
            0.75 - x
        } else if x <= 0.75 {
            0.25
        } else {
            1.0 - x
        }
    }
    (s, poset, expected)
}
