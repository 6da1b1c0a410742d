//! Hand-built modules for small two-class examples, checked against the
//! closed forms and against the point-cloud pipeline.

use ltda::gf2::BitMatrix;
use ltda::poset::{uniform_grid, ProductQuasimetric};
use ltda::{
    generalized_landscape, oracle_generalized_landscape, Error, LandscapeOptions, Module, Poset, Space,
};

fn z(hi: f64) -> Vec<f64> {
    uniform_grid(0.0, hi, 101).unwrap()
}

fn tent(r: f64, lo: f64, hi: f64) -> f64 {
    if r < lo || r >= hi {
        0.0
    } else {
        (r - lo).min(hi - r)
    }
}

// Edges of the two-label power set: ∅→{1}, ∅→{2}, {1}→X, {2}→X.
fn zero_verticals(dims: &[Vec<usize>], cells: usize) -> Vec<Vec<BitMatrix>> {
    [(0, 1), (0, 2), (1, 3), (2, 3)]
        .iter()
        .map(|&(a, b)| (0..cells).map(|t| BitMatrix::zeros(dims[b][t], dims[a][t])).collect())
        .collect()
}

fn zero_horizontals(dims: &[Vec<usize>], cells: usize) -> Vec<Vec<BitMatrix>> {
    dims.iter().map(|d| (0..cells - 1).map(|t| BitMatrix::zeros(d[t + 1], d[t])).collect()).collect()
}

fn check_against_pipeline(m: &Module, space: &Space, degree: usize, grid: &[f64], expect: impl Fn(usize, f64, u32) -> f64) {
    let oracle = oracle_generalized_landscape(m, ProductQuasimetric::default(), grid, 3).unwrap();
    let gl = generalized_landscape(space, m.poset(), degree, Some(grid.to_vec()), Some(3), &LandscapeOptions::default())
        .unwrap();
    for n in 1..=3 {
        for (t, &r) in grid.iter().enumerate() {
            for (e, &mask) in m.poset().elements().iter().enumerate().skip(1) {
                let want = expect(n, r, mask);
                assert!((oracle[n - 1][t][e] - want).abs() < 1e-9, "oracle n={n} r={r} {mask}");
                assert!((gl.value(n, t, mask) - want).abs() < 1e-9, "pipeline n={n} r={r} {mask}");
            }
        }
    }
}

#[test]
fn one_point_classes() {
    let d = 0.25;
    let poset = Poset::power(2).unwrap().weight_constant(d).unwrap();
    // Cells [0, 1) and [1, ∞); the classes are single points, so their
    // spaces vanish under the diameter convention.
    let dims = vec![vec![0, 0], vec![0, 0], vec![0, 0], vec![2, 0]];
    let m = Module::new(poset, vec![0.0, 1.0], dims.clone(), zero_horizontals(&dims, 2), zero_verticals(&dims, 2))
        .unwrap();
    let space = Space::from_point_cloud(vec![vec![0.0, 0.0], vec![0.0, 1.0]], vec![vec![0], vec![1]]).unwrap();
    check_against_pipeline(&m, &space, 0, &z(1.0), |n, r, mask| match (n, mask) {
        (1 | 2, 0b11) => tent(r, 0.0, 1.0).min(d),
        _ => 0.0,
    });
}

#[test]
fn square_cycle() {
    let d = 1.0;
    let poset = Poset::power(2).unwrap().weight_constant(d).unwrap();
    let s2 = 2f64.sqrt();
    let dims = vec![vec![0, 0], vec![0, 0], vec![0, 0], vec![1, 0]];
    let m = Module::new(poset, vec![1.0, s2], dims.clone(), zero_horizontals(&dims, 2), zero_verticals(&dims, 2))
        .unwrap();
    let pts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
    let space = Space::from_point_cloud(pts, vec![vec![0, 1], vec![2, 3]]).unwrap();
    check_against_pipeline(&m, &space, 1, &z(s2), |n, r, mask| match (n, mask) {
        (1, 0b11) => tent(r, 1.0, s2).min(d),
        _ => 0.0,
    });
}

fn rows(r: &[&[u8]]) -> BitMatrix {
    BitMatrix::from_rows(&r.iter().map(|x| x.to_vec()).collect::<Vec<_>>())
}

#[test]
fn three_point_classes_diagram_does_not_commute() {
    // The class spaces vanish on [1, √2) while the union does not, yet the
    // union's step at 1 is nonzero on the image of the class: the square
    // after the third cell cannot commute.
    let poset = Poset::power(2).unwrap().weight_constant(0.1).unwrap();
    let s2 = 2f64.sqrt();
    let class = vec![3, 2, 1, 0, 0];
    let dims = vec![vec![0; 5], class.clone(), class, vec![6, 4, 2, 1, 0]];
    let v04 = rows(&[&[1, 1, 0], &[0, 0, 1]]);
    let v06 = rows(&[&[1, 1]]);
    let class_h = vec![v04, v06, BitMatrix::zeros(0, 1), BitMatrix::zeros(0, 0)];
    let union_h = vec![
        rows(&[&[1, 1, 0, 0, 0, 0], &[0, 0, 1, 0, 0, 0], &[0, 0, 0, 1, 1, 0], &[0, 0, 0, 0, 0, 1]]),
        rows(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]),
        rows(&[&[1, 1]]),
        BitMatrix::zeros(0, 1),
    ];
    let empty_h = vec![BitMatrix::zeros(0, 0); 4];
    let embed = |offset: usize, n: usize, big: usize| {
        let mut m = BitMatrix::zeros(big, n);
        for i in 0..n {
            m.set(offset + i, i, true);
        }
        m
    };
    let first: Vec<BitMatrix> =
        vec![embed(0, 3, 6), embed(0, 2, 4), embed(0, 1, 2), BitMatrix::zeros(1, 0), BitMatrix::zeros(0, 0)];
    let second: Vec<BitMatrix> =
        vec![embed(3, 3, 6), embed(2, 2, 4), embed(1, 1, 2), BitMatrix::zeros(1, 0), BitMatrix::zeros(0, 0)];
    let from_empty = |i: usize| -> Vec<BitMatrix> { (0..5).map(|t| BitMatrix::zeros(dims[i][t], 0)).collect() };
    let vertical = vec![from_empty(1), from_empty(2), first, second];
    let r = Module::new(
        poset,
        vec![0.0, 0.4, 0.6, 1.0, s2],
        dims.clone(),
        vec![empty_h, class_h.clone(), class_h, union_h],
        vertical,
    );
    assert!(matches!(r, Err(Error::InconsistentModule(_))), "{r:?}");
}
