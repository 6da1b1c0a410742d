//! Seeded instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ltda::Space;

/// `n_points` uniform points in the unit square, split into two labels by
/// index parity. Needs at least two points.
pub fn random_instance(seed: u64, n_points: usize) -> Space {
    assert!(n_points >= 2, "two labels need two points");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<f64>> = (0..n_points).map(|_| vec![rng.gen::<f64>(), rng.gen::<f64>()]).collect();
    let even = (0..n_points).step_by(2).collect();
    let odd = (1..n_points).step_by(2).collect();
    Space::from_point_cloud(pts, vec![even, odd]).unwrap()
}

/// Two independent random two-labeled spaces of 2 to `max_points` points.
pub fn random_registered_pair(seed: u64, max_points: usize) -> (Space, Space) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let a = rng.gen_range(2..=max_points);
    let b = rng.gen_range(2..=max_points);
    (random_instance(rng.gen(), a), random_instance(rng.gen(), b))
}

/// Four points on the unit circle at multiples of a right angle, and four
/// more rotated by an eighth of a turn.
pub fn circle_instance() -> Space {
    use std::f64::consts::FRAC_PI_4;
    let pts = (0..8).map(|i| {
        let a = i as f64 * FRAC_PI_4;
        vec![a.cos(), a.sin()]
    });
    let (mut first, mut second) = (Vec::new(), Vec::new());
    for (i, p) in pts.enumerate() {
        if i % 2 == 0 {
            first.push(p);
        } else {
            second.push(p);
        }
    }
    let labels = vec![(0..4).collect(), (4..8).collect()];
    first.extend(second);
    Space::from_point_cloud(first, labels).unwrap()
}

// Seven-segment strokes on an 8x8 canvas: top, upper left, upper right,
// middle, lower left, lower right, bottom.
const SEGMENTS: [[u8; 7]; 10] = [
    [1, 1, 1, 0, 1, 1, 1],
    [0, 0, 1, 0, 0, 1, 0],
    [1, 0, 1, 1, 1, 0, 1],
    [1, 0, 1, 1, 0, 1, 1],
    [0, 1, 1, 1, 0, 1, 0],
    [1, 1, 0, 1, 0, 1, 1],
    [1, 1, 0, 1, 1, 1, 1],
    [1, 0, 1, 0, 0, 1, 0],
    [1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, 0, 1, 1],
];

fn template(digit: usize) -> [f64; 64] {
    let mut img = [0.0; 64];
    let mut paint = |cells: &mut dyn Iterator<Item = (usize, usize)>| {
        for (row, col) in cells {
            img[row * 8 + col] = 16.0;
        }
    };
    let s = SEGMENTS[digit];
    if s[0] == 1 {
        paint(&mut (2..6).map(|c| (0, c)));
    }
    if s[1] == 1 {
        paint(&mut (0..4).map(|r| (r, 1)));
    }
    if s[2] == 1 {
        paint(&mut (0..4).map(|r| (r, 6)));
    }
    if s[3] == 1 {
        paint(&mut (2..6).map(|c| (4, c)));
    }
    if s[4] == 1 {
        paint(&mut (4..8).map(|r| (r, 1)));
    }
    if s[5] == 1 {
        paint(&mut (4..8).map(|r| (r, 6)));
    }
    if s[6] == 1 {
        paint(&mut (2..6).map(|c| (7, c)));
    }
    img
}

/// Digit-like 8x8 images with intensities in `[0, 16]`: a stroke template
/// per class plus uniform noise and a random one-pixel shift.
pub fn synthetic_digits(seed: u64, per_class: usize, classes: usize) -> Vec<(String, Vec<Vec<f64>>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..classes.min(10))
        .map(|d| {
            let base = template(d);
            let rows = (0..per_class)
                .map(|_| {
                    let shift = rng.gen_range(0..2);
                    (0..64)
                        .map(|i| {
                            let (r, c) = (i / 8, i % 8);
                            let v = if c >= shift { base[r * 8 + c - shift] } else { 0.0 };
                            (v - rng.gen_range(0.0..6.0)).abs().min(16.0)
                        })
                        .collect()
                })
                .collect();
            (d.to_string(), rows)
        })
        .collect()
}
