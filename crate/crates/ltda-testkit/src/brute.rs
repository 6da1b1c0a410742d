//! Brute-force homology ranks and landscapes.
//!
//! Ranks of `H_j(VR_s(A)) → H_j(VR_t(B))` are computed as
//! `rank [Z_j(K) | B_j(L)] − rank B_j(L)` with explicit cycle and boundary
//! bases over GF(2). Landscapes scan every comparable pair of poset elements
//! and every pair of cells between consecutive critical values.

use std::collections::HashMap;

use ltda::poset::DistanceKind;
use ltda::{Error, LabelSet, Poset, Result, Space};

/// Largest complex the rank oracle will build.
pub const BRUTE_SIMPLEX_LIMIT: usize = 20_000;

type Bits = Vec<u64>;

fn bits(n: usize) -> Bits {
    vec![0; n.div_ceil(64).max(1)]
}

fn flip(b: &mut Bits, i: usize) {
    b[i / 64] ^= 1 << (i % 64);
}

fn xor_into(dst: &mut Bits, src: &Bits) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d ^= s;
    }
}

fn lowest(b: &Bits) -> Option<usize> {
    b.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// Rank over GF(2) of a list of vectors.
fn rank_of(vectors: &[Bits]) -> usize {
    let mut pivots: HashMap<usize, Bits> = HashMap::new();
    for v in vectors {
        let mut v = v.clone();
        while let Some(p) = lowest(&v) {
            match pivots.get(&p) {
                Some(row) => xor_into(&mut v, row),
                None => {
                    pivots.insert(p, v);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Simplices of dimension `dim` of `VR_r` on `points`, as sorted vertex lists.
fn rips_simplices(space: &Space, points: &[usize], r: f64, dim: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if r < 0.0 {
        return Ok(out);
    }
    let mut pts = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    let mut stack: Vec<usize> = Vec::new();
    fn grow(
        space: &Space,
        pts: &[usize],
        r: f64,
        size: usize,
        from: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if stack.len() == size {
            out.push(stack.clone());
            return;
        }
        for i in from..pts.len() {
            let v = pts[i];
            if stack.iter().all(|&u| space.dist(u, v) <= r) {
                stack.push(v);
                grow(space, pts, r, size, i + 1, stack, out);
                stack.pop();
            }
        }
    }
    grow(space, &pts, r, dim + 1, 0, &mut stack, &mut out);
    if out.len() > BRUTE_SIMPLEX_LIMIT {
        return Err(Error::InvalidArgument(format!("brute oracle limit: {} simplices", out.len())));
    }
    Ok(out)
}

fn faces(s: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..s.len()).map(move |i| {
        let mut f = s.to_vec();
        f.remove(i);
        f
    })
}

/// Cycle basis of `C_dim(K)`, written in the coordinates of `target`.
fn cycles(k_dim: &[Vec<usize>], target: &HashMap<Vec<usize>, usize>, dim: usize) -> Vec<Bits> {
    let nt = target.len();
    let embed = |i: usize| -> Bits {
        let mut b = bits(nt);
        flip(&mut b, target[&k_dim[i]]);
        b
    };
    if dim == 0 {
        return (0..k_dim.len()).map(embed).collect();
    }
    let mut face_index: HashMap<Vec<usize>, usize> = HashMap::new();
    for s in k_dim {
        for f in faces(s) {
            let n = face_index.len();
            face_index.entry(f).or_insert(n);
        }
    }
    let nf = face_index.len();
    // Column reduction keeping track of the combination of simplices.
    let mut pivots: HashMap<usize, (Bits, Bits)> = HashMap::new();
    let mut out = Vec::new();
    for (i, s) in k_dim.iter().enumerate() {
        let mut bd = bits(nf);
        for f in faces(s) {
            flip(&mut bd, face_index[&f]);
        }
        let mut combo = bits(k_dim.len());
        flip(&mut combo, i);
        loop {
            match lowest(&bd) {
                None => {
                    let mut c = bits(nt);
                    for (j, sj) in k_dim.iter().enumerate() {
                        if combo[j / 64] >> (j % 64) & 1 == 1 {
                            flip(&mut c, target[sj]);
                        }
                    }
                    out.push(c);
                    break;
                }
                Some(p) => match pivots.get(&p) {
                    Some((pb, pc)) => {
                        xor_into(&mut bd, pb);
                        xor_into(&mut combo, pc);
                    }
                    None => {
                        pivots.insert(p, (bd, combo));
                        break;
                    }
                },
            }
        }
    }
    out
}

/// Rank of `H_degree(VR_s(A)) → H_degree(VR_t(B))` for point sets `A ⊆ B`
/// and `s ≤ t`, with no diameter cap.
pub fn brute_rank(space: &Space, a: &[usize], s: f64, b: &[usize], t: f64, degree: usize) -> Result<usize> {
    if s > t || a.iter().any(|p| !b.contains(p)) {
        return Err(Error::InvalidArgument("rank needs A ⊆ B and s ≤ t".into()));
    }
    let k = rips_simplices(space, a, s, degree)?;
    if k.is_empty() {
        return Ok(0);
    }
    let l = rips_simplices(space, b, t, degree)?;
    let l_up = rips_simplices(space, b, t, degree + 1)?;
    let index: HashMap<Vec<usize>, usize> = l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let boundaries: Vec<Bits> = l_up
        .iter()
        .map(|s| {
            let mut v = bits(l.len());
            for f in faces(s) {
                flip(&mut v, index[&f]);
            }
            v
        })
        .collect();
    let z = cycles(&k, &index, degree);
    let rb = rank_of(&boundaries);
    let mut all = z;
    all.extend(boundaries);
    Ok(rank_of(&all) - rb)
}

/// Number of connected components of `VR_r` on `points`, by union-find.
pub fn components_at(space: &Space, points: &[usize], r: f64) -> usize {
    if r < 0.0 {
        return 0;
    }
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let mut count = n;
    for i in 0..n {
        for j in i + 1..n {
            if space.dist(points[i], points[j]) <= r {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                    count -= 1;
                }
            }
        }
    }
    count
}

/// Landscape values `[level − 1][grid index][element index]` for labeled
/// Vietoris-Rips homology, found by exhaustive search over bad pairs. Spaces
/// at `r` not below the diameter of their union are treated as zero, as are
/// values at the empty label set.
pub fn brute_generalized_landscape(
    space: &Space,
    poset: &Poset,
    degree: usize,
    z: &[f64],
    n_max: usize,
) -> Result<Vec<Vec<Vec<f64>>>> {
    let els = poset.elements().to_vec();
    let n = space.n_points();
    let mut crit: Vec<f64> = vec![0.0];
    for i in 0..n {
        for j in i + 1..n {
            crit.push(space.dist(i, j));
        }
    }
    crit.sort_by(|a, b| a.partial_cmp(b).unwrap());
    crit.dedup();
    // Cell u is [lo, hi); cell 0 is (−∞, 0).
    let mut cells: Vec<(f64, f64)> = vec![(f64::NEG_INFINITY, 0.0)];
    for (u, &c) in crit.iter().enumerate() {
        cells.push((c, crit.get(u + 1).copied().unwrap_or(f64::INFINITY)));
    }

    let unions: Vec<Vec<usize>> = els.iter().map(|&m| space.union(m)).collect();
    let diams: Vec<f64> = unions.iter().map(|u| space.diam_of(u)).collect();
    let mut cache: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    let mut beta = |p: usize, u: usize, q: usize, v: usize| -> Result<usize> {
        if let Some(&b) = cache.get(&(p, u, q, v)) {
            return Ok(b);
        }
        let (s, t) = (cells[u].0, cells[v].0);
        let b = if u == 0 || s >= diams[p] || t >= diams[q] {
            0
        } else {
            brute_rank(space, &unions[p], s, &unions[q], t, degree)?
        };
        cache.insert((p, u, q, v), b);
        Ok(b)
    };

    let mut out = vec![vec![vec![0.0; els.len()]; z.len()]; n_max];
    for (x, &xm) in els.iter().enumerate() {
        if xm == 0 {
            continue;
        }
        let below: Vec<(usize, f64)> = comparable(poset, &els, xm, true)?;
        let above: Vec<(usize, f64)> = comparable(poset, &els, xm, false)?;
        for (ti, &r) in z.iter().enumerate() {
            let mut best = vec![f64::INFINITY; n_max];
            for &(p, dp) in &below {
                for &(q, dq) in &above {
                    for (u, &(lo_u, hi_u)) in cells.iter().enumerate() {
                        if lo_u > r {
                            break;
                        }
                        let da = r - hi_u.min(r) + dp;
                        for (v, &(lo_v, hi_v)) in cells.iter().enumerate().skip(u) {
                            if hi_v <= r {
                                continue;
                            }
                            let db = lo_v.max(r) - r + dq;
                            let eps = da.max(db);
                            let b = beta(p, u, q, v)?;
                            for (lvl, slot) in best.iter_mut().enumerate() {
                                if b < lvl + 1 && eps < *slot {
                                    *slot = eps;
                                }
                            }
                        }
                    }
                }
            }
            for (lvl, v) in best.into_iter().enumerate() {
                out[lvl][ti][x] = v;
            }
        }
    }
    Ok(out)
}

/// Nonempty elements below (or above) `x` with their geodesic distance.
fn comparable(poset: &Poset, els: &[LabelSet], x: LabelSet, below: bool) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::new();
    for (i, &m) in els.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let (lo, hi) = if below { (m, x) } else { (x, m) };
        if poset.leq(lo, hi) {
            out.push((i, poset.distance(lo, hi, DistanceKind::Geodesic)?));
        }
    }
    Ok(out)
}
