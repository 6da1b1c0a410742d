//! Exact labeled Gromov-Hausdorff distances by branch-and-bound over map
//! tables, and the `Q`-diameter lower bound.

use crate::error::{invalid, Error, Result};
use crate::metric_space::LabeledMetricSpace;
use crate::Scalar;

/// Default cap on the number of map-table combinations.
pub const DEFAULT_BUDGET: f64 = 1e8;

/// Largest `k` for the permuted variant.
pub const MAX_PERM_K: usize = 8;

/// Largest `k` for the diameter lower bound.
pub const MAX_BOUND_K: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GhOptions {
    pub budget: f64,
}

impl Default for GhOptions {
    fn default() -> Self {
        Self { budget: DEFAULT_BUDGET }
    }
}

/// Label-wise maps `φ_i: X_i → Y_i` and `ψ_i: Y_i → X_i`. Entries are point
/// indices of the target space, listed in the order of the source label.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MapPair {
    pub phi: Vec<Vec<usize>>,
    pub psi: Vec<Vec<usize>>,
}

impl MapPair {
    /// `max_{i,j} {dis(φ_i, φ_j), dis(ψ_i, ψ_j), codis(φ_i, ψ_j)}`.
    pub fn objective<S: Scalar>(&self, x: &LabeledMetricSpace<S>, y: &LabeledMetricSpace<S>) -> S {
        let k = self.phi.len();
        let mut best = S::zero();
        for i in 0..k {
            for j in 0..k {
                let (xi, xj, yi, yj) = (x.label(i), x.label(j), y.label(i), y.label(j));
                best = best
                    .max(dis(x, y, xi, &self.phi[i], xj, &self.phi[j]))
                    .max(dis(y, x, yi, &self.psi[i], yj, &self.psi[j]))
                    .max(codis(x, y, xi, &self.phi[i], yj, &self.psi[j]));
            }
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GhResult<S> {
    pub value: S,
    pub witness: MapPair,
    /// Best relabeling for the permuted variant (0-based, `σ(i)`).
    pub sigma: Option<Vec<usize>>,
    /// Label correspondence for the stabilized variant (0-based pairs).
    pub correspondence: Option<Vec<(usize, usize)>>,
}

/// `sup |d_A(a, a') − d_B(f(a), g(a'))|` over `a ∈ dom_f`, `a' ∈ dom_g`.
pub fn dis<S: Scalar>(
    a: &LabeledMetricSpace<S>,
    b: &LabeledMetricSpace<S>,
    dom_f: &[usize],
    img_f: &[usize],
    dom_g: &[usize],
    img_g: &[usize],
) -> S {
    let mut best = S::zero();
    for (p, &fp) in dom_f.iter().zip(img_f) {
        for (q, &gq) in dom_g.iter().zip(img_g) {
            best = best.max((a.dist(*p, *q) - b.dist(fp, gq)).abs());
        }
    }
    best
}

/// `sup |d_X(x, ψ(y)) − d_Y(φ(x), y)|` over `x ∈ dom_phi`, `y ∈ dom_psi`.
pub fn codis<S: Scalar>(
    x: &LabeledMetricSpace<S>,
    y: &LabeledMetricSpace<S>,
    dom_phi: &[usize],
    img_phi: &[usize],
    dom_psi: &[usize],
    img_psi: &[usize],
) -> S {
    let mut best = S::zero();
    for (p, &fp) in dom_phi.iter().zip(img_phi) {
        for (q, &gq) in dom_psi.iter().zip(img_psi) {
            best = best.max((x.dist(*p, gq) - y.dist(fp, *q)).abs());
        }
    }
    best
}

/// One entry of a map table: which space the source point lives in, the
/// source point, and the label whose target set provides the domain.
#[derive(Clone, Copy)]
struct Var {
    forward: bool,
    label: usize,
    src: usize,
}

struct Search<'a, S> {
    x: &'a LabeledMetricSpace<S>,
    y: &'a LabeledMetricSpace<S>,
    vars: Vec<Var>,
    assign: Vec<usize>,
    best: S,
    best_assign: Option<Vec<usize>>,
}

impl<S: Scalar> Search<'_, S> {
    fn domain(&self, v: Var) -> &[usize] {
        if v.forward {
            self.y.label(v.label)
        } else {
            self.x.label(v.label)
        }
    }

    /// Cost of the pair `(u ↦ a, v ↦ b)`.
    fn pair_cost(&self, u: Var, a: usize, v: Var, b: usize) -> S {
        match (u.forward, v.forward) {
            (true, true) => (self.x.dist(u.src, v.src) - self.y.dist(a, b)).abs(),
            (false, false) => (self.x.dist(a, b) - self.y.dist(u.src, v.src)).abs(),
            (true, false) => (self.x.dist(u.src, b) - self.y.dist(a, v.src)).abs(),
            (false, true) => (self.x.dist(v.src, a) - self.y.dist(b, u.src)).abs(),
        }
    }

    fn run(&mut self, depth: usize, running: S) {
        if running >= self.best {
            return;
        }
        if depth == self.vars.len() {
            self.best = running;
            self.best_assign = Some(self.assign.clone());
            return;
        }
        let v = self.vars[depth];
        let dom: Vec<usize> = self.domain(v).to_vec();
        for a in dom {
            let mut cost = running;
            for d in 0..depth {
                cost = cost.max(self.pair_cost(self.vars[d], self.assign[d], v, a));
                if cost >= self.best {
                    break;
                }
            }
            if cost < self.best {
                self.assign[depth] = a;
                self.run(depth + 1, cost);
            }
        }
    }
}

fn table_size<S: Scalar>(x: &LabeledMetricSpace<S>, y: &LabeledMetricSpace<S>) -> f64 {
    (0..x.k())
        .map(|i| {
            let (a, b) = (x.label(i).len() as f64, y.label(i).len() as f64);
            b.powf(a) * a.powf(b)
        })
        .product()
}

/// Exact search with a starting incumbent; returns the doubled objective.
fn solve<S: Scalar>(
    x: &LabeledMetricSpace<S>,
    y: &LabeledMetricSpace<S>,
    incumbent: S,
) -> Option<(S, MapPair)> {
    let k = x.k();
    let mut vars = Vec::new();
    for i in 0..k {
        vars.extend(x.label(i).iter().map(|&src| Var { forward: true, label: i, src }));
    }
    for i in 0..k {
        vars.extend(y.label(i).iter().map(|&src| Var { forward: false, label: i, src }));
    }
    let n = vars.len();
    let mut s = Search { x, y, vars, assign: vec![0; n], best: incumbent, best_assign: None };
    s.run(0, S::zero());
    let assign = s.best_assign?;
    let mut it = assign.into_iter();
    let phi = (0..k).map(|i| it.by_ref().take(x.label(i).len()).collect()).collect();
    let psi = (0..k).map(|i| it.by_ref().take(y.label(i).len()).collect()).collect();
    Some((s.best, MapPair { phi, psi }))
}

fn check_same_k<S: Scalar>(x: &LabeledMetricSpace<S>, y: &LabeledMetricSpace<S>) -> Result<()> {
    if x.k() != y.k() {
        return Err(Error::LabelCountMismatch(x.k(), y.k()));
    }
    Ok(())
}

fn check_budget(needed: f64, opts: &GhOptions) -> Result<()> {
    if needed > opts.budget {
        return Err(Error::BudgetExceeded { needed, budget: opts.budget });
    }
    Ok(())
}

/// `GH_k` for registered labels, with a lexicographically smallest witness.
pub fn gh_k_exact<S: Scalar>(
    x: &LabeledMetricSpace<S>,
    y: &LabeledMetricSpace<S>,
    opts: &GhOptions,
) -> Result<GhResult<S>> {
    check_same_k(x, y)?;
    check_budget(table_size(x, y), opts)?;
    let (v, witness) = solve(x, y, S::infinity()).expect("finite objective");
    Ok(GhResult { value: v * S::lit(0.5), witness, sigma: None, correspondence: None })
}

/// Classical GH distance of the underlying spaces.
pub fn gh_plain<S: Scalar>(
    x: &LabeledMetricSpace<S>,
    y: &LabeledMetricSpace<S>,
    opts: &GhOptions,
) -> Result<GhResult<S>> {
    gh_k_exact(&x.coarsen(), &y.coarsen(), opts)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `min_σ GH_k(σ·X, Y)` over all relabelings, σ in lex order.
pub fn gh_perm_exact<S: Scalar>(
    x: &LabeledMetricSpace<S>,
    y: &LabeledMetricSpace<S>,
    opts: &GhOptions,
) -> Result<GhResult<S>> {
    check_same_k(x, y)?;
    let k = x.k();
    if k > MAX_PERM_K {
        return invalid(format!("permuted variant supports k <= {MAX_PERM_K}"));
    }
    let mut sigma: Vec<usize> = (0..k).collect();
    let mut needed = 0.0;
    loop {
        needed += table_size(&x.permute_labels(&sigma)?, y);
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    check_budget(needed, opts)?;
    let mut sigma: Vec<usize> = (0..k).collect();
    let mut best: Option<(S, MapPair, Vec<usize>)> = None;
    loop {
        let xs = x.permute_labels(&sigma)?;
        let inc = best.as_ref().map_or(S::infinity(), |b| b.0);
        if let Some((v, w)) = solve(&xs, y, inc) {
            best = Some((v, w, sigma.clone()));
        }
        if !next_permutation(&mut sigma) {
            break;
        }
    }
    let (v, witness, s) = best.expect("at least one permutation");
    Ok(GhResult { value: v * S::lit(0.5), witness, sigma: Some(s), correspondence: None })
}

/// Inclusion-minimal relations `D ⊆ [k] × [ℓ]` with both projections onto.
pub fn minimal_label_correspondences(k: usize, l: usize) -> Vec<Vec<(usize, usize)>> {
    let cells: Vec<(usize, usize)> = (0..k).flat_map(|i| (0..l).map(move |j| (i, j))).collect();
    let onto = |mask: u64| {
        let (mut a, mut b) = (0u64, 0u64);
        for (c, &(i, j)) in cells.iter().enumerate() {
            if mask >> c & 1 == 1 {
                a |= 1 << i;
                b |= 1 << j;
            }
        }
        a.count_ones() as usize == k && b.count_ones() as usize == l
    };
    let mut out = Vec::new();
    for mask in 1u64..1 << cells.len() {
        if !onto(mask) {
            continue;
        }
        let minimal = (0..cells.len()).all(|c| mask >> c & 1 == 0 || !onto(mask & !(1 << c)));
        if minimal {
            out.push((0..cells.len()).filter(|&c| mask >> c & 1 == 1).map(|c| cells[c]).collect());
        }
    }
    out
}

/// `GH_st` for a `k`-labeled and an `ℓ`-labeled space. Adding pairs to `D`
/// only adds constraints, so the minimum is attained on a minimal `D`.
pub fn gh_stab_exact<S: Scalar>(
    x: &LabeledMetricSpace<S>,
    y: &LabeledMetricSpace<S>,
    opts: &GhOptions,
) -> Result<GhResult<S>> {
    let (k, l) = (x.k(), y.k());
    if k * l > 16 {
        return invalid("stabilized variant supports k * l <= 16");
    }
    let ds = minimal_label_correspondences(k, l);
    let mut stabs = Vec::with_capacity(ds.len());
    let mut needed = 0.0;
    for d in &ds {
        let xs = x.stabilize(&d.iter().map(|p| p.0).collect::<Vec<_>>())?;
        let ys = y.stabilize(&d.iter().map(|p| p.1).collect::<Vec<_>>())?;
        needed += table_size(&xs, &ys);
        stabs.push((xs, ys));
    }
    check_budget(needed, opts)?;
    let mut best: Option<(S, MapPair, usize)> = None;
    for (n, (xs, ys)) in stabs.iter().enumerate() {
        let inc = best.as_ref().map_or(S::infinity(), |b| b.0);
        if let Some((v, w)) = solve(xs, ys, inc) {
            best = Some((v, w, n));
        }
    }
    let (v, witness, n) = best.expect("at least one correspondence");
    Ok(GhResult {
        value: v * S::lit(0.5),
        witness,
        sigma: None,
        correspondence: Some(ds[n].clone()),
    })
}

/// `½ max_Q |diam_Q(X) − diam_Q(Y)|` over nonempty label subsets.
pub fn gh_lower_bound_diam<S: Scalar>(
    x: &LabeledMetricSpace<S>,
    y: &LabeledMetricSpace<S>,
) -> Result<S> {
    check_same_k(x, y)?;
    if x.k() > MAX_BOUND_K {
        return invalid(format!("diameter bound supports k <= {MAX_BOUND_K}"));
    }
    let best = (1u32..1 << x.k())
        .map(|q| (x.diam_mask(q) - y.diam_mask(q)).abs())
        .fold(S::zero(), S::max);
    Ok(best * S::lit(0.5))
}
