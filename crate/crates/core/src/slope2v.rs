//! Exact solver for linear programs in two variables,
//!
//! ```text
//! max c₁x₁ + c₂x₂  s.t.  a_i1 x₁ + a_i2 x₂ ≤ b_i,  x ≥ 0
//! ```
//!
//! by the slope algorithm: every constraint gets a slope value α from its
//! sign pattern, the constraints are sorted by α, the two neighbours of the
//! objective slope `c₂/c₁` are taken as the starting pair, and sweeps over
//! the rows on either side of that slope replace the matching member of the
//! pair whenever the current intersection point violates the visited row.

use std::cell::Cell;
use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A two-variable LP in maximization form. The nonnegativity conditions are
/// stored as the last two rows, `(−1, 0) ≤ 0` and `(0, −1) ≤ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoVarLp {
    rows: Vec<[f64; 2]>,
    rhs: Vec<f64>,
    cost: [f64; 2],
}

impl TwoVarLp {
    /// `rows`/`rhs` are the structural constraints only. Requires both costs
    /// strictly positive and a nonnegative right-hand side.
    pub fn new(rows: Vec<[f64; 2]>, rhs: Vec<f64>, cost: [f64; 2]) -> Result<Self> {
        if rows.len() != rhs.len() {
            return Err(Error::Dimension(format!("{} rows but {} right-hand sides", rows.len(), rhs.len())));
        }
        if !(cost[0] > 0.0 && cost[1] > 0.0) || !cost.iter().all(|c| c.is_finite()) {
            return Err(Error::Validation(format!("costs must be positive and finite, got {:?}", cost)));
        }
        if rhs.iter().any(|&b| !(b >= 0.0) || !b.is_finite()) {
            return Err(Error::Validation("right-hand side must be finite and nonnegative".into()));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Validation("constraint coefficients must be finite".into()));
        }
        let mut rows = rows;
        let mut rhs = rhs;
        rows.push([-1.0, 0.0]);
        rows.push([0.0, -1.0]);
        rhs.push(0.0);
        rhs.push(0.0);
        Ok(TwoVarLp { rows, rhs, cost })
    }

    /// Number of rows including the two nonnegativity rows.
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Number of structural rows.
    pub fn num_structural(&self) -> usize {
        self.rows.len() - 2
    }

    pub fn row(&self, i: usize) -> [f64; 2] {
        self.rows[i]
    }

    pub fn rhs(&self, i: usize) -> f64 {
        self.rhs[i]
    }

    pub fn cost(&self) -> [f64; 2] {
        self.cost
    }

    /// True for the two trailing rows that encode `x₁ ≥ 0` and `x₂ ≥ 0`.
    pub fn is_nonnegativity_row(&self, i: usize) -> bool {
        i >= self.num_structural()
    }

    pub fn objective(&self, x: [f64; 2]) -> f64 {
        self.cost[0] * x[0] + self.cost[1] * x[1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BigM {
    pub m: f64,
    /// max |a_i1 / a_i2| over rows with a_i2 ≠ 0
    pub m_prime: f64,
    /// max |a_i2 / a_i1| over rows with a_i1 ≠ 0
    pub m_double_prime: f64,
}

/// `M = max{M′, M″, c₂/c₁} + 1`.
pub fn compute_big_m(p: &TwoVarLp) -> BigM {
    let mut m_prime = 0.0f64;
    let mut m_double_prime = 0.0f64;
    for &[a1, a2] in &p.rows {
        if a2 != 0.0 {
            m_prime = m_prime.max((a1 / a2).abs());
        }
        if a1 != 0.0 {
            m_double_prime = m_double_prime.max((a2 / a1).abs());
        }
    }
    let m = m_prime.max(m_double_prime).max(p.cost[1] / p.cost[0]) + 1.0;
    BigM { m, m_prime, m_double_prime }
}

/// Slope value of one constraint row.
pub fn compute_alpha(row: [f64; 2], big_m: f64) -> f64 {
    let [a1, a2] = row;
    let m = big_m;
    match (sign(a1), sign(a2)) {
        (0, -1) => -2.0 * m,
        (1, -1) => -m + a2 / a1,
        (1, 0) => -m,
        (1, 1) => a2 / a1,
        (0, 1) => m,
        (-1, 1) => m - a1 / a2,
        (-1, 0) => 2.0 * m,
        _ => 3.0 * m,
    }
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// Sort key equivalent to α. The case index orders the nine sign patterns
/// and the ratio orders rows inside a case, so adding a large `M` never
/// absorbs a small ratio.
#[derive(Debug, Clone, Copy)]
struct SlopeKey {
    case: u8,
    ratio: f64,
}

impl SlopeKey {
    fn of(row: [f64; 2]) -> Self {
        let [a1, a2] = row;
        let (case, ratio) = match (sign(a1), sign(a2)) {
            (0, -1) => (0, 0.0),
            (1, -1) => (1, a2 / a1),
            (1, 0) => (2, 0.0),
            (1, 1) => (3, a2 / a1),
            (0, 1) => (4, 0.0),
            (-1, 1) => (5, -a1 / a2),
            (-1, 0) => (6, 0.0),
            _ => (7, 0.0),
        };
        SlopeKey { case, ratio }
    }

    fn cmp(&self, other: &Self) -> Ordering {
        self.case.cmp(&other.case).then(self.ratio.total_cmp(&other.ratio))
    }

    /// `α < c₂/c₁` for a slope `0 < c₂/c₁ < M`.
    fn below(&self, cost_slope: f64) -> bool {
        self.case < 3 || (self.case == 3 && self.ratio < cost_slope)
    }
}

/// Unboundedness test on the pair of rows adjacent to the objective slope:
/// `row_j` is the last row with `α < c₂/c₁`, `row_k` the first with
/// `α ≥ c₂/c₁`.
pub fn is_unbounded(row_j: [f64; 2], row_k: [f64; 2]) -> bool {
    let j = SlopeKey::of(row_j).case;
    let k = SlopeKey::of(row_k).case;
    // α_j = −2M and α_k ≥ M
    (j == 0 && k >= 4)
        // −2M < α_j < −M and α_k = 2M
        || (j == 1 && k == 6)
        // α_j = −M and α_k = 2M
        || (j == 2 && k == 6)
        // −2M < α_j < −M, M < α_k < 2M and the slopes do not close the cone
        || (j == 1 && k == 5 && row_j[1] / row_j[0] <= row_k[1] / row_k[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeStatus {
    Optimal,
    Unbounded,
}

/// Work counters used for complexity checks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SlopeOps {
    pub sort_comparisons: u64,
    pub feasibility_checks: u64,
    pub intersections: u64,
    pub passes: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeResult {
    pub status: SlopeStatus,
    pub x: [f64; 2],
    pub objective: f64,
    /// Row indices (into the full row list, nonnegativity rows last) of the
    /// pair defining the optimal basis: the first has `α < c₂/c₁`, the
    /// second `α ≥ c₂/c₁`. For an unbounded problem, the adjacent pair that
    /// exposed the ray.
    pub basis_rows: (usize, usize),
    pub alpha: Vec<f64>,
    pub big_m: f64,
    /// Row indices in ascending α order.
    pub order: Vec<usize>,
    pub ops: SlopeOps,
}

/// Intersection of two constraint lines, `None` if the determinant is lost
/// in cancellation.
fn intersect(r: [f64; 2], br: f64, s: [f64; 2], bs: f64) -> Option<[f64; 2]> {
    let det = r[0] * s[1] - r[1] * s[0];
    let scale = (r[0] * s[1]).abs() + (r[1] * s[0]).abs();
    if det.abs() <= 64.0 * f64::EPSILON * scale {
        return None;
    }
    Some([(br * s[1] - r[1] * bs) / det, (r[0] * bs - br * s[0]) / det])
}

/// `c = y_r·r + y_s·s` with `y ≥ 0`.
fn brackets(c: [f64; 2], r: [f64; 2], s: [f64; 2]) -> bool {
    let det = r[0] * s[1] - r[1] * s[0];
    if det == 0.0 {
        return false;
    }
    let yr = (c[0] * s[1] - c[1] * s[0]) / det;
    let ys = (r[0] * c[1] - r[1] * c[0]) / det;
    let tol = 1e-12 * (c[0].abs() + c[1].abs());
    yr >= -tol && ys >= -tol
}

fn violates(row: [f64; 2], b: f64, x: [f64; 2]) -> bool {
    let t1 = row[0] * x[0];
    let t2 = row[1] * x[1];
    t1 + t2 > b + 1e-12 * (1.0 + b.abs() + t1.abs() + t2.abs())
}

/// Runs the slope algorithm.
pub fn slope_solve(p: &TwoVarLp) -> SlopeResult {
    let n = p.num_rows();
    let big = compute_big_m(p);
    let alpha: Vec<f64> = p.rows.iter().map(|&r| compute_alpha(r, big.m)).collect();
    let keys: Vec<SlopeKey> = p.rows.iter().map(|&r| SlopeKey::of(r)).collect();
    let mut ops = SlopeOps::default();

    let comparisons = Cell::new(0u64);
    let mut order: Vec<usize> = (0..n).collect();
    // stable, so equal slopes stay in row order
    order.sort_by(|&a, &b| {
        comparisons.set(comparisons.get() + 1);
        keys[a].cmp(&keys[b])
    });
    ops.sort_comparisons = comparisons.get();

    let cost_slope = p.cost[1] / p.cost[0];
    // (0, −1) sorts first and is below every positive slope; (−1, 0) is above.
    let below = order.iter().take_while(|&&i| keys[i].below(cost_slope)).count();
    assert!(below >= 1 && below < n, "nonnegativity rows must bracket the objective slope");
    let mut jp = below - 1;
    let mut kp = below;

    let row = |pos: usize| p.rows[order[pos]];
    let rhs = |pos: usize| p.rhs[order[pos]];

    if is_unbounded(row(jp), row(kp)) {
        return SlopeResult {
            status: SlopeStatus::Unbounded,
            x: [f64::NAN; 2],
            objective: f64::INFINITY,
            basis_rows: (order[jp], order[kp]),
            alpha,
            big_m: big.m,
            order,
            ops,
        };
    }

    ops.intersections += 1;
    let mut start = intersect(row(jp), rhs(jp), row(kp), rhs(kp));
    if start.is_none() {
        // Both rows run along the objective: keep the one reached first in
        // the cost direction and pair it with the nearest non-parallel row
        // on the other side.
        let reach = |pos: usize| rhs(pos) / (row(pos)[0] * p.cost[0] + row(pos)[1] * p.cost[1]);
        if reach(jp) <= reach(kp) {
            while kp < n - 1 && start.is_none() {
                kp += 1;
                ops.intersections += 1;
                start = intersect(row(jp), rhs(jp), row(kp), rhs(kp));
            }
        } else {
            while jp > 0 && start.is_none() {
                jp -= 1;
                ops.intersections += 1;
                start = intersect(row(jp), rhs(jp), row(kp), rhs(kp));
            }
        }
    }
    let mut x = start.expect("nonnegativity rows are never parallel to a positive cost");
    // One outward pass as listed can end on an infeasible point: a later
    // replacement may make an already visited row violated, including rows
    // between the current pair and the objective slope. Passes therefore
    // rescan each whole side from the objective slope outward until none
    // replaces, and a replacement is accepted only when the new pair still
    // has the cost vector in the cone of its normals.
    let cost = p.cost;
    let max_passes = 2 * n + 2;
    loop {
        let mut replaced = false;
        let (mut j, mut k) = (below, below - 1);
        while j > 0 || k < n - 1 {
            if j > 0 {
                j -= 1;
            }
            ops.feasibility_checks += 1;
            if j != jp && violates(row(j), rhs(j), x) {
                ops.intersections += 1;
                if let Some(nx) = intersect(row(j), rhs(j), row(kp), rhs(kp)) {
                    if brackets(cost, row(j), row(kp)) {
                        jp = j;
                        x = nx;
                        replaced = true;
                    }
                }
            }
            if k < n - 1 {
                k += 1;
            }
            ops.feasibility_checks += 1;
            if k != kp && violates(row(k), rhs(k), x) {
                ops.intersections += 1;
                if let Some(nx) = intersect(row(jp), rhs(jp), row(k), rhs(k)) {
                    if brackets(cost, row(jp), row(k)) {
                        kp = k;
                        x = nx;
                        replaced = true;
                    }
                }
            }
        }
        ops.passes += 1;
        if !replaced || ops.passes as usize >= max_passes {
            break;
        }
    }

    SlopeResult {
        status: SlopeStatus::Optimal,
        x,
        objective: p.objective(x),
        basis_rows: (order[jp], order[kp]),
        alpha,
        big_m: big.m,
        order,
        ops,
    }
}

/// Solution of the minimization form `min c̄₁v₁ + c̄₂v₂, Āv ≤ b̄, v ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinFormSolution {
    pub status: SlopeStatus,
    pub values: [f64; 2],
    /// `c̄ᵀv` (a decrease, so ≤ 0 when optimal).
    pub objective: f64,
    /// Binding rows: indices `< Ā.len()` are structural rows, `Ā.len()` is
    /// `v₁ ≥ 0` and `Ā.len() + 1` is `v₂ ≥ 0`.
    pub basis_rows: (usize, usize),
    pub ops: SlopeOps,
}

/// Solves the two-variable subproblem in minimization form by negating the
/// costs. Requires `c̄ < 0` and `b̄ ≥ 0`.
pub fn solve_min_form(reduced_costs: [f64; 2], rows: &[[f64; 2]], rhs: &[f64]) -> Result<MinFormSolution> {
    if !(reduced_costs[0] < 0.0 && reduced_costs[1] < 0.0) {
        return Err(Error::Validation(format!("reduced costs must be negative, got {:?}", reduced_costs)));
    }
    let p = TwoVarLp::new(rows.to_vec(), rhs.to_vec(), [-reduced_costs[0], -reduced_costs[1]])?;
    let r = slope_solve(&p);
    let objective = match r.status {
        SlopeStatus::Optimal => -r.objective,
        SlopeStatus::Unbounded => f64::NEG_INFINITY,
    };
    Ok(MinFormSolution { status: r.status, values: r.x, objective, basis_rows: r.basis_rows, ops: r.ops })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Best feasible pairwise intersection, or `None` when the LP is
    /// unbounded according to the ray oracle.
    fn vertex_oracle(p: &TwoVarLp) -> f64 {
        let n = p.num_rows();
        let mut best = f64::NEG_INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                if let Some(x) = exact_intersect(p.row(i), p.rhs(i), p.row(j), p.rhs(j)) {
                    if (0..n).all(|r| dot(p.row(r), x) <= p.rhs(r) + 1e-9 * (1.0 + p.rhs(r).abs())) {
                        best = best.max(p.objective(x));
                    }
                }
            }
        }
        best
    }

    fn exact_intersect(r: [f64; 2], br: f64, s: [f64; 2], bs: f64) -> Option<[f64; 2]> {
        let det = r[0] * s[1] - r[1] * s[0];
        if det == 0.0 {
            return None;
        }
        Some([(br * s[1] - r[1] * bs) / det, (r[0] * bs - br * s[0]) / det])
    }

    fn dot(a: [f64; 2], x: [f64; 2]) -> f64 {
        a[0] * x[0] + a[1] * x[1]
    }

    /// A recession direction with positive objective exists. Extreme rays of
    /// the 2-D recession cone lie on a coordinate axis or along some row.
    fn ray_oracle(p: &TwoVarLp) -> bool {
        let mut dirs = vec![[1.0, 0.0], [0.0, 1.0]];
        for i in 0..p.num_rows() {
            let [a1, a2] = p.row(i);
            dirs.push([-a2, a1]);
            dirs.push([a2, -a1]);
        }
        dirs.iter().any(|&d| {
            (d[0] != 0.0 || d[1] != 0.0)
                && (0..p.num_rows()).all(|r| dot(p.row(r), d) <= 0.0)
                && p.objective(d) > 0.0
        })
    }

    fn lp(rows: &[[f64; 2]], rhs: &[f64], cost: [f64; 2]) -> TwoVarLp {
        TwoVarLp::new(rows.to_vec(), rhs.to_vec(), cost).unwrap()
    }

    #[test]
    fn big_m_examples() {
        let p = lp(&[[1.0, 2.0]], &[4.0], [1.0, 1.0]);
        let b = compute_big_m(&p);
        assert_eq!((b.m_prime, b.m_double_prime, b.m), (0.5, 2.0, 3.0));
        let p = lp(&[], &[], [1.0, 1.0]);
        let b = compute_big_m(&p);
        assert_eq!((b.m_prime, b.m_double_prime, b.m), (0.0, 0.0, 2.0));
        let p = lp(&[[10.0, 20.0], [30.0, -10.0]], &[1.0, 1.0], [1.0, 1.0]);
        let q = lp(&[[1.0, 2.0], [3.0, -1.0]], &[1.0, 1.0], [1.0, 1.0]);
        assert_eq!(compute_big_m(&p), compute_big_m(&q));
    }

    #[test]
    fn alpha_case_table() {
        assert_eq!(compute_alpha([2.0, 1.0], 10.0), 0.5);
        assert_eq!(compute_alpha([0.0, -3.0], 10.0), -20.0);
        assert_eq!(compute_alpha([-1.0, 2.0], 10.0), 10.5);
        assert_eq!(compute_alpha([0.0, 0.0], 10.0), 30.0);
        assert_eq!(compute_alpha([1.0, -2.0], 10.0), -12.0);
        assert_eq!(compute_alpha([3.0, 0.0], 10.0), -10.0);
        assert_eq!(compute_alpha([0.0, 5.0], 10.0), 10.0);
        assert_eq!(compute_alpha([-4.0, 0.0], 10.0), 20.0);
        assert_eq!(compute_alpha([-1.0, -1.0], 10.0), 30.0);
    }

    #[test]
    fn quadrant_only_is_unbounded() {
        let r = slope_solve(&lp(&[], &[], [1.0, 1.0]));
        assert_eq!(r.status, SlopeStatus::Unbounded);
        let m = r.big_m;
        assert_eq!((r.alpha[0], r.alpha[1]), (2.0 * m, -2.0 * m));
    }

    #[test]
    fn unit_box() {
        let p = lp(&[[1.0, 0.0], [0.0, 1.0]], &[1.0, 1.0], [1.0, 1.0]);
        let r = slope_solve(&p);
        assert_eq!(r.status, SlopeStatus::Optimal);
        assert_eq!(r.x, [1.0, 1.0]);
        assert_eq!(r.objective, 2.0);
        assert_eq!(r.basis_rows, (0, 1));
        assert!(!is_unbounded([1.0, 0.0], [0.0, 1.0]));
        assert_eq!(vertex_oracle(&p), 2.0);
    }

    #[test]
    fn fourth_disjunct_slope_direction() {
        // x₁ − x₂ ≤ 1, −x₁ + 2x₂ ≤ 4: bounded (cone closes)
        let p = lp(&[[1.0, -1.0], [-1.0, 2.0]], &[1.0, 4.0], [1.0, 1.0]);
        let r = slope_solve(&p);
        let m = r.big_m;
        let (j, k) = r.basis_rows;
        assert_eq!((j, k), (0, 1));
        assert_eq!(r.alpha[0], -m - 1.0);
        assert_eq!(r.alpha[1], m + 0.5);
        assert_eq!(r.status, SlopeStatus::Optimal);
        assert!(!ray_oracle(&p));
        assert_eq!(r.x, [6.0, 5.0]);
        assert_eq!(r.objective, vertex_oracle(&p));

        // x₁ − 2x₂ ≤ 1, −x₁ + x₂ ≤ 4: unbounded along (1, 1)
        let p = lp(&[[1.0, -2.0], [-1.0, 1.0]], &[1.0, 4.0], [1.0, 1.0]);
        assert!(is_unbounded(p.row(0), p.row(1)));
        assert_eq!(slope_solve(&p).status, SlopeStatus::Unbounded);
        assert!(ray_oracle(&p));
    }

    #[test]
    fn degenerate_vertex() {
        // max 2x₁ + x₂, x₁ + x₂ ≤ 2, x₁ ≤ 2, x₂ ≤ 2
        let p = lp(&[[1.0, 1.0], [1.0, 0.0], [0.0, 1.0]], &[2.0, 2.0, 2.0], [2.0, 1.0]);
        let r = slope_solve(&p);
        assert_eq!(r.status, SlopeStatus::Optimal);
        assert_eq!(r.x, [2.0, 0.0]);
        assert_eq!(r.objective, 4.0);
        assert_basis_certificate(&p, &r);
    }

    #[test]
    fn duplicate_rows_keep_index_order() {
        let p = lp(&[[1.0, 1.0], [1.0, 1.0], [1.0, 0.0]], &[3.0, 3.0, 2.0], [1.0, 2.0]);
        let r = slope_solve(&p);
        let pos0 = r.order.iter().position(|&i| i == 0).unwrap();
        let pos1 = r.order.iter().position(|&i| i == 1).unwrap();
        assert!(pos0 < pos1);
        assert_eq!(r.objective, 6.0);
        let q = lp(&[[1.0, 1.0], [1.0, 0.0]], &[3.0, 2.0], [1.0, 2.0]);
        assert_eq!(slope_solve(&q).objective, 6.0);
    }

    #[test]
    fn start_pair_along_the_cost() {
        // two entering columns equal up to rounding: every row is nearly
        // parallel to the cost
        let rows = [
            [0.4177564318615885, 0.41775643186158856],
            [0.019660712279519155, 0.01966071227951916],
            [0.3977642961465002, -0.6022357038534997],
            [-1.0, 1.0],
            [1.435569037186833, 0.7689023705201663],
        ];
        let rhs = [30.26308835849753, 17.12616560620626, 3.943938957262482, 1.71e-8, 109.38939437005418];
        let p = lp(&rows, &rhs, [0.026214283039358847, 0.02621428303935886]);
        let r = slope_solve(&p);
        assert_eq!(r.status, SlopeStatus::Optimal);
        for i in 0..p.num_rows() {
            assert!(dot(p.row(i), r.x) <= p.rhs(i) + 1e-9 * (1.0 + p.rhs(i).abs()));
        }
        let best = vertex_oracle(&p);
        assert!((r.objective - best).abs() <= 1e-9 * (1.0 + best.abs()), "{} vs {}", r.objective, best);
    }

    #[test]
    fn min_form_adapter() {
        // min −v₁ − v₂ with v₁ + v₂ ≤ 2 on a tie line
        let s = solve_min_form([-1.0, -1.0], &[[1.0, 1.0]], &[2.0]).unwrap();
        assert_eq!(s.status, SlopeStatus::Optimal);
        assert_eq!(s.objective, -2.0);
        assert_eq!(s.values[0] + s.values[1], 2.0);
        assert!(solve_min_form([1.0, -1.0], &[[1.0, 1.0]], &[2.0]).is_err());
        assert!(solve_min_form([-1.0, -1.0], &[[1.0, 1.0]], &[-2.0]).is_err());
    }

    fn assert_basis_certificate(p: &TwoVarLp, r: &SlopeResult) {
        let (a, b) = r.basis_rows;
        let tol = 1e-9 * (1.0 + p.rhs.iter().fold(0.0f64, |m, v| m.max(v.abs())));
        for i in [a, b] {
            assert!((dot(p.row(i), r.x) - p.rhs(i)).abs() <= tol, "basis row {} not tight", i);
        }
        for i in 0..p.num_rows() {
            assert!(dot(p.row(i), r.x) <= p.rhs(i) + tol, "row {} violated", i);
        }
        let slope = p.cost[1] / p.cost[0];
        assert!(r.alpha[a] < slope && slope <= r.alpha[b]);
    }

    /// Outward-normal angle in [−π/2, 3π/2).
    fn normal_angle(row: [f64; 2]) -> f64 {
        let t = row[1].atan2(row[0]);
        if t < -std::f64::consts::FRAC_PI_2 {
            t + 2.0 * std::f64::consts::PI
        } else {
            t
        }
    }

    fn small_2vlp() -> impl Strategy<Value = TwoVarLp> {
        (0usize..=12)
            .prop_flat_map(|m| {
                (
                    prop::collection::vec((-5i32..=5, -5i32..=5), m),
                    prop::collection::vec(0i32..=10, m),
                    (1i32..=5, 1i32..=5),
                )
            })
            .prop_map(|(rows, rhs, (c1, c2))| {
                TwoVarLp::new(
                    rows.into_iter().map(|(a, b)| [a as f64, b as f64]).collect(),
                    rhs.into_iter().map(f64::from).collect(),
                    [c1 as f64, c2 as f64],
                )
                .unwrap()
            })
    }

    fn nonzero_row() -> impl Strategy<Value = [f64; 2]> {
        let rows: Vec<[f64; 2]> = (-5..=5)
            .flat_map(|a| (-5..=5).map(move |b| [a as f64, b as f64]))
            .filter(|r| *r != [0.0, 0.0])
            .collect();
        prop::sample::select(rows)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn matches_oracles(p in small_2vlp()) {
            let r = slope_solve(&p);
            let unbounded = ray_oracle(&p);
            prop_assert_eq!(r.status == SlopeStatus::Unbounded, unbounded);
            if !unbounded {
                let best = vertex_oracle(&p);
                prop_assert!((r.objective - best).abs() <= 1e-9 * (1.0 + best.abs()),
                    "slope {} vs oracle {}", r.objective, best);
                assert_basis_certificate(&p, &r);
            }
        }

        #[test]
        fn alpha_follows_normal_angle(ra in nonzero_row(), rb in nonzero_row()) {
            let p = lp(&[ra, rb], &[1.0, 1.0], [1.0, 1.0]);
            let m = compute_big_m(&p).m;
            let (ta, tb) = (normal_angle(ra), normal_angle(rb));
            let (aa, ab) = (compute_alpha(ra, m), compute_alpha(rb, m));
            let both_third_quadrant = aa == 3.0 * m && ab == 3.0 * m;
            if ta < tb - 1e-12 {
                let ordered = if both_third_quadrant { aa <= ab } else { aa < ab };
                prop_assert!(ordered, "{:?} {} vs {:?} {}", ra, aa, rb, ab);
            }
        }
    }

    #[test]
    fn work_grows_like_m_log_m() {
        let make = |m: usize| {
            let rows: Vec<[f64; 2]> =
                (0..m).map(|i| [((i * 7919) % 97) as f64 + 1.0, ((i * 104729) % 89) as f64 + 1.0]).collect();
            lp(&rows, &vec![100.0; m], [1.0, 1.0])
        };
        let work = |m: usize| {
            let o = slope_solve(&make(m)).ops;
            o.sort_comparisons + o.feasibility_checks + o.intersections
        };
        let (w1, w2, w4) = (work(1000), work(2000), work(4000));
        // quadratic growth would quadruple per doubling
        assert!((w2 as f64) < 2.6 * w1 as f64, "{} -> {}", w1, w2);
        assert!((w4 as f64) < 2.6 * w2 as f64, "{} -> {}", w2, w4);
    }
}
