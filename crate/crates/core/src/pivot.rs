//! Entering and leaving variable selection.
//!
//! Rules work on per-slot vectors over the nonbasic (reduced costs) or
//! basic (ratio test) positions. Where a rule breaks ties by "lowest index"
//! the caller passes the column indices of the slots as `keys`.

use crate::linalg::{solve_basis_multi, LuFactors};
use crate::model::SparseMatrix;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Reduced costs below `−zero_tol` are improving.
    pub zero_tol: f64,
    /// Ratio-test rows need `ā_i > pivot_tol`.
    pub pivot_tol: f64,
    /// Basic values above `−feas_tol` count as feasible.
    pub feas_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { zero_tol: 1e-9, pivot_tol: 1e-10, feas_tol: 1e-9 }
    }
}

/// Candidate filter for the longest-step rule: only candidates with
/// `c̄_j ≤ fraction · min(c̄)` are ratio-tested, and only when there are more
/// than `min_candidates` of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LongestStepFilter {
    /// `None` disables the filter.
    pub fraction: Option<f64>,
    pub min_candidates: usize,
}

impl Default for LongestStepFilter {
    fn default() -> Self {
        LongestStepFilter { fraction: Some(0.99), min_candidates: 50 }
    }
}

impl LongestStepFilter {
    pub fn off() -> Self {
        LongestStepFilter { fraction: None, min_candidates: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioOutcome {
    pub leaving_slot: Option<usize>,
    /// `+∞` when no row is eligible.
    pub step: f64,
}

/// `c̄_N = c_N − A_Nᵀp̄` with `A_Bᵀp̄ = c_B` solved through the factors.
/// Returns `(c̄_N, p̄)`.
pub fn reduced_costs(
    a: &SparseMatrix,
    c: &[f64],
    basic: &[usize],
    nonbasic: &[usize],
    factors: &LuFactors,
) -> (Vec<f64>, Vec<f64>) {
    let c_b: Vec<f64> = basic.iter().map(|&j| c[j]).collect();
    let p = factors.solve_transpose(&c_b);
    let reduced = nonbasic.iter().map(|&j| c[j] - a.column_dot(j, &p)).collect();
    (reduced, p)
}

/// Slots with `c̄ < −zero_tol`.
pub fn candidate_set(reduced: &[f64], zero_tol: f64) -> Vec<usize> {
    (0..reduced.len()).filter(|&k| reduced[k] < -zero_tol).collect()
}

/// Most negative reduced cost; ties go to the smallest key. `None` means
/// optimal.
pub fn dantzig_entering(reduced: &[f64], keys: &[usize], zero_tol: f64) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, &v) in reduced.iter().enumerate() {
        if v >= -zero_tol {
            continue;
        }
        best = match best {
            Some(b) if reduced[b] < v || (reduced[b] == v && keys[b] < keys[k]) => Some(b),
            _ => Some(k),
        };
    }
    best
}

/// Improving slot with the smallest key.
pub fn bland_entering(reduced: &[f64], keys: &[usize], zero_tol: f64) -> Option<usize> {
    (0..reduced.len()).filter(|&k| reduced[k] < -zero_tol).min_by_key(|&k| keys[k])
}

/// Minimum ratio `b̄_i / ā_i` over rows with `ā_i > pivot_tol`; ties go to
/// the lowest row. Slightly negative `b̄_i` are treated as zero.
pub fn ratio_test(b_bar: &[f64], a_bar: &[f64], pivot_tol: f64) -> RatioOutcome {
    ratio_test_keyed(b_bar, a_bar, pivot_tol, None)
}

/// Ratio test with ties broken by the smallest `keys[i]` (the basic column
/// index under Bland's rule) instead of the row.
pub fn ratio_test_keyed(b_bar: &[f64], a_bar: &[f64], pivot_tol: f64, keys: Option<&[usize]>) -> RatioOutcome {
    let mut best = RatioOutcome { leaving_slot: None, step: f64::INFINITY };
    for (i, (&b, &a)) in b_bar.iter().zip(a_bar).enumerate() {
        if a <= pivot_tol {
            continue;
        }
        let t = b.max(0.0) / a;
        let better = match best.leaving_slot {
            None => true,
            Some(r) => t < best.step || (t == best.step && keys.is_some_and(|k| k[i] < k[r])),
        };
        if better {
            best = RatioOutcome { leaving_slot: Some(i), step: t };
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct LongestStep {
    pub slot: usize,
    pub ratio: RatioOutcome,
    /// `ā = A_B⁻¹a_j` of the chosen column.
    pub column: Vec<f64>,
}

/// Among improving slots other than `exclude_slot` (and passing `filter`),
/// the one whose ratio test allows the largest step. Candidates without an
/// eligible row are skipped; ties go to the lowest slot.
pub fn longest_step_entering(
    reduced: &[f64],
    candidates: &[usize],
    exclude_slot: usize,
    filter: LongestStepFilter,
    b_bar: &[f64],
    pivot_tol: f64,
    column_of: impl Fn(usize) -> Vec<f64>,
    factors: &LuFactors,
) -> Option<LongestStep> {
    let min_cost = candidates.iter().map(|&k| reduced[k]).fold(f64::INFINITY, f64::min);
    let threshold = match filter.fraction {
        Some(f) if candidates.len() > filter.min_candidates => f * min_cost,
        _ => f64::INFINITY,
    };
    let slots: Vec<usize> =
        candidates.iter().copied().filter(|&k| k != exclude_slot && reduced[k] <= threshold).collect();
    if slots.is_empty() {
        return None;
    }
    let raw: Vec<Vec<f64>> = slots.iter().map(|&k| column_of(k)).collect();
    let solved = solve_basis_multi(factors, &raw).ok()?;
    let mut best: Option<LongestStep> = None;
    for (&slot, column) in slots.iter().zip(solved) {
        let ratio = ratio_test(b_bar, &column, pivot_tol);
        if ratio.leaving_slot.is_none() {
            continue;
        }
        if best.as_ref().is_none_or(|b| ratio.step > b.ratio.step) {
            best = Some(LongestStep { slot, ratio, column });
        }
    }
    best
}
