//! The simplex driver.
//!
//! Each iteration refactors the basis, prices the nonbasic columns and takes
//! either a Dantzig pivot or, under [`PivotRule::DoublePivot`], a combined
//! move of two entering variables: the Dantzig column and the longest-step
//! column span a two-variable subproblem that is solved exactly by
//! [`crate::slope2v`], and its optimal pair of binding rows tells which basic
//! variables leave.
//!
//! A phase 1 on artificial variables runs on the same machinery. Degenerate
//! stalls switch to Bland's rule until the objective decreases again, and
//! basic values that hit exactly zero are nudged to a small positive value.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::linalg::{lu_factor, solve_basis_multi, LuFactors, LuOptions};
use crate::model::{infeasibility, BasisPartition, ColumnsView, Slot, SparseMatrix, StandardFormLp};
use crate::pivot::{
    bland_entering, candidate_set, dantzig_entering, longest_step_entering, ratio_test, ratio_test_keyed,
    reduced_costs, LongestStepFilter, Tolerances,
};
use crate::slope2v::{solve_min_form, MinFormSolution, SlopeStatus, TwoVarLp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PivotRule {
    Dantzig,
    DoublePivot,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    pub rule: PivotRule,
    pub tolerances: Tolerances,
    pub lu: LuOptions,
    pub ls_filter: LongestStepFilter,
    /// Defaults to `1000·(n + m)`.
    pub max_iterations: Option<usize>,
    /// Bland fallback on degenerate stalls and perturbation of zero basics.
    pub anti_cycling: bool,
    /// Stop with [`SolveStatus::CycleDetected`] when a basis repeats within
    /// a phase.
    pub stop_on_cycle: bool,
    pub record_iterations: bool,
    /// Priority per column for breaking Dantzig ties (lowest wins); column
    /// index when absent.
    pub tie_keys: Option<Vec<usize>>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            rule: PivotRule::DoublePivot,
            tolerances: Tolerances::default(),
            lu: LuOptions::default(),
            ls_filter: LongestStepFilter::default(),
            max_iterations: None,
            anti_cycling: true,
            stop_on_cycle: false,
            record_iterations: true,
            tie_keys: None,
        }
    }
}

impl SolverOptions {
    pub fn with_rule(rule: PivotRule) -> Self {
        SolverOptions { rule, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Unbounded,
    Infeasible,
    IterationLimit,
    NumericalFailure,
    CycleDetected,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Unbounded => "unbounded",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::IterationLimit => "iteration_limit",
            SolveStatus::NumericalFailure => "numerical_failure",
            SolveStatus::CycleDetected => "cycle_detected",
        }
    }
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Single,
    Double,
    Bland,
}

/// What one accepted pivot did.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub kind: StepKind,
    pub entering: Vec<usize>,
    pub leaving: Vec<usize>,
    pub steps: Vec<f64>,
    /// Objective after the Dantzig single pivot.
    pub f1: Option<f64>,
    /// Objective after the longest-step single pivot.
    pub f2: Option<f64>,
    /// Objective at the optimum of the two-variable subproblem.
    pub f3: Option<f64>,
    pub candidates: usize,
    pub objective_before: f64,
    pub objective_after: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StepOutcome {
    Optimal,
    Unbounded { column: usize },
    Moved(StepRecord),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    /// 1-based count over both phases.
    pub iteration: usize,
    pub phase: u8,
    pub step: StepRecord,
    /// Decrease below the improvement tolerance.
    pub stalled: bool,
    pub bland_mode: bool,
    pub basis_signature: u64,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Values of the standard-form columns.
    pub x: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
    pub phase1_iterations: usize,
    pub double_pivots: usize,
    pub bland_pivots: usize,
    /// `‖Ax − b‖∞`.
    pub infeasibility: f64,
    pub time: Duration,
    /// Basic columns at termination; indices `≥ n` are artificials.
    pub basis: Vec<usize>,
    pub records: Vec<IterationRecord>,
    /// Whether a basis signature repeated within a phase.
    pub repeated_basis: bool,
}

/// Signals that an update produced a basic value below `−feas_tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericalBreakdown {
    pub slot: usize,
    pub value: f64,
}

/// Mutable solve state: the working problem (possibly with artificial
/// columns), the basis and the current basic values.
#[derive(Debug, Clone)]
pub struct SimplexState {
    lp: StandardFormLp,
    eligible: Vec<bool>,
    pub partition: BasisPartition,
    pub x_b: Vec<f64>,
    pub objective: f64,
    pub iteration: usize,
    pub bland_mode: bool,
    stalls: usize,
    breakdowns: usize,
    delta: f64,
}

impl SimplexState {
    /// State for a given feasible basis of `lp`.
    pub fn from_basis(lp: StandardFormLp, basic: Vec<usize>, options: &SolverOptions) -> Result<Self> {
        let n = lp.num_cols();
        if basic.len() != lp.num_rows() {
            return Err(Error::Dimension(format!("basis has {} columns, need {}", basic.len(), lp.num_rows())));
        }
        let partition = BasisPartition::new(n, basic)?;
        let delta = 1e-10 * (1.0 + norm_inf(lp.b()));
        let mut state = SimplexState {
            eligible: vec![true; n],
            partition,
            x_b: Vec::new(),
            objective: 0.0,
            iteration: 0,
            bland_mode: false,
            stalls: 0,
            breakdowns: 0,
            delta,
            lp,
        };
        let f = state.factor(options.lu)?;
        let x_b = f.solve(state.lp.b());
        if let Some(v) = x_b.iter().find(|&&v| v < -options.tolerances.feas_tol) {
            return Err(Error::Validation(format!("basis is not primal feasible (basic value {})", v)));
        }
        state.x_b = x_b.into_iter().map(|v| v.max(0.0)).collect();
        state.refresh_objective();
        Ok(state)
    }

    pub fn lp(&self) -> &StandardFormLp {
        &self.lp
    }

    pub fn factor(&self, opts: LuOptions) -> Result<LuFactors> {
        lu_factor(&ColumnsView::new(self.lp.a(), self.partition.basic()).to_dense(), opts)
    }

    fn refresh_objective(&mut self) {
        let c = self.lp.c();
        self.objective = self.partition.basic().iter().zip(&self.x_b).map(|(&j, &x)| c[j] * x).sum();
    }

    fn degenerate(&self) -> bool {
        let tol = 10.0 * self.delta;
        self.x_b.iter().any(|&v| v <= tol)
    }

    /// Basic values recomputed from scratch, without perturbation.
    pub fn fresh_x_b(&self, opts: LuOptions) -> Result<Vec<f64>> {
        Ok(self.factor(opts)?.solve(self.lp.b()))
    }
}

/// The two-variable subproblem in minimization form over the entering pair
/// `(first, second)`: `min c̄ᵀv  s.t.  [ā_first ā_second]v ≤ b̄, v ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Subproblem {
    pub rows: Vec<[f64; 2]>,
    pub rhs: Vec<f64>,
    pub reduced_costs: [f64; 2],
}

impl Subproblem {
    /// Entries with `|ā| < pivot_tol` are dropped to zero, matching the
    /// ratio test, and `b̄` is clamped at zero.
    pub fn from_columns(first: &[f64], second: &[f64], b_bar: &[f64], reduced_costs: [f64; 2], pivot_tol: f64) -> Self {
        let clean = |v: f64| if v.abs() < pivot_tol { 0.0 } else { v };
        Subproblem {
            rows: first.iter().zip(second).map(|(&a, &b)| [clean(a), clean(b)]).collect(),
            rhs: b_bar.iter().map(|&b| b.max(0.0)).collect(),
            reduced_costs,
        }
    }

    /// Maximization form with negated costs.
    pub fn to_two_var_lp(&self) -> Result<TwoVarLp> {
        TwoVarLp::new(self.rows.clone(), self.rhs.clone(), [-self.reduced_costs[0], -self.reduced_costs[1]])
    }

    pub fn solve(&self) -> Result<MinFormSolution> {
        solve_min_form(self.reduced_costs, &self.rows, &self.rhs)
    }
}

/// Builds the subproblem for two nonbasic slots of `state`.
pub fn assemble_2d_subproblem(
    state: &SimplexState,
    factors: &LuFactors,
    first_slot: usize,
    second_slot: usize,
    reduced_costs: [f64; 2],
    tol: &Tolerances,
) -> Result<Subproblem> {
    if first_slot == second_slot {
        return Err(Error::Validation("entering slots must differ".into()));
    }
    if let Some(v) = state.x_b.iter().find(|&&v| v < -tol.feas_tol) {
        return Err(Error::Validation(format!("basic solution infeasible ({})", v)));
    }
    let nb = state.partition.nonbasic();
    let a = state.lp.a();
    let cols = solve_basis_multi(factors, &[a.dense_column(nb[first_slot]), a.dense_column(nb[second_slot])])?;
    Ok(Subproblem::from_columns(&cols[0], &cols[1], &state.x_b, reduced_costs, tol.pivot_tol))
}

/// `x_B − Σ ā_k v_k` with the leaving slots overwritten by the entering
/// values. Magnitudes below `1e−11` become exactly zero.
pub fn update_x_b(
    x_b: &[f64],
    columns: &[&[f64]],
    values: &[f64],
    leaving: &[usize],
    feas_tol: f64,
) -> std::result::Result<Vec<f64>, NumericalBreakdown> {
    let mut x = x_b.to_vec();
    for (col, &v) in columns.iter().zip(values) {
        if v != 0.0 {
            for (xi, a) in x.iter_mut().zip(col.iter()) {
                *xi -= a * v;
            }
        }
    }
    for (&slot, &v) in leaving.iter().zip(values) {
        x[slot] = v;
    }
    for xi in x.iter_mut() {
        if xi.abs() < 1e-11 {
            *xi = 0.0;
        }
    }
    match x.iter().enumerate().find(|(_, &v)| v < -feas_tol) {
        Some((slot, &value)) => Err(NumericalBreakdown { slot, value }),
        None => Ok(x),
    }
}

/// Mode after a step: count degenerate stalls, switch to Bland's rule after
/// two in a row, and switch back on the first real decrease.
pub fn anti_cycling_guard(state: &mut SimplexState, objective_before: f64, degenerate_before: bool) -> bool {
    let improve_tol = 1e-12 * (1.0 + objective_before.abs());
    let decrease = objective_before - state.objective;
    if decrease >= improve_tol {
        state.stalls = 0;
        state.bland_mode = false;
    } else if degenerate_before && state.degenerate() {
        state.stalls += 1;
        if state.stalls >= 2 {
            state.bland_mode = true;
        }
    } else {
        state.stalls = 0;
    }
    state.bland_mode
}

/// Planned basis change: entering nonbasic slots, leaving basic slots,
/// entering values and the `ā` columns.
struct Plan {
    kind: StepKind,
    entering_slots: Vec<usize>,
    leaving_slots: Vec<usize>,
    values: Vec<f64>,
    columns: Vec<Vec<f64>>,
    f1: Option<f64>,
    f2: Option<f64>,
    f3: Option<f64>,
}

/// One iteration: price, choose, and apply the pivot(s).
pub fn double_pivot_step(state: &mut SimplexState, options: &SolverOptions) -> Result<StepOutcome> {
    let tol = options.tolerances;
    let f = state.factor(options.lu)?;
    let (mut rc, _) =
        reduced_costs(state.lp.a(), state.lp.c(), state.partition.basic(), state.partition.nonbasic(), &f);
    let nonbasic = state.partition.nonbasic().to_vec();
    for (k, &j) in nonbasic.iter().enumerate() {
        if !state.eligible[j] {
            rc[k] = 0.0;
        }
    }
    let cand = candidate_set(&rc, tol.zero_tol);
    if cand.is_empty() {
        return Ok(StepOutcome::Optimal);
    }
    let a = state.lp.a();
    let obj = state.objective;
    let column = |k: usize| a.dense_column(nonbasic[k]);

    let plan = if state.bland_mode {
        let k = bland_entering(&rc, &nonbasic, tol.zero_tol).expect("candidate set is nonempty");
        let abar = f.solve(&column(k));
        let r = ratio_test_keyed(&state.x_b, &abar, tol.pivot_tol, Some(state.partition.basic()));
        let Some(leave) = r.leaving_slot else {
            return Ok(StepOutcome::Unbounded { column: nonbasic[k] });
        };
        Plan {
            kind: StepKind::Bland,
            entering_slots: vec![k],
            leaving_slots: vec![leave],
            values: vec![r.step],
            columns: vec![abar],
            f1: None,
            f2: None,
            f3: None,
        }
    } else {
        let j1 = match &options.tie_keys {
            Some(keys) => {
                let nb_keys: Vec<usize> = nonbasic.iter().map(|&j| keys.get(j).copied().unwrap_or(usize::MAX)).collect();
                dantzig_entering(&rc, &nb_keys, tol.zero_tol)
            }
            None => dantzig_entering(&rc, &nonbasic, tol.zero_tol),
        }
        .expect("candidate set is nonempty");
        let abar1 = f.solve(&column(j1));
        let r1 = ratio_test(&state.x_b, &abar1, tol.pivot_tol);
        let Some(leave1) = r1.leaving_slot else {
            return Ok(StepOutcome::Unbounded { column: nonbasic[j1] });
        };
        let f1 = obj + rc[j1] * r1.step;
        let single = |abar1: Vec<f64>, f2, f3| Plan {
            kind: StepKind::Single,
            entering_slots: vec![j1],
            leaving_slots: vec![leave1],
            values: vec![r1.step],
            columns: vec![abar1],
            f1: Some(f1),
            f2,
            f3,
        };
        let second = if options.rule == PivotRule::DoublePivot && cand.len() >= 2 {
            longest_step_entering(&rc, &cand, j1, options.ls_filter, &state.x_b, tol.pivot_tol, column, &f)
        } else {
            None
        };
        match second {
            None => single(abar1, None, None),
            Some(ls) => {
                let j2 = ls.slot;
                let f2 = obj + rc[j2] * ls.ratio.step;
                // The longest-step column is the first subproblem variable.
                let sub = Subproblem::from_columns(&ls.column, &abar1, &state.x_b, [rc[j2], rc[j1]], tol.pivot_tol);
                let sol = sub.solve()?;
                if sol.status == SlopeStatus::Unbounded {
                    return Ok(StepOutcome::Unbounded { column: nonbasic[j2] });
                }
                let f3 = Some(obj + sol.objective);
                let m = state.x_b.len();
                let (r, s) = sol.basis_rows;
                let structural = |i: usize| i < m;
                match (structural(r), structural(s)) {
                    (true, true) => Plan {
                        kind: StepKind::Double,
                        entering_slots: vec![j2, j1],
                        leaving_slots: vec![r, s],
                        values: vec![sol.values[0].max(0.0), sol.values[1].max(0.0)],
                        columns: vec![ls.column, abar1],
                        f1: Some(f1),
                        f2: Some(f2),
                        f3,
                    },
                    (true, false) | (false, true) => {
                        let (row, bound) = if structural(r) { (r, s) } else { (s, r) };
                        // the variable whose nonnegativity row binds stays out
                        let (slot, abar, value) = if bound == m {
                            (j1, abar1, sol.values[1].max(0.0))
                        } else {
                            (j2, ls.column, sol.values[0].max(0.0))
                        };
                        Plan {
                            kind: StepKind::Single,
                            entering_slots: vec![slot],
                            leaving_slots: vec![row],
                            values: vec![value],
                            columns: vec![abar],
                            f1: Some(f1),
                            f2: Some(f2),
                            f3,
                        }
                    }
                    (false, false) => single(abar1, Some(f2), f3),
                }
            }
        }
    };
    apply_plan(state, options, plan, cand.len(), obj)
}

fn apply_plan(state: &mut SimplexState, options: &SolverOptions, plan: Plan, candidates: usize, obj: f64) -> Result<StepOutcome> {
    let tol = options.tolerances;
    let entering: Vec<usize> = plan.entering_slots.iter().map(|&k| state.partition.nonbasic()[k]).collect();
    let leaving: Vec<usize> = plan.leaving_slots.iter().map(|&r| state.partition.basic()[r]).collect();
    let cols: Vec<&[f64]> = plan.columns.iter().map(Vec::as_slice).collect();
    let updated = update_x_b(&state.x_b, &cols, &plan.values, &plan.leaving_slots, tol.feas_tol);

    for (&r, &k) in plan.leaving_slots.iter().zip(&plan.entering_slots) {
        state.partition.exchange(r, k);
    }
    let x_b = match updated {
        Ok(x) => x,
        Err(_) => {
            // recompute from scratch before giving up on the step
            let fresh = state.fresh_x_b(options.lu)?;
            if fresh.iter().all(|&v| v >= -tol.feas_tol) {
                fresh.into_iter().map(|v| if v.abs() < 1e-11 { 0.0 } else { v.max(0.0) }).collect()
            } else {
                for (&r, &k) in plan.leaving_slots.iter().zip(&plan.entering_slots).rev() {
                    state.partition.exchange(r, k);
                }
                state.breakdowns += 1;
                state.bland_mode = true;
                return Err(Error::Validation("numerical breakdown in basis update".into()));
            }
        }
    };
    state.breakdowns = 0;
    state.x_b = x_b;
    if options.anti_cycling {
        let delta = state.delta;
        for v in state.x_b.iter_mut() {
            if *v == 0.0 {
                *v = delta;
            }
        }
    }
    state.refresh_objective();
    state.iteration += 1;
    Ok(StepOutcome::Moved(StepRecord {
        kind: plan.kind,
        entering,
        leaving,
        steps: plan.values,
        f1: plan.f1,
        f2: plan.f2,
        f3: plan.f3,
        candidates,
        objective_before: obj,
        objective_after: state.objective,
    }))
}

fn norm_inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

enum LoopEnd {
    Optimal,
    Unbounded,
    IterationLimit,
    NumericalFailure,
    CycleDetected,
}

struct Run<'a> {
    options: &'a SolverOptions,
    limit: usize,
    total: usize,
    records: Vec<IterationRecord>,
    double_pivots: usize,
    bland_pivots: usize,
    repeated_basis: bool,
}

impl Run<'_> {
    fn iterate(&mut self, state: &mut SimplexState, phase: u8) -> Result<LoopEnd> {
        let mut seen = HashSet::new();
        seen.insert(state.partition.signature());
        loop {
            if self.total >= self.limit {
                return Ok(LoopEnd::IterationLimit);
            }
            let before = state.objective;
            let degenerate_before = state.degenerate();
            let outcome = match double_pivot_step(state, self.options) {
                Ok(o) => o,
                Err(_) if state.breakdowns > 0 => {
                    if state.breakdowns >= 3 {
                        return Ok(LoopEnd::NumericalFailure);
                    }
                    continue;
                }
                Err(e) => return Err(e),
            };
            let step = match outcome {
                StepOutcome::Optimal => return Ok(LoopEnd::Optimal),
                StepOutcome::Unbounded { .. } => return Ok(LoopEnd::Unbounded),
                StepOutcome::Moved(step) => step,
            };
            self.total += 1;
            match step.kind {
                StepKind::Double => self.double_pivots += 1,
                StepKind::Bland => self.bland_pivots += 1,
                StepKind::Single => {}
            }
            let stalled = before - state.objective < 1e-12 * (1.0 + before.abs());
            if self.options.anti_cycling {
                anti_cycling_guard(state, before, degenerate_before);
            }
            let signature = state.partition.signature();
            let repeated = !seen.insert(signature);
            self.repeated_basis |= repeated;
            if self.options.record_iterations {
                self.records.push(IterationRecord {
                    iteration: self.total,
                    phase,
                    step,
                    stalled,
                    bland_mode: state.bland_mode,
                    basis_signature: signature,
                });
            }
            if repeated && self.options.stop_on_cycle {
                return Ok(LoopEnd::CycleDetected);
            }
        }
    }
}

/// Outcome of phase 1.
pub enum Phase1 {
    Feasible(SimplexState),
    Infeasible,
}

fn crash_and_augment(lp: &StandardFormLp) -> Result<(StandardFormLp, Vec<usize>, usize)> {
    let (m, n) = (lp.num_rows(), lp.num_cols());
    let sign: Vec<f64> = lp.b().iter().map(|&b| if b < 0.0 { -1.0 } else { 1.0 }).collect();
    let b: Vec<f64> = lp.b().iter().zip(&sign).map(|(b, s)| b * s).collect();
    let mut triplets: Vec<(usize, usize, f64)> = lp.a().triplets().map(|(i, j, v)| (i, j, v * sign[i])).collect();
    let signed = SparseMatrix::from_triplets(m, n, &triplets)?;

    // a positive singleton column covers its row; prefer the highest index
    let mut basic: Vec<Option<usize>> = vec![None; m];
    for j in (0..n).rev() {
        let (rows, vals) = signed.column(j);
        if rows.len() == 1 && vals[0] > 0.0 && basic[rows[0]].is_none() {
            basic[rows[0]] = Some(j);
        }
    }
    let mut next = n;
    let mut basis = Vec::with_capacity(m);
    for (i, slot) in basic.into_iter().enumerate() {
        match slot {
            Some(j) => basis.push(j),
            None => {
                triplets.push((i, next, 1.0));
                basis.push(next);
                next += 1;
            }
        }
    }
    let a = SparseMatrix::from_triplets(m, next, &triplets)?;
    let mut c = vec![0.0; next];
    for cj in c.iter_mut().skip(n) {
        *cj = 1.0;
    }
    Ok((StandardFormLp::new(lp.name.clone(), a, b, c)?, basis, next - n))
}

/// Finds a feasible basis, minimizing the sum of artificials with the same
/// engine when the crash basis does not cover every row.
fn run_phase1(lp: &StandardFormLp, run: &mut Run<'_>) -> Result<std::result::Result<SimplexState, SolveStatus>> {
    let options = run.options;
    let n = lp.num_cols();
    let (aux, basis, artificials) = crash_and_augment(lp)?;
    let mut state = SimplexState::from_basis(aux, basis, options)?;
    if artificials > 0 {
        match run.iterate(&mut state, 1)? {
            LoopEnd::Optimal => {}
            LoopEnd::Unbounded => return Err(Error::Validation("phase 1 cannot be unbounded".into())),
            LoopEnd::IterationLimit => return Ok(Err(SolveStatus::IterationLimit)),
            LoopEnd::NumericalFailure => return Ok(Err(SolveStatus::NumericalFailure)),
            LoopEnd::CycleDetected => return Ok(Err(SolveStatus::CycleDetected)),
        }
        let fresh = state.fresh_x_b(options.lu)?;
        let aux_obj: f64 =
            state.partition.basic().iter().zip(&fresh).filter(|(&j, _)| j >= n).map(|(_, &v)| v.abs()).sum();
        if aux_obj > options.tolerances.feas_tol * (1.0 + norm_inf(lp.b())) {
            return Ok(Err(SolveStatus::Infeasible));
        }
        drive_out_artificials(&mut state, n, options)?;
    }

    let total = state.lp.num_cols();
    let mut c = lp.c().to_vec();
    c.resize(total, 0.0);
    state.lp = StandardFormLp::new(lp.name.clone(), state.lp.a().clone(), state.lp.b().to_vec(), c)?;
    for j in n..total {
        state.eligible[j] = false;
    }
    let fresh = state.fresh_x_b(options.lu)?;
    state.x_b = fresh.into_iter().map(|v| if v.abs() < 1e-11 { 0.0 } else { v.max(0.0) }).collect();
    if options.anti_cycling {
        let delta = state.delta;
        for v in state.x_b.iter_mut().filter(|v| **v == 0.0) {
            *v = delta;
        }
    }
    state.bland_mode = false;
    state.stalls = 0;
    state.refresh_objective();
    Ok(Ok(state))
}

/// Pivots zero-level artificials out of the basis where some structural
/// column has a usable entry in their row of `A_B⁻¹A`.
fn drive_out_artificials(state: &mut SimplexState, n: usize, options: &SolverOptions) -> Result<()> {
    for r in 0..state.partition.basic().len() {
        if state.partition.basic()[r] < n {
            continue;
        }
        let f = state.factor(options.lu)?;
        let mut e = vec![0.0; state.x_b.len()];
        e[r] = 1.0;
        let rho = f.solve_transpose(&e);
        let mut best: Option<(usize, f64)> = None;
        for (k, &j) in state.partition.nonbasic().iter().enumerate() {
            if j >= n {
                continue;
            }
            let alpha = state.lp.a().column_dot(j, &rho).abs();
            if alpha > 1e-7 && best.is_none_or(|(_, b)| alpha > b) {
                best = Some((k, alpha));
            }
        }
        if let Some((k, _)) = best {
            state.partition.exchange(r, k);
        }
    }
    Ok(())
}

/// Runs phase 1 alone and returns a feasible state for `lp`.
pub fn phase1(lp: &StandardFormLp, options: &SolverOptions) -> Result<Phase1> {
    let mut run = Run::new(options, lp);
    Ok(match run_phase1(lp, &mut run)? {
        Ok(state) => Phase1::Feasible(state),
        Err(_) => Phase1::Infeasible,
    })
}

impl<'a> Run<'a> {
    fn new(options: &'a SolverOptions, lp: &StandardFormLp) -> Self {
        let limit = options.max_iterations.unwrap_or(1000 * (lp.num_cols() + lp.num_rows()));
        Run { options, limit, total: 0, records: Vec::new(), double_pivots: 0, bland_pivots: 0, repeated_basis: false }
    }
}

/// Solves `min cᵀx, Ax = b, x ≥ 0`.
pub fn solve(lp: &StandardFormLp, options: &SolverOptions) -> Result<SolveResult> {
    let start = Instant::now();
    let n = lp.num_cols();
    let mut run = Run::new(options, lp);
    let (status, phase1_iterations, state) = match run_phase1(lp, &mut run)? {
        Err(status) => (status, run.total, None),
        Ok(mut state) => {
            let p1 = run.total;
            let status = match run.iterate(&mut state, 2)? {
                LoopEnd::Optimal => SolveStatus::Optimal,
                LoopEnd::Unbounded => SolveStatus::Unbounded,
                LoopEnd::IterationLimit => SolveStatus::IterationLimit,
                LoopEnd::NumericalFailure => SolveStatus::NumericalFailure,
                LoopEnd::CycleDetected => SolveStatus::CycleDetected,
            };
            (status, p1, Some(state))
        }
    };
    let mut x = vec![0.0; n];
    let mut basis = Vec::new();
    if let Some(state) = &state {
        let fresh = state.fresh_x_b(options.lu)?;
        for (&j, &v) in state.partition.basic().iter().zip(&fresh) {
            if j < n {
                x[j] = if v < 0.0 && v > -options.tolerances.feas_tol { 0.0 } else { v };
            }
        }
        basis = state.partition.basic().to_vec();
    }
    let time = start.elapsed();
    Ok(SolveResult {
        status,
        objective: lp.objective(&x),
        infeasibility: infeasibility(lp, &x),
        x,
        iterations: run.total,
        phase1_iterations,
        double_pivots: run.double_pivots,
        bland_pivots: run.bland_pivots,
        time,
        basis,
        records: run.records,
        repeated_basis: run.repeated_basis,
    })
}

/// Reduced costs of every column at a basis, recomputed from scratch.
pub fn reduced_costs_at(lp: &StandardFormLp, basis: &[usize]) -> Result<Vec<f64>> {
    let n = lp.num_cols();
    let basic: Vec<usize> = basis.iter().copied().filter(|&j| j < n).collect();
    if basic.len() != lp.num_rows() {
        return Err(Error::Validation("basis contains artificial columns".into()));
    }
    let p = BasisPartition::new(n, basic)?;
    let f = lu_factor(&ColumnsView::new(lp.a(), p.basic()).to_dense(), LuOptions::default())?;
    let (rc, _) = reduced_costs(lp.a(), lp.c(), p.basic(), p.nonbasic(), &f);
    let mut full = vec![0.0; n];
    for (k, &j) in p.nonbasic().iter().enumerate() {
        full[j] = rc[k];
    }
    debug_assert!(p.basic().iter().all(|&j| matches!(p.position_of(j), Slot::Basic(_))));
    Ok(full)
}
