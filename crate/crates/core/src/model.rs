//! Problem representations shared by the solver.
//!
//! [`StandardFormLp`] is the form the simplex engine works on:
//! `min cᵀx  s.t.  Ax = b, x ≥ 0` with `A` stored column-wise.
//! [`GeneralLp`] is the MPS-level model (row senses, ranges, bounds) and
//! [`to_standard_form`] lowers it, returning a [`VariableMap`] that maps
//! standard-form solutions back to the original variables.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Compressed sparse column matrix. Row indices within a column are sorted
/// and no explicit zeros are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    col_start: Vec<usize>,
    row_index: Vec<usize>,
    values: Vec<f64>,
}

impl SparseMatrix {
    /// Builds a matrix from `(row, col, value)` triplets. Duplicate entries
    /// are summed and entries that end up exactly zero are dropped.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: &[(usize, usize, f64)]) -> Result<Self> {
        let mut per_col: Vec<Vec<(usize, f64)>> = vec![Vec::new(); ncols];
        for &(r, c, v) in triplets {
            if r >= nrows || c >= ncols {
                return Err(Error::Dimension(format!(
                    "entry ({}, {}) outside a {}x{} matrix",
                    r + 1,
                    c + 1,
                    nrows,
                    ncols
                )));
            }
            if !v.is_finite() {
                return Err(Error::Validation(format!("non-finite coefficient at ({}, {})", r + 1, c + 1)));
            }
            per_col[c].push((r, v));
        }
        let mut col_start = Vec::with_capacity(ncols + 1);
        let mut row_index = Vec::new();
        let mut values = Vec::new();
        col_start.push(0);
        for mut col in per_col {
            col.sort_by_key(|&(r, _)| r);
            let mut k = 0;
            while k < col.len() {
                let r = col[k].0;
                let mut sum = 0.0;
                while k < col.len() && col[k].0 == r {
                    sum += col[k].1;
                    k += 1;
                }
                if sum != 0.0 {
                    row_index.push(r);
                    values.push(sum);
                }
            }
            col_start.push(row_index.len());
        }
        Ok(SparseMatrix { nrows, ncols, col_start, row_index, values })
    }

    pub fn from_dense_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut triplets = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::Dimension("ragged dense rows".into()));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != 0.0 {
                    triplets.push((i, j, v));
                }
            }
        }
        Self::from_triplets(nrows, ncols, &triplets)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Row indices and values of column `j`.
    pub fn column(&self, j: usize) -> (&[usize], &[f64]) {
        let (s, e) = (self.col_start[j], self.col_start[j + 1]);
        (&self.row_index[s..e], &self.values[s..e])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (rows, vals) = self.column(j);
        match rows.binary_search(&i) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    /// Dense copy of column `j`.
    pub fn dense_column(&self, j: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.nrows];
        let (rows, vals) = self.column(j);
        for (&r, &v) in rows.iter().zip(vals) {
            out[r] = v;
        }
        out
    }

    /// `a_jᵀ y`.
    pub fn column_dot(&self, j: usize, y: &[f64]) -> f64 {
        let (rows, vals) = self.column(j);
        rows.iter().zip(vals).map(|(&r, &v)| v * y[r]).sum()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.nrows];
        for (j, &xj) in x.iter().enumerate().take(self.ncols) {
            if xj == 0.0 {
                continue;
            }
            let (rows, vals) = self.column(j);
            for (&r, &v) in rows.iter().zip(vals) {
                out[r] += v * xj;
            }
        }
        out
    }

    /// Max-row-sum norm.
    pub fn norm_inf(&self) -> f64 {
        let mut sums = vec![0.0f64; self.nrows];
        for (&r, &v) in self.row_index.iter().zip(&self.values) {
            sums[r] += v.abs();
        }
        sums.into_iter().fold(0.0, f64::max)
    }

    /// Iterates over all stored entries as `(row, col, value)`.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.ncols).flat_map(move |j| {
            let (rows, vals) = self.column(j);
            rows.iter().zip(vals).map(move |(&r, &v)| (r, j, v))
        })
    }
}

/// `min cᵀx  s.t.  Ax = b, x ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardFormLp {
    pub name: String,
    a: SparseMatrix,
    b: Vec<f64>,
    c: Vec<f64>,
}

impl StandardFormLp {
    pub fn new(name: impl Into<String>, a: SparseMatrix, b: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        if a.nrows() == 0 || a.ncols() == 0 {
            return Err(Error::Dimension("standard form needs at least one row and one column".into()));
        }
        if b.len() != a.nrows() {
            return Err(Error::Dimension(format!("b has length {}, expected {}", b.len(), a.nrows())));
        }
        if c.len() != a.ncols() {
            return Err(Error::Dimension(format!("c has length {}, expected {}", c.len(), a.ncols())));
        }
        if b.iter().chain(&c).any(|v| !v.is_finite()) {
            return Err(Error::Validation("b and c must be finite".into()));
        }
        Ok(StandardFormLp { name: name.into(), a, b, c })
    }

    /// Convenience constructor from dense rows.
    pub fn from_dense(name: impl Into<String>, a: &[Vec<f64>], b: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        Self::new(name, SparseMatrix::from_dense_rows(a)?, b, c)
    }

    pub fn num_rows(&self) -> usize {
        self.a.nrows()
    }

    pub fn num_cols(&self) -> usize {
        self.a.ncols()
    }

    pub fn a(&self) -> &SparseMatrix {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn objective(&self, x: &[f64]) -> f64 {
        self.c.iter().zip(x).map(|(c, x)| c * x).sum()
    }
}

/// `‖Ax − b‖∞`, the residual reported as "infeasibility".
pub fn infeasibility(lp: &StandardFormLp, x: &[f64]) -> f64 {
    lp.a()
        .mul_vec(x)
        .iter()
        .zip(lp.b())
        .map(|(ax, b)| (ax - b).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Basic(usize),
    Nonbasic(usize),
}

/// Partition of the column indices into basic and nonbasic lists.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisPartition {
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    position: Vec<Slot>,
}

impl BasisPartition {
    /// `basic` lists one column per row; every other column in `0..n` is
    /// nonbasic, in increasing order.
    pub fn new(n: usize, basic: Vec<usize>) -> Result<Self> {
        let mut position = vec![None; n];
        for (slot, &col) in basic.iter().enumerate() {
            if col >= n {
                return Err(Error::Dimension(format!("basic column {} out of range 1..{}", col + 1, n)));
            }
            if position[col].is_some() {
                return Err(Error::Validation(format!("column {} listed twice in the basis", col + 1)));
            }
            position[col] = Some(Slot::Basic(slot));
        }
        let mut nonbasic = Vec::with_capacity(n.saturating_sub(basic.len()));
        for (col, pos) in position.iter_mut().enumerate() {
            if pos.is_none() {
                *pos = Some(Slot::Nonbasic(nonbasic.len()));
                nonbasic.push(col);
            }
        }
        let position = position.into_iter().map(Option::unwrap).collect();
        Ok(BasisPartition { basic, nonbasic, position })
    }

    pub fn basic(&self) -> &[usize] {
        &self.basic
    }

    pub fn nonbasic(&self) -> &[usize] {
        &self.nonbasic
    }

    pub fn position_of(&self, col: usize) -> Slot {
        self.position[col]
    }

    pub fn is_basic(&self, col: usize) -> bool {
        matches!(self.position[col], Slot::Basic(_))
    }

    /// Swaps the column in `basic_slot` with the one in `nonbasic_slot`.
    pub fn exchange(&mut self, basic_slot: usize, nonbasic_slot: usize) {
        let leaving = self.basic[basic_slot];
        let entering = self.nonbasic[nonbasic_slot];
        self.basic[basic_slot] = entering;
        self.nonbasic[nonbasic_slot] = leaving;
        self.position[entering] = Slot::Basic(basic_slot);
        self.position[leaving] = Slot::Nonbasic(nonbasic_slot);
    }

    /// Order-independent fingerprint of the basic set.
    pub fn signature(&self) -> u64 {
        let mut cols = self.basic.clone();
        cols.sort_unstable();
        // FNV-1a over the sorted indices
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for c in cols {
            for byte in (c as u64).to_le_bytes() {
                h ^= byte as u64;
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
        h
    }
}

/// A column subset of `A`, borrowed without copying coefficients.
#[derive(Debug, Clone, Copy)]
pub struct ColumnsView<'a> {
    matrix: &'a SparseMatrix,
    indices: &'a [usize],
}

impl<'a> ColumnsView<'a> {
    pub fn new(matrix: &'a SparseMatrix, indices: &'a [usize]) -> Self {
        ColumnsView { matrix, indices }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &'a [usize] {
        self.indices
    }

    pub fn column(&self, k: usize) -> (&'a [usize], &'a [f64]) {
        self.matrix.column(self.indices[k])
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.matrix.nrows(), self.indices.len());
        for k in 0..self.indices.len() {
            let (rows, vals) = self.column(k);
            for (&r, &v) in rows.iter().zip(vals) {
                out[(r, k)] = v;
            }
        }
        out
    }
}

pub struct ColumnSplit<'a> {
    pub a_b: ColumnsView<'a>,
    pub a_n: ColumnsView<'a>,
    pub c_b: Vec<f64>,
    pub c_n: Vec<f64>,
}

/// `A = [A_B, A_N]` and the matching cost split, ordered like the index lists.
pub fn split_columns<'a>(lp: &'a StandardFormLp, p: &'a BasisPartition) -> ColumnSplit<'a> {
    ColumnSplit {
        a_b: ColumnsView::new(lp.a(), p.basic()),
        a_n: ColumnsView::new(lp.a(), p.nonbasic()),
        c_b: p.basic().iter().map(|&j| lp.c()[j]).collect(),
        c_n: p.nonbasic().iter().map(|&j| lp.c()[j]).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub name: String,
    pub kind: RowKind,
    pub rhs: f64,
    /// MPS `RANGES` value, if any.
    pub range: Option<f64>,
}

impl Constraint {
    /// Interval `[lo, hi]` the row activity must lie in.
    pub fn interval(&self) -> (f64, f64) {
        let b = self.rhs;
        match (self.kind, self.range) {
            (RowKind::Le, None) => (f64::NEG_INFINITY, b),
            (RowKind::Ge, None) => (b, f64::INFINITY),
            (RowKind::Eq, None) => (b, b),
            (RowKind::Le, Some(r)) => (b - r.abs(), b),
            (RowKind::Ge, Some(r)) => (b, b + r.abs()),
            (RowKind::Eq, Some(r)) if r >= 0.0 => (b, b + r),
            (RowKind::Eq, Some(r)) => (b + r, b),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { lower: 0.0, upper: f64::INFINITY }
    }
}

impl Bounds {
    pub fn free() -> Self {
        Bounds { lower: f64::NEG_INFINITY, upper: f64::INFINITY }
    }

    pub fn fixed(v: f64) -> Self {
        Bounds { lower: v, upper: v }
    }

    pub fn is_fixed(&self) -> bool {
        self.lower == self.upper
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub name: String,
    pub cost: f64,
    pub bounds: Bounds,
}

/// MPS-level linear program.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralLp {
    pub name: String,
    pub sense: Sense,
    pub objective_name: String,
    pub objective_constant: f64,
    pub rows: Vec<Constraint>,
    pub columns: Vec<Variable>,
    /// `(row, column, value)` constraint coefficients.
    pub coefficients: Vec<(usize, usize, f64)>,
}

impl GeneralLp {
    pub fn new(name: impl Into<String>, sense: Sense) -> Self {
        GeneralLp {
            name: name.into(),
            sense,
            objective_name: "OBJ".into(),
            objective_constant: 0.0,
            rows: Vec::new(),
            columns: Vec::new(),
            coefficients: Vec::new(),
        }
    }

    pub fn add_row(&mut self, name: impl Into<String>, kind: RowKind, rhs: f64) -> usize {
        self.rows.push(Constraint { name: name.into(), kind, rhs, range: None });
        self.rows.len() - 1
    }

    pub fn add_column(&mut self, name: impl Into<String>, cost: f64, bounds: Bounds) -> usize {
        self.columns.push(Variable { name: name.into(), cost, bounds });
        self.columns.len() - 1
    }

    pub fn set_coefficient(&mut self, row: usize, col: usize, value: f64) {
        self.coefficients.push((row, col, value));
    }

    pub fn validate(&self) -> Result<()> {
        let (m, n) = (self.rows.len(), self.columns.len());
        for &(r, c, v) in &self.coefficients {
            if r >= m || c >= n {
                return Err(Error::Validation(format!("coefficient ({}, {}) references an undeclared row or column", r + 1, c + 1)));
            }
            if !v.is_finite() {
                return Err(Error::Validation(format!("non-finite coefficient in row {}", self.rows[r].name)));
            }
        }
        for row in &self.rows {
            if !row.rhs.is_finite() || row.range.is_some_and(|r| !r.is_finite()) {
                return Err(Error::Validation(format!("row {} has a non-finite rhs or range", row.name)));
            }
        }
        for col in &self.columns {
            if !col.cost.is_finite() || col.bounds.lower.is_nan() || col.bounds.upper.is_nan() {
                return Err(Error::Validation(format!("column {} has invalid data", col.name)));
            }
        }
        Ok(())
    }

    /// Row activities `Ax` for a point in the original space.
    pub fn row_activities(&self, x: &[f64]) -> Vec<f64> {
        let mut act = vec![0.0; self.rows.len()];
        for &(r, c, v) in &self.coefficients {
            act[r] += v * x[c];
        }
        act
    }

    /// Objective value (in the model's own sense) at `x`.
    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective_constant + self.columns.iter().zip(x).map(|(v, x)| v.cost * x).sum::<f64>()
    }

    /// Largest violation of any row interval or variable bound at `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for (row, act) in self.rows.iter().zip(self.row_activities(x)) {
            let (lo, hi) = row.interval();
            worst = worst.max(lo - act).max(act - hi);
        }
        for (col, &v) in self.columns.iter().zip(x) {
            worst = worst.max(col.bounds.lower - v).max(v - col.bounds.upper);
        }
        worst
    }

    pub fn column_index(&self) -> HashMap<&str, usize> {
        self.columns.iter().enumerate().map(|(j, c)| (c.name.as_str(), j)).collect()
    }
}

/// How an original variable is represented in standard form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VarRepr {
    /// `x = offset + sign · x_std[col]`
    Shifted { col: usize, offset: f64, sign: f64 },
    /// `x = x_std[pos] − x_std[neg]`
    Split { pos: usize, neg: usize },
    Fixed(f64),
}

/// Maps standard-form values back to the original variables.
#[derive(Debug, Clone, PartialEq)]
pub struct VariableMap {
    pub vars: Vec<VarRepr>,
    /// `+1` for minimization, `−1` for maximization.
    pub sense_sign: f64,
    /// Constant such that `c_stdᵀx_std + constant` is the sense-adjusted
    /// (minimization) objective.
    pub objective_constant: f64,
    /// Number of rows that came from the original constraints.
    pub original_rows: usize,
}

impl VariableMap {
    pub fn recover(&self, x_std: &[f64]) -> Vec<f64> {
        self.vars
            .iter()
            .map(|v| match *v {
                VarRepr::Shifted { col, offset, sign } => offset + sign * x_std[col],
                VarRepr::Split { pos, neg } => x_std[pos] - x_std[neg],
                VarRepr::Fixed(v) => v,
            })
            .collect()
    }

    /// Original-sense objective from a standard-form objective value.
    pub fn original_objective(&self, std_objective: f64) -> f64 {
        self.sense_sign * (std_objective + self.objective_constant)
    }
}

/// Lowers a [`GeneralLp`] to `min cᵀx, Ax = b, x ≥ 0`.
///
/// Column layout: transformed structural columns first (free variables
/// contribute two), then one slack/surplus per inequality or ranged row in
/// row order, then the slacks of the explicit upper-bound rows.
pub fn to_standard_form(g: &GeneralLp) -> Result<(StandardFormLp, VariableMap)> {
    g.validate()?;
    if g.columns.iter().all(|c| c.cost == 0.0) {
        return Err(Error::Validation("objective has no nonzero coefficients".into()));
    }
    let sense_sign = match g.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };

    let mut vars = Vec::with_capacity(g.columns.len());
    let mut costs = Vec::new();
    // (std column, upper-bound width) pairs that need an explicit row
    let mut upper_rows = Vec::new();
    let mut constant = sense_sign * g.objective_constant;
    for col in &g.columns {
        let Bounds { lower, upper } = col.bounds;
        if lower > upper {
            return Err(Error::InfeasibleModel(format!("column {} has lower bound {} > upper bound {}", col.name, lower, upper)));
        }
        let c = sense_sign * col.cost;
        let repr = if lower == upper {
            if !lower.is_finite() {
                return Err(Error::Validation(format!("column {} fixed at an infinite value", col.name)));
            }
            constant += c * lower;
            VarRepr::Fixed(lower)
        } else if lower.is_finite() {
            let j = costs.len();
            costs.push(c);
            constant += c * lower;
            if upper.is_finite() {
                upper_rows.push((j, upper - lower));
            }
            VarRepr::Shifted { col: j, offset: lower, sign: 1.0 }
        } else if upper.is_finite() {
            let j = costs.len();
            costs.push(-c);
            constant += c * upper;
            VarRepr::Shifted { col: j, offset: upper, sign: -1.0 }
        } else {
            let pos = costs.len();
            costs.push(c);
            costs.push(-c);
            VarRepr::Split { pos, neg: pos + 1 }
        };
        vars.push(repr);
    }

    // Row activity shift from fixed/shifted variables, and the coefficients
    // in terms of the standard-form columns.
    let m0 = g.rows.len();
    let mut shift = vec![0.0; m0];
    let mut triplets = Vec::with_capacity(g.coefficients.len() + m0 + upper_rows.len() * 2);
    for &(r, c, v) in &g.coefficients {
        match vars[c] {
            VarRepr::Fixed(x) => shift[r] += v * x,
            VarRepr::Shifted { col, offset, sign } => {
                shift[r] += v * offset;
                triplets.push((r, col, v * sign));
            }
            VarRepr::Split { pos, neg } => {
                triplets.push((r, pos, v));
                triplets.push((r, neg, -v));
            }
        }
    }

    let mut rhs = Vec::with_capacity(m0);
    let mut extra_rows: Vec<(usize, f64)> = Vec::new(); // (slack column, width)
    for (i, row) in g.rows.iter().enumerate() {
        let (lo, hi) = row.interval();
        let (lo, hi) = (lo - shift[i], hi - shift[i]);
        if lo > hi {
            return Err(Error::InfeasibleModel(format!("row {} has an empty range", row.name)));
        }
        if lo == hi {
            rhs.push(lo);
        } else if lo.is_infinite() {
            triplets.push((i, costs.len(), 1.0));
            costs.push(0.0);
            rhs.push(hi);
        } else if hi.is_infinite() {
            triplets.push((i, costs.len(), -1.0));
            costs.push(0.0);
            rhs.push(lo);
        } else {
            // aᵀx − s = lo with 0 ≤ s ≤ hi − lo
            let s = costs.len();
            triplets.push((i, s, -1.0));
            costs.push(0.0);
            rhs.push(lo);
            extra_rows.push((s, hi - lo));
        }
    }
    for &(col, width) in upper_rows.iter().chain(&extra_rows) {
        let r = rhs.len();
        triplets.push((r, col, 1.0));
        triplets.push((r, costs.len(), 1.0));
        costs.push(0.0);
        rhs.push(width);
    }

    if rhs.is_empty() {
        return Err(Error::Validation("model has no constraints".into()));
    }
    if costs.is_empty() {
        return Err(Error::Validation("all columns are fixed".into()));
    }
    let a = SparseMatrix::from_triplets(rhs.len(), costs.len(), &triplets)?;
    let lp = StandardFormLp::new(g.name.clone(), a, rhs, costs)?;
    let map = VariableMap { vars, sense_sign, objective_constant: constant, original_rows: m0 };
    Ok((lp, map))
}
