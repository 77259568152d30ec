//! Dense LU factorization with partial pivoting and the basis solves built
//! on it. No explicit inverse is ever formed.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::model::ColumnsView;

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    nrows: usize,
    ncols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        DenseMatrix { nrows, ncols, data: vec![0.0; nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged rows");
            data.extend_from_slice(r);
        }
        DenseMatrix { nrows, ncols, data }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.nrows).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn transpose_mul_vec(&self, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.ncols];
        for (i, &yi) in y.iter().enumerate().take(self.nrows) {
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += a * yi;
            }
        }
        out
    }

    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.ncols, other.nrows);
        let mut out = DenseMatrix::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.ncols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn norm_inf(&self) -> f64 {
        (0..self.nrows).map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.ncols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.ncols + j]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LuOptions {
    /// A pivot below `singular_tol · max(1, ‖M‖∞)` counts as zero.
    pub singular_tol: f64,
    /// Replacement magnitude for zero pivots, relative to `max(1, ‖M‖∞)`.
    pub eps: f64,
}

impl Default for LuOptions {
    fn default() -> Self {
        LuOptions { singular_tol: 1e-11, eps: 1e-10 }
    }
}

/// `PM = LU` with unit lower `L`, stored packed in one matrix.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: DenseMatrix,
    /// `perm[i]` is the original row placed at position `i`.
    perm: Vec<usize>,
    perturbed: Vec<usize>,
    eps_used: f64,
}

/// Factors a square matrix. Near-zero pivots are replaced by a small
/// sign-preserving value so the solves stay defined; [`LuFactors::perturbed`]
/// lists the affected diagonal positions.
pub fn lu_factor(m: &DenseMatrix, opts: LuOptions) -> Result<LuFactors> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::Dimension(format!("LU needs a square matrix, got {}x{}", n, m.ncols())));
    }
    if m.data.iter().any(|v| !v.is_finite()) {
        return Err(Error::Validation("matrix has non-finite entries".into()));
    }
    let scale = m.norm_inf().max(1.0);
    let tiny = opts.singular_tol * scale;
    let repl = opts.eps * scale;
    let mut lu = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut perturbed = Vec::new();
    for k in 0..n {
        let mut p = k;
        let mut best = lu[(k, k)].abs();
        for i in k + 1..n {
            let v = lu[(i, k)].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        if p != k {
            let (a, b) = (k * n, p * n);
            for j in 0..n {
                lu.data.swap(a + j, b + j);
            }
            perm.swap(k, p);
        }
        let mut pivot = lu[(k, k)];
        if pivot.abs() < tiny {
            pivot = if pivot < 0.0 { -repl } else { repl };
            lu[(k, k)] = pivot;
            perturbed.push(k);
        }
        for i in k + 1..n {
            let f = lu[(i, k)] / pivot;
            lu[(i, k)] = f;
            if f == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let u = lu[(k, j)];
                lu[(i, j)] -= f * u;
            }
        }
    }
    Ok(LuFactors { lu, perm, perturbed, eps_used: repl })
}

impl LuFactors {
    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Diagonal positions of `U` whose pivot was replaced.
    pub fn perturbed(&self) -> &[usize] {
        &self.perturbed
    }

    /// Magnitude used for replaced pivots.
    pub fn eps_used(&self) -> f64 {
        self.eps_used
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Unit lower factor.
    pub fn l(&self) -> DenseMatrix {
        let n = self.dim();
        let mut l = DenseMatrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                l[(i, j)] = self.lu[(i, j)];
            }
        }
        l
    }

    pub fn u(&self) -> DenseMatrix {
        let n = self.dim();
        let mut u = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                u[(i, j)] = self.lu[(i, j)];
            }
        }
        u
    }

    /// Solves `Mx = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(b.len(), n);
        let mut x: Vec<f64> = self.perm.iter().map(|&r| b[r]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let s: f64 = row[..i].iter().zip(&x[..i]).map(|(l, y)| l * y).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let s: f64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(u, y)| u * y).sum();
            x[i] = (x[i] - s) / row[i];
        }
        x
    }

    /// Solves `Mᵀp = c`.
    pub fn solve_transpose(&self, c: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(c.len(), n);
        // Uᵀw = c, column-oriented forward substitution
        let mut w = c.to_vec();
        for i in 0..n {
            w[i] /= self.lu[(i, i)];
            let wi = w[i];
            if wi != 0.0 {
                for j in i + 1..n {
                    w[j] -= self.lu[(i, j)] * wi;
                }
            }
        }
        // Lᵀz = w
        for i in (0..n).rev() {
            let zi = w[i];
            if zi != 0.0 {
                for j in 0..i {
                    w[j] -= self.lu[(i, j)] * zi;
                }
            }
        }
        let mut p = vec![0.0; n];
        for (i, &r) in self.perm.iter().enumerate() {
            p[r] = w[i];
        }
        p
    }

    /// Solves `MX = B` column by column.
    pub fn solve_multi(&self, rhs: &[Vec<f64>]) -> Vec<Vec<f64>> {
        rhs.iter().map(|b| self.solve(b)).collect()
    }
}

/// Factors the basis columns with default tolerances.
pub fn factor_basis(a_b: &ColumnsView<'_>) -> Result<LuFactors> {
    lu_factor(&a_b.to_dense(), LuOptions::default())
}

/// `A_B x = b`: forward solve with `L`, back solve with `U`.
pub fn solve_basis(f: &LuFactors, b: &[f64]) -> Result<Vec<f64>> {
    check_len(f, b.len())?;
    Ok(f.solve(b))
}

/// `A_Bᵀ p = c_B`: `Uᵀw = c_B`, then `Lᵀ` and the permutation.
pub fn solve_basis_transpose(f: &LuFactors, c_b: &[f64]) -> Result<Vec<f64>> {
    check_len(f, c_b.len())?;
    Ok(f.solve_transpose(c_b))
}

/// `A_B X = [r_1 … r_k]` against one factorization.
pub fn solve_basis_multi(f: &LuFactors, columns: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if columns.is_empty() {
        return Err(Error::Dimension("no right-hand sides".into()));
    }
    for r in columns {
        check_len(f, r.len())?;
    }
    Ok(f.solve_multi(columns))
}

fn check_len(f: &LuFactors, len: usize) -> Result<()> {
    if f.dim() != len {
        return Err(Error::Dimension(format!("basis has dimension {} but right-hand side has length {}", f.dim(), len)));
    }
    Ok(())
}
