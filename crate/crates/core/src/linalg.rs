//! Dense exact linear algebra over `F_{q^2}`.
//!
//! Plain Gaussian elimination with first-nonzero pivoting; every operation is
//! exact so there is no pivoting strategy to tune.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{FieldContext, Gf};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("no kernel vector with all coordinates in F_q^*")]
    NotFound,
}

/// Outcome of [`Matrix::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Gf>),
    /// Consistent with free variables; the witness sets every free variable
    /// to `1`.
    Underdetermined(Vec<Gf>),
    NoSolution,
}

impl Solution {
    pub fn vector(&self) -> Option<&[Gf]> {
        match self {
            Solution::Unique(u) | Solution::Underdetermined(u) => Some(u),
            Solution::NoSolution => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ctx: Arc<FieldContext>,
    rows: usize,
    cols: usize,
    entries: Vec<Gf>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(
        ctx: Arc<FieldContext>,
        rows: usize,
        cols: usize,
        entries: Vec<Gf>,
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self {
            ctx,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(ctx: Arc<FieldContext>, rows: usize, cols: usize) -> Self {
        Self {
            ctx,
            rows,
            cols,
            entries: vec![Gf::ZERO; rows * cols],
        }
    }

    pub fn identity(ctx: Arc<FieldContext>, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, Gf::ONE);
        }
        m
    }

    pub fn from_fn(
        ctx: Arc<FieldContext>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Gf,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self {
            ctx,
            rows,
            cols,
            entries,
        }
    }

    pub fn ctx(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Gf {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, x: Gf) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Gf] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Copy with column `c` removed.
    pub fn without_column(&self, c: usize) -> Matrix {
        Matrix::from_fn(self.ctx.clone(), self.rows, self.cols - 1, |r, k| {
            self.get(r, if k < c { k } else { k + 1 })
        })
    }

    /// Copy with the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.ctx.clone(), self.rows, cols.len(), |r, k| {
            self.get(r, cols[k])
        })
    }

    /// Copy with a row of ones stacked on top.
    pub fn with_ones_row(&self) -> Matrix {
        let mut entries = vec![Gf::ONE; self.cols];
        entries.extend_from_slice(&self.entries);
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows + 1,
            cols: self.cols,
            entries,
        }
    }

    /// Entrywise `x -> x^q`.
    pub fn conjugate(&self) -> Matrix {
        Matrix {
            ctx: self.ctx.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&x| self.ctx.frobenius(x)).collect(),
        }
    }

    pub fn mul_vec(&self, u: &[Gf]) -> Result<Vec<Gf>, LinalgError> {
        if u.len() != self.cols {
            return Err(LinalgError::Dimension(format!(
                "vector of length {} against {} columns",
                u.len(),
                self.cols
            )));
        }
        let ctx = &self.ctx;
        Ok((0..self.rows)
            .map(|r| ctx.sum(self.row(r).iter().zip(u).map(|(&a, &b)| ctx.mul(a, b))))
            .collect())
    }

    pub fn determinant(&self) -> Result<Gf, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let ctx = &self.ctx;
        let n = self.rows;
        let mut m = self.entries.clone();
        let mut det = Gf::ONE;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[r * n + col].is_zero()) else {
                return Ok(Gf::ZERO);
            };
            if pivot != col {
                for c in 0..n {
                    m.swap(pivot * n + c, col * n + c);
                }
                det = ctx.neg(det);
            }
            let pv = m[col * n + col];
            det = ctx.mul(det, pv);
            let pinv = ctx.inv(pv).expect("pivot is nonzero");
            for r in col + 1..n {
                let factor = ctx.mul(m[r * n + col], pinv);
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let sub = ctx.mul(factor, m[col * n + c]);
                    m[r * n + c] = ctx.sub(m[r * n + c], sub);
                }
            }
        }
        Ok(det)
    }

    pub fn rank(&self) -> usize {
        self.echelon(None).rank
    }

    /// Solves `M u = b`.
    pub fn solve(&self, b: &[Gf]) -> Result<Solution, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::Dimension(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let ech = self.echelon(Some(b));
        let rhs = ech.rhs.expect("augmented elimination keeps the rhs");
        if rhs[ech.rank..].iter().any(|x| !x.is_zero()) {
            return Ok(Solution::NoSolution);
        }
        let ctx = &self.ctx;
        let mut u = vec![Gf::ONE; self.cols];
        for (r, &pc) in ech.pivots.iter().enumerate() {
            // reduced row echelon: pivot entry 1, zeros in other pivot columns
            let row = &ech.m[r * self.cols..(r + 1) * self.cols];
            let free_part = ctx.sum(
                (0..self.cols)
                    .filter(|c| !ech.pivots.contains(c))
                    .map(|c| row[c]),
            );
            u[pc] = ctx.sub(rhs[r], free_part);
        }
        if ech.rank == self.cols {
            Ok(Solution::Unique(u))
        } else {
            Ok(Solution::Underdetermined(u))
        }
    }

    /// Kernel vector with every coordinate in `F_q^*`.
    ///
    /// Solves the two column-deleted subsystems (first column dropped, last
    /// column dropped), each normalized by `sum = 1`, giving `x` and `y` of
    /// length `h - 1`, then returns `(0, x) - lambda (y, 0)` for the first
    /// `lambda = g^{(q+1) i}` that leaves no zero coordinate. This succeeds
    /// when `M` is row-equivalent to its conjugate and has rank `h - 2` or
    /// less with all normalized subsystem solutions nonzero.
    ///
    /// When a subsystem degenerates (in small characteristic the ones row can
    /// repeat a constraint row), falls back to scanning `F_q` combinations of
    /// the reduced kernel basis.
    pub fn kernel_vector_nonzero_coords(&self) -> Result<Vec<Gf>, LinalgError> {
        match self.kernel_from_subsystems() {
            Err(LinalgError::NotFound) => self.kernel_from_basis(),
            other => other,
        }
    }

    fn kernel_from_subsystems(&self) -> Result<Vec<Gf>, LinalgError> {
        let h = self.cols;
        if h == 0 || self.rank() == h {
            return Err(LinalgError::NotFound);
        }
        let ctx = &self.ctx;
        if h == 1 {
            return Ok(vec![Gf::ONE]);
        }
        let normalized = |sub: &Matrix| -> Result<Vec<Gf>, LinalgError> {
            let aug = sub.with_ones_row();
            let mut b = vec![Gf::ZERO; aug.rows()];
            b[0] = Gf::ONE;
            let sol = aug.solve(&b)?;
            let x = sol.vector().ok_or(LinalgError::NotFound)?.to_vec();
            if x.iter().all(|&c| !c.is_zero() && ctx.in_base_field(c)) {
                Ok(x)
            } else {
                Err(LinalgError::NotFound)
            }
        };
        let x = normalized(&self.without_column(0))?;
        let y = normalized(&self.without_column(h - 1))?;
        for lambda in ctx.base_units() {
            let mut u = Vec::with_capacity(h);
            u.push(ctx.neg(ctx.mul(lambda, y[0])));
            for k in 1..h - 1 {
                u.push(ctx.sub(x[k - 1], ctx.mul(lambda, y[k])));
            }
            u.push(x[h - 2]);
            if u.iter().any(|c| c.is_zero()) {
                continue;
            }
            if self.mul_vec(&u)?.iter().all(|c| c.is_zero()) {
                return Ok(u);
            }
        }
        Err(LinalgError::NotFound)
    }

    fn kernel_from_basis(&self) -> Result<Vec<Gf>, LinalgError> {
        const SCAN_LIMIT: usize = 1 << 20;
        let ctx = &self.ctx;
        let (h, ech) = (self.cols, self.echelon(None));
        let free: Vec<usize> = (0..h).filter(|c| !ech.pivots.contains(c)).collect();
        if free.is_empty() {
            return Err(LinalgError::NotFound);
        }
        let basis: Vec<Vec<Gf>> = free
            .iter()
            .map(|&j| {
                let mut b = vec![Gf::ZERO; h];
                b[j] = Gf::ONE;
                for (r, &pc) in ech.pivots.iter().enumerate() {
                    b[pc] = ctx.neg(ech.m[r * h + j]);
                }
                b
            })
            .collect();
        // F_q combinations only reach F_q vectors when the basis is over F_q
        if basis.iter().flatten().any(|&x| !ctx.in_base_field(x)) {
            return Err(LinalgError::NotFound);
        }
        let coeffs: Vec<Gf> = std::iter::once(Gf::ZERO).chain(ctx.base_units()).collect();
        let mut idx = vec![0usize; free.len()];
        for _ in 0..SCAN_LIMIT {
            let mut u = vec![Gf::ZERO; h];
            for (b, &i) in basis.iter().zip(&idx) {
                for (x, &y) in u.iter_mut().zip(b) {
                    *x = ctx.add(*x, ctx.mul(coeffs[i], y));
                }
            }
            if u.iter().all(|x| !x.is_zero()) {
                return Ok(u);
            }
            let Some(k) = idx.iter().position(|&i| i + 1 < coeffs.len()) else {
                break;
            };
            idx[k] += 1;
            idx[..k].fill(0);
        }
        Err(LinalgError::NotFound)
    }

    /// Reduced row echelon form, optionally carrying a right-hand side.
    fn echelon(&self, b: Option<&[Gf]>) -> Echelon {
        let ctx = &self.ctx;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.entries.clone();
        let mut rhs = b.map(<[Gf]>::to_vec);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..cols {
                    m.swap(p * cols + k, r * cols + k);
                }
                if let Some(rhs) = rhs.as_mut() {
                    rhs.swap(p, r);
                }
            }
            let pinv = ctx.inv(m[r * cols + c]).expect("pivot is nonzero");
            for k in 0..cols {
                m[r * cols + k] = ctx.mul(m[r * cols + k], pinv);
            }
            if let Some(rhs) = rhs.as_mut() {
                rhs[r] = ctx.mul(rhs[r], pinv);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = m[i * cols + c];
                if factor.is_zero() {
                    continue;
                }
                for k in 0..cols {
                    let sub = ctx.mul(factor, m[r * cols + k]);
                    m[i * cols + k] = ctx.sub(m[i * cols + k], sub);
                }
                if let Some(rhs) = rhs.as_mut() {
                    let sub = ctx.mul(factor, rhs[r]);
                    rhs[i] = ctx.sub(rhs[i], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            m,
            rhs,
            rank: r,
            pivots,
        }
    }
}

struct Echelon {
    m: Vec<Gf>,
    rhs: Option<Vec<Gf>>,
    rank: usize,
    pivots: Vec<usize>,
}
