//! Exact linear algebra over a [`Scalar`] field: dense matrices for the
//! small quaternionic/R-tensor computations and sparse row-reduction
//! machinery (rank, nullspaces, span membership with coefficient
//! tracking) for relation spaces, Koszul complexes and PBW checks.
//!
//! Everything here is plain Gaussian elimination; with `GaussianRational`
//! scalars the results (ranks, nullspace bases, solvability) are exact.

use crate::scalar::Scalar;

/// A dense rows × cols matrix in row-major order.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    /// Build from integer row data (test and constant-matrix helper).
    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::from_fn(r, c, |i, j| S::int(rows[i][j]))
    }

    pub fn at(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        Mat::from_fn(self.rows, self.cols, |i, j| f(self.at(i, j)))
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|v| s.clone() * v.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() + other.at(i, j).clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| {
            self.at(i, j).clone() - other.at(i, j).clone()
        })
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc + a.clone() * other.at(k, j).clone();
            }
            acc
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    pub fn trace(&self) -> S {
        assert_eq!(self.rows, self.cols);
        let mut acc = S::zero();
        for i in 0..self.rows {
            acc = acc + self.at(i, i).clone();
        }
        acc
    }

    /// Whether ᵗM = M.
    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.at(i, j) == self.at(j, i)))
    }

    /// Whether ᵗM = −M.
    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..=i).all(|j| (self.at(i, j).clone() + self.at(j, i).clone()).is_zero())
            })
    }

    /// Whether every entry is fixed by conjugation.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|v| v.conj() == *v)
    }

    /// Whether ᵗM M = 1.
    pub fn is_orthogonal(&self) -> bool {
        self.transpose().mul(self).is_identity()
    }
}

/// A sparse vector: strictly increasing indices, no stored zeros.
pub type SVec<S> = Vec<(usize, S)>;

/// Drop (tolerance-aware) zeros and assert sortedness.
pub fn svec_normalize<S: Scalar>(mut v: SVec<S>) -> SVec<S> {
    debug_assert!(v.windows(2).all(|w| w[0].0 < w[1].0), "unsorted sparse vector");
    v.retain(|(_, s)| !s.is_zero());
    v
}

/// Build a sparse vector from terms in arbitrary order: sort by index,
/// merge duplicates, drop zeros.
pub fn svec_collect<S: Scalar>(mut terms: Vec<(usize, S)>) -> SVec<S> {
    terms.sort_by_key(|(i, _)| *i);
    let mut out: SVec<S> = Vec::with_capacity(terms.len());
    for (i, c) in terms {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = acc.clone() + c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn svec_from_dense<S: Scalar>(v: &[S]) -> SVec<S> {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.clone()))
        .collect()
}

pub fn svec_to_dense<S: Scalar>(v: &SVec<S>, len: usize) -> Vec<S> {
    let mut out = vec![S::zero(); len];
    for (i, s) in v {
        out[*i] = s.clone();
    }
    out
}

/// a + c·b, merged by index.
pub fn svec_add_scaled<S: Scalar>(a: &SVec<S>, b: &SVec<S>, c: &S) -> SVec<S> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                let v = c.clone() * b[j].1.clone();
                if !v.is_zero() {
                    out.push((b[j].0, v));
                }
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = a[i].1.clone() + c.clone() * b[j].1.clone();
                if !v.is_zero() {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (idx, s) in &b[j..] {
        let v = c.clone() * s.clone();
        if !v.is_zero() {
            out.push((*idx, v));
        }
    }
    out
}

pub fn svec_scale<S: Scalar>(a: &SVec<S>, c: &S) -> SVec<S> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter()
        .map(|(i, s)| (*i, c.clone() * s.clone()))
        .filter(|(_, s)| !s.is_zero())
        .collect()
}

/// An incrementally built row-echelon subspace basis: every stored row is
/// normalized to pivot coefficient 1 and rows are reduced against earlier
/// pivots, so rank, membership and residuals are immediate.
#[derive(Clone, Debug)]
pub struct RowSpace<S> {
    rows: std::collections::BTreeMap<usize, SVec<S>>,
}

impl<S: Scalar> RowSpace<S> {
    pub fn new() -> Self {
        RowSpace {
            rows: std::collections::BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against the stored rows; the residual is zero iff v lies
    /// in the span.
    pub fn reduce(&self, v: SVec<S>) -> SVec<S> {
        let mut w = svec_normalize(v);
        loop {
            let Some((lead, coeff)) = w.first().map(|(i, s)| (*i, s.clone())) else {
                return w;
            };
            let Some(row) = self.rows.get(&lead) else {
                return w;
            };
            w = svec_add_scaled(&w, row, &-coeff);
        }
    }

    /// Insert v; returns the pivot index if v was independent.
    pub fn insert(&mut self, v: SVec<S>) -> Option<usize> {
        let w = self.reduce(v);
        let (lead, coeff) = w.first().map(|(i, s)| (*i, s.clone()))?;
        let inv = coeff.inv().expect("nonzero leading coefficient");
        self.rows.insert(lead, svec_scale(&w, &inv));
        Some(lead)
    }

    pub fn contains(&self, v: SVec<S>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }
}

impl<S: Scalar> Default for RowSpace<S> {
    fn default() -> Self {
        RowSpace::new()
    }
}

/// Outcome of inserting a vector into a [`SpanSolver`].
pub enum Insert<S> {
    /// The vector enlarged the span.
    Independent,
    /// The vector already lay in the span; the coefficients express it
    /// over the previously inserted vectors (by insertion index).
    Dependent(SVec<S>),
}

/// Row echelon with coefficient tracking: every reduction is remembered as
/// a combination of the originally inserted vectors, so dependent inserts
/// yield exact linear relations and `solve` produces exact coordinates.
#[derive(Clone, Debug)]
pub struct SpanSolver<S> {
    /// pivot index → (reduced vector, expression over original vectors)
    rows: std::collections::BTreeMap<usize, (SVec<S>, SVec<S>)>,
    n_inserted: usize,
}

impl<S: Scalar> SpanSolver<S> {
    pub fn new() -> Self {
        SpanSolver {
            rows: std::collections::BTreeMap::new(),
            n_inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn n_inserted(&self) -> usize {
        self.n_inserted
    }

    fn reduce_tracked(&self, v: SVec<S>) -> (SVec<S>, SVec<S>) {
        let mut w = svec_normalize(v);
        let mut expr: SVec<S> = Vec::new();
        loop {
            let Some((lead, coeff)) = w.first().map(|(i, s)| (*i, s.clone())) else {
                return (w, expr);
            };
            let Some((row, row_expr)) = self.rows.get(&lead) else {
                return (w, expr);
            };
            let neg = -coeff;
            w = svec_add_scaled(&w, row, &neg);
            expr = svec_add_scaled(&expr, row_expr, &neg);
        }
    }

    /// Insert the next vector (its original index is the running count).
    pub fn insert(&mut self, v: SVec<S>) -> Insert<S> {
        let idx = self.n_inserted;
        self.n_inserted += 1;
        let (w, expr) = self.reduce_tracked(v);
        match w.first().map(|(i, s)| (*i, s.clone())) {
            None => {
                // v + Σ expr·originals = 0, so v = −expr over the originals.
                Insert::Dependent(svec_scale(&expr, &-S::one()))
            }
            Some((lead, coeff)) => {
                let inv = coeff.inv().expect("nonzero leading coefficient");
                let mut expr = expr;
                expr = svec_add_scaled(&expr, &vec![(idx, S::one())], &S::one());
                self.rows
                    .insert(lead, (svec_scale(&w, &inv), svec_scale(&expr, &inv)));
                Insert::Independent
            }
        }
    }

    /// Exact coordinates of v over the inserted vectors, if v lies in
    /// their span.
    pub fn solve(&self, v: SVec<S>) -> Option<SVec<S>> {
        let (w, expr) = self.reduce_tracked(v);
        if w.is_empty() {
            Some(svec_scale(&expr, &-S::one()))
        } else {
            None
        }
    }
}

impl<S: Scalar> Default for SpanSolver<S> {
    fn default() -> Self {
        SpanSolver::new()
    }
}

/// Plain bilinear dot product of two sparse vectors (no conjugation).
pub fn svec_dot<S: Scalar>(a: &SVec<S>, b: &SVec<S>) -> S {
    let mut out = S::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out = out + a[i].1.clone() * b[j].1.clone();
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Rank of a list of (sparse) vectors.
pub fn rank_of<S: Scalar>(vectors: impl IntoIterator<Item = SVec<S>>) -> usize {
    let mut space = RowSpace::new();
    for v in vectors {
        space.insert(v);
    }
    space.rank()
}

/// Null combinations of a list of vectors: a basis for
/// { c : Σᵢ cᵢ vᵢ = 0 }, each combination expressed over the vector
/// indices in input order.
pub fn null_combinations<S: Scalar>(vectors: impl IntoIterator<Item = SVec<S>>) -> Vec<SVec<S>> {
    let mut solver = SpanSolver::new();
    let mut out = Vec::new();
    for (idx, v) in vectors.into_iter().enumerate() {
        if let Insert::Dependent(expr) = solver.insert(v) {
            // v_idx = Σ expr·earlier  ⇒  v_idx − Σ expr·earlier = 0.
            let mut rel = svec_scale(&expr, &-S::one());
            rel = svec_add_scaled(&rel, &vec![(idx, S::one())], &S::one());
            out.push(svec_normalize(rel));
        }
    }
    out
}

/// Right nullspace of a dense matrix: a basis of { x : M x = 0 }.
pub fn nullspace<S: Scalar>(m: &Mat<S>) -> Vec<Vec<S>> {
    let columns = (0..m.cols).map(|j| {
        svec_from_dense(
            &(0..m.rows)
                .map(|i| m.at(i, j).clone())
                .collect::<Vec<_>>(),
        )
    });
    null_combinations(columns)
        .into_iter()
        .map(|rel| svec_to_dense(&rel, m.cols))
        .collect()
}
