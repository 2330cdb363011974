//! Exact sparse linear algebra over ℚ(i): row reduction, kernels, images,
//! linear solves and subspace arithmetic.
//!
//! Vectors are sparse and sorted by index. A [`Subspace`] is always stored
//! as the reduced row echelon basis of its row space, so two subspaces are
//! equal exactly when their stored bases are equal. Pivots are the first
//! nonzero column of each row; since the reduced echelon form of a matrix
//! is unique the elimination order never shows up in the output.

use std::fmt;

use crate::algebra::Scalar;
use crate::Error;

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    /// Builds from unsorted entries, summing duplicates and dropping zeros.
    pub fn from_entries(mut entries: Vec<(usize, Scalar)>) -> Self {
        entries.sort_by_key(|(i, _)| *i);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some((j, acc)) if *j == i => *acc += &c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SparseVec { entries: out }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Scalar::one())] }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    /// Largest index stored, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect() }
    }

    /// `self + c·other`.
    pub fn axpy(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + &(c * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.axpy(&Scalar::from_int(-1), other)
    }

    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let mut acc = Scalar::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                acc += &(x * y);
                a.next();
                b.next();
            }
        }
        acc
    }

    /// Keeps only entries whose index satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(usize) -> bool) -> SparseVec {
        SparseVec { entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect() }
    }

    /// Re-indexes entries through `f`, which must be strictly increasing on
    /// the indices present.
    pub fn remap(&self, mut f: impl FnMut(usize) -> usize) -> SparseVec {
        SparseVec { entries: self.entries.iter().map(|(i, c)| (f(*i), c.clone())).collect() }
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter().map(|(i, c)| (i, c))).finish()
    }
}

/// Linear combination `Σ coeffs[i]·vectors[i]`.
pub fn combine(vectors: &[SparseVec], coeffs: &SparseVec) -> SparseVec {
    let mut acc = SparseVec::new();
    for (i, c) in coeffs.iter() {
        acc = acc.axpy(c, &vectors[i]);
    }
    acc
}

/// A sparse matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVec>) -> Self {
        assert!(data.iter().all(|r| r.max_index().is_none_or(|i| i < cols)));
        SparseMatrix { rows: data.len(), cols, data }
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (j, col) in columns.iter().enumerate() {
            for (i, c) in col.iter() {
                assert!(i < rows, "column entry out of range");
                buckets[i].push((j, c.clone()));
            }
        }
        SparseMatrix {
            rows,
            cols: columns.len(),
            data: buckets.into_iter().map(|entries| SparseVec { entries }).collect(),
        }
    }

    /// Dense rows of small integers, handy in tests.
    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        SparseMatrix::from_rows(cols, rows.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, Scalar)>) -> Self {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (i, j, c) in triplets {
            assert!(i < rows && j < cols, "triplet out of range");
            buckets[i].push((j, c));
        }
        SparseMatrix { rows, cols, data: buckets.into_iter().map(SparseVec::from_entries).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i].get(j)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::nnz).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.cols, &self.data)
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        self.transpose().data
    }

    pub fn mul_vec(&self, x: &SparseVec) -> SparseVec {
        SparseVec::from_entries(self.data.iter().enumerate().map(|(i, row)| (i, row.dot(x))).collect())
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> Result<SparseMatrix, Error> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: rhs.rows });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, c) in row.iter() {
                    acc = acc.axpy(c, &rhs.data[k]);
                }
                acc
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: rhs.cols, data })
    }

    pub fn rank(&self) -> usize {
        Echelon::from_rows(self.cols, self.data.iter().cloned()).rank()
    }
}

/// Incremental row echelon form used by every elimination here.
///
/// Rows are kept with leading coefficient one and distinct leading columns.
/// [`Echelon::into_reduced`] finishes Gauss–Jordan elimination.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    cols: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
}

impl Echelon {
    pub(crate) fn new(cols: usize) -> Self {
        Echelon { cols, pivot_row: vec![None; cols], rows: Vec::new() }
    }

    pub(crate) fn from_rows(cols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new(cols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates leading entries of `v` against existing rows.
    fn reduce_leading(&self, mut v: SparseVec) -> SparseVec {
        while let Some((col, c)) = v.leading() {
            match self.pivot_row[col] {
                Some(r) => {
                    let c = -c;
                    v = v.axpy(&c, &self.rows[r]);
                }
                None => break,
            }
        }
        v
    }

    /// Adds `v` to the row space; returns false if it was already contained.
    pub(crate) fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.max_index().is_none_or(|i| i < self.cols));
        let v = self.reduce_leading(v);
        let Some((col, lead)) = v.leading() else {
            return false;
        };
        let inv = lead.inv().expect("leading entry is nonzero");
        let v = v.scale(&inv);
        self.pivot_row[col] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    /// Back-substitutes to the reduced row echelon form; rows are returned
    /// sorted by pivot column.
    pub(crate) fn into_reduced(self) -> (Vec<SparseVec>, Vec<usize>) {
        let Echelon { pivot_row, mut rows, .. } = self;
        let mut order: Vec<(usize, usize)> =
            pivot_row.iter().enumerate().filter_map(|(col, r)| r.map(|r| (col, r))).collect();
        // Rows with larger pivots are finished first; a finished row is zero
        // in every other pivot column, so one pass per row suffices.
        for &(col, r) in order.iter().rev() {
            let mut v = std::mem::take(&mut rows[r]);
            loop {
                let next = v.iter().find(|&(j, _)| j > col && pivot_row[j].is_some()).map(|(j, c)| (j, c.clone()));
                match next {
                    Some((j, c)) => v = v.axpy(&-c, &rows[pivot_row[j].unwrap()]),
                    None => break,
                }
            }
            rows[r] = v;
        }
        order.sort_unstable();
        let pivots = order.iter().map(|&(col, _)| col).collect();
        let reduced = order.into_iter().map(|(_, r)| std::mem::take(&mut rows[r])).collect();
        (reduced, pivots)
    }
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: SparseMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced row echelon form of `m`, zero rows dropped.
pub fn rref(m: &SparseMatrix) -> Rref {
    let (rows, pivots) = Echelon::from_rows(m.cols, m.data.iter().cloned()).into_reduced();
    Rref { rank: rows.len(), matrix: SparseMatrix::from_rows(m.cols, rows), pivots }
}

/// `{x : m·x = 0}`.
pub fn kernel(m: &SparseMatrix) -> Subspace {
    let Rref { matrix, pivots, .. } = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    // Column f of the reduced matrix, read off per pivot row.
    let mut free_cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); m.cols];
    for (i, row) in matrix.data.iter().enumerate() {
        for (j, c) in row.iter() {
            if !is_pivot[j] {
                free_cols[j].push((pivots[i], -c));
            }
        }
    }
    let basis = (0..m.cols).filter(|&f| !is_pivot[f]).map(|f| {
        let mut entries = std::mem::take(&mut free_cols[f]);
        entries.push((f, Scalar::one()));
        SparseVec::from_entries(entries)
    });
    Subspace::span(m.cols, basis)
}

/// Column space of `m`.
pub fn image(m: &SparseMatrix) -> Subspace {
    Subspace::span(m.rows, m.columns())
}

/// A particular solution of `m·x = b` with every free variable zero, or
/// `None` when the system is inconsistent.
pub fn solve(m: &SparseMatrix, b: &SparseVec) -> Option<SparseVec> {
    assert!(b.max_index().is_none_or(|i| i < m.rows), "right-hand side out of range");
    let n = m.cols;
    let augmented: Vec<SparseVec> = m
        .data
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let rhs = b.get(i);
            if rhs.is_zero() {
                row.clone()
            } else {
                row.add(&SparseVec { entries: vec![(n, rhs)] })
            }
        })
        .collect();
    let (rows, pivots) = Echelon::from_rows(n + 1, augmented).into_reduced();
    if pivots.last() == Some(&n) {
        return None;
    }
    Some(SparseVec::from_entries(rows.iter().zip(&pivots).map(|(row, &p)| (p, row.get(n))).collect()))
}

/// A linear subspace of an `ambient`-dimensional coordinate space, stored
/// as a reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_index: Vec<Option<usize>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace::from_reduced(ambient, Vec::new(), Vec::new())
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_reduced(ambient, (0..ambient).map(SparseVec::unit).collect(), (0..ambient).collect())
    }

    fn from_reduced(ambient: usize, basis: Vec<SparseVec>, pivots: Vec<usize>) -> Self {
        let mut pivot_index = vec![None; ambient];
        for (i, &p) in pivots.iter().enumerate() {
            pivot_index[p] = Some(i);
        }
        Subspace { ambient, basis, pivots, pivot_index }
    }

    /// Span of arbitrary vectors.
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let (basis, pivots) = Echelon::from_rows(ambient, vectors).into_reduced();
        Subspace::from_reduced(ambient, basis, pivots)
    }

    /// Span of the coordinate vectors `e_i` for `i` in `indices`.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut idx: Vec<usize> = indices.into_iter().collect();
        idx.sort_unstable();
        idx.dedup();
        Subspace::from_reduced(ambient, idx.iter().map(|&i| SparseVec::unit(i)).collect(), idx)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_rows(self.ambient, self.basis.clone())
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), Error> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    /// The canonical representative of `x` modulo this subspace: `x` minus
    /// the combination of basis rows that clears every pivot column.
    pub fn reduce(&self, x: &SparseVec) -> SparseVec {
        let mut v = x.clone();
        let mut from = 0usize;
        loop {
            let next = v.iter().find(|&(j, _)| j >= from && self.pivot_index[j].is_some()).map(|(j, c)| (j, c.clone()));
            match next {
                Some((j, c)) => {
                    v = v.axpy(&-c, &self.basis[self.pivot_index[j].unwrap()]);
                    from = j + 1;
                }
                None => return v,
            }
        }
    }

    /// Coordinates of `x` in the stored basis, or `None` if `x ∉ self`.
    pub fn coordinates(&self, x: &SparseVec) -> Option<SparseVec> {
        let coeffs = SparseVec::from_entries(self.pivots.iter().enumerate().map(|(i, &p)| (i, x.get(p))).collect());
        (combine(&self.basis, &coeffs) == *x).then_some(coeffs)
    }

    pub fn contains(&self, x: &SparseVec) -> bool {
        self.reduce(x).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, Error> {
        self.check_ambient(other)?;
        Ok(self.basis.iter().all(|b| other.contains(b)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        Ok(Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned()))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, Error> {
        self.check_ambient(other)?;
        // x = Σ c_i u_i lies in `other` iff Σ c_i·reduce(u_i) = 0.
        let residues: Vec<SparseVec> = self.basis.iter().map(|u| other.reduce(u)).collect();
        let relations = kernel(&SparseMatrix::from_columns(self.ambient, &residues));
        Ok(Subspace::span(self.ambient, relations.basis.iter().map(|c| combine(&self.basis, c))))
    }

    /// `dim self − dim sub`, after checking `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize, Error> {
        if !sub.is_subspace_of(self)? {
            return Err(Error::NotASubspace);
        }
        Ok(self.dim() - sub.dim())
    }
}

/// The subquotient `numerator / denominator` with explicit representatives.
///
/// Representatives are the reductions of the numerator basis modulo the
/// denominator, brought to reduced echelon form; they vanish on every pivot
/// column of the denominator.
#[derive(Clone, Debug)]
pub struct Quotient {
    numerator: Subspace,
    denominator: Subspace,
    reps: Subspace,
}

impl Quotient {
    pub fn new(numerator: Subspace, denominator: Subspace) -> Result<Self, Error> {
        numerator.quotient_dim(&denominator)?;
        let reps = Subspace::span(numerator.ambient, numerator.basis.iter().map(|z| denominator.reduce(z)));
        debug_assert_eq!(reps.dim() + denominator.dim(), numerator.dim());
        Ok(Quotient { numerator, denominator, reps })
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Representative vectors of a basis of the quotient.
    pub fn representatives(&self) -> &[SparseVec] {
        self.reps.basis()
    }

    /// Class coordinates of `x`; `None` when `x` is not in the numerator.
    pub fn class_of(&self, x: &SparseVec) -> Option<SparseVec> {
        if !self.numerator.contains(x) {
            return None;
        }
        let residue = self.denominator.reduce(x);
        self.reps.coordinates(&residue)
    }

    /// Whether `x` (assumed in the numerator) represents the zero class.
    pub fn is_zero_class(&self, x: &SparseVec) -> bool {
        self.denominator.contains(x)
    }

    /// Lifts class coordinates back to a representative vector.
    pub fn lift(&self, coords: &SparseVec) -> SparseVec {
        combine(self.reps.basis(), coords)
    }
}
