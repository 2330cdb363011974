//! Pages of the spectral sequence of the column filtration
//! `F^p K^k = ⊕_{i≥p} A^{i,k−i}`.
//!
//! With `Z_s^p(k) = {x ∈ F^p K^k : dx ∈ F^{p+s} K^{k+1}}` (and
//! `Z_{−1}^p = F^p`) the pages are the subquotients
//!
//! ```text
//! E_r^{p,q} = Z_r^p(p+q) / ( Z_{r−1}^{p+1}(p+q) + d Z_{r−1}^{p−r+1}(p+q−1) )
//! ```
//!
//! all computed as explicit subspaces of the fixed spaces `K^k`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::DoubleComplex;
use crate::exactla::{kernel, Quotient, SparseMatrix, SparseVec, Subspace};

/// Dimensions of one page, indexed by bidegree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Page {
    pub r: usize,
    m: usize,
    dims: Vec<usize>,
}

impl Page {
    pub(crate) fn new(r: usize, m: usize, dims: Vec<usize>) -> Self {
        assert_eq!(dims.len(), (m + 1) * (m + 1));
        Page { r, m, dims }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `dim E_r^{p,q}`, zero outside `0..=m`.
    pub fn dim(&self, p: usize, q: usize) -> usize {
        if p > self.m || q > self.m {
            0
        } else {
            self.dims[p * (self.m + 1) + q]
        }
    }

    /// `Σ_{p+q=k} dim E_r^{p,q}`.
    pub fn total(&self, k: usize) -> usize {
        (0..=k.min(self.m)).map(|p| self.dim(p, k - p)).sum()
    }

    pub fn euler(&self) -> i64 {
        self.iter().map(|(p, q, d)| if (p + q) % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    /// `(p, q, dim)` in lexicographic order of `(p, q)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..=self.m).flat_map(move |p| (0..=self.m).map(move |q| (p, q, self.dim(p, q))))
    }

    pub fn same_dims(&self, other: &Page) -> bool {
        self.dims == other.dims
    }
}

type ZKey = (i64, i64, usize);

/// Working state for page computations on one double complex. Filtration
/// subspaces are memoised; all answers are deterministic.
pub struct SpectralSequence<'a> {
    dc: &'a DoubleComplex,
    z_cache: Mutex<HashMap<ZKey, Arc<Subspace>>>,
    q_cache: Mutex<HashMap<(usize, usize, usize), Arc<Quotient>>>,
}

impl<'a> SpectralSequence<'a> {
    pub fn new(dc: &'a DoubleComplex) -> Self {
        SpectralSequence { dc, z_cache: Mutex::default(), q_cache: Mutex::default() }
    }

    pub fn complex(&self) -> &DoubleComplex {
        self.dc
    }

    /// `F^p K^k`.
    pub fn filtration(&self, p: i64, k: usize) -> Subspace {
        let dim = self.dc.total_dim(k);
        Subspace::coordinate(dim, (0..dim).filter(|&i| self.dc.holo_degree(k, i) as i64 >= p))
    }

    /// `Z_s^p(k)` for `s ≥ −1`.
    pub fn cycles(&self, s: i64, p: i64, k: usize) -> Arc<Subspace> {
        // For p < 0, F^p = K and only the level p+s of dx matters.
        let (s, p) = if p < 0 { ((s + p).max(-1), 0) } else { (s, p) };
        let key = (s, p, k);
        if let Some(z) = self.z_cache.lock().unwrap().get(&key) {
            return Arc::clone(z);
        }
        let z = Arc::new(self.compute_cycles(s, p, k));
        self.z_cache.lock().unwrap().insert(key, Arc::clone(&z));
        z
    }

    fn compute_cycles(&self, s: i64, p: i64, k: usize) -> Subspace {
        let dc = self.dc;
        let dim = dc.total_dim(k);
        let unknowns: Vec<usize> = (0..dim).filter(|&i| dc.holo_degree(k, i) as i64 >= p).collect();
        let bound = p + s;
        if s < 0 || k == 2 * dc.m() || bound <= 0 {
            return Subspace::coordinate(dim, unknowns);
        }
        // Components of dx below filtration level p+s must vanish.
        let columns: Vec<SparseVec> =
            unknowns.iter().map(|&i| dc.d_image(k, i).filter(|j| (dc.holo_degree(k + 1, j) as i64) < bound)).collect();
        let local = kernel(&SparseMatrix::from_columns(dc.total_dim(k + 1), &columns));
        Subspace::span(dim, local.basis().iter().map(|v| v.remap(|j| unknowns[j])))
    }

    /// `d Z_s^p(k) ⊆ K^{k+1}`.
    pub fn boundaries(&self, s: i64, p: i64, k: usize) -> Subspace {
        let z = self.cycles(s, p, k);
        Subspace::span(self.dc.total_dim(k + 1), z.basis().iter().map(|x| self.dc.apply_total_d(k, x)))
    }

    /// `E_r^{p,q}` as an explicit subquotient of `K^{p+q}`.
    pub fn quotient(&self, r: usize, p: usize, q: usize) -> Arc<Quotient> {
        let key = (r, p, q);
        if let Some(e) = self.q_cache.lock().unwrap().get(&key) {
            return Arc::clone(e);
        }
        let e = Arc::new(self.compute_quotient(r, p, q));
        self.q_cache.lock().unwrap().insert(key, Arc::clone(&e));
        e
    }

    fn compute_quotient(&self, r: usize, p: usize, q: usize) -> Quotient {
        let k = p + q;
        let (r, p) = (r as i64, p as i64);
        let numerator = (*self.cycles(r, p, k)).clone();
        let lower = self.cycles(r - 1, p + 1, k);
        let denominator = if k == 0 {
            (*lower).clone()
        } else {
            lower.sum(&self.boundaries(r - 1, p - r + 1, k - 1)).expect("same ambient")
        };
        Quotient::new(numerator, denominator).expect("boundaries lie in cycles")
    }

    pub fn page(&self, r: usize) -> Page {
        let m = self.dc.m();
        let mut dims = Vec::with_capacity((m + 1) * (m + 1));
        for p in 0..=m {
            for q in 0..=m {
                dims.push(if r == 0 { self.dc.dim(p, q) } else { self.quotient(r, p, q).dim() });
            }
        }
        Page::new(r, self.dc.m(), dims)
    }

    /// Target bidegree of `d_r` on `E_r^{p,q}`, if inside the quadrant.
    pub fn differential_target(&self, r: usize, p: usize, q: usize) -> Option<(usize, usize)> {
        let (tp, tq) = (p + r, (q + 1).checked_sub(r)?);
        (tp <= self.dc.m() && tq <= self.dc.m()).then_some((tp, tq))
    }

    /// Matrix of `d_r: E_r^{p,q} → E_r^{p+r,q−r+1}` in representative
    /// coordinates; a target outside the quadrant gives a zero-row matrix.
    pub fn differential(&self, r: usize, p: usize, q: usize) -> SparseMatrix {
        let source = self.quotient(r, p, q);
        let Some((tp, tq)) = self.differential_target(r, p, q) else {
            return SparseMatrix::zeros(0, source.dim());
        };
        let target = self.quotient(r, tp, tq);
        let cols: Vec<SparseVec> =
            source.representatives().iter().map(|x| self.apply_differential(&target, p + q, x)).collect();
        SparseMatrix::from_columns(target.dim(), &cols)
    }

    /// Class of `d x` in the target page, for `x` a cycle in `K^k`.
    pub fn apply_differential(&self, target: &Quotient, k: usize, x: &SparseVec) -> SparseVec {
        let dx = self.dc.apply_total_d(k, x);
        target.class_of(&dx).expect("d maps Z_r^p into Z_r^{p+r}")
    }
}

/// Page `r` of the spectral sequence of `dc`.
pub fn compute_page(dc: &DoubleComplex, r: usize) -> Page {
    SpectralSequence::new(dc).page(r)
}

/// `d_r` on `E_r^{p,q}` of `dc`.
pub fn page_differential(dc: &DoubleComplex, r: usize, p: usize, q: usize) -> SparseMatrix {
    SpectralSequence::new(dc).differential(r, p, q)
}
