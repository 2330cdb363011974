//! The double complex of invariant forms and its Frölicher spectral
//! sequence.

mod complex;
mod sequence;
mod zigzag;

pub use complex::DoubleComplex;
pub use sequence::{compute_page, page_differential, Page, SpectralSequence};
pub use zigzag::{find_zigzag, verify_zigzag, ZigZag, ZigZagFailure, ZigZagViolation};

use std::collections::BTreeMap;

use crate::exactla::Echelon;

/// Everything `pages` and `hodge` print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrolicherReport {
    pub m: usize,
    /// Pages `E_0 ..= E_R`.
    pub pages: Vec<Page>,
    /// Ranks of `d_r` on `E_r^{p,q}` for every computed `r ≥ 1` with a
    /// target inside the quadrant.
    pub differential_ranks: BTreeMap<(usize, usize, usize), usize>,
    pub betti: Vec<usize>,
    /// `h^{p,q} = dim E_1^{p,q}`.
    pub hodge: Page,
    /// Smallest `r ≥ 1` with `E_r = E_∞`; `None` when the computed pages do
    /// not reach it.
    pub degeneration_page: Option<usize>,
    pub euler: i64,
    pub witness: Option<ZigZag>,
}

impl FrolicherReport {
    pub fn page(&self, r: usize) -> Option<&Page> {
        self.pages.get(r)
    }

    /// Whether every computed `d_r` vanishes.
    pub fn differential_vanishes(&self, r: usize) -> bool {
        self.differential_ranks.iter().all(|(&(s, _, _), &rank)| s != r || rank == 0)
    }

    /// `b_k ≤ Σ_{p+q=k} h^{p,q}` for all `k`.
    pub fn frolicher_inequality_holds(&self) -> bool {
        self.betti.iter().enumerate().all(|(k, &b)| b <= self.hodge.total(k))
    }
}

fn rank_of(cols: usize, vectors: impl IntoIterator<Item = crate::exactla::SparseVec>) -> usize {
    Echelon::from_rows(cols, vectors).rank()
}

/// Betti numbers `b_0..b_{2m}` of the total complex `(K, ∂ + ∂̄)`.
pub fn total_cohomology(dc: &DoubleComplex) -> Vec<usize> {
    let top = 2 * dc.m();
    let ranks: Vec<usize> = (0..=top)
        .map(|k| {
            if k == top {
                0
            } else {
                rank_of(dc.total_dim(k + 1), (0..dc.total_dim(k)).map(|i| dc.d_image(k, i).clone()))
            }
        })
        .collect();
    (0..=top).map(|k| dc.total_dim(k) - ranks[k] - if k == 0 { 0 } else { ranks[k - 1] }).collect()
}

/// `dim H_∂̄^{p,q}` from kernel and image ranks of the `∂̄` blocks alone.
pub fn dolbeault_dims(dc: &DoubleComplex) -> Vec<Vec<usize>> {
    let m = dc.m();
    let rank = |p: usize, q: usize| dc.del_bar(p, q).rank();
    (0..=m)
        .map(|p| (0..=m).map(|q| dc.dim(p, q) - rank(p, q) - if q == 0 { 0 } else { rank(p, q - 1) }).collect())
        .collect()
}

/// `dim H_∂^{p,q}` from kernel and image ranks of the `∂` blocks alone.
pub fn del_cohomology_dims(dc: &DoubleComplex) -> Vec<Vec<usize>> {
    let m = dc.m();
    let rank = |p: usize, q: usize| dc.del(p, q).rank();
    (0..=m)
        .map(|p| (0..=m).map(|q| dc.dim(p, q) - rank(p, q) - if p == 0 { 0 } else { rank(p - 1, q) }).collect())
        .collect()
}

/// Every page up to the stabilisation bound `E_{m+1} = E_∞`.
pub fn pages_until_degeneration(dc: &DoubleComplex) -> FrolicherReport {
    pages_up_to(dc, None)
}

/// Pages `E_0..=E_R` with `R = max_page.unwrap_or(m+1)`. Differentials
/// `d_r` are computed for `1 ≤ r < R`.
///
/// The degeneration page is the first `r ≥ 1` from which all `d_s` vanish.
/// When the pages stop short of `m+1` it is read off instead as the first
/// page whose total dimensions equal the Betti numbers, which is
/// equivalent because `E_∞` sums to the Betti numbers and pages only
/// shrink.
pub fn pages_up_to(dc: &DoubleComplex, max_page: Option<usize>) -> FrolicherReport {
    let m = dc.m();
    let stable = m + 1;
    let last = max_page.unwrap_or(stable).min(stable);
    let ss = SpectralSequence::new(dc);
    let pages: Vec<Page> = (0..=last).map(|r| ss.page(r)).collect();
    let mut differential_ranks = BTreeMap::new();
    for (r, page) in pages.iter().enumerate().take(last).skip(1) {
        for p in 0..=m {
            for q in 0..=m {
                if let Some((tp, tq)) = ss.differential_target(r, p, q) {
                    if page.dim(p, q) > 0 && page.dim(tp, tq) > 0 {
                        differential_ranks.insert((r, p, q), ss.differential(r, p, q).rank());
                    } else {
                        differential_ranks.insert((r, p, q), 0);
                    }
                }
            }
        }
    }
    let betti = total_cohomology(dc);
    let matches_betti = |page: &Page| (0..=2 * m).all(|k| page.total(k) == betti[k]);
    let degeneration_page = if last == stable {
        let vanishing_from = (1..=stable)
            .rev()
            .take_while(|&r| r == stable || differential_ranks.iter().all(|(&(s, _, _), &rank)| s != r || rank == 0))
            .last()
            .unwrap_or(stable);
        Some(vanishing_from)
    } else {
        (1..=last).find(|&r| matches_betti(&pages[r]))
    };
    let hodge = pages.get(1).cloned().unwrap_or_else(|| ss.page(1));
    let euler = pages[0].euler();
    FrolicherReport { m, pages, differential_ranks, betti, hodge, degeneration_page, euler, witness: None }
}
