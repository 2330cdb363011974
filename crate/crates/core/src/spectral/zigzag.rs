//! Zig-zag chains `β_0, …, β_{r−1}` with `β_i ∈ A^{p+i,q−i}`,
//! `∂̄β_0 = 0` and `∂β_{i−1} + ∂̄β_i = 0`.
//!
//! Such a chain certifies that `β_0` lives to `E_r`, and `[∂β_{r−1}]` is
//! `d_r[β_0]`.

use std::fmt;

use super::DoubleComplex;
use crate::algebra::Form;
use crate::exactla::{solve, SparseMatrix, SparseVec};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigZag {
    pub start: (usize, usize),
    pub chain: Vec<Form>,
    /// `∂β_{r−1}`, a representative of `d_r[β_0]`.
    pub terminal: Form,
}

impl ZigZag {
    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// The element `β_0 + … + β_{r−1}` of the total complex.
    pub fn total(&self) -> Form {
        self.chain.iter().fold(Form::zero(self.terminal.ambient()), |acc, b| acc.add(b).expect("same ambient"))
    }
}

impl fmt::Display for ZigZag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.chain.iter().enumerate() {
            writeln!(f, "beta_{i} = {b}")?;
        }
        write!(f, "terminal = {}", self.terminal)
    }
}

/// Why [`find_zigzag`] stopped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZigZagFailure {
    /// `β_0` lives exactly to `E_reached`: a chain of length `reached`
    /// exists but none of length `reached + 1`.
    LivesOnlyTo { reached: usize, chain: ZigZag },
}

fn block_dim(dc: &DoubleComplex, p: usize, q: i64) -> usize {
    if q < 0 {
        0
    } else {
        dc.dim(p, q as usize)
    }
}

/// Solves the whole system `∂̄β_1 = −∂β_0`, `∂̄β_i = −∂β_{i−1}` for
/// `β_1..β_{len−1}` at once; `None` if no chain of that length exists.
fn solve_chain(dc: &DoubleComplex, beta0: &SparseVec, (p, q): (usize, usize), len: usize) -> Option<Vec<SparseVec>> {
    let m = dc.m();
    let q = q as i64;
    let unknown_dims: Vec<usize> = (1..len).map(|i| block_dim(dc, p + i, q - i as i64)).collect();
    let eq_dims: Vec<usize> = (1..len).map(|i| block_dim(dc, p + i, q - i as i64 + 1)).collect();
    let col_offset: Vec<usize> = std::iter::once(0)
        .chain(unknown_dims.iter().scan(0, |a, d| {
            *a += d;
            Some(*a)
        }))
        .collect();
    let row_offset: Vec<usize> = std::iter::once(0)
        .chain(eq_dims.iter().scan(0, |a, d| {
            *a += d;
            Some(*a)
        }))
        .collect();
    let (n_rows, n_cols) = (row_offset[len - 1], col_offset[len - 1]);

    let mut triplets = Vec::new();
    let mut rhs = Vec::new();
    for i in 1..len {
        if eq_dims[i - 1] == 0 {
            continue;
        }
        let (bp, bq) = (p + i, q - i as i64); // bidegree of β_i
        let row0 = row_offset[i - 1];
        if unknown_dims[i - 1] > 0 {
            let delbar = dc.del_bar(bp, bq as usize);
            for r in 0..delbar.rows() {
                for (c, v) in delbar.row(r).iter() {
                    triplets.push((row0 + r, col_offset[i - 1] + c, v.clone()));
                }
            }
        }
        // ∂β_{i−1}: known for i = 1, unknown otherwise.
        let (pp, pq) = (p + i - 1, (q - i as i64 + 1) as usize);
        if pp < m {
            let del = dc.del(pp, pq);
            if i == 1 {
                for (r, v) in del.mul_vec(beta0).iter() {
                    rhs.push((row0 + r, -v));
                }
            } else if unknown_dims[i - 2] > 0 {
                for r in 0..del.rows() {
                    for (c, v) in del.row(r).iter() {
                        triplets.push((row0 + r, col_offset[i - 2] + c, v.clone()));
                    }
                }
            }
        }
    }
    let system = SparseMatrix::from_triplets(n_rows, n_cols, triplets);
    let x = solve(&system, &SparseVec::from_entries(rhs))?;
    let mut blocks = vec![beta0.clone()];
    for i in 1..len {
        let (lo, hi) = (col_offset[i - 1], col_offset[i]);
        blocks.push(x.filter(|j| j >= lo && j < hi).remap(|j| j - lo));
    }
    Some(blocks)
}

fn assemble(dc: &DoubleComplex, (p, q): (usize, usize), blocks: &[SparseVec]) -> ZigZag {
    let m = dc.m();
    let chain: Vec<Form> = blocks
        .iter()
        .enumerate()
        .map(|(i, v)| if v.is_zero() || q < i { Form::zero(m) } else { dc.basis(p + i, q - i).to_form(v) })
        .collect();
    let last = chain.len() - 1;
    let terminal = if p + last < m && q >= last {
        let image = dc.del(p + last, q - last).mul_vec(&blocks[last]);
        dc.basis(p + last + 1, q - last).to_form(&image)
    } else {
        Form::zero(m)
    };
    ZigZag { start: (p, q), chain, terminal }
}

/// Looks for a zig-zag of length `r ≥ 1` starting at `beta0`.
///
/// The intermediate elements are solved for jointly, so failure means no
/// chain of the requested length exists for this `β_0`; the error reports
/// the longest length that does exist together with such a chain.
pub fn find_zigzag(dc: &DoubleComplex, beta0: &Form, r: usize) -> Result<Result<ZigZag, ZigZagFailure>, Error> {
    assert!(r >= 1, "zig-zag length must be at least one");
    let m = dc.m();
    if beta0.ambient() != m {
        return Err(Error::AmbientMismatch { left: beta0.ambient(), right: m });
    }
    if beta0.is_zero() {
        return Ok(Ok(ZigZag { start: (0, 0), chain: vec![Form::zero(m); r], terminal: Form::zero(m) }));
    }
    let (p, q) = beta0.bidegree().ok_or(Error::NotHomogeneous)?;
    if !dc.equations().del_bar(beta0)?.is_zero() {
        return Err(Error::NotACocycle);
    }
    let v0 = dc.basis(p, q).to_vec(beta0)?;
    let mut best = vec![v0.clone()];
    for len in 2..=r {
        match solve_chain(dc, &v0, (p, q), len) {
            Some(blocks) => best = blocks,
            None => {
                let chain = assemble(dc, (p, q), &best);
                return Ok(Err(ZigZagFailure::LivesOnlyTo { reached: len - 1, chain }));
            }
        }
    }
    Ok(Ok(assemble(dc, (p, q), &best)))
}

/// The first relation a chain violates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigZagViolation {
    /// `0` for `∂̄β_0 = 0`, `i` for `∂β_{i−1} + ∂̄β_i = 0`, `len` for
    /// `terminal = ∂β_{len−1}`.
    pub index: usize,
    pub relation: String,
    /// The nonzero left-hand side (or difference).
    pub residual: Form,
}

impl fmt::Display for ZigZagViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "relation {} ({}) fails: residual {}", self.index, self.relation, self.residual)
    }
}

/// Checks every zig-zag relation exactly, computing `∂` and `∂̄` directly
/// from the structure equations.
pub fn verify_zigzag(dc: &DoubleComplex, z: &ZigZag) -> Result<(), ZigZagViolation> {
    let eq = dc.equations();
    let (p, q) = z.start;
    let m = dc.m();
    let violation =
        |index, relation: &str, residual| Err(ZigZagViolation { index, relation: relation.into(), residual });
    for (i, b) in z.chain.iter().enumerate() {
        let ok = q >= i && b.is_bihomogeneous(p + i, q - i);
        if !ok && !b.is_zero() {
            return violation(i, "bidegree", b.clone());
        }
    }
    let del = |b: &Form| eq.del(b).unwrap_or_else(|_| Form::zero(m));
    let del_bar = |b: &Form| eq.del_bar(b).unwrap_or_else(|_| Form::zero(m));
    let Some(first) = z.chain.first() else {
        return Ok(());
    };
    let r0 = del_bar(first);
    if !r0.is_zero() {
        return violation(0, "delbar beta_0 = 0", r0);
    }
    for i in 1..z.chain.len() {
        let residual = del(&z.chain[i - 1]).add(&del_bar(&z.chain[i])).expect("same ambient");
        if !residual.is_zero() {
            return violation(i, &format!("del beta_{} + delbar beta_{i} = 0", i - 1), residual);
        }
    }
    let last = z.chain.len() - 1;
    let diff = del(&z.chain[last]).sub(&z.terminal).expect("same ambient");
    if !diff.is_zero() {
        return violation(z.chain.len(), &format!("terminal = del beta_{last}"), diff);
    }
    Ok(())
}
