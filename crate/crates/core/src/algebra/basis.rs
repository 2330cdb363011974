use std::collections::HashMap;

use super::{monomials_of_bidegree, monomials_of_degree, Form, Monomial, Scalar};
use crate::exactla::SparseVec;
use crate::Error;

/// An indexed monomial basis of a graded piece of the exterior algebra,
/// translating between [`Form`]s and coordinate vectors.
#[derive(Clone, Debug)]
pub struct FormBasis {
    m: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl FormBasis {
    pub fn new(m: usize, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().enumerate().map(|(i, mono)| (*mono, i)).collect();
        FormBasis { m, monomials, index }
    }

    /// Basis of `K^k = ⊕_{p+q=k} Λ^{p,q}`.
    pub fn of_degree(m: usize, k: usize) -> Self {
        FormBasis::new(m, monomials_of_degree(m, k))
    }

    pub fn of_bidegree(m: usize, p: usize, q: usize) -> Self {
        FormBasis::new(m, monomials_of_bidegree(m, p, q))
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> Monomial {
        self.monomials[i]
    }

    pub fn index_of(&self, mono: &Monomial) -> Option<usize> {
        self.index.get(mono).copied()
    }

    /// Coordinates of `form`; fails if a term lies outside this basis.
    pub fn to_vec(&self, form: &Form) -> Result<SparseVec, Error> {
        if form.ambient() != self.m {
            return Err(Error::AmbientMismatch { left: form.ambient(), right: self.m });
        }
        let entries = form
            .terms()
            .map(|(mono, c)| self.index_of(mono).map(|i| (i, c.clone())).ok_or(Error::NotHomogeneous))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SparseVec::from_entries(entries))
    }

    pub fn to_form(&self, v: &SparseVec) -> Form {
        Form::from_terms(self.m, v.iter().map(|(i, c)| (self.monomials[i], c.clone())))
    }

    pub fn basis_form(&self, i: usize) -> Form {
        Form::term(self.m, self.monomials[i], Scalar::one())
    }
}
