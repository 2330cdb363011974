//! Sparse exterior forms over ℚ(i).

use std::collections::BTreeMap;
use std::fmt;

use super::monomial::{Monomial, MAX_GENERATORS};
use super::scalar::Scalar;
use crate::Error;

/// A finite ℚ(i)-combination of wedge monomials on `m` generators and their
/// conjugates. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    m: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Form {
    pub fn zero(m: usize) -> Self {
        assert!(m <= MAX_GENERATORS, "at most {MAX_GENERATORS} generators");
        Form { m, terms: BTreeMap::new() }
    }

    pub fn constant(m: usize, c: Scalar) -> Self {
        Form::term(m, Monomial::ONE, c)
    }

    pub fn monomial(m: usize, mono: Monomial) -> Self {
        Form::term(m, mono, Scalar::one())
    }

    pub fn term(m: usize, mono: Monomial, c: Scalar) -> Self {
        let mut f = Form::zero(m);
        f.add_term(mono, c);
        f
    }

    /// The (1,0)-generator `f{k+1}`.
    pub fn holo_gen(m: usize, k: usize) -> Self {
        assert!(k < m);
        Form::monomial(m, Monomial::holo_gen(k))
    }

    /// The (0,1)-generator `~f{k+1}`.
    pub fn anti_gen(m: usize, k: usize) -> Self {
        assert!(k < m);
        Form::monomial(m, Monomial::anti_gen(k))
    }

    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut f = Form::zero(m);
        for (mono, c) in terms {
            f.add_term(mono, c);
        }
        f
    }

    pub fn ambient(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: Scalar) {
        debug_assert!(mono.span() <= self.m);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ambient(&self, other: &Form) -> Result<(), Error> {
        if self.m != other.m {
            return Err(Error::AmbientMismatch { left: self.m, right: other.m });
        }
        Ok(())
    }

    pub fn add(&self, other: &Form) -> Result<Form, Error> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(*mono, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form { m: self.m, terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.m);
        }
        Form { m: self.m, terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Exterior product, bilinear extension of the monomial Koszul rule.
    pub fn wedge(&self, other: &Form) -> Result<Form, Error> {
        self.check_ambient(other)?;
        let mut out = Form::zero(self.m);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((neg, mono)) = a.wedge(b) {
                    let c = ca * cb;
                    out.add_term(mono, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Complex conjugation: swaps generators with their conjugates and
    /// conjugates coefficients.
    pub fn conjugate(&self) -> Form {
        let mut out = Form::zero(self.m);
        for (mono, c) in &self.terms {
            let (neg, image) = mono.conjugate();
            let c = c.conj();
            out.add_term(image, if neg { -c } else { c });
        }
        out
    }

    /// The sub-sum of terms of bidegree exactly `(p, q)`.
    pub fn bigraded_component(&self, p: usize, q: usize) -> Form {
        Form {
            m: self.m,
            terms: self
                .terms
                .iter()
                .filter(|(mono, _)| mono.bidegree() == (p, q))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// `Some((p, q))` when every term has that bidegree; `None` for zero or
    /// mixed forms.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(Monomial::bidegree);
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// Common total degree, if the form is nonzero and homogeneous in it.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_bihomogeneous(&self, p: usize, q: usize) -> bool {
        self.terms.keys().all(|mono| mono.bidegree() == (p, q))
    }

    /// Bidegrees present, ascending.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.terms.keys().map(Monomial::bidegree).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Individual terms rendered in structure-file syntax with their sign,
    /// e.g. `["f1^f2", "-f1^~f1"]`.
    pub fn term_strings(&self) -> Vec<String> {
        self.terms.iter().map(|(mono, c)| render_term(mono, c, true)).collect()
    }
}

/// Renders `c·mono`. With `with_sign`, a negative coefficient is written
/// with a leading `-`; otherwise the caller has already emitted the sign and
/// `c` is expected to be non-negative.
pub(crate) fn render_term(mono: &Monomial, c: &Scalar, with_sign: bool) -> String {
    let mut s = String::new();
    let c = if with_sign && c.is_sign_negative() {
        s.push('-');
        -c
    } else {
        c.clone()
    };
    if *mono == Monomial::ONE {
        s.push_str(&c.to_string());
        return s;
    }
    if !c.is_one() {
        s.push_str(&c.to_string());
        s.push('*');
    }
    s.push_str(&mono.to_string());
    s
}

/// Structure-file expression syntax, `0` for the zero form.
impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                write!(f, "{}", render_term(mono, c, true))?;
            } else if c.is_sign_negative() {
                write!(f, " - {}", render_term(mono, &-c, false))?;
            } else {
                write!(f, " + {}", render_term(mono, c, false))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form[m={}]({})", self.m, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const M: usize = 3;

    fn f(k: usize) -> Form {
        Form::holo_gen(M, k - 1)
    }
    fn fb(k: usize) -> Form {
        Form::anti_gen(M, k - 1)
    }

    #[test]
    fn wedge_examples() {
        assert!(f(1).wedge(&f(1)).unwrap().is_zero());
        assert_eq!(fb(1).wedge(&f(1)).unwrap(), f(1).wedge(&fb(1)).unwrap().neg());
        let w = f(2).wedge(&f(1)).unwrap();
        assert_eq!(w, f(1).wedge(&f(2)).unwrap().neg());
        assert_eq!(w.to_string(), "-f1^f2");
    }

    #[test]
    fn wedge_rejects_mismatched_ambient() {
        let a = Form::holo_gen(2, 0);
        let b = Form::holo_gen(3, 0);
        assert!(matches!(a.wedge(&b), Err(Error::AmbientMismatch { .. })));
    }

    #[test]
    fn conjugate_examples() {
        let a = f(1).wedge(&fb(2)).unwrap();
        let expected = f(2).wedge(&fb(1)).unwrap().neg();
        assert_eq!(a.conjugate(), expected);
        // conj(~f1 ∧ f1) = f1 ∧ ~f1
        let b = fb(1).wedge(&f(1)).unwrap();
        assert_eq!(b.conjugate(), f(1).wedge(&fb(1)).unwrap());
        let c = Form::term(M, Monomial::new(0b11, 0b100), Scalar::gaussian((1, 2), (1, 3)));
        assert_eq!(c.conjugate().conjugate(), c);
    }

    #[test]
    fn bigraded_components() {
        let a = f(1).wedge(&f(2)).unwrap().add(&f(1).wedge(&fb(1)).unwrap().neg()).unwrap();
        assert_eq!(a.bigraded_component(2, 0), f(1).wedge(&f(2)).unwrap());
        assert_eq!(a.bigraded_component(1, 1), f(1).wedge(&fb(1)).unwrap().neg());
        assert!(a.bigraded_component(0, 2).is_zero());
        assert!(Form::zero(M).bigraded_component(1, 1).is_zero());
        assert_eq!(a.bidegree(), None);
        assert_eq!(a.degree(), Some(2));
    }

    #[test]
    fn display() {
        let a = f(1)
            .wedge(&f(2))
            .unwrap()
            .scale(&Scalar::ratio(1, 2))
            .add(&fb(3).scale(&Scalar::gaussian((1, 1), (-1, 1))))
            .unwrap()
            .add(&f(3).scale(&Scalar::from_int(-2)))
            .unwrap();
        assert_eq!(a.to_string(), "-2*f3 + (1-i)*~f3 + 1/2*f1^f2");
        assert_eq!(Form::zero(M).to_string(), "0");
    }
}
