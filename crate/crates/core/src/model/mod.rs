//! Structure equations, their validation, and the induced differential on
//! the full exterior algebra.

mod family;

use std::fmt;

pub use family::{family_xn, xn_beta_chain, xn_dx, xn_omega, xn_top_form};

use crate::algebra::{Form, FormBasis, Monomial, MAX_GENERATORS};
use crate::exactla::{kernel, SparseMatrix, SparseVec, Subspace};
use crate::Error;

/// The differential of every invariant (1,0)-form `f1..fm`.
///
/// `d` on the conjugate generators is the conjugate of these and `d` on
/// higher forms follows from the Leibniz rule, so this is the whole datum.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StructureEquations {
    m: usize,
    diffs: Vec<Form>,
    conj_diffs: Vec<Form>,
}

impl StructureEquations {
    /// `diffs[i]` is `d f{i+1}`; each must be zero or a 2-form on `m`
    /// generators.
    pub fn new(m: usize, diffs: Vec<Form>) -> Result<Self, Error> {
        if m == 0 || m > MAX_GENERATORS {
            return Err(Error::GeneratorCount(m));
        }
        if diffs.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: diffs.len() });
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.ambient() != m {
                return Err(Error::AmbientMismatch { left: d.ambient(), right: m });
            }
            if !d.is_zero() && d.degree() != Some(2) {
                return Err(Error::NotATwoForm { index: i + 1 });
            }
        }
        let conj_diffs = diffs.iter().map(Form::conjugate).collect();
        Ok(StructureEquations { m, diffs, conj_diffs })
    }

    /// The abelian algebra: every differential vanishes.
    pub fn torus(m: usize) -> Result<Self, Error> {
        if m == 0 || m > MAX_GENERATORS {
            return Err(Error::GeneratorCount(m));
        }
        StructureEquations::new(m, vec![Form::zero(m); m])
    }

    /// The complex Heisenberg algebra of the Iwasawa manifold:
    /// `d f1 = d f2 = 0`, `d f3 = −f1∧f2`.
    pub fn iwasawa() -> Self {
        let m = 3;
        let f = |k| Form::holo_gen(m, k);
        let d3 = f(0).wedge(&f(1)).expect("same ambient").neg();
        StructureEquations::new(m, vec![Form::zero(m), Form::zero(m), d3]).expect("valid 2-forms")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn diffs(&self) -> &[Form] {
        &self.diffs
    }

    /// `d` of the generator `f{k+1}` (or of `~f{k+1}` when `conjugate`).
    pub fn generator_diff(&self, conjugate: bool, k: usize) -> &Form {
        if conjugate {
            &self.conj_diffs[k]
        } else {
            &self.diffs[k]
        }
    }

    /// `d` of one basis monomial by the Leibniz rule.
    pub fn apply_d_monomial(&self, mono: &Monomial) -> Form {
        let mut out = Form::zero(self.m);
        for pos in 0..mono.degree() {
            let (before, (conj, k), after) = mono.split_at_factor(pos);
            let dg = self.generator_diff(conj, k);
            if dg.is_zero() {
                continue;
            }
            let head = Form::monomial(self.m, before);
            let tail = Form::monomial(self.m, after);
            let piece = head.wedge(dg).and_then(|x| x.wedge(&tail)).expect("same ambient");
            for (mono, c) in piece.terms() {
                out.add_term(*mono, if pos % 2 == 1 { -c } else { c.clone() });
            }
        }
        out
    }

    /// The exterior derivative of an arbitrary form.
    pub fn apply_d(&self, a: &Form) -> Result<Form, Error> {
        if a.ambient() != self.m {
            return Err(Error::AmbientMismatch { left: a.ambient(), right: self.m });
        }
        let mut out = Form::zero(self.m);
        for (mono, c) in a.terms() {
            out = out.add(&self.apply_d_monomial(mono).scale(c))?;
        }
        Ok(out)
    }

    /// `∂̄a` for `a` of a single bidegree `(p, q)`; zero maps to zero.
    pub fn del_bar(&self, a: &Form) -> Result<Form, Error> {
        let Some((p, q)) = homogeneous_or_zero(a)? else {
            return Ok(Form::zero(self.m));
        };
        Ok(self.apply_d(a)?.bigraded_component(p, q + 1))
    }

    /// `∂a` for `a` of a single bidegree `(p, q)`; zero maps to zero.
    pub fn del(&self, a: &Form) -> Result<Form, Error> {
        let Some((p, q)) = homogeneous_or_zero(a)? else {
            return Ok(Form::zero(self.m));
        };
        Ok(self.apply_d(a)?.bigraded_component(p + 1, q))
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

fn homogeneous_or_zero(a: &Form) -> Result<Option<(usize, usize)>, Error> {
    if a.is_zero() {
        return Ok(None);
    }
    a.bidegree().map(Some).ok_or(Error::NotHomogeneous)
}

/// Looks up a named example. `dim` is the generator count for `torus`.
pub fn builtin(name: &str, dim: Option<usize>) -> Result<StructureEquations, Error> {
    match name {
        "torus" => StructureEquations::torus(dim.unwrap_or(1)),
        "iwasawa" => match dim {
            None | Some(3) => Ok(StructureEquations::iwasawa()),
            Some(m) => Err(Error::GeneratorCount(m)),
        },
        other => Err(Error::UnknownBuiltin(other.to_string())),
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: &[&str] = &["torus", "iwasawa"];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Violation {
    /// `d²f ≠ 0`; the form is `d(d f)`.
    Jacobi,
    /// `d f` has a (0,2) part; the form is that part.
    Integrability,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Offense {
    /// Zero-based generator index.
    pub index: usize,
    pub violation: Violation,
    pub form: Form,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub jacobi_ok: bool,
    pub integrable: bool,
    pub nilpotent: bool,
    /// Number of steps the annihilator chain took to fill all 1-forms.
    pub nilpotency_steps: Option<usize>,
    pub offending_generators: Vec<Offense>,
}

impl ValidationReport {
    /// Whether the double complex is well defined (jacobi and integrable).
    pub fn is_valid(&self) -> bool {
        self.jacobi_ok && self.integrable
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "jacobi (d^2 = 0): {}", flag(self.jacobi_ok))?;
        writeln!(f, "integrable:       {}", flag(self.integrable))?;
        write!(f, "nilpotent:        {}", flag(self.nilpotent))?;
        if let Some(steps) = self.nilpotency_steps {
            write!(f, " ({steps} step{})", if steps == 1 { "" } else { "s" })?;
        }
        writeln!(f)?;
        for o in &self.offending_generators {
            match o.violation {
                Violation::Jacobi => writeln!(f, "  d(d f{}) = {}", o.index + 1, o.form)?,
                Violation::Integrability => writeln!(f, "  (0,2)-part of d f{} = {}", o.index + 1, o.form)?,
            }
        }
        Ok(())
    }
}

/// Checks `d² = 0`, integrability and nilpotency.
pub fn validate(eq: &StructureEquations) -> ValidationReport {
    let mut offending = Vec::new();
    for (i, d) in eq.diffs.iter().enumerate() {
        let dd = eq.apply_d(d).expect("same ambient");
        if !dd.is_zero() {
            offending.push(Offense { index: i, violation: Violation::Jacobi, form: dd });
        }
        let bad = d.bigraded_component(0, 2);
        if !bad.is_zero() {
            offending.push(Offense { index: i, violation: Violation::Integrability, form: bad });
        }
    }
    let jacobi_ok = !offending.iter().any(|o| o.violation == Violation::Jacobi);
    let integrable = !offending.iter().any(|o| o.violation == Violation::Integrability);
    let nilpotency_steps = nilpotency_steps(eq);
    ValidationReport {
        jacobi_ok,
        integrable,
        nilpotent: nilpotency_steps.is_some(),
        nilpotency_steps,
        offending_generators: offending,
    }
}

/// Runs the chain `V_0 = ker d`, `V_{j+1} = d^{-1}(Λ²V_j)` inside all
/// 1-forms and returns the number of steps to exhaust them, or `None` if
/// the chain stalls first.
fn nilpotency_steps(eq: &StructureEquations) -> Option<usize> {
    let m = eq.m;
    let k1 = FormBasis::of_degree(m, 1);
    let k2 = FormBasis::of_degree(m, 2);
    let d_cols: Vec<SparseVec> =
        (0..k1.len()).map(|i| k2.to_vec(&eq.apply_d_monomial(&k1.monomial(i))).expect("2-form")).collect();
    let mut wedges = Subspace::zero(k2.len());
    let mut current: Option<Subspace> = None;
    for step in 0..=2 * m {
        // Columns of d reduced modulo Λ²V_j; their relations form V_{j+1}.
        let residues: Vec<SparseVec> = d_cols.iter().map(|c| wedges.reduce(c)).collect();
        let next = kernel(&SparseMatrix::from_columns(k2.len(), &residues));
        if next.dim() == k1.len() {
            return Some(step);
        }
        if current.as_ref() == Some(&next) {
            return None;
        }
        let forms: Vec<Form> = next.basis().iter().map(|v| k1.to_form(v)).collect();
        let mut products = Vec::new();
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                products.push(k2.to_vec(&forms[i].wedge(&forms[j]).expect("same ambient")).expect("2-form"));
            }
        }
        wedges = Subspace::span(k2.len(), products);
        current = Some(next);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    fn f(m: usize, k: usize) -> Form {
        Form::holo_gen(m, k - 1)
    }
    fn fb(m: usize, k: usize) -> Form {
        Form::anti_gen(m, k - 1)
    }

    #[test]
    fn d_of_a_square_vanishes() {
        let eq = StructureEquations::iwasawa();
        let alpha = f(3, 3).add(&fb(3, 3).scale(&Scalar::i())).unwrap();
        let sq = alpha.wedge(&alpha).unwrap();
        assert!(eq.apply_d(&sq).unwrap().is_zero());
    }

    #[test]
    fn leibniz_sign() {
        let eq = StructureEquations::iwasawa();
        // d(f1 ∧ f3) = −f1 ∧ d f3 = f1∧f1∧f2 = 0; d(f3 ∧ ~f1) = d f3 ∧ ~f1.
        let x = f(3, 3).wedge(&fb(3, 1)).unwrap();
        let expected = eq.diffs()[2].wedge(&fb(3, 1)).unwrap();
        assert_eq!(eq.apply_d(&x).unwrap(), expected);
    }

    #[test]
    fn del_requires_homogeneous_input() {
        let eq = StructureEquations::iwasawa();
        let mixed = f(3, 1).add(&f(3, 1).wedge(&f(3, 2)).unwrap()).unwrap();
        assert_eq!(eq.del(&mixed), Err(Error::NotHomogeneous));
        assert!(eq.del_bar(&Form::zero(3)).unwrap().is_zero());
    }

    #[test]
    fn non_integrable_input() {
        let m = 3;
        let d1 = fb(m, 2).wedge(&fb(m, 3)).unwrap();
        let eq = StructureEquations::new(m, vec![d1, Form::zero(m), Form::zero(m)]).unwrap();
        let r = validate(&eq);
        assert!(!r.integrable);
        assert!(r.jacobi_ok);
        assert_eq!(r.offending_generators.len(), 1);
        assert_eq!(r.offending_generators[0].violation, Violation::Integrability);
    }

    #[test]
    fn non_nilpotent_input() {
        // d f1 = f1∧f2: V_0 = span{f2, ~f2}, and f1∧f2 ∉ Λ²V_0 = span{f2∧~f2}.
        let m = 2;
        let d1 = f(m, 1).wedge(&f(m, 2)).unwrap();
        let eq = StructureEquations::new(m, vec![d1, Form::zero(m)]).unwrap();
        let r = validate(&eq);
        assert!(r.jacobi_ok);
        assert!(r.integrable);
        assert!(!r.nilpotent);
    }

    #[test]
    fn jacobi_failure_is_reported() {
        let m = 3;
        let d1 = f(m, 2).wedge(&f(m, 3)).unwrap();
        let d2 = Form::zero(m);
        let d3 = f(m, 1).wedge(&fb(m, 1)).unwrap();
        let eq = StructureEquations::new(m, vec![d1, d2, d3]).unwrap();
        let r = validate(&eq);
        // d²f1 = −f2∧d f3 = −f2∧f1∧~f1 ≠ 0
        assert!(!r.jacobi_ok);
        assert_eq!(r.offending_generators[0].index, 0);
    }

    #[test]
    fn builtins() {
        let t = builtin("torus", Some(2)).unwrap();
        assert!(t.diffs().iter().all(Form::is_zero));
        let iw = builtin("iwasawa", None).unwrap();
        assert_eq!(iw.diffs()[2], f(3, 1).wedge(&f(3, 2)).unwrap().neg());
        let r = iw.validate();
        assert!(r.jacobi_ok && r.integrable && r.nilpotent);
        assert!(matches!(builtin("hopf", None), Err(Error::UnknownBuiltin(_))));
        assert_eq!(StructureEquations::torus(0), Err(Error::GeneratorCount(0)));
    }

    #[test]
    fn rejects_non_two_forms() {
        let m = 2;
        assert_eq!(StructureEquations::new(m, vec![f(m, 1), Form::zero(m)]), Err(Error::NotATwoForm { index: 1 }));
    }
}
