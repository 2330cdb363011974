mod common;

use frolicher::algebra::{monomials_of_degree, FormBasis, MAX_GENERATORS};
use frolicher::exactla::{kernel, solve, SparseMatrix, SparseVec, Subspace};
use frolicher::spectral::DoubleComplex;
use frolicher::structfile::{parse_form_expr, parse_structure_file, serialize_structure_file};
use frolicher::{Form, Monomial, Scalar, StructureEquations};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| Scalar::gaussian((a, b), (c, d)))
}

fn monomial(m: usize) -> impl Strategy<Value = Monomial> {
    let mask = (1u64 << m) - 1;
    (any::<u64>(), any::<u64>()).prop_map(move |(h, a)| Monomial::new(h & mask, a & mask))
}

fn form(m: usize) -> impl Strategy<Value = Form> {
    prop::collection::vec((monomial(m), scalar()), 0..5).prop_map(move |terms| Form::from_terms(m, terms))
}

/// A form all of whose terms have total degree `k`.
fn form_of_degree(m: usize, k: usize) -> impl Strategy<Value = Form> {
    let monos = monomials_of_degree(m, k);
    prop::collection::vec((prop::sample::select(monos), scalar()), 0..4)
        .prop_map(move |terms| Form::from_terms(m, terms))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    let entry = prop_oneof![3 => Just(Scalar::zero()), 2 => scalar()];
    prop::collection::vec(prop::collection::vec(entry, cols), rows)
}

fn random_eq(seed: u64, m: usize) -> StructureEquations {
    common::random_nilpotent(&mut ChaCha8Rng::seed_from_u64(seed), m)
}

fn subspace(ambient: usize) -> impl Strategy<Value = Subspace> {
    matrix(3, ambient).prop_map(move |rows| Subspace::span(ambient, rows.iter().map(|r| SparseVec::from_dense(r))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, Scalar::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        } else {
            prop_assert!(a.inv().is_err());
        }
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn wedge_is_associative(a in form(4), b in form(4), c in form(4)) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn wedge_is_graded_commutative(
        (k, l, a, b) in (0usize..4, 0usize..4)
            .prop_flat_map(|(k, l)| (Just(k), Just(l), form_of_degree(3, k), form_of_degree(3, l)))
    ) {
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        prop_assert_eq!(ab, if (k * l) % 2 == 0 { ba } else { ba.neg() });
    }

    #[test]
    fn conjugation_is_a_multiplicative_involution(a in form(3), b in form(3)) {
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.wedge(&b).unwrap().conjugate(), a.conjugate().wedge(&b.conjugate()).unwrap());
    }

    #[test]
    fn form_display_round_trips(a in form(4)) {
        prop_assert_eq!(parse_form_expr(&a.to_string(), 4).unwrap(), a);
    }

    #[test]
    fn differential_identities(seed in any::<u64>(), m in 1usize..=3, a in form(3), b in form(3)) {
        let eq = random_eq(seed, m);
        let restrict = |f: &Form| Form::from_terms(m, f.terms()
            .filter(|(mono, _)| mono.span() <= m)
            .map(|(mono, c)| (*mono, c.clone())));
        let (a, b) = (restrict(&a), restrict(&b));
        let d = |f: &Form| eq.apply_d(f).unwrap();
        prop_assert!(d(&d(&a)).is_zero());
        prop_assert_eq!(d(&a).conjugate(), d(&a.conjugate()));
        // Leibniz on homogeneous pieces.
        for k in 0..=2 * m {
            let ak = Form::from_terms(m, a.terms().filter(|(mono, _)| mono.degree() == k).map(|(x, c)| (*x, c.clone())));
            let lhs = d(&ak.wedge(&b).unwrap());
            let mut rhs = d(&ak).wedge(&b).unwrap();
            let second = ak.wedge(&d(&b)).unwrap();
            rhs = if k % 2 == 0 { rhs.add(&second).unwrap() } else { rhs.sub(&second).unwrap() };
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn del_and_delbar_identities(seed in any::<u64>(), m in 1usize..=3) {
        let dc = DoubleComplex::build(&random_eq(seed, m)).unwrap();
        prop_assert_eq!(dc.check_identities(), Ok(()));
        for k in 0..2 * m {
            let next = dc.total_d_matrix(k + 1);
            prop_assert!(next.mul(&dc.total_d_matrix(k)).unwrap().is_zero());
        }
    }

    #[test]
    fn rank_nullity_and_kernel(
        (cols, dense) in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(c), matrix(r, c)))
    ) {
        let a = SparseMatrix::from_dense(&dense);
        let ker = kernel(&a);
        prop_assert_eq!(a.rank() + ker.dim(), cols);
        prop_assert_eq!(a.rank(), common::dense_rank(dense.clone()));
        prop_assert_eq!(a.transpose().rank(), a.rank());
        for v in ker.basis() {
            prop_assert!(a.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_agrees_with_dense_oracle(dense in matrix(4, 3), b in prop::collection::vec(scalar(), 4)) {
        let a = SparseMatrix::from_dense(&dense);
        let rhs = SparseVec::from_dense(&b);
        let augmented: Vec<Vec<Scalar>> =
            dense.iter().zip(&b).map(|(row, x)| row.iter().cloned().chain([x.clone()]).collect()).collect();
        let consistent = common::dense_rank(augmented) == common::dense_rank(dense.clone());
        match solve(&a, &rhs) {
            Some(x) => {
                prop_assert!(consistent);
                prop_assert_eq!(a.mul_vec(&x), rhs);
            }
            None => prop_assert!(!consistent),
        }
    }

    #[test]
    fn subspace_lattice_laws(a in subspace(4), b in subspace(4), c in subspace(4), x in prop::collection::vec(scalar(), 4)) {
        let ab = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(ab.dim() + meet.dim(), a.dim() + b.dim());
        prop_assert!(meet.is_subspace_of(&a).unwrap() && a.is_subspace_of(&ab).unwrap());
        // Modular law with A ⊆ A + C.
        let big = a.sum(&c).unwrap();
        let left = a.sum(&b.intersect(&big).unwrap()).unwrap();
        let right = a.sum(&b).unwrap().intersect(&big).unwrap();
        prop_assert_eq!(left.dim(), right.dim());
        prop_assert!(left.is_subspace_of(&right).unwrap());
        let v = SparseVec::from_dense(&x);
        let r = a.reduce(&v);
        prop_assert_eq!(a.reduce(&r), r.clone());
        prop_assert!(a.contains(&v.sub(&r)));
        prop_assert_eq!(big.quotient_dim(&a).unwrap(), big.dim() - a.dim());
    }

    #[test]
    fn structure_files_round_trip(seed in any::<u64>(), m in 1usize..=4) {
        let eq = random_eq(seed, m);
        let text = serialize_structure_file(&eq);
        let back = parse_structure_file(&text).unwrap();
        prop_assert_eq!(&back, &eq);
        prop_assert_eq!(serialize_structure_file(&back), text);
    }

    #[test]
    fn parse_errors_carry_spans(seed in any::<u64>(), pos in any::<prop::sample::Index>(), junk in "[~^*/()=+0-9a-z.#$ -]{1,3}") {
        let eq = random_eq(seed, 3);
        let mut text = serialize_structure_file(&eq);
        let at = pos.index(text.len() + 1);
        text.insert_str(at, &junk);
        if let Err(e) = parse_structure_file(&text) {
            prop_assert!(e.span.start <= e.span.end && e.span.end <= text.len());
            prop_assert!(e.span.line >= 1 && e.span.line <= text.split('\n').count());
            let line = text.split('\n').nth(e.span.line - 1).unwrap();
            prop_assert!(e.span.column >= 1 && e.span.column <= line.chars().count() + 1);
        }
    }
}

#[test]
fn basis_sizes_are_binomial() {
    for m in 1..=4 {
        for k in 0..=2 * m {
            assert_eq!(FormBasis::of_degree(m, k).len(), common::binomial(2 * m, k));
        }
        for p in 0..=m {
            for q in 0..=m {
                assert_eq!(FormBasis::of_bidegree(m, p, q).len(), common::binomial(m, p) * common::binomial(m, q));
            }
        }
    }
    assert_eq!(MAX_GENERATORS, 64);
}
