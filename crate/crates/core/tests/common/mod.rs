//! Shared helpers: a generator of random nilpotent structures and a dense
//! Gaussian-elimination oracle that shares no code with `exactla`.

#![allow(dead_code, clippy::needless_range_loop)]

use frolicher::algebra::FormBasis;
use frolicher::{Form, Scalar, StructureEquations};
use rand::seq::SliceRandom;
use rand::Rng;

/// A small nonzero Gaussian rational.
pub fn small_scalar(rng: &mut impl Rng) -> Scalar {
    loop {
        let re = Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let im = Scalar::ratio(rng.gen_range(-2..=2), rng.gen_range(1..=2));
        let s = &re + &(&im * &Scalar::i());
        if !s.is_zero() {
            return s;
        }
    }
}

/// Random valid, nilpotent structure equations on `m` generators.
///
/// The differentials are built lower triangular (each `d f` only involves
/// generators earlier in a random order), which forces nilpotency; samples
/// violating `d² = 0` are rejected.
pub fn random_nilpotent(rng: &mut impl Rng, m: usize) -> StructureEquations {
    loop {
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(rng);
        let mut diffs = vec![Form::zero(m); m];
        for (pos, &k) in order.iter().enumerate() {
            let earlier = &order[..pos];
            let mut d = Form::zero(m);
            for (i, &a) in earlier.iter().enumerate() {
                for &b in &earlier[i..] {
                    // (2,0), (1,1) both ways; never (0,2).
                    let candidates = [
                        (a != b).then(|| Form::holo_gen(m, a).wedge(&Form::holo_gen(m, b)).unwrap()),
                        Some(Form::holo_gen(m, a).wedge(&Form::anti_gen(m, b)).unwrap()),
                        (a != b).then(|| Form::holo_gen(m, b).wedge(&Form::anti_gen(m, a)).unwrap()),
                    ];
                    for c in candidates.into_iter().flatten() {
                        if rng.gen_bool(0.35) {
                            d = d.add(&c.scale(&small_scalar(rng))).unwrap();
                        }
                    }
                }
            }
            diffs[k] = d;
        }
        let eq = StructureEquations::new(m, diffs).unwrap();
        let report = eq.validate();
        if report.is_valid() {
            assert!(report.nilpotent, "triangular structures are nilpotent");
            return eq;
        }
    }
}

/// Rank of a dense matrix by textbook elimination.
pub fn dense_rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][c].inv().unwrap();
        let pivot_row: Vec<Scalar> = rows[rank].iter().map(|x| x * &inv).collect();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                for j in 0..cols {
                    let delta = &f * &pivot_row[j];
                    rows[r][j] = &rows[r][j] - &delta;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Dense matrix of the linear map `f` from the monomials of `source` into
/// the coordinates of `target`, built from `Form` arithmetic alone.
pub fn dense_matrix(source: &FormBasis, target: &FormBasis, f: impl Fn(&Form) -> Form) -> Vec<Vec<Scalar>> {
    let mut rows = vec![vec![Scalar::zero(); source.len()]; target.len()];
    for j in 0..source.len() {
        let image = f(&source.basis_form(j));
        for (t, c) in image.terms() {
            let i = target.index_of(t).expect("image inside target");
            rows[i][j] = c.clone();
        }
    }
    rows
}

/// Betti numbers from dense ranks of `d` on every degree.
pub fn oracle_betti(eq: &StructureEquations) -> Vec<usize> {
    let m = eq.m();
    let bases: Vec<FormBasis> = (0..=2 * m).map(|k| FormBasis::of_degree(m, k)).collect();
    let ranks: Vec<usize> = (0..2 * m)
        .map(|k| dense_rank(dense_matrix(&bases[k], &bases[k + 1], |f| eq.apply_d(f).unwrap())))
        .chain([0])
        .collect();
    (0..=2 * m).map(|k| bases[k].len() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect()
}

/// `dim H_∂̄^{p,q}` from dense ranks.
pub fn oracle_dolbeault(eq: &StructureEquations) -> Vec<Vec<usize>> {
    let m = eq.m();
    let rank = |p: usize, q: usize| {
        if q >= m {
            return 0;
        }
        let s = FormBasis::of_bidegree(m, p, q);
        let t = FormBasis::of_bidegree(m, p, q + 1);
        dense_rank(dense_matrix(&s, &t, |f| eq.del_bar(f).unwrap()))
    };
    (0..=m)
        .map(|p| {
            (0..=m)
                .map(|q| FormBasis::of_bidegree(m, p, q).len() - rank(p, q) - if q > 0 { rank(p, q - 1) } else { 0 })
                .collect()
        })
        .collect()
}

/// Binomial coefficient.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
