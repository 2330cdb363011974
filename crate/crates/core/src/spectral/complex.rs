use crate::algebra::{Form, FormBasis};
use crate::exactla::{SparseMatrix, SparseVec};
use crate::model::StructureEquations;
use crate::Error;

/// The bigraded complex `(A^{p,q}, ∂, ∂̄)` in monomial bases, together with
/// the total complex `K^k = ⊕_{p+q=k} A^{p,q}` and its differential.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    eq: StructureEquations,
    m: usize,
    total_bases: Vec<FormBasis>,
    /// `p` of every basis monomial of `K^k`.
    holo_degree: Vec<Vec<usize>>,
    /// `d` of every basis monomial of `K^k`, in `K^{k+1}` coordinates.
    d_images: Vec<Vec<SparseVec>>,
    bigraded: Vec<Vec<FormBasis>>,
    del: Vec<Vec<SparseMatrix>>,
    del_bar: Vec<Vec<SparseMatrix>>,
}

impl DoubleComplex {
    /// Fails when the equations violate `d² = 0` or integrability.
    pub fn build(eq: &StructureEquations) -> Result<Self, Error> {
        let report = eq.validate();
        if !report.is_valid() {
            return Err(Error::Invalid(report.to_string().trim_end().replace('\n', "; ")));
        }
        Ok(DoubleComplex::build_unchecked(eq))
    }

    /// Builds without validation; the result is meaningless unless the
    /// equations are valid.
    pub fn build_unchecked(eq: &StructureEquations) -> Self {
        let m = eq.m();
        let total_bases: Vec<FormBasis> = (0..=2 * m).map(|k| FormBasis::of_degree(m, k)).collect();
        let holo_degree = total_bases.iter().map(|b| b.monomials().iter().map(|mono| mono.p()).collect()).collect();
        let bigraded: Vec<Vec<FormBasis>> =
            (0..=m).map(|p| (0..=m).map(|q| FormBasis::of_bidegree(m, p, q)).collect()).collect();

        let mut d_images = Vec::with_capacity(2 * m + 1);
        for k in 0..=2 * m {
            let images: Vec<SparseVec> = total_bases[k]
                .monomials()
                .iter()
                .map(|mono| {
                    let image = eq.apply_d_monomial(mono);
                    if k == 2 * m {
                        assert!(image.is_zero());
                        SparseVec::new()
                    } else {
                        total_bases[k + 1].to_vec(&image).expect("d raises degree by one")
                    }
                })
                .collect();
            d_images.push(images);
        }

        let block = |p: usize, q: usize, tp: usize, tq: usize| -> SparseMatrix {
            let source = &bigraded[p][q];
            if tp > m || tq > m {
                return SparseMatrix::zeros(0, source.len());
            }
            let (k, target) = (p + q, &bigraded[tp][tq]);
            let cols: Vec<SparseVec> = source
                .monomials()
                .iter()
                .map(|mono| {
                    let i = total_bases[k].index_of(mono).expect("monomial of degree k");
                    let entries = d_images[k][i]
                        .iter()
                        .filter_map(|(j, c)| {
                            let image = total_bases[k + 1].monomial(j);
                            (image.bidegree() == (tp, tq))
                                .then(|| (target.index_of(&image).expect("same bidegree"), c.clone()))
                        })
                        .collect();
                    SparseVec::from_entries(entries)
                })
                .collect();
            SparseMatrix::from_columns(target.len(), &cols)
        };
        let del = (0..=m).map(|p| (0..=m).map(|q| block(p, q, p + 1, q)).collect()).collect();
        let del_bar = (0..=m).map(|p| (0..=m).map(|q| block(p, q, p, q + 1)).collect()).collect();

        DoubleComplex { eq: eq.clone(), m, total_bases, holo_degree, d_images, bigraded, del, del_bar }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn equations(&self) -> &StructureEquations {
        &self.eq
    }

    /// Basis of `A^{p,q}`.
    pub fn basis(&self, p: usize, q: usize) -> &FormBasis {
        &self.bigraded[p][q]
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        if p > self.m || q > self.m {
            0
        } else {
            self.bigraded[p][q].len()
        }
    }

    /// Basis of `K^k`.
    pub fn total_basis(&self, k: usize) -> &FormBasis {
        &self.total_bases[k]
    }

    pub fn total_dim(&self, k: usize) -> usize {
        self.total_bases.get(k).map_or(0, FormBasis::len)
    }

    pub(crate) fn holo_degree(&self, k: usize, i: usize) -> usize {
        self.holo_degree[k][i]
    }

    /// `d` of the `i`-th basis element of `K^k`.
    pub fn d_image(&self, k: usize, i: usize) -> &SparseVec {
        &self.d_images[k][i]
    }

    /// `d: K^k → K^{k+1}` applied to a coordinate vector.
    pub fn apply_total_d(&self, k: usize, x: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, c) in x.iter() {
            acc = acc.axpy(c, &self.d_images[k][i]);
        }
        acc
    }

    /// Matrix of `d: K^k → K^{k+1}`.
    pub fn total_d_matrix(&self, k: usize) -> SparseMatrix {
        SparseMatrix::from_columns(self.total_dim(k + 1), &self.d_images[k])
    }

    /// `∂: A^{p,q} → A^{p+1,q}`; zero rows when `p = m`.
    pub fn del(&self, p: usize, q: usize) -> &SparseMatrix {
        &self.del[p][q]
    }

    /// `∂̄: A^{p,q} → A^{p,q+1}`; zero rows when `q = m`.
    pub fn del_bar(&self, p: usize, q: usize) -> &SparseMatrix {
        &self.del_bar[p][q]
    }

    /// Coordinates in `K^k` of a form of total degree `k`.
    pub fn total_vec(&self, k: usize, form: &Form) -> Result<SparseVec, Error> {
        self.total_bases.get(k).ok_or(Error::NotHomogeneous)?.to_vec(form)
    }

    pub fn total_form(&self, k: usize, v: &SparseVec) -> Form {
        self.total_bases[k].to_form(v)
    }

    /// Checks `∂² = 0`, `∂̄² = 0` and `∂∂̄ + ∂̄∂ = 0` on every block,
    /// returning the first failing `(identity, p, q)`.
    pub fn check_identities(&self) -> Result<(), (&'static str, usize, usize)> {
        let m = self.m;
        for p in 0..=m {
            for q in 0..=m {
                if p + 2 <= m && !self.del[p + 1][q].mul(&self.del[p][q]).unwrap().is_zero() {
                    return Err(("del^2", p, q));
                }
                if q + 2 <= m && !self.del_bar[p][q + 1].mul(&self.del_bar[p][q]).unwrap().is_zero() {
                    return Err(("delbar^2", p, q));
                }
                if p < m && q < m {
                    let a = self.del_bar[p + 1][q].mul(&self.del[p][q]).unwrap();
                    let b = self.del[p][q + 1].mul(&self.del_bar[p][q]).unwrap();
                    let sum = SparseMatrix::from_rows(
                        a.cols(),
                        a.row_vecs().iter().zip(b.row_vecs()).map(|(x, y)| x.add(y)).collect(),
                    );
                    if !sum.is_zero() {
                        return Err(("del delbar + delbar del", p, q));
                    }
                }
            }
        }
        Ok(())
    }
}
