use nalgebra::{DMatrix, SVD};
use num_complex::Complex64;

use super::form::{HomogeneousForm, MonomialBasis};
use crate::error::{Error, Result};

/// Relative singular-value cut separating signal from numerical noise.
pub const DEFAULT_REL_TOL: f64 = 1e-7;

/// Smallest singular-value gap accepted as a dimension certificate.
pub const MIN_CERTIFIED_GAP: f64 = 1e3;

/// Orthonormal row basis produced by an SVD split, with its certificate.
#[derive(Debug, Clone)]
pub struct SvdSplit {
    /// Rows are orthonormal coefficient vectors.
    pub basis: DMatrix<Complex64>,
    /// `(smallest kept) / (largest discarded)` singular value; `+inf` when
    /// nothing falls on one side of the cut.
    pub sv_gap: f64,
    pub singular_values: Vec<f64>,
}

struct Decomposition {
    singular_values: Vec<f64>,
    v_t: DMatrix<Complex64>,
    rank: usize,
    sv_gap: f64,
}

fn decompose(m: &DMatrix<Complex64>, rel_tol: f64) -> Decomposition {
    let cols = m.ncols();
    // Pad wide matrices so that V is square.
    let padded = if m.nrows() < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = SVD::new(padded, false, true);
    let singular_values: Vec<f64> = svd.singular_values.iter().copied().collect();
    let v_t = svd.v_t.expect("V requested");
    let smax = singular_values.first().copied().unwrap_or(0.0);
    let rank = if smax > 0.0 {
        singular_values.iter().take_while(|&&s| s >= rel_tol * smax).count()
    } else {
        0
    };
    let sv_gap = if rank == 0 || rank == singular_values.len() {
        f64::INFINITY
    } else {
        let below = singular_values[rank];
        if below == 0.0 {
            f64::INFINITY
        } else {
            singular_values[rank - 1] / below
        }
    };
    Decomposition {
        singular_values,
        v_t,
        rank,
        sv_gap,
    }
}

/// Orthonormal basis (as rows) of `{v : M v = 0}`, split at `rel_tol * sigma_max`.
pub fn nullspace(m: &DMatrix<Complex64>, rel_tol: f64) -> SvdSplit {
    let d = decompose(m, rel_tol);
    let n = m.ncols();
    let basis = d.v_t.rows(d.rank, n - d.rank).map(|z| z.conj());
    SvdSplit {
        basis,
        sv_gap: d.sv_gap,
        singular_values: d.singular_values,
    }
}

/// Orthonormal basis (as rows) of the row space of `m`.
pub fn row_space(m: &DMatrix<Complex64>, rel_tol: f64) -> SvdSplit {
    let d = decompose(m, rel_tol);
    SvdSplit {
        basis: d.v_t.rows(0, d.rank).into_owned(),
        sv_gap: d.sv_gap,
        singular_values: d.singular_values,
    }
}

/// A subspace of degree-`k` forms in `d+1` variables, held as an orthonormal
/// row basis of coefficient vectors in the canonical monomial order.
#[derive(Debug, Clone)]
pub struct FormSubspace {
    ambient_dim: usize,
    degree: usize,
    basis: DMatrix<Complex64>,
    sv_gap: f64,
}

impl FormSubspace {
    /// Wraps an already orthonormal row basis.
    pub fn from_orthonormal_rows(
        ambient_dim: usize,
        degree: usize,
        basis: DMatrix<Complex64>,
        sv_gap: f64,
    ) -> Result<Self> {
        let n = MonomialBasis::new(ambient_dim, degree).len();
        if basis.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: basis.ncols(),
            });
        }
        Ok(Self {
            ambient_dim,
            degree,
            basis,
            sv_gap,
        })
    }

    /// Span of `forms`, with rank decided at [`DEFAULT_REL_TOL`].
    pub fn span(forms: &[HomogeneousForm]) -> Result<Self> {
        Self::span_with_tol(forms, DEFAULT_REL_TOL)
    }

    pub fn span_with_tol(forms: &[HomogeneousForm], rel_tol: f64) -> Result<Self> {
        let first = forms
            .first()
            .ok_or_else(|| Error::InvalidArgument("cannot span an empty list of forms".into()))?;
        let (d, k) = (first.ambient_dim(), first.degree());
        let n = MonomialBasis::new(d, k).len();
        let mut m = DMatrix::zeros(forms.len(), n);
        for (i, f) in forms.iter().enumerate() {
            if (f.ambient_dim(), f.degree()) != (d, k) {
                return Err(Error::InvalidArgument("forms in a span must share shape".into()));
            }
            m.row_mut(i).copy_from(&f.coefficient_vector().transpose());
        }
        Self::row_span(d, k, &m, rel_tol)
    }

    /// Row space of a coefficient matrix.
    pub fn row_span(ambient_dim: usize, degree: usize, m: &DMatrix<Complex64>, rel_tol: f64) -> Result<Self> {
        let split = row_space(m, rel_tol);
        Self::from_orthonormal_rows(ambient_dim, degree, split.basis, split.sv_gap)
    }

    pub fn full(ambient_dim: usize, degree: usize) -> Self {
        let n = MonomialBasis::new(ambient_dim, degree).len();
        Self {
            ambient_dim,
            degree,
            basis: DMatrix::identity(n, n),
            sv_gap: f64::INFINITY,
        }
    }

    pub fn zero(ambient_dim: usize, degree: usize) -> Self {
        let n = MonomialBasis::new(ambient_dim, degree).len();
        Self {
            ambient_dim,
            degree,
            basis: DMatrix::zeros(0, n),
            sv_gap: f64::INFINITY,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &DMatrix<Complex64> {
        &self.basis
    }

    pub fn sv_gap(&self) -> f64 {
        self.sv_gap
    }

    pub fn is_certified(&self) -> bool {
        self.sv_gap > MIN_CERTIFIED_GAP
    }

    pub fn forms(&self) -> Vec<HomogeneousForm> {
        (0..self.dim())
            .map(|i| {
                let row: Vec<Complex64> = self.basis.row(i).iter().copied().collect();
                HomogeneousForm::from_coefficients(self.ambient_dim, self.degree, &row).expect("row length checked")
            })
            .collect()
    }

    /// Largest deviation of `B B^H` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = &self.basis * self.basis.adjoint();
        let id = DMatrix::<Complex64>::identity(self.dim(), self.dim());
        (g - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Relative distance `|f - P f| / |f|` of a form from this subspace.
    pub fn membership_residual(&self, f: &HomogeneousForm) -> Result<f64> {
        self.check_shape(f.ambient_dim(), f.degree())?;
        let v = f.coefficient_vector();
        let norm = v.norm();
        if norm == 0.0 {
            return Ok(0.0);
        }
        let cols = self.basis.transpose();
        let proj = &cols * (cols.adjoint() * &v);
        Ok((v - proj).norm() / norm)
    }

    fn check_shape(&self, d: usize, k: usize) -> Result<()> {
        if (d, k) != (self.ambient_dim, self.degree) {
            return Err(Error::InvalidArgument(format!(
                "shape mismatch: subspace of degree {} in P^{}, form of degree {k} in P^{d}",
                self.degree, self.ambient_dim
            )));
        }
        Ok(())
    }

    /// Applies a linear map on forms to every basis element and returns the
    /// span of the images.
    pub fn map_forms(&self, f: impl Fn(&HomogeneousForm) -> HomogeneousForm) -> Result<Self> {
        if self.dim() == 0 {
            return Ok(self.clone());
        }
        let images: Vec<HomogeneousForm> = self.forms().iter().map(f).collect();
        Self::span(&images)
    }
}

/// `max_{f in A, |f| = 1} dist(f, B)`: zero iff `A` is contained in `B`.
pub fn containment_defect(a: &FormSubspace, b: &FormSubspace) -> Result<f64> {
    a.check_shape(b.ambient_dim, b.degree)?;
    if a.dim() == 0 {
        return Ok(0.0);
    }
    let ac = a.basis.transpose();
    let bc = b.basis.transpose();
    let residual = &ac - &bc * (bc.adjoint() * &ac);
    Ok(residual.singular_values().iter().copied().fold(0.0, f64::max))
}

/// Sine of the largest principal angle between equal-dimensional subspaces.
pub fn subspace_distance(a: &FormSubspace, b: &FormSubspace) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(containment_defect(a, b)?.max(containment_defect(b, a)?))
}

/// Intersection of two subspaces via the nullspace of `[A^T | -B^T]`.
pub fn intersection(a: &FormSubspace, b: &FormSubspace) -> Result<FormSubspace> {
    a.check_shape(b.ambient_dim, b.degree)?;
    if a.dim() == 0 || b.dim() == 0 {
        return Ok(FormSubspace::zero(a.ambient_dim, a.degree));
    }
    let n = a.basis.ncols();
    let mut k = DMatrix::zeros(n, a.dim() + b.dim());
    k.view_mut((0, 0), (n, a.dim())).copy_from(&a.basis.transpose());
    k.view_mut((0, a.dim()), (n, b.dim()))
        .copy_from(&(-b.basis.transpose()));
    let null = nullspace(&k, DEFAULT_REL_TOL);
    if null.basis.nrows() == 0 {
        let mut z = FormSubspace::zero(a.ambient_dim, a.degree);
        z.sv_gap = null.sv_gap;
        return Ok(z);
    }
    let coeffs = null.basis.columns(0, a.dim()).into_owned();
    let vectors = coeffs * &a.basis;
    let mut out = FormSubspace::row_span(a.ambient_dim, a.degree, &vectors, DEFAULT_REL_TOL)?;
    out.sv_gap = out.sv_gap.min(null.sv_gap);
    Ok(out)
}

/// Span of `{x_i f : f in S}` in degree `k + 1`.
pub fn multiplication_map(s: &FormSubspace) -> Result<FormSubspace> {
    let (d, k) = (s.ambient_dim, s.degree);
    let target = MonomialBasis::new(d, k + 1);
    if s.dim() == 0 {
        return Ok(FormSubspace::zero(d, k + 1));
    }
    let source = MonomialBasis::new(d, k);
    let mut m = DMatrix::zeros(s.dim() * (d + 1), target.len());
    for (r, row) in s.basis.row_iter().enumerate() {
        for i in 0..=d {
            let out_row = r * (d + 1) + i;
            for (j, exps) in source.iter().enumerate() {
                let c = row[j];
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let mut e = exps.to_vec();
                e[i] += 1;
                m[(out_row, target.index_of(&e).expect("degree k+1 monomial"))] = c;
            }
        }
    }
    FormSubspace::row_span(d, k + 1, &m, DEFAULT_REL_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    fn mono(e: &[u32]) -> HomogeneousForm {
        HomogeneousForm::monomial(e.to_vec(), c(1.0))
    }

    #[test]
    fn nullspace_of_zero_matrix_is_everything() {
        let n = nullspace(&DMatrix::zeros(4, 3), DEFAULT_REL_TOL);
        assert_eq!(n.basis.nrows(), 3);
        assert!(n.sv_gap.is_infinite());
    }

    #[test]
    fn nullspace_of_rank_r_matrix() {
        let mut m = DMatrix::<Complex64>::zeros(7, 5);
        for i in 0..2 {
            m[(i, i)] = c(1.0);
        }
        let n = nullspace(&m, DEFAULT_REL_TOL);
        assert_eq!(n.basis.nrows(), 3);
        for r in n.basis.row_iter() {
            let v = r.transpose();
            assert!((&m * v).norm() < 1e-14);
        }
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let m = DMatrix::from_row_slice(1, 3, &[c(1.0), c(1.0), c(0.0)]);
        let n = nullspace(&m, DEFAULT_REL_TOL);
        assert_eq!(n.basis.nrows(), 2);
        for r in n.basis.row_iter() {
            assert!((&m * r.transpose()).norm() < 1e-14);
        }
    }

    #[test]
    fn distances_on_simple_spans() {
        let a = FormSubspace::span(&[mono(&[2, 0, 0])]).unwrap();
        let b = FormSubspace::span(&[mono(&[0, 2, 0])]).unwrap();
        let ab = FormSubspace::span(&[mono(&[2, 0, 0]), mono(&[0, 2, 0])]).unwrap();
        assert!(subspace_distance(&a, &a).unwrap() < 1e-15);
        assert!((subspace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-15);
        assert!(containment_defect(&a, &ab).unwrap() < 1e-15);
        assert!((containment_defect(&ab, &a).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            subspace_distance(&a, &ab),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn multiplication_of_a_single_variable() {
        let s = FormSubspace::span(&[HomogeneousForm::variable(1, 0)]).unwrap();
        let m = multiplication_map(&s).unwrap();
        assert_eq!(m.dim(), 2);
        let expected = FormSubspace::span(&[mono(&[2, 0]), mono(&[1, 1])]).unwrap();
        assert!(subspace_distance(&m, &expected).unwrap() < 1e-15);
    }

    #[test]
    fn multiplication_detects_linear_syzygy() {
        // x0*x1 and x0*x2 satisfy x2*(x0 x1) = x1*(x0 x2).
        let s = FormSubspace::span(&[mono(&[1, 1, 0]), mono(&[1, 0, 1])]).unwrap();
        assert_eq!(multiplication_map(&s).unwrap().dim(), 5);
    }

    #[test]
    fn intersection_of_coordinate_spans() {
        let a = FormSubspace::span(&[mono(&[2, 0, 0]), mono(&[0, 2, 0])]).unwrap();
        let b = FormSubspace::span(&[mono(&[0, 2, 0]), mono(&[0, 0, 2])]).unwrap();
        let i = intersection(&a, &b).unwrap();
        assert_eq!(i.dim(), 1);
        assert!(i.membership_residual(&mono(&[0, 2, 0])).unwrap() < 1e-14);
        let none = intersection(&a, &FormSubspace::span(&[mono(&[0, 0, 2])]).unwrap()).unwrap();
        assert_eq!(none.dim(), 0);
    }

    fn random_subspace(seed: &[f64], dim: usize) -> FormSubspace {
        let n = 10; // degree 3 in P^2
        let m = DMatrix::from_fn(dim, n, |i, j| {
            let s = seed[(i * n + j) % seed.len()];
            Complex64::new(s, (s * 7.3 + j as f64).sin())
        });
        FormSubspace::row_span(2, 3, &m, DEFAULT_REL_TOL).unwrap()
    }

    proptest! {
        #[test]
        fn triangle_inequality(
            a in proptest::collection::vec(-1.0f64..1.0, 40),
            b in proptest::collection::vec(-1.0f64..1.0, 40),
            c in proptest::collection::vec(-1.0f64..1.0, 40),
        ) {
            let (a, b, c) = (random_subspace(&a, 3), random_subspace(&b, 3), random_subspace(&c, 3));
            prop_assume!(a.dim() == 3 && b.dim() == 3 && c.dim() == 3);
            let ab = subspace_distance(&a, &b).unwrap();
            let bc = subspace_distance(&b, &c).unwrap();
            let ac = subspace_distance(&a, &c).unwrap();
            prop_assert!(ac <= ab + bc + 1e-10);
            prop_assert!((ab - subspace_distance(&b, &a).unwrap()).abs() < 1e-12);
        }

        #[test]
        fn span_basis_is_orthonormal(a in proptest::collection::vec(-1.0f64..1.0, 40)) {
            let s = random_subspace(&a, 4);
            prop_assert!(s.orthonormality_defect() < 1e-12);
        }
    }
}
