//! Dense complex linear algebra helpers shared by the numerical modules.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

pub type C64 = num_complex::Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{i theta}`
pub fn phase(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Largest entry of `|M^dagger M - I|`.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    if m.ncols() != n {
        return f64::INFINITY;
    }
    max_abs_diff(&(m.adjoint() * m), &CMatrix::identity(n, n))
}

pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Hilbert-Schmidt product `Tr(A^dagger B)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> C64 {
    a.dotc(b)
}

pub fn hs_norm(a: &CMatrix) -> f64 {
    a.norm()
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// Row-major vectorization: entry `(a, b)` lands at `a * ncols + b`.
pub fn vec_rows(x: &CMatrix) -> CVector {
    let (r, cl) = x.shape();
    CVector::from_fn(r * cl, |k, _| x[(k / cl, k % cl)])
}

pub fn unvec_rows(v: &CVector, n: usize) -> CMatrix {
    assert_eq!(v.len(), n * n);
    CMatrix::from_fn(n, n, |a, b| v[a * n + b])
}

/// Orthonormal basis (as columns) of the null space of `a`.
///
/// Singular values at or below `rel_tol` times the largest one count as zero.
/// Row-compressed copy of a matrix with few nonzeros per row.
#[derive(Clone, Debug)]
pub struct SparseRows {
    rows: Vec<Vec<(usize, C64)>>,
}

impl SparseRows {
    pub fn from_dense(a: &CMatrix) -> Self {
        let rows = (0..a.nrows()).map(|i| (0..a.ncols()).filter(|&j| a[(i, j)] != C64::from(0.0)).map(|j| (j, a[(i, j)])).collect()).collect();
        SparseRows { rows }
    }

    /// `A X`
    pub fn mul(&self, x: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows.len(), x.ncols());
        for c in 0..x.ncols() {
            let col = x.column(c);
            for (i, row) in self.rows.iter().enumerate() {
                out[(i, c)] = row.iter().map(|&(k, a)| a * col[k]).sum();
            }
        }
        out
    }

    /// `A X A^dagger`
    pub fn conjugate(&self, x: &CMatrix) -> CMatrix {
        let y = self.mul(x);
        let mut out = CMatrix::zeros(y.nrows(), self.rows.len());
        for (j, row) in self.rows.iter().enumerate() {
            let mut col = out.column_mut(j);
            for &(k, a) in row {
                col.axpy(a.conj(), &y.column(k), C64::from(1.0));
            }
        }
        out
    }
}

pub fn nullspace(a: &CMatrix, rel_tol: f64) -> CMatrix {
    let n = a.ncols();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    if a.nrows() == 0 {
        return CMatrix::identity(n, n);
    }
    if a.nrows() > 2 * n {
        // same right singular vectors, much smaller SVD
        let r = a.clone().qr().r();
        return nullspace(&r, rel_tol);
    }
    let padded;
    let m = if a.nrows() < n {
        padded = {
            let mut p = CMatrix::zeros(n, n);
            p.view_mut((0, 0), (a.nrows(), n)).copy_from(a);
            p
        };
        &padded
    } else {
        a
    };
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return CMatrix::identity(n, n);
    }
    let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] <= rel_tol * smax).collect();
    let mut out = CMatrix::zeros(n, keep.len());
    for (col, &i) in keep.iter().enumerate() {
        for j in 0..n {
            out[(j, col)] = v_t[(i, j)].conj();
        }
    }
    out
}

/// Numerical rank with singular values thresholded at `rel_tol * s_max`.
pub fn rank(a: &CMatrix, rel_tol: f64) -> usize {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0;
    }
    let s = a.clone().singular_values();
    let smax = s.iter().cloned().fold(0.0, f64::max);
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > rel_tol * smax).count()
}

/// Eigenvalues of a general complex matrix from its Schur form.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<C64>> {
    let n = a.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let schur = a.clone().try_schur(f64::EPSILON, 100 * n.max(10)).ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))?;
    let (_, t) = schur.unpack();
    Ok(t.diagonal().iter().cloned().collect())
}

/// Eigen-decomposition of a Hermitian matrix; eigenvalues ascending.
pub fn hermitian_eigen(h: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(h.nrows(), order.len(), |r, k| eig.eigenvectors[(r, order[k])]);
    (values, vectors)
}

/// Eigen-decomposition of a normal matrix by joint diagonalization of its
/// Hermitian and anti-Hermitian parts. Fails when `a` is not normal.
pub fn normal_eigen(a: &CMatrix) -> Result<(Vec<C64>, Vec<CVector>)> {
    let n = a.nrows();
    let adj = a.adjoint();
    let defect = max_abs_diff(&(a * &adj), &(&adj * a));
    if defect > 1e-9 {
        return Err(Error::Numerical(format!("matrix is not normal (commutator {defect:e})")));
    }
    let h = (a + &adj) * C64::new(0.5, 0.0);
    let k = (a - &adj) * C64::new(0.0, -0.5);
    let (hv, hq) = hermitian_eigen(&h);
    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && hv[end] - hv[end - 1] <= 1e-9 {
            end += 1;
        }
        let q = hq.columns(start, end - start).into_owned();
        let kq = q.adjoint() * &k * &q;
        let kq = (&kq + kq.adjoint()) * C64::new(0.5, 0.0);
        let (_, w) = hermitian_eigen(&kq);
        let joint = q * w;
        for col in 0..joint.ncols() {
            let v = joint.column(col).into_owned();
            values.push(v.dotc(&(a * &v)));
            vectors.push(v);
        }
        start = end;
    }
    Ok((values, vectors))
}

/// Groups nearly equal complex numbers. Returns `(representative, members)`
/// sorted by argument in `(-pi, pi]`.
pub fn cluster(values: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let mut groups: Vec<(C64, C64, usize)> = Vec::new();
    for &z in values {
        match groups.iter_mut().find(|(seed, _, _)| (seed - z).norm() <= tol) {
            Some(g) => {
                g.1 += z;
                g.2 += 1;
            }
            None => groups.push((z, z, 1)),
        }
    }
    let mut out: Vec<(C64, usize)> = groups.into_iter().map(|(_, s, k)| (s / k as f64, k)).collect();
    out.sort_by(|a, b| canonical_arg(a.0).total_cmp(&canonical_arg(b.0)));
    out
}

/// Argument folded into `(-pi, pi]` with values near `-pi` mapped to `pi`.
pub fn canonical_arg(z: C64) -> f64 {
    let a = z.arg();
    if a <= -std::f64::consts::PI + 1e-9 {
        std::f64::consts::PI
    } else {
        a
    }
}

/// Projects `z` onto the unit circle.
pub fn unit(z: C64) -> C64 {
    z / z.norm()
}

/// Modified Gram-Schmidt with one re-orthogonalization pass.
///
/// A vector is dropped when the residual left after projecting out the
/// accepted ones is below `rel_tol` times its original norm (or when it is
/// zero). Returns the orthonormal vectors and the indices of the inputs that
/// produced them.
pub fn gram_schmidt<'a, I>(inputs: I, rel_tol: f64) -> (Vec<CVector>, Vec<usize>)
where
    I: IntoIterator<Item = &'a CVector>,
{
    let mut basis: Vec<CVector> = Vec::new();
    let mut kept = Vec::new();
    for (idx, x) in inputs.into_iter().enumerate() {
        let norm0 = x.norm();
        if norm0 == 0.0 {
            continue;
        }
        let mut r = x.clone();
        for _ in 0..2 {
            for q in &basis {
                let coef = q.dotc(&r);
                r.axpy(-coef, q, ONE);
            }
        }
        let nr = r.norm();
        if nr < rel_tol * norm0 {
            continue;
        }
        basis.push(r / C64::from(nr));
        kept.push(idx);
    }
    (basis, kept)
}

/// Columns of a matrix as vectors.
pub fn columns(m: &CMatrix) -> Vec<CVector> {
    (0..m.ncols()).map(|j| m.column(j).into_owned()).collect()
}

pub fn from_columns(n: usize, cols: &[CVector]) -> CMatrix {
    let mut m = CMatrix::zeros(n, cols.len());
    for (j, col) in cols.iter().enumerate() {
        m.set_column(j, col);
    }
    m
}

/// Largest distance of a vector in `vectors` from the span of the
/// orthonormal columns of `basis`, relative to the vector's norm.
pub fn span_residual(basis: &CMatrix, vectors: &[CVector]) -> f64 {
    vectors
        .iter()
        .map(|v| {
            let n = v.norm();
            if n == 0.0 {
                return 0.0;
            }
            let proj = basis * (basis.adjoint() * v);
            (v - proj).norm() / n
        })
        .fold(0.0, f64::max)
}

/// Block-diagonal assembly in the order given.
pub fn block_diagonal(blocks: &[CMatrix]) -> CMatrix {
    let n: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut m = CMatrix::zeros(n, n);
    let mut off = 0;
    for b in blocks {
        let d = b.nrows();
        m.view_mut((off, off), (d, d)).copy_from(b);
        off += d;
    }
    m
}

/// Matrix of the permutation `|i> -> |map[i]>`.
pub fn permutation_matrix(map: &[usize]) -> CMatrix {
    let n = map.len();
    let mut m = CMatrix::zeros(n, n);
    for (i, &j) in map.iter().enumerate() {
        m[(j, i)] = ONE;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize, m: usize, seed: u64) -> CMatrix {
        let mut s = seed;
        CMatrix::from_fn(n, m, |_, _| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = ((s >> 11) as f64) / ((1u64 << 53) as f64) - 0.5;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = ((s >> 11) as f64) / ((1u64 << 53) as f64) - 0.5;
            c(a, b)
        })
    }

    #[test]
    fn nullspace_of_rank_deficient_product() {
        let a = sample(7, 3, 1) * sample(3, 5, 2);
        let ns = nullspace(&a, 1e-10);
        assert_eq!(ns.ncols(), 2);
        assert!(max_abs(&(&a * &ns)) < 1e-12);
        assert!(max_abs_diff(&(ns.adjoint() * &ns), &CMatrix::identity(2, 2)) < 1e-12);
    }

    #[test]
    fn nullspace_of_wide_matrix_is_complete() {
        let a = sample(2, 5, 3);
        assert_eq!(nullspace(&a, 1e-10).ncols(), 3);
        assert_eq!(nullspace(&CMatrix::zeros(3, 4), 1e-10).ncols(), 4);
    }

    #[test]
    fn schur_eigenvalues_of_triangular_input() {
        let mut t = sample(4, 4, 5);
        for i in 0..4 {
            for j in 0..i {
                t[(i, j)] = ZERO;
            }
        }
        let mut ev = eigenvalues(&t).unwrap();
        let mut diag: Vec<C64> = t.diagonal().iter().cloned().collect();
        ev.sort_by(|a, b| a.re.total_cmp(&b.re));
        diag.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (a, b) in ev.iter().zip(&diag) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn gram_schmidt_drops_duplicates() {
        let v = sample(6, 1, 9).column(0).into_owned();
        let w = sample(6, 1, 10).column(0).into_owned();
        let (basis, kept) = gram_schmidt([&v, &w, &v], 1e-10);
        assert_eq!(kept, vec![0, 1]);
        assert!(basis[0].dotc(&basis[1]).norm() < 1e-14);
    }

    #[test]
    fn clustering_merges_nearby_values() {
        let vals = [c(-1.0, 1e-13), c(1.0, 0.0), c(-1.0, -1e-13), c(1.0, 1e-12)];
        let cl = cluster(&vals, 1e-8);
        assert_eq!(cl.len(), 2);
        assert_eq!(cl[0].1, 2);
        assert!((cl[1].0 - c(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn row_major_vectorization_matches_kronecker_action() {
        let u = sample(3, 3, 11);
        let x = sample(3, 3, 12);
        let lhs = vec_rows(&(&u * &x * u.adjoint()));
        let rhs = u.kronecker(&u.conjugate()) * vec_rows(&x);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn sparse_rows_match_dense() {
        let mut a = sample(5, 5, 7);
        for (i, j) in [(0, 1), (2, 2), (3, 0), (4, 4), (1, 3)] {
            a[(i, j)] = C64::from(0.0);
        }
        let x = sample(5, 5, 11);
        let s = SparseRows::from_dense(&a);
        assert!(max_abs_diff(&s.mul(&x), &(&a * &x)) < 1e-13);
        assert!(max_abs_diff(&s.conjugate(&x), &(&a * &x * a.adjoint())) < 1e-13);
    }

    #[test]
    fn normal_eigen_separates_equal_real_parts() {
        // e^{i pi/3} and e^{-i pi/3} share a real part; -1 is doubled
        let q = {
            let (_, v) = hermitian_eigen(&(sample(4, 4, 3) + sample(4, 4, 3).adjoint()));
            v
        };
        let d = [phase(std::f64::consts::FRAC_PI_3), phase(-std::f64::consts::FRAC_PI_3), c(-1.0, 0.0), c(-1.0, 0.0)];
        let u = &q * CMatrix::from_diagonal(&CVector::from_column_slice(&d)) * q.adjoint();
        let (vals, vecs) = normal_eigen(&u).unwrap();
        for (l, v) in vals.iter().zip(&vecs) {
            assert!((&u * v - v * *l).norm() < 1e-12);
        }
        let mut got: Vec<f64> = vals.iter().map(|z| canonical_arg(*z)).collect();
        got.sort_by(f64::total_cmp);
        let pi = std::f64::consts::PI;
        for (g, w) in got.iter().zip([-pi / 3.0, pi / 3.0, pi, pi]) {
            assert!((g - w).abs() < 1e-12);
        }
        assert!(normal_eigen(&sample(3, 3, 9)).is_err());
    }
}
