//! Attractors of the percolated walk and the asymptotic state.
//!
//! An attractor for eigenvalue `lambda` is a matrix `X` with
//! `U_K X U_K^dagger = lambda X` for every configuration `K`. Outer products
//! of common eigenstates (p-attractors) give most of them; the brute-force
//! oracle solves the equations directly.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{Configuration, StateGraph};
use crate::linalg::{self, CMatrix, CVector, SparseRows, C64};
use crate::percolation::{equivalent_to_full, DensityMatrix};
use crate::walk::{Variant, WalkSpec};

/// Relative singular-value cutoff for nullspaces.
pub const NULL_TOL: f64 = 1e-10;
/// Distance below which two eigenvalues are identified.
pub const EIG_TOL: f64 = 1e-8;

const SEED_SCAN: usize = 64;
const PROBE_TOL: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct CommonEigenstate {
    pub alpha: C64,
    pub vector: CVector,
}

#[derive(Clone, Debug)]
pub struct Attractor {
    pub lambda: C64,
    pub matrix: CMatrix,
    pub p_attractor: bool,
}

/// Hilbert-Schmidt orthonormal attractors.
#[derive(Clone, Debug, Default)]
pub struct AttractorBasis {
    pub elements: Vec<Attractor>,
}

impl AttractorBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn matrices(&self) -> Vec<CMatrix> {
        self.elements.iter().map(|a| a.matrix.clone()).collect()
    }

    /// `(lambda, count)` sorted by argument.
    pub fn spectrum(&self) -> Vec<(C64, usize)> {
        let lambdas: Vec<C64> = self.elements.iter().map(|a| a.lambda).collect();
        linalg::cluster(&lambdas, EIG_TOL)
    }

    pub fn count_at(&self, lambda: C64) -> usize {
        self.elements.iter().filter(|a| (a.lambda - lambda).norm() <= EIG_TOL).count()
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn gram_residual(&self) -> f64 {
        let m = self.elements.len();
        let mut worst: f64 = 0.0;
        for i in 0..m {
            for j in i..m {
                let g = linalg::hs_inner(&self.elements[i].matrix, &self.elements[j].matrix);
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - C64::from(want)).norm());
            }
        }
        worst
    }
}

/// Eigenvalues that coincide within `EIG_TOL` are replaced by a common
/// unit-modulus representative.
fn snap(values: &[C64]) -> (Vec<C64>, Vec<usize>) {
    let clusters = linalg::cluster(values, EIG_TOL);
    let reps: Vec<C64> = clusters.iter().map(|(z, _)| linalg::unit(*z)).collect();
    let idx = values.iter().map(|v| (0..reps.len()).min_by(|&a, &b| (reps[a] - v).norm().total_cmp(&(reps[b] - v).norm())).expect("nonempty")).collect();
    (reps, idx)
}

/// Common eigenstates of all `U_K`: solutions of `C P phi = alpha phi`
/// with equal entries on paired edges. For the `U1` variant the states are
/// mapped by `C^dagger`.
pub fn common_eigenstates(w: &WalkSpec) -> Result<Vec<CommonEigenstate>> {
    let sg = w.state_graph();
    let n = sg.dim();
    let cp = w.coin_matrix() * w.permutation_matrix();
    let mut alphas = Vec::new();
    for v in 0..sg.vertex_count() {
        let r = sg.outgoing(v);
        let block = cp.view((r.start, r.start), (r.len(), r.len())).into_owned();
        alphas.extend(linalg::eigenvalues(&block)?);
    }
    let (reps, _) = snap(&alphas);
    let edges = sg.structure().edge_count();
    let mut out = Vec::new();
    for alpha in reps {
        let mut m = CMatrix::zeros(n + edges, n);
        m.view_mut((0, 0), (n, n)).copy_from(&(&cp - CMatrix::identity(n, n) * alpha));
        for e in 0..edges {
            let (i, j) = sg.pair(e);
            m[(n + e, i)] = C64::from(1.0);
            m[(n + e, j)] = C64::from(-1.0);
        }
        let ns = linalg::nullspace(&m, NULL_TOL);
        for col in linalg::columns(&ns) {
            let vector = match w.variant() {
                Variant::U3 => col,
                Variant::U1 => w.coin_matrix().adjoint() * col,
            };
            out.push(CommonEigenstate { alpha, vector });
        }
    }
    Ok(out)
}

/// Number of common eigenstates at `alpha`.
pub fn count_at(states: &[CommonEigenstate], alpha: C64) -> usize {
    states.iter().filter(|s| (s.alpha - alpha).norm() <= EIG_TOL).count()
}

/// Largest of `|U_K phi - alpha phi|` over the given configurations.
pub fn eigenstate_residual(w: &WalkSpec, configs: &[Configuration], s: &CommonEigenstate) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in configs {
        let u = w.step_operator(k)?;
        worst = worst.max((u * &s.vector - &s.vector * s.alpha).iter().fold(0.0, |m, z| m.max(z.norm())));
    }
    Ok(worst)
}

/// All outer products `|phi_a><phi_b|` with `lambda = alpha_a conj(alpha_b)`.
pub fn p_attractors(states: &[CommonEigenstate]) -> Vec<Attractor> {
    let mut raw = Vec::with_capacity(states.len() * states.len());
    for a in states {
        for b in states {
            raw.push((a.alpha * b.alpha.conj(), &a.vector * b.vector.adjoint()));
        }
    }
    let lambdas: Vec<C64> = raw.iter().map(|(l, _)| *l).collect();
    let (reps, idx) = snap(&lambdas);
    let mut out: Vec<Attractor> = raw.into_iter().zip(idx).map(|((_, matrix), i)| Attractor { lambda: reps[i], matrix, p_attractor: true }).collect();
    out.sort_by(|a, b| linalg::canonical_arg(a.lambda).total_cmp(&linalg::canonical_arg(b.lambda)));
    out
}

/// `X_ii == X_{i, partner(i)}` on every paired edge.
pub fn is_p_attractor(x: &CMatrix, sg: &StateGraph) -> bool {
    (0..sg.dim()).all(|i| sg.is_loop(i) || (x[(i, i)] - x[(i, sg.partner(i))]).norm() <= 1e-10)
}

fn sparse_steps(w: &WalkSpec, configs: &[&Configuration]) -> Result<Vec<SparseRows>> {
    configs.par_iter().map(|k| w.step_operator(k).map(|u| SparseRows::from_dense(&u))).collect()
}

/// Largest entry of `U_K X U_K^dagger - lambda X` over the configurations.
pub fn attractor_residual(w: &WalkSpec, configs: &[(Configuration, f64)], lambda: C64, x: &CMatrix) -> Result<f64> {
    Ok(basis_residuals(w, configs, &[(lambda, x)])?[0])
}

/// [`attractor_residual`] for many matrices, building each step operator once.
pub fn basis_residuals(w: &WalkSpec, configs: &[(Configuration, f64)], xs: &[(C64, &CMatrix)]) -> Result<Vec<f64>> {
    let ks: Vec<&Configuration> = configs.iter().map(|(k, _)| k).collect();
    let us = sparse_steps(w, &ks)?;
    Ok(xs.par_iter().map(|(lambda, x)| us.iter().map(|u| linalg::max_abs(&(u.conjugate(x) - *x * *lambda))).fold(0.0, f64::max)).collect())
}

/// Attractor space of an explicit scheme, refusing schemes that are not
/// certified equivalent to full percolation.
pub fn brute_force_attractors(w: &WalkSpec, configs: &[(Configuration, f64)]) -> Result<AttractorBasis> {
    if !equivalent_to_full(configs, w.structure().edge_count()) {
        return Err(Error::NotEquivalent);
    }
    attractor_space(w, configs)
}

/// Orthonormal basis of all solutions of `U_K X U_K^dagger = lambda X`,
/// `|lambda| = 1`, over the configurations with positive weight.
///
/// Candidate eigenvalues are the products `d_i conj(d_j)` of eigenvalues of
/// a reference step operator (the least degenerate of the first few); its
/// eigenvectors give the solution space for that configuration, which is
/// then cut down by the remaining ones.
pub fn attractor_space(w: &WalkSpec, configs: &[(Configuration, f64)]) -> Result<AttractorBasis> {
    let support: Vec<&Configuration> = configs.iter().filter(|(_, p)| *p > 0.0).map(|(k, _)| k).collect();
    if support.is_empty() {
        return Err(Error::InvalidScheme("no configurations".into()));
    }
    let n = w.dim();
    let mut us = sparse_steps(w, &support)?;

    // seed with the least degenerate spectrum among the first few
    let mut seed: Option<(usize, usize, Vec<C64>, Vec<CVector>)> = None;
    let mut spectra: Vec<Vec<f64>> = Vec::new();
    for (i, k) in support.iter().enumerate().take(SEED_SCAN) {
        let (d, vecs) =
            linalg::normal_eigen(&w.step_operator(k)?).map_err(|_| Error::Numerical(format!("step operator for {:?} is not normal", support[i])))?;
        let pairs: usize = linalg::cluster(&d, EIG_TOL).iter().map(|(_, k)| k * k).sum();
        spectra.push(product_angles(&d));
        if seed.as_ref().is_none_or(|s| pairs < s.1) {
            seed = Some((i, pairs, d, vecs));
        }
    }
    let (first, _, d, vecs) = seed.expect("nonempty support");
    us.swap(0, first);

    let products: Vec<C64> = d.iter().flat_map(|a| d.iter().map(move |b| a * b.conj())).collect();
    let (reps, idx) = snap(&products);

    let spaces: Vec<Vec<Attractor>> = reps
        .par_iter()
        .enumerate()
        .filter(|(_, lambda)| spectra.iter().all(|s| contains_angle(s, lambda.arg())))
        .map(|(c, &lambda)| {
            let mut basis: Vec<CMatrix> = Vec::new();
            for (p, &ci) in idx.iter().enumerate() {
                if ci == c {
                    let (i, j) = (p / n, p % n);
                    basis.push(&vecs[i] * vecs[j].adjoint());
                }
            }
            let mut probe = combine(&basis);
            for u in &us[1..] {
                if basis.is_empty() {
                    break;
                }
                let r = u.conjugate(&probe) - &probe * lambda;
                if r.norm() <= PROBE_TOL * probe.norm() {
                    continue;
                }
                basis = restrict(basis, u, lambda);
                probe = combine(&basis);
            }
            basis.into_iter().map(|m| Attractor { lambda, matrix: m, p_attractor: false }).collect()
        })
        .collect();

    let sg = w.state_graph();
    let mut elements: Vec<Attractor> = spaces.into_iter().flatten().collect();
    for a in &mut elements {
        a.p_attractor = is_p_attractor(&a.matrix, sg);
    }
    Ok(AttractorBasis { elements })
}

/// Keeps the combinations of `basis` that also satisfy the equation for `u`.
/// Generic element of the span: a fixed combination with unit-modulus
/// coefficients at golden-angle phases.
fn combine(basis: &[CMatrix]) -> CMatrix {
    let n = basis.first().map_or(0, |b| b.nrows());
    let mut acc = CMatrix::zeros(n, n);
    for (j, b) in basis.iter().enumerate() {
        acc += b * C64::from_polar(1.0, 2.399_963_229_728_653 * (j + 1) as f64);
    }
    acc
}

/// Sorted arguments of all products `a conj(b)`.
fn product_angles(d: &[C64]) -> Vec<f64> {
    let mut out: Vec<f64> = d.iter().flat_map(|a| d.iter().map(move |b| (a * b.conj()).arg())).collect();
    out.sort_by(f64::total_cmp);
    out
}

fn contains_angle(sorted: &[f64], theta: f64) -> bool {
    let tol = 10.0 * EIG_TOL;
    let near = |x: f64| {
        let i = sorted.partition_point(|&y| y < x - tol);
        sorted.get(i).is_some_and(|&y| y <= x + tol)
    };
    let pi = std::f64::consts::PI;
    near(theta) || (theta > pi - tol && near(theta - 2.0 * pi)) || (theta < -pi + tol && near(theta + 2.0 * pi))
}

fn restrict(basis: Vec<CMatrix>, u: &SparseRows, lambda: C64) -> Vec<CMatrix> {
    let n = basis[0].nrows();
    let m = basis.len();
    let mut res = CMatrix::zeros(n * n, m);
    let mut worst: f64 = 0.0;
    for (j, x) in basis.iter().enumerate() {
        let r = u.conjugate(x) - x * lambda;
        worst = worst.max(r.norm());
        res.set_column(j, &linalg::vec_rows(&r));
    }
    if worst <= 1e-12 {
        return basis;
    }
    let z = linalg::nullspace(&res, NULL_TOL);
    (0..z.ncols())
        .map(|k| {
            let mut acc = CMatrix::zeros(n, n);
            for (j, x) in basis.iter().enumerate() {
                acc += x * z[(j, k)];
            }
            acc
        })
        .collect()
}

/// Eigenvalues of `sum_K pi_K U_K (x) conj(U_K)` with modulus at least
/// `1 - 1e-8`, clustered with multiplicities.
pub fn peripheral_spectrum(w: &WalkSpec, configs: &[(Configuration, f64)]) -> Result<Vec<(C64, usize)>> {
    let n = w.dim();
    let mut mix = CMatrix::zeros(n * n, n * n);
    for (k, p) in configs {
        let map = crate::walk::reflect_map(w.state_graph(), k);
        for a in 0..n {
            for b in 0..n {
                mix[(map[a] * n + map[b], a * n + b)] += C64::from(*p);
            }
        }
    }
    let (a, b) = w.factors();
    let mut s = a.kronecker(&a.conjugate()) * mix;
    if let Some(b) = b {
        s *= b.kronecker(&b.conjugate());
    }
    let eig = linalg::eigenvalues(&s)?;
    let peripheral: Vec<C64> = eig.into_iter().filter(|z| z.norm() >= 1.0 - 1e-8).collect();
    Ok(linalg::cluster(&peripheral, 1e-6).into_iter().map(|(z, k)| (linalg::unit(z), k)).collect())
}

/// Gram-Schmidt under `Tr(A^dagger B)`, separately for each eigenvalue.
pub fn orthonormalize(xs: &[(C64, CMatrix)]) -> AttractorBasis {
    let lambdas: Vec<C64> = xs.iter().map(|(l, _)| *l).collect();
    let (reps, idx) = snap(&lambdas);
    let mut elements = Vec::new();
    for (c, &lambda) in reps.iter().enumerate() {
        let members: Vec<&CMatrix> = xs.iter().zip(&idx).filter(|(_, &i)| i == c).map(|((_, m), _)| m).collect();
        let Some(first) = members.first() else { continue };
        let n = first.nrows();
        let vecs: Vec<CVector> = members.iter().map(|m| linalg::vec_rows(m)).collect();
        let (basis, _) = linalg::gram_schmidt(vecs.iter(), NULL_TOL);
        for v in basis {
            elements.push(Attractor { lambda, matrix: linalg::unvec_rows(&v, n), p_attractor: false });
        }
    }
    AttractorBasis { elements }
}

/// Orthonormal basis of span(p-attractors, identity), flags recomputed.
pub fn p_attractors_with_identity(states: &[CommonEigenstate], sg: &StateGraph) -> AttractorBasis {
    let n = sg.dim();
    let mut xs: Vec<(C64, CMatrix)> = p_attractors(states).into_iter().map(|a| (a.lambda, a.matrix)).collect();
    xs.push((C64::from(1.0), CMatrix::identity(n, n)));
    let mut basis = orthonormalize(&xs);
    for a in &mut basis.elements {
        a.p_attractor = is_p_attractor(&a.matrix, sg);
    }
    basis
}

/// `sum lambda^t Tr(rho0 X^dagger) X` over the basis.
pub fn asymptotic_state(rho0: &DensityMatrix, basis: &AttractorBasis, t: u64) -> Result<DensityMatrix> {
    let g = basis.gram_residual();
    if g > 1e-8 {
        return Err(Error::NotOrthonormal(g));
    }
    let n = rho0.dim();
    let mut out = CMatrix::zeros(n, n);
    for a in &basis.elements {
        let coef = linalg::hs_inner(&a.matrix, rho0.matrix());
        let phase = C64::from_polar(1.0, linalg::canonical_arg(a.lambda) * t as f64);
        out += &a.matrix * (coef * phase);
    }
    Ok(DensityMatrix::from_unchecked(out))
}

/// Maps an attractor of one variant to the other: `C X C^dagger` from `U1`
/// to `U3`, `C^dagger X C` back.
pub fn convert_variant(x: &CMatrix, w: &WalkSpec, from: Variant) -> CMatrix {
    let c = w.coin_matrix();
    match from {
        Variant::U1 => c * x * c.adjoint(),
        Variant::U3 => c.adjoint() * x * c,
    }
}

/// The `U1 -> U3` map written with the permutation: `lambda P^dagger X P`.
pub fn convert_variant_via_permutation(x: &CMatrix, lambda: C64, w: &WalkSpec) -> CMatrix {
    let p = w.permutation_matrix();
    p.adjoint() * x * p * lambda
}

/// Largest relative distance of the elements of one set of matrices from
/// the span of the other, taken both ways.
pub fn span_distance(a: &[CMatrix], b: &[CMatrix]) -> f64 {
    fn one_way(a: &[CMatrix], b: &[CMatrix]) -> f64 {
        if a.is_empty() {
            return 0.0;
        }
        if b.is_empty() {
            return 1.0;
        }
        let vb: Vec<CVector> = b.iter().map(linalg::vec_rows).collect();
        let (ob, _) = linalg::gram_schmidt(vb.iter(), NULL_TOL);
        let basis = linalg::from_columns(vb[0].len(), &ob);
        let va: Vec<CVector> = a.iter().map(linalg::vec_rows).collect();
        linalg::span_residual(&basis, &va)
    }
    one_way(a, b).max(one_way(b, a))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AttractorRecord {
    pub lambda: [f64; 2],
    pub p_attractor: bool,
    pub residual: f64,
    /// Rows of `[re, im]` pairs.
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AttractorDump {
    pub dim: usize,
    pub attractors: Vec<AttractorRecord>,
}

impl AttractorDump {
    pub fn new(basis: &AttractorBasis, residuals: &[f64]) -> Self {
        let dim = basis.elements.first().map_or(0, |a| a.matrix.nrows());
        let attractors = basis
            .elements
            .iter()
            .zip(residuals.iter().chain(std::iter::repeat(&f64::NAN)))
            .map(|(a, &residual)| AttractorRecord {
                lambda: [a.lambda.re, a.lambda.im],
                p_attractor: a.p_attractor,
                residual,
                matrix: (0..dim).map(|i| (0..dim).map(|j| [a.matrix[(i, j)].re, a.matrix[(i, j)].im]).collect()).collect(),
            })
            .collect();
        AttractorDump { dim, attractors }
    }

    pub fn to_basis(&self) -> Result<AttractorBasis> {
        let n = self.dim;
        let mut elements = Vec::with_capacity(self.attractors.len());
        for r in &self.attractors {
            if r.matrix.len() != n || r.matrix.iter().any(|row| row.len() != n) {
                return Err(Error::DimensionMismatch(format!("attractor matrix is not {n}x{n}")));
            }
            elements.push(Attractor {
                lambda: C64::new(r.lambda[0], r.lambda[1]),
                matrix: CMatrix::from_fn(n, n, |i, j| C64::new(r.matrix[i][j][0], r.matrix[i][j][1])),
                p_attractor: r.p_attractor,
            });
        }
        Ok(AttractorBasis { elements })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{parse_graph, StructureGraph};
    use crate::linalg::{c, max_abs_diff};
    use crate::percolation::PercolationScheme;
    use crate::walk::{CoinSpec, PermutationSpec, Rotation};

    fn corpus(name: &str) -> StructureGraph {
        let path = format!("{}/corpus/{}.graph", env!("CARGO_MANIFEST_DIR"), name);
        parse_graph(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn reflecting_grover_has_one_uniform_state_at_one() {
        for name in ["cube", "dodecahedron", "triangle", "k4", "prism"] {
            let w = WalkSpec::grover3(&corpus(name), Rotation::Identity, Variant::U3).unwrap();
            let states = common_eigenstates(&w).unwrap();
            let ones: Vec<&CommonEigenstate> = states.iter().filter(|s| (s.alpha - c(1.0, 0.0)).norm() < 1e-8).collect();
            assert_eq!(ones.len(), 1, "{name}");
            let v = &ones[0].vector;
            assert!(v.iter().all(|z| (z - v[0]).norm() < 1e-10));
        }
    }

    #[test]
    fn cube_counts() {
        let g = corpus("cube");
        let w = WalkSpec::grover3(&g, Rotation::Identity, Variant::U3).unwrap();
        let states = common_eigenstates(&w).unwrap();
        assert_eq!(count_at(&states, c(-1.0, 0.0)), 5);
        assert_eq!(count_at(&states, c(1.0, 0.0)), 1);
        let configs = PercolationScheme::single_closed_with_empty(&g).enumerate(&g).unwrap();
        for s in &states {
            let ks: Vec<Configuration> = configs.iter().map(|(k, _)| k.clone()).collect();
            assert!(eigenstate_residual(&w, &ks, s).unwrap() < 1e-10);
        }
        let pa = p_attractors(&states);
        assert_eq!(pa.len(), 36);
        assert_eq!(pa.iter().filter(|a| (a.lambda - c(-1.0, 0.0)).norm() < 1e-8).count(), 10);
        let cw = WalkSpec::grover3(&g, Rotation::Cw, Variant::U3).unwrap();
        let cw_states = common_eigenstates(&cw).unwrap();
        assert_eq!(count_at(&cw_states, C64::from_polar(1.0, std::f64::consts::FRAC_PI_3)), 0);
        assert_eq!(count_at(&cw_states, c(1.0, 0.0)), 1);
    }

    #[test]
    fn trivial_walk_attracts_everything() {
        let g = corpus("single");
        let sg = StateGraph::new(&g, Some(3)).unwrap();
        let w = WalkSpec::new(sg.clone(), CoinSpec::identity(&sg), PermutationSpec::identity(&sg), Variant::U3).unwrap();
        let configs = PercolationScheme::Full { p: 0.5 }.enumerate(&g).unwrap();
        let basis = attractor_space(&w, &configs).unwrap();
        assert_eq!(basis.len(), 9);
        assert!(basis.gram_residual() < 1e-10);
    }

    #[test]
    fn identity_is_not_p() {
        let sg = StateGraph::new(&corpus("cube"), Some(3)).unwrap();
        assert!(!is_p_attractor(&CMatrix::identity(24, 24), &sg));
    }

    #[test]
    fn orthonormalize_drops_duplicates() {
        let a = CMatrix::from_fn(3, 3, |i, j| c((i + 2 * j) as f64, 1.0));
        let b = CMatrix::identity(3, 3);
        let basis = orthonormalize(&[(c(1.0, 0.0), a.clone()), (c(1.0, 0.0), b), (c(1.0, 0.0), a * c(2.0, 0.0))]);
        assert_eq!(basis.len(), 2);
        assert!(basis.gram_residual() < 1e-12);
        let already = orthonormalize(&[(c(-1.0, 0.0), CMatrix::identity(2, 2) / c(2f64.sqrt(), 0.0))]);
        assert!(max_abs_diff(&already.elements[0].matrix, &(CMatrix::identity(2, 2) / c(2f64.sqrt(), 0.0))) < 1e-12);
    }

    #[test]
    fn maximally_mixed_projection() {
        let n = 4;
        let basis = AttractorBasis { elements: vec![Attractor { lambda: c(1.0, 0.0), matrix: CMatrix::identity(n, n) / c(2.0, 0.0), p_attractor: false }] };
        let rho = DensityMatrix::pure(&CVector::from_fn(n, |i, _| c(if i == 1 { 1.0 } else { 0.0 }, 0.0)));
        let out = asymptotic_state(&rho, &basis, 17).unwrap();
        assert!(max_abs_diff(out.matrix(), &(CMatrix::identity(n, n) / c(4.0, 0.0))) < 1e-15);
        let bad = AttractorBasis { elements: vec![Attractor { lambda: c(1.0, 0.0), matrix: CMatrix::identity(n, n), p_attractor: false }] };
        assert!(matches!(asymptotic_state(&rho, &bad, 0), Err(Error::NotOrthonormal(_))));
    }

    #[test]
    fn dump_round_trip() {
        let states = vec![CommonEigenstate { alpha: c(-1.0, 0.0), vector: CVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)]) }];
        let basis = AttractorBasis { elements: p_attractors(&states) };
        let dump = AttractorDump::new(&basis, &[0.0]);
        let text = serde_json::to_string(&dump).unwrap();
        let back: AttractorDump = serde_json::from_str(&text).unwrap();
        let b2 = back.to_basis().unwrap();
        assert_eq!(b2.elements[0].matrix, basis.elements[0].matrix);
        assert_eq!(b2.elements[0].lambda, c(1.0, 0.0));
    }
}
