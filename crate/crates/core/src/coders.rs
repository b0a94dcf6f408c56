//! Representation solvers.
//!
//! Dense coders (CRC and ProCRC) reduce to a precomputed projector applied to
//! the test sample. The sparse coders are orthogonal matching pursuit and an
//! iterative-shrinkage solver for the error-constrained ℓ1 problem used by SRC.

use crate::error::{Error, Result};
use crate::linalg::{axpy, dot, gram, spd_solve, Mat, Vector};

/// Default residual stopping tolerance for OMP.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-6;
/// Default OMP sparsity level.
pub const DEFAULT_SPARSITY: usize = 50;
/// Tolerance on dictionary column norms accepted by the sparse coders.
pub const UNIT_NORM_TOL: f64 = 1e-6;

/// A coder whose representation of `y` is a fixed linear map of `y`.
pub trait DenseCoder {
    fn code(&self, y: &Vector) -> Result<Vector>;

    fn n_atoms(&self) -> usize;
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Parameter(format!("lambda must be positive, got {lambda}")));
    }
    Ok(())
}

fn apply_projector(p: &Mat, y: &Vector) -> Result<Vector> {
    if y.len() != p.cols() {
        return Err(Error::Dimension(format!(
            "sample of length {} for a projector expecting {}",
            y.len(),
            p.cols()
        )));
    }
    p.mul_vec(y)
}

/// Precomputed CRC operator `P = (XᵀX + λI)⁻¹Xᵀ`.
#[derive(Debug, Clone)]
pub struct CrcProjector {
    p: Mat,
    lambda: f64,
}

impl CrcProjector {
    /// The `n × m` projector matrix.
    pub fn matrix(&self) -> &Mat {
        &self.p
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

impl DenseCoder for CrcProjector {
    fn code(&self, y: &Vector) -> Result<Vector> {
        apply_projector(&self.p, y)
    }

    fn n_atoms(&self) -> usize {
        self.p.rows()
    }
}

/// Fits the CRC projector for dictionary `x` (columns are atoms).
pub fn fit_crc(x: &Mat, lambda: f64) -> Result<CrcProjector> {
    check_lambda(lambda)?;
    if x.cols() == 0 {
        return Err(Error::Dimension("dictionary has no atoms".into()));
    }
    let system = gram(x)?.add_diagonal(lambda)?;
    let p = spd_solve(&system, &x.transpose())?;
    Ok(CrcProjector { p, lambda })
}

/// Precomputed ProCRC operator `T = (XᵀX + (γ/C)·S + λI)⁻¹Xᵀ`, where `S` is
/// the sum over classes of the Gram matrices of the dictionary with that
/// class's atoms zeroed out.
#[derive(Debug, Clone)]
pub struct ProCrcProjector {
    t: Mat,
    lambda: f64,
    gamma: f64,
    class_sizes: Vec<usize>,
    gram_sum: Mat,
}

impl ProCrcProjector {
    pub fn matrix(&self) -> &Mat {
        &self.t
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// The masked Gram sum `S`.
    pub fn gram_sum(&self) -> &Mat {
        &self.gram_sum
    }
}

impl DenseCoder for ProCrcProjector {
    fn code(&self, y: &Vector) -> Result<Vector> {
        apply_projector(&self.t, y)
    }

    fn n_atoms(&self) -> usize {
        self.t.rows()
    }
}

pub(crate) fn validate_class_sizes(class_sizes: &[usize], n: usize) -> Result<()> {
    if class_sizes.is_empty() {
        return Err(Error::Dataset("at least one class is required".into()));
    }
    if let Some(i) = class_sizes.iter().position(|&s| s == 0) {
        return Err(Error::Dataset(format!("class {} has no atoms", i + 1)));
    }
    let total: usize = class_sizes.iter().sum();
    if total != n {
        return Err(Error::Dimension(format!(
            "class sizes sum to {total} but there are {n} atoms"
        )));
    }
    Ok(())
}

/// Fits the ProCRC projector. Atoms of `x` must be grouped by class in the
/// order given by `class_sizes`.
pub fn fit_procrc(x: &Mat, class_sizes: &[usize], lambda: f64, gamma: f64) -> Result<ProCrcProjector> {
    check_lambda(lambda)?;
    if !(gamma >= 0.0) || !gamma.is_finite() {
        return Err(Error::Parameter(format!("gamma must be non-negative, got {gamma}")));
    }
    validate_class_sizes(class_sizes, x.cols())?;
    let g = gram(x)?;
    let s = build_gram_sum(&g, class_sizes)?;
    let c = class_sizes.len() as f64;
    let system = g.add_scaled(gamma / c, &s)?.add_diagonal(lambda)?;
    let t = spd_solve(&system, &x.transpose())?;
    Ok(ProCrcProjector {
        t,
        lambda,
        gamma,
        class_sizes: class_sizes.to_vec(),
        gram_sum: s,
    })
}

/// Computes `S = Σᵢ (X̄ᵢ')ᵀX̄ᵢ'` from the Gram matrix `g` as
/// `(C−2)·G + blockdiag(G)`: a within-class block survives `C−1` of the
/// masks, a cross-class block `C−2`.
pub fn build_gram_sum(g: &Mat, class_sizes: &[usize]) -> Result<Mat> {
    let n = g.rows();
    if g.cols() != n {
        return Err(Error::Dimension(format!(
            "Gram matrix must be square, got {}x{}",
            g.rows(),
            g.cols()
        )));
    }
    validate_class_sizes(class_sizes, n)?;
    let off = class_sizes.len() as f64 - 2.0;
    let diag = off + 1.0;
    let mut class_of = Vec::with_capacity(n);
    for (c, &size) in class_sizes.iter().enumerate() {
        class_of.extend(std::iter::repeat_n(c, size));
    }
    let mut s = Mat::zeros(n, n);
    for q in 0..n {
        for p in 0..n {
            let factor = if class_of[p] == class_of[q] { diag } else { off };
            s.set(p, q, factor * g.get(p, q));
        }
    }
    Ok(s)
}

/// Result of orthogonal matching pursuit.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCode {
    /// Length-`n` coefficients, zero off the support.
    pub coeffs: Vector,
    /// Selected atoms in selection order.
    pub support: Vec<usize>,
    pub final_residual_norm: f64,
    /// Residual norm before the first selection and after each one.
    pub residual_norms: Vec<f64>,
}

/// State handed to an [`omp_traced`] observer after each selection.
#[derive(Debug, Clone, Copy)]
pub struct OmpStep<'a> {
    pub support: &'a [usize],
    pub residual: &'a [f64],
}

pub(crate) fn check_unit_columns(x: &Mat) -> Result<()> {
    for (j, col) in x.columns().enumerate() {
        let norm = dot(col, col).sqrt();
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::Normalization { column: j, norm });
        }
    }
    Ok(())
}

/// Greedy OMP over a unit-normalized dictionary. Stops after `k` selections or
/// once the residual norm drops to `residual_tol`.
pub fn omp(x: &Mat, y: &Vector, k: usize, residual_tol: f64) -> Result<SparseCode> {
    omp_traced(x, y, k, residual_tol, |_| {})
}

/// [`omp`] with an observer called after every selection.
///
/// The support is kept as a Gram–Schmidt basis (with one reorthogonalization
/// pass) plus its triangular factor, so the residual stays orthogonal to the
/// selected atoms to working precision regardless of their coherence.
pub fn omp_traced(
    x: &Mat,
    y: &Vector,
    k: usize,
    residual_tol: f64,
    mut on_step: impl FnMut(OmpStep<'_>),
) -> Result<SparseCode> {
    let (m, n) = x.shape();
    if y.len() != m {
        return Err(Error::Dimension(format!(
            "sample of length {} for a dictionary with {m} rows",
            y.len()
        )));
    }
    if k == 0 || k > m.min(n) {
        return Err(Error::Parameter(format!(
            "sparsity level {k} outside 1..={}",
            m.min(n)
        )));
    }
    if !(residual_tol >= 0.0) {
        return Err(Error::Parameter(format!(
            "residual tolerance must be non-negative, got {residual_tol}"
        )));
    }
    check_unit_columns(x)?;

    let y_norm = y.norm2();
    let mut residual = y.as_slice().to_vec();
    let mut residual_norms = vec![y_norm];
    let mut support: Vec<usize> = Vec::with_capacity(k);
    let mut selected = vec![false; n];
    // Orthonormal basis of the selected atoms, and R with X_S = Q·R.
    let mut q_cols: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut r_cols: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut qty: Vec<f64> = Vec::with_capacity(k);

    while support.len() < k {
        if *residual_norms.last().unwrap() <= residual_tol {
            break;
        }
        let mut best: Option<(usize, f64)> = None;
        for (j, col) in x.columns().enumerate() {
            if selected[j] {
                continue;
            }
            let c = dot(col, &residual).abs();
            if best.is_none_or(|(_, b)| c > b) {
                best = Some((j, c));
            }
        }
        let Some((atom, corr)) = best else { break };
        if corr <= 1e-14 * y_norm.max(f64::MIN_POSITIVE) {
            break;
        }

        let mut q = x.col(atom).to_vec();
        let mut r = vec![0.0; q_cols.len() + 1];
        for _ in 0..2 {
            for (i, qi) in q_cols.iter().enumerate() {
                let h = dot(qi, &q);
                r[i] += h;
                axpy(-h, qi, &mut q);
            }
        }
        let q_norm = dot(&q, &q).sqrt();
        if q_norm <= 1e-10 {
            // atom lies in the span of the current support
            break;
        }
        q.iter_mut().for_each(|v| *v /= q_norm);
        r[q_cols.len()] = q_norm;

        let h = dot(&q, &residual);
        axpy(-h, &q, &mut residual);
        qty.push(dot(&q, y.as_slice()));
        q_cols.push(q);
        r_cols.push(r);
        support.push(atom);
        selected[atom] = true;
        residual_norms.push(dot(&residual, &residual).sqrt());

        on_step(OmpStep {
            support: &support,
            residual: &residual,
        });
    }

    // R c = Qᵀy by back substitution.
    let s = support.len();
    let mut c = qty;
    for i in (0..s).rev() {
        let mut v = c[i];
        for (j, r_col) in r_cols.iter().enumerate().skip(i + 1) {
            v -= r_col[i] * c[j];
        }
        c[i] = v / r_cols[i][i];
    }
    let mut coeffs = vec![0.0; n];
    for (&atom, &v) in support.iter().zip(&c) {
        coeffs[atom] = v;
    }
    Ok(SparseCode {
        coeffs: Vector::new(coeffs)?,
        support,
        final_residual_norm: *residual_norms.last().unwrap(),
        residual_norms,
    })
}

/// Outcome of [`l1_solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct L1Solution {
    pub coeffs: Vector,
    pub residual_norm: f64,
    /// False when the residual constraint was not met; `coeffs` is then the
    /// best iterate found.
    pub converged: bool,
    pub iterations: usize,
    /// Penalty weight of the final continuation stage.
    pub tau: f64,
}

const L1_STAGE_SHRINK: f64 = 0.5;
const L1_STAGE_RTOL: f64 = 1e-6;
const L1_STAGE_MAX_ITER: usize = 300;
const L1_TAU_FLOOR: f64 = 1e-10;

fn spectral_norm_sq(x: &Mat) -> Result<f64> {
    let n = x.cols();
    let mut v = Vector::new(vec![1.0 / (n as f64).sqrt(); n])?;
    let mut est = 0.0;
    for _ in 0..100 {
        let w = x.tr_mul_vec(&x.mul_vec(&v)?)?;
        let norm = w.norm2();
        if norm == 0.0 {
            return Ok(0.0);
        }
        let converged = (norm - est).abs() <= 1e-10 * norm;
        est = norm;
        v = w.scaled(1.0 / norm);
        if converged {
            break;
        }
    }
    Ok(est)
}

fn soft_threshold(v: f64, t: f64) -> f64 {
    if v > t {
        v - t
    } else if v < -t {
        v + t
    } else {
        0.0
    }
}

/// Approximates `min ‖α‖₁ s.t. ‖y − Xα‖₂ ≤ ε` by accelerated iterative
/// shrinkage on `‖y − Xα‖² + τ‖α‖₁`, halving `τ` between warm-started stages
/// until the residual constraint holds or `max_iter` total iterations are
/// spent.
pub fn l1_solve(x: &Mat, y: &Vector, epsilon: f64, max_iter: usize) -> Result<L1Solution> {
    let (m, n) = x.shape();
    if y.len() != m {
        return Err(Error::Dimension(format!(
            "sample of length {} for a dictionary with {m} rows",
            y.len()
        )));
    }
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Err(Error::Parameter(format!("epsilon must be positive, got {epsilon}")));
    }
    if max_iter == 0 {
        return Err(Error::Parameter("max_iter must be at least 1".into()));
    }
    check_unit_columns(x)?;

    let mut alpha = vec![0.0; n];
    let y_norm = y.norm2();
    if y_norm <= epsilon {
        return Ok(L1Solution {
            coeffs: Vector::zeros(n),
            residual_norm: y_norm,
            converged: true,
            iterations: 0,
            tau: 0.0,
        });
    }

    let lipschitz = 2.0 * spectral_norm_sq(x)? * 1.05;
    let step = 1.0 / lipschitz;
    let xty = x.tr_mul_vec(y)?;
    let tau0 = xty.max_abs();
    let mut tau = tau0;
    let mut iterations = 0;
    let mut best = (f64::INFINITY, alpha.clone());

    let residual_of = |a: &[f64]| -> Result<Vec<f64>> {
        let xa = x.mul_vec(&Vector::from_vec_unchecked(a.to_vec()))?;
        Ok(y.as_slice().iter().zip(xa.as_slice()).map(|(yi, v)| yi - v).collect())
    };

    'stages: loop {
        let mut z = alpha.clone();
        let mut t = 1.0_f64;
        for _ in 0..L1_STAGE_MAX_ITER {
            if iterations >= max_iter {
                break 'stages;
            }
            iterations += 1;
            // gradient of ‖y − Xz‖² is −2Xᵀ(y − Xz)
            let r = residual_of(&z)?;
            let g = x.tr_mul_vec(&Vector::from_vec_unchecked(r))?;
            let thresh = tau * step;
            let next: Vec<f64> = z
                .iter()
                .zip(g.as_slice())
                .map(|(zi, gi)| soft_threshold(zi + 2.0 * step * gi, thresh))
                .collect();
            let t_next = (1.0 + (1.0 + 4.0 * t * t).sqrt()) / 2.0;
            let momentum = (t - 1.0) / t_next;
            let mut delta_sq = 0.0;
            let mut norm_sq = 0.0;
            for i in 0..n {
                let d = next[i] - alpha[i];
                delta_sq += d * d;
                norm_sq += next[i] * next[i];
                z[i] = next[i] + momentum * d;
            }
            alpha = next;
            t = t_next;
            if delta_sq.sqrt() <= L1_STAGE_RTOL * norm_sq.sqrt().max(f64::MIN_POSITIVE) {
                break;
            }
        }
        let r = residual_of(&alpha)?;
        let rn = dot(&r, &r).sqrt();
        if rn < best.0 {
            best = (rn, alpha.clone());
        }
        if rn <= epsilon {
            break;
        }
        tau *= L1_STAGE_SHRINK;
        if tau < L1_TAU_FLOOR * tau0 {
            break;
        }
    }

    // Iteration budget may run out mid-stage; keep the feasible or best iterate.
    let r = residual_of(&alpha)?;
    let rn = dot(&r, &r).sqrt();
    let (residual_norm, coeffs) = if rn <= epsilon || rn <= best.0 {
        (rn, alpha)
    } else {
        best
    };
    let converged = residual_norm <= epsilon;
    if !converged {
        log::warn!(
            "l1_solve: residual {residual_norm:.3e} above epsilon {epsilon:.3e} after {iterations} iterations"
        );
    }
    Ok(L1Solution {
        coeffs: Vector::new(coeffs)?,
        residual_norm,
        converged,
        iterations,
        tau,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit_columns(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Mat {
        let raw = Mat::from_fn(m, n, |_, _| rng.random_range(-1.0..1.0)).unwrap();
        let cols: Vec<Vec<f64>> = raw
            .columns()
            .map(|c| {
                let norm = dot(c, c).sqrt();
                c.iter().map(|v| v / norm).collect()
            })
            .collect();
        Mat::from_columns(&cols).unwrap()
    }

    fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vector {
        Vector::new((0..n).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
    }

    #[test]
    fn crc_with_orthonormal_columns_shrinks_projection() {
        let x = Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let lambda = 0.25;
        let p = fit_crc(&x, lambda).unwrap();
        let y = Vector::new(vec![2.0, -3.0, 7.0]).unwrap();
        let a = p.code(&y).unwrap();
        assert!((a[0] - 2.0 / 1.25).abs() < 1e-14);
        assert!((a[1] + 3.0 / 1.25).abs() < 1e-14);
    }

    #[test]
    fn crc_heavy_shrinkage() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = unit_columns(&mut rng, 8, 5);
        let y = random_vec(&mut rng, 8);
        let y = y.scaled(1.0 / y.norm2());
        let a = fit_crc(&x, 1e6).unwrap().code(&y).unwrap();
        assert!(a.norm2() < 1e-5);
    }

    #[test]
    fn crc_rejects_bad_lambda() {
        let x = Mat::identity(2);
        assert!(matches!(fit_crc(&x, 0.0), Err(Error::Parameter(_))));
        assert!(matches!(fit_crc(&x, -1.0), Err(Error::Parameter(_))));
        assert!(matches!(fit_crc(&x, f64::NAN), Err(Error::Parameter(_))));
    }

    #[test]
    fn crc_projector_satisfies_normal_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let x = Mat::from_fn(20, 30, |_, _| rng.random_range(-1.0..1.0)).unwrap();
        let proj = fit_crc(&x, 0.001).unwrap();
        let lhs = gram(&x)
            .unwrap()
            .add_diagonal(0.001)
            .unwrap()
            .matmul(proj.matrix())
            .unwrap();
        let xt = x.transpose();
        let diff = lhs.add_scaled(-1.0, &xt).unwrap();
        assert!(diff.frobenius_norm() <= 1e-8 * xt.frobenius_norm());
    }

    #[test]
    fn gram_sum_small_class_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let x = Mat::from_fn(5, 6, |_, _| rng.random_range(-1.0..1.0)).unwrap();
        let g = gram(&x).unwrap();

        let s1 = build_gram_sum(&g, &[6]).unwrap();
        assert_eq!(s1.max_abs(), 0.0);

        let s2 = build_gram_sum(&g, &[2, 4]).unwrap();
        for q in 0..6 {
            for p in 0..6 {
                let same = (p < 2) == (q < 2);
                let expected = if same { g.get(p, q) } else { 0.0 };
                assert_eq!(s2.get(p, q), expected);
            }
        }
        assert!(s2.is_exactly_symmetric());
    }

    #[test]
    fn gram_sum_rejects_bad_partitions() {
        let g = Mat::identity(4);
        assert!(matches!(build_gram_sum(&g, &[1, 2]), Err(Error::Dimension(_))));
        assert!(matches!(build_gram_sum(&g, &[4, 0]), Err(Error::Dataset(_))));
        assert!(matches!(build_gram_sum(&g, &[]), Err(Error::Dataset(_))));
        assert!(matches!(
            build_gram_sum(&Mat::zeros(2, 3), &[3]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn procrc_single_class_matches_crc() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let x = Mat::from_fn(10, 7, |_, _| rng.random_range(-1.0..1.0)).unwrap();
        let crc = fit_crc(&x, 0.01).unwrap();
        let pro = fit_procrc(&x, &[7], 0.01, 0.7).unwrap();
        assert_eq!(pro.gram_sum().max_abs(), 0.0);
        assert!(pro.matrix().max_abs_diff(crc.matrix()).unwrap() <= 1e-10);
    }

    #[test]
    fn procrc_parameter_errors() {
        let x = Mat::identity(3);
        assert!(matches!(fit_procrc(&x, &[1, 2], 0.0, 0.5), Err(Error::Parameter(_))));
        assert!(matches!(fit_procrc(&x, &[1, 2], 0.1, -0.5), Err(Error::Parameter(_))));
        assert!(matches!(fit_procrc(&x, &[3, 0], 0.1, 0.5), Err(Error::Dataset(_))));
    }

    #[test]
    fn omp_canonical_basis() {
        let x = Mat::identity(3);
        let code = omp(&x, &Vector::new(vec![0.0, 5.0, 0.0]).unwrap(), 1, 1e-6).unwrap();
        assert_eq!(code.support, vec![1]);
        assert_eq!(code.coeffs.as_slice(), &[0.0, 5.0, 0.0]);
        assert_eq!(code.final_residual_norm, 0.0);

        let code = omp(&x, &Vector::new(vec![3.0, 0.0, 4.0]).unwrap(), 2, 1e-6).unwrap();
        assert_eq!(code.support, vec![2, 0]);
        assert_eq!(code.coeffs.as_slice(), &[3.0, 0.0, 4.0]);
        assert_eq!(code.final_residual_norm, 0.0);
    }

    #[test]
    fn omp_tie_breaks_to_lowest_index() {
        let x = Mat::identity(3);
        let code = omp(&x, &Vector::new(vec![0.0, 2.0, -2.0]).unwrap(), 1, 0.0).unwrap();
        assert_eq!(code.support, vec![1]);
    }

    #[test]
    fn omp_stops_on_residual_tolerance() {
        let x = Mat::identity(4);
        let y = Vector::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let code = omp(&x, &y, 4, 1e-6).unwrap();
        assert_eq!(code.support, vec![0]);
    }

    #[test]
    fn omp_input_errors() {
        let x = Mat::identity(3);
        let y = Vector::zeros(3);
        assert!(matches!(omp(&x, &y, 0, 1e-6), Err(Error::Parameter(_))));
        assert!(matches!(omp(&x, &y, 4, 1e-6), Err(Error::Parameter(_))));
        let scaled = x.scaled(1.1);
        assert!(matches!(
            omp(&scaled, &y, 1, 1e-6),
            Err(Error::Normalization { column: 0, .. })
        ));
        assert!(matches!(
            omp(&x, &Vector::zeros(2), 1, 1e-6),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn omp_residual_orthogonal_and_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..20 {
            let x = unit_columns(&mut rng, 12, 30);
            let y = random_vec(&mut rng, 12);
            let mut worst: f64 = 0.0;
            let code = omp_traced(&x, &y, 10, 0.0, |step| {
                for &a in step.support {
                    worst = worst.max(dot(x.col(a), step.residual).abs());
                }
            })
            .unwrap();
            assert!(worst <= 1e-8, "orthogonality violated: {worst}");
            for w in code.residual_norms.windows(2) {
                assert!(w[1] <= w[0] + 1e-12);
            }
            // coefficients reproduce the tracked residual
            let recon = x.mul_vec(&code.coeffs).unwrap();
            let r = y.sub(&recon).unwrap().norm2();
            assert!((r - code.final_residual_norm).abs() <= 1e-10);
        }
    }

    #[test]
    fn l1_concentrates_on_exact_atom() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let x = unit_columns(&mut rng, 20, 30);
        let y = x.column(0);
        let sol = l1_solve(&x, &y, 0.05, 20_000).unwrap();
        assert!(sol.converged);
        let l1: f64 = sol.coeffs.iter().map(|v| v.abs()).sum();
        assert!(sol.coeffs[0] >= 0.99 * l1, "{:?}", sol.coeffs);
    }

    #[test]
    fn l1_infeasible_constraint_warns() {
        let x = Mat::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        let y = Vector::new(vec![0.0, 0.0, 1.0]).unwrap();
        let sol = l1_solve(&x, &y, 0.05, 5_000).unwrap();
        assert!(!sol.converged);
        assert!((sol.residual_norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn l1_parameter_errors() {
        let x = Mat::identity(2);
        let y = Vector::new(vec![1.0, 0.0]).unwrap();
        assert!(matches!(l1_solve(&x, &y, 0.0, 10), Err(Error::Parameter(_))));
        assert!(matches!(l1_solve(&x, &y, 0.1, 0), Err(Error::Parameter(_))));
    }
}
