//! Decision rules.
//!
//! Class indices exposed here are 1-based, matching dataset labels. The
//! residual rules take the dictionary with its atoms grouped by class
//! (`class_sizes` gives the block widths, in class order).

use crate::coders::{omp, DenseCoder, SparseCode, DEFAULT_RESIDUAL_TOL, DEFAULT_SPARSITY};
use crate::error::{Error, Result};
use crate::linalg::{axpy, Mat, Vector};

/// One-hot `C × n` label matrix of a dictionary.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelMatrix {
    l: Mat,
    labels: Vec<usize>,
    class_sizes: Vec<usize>,
}

impl LabelMatrix {
    pub fn matrix(&self) -> &Mat {
        &self.l
    }

    /// 1-based class of each atom.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn n_atoms(&self) -> usize {
        self.labels.len()
    }
}

/// Builds `L` from 1-based atom labels; every class in `1..=num_classes`
/// must occur.
pub fn build_label_matrix(labels: &[usize], num_classes: usize) -> Result<LabelMatrix> {
    let mut class_sizes = vec![0usize; num_classes];
    for (j, &c) in labels.iter().enumerate() {
        if c == 0 || c > num_classes {
            return Err(Error::Dataset(format!(
                "atom {j} has label {c}, outside 1..={num_classes}"
            )));
        }
        class_sizes[c - 1] += 1;
    }
    if let Some(empty) = class_sizes.iter().position(|&s| s == 0) {
        return Err(Error::Dataset(format!("class {} has no atoms", empty + 1)));
    }
    let mut l = Mat::zeros(num_classes, labels.len());
    for (j, &c) in labels.iter().enumerate() {
        l.set(c - 1, j, 1.0);
    }
    Ok(LabelMatrix {
        l,
        labels: labels.to_vec(),
        class_sizes,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionRule {
    /// Smallest class reconstruction residual.
    Residual,
    /// Smallest residual divided by the class coefficient norm.
    RegularizedResidual,
    /// Largest class score `q = L·α`.
    MaxScore,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassDecision {
    /// 1-based predicted class.
    pub predicted_class: usize,
    /// Per-class residuals or scores, depending on `rule`.
    pub scores: Vec<f64>,
    pub rule: DecisionRule,
    /// Another class attained the same winning score; the lowest index won.
    pub tie: bool,
    /// The fused coefficient was degenerate and the dense code alone was used.
    pub dense_fallback: bool,
}

fn decide(scores: Vec<f64>, rule: DecisionRule) -> Result<ClassDecision> {
    let better = |a: f64, b: f64| match rule {
        DecisionRule::MaxScore => a > b,
        _ => a < b,
    };
    if scores.is_empty() {
        return Err(Error::Dimension("no classes to decide between".into()));
    }
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate().skip(1) {
        if better(s, scores[best]) {
            best = i;
        }
    }
    if rule != DecisionRule::MaxScore && scores[best] == f64::INFINITY {
        return Err(Error::DegenerateDecision);
    }
    let tie = scores.iter().filter(|&&s| s == scores[best]).count() > 1;
    Ok(ClassDecision {
        predicted_class: best + 1,
        scores,
        rule,
        tie,
        dense_fallback: false,
    })
}

/// Per-class pairs `(‖y − Xᵢαᵢ‖₂, ‖αᵢ‖₂)`.
pub fn class_residuals(
    x: &Mat,
    class_sizes: &[usize],
    y: &Vector,
    alpha: &Vector,
) -> Result<Vec<(f64, f64)>> {
    if y.len() != x.rows() || alpha.len() != x.cols() {
        return Err(Error::Dimension(format!(
            "dictionary {}x{} with sample length {} and coefficient length {}",
            x.rows(),
            x.cols(),
            y.len(),
            alpha.len()
        )));
    }
    crate::coders::validate_class_sizes(class_sizes, x.cols())?;
    let mut out = Vec::with_capacity(class_sizes.len());
    let mut start = 0;
    for &size in class_sizes {
        let mut r = y.as_slice().to_vec();
        let mut coef_sq = 0.0;
        for j in start..start + size {
            let a = alpha[j];
            coef_sq += a * a;
            if a != 0.0 {
                axpy(-a, x.col(j), &mut r);
            }
        }
        let res = r.iter().map(|v| v * v).sum::<f64>().sqrt();
        out.push((res, coef_sq.sqrt()));
        start += size;
    }
    Ok(out)
}

/// Assigns `y` to the class whose coefficients reconstruct it best.
pub fn classify_residual(
    x: &Mat,
    class_sizes: &[usize],
    y: &Vector,
    alpha: &Vector,
) -> Result<ClassDecision> {
    let scores = class_residuals(x, class_sizes, y, alpha)?
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    decide(scores, DecisionRule::Residual)
}

/// Regularized residual rule `‖y − Xᵢαᵢ‖₂ / ‖αᵢ‖₂`. A class with all-zero
/// coefficients scores `+∞`.
pub fn classify_regularized_residual(
    x: &Mat,
    class_sizes: &[usize],
    y: &Vector,
    alpha: &Vector,
) -> Result<ClassDecision> {
    let scores = class_residuals(x, class_sizes, y, alpha)?
        .into_iter()
        .map(|(r, a)| if a == 0.0 { f64::INFINITY } else { r / a })
        .collect();
    decide(scores, DecisionRule::RegularizedResidual)
}

/// Augmented coefficient `(α̂ + α̌) / ‖α̂ + α̌‖₂`.
pub fn fuse_coefficients(alpha_sparse: &Vector, alpha_dense: &Vector) -> Result<Vector> {
    let sum = alpha_sparse.add(alpha_dense)?;
    let norm = sum.norm2();
    if norm == 0.0 {
        return Err(Error::DegenerateFusion);
    }
    Ok(sum.scaled(1.0 / norm))
}

/// Class scores `q = L·α`.
pub fn score(labels: &LabelMatrix, alpha: &Vector) -> Result<Vector> {
    if alpha.len() != labels.n_atoms() {
        return Err(Error::Dimension(format!(
            "coefficient of length {} for {} labelled atoms",
            alpha.len(),
            labels.n_atoms()
        )));
    }
    labels.l.mul_vec(alpha)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaOptions {
    pub k: usize,
    pub residual_tol: f64,
    /// On degenerate fusion, classify with the normalized dense code instead
    /// of failing.
    pub dense_fallback: bool,
}

impl Default for SaOptions {
    fn default() -> Self {
        Self {
            k: DEFAULT_SPARSITY,
            residual_tol: DEFAULT_RESIDUAL_TOL,
            dense_fallback: false,
        }
    }
}

/// Intermediate quantities of a sparsity-augmented classification.
#[derive(Debug, Clone)]
pub struct SaTrace {
    pub dense: Vector,
    pub sparse: SparseCode,
    pub fused: Vector,
    pub decision: ClassDecision,
}

/// Sparsity-augmented classification: dense code `α̌`, OMP code `α̂`, fused
/// `α̊`, scores `q = L·α̊`, argmax. With a [`crate::coders::ProCrcProjector`]
/// this is SA-ProCRC; with a [`crate::coders::CrcProjector`], SA-CRC.
pub fn classify_sa<D: DenseCoder>(
    dense_coder: &D,
    x: &Mat,
    labels: &LabelMatrix,
    y: &Vector,
    opts: &SaOptions,
) -> Result<ClassDecision> {
    classify_sa_traced(dense_coder, x, labels, y, opts).map(|t| t.decision)
}

pub fn classify_sa_traced<D: DenseCoder>(
    dense_coder: &D,
    x: &Mat,
    labels: &LabelMatrix,
    y: &Vector,
    opts: &SaOptions,
) -> Result<SaTrace> {
    if y.norm2() == 0.0 {
        return Err(Error::Input("test sample is the zero vector".into()));
    }
    if labels.n_atoms() != x.cols() || dense_coder.n_atoms() != x.cols() {
        return Err(Error::Dimension(format!(
            "dictionary has {} atoms, labels {}, dense coder {}",
            x.cols(),
            labels.n_atoms(),
            dense_coder.n_atoms()
        )));
    }
    let dense = dense_coder.code(y)?;
    let sparse = omp(x, y, opts.k, opts.residual_tol)?;
    let (fused, fallback) = match fuse_coefficients(&sparse.coeffs, &dense) {
        Ok(f) => (f, false),
        Err(Error::DegenerateFusion) if opts.dense_fallback => {
            log::warn!("degenerate fusion; falling back to the dense code alone");
            let norm = dense.norm2();
            if norm == 0.0 {
                return Err(Error::DegenerateFusion);
            }
            (dense.scaled(1.0 / norm), true)
        }
        Err(e) => return Err(e),
    };
    let q = score(labels, &fused)?;
    let mut decision = decide(q.into_vec(), DecisionRule::MaxScore)?;
    decision.dense_fallback = fallback;
    Ok(SaTrace {
        dense,
        sparse,
        fused,
        decision,
    })
}
