//! Fitted classifiers for each method of the family.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::{
    build_label_matrix, class_residuals, classify_regularized_residual, classify_residual,
    classify_sa_traced, score, ClassDecision, LabelMatrix, SaOptions,
};
use crate::coders::{
    fit_crc, fit_procrc, l1_solve, CrcProjector, DenseCoder, ProCrcProjector, DEFAULT_RESIDUAL_TOL,
    DEFAULT_SPARSITY,
};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// ℓ1 coding, class residual rule.
    Src,
    /// Ridge coding, regularized residual rule.
    Crc,
    /// Probabilistic collaborative coding, class residual rule.
    Procrc,
    /// CRC code augmented with an OMP code, max class score.
    SaCrc,
    /// ProCRC code augmented with an OMP code, max class score.
    SaProcrc,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Src,
        Method::Crc,
        Method::Procrc,
        Method::SaCrc,
        Method::SaProcrc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Src => "src",
            Method::Crc => "crc",
            Method::Procrc => "procrc",
            Method::SaCrc => "sa_crc",
            Method::SaProcrc => "sa_procrc",
        }
    }

    pub fn uses_gamma(self) -> bool {
        matches!(self, Method::Procrc | Method::SaProcrc)
    }

    pub fn uses_lambda(self) -> bool {
        self != Method::Src
    }

    pub fn uses_omp(self) -> bool {
        matches!(self, Method::SaCrc | Method::SaProcrc)
    }

    pub fn uses_l1(self) -> bool {
        self == Method::Src
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::Parameter(format!(
                    "unknown method {s:?}; expected one of src, crc, procrc, sa_crc, sa_procrc"
                ))
            })
    }
}

/// Hyperparameters. Each method reads only the ones it uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MethodParams {
    pub lambda: f64,
    pub gamma: f64,
    pub k: usize,
    pub epsilon: f64,
    pub residual_tol: f64,
    pub l1_max_iter: usize,
    pub dense_fallback: bool,
}

impl Default for MethodParams {
    fn default() -> Self {
        Self {
            lambda: 0.001,
            gamma: 0.5,
            k: DEFAULT_SPARSITY,
            epsilon: 0.05,
            residual_tol: DEFAULT_RESIDUAL_TOL,
            l1_max_iter: 5000,
            dense_fallback: false,
        }
    }
}

/// Training dictionary with atoms grouped by class.
#[derive(Debug, Clone)]
pub struct TrainingSet {
    x: Mat,
    labels: LabelMatrix,
}

impl TrainingSet {
    /// Builds the dictionary from the given samples of `ds`, reordered
    /// (stably) so that atoms are grouped by class.
    pub fn from_dataset(ds: &Dataset, indices: &[usize]) -> Result<Self> {
        let mut order = indices.to_vec();
        if let Some(&bad) = order.iter().find(|&&j| j >= ds.n_samples()) {
            return Err(Error::Dimension(format!(
                "sample index {bad} out of range for {} samples",
                ds.n_samples()
            )));
        }
        order.sort_by_key(|&j| ds.labels()[j]);
        let x = ds.x().select_columns(&order)?;
        let labels: Vec<usize> = order.iter().map(|&j| ds.labels()[j]).collect();
        Self::new(x, &labels, ds.num_classes())
    }

    /// `labels` must be grouped by class in ascending order.
    pub fn new(x: Mat, labels: &[usize], num_classes: usize) -> Result<Self> {
        if labels.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Dataset("training atoms must be grouped by class".into()));
        }
        if labels.len() != x.cols() {
            return Err(Error::Dimension(format!(
                "{} labels for {} atoms",
                labels.len(),
                x.cols()
            )));
        }
        let labels = build_label_matrix(labels, num_classes)?;
        Ok(Self { x, labels })
    }

    pub fn x(&self) -> &Mat {
        &self.x
    }

    pub fn label_matrix(&self) -> &LabelMatrix {
        &self.labels
    }

    pub fn labels(&self) -> &[usize] {
        self.labels.labels()
    }

    pub fn class_sizes(&self) -> &[usize] {
        self.labels.class_sizes()
    }

    pub fn num_classes(&self) -> usize {
        self.labels.num_classes()
    }
}

#[derive(Debug, Clone)]
enum State {
    Src,
    Crc(CrcProjector),
    Procrc(ProCrcProjector),
}

/// Per-sample breakdown used for diagnostics.
#[derive(Debug, Clone)]
pub struct Explanation {
    /// Representation the decision is based on (the fused code for the
    /// sparsity-augmented methods).
    pub coefficients: Vector,
    /// `‖y − Xᵢαᵢ‖₂` per class, on `coefficients`.
    pub residuals: Vec<f64>,
    /// `L·α` per class, on `coefficients`.
    pub class_sums: Vec<f64>,
    pub decision: ClassDecision,
}

/// A method fitted to a training dictionary.
#[derive(Debug, Clone)]
pub struct Classifier {
    method: Method,
    params: MethodParams,
    train: TrainingSet,
    state: State,
}

impl Classifier {
    pub fn fit(method: Method, params: MethodParams, train: TrainingSet) -> Result<Self> {
        let mut params = params;
        if method.uses_omp() {
            let cap = train.x.rows().min(train.x.cols());
            if params.k > cap {
                log::warn!("sparsity level {} exceeds min(m, n) = {cap}; using {cap}", params.k);
                params.k = cap;
            }
        }
        let state = match method {
            Method::Src => State::Src,
            Method::Crc | Method::SaCrc => State::Crc(fit_crc(&train.x, params.lambda)?),
            Method::Procrc | Method::SaProcrc => State::Procrc(fit_procrc(
                &train.x,
                train.class_sizes(),
                params.lambda,
                params.gamma,
            )?),
        };
        Ok(Self {
            method,
            params,
            train,
            state,
        })
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Parameters in effect (the sparsity level may have been capped).
    pub fn params(&self) -> &MethodParams {
        &self.params
    }

    pub fn training_set(&self) -> &TrainingSet {
        &self.train
    }

    fn sa_options(&self) -> SaOptions {
        SaOptions {
            k: self.params.k,
            residual_tol: self.params.residual_tol,
            dense_fallback: self.params.dense_fallback,
        }
    }

    /// Returns the decision together with the coefficient it was based on.
    fn run(&self, y: &Vector) -> Result<(Vector, ClassDecision)> {
        let x = &self.train.x;
        let sizes = self.train.class_sizes();
        match (&self.state, self.method) {
            (State::Src, _) => {
                let sol = l1_solve(x, y, self.params.epsilon, self.params.l1_max_iter)?;
                let d = classify_residual(x, sizes, y, &sol.coeffs)?;
                Ok((sol.coeffs, d))
            }
            (State::Crc(p), Method::Crc) => {
                let a = p.code(y)?;
                let d = classify_regularized_residual(x, sizes, y, &a)?;
                Ok((a, d))
            }
            (State::Procrc(p), Method::Procrc) => {
                let a = p.code(y)?;
                let d = classify_residual(x, sizes, y, &a)?;
                Ok((a, d))
            }
            (State::Crc(p), _) => {
                let t = classify_sa_traced(p, x, &self.train.labels, y, &self.sa_options())?;
                Ok((t.fused, t.decision))
            }
            (State::Procrc(p), _) => {
                let t = classify_sa_traced(p, x, &self.train.labels, y, &self.sa_options())?;
                Ok((t.fused, t.decision))
            }
        }
    }

    pub fn classify(&self, y: &Vector) -> Result<ClassDecision> {
        self.run(y).map(|(_, d)| d)
    }

    pub fn explain(&self, y: &Vector) -> Result<Explanation> {
        let (coefficients, decision) = self.run(y)?;
        let residuals = class_residuals(&self.train.x, self.train.class_sizes(), y, &coefficients)?
            .into_iter()
            .map(|(r, _)| r)
            .collect();
        let class_sums = score(&self.train.labels, &coefficients)?.into_vec();
        Ok(Explanation {
            coefficients,
            residuals,
            class_sums,
            decision,
        })
    }
}
