//! Naive reference implementations used as test oracles. Everything here is
//! written with plain nested loops over `Vec<Vec<f64>>` and shares no code
//! with the library kernels it checks.

#![allow(dead_code)]

use procrc_core::{Mat, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Dense = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_mat(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Mat {
    Mat::from_fn(m, n, |_, _| rng.random_range(-1.0..1.0)).unwrap()
}

pub fn random_vec(rng: &mut ChaCha8Rng, m: usize) -> Vector {
    Vector::new((0..m).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
}

pub fn unit_columns(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Mat {
    let raw = random_mat(rng, m, n);
    let cols: Vec<Vec<f64>> = raw
        .columns()
        .map(|c| {
            let norm = c.iter().map(|v| v * v).sum::<f64>().sqrt();
            c.iter().map(|v| v / norm).collect()
        })
        .collect();
    Mat::from_columns(&cols).unwrap()
}

/// `k` orthonormal columns in `R^m` by modified Gram–Schmidt on random vectors.
pub fn orthonormal(rng: &mut ChaCha8Rng, m: usize, k: usize) -> Mat {
    let mut cols: Vec<Vec<f64>> = Vec::new();
    while cols.len() < k {
        let mut v: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        for _ in 0..2 {
            for q in &cols {
                let p: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= p * qi;
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            cols.push(v.iter().map(|x| x / norm).collect());
        }
    }
    Mat::from_columns(&cols).unwrap()
}

/// Random class sizes (each ≥ 1) summing to `n`, for `c ≤ n` classes.
pub fn random_partition(rng: &mut ChaCha8Rng, n: usize, c: usize) -> Vec<usize> {
    let mut sizes = vec![1; c];
    for _ in 0..n - c {
        sizes[rng.random_range(0..c)] += 1;
    }
    sizes
}

/// Grouped 1-based labels for the given class sizes.
pub fn labels_for(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &s)| std::iter::repeat_n(i + 1, s))
        .collect()
}

pub fn to_dense(a: &Mat) -> Dense {
    (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| a.get(i, j)).collect())
        .collect()
}

pub fn mat_vec(a: &Dense, v: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn transpose(a: &Dense) -> Dense {
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    (0..n).map(|j| (0..m).map(|i| a[i][j]).collect()).collect()
}

pub fn mat_mul(a: &Dense, b: &Dense) -> Dense {
    let inner = b.len();
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Gaussian elimination with partial pivoting.
pub fn naive_solve(a: &Dense, b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut m: Dense = a.iter().zip(b).map(|(row, &bi)| {
        let mut r = row.clone();
        r.push(bi);
        r
    }).collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, piv);
        for i in col + 1..n {
            let f = m[i][col] / m[col][col];
            for j in col..=n {
                m[i][j] -= f * m[col][j];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    x
}

/// `Σᵢ X̄ᵢᵀX̄ᵢ` where `X̄ᵢ` is `X` with the class-`i` columns zeroed.
pub fn naive_gram_sum(x: &Mat, sizes: &[usize]) -> Dense {
    let xd = to_dense(x);
    let labels = labels_for(sizes);
    let n = x.cols();
    let mut s = vec![vec![0.0; n]; n];
    for c in 1..=sizes.len() {
        let masked: Dense = xd
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&labels)
                    .map(|(&v, &l)| if l == c { 0.0 } else { v })
                    .collect()
            })
            .collect();
        let g = mat_mul(&transpose(&masked), &masked);
        for a in 0..n {
            for b in 0..n {
                s[a][b] += g[a][b];
            }
        }
    }
    s
}

/// Column mask of `X` keeping only class `c` atoms.
fn keep_class(xd: &Dense, labels: &[usize], c: usize, keep: bool) -> Dense {
    xd.iter()
        .map(|row| {
            row.iter()
                .zip(labels)
                .map(|(&v, &l)| if (l == c) == keep { v } else { 0.0 })
                .collect()
        })
        .collect()
}

/// `‖y − Xα‖² + λ‖α‖² + (γ/C) Σᵢ ‖Xα − Xᵢαᵢ‖²`.
pub fn procrc_objective(x: &Mat, sizes: &[usize], lambda: f64, gamma: f64, y: &[f64], a: &[f64]) -> f64 {
    let xd = to_dense(x);
    let labels = labels_for(sizes);
    let c = sizes.len() as f64;
    let xa = mat_vec(&xd, a);
    let fit: f64 = y.iter().zip(&xa).map(|(u, v)| (u - v).powi(2)).sum();
    let reg: f64 = a.iter().map(|v| v * v).sum();
    let mut coll = 0.0;
    for cls in 1..=sizes.len() {
        let xi_ai = mat_vec(&keep_class(&xd, &labels, cls, true), a);
        coll += xa.iter().zip(&xi_ai).map(|(u, v)| (u - v).powi(2)).sum::<f64>();
    }
    fit + lambda * reg + gamma / c * coll
}

/// Analytic gradient of [`procrc_objective`], assembled from masked copies of `X`.
pub fn procrc_gradient(x: &Mat, sizes: &[usize], lambda: f64, gamma: f64, y: &[f64], a: &[f64]) -> Vec<f64> {
    let xd = to_dense(x);
    let xt = transpose(&xd);
    let labels = labels_for(sizes);
    let c = sizes.len() as f64;
    let r: Vec<f64> = mat_vec(&xd, a).iter().zip(y).map(|(u, v)| u - v).collect();
    let mut g: Vec<f64> = mat_vec(&xt, &r).iter().zip(a).map(|(u, v)| 2.0 * u + 2.0 * lambda * v).collect();
    for cls in 1..=sizes.len() {
        let other = keep_class(&xd, &labels, cls, false);
        let t = mat_vec(&transpose(&other), &mat_vec(&other, a));
        for (gi, ti) in g.iter_mut().zip(&t) {
            *gi += 2.0 * gamma / c * ti;
        }
    }
    g
}

/// Gradient of `‖y − Xα‖² + λ‖α‖²`.
pub fn crc_gradient(x: &Mat, lambda: f64, y: &[f64], a: &[f64]) -> Vec<f64> {
    let xd = to_dense(x);
    let r: Vec<f64> = mat_vec(&xd, a).iter().zip(y).map(|(u, v)| u - v).collect();
    mat_vec(&transpose(&xd), &r)
        .iter()
        .zip(a)
        .map(|(u, v)| 2.0 * u + 2.0 * lambda * v)
        .collect()
}

/// ProCRC code by solving the normal equations with Gaussian elimination.
pub fn naive_procrc_code(x: &Mat, sizes: &[usize], lambda: f64, gamma: f64, y: &[f64]) -> Vec<f64> {
    let xd = to_dense(x);
    let xt = transpose(&xd);
    let g = mat_mul(&xt, &xd);
    let s = naive_gram_sum(x, sizes);
    let c = sizes.len() as f64;
    let n = x.cols();
    let a: Dense = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| g[i][j] + gamma / c * s[i][j] + if i == j { lambda } else { 0.0 })
                .collect()
        })
        .collect();
    naive_solve(&a, &mat_vec(&xt, y))
}

pub struct OmpReplay {
    pub support: Vec<usize>,
    pub coeffs: Vec<f64>,
}

/// Textbook OMP: pick the unselected atom with the largest `|xⱼᵀr|` (lowest
/// index on ties), refit by least squares via the normal equations.
pub fn omp_replay(x: &Mat, y: &[f64], k: usize, tol: f64) -> OmpReplay {
    let xd = to_dense(x);
    let xt = transpose(&xd);
    let n = x.cols();
    let mut support: Vec<usize> = Vec::new();
    let mut coeffs = vec![0.0; n];
    let mut r = y.to_vec();
    while support.len() < k && norm(&r) > tol {
        let corr = mat_vec(&xt, &r);
        let mut best: Option<usize> = None;
        for j in 0..n {
            if support.contains(&j) {
                continue;
            }
            match best {
                Some(b) if corr[j].abs() <= corr[b].abs() => {}
                _ => best = Some(j),
            }
        }
        support.push(best.unwrap());
        let sub: Dense = support.iter().map(|&j| xt[j].clone()).collect();
        let gram = mat_mul(&sub, &transpose(&sub));
        let rhs = mat_vec(&sub, y);
        let w = naive_solve(&gram, &rhs);
        coeffs = vec![0.0; n];
        for (&j, &wj) in support.iter().zip(&w) {
            coeffs[j] = wj;
        }
        let xa = mat_vec(&xd, &coeffs);
        r = y.iter().zip(&xa).map(|(u, v)| u - v).collect();
    }
    OmpReplay { support, coeffs }
}

/// Per-class `(‖y − Xᵢαᵢ‖, ‖αᵢ‖)` by explicit masking.
pub fn naive_class_residuals(x: &Mat, sizes: &[usize], y: &[f64], a: &[f64]) -> Vec<(f64, f64)> {
    let xd = to_dense(x);
    let labels = labels_for(sizes);
    (1..=sizes.len())
        .map(|c| {
            let ai: Vec<f64> = a.iter().zip(&labels).map(|(&v, &l)| if l == c { v } else { 0.0 }).collect();
            let xa = mat_vec(&xd, &ai);
            let r: Vec<f64> = y.iter().zip(&xa).map(|(u, v)| u - v).collect();
            (norm(&r), norm(&ai))
        })
        .collect()
}

/// Class scores as left-to-right sums of each class's coefficients.
pub fn index_sum_scores(labels: &[usize], c: usize, a: &[f64]) -> Vec<f64> {
    let mut q = vec![0.0; c];
    for (&l, &v) in labels.iter().zip(a) {
        q[l - 1] += v;
    }
    q
}

/// Lowest index among the maximal entries, 1-based.
pub fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for i in 1..v.len() {
        if v[i] > v[best] {
            best = i;
        }
    }
    best + 1
}

pub fn argmin(v: &[f64]) -> usize {
    let mut best = 0;
    for i in 1..v.len() {
        if v[i] < v[best] {
            best = i;
        }
    }
    best + 1
}

/// End-to-end SA-ProCRC decision recomputed from the naive pieces.
pub fn sa_procrc_replay(x: &Mat, sizes: &[usize], lambda: f64, gamma: f64, k: usize, y: &[f64]) -> usize {
    let dense = naive_procrc_code(x, sizes, lambda, gamma, y);
    let sparse = omp_replay(x, y, k, 1e-6).coeffs;
    let sum: Vec<f64> = dense.iter().zip(&sparse).map(|(a, b)| a + b).collect();
    let nn = norm(&sum);
    let fused: Vec<f64> = sum.iter().map(|v| v / nn).collect();
    argmax(&index_sum_scores(&labels_for(sizes), sizes.len(), &fused))
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max)
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}
