//! Datasets: ingestion, the RCLS binary format, normalization, random
//! projection, seeded splits and synthetic subspace data.
//!
//! Samples are columns of the feature matrix. Labels are dense and 1-based;
//! the original label values read from a file are kept in
//! [`Dataset::label_names`].
//!
//! All randomized operations use ChaCha20 (`rand_chacha::ChaCha20Rng`)
//! seeded with `seed_from_u64`, so results are pure functions of their
//! inputs and seed.

use std::collections::HashMap;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::{read, write_atomic};
use crate::linalg::{axpy, dot, Mat};

/// Magic bytes opening an RCLS file.
pub const RCLS_MAGIC: &[u8; 4] = b"RCLS";
pub const RCLS_VERSION: u32 = 1;
const RCLS_HEADER_LEN: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    x: Mat,
    labels: Vec<usize>,
    num_classes: usize,
    name: String,
    label_names: Vec<i64>,
    column_scales: Option<Vec<f64>>,
}

impl Dataset {
    /// `labels` are 1-based and must cover every class in `1..=num_classes`.
    pub fn new(x: Mat, labels: Vec<usize>, num_classes: usize, name: impl Into<String>) -> Result<Self> {
        if labels.len() != x.cols() {
            return Err(Error::Dataset(format!(
                "{} labels for {} samples",
                labels.len(),
                x.cols()
            )));
        }
        if x.rows() == 0 || x.cols() == 0 {
            return Err(Error::Dataset("dataset has no features or no samples".into()));
        }
        let mut seen = vec![false; num_classes];
        for (j, &c) in labels.iter().enumerate() {
            if c == 0 || c > num_classes {
                return Err(Error::Dataset(format!(
                    "sample {j} has label {c}, outside 1..={num_classes}"
                )));
            }
            seen[c - 1] = true;
        }
        if let Some(c) = seen.iter().position(|s| !s) {
            return Err(Error::Dataset(format!("class {} has no samples", c + 1)));
        }
        Ok(Self {
            x,
            labels,
            num_classes,
            name: name.into(),
            label_names: (1..=num_classes as i64).collect(),
            column_scales: None,
        })
    }

    /// Attaches the original label value of each dense class.
    pub fn with_label_names(mut self, names: Vec<i64>) -> Result<Self> {
        if names.len() != self.num_classes {
            return Err(Error::Dataset(format!(
                "{} label names for {} classes",
                names.len(),
                self.num_classes
            )));
        }
        self.label_names = names;
        Ok(self)
    }

    pub fn x(&self) -> &Mat {
        &self.x
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Feature dimension `m`.
    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    pub fn n_samples(&self) -> usize {
        self.x.cols()
    }

    /// Original label value for each dense class (index `c − 1`).
    pub fn label_names(&self) -> &[i64] {
        &self.label_names
    }

    /// Column norms divided out by [`normalize_columns`], if applied.
    pub fn column_scales(&self) -> Option<&[f64]> {
        self.column_scales.as_deref()
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.num_classes];
        for &c in &self.labels {
            counts[c - 1] += 1;
        }
        counts
    }
}

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

/// Reads a CSV file with one sample per row: an integer label followed by the
/// feature values. A first row whose first field is not numeric is treated as
/// a header. Labels are remapped to `1..=C` in order of first appearance.
pub fn load_csv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let bytes = read(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes.as_slice());

    let mut columns: Vec<f64> = Vec::new();
    let mut raw_labels: Vec<i64> = Vec::new();
    let mut width: Option<usize> = None;
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(path, line, e.to_string())
        })?;
        let line = record.position().map_or(i + 1, |p| p.line() as usize);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let first = &record[0];
        if i == 0 && first.parse::<f64>().is_err() {
            continue;
        }
        if first.is_empty() {
            return Err(parse_err(path, line, "missing label"));
        }
        let label: i64 = first
            .parse()
            .map_err(|_| parse_err(path, line, format!("label {first:?} is not an integer")))?;
        let m = record.len() - 1;
        match width {
            None if m == 0 => return Err(parse_err(path, line, "row has no feature values")),
            None => width = Some(m),
            Some(w) if w != m => {
                return Err(parse_err(
                    path,
                    line,
                    format!("row has {m} feature values, expected {w}"),
                ))
            }
            Some(_) => {}
        }
        for (f, field) in record.iter().skip(1).enumerate() {
            let v: f64 = field.parse().map_err(|_| {
                parse_err(path, line, format!("feature {} value {field:?} is not numeric", f + 1))
            })?;
            if !v.is_finite() {
                return Err(parse_err(path, line, format!("feature {} is not finite", f + 1)));
            }
            columns.push(v);
        }
        raw_labels.push(label);
    }
    let Some(m) = width else {
        return Err(parse_err(path, 0, "file contains no samples"));
    };

    let mut mapping: HashMap<i64, usize> = HashMap::new();
    let mut names = Vec::new();
    let labels: Vec<usize> = raw_labels
        .iter()
        .map(|&l| {
            *mapping.entry(l).or_insert_with(|| {
                names.push(l);
                names.len()
            })
        })
        .collect();
    let n = labels.len();
    let name = path
        .file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    Dataset::new(Mat::new(m, n, columns)?, labels, names.len(), name)?.with_label_names(names)
}

/// Writes `ds` as CSV (header row, then one sample per row with its original
/// label). Values are printed in shortest round-trip form.
pub fn save_csv(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path.as_ref(), |w| {
        write!(w, "label")?;
        for f in 1..=ds.dim() {
            write!(w, ",x{f}")?;
        }
        writeln!(w)?;
        for (j, col) in ds.x.columns().enumerate() {
            write!(w, "{}", ds.label_names[ds.labels[j] - 1])?;
            for v in col {
                write!(w, ",{v}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    })
}

struct ByteReader<'a> {
    path: &'a Path,
    bytes: &'a [u8],
    offset: usize,
}

impl<'a> ByteReader<'a> {
    fn err(&self, offset: usize, msg: impl Into<String>) -> Error {
        Error::Format {
            path: self.path.to_path_buf(),
            offset,
            msg: msg.into(),
        }
    }

    fn take(&mut self, len: usize, what: &str) -> Result<&'a [u8]> {
        let available = self.bytes.len() - self.offset;
        if available < len {
            return Err(self.err(
                self.offset,
                format!("truncated {what}: need {len} bytes, {available} remain"),
            ));
        }
        let s = &self.bytes[self.offset..self.offset + len];
        self.offset += len;
        Ok(s)
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        let b = self.take(4, what)?;
        Ok(u32::from_le_bytes(b.try_into().unwrap()))
    }
}

/// Reads the RCLS binary format: `"RCLS"`, version `u32 = 1`, then `m`, `n`,
/// `C` as `u32`, `n` `u32` labels, and `m·n` `f64` values in column-major
/// order, all little-endian.
pub fn load_bin(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let bytes = read(path)?;
    let mut r = ByteReader {
        path,
        bytes: &bytes,
        offset: 0,
    };
    let magic = r.take(4, "magic")?;
    if magic != RCLS_MAGIC {
        return Err(r.err(0, format!("bad magic {magic:?}")));
    }
    let version = r.u32("version")?;
    if version != RCLS_VERSION {
        return Err(r.err(4, format!("unsupported version {version}")));
    }
    let m = r.u32("row count")? as usize;
    let n = r.u32("sample count")? as usize;
    let c = r.u32("class count")? as usize;
    if m == 0 || n == 0 || c == 0 {
        return Err(r.err(8, format!("empty dataset header m={m} n={n} C={c}")));
    }
    let payload = 4 * n as u64 + 8 * m as u64 * n as u64;
    let expected = RCLS_HEADER_LEN as u64 + payload;
    if (bytes.len() as u64) < expected {
        // report where the data actually runs out
        let label_end = RCLS_HEADER_LEN + 4 * n;
        let what = if bytes.len() < label_end { "labels" } else { "values" };
        let start = if bytes.len() < label_end {
            RCLS_HEADER_LEN + (bytes.len() - RCLS_HEADER_LEN) / 4 * 4
        } else {
            label_end + (bytes.len() - label_end) / 8 * 8
        };
        return Err(r.err(
            start,
            format!("truncated {what}: file has {} bytes, header implies {expected}", bytes.len()),
        ));
    }
    let mut labels = Vec::with_capacity(n);
    for j in 0..n {
        let at = r.offset;
        let l = r.u32("label")? as usize;
        if l == 0 || l > c {
            return Err(r.err(at, format!("label {l} of sample {j} outside 1..={c}")));
        }
        labels.push(l);
    }
    let mut data = Vec::with_capacity(m * n);
    for _ in 0..m * n {
        let at = r.offset;
        let v = f64::from_le_bytes(r.take(8, "value")?.try_into().unwrap());
        if !v.is_finite() {
            return Err(r.err(at, "non-finite value"));
        }
        data.push(v);
    }
    if r.offset != bytes.len() {
        return Err(r.err(r.offset, format!("{} trailing bytes", bytes.len() - r.offset)));
    }
    let name = path
        .file_stem()
        .map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    Dataset::new(Mat::new(m, n, data)?, labels, c, name).map_err(|e| r.err(RCLS_HEADER_LEN, e.to_string()))
}

/// Encodes `ds` in the RCLS format.
pub fn encode_bin(ds: &Dataset) -> Result<Vec<u8>> {
    let to_u32 = |v: usize, what: &str| {
        u32::try_from(v).map_err(|_| Error::Dataset(format!("{what} {v} does not fit in u32")))
    };
    let mut out = Vec::with_capacity(RCLS_HEADER_LEN + 4 * ds.n_samples() + 8 * ds.x.as_slice().len());
    out.extend_from_slice(RCLS_MAGIC);
    out.extend_from_slice(&RCLS_VERSION.to_le_bytes());
    out.extend_from_slice(&to_u32(ds.dim(), "row count")?.to_le_bytes());
    out.extend_from_slice(&to_u32(ds.n_samples(), "sample count")?.to_le_bytes());
    out.extend_from_slice(&to_u32(ds.num_classes, "class count")?.to_le_bytes());
    for &l in &ds.labels {
        out.extend_from_slice(&(l as u32).to_le_bytes());
    }
    for v in ds.x.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    Ok(out)
}

pub fn save_bin(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let bytes = encode_bin(ds)?;
    write_atomic(path.as_ref(), |w| w.write_all(&bytes))
}

/// Loads by extension: `.csv` as CSV, anything else as RCLS.
pub fn load_any(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    if is_csv(path) {
        load_csv(path)
    } else {
        load_bin(path)
    }
}

pub fn save_any(ds: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    if is_csv(path) {
        save_csv(ds, path)
    } else {
        save_bin(ds, path)
    }
}

fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// Scales every column to unit ℓ2 norm.
pub fn normalize_columns(ds: &Dataset) -> Result<Dataset> {
    let (m, n) = ds.x.shape();
    let mut data = Vec::with_capacity(m * n);
    let mut scales = Vec::with_capacity(n);
    for (j, col) in ds.x.columns().enumerate() {
        let norm = dot(col, col).sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroColumn { column: j });
        }
        data.extend(col.iter().map(|v| v / norm));
        scales.push(norm);
    }
    let mut out = ds.clone();
    out.x = Mat::new(m, n, data)?;
    out.column_scales = Some(scales);
    Ok(out)
}

/// The seeded Gaussian projection matrix used by [`random_project`]:
/// `target_dim × source_dim`, entries i.i.d. `N(0, 1) / √target_dim`, drawn in
/// column-major order.
pub fn projection_matrix(target_dim: usize, source_dim: usize, seed: u64) -> Result<Mat> {
    if target_dim == 0 || target_dim > source_dim {
        return Err(Error::Parameter(format!(
            "projection dimension {target_dim} outside 1..={source_dim}"
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let scale = 1.0 / (target_dim as f64).sqrt();
    let data = (0..target_dim * source_dim)
        .map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            z * scale
        })
        .collect();
    Mat::new(target_dim, source_dim, data)
}

/// Applies a seeded Gaussian random projection to every sample.
pub fn random_project(ds: &Dataset, target_dim: usize, seed: u64) -> Result<Dataset> {
    let r = projection_matrix(target_dim, ds.dim(), seed)?;
    project_with(ds, &r)
}

/// Applies an explicit projection matrix `r` (`d × m`) to every sample.
pub fn project_with(ds: &Dataset, r: &Mat) -> Result<Dataset> {
    let mut out = ds.clone();
    out.x = r.matmul(&ds.x)?;
    out.column_scales = None;
    Ok(out)
}

/// Train/test partition of a dataset's sample indices (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Split {
    /// Grouped by class in class order, ascending within a class.
    pub train_indices: Vec<usize>,
    /// Ascending.
    pub test_indices: Vec<usize>,
    pub seed: u64,
    pub per_class_train: usize,
}

/// Draws `per_class_train` training samples per class uniformly without
/// replacement; the rest become test samples.
pub fn split(ds: &Dataset, per_class_train: usize, seed: u64) -> Result<Split> {
    if per_class_train == 0 {
        return Err(Error::Parameter("per_class_train must be at least 1".into()));
    }
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); ds.num_classes];
    for (j, &c) in ds.labels.iter().enumerate() {
        by_class[c - 1].push(j);
    }
    if let Some(c) = by_class.iter().position(|v| v.len() <= per_class_train) {
        return Err(Error::Dataset(format!(
            "class {} has {} samples, needs more than {per_class_train} to leave a test sample",
            c + 1,
            by_class[c].len()
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut train = Vec::with_capacity(per_class_train * ds.num_classes);
    let mut test = Vec::with_capacity(ds.n_samples() - per_class_train * ds.num_classes);
    for mut members in by_class {
        members.shuffle(&mut rng);
        let (tr, te) = members.split_at_mut(per_class_train);
        tr.sort_unstable();
        train.extend_from_slice(tr);
        test.extend_from_slice(te);
    }
    test.sort_unstable();
    Ok(Split {
        train_indices: train,
        test_indices: test,
        seed,
        per_class_train,
    })
}

/// Parameters of a union-of-subspaces synthetic dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthSpec {
    pub classes: usize,
    pub ambient_dim: usize,
    pub subspace_dim: usize,
    pub per_class: usize,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl SynthSpec {
    pub fn validate(&self) -> Result<()> {
        if self.classes == 0 || self.per_class == 0 || self.ambient_dim == 0 {
            return Err(Error::Parameter(
                "classes, per_class and ambient_dim must be positive".into(),
            ));
        }
        if self.subspace_dim == 0 || self.subspace_dim > self.ambient_dim {
            return Err(Error::Parameter(format!(
                "subspace_dim {} outside 1..={}",
                self.subspace_dim, self.ambient_dim
            )));
        }
        if !(self.noise_sigma >= 0.0) || !self.noise_sigma.is_finite() {
            return Err(Error::Parameter(format!(
                "noise_sigma must be non-negative, got {}",
                self.noise_sigma
            )));
        }
        Ok(())
    }
}

/// Gram–Schmidt (twice) orthonormalization of `cols` in place.
fn orthonormalize(cols: &mut [Vec<f64>]) -> Result<()> {
    for i in 0..cols.len() {
        let (done, rest) = cols.split_at_mut(i);
        let v = &mut rest[0];
        for _ in 0..2 {
            for q in done.iter() {
                let h = dot(q, v);
                axpy(-h, q, v);
            }
        }
        let norm = dot(v, v).sqrt();
        if norm < 1e-12 {
            return Err(Error::Singular { pivot: i });
        }
        v.iter_mut().for_each(|x| *x /= norm);
    }
    Ok(())
}

/// Samples `per_class` points per class from a random `subspace_dim`-dimensional
/// subspace of `R^ambient_dim` plus isotropic Gaussian noise. Samples are
/// ordered class by class.
pub fn synth(spec: &SynthSpec) -> Result<Dataset> {
    spec.validate()?;
    let m = spec.ambient_dim;
    let d = spec.subspace_dim;
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let mut normal = || -> f64 { StandardNormal.sample(&mut rng) };
    let n = spec.classes * spec.per_class;
    let mut data = Vec::with_capacity(m * n);
    let mut labels = Vec::with_capacity(n);
    for c in 1..=spec.classes {
        let mut basis: Vec<Vec<f64>> = (0..d).map(|_| (0..m).map(|_| normal()).collect()).collect();
        orthonormalize(&mut basis)?;
        for _ in 0..spec.per_class {
            let mut sample = vec![0.0; m];
            for b in &basis {
                let coeff = normal();
                axpy(coeff, b, &mut sample);
            }
            if spec.noise_sigma > 0.0 {
                for v in &mut sample {
                    *v += spec.noise_sigma * normal();
                }
            }
            data.extend_from_slice(&sample);
            labels.push(c);
        }
    }
    Dataset::new(Mat::new(m, n, data)?, labels, spec.classes, "synth")
}
