//! Independent ground truth: dense eigensolvers, dense resolvent, a seeded
//! instance generator and the verification report.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dense::{pencil_matrix, DenseMatrix, Lu};
use crate::error::{Error, Result};
use crate::giep::{GiepInstance, ReconstructionResult};
use crate::pencil::Pencil;
use crate::recurrence::{self, Side};
use crate::resolvent::{MFunctionTable, MRouteEntries};

/// Entry errors above this fail verification.
pub const ENTRY_TOL: f64 = 1e-7;
/// Eigen-residuals above this fail verification.
pub const RESIDUAL_TOL: f64 = 1e-6;
pub const MAX_ATTEMPTS: u64 = 100;

/// Roots of `det(zJ - H)`: eigenvalues of the companion matrix of the monic
/// `P_{n+1}`, each refined by one Newton step. Sorted by real part, then
/// imaginary part.
pub fn pencil_eigenvalues(pencil: &Pencil) -> Result<Vec<Complex64>> {
    let m = pencil.n() + 1;
    if recurrence::kappa_sequence(pencil).degree_drop[m] {
        return Err(Error::DegreeDrop { m });
    }
    let poly = recurrence::poly_p(pencil, m)?;
    let coeffs = poly.coeffs();
    if poly.degree() != m {
        return Err(Error::DegreeDrop { m });
    }
    let lead = poly.leading();
    let companion = DMatrix::<f64>::from_fn(m, m, |i, j| {
        if j == m - 1 {
            -coeffs[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let mut roots: Vec<Complex64> = companion
        .complex_eigenvalues()
        .iter()
        .map(|&z| {
            let (p, dp) = recurrence::eval_p_with_derivative(pencil, m, z).expect("index in range");
            if dp.norm() > 0.0 && (p / dp).is_finite() {
                z - p / dp
            } else {
                z
            }
        })
        .collect();
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(roots)
}

fn j_dense(pencil: &Pencil) -> DMatrix<f64> {
    let (c, d) = (pencil.c(), pencil.d());
    DMatrix::from_fn(pencil.order(), pencil.order(), |i, j| {
        if i == j {
            c[i]
        } else if i == j + 1 {
            d[j]
        } else if j == i + 1 {
            d[i]
        } else {
            0.0
        }
    })
}

/// Whether `J` is positive definite (dense Cholesky succeeds).
pub fn j_is_positive_definite(pencil: &Pencil) -> bool {
    nalgebra::Cholesky::new(j_dense(pencil)).is_some()
}

/// Eigenpairs of `Hx = zJx` for positive-definite `J`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseEigen {
    /// Ascending.
    pub values: Vec<f64>,
    /// `vectors[i]` belongs to `values[i]`.
    pub vectors: Vec<Vec<Complex64>>,
}

/// Generalized Hermitian eigensolver: with `J = L L^T`, the eigenpairs of
/// `L^{-1} H L^{-T}` give `x = L^{-T} y`.
pub fn dense_hermitian_eigen(pencil: &Pencil) -> Result<DenseEigen> {
    let size = pencil.order();
    let chol = nalgebra::Cholesky::new(j_dense(pencil)).ok_or_else(|| Error::invalid("J", "not positive definite"))?;
    let linv = chol
        .l()
        .try_inverse()
        .ok_or(Error::NearSingular)?
        .map(|x| Complex64::new(x, 0.0));
    let h = DMatrix::<Complex64>::from_fn(size, size, |i, j| {
        if i == j {
            Complex64::new(pencil.a()[i], 0.0)
        } else if j == i + 1 {
            pencil.b()[i]
        } else if i == j + 1 {
            pencil.b()[j].conj()
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let reduced = &linv * h * linv.adjoint();
    let eig = reduced.symmetric_eigen();
    let back = linv.adjoint() * eig.eigenvectors;
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    Ok(DenseEigen {
        values: order.iter().map(|&i| eig.eigenvalues[i]).collect(),
        vectors: order
            .iter()
            .map(|&i| back.column(i).iter().copied().collect())
            .collect(),
    })
}

/// `det(zJ - H)` by dense elimination.
pub fn dense_determinant(pencil: &Pencil, z: Complex64) -> Result<Complex64> {
    Ok(Lu::factor(&pencil_matrix(pencil, z))?.determinant())
}

/// Dense inverse of `zJ - H`.
pub fn dense_resolvent(pencil: &Pencil, z: Complex64) -> Result<DenseMatrix> {
    Lu::factor(&pencil_matrix(pencil, z))?.inverse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum EigenvaluePick {
    /// Smallest and largest real eigenvalue.
    #[default]
    Extreme,
    /// Two distinct real eigenvalues chosen at random.
    RandomPair,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    /// Lower bound on `|Im(b_j / d_j)|` for `j >= k`.
    pub min_im_ratio: f64,
    /// Make `J` diagonally dominant, hence positive definite, so the whole
    /// spectrum is real.
    pub ensure_pd_j: bool,
    pub eigenvalue_pick: EigenvaluePick,
    /// Draw `b_j` purely imaginary for `j >= k`.
    pub imaginary_tail: bool,
}

impl GeneratorConfig {
    pub fn new(n: usize, k: usize, seed: u64) -> Self {
        Self {
            n,
            k,
            seed,
            min_im_ratio: 0.1,
            ensure_pd_j: true,
            eigenvalue_pick: EigenvaluePick::Extreme,
            imaginary_tail: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.k < 1 || self.k > self.n - 1 {
            return Err(Error::invalid(
                "generator config",
                format!("need n >= 2 and 1 <= k <= n-1, got n = {}, k = {}", self.n, self.k),
            ));
        }
        if !self.min_im_ratio.is_finite() || self.min_im_ratio <= 0.0 {
            return Err(Error::invalid("generator config", "min_im_ratio must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedInstance {
    pub truth: Pencil,
    pub instance: GiepInstance,
    /// Sub-seed (stream) that produced the accepted draw.
    pub attempt: u64,
}

fn draw_truth(config: &GeneratorConfig, rng: &mut ChaCha8Rng) -> Result<Pencil> {
    let n = config.n;
    let sign = |rng: &mut ChaCha8Rng| if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let d: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..2.0) * sign(rng)).collect();
    let c: Vec<f64> = (0..=n)
        .map(|i| {
            if config.ensure_pd_j {
                let left = if i > 0 { d[i - 1].abs() } else { 0.0 };
                let right = if i < n { d[i].abs() } else { 0.0 };
                left + right + rng.random_range(0.5..1.5)
            } else {
                rng.random_range(0.5..2.0) * sign(rng)
            }
        })
        .collect();
    let a: Vec<f64> = (0..=n).map(|_| rng.random_range(-2.0..2.0)).collect();
    let lo = config.min_im_ratio;
    let b: Vec<Complex64> = (0..n)
        .map(|j| {
            let mut x = rng.random_range(-1.0..1.0);
            let y = rng.random_range(lo..lo + 1.0) * sign(rng);
            if config.imaginary_tail && j >= config.k {
                x = 0.0;
            }
            d[j] * Complex64::new(x, y)
        })
        .collect();
    Pencil::from_parts(c, d, a, b)
}

/// Real eigenvalues of a pencil (imaginary part below `1e-8 (1 + |z|)`).
pub fn real_eigenvalues(pencil: &Pencil) -> Result<Vec<f64>> {
    Ok(pencil_eigenvalues(pencil)?
        .into_iter()
        .filter(|z| z.im.abs() <= 1e-8 * (1.0 + z.norm()))
        .map(|z| z.re)
        .collect())
}

/// Smallest and largest real eigenvalue.
pub fn extreme_pair(pencil: &Pencil) -> Result<(f64, f64)> {
    let real = real_eigenvalues(pencil)?;
    if real.len() < 2 {
        return Err(Error::invalid("pencil", "fewer than two real eigenvalues"));
    }
    Ok((real[0], real[real.len() - 1]))
}

/// GIEP data read off a known pencil at eigenvalues `lambda`, `mu`.
pub fn instance_from_truth(truth: &Pencil, k: usize, lambda: f64, mu: f64) -> Result<GiepInstance> {
    let n = truth.n();
    if k < 1 || k + 1 > n {
        return Err(Error::invalid("k", format!("need 1 <= k <= n-1, got {k}")));
    }
    let tail = |z: f64| -> Result<Vec<Complex64>> {
        let x = recurrence::eigenvector_components(truth, Complex64::new(z, 0.0), Side::Right)?;
        Ok(x[k..].to_vec())
    };
    Ok(GiepInstance {
        j: truth.j().clone(),
        head_a: truth.a()[..=k].to_vec(),
        head_b: truth.b()[..k].to_vec(),
        lambda,
        mu,
        tail_p: tail(lambda)?,
        tail_s: tail(mu)?,
        k,
        poles: Some((k..n).map(|j| truth.pole(j)).collect()),
    })
}

/// Reason a drawn instance is rejected, if any.
fn rejection(truth: &Pencil, instance: &GiepInstance) -> Option<String> {
    let k = instance.k;
    for z in [instance.lambda, instance.mu] {
        let zc = Complex64::new(z, 0.0);
        for m in k..=truth.n() {
            let value = recurrence::eval_p(truth, m, zc).ok()?;
            let scale = recurrence::poly_p(truth, m).ok()?.magnitude_at(zc);
            if value.norm() < 1e-6 * (1.0 + scale) {
                return Some(format!(
                    "eigenvalue {z} too close to the spectrum of the leading pencil of order {m}"
                ));
            }
        }
    }
    for tail in [&instance.tail_p, &instance.tail_s] {
        let largest = tail.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if tail.iter().any(|v| v.norm().is_nan() || v.norm() < 1e-8 * largest) {
            return Some("eigenvector tail has a near-vanishing component".into());
        }
    }
    for j in k..truth.n() {
        let (p, s) = (&instance.tail_p, &instance.tail_s);
        let (i, i1) = (j - k, j - k + 1);
        let delta = crate::giep::delta_j(
            p[i].conj(),
            p[i1].conj(),
            p[i],
            p[i1],
            s[i].conj(),
            s[i1].conj(),
            s[i],
            s[i1],
        );
        let scale = p[i].norm() * p[i1].norm() * s[i].norm() * s[i1].norm();
        if delta.norm().is_nan() || delta.norm() < 1e-8 * scale {
            return Some(format!("Delta_{j} too small relative to its scale"));
        }
    }
    None
}

/// Draw a truth pencil and the matching GIEP instance.
///
/// Attempt `t` uses stream `t` of a ChaCha8 generator seeded with
/// `config.seed`, so every rejection is reproducible.
pub fn generate_instance(config: &GeneratorConfig) -> Result<GeneratedInstance> {
    config.validate()?;
    let mut last = String::from("no attempt made");
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(attempt);
        let truth = draw_truth(config, &mut rng)?;
        let real = match real_eigenvalues(&truth) {
            Ok(r) => r,
            Err(e) => {
                last = e.to_string();
                continue;
            }
        };
        if real.len() < 2 {
            last = "fewer than two real eigenvalues".into();
            continue;
        }
        let (lambda, mu) = match config.eigenvalue_pick {
            EigenvaluePick::Extreme => (real[0], real[real.len() - 1]),
            EigenvaluePick::RandomPair => {
                let i = rng.random_range(0..real.len());
                let mut j = rng.random_range(0..real.len() - 1);
                if j >= i {
                    j += 1;
                }
                (real[i], real[j])
            }
        };
        if (lambda - mu).abs() <= 1e-8 * (1.0 + lambda.abs().max(mu.abs())) {
            last = "eigenvalue pair not distinct".into();
            continue;
        }
        let instance = match instance_from_truth(&truth, config.k, lambda, mu) {
            Ok(i) => i,
            Err(e) => {
                last = e.to_string();
                continue;
            }
        };
        match rejection(&truth, &instance) {
            None => {
                return Ok(GeneratedInstance {
                    truth,
                    instance,
                    attempt,
                })
            }
            Some(reason) => last = reason,
        }
    }
    Err(Error::GenerationFailed {
        attempts: MAX_ATTEMPTS as usize,
        reason: last,
    })
}

/// Resolvent point for the m-function route.
///
/// Candidates are midpoints between consecutive eigenvalues (shifted by
/// `0, 0.05i, 0.2i, 0.5i`) and points one unit outside the spectrum; the one
/// with the least cancellation in the trailing m-differences wins.
pub fn select_resolvent_point(pencil: &Pencil, k: usize) -> Result<Complex64> {
    let mut ev: Vec<f64> = pencil_eigenvalues(pencil)?.iter().map(|z| z.re).collect();
    ev.sort_by(f64::total_cmp);
    let mut candidates = Vec::new();
    for pair in ev.windows(2) {
        let mid = 0.5 * (pair[0] + pair[1]);
        for y in [0.0, 0.05, 0.2, 0.5] {
            candidates.push(Complex64::new(mid, y));
        }
    }
    candidates.push(Complex64::new(ev[0] - 1.0, 0.0));
    candidates.push(Complex64::new(ev[ev.len() - 1] + 1.0, 0.0));
    candidates
        .into_iter()
        .filter_map(|w| {
            let table = MFunctionTable::new(pencil, w).ok()?;
            let cost = table.cancellation(k);
            cost.is_finite().then_some((w, cost))
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(w, _)| w)
        .ok_or_else(|| Error::invalid("pencil", "no admissible resolvent point"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pipeline {
    Eigenpair,
    MFunction,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryError {
    pub index: usize,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct EntryErrors {
    pub b: Vec<EntryError>,
    pub a: Vec<EntryError>,
}

impl EntryErrors {
    pub fn max(&self) -> f64 {
        self.b.iter().chain(&self.a).map(|e| e.error).fold(0.0, f64::max)
    }

    /// `("b" | "a", index)` of the largest error.
    pub fn worst(&self) -> Option<(&'static str, usize)> {
        let b = self.b.iter().map(|e| ("b", e));
        let a = self.a.iter().map(|e| ("a", e));
        b.chain(a)
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(name, e)| (name, e.index))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub pipeline: Pipeline,
    /// `|x - t| / max(1, |t|)` per recovered entry.
    pub entry_errors: EntryErrors,
    pub max_entry_error: f64,
    pub residual_lambda: Option<f64>,
    pub residual_mu: Option<f64>,
    pub delta_magnitudes: Vec<f64>,
    pub min_delta: Option<f64>,
}

fn entry_error(x: Complex64, t: Complex64) -> f64 {
    (x - t).norm() / t.norm().max(1.0)
}

fn compare(
    truth: &Pencil,
    b: impl Iterator<Item = (usize, Complex64)>,
    a: impl Iterator<Item = (usize, f64)>,
) -> EntryErrors {
    EntryErrors {
        b: b.map(|(index, v)| EntryError {
            index,
            error: entry_error(v, truth.b()[index]),
        })
        .collect(),
        a: a.map(|(index, v)| EntryError {
            index,
            error: entry_error(Complex64::new(v, 0.0), Complex64::new(truth.a()[index], 0.0)),
        })
        .collect(),
    }
}

/// Compare an eigenpair-route reconstruction with the truth. Residuals are
/// recomputed from the assembled eigenvectors.
pub fn verify(truth: &Pencil, result: &ReconstructionResult) -> Result<VerificationReport> {
    let n = truth.n();
    if result.pencil.n() != n {
        return Err(Error::ShapeMismatch(format!(
            "result has order {}, truth has order {}",
            result.pencil.n(),
            n
        )));
    }
    let k = result.k;
    let errors = compare(
        truth,
        (k..n).map(|j| (j, result.pencil.b()[j])),
        (k + 1..=n).map(|i| (i, result.pencil.a()[i])),
    );
    let residual_lambda = crate::giep::eigen_residual(&result.pencil, result.lambda, &result.eigvec_lambda)?;
    let residual_mu = crate::giep::eigen_residual(&result.pencil, result.mu, &result.eigvec_mu)?;
    let delta_magnitudes: Vec<f64> = result.b_entries.iter().map(|e| e.delta.norm()).collect();
    let max_entry_error = errors.max();
    let passed = max_entry_error <= ENTRY_TOL && residual_lambda <= RESIDUAL_TOL && residual_mu <= RESIDUAL_TOL;
    Ok(VerificationReport {
        passed,
        pipeline: Pipeline::Eigenpair,
        max_entry_error,
        entry_errors: errors,
        residual_lambda: Some(residual_lambda),
        residual_mu: Some(residual_mu),
        min_delta: delta_magnitudes.iter().copied().reduce(f64::min),
        delta_magnitudes,
    })
}

/// Compare m-function route entries with the truth.
pub fn verify_m_route(truth: &Pencil, entries: &MRouteEntries) -> Result<VerificationReport> {
    let n = truth.n();
    let k = entries.k;
    if k >= n || entries.b.len() != n - k - 1 || entries.a.len() != n - k {
        return Err(Error::ShapeMismatch("m-route entries do not fit the truth".into()));
    }
    let errors = compare(
        truth,
        entries.b.iter().enumerate().map(|(i, &v)| (k + 1 + i, v)),
        entries.a.iter().enumerate().map(|(i, &v)| (k + 1 + i, v)),
    );
    let max_entry_error = errors.max();
    Ok(VerificationReport {
        passed: max_entry_error <= ENTRY_TOL,
        pipeline: Pipeline::MFunction,
        max_entry_error,
        entry_errors: errors,
        residual_lambda: None,
        residual_mu: None,
        delta_magnitudes: Vec::new(),
        min_delta: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn linear_root() {
        let p = Pencil::from_parts(vec![2.0], vec![], vec![3.0], vec![]).unwrap();
        let roots = pencil_eigenvalues(&p).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 1.5).norm() < 1e-15);
    }

    #[test]
    fn quadratic_by_hand() {
        // P_2 = z^2 - (0.5 z - i)(0.5 z + i) = 0.75 z^2 - 1
        let p = Pencil::from_parts(vec![1.0, 1.0], vec![0.5], vec![0.0, 0.0], vec![c(0.0, 1.0)]).unwrap();
        let roots = pencil_eigenvalues(&p).unwrap();
        let r = (1.0f64 / 0.75).sqrt();
        assert!((roots[0] - c(-r, 0.0)).norm() < 1e-10);
        assert!((roots[1] - c(r, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn degree_drop_is_reported() {
        let p = Pencil::from_parts(vec![1.0, 1.0], vec![1.0], vec![0.0, 0.0], vec![c(0.0, 1.0)]).unwrap();
        assert_eq!(pencil_eigenvalues(&p).unwrap_err(), Error::DegreeDrop { m: 2 });
    }

    #[test]
    fn roots_agree_with_dense_hermitian_solver() {
        let g = generate_instance(&GeneratorConfig::new(6, 3, 11)).unwrap();
        let roots = pencil_eigenvalues(&g.truth).unwrap();
        let dense = dense_hermitian_eigen(&g.truth).unwrap();
        assert_eq!(roots.len(), 7);
        for (z, v) in roots.iter().zip(&dense.values) {
            assert!(z.im.abs() < 1e-8);
            assert!((z.re - v).abs() < 1e-9 * (1.0 + v.abs()));
            let det = recurrence::eval_p(&g.truth, 7, *z).unwrap();
            let norm = recurrence::poly_p(&g.truth, 7)
                .unwrap()
                .coeffs()
                .iter()
                .map(|x| x * x)
                .sum::<f64>()
                .sqrt();
            assert!(det.norm() <= 1e-8 * norm);
        }
        for (v, x) in dense.values.iter().zip(&dense.vectors) {
            let r = g.truth.apply(c(*v, 0.0), x).unwrap();
            assert!(r.iter().all(|e| e.norm() < 1e-10));
        }
    }

    #[test]
    fn dense_resolvent_two_sided() {
        let p = Pencil::from_parts(
            vec![3.0, 2.0, 2.5],
            vec![0.7, -0.4],
            vec![0.1, 0.5, -1.0],
            vec![c(0.3, 0.2), c(0.0, -0.6)],
        )
        .unwrap();
        let w = c(0.4, 0.3);
        let x = dense_resolvent(&p, w).unwrap();
        let a = pencil_matrix(&p, w);
        let id = DenseMatrix::identity(3);
        assert!(a.matmul(&x).unwrap().max_abs_diff(&id) < 1e-12);
        assert!(x.matmul(&a).unwrap().max_abs_diff(&id) < 1e-12);
        let scalar = Pencil::from_parts(vec![2.0], vec![], vec![1.0], vec![]).unwrap();
        assert!((dense_resolvent(&scalar, c(3.0, 0.0)).unwrap()[(0, 0)] - 0.2).norm() < 1e-15);
    }

    #[test]
    fn generator_is_deterministic_and_valid() {
        let cfg = GeneratorConfig::new(2, 1, 1);
        let a = generate_instance(&cfg).unwrap();
        let b = generate_instance(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(j_is_positive_definite(&a.truth));
        for j in 1..2 {
            assert!((a.truth.pole(j).im).abs() >= 0.1 - 1e-15);
        }
        let other = generate_instance(&GeneratorConfig::new(2, 1, 2)).unwrap();
        assert_ne!(a.truth, other.truth);
    }

    #[test]
    fn generator_rejects_bad_config() {
        let mut cfg = GeneratorConfig::new(4, 2, 1);
        cfg.min_im_ratio = 0.0;
        assert!(matches!(generate_instance(&cfg), Err(Error::InvalidInput { .. })));
        assert!(GeneratorConfig::new(4, 4, 1).validate().is_err());
        assert!(GeneratorConfig::new(4, 0, 1).validate().is_err());
    }

    #[test]
    fn random_pair_strategy_gives_distinct_eigenvalues() {
        let mut cfg = GeneratorConfig::new(5, 2, 3);
        cfg.eigenvalue_pick = EigenvaluePick::RandomPair;
        let g = generate_instance(&cfg).unwrap();
        assert_ne!(g.instance.lambda, g.instance.mu);
    }

    #[test]
    fn verification_flags_injected_fault() {
        let g = generate_instance(&GeneratorConfig::new(4, 2, 5)).unwrap();
        let result = crate::giep::solve(&g.instance).unwrap();
        let report = verify(&g.truth, &result).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.max_entry_error < 1e-10);
        let mut b = g.truth.b().to_vec();
        b[3] += 1e-3;
        let wrong = Pencil::from_parts(g.truth.c().to_vec(), g.truth.d().to_vec(), g.truth.a().to_vec(), b).unwrap();
        let report = verify(&wrong, &result).unwrap();
        assert!(!report.passed);
        assert_eq!(report.entry_errors.worst(), Some(("b", 3)));
    }

    #[test]
    fn resolvent_point_is_admissible() {
        let g = generate_instance(&GeneratorConfig::new(5, 2, 9)).unwrap();
        let w = select_resolvent_point(&g.truth, 2).unwrap();
        assert!(MFunctionTable::new(&g.truth, w).is_ok());
    }
}
