//! Reconstruction of the trailing part of `H` from two eigenvalues and the
//! tails of their eigenvectors.
//!
//! Given `J`, the leading block `H[0..=k, 0..=k]`, eigenvalues `lambda`,
//! `mu` and the tails `p_k..p_n`, `s_k..s_n` of the corresponding right
//! eigenvectors, every `b_j` (`j >= k`) solves a 2x2 linear system in the
//! unknowns `(b_j, conj b_j)`:
//!
//! ```text
//! A u - B v = lambda d_j (A - B)      A = conj(p_j) p_{j+1},  B = conj(p_{j+1}) p_j
//! C u - D v = mu d_j (C - D)          C = conj(s_j) s_{j+1},  D = conj(s_{j+1}) s_j
//! ```
//!
//! whose determinant `Delta_j = BC - AD` is nonzero exactly when the pole
//! `b_j / d_j` is non-real. The diagonal then follows row by row from the
//! `lambda` eigen-equation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pencil::{Pencil, SymmetricTridiagonal};
use crate::recurrence::{self, Side};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `|Delta_j|` below this times `(1 + |p_j p_{j+1} s_j s_{j+1}|)` is singular.
pub const DELTA_TOL: f64 = 1e-12;
/// Allowed gap between the conjugate unknown and `conj(b_j)`, relative to
/// `1 + |b_j|`.
pub const HERMITIAN_TOL: f64 = 1e-8;
/// Allowed imaginary part of a recovered diagonal entry (relative).
pub const REALITY_TOL: f64 = 1e-8;
/// Relative agreement demanded by the wall-pencil ratio test.
pub const RATIO_TOL: f64 = 1e-8;

/// Input of the reconstruction problem.
#[derive(Debug, Clone, PartialEq)]
pub struct GiepInstance {
    pub j: SymmetricTridiagonal,
    /// `a_0..a_k`.
    pub head_a: Vec<f64>,
    /// `b_0..b_{k-1}`.
    pub head_b: Vec<Complex64>,
    pub lambda: f64,
    pub mu: f64,
    /// `p_k..p_n` of the right eigenvector for `lambda`.
    pub tail_p: Vec<Complex64>,
    /// `s_k..s_n` of the right eigenvector for `mu`.
    pub tail_s: Vec<Complex64>,
    pub k: usize,
    /// Optional poles `b_j / d_j` for `j = k..n-1`; only used for warnings.
    pub poles: Option<Vec<Complex64>>,
}

impl GiepInstance {
    pub fn n(&self) -> usize {
        self.j.order() - 1
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n < 2 {
            return Err(Error::invalid("order", format!("need n >= 2, got n = {n}")));
        }
        if self.k < 1 || self.k > n - 1 {
            return Err(Error::invalid("k", format!("need 1 <= k <= {}, got {}", n - 1, self.k)));
        }
        let k = self.k;
        if self.head_a.len() != k + 1 {
            return Err(Error::OrderMismatch {
                expected: k + 1,
                found: self.head_a.len(),
            });
        }
        if self.head_b.len() != k {
            return Err(Error::OrderMismatch {
                expected: k,
                found: self.head_b.len(),
            });
        }
        for tail in [&self.tail_p, &self.tail_s] {
            if tail.len() != n - k + 1 {
                return Err(Error::OrderMismatch {
                    expected: n - k + 1,
                    found: tail.len(),
                });
            }
        }
        if let Some(poles) = &self.poles {
            if poles.len() != n - k {
                return Err(Error::OrderMismatch {
                    expected: n - k,
                    found: poles.len(),
                });
            }
        }
        if !self.lambda.is_finite() || !self.mu.is_finite() {
            return Err(Error::invalid("eigenvalues", "lambda and mu must be finite"));
        }
        if self.lambda == self.mu {
            return Err(Error::invalid("eigenvalues", "lambda and mu must differ"));
        }
        let finite = self.head_a.iter().all(|v| v.is_finite())
            && self
                .head_b
                .iter()
                .chain(&self.tail_p)
                .chain(&self.tail_s)
                .all(|v| v.is_finite());
        if !finite {
            return Err(Error::invalid("instance", "non-finite entry"));
        }
        Ok(())
    }

    /// The given leading pencil on indices `0..=k`.
    pub fn head_pencil(&self) -> Result<Pencil> {
        let j = self.j.leading(self.k + 1)?;
        Pencil::from_parts(j.c().to_vec(), j.d().to_vec(), self.head_a.clone(), self.head_b.clone())
    }

    /// Indices `j` whose supplied pole is real, where a singular system is
    /// to be expected.
    pub fn real_pole_indices(&self) -> Vec<usize> {
        match &self.poles {
            Some(poles) => poles
                .iter()
                .enumerate()
                .filter(|(_, a)| a.im.abs() <= 1e-12 * (1.0 + a.norm()))
                .map(|(i, _)| self.k + i)
                .collect(),
            None => Vec::new(),
        }
    }

    fn p(&self, i: usize) -> Complex64 {
        self.tail_p[i - self.k]
    }

    fn s(&self, i: usize) -> Complex64 {
        self.tail_s[i - self.k]
    }

    fn index_data(&self, j: usize) -> IndexData {
        IndexData::new([self.p(j), self.p(j + 1)], [self.s(j), self.s(j + 1)])
    }
}

/// The four products entering the 2x2 system at one index.
#[derive(Debug, Clone, Copy)]
struct IndexData {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    delta: Complex64,
    scale: f64,
}

impl IndexData {
    /// Left components are the conjugates of the right ones (real
    /// eigenvalues).
    fn new(p: [Complex64; 2], s: [Complex64; 2]) -> Self {
        let delta = delta_j(
            p[0].conj(),
            p[1].conj(),
            p[0],
            p[1],
            s[0].conj(),
            s[1].conj(),
            s[0],
            s[1],
        );
        Self {
            a: p[0].conj() * p[1],
            b: p[1].conj() * p[0],
            c: s[0].conj() * s[1],
            d: s[1].conj() * s[0],
            delta,
            scale: p[0].norm() * p[1].norm() * s[0].norm() * s[1].norm(),
        }
    }

    fn check(&self, j: usize) -> Result<()> {
        let magnitude = self.delta.norm();
        if magnitude.is_nan() || magnitude < DELTA_TOL * (1.0 + self.scale) {
            return Err(Error::SingularDelta { j, magnitude });
        }
        Ok(())
    }
}

/// Determinant of the 2x2 system at index `j`:
///
/// ```text
/// Delta_j = pL_{j+1} pR_j (sL_j sR_{j+1} - sR_j sL_{j+1})
///         - sL_{j+1} sR_j (pL_j pR_{j+1} - pR_j pL_{j+1})
/// ```
#[allow(clippy::too_many_arguments)]
pub fn delta_j(
    pl_j: Complex64,
    pl_j1: Complex64,
    pr_j: Complex64,
    pr_j1: Complex64,
    sl_j: Complex64,
    sl_j1: Complex64,
    sr_j: Complex64,
    sr_j1: Complex64,
) -> Complex64 {
    pl_j1 * pr_j * (sl_j * sr_j1 - sr_j * sl_j1) - sl_j1 * sr_j * (pl_j * pr_j1 - pr_j * pl_j1)
}

/// One recovered off-diagonal entry with its diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BEntry {
    pub j: usize,
    /// `b_j` from the linear solve.
    pub value: Complex64,
    /// The second unknown of the solve, which should equal `conj(b_j)`.
    pub conj_unknown: Complex64,
    pub delta: Complex64,
    /// Closed-form expressions for `b_j` and `conj(b_j)`.
    pub closed_form: Complex64,
    pub closed_form_conj: Complex64,
}

impl BEntry {
    /// `|solve - closed form| / max(1, |b_j|)` for `b_j` and its conjugate.
    pub fn closed_form_gaps(&self) -> (f64, f64) {
        let scale = self.value.norm().max(1.0);
        (
            (self.value - self.closed_form).norm() / scale,
            (self.conj_unknown - self.closed_form_conj).norm() / scale,
        )
    }
}

fn solve_index(j: usize, data: &IndexData, d: f64, lambda: f64, mu: f64) -> Result<BEntry> {
    data.check(j)?;
    let IndexData {
        a, b, c, d: dd, delta, ..
    } = *data;
    let u = d * (-lambda * dd * (a - b) + mu * b * (c - dd)) / delta;
    let v = d * (mu * a * (c - dd) - lambda * c * (a - b)) / delta;
    let gap = (v - u.conj()).norm();
    if gap > HERMITIAN_TOL * (1.0 + u.norm()) {
        return Err(Error::HermitianInconsistent { j, gap });
    }
    Ok(BEntry {
        j,
        value: u,
        conj_unknown: v,
        delta,
        closed_form: b_closed_form(data, d, lambda, mu),
        closed_form_conj: b_conj_closed_form(data, d, lambda, mu),
    })
}

/// `b = (lambda + mu) d + (d / Delta) [mu D (A - B) - lambda B (C - D)]`.
fn b_closed_form(data: &IndexData, d: f64, lambda: f64, mu: f64) -> Complex64 {
    let IndexData {
        a, b, c, d: dd, delta, ..
    } = *data;
    (lambda + mu) * d + d / delta * (mu * dd * (a - b) - lambda * b * (c - dd))
}

/// `conj b = (lambda + mu) d + (d / Delta) [mu C (A - B) - lambda A (C - D)]`.
fn b_conj_closed_form(data: &IndexData, d: f64, lambda: f64, mu: f64) -> Complex64 {
    let IndexData {
        a, b, c, d: dd, delta, ..
    } = *data;
    (lambda + mu) * d + d / delta * (mu * c * (a - b) - lambda * a * (c - dd))
}

/// `b_k..b_{n-1}` from the tails.
pub fn reconstruct_b(instance: &GiepInstance) -> Result<Vec<BEntry>> {
    instance.validate()?;
    let d = instance.j.d();
    (instance.k..instance.n())
        .map(|j| solve_index(j, &instance.index_data(j), d[j], instance.lambda, instance.mu))
        .collect()
}

fn component(values: &[Complex64], offset: usize, i: usize) -> Result<Complex64> {
    let v = values[i - offset];
    let largest = values.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if v.norm().is_nan() || v.norm() <= 1e-14 * largest {
        return Err(Error::VanishingComponent { i });
    }
    Ok(v)
}

/// `a_{k+1}..a_n` from the `lambda` eigen-equation, given the full `b`.
///
/// ```text
/// a_i = lambda c_i + [(lambda d_{i-1} - conj b_{i-1}) p_{i-1} + (lambda d_i - b_i) p_{i+1}] / p_i
/// ```
///
/// with the second term absent at `i = n`.
pub fn reconstruct_a(instance: &GiepInstance, b_full: &[Complex64]) -> Result<Vec<f64>> {
    instance.validate()?;
    let (n, k, lambda) = (instance.n(), instance.k, instance.lambda);
    if b_full.len() != n {
        return Err(Error::OrderMismatch {
            expected: n,
            found: b_full.len(),
        });
    }
    let (c, d) = (instance.j.c(), instance.j.d());
    (k + 1..=n)
        .map(|i| {
            let p_i = component(&instance.tail_p, k, i)?;
            let mut num = (lambda * d[i - 1] - b_full[i - 1].conj()) * instance.p(i - 1);
            if i < n {
                num += (lambda * d[i] - b_full[i]) * instance.p(i + 1);
            }
            let value = lambda * c[i] + num / p_i;
            if value.im.abs() > REALITY_TOL * value.re.abs().max(1.0) {
                return Err(Error::NonRealDiagonal { i, imag: value.im });
            }
            Ok(value.re)
        })
        .collect()
}

/// Head components `p_0..p_{k-1}` of the right eigenvector at `z` from
/// `b_k` and `p_{k+1}`:
///
/// ```text
/// p_m = (b_k - z d_k) prod_{j=m}^{k-1} (b_j - z d_j) P_m(z) / P_{k+1}(z) p_{k+1}
/// ```
///
/// where `P` are the minors of the given leading pencil.
pub fn head_components(instance: &GiepInstance, b_k: Complex64, z: f64, p_k1: Complex64) -> Result<Vec<Complex64>> {
    let head = instance.head_pencil()?;
    let k = instance.k;
    let zc = Complex64::new(z, 0.0);
    if recurrence::p_vanishes_at(&head, k + 1, zc)? {
        return Err(Error::SpectrumCollision {
            point: zc,
            order: k + 1,
        });
    }
    let minors = recurrence::p_values(&head, zc);
    let d = instance.j.d();
    let mut out = vec![ZERO; k];
    let mut factor = (b_k - z * d[k]) * p_k1 / minors[k + 1];
    for m in (0..k).rev() {
        factor *= instance.head_b[m] - z * d[m];
        out[m] = factor * minors[m];
    }
    Ok(out)
}

/// Real/imaginary split of `b_j` and the wall-pencil ratio test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub j: usize,
    pub x: f64,
    pub y: f64,
    /// Whether `lambda / mu = (A + B)(C - D) / ((C + D)(A - B))`, which is
    /// exactly the condition for `x` to vanish.
    pub wall_ratio_ok: bool,
}

/// `b_j = x + i y` with
///
/// ```text
/// x = d_j / (2 Delta) [mu (A + B)(C - D) - lambda (C + D)(A - B)]
/// y = (lambda - mu) d_j (A - B)(C - D) / (2 i Delta)
/// ```
///
/// `p` and `s` are `(p_j, p_{j+1})` and `(s_j, s_{j+1})`.
pub fn classify_imaginary(
    j: usize,
    p: [Complex64; 2],
    s: [Complex64; 2],
    d_j: f64,
    lambda: f64,
    mu: f64,
) -> Result<Classification> {
    let data = IndexData::new(p, s);
    data.check(j)?;
    let IndexData { a, b, c, d, delta, .. } = data;
    let lhs = mu * (a + b) * (c - d);
    let rhs = lambda * (c + d) * (a - b);
    let x = d_j / (2.0 * delta) * (lhs - rhs);
    let y = (lambda - mu) * d_j * (a - b) * (c - d) / (Complex64::new(0.0, 2.0) * delta);
    Ok(Classification {
        j,
        x: x.re,
        y: y.re,
        wall_ratio_ok: (lhs - rhs).norm() <= RATIO_TOL * (lhs.norm() + rhs.norm()),
    })
}

fn check_point(pencil: &Pencil, order: usize, z: f64) -> Result<()> {
    let zc = Complex64::new(z, 0.0);
    if order >= 1 && recurrence::p_vanishes_at(pencil, order, zc)? {
        return Err(Error::SpectrumCollision { point: zc, order });
    }
    Ok(())
}

/// Residuals `|lhs - rhs| / (1 + |rhs|)` of the two bilinear identities
/// linking eigenvectors at `lambda` and `mu` across the split `k`:
///
/// ```text
/// (lambda - mu) pL[k+1..=n] J sR[k+1..=n] = (b_k - lambda d_k) pL_k s_{k+1} - (conj b_k - mu d_k) pL_{k+1} s_k
/// (lambda - mu) sL[0..=k]   J pR[0..=k]   = (b_k - lambda d_k) sL_k p_{k+1} - (conj b_k - mu d_k) sL_{k+1} p_k
/// ```
///
/// The first needs both points to be eigenvalues of the full pencil; the
/// second holds for any pair.
pub fn trace_identity_residuals(pencil: &Pencil, k: usize, lambda: f64, mu: f64) -> Result<(f64, f64)> {
    let n = pencil.n();
    if k >= n {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: n.saturating_sub(1),
        });
    }
    if lambda == mu {
        return Err(Error::invalid("eigenvalues", "lambda and mu must differ"));
    }
    for z in [lambda, mu] {
        check_point(pencil, k, z)?;
        check_point(pencil, k + 1, z)?;
    }
    let (lz, mz) = (Complex64::new(lambda, 0.0), Complex64::new(mu, 0.0));
    let p = recurrence::eigenvector_components(pencil, lz, Side::Right)?;
    let pl = recurrence::eigenvector_components(pencil, lz, Side::Left)?;
    let s = recurrence::eigenvector_components(pencil, mz, Side::Right)?;
    let sl = recurrence::eigenvector_components(pencil, mz, Side::Left)?;
    let (c, d) = (pencil.c(), pencil.d());
    let bk = pencil.b()[k];

    let block_form = |left: &[Complex64], right: &[Complex64], lo: usize, hi: usize| {
        (lo..=hi)
            .map(|i| {
                let mut js = c[i] * right[i];
                if i > lo {
                    js += d[i - 1] * right[i - 1];
                }
                if i < hi {
                    js += d[i] * right[i + 1];
                }
                left[i] * js
            })
            .sum::<Complex64>()
    };
    let residual = |lhs: Complex64, rhs: Complex64| (lhs - rhs).norm() / (1.0 + rhs.norm());

    let lhs1 = (lambda - mu) * block_form(&pl, &s, k + 1, n);
    let rhs1 = (bk - lambda * d[k]) * pl[k] * s[k + 1] - (bk.conj() - mu * d[k]) * pl[k + 1] * s[k];
    let lhs2 = (lambda - mu) * block_form(&sl, &p, 0, k);
    let rhs2 = (bk - lambda * d[k]) * sl[k] * p[k + 1] - (bk.conj() - mu * d[k]) * sl[k + 1] * p[k];
    Ok((residual(lhs1, rhs1), residual(lhs2, rhs2)))
}

/// The quadratic form `s* J[0..=k] s` of the leading components at a real
/// point `mu`, evaluated from boundary data alone:
///
/// ```text
/// (b_k - mu d_k) sL_k s'_{k+1} - (conj b_k - mu d_k) sL_{k+1} s'_k - d_k sL_k s_{k+1}
/// ```
///
/// where `'` is the derivative in the spectral parameter. This is the limit
/// `lambda -> mu` of the second identity in [`trace_identity_residuals`];
/// it is positive when `J[0..=k]` is positive definite. The imaginary part
/// of the result is rounding noise.
pub fn positivity_witness(pencil: &Pencil, k: usize, mu: f64) -> Result<Complex64> {
    let n = pencil.n();
    if k >= n {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: n.saturating_sub(1),
        });
    }
    let lead = pencil.leading(k + 2)?;
    let z = Complex64::new(mu, 0.0);
    let (s, ds) = recurrence::recurrence_components_with_derivative(&lead, z, Side::Right)?;
    let sl = recurrence::recurrence_components(&lead, z, Side::Left)?;
    let (d, bk) = (pencil.d()[k], pencil.b()[k]);
    Ok((bk - mu * d) * sl[k] * ds[k + 1] - (bk.conj() - mu * d) * sl[k + 1] * ds[k] - d * sl[k] * s[k + 1])
}

/// Output of [`solve`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionResult {
    pub pencil: Pencil,
    pub k: usize,
    pub lambda: f64,
    pub mu: f64,
    /// `p_0..p_{k-1}` at `lambda`.
    pub head_p: Vec<Complex64>,
    /// `s_0..s_{k-1}` at `mu`.
    pub head_s: Vec<Complex64>,
    pub eigvec_lambda: Vec<Complex64>,
    pub eigvec_mu: Vec<Complex64>,
    pub b_entries: Vec<BEntry>,
    /// `||(zJ - H) x|| / (||x|| max(1, max |zJ - H|))` for both eigenpairs.
    pub residual_lambda: f64,
    pub residual_mu: f64,
    pub classification: Vec<Classification>,
}

impl ReconstructionResult {
    pub fn deltas(&self) -> Vec<Complex64> {
        self.b_entries.iter().map(|e| e.delta).collect()
    }
}

/// Relative eigen-residual of `x` at `z`.
pub fn eigen_residual(pencil: &Pencil, z: f64, x: &[Complex64]) -> Result<f64> {
    let zc = Complex64::new(z, 0.0);
    let r = pencil.apply(zc, x)?;
    let norm = |v: &[Complex64]| v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    Ok(norm(&r) / (norm(x) * pencil.scale_at(zc).max(1.0)))
}

pub fn solve(instance: &GiepInstance) -> Result<ReconstructionResult> {
    instance.validate()?;
    let (k, n) = (instance.k, instance.n());
    let head = instance.head_pencil()?;
    for z in [instance.lambda, instance.mu] {
        check_point(&head, k, z)?;
        check_point(&head, k + 1, z)?;
    }

    let b_entries = reconstruct_b(instance)?;
    let mut b_full = instance.head_b.clone();
    b_full.extend(b_entries.iter().map(|e| e.value));
    let mut a_full = instance.head_a.clone();
    a_full.extend(reconstruct_a(instance, &b_full)?);
    let pencil = Pencil::from_parts(instance.j.c().to_vec(), instance.j.d().to_vec(), a_full, b_full)?;

    let b_k = pencil.b()[k];
    let head_p = head_components(instance, b_k, instance.lambda, instance.p(k + 1))?;
    let head_s = head_components(instance, b_k, instance.mu, instance.s(k + 1))?;
    let eigvec_lambda: Vec<_> = head_p.iter().chain(&instance.tail_p).copied().collect();
    let eigvec_mu: Vec<_> = head_s.iter().chain(&instance.tail_s).copied().collect();
    let residual_lambda = eigen_residual(&pencil, instance.lambda, &eigvec_lambda)?;
    let residual_mu = eigen_residual(&pencil, instance.mu, &eigvec_mu)?;

    let d = instance.j.d();
    let classification = (k..n)
        .map(|j| {
            classify_imaginary(
                j,
                [instance.p(j), instance.p(j + 1)],
                [instance.s(j), instance.s(j + 1)],
                d[j],
                instance.lambda,
                instance.mu,
            )
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ReconstructionResult {
        pencil,
        k,
        lambda: instance.lambda,
        mu: instance.mu,
        head_p,
        head_s,
        eigvec_lambda,
        eigvec_mu,
        b_entries,
        residual_lambda,
        residual_mu,
        classification,
    })
}
