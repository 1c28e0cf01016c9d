//! m-functions of the nested leading pencils, the closed-form resolvent,
//! its staircase factorization, the inverse of a trailing block, and the
//! recovery of trailing entries of `H` from m-function values.
//!
//! With `m(w, j) = Q_j(w) / P_j(w)` (and `m(w, 0) = 0`) and the recurrence
//! components `p^R`, `p^L` at `w`, the inverse of `wJ - H` is
//!
//! ```text
//! R_{ij} = p^R_i * (m(w, n+1) - m(w, max(i, j))) * p^L_j
//! ```

use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::pencil::{Pencil, SymmetricTridiagonal};
use crate::recurrence::{self, Side};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative threshold for a vanishing m-function difference.
pub const DIFFERENCE_TOL: f64 = 1e-12;
/// Largest imaginary part (relative) accepted on a recovered diagonal entry.
pub const REALITY_TOL: f64 = 1e-8;

/// `m(w, 0), ..., m(w, n+1)` for one resolvent point.
#[derive(Debug, Clone, PartialEq)]
pub struct MFunctionTable {
    pub omega: Complex64,
    pub values: Vec<Complex64>,
}

impl MFunctionTable {
    pub fn new(pencil: &Pencil, omega: Complex64) -> Result<Self> {
        let mut values = Vec::with_capacity(pencil.n() + 2);
        values.push(ZERO);
        for j in 1..=pencil.n() + 1 {
            values.push(recurrence::convergent_s(pencil, j, omega)?);
        }
        Ok(Self { omega, values })
    }

    /// Order `n` of the pencil the table was built for.
    pub fn n(&self) -> usize {
        self.values.len().saturating_sub(2)
    }

    /// `m(w, j+1) - m(w, j)`, checked against cancellation.
    pub fn difference(&self, j: usize) -> Result<Complex64> {
        let (lo, hi) = (self.values[j], self.values[j + 1]);
        let diff = hi - lo;
        if diff.norm() < DIFFERENCE_TOL * (1.0 + lo.norm() + hi.norm()) {
            return Err(Error::DegenerateDifference { j });
        }
        Ok(diff)
    }

    /// Worst relative cancellation `(|m_j| + |m_{j+1}|) / |m_{j+1} - m_j|`
    /// over `j = from..=n`; large values mean the trailing recovery loses
    /// digits at this point.
    pub fn cancellation(&self, from: usize) -> f64 {
        (from..self.values.len() - 1)
            .map(|j| {
                let (lo, hi) = (self.values[j], self.values[j + 1]);
                (lo.norm() + hi.norm()) / (hi - lo).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// `m(w, j+1) - m(w, j)` for `j = 0..=n`, without subtracting m-values.
///
/// By the Liouville-Ostrogradsky identity the difference equals
/// `prod_{i<j} v_i / (P_j P_{j+1}) = 1 / (r_j p^R_j p^L_j)` with
/// `r_j = P_{j+1} / P_j`; the subtraction would lose `|m| / |difference|`
/// in relative accuracy, which is large once the components grow.
pub fn m_differences(pencil: &Pencil, omega: Complex64, comps: &ComponentsAt) -> Result<Vec<Complex64>> {
    let table = MFunctionTable::new(pencil, omega)?;
    let mut out = Vec::with_capacity(pencil.n() + 1);
    let mut ratio = ZERO;
    for j in 0..=pencil.n() {
        ratio = if j == 0 {
            pencil.diag_at(0, omega)
        } else {
            let v = pencil.upper_at(j - 1, omega) * pencil.lower_at(j - 1, omega);
            pencil.diag_at(j, omega) - v / ratio
        };
        let diff = 1.0 / (ratio * comps.right[j] * comps.left[j]);
        let (lo, hi) = (table.values[j], table.values[j + 1]);
        if !diff.is_finite() || diff.norm() < DIFFERENCE_TOL * (1.0 + lo.norm() + hi.norm()) {
            return Err(Error::DegenerateDifference { j });
        }
        out.push(diff);
    }
    Ok(out)
}

/// `m(w, j) = Q_j(w) / P_j(w)` for `0 <= j <= n + 1`, with `m(w, 0) = 0`.
pub fn m_function(pencil: &Pencil, j: usize, omega: Complex64) -> Result<Complex64> {
    if j == 0 {
        return Ok(ZERO);
    }
    recurrence::convergent_s(pencil, j, omega)
}

/// Right and left recurrence components of a pencil at a resolvent point.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentsAt {
    pub omega: Complex64,
    pub right: Vec<Complex64>,
    pub left: Vec<Complex64>,
}

impl ComponentsAt {
    pub fn new(pencil: &Pencil, omega: Complex64) -> Result<Self> {
        Ok(Self {
            omega,
            right: recurrence::recurrence_components(pencil, omega, Side::Right)?,
            left: recurrence::recurrence_components(pencil, omega, Side::Left)?,
        })
    }
}

/// Inverse of `wJ - H` from m-functions and components.
pub fn resolvent_matrix(pencil: &Pencil, omega: Complex64) -> Result<DenseMatrix> {
    let comps = ComponentsAt::new(pencil, omega)?;
    let diffs = m_differences(pencil, omega, &comps)?;
    let n = pencil.n();
    // tails[i] = m(w, n+1) - m(w, i)
    let mut tails = vec![ZERO; n + 2];
    for i in (0..=n).rev() {
        tails[i] = tails[i + 1] + diffs[i];
    }
    Ok(DenseMatrix::from_fn(n + 1, n + 1, |i, j| {
        comps.right[i] * tails[i.max(j)] * comps.left[j]
    }))
}

/// `R = U diag(D) L` where `U` is the upper staircase of right components
/// (`U_{ik} = p^R_i` for `k >= i`), `L` the lower staircase of left components
/// (`L_{kj} = p^L_j` for `j <= k`) and `D_j = m(w, j+1) - m(w, j)`.
///
/// For real `w` the left components are the conjugates of the right ones,
/// so `L = U*` and `R = U D U*`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolventFactors {
    pub upper: DenseMatrix,
    pub diag: Vec<Complex64>,
    pub lower: DenseMatrix,
}

impl ResolventFactors {
    pub fn product(&self) -> DenseMatrix {
        let n = self.diag.len();
        let scaled = DenseMatrix::from_fn(n, n, |i, k| self.upper[(i, k)] * self.diag[k]);
        scaled.matmul(&self.lower).expect("factor shapes agree by construction")
    }
}

pub fn ldu_factors(pencil: &Pencil, omega: Complex64) -> Result<ResolventFactors> {
    let comps = ComponentsAt::new(pencil, omega)?;
    let n = pencil.n();
    let diag = m_differences(pencil, omega, &comps)?;
    let upper = DenseMatrix::from_fn(n + 1, n + 1, |i, k| if k >= i { comps.right[i] } else { ZERO });
    let lower = DenseMatrix::from_fn(n + 1, n + 1, |k, j| if j <= k { comps.left[j] } else { ZERO });
    Ok(ResolventFactors { upper, diag, lower })
}

fn nonvanishing(values: &[Complex64], i: usize) -> Result<Complex64> {
    let v = values[i];
    if v == ZERO || !v.is_finite() {
        return Err(Error::VanishingComponent { i });
    }
    Ok(v)
}

/// Tridiagonal inverse of the trailing block `R[k+1..=n, k+1..=n]` of the
/// resolvent. Entry `(r, s)` of the result corresponds to indices
/// `(k+1+r, k+1+s)`.
pub fn trailing_inverse(pencil: &Pencil, k: usize, omega: Complex64) -> Result<DenseMatrix> {
    let n = pencil.n();
    if k >= n {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: n.saturating_sub(1),
        });
    }
    let comps = ComponentsAt::new(pencil, omega)?;
    let diffs = m_differences(pencil, omega, &comps)?;
    trailing_inverse_from(&diffs, &comps, k)
}

/// `diffs[i] = m(w, i+1) - m(w, i)` for `i = 0..=n`.
fn trailing_inverse_from(diffs: &[Complex64], comps: &ComponentsAt, k: usize) -> Result<DenseMatrix> {
    let n = diffs.len() - 1;
    let size = n - k;
    let delta = &diffs[k + 1..];
    let mut out = DenseMatrix::zeros(size, size);
    for r in 0..size {
        let i = k + 1 + r;
        let pr = nonvanishing(&comps.right, i)?;
        let pl = nonvanishing(&comps.left, i)?;
        let mut diag = 1.0 / delta[r];
        if r > 0 {
            diag += 1.0 / delta[r - 1];
        }
        out[(r, r)] = diag / (pl * pr);
        if r + 1 < size {
            let pr_next = nonvanishing(&comps.right, i + 1)?;
            let pl_next = nonvanishing(&comps.left, i + 1)?;
            out[(r, r + 1)] = -1.0 / (delta[r] * pl * pr_next);
            out[(r + 1, r)] = -1.0 / (delta[r] * pl_next * pr);
        }
    }
    Ok(out)
}

/// Trailing entries of `H` recovered by [`reconstruct_from_m`].
#[derive(Debug, Clone, PartialEq)]
pub struct MRouteEntries {
    pub k: usize,
    /// `b_{k+1}, ..., b_{n-1}`.
    pub b: Vec<Complex64>,
    /// `a_{k+1}, ..., a_n`.
    pub a: Vec<f64>,
}

/// Recover `b_j` (`k < j < n`) and `a_j` (`k < j <= n`) from `J`, the
/// m-function table and the components at `w`, plus the known `b_k`.
///
/// The trailing block of `wJ - H` is the inverse of the trailing block of the
/// resolvent once the Schur correction from the leading block is removed:
///
/// ```text
/// b_j     = w d_j + 1 / (p^L_j (m_{j+1} - m_j) p^R_{j+1})
/// a_j     = w c_j - [Psi^{-1}]_{jj}
/// a_{k+1} = w c_{k+1} - [Psi^{-1}]_{k+1,k+1}
///           - (w d_k - b_k)(w d_k - conj b_k) p^L_k (m_{k+1} - m_k) p^R_k
/// ```
pub fn reconstruct_from_m(
    j: &SymmetricTridiagonal,
    k: usize,
    omega: Complex64,
    table: &MFunctionTable,
    components: &ComponentsAt,
    b_k: Complex64,
) -> Result<MRouteEntries> {
    let n = j.order() - 1;
    if k >= n {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: n.saturating_sub(1),
        });
    }
    if table.values.len() != n + 2 {
        return Err(Error::OrderMismatch {
            expected: n + 2,
            found: table.values.len(),
        });
    }
    for v in [&components.right, &components.left] {
        if v.len() != n + 1 {
            return Err(Error::OrderMismatch {
                expected: n + 1,
                found: v.len(),
            });
        }
    }
    if table.omega != omega || components.omega != omega {
        return Err(Error::invalid(
            "resolvent point",
            "table and components were computed at a different point",
        ));
    }
    let (c, d) = (j.c(), j.d());
    let diffs = (0..=n).map(|i| table.difference(i)).collect::<Result<Vec<_>>>()?;
    let psi = trailing_inverse_from(&diffs, components, k)?;

    let b = (k + 1..n)
        .map(|i| {
            let denom = diffs[i] * components.left[i] * components.right[i + 1];
            omega * d[i] + 1.0 / denom
        })
        .collect();

    let schur = {
        let head = nonvanishing(&components.left, k)? * diffs[k] * nonvanishing(&components.right, k)?;
        let coupling = (omega * d[k] - b_k) * (omega * d[k] - b_k.conj());
        coupling * head
    };
    let a = (k + 1..=n)
        .map(|i| {
            let r = i - (k + 1);
            let mut value = omega * c[i] - psi[(r, r)];
            if i == k + 1 {
                value -= schur;
            }
            if value.im.abs() > REALITY_TOL * value.re.abs().max(1.0) {
                return Err(Error::NonRealDiagonal { i, imag: value.im });
            }
            Ok(value.re)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MRouteEntries { k, b, a })
}
