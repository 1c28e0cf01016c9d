//! Three-term recurrence evaluations for a pencil.
//!
//! `P_m` are the leading principal minors of `zJ - H` and `Q_m` the
//! numerators of the convergents of the associated continued fraction.
//! Both satisfy
//!
//! ```text
//! X_{m+1} = (z c_m - a_m) X_m - (z d_{m-1} - b_{m-1})(z d_{m-1} - conj(b_{m-1})) X_{m-1}
//! ```
//!
//! with `P_{-1} = 0, P_0 = 1` and `Q_{-1} = -1, Q_0 = 0`. At `m = 0` the
//! coupling coefficient is taken to be `1`, so `Q_1 = 1` and `Q_1 / P_1` is
//! the first convergent.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pencil::{Pencil, RealPolynomial};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative guard for `|b_j - z d_j|` before it is used as a divisor.
pub const POLE_TOL: f64 = 1e-12;
/// Relative guard for `|P_m(z)|` against `sum |coeff| |z|^deg`.
pub const SPECTRUM_TOL: f64 = 1e-10;
/// Relative threshold below which a leading coefficient counts as zero.
pub const KAPPA_TOL: f64 = 1e-12;

fn check_index(pencil: &Pencil, m: usize) -> Result<()> {
    let max = pencil.n() + 1;
    if m > max {
        return Err(Error::IndexOutOfRange { index: m, max });
    }
    Ok(())
}

/// Diagonal factor `z c_m - a_m` and coupling `v_{m-1}` for step `m`.
fn step(pencil: &Pencil, m: usize, z: Complex64) -> (Complex64, Complex64) {
    let u = pencil.diag_at(m, z);
    let v = if m == 0 {
        ONE
    } else {
        pencil.upper_at(m - 1, z) * pencil.lower_at(m - 1, z)
    };
    (u, v)
}

fn run(pencil: &Pencil, z: Complex64, prev: Complex64, cur: Complex64) -> Vec<Complex64> {
    let n = pencil.n();
    let mut out = Vec::with_capacity(n + 2);
    out.push(cur);
    let (mut prev, mut cur) = (prev, cur);
    for m in 0..=n {
        let (u, v) = step(pencil, m, z);
        let next = u * cur - v * prev;
        out.push(next);
        prev = cur;
        cur = next;
    }
    out
}

/// `P_0(z), ..., P_{n+1}(z)`.
pub fn p_values(pencil: &Pencil, z: Complex64) -> Vec<Complex64> {
    run(pencil, z, ZERO, ONE)
}

/// `Q_0(z), ..., Q_{n+1}(z)`.
pub fn q_values(pencil: &Pencil, z: Complex64) -> Vec<Complex64> {
    run(pencil, z, -ONE, ZERO)
}

/// `P_m(z)`; for `m = n + 1` this is `det(zJ - H)`.
pub fn eval_p(pencil: &Pencil, m: usize, z: Complex64) -> Result<Complex64> {
    check_index(pencil, m)?;
    Ok(p_values(pencil, z)[m])
}

/// `Q_m(z)`; for `m = n + 1` this is the determinant of the trailing block
/// on indices `1..=n`.
pub fn eval_q(pencil: &Pencil, m: usize, z: Complex64) -> Result<Complex64> {
    check_index(pencil, m)?;
    Ok(q_values(pencil, z)[m])
}

/// `(P_m(z), P_m'(z))` from the recurrence and its derivative run together.
pub fn eval_p_with_derivative(pencil: &Pencil, m: usize, z: Complex64) -> Result<(Complex64, Complex64)> {
    check_index(pencil, m)?;
    let (mut prev, mut cur) = (ZERO, ONE);
    let (mut dprev, mut dcur) = (ZERO, ZERO);
    for i in 0..m {
        let (u, v) = step(pencil, i, z);
        let dv = if i == 0 {
            ZERO
        } else {
            let d = pencil.d()[i - 1];
            // d/dz of (z d - b)(z d - conj b) = 2 d (z d - Re b)
            2.0 * d * (z * d - pencil.b()[i - 1].re)
        };
        let c = pencil.c()[i];
        let next = u * cur - v * prev;
        let dnext = c * cur + u * dcur - dv * prev - v * dprev;
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
    }
    Ok((cur, dcur))
}

fn run_poly(pencil: &Pencil, m: usize, prev: RealPolynomial, cur: RealPolynomial) -> RealPolynomial {
    let (mut prev, mut cur) = (prev, cur);
    for i in 0..m {
        let u = RealPolynomial::new(vec![-pencil.a()[i], pencil.c()[i]]);
        let v = if i == 0 {
            RealPolynomial::constant(1.0)
        } else {
            let d = pencil.d()[i - 1];
            let b = pencil.b()[i - 1];
            RealPolynomial::new(vec![b.norm_sqr(), -2.0 * d * b.re, d * d])
        };
        let next = u.mul(&cur).sub(&v.mul(&prev));
        prev = cur;
        cur = next;
    }
    cur
}

/// Coefficients of `P_m`.
pub fn poly_p(pencil: &Pencil, m: usize) -> Result<RealPolynomial> {
    check_index(pencil, m)?;
    Ok(run_poly(
        pencil,
        m,
        RealPolynomial::zero(),
        RealPolynomial::constant(1.0),
    ))
}

/// Coefficients of `Q_m`.
pub fn poly_q(pencil: &Pencil, m: usize) -> Result<RealPolynomial> {
    check_index(pencil, m)?;
    Ok(run_poly(
        pencil,
        m,
        RealPolynomial::constant(-1.0),
        RealPolynomial::zero(),
    ))
}

/// Leading coefficients `kappa_0..kappa_{n+1}` of `P_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaSequence {
    pub values: Vec<f64>,
    /// `degree_drop[m]` is set when `kappa_m` vanishes, i.e. `P_m` has
    /// degree below `m`.
    pub degree_drop: Vec<bool>,
}

impl KappaSequence {
    pub fn any_drop(&self) -> bool {
        self.degree_drop.iter().any(|&f| f)
    }
}

pub fn kappa_sequence(pencil: &Pencil) -> KappaSequence {
    let n = pencil.n();
    let c = pencil.c();
    let d = pencil.d();
    let mut values = vec![1.0, c[0]];
    let mut degree_drop = vec![false, c[0] == 0.0];
    for m in 1..=n {
        let t1 = c[m] * values[m];
        let t2 = d[m - 1] * d[m - 1] * values[m - 1];
        let k = t1 - t2;
        degree_drop.push(k.abs() <= KAPPA_TOL * (t1.abs() + t2.abs()));
        values.push(k);
    }
    KappaSequence { values, degree_drop }
}

/// Whether `z` lies (numerically) in the spectrum of the leading pencil of
/// order `m`, i.e. `P_m(z)` is negligible against its coefficient scale.
pub fn p_vanishes_at(pencil: &Pencil, m: usize, z: Complex64) -> Result<bool> {
    let value = eval_p(pencil, m, z)?;
    let scale = poly_p(pencil, m)?.magnitude_at(z);
    Ok(value.norm() < SPECTRUM_TOL * (1.0 + scale))
}

/// Which eigenvector the components belong to: right (`(zJ-H) x = 0`,
/// poles at `b_j/d_j`) or left (`y (zJ-H) = 0`, poles at `conj(b_j)/d_j`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

/// The coupling that multiplies the next component (`divisor`) and the one
/// multiplying the previous component (`back`) at step `m`.
fn couplings(pencil: &Pencil, side: Side, m: usize, z: Complex64) -> (Complex64, Option<Complex64>) {
    let back = (m > 0).then(|| match side {
        Side::Right => pencil.lower_at(m - 1, z),
        Side::Left => pencil.upper_at(m - 1, z),
    });
    let divisor = if m < pencil.n() {
        match side {
            Side::Right => pencil.upper_at(m, z),
            Side::Left => pencil.lower_at(m, z),
        }
    } else {
        ZERO
    };
    (divisor, back)
}

fn check_pole(pencil: &Pencil, side: Side, j: usize, z: Complex64, divisor: Complex64) -> Result<()> {
    let b = match side {
        Side::Right => pencil.b()[j],
        Side::Left => pencil.b()[j].conj(),
    };
    let zd = z * pencil.d()[j];
    if divisor.norm() < POLE_TOL * (1.0 + b.norm() + zd.norm()) {
        return Err(Error::PoleCollision { j });
    }
    Ok(())
}

/// Components `p_0..p_n` with `p_0 = 1`, all from the recurrence
/// `p_m = P_m / prod_{j<m} (b_j - z d_j)` (conjugated `b` on the left side).
///
/// These satisfy rows `0..n-1` of the eigen-equation for every `z`; row `n`
/// holds only when `z` is an eigenvalue.
pub fn recurrence_components(pencil: &Pencil, z: Complex64, side: Side) -> Result<Vec<Complex64>> {
    let n = pencil.n();
    let mut p = Vec::with_capacity(n + 1);
    p.push(ONE);
    for m in 0..n {
        let (divisor, back) = couplings(pencil, side, m, z);
        check_pole(pencil, side, m, z, divisor)?;
        let mut acc = pencil.diag_at(m, z) * p[m];
        if let Some(back) = back {
            acc += back * p[m - 1];
        }
        p.push(-acc / divisor);
    }
    Ok(p)
}

/// Recurrence components together with their `z`-derivatives.
pub fn recurrence_components_with_derivative(
    pencil: &Pencil,
    z: Complex64,
    side: Side,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let n = pencil.n();
    let mut p = vec![ONE];
    let mut dp = vec![ZERO];
    for m in 0..n {
        let (divisor, back) = couplings(pencil, side, m, z);
        check_pole(pencil, side, m, z, divisor)?;
        let mut acc = pencil.diag_at(m, z) * p[m];
        let mut dacc = pencil.c()[m] * p[m] + pencil.diag_at(m, z) * dp[m];
        if let Some(back) = back {
            acc += back * p[m - 1];
            dacc += pencil.d()[m - 1] * p[m - 1] + back * dp[m - 1];
        }
        let next = -acc / divisor;
        // divisor' = d_m
        let dnext = -(dacc + pencil.d()[m] * next) / divisor;
        p.push(next);
        dp.push(dnext);
    }
    Ok((p, dp))
}

fn eigen_components(pencil: &Pencil, z: Complex64, side: Side) -> Result<Vec<Complex64>> {
    let n = pencil.n();
    if n == 0 {
        return Ok(vec![ONE]);
    }
    let mut p = vec![ONE];
    for m in 0..n - 1 {
        let (divisor, back) = couplings(pencil, side, m, z);
        check_pole(pencil, side, m, z, divisor)?;
        let mut acc = pencil.diag_at(m, z) * p[m];
        if let Some(back) = back {
            acc += back * p[m - 1];
        }
        p.push(-acc / divisor);
    }
    // last row: (z c_n - a_n) p_n + coupling * p_{n-1} = 0
    let diag = pencil.diag_at(n, z);
    let zc = z * pencil.c()[n];
    if diag.norm() < POLE_TOL * (1.0 + zc.norm() + pencil.a()[n].abs()) {
        return Err(Error::DegenerateLastRow);
    }
    let back = match side {
        Side::Right => pencil.lower_at(n - 1, z),
        Side::Left => pencil.upper_at(n - 1, z),
    };
    p.push(-back * p[n - 1] / diag);
    Ok(p)
}

/// Right eigenvector components `p_0^R..p_n^R` at `z`, normalized so that
/// `p_0^R = 1`; the last entry comes from the last row of the eigen-equation.
///
/// When `z` is an eigenvalue the result spans the kernel of `zJ - H`.
pub fn right_components(pencil: &Pencil, z: Complex64) -> Result<Vec<Complex64>> {
    eigen_components(pencil, z, Side::Right)
}

/// Left eigenvector components `p_0^L..p_n^L`; for real `z` these are the
/// entrywise conjugates of [`right_components`].
pub fn left_components(pencil: &Pencil, z: Complex64) -> Result<Vec<Complex64>> {
    eigen_components(pencil, z, Side::Left)
}

/// Components of the kernel vector of `zJ - H` (or of its left kernel) at
/// an eigenvalue `z`, normalized to `p_0 = 1`.
///
/// The forward recurrence from the top is accurate only while the solution
/// grows; towards the bottom of an eigenvector it picks up the dominant
/// parasitic solution. A backward recurrence from the last row has the
/// mirror behaviour, so the two are joined where both are largest.
pub fn eigenvector_components(pencil: &Pencil, z: Complex64, side: Side) -> Result<Vec<Complex64>> {
    let n = pencil.n();
    let forward = recurrence_components(pencil, z, side)?;
    if n == 0 {
        return Ok(forward);
    }
    let mut backward = vec![ZERO; n + 1];
    backward[n] = ONE;
    for m in (1..=n).rev() {
        // row (or column) m: back_{m-1} q_{m-1} + diag_m q_m + next_m q_{m+1} = 0
        let (next, back) = match side {
            Side::Right => ((m < n).then(|| pencil.upper_at(m, z)), pencil.lower_at(m - 1, z)),
            Side::Left => ((m < n).then(|| pencil.lower_at(m, z)), pencil.upper_at(m - 1, z)),
        };
        let b = match side {
            Side::Right => pencil.b()[m - 1].conj(),
            Side::Left => pencil.b()[m - 1],
        };
        let zd = z * pencil.d()[m - 1];
        if back.norm() < POLE_TOL * (1.0 + b.norm() + zd.norm()) {
            return Err(Error::PoleCollision { j: m - 1 });
        }
        let mut acc = pencil.diag_at(m, z) * backward[m];
        if let Some(next) = next {
            acc += next * backward[m + 1];
        }
        backward[m - 1] = -acc / back;
    }
    let fmax = forward.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let bmax = backward.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let join = (0..=n)
        .max_by(|&i, &j| {
            let wi = forward[i].norm() / fmax * backward[i].norm() / bmax;
            let wj = forward[j].norm() / fmax * backward[j].norm() / bmax;
            wi.total_cmp(&wj)
        })
        .unwrap_or(0);
    if backward[join] == ZERO {
        return Err(Error::VanishingComponent { i: join });
    }
    let scale = forward[join] / backward[join];
    let mut out: Vec<Complex64> = (0..=n)
        .map(|i| if i < join { forward[i] } else { backward[i] * scale })
        .collect();
    let first = out[0];
    out.iter_mut().for_each(|v| *v /= first);
    out[0] = ONE;
    Ok(out)
}

/// The convergent `S_m(z) = Q_m(z) / P_m(z)`, `1 <= m <= n + 1`.
pub fn convergent_s(pencil: &Pencil, m: usize, z: Complex64) -> Result<Complex64> {
    check_index(pencil, m)?;
    if m == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            max: pencil.n() + 1,
        });
    }
    if p_vanishes_at(pencil, m, z)? {
        return Err(Error::SpectrumCollision { point: z, order: m });
    }
    Ok(eval_q(pencil, m, z)? / eval_p(pencil, m, z)?)
}

/// Depth-`m` continued fraction `1/(u_0 - v_0/(u_1 - v_1/(... u_{m-1})))`
/// evaluated bottom-up.
pub fn continued_fraction(pencil: &Pencil, m: usize, z: Complex64) -> Result<Complex64> {
    check_index(pencil, m)?;
    if m == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            max: pencil.n() + 1,
        });
    }
    let mut tail = pencil.diag_at(m - 1, z);
    for j in (0..m - 1).rev() {
        let v = pencil.upper_at(j, z) * pencil.lower_at(j, z);
        tail = pencil.diag_at(j, z) - v / tail;
    }
    Ok(ONE / tail)
}

/// Residual of the Liouville-Ostrogradsky identity at index `m <= n`:
///
/// ```text
/// P_m Q_{m+1} - P_{m+1} Q_m = prod_{j<m} (z d_j - b_j)(z d_j - conj(b_j))
/// ```
///
/// relative to the larger of 1, `|P_m Q_{m+1}| + |P_{m+1} Q_m|` and `|rhs|`. The orientation (`P_m Q_{m+1}`
/// first) is the one consistent with the seeds `Q_{-1} = -1, Q_0 = 0`; the
/// opposite orientation is off by an overall sign for every `m`.
pub fn liouville_ostrogradsky_residual(pencil: &Pencil, m: usize, z: Complex64) -> Result<f64> {
    if m > pencil.n() {
        return Err(Error::IndexOutOfRange {
            index: m,
            max: pencil.n(),
        });
    }
    let p = p_values(pencil, z);
    let q = q_values(pencil, z);
    let (t0, t1) = (p[m] * q[m + 1], p[m + 1] * q[m]);
    let rhs = (0..m).fold(ONE, |acc, j| acc * pencil.upper_at(j, z) * pencil.lower_at(j, z));
    let scale = 1.0f64.max(t0.norm() + t1.norm()).max(rhs.norm());
    Ok((t0 - t1 - rhs).norm() / scale)
}
