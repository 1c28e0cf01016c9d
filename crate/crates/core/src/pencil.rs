//! Data model for the pencil `zJ - H` with `J` real symmetric tridiagonal
//! and `H` Hermitian tridiagonal, both of order `n + 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};

fn check_finite(what: &'static str, values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::invalid(what, format!("entry {i} is not finite"))),
        None => Ok(()),
    }
}

fn check_finite_complex(what: &'static str, values: &[Complex64]) -> Result<()> {
    match values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
        Some(i) => Err(Error::invalid(what, format!("entry {i} is not finite"))),
        None => Ok(()),
    }
}

/// Real symmetric tridiagonal matrix with diagonal `c` and off-diagonal `d`.
///
/// Every off-diagonal entry is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTridiagonal {
    c: Vec<f64>,
    d: Vec<f64>,
}

impl SymmetricTridiagonal {
    pub fn new(c: Vec<f64>, d: Vec<f64>) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::invalid("J", "diagonal must be nonempty"));
        }
        if d.len() + 1 != c.len() {
            return Err(Error::OrderMismatch {
                expected: c.len() - 1,
                found: d.len(),
            });
        }
        check_finite("J diagonal", &c)?;
        check_finite("J off-diagonal", &d)?;
        if let Some(j) = d.iter().position(|&x| x == 0.0) {
            return Err(Error::invalid("J off-diagonal", format!("d_{j} is zero")));
        }
        Ok(Self { c, d })
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    /// Number of rows, `n + 1`.
    pub fn order(&self) -> usize {
        self.c.len()
    }

    /// The leading `len x len` block.
    pub fn leading(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.order() {
            return Err(Error::IndexOutOfRange {
                index: len,
                max: self.order(),
            });
        }
        Ok(Self {
            c: self.c[..len].to_vec(),
            d: self.d[..len - 1].to_vec(),
        })
    }
}

/// Hermitian tridiagonal matrix: real diagonal `a`, super-diagonal `b`,
/// sub-diagonal `conj(b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianTridiagonal {
    a: Vec<f64>,
    b: Vec<Complex64>,
}

impl HermitianTridiagonal {
    pub fn new(a: Vec<f64>, b: Vec<Complex64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::invalid("H", "diagonal must be nonempty"));
        }
        if b.len() + 1 != a.len() {
            return Err(Error::OrderMismatch {
                expected: a.len() - 1,
                found: b.len(),
            });
        }
        check_finite("H diagonal", &a)?;
        check_finite_complex("H super-diagonal", &b)?;
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }
}

/// The pencil `zJ - H` of order `n + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pencil {
    j: SymmetricTridiagonal,
    h: HermitianTridiagonal,
}

impl Pencil {
    pub fn new(j: SymmetricTridiagonal, h: HermitianTridiagonal) -> Result<Self> {
        if j.order() != h.order() {
            return Err(Error::OrderMismatch {
                expected: j.order(),
                found: h.order(),
            });
        }
        Ok(Self { j, h })
    }

    /// Builds a pencil straight from the four coefficient sequences.
    pub fn from_parts(c: Vec<f64>, d: Vec<f64>, a: Vec<f64>, b: Vec<Complex64>) -> Result<Self> {
        Self::new(SymmetricTridiagonal::new(c, d)?, HermitianTridiagonal::new(a, b)?)
    }

    pub fn j(&self) -> &SymmetricTridiagonal {
        &self.j
    }

    pub fn h(&self) -> &HermitianTridiagonal {
        &self.h
    }

    /// The index `n`; matrices are `(n + 1) x (n + 1)`.
    pub fn n(&self) -> usize {
        self.j.order() - 1
    }

    pub fn order(&self) -> usize {
        self.j.order()
    }

    pub fn c(&self) -> &[f64] {
        self.j.c()
    }

    pub fn d(&self) -> &[f64] {
        self.j.d()
    }

    pub fn a(&self) -> &[f64] {
        self.h.a()
    }

    pub fn b(&self) -> &[Complex64] {
        self.h.b()
    }

    /// Pole `b_j / d_j` of the right eigenvector components.
    pub fn pole(&self, j: usize) -> Complex64 {
        self.b()[j] / self.d()[j]
    }

    /// Diagonal entry `z c_i - a_i` of `zJ - H`.
    pub fn diag_at(&self, i: usize, z: Complex64) -> Complex64 {
        z * self.c()[i] - self.a()[i]
    }

    /// Super-diagonal entry `z d_j - b_j` (row `j`, column `j + 1`).
    pub fn upper_at(&self, j: usize, z: Complex64) -> Complex64 {
        z * self.d()[j] - self.b()[j]
    }

    /// Sub-diagonal entry `z d_j - conj(b_j)` (row `j + 1`, column `j`).
    pub fn lower_at(&self, j: usize, z: Complex64) -> Complex64 {
        z * self.d()[j] - self.b()[j].conj()
    }

    /// The sub-pencil on indices `0..len`.
    pub fn leading(&self, len: usize) -> Result<Self> {
        let j = self.j.leading(len)?;
        let h = HermitianTridiagonal {
            a: self.a()[..len].to_vec(),
            b: self.b()[..len - 1].to_vec(),
        };
        Ok(Self { j, h })
    }

    /// `(zJ - H) x` for a tridiagonal matrix-vector product.
    pub fn apply(&self, z: Complex64, x: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.order() {
            return Err(Error::OrderMismatch {
                expected: self.order(),
                found: x.len(),
            });
        }
        let n = self.n();
        Ok((0..=n)
            .map(|i| {
                let mut acc = self.diag_at(i, z) * x[i];
                if i > 0 {
                    acc += self.lower_at(i - 1, z) * x[i - 1];
                }
                if i < n {
                    acc += self.upper_at(i, z) * x[i + 1];
                }
                acc
            })
            .collect())
    }

    /// `y (zJ - H)` for a row vector `y`.
    pub fn apply_left(&self, z: Complex64, y: &[Complex64]) -> Result<Vec<Complex64>> {
        if y.len() != self.order() {
            return Err(Error::OrderMismatch {
                expected: self.order(),
                found: y.len(),
            });
        }
        let n = self.n();
        Ok((0..=n)
            .map(|j| {
                let mut acc = y[j] * self.diag_at(j, z);
                if j > 0 {
                    acc += y[j - 1] * self.upper_at(j - 1, z);
                }
                if j < n {
                    acc += y[j + 1] * self.lower_at(j, z);
                }
                acc
            })
            .collect())
    }

    /// Largest entry magnitude of `zJ - H`.
    pub fn scale_at(&self, z: Complex64) -> f64 {
        let n = self.n();
        let mut s = (0..=n).map(|i| self.diag_at(i, z).norm()).fold(0.0, f64::max);
        for j in 0..n {
            s = s.max(self.upper_at(j, z).norm()).max(self.lower_at(j, z).norm());
        }
        s
    }
}

/// Polynomial with real coefficients stored in ascending degree.
///
/// Exact-zero trailing coefficients are trimmed, so the last stored
/// coefficient is nonzero unless this is the zero polynomial (`[0]`).
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![0.0] }
    }

    pub fn constant(v: f64) -> Self {
        Self::new(vec![v])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[self.coeffs.len() - 1]
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `sum |coeff_i| |z|^i`, the natural magnitude scale of a value at `z`.
    pub fn magnitude_at(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c.abs())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            for (j, &y) in other.coeffs.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let out = (0..len)
            .map(|i| self.coeffs.get(i).copied().unwrap_or(0.0) - other.coeffs.get(i).copied().unwrap_or(0.0))
            .collect();
        Self::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_off_diagonal() {
        let err = SymmetricTridiagonal::new(vec![1.0, 1.0], vec![0.0]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput { .. }));
    }

    #[test]
    fn rejects_non_finite_entries() {
        assert!(SymmetricTridiagonal::new(vec![f64::NAN], vec![]).is_err());
        assert!(HermitianTridiagonal::new(vec![0.0, 0.0], vec![Complex64::new(f64::INFINITY, 0.0)]).is_err());
    }

    #[test]
    fn order_mismatch_is_reported() {
        let j = SymmetricTridiagonal::new(vec![1.0, 1.0], vec![1.0]).unwrap();
        let h = HermitianTridiagonal::new(vec![0.0], vec![]).unwrap();
        assert_eq!(
            Pencil::new(j, h).unwrap_err(),
            Error::OrderMismatch { expected: 2, found: 1 }
        );
    }

    #[test]
    fn polynomial_trims_and_evaluates() {
        let p = RealPolynomial::new(vec![-1.0, 0.0, 0.0]);
        assert_eq!(p.coeffs(), &[-1.0]);
        assert_eq!(p.degree(), 0);
        let q = RealPolynomial::new(vec![1.0, 2.0, 3.0]);
        let z = Complex64::new(0.5, -1.0);
        let direct = 1.0 + 2.0 * z + 3.0 * z * z;
        assert!((q.eval(z) - direct).norm() < 1e-15);
        assert_eq!(q.mul(&RealPolynomial::constant(0.0)), RealPolynomial::zero());
    }

    #[test]
    fn apply_matches_left_apply_transpose_structure() {
        let p = Pencil::from_parts(
            vec![2.0, 3.0, 2.5],
            vec![0.5, -1.0],
            vec![0.1, -0.2, 0.3],
            vec![Complex64::new(0.2, 0.7), Complex64::new(-0.4, 0.3)],
        )
        .unwrap();
        let z = Complex64::new(0.3, 0.1);
        let e1 = vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        // column 1 of zJ - H vs row 1
        let col = p.apply(z, &e1).unwrap();
        let row = p.apply_left(z, &e1).unwrap();
        assert_eq!(col[0], p.upper_at(0, z));
        assert_eq!(row[0], p.lower_at(0, z));
        assert_eq!(col[2], p.lower_at(1, z));
        assert_eq!(row[2], p.upper_at(1, z));
    }
}
