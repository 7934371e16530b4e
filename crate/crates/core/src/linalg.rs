//! Exact rational matrices and determinants.
//!
//! Determinants go through a fraction-free path: each row is scaled to
//! integers, Bareiss elimination runs on the integer matrix, and the row
//! scalings are divided back out at the end.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{Assignment, Monomial, MultilinearPoly, Var};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<Rational>;

impl<T> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// The matrix with row `r` and column `c` deleted.
    pub fn minor(&self, r: usize, c: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&j| j != c).collect();
        Matrix::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix::from_fn(r, c, |i, j| rat(rows[i][j])))
    }

    pub fn column(values: &[Rational]) -> Self {
        Matrix::from_fn(values.len(), 1, |i, _| values[i].clone())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map(|e| e * k)
    }

    pub fn checked_mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols)
                .filter(|&k| !self[(i, k)].is_zero())
                .fold(Rational::zero(), |acc, k| {
                    acc + &self[(i, k)] * &rhs[(k, j)]
                })
        }))
    }

    pub fn checked_add(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols, |i, j| {
            &self[(i, j)] + &rhs[(i, j)]
        }))
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_mul(rhs).expect("matrix product dimensions")
    }
}

/// Exact determinant by fraction-free elimination. The 0x0 determinant is 1.
pub fn det(m: &RatMatrix) -> Result<Rational> {
    let n = m.require_square()?;
    if n == 0 {
        return Ok(Rational::one());
    }
    // Scale each row by the lcm of its denominators.
    let mut scale = BigInt::one();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let l = m
            .row(i)
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        rows.push(
            m.row(i)
                .iter()
                .map(|e| e.numer() * (&l / e.denom()))
                .collect(),
        );
        scale *= l;
    }
    Ok(Rational::new(bareiss(rows), scale))
}

/// Bareiss elimination on an integer matrix, with row swaps on zero pivots.
pub fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let pivot = &pivot_row[k];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let mut v = &row[j] * pivot;
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v -= &lead * &pivot_row[j];
                }
                if !prev.is_one() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Determinant by rational Gaussian elimination, pivoting on the entry of
/// largest magnitude in each column. Independent of [`det`]; used as a
/// cross-check.
pub fn det_gauss(m: &RatMatrix) -> Result<Rational> {
    let n = m.require_square()?;
    let mut a = m.clone();
    let mut acc = Rational::one();
    for k in 0..n {
        let Some(piv) = (k..n)
            .filter(|&i| !a[(i, k)].is_zero())
            .max_by(|&i, &j| a[(i, k)].abs().cmp(&a[(j, k)].abs()))
        else {
            return Ok(Rational::zero());
        };
        if piv != k {
            for j in 0..n {
                a.data.swap(k * n + j, piv * n + j);
            }
            acc = -acc;
        }
        let p = a[(k, k)].clone();
        acc *= &p;
        for i in k + 1..n {
            if a[(i, k)].is_zero() {
                continue;
            }
            let f = &a[(i, k)] / &p;
            for j in k..n {
                let t = &f * &a[(k, j)];
                a[(i, j)] -= t;
            }
        }
    }
    Ok(acc)
}

/// Solves `m * x = b` for square nonsingular `m`.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    let n = m.require_square()?;
    if b.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for order {n}",
            b.len()
        )));
    }
    let mut a = Matrix::from_fn(n, n + 1, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let w = n + 1;
    for k in 0..n {
        let piv = (k..n)
            .find(|&i| !a[(i, k)].is_zero())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {k}")))?;
        if piv != k {
            for j in 0..w {
                a.data.swap(k * w + j, piv * w + j);
            }
        }
        let inv = a[(k, k)].recip();
        for j in k..w {
            a[(k, j)] *= &inv;
        }
        for i in 0..n {
            if i == k || a[(i, k)].is_zero() {
                continue;
            }
            let f = a[(i, k)].clone();
            for j in k..w {
                let t = &f * &a[(k, j)];
                a[(i, j)] -= t;
            }
        }
    }
    Ok((0..n).map(|i| a[(i, n)].clone()).collect())
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &RatMatrix) -> Result<Option<RatMatrix>> {
    let n = m.require_square()?;
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rational> = (0..n)
            .map(|i| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        match solve(m, &e) {
            Ok(c) => cols.push(c),
            Err(Error::Singular(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(Some(Matrix::from_fn(n, n, |i, j| cols[j][i].clone())))
}

/// Classical adjoint: `adj(M)[j][i]` is the cofactor of `M[i][j]`.
pub fn adjugate(m: &RatMatrix) -> Result<RatMatrix> {
    let n = m.require_square()?;
    if n == 0 {
        return Err(Error::DimensionMismatch("adjugate of a 0x0 matrix".into()));
    }
    let d = det(m)?;
    if !d.is_zero() {
        let inv = inverse(m)?.ok_or_else(|| Error::Internal("nonzero det but singular".into()))?;
        return Ok(inv.scale(&d));
    }
    let mut adj = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let c = det(&m.minor(i, j))?;
            adj[(j, i)] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    Ok(adj)
}

/// `det(H) + v^T adj(H) u`, which equals `det(H + u v^T)`.
pub fn det_rank1_update(h: &RatMatrix, u: &[Rational], v: &[Rational]) -> Result<Rational> {
    let n = h.require_square()?;
    if u.len() != n || v.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vectors of length {} and {} for order {n}",
            u.len(),
            v.len()
        )));
    }
    if n == 0 {
        return Ok(Rational::one());
    }
    let adj = adjugate(h)?;
    let mut acc = det(h)?;
    for i in 0..n {
        for j in 0..n {
            acc += &v[i] * &adj[(i, j)] * &u[j];
        }
    }
    Ok(acc)
}

/// Both sides of the Cauchy-type evaluation of
/// `det[(x_i + y_j) / (1 + x_i y_j)]`. Returns `(lhs, rhs)`.
pub fn cauchy_type_det(xs: &[Rational], ys: &[Rational]) -> Result<(Rational, Rational)> {
    let m = xs.len();
    if ys.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "{} xs vs {} ys",
            m,
            ys.len()
        )));
    }
    let one = Rational::one();
    let mut denom_prod = one.clone();
    let mut entries = Vec::with_capacity(m * m);
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            let d = &one + x * y;
            if d.is_zero() {
                return Err(Error::Singular(format!("1 + x_{i} y_{j} = 0")));
            }
            entries.push((x + y) / &d);
            denom_prod *= d;
        }
    }
    let lhs = det(&Matrix::from_vec(m, m, entries)?)?;

    let plus: Rational = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (&one + x) * (&one + y))
        .product();
    let minus: Rational = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (&one - x) * (&one - y))
        .product();
    let sign = if m.is_multiple_of(2) {
        one.clone()
    } else {
        -one.clone()
    };
    let mut vandermonde = one.clone();
    for i in 0..m {
        for j in i + 1..m {
            vandermonde *= (&xs[i] - &xs[j]) * (&ys[j] - &ys[i]);
        }
    }
    let rhs = (plus + sign * minus) / rat(2) * vandermonde / denom_prod;
    Ok((lhs, rhs))
}

/// Recovers `det(builder(σ))` as a multilinear polynomial in `vars`.
///
/// The determinant is sampled on the `{0,1}^k` grid and the coefficients are
/// obtained by Möbius inversion over the subset lattice. The builder must
/// depend on each variable through a rank-one term, which makes the
/// determinant affine in it; this is confirmed afterwards by comparing with
/// a direct evaluation at the all-twos point.
pub fn det_multilinear<F>(builder: F, vars: &[Var]) -> Result<MultilinearPoly>
where
    F: Fn(&Assignment) -> Result<RatMatrix> + Sync,
{
    let k = vars.len();
    let assign = |mask: usize, value: &Rational| {
        let mut a = Assignment::new();
        for (bit, v) in vars.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                a.set(*v, value.clone());
            }
        }
        a
    };
    let one = Rational::one();
    let mut values: Vec<Rational> = (0..1usize << k)
        .into_par_iter()
        .map(|mask| det(&builder(&assign(mask, &one))?))
        .collect::<Result<_>>()?;

    // In-place Möbius transform: values[T] becomes sum over S ⊆ T of
    // (-1)^{|T|-|S|} f(S).
    for bit in 0..k {
        for mask in 0..1usize << k {
            if mask >> bit & 1 == 1 {
                let lower = values[mask ^ (1 << bit)].clone();
                values[mask] -= lower;
            }
        }
    }
    let poly = MultilinearPoly::from_terms(
        vars,
        values.into_iter().enumerate().map(|(mask, c)| {
            let mono: Vec<Var> = (0..k)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| vars[b])
                .collect();
            (Monomial::from_vars(&mono), c)
        }),
    );

    let probe = assign((1 << k) - 1, &rat(2));
    let direct = det(&builder(&probe)?)?;
    let interpolated = poly.eval(&probe);
    if direct != interpolated {
        return Err(Error::NotMultilinear {
            interpolated: Box::new(interpolated),
            direct: Box::new(direct),
        });
    }
    Ok(poly)
}
