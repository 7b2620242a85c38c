//! Dense matrices over any [`Scalar`].

use std::fmt;

use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Matrix<F: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Scalar> Matrix<F> {
    pub fn zero(ctx: &F::Ctx, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(ctx); rows * cols],
        }
    }

    pub fn identity(ctx: &F::Ctx, n: usize) -> Self {
        let mut m = Matrix::zero(ctx, n, n);
        for i in 0..n {
            m.data[i * n + i] = F::one(ctx);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn same_shape(&self, o: &Self) -> Result<()> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(self.zip(o, |a, b| {
            if b.is_exact_zero() {
                a.clone()
            } else if a.is_exact_zero() {
                b.clone()
            } else {
                a.add(b)
            }
        }))
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.same_shape(o)?;
        Ok(self.zip(o, |a, b| {
            if b.is_exact_zero() {
                a.clone()
            } else {
                a.sub(b)
            }
        }))
    }

    fn zip(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|x| {
            if x.is_exact_zero() {
                x.clone()
            } else {
                x.mul(c)
            }
        })
    }

    pub fn map<G: Scalar>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Scalar>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Matrix<G>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let ctx = match self.data.first().or(o.data.first()) {
            Some(x) => x.ctx(),
            None => {
                return Ok(Matrix {
                    rows: self.rows,
                    cols: o.cols,
                    data: Vec::new(),
                })
            }
        };
        let mut out: Matrix<F> = Matrix::zero(&ctx, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_exact_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_exact_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    let slot: &mut F = &mut out.data[i * o.cols + j];
                    *slot = if slot.is_exact_zero() {
                        t
                    } else {
                        slot.add(&t)
                    };
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[F]) -> Result<Vec<F>> {
        if self.cols != x.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc: Option<F> = None;
            for (a, b) in self.row(i).iter().zip(x) {
                if a.is_exact_zero() || b.is_exact_zero() {
                    continue;
                }
                let t = a.mul(b);
                acc = Some(match acc {
                    None => t,
                    Some(s) => s.add(&t),
                });
            }
            out.push(match acc {
                Some(s) => s,
                None => self
                    .data
                    .first()
                    .map_or_else(|| x[0].clone(), |e| F::zero(&e.ctx())),
            });
        }
        Ok(out)
    }

    /// Entrywise Frobenius twist M^{(s)}.
    pub fn frobenius(&self, s: u32) -> Self {
        if s == 0 {
            return self.clone();
        }
        self.map(|x| {
            if x.is_exact_zero() {
                x.clone()
            } else {
                x.frobenius(s)
            }
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_exact_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_exact_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// ad(N)(Y) = N·Y - Y·N.
    pub fn ad(n: &Self, y: &Self) -> Result<Self> {
        n.mul(y)?.sub(&y.mul(n)?)
    }
}

impl<F: Scalar + PartialEq> PartialEq for Matrix<F> {
    fn eq(&self, o: &Self) -> bool {
        self.rows == o.rows && self.cols == o.cols && self.data == o.data
    }
}

impl<F: Scalar> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fq, Poly, RatFunc};

    fn r(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(Poly::from_ints(Fq::prime(3).unwrap(), c))
    }

    #[test]
    fn product_and_identity() {
        let fq = Fq::prime(3).unwrap();
        let a = Matrix::from_rows(vec![vec![r(&[1]), r(&[0, 1])], vec![r(&[]), r(&[2])]]).unwrap();
        let i = Matrix::identity(&fq, 2);
        assert_eq!(a.mul(&i).unwrap(), a);
        assert_eq!(i.frobenius(3), i);
        let a2 = a.mul(&a).unwrap();
        assert_eq!(a2.get(0, 1), &r(&[0, 3]));
        assert!(a.mul(&Matrix::identity(&fq, 3)).is_err());
    }
}
