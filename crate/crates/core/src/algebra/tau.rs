//! Twisted polynomials Σ α_i τ^i with d×d matrix coefficients, τα = α^{(1)}τ.

use std::fmt;

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct TauMatrixPoly<F: Scalar> {
    dim: usize,
    ctx: F::Ctx,
    coeffs: Vec<Matrix<F>>,
}

impl<F: Scalar> TauMatrixPoly<F> {
    pub fn new(ctx: &F::Ctx, dim: usize, coeffs: Vec<Matrix<F>>) -> Result<Self> {
        if coeffs.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "coefficients must be {dim}x{dim}"
            )));
        }
        let mut p = TauMatrixPoly {
            dim,
            ctx: ctx.clone(),
            coeffs,
        };
        p.trim();
        Ok(p)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|m| m.is_exact_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero(ctx: &F::Ctx, dim: usize) -> Self {
        TauMatrixPoly {
            dim,
            ctx: ctx.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn identity(ctx: &F::Ctx, dim: usize) -> Self {
        TauMatrixPoly::constant(Matrix::identity(ctx, dim), ctx)
    }

    pub fn constant(m: Matrix<F>, ctx: &F::Ctx) -> Self {
        let dim = m.rows();
        let mut p = TauMatrixPoly {
            dim,
            ctx: ctx.clone(),
            coeffs: vec![m],
        };
        p.trim();
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Matrix<F>] {
        &self.coeffs
    }

    /// τ-degree; None for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The τ^0 coefficient ∂f.
    pub fn partial(&self) -> Matrix<F> {
        self.coeffs
            .first()
            .cloned()
            .unwrap_or_else(|| Matrix::zero(&self.ctx, self.dim, self.dim))
    }

    fn check_dim(&self, o: &Self) -> Result<()> {
        if self.dim != o.dim {
            return Err(Error::DimensionMismatch(format!(
                "twisted polynomials of dimension {} and {}",
                self.dim, o.dim
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_dim(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Matrix::zero(&self.ctx, self.dim, self.dim);
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs
                    .get(i)
                    .unwrap_or(&z)
                    .add(o.coeffs.get(i).unwrap_or(&z))
            })
            .collect::<Result<_>>()?;
        TauMatrixPoly::new(&self.ctx, self.dim, coeffs)
    }

    pub fn scale_matrix(&self, m: &Matrix<F>) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| m.mul(c))
            .collect::<Result<_>>()?;
        TauMatrixPoly::new(&self.ctx, self.dim, coeffs)
    }

    /// (Σ α_i τ^i)(Σ β_j τ^j) = Σ_k (Σ_{i+j=k} α_i β_j^{(i)}) τ^k.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_dim(o)?;
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Ok(TauMatrixPoly::zero(&self.ctx, self.dim));
        }
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let mut out = vec![Matrix::zero(&self.ctx, self.dim, self.dim); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_exact_zero() {
                    continue;
                }
                let t = a.mul(&b.frobenius(i as u32))?;
                out[i + j] = out[i + j].add(&t)?;
            }
        }
        TauMatrixPoly::new(&self.ctx, self.dim, out)
    }

    /// f(x) = Σ α_i x^{(i)} for a column vector x.
    pub fn apply(&self, x: &[F]) -> Result<Vec<F>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for dimension {}",
                x.len(),
                self.dim
            )));
        }
        let mut acc: Vec<F> = vec![F::zero(&self.ctx); self.dim];
        for (i, a) in self.coeffs.iter().enumerate() {
            let xi: Vec<F> = x.iter().map(|c| c.frobenius(i as u32)).collect();
            let t = a.mul_vec(&xi)?;
            acc = acc.iter().zip(&t).map(|(u, w)| u.add(w)).collect();
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|m| m.is_zero())
    }
}

impl<F: Scalar + PartialEq> PartialEq for TauMatrixPoly<F> {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.coeffs == o.coeffs
    }
}

impl<F: Scalar> fmt::Debug for TauMatrixPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "τ^{i}: {c:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fq, Poly, RatFunc};

    fn fq() -> Fq {
        Fq::prime(3).unwrap()
    }

    fn r(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(Poly::from_ints(fq(), c))
    }

    fn scalar_tau(cs: &[RatFunc]) -> TauMatrixPoly<RatFunc> {
        let coeffs = cs
            .iter()
            .map(|c| Matrix::from_rows(vec![vec![c.clone()]]).unwrap())
            .collect();
        TauMatrixPoly::new(&fq(), 1, coeffs).unwrap()
    }

    #[test]
    fn twist_rule() {
        let tau = scalar_tau(&[r(&[]), r(&[1])]);
        let theta = scalar_tau(&[r(&[0, 1])]);
        assert_eq!(
            tau.mul(&theta).unwrap(),
            scalar_tau(&[r(&[]), r(&[0, 0, 0, 1])])
        );
        let id = TauMatrixPoly::identity(&fq(), 1);
        assert_eq!(tau.mul(&id).unwrap(), tau);
    }

    #[test]
    fn carlitz_square() {
        // (θ + τ)^2 = θ^2 + (θ + θ^q)τ + τ^2
        let f = scalar_tau(&[r(&[0, 1]), r(&[1])]);
        let expect = scalar_tau(&[r(&[0, 0, 1]), r(&[0, 1, 0, 1]), r(&[1])]);
        assert_eq!(f.mul(&f).unwrap(), expect);
        assert_eq!(
            f.mul(&f).unwrap().partial(),
            f.partial().mul(&f.partial()).unwrap()
        );
    }

    #[test]
    fn apply_matches_product() {
        let f = scalar_tau(&[r(&[0, 1]), r(&[1])]);
        let x = vec![r(&[1, 1])];
        let ff = f.mul(&f).unwrap();
        assert_eq!(
            ff.apply(&x).unwrap(),
            f.apply(&f.apply(&x).unwrap()).unwrap()
        );
    }
}
