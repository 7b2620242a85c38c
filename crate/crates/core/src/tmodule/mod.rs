//! The t-module G_{s,u} = (G_a^d, ρ) with ρ_t = θI_d + N + Eτ, its
//! logarithm and exponential coefficients, and the special point v_{s,u}.
//!
//! Everything is generic over [`Scalar`], so the same code runs exactly
//! (over k or K) and v-adically.

use crate::algebra::{Matrix, Poly, Scalar, TauMatrixPoly};
use crate::error::{Error, Result};
use crate::polylog::CompositionIndex;

#[derive(Clone, Debug)]
pub struct TModuleSpec<F: Scalar> {
    index: CompositionIndex,
    ctx: F::Ctx,
    u: Vec<F>,
    // positions of the 1's of N
    ones: Vec<(usize, usize)>,
    n: Matrix<F>,
    e: Matrix<F>,
    rho_t: TauMatrixPoly<F>,
}

/// Builds G_{s,u}; every u_i must be nonzero.
pub fn build_tmodule<F: Scalar>(
    s: &CompositionIndex,
    u: &[F],
    ctx: &F::Ctx,
) -> Result<TModuleSpec<F>> {
    TModuleSpec::new(s, u.to_vec(), ctx)
}

fn sign<F: Scalar>(x: F, k: usize) -> F {
    if k % 2 == 1 {
        x.neg()
    } else {
        x
    }
}

impl<F: Scalar> TModuleSpec<F> {
    pub fn new(s: &CompositionIndex, u: Vec<F>, ctx: &F::Ctx) -> Result<Self> {
        let r = s.depth();
        if u.len() != r {
            return Err(Error::DimensionMismatch(format!(
                "{} arguments for depth {r}",
                u.len()
            )));
        }
        if let Some(i) = u.iter().position(|x| x.is_zero()) {
            return Err(Error::InvalidInput(format!("u_{} is zero", i + 1)));
        }
        let d = s.dim();
        let dims = s.dims();
        let offs: Vec<usize> = (0..r).map(|l| dims[..l].iter().sum()).collect();
        let mut ones = Vec::new();
        for l in 0..r {
            for i in 0..dims[l] - 1 {
                ones.push((offs[l] + i, offs[l] + i + 1));
            }
        }
        let mut n = Matrix::zero(ctx, d, d);
        for &(i, j) in &ones {
            n.set(i, j, F::one(ctx));
        }
        let mut e = Matrix::zero(ctx, d, d);
        for l in 0..r {
            let row = offs[l] + dims[l] - 1;
            e.set(row, offs[l], F::one(ctx));
            let mut prod = F::one(ctx);
            for m in l + 1..r {
                prod = prod.mul(&u[m - 1]);
                e.set(row, offs[m], sign(prod.clone(), m - l));
            }
        }
        let theta = F::from_poly(ctx, &Poly::x(F::field_of(ctx)));
        let mut base = n.clone();
        for i in 0..d {
            base.set(i, i, theta.clone());
        }
        let rho_t = TauMatrixPoly::new(ctx, d, vec![base, e.clone()])?;
        Ok(TModuleSpec {
            index: s.clone(),
            ctx: ctx.clone(),
            u,
            ones,
            n,
            e,
            rho_t,
        })
    }

    /// The same module with u pushed through `f` (e.g. into k_v).
    pub fn map_scalars<G: Scalar>(
        &self,
        ctx: &G::Ctx,
        f: impl Fn(&F) -> Result<G>,
    ) -> Result<TModuleSpec<G>> {
        let u = self.u.iter().map(f).collect::<Result<Vec<_>>>()?;
        TModuleSpec::new(&self.index, u, ctx)
    }

    pub fn index(&self) -> &CompositionIndex {
        &self.index
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn u(&self) -> &[F] {
        &self.u
    }

    pub fn dim(&self) -> usize {
        self.n.rows()
    }

    pub fn n(&self) -> &Matrix<F> {
        &self.n
    }

    pub fn e(&self) -> &Matrix<F> {
        &self.e
    }

    pub fn rho_t(&self) -> &TauMatrixPoly<F> {
        &self.rho_t
    }

    fn theta(&self) -> F {
        F::from_poly(&self.ctx, &Poly::x(F::field_of(&self.ctx)))
    }

    fn scalar_matrix(&self, c: F) -> Matrix<F> {
        let d = self.dim();
        let mut m = Matrix::zero(&self.ctx, d, d);
        for i in 0..d {
            m.set(i, i, c.clone());
        }
        m
    }

    fn fq_const(&self, c: u32) -> F {
        F::from_fq(&self.ctx, F::field_of(&self.ctx), c)
    }

    /// ρ_a for a ∈ F_q[t] (coefficients of `a` read as a polynomial in t), by Horner.
    pub fn rho_a(&self, a: &Poly) -> Result<TauMatrixPoly<F>> {
        let d = self.dim();
        let mut acc = TauMatrixPoly::zero(&self.ctx, d);
        for &c in a.coeffs().iter().rev() {
            acc = acc.mul(&self.rho_t)?;
            if c != 0 {
                let k = TauMatrixPoly::constant(self.scalar_matrix(self.fq_const(c)), &self.ctx);
                acc = acc.add(&k)?;
            }
        }
        Ok(acc)
    }

    /// ∂ρ_a = a(θI + N).
    pub fn partial_rho_a(&self, a: &Poly) -> Result<Matrix<F>> {
        let d = self.dim();
        let dt = self.rho_t.partial();
        let mut acc = Matrix::zero(&self.ctx, d, d);
        for &c in a.coeffs().iter().rev() {
            acc = acc.mul(&dt)?;
            if c != 0 {
                acc = acc.add(&self.scalar_matrix(self.fq_const(c)))?;
            }
        }
        Ok(acc)
    }

    /// ρ_t applied to a point: (θ + N)x + E x^{(1)}.
    pub fn apply_t(&self, x: &[F]) -> Result<Vec<F>> {
        let theta = self.theta();
        let d = self.dim();
        if x.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "point of length {}",
                x.len()
            )));
        }
        let mut out: Vec<F> = x
            .iter()
            .map(|c| {
                if c.is_exact_zero() {
                    c.clone()
                } else {
                    c.mul(&theta)
                }
            })
            .collect();
        for &(i, j) in &self.ones {
            if !x[j].is_exact_zero() {
                out[i] = out[i].add(&x[j]);
            }
        }
        let tw: Vec<F> = x.iter().map(|c| c.frobenius(1)).collect();
        let et = self.e.mul_vec(&tw)?;
        for (o, t) in out.iter_mut().zip(et) {
            if !t.is_exact_zero() {
                *o = o.add(&t);
            }
        }
        Ok(out)
    }

    /// ρ_a applied to a point, by Horner on points.
    pub fn apply_a(&self, a: &Poly, x: &[F]) -> Result<Vec<F>> {
        let mut acc: Vec<F> = vec![F::zero(&self.ctx); self.dim()];
        for &c in a.coeffs().iter().rev() {
            acc = self.apply_t(&acc)?;
            if c != 0 {
                let k = self.fq_const(c);
                for (o, xi) in acc.iter_mut().zip(x) {
                    if !xi.is_exact_zero() {
                        *o = o.add(&xi.mul(&k));
                    }
                }
            }
        }
        Ok(acc)
    }

    /// v_{s,u}: entry d₁+⋯+d_ℓ is (-1)^{r-ℓ} u_ℓ⋯u_r, all others 0.
    pub fn special_point(&self) -> Vec<F> {
        let s = &self.index;
        let r = s.depth();
        let mut x = vec![F::zero(&self.ctx); self.dim()];
        for l in 1..=r {
            let prod = self.u[l - 1..]
                .iter()
                .skip(1)
                .fold(self.u[l - 1].clone(), |a, b| a.mul(b));
            x[s.block_bottom(l) - 1] = sign(prod, r - l);
        }
        x
    }

    fn ad(&self, y: &Matrix<F>) -> Matrix<F> {
        ad_ones(&self.ones, y)
    }

    /// P_0, …, P_imax with P_{i+1} solving (θ^{q^{i+1}} - θ)X + XN - NX = -P_i E^{(i)}.
    pub fn log_coeffs(&self, imax: usize) -> Result<Vec<Matrix<F>>> {
        let d = self.dim();
        let d1 = self.index.d(1);
        let theta = Poly::x(F::field_of(&self.ctx));
        let mut out = vec![Matrix::identity(&self.ctx, d)];
        let mut et = self.e.clone();
        for i in 0..imax {
            if i > 0 {
                et = et.frobenius(1);
            }
            let rhs = out[i].mul(&et)?.neg();
            let gap = F::from_poly(&self.ctx, &theta.twist(i as u32 + 1).sub(&theta));
            out.push(sylvester(&gap, &rhs, d1, |y| self.ad(y))?);
        }
        Ok(out)
    }

    /// Q_0, …, Q_imax with Q_i solving (θ^{q^i} - θ)X + XN - NX = E Q_{i-1}^{(1)}.
    pub fn exp_coeffs(&self, imax: usize) -> Result<Vec<Matrix<F>>> {
        let d = self.dim();
        let d1 = self.index.d(1);
        let theta = Poly::x(F::field_of(&self.ctx));
        let mut out = vec![Matrix::identity(&self.ctx, d)];
        for i in 1..=imax {
            let rhs = self.e.mul(&out[i - 1].frobenius(1))?;
            let gap = F::from_poly(&self.ctx, &theta.twist(i as u32).sub(&theta));
            out.push(sylvester(&gap, &rhs, d1, |y| self.ad(y))?);
        }
        Ok(out)
    }

    /// The (ℓ, m) block of a d×d matrix, 1-based.
    pub fn block(&self, p: &Matrix<F>, l: usize, m: usize) -> Matrix<F> {
        let s = &self.index;
        let (r0, c0) = (s.block_bottom(l) - s.d(l), s.block_bottom(m) - s.d(m));
        let rows = (0..s.d(l))
            .map(|i| (0..s.d(m)).map(|j| p.get(r0 + i, c0 + j).clone()).collect())
            .collect();
        Matrix::from_rows(rows).expect("rectangular block")
    }

    /// y[ℓm]: the lower right corner of the (ℓ, m) block.
    pub fn corner<'a>(&self, p: &'a Matrix<F>, l: usize, m: usize) -> &'a F {
        let s = &self.index;
        p.get(s.block_bottom(l) - 1, s.block_bottom(m) - 1)
    }
}

// ad(N)(Y) = NY - YN for N with 1's at `ones` and 0 elsewhere.
fn ad_ones<F: Scalar>(ones: &[(usize, usize)], y: &Matrix<F>) -> Matrix<F> {
    let d = y.rows();
    let mut out = Matrix::zero(&y.entries()[0].ctx(), d, d);
    let acc = |out: &mut Matrix<F>, i: usize, j: usize, x: &F, neg: bool| {
        if x.is_exact_zero() {
            return;
        }
        let x = if neg { x.neg() } else { x.clone() };
        let cur = out.get(i, j);
        let v = if cur.is_exact_zero() { x } else { cur.add(&x) };
        out.set(i, j, v);
    };
    for &(a, b) in ones {
        for j in 0..d {
            // (NY)[a][j] += Y[b][j]
            acc(&mut out, a, j, y.get(b, j), false);
            // (YN)[j][b] += Y[j][a]
            acc(&mut out, j, b, y.get(j, a), true);
        }
    }
    out
}

// X = Σ_{j=0}^{2·d1-2} ad^j(C) / gap^{j+1}; ad is nilpotent of index ≤ 2·d1 - 1.
fn sylvester<F: Scalar>(
    gap: &F,
    rhs: &Matrix<F>,
    d1: usize,
    ad: impl Fn(&Matrix<F>) -> Matrix<F>,
) -> Result<Matrix<F>> {
    if gap.is_zero() {
        return Err(Error::NotInvertible("c - θ vanishes".into()));
    }
    let w = gap.inv()?;
    let mut terms = vec![rhs.clone()];
    for _ in 1..2 * d1.max(1) - 1 {
        let next = ad(terms.last().unwrap());
        if next.is_exact_zero() {
            break;
        }
        terms.push(next);
    }
    // Horner in w: w(T_0 + w(T_1 + ⋯))
    let mut x = terms.pop().unwrap().scale(&w);
    while let Some(t) = terms.pop() {
        x = t.add(&x)?.scale(&w);
    }
    Ok(x)
}

/// Solves (c - θ)X + XN - NX = C for nilpotent N.
pub fn solve_nilpotent_sylvester<F: Scalar>(
    c: &F,
    n: &Matrix<F>,
    rhs: &Matrix<F>,
) -> Result<Matrix<F>> {
    if n.rows() != n.cols() || rhs.rows() != n.rows() || rhs.cols() != n.cols() {
        return Err(Error::DimensionMismatch(
            "square matrices of one size".into(),
        ));
    }
    if n.rows() == 0 {
        return Ok(rhs.clone());
    }
    let ctx = n.get(0, 0).ctx();
    let theta = F::from_poly(&ctx, &Poly::x(F::field_of(&ctx)));
    sylvester(&c.sub(&theta), rhs, n.rows(), |y| {
        Matrix::ad(n, y).expect("matching dimensions")
    })
}

/// 1/L_i as a product of the brackets 1/(θ - θ^{q^k}).
pub fn inverse_l<F: Scalar>(ctx: &F::Ctx, i: usize) -> Result<F> {
    let theta = Poly::x(F::field_of(ctx));
    let mut acc = F::one(ctx);
    for k in 1..=i {
        let b = F::from_poly(ctx, &theta.sub(&theta.twist(k as u32)));
        acc = acc.mul(&b.inv()?);
    }
    Ok(acc)
}

/// The closed form of y_i[ℓm]:
/// `1/L_i^{d_m}` for ℓ = m, and for ℓ < m
/// `(-1)^{m-ℓ} Σ_{0 ≤ i_ℓ ≤ ⋯ ≤ i_{m-1} < i} Π_e u_e^{q^{i_e}}/L_{i_e}^{s_e} · 1/L_i^{d_m}`.
pub fn closed_form_corner<F: Scalar>(
    s: &CompositionIndex,
    u: &[F],
    ctx: &F::Ctx,
    i: usize,
    l: usize,
    m: usize,
) -> Result<F> {
    if l > m {
        return Ok(F::zero(ctx));
    }
    let linv: Vec<F> = (0..=i).map(|k| inverse_l(ctx, k)).collect::<Result<_>>()?;
    let tail = pow(&linv[i], s.d(m), ctx);
    if l == m {
        return Ok(tail);
    }
    if i == 0 {
        return Ok(F::zero(ctx));
    }
    // factor[e][k] = u_e^{q^k} / L_k^{s_e}
    let factor: Vec<Vec<F>> = (l..m)
        .map(|e| {
            (0..i)
                .map(|k| {
                    u[e - 1]
                        .frobenius(k as u32)
                        .mul(&pow(&linv[k], s.s()[e - 1] as usize, ctx))
                })
                .collect()
        })
        .collect();
    // sums over nondecreasing tuples, built from the last slot backwards:
    // acc[k] = Σ over tuples whose first index is k
    let len = m - l;
    let mut acc: Vec<F> = factor[len - 1].clone();
    for e in (0..len - 1).rev() {
        let mut suffix = F::zero(ctx);
        let mut next = vec![F::zero(ctx); i];
        for k in (0..i).rev() {
            suffix = suffix.add(&acc[k]);
            next[k] = factor[e][k].mul(&suffix);
        }
        acc = next;
    }
    let total = acc.iter().fold(F::zero(ctx), |a, b| a.add(b));
    Ok(sign(total.mul(&tail), m - l))
}

fn pow<F: Scalar>(x: &F, n: usize, ctx: &F::Ctx) -> F {
    (0..n).fold(F::one(ctx), |a, _| a.mul(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fq, RatFunc};

    fn f3() -> Fq {
        Fq::prime(3).unwrap()
    }

    fn r(c: &[i64]) -> RatFunc {
        RatFunc::from_poly(Poly::from_ints(f3(), c))
    }

    fn idx(s: &[u32]) -> CompositionIndex {
        CompositionIndex::new(s.to_vec()).unwrap()
    }

    #[test]
    fn depth_two_shape() {
        let g = build_tmodule(&idx(&[1, 1]), &[r(&[0, 1]), r(&[1, 1])], &f3()).unwrap();
        assert_eq!(g.dim(), 3);
        // N has one 1 at (0, 1); E has corners at rows 1 and 2
        assert_eq!(g.n().get(0, 1), &r(&[1]));
        assert_eq!(g.e().get(1, 0), &r(&[1]));
        assert_eq!(g.e().get(1, 2), &r(&[0, -1]));
        assert_eq!(g.e().get(2, 2), &r(&[1]));
        let v = g.special_point();
        assert!(v[0].is_zero());
        assert_eq!(v[1], r(&[0, 1]).mul(&r(&[1, 1])).neg());
        assert_eq!(v[2], r(&[1, 1]));
    }

    #[test]
    fn zero_argument_is_rejected() {
        assert!(build_tmodule(&idx(&[1]), &[r(&[])], &f3()).is_err());
    }

    #[test]
    fn sylvester_plug_back() {
        let fq = f3();
        let n = Matrix::from_rows(vec![vec![r(&[]), r(&[1])], vec![r(&[]), r(&[])]]).unwrap();
        let c = Matrix::from_rows(vec![
            vec![r(&[1, 1]), r(&[2])],
            vec![r(&[0, 0, 1]), r(&[1, 2])],
        ])
        .unwrap();
        let cc = r(&[0, 0, 0, 1]);
        let x = solve_nilpotent_sylvester(&cc, &n, &c).unwrap();
        let lhs = x
            .scale(&cc.sub(&r(&[0, 1])))
            .add(&x.mul(&n).unwrap())
            .unwrap()
            .sub(&n.mul(&x).unwrap())
            .unwrap();
        assert_eq!(lhs, c);
        let z = Matrix::zero(&fq, 2, 2);
        assert!(solve_nilpotent_sylvester(&cc, &n, &z).unwrap().is_zero());
        assert!(solve_nilpotent_sylvester(&r(&[0, 1]), &n, &c).is_err());
    }

    #[test]
    fn horner_matches_powers() {
        let g = build_tmodule(&idx(&[2]), &[r(&[1, 1])], &f3()).unwrap();
        let a = Poly::from_ints(f3(), &[1, 0, 1]);
        let t2 = g.rho_t().mul(g.rho_t()).unwrap();
        let want = t2.add(&TauMatrixPoly::identity(&f3(), 2)).unwrap();
        assert_eq!(g.rho_a(&a).unwrap(), want);
        let x = vec![r(&[1]), r(&[0, 1])];
        let direct = want.apply(&x).unwrap();
        assert_eq!(g.apply_a(&a, &x).unwrap(), direct);
    }
}
