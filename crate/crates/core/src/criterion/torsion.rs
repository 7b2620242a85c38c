use crate::algebra::{ExtElem, Fe, Fq, Poly, RatFunc};
use crate::error::{Error, Result};
use crate::tmodule::TModuleSpec;

/// Outcome of a bounded torsion search.
#[derive(Clone, Debug, PartialEq)]
pub enum Torsion {
    /// Monic a ∈ F_q[t] of least degree with ρ_a(w) = 0, verified exactly.
    Certificate(Poly),
    /// No F_q-linear relation among w, ρ_t(w), …, ρ_t^D(w).
    Inconclusive,
}

impl Torsion {
    pub fn certificate(&self) -> Option<&Poly> {
        match self {
            Torsion::Certificate(a) => Some(a),
            Torsion::Inconclusive => None,
        }
    }

    /// "t^2 + 1"-style text, or "inconclusive".
    pub fn label(&self) -> String {
        match self {
            Torsion::Certificate(a) => a.fmt_var("t"),
            Torsion::Inconclusive => "inconclusive".into(),
        }
    }
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = a.gcd(b);
    a.div_exact(&g).expect("gcd divides").mul(b).monic()
}

// Row reduction over F_q, one vector at a time.
struct Echelon {
    fq: Fq,
    // (pivot column, reduced row, combination of the original vectors)
    rows: Vec<(usize, Vec<Fe>, Vec<Fe>)>,
}

impl Echelon {
    // Reduces `v` (with combination `c`); returns the combination when v
    // reduces to 0, else stores the new row.
    fn insert(&mut self, mut v: Vec<Fe>, mut c: Vec<Fe>) -> Option<Vec<Fe>> {
        let fq = self.fq;
        for (p, row, comb) in &self.rows {
            let f = v[*p];
            if f == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = fq.sub(*x, fq.mul(f, y));
            }
            for (x, &y) in c.iter_mut().zip(comb) {
                *x = fq.sub(*x, fq.mul(f, y));
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return Some(c);
        };
        let inv = fq.inv(v[p]).expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = fq.mul(*x, inv);
        }
        for x in c.iter_mut() {
            *x = fq.mul(*x, inv);
        }
        // keep earlier rows reduced at the new pivot
        for (_, row, comb) in self.rows.iter_mut() {
            let f = row[p];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&v) {
                *x = fq.sub(*x, fq.mul(f, y));
            }
            for (x, &y) in comb.iter_mut().zip(&c) {
                *x = fq.sub(*x, fq.mul(f, y));
            }
        }
        self.rows.push((p, v, c));
        None
    }
}

/// Searches for a ∈ F_q[t] of degree ≤ `bound` with ρ_a(w) = 0.
///
/// The iterates ρ_t^j(w) are computed exactly; after clearing a common
/// denominator every polynomial coefficient of every coordinate gives one
/// F_q-linear equation. The first j at which ρ_t^j(w) depends on the
/// earlier iterates yields the monic generator of the annihilator.
pub fn torsion_search(g: &TModuleSpec<ExtElem>, w: &[ExtElem], bound: usize) -> Result<Torsion> {
    let fq = g.ctx().field();
    if w.len() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "point of length {}",
            w.len()
        )));
    }
    let mut pts = vec![w.to_vec()];
    for j in 1..=bound {
        let next = g.apply_t(&pts[j - 1])?;
        pts.push(next);
    }
    let flat: Vec<Vec<&RatFunc>> = pts
        .iter()
        .map(|p| p.iter().flat_map(|x| x.coords().iter()).collect())
        .collect();
    let den = flat
        .iter()
        .flatten()
        .fold(Poly::one(fq), |acc, x| lcm(&acc, x.den()));
    let nums: Vec<Vec<Poly>> = flat
        .iter()
        .map(|p| {
            p.iter()
                .map(|x| x.num().mul(&den.div_exact(x.den()).expect("lcm")))
                .collect()
        })
        .collect();
    let stride = nums
        .iter()
        .flatten()
        .map(|p| p.coeffs().len())
        .max()
        .unwrap_or(0)
        .max(1);
    let mut ech = Echelon {
        fq,
        rows: Vec::new(),
    };
    for (j, p) in nums.iter().enumerate() {
        let mut v = vec![0; stride * p.len()];
        for (k, c) in p.iter().enumerate() {
            v[k * stride..k * stride + c.coeffs().len()].copy_from_slice(c.coeffs());
        }
        let mut comb = vec![0; bound + 1];
        comb[j] = 1;
        if let Some(c) = ech.insert(v, comb) {
            let a = Poly::from_coeffs(fq, c[..=j].to_vec());
            if g.apply_a(&a, w)?.iter().all(|x| x.is_zero()) {
                return Ok(Torsion::Certificate(a));
            }
            return Err(Error::InvalidInput(format!(
                "relation {} does not annihilate the point",
                a.fmt_var("t")
            )));
        }
    }
    Ok(Torsion::Inconclusive)
}
