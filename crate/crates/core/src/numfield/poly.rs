use std::fmt;
use std::sync::Arc;

use super::{FieldContext, FieldElement};
use crate::error::{Error, Result};

/// Dense univariate polynomial over a [`FieldContext`], low degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    ctx: Arc<FieldContext>,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(ctx: &Arc<FieldContext>, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        UniPoly {
            ctx: ctx.clone(),
            coeffs,
        }
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        Self::new(ctx, Vec::new())
    }

    pub fn constant(c: FieldElement) -> Self {
        let ctx = c.context().clone();
        Self::new(&ctx, vec![c])
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::constant(FieldElement::one(ctx))
    }

    /// `t^k`.
    pub fn monomial(ctx: &Arc<FieldContext>, k: usize) -> Self {
        let mut c = vec![FieldElement::zero(ctx); k + 1];
        c[k] = FieldElement::one(ctx);
        Self::new(ctx, c)
    }

    pub fn from_ints(ctx: &Arc<FieldContext>, c: &[i64]) -> Self {
        Self::new(
            ctx,
            c.iter().map(|&v| FieldElement::from_int(ctx, v)).collect(),
        )
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.ctx))
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            &self.ctx,
            (0..n).map(|i| self.coeff(i) + o.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            &self.ctx,
            (0..n).map(|i| self.coeff(i) - o.coeff(i)).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ctx);
        }
        let mut out = vec![FieldElement::zero(&self.ctx); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Self::new(&self.ctx, out)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(&self.ctx, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            &self.ctx,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(&self.ctx);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Euclidean division; fails only if the leading coefficient of `d` is not invertible.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(&self.ctx), self.clone()));
        }
        let inv = d.lc().inv()?;
        let mut q = vec![FieldElement::zero(&self.ctx); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] -= &(&c * dj);
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(&self.ctx, q), Self::new(&self.ctx, r)))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        let (q, r) = self.div_rem(d)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.scale(&self.lc().inv()?))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b)?.1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, o: &Self) -> Result<(Self, Self, Self)> {
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(ctx), Self::zero(ctx));
        let (mut t0, mut t1) = (Self::zero(ctx), Self::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return Ok((r0, s0, t0));
        }
        let inv = r0.lc().inv()?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Resultant by Euclidean remainder sequence.
    pub fn resultant(&self, o: &Self) -> Result<FieldElement> {
        let ctx = self.ctx.clone();
        let (mut f, mut g) = (self.clone(), o.clone());
        let mut acc = FieldElement::one(&ctx);
        loop {
            let (Some(m), Some(n)) = (f.degree(), g.degree()) else {
                return Ok(FieldElement::zero(&ctx));
            };
            if n == 0 {
                return Ok(acc * g.lc().pow(m as u64));
            }
            if m == 0 {
                return Ok(acc * f.lc().pow(n as u64));
            }
            let r = f.div_rem(&g)?.1;
            let Some(k) = r.degree() else {
                return Ok(FieldElement::zero(&ctx));
            };
            // res(f,g) = (-1)^{mn} lc(g)^{m-k} res(g, r)
            if (m * n) % 2 == 1 {
                acc = -acc;
            }
            acc = acc * g.lc().pow((m - k) as u64);
            f = g;
            g = r;
        }
    }

    /// Yun's algorithm: `f = lc · ∏ gᵢ^{mᵢ}` with monic squarefree pairwise coprime `gᵢ`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, u32)>> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let fp = self.derivative();
        let a0 = self.gcd(&fp)?;
        let mut b = self.div_rem(&a0)?.0;
        let c = fp.div_rem(&a0)?.0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d)?;
            let nb = b.div_rem(&a)?.0;
            let nc = d.div_rem(&a)?.0;
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            d = nc.sub(&nb.derivative());
            b = nb;
            i += 1;
        }
        Ok(out)
    }

    pub fn squarefree_part(&self) -> Result<Self> {
        let mut p = Self::one(&self.ctx);
        for (g, _) in self.squarefree_decomposition()? {
            p = p.mul(&g);
        }
        Ok(p)
    }

    /// Newton interpolation through `(xs[i], ys[i])`.
    pub fn interpolate(
        ctx: &Arc<FieldContext>,
        xs: &[FieldElement],
        ys: &[FieldElement],
    ) -> Result<Self> {
        let n = xs.len();
        let mut dd: Vec<FieldElement> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &xs[i] - &xs[i - j];
                dd[i] = num.div(&den)?;
            }
        }
        let mut p = Self::zero(ctx);
        for i in (0..n).rev() {
            let lin = Self::new(ctx, vec![-&xs[i], FieldElement::one(ctx)]);
            p = p.mul(&lin).add(&Self::constant(dd[i].clone()));
        }
        Ok(p)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*t^{k}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Arc<FieldContext> {
        FieldContext::cyclotomic(1)
    }

    #[test]
    fn resultant_and_gcd_examples() {
        let k = q();
        let a = UniPoly::from_ints(&k, &[-1, 1]);
        let b = UniPoly::from_ints(&k, &[1, 1]);
        assert_eq!(a.resultant(&b).unwrap(), FieldElement::from_int(&k, 2));
        let f = UniPoly::from_ints(&k, &[-1, 0, 1]);
        let g = UniPoly::from_ints(&k, &[1, -2, 1]);
        assert_eq!(f.gcd(&g).unwrap(), UniPoly::from_ints(&k, &[-1, 1]));
        assert!(f.resultant(&f).unwrap().is_zero());
    }

    #[test]
    fn resultant_matches_root_product() {
        // res((t-1)(t-2), t-5) = (1-5)(2-5) = 12
        let k = q();
        let f = UniPoly::from_ints(&k, &[2, -3, 1]);
        let g = UniPoly::from_ints(&k, &[-5, 1]);
        assert_eq!(f.resultant(&g).unwrap(), FieldElement::from_int(&k, 12));
        assert_eq!(g.resultant(&f).unwrap(), FieldElement::from_int(&k, 12));
        // res(t^2+1, t^3) = (i^3)(-i)^3 = 1
        let f = UniPoly::from_ints(&k, &[1, 0, 1]);
        let g = UniPoly::monomial(&k, 3);
        assert_eq!(f.resultant(&g).unwrap(), FieldElement::from_int(&k, 1));
        assert_eq!(g.resultant(&f).unwrap(), FieldElement::from_int(&k, 1));
    }

    #[test]
    fn yun_examples() {
        let k = q();
        let f = UniPoly::from_ints(&k, &[-1, 0, 1]);
        assert_eq!(f.squarefree_decomposition().unwrap(), vec![(f.clone(), 1)]);
        let t4 = UniPoly::monomial(&k, 4);
        assert_eq!(
            t4.squarefree_decomposition().unwrap(),
            vec![(UniPoly::monomial(&k, 1), 4)]
        );
        let a = UniPoly::from_ints(&k, &[1, 0, 1]);
        let b = UniPoly::from_ints(&k, &[-1, 1]);
        let p = a.mul(&b).mul(&b).scale(&FieldElement::from_int(&k, 3));
        assert_eq!(p.squarefree_decomposition().unwrap(), vec![(a, 1), (b, 2)]);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let k = FieldContext::cyclotomic(3);
        let w = FieldElement::zeta_power(&k, 1);
        let p = UniPoly::new(&k, vec![w.clone(), FieldElement::from_int(&k, 2), w.pow(2)]);
        let xs: Vec<_> = (0..3).map(|i| FieldElement::from_int(&k, i)).collect();
        let ys: Vec<_> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(UniPoly::interpolate(&k, &xs, &ys).unwrap(), p);
    }
}
