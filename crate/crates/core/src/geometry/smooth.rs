//! Exact smoothness test: the three partials of `F` have no common projective zero.
//!
//! After a shear placing `(0:1:0)` in general position, each partial has a
//! constant leading coefficient in `y` on the chart `z = 1`. Their pairwise
//! `y`-resultants are interpolated from specializations; the candidate
//! `x`-coordinates (roots of the gcd of two eliminants) are then examined by a
//! gcd computation over `K[x]/(h)` that splits `h` whenever a leading
//! coefficient turns out to be a zero divisor. The line `z = 0` is handled
//! separately as a binary problem.

use std::sync::Arc;

use super::homopoly::HomoPoly;
use super::projective::Mat3;
use crate::error::Result;
use crate::numfield::{FieldContext, FieldElement, UniPoly};

/// Polynomial in `y` whose coefficients are polynomials in `x`.
type BiPoly = Vec<UniPoly>;

pub fn is_smooth(f: &HomoPoly) -> Result<bool> {
    let f = if f.context().is_quadratic() && f.in_base() {
        f.change_context(&f.context().base())?
    } else {
        f.clone()
    };
    let d = f.degree();
    if d <= 1 {
        return Ok(!f.is_zero());
    }
    let grad = f.gradient();
    if grad.iter().any(HomoPoly::is_zero) {
        return Ok(false);
    }
    let ctx = f.context().clone();
    let Some((a, b)) = general_position(&f, &grad, &ctx) else {
        return Ok(false);
    };
    let int = |v: i64| FieldElement::from_int(&ctx, v);
    let m = Mat3::from_rows([
        [int(1), int(a), int(0)],
        [int(0), int(1), int(0)],
        [int(0), int(b), int(1)],
    ]);
    let g = f.pullback_mat(&m);
    let grad = g.gradient();
    if singular_on_line_at_infinity(&grad, &ctx)? {
        return Ok(false);
    }
    Ok(!singular_in_chart(&grad, d, &ctx)?)
}

/// Finds `(a, b)` with `F_X`, `F_Z`, `F` all nonzero at `(a, 1, b)`. The product of
/// the three has degree below `3d`, so a grid of side `3d + 1` suffices.
fn general_position(
    f: &HomoPoly,
    grad: &[HomoPoly; 3],
    ctx: &Arc<FieldContext>,
) -> Option<(i64, i64)> {
    let side = 3 * f.degree() as i64 + 1;
    for r in 0..side {
        for a in 0..=r {
            for b in [r - a, -(r - a)] {
                let pt = [
                    FieldElement::from_int(ctx, a),
                    FieldElement::one(ctx),
                    FieldElement::from_int(ctx, b),
                ];
                if !f.eval(&pt).is_zero()
                    && !grad[0].eval(&pt).is_zero()
                    && !grad[2].eval(&pt).is_zero()
                {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

fn singular_on_line_at_infinity(grad: &[HomoPoly; 3], ctx: &Arc<FieldContext>) -> Result<bool> {
    let zero = FieldElement::zero(ctx);
    let one = FieldElement::one(ctx);
    let e1 = [one.clone(), zero.clone(), zero.clone()];
    if grad.iter().all(|g| g.eval(&e1).is_zero()) {
        return Ok(true);
    }
    // chart y = 1 on z = 0
    let mut acc = UniPoly::zero(ctx);
    for g in grad {
        let mut c = vec![zero.clone(); g.degree() as usize + 1];
        for (e, v) in g.terms() {
            if e[2] == 0 {
                c[e[0] as usize] = v.clone();
            }
        }
        acc = acc.gcd(&UniPoly::new(ctx, c))?;
    }
    Ok(acc.is_zero() || !acc.is_constant())
}

fn to_bipoly(g: &HomoPoly, ctx: &Arc<FieldContext>) -> BiPoly {
    let d = g.degree() as usize;
    let mut rows = vec![vec![FieldElement::zero(ctx); d + 1]; d + 1];
    for (e, v) in g.terms() {
        rows[e[1] as usize][e[0] as usize] = v.clone();
    }
    let mut out: BiPoly = rows.into_iter().map(|r| UniPoly::new(ctx, r)).collect();
    while out.last().is_some_and(UniPoly::is_zero) {
        out.pop();
    }
    out
}

fn specialize(p: &BiPoly, x: &FieldElement, ctx: &Arc<FieldContext>) -> UniPoly {
    UniPoly::new(ctx, p.iter().map(|c| c.eval(x)).collect())
}

fn singular_in_chart(grad: &[HomoPoly; 3], d: u32, ctx: &Arc<FieldContext>) -> Result<bool> {
    let polys: Vec<BiPoly> = grad.iter().map(|g| to_bipoly(g, ctx)).collect();
    let npts = ((d - 1) * (d - 1) + 1) as i64;
    let xs: Vec<FieldElement> = (0..npts).map(|i| FieldElement::from_int(ctx, i)).collect();
    let mut r12 = Vec::with_capacity(xs.len());
    let mut r13 = Vec::with_capacity(xs.len());
    for x in &xs {
        let s: Vec<UniPoly> = polys.iter().map(|p| specialize(p, x, ctx)).collect();
        r12.push(s[0].resultant(&s[1])?);
        r13.push(s[0].resultant(&s[2])?);
    }
    let r12 = UniPoly::interpolate(ctx, &xs, &r12)?;
    let r13 = UniPoly::interpolate(ctx, &xs, &r13)?;
    // a common factor of two partials means a curve of common zeros, which a
    // smooth curve's gradient map cannot have
    if r12.is_zero() || r13.is_zero() {
        return Ok(true);
    }
    let h = r12.gcd(&r13)?;
    if h.is_constant() {
        return Ok(false);
    }
    let h = h.squarefree_part()?;
    let mut work = vec![h];
    while let Some(h) = work.pop() {
        match common_root_mod(&h, &polys)? {
            Split::Factors(a, b) => {
                work.push(a);
                work.push(b);
            }
            Split::Done(found) => {
                if found {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

enum Split {
    Factors(UniPoly, UniPoly),
    Done(bool),
}

fn reduce(p: &BiPoly, h: &UniPoly) -> Result<BiPoly> {
    let mut out = p
        .iter()
        .map(|c| c.div_rem(h).map(|(_, r)| r))
        .collect::<Result<BiPoly>>()?;
    while out.last().is_some_and(UniPoly::is_zero) {
        out.pop();
    }
    Ok(out)
}

/// Inverse of `c` modulo `h`, or a nontrivial factorization of `h`.
fn invert_mod(c: &UniPoly, h: &UniPoly) -> Result<std::result::Result<UniPoly, Split>> {
    let (g, s, _) = c.ext_gcd(h)?;
    if g.is_constant() {
        return Ok(Ok(s.div_rem(h)?.1));
    }
    let other = h.div_rem(&g)?.0;
    Ok(Err(Split::Factors(g, other)))
}

/// Decides, uniformly over the roots of `h` (or splits `h`), whether the three
/// polynomials in `y` share a root.
fn common_root_mod(h: &UniPoly, polys: &[BiPoly]) -> Result<Split> {
    let mut a = reduce(&polys[0], h)?;
    for p in &polys[1..] {
        let mut b = reduce(p, h)?;
        while !b.is_empty() {
            let inv = match invert_mod(b.last().expect("nonempty"), h)? {
                Ok(inv) => inv,
                Err(split) => return Ok(split),
            };
            while a.len() >= b.len() {
                let shift = a.len() - b.len();
                let c = a.last().expect("nonempty").mul(&inv).div_rem(h)?.1;
                for (j, bj) in b.iter().enumerate() {
                    a[shift + j] = a[shift + j].sub(&c.mul(bj)).div_rem(h)?.1;
                }
                while a.last().is_some_and(UniPoly::is_zero) {
                    a.pop();
                }
            }
            std::mem::swap(&mut a, &mut b);
        }
    }
    let Some(top) = a.last() else {
        return Ok(Split::Done(true));
    };
    match invert_mod(top, h)? {
        Ok(_) => Ok(Split::Done(a.len() > 1)),
        Err(split) => Ok(split),
    }
}
