use super::homopoly::HomoPoly;
use super::projective::{ProjLine, ProjPoint, Vec3};
use crate::error::{Error, Result};
use crate::numfield::{FieldElement, UniPoly};

/// `F` restricted to a line, parametrized as `s·p + t·q` with `(p, q)` the
/// line's canonical spanning vectors.
#[derive(Clone, Debug)]
pub struct LineRestriction {
    pub p: Vec3,
    pub q: Vec3,
    pub degree: u32,
    /// Coefficients `c_i` of `s^i t^{d−i}`, `i = 0..=d`.
    pub binary: Vec<FieldElement>,
}

impl LineRestriction {
    pub fn is_zero(&self) -> bool {
        self.binary.iter().all(FieldElement::is_zero)
    }

    /// Chart `t = 1`: `f(s, 1)`. Roots at `(1:0)`, i.e. at `p`, are lost here.
    pub fn chart_t(&self) -> UniPoly {
        UniPoly::new(self.p[0].context(), self.binary.clone())
    }

    /// Chart `s = 1`: `f(1, t)`, coefficient of `t^j` is `c_{d−j}`.
    pub fn chart_s(&self) -> UniPoly {
        UniPoly::new(
            self.p[0].context(),
            self.binary.iter().rev().cloned().collect(),
        )
    }

    /// Vanishing order at `(s:t) = (1:0)`.
    pub fn multiplicity_at_p(&self) -> u32 {
        self.binary.iter().rev().take_while(|c| c.is_zero()).count() as u32
    }
}

pub fn restrict_to_line(f: &HomoPoly, l: &ProjLine) -> LineRestriction {
    let ctx = f.context();
    let (p, q) = l.spanning_vectors();
    // X_i = s p_i + t q_i with s, t as the variables X, Y of a ternary form
    let zero = FieldElement::zero(ctx);
    let forms: [HomoPoly; 3] =
        std::array::from_fn(|i| HomoPoly::linear(&[p[i].clone(), q[i].clone(), zero.clone()]));
    let g = f.compose(&forms);
    let d = f.degree();
    let binary = (0..=d).map(|i| g.coeff([i, d - i, 0])).collect();
    LineRestriction {
        p,
        q,
        degree: d,
        binary,
    }
}

/// Multiplicities of the distinct points of `C ∩ ℓ` (over the algebraic closure), sorted descending.
pub fn intersection_profile(f: &HomoPoly, l: &ProjLine) -> Result<Vec<u32>> {
    let r = restrict_to_line(f, l);
    if r.is_zero() {
        return Err(Error::LineContainedInCurve);
    }
    let g = r.chart_t();
    let mut out = Vec::new();
    for (part, m) in g.squarefree_decomposition()? {
        for _ in 0..part.degree().unwrap_or(0) {
            out.push(m);
        }
    }
    let at_inf = f.degree() - g.degree().unwrap_or(0) as u32;
    if at_inf > 0 {
        out.push(at_inf);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// `I_Q(C, ℓ)`: order of vanishing of the restriction at `Q`; 0 when `Q ∉ C`.
pub fn intersection_multiplicity(f: &HomoPoly, l: &ProjLine, q: &ProjPoint) -> Result<u32> {
    let (a, b) = l.local_coords(q)?;
    let r = restrict_to_line(f, l);
    if r.is_zero() {
        return Err(Error::LineContainedInCurve);
    }
    if b.is_zero() {
        return Ok(r.multiplicity_at_p());
    }
    let s0 = a.div(&b)?;
    let ctx = f.context();
    let lin = UniPoly::new(ctx, vec![-&s0, FieldElement::one(ctx)]);
    let mut g = r.chart_t();
    let mut m = 0;
    loop {
        let (quo, rem) = g.div_rem(&lin)?;
        if !rem.is_zero() {
            return Ok(m);
        }
        g = quo;
        m += 1;
    }
}

/// `T_Q C`, the line with coefficients `∇F(Q)`.
pub fn tangent_line(f: &HomoPoly, q: &ProjPoint) -> Result<ProjLine> {
    if !f.eval(q.coords()).is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    let g = f.gradient().map(|gi| gi.eval(q.coords()));
    ProjLine::new(g).map_err(|e| match e {
        Error::ZeroVector => Error::SingularPoint,
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{parse_element, FieldContext};

    fn x3z(ctx: &std::sync::Arc<FieldContext>) -> HomoPoly {
        HomoPoly::from_ints(ctx, 4, &[([3, 0, 1], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)])
    }

    #[test]
    fn profiles() {
        let k = FieldContext::cyclotomic(8);
        let fermat = HomoPoly::from_ints(&k, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
        let z0 = ProjLine::from_ints(&k, [0, 0, 1]);
        assert_eq!(
            intersection_profile(&fermat, &z0).unwrap(),
            vec![1, 1, 1, 1]
        );
        assert_eq!(intersection_profile(&x3z(&k), &z0).unwrap(), vec![4]);
        let q = HomoPoly::from_ints(
            &k,
            4,
            &[
                ([4, 0, 0], 1),
                ([0, 4, 0], 1),
                ([0, 0, 4], 1),
                ([2, 2, 0], 1),
            ],
        );
        assert_eq!(
            intersection_profile(&q, &ProjLine::from_ints(&k, [1, 0, 0])).unwrap(),
            vec![1, 1, 1, 1]
        );
    }

    #[test]
    fn multiplicities_and_tangents() {
        let k = FieldContext::cyclotomic(8);
        let f = x3z(&k);
        let z0 = ProjLine::from_ints(&k, [0, 0, 1]);
        let p = ProjPoint::from_ints(&k, [1, 0, 0]);
        assert_eq!(intersection_multiplicity(&f, &z0, &p).unwrap(), 4);
        assert_eq!(tangent_line(&f, &p).unwrap(), z0);
        let fermat = HomoPoly::from_ints(&k, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
        assert_eq!(
            intersection_multiplicity(&fermat, &z0, &ProjPoint::from_ints(&k, [1, 1, 0])).unwrap(),
            0
        );
        // η = ζ_8 satisfies η⁴ = −1
        let eta = parse_element(&k, "z").unwrap();
        let q =
            ProjPoint::new([FieldElement::one(&k), FieldElement::zero(&k), eta.clone()]).unwrap();
        let t = tangent_line(&fermat, &q).unwrap();
        assert_eq!(
            t,
            ProjLine::new([FieldElement::one(&k), FieldElement::zero(&k), eta.pow(3)]).unwrap()
        );
        assert!(intersection_multiplicity(&fermat, &t, &q).unwrap() >= 2);
        assert!(matches!(
            tangent_line(&fermat, &ProjPoint::from_ints(&k, [1, 1, 1])),
            Err(Error::PointNotOnCurve)
        ));
    }
}
