use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::homology::Homology;
use crate::error::{Error, Result};
use crate::geometry::{
    intersection_profile, restrict_to_line, unit, HomoPoly, Mat3, PlaneCurve, ProjLine, ProjMatrix,
    ProjPoint,
};
use crate::numfield::{root_of_unity, FieldElement, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Locus {
    /// On the curve.
    Inner,
    /// Off the curve.
    Outer,
}

/// A point with its decided `|G[P]|`.
#[derive(Clone, Debug)]
pub struct QGRecord {
    pub point: ProjPoint,
    pub locus: Locus,
    pub order: u32,
    pub generator: Option<Homology>,
}

impl QGRecord {
    pub fn axis(&self) -> Option<&ProjLine> {
        self.generator.as_ref().map(|g| &g.axis)
    }

    pub fn is_quasi_galois(&self) -> bool {
        self.order >= 2
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "point": self.point.to_json(),
            "order": self.order,
            "locus": self.locus,
            "axis": self.axis().map(ProjLine::to_json),
            "generator": self.generator.as_ref().map(|g| g.matrix.to_json()),
        })
    }
}

/// Degree of the projection from `p`: `d` off the curve, `d − 1` on it.
pub fn projection_degree(c: &PlaneCurve, p: &ProjPoint) -> (Locus, u32) {
    if c.contains(p) {
        (Locus::Inner, c.degree() - 1)
    } else {
        (Locus::Outer, c.degree())
    }
}

/// `T = [P | e_j | e_k]` with `j < k` the indices other than `P`'s pivot.
pub(crate) fn point_to_origin(p: &ProjPoint) -> Mat3 {
    let ctx = p.context();
    let (j, k) = match p.pivot() {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    Mat3::from_columns([p.coords().clone(), unit(ctx, j), unit(ctx, k)])
}

/// Splits a form as `Σ X^i A_{d−i}(Y, Z)`; entry `i` holds `A_{d−i}` (with `X`-exponent 0).
pub(crate) fn x_layers(g: &HomoPoly) -> Vec<HomoPoly> {
    let d = g.degree();
    let mut layers: Vec<Vec<([u32; 3], FieldElement)>> = vec![Vec::new(); d as usize + 1];
    for (e, c) in g.terms() {
        layers[e[0] as usize].push(([0, e[1], e[2]], c.clone()));
    }
    layers
        .into_iter()
        .enumerate()
        .map(|(i, t)| HomoPoly::new(g.context(), d - i as u32, t).expect("consistent degrees"))
        .collect()
}

/// Binary form in `Y, Z` as a polynomial in `y` (chart `Z = 1`).
fn chart_y(a: &HomoPoly) -> UniPoly {
    let ctx = a.context();
    let mut c = vec![FieldElement::zero(ctx); a.degree() as usize + 1];
    for (e, v) in a.terms() {
        c[e[1] as usize] = v.clone();
    }
    UniPoly::new(ctx, c)
}

/// The unique order-`n` homology centred at `p` with eigenvalue `ζ_n`, if it
/// preserves the curve.
pub fn solve_homology(c: &PlaneCurve, p: &ProjPoint, n: u32) -> Result<Option<Homology>> {
    let (_, degree) = projection_degree(c, p);
    if n < 2 || degree % n != 0 {
        return Err(Error::OrderNotDividing { n, degree });
    }
    let ctx = c.context().clone();
    let zeta = root_of_unity(&ctx, n)?;
    let t = point_to_origin(p);
    let g = c.form().pullback_mat(&t);
    let layers = x_layers(&g);
    let Some(m) = layers.iter().rposition(|a| !a.is_zero()) else {
        return Ok(None);
    };
    if m == 0 {
        return Ok(None);
    }
    let top = chart_y(&layers[m]).scale(&FieldElement::from_int(&ctx, m as i64));
    let next = chart_y(&layers[m - 1]).scale(&(&zeta - &FieldElement::one(&ctx)));
    let Some(q) = next.div_exact(&top)? else {
        return Ok(None);
    };
    if q.degree().unwrap_or(0) > 1 {
        return Ok(None);
    }
    let (beta, gamma) = (q.coeff(1), q.coeff(0));
    let zero = FieldElement::zero(&ctx);
    let one = FieldElement::one(&ctx);
    let s = Mat3::from_rows([
        [zeta.clone(), beta.clone(), gamma.clone()],
        [zero.clone(), one.clone(), zero.clone()],
        [zero.clone(), zero.clone(), one.clone()],
    ]);
    let moved = g.pullback_mat(&s);
    if moved != g.scale(&zeta.pow(m as u64)) {
        return Ok(None);
    }
    let t_inv = t.inverse()?;
    let h = t.mul(&s).mul(&t_inv);
    let axis_row = t_inv.apply_row(&[&zeta - &one, beta, gamma]);
    let homology = Homology {
        center: p.clone(),
        axis: ProjLine::new(axis_row)?,
        zeta,
        matrix: ProjMatrix::new(h)?,
        order: n,
    };
    Ok(Some(homology))
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|k| n.is_multiple_of(*k)).collect()
}

/// Decides `|G[P]|` by testing every admissible order; `G[P]` is cyclic, so the
/// successes must be exactly the divisors of the maximum.
pub fn decide_gp(c: &PlaneCurve, p: &ProjPoint) -> Result<QGRecord> {
    let (locus, degree) = projection_degree(c, p);
    let mut found: Vec<(u32, Homology)> = Vec::new();
    for n in divisors(degree).into_iter().filter(|&n| n >= 2) {
        if let Some(h) = solve_homology(c, p, n)? {
            found.push((n, h));
        }
    }
    let order = found.last().map_or(1, |(n, _)| *n);
    let expected: Vec<u32> = divisors(order).into_iter().filter(|&n| n >= 2).collect();
    let got: Vec<u32> = found.iter().map(|(n, _)| *n).collect();
    if got != expected {
        return Err(Error::InvariantViolation(format!(
            "G[{p}] not cyclic: orders {got:?} admit elements but the divisors of {order} are {expected:?}"
        )));
    }
    Ok(QGRecord {
        point: p.clone(),
        locus,
        order,
        generator: found.pop().map(|(_, h)| h),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisDiagnostics {
    pub profile: Vec<u32>,
    /// The axis meets the curve in `d` distinct points.
    pub profile_simple: bool,
    /// The polar of the center vanishes identically on the axis.
    pub polar_vanishes: bool,
}

/// Whether the polar curve of `p` vanishes identically on `l`.
pub fn polar_vanishes_on(f: &HomoPoly, p: &ProjPoint, l: &ProjLine) -> bool {
    restrict_to_line(&f.polar(p.coords()), l).is_zero()
}

pub fn axis_diagnostics(c: &PlaneCurve, r: &QGRecord) -> Result<AxisDiagnostics> {
    let h = r
        .generator
        .as_ref()
        .filter(|_| r.locus == Locus::Outer)
        .ok_or_else(|| {
            Error::NotEligible("axis diagnostics need an outer record of order at least 2".into())
        })?;
    let profile = intersection_profile(c.form(), &h.axis)?;
    Ok(AxisDiagnostics {
        profile_simple: profile.iter().all(|&m| m == 1) && profile.len() == c.degree() as usize,
        polar_vanishes: polar_vanishes_on(c.form(), &r.point, &h.axis),
        profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::FieldContext;

    fn hessian(k: &std::sync::Arc<FieldContext>) -> PlaneCurve {
        PlaneCurve::new(HomoPoly::from_ints(
            k,
            6,
            &[
                ([6, 0, 0], 1),
                ([0, 6, 0], 1),
                ([0, 0, 6], 1),
                ([3, 3, 0], -10),
                ([0, 3, 3], -10),
                ([3, 0, 3], -10),
            ],
        ))
        .unwrap()
    }

    #[test]
    fn hessian_vertex_has_diagonal_generator() {
        let k = FieldContext::cyclotomic(3);
        let c = hessian(&k);
        let p = ProjPoint::from_ints(&k, [1, 0, 0]);
        let h = solve_homology(&c, &p, 3).unwrap().unwrap();
        let w = root_of_unity(&k, 3).unwrap();
        let expected = ProjMatrix::new(Mat3::diag([
            w,
            FieldElement::one(&k),
            FieldElement::one(&k),
        ]))
        .unwrap();
        assert_eq!(h.matrix, expected);
        assert_eq!(h.axis, ProjLine::from_ints(&k, [1, 0, 0]));
        let r = decide_gp(&c, &ProjPoint::from_ints(&k, [1, 1, 1])).unwrap();
        assert_eq!((r.order, r.locus), (3, Locus::Outer));
        let d = axis_diagnostics(&c, &decide_gp(&c, &p).unwrap()).unwrap();
        assert!(d.profile_simple && d.polar_vanishes);
    }

    #[test]
    fn fermat_orders() {
        let k = FieldContext::cyclotomic(8);
        let c = PlaneCurve::new(HomoPoly::from_ints(
            &k,
            4,
            &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)],
        ))
        .unwrap();
        let r = decide_gp(&c, &ProjPoint::from_ints(&k, [1, 0, 0])).unwrap();
        assert_eq!((r.order, r.locus), (4, Locus::Outer));
        assert!(matches!(
            solve_homology(&c, &ProjPoint::from_ints(&k, [1, 0, 0]), 5),
            Err(Error::OrderNotDividing { n: 5, degree: 4 })
        ));
        let r = decide_gp(&c, &ProjPoint::from_ints(&k, [1, 1, 0])).unwrap();
        assert_eq!(r.order, 2);
        // the centre lies on X-Y=0, so the axis is X+Y=0
        assert_eq!(r.axis(), Some(&ProjLine::from_ints(&k, [1, 1, 0])));
        let r = decide_gp(&c, &ProjPoint::from_ints(&k, [1, 2, 3])).unwrap();
        assert_eq!(r.order, 1);
        let f = c.form();
        let p = ProjPoint::from_ints(&k, [1, 2, 3]);
        assert!(!polar_vanishes_on(
            f,
            &p,
            &ProjLine::from_ints(&k, [1, 0, 0])
        ));
    }
}
