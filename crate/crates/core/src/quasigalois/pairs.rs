use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::decide::{Locus, QGRecord};
use crate::error::{Error, Result};
use crate::geometry::{HomoPoly, Mat3, PlaneCurve, ProjMatrix};

/// Mutual fixing test. Both records must be outer of order at least 2; the
/// pair counts only when the orders share a factor `n ≥ 2`, and then fixing is
/// checked to be symmetric.
pub fn is_g_pair(r1: &QGRecord, r2: &QGRecord) -> Result<bool> {
    if r1.point == r2.point {
        return Err(Error::SamePoint);
    }
    let (Some(g1), Some(g2)) = (&r1.generator, &r2.generator) else {
        return Err(Error::NotEligible(
            "both records need order at least 2".into(),
        ));
    };
    if r1.locus != Locus::Outer || r2.locus != Locus::Outer {
        return Err(Error::NotEligible(
            "both records must lie off the curve".into(),
        ));
    }
    let a = g1.fixes(&r2.point)?;
    let b = g2.fixes(&r1.point)?;
    let n = r1.order.gcd(&r2.order);
    if n < 2 {
        return Ok(false);
    }
    if a != b {
        return Err(Error::InvariantViolation(format!(
            "fixing is not symmetric for {} and {}",
            r1.point, r2.point
        )));
    }
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GPair {
    pub a: usize,
    pub b: usize,
    /// `gcd` of the two orders.
    pub n: u32,
    /// Record at the meet of the two axes, when present in the record set.
    pub third: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairGraph {
    pub pairs: Vec<GPair>,
    pub triples: Vec<[usize; 3]>,
}

pub fn find_pairs_and_triples(records: &[QGRecord]) -> Result<PairGraph> {
    let eligible: Vec<usize> = (0..records.len())
        .filter(|&i| records[i].locus == Locus::Outer && records[i].order >= 2)
        .collect();
    let mut pairs = Vec::new();
    let mut adj = vec![vec![false; records.len()]; records.len()];
    for (x, &i) in eligible.iter().enumerate() {
        for &j in &eligible[x + 1..] {
            if !is_g_pair(&records[i], &records[j])? {
                continue;
            }
            adj[i][j] = true;
            adj[j][i] = true;
            let third = match (records[i].axis(), records[j].axis()) {
                (Some(a1), Some(a2)) if a1 != a2 => {
                    let q = a1.meet(a2)?;
                    records.iter().position(|r| r.point == q)
                }
                _ => None,
            };
            pairs.push(GPair {
                a: i,
                b: j,
                n: records[i].order.gcd(&records[j].order),
                third,
            });
        }
    }
    let mut triples = Vec::new();
    for (x, &i) in eligible.iter().enumerate() {
        for (y, &j) in eligible.iter().enumerate().skip(x + 1) {
            if !adj[i][j] {
                continue;
            }
            for &k in &eligible[y + 1..] {
                if adj[i][k] && adj[j][k] {
                    triples.push([i, j, k]);
                }
            }
        }
    }
    Ok(PairGraph { pairs, triples })
}

/// Every monomial `X^i Y^j Z^k` has `n | i` and `n | j`.
pub fn binomial_form_check(f: &HomoPoly, n: u32) -> bool {
    f.terms().keys().all(|e| e[0] % n == 0 && e[1] % n == 0)
}

/// Support contained in `{X^{2n}, Y^{2n}, Z^{2n}, X^nY^n, Y^nZ^n, Z^nX^n}`.
pub fn sextactic_shape_check(f: &HomoPoly, n: u32) -> bool {
    f.degree() == 2 * n && f.terms().keys().all(|e| e.iter().all(|&x| x % n == 0))
}

/// Moves a G-pair to `(1:0:0)`, `(0:1:0)` (and the meet of the axes to `(0:0:1)`).
/// Returns `M` with `M·P₁ = (1:0:0)`, `M·P₂ = (0:1:0)`, the transformed curve
/// `F∘M⁻¹` and the common order `n`.
pub fn normalize_g_pair(
    c: &PlaneCurve,
    r1: &QGRecord,
    r2: &QGRecord,
) -> Result<(ProjMatrix, PlaneCurve, u32)> {
    if !is_g_pair(r1, r2)? {
        return Err(Error::NotAGPair(format!("{} and {}", r1.point, r2.point)));
    }
    let (a1, a2) = (
        r1.axis().expect("order >= 2"),
        r2.axis().expect("order >= 2"),
    );
    let p3 = a1
        .meet(a2)
        .map_err(|_| Error::NotAGPair("the two axes coincide".into()))?;
    let b = Mat3::from_columns([
        r1.point.coords().clone(),
        r2.point.coords().clone(),
        p3.coords().clone(),
    ]);
    if b.det().is_zero() {
        return Err(Error::NotAGPair("points are collinear".into()));
    }
    let m = ProjMatrix::new(b.inverse()?)?;
    let n = r1.order.gcd(&r2.order);
    let g = c.form().pullback_mat(&b);
    let g = match g.coeff([g.degree(), 0, 0]) {
        lead if !lead.is_zero() && !lead.is_one() => g.scale(&lead.inv()?),
        _ => g,
    };
    if !binomial_form_check(&g, n) {
        return Err(Error::InvariantViolation(format!(
            "normalized G-pair curve is not of the form g(x^{n}, y^{n})"
        )));
    }
    Ok((m, PlaneCurve::trusted(g), n))
}
