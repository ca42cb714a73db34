use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::decide::{decide_gp, point_to_origin, x_layers, Locus, QGRecord};
use super::pairs::{find_pairs_and_triples, GPair, PairGraph};
use crate::error::{Error, Result};
use crate::geometry::{
    intersection_multiplicity, intersection_profile, tangent_line, Mat3, PlaneCurve, ProjLine,
    ProjMatrix, ProjPoint,
};
use crate::numfield::{FieldElement, UniPoly};

pub const DEFAULT_CAP: usize = 10_000;

/// Decides every seed, then repeatedly applies each discovered generator to
/// each discovered quasi-Galois point until nothing new appears. Returns the
/// records of order at least 2, sorted by point.
pub fn orbit_expand(c: &PlaneCurve, seeds: &[ProjPoint], cap: usize) -> Result<Vec<QGRecord>> {
    let mut decided: BTreeMap<ProjPoint, QGRecord> = BTreeMap::new();
    let mut qg: Vec<ProjPoint> = Vec::new();
    let mut gens: Vec<ProjMatrix> = Vec::new();
    let mut frontier: BTreeSet<ProjPoint> = seeds.iter().cloned().collect();
    while !frontier.is_empty() {
        if decided.len() + frontier.len() > cap {
            return Err(Error::ClosureCapExceeded { cap });
        }
        let batch: Vec<ProjPoint> = frontier.into_iter().collect();
        let fresh = batch
            .par_iter()
            .map(|p| decide_gp(c, p))
            .collect::<Result<Vec<_>>>()?;
        let old_points = qg.len();
        let old_gens = gens.len();
        for r in fresh {
            if let Some(h) = &r.generator {
                qg.push(r.point.clone());
                gens.push(h.matrix.clone());
            }
            decided.insert(r.point.clone(), r);
        }
        let mut next = BTreeSet::new();
        for (gi, g) in gens.iter().enumerate() {
            let start = if gi >= old_gens { 0 } else { old_points };
            for p in &qg[start..] {
                let q = g.apply(p)?;
                if !decided.contains_key(&q) {
                    next.insert(q);
                }
            }
        }
        frontier = next;
    }
    Ok(decided
        .into_values()
        .filter(QGRecord::is_quasi_galois)
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// The count meets a proven upper bound, so the enumeration is complete.
    Certified,
    /// Below the bound but one of the values the classification allows.
    TheoryTableOnly,
    BoundGap,
}

/// Upper bound on outer points of order `order` (or at least `order` when
/// `at_least`), with the allowed values of `δ′[order]`.
struct CountRule {
    order: u32,
    bound: usize,
    at_least: bool,
    table: &'static [usize],
}

fn count_rule(degree: u32) -> Option<CountRule> {
    match degree {
        // flex formula: each order-3 outer point has d flexes on its axis, 3d(d−2) = 72 in total
        6 => Some(CountRule {
            order: 3,
            bound: 12,
            at_least: true,
            table: &[0, 1, 2, 3, 4, 8, 12],
        }),
        4 => Some(CountRule {
            order: 2,
            bound: 21,
            at_least: false,
            table: &[0, 1, 3, 5, 6, 9, 12, 21],
        }),
        _ => None,
    }
}

pub fn certify(
    degree: u32,
    delta_prime: &BTreeMap<u32, usize>,
) -> Result<(Certification, Option<usize>)> {
    let Some(rule) = count_rule(degree) else {
        return Ok((Certification::BoundGap, None));
    };
    let bounded: usize = delta_prime
        .iter()
        .filter(|(&n, _)| {
            if rule.at_least {
                n >= rule.order
            } else {
                n == rule.order
            }
        })
        .map(|(_, &k)| k)
        .sum();
    if bounded > rule.bound {
        return Err(Error::InvariantViolation(format!(
            "{bounded} outer points exceed the bound {} for degree {degree}",
            rule.bound
        )));
    }
    let exact = delta_prime.get(&rule.order).copied().unwrap_or(0);
    let status = if bounded == rule.bound {
        Certification::Certified
    } else if rule.table.contains(&exact) {
        Certification::TheoryTableOnly
    } else {
        Certification::BoundGap
    };
    Ok((status, Some(rule.bound)))
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub cap: usize,
    pub curve_id: String,
    pub check_invariants: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            cap: DEFAULT_CAP,
            curve_id: "curve".into(),
            check_invariants: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CensusReport {
    pub curve_id: String,
    pub degree: u32,
    /// The curve the records refer to; differs from the input when `λ` was specialized.
    pub curve: PlaneCurve,
    pub records: Vec<QGRecord>,
    pub delta: BTreeMap<u32, usize>,
    pub delta_prime: BTreeMap<u32, usize>,
    pub graph: PairGraph,
    pub certification: Certification,
    pub bound: Option<usize>,
    /// Base-field value substituted for `λ` after a zero divisor showed `λ² − c` splits.
    pub lambda_specialization: Option<FieldElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointEntry {
    pub point: [String; 3],
    pub order: u32,
    pub locus: Locus,
    pub axis: Option<[String; 3]>,
}

/// The serialized form of a [`CensusReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub curve_id: String,
    pub degree: u32,
    pub delta_prime: BTreeMap<u32, usize>,
    pub delta: BTreeMap<u32, usize>,
    pub points: Vec<PointEntry>,
    pub pairs: Vec<GPair>,
    pub triples: Vec<[usize; 3]>,
    pub certification: Certification,
    pub bound: Option<usize>,
    pub lambda_specialization: Option<String>,
}

fn strings(v: &[FieldElement; 3]) -> [String; 3] {
    std::array::from_fn(|i| v[i].to_string())
}

impl CensusReport {
    /// `δ′[≥ n]`.
    pub fn delta_prime_at_least(&self, n: u32) -> usize {
        self.delta_prime.range(n..).map(|(_, k)| k).sum()
    }

    pub fn delta_at_least(&self, n: u32) -> usize {
        self.delta.range(n..).map(|(_, k)| k).sum()
    }

    pub fn outer(&self, n: u32) -> impl Iterator<Item = &QGRecord> {
        self.records
            .iter()
            .filter(move |r| r.locus == Locus::Outer && r.order == n)
    }

    pub fn summary(&self) -> CensusSummary {
        CensusSummary {
            curve_id: self.curve_id.clone(),
            degree: self.degree,
            delta_prime: self.delta_prime.clone(),
            delta: self.delta.clone(),
            points: self
                .records
                .iter()
                .map(|r| PointEntry {
                    point: strings(r.point.coords()),
                    order: r.order,
                    locus: r.locus,
                    axis: r.axis().map(|a| strings(a.coords())),
                })
                .collect(),
            pairs: self.graph.pairs.clone(),
            triples: self.graph.triples.clone(),
            certification: self.certification,
            bound: self.bound,
            lambda_specialization: self.lambda_specialization.as_ref().map(ToString::to_string),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.summary()).expect("summary is plain data")
    }
}

pub fn census(c: &PlaneCurve, seeds: &[ProjPoint]) -> Result<CensusReport> {
    census_with(c, seeds, &CensusOptions::default())
}

/// Runs the census; if the formal root `λ` turns out to be a zero divisor,
/// substitutes the discovered base-field square root and starts over.
pub fn census_with(
    c: &PlaneCurve,
    seeds: &[ProjPoint],
    opts: &CensusOptions,
) -> Result<CensusReport> {
    match census_once(c, seeds, opts, None) {
        Err(Error::ZeroDivisorEncountered { root }) => {
            let curve = c.specialize_lambda(&root)?;
            let seeds = seeds
                .iter()
                .map(|p| p.specialize_lambda(&root))
                .collect::<Result<Vec<_>>>()?;
            census_once(&curve, &seeds, opts, Some(root))
        }
        other => other,
    }
}

fn census_once(
    c: &PlaneCurve,
    seeds: &[ProjPoint],
    opts: &CensusOptions,
    lambda_specialization: Option<FieldElement>,
) -> Result<CensusReport> {
    let records = orbit_expand(c, seeds, opts.cap)?;
    let mut delta = BTreeMap::new();
    let mut delta_prime = BTreeMap::new();
    for r in &records {
        let tally = match r.locus {
            Locus::Inner => &mut delta,
            Locus::Outer => &mut delta_prime,
        };
        *tally.entry(r.order).or_insert(0) += 1;
    }
    let graph = find_pairs_and_triples(&records)?;
    if opts.check_invariants {
        check_invariants(c, &records)?;
    }
    let (certification, bound) = certify(c.degree(), &delta_prime)?;
    Ok(CensusReport {
        curve_id: opts.curve_id.clone(),
        degree: c.degree(),
        curve: c.clone(),
        records,
        delta,
        delta_prime,
        graph,
        certification,
        bound,
        lambda_specialization,
    })
}

/// Structural checks every census must satisfy; any failure is a bug.
pub fn check_invariants(c: &PlaneCurve, records: &[QGRecord]) -> Result<()> {
    generator_distinctness(records)?;
    fixed_locus_disjointness(c, records)?;
    for r in records.iter().filter(|r| r.locus == Locus::Inner) {
        inner_tangency(c, r)?;
    }
    if c.degree() == 4 {
        for r in records.iter().filter(|r| r.locus == Locus::Outer) {
            quartic_pencil(c, r, records)?;
        }
    }
    Ok(())
}

/// Generators have the stated order and nontrivial elements of `G[P]` at
/// distinct points never coincide.
pub fn generator_distinctness(records: &[QGRecord]) -> Result<()> {
    let mut owner: HashMap<ProjMatrix, &ProjPoint> = HashMap::new();
    for r in records {
        let Some(h) = &r.generator else { continue };
        if h.order != r.order || h.center != r.point {
            return Err(Error::InvariantViolation(format!(
                "generator at {} is inconsistent",
                r.point
            )));
        }
        let powers = h.nontrivial_powers()?;
        if powers.iter().any(ProjMatrix::is_identity)
            || !powers
                .last()
                .expect("order >= 2")
                .mul(&h.matrix)?
                .is_identity()
        {
            return Err(Error::InvariantViolation(format!(
                "generator at {} does not have order {}",
                r.point, r.order
            )));
        }
        for m in powers {
            if let Some(other) = owner.insert(m, &r.point) {
                return Err(Error::InvariantViolation(format!(
                    "G[{other}] and G[{}] share a nontrivial element",
                    r.point
                )));
            }
        }
    }
    Ok(())
}

/// For outer quasi-Galois points `P₁ ≠ P₂`, `({P₁} ∪ axis₁) ∩ ({P₂} ∪ axis₂)` misses the curve.
pub fn fixed_locus_disjointness(c: &PlaneCurve, records: &[QGRecord]) -> Result<()> {
    let outer: Vec<&QGRecord> = records
        .iter()
        .filter(|r| r.locus == Locus::Outer && r.order >= 2)
        .collect();
    for (i, r1) in outer.iter().enumerate() {
        for r2 in &outer[i + 1..] {
            let (a1, a2) = (
                r1.axis().expect("order >= 2"),
                r2.axis().expect("order >= 2"),
            );
            if a1 == a2 {
                return Err(Error::InvariantViolation(format!(
                    "{} and {} share the axis {a1}",
                    r1.point, r2.point
                )));
            }
            let mut common = vec![a1.meet(a2)?];
            if r1.point.lies_on(a2) {
                common.push(r1.point.clone());
            }
            if r2.point.lies_on(a1) {
                common.push(r2.point.clone());
            }
            if let Some(q) = common.iter().find(|q| c.contains(q)) {
                return Err(Error::InvariantViolation(format!(
                    "fixed loci of {} and {} meet on the curve at {q}",
                    r1.point, r2.point
                )));
            }
        }
    }
    Ok(())
}

/// An inner point of order `n` has `I_P(C, T_P C) ≡ 1 (mod n)`.
pub fn inner_tangency(c: &PlaneCurve, r: &QGRecord) -> Result<u32> {
    let t = tangent_line(c.form(), &r.point)?;
    let i = intersection_multiplicity(c.form(), &t, &r.point)?;
    if r.order >= 2 && i % r.order != 1 % r.order {
        return Err(Error::InvariantViolation(format!(
            "inner point {} of order {} has tangent multiplicity {i}",
            r.point, r.order
        )));
    }
    Ok(i)
}

/// For a quartic and an outer point of order 2: in standard form
/// `c·X⁴ + X²A₂ + A₄`, the discriminant `A₂² − 4c·A₄` has four distinct roots
/// (four totally tangent lines through `P`), and no line through `P` meets the
/// curve with a part of multiplicity 3.
pub fn quartic_pencil(c: &PlaneCurve, r: &QGRecord, records: &[QGRecord]) -> Result<()> {
    let Some(h) = &r.generator else { return Ok(()) };
    let violation =
        |what: &str| Error::InvariantViolation(format!("quartic point {}: {what}", r.point));
    let (v1, v2) = h.axis.spanning_vectors();
    let b = Mat3::from_columns([r.point.coords().clone(), v1, v2]);
    let g = c.form().pullback_mat(&b);
    let layers = x_layers(&g);
    if [1, 3].iter().any(|&i| !layers[i].is_zero()) {
        return Err(violation("standard form has odd powers of X"));
    }
    let lead = layers[4].coeff([0, 0, 0]);
    let disc = layers[2]
        .mul(&layers[2])
        .sub(&layers[0].scale(&lead.scale_int(4)));
    let ctx = c.context();
    let mut coeffs = vec![FieldElement::zero(ctx); 5];
    for (e, v) in disc.terms() {
        coeffs[e[1] as usize] = v.clone();
    }
    let dehom = UniPoly::new(ctx, coeffs);
    let sqf = dehom.squarefree_part()?;
    if dehom.degree().unwrap_or(0) < 3 || sqf.degree() != dehom.degree() {
        return Err(violation(
            "totally tangent lines are not four distinct lines",
        ));
    }
    let mut lines = vec![h.axis.clone()];
    for o in records.iter().filter(|o| o.point != r.point) {
        lines.push(ProjLine::through(&r.point, &o.point)?);
    }
    for l in lines {
        if intersection_profile(c.form(), &l)?.contains(&3) {
            return Err(violation(
                "a line through the point has a triple intersection",
            ));
        }
    }
    Ok(())
}

/// Coordinate vertices, the six points `(1:±1:0)`-style and `(1:1:1)`; points
/// on the curve are kept only when the field has the roots of unity their
/// projection degree needs.
pub fn default_seeds(c: &PlaneCurve) -> Vec<ProjPoint> {
    let ctx = c.context();
    let raw: [[i64; 3]; 10] = [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
        [1, 1, 0],
        [1, -1, 0],
        [0, 1, 1],
        [0, 1, -1],
        [1, 0, 1],
        [1, 0, -1],
        [1, 1, 1],
    ];
    let inner_ok = (2..c.degree())
        .filter(|n| (c.degree() - 1).is_multiple_of(*n))
        .all(|n| ctx.has_root_of_unity(n));
    raw.iter()
        .map(|v| ProjPoint::from_ints(ctx, *v))
        .filter(|p| inner_ok || !c.contains(p))
        .collect()
}

/// The transform moving `P` to `(1:0:0)` used by [`super::solve_homology`].
pub fn standard_frame(p: &ProjPoint) -> Mat3 {
    point_to_origin(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::HomoPoly;
    use crate::numfield::FieldContext;

    #[test]
    fn fermat_quartic_census() {
        let k = FieldContext::cyclotomic(8);
        let c = PlaneCurve::new(HomoPoly::from_ints(
            &k,
            4,
            &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)],
        ))
        .unwrap();
        let seeds: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1]]
            .iter()
            .map(|v| ProjPoint::from_ints(&k, *v))
            .collect();
        let r = census(&c, &seeds).unwrap();
        assert_eq!(r.delta_prime.get(&2), Some(&12));
        assert_eq!(r.delta_prime.get(&4), Some(&3));
        assert_eq!(r.certification, Certification::TheoryTableOnly);
        assert!(!r.graph.triples.is_empty());
        let back: CensusSummary = serde_json::from_value(r.to_json()).unwrap();
        assert_eq!(back, r.summary());
    }

    #[test]
    fn cap_is_enforced() {
        let k = FieldContext::cyclotomic(8);
        let c = PlaneCurve::new(HomoPoly::from_ints(
            &k,
            4,
            &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)],
        ))
        .unwrap();
        let seeds = [
            ProjPoint::from_ints(&k, [1, 0, 0]),
            ProjPoint::from_ints(&k, [1, 1, 0]),
        ];
        assert!(matches!(
            orbit_expand(&c, &seeds, 4),
            Err(Error::ClosureCapExceeded { cap: 4 })
        ));
        assert!(orbit_expand(&c, &[], 4).unwrap().is_empty());
    }

    #[test]
    fn certification_rules() {
        let m = |v: &[(u32, usize)]| v.iter().copied().collect::<BTreeMap<_, _>>();
        assert_eq!(
            certify(6, &m(&[(3, 12)])).unwrap().0,
            Certification::Certified
        );
        assert_eq!(
            certify(6, &m(&[(3, 8), (6, 1)])).unwrap().0,
            Certification::TheoryTableOnly
        );
        assert_eq!(
            certify(4, &m(&[(2, 7)])).unwrap().0,
            Certification::BoundGap
        );
        assert!(certify(4, &m(&[(2, 22)])).is_err());
        assert_eq!(
            certify(5, &m(&[])).unwrap(),
            (Certification::BoundGap, None)
        );
    }
}
