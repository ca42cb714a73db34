//! Explicit curve families with known quasi-Galois configurations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{HomoPoly, Mat3, PlaneCurve, ProjLine, ProjMatrix, ProjPoint};
use crate::groups::{closure, line_action_analysis, DEFAULT_GROUP_CAP};
use crate::numfield::{parse_element, FieldContext, FieldElement};
use crate::oracle::{numeric_census, NumericCurve, OracleSettings};
use crate::quasigalois::{census, homology_from_matrix, CensusReport, Certification};

pub type Params = BTreeMap<String, String>;

pub const FAMILIES: &[&str] = &[
    "hessian_sextic",
    "sextic_a4",
    "sextic_a4_family",
    "fermat_quartic",
    "quartic_klein",
    "quartic_symmetric",
    "quartic_xy",
    "quartic_5family",
    "quartic_inner_flex",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineActionExpectation {
    pub line: [i64; 3],
    pub kernel: usize,
    pub image: usize,
    pub histogram: BTreeMap<u64, usize>,
}

#[derive(Clone, Debug, Default)]
pub struct Expected {
    pub delta_prime: BTreeMap<u32, usize>,
    pub delta: BTreeMap<u32, usize>,
    pub certification: Option<Certification>,
    /// `(n, order)`: the generators of all points whose order is divisible by `n`
    /// generate a group of this order.
    pub closure: Option<(u32, usize)>,
    pub closure_line_action: Option<LineActionExpectation>,
    /// Order after adding [`CatalogEntry::extra_automorphisms`].
    pub extended_order: Option<usize>,
    pub extended_line_action: Option<LineActionExpectation>,
    pub min_triples: usize,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub params: Params,
    pub description: String,
    pub curve: PlaneCurve,
    pub seeds: Vec<ProjPoint>,
    pub expected: Expected,
    pub extra_automorphisms: Vec<ProjMatrix>,
    /// Transform onto the Fermat quartic when the family member is equivalent to it.
    pub fermat_equivalence: Option<FermatEquivalence>,
}

fn counts(v: &[(u32, usize)]) -> BTreeMap<u32, usize> {
    v.iter().copied().collect()
}

fn points(ctx: &Arc<FieldContext>, v: &[[i64; 3]]) -> Vec<ProjPoint> {
    v.iter().map(|p| ProjPoint::from_ints(ctx, *p)).collect()
}

const TRIANGLE_SEEDS: [[i64; 3]; 9] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 1, 0],
    [1, -1, 0],
    [0, 1, 1],
    [0, 1, -1],
    [1, 0, 1],
    [1, 0, -1],
];

struct ParamReader<'a> {
    family: &'a str,
    params: &'a Params,
    used: Vec<&'static str>,
}

impl<'a> ParamReader<'a> {
    fn new(family: &'a str, params: &'a Params) -> Self {
        ParamReader {
            family,
            params,
            used: Vec::new(),
        }
    }

    fn get(
        &mut self,
        ctx: &Arc<FieldContext>,
        key: &'static str,
        default: &str,
    ) -> Result<FieldElement> {
        self.used.push(key);
        let raw = self.params.get(key).map_or(default, String::as_str);
        parse_element(ctx, raw).map_err(|e| {
            Error::ParameterViolation(format!("{}: parameter {key}={raw}: {e}", self.family))
        })
    }

    fn finish(&self) -> Result<Params> {
        if let Some(k) = self
            .params
            .keys()
            .find(|k| !self.used.contains(&k.as_str()))
        {
            return Err(Error::ParameterViolation(format!(
                "{} takes no parameter `{k}`",
                self.family
            )));
        }
        Ok(self.params.clone())
    }
}

fn violation(family: &str, what: &str) -> Error {
    Error::ParameterViolation(format!("{family}: {what}"))
}

fn hist(v: &[(u64, usize)]) -> BTreeMap<u64, usize> {
    v.iter().copied().collect()
}

/// `X⁴ + Y⁴ + Z⁴ + a·X²Y² + b·(Y²Z² + Z²X²)`.
fn binomial_quartic(a: &FieldElement, b: &FieldElement) -> Result<HomoPoly> {
    let ctx = a.context();
    let one = FieldElement::one(ctx);
    HomoPoly::new(
        ctx,
        4,
        [
            ([4, 0, 0], one.clone()),
            ([0, 4, 0], one.clone()),
            ([0, 0, 4], one),
            ([2, 2, 0], a.clone()),
            ([0, 2, 2], b.clone()),
            ([2, 0, 2], b.clone()),
        ],
    )
}

/// `X⁶ + 20X³Y³ − 8Y⁶ + Z⁶ + a(X³Y + Y⁴)Z²`.
fn a4_sextic(a: &FieldElement) -> Result<HomoPoly> {
    let ctx = a.context();
    let int = |k| FieldElement::from_int(ctx, k);
    HomoPoly::new(
        ctx,
        6,
        [
            ([6, 0, 0], int(1)),
            ([3, 3, 0], int(20)),
            ([0, 6, 0], int(-8)),
            ([0, 0, 6], int(1)),
            ([3, 1, 2], a.clone()),
            ([0, 4, 2], a.clone()),
        ],
    )
}

pub fn make(name: &str, params: &Params) -> Result<CatalogEntry> {
    let mut rd = ParamReader::new(name, params);
    let mut extra_automorphisms = Vec::new();
    let mut fermat_equivalence = None;
    let (description, curve_form, seeds, expected) = match name {
        "hessian_sextic" => {
            let k = FieldContext::cyclotomic(3);
            let f = HomoPoly::from_ints(
                &k,
                6,
                &[
                    ([6, 0, 0], 1),
                    ([0, 6, 0], 1),
                    ([0, 0, 6], 1),
                    ([3, 3, 0], -10),
                    ([0, 3, 3], -10),
                    ([3, 0, 3], -10),
                ],
            );
            let seeds = points(&k, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]);
            let expected = Expected {
                delta_prime: counts(&[(3, 12)]),
                certification: Some(Certification::Certified),
                closure: Some((3, 216)),
                ..Default::default()
            };
            (
                "sextic with twelve outer points of order 3 (Hessian group)",
                f,
                seeds,
                expected,
            )
        }
        "sextic_a4" => {
            let k = FieldContext::cyclotomic(24);
            let f = a4_sextic(&FieldElement::zero(&k))?;
            let mut seeds = points(&k, &[[1, 0, 0], [0, 1, 0], [1, -1, 0], [0, 0, 1]]);
            // √−2 = ζ₈ + ζ₈³
            let s = &FieldElement::zeta_power(&k, 3) + &FieldElement::zeta_power(&k, 9);
            let zero = FieldElement::zero(&k);
            let swap = Mat3::from_rows([
                [zero.clone(), s.clone(), zero.clone()],
                [s.inv()?, zero.clone(), zero.clone()],
                [zero.clone(), zero, FieldElement::one(&k)],
            ]);
            let swap = ProjMatrix::new(swap)?;
            // the involutions on Z=0 are not reached from the order-3 points alone
            seeds.push(homology_from_matrix(&swap)?.center);
            extra_automorphisms.push(swap);
            let expected = Expected {
                delta_prime: counts(&[(2, 12), (3, 8), (6, 1)]),
                certification: Some(Certification::TheoryTableOnly),
                closure: Some((3, 72)),
                closure_line_action: Some(LineActionExpectation {
                    line: [0, 0, 1],
                    kernel: 6,
                    image: 12,
                    histogram: hist(&[(1, 1), (2, 3), (3, 8)]),
                }),
                extended_order: Some(144),
                extended_line_action: Some(LineActionExpectation {
                    line: [0, 0, 1],
                    kernel: 6,
                    image: 24,
                    histogram: hist(&[(1, 1), (2, 9), (3, 8), (4, 6)]),
                }),
                ..Default::default()
            };
            (
                "sextic with eight order-3 points on Z=0 and a Galois point of order 6",
                f,
                seeds,
                expected,
            )
        }
        "sextic_a4_family" => {
            let k = FieldContext::cyclotomic(3);
            let a = rd.get(&k, "a", "1")?;
            if a.is_zero() {
                return Err(violation(name, "a ≠ 0"));
            }
            let f = a4_sextic(&a)?;
            let seeds = points(&k, &[[1, 0, 0], [1, -1, 0], [0, 0, 1]]);
            let expected = Expected {
                delta_prime: counts(&[(2, 1), (3, 4)]),
                certification: Some(Certification::TheoryTableOnly),
                ..Default::default()
            };
            (
                "sextic family with four collinear order-3 points; excluding members equivalent to the Hessian sextic is not checked",
                f,
                seeds,
                expected,
            )
        }
        "fermat_quartic" => {
            let k = FieldContext::cyclotomic(8);
            let f = HomoPoly::from_ints(&k, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
            let seeds = points(&k, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1]]);
            let expected = Expected {
                delta_prime: counts(&[(2, 12), (4, 3)]),
                certification: Some(Certification::TheoryTableOnly),
                closure: Some((2, 96)),
                min_triples: 1,
                ..Default::default()
            };
            ("Fermat quartic", f, seeds, expected)
        }
        "quartic_klein" => {
            let base = FieldContext::cyclotomic(28);
            let sign = rd.get(&base, "sign", "1")?;
            if sign != FieldElement::one(&base) && sign != -FieldElement::one(&base) {
                return Err(violation(name, "sign is 1 or -1"));
            }
            // a = (−3 ± 3√−7)/2 solves a² + 3a + 18 = 0
            let a = (&FieldElement::from_int(&base, -3)
                + &(&sign * &gauss_sum_7(&base)).scale_int(3))
                .div(&FieldElement::from_int(&base, 2))?;
            let six = FieldElement::from_int(&base, 6);
            let c = a.scale_int(4).div(&(&six - &a))?;
            let k = FieldContext::quad_extend(&c)?;
            let a = a.lift(&k)?;
            let f = binomial_quartic(&a, &a)?;
            let lambda = FieldElement::lambda(&k)?;
            let two_over = lambda.inv()?.scale_int(2);
            let one = FieldElement::one(&k);
            let tau = Mat3::from_rows([
                [FieldElement::zero(&k), two_over.clone(), -two_over],
                [lambda.clone(), one.clone(), one.clone()],
                [-lambda, one.clone(), one],
            ]);
            let mut seeds = points(&k, &TRIANGLE_SEEDS);
            seeds.push(homology_from_matrix(&ProjMatrix::new(tau)?)?.center);
            let expected = Expected {
                delta_prime: counts(&[(2, 21)]),
                certification: Some(Certification::Certified),
                closure: Some((2, 168)),
                min_triples: 1,
                ..Default::default()
            };
            (
                "quartic with 21 outer involution centres (Klein quartic)",
                f,
                seeds,
                expected,
            )
        }
        "quartic_symmetric" => {
            let k = FieldContext::cyclotomic(4);
            let a = rd.get(&k, "a", "1")?;
            if a.is_zero() {
                return Err(violation(name, "a ≠ 0"));
            }
            if &(&a * &a) + &a.scale_int(3) == FieldElement::from_int(&k, -18) {
                return Err(violation(name, "a² + 3a + 18 ≠ 0 (use quartic_klein)"));
            }
            let f = binomial_quartic(&a, &a)?;
            let expected = Expected {
                delta_prime: counts(&[(2, 9)]),
                certification: Some(Certification::TheoryTableOnly),
                min_triples: 1,
                ..Default::default()
            };
            (
                "symmetric quartic with nine points on the coordinate triangle",
                f,
                points(&k, &TRIANGLE_SEEDS),
                expected,
            )
        }
        "quartic_xy" => {
            let k = FieldContext::cyclotomic(8);
            let a = rd.get(&k, "a", "1")?;
            let f = binomial_quartic(&a, &FieldElement::zero(&k))?;
            let i = FieldElement::zeta_power(&k, 2);
            let one = FieldElement::one(&k);
            let zero = FieldElement::zero(&k);
            let mut seeds = points(
                &k,
                &[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0], [0, 0, 1]],
            );
            for s in [i.clone(), -i] {
                seeds.push(ProjPoint::new([s, one.clone(), zero.clone()])?);
            }
            let special = [0, 6, -6]
                .iter()
                .any(|&v| a == FieldElement::from_int(&k, v));
            if !special {
                let expected = Expected {
                    delta_prime: counts(&[(2, 6), (4, 1)]),
                    certification: Some(Certification::TheoryTableOnly),
                    ..Default::default()
                };
                (
                    "quartic X⁴+Y⁴+Z⁴+aX²Y² with a Galois point at (0:0:1)",
                    f,
                    seeds,
                    expected,
                )
            } else {
                // the Fermat-equivalent members have centres with coordinates in
                // Q(ζ₈, 2^{1/4}), so the census runs in the extension
                let fe = fermat_equivalence_of(&f, &a)?;
                let ext = fe.form.context().clone();
                let mut seeds = seeds
                    .iter()
                    .map(|p| p.lift(&ext))
                    .collect::<Result<Vec<_>>>()?;
                seeds.push(fe.matrix.apply(&ProjPoint::from_ints(&ext, [0, 1, 1]))?);
                let expected = Expected {
                    delta_prime: counts(&[(2, 12), (4, 3)]),
                    certification: Some(Certification::TheoryTableOnly),
                    closure: Some((2, 96)),
                    ..Default::default()
                };
                let f = fe.form.clone();
                fermat_equivalence = Some(fe);
                (
                    "Fermat-equivalent member of X⁴+Y⁴+Z⁴+aX²Y²",
                    f,
                    seeds,
                    expected,
                )
            }
        }
        "quartic_5family" => {
            let k = FieldContext::cyclotomic(4);
            let a = rd.get(&k, "a", "1")?;
            let b = rd.get(&k, "b", "3")?;
            if b.is_zero() || b == a || b == -a.clone() {
                return Err(violation(name, "b ≠ 0 and b ≠ ±a"));
            }
            let f = binomial_quartic(&a, &b)?;
            let seeds = points(
                &k,
                &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, -1, 0]],
            );
            let expected = Expected {
                delta_prime: counts(&[(2, 5)]),
                certification: Some(Certification::TheoryTableOnly),
                min_triples: 1,
                ..Default::default()
            };
            (
                "quartic with a G-triple and two further points on one edge",
                f,
                seeds,
                expected,
            )
        }
        "quartic_inner_flex" => {
            let k = FieldContext::cyclotomic(12);
            let f = HomoPoly::from_ints(&k, 4, &[([3, 0, 1], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
            let mut seeds = points(&k, &[[1, 0, 0], [0, 1, 0], [1, 0, -1]]);
            // (√3 − 1 : 0 : 1), √3 = ζ₁₂ + ζ₁₂¹¹
            let x = &(&FieldElement::zeta_power(&k, 1) + &FieldElement::zeta_power(&k, 11))
                - &FieldElement::one(&k);
            seeds.push(ProjPoint::new([
                x,
                FieldElement::zero(&k),
                FieldElement::one(&k),
            ])?);
            let expected = Expected {
                delta: counts(&[(3, 4)]),
                delta_prime: counts(&[(2, 6), (4, 1)]),
                certification: Some(Certification::TheoryTableOnly),
                ..Default::default()
            };
            (
                "quartic X³Z+Y⁴+Z⁴ with an inner point of order 3 at a hyperflex",
                f,
                seeds,
                expected,
            )
        }
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    let params = rd.finish()?;
    let curve = PlaneCurve::new(curve_form)?;
    Ok(CatalogEntry {
        name: name.to_string(),
        params,
        description: description.to_string(),
        curve,
        seeds,
        expected,
        extra_automorphisms,
        fermat_equivalence,
    })
}

/// `Σ (k/7) ζ₇^k = √−7` inside `Q(ζ₂₈)`.
fn gauss_sum_7(k: &Arc<FieldContext>) -> FieldElement {
    let step = (k.conductor() / 7) as i64;
    let mut g = FieldElement::zero(k);
    for r in 1..7i64 {
        let term = FieldElement::zeta_power(k, r * step);
        if [1, 2, 4].contains(&r) {
            g += &term;
        } else {
            g -= &term;
        }
    }
    g
}

/// Exact projective equivalence with `X⁴ + Y⁴ + Z⁴`. The transform needs
/// `2^{1/4}`, so it lives in `Q(ζ₈)[μ]/(μ² − √2)`.
#[derive(Clone, Debug)]
pub struct FermatEquivalence {
    pub matrix: ProjMatrix,
    /// The curve's form lifted to the extension.
    pub form: HomoPoly,
    /// `F∘M`, equal to `scalar · (X⁴ + Y⁴ + Z⁴)`.
    pub image: HomoPoly,
    pub scalar: Option<FieldElement>,
}

impl FermatEquivalence {
    pub fn holds(&self) -> bool {
        self.scalar.is_some()
    }
}

fn fermat_equivalence_of(f: &HomoPoly, a: &FieldElement) -> Result<FermatEquivalence> {
    let base = f.context().clone();
    let sqrt2 = &FieldElement::zeta_power(&base, 1) - &FieldElement::zeta_power(&base, 3);
    let k = FieldContext::quad_extend(&sqrt2)?;
    let form = f.change_context(&k)?;
    let one = FieldElement::one(&k);
    let zero = FieldElement::zero(&k);
    let mu = FieldElement::lambda(&k)?;
    let matrix = if a.is_zero() {
        Mat3::identity(&k)
    } else {
        // X = X' + εY', Y = ε'(X' − Y') with ε' = 1 for a = 6 and i for a = −6,
        // which turns the curve into 8X'⁴ + 8Y'⁴ + Z⁴; then Z = μ³Z' with μ⁴ = 2
        let second = if *a == FieldElement::from_int(&base, 6) {
            one.clone()
        } else {
            FieldElement::zeta_power(&k, 2)
        };
        Mat3::from_rows([
            [one.clone(), one.clone(), zero.clone()],
            [second.clone(), -second, zero.clone()],
            [zero.clone(), zero, mu.pow(3)],
        ])
    };
    let image = form.pullback_mat(&matrix);
    let fermat = HomoPoly::from_ints(&k, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
    let scalar = fermat.proportionality(&image)?;
    Ok(FermatEquivalence {
        matrix: ProjMatrix::new(matrix)?,
        form,
        image,
        scalar,
    })
}

/// Default-parameter entries checked by the verification suite.
pub fn expected_table() -> Result<Vec<CatalogEntry>> {
    let with = |pairs: &[(&str, &str)]| -> Params {
        pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect()
    };
    let mut out = Vec::new();
    for (name, p) in [
        ("hessian_sextic", with(&[])),
        ("sextic_a4", with(&[])),
        ("sextic_a4_family", with(&[("a", "1")])),
        ("fermat_quartic", with(&[])),
        ("quartic_klein", with(&[])),
        ("quartic_symmetric", with(&[("a", "1")])),
        ("quartic_xy", with(&[("a", "1")])),
        ("quartic_xy", with(&[("a", "6")])),
        ("quartic_5family", with(&[("a", "1"), ("b", "3")])),
        ("quartic_inner_flex", with(&[])),
    ] {
        out.push(make(name, &p)?);
    }
    Ok(out)
}

impl CatalogEntry {
    /// `name` with its parameters, e.g. `quartic_xy[a=6]`.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.name.clone();
        }
        let p: Vec<String> = self
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        format!("{}[{}]", self.name, p.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

fn line_action_check(
    name: &str,
    group: &crate::groups::GroupSet,
    exp: &LineActionExpectation,
    ctx: &Arc<FieldContext>,
) -> Result<Check> {
    let a = line_action_analysis(group, &ProjLine::from_ints(ctx, exp.line))?;
    let ok = a.kernel_order == exp.kernel
        && a.image_order == exp.image
        && a.image_histogram == exp.histogram;
    Ok(check(
        name,
        ok,
        format!(
            "kernel {} image {} histogram {:?}",
            a.kernel_order, a.image_order, a.image_histogram
        ),
    ))
}

/// Runs the census and every group-theoretic expectation of the entry.
pub fn verify(entry: &CatalogEntry) -> Result<(CensusReport, Vec<Check>)> {
    let exp = &entry.expected;
    let report = census(&entry.curve, &entry.seeds)?;
    let mut checks = vec![
        check(
            "delta_prime",
            report.delta_prime == exp.delta_prime,
            format!("{:?}", report.delta_prime),
        ),
        check(
            "delta",
            report.delta == exp.delta,
            format!("{:?}", report.delta),
        ),
    ];
    let seed_points: Vec<&ProjPoint> = report.records.iter().map(|r| &r.point).collect();
    let seeds_ok = entry
        .seeds
        .iter()
        .map(|s| match &report.lambda_specialization {
            Some(root) => s.specialize_lambda(root),
            None => Ok(s.clone()),
        })
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|s| seed_points.contains(&s));
    checks.push(check("seeds_quasi_galois", seeds_ok, String::new()));
    if let Some(c) = exp.certification {
        checks.push(check(
            "certification",
            report.certification == c,
            format!("{:?}", report.certification),
        ));
    }
    if exp.min_triples > 0 {
        checks.push(check(
            "triples",
            report.graph.triples.len() >= exp.min_triples,
            format!("{}", report.graph.triples.len()),
        ));
    }
    let ctx = report.curve.context().clone();
    if let Some((n, order)) = exp.closure {
        let gens: Vec<ProjMatrix> = report
            .records
            .iter()
            .filter(|r| r.order % n == 0)
            .filter_map(|r| r.generator.as_ref().map(|g| g.matrix.clone()))
            .collect();
        let g = closure(&ctx, &gens, DEFAULT_GROUP_CAP)?;
        checks.push(check(
            "closure",
            g.order() == order,
            format!("{}", g.order()),
        ));
        if let Some(la) = &exp.closure_line_action {
            checks.push(line_action_check("closure_line_action", &g, la, &ctx)?);
        }
        if let Some(ext) = exp.extended_order {
            let mut all = gens;
            for m in &entry.extra_automorphisms {
                let m = match &report.lambda_specialization {
                    Some(root) => ProjMatrix::new(m.matrix().specialize_lambda(root)?)?,
                    None => m.clone(),
                };
                let invariant = entry
                    .curve
                    .form()
                    .pullback(&m)
                    .proportionality(entry.curve.form())?
                    .is_some();
                checks.push(check(
                    "extra_automorphism_invariant",
                    invariant,
                    String::new(),
                ));
                all.push(m);
            }
            let g = closure(&ctx, &all, DEFAULT_GROUP_CAP)?;
            checks.push(check(
                "extended_closure",
                g.order() == ext,
                format!("{}", g.order()),
            ));
            if let Some(la) = &exp.extended_line_action {
                checks.push(line_action_check("extended_line_action", &g, la, &ctx)?);
            }
        }
    }
    if let Some(fe) = &entry.fermat_equivalence {
        checks.push(check(
            "fermat_equivalence",
            fe.holds(),
            format!("{}", fe.image),
        ));
    }
    Ok((report, checks))
}

/// Exact and numeric counts of centres whose order is divisible by `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub n: u32,
    pub exact: usize,
    pub numeric: usize,
    pub converged: usize,
    pub starts: usize,
    pub worst_cluster_radius: f64,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.exact == self.numeric
    }
}

/// Runs the numeric census for every `n ≥ 2` dividing some order in `report`.
pub fn oracle_comparison(
    entry: &CatalogEntry,
    report: &CensusReport,
    settings: &OracleSettings,
) -> Vec<OracleComparison> {
    let curve = NumericCurve::from_form(entry.curve.form());
    let top = report.records.iter().map(|r| r.order).max().unwrap_or(1);
    (2..=top)
        .filter_map(|n| {
            let exact = report.records.iter().filter(|r| r.order % n == 0).count();
            if exact == 0 {
                return None;
            }
            let r = numeric_census(&curve, n, settings);
            Some(OracleComparison {
                n,
                exact,
                numeric: r.count,
                converged: r.converged,
                starts: r.starts,
                worst_cluster_radius: r.worst_cluster_radius,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_and_smoothness_gates() {
        let p = |a: &str| -> Params { [("a".to_string(), a.to_string())].into_iter().collect() };
        assert!(matches!(make("quartic_xy", &p("2")), Err(Error::NotSmooth)));
        assert!(matches!(
            make("quartic_xy", &p("-2")),
            Err(Error::NotSmooth)
        ));
        assert!(matches!(
            make("quartic_symmetric", &p("2")),
            Err(Error::NotSmooth)
        ));
        assert!(matches!(
            make("quartic_symmetric", &p("-1")),
            Err(Error::NotSmooth)
        ));
        assert!(matches!(
            make("quartic_symmetric", &p("0")),
            Err(Error::ParameterViolation(_))
        ));
        assert!(matches!(
            make("sextic_a4_family", &p("0")),
            Err(Error::ParameterViolation(_))
        ));
        assert!(matches!(
            make("hessian_sextic", &p("1")),
            Err(Error::ParameterViolation(_))
        ));
        assert!(matches!(
            make("nope", &Params::new()),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn klein_parameter_is_a_root() {
        let k = FieldContext::cyclotomic(28);
        let g = gauss_sum_7(&k);
        assert_eq!(&g * &g, FieldElement::from_int(&k, -7));
    }

    #[test]
    fn fermat_transforms() {
        for a in ["0", "6", "-6"] {
            let p: Params = [("a".to_string(), a.to_string())].into_iter().collect();
            let e = make("quartic_xy", &p).unwrap();
            assert!(e.fermat_equivalence.unwrap().holds(), "a = {a}");
        }
    }
}
