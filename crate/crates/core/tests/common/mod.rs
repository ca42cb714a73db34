//! Property runners shared by the property tests and the acceptance target.
//! Each returns the number of cases it ran, or the first failure.

#![allow(dead_code)]

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestError, TestRng, TestRunner};
use qgp_core::geometry::{intersection_profile, HomoPoly, Mat3, PlaneCurve, ProjLine, ProjPoint};
use qgp_core::numfield::{FieldContext, FieldElement};
use qgp_core::oracle::embed;
use qgp_core::quasigalois::{
    census, decide_gp, fixed_locus_disjointness, generator_distinctness, inner_tangency, Locus,
};

pub fn runner(cases: u32) -> TestRunner {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Runs `test` on `cases` inputs and returns how many it actually saw.
fn run<S: Strategy>(
    cases: u32,
    strat: &S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String>
where
    S::Value: std::fmt::Debug,
{
    let seen = AtomicU32::new(0);
    let r: Result<(), TestError<S::Value>> = runner(cases).run(strat, |v| {
        seen.fetch_add(1, Ordering::Relaxed);
        test(v)
    });
    r.map(|_| seen.load(Ordering::Relaxed))
        .map_err(|e| e.to_string())
}

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($msg)+)));
        }
    };
}

/// The fields exercised by the arithmetic properties; the last is `Q(ζ₈)[√3]`.
pub fn contexts() -> Vec<Arc<FieldContext>> {
    let mut v: Vec<_> = [3, 4, 5, 7, 8, 12]
        .into_iter()
        .map(FieldContext::cyclotomic)
        .collect();
    let q8 = FieldContext::cyclotomic(8);
    v.push(FieldContext::quad_extend(&FieldElement::from_int(&q8, 3)).unwrap());
    v
}

/// `Σ cₖ ζᵏ (+ λ Σ dₖ ζᵏ) / den` with small integers.
pub fn element(ctx: Arc<FieldContext>) -> impl Strategy<Value = FieldElement> {
    let dim = ctx.phi();
    let quad = ctx.is_quadratic();
    (
        prop::collection::vec(-6i64..=6, dim),
        prop::collection::vec(-6i64..=6, if quad { dim } else { 0 }),
        1i64..=4,
    )
        .prop_map(move |(u, v, den)| {
            let part = |cs: &[i64]| {
                cs.iter()
                    .enumerate()
                    .fold(FieldElement::zero(&ctx), |acc, (k, &c)| {
                        &acc + &FieldElement::zeta_power(&ctx, k as i64).scale_int(c)
                    })
            };
            let mut x = part(&u);
            if quad {
                x = &x + &(&part(&v) * &FieldElement::lambda(&ctx).unwrap());
            }
            x.div(&FieldElement::from_int(&ctx, den)).unwrap()
        })
}

fn in_some_field(n: usize) -> impl Strategy<Value = Vec<FieldElement>> {
    let ctxs = contexts();
    (0..ctxs.len()).prop_flat_map(move |i| prop::collection::vec(element(ctxs[i].clone()), n))
}

pub fn field_axioms(cases: u32) -> Result<u32, String> {
    run(cases, &in_some_field(3), |v| {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        check!(&(a + b) + c == a + &(b + c), "addition is not associative");
        check!(
            &(a * b) * c == a * &(b * c),
            "multiplication is not associative"
        );
        check!(a * &(b + c) == &(a * b) + &(a * c), "distributivity fails");
        check!(a * b == b * a, "multiplication is not commutative");
        check!(&(a - b) + b == *a, "subtraction does not invert addition");
        if !a.is_zero() {
            let inv = a.inv().map_err(|e| TestCaseError::fail(e.to_string()))?;
            check!((a * &inv).is_one(), "a * a^-1 != 1 for {a}");
        }
        Ok(())
    })
}

#[derive(Clone, Debug)]
enum Expr {
    Leaf(FieldElement),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn exact(&self) -> FieldElement {
        match self {
            Expr::Leaf(x) => x.clone(),
            Expr::Add(a, b) => &a.exact() + &b.exact(),
            Expr::Sub(a, b) => &a.exact() - &b.exact(),
            Expr::Mul(a, b) => &a.exact() * &b.exact(),
        }
    }

    /// Numeric value and the largest modulus seen along the way.
    fn numeric(&self) -> (Complex64, f64) {
        match self {
            Expr::Leaf(x) => {
                let v = embed(x);
                (v, v.norm())
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                let ((x, sx), (y, sy)) = (a.numeric(), b.numeric());
                let v = match self {
                    Expr::Add(..) => x + y,
                    Expr::Sub(..) => x - y,
                    _ => x * y,
                };
                (v, sx.max(sy).max(v.norm()).max(sx * sy))
            }
        }
    }
}

fn expr(ctx: Arc<FieldContext>) -> impl Strategy<Value = Expr> {
    element(ctx)
        .prop_map(Expr::Leaf)
        .prop_recursive(4, 16, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            ]
        })
}

/// Relative tolerance for the embedding, scaled by the largest intermediate modulus.
pub const EMBED_TOL: f64 = 1e-12;

pub fn embedding_homomorphism(cases: u32) -> Result<u32, String> {
    let ctxs = contexts();
    let strat = (0..ctxs.len()).prop_flat_map(move |i| expr(ctxs[i].clone()));
    run(cases, &strat, |e| {
        let exact = embed(&e.exact());
        let (numeric, scale) = e.numeric();
        let err = (exact - numeric).norm();
        let within = err <= EMBED_TOL * (1.0 + scale);
        check!(within, "embedding error {err:e} at scale {scale:e}");
        Ok(())
    })
}

fn int_matrix(range: i64) -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-range..=range))
}

fn invertible(range: i64) -> impl Strategy<Value = [[i64; 3]; 3]> {
    int_matrix(range).prop_filter("singular", |m| {
        let d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        d != 0
    })
}

fn monomials(d: u32) -> Vec<[u32; 3]> {
    (0..=d)
        .flat_map(|i| (0..=d - i).map(move |j| [i, j, d - i - j]))
        .collect()
}

pub fn pullback_functoriality(cases: u32) -> Result<u32, String> {
    let k = FieldContext::cyclotomic(3);
    let mons = monomials(4);
    let strat = (
        prop::collection::vec(-3i64..=3, mons.len()),
        int_matrix(2),
        int_matrix(2),
    );
    run(cases, &strat, |(coeffs, a, b)| {
        let terms: Vec<([u32; 3], i64)> = mons.iter().copied().zip(coeffs).collect();
        let f = HomoPoly::from_ints(&k, 4, &terms);
        let (a, b) = (Mat3::from_ints(&k, a), Mat3::from_ints(&k, b));
        check!(
            f.pullback_mat(&a.mul(&b)) == f.pullback_mat(&a).pullback_mat(&b),
            "F o (AB) != (F o A) o B"
        );
        Ok(())
    })
}

pub fn fermat() -> PlaneCurve {
    let k = FieldContext::cyclotomic(8);
    PlaneCurve::new(HomoPoly::from_ints(
        &k,
        4,
        &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)],
    ))
    .unwrap()
}

pub fn hessian() -> PlaneCurve {
    let k = FieldContext::cyclotomic(3);
    PlaneCurve::new(HomoPoly::from_ints(
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
    ))
    .unwrap()
}

pub fn inner_flex() -> PlaneCurve {
    let k = FieldContext::cyclotomic(12);
    PlaneCurve::new(HomoPoly::from_ints(
        &k,
        4,
        &[([3, 0, 1], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)],
    ))
    .unwrap()
}

pub fn profile_sum(cases: u32) -> Result<u32, String> {
    let curves = [fermat(), hessian()];
    let strat = (0..2usize, prop::array::uniform3(-4i64..=4))
        .prop_filter("zero line", |(_, l)| l != &[0, 0, 0]);
    run(cases, &strat, |(i, l)| {
        let c = &curves[i];
        let line = ProjLine::from_ints(c.context(), l);
        let prof = intersection_profile(c.form(), &line)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        check!(
            prof.iter().sum::<u32>() == c.degree(),
            "profile {prof:?} of {l:?}"
        );
        Ok(())
    })
}

/// `(F∘A, A⁻¹)` for an integer matrix `A`.
pub fn conjugate(c: &PlaneCurve, a: [[i64; 3]; 3]) -> (PlaneCurve, Mat3) {
    let m = Mat3::from_ints(c.context(), a);
    let g = PlaneCurve::new(c.form().pullback_mat(&m)).expect("conjugate of a smooth curve");
    (g, m.inverse().expect("invertible"))
}

pub fn moved(inv: &Mat3, p: &ProjPoint) -> ProjPoint {
    ProjPoint::new(inv.apply(p.coords())).unwrap()
}

pub fn conjugation_equivariance(cases: u32) -> Result<u32, String> {
    let f = fermat();
    let pts: Vec<ProjPoint> = [
        [1, 0, 0],
        [0, 1, 0],
        [1, 1, 0],
        [0, 1, -1],
        [1, 2, 3],
        [1, 1, 1],
    ]
    .iter()
    .map(|v| ProjPoint::from_ints(f.context(), *v))
    .collect();
    let strat = (invertible(2), 0..pts.len());
    run(cases, &strat, |(a, i)| {
        let (g, inv) = conjugate(&f, a);
        let before = decide_gp(&f, &pts[i]).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let after =
            decide_gp(&g, &moved(&inv, &pts[i])).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check!(
            before.order == after.order && before.locus == after.locus,
            "order {} became {}",
            before.order,
            after.order
        );
        Ok(())
    })
}

/// Census of a random conjugate: distinct generators, disjoint fixed loci, same counts.
pub fn census_invariants(cases: u32) -> Result<u32, String> {
    let f = fermat();
    let seeds: Vec<ProjPoint> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1]]
        .iter()
        .map(|v| ProjPoint::from_ints(f.context(), *v))
        .collect();
    run(cases, &invertible(1), |a| {
        let (g, inv) = conjugate(&f, a);
        let moved_seeds: Vec<ProjPoint> = seeds.iter().map(|s| moved(&inv, s)).collect();
        let rep = census(&g, &moved_seeds).map_err(|e| TestCaseError::fail(e.to_string()))?;
        generator_distinctness(&rep.records).map_err(|e| TestCaseError::fail(e.to_string()))?;
        fixed_locus_disjointness(&g, &rep.records)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        check!(
            rep.delta_prime.get(&2) == Some(&12) && rep.delta_prime.get(&4) == Some(&3),
            "counts {:?}",
            rep.delta_prime
        );
        Ok(())
    })
}

/// `I_P(C, T_P) ≡ 1 (mod |G[P]|)` at the inner point `(1:0:0)` of `X³Z + Y⁴ + Z⁴`,
/// moved by random changes of coordinates.
pub fn inner_congruence(cases: u32) -> Result<u32, String> {
    let c = inner_flex();
    let p = ProjPoint::from_ints(c.context(), [1, 0, 0]);
    run(cases, &invertible(2), |a| {
        let (g, inv) = conjugate(&c, a);
        let rec =
            decide_gp(&g, &moved(&inv, &p)).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check!(
            rec.locus == Locus::Inner && rec.order == 3,
            "record {:?} {}",
            rec.locus,
            rec.order
        );
        let i = inner_tangency(&g, &rec).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check!(i % rec.order == 1, "I = {i} not 1 mod {}", rec.order);
        Ok(())
    })
}

/// Case budget per suite; the sum is at least 1000.
pub type Suite = fn(u32) -> Result<u32, String>;

pub const SUITES: &[(&str, Suite, u32)] = &[
    ("field axioms", field_axioms, 400),
    ("embedding homomorphism", embedding_homomorphism, 200),
    ("pullback functoriality", pullback_functoriality, 150),
    ("profile sum = degree", profile_sum, 150),
    ("conjugation equivariance", conjugation_equivariance, 60),
    ("census invariants under conjugation", census_invariants, 40),
    ("inner tangency congruence", inner_congruence, 100),
];
