//! Floating-point cross-checks under the embedding `ζ_N ↦ e^{2πi/N}`.
//!
//! Nothing here is a certificate: the census is a multi-start local search
//! and can miss centres.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::{HomoPoly, ProjMatrix};
use crate::numfield::FieldElement;

pub type C = Complex64;
pub type CVec = [C; 3];
pub type CMat = [[C; 3]; 3];

fn rational_f64(n: &num_bigint::BigInt, d: &num_bigint::BigInt) -> f64 {
    BigRational::new(n.clone(), d.clone())
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// Image of `x`; a formal `λ` maps to the principal square root of the image of `λ²`.
pub fn embed(x: &FieldElement) -> C {
    let ctx = x.context();
    let n = ctx.conductor() as f64;
    let zeta = |k: usize| C::from_polar(1.0, 2.0 * PI * k as f64 / n);
    let (num, den) = x.raw();
    let phi = ctx.phi();
    let base: C = num[..phi]
        .iter()
        .enumerate()
        .map(|(k, c)| zeta(k) * rational_f64(c, den))
        .sum();
    if !ctx.is_quadratic() {
        return base;
    }
    let lambda = embed(&ctx.lambda_square().expect("quadratic context")).sqrt();
    let v: C = num[phi..]
        .iter()
        .enumerate()
        .map(|(k, c)| zeta(k) * rational_f64(c, den))
        .sum();
    base + v * lambda
}

pub fn embed_matrix(m: &ProjMatrix) -> CMat {
    let r = &m.matrix().rows;
    std::array::from_fn(|i| std::array::from_fn(|j| embed(&r[i][j])))
}

/// A form with complex coefficients, scaled so the largest has modulus 1.
#[derive(Clone, Debug)]
pub struct NumericCurve {
    pub degree: u32,
    pub terms: Vec<([u32; 3], C)>,
}

impl NumericCurve {
    pub fn from_form(f: &HomoPoly) -> NumericCurve {
        let mut terms: Vec<([u32; 3], C)> = f.terms().iter().map(|(e, c)| (*e, embed(c))).collect();
        let scale = terms.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
        if scale > 0.0 {
            for t in &mut terms {
                t.1 /= scale;
            }
        }
        NumericCurve {
            degree: f.degree(),
            terms,
        }
    }

    pub fn eval(&self, x: &CVec) -> C {
        let d = self.degree as usize;
        let pows: [Vec<C>; 3] = std::array::from_fn(|i| {
            let mut p = Vec::with_capacity(d + 1);
            p.push(C::new(1.0, 0.0));
            for k in 0..d {
                p.push(p[k] * x[i]);
            }
            p
        });
        self.terms
            .iter()
            .map(|(e, c)| {
                c * pows[0][e[0] as usize] * pows[1][e[1] as usize] * pows[2][e[2] as usize]
            })
            .sum()
    }
}

fn apply(m: &CMat, x: &CVec) -> CVec {
    std::array::from_fn(|i| m[i][0] * x[0] + m[i][1] * x[1] + m[i][2] * x[2])
}

fn norm(x: &CVec) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(x: CVec) -> CVec {
    let n = norm(&x);
    x.map(|c| c / n)
}

fn gaussian_vec(rng: &mut ChaCha8Rng) -> CVec {
    std::array::from_fn(|_| {
        // Box–Muller
        let (u, v): (f64, f64) = (rng.gen_range(f64::EPSILON..1.0), rng.gen());
        C::from_polar((-2.0 * u.ln()).sqrt(), 2.0 * PI * v)
    })
}

fn random_unit(rng: &mut ChaCha8Rng) -> CVec {
    normalize(gaussian_vec(rng))
}

/// Largest `|F(Mx)F(y) − F(My)F(x)|` over random unit `x, y`, with `M` scaled to
/// unit largest entry.
pub fn numeric_spot_check(c: &NumericCurve, m: &CMat, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    let m = m.map(|r| r.map(|z| z / s));
    (0..samples.max(1))
        .map(|_| {
            let (x, y) = (random_unit(&mut rng), random_unit(&mut rng));
            (c.eval(&apply(&m, &x)) * c.eval(&y) - c.eval(&apply(&m, &y)) * c.eval(&x)).norm()
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSettings {
    pub starts: usize,
    /// Residual below which a start counts as converged.
    pub residual_tol: f64,
    /// Fubini–Study radius for merging centres.
    pub cluster_tol: f64,
    pub seed: u64,
    pub max_iterations: usize,
}

impl Default for OracleSettings {
    fn default() -> Self {
        OracleSettings {
            starts: 20_000,
            residual_tol: 1e-9,
            cluster_tol: 1e-6,
            seed: 0,
            max_iterations: 60,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NumericCensus {
    pub order: u32,
    pub count: usize,
    /// Unit representatives, largest coordinate real and positive.
    pub centers: Vec<[(f64, f64); 3]>,
    pub converged: usize,
    pub starts: usize,
    /// Largest distance from a converged centre to its cluster representative.
    pub worst_cluster_radius: f64,
}

/// Unknowns `(a, b, c, e)`: centre `u₀ + a·u₁ + b·u₂`, axis `w₀ + c·w₁ + e·w₂`
/// for a random unitary frame per start.
struct Problem<'a> {
    curve: &'a NumericCurve,
    zeta_minus_one: C,
    samples: &'a [CVec],
    base_values: &'a [C],
}

struct Frame {
    u: [CVec; 3],
    w: [CVec; 3],
}

impl Frame {
    fn center(&self, z: &[C; 4]) -> CVec {
        std::array::from_fn(|i| self.u[0][i] + z[0] * self.u[1][i] + z[1] * self.u[2][i])
    }

    fn axis(&self, z: &[C; 4]) -> CVec {
        std::array::from_fn(|i| self.w[0][i] + z[2] * self.w[1][i] + z[3] * self.w[2][i])
    }
}

fn random_frame(rng: &mut ChaCha8Rng) -> [CVec; 3] {
    let mut out: [CVec; 3] = [[C::default(); 3]; 3];
    for k in 0..3 {
        let mut v = gaussian_vec(rng);
        for prev in &out[..k] {
            let dot: C = (0..3).map(|i| prev[i].conj() * v[i]).sum();
            for i in 0..3 {
                v[i] -= dot * prev[i];
            }
        }
        out[k] = normalize(v);
    }
    out
}

impl Problem<'_> {
    fn homology(&self, p: &CVec, l: &CVec) -> Option<CMat> {
        let lp: C = (0..3).map(|i| l[i] * p[i]).sum();
        if lp.norm() < 1e-8 * norm(p) * norm(l) {
            return None;
        }
        let s = self.zeta_minus_one / lp;
        Some(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { C::new(1.0, 0.0) } else { C::default() } + s * p[i] * l[j])
        }))
    }

    /// `R_k = F(Mx_k)F(x₀) − F(Mx₀)F(x_k)`.
    fn residuals(&self, frame: &Frame, z: &[C; 4]) -> Option<Vec<C>> {
        let m = self.homology(&frame.center(z), &frame.axis(z))?;
        let f0 = self.base_values[0];
        let mf0 = self.curve.eval(&apply(&m, &self.samples[0]));
        Some(
            self.samples[1..]
                .iter()
                .zip(&self.base_values[1..])
                .map(|(x, fx)| self.curve.eval(&apply(&m, x)) * f0 - mf0 * fx)
                .collect(),
        )
    }

    fn size(r: &[C]) -> f64 {
        r.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Levenberg–Marquardt with a forward-difference holomorphic Jacobian.
    fn solve(
        &self,
        frame: &Frame,
        mut z: [C; 4],
        settings: &OracleSettings,
    ) -> Option<(CVec, f64)> {
        let mut r = self.residuals(frame, &z)?;
        let mut mu = 1e-3;
        for _ in 0..settings.max_iterations {
            let res = Self::size(&r);
            if res < settings.residual_tol * 1e-2 {
                break;
            }
            let h = 1e-7 * (1.0 + z.iter().map(|c| c.norm()).fold(0.0, f64::max));
            let mut jac: Vec<[C; 4]> = vec![[C::default(); 4]; r.len()];
            for j in 0..4 {
                let mut zh = z;
                zh[j] += h;
                let rh = self.residuals(frame, &zh)?;
                for (row, (a, b)) in jac.iter_mut().zip(rh.iter().zip(&r)) {
                    row[j] = (a - b) / h;
                }
            }
            // normal equations (JᴴJ + μ·diag) δ = −Jᴴr
            let mut a = [[C::default(); 4]; 4];
            let mut g = [C::default(); 4];
            for (row, ri) in jac.iter().zip(&r) {
                for i in 0..4 {
                    g[i] -= row[i].conj() * ri;
                    for j in 0..4 {
                        a[i][j] += row[i].conj() * row[j];
                    }
                }
            }
            let mut improved = false;
            for _ in 0..10 {
                let mut damped = a;
                for (i, row) in damped.iter_mut().enumerate() {
                    row[i] += mu * (1.0 + a[i][i].re);
                }
                let Some(delta) = solve4(damped, g) else {
                    mu *= 10.0;
                    continue;
                };
                let mut zn = z;
                for i in 0..4 {
                    zn[i] += delta[i];
                }
                if let Some(rn) = self.residuals(frame, &zn) {
                    if Self::size(&rn) < res {
                        z = zn;
                        r = rn;
                        mu = (mu * 0.1).max(1e-15);
                        improved = true;
                        break;
                    }
                }
                mu *= 10.0;
            }
            if !improved {
                break;
            }
        }
        let res = Self::size(&r);
        (res < settings.residual_tol).then(|| (frame.center(&z), res))
    }
}

fn solve4(mut a: [[C; 4]; 4], mut b: [C; 4]) -> Option<[C; 4]> {
    for col in 0..4 {
        let piv = (col..4).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (x, v) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * v;
            }
            let v = b[col];
            b[row] -= f * v;
        }
    }
    let mut x = [C::default(); 4];
    for i in (0..4).rev() {
        let s: C = (i + 1..4).map(|k| a[i][k] * x[k]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

/// Fubini–Study distance between unit vectors.
pub fn fubini_study(p: &CVec, q: &CVec) -> f64 {
    let ip: C = (0..3).map(|i| p[i].conj() * q[i]).sum();
    ip.norm().min(1.0).acos()
}

fn canonical_center(p: CVec) -> CVec {
    let p = normalize(p);
    let k = (0..3)
        .max_by(|&i, &j| p[i].norm().total_cmp(&p[j].norm()))
        .expect("three coordinates");
    let phase = p[k].conj() / p[k].norm();
    p.map(|c| c * phase)
}

/// Counts centres of homologies with eigenvalue `e^{2πi/n}` preserving the curve,
/// i.e. points whose `|G[P]|` is divisible by `n`.
pub fn numeric_census(c: &NumericCurve, n: u32, settings: &OracleSettings) -> NumericCensus {
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let monomials = ((c.degree + 1) * (c.degree + 2) / 2) as usize;
    let samples: Vec<CVec> = (0..monomials + 8).map(|_| random_unit(&mut rng)).collect();
    let base_values: Vec<C> = samples.iter().map(|x| c.eval(x)).collect();
    let problem = Problem {
        curve: c,
        zeta_minus_one: C::from_polar(1.0, 2.0 * PI / n as f64) - 1.0,
        samples: &samples,
        base_values: &base_values,
    };
    let starts: Vec<(Frame, [C; 4])> = (0..settings.starts)
        .map(|_| {
            let frame = Frame {
                u: random_frame(&mut rng),
                w: random_frame(&mut rng),
            };
            let z = gaussian_vec(&mut rng);
            let e = gaussian_vec(&mut rng);
            (frame, [z[0], z[1], e[0], e[1]])
        })
        .collect();
    let found: Vec<Option<(CVec, f64)>> = starts
        .par_iter()
        .map(|(frame, z)| problem.solve(frame, *z, settings))
        .collect();
    let mut reps: Vec<CVec> = Vec::new();
    let mut worst: f64 = 0.0;
    let mut converged = 0;
    for (p, _) in found.into_iter().flatten() {
        converged += 1;
        let p = canonical_center(p);
        match reps
            .iter()
            .map(|r| fubini_study(r, &p))
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(&b.1))
        {
            Some((_, d)) if d < settings.cluster_tol => worst = worst.max(d),
            _ => reps.push(p),
        }
    }
    reps.sort_by(|a, b| {
        let key = |p: &CVec| p.iter().flat_map(|c| [c.re, c.im]).collect::<Vec<f64>>();
        key(a)
            .partial_cmp(&key(b))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    NumericCensus {
        order: n,
        count: reps.len(),
        centers: reps.iter().map(|p| p.map(|c| (c.re, c.im))).collect(),
        converged,
        starts: settings.starts,
        worst_cluster_radius: worst,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::FieldContext;

    #[test]
    fn embedding_of_roots() {
        let k = FieldContext::cyclotomic(8);
        let z = FieldElement::zeta_power(&k, 1);
        assert!((embed(&z) - C::from_polar(1.0, PI / 4.0)).norm() < 1e-14);
        let s = &z - &FieldElement::zeta_power(&k, 3);
        assert!((embed(&s) - C::new(2f64.sqrt(), 0.0)).norm() < 1e-14);
        let e = FieldContext::quad_extend(&FieldElement::from_int(&k, 2)).unwrap();
        let l = FieldElement::lambda(&e).unwrap();
        assert!((embed(&l) - C::new(2f64.sqrt(), 0.0)).norm() < 1e-14);
    }

    #[test]
    fn spot_check_separates() {
        let k = FieldContext::cyclotomic(8);
        let f = HomoPoly::from_ints(&k, 4, &[([4, 0, 0], 1), ([0, 4, 0], 1), ([0, 0, 4], 1)]);
        let c = NumericCurve::from_form(&f);
        let id = ProjMatrix::identity(&k);
        assert!(numeric_spot_check(&c, &embed_matrix(&id), 50, 1) < 1e-14);
        let bad = ProjMatrix::from_ints(&k, [[1, 0, 0], [0, 1, 0], [0, 0, 2]]).unwrap();
        assert!(numeric_spot_check(&c, &embed_matrix(&bad), 50, 1) > 1e-3);
    }
}
