use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::projective::{Mat3, ProjMatrix, Vec3};
use crate::error::{Error, Result};
use crate::numfield::{context_from_json, context_to_json, element_in, FieldContext, FieldElement};

pub type Exps = [u32; 3];

/// Homogeneous polynomial in `X, Y, Z`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct HomoPoly {
    ctx: Arc<FieldContext>,
    degree: u32,
    terms: BTreeMap<Exps, FieldElement>,
}

impl HomoPoly {
    pub fn new(
        ctx: &Arc<FieldContext>,
        degree: u32,
        terms: impl IntoIterator<Item = (Exps, FieldElement)>,
    ) -> Result<HomoPoly> {
        let mut p = HomoPoly::zero(ctx, degree);
        for (e, c) in terms {
            if e.iter().sum::<u32>() != degree {
                return Err(Error::DegreeMismatch(format!(
                    "monomial {e:?} in a form of degree {degree}"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn zero(ctx: &Arc<FieldContext>, degree: u32) -> HomoPoly {
        HomoPoly {
            ctx: ctx.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Integer coefficients; panics on inconsistent degrees.
    pub fn from_ints(ctx: &Arc<FieldContext>, degree: u32, terms: &[(Exps, i64)]) -> HomoPoly {
        Self::new(
            ctx,
            degree,
            terms
                .iter()
                .map(|&(e, c)| (e, FieldElement::from_int(ctx, c))),
        )
        .expect("consistent degrees")
    }

    /// `aX + bY + cZ`.
    pub fn linear(v: &Vec3) -> HomoPoly {
        let ctx = v[0].context().clone();
        let mut p = HomoPoly::zero(&ctx, 1);
        for (i, c) in v.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn constant(c: FieldElement) -> HomoPoly {
        let ctx = c.context().clone();
        let mut p = HomoPoly::zero(&ctx, 0);
        p.add_term([0, 0, 0], c);
        p
    }

    fn add_term(&mut self, e: Exps, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exps, FieldElement> {
        &self.terms
    }

    pub fn coeff(&self, e: Exps) -> FieldElement {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(&self.ctx))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &Vec3) -> FieldElement {
        let pw: Vec<Vec<FieldElement>> = x
            .iter()
            .map(|xi| {
                let mut v = vec![FieldElement::one(&self.ctx)];
                for k in 0..self.degree as usize {
                    v.push(&v[k] * xi);
                }
                v
            })
            .collect();
        let mut acc = FieldElement::zero(&self.ctx);
        for (e, c) in &self.terms {
            acc +=
                &(&(c * &pw[0][e[0] as usize]) * &(&pw[1][e[1] as usize] * &pw[2][e[2] as usize]));
        }
        acc
    }

    pub fn add(&self, o: &HomoPoly) -> HomoPoly {
        assert_eq!(self.degree, o.degree, "adding forms of different degree");
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn sub(&self, o: &HomoPoly) -> HomoPoly {
        self.add(&o.scale(&FieldElement::from_int(&self.ctx, -1)))
    }

    pub fn scale(&self, c: &FieldElement) -> HomoPoly {
        let mut p = HomoPoly::zero(&self.ctx, self.degree);
        for (e, a) in &self.terms {
            p.add_term(*e, a * c);
        }
        p
    }

    pub fn mul(&self, o: &HomoPoly) -> HomoPoly {
        let mut p = HomoPoly::zero(&self.ctx, self.degree + o.degree);
        for (e1, a) in &self.terms {
            for (e2, b) in &o.terms {
                p.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], a * b);
            }
        }
        p
    }

    /// `∂/∂X_var`.
    pub fn partial(&self, var: usize) -> HomoPoly {
        let mut p = HomoPoly::zero(&self.ctx, self.degree.saturating_sub(1));
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut f = *e;
                f[var] -= 1;
                p.add_term(f, c.scale_int(e[var] as i64));
            }
        }
        p
    }

    pub fn gradient(&self) -> [HomoPoly; 3] {
        [self.partial(0), self.partial(1), self.partial(2)]
    }

    /// Substitutes the three linear forms for `X, Y, Z`.
    pub fn compose(&self, forms: &[HomoPoly; 3]) -> HomoPoly {
        let d = self.degree as usize;
        let one = HomoPoly::constant(FieldElement::one(&self.ctx));
        let powers: Vec<Vec<HomoPoly>> = forms
            .iter()
            .map(|l| {
                let mut v = vec![one.clone()];
                for k in 0..d {
                    let next = v[k].mul(l);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = HomoPoly::zero(&self.ctx, self.degree * forms[0].degree.max(1));
        let mut xy_cache: BTreeMap<(u32, u32), HomoPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let xy = xy_cache
                .entry((e[0], e[1]))
                .or_insert_with(|| powers[0][e[0] as usize].mul(&powers[1][e[1] as usize]));
            let t = xy.mul(&powers[2][e[2] as usize]);
            for (m, a) in t.terms {
                out.add_term(m, &a * c);
            }
        }
        out
    }

    /// `F∘M`, i.e. `x ↦ F(Mx)`; satisfies `pullback(F, M₁M₂) = pullback(pullback(F, M₁), M₂)`.
    pub fn pullback_mat(&self, m: &Mat3) -> HomoPoly {
        let forms = [
            HomoPoly::linear(&m.rows[0]),
            HomoPoly::linear(&m.rows[1]),
            HomoPoly::linear(&m.rows[2]),
        ];
        self.compose(&forms)
    }

    pub fn pullback(&self, m: &ProjMatrix) -> HomoPoly {
        self.pullback_mat(m.matrix())
    }

    /// `λ` with `other = λ·self`, if any.
    pub fn proportionality(&self, other: &HomoPoly) -> Result<Option<FieldElement>> {
        if self.degree != other.degree || self.terms.len() != other.terms.len() {
            return Ok(None);
        }
        let Some((e0, c0)) = self.terms.iter().next() else {
            return Ok(other.is_zero().then(|| FieldElement::one(&self.ctx)));
        };
        let Some(d0) = other.terms.get(e0) else {
            return Ok(None);
        };
        let lam = d0.div(c0)?;
        for (e, c) in &self.terms {
            match other.terms.get(e) {
                Some(d) if *d == c * &lam => {}
                _ => return Ok(None),
            }
        }
        Ok(Some(lam))
    }

    /// `P_X·F_X + P_Y·F_Y + P_Z·F_Z`.
    pub fn polar(&self, p: &Vec3) -> HomoPoly {
        let g = self.gradient();
        g[0].scale(&p[0])
            .add(&g[1].scale(&p[1]))
            .add(&g[2].scale(&p[2]))
    }

    /// Determinant of the matrix of second partials.
    pub fn hessian_det(&self) -> HomoPoly {
        let g = self.gradient();
        let h: Vec<Vec<HomoPoly>> = g
            .iter()
            .map(|gi| (0..3).map(|j| gi.partial(j)).collect())
            .collect();
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            h[1][a].mul(&h[2][b]).sub(&h[1][c].mul(&h[2][d]))
        };
        h[0][0]
            .mul(&minor(1, 2, 2, 1))
            .sub(&h[0][1].mul(&minor(0, 2, 2, 0)))
            .add(&h[0][2].mul(&minor(0, 1, 1, 0)))
    }

    /// True when every coefficient lies in the base field of a quadratic extension.
    pub fn in_base(&self) -> bool {
        self.terms.values().all(FieldElement::in_base)
    }

    pub fn change_context(&self, ctx: &Arc<FieldContext>) -> Result<HomoPoly> {
        let mut p = HomoPoly::zero(ctx, self.degree);
        for (e, c) in &self.terms {
            let c = if c.context().is_quadratic() && !ctx.is_quadratic() {
                let (u, v) = c.split();
                if !v.is_zero() {
                    return Err(Error::ContextMismatch);
                }
                u
            } else {
                c.lift(ctx)?
            };
            p.add_term(*e, c);
        }
        Ok(p)
    }

    pub fn specialize_lambda(&self, root: &FieldElement) -> Result<HomoPoly> {
        let mut p = HomoPoly::zero(root.context(), self.degree);
        for (e, c) in &self.terms {
            p.add_term(*e, c.specialize_lambda(root)?);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": context_to_json(&self.ctx),
            "degree": self.degree,
            "terms": self.terms.iter().map(|(e, c)| json!({"exps": e, "coeff": c.to_string()})).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<HomoPoly> {
        let schema = |field: &str, msg: &str| Error::Schema {
            field: field.into(),
            message: msg.into(),
        };
        let field = v.get("field").ok_or_else(|| schema("field", "missing"))?;
        let ctx = context_from_json(field, "field")?;
        let degree = v
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| schema("degree", "expected a nonnegative integer"))?
            as u32;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("terms", "expected an array"))?;
        let mut p = HomoPoly::zero(&ctx, degree);
        for (i, t) in terms.iter().enumerate() {
            let exps = t
                .get("exps")
                .and_then(Value::as_array)
                .filter(|a| a.len() == 3)
                .and_then(|a| {
                    a.iter()
                        .map(|x| x.as_u64().map(|x| x as u32))
                        .collect::<Option<Vec<_>>>()
                })
                .ok_or_else(|| {
                    schema(
                        &format!("terms[{i}].exps"),
                        "expected three nonnegative integers",
                    )
                })?;
            let e = [exps[0], exps[1], exps[2]];
            if e.iter().sum::<u32>() != degree {
                return Err(schema(
                    &format!("terms[{i}].exps"),
                    "exponents do not sum to the degree",
                ));
            }
            let c = t
                .get("coeff")
                .ok_or_else(|| schema(&format!("terms[{i}].coeff"), "missing"))?;
            p.add_term(e, element_in(&ctx, c, &format!("terms[{i}].coeff"))?);
        }
        Ok(p)
    }
}

impl fmt::Display for HomoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["X", "Y", "Z"];
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(names)
                    .filter(|(k, _)| **k > 0)
                    .map(|(k, n)| {
                        if *k == 1 {
                            n.to_string()
                        } else {
                            format!("{n}^{k}")
                        }
                    })
                    .collect();
                let cs = c.to_string();
                let simple = !cs.contains(' ');
                match (mono.is_empty(), cs.as_str()) {
                    (true, _) => format!("({cs})"),
                    (false, "1") => mono.join("*"),
                    (false, "-1") => format!("-{}", mono.join("*")),
                    _ if simple => format!("{cs}*{}", mono.join("*")),
                    _ => format!("({cs})*{}", mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for HomoPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
