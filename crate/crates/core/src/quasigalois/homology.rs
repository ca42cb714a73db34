use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{dot, Mat3, ProjLine, ProjMatrix, ProjPoint, Vec3};
use crate::numfield::{FieldElement, UniPoly};

/// A central collineation of finite order: fixes `center` and every point of `axis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub center: ProjPoint,
    pub axis: ProjLine,
    /// Eigenvalue at the center relative to the axis.
    pub zeta: FieldElement,
    pub matrix: ProjMatrix,
    pub order: u32,
}

impl Homology {
    /// `I + (ζ−1)·c·aᵀ/(aᵀc)`.
    pub fn from_parts(
        center: ProjPoint,
        axis: ProjLine,
        zeta: FieldElement,
        order: u32,
    ) -> Result<Homology> {
        let ctx = center.context().clone();
        let ac = dot(axis.coords(), center.coords());
        if ac.is_zero() {
            return Err(Error::NotAHomology("center lies on the axis".into()));
        }
        let s = (&zeta - &FieldElement::one(&ctx)).div(&ac)?;
        let c = center.coords();
        let a = axis.coords();
        let outer = Mat3::from_rows(std::array::from_fn(|i| {
            std::array::from_fn(|j| &(&c[i] * &a[j]) * &s)
        }));
        let matrix = ProjMatrix::new(Mat3::identity(&ctx).add(&outer))?;
        Ok(Homology {
            center,
            axis,
            zeta,
            matrix,
            order,
        })
    }

    pub fn fixes(&self, p: &ProjPoint) -> Result<bool> {
        self.matrix.fixes(p)
    }

    /// Every nontrivial power `σ^k`, `0 < k < order`.
    pub fn nontrivial_powers(&self) -> Result<Vec<ProjMatrix>> {
        let mut out = Vec::new();
        let mut acc = self.matrix.clone();
        for _ in 1..self.order {
            out.push(acc.clone());
            acc = acc.mul(&self.matrix)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "center": self.center.to_json(),
            "axis": self.axis.to_json(),
            "zeta": self.zeta.to_string(),
            "order": self.order,
            "matrix": self.matrix.to_json(),
        })
    }
}

fn charpoly(m: &Mat3) -> UniPoly {
    let ctx = m.context();
    let r = &m.rows;
    let minor = |i: usize, j: usize| &(&r[i][i] * &r[j][j]) - &(&r[i][j] * &r[j][i]);
    let c2 = &(&minor(0, 1) + &minor(0, 2)) + &minor(1, 2);
    UniPoly::new(ctx, vec![-m.det(), c2, -m.trace(), FieldElement::one(ctx)])
}

/// Recovers center, axis and order of a homology given by its matrix.
pub fn homology_from_matrix(m: &ProjMatrix) -> Result<Homology> {
    let mat = m.matrix();
    let ctx = m.context().clone();
    let p = charpoly(mat);
    let g = p.gcd(&p.derivative())?;
    match g.degree() {
        Some(1) => {}
        Some(0) | None => return Err(Error::NotAHomology("eigenvalues are distinct".into())),
        _ => {
            return Err(Error::NotAHomology(
                "single eigenvalue of multiplicity three".into(),
            ))
        }
    }
    let nu = -g.coeff(0);
    let mu = &mat.trace() - &nu.scale_int(2);
    let shifted = mat.sub(&Mat3::identity(&ctx).scale(&nu));
    if shifted.rank() != 1 {
        return Err(Error::NotAHomology(
            "double eigenvalue is not semisimple".into(),
        ));
    }
    let row = shifted
        .rows
        .iter()
        .find(|r| r.iter().any(|x| !x.is_zero()))
        .expect("rank one")
        .clone();
    let col: Vec3 = (0..3)
        .map(|j| shifted.column(j))
        .find(|c| c.iter().any(|x| !x.is_zero()))
        .expect("rank one");
    let axis = ProjLine::new(row)?;
    let center = ProjPoint::new(col)?;
    let zeta = mu.div(&nu)?;
    let bound = 2 * ctx.conductor() as u64;
    let order = zeta
        .multiplicative_order(bound)
        .ok_or_else(|| Error::NotAHomology("eigenvalue ratio is not a root of unity".into()))?;
    Ok(Homology {
        center,
        axis,
        zeta,
        matrix: m.clone(),
        order: order as u32,
    })
}
