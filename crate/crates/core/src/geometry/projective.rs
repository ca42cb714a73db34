use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numfield::{parse_triple, FieldContext, FieldElement};

pub type Vec3 = [FieldElement; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> FieldElement {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn unit(ctx: &Arc<FieldContext>, i: usize) -> Vec3 {
    let mut v = zero3(ctx);
    v[i] = FieldElement::one(ctx);
    v
}

pub fn zero3(ctx: &Arc<FieldContext>) -> Vec3 {
    [
        FieldElement::zero(ctx),
        FieldElement::zero(ctx),
        FieldElement::zero(ctx),
    ]
}

fn pivot(v: &Vec3) -> Option<usize> {
    v.iter().position(|c| !c.is_zero())
}

fn canonical(v: Vec3) -> Result<Vec3> {
    let p = pivot(&v).ok_or(Error::ZeroVector)?;
    if v[p].is_one() {
        return Ok(v);
    }
    let inv = v[p].inv()?;
    Ok(v.map(|c| &c * &inv))
}

macro_rules! proj_vector {
    ($name:ident, $open:expr, $close:expr) => {
        #[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name {
            coords: Vec3,
        }

        impl $name {
            /// Scales so that the first nonzero coordinate is 1.
            pub fn new(coords: Vec3) -> Result<Self> {
                Ok($name {
                    coords: canonical(coords)?,
                })
            }

            pub fn from_ints(ctx: &Arc<FieldContext>, v: [i64; 3]) -> Self {
                Self::new(v.map(|x| FieldElement::from_int(ctx, x)))
                    .expect("nonzero integer vector")
            }

            /// Parses `"a,b,c"` with field-element literals.
            pub fn parse(ctx: &Arc<FieldContext>, s: &str) -> Result<Self> {
                Self::new(parse_triple(ctx, s)?)
            }

            pub fn coords(&self) -> &Vec3 {
                &self.coords
            }

            pub fn context(&self) -> &Arc<FieldContext> {
                self.coords[0].context()
            }

            /// Index of the first nonzero coordinate (which equals 1).
            pub fn pivot(&self) -> usize {
                pivot(&self.coords).expect("canonical vector is nonzero")
            }

            pub fn lift(&self, ctx: &Arc<FieldContext>) -> Result<Self> {
                let [a, b, c] = &self.coords;
                Self::new([a.lift(ctx)?, b.lift(ctx)?, c.lift(ctx)?])
            }

            pub fn specialize_lambda(&self, root: &FieldElement) -> Result<Self> {
                let [a, b, c] = &self.coords;
                Self::new([
                    a.specialize_lambda(root)?,
                    b.specialize_lambda(root)?,
                    c.specialize_lambda(root)?,
                ])
            }

            pub fn to_json(&self) -> serde_json::Value {
                serde_json::Value::Array(
                    self.coords
                        .iter()
                        .map(|c| serde_json::Value::String(c.to_string()))
                        .collect(),
                )
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let [a, b, c] = &self.coords;
                write!(f, "{}{a} : {b} : {c}{}", $open, $close)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self)
            }
        }
    };
}

proj_vector!(ProjPoint, "(", ")");
proj_vector!(ProjLine, "[", "]");

impl ProjPoint {
    pub fn lies_on(&self, l: &ProjLine) -> bool {
        dot(&self.coords, &l.coords).is_zero()
    }
}

impl ProjLine {
    pub fn through(p: &ProjPoint, q: &ProjPoint) -> Result<ProjLine> {
        if p == q {
            return Err(Error::SamePoint);
        }
        ProjLine::new(cross(&p.coords, &q.coords))
    }

    pub fn meet(&self, other: &ProjLine) -> Result<ProjPoint> {
        ProjPoint::new(cross(&self.coords, &other.coords))
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        p.lies_on(self)
    }

    /// Indices `(j, k)` of the free coordinates, `j < k`.
    pub fn free_indices(&self) -> (usize, usize) {
        match self.pivot() {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    }

    /// The two canonical spanning vectors `v_j = e_j − a_j e_p`, `v_k = e_k − a_k e_p`
    /// where `p` is the pivot. A point `x` on the line equals `x_j v_j + x_k v_k`.
    pub fn spanning_vectors(&self) -> (Vec3, Vec3) {
        let ctx = self.context();
        let p = self.pivot();
        let (j, k) = self.free_indices();
        let mut vj = unit(ctx, j);
        vj[p] = -&self.coords[j];
        let mut vk = unit(ctx, k);
        vk[p] = -&self.coords[k];
        (vj, vk)
    }

    /// Coordinates of `x` in the spanning basis.
    pub fn local_coords(&self, x: &ProjPoint) -> Result<(FieldElement, FieldElement)> {
        if !self.contains(x) {
            return Err(Error::PointNotOnLine);
        }
        let (j, k) = self.free_indices();
        Ok((x.coords[j].clone(), x.coords[k].clone()))
    }
}

/// 3×3 matrix acting on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3 {
    pub rows: [Vec3; 3],
}

impl Mat3 {
    pub fn identity(ctx: &Arc<FieldContext>) -> Mat3 {
        Mat3 {
            rows: [unit(ctx, 0), unit(ctx, 1), unit(ctx, 2)],
        }
    }

    pub fn from_rows(rows: [Vec3; 3]) -> Mat3 {
        Mat3 { rows }
    }

    pub fn from_columns(cols: [Vec3; 3]) -> Mat3 {
        Mat3 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone())),
        }
    }

    pub fn from_ints(ctx: &Arc<FieldContext>, m: [[i64; 3]; 3]) -> Mat3 {
        Mat3 {
            rows: m.map(|r| r.map(|x| FieldElement::from_int(ctx, x))),
        }
    }

    pub fn diag(d: [FieldElement; 3]) -> Mat3 {
        let ctx = d[0].context().clone();
        let mut m = Mat3::identity(&ctx);
        for (i, x) in d.into_iter().enumerate() {
            m.rows[i][i] = x;
        }
        m
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        self.rows[0][0].context()
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Vec3 {
        std::array::from_fn(|i| self.rows[i][j].clone())
    }

    pub fn mul(&self, o: &Mat3) -> Mat3 {
        Mat3 {
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| {
                    &(&(&self.rows[i][0] * &o.rows[0][j]) + &(&self.rows[i][1] * &o.rows[1][j]))
                        + &(&self.rows[i][2] * &o.rows[2][j])
                })
            }),
        }
    }

    pub fn apply(&self, v: &Vec3) -> Vec3 {
        std::array::from_fn(|i| dot(&self.rows[i], v))
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &Vec3) -> Vec3 {
        std::array::from_fn(|j| {
            &(&(&v[0] * &self.rows[0][j]) + &(&v[1] * &self.rows[1][j]))
                + &(&v[2] * &self.rows[2][j])
        })
    }

    pub fn det(&self) -> FieldElement {
        let r = &self.rows;
        dot(&r[0], &cross(&r[1], &r[2]))
    }

    pub fn adjugate(&self) -> Mat3 {
        let r = &self.rows;
        // columns of the adjugate are cross products of rows
        Mat3::from_columns([
            cross(&r[1], &r[2]),
            cross(&r[2], &r[0]),
            cross(&r[0], &r[1]),
        ])
    }

    pub fn inverse(&self) -> Result<Mat3> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let inv = d.inv()?;
        Ok(self.adjugate().scale(&inv))
    }

    pub fn scale(&self, c: &FieldElement) -> Mat3 {
        Mat3 {
            rows: self.rows.clone().map(|r| r.map(|x| &x * c)),
        }
    }

    pub fn add(&self, o: &Mat3) -> Mat3 {
        Mat3 {
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| &self.rows[i][j] + &o.rows[i][j])
            }),
        }
    }

    pub fn sub(&self, o: &Mat3) -> Mat3 {
        Mat3 {
            rows: std::array::from_fn(|i| {
                std::array::from_fn(|j| &self.rows[i][j] - &o.rows[i][j])
            }),
        }
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3::from_columns(self.rows.clone())
    }

    pub fn trace(&self) -> FieldElement {
        &(&self.rows[0][0] + &self.rows[1][1]) + &self.rows[2][2]
    }

    pub fn rank(&self) -> usize {
        if self.det().is_zero() {
            let adj = self.adjugate();
            if adj.rows.iter().flatten().any(|x| !x.is_zero()) {
                2
            } else if self.rows.iter().flatten().any(|x| !x.is_zero()) {
                1
            } else {
                0
            }
        } else {
            3
        }
    }

    pub fn pow(&self, mut e: u64) -> Mat3 {
        let mut acc = Mat3::identity(self.context());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        acc
    }

    pub fn lift(&self, ctx: &Arc<FieldContext>) -> Result<Mat3> {
        let mut rows = self.rows.clone();
        for r in rows.iter_mut() {
            for x in r.iter_mut() {
                *x = x.lift(ctx)?;
            }
        }
        Ok(Mat3 { rows })
    }

    pub fn specialize_lambda(&self, root: &FieldElement) -> Result<Mat3> {
        let mut rows = self.rows.clone();
        for r in rows.iter_mut() {
            for x in r.iter_mut() {
                *x = x.specialize_lambda(root)?;
            }
        }
        Ok(Mat3 { rows })
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| format!("[{}, {}, {}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Invertible 3×3 matrix up to scalars, stored with its first nonzero entry
/// (row-major) equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    m: Mat3,
}

impl ProjMatrix {
    pub fn new(m: Mat3) -> Result<ProjMatrix> {
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let first = m
            .rows
            .iter()
            .flatten()
            .find(|x| !x.is_zero())
            .expect("invertible matrix has a nonzero entry");
        if first.is_one() {
            return Ok(ProjMatrix { m });
        }
        let inv = first.inv()?;
        Ok(ProjMatrix { m: m.scale(&inv) })
    }

    pub fn identity(ctx: &Arc<FieldContext>) -> ProjMatrix {
        ProjMatrix {
            m: Mat3::identity(ctx),
        }
    }

    pub fn from_ints(ctx: &Arc<FieldContext>, m: [[i64; 3]; 3]) -> Result<ProjMatrix> {
        Self::new(Mat3::from_ints(ctx, m))
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        self.m.context()
    }

    pub fn mul(&self, o: &ProjMatrix) -> Result<ProjMatrix> {
        Self::new(self.m.mul(&o.m))
    }

    pub fn inverse(&self) -> Result<ProjMatrix> {
        // the adjugate is a scalar multiple of the inverse
        Self::new(self.m.adjugate())
    }

    pub fn is_identity(&self) -> bool {
        self.m == Mat3::identity(self.context())
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        ProjPoint::new(self.m.apply(p.coords()))
    }

    /// Image of a line under `x ↦ Mx`, i.e. `ℓ·M⁻¹`.
    pub fn apply_line(&self, l: &ProjLine) -> Result<ProjLine> {
        ProjLine::new(self.m.adjugate().apply_row(l.coords()))
    }

    pub fn fixes(&self, p: &ProjPoint) -> Result<bool> {
        Ok(&self.apply(p)? == p)
    }

    pub fn pow(&self, e: u64) -> Result<ProjMatrix> {
        Self::new(self.m.pow(e))
    }

    /// Smallest `k ≥ 1` with `M^k` scalar, if at most `bound`.
    pub fn projective_order(&self, bound: u64) -> Result<Option<u64>> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Ok(Some(k));
            }
            acc = acc.mul(self)?;
        }
        Ok(None)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.m
                .rows
                .iter()
                .map(|r| {
                    serde_json::Value::Array(
                        r.iter()
                            .map(|x| serde_json::Value::String(x.to_string()))
                            .collect(),
                    )
                })
                .collect(),
        )
    }
}

impl fmt::Debug for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_scaling() {
        let k = FieldContext::cyclotomic(4);
        let p = ProjPoint::from_ints(&k, [0, 3, -6]);
        assert_eq!(p, ProjPoint::from_ints(&k, [0, 1, -2]));
        assert!(ProjPoint::from_ints(&k, [1, 1, 0]).lies_on(&ProjLine::from_ints(&k, [1, -1, 5])));
        assert!(matches!(ProjPoint::new(zero3(&k)), Err(Error::ZeroVector)));
    }

    #[test]
    fn spanning_vectors_reconstruct_points() {
        let k = FieldContext::cyclotomic(3);
        let l = ProjLine::from_ints(&k, [2, -1, 3]);
        let (vj, vk) = l.spanning_vectors();
        assert!(dot(&vj, l.coords()).is_zero() && dot(&vk, l.coords()).is_zero());
        let x = ProjPoint::new(cross(
            l.coords(),
            &[
                FieldElement::from_int(&k, 1),
                FieldElement::from_int(&k, 5),
                FieldElement::from_int(&k, 7),
            ],
        ))
        .unwrap();
        let (a, b) = l.local_coords(&x).unwrap();
        let rebuilt: Vec3 = std::array::from_fn(|i| &(&a * &vj[i]) + &(&b * &vk[i]));
        assert_eq!(ProjPoint::new(rebuilt).unwrap(), x);
    }

    #[test]
    fn matrix_inverse_and_line_image() {
        let k = FieldContext::cyclotomic(3);
        let m = ProjMatrix::from_ints(&k, [[1, 2, 0], [0, 1, 3], [4, 0, 1]]).unwrap();
        assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
        let p = ProjPoint::from_ints(&k, [1, 1, 1]);
        let q = ProjPoint::from_ints(&k, [0, 1, 2]);
        let l = ProjLine::through(&p, &q).unwrap();
        let ml = m.apply_line(&l).unwrap();
        assert!(ml.contains(&m.apply(&p).unwrap()));
        assert!(ml.contains(&m.apply(&q).unwrap()));
    }
}
