//! Finite subgroups of `PGL(3)` generated by explicit matrices, and their action on a line.

mod identities;

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{dot, ProjLine, ProjMatrix};
use crate::numfield::{FieldContext, FieldElement};

pub use identities::{
    four_points_identity, icosahedral_identity, FourPointsIdentity, IcosahedralIdentity,
};

pub const DEFAULT_GROUP_CAP: usize = 1000;

/// A finite group of projective matrices, closed under products.
#[derive(Clone, Debug)]
pub struct GroupSet {
    elements: Vec<ProjMatrix>,
    index: HashSet<ProjMatrix>,
    generators: Vec<ProjMatrix>,
}

/// Breadth-first closure of `generators` under right multiplication.
pub fn closure(ctx: &Arc<FieldContext>, generators: &[ProjMatrix], cap: usize) -> Result<GroupSet> {
    let id = ProjMatrix::identity(ctx);
    let mut elements = vec![id.clone()];
    let mut index: HashSet<ProjMatrix> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in generators {
            let p = e.mul(g)?;
            if index.contains(&p) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::ClosureCapExceeded { cap });
            }
            index.insert(p.clone());
            elements.push(p.clone());
            queue.push_back(p);
        }
    }
    let g = GroupSet {
        elements,
        index,
        generators: generators.to_vec(),
    };
    let order = g.order() as u64;
    for (k, count) in g.order_histogram()? {
        if !order.is_multiple_of(k) {
            return Err(Error::InvariantViolation(format!(
                "{count} elements of order {k} in a group of order {order}"
            )));
        }
    }
    Ok(g)
}

impl GroupSet {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ProjMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[ProjMatrix] {
        &self.generators
    }

    pub fn contains(&self, m: &ProjMatrix) -> bool {
        self.index.contains(m)
    }

    pub fn is_abelian(&self) -> Result<bool> {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if a.mul(b)? != b.mul(a)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Number of elements of each projective order.
    pub fn order_histogram(&self) -> Result<BTreeMap<u64, usize>> {
        let bound = self.order() as u64;
        let mut h = BTreeMap::new();
        for e in &self.elements {
            let k = e.projective_order(bound)?.ok_or_else(|| {
                Error::InvariantViolation("element order exceeds the group order".into())
            })?;
            *h.entry(k).or_insert(0) += 1;
        }
        Ok(h)
    }

    pub fn to_json(&self) -> Result<Value> {
        let hist: BTreeMap<String, usize> = self
            .order_histogram()?
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
        Ok(json!({
            "order": self.order(),
            "abelian": self.is_abelian()?,
            "histogram": hist,
            "elements": self.elements.iter().map(ProjMatrix::to_json).collect::<Vec<_>>(),
        }))
    }
}

/// 2×2 matrix up to scalars, first nonzero entry 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LineMatrix {
    m: [[FieldElement; 2]; 2],
}

impl LineMatrix {
    pub fn new(m: [[FieldElement; 2]; 2]) -> Result<LineMatrix> {
        let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let first = m
            .iter()
            .flatten()
            .find(|x| !x.is_zero())
            .expect("nonsingular")
            .clone();
        let inv = first.inv()?;
        Ok(LineMatrix {
            m: m.map(|r| r.map(|x| &x * &inv)),
        })
    }

    pub fn entries(&self) -> &[[FieldElement; 2]; 2] {
        &self.m
    }

    pub fn mul(&self, o: &LineMatrix) -> Result<LineMatrix> {
        let (a, b) = (&self.m, &o.m);
        LineMatrix::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]))
        }))
    }

    pub fn is_identity(&self) -> bool {
        self.m[0][1].is_zero() && self.m[1][0].is_zero() && self.m[0][0] == self.m[1][1]
    }

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
}

impl fmt::Debug for LineMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        )
    }
}

/// Action of `m` on `l` in the basis of the line's canonical spanning vectors.
pub fn restrict_to_line(m: &ProjMatrix, l: &ProjLine) -> Result<LineMatrix> {
    let (v1, v2) = l.spanning_vectors();
    let (j, k) = l.free_indices();
    let images = [m.matrix().apply(&v1), m.matrix().apply(&v2)];
    if images.iter().any(|w| !dot(l.coords(), w).is_zero()) {
        return Err(Error::LineNotPreserved);
    }
    LineMatrix::new([
        [images[0][j].clone(), images[1][j].clone()],
        [images[0][k].clone(), images[1][k].clone()],
    ])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineAction {
    pub kernel_order: usize,
    pub image_order: usize,
    pub image_histogram: BTreeMap<u64, usize>,
}

pub fn line_action_analysis(g: &GroupSet, l: &ProjLine) -> Result<LineAction> {
    let mut image: HashSet<LineMatrix> = HashSet::new();
    let mut kernel = 0;
    for e in g.elements() {
        let r = restrict_to_line(e, l)?;
        if r.is_identity() {
            kernel += 1;
        }
        image.insert(r);
    }
    if kernel * image.len() != g.order() {
        return Err(Error::InvariantViolation(format!(
            "kernel {kernel} times image {} differs from group order {}",
            image.len(),
            g.order()
        )));
    }
    let bound = image.len() as u64;
    let mut image_histogram = BTreeMap::new();
    for r in &image {
        let k = r.projective_order(bound)?.ok_or_else(|| {
            Error::InvariantViolation("image element order exceeds the image order".into())
        })?;
        *image_histogram.entry(k).or_insert(0) += 1;
    }
    Ok(LineAction {
        kernel_order: kernel,
        image_order: image.len(),
        image_histogram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Mat3;

    #[test]
    fn cyclic_and_line_actions() {
        let k = FieldContext::cyclotomic(3);
        let w = FieldElement::zeta_power(&k, 1);
        let one = FieldElement::one(&k);
        let s = ProjMatrix::new(Mat3::diag([w.clone(), one.clone(), one.clone()])).unwrap();
        let g = closure(&k, std::slice::from_ref(&s), 10).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_abelian().unwrap());
        let z0 = ProjLine::from_ints(&k, [0, 0, 1]);
        let r = restrict_to_line(&s, &z0).unwrap();
        assert_eq!(
            r,
            LineMatrix::new([[w, FieldElement::zero(&k)], [FieldElement::zero(&k), one]]).unwrap()
        );
        let diag = ProjLine::from_ints(&k, [1, -1, 0]);
        assert!(matches!(
            restrict_to_line(&s, &diag),
            Err(Error::LineNotPreserved)
        ));
        let swap = ProjMatrix::from_ints(&k, [[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap();
        let r = restrict_to_line(&swap, &z0).unwrap();
        assert_eq!(r.entries()[0][0], FieldElement::zero(&k));
        assert!(!r.is_identity() && r.mul(&r).unwrap().is_identity());
        let trivial = closure(&k, &[], 10).unwrap();
        let a = line_action_analysis(&trivial, &z0).unwrap();
        assert_eq!((a.kernel_order, a.image_order), (1, 1));
        assert!(matches!(
            closure(&k, &[s, swap], 3),
            Err(Error::ClosureCapExceeded { cap: 3 })
        ));
    }
}
