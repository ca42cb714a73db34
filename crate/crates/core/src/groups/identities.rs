//! Two explicit matrix identities: four order-3 points on a line force an
//! involution, and an icosahedral line action forces an element of order 10.

use crate::error::Result;
use crate::geometry::{Mat3, ProjMatrix};
use crate::numfield::{root_of_unity, FieldContext, FieldElement};

#[derive(Clone, Debug)]
pub struct FourPointsIdentity {
    /// `α = 1/(2ω² + 1)`.
    pub alpha: FieldElement,
    pub alpha_square: FieldElement,
    /// `(σ₂σ₁²)²` projectively.
    pub product_square: ProjMatrix,
    pub expected: ProjMatrix,
}

impl FourPointsIdentity {
    pub fn holds(&self) -> bool {
        let ctx = self.alpha.context();
        self.alpha_square
            == FieldElement::from_int(ctx, -1)
                .div(&FieldElement::from_int(ctx, 3))
                .expect("3 ≠ 0")
            && self.product_square == self.expected
    }
}

/// Over `Q(ω)`: `σ₁ = diag(ω,1,1)`, `σ₂` the order-3 homology at `(1:−1:0)` permuting
/// `(1:0:0), (1:−ω:0), (1:−ω²:0)`; then `(σ₂σ₁²)² = diag(−1,−1,1)`.
pub fn four_points_identity() -> Result<FourPointsIdentity> {
    let ctx = FieldContext::cyclotomic(3);
    let w = root_of_unity(&ctx, 3)?;
    let w2 = w.pow(2);
    let one = FieldElement::one(&ctx);
    let zero = FieldElement::zero(&ctx);
    let alpha = (&w2.scale_int(2) + &one).inv()?;
    let s1 = Mat3::diag([w.clone(), one.clone(), one.clone()]);
    let s2 = Mat3::from_rows([
        [-(&w * &alpha), &w2.scale_int(2) * &alpha, zero.clone()],
        [&w2 * &alpha, alpha.clone(), zero.clone()],
        [zero.clone(), zero.clone(), one.clone()],
    ]);
    let prod = s2.mul(&s1.pow(2));
    let minus = -one.clone();
    Ok(FourPointsIdentity {
        alpha_square: &alpha * &alpha,
        alpha,
        product_square: ProjMatrix::new(prod.mul(&prod))?,
        expected: ProjMatrix::new(Mat3::diag([minus.clone(), minus, one]))?,
    })
}

#[derive(Clone, Debug)]
pub struct IcosahedralIdentity {
    /// `(A_σ A_{σ₂} A_σ)²`, unscaled.
    pub square: Mat3,
    pub is_diagonal: bool,
    /// Third diagonal entry over the first.
    pub ratio: FieldElement,
    pub expected_ratio: FieldElement,
    pub projective_order: Option<u64>,
}

impl IcosahedralIdentity {
    pub fn holds(&self) -> bool {
        self.is_diagonal && self.ratio == self.expected_ratio && self.projective_order == Some(10)
    }
}

/// Over `Q(ζ₅)[α]/(α² − (1 − ζ − ζ⁴))` (formally, or with `alpha` given explicitly
/// in `Q(ζ₅)`): `A_σ = diag(ζ,1,1)` and `A_{σ₂}` the order-5 homology at `(1:α:0)`.
pub fn icosahedral_identity(alpha: Option<FieldElement>) -> Result<IcosahedralIdentity> {
    let base = FieldContext::cyclotomic(5);
    let z = FieldElement::zeta_power(&base, 1);
    let c = &(&FieldElement::one(&base) - &z) - &z.pow(4);
    let (ctx, alpha) = match alpha {
        Some(a) => (a.context().clone(), a),
        None => {
            let ctx = FieldContext::quad_extend(&c)?;
            let a = FieldElement::lambda(&ctx)?;
            (ctx, a)
        }
    };
    let z = z.lift(&ctx)?;
    let one = FieldElement::one(&ctx);
    let zero = FieldElement::zero(&ctx);
    let a2 = &alpha * &alpha;
    let zm1 = &z - &one;
    let s = Mat3::diag([z.clone(), one.clone(), one.clone()]);
    let s2 = Mat3::from_rows([
        [&z + &a2, &zm1 * &alpha, zero.clone()],
        [&zm1 * &alpha, &(&z * &a2) + &one, zero.clone()],
        [zero.clone(), zero, &a2 + &one],
    ]);
    let m = s.mul(&s2).mul(&s);
    let square = m.mul(&m);
    let r = &square.rows;
    let is_diagonal =
        (0..3).all(|i| (0..3).all(|j| i == j || r[i][j].is_zero())) && r[0][0] == r[1][1];
    let ratio = r[2][2].div(&r[0][0])?;
    let projective_order = ProjMatrix::new(square.clone())?.projective_order(20)?;
    Ok(IcosahedralIdentity {
        is_diagonal,
        ratio,
        expected_ratio: -z.pow(2),
        projective_order,
        square,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_points() {
        let id = four_points_identity().unwrap();
        assert!(id.holds(), "{:?}", id);
    }

    #[test]
    fn icosahedral_formal_and_split() {
        assert!(icosahedral_identity(None).unwrap().holds());
        // 1 − ζ − ζ⁴ = (ζ + ζ⁴)², so α also exists inside Q(ζ₅)
        let k = FieldContext::cyclotomic(5);
        let a = &FieldElement::zeta_power(&k, 1) + &FieldElement::zeta_power(&k, 4);
        for alpha in [a.clone(), -a] {
            assert!(icosahedral_identity(Some(alpha)).unwrap().holds());
        }
    }
}
