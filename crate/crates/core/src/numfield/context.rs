use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::FieldElement;
use crate::error::{Error, Result};

/// The cyclotomic field `Q(ζ_N)`, optionally extended by a formal root `λ`
/// with `λ² = c` for a base-field element `c`.
///
/// Shared behind an `Arc`; every [`FieldElement`] carries one.
pub struct FieldContext {
    conductor: u32,
    phi: usize,
    /// Φ_N over the integers, low to high, monic.
    modulus: Vec<BigInt>,
    ext: Option<QuadExt>,
}

struct QuadExt {
    base: Arc<FieldContext>,
    /// `c = num / den` with `num` a base coordinate vector.
    num: Vec<BigInt>,
    den: BigInt,
}

impl FieldContext {
    /// Builds `Q(ζ_N)`.
    ///
    /// Panics if `conductor` is zero.
    pub fn cyclotomic(conductor: u32) -> Arc<FieldContext> {
        assert!(conductor >= 1, "conductor must be positive");
        let modulus = cyclotomic_polynomial(conductor);
        Arc::new(FieldContext {
            conductor,
            phi: modulus.len() - 1,
            modulus,
            ext: None,
        })
    }

    /// Adjoins a formal `λ` with `λ² = c`. The result is the quotient ring
    /// `K[λ]/(λ² − c)`; when `c` happens to be a square in `K` the ring has zero
    /// divisors, which surface as [`Error::ZeroDivisorEncountered`] on inversion.
    pub fn quad_extend(c: &FieldElement) -> Result<Arc<FieldContext>> {
        let base = c.context();
        if base.is_quadratic() {
            return Err(Error::Parse("cannot adjoin a second square root".into()));
        }
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Arc::new(FieldContext {
            conductor: base.conductor,
            phi: base.phi,
            modulus: base.modulus.clone(),
            ext: Some(QuadExt {
                base: base.clone(),
                num: c.num.clone(),
                den: c.den.clone(),
            }),
        }))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Degree φ(N) of the cyclotomic part.
    pub fn phi(&self) -> usize {
        self.phi
    }

    /// Number of rational coordinates per element.
    pub fn dim(&self) -> usize {
        if self.ext.is_some() {
            2 * self.phi
        } else {
            self.phi
        }
    }

    pub fn is_quadratic(&self) -> bool {
        self.ext.is_some()
    }

    /// Coefficients of Φ_N, low to high.
    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// The cyclotomic base field (the context itself when not extended).
    pub fn base(self: &Arc<Self>) -> Arc<FieldContext> {
        match &self.ext {
            Some(e) => e.base.clone(),
            None => self.clone(),
        }
    }

    /// `c` with `λ² = c`, as an element of the base field.
    pub fn lambda_square(&self) -> Option<FieldElement> {
        self.ext
            .as_ref()
            .map(|e| FieldElement::from_parts(e.base.clone(), e.num.clone(), e.den.clone()))
    }

    pub(crate) fn lambda_square_raw(&self) -> Option<(&[BigInt], &BigInt)> {
        self.ext.as_ref().map(|e| (e.num.as_slice(), &e.den))
    }

    /// Whether `Q(ζ_N)` contains a primitive `n`-th root of unity. For odd `N`
    /// the field also contains `ζ_{2N} = −ζ_N^{(N+1)/2}`.
    pub fn has_root_of_unity(&self, n: u32) -> bool {
        n >= 1
            && (self.conductor.is_multiple_of(n)
                || (self.conductor % 2 == 1 && (2 * self.conductor).is_multiple_of(n)))
    }

    /// Smallest conductor whose field contains both `ζ_N` and `ζ_n`.
    pub fn suggested_conductor(&self, n: u32) -> u32 {
        let l = self.conductor.lcm(&n);
        // Q(ζ_m) = Q(ζ_{2m}) for odd m
        if l.is_multiple_of(2) && (l / 2) % 2 == 1 {
            l / 2
        } else {
            l
        }
    }

    pub(crate) fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
            && match (&self.ext, &other.ext) {
                (None, None) => true,
                (Some(a), Some(b)) => a.num == b.num && a.den == b.den,
                _ => false,
            }
    }
}

impl Eq for FieldContext {}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lambda_square() {
            Some(c) => write!(f, "Q(zeta_{})[l]/(l^2 - ({}))", self.conductor, c),
            None => write!(f, "Q(zeta_{})", self.conductor),
        }
    }
}

/// Φ_N by dividing `x^N − 1` by Φ_d for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(28).len(), 13);
    }

    #[test]
    fn root_availability() {
        let k = FieldContext::cyclotomic(12);
        assert!(k.has_root_of_unity(4));
        assert!(!k.has_root_of_unity(5));
        assert_eq!(k.suggested_conductor(5), 60);
        let k3 = FieldContext::cyclotomic(3);
        assert!(k3.has_root_of_unity(6));
        assert!(k3.has_root_of_unity(2));
        assert!(!k3.has_root_of_unity(4));
        assert_eq!(k3.suggested_conductor(4), 12);
    }
}
