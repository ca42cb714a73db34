use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FieldContext;
use crate::error::{Error, Result};

/// Element of `Q(ζ_N)` (or of its formal quadratic extension), stored as an
/// integer coordinate vector over a common positive denominator.
///
/// Coordinates are on the power basis `1, ζ, …, ζ^{φ−1}`; under a quadratic
/// extension the vector is `[u | v]` for `u + vλ`.
#[derive(Clone)]
pub struct FieldElement {
    pub(crate) ctx: Arc<FieldContext>,
    pub(crate) num: Vec<BigInt>,
    pub(crate) den: BigInt,
}

impl FieldElement {
    pub(crate) fn from_parts(ctx: Arc<FieldContext>, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len(), ctx.dim());
        let mut e = FieldElement { ctx, num, den };
        e.normalize();
        e
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        FieldElement {
            ctx: ctx.clone(),
            num: vec![BigInt::zero(); ctx.dim()],
            den: BigInt::one(),
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<FieldContext>, v: i64) -> Self {
        Self::from_bigint(ctx, BigInt::from(v))
    }

    pub fn from_bigint(ctx: &Arc<FieldContext>, v: BigInt) -> Self {
        let mut e = Self::zero(ctx);
        e.num[0] = v;
        e
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); ctx.dim()];
        num[0] = q.numer().clone();
        Self::from_parts(ctx.clone(), num, q.denom().clone())
    }

    /// Builds from rational coordinates (length φ, or 2φ under an extension).
    pub fn from_coords(ctx: &Arc<FieldContext>, coords: &[BigRational]) -> Result<Self> {
        if coords.len() != ctx.dim() {
            return Err(Error::Schema {
                field: "coords".into(),
                message: format!("expected {} coordinates, got {}", ctx.dim(), coords.len()),
            });
        }
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = coords
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        Ok(Self::from_parts(ctx.clone(), num, den))
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_power(ctx: &Arc<FieldContext>, k: i64) -> Self {
        let n = ctx.conductor() as i64;
        let k = k.rem_euclid(n) as usize;
        let mut poly = vec![BigInt::zero(); k.max(ctx.phi() - 1) + 1];
        poly[k] = BigInt::one();
        let base = reduce(ctx.modulus(), poly);
        Self::from_base_vecs(ctx, base, None, BigInt::one())
    }

    /// The adjoined `λ`.
    pub fn lambda(ctx: &Arc<FieldContext>) -> Result<Self> {
        if !ctx.is_quadratic() {
            return Err(Error::Parse("field has no adjoined square root".into()));
        }
        let mut e = Self::zero(ctx);
        e.num[ctx.phi()] = BigInt::one();
        Ok(e)
    }

    fn from_base_vecs(
        ctx: &Arc<FieldContext>,
        u: Vec<BigInt>,
        v: Option<Vec<BigInt>>,
        den: BigInt,
    ) -> Self {
        let mut num = u;
        if ctx.is_quadratic() {
            num.extend(v.unwrap_or_else(|| vec![BigInt::zero(); ctx.phi()]));
        }
        Self::from_parts(ctx.clone(), num, den)
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// Rational coordinates in lowest terms.
    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when the element is a rational number.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    /// True when the `λ`-part vanishes (always true without an extension).
    pub fn in_base(&self) -> bool {
        !self.ctx.is_quadratic() || self.num[self.ctx.phi()..].iter().all(Zero::is_zero)
    }

    /// Splits `u + vλ` into base-field elements `(u, v)`.
    pub fn split(&self) -> (FieldElement, FieldElement) {
        let base = self.ctx.base();
        let phi = self.ctx.phi();
        let u = Self::from_parts(base.clone(), self.num[..phi].to_vec(), self.den.clone());
        let v = if self.ctx.is_quadratic() {
            Self::from_parts(base, self.num[phi..].to_vec(), self.den.clone())
        } else {
            Self::zero(&base)
        };
        (u, v)
    }

    /// Embeds a base-field element into `ctx` (a quadratic extension of its field,
    /// or the field itself).
    pub fn lift(&self, ctx: &Arc<FieldContext>) -> Result<Self> {
        if self.ctx.same_as(ctx) {
            return Ok(self.clone());
        }
        if self.ctx.is_quadratic() || !self.ctx.same_as(&ctx.base()) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self::from_base_vecs(
            ctx,
            self.num.clone(),
            None,
            self.den.clone(),
        ))
    }

    /// Substitutes `λ := root` (a base-field element with `root² = c`).
    pub fn specialize_lambda(&self, root: &FieldElement) -> Result<Self> {
        if !self.ctx.is_quadratic() {
            return Ok(self.clone());
        }
        if !root.ctx.same_as(&self.ctx.base()) {
            return Err(Error::ContextMismatch);
        }
        let (u, v) = self.split();
        Ok(u + v * root.clone())
    }

    fn check(&self, other: &Self) {
        assert!(
            self.ctx.same_as(&other.ctx),
            "field context mismatch: {:?} vs {:?}",
            self.ctx,
            other.ctx
        );
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in self.num.iter_mut() {
                *c /= &g;
            }
        }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        self.check(other);
        let num = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect::<Vec<_>>()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let x = a * &other.den;
                    let y = b * &self.den;
                    if negate {
                        x - y
                    } else {
                        x + y
                    }
                })
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Self::from_parts(self.ctx.clone(), num, den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ctx);
        }
        let m = self.ctx.modulus();
        let phi = self.ctx.phi();
        match self.ctx.lambda_square_raw() {
            None => {
                let num = reduce(m, poly_mul(&self.num, &other.num));
                Self::from_parts(self.ctx.clone(), num, &self.den * &other.den)
            }
            Some((cn, cd)) => {
                let (u1, v1) = self.num.split_at(phi);
                let (u2, v2) = other.num.split_at(phi);
                let uu = reduce(m, poly_mul(u1, u2));
                let vv = reduce(m, poly_mul(v1, v2));
                let cvv = reduce(m, poly_mul(cn, &vv));
                let uv = reduce(m, poly_add(&poly_mul(u1, v2), &poly_mul(v1, u2)));
                let mut num: Vec<BigInt> = uu.iter().zip(&cvv).map(|(a, b)| a * cd + b).collect();
                num.extend(uv.iter().map(|a| a * cd));
                Self::from_parts(self.ctx.clone(), num, &self.den * &other.den * cd)
            }
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Self::from_parts(
            self.ctx.clone(),
            self.num.iter().map(|c| c * &k).collect(),
            self.den.clone(),
        )
    }

    /// Multiplicative inverse.
    ///
    /// Under a quadratic extension, a nonzero non-invertible element `u + vλ`
    /// yields [`Error::ZeroDivisorEncountered`] with `root = −u/v`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !self.ctx.is_quadratic() {
            return Ok(self.inv_base());
        }
        let (u, v) = self.split();
        if v.is_zero() {
            return u.inv_base().lift(&self.ctx);
        }
        let c = self.ctx.lambda_square().expect("quadratic context");
        let norm = &u * &u - &(&c * &v) * &v;
        if norm.is_zero() {
            let root = -(&u * &v.inv_base());
            return Err(Error::ZeroDivisorEncountered { root });
        }
        let ni = norm.inv_base();
        let nu = (&u * &ni).lift(&self.ctx)?;
        let nv = (-(&v * &ni)).lift(&self.ctx)?;
        Ok(nu + nv * Self::lambda(&self.ctx)?)
    }

    fn inv_base(&self) -> Self {
        let m: Vec<BigRational> = self
            .ctx
            .modulus()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let a: Vec<BigRational> = self.num[..self.ctx.phi()]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // extended Euclid tracking only the cofactor of `a`
        let mut r0 = trim_q(m);
        let mut r1 = trim_q(a);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1 = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = divrem_q(&r0, &r1);
            let s2 = sub_q(&s0, &mul_q(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = r1[0].clone();
        assert!(
            !c.is_zero(),
            "element not invertible modulo an irreducible modulus"
        );
        let phi = self.ctx.phi();
        let mut coords: Vec<BigRational> = s1.iter().map(|x| x * &self.den / &c).collect();
        coords.resize(phi, BigRational::zero());
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num: Vec<BigInt> = coords
            .iter()
            .map(|q| q.numer() * (&den / q.denom()))
            .collect();
        let num = reduce(self.ctx.modulus(), num);
        Self::from_parts(self.ctx.clone(), num, den)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn pow_i(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    /// Multiplicative order if it is at most `bound`.
    pub fn multiplicative_order(&self, bound: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }

    /// Integer numerators and common denominator (for hashing and embedding).
    pub fn raw(&self) -> (&[BigInt], &BigInt) {
        (&self.num, &self.den)
    }
}

/// Primitive `n`-th root of unity `ζ_N^{N/n}`. For odd `N` and even `n | 2N`
/// the root `−ζ_N^{(N+1)/2}` of order `2N` is used.
pub fn root_of_unity(ctx: &Arc<FieldContext>, n: u32) -> Result<FieldElement> {
    let big_n = ctx.conductor();
    if n == 0 || !ctx.has_root_of_unity(n) {
        return Err(Error::RootOfUnityUnavailable {
            n,
            conductor: big_n,
            suggested: ctx.suggested_conductor(n.max(1)),
        });
    }
    if big_n.is_multiple_of(n) {
        return Ok(FieldElement::zeta_power(ctx, (big_n / n) as i64));
    }
    let z2n = -FieldElement::zeta_power(ctx, big_n.div_ceil(2) as i64);
    Ok(z2n.pow((2 * big_n / n) as u64))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            match b.get(i) {
                Some(y) => x + y,
                None => x,
            }
        })
        .collect()
}

/// Reduces an integer polynomial modulo the monic modulus, returning φ coefficients.
pub(crate) fn reduce(modulus: &[BigInt], mut p: Vec<BigInt>) -> Vec<BigInt> {
    let phi = modulus.len() - 1;
    for k in (phi..p.len()).rev() {
        if p[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut p[k]);
        for j in 0..phi {
            if !modulus[j].is_zero() {
                p[k - phi + j] -= &c * &modulus[j];
            }
        }
    }
    p.resize(phi, BigInt::zero());
    p
}

fn trim_q(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn sub_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim_q(out)
}

fn mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim_q(out)
}

fn divrem_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lc = b[db].clone();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] / &lc;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim_q(q), trim_q(r))
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.den == other.den && self.num == other.num
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.conductor().hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on rational coordinates; a total order with no algebraic meaning.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.num.iter().zip(&other.num) {
            let o = (a * &other.den).cmp(&(b * &self.den));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.num.len().cmp(&other.num.len())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(mut self) -> FieldElement {
        for c in self.num.iter_mut() {
            *c = -&*c;
        }
        self
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:expr) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                $imp(self, rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                $imp(&self, &rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                $imp(&self, rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                $imp(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &FieldElement, b: &FieldElement| a
    .add_impl(b, false));
forward_binop!(Sub, sub, |a: &FieldElement, b: &FieldElement| a
    .add_impl(b, true));
forward_binop!(Mul, mul, |a: &FieldElement, b: &FieldElement| a.mul_impl(b));

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = self.add_impl(rhs, false);
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = self.add_impl(rhs, true);
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = self.mul_impl(rhs);
    }
}
