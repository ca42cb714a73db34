//! Projective points, lines and matrices; ternary forms; smoothness; line restrictions.

mod curve;
mod homopoly;
mod line;
mod projective;
mod smooth;

pub use curve::PlaneCurve;
pub use homopoly::{Exps, HomoPoly};
pub use line::{
    intersection_multiplicity, intersection_profile, restrict_to_line, tangent_line,
    LineRestriction,
};
pub use projective::{cross, dot, unit, zero3, Mat3, ProjLine, ProjMatrix, ProjPoint, Vec3};
pub use smooth::is_smooth;

/// Free-function form of [`HomoPoly::pullback`].
pub fn pullback(f: &HomoPoly, m: &ProjMatrix) -> HomoPoly {
    f.pullback(m)
}

pub fn proportionality(
    f: &HomoPoly,
    g: &HomoPoly,
) -> crate::Result<Option<crate::numfield::FieldElement>> {
    f.proportionality(g)
}

pub fn polar_curve(f: &HomoPoly, p: &ProjPoint) -> HomoPoly {
    f.polar(p.coords())
}

pub fn hessian_det(f: &HomoPoly) -> HomoPoly {
    f.hessian_det()
}
