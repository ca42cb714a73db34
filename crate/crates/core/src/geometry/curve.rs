use std::sync::Arc;

use super::homopoly::HomoPoly;
use super::projective::ProjPoint;
use super::smooth::is_smooth;
use crate::error::{Error, Result};
use crate::numfield::{FieldContext, FieldElement};

/// A smooth plane curve of degree at least 4.
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    f: HomoPoly,
}

impl PlaneCurve {
    pub fn new(f: HomoPoly) -> Result<PlaneCurve> {
        if f.degree() < 4 {
            return Err(Error::DegreeTooLow(f.degree()));
        }
        if !is_smooth(&f)? {
            return Err(Error::NotSmooth);
        }
        Ok(PlaneCurve { f })
    }

    /// Skips the smoothness check; for transforms of curves already known to be smooth.
    pub(crate) fn trusted(f: HomoPoly) -> PlaneCurve {
        PlaneCurve { f }
    }

    pub fn form(&self) -> &HomoPoly {
        &self.f
    }

    pub fn degree(&self) -> u32 {
        self.f.degree()
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        self.f.context()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.f.eval(p.coords()).is_zero()
    }

    pub fn eval(&self, p: &ProjPoint) -> FieldElement {
        self.f.eval(p.coords())
    }

    pub fn specialize_lambda(&self, root: &FieldElement) -> Result<PlaneCurve> {
        Ok(PlaneCurve::trusted(self.f.specialize_lambda(root)?))
    }
}
