use crate::error::{inconsistency, Error, Result};
use crate::multilinear::{support, ScalarProduct, ThreeVector};

use super::{CompatibleStructure, Sign};

/// Type `(p, q)` of a para-complex cone element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularReport {
    pub type_pq: (usize, usize),
    pub regular: bool,
    /// `dim Σ`
    pub s: usize,
}

/// `p = dim(Σ ∩ V+)`, `q = dim(Σ ∩ V-)`; regular when `p + q = n/2`.
pub fn classify_regular(
    eta: &ThreeVector,
    g: &ScalarProduct,
    structure: &CompatibleStructure,
) -> Result<RegularReport> {
    if structure.epsilon() != Sign::Plus {
        return Err(Error::WrongEpsilon { required: 1 });
    }
    structure.check_compatible(g)?;
    let sigma = support(eta, g)?;
    if !sigma.is_invariant_under(structure.matrix()) {
        return Err(Error::SupportNotInvariant);
    }
    let (vp, vm) = structure
        .eigenspaces()
        .expect("para structures carry eigenspaces");
    let plus = sigma.intersect(vp)?;
    let minus = sigma.intersect(vm)?;
    if plus.sum(&minus)? != sigma {
        return Err(inconsistency(
            "support-splitting",
            "support is not the sum of its eigenspace parts",
        ));
    }
    let (p, q) = (plus.dim(), minus.dim());
    Ok(RegularReport {
        type_pq: (p, q),
        regular: p + q == g.dim() / 2,
        s: sigma.dim(),
    })
}
