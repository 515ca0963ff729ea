use crate::error::{inconsistency, Error, Result};
use crate::exactlin::{rational, Matrix, Subspace, Vector};
use crate::multilinear::{self, classify_cone, ScalarProduct, ThreeVector};

use super::CompatibleStructure;

/// `V = V0 ⊕ (L + L')` with `L` the support, `L'` an isotropic invariant
/// complement dual to it, and `V0` the flat Kähler factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeRhamSplit {
    pub v0: Subspace,
    pub l: Subspace,
    pub l_prime: Subspace,
}

/// Invariant building blocks for the dual space: single eigenvectors in the
/// para case, complex lines `span{e_a, J e_a}` in the complex case.
fn candidate_blocks(structure: &CompatibleStructure) -> Vec<Vec<Vector>> {
    let n = structure.dim();
    match structure.eigenspaces() {
        Some((vp, vm)) => vp
            .basis_vectors()
            .into_iter()
            .chain(vm.basis_vectors())
            .map(|v| vec![v])
            .collect(),
        None => (0..n)
            .map(|a| {
                let e = Vector::basis(n, a);
                let je = structure.matrix().mul_vec(&e);
                vec![e, je]
            })
            .collect(),
    }
}

/// Splits off the flat factor of the model given by `eta` and `J`.
pub fn derham_split(eta: &ThreeVector, g: &ScalarProduct, structure: &CompatibleStructure) -> Result<DeRhamSplit> {
    let n = g.dim();
    let cone = classify_cone(eta, g, Some(structure))?;
    if !cone.in_cone {
        let (i, j) = cone.composition_witness.unwrap_or((0, 0));
        return Err(Error::NotInCone { pair: (i + 1, j + 1) });
    }
    if let Some(i) = cone.anticommute_witness {
        return Err(Error::NotAnticommuting { index: i + 1 });
    }
    let l = cone.support;
    let s = l.dim();
    let jm = structure.matrix();
    let gram = g.gram();
    let lb = l.basis();

    // greedy choice of an invariant W pairing injectively with L
    let mut chosen: Vec<Vector> = Vec::new();
    for block in candidate_blocks(structure) {
        if chosen.len() == s {
            break;
        }
        let mut trial = chosen.clone();
        trial.extend(block.iter().cloned());
        if trial.len() > s {
            continue;
        }
        let w = Matrix::from_row_vectors(n, &trial);
        let pairing = &(lb * gram) * &w.transpose();
        if pairing.rank() == trial.len() {
            chosen = trial;
        }
    }
    if chosen.len() != s {
        return Err(inconsistency("derham-dual", format!("found {} of {s} dual vectors", chosen.len())));
    }

    let l_prime = if s == 0 {
        Subspace::zero(n)
    } else {
        let w = Matrix::from_row_vectors(n, &chosen);
        let p = &(lb * gram) * &w.transpose();
        let p_inv = p
            .inverse()
            .ok_or_else(|| inconsistency("derham-dual", "pairing matrix is singular"))?;
        // d_j = sum_k (P^-1)_{kj} w_k, so g(l_i, d_j) = delta_ij
        let d: Vec<Vector> = (0..s).map(|j| p_inv.column(j)).map(|c| w.transpose().mul_vec(&c)).collect();
        let ls = l.basis_vectors();
        let half = rational::frac(1, 2);
        let corrected: Vec<Vector> = d
            .iter()
            .map(|dj| {
                let mut v = dj.clone();
                for (dk, lk) in d.iter().zip(&ls) {
                    v.axpy(&-(&half * g.pair(dj, dk)), lk);
                }
                v
            })
            .collect();
        Subspace::span(n, &corrected)
    };

    let sum = l.sum(&l_prime)?;
    let v0 = sum.orthogonal_complement(g)?;

    let checks: [(&'static str, bool); 8] = [
        ("lprime-isotropic", g.vanishes_on(&l_prime)),
        ("lprime-invariant", l_prime.is_invariant_under(jm)),
        ("transversal", l.intersect(&l_prime)?.is_zero() && l_prime.dim() == s),
        ("sum-nondegenerate", g.is_nondegenerate_on(&sum)),
        ("v0-nondegenerate", g.is_nondegenerate_on(&v0)),
        ("v0-invariant", v0.is_invariant_under(jm)),
        ("v0-dimension", v0.dim() == n - 2 * s),
        ("v0-flat", {
            let c = multilinear::basis_contractions(eta, g)?;
            v0.basis_vectors().iter().all(|x| multilinear::combine(&c, x).is_zero())
        }),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(inconsistency(name, format!("de Rham split failed for {eta}")));
    }
    Ok(DeRhamSplit { v0, l, l_prime })
}
