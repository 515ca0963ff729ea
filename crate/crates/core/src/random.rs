//! Seeded generators of cone elements, structures and rational isometries.
//!
//! Every sample is exact. Cone elements are drawn from `Λ³L` for a standard
//! isotropic `L` and then moved by an isometry assembled from elementary
//! generators, which keeps all coordinates rational (integral when the seed
//! element is integral).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{inconsistency, Error, Result};
use crate::exactlin::{rational, Matrix, Rational, Vector};
use crate::multilinear::{self, classify_cone, ScalarProduct, ThreeVector};
use crate::structures::{presets, CompatibleStructure, Sign};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A generated model: scalar product, optional structure and 3-vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    pub g: ScalarProduct,
    pub structure: Option<CompatibleStructure>,
    pub eta: ThreeVector,
}

/// Small nonzero coefficient; occasionally a half when not `integral`.
pub fn random_coefficient(rng: &mut SampleRng, integral: bool) -> Rational {
    let mut c = rng.gen_range(1..=3i64);
    if rng.gen_bool(0.5) {
        c = -c;
    }
    if !integral && rng.gen_bool(0.25) {
        rational::frac(c, 2)
    } else {
        rational::int(c)
    }
}

/// Random element of `Λ³ span{e_i : i ∈ indices}`, each basis triple
/// present with probability one half (at least one term when possible).
pub fn random_on_coordinates(rng: &mut SampleRng, n: usize, indices: &[usize], integral: bool) -> ThreeVector {
    let mut eta = ThreeVector::zero(n);
    let d = indices.len();
    let mut triples = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            for c in b + 1..d {
                triples.push([indices[a], indices[b], indices[c]]);
            }
        }
    }
    for [i, j, k] in &triples {
        if rng.gen_bool(0.5) {
            eta.add_term(*i, *j, *k, random_coefficient(rng, integral))
                .expect("distinct in-range indices");
        }
    }
    if eta.is_zero() && !triples.is_empty() {
        let [i, j, k] = triples[rng.gen_range(0..triples.len())];
        eta.add_term(i, j, k, random_coefficient(rng, integral))
            .expect("distinct in-range indices");
    }
    eta
}

/// Arbitrary random 3-vector on all of `Q^n` (not necessarily in the cone).
pub fn random_three_vector(rng: &mut SampleRng, n: usize) -> ThreeVector {
    let all: Vec<usize> = (0..n).collect();
    random_on_coordinates(rng, n, &all, false)
}

pub fn random_vector(rng: &mut SampleRng, n: usize) -> Vector {
    Vector((0..n).map(|_| rational::int(rng.gen_range(-4..=4))).collect())
}

fn nonzero_small(rng: &mut SampleRng) -> i64 {
    let c = rng.gen_range(1..=2i64);
    if rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

/// `diag(C^{-T}, C)` on the first `2m` coordinates (e- and f-blocks of
/// `split(k, l)`), identity on the rest.
fn block_isometry(n: usize, m: usize, c: &Matrix) -> Matrix {
    let cinv_t = c.inverse().expect("unimodular").transpose();
    let mut out = Matrix::identity(n);
    for i in 0..m {
        for j in 0..m {
            out[(i, j)] = cinv_t[(i, j)].clone();
            out[(m + i, m + j)] = c[(i, j)].clone();
        }
    }
    out
}

/// Random unimodular `m x m` integer matrix, a product of elementary ones.
fn random_unimodular(rng: &mut SampleRng, m: usize, steps: usize) -> Matrix {
    let mut c = Matrix::identity(m);
    if m < 2 {
        return c;
    }
    for _ in 0..steps {
        let a = rng.gen_range(0..m);
        let mut b = rng.gen_range(0..m - 1);
        if b >= a {
            b += 1;
        }
        let mut e = Matrix::identity(m);
        e[(a, b)] = rational::int(nonzero_small(rng));
        c = &c * &e;
    }
    c
}

/// Random unimodular matrix commuting with the complex-block structure on
/// `m = 2r` coordinates: elementary steps by Gaussian integers between
/// blocks, and multiplications of a block by `i`.
fn random_complex_unimodular(rng: &mut SampleRng, m: usize, steps: usize) -> Matrix {
    let r = m / 2;
    let mut c = Matrix::identity(m);
    for _ in 0..steps {
        let mut e = Matrix::identity(m);
        if r >= 2 && rng.gen_bool(0.75) {
            let a = rng.gen_range(0..r);
            let mut b = rng.gen_range(0..r - 1);
            if b >= a {
                b += 1;
            }
            let (x, y) = (rng.gen_range(-1..=1i64), rng.gen_range(-1..=1i64));
            e[(2 * a, 2 * b)] = rational::int(x);
            e[(2 * a, 2 * b + 1)] = rational::int(-y);
            e[(2 * a + 1, 2 * b)] = rational::int(y);
            e[(2 * a + 1, 2 * b + 1)] = rational::int(x);
        } else if r >= 1 {
            let a = rng.gen_range(0..r);
            e[(2 * a, 2 * a)] = rational::zero();
            e[(2 * a + 1, 2 * a + 1)] = rational::zero();
            e[(2 * a, 2 * a + 1)] = rational::int(-1);
            e[(2 * a + 1, 2 * a)] = rational::int(1);
        }
        c = &c * &e;
    }
    c
}

/// Random isometry of `split(k, l)` built from isotropic shears
/// `[[I, 0], [K, I]]`, `[[I, K], [0, I]]` (K skew) and blocks `diag(C^{-T}, C)`.
pub fn random_isometry(rng: &mut SampleRng, k: usize, l: usize) -> Matrix {
    let m = k.min(l);
    let n = k + l;
    let mut out = Matrix::identity(n);
    if m == 0 {
        return out;
    }
    for _ in 0..m.max(2) {
        let step = match rng.gen_range(0..3) {
            0 => block_isometry(n, m, &random_unimodular(rng, m, 1)),
            kind => {
                let mut s = Matrix::identity(n);
                if m >= 2 {
                    let a = rng.gen_range(0..m);
                    let mut b = rng.gen_range(0..m - 1);
                    if b >= a {
                        b += 1;
                    }
                    let c = rational::int(nonzero_small(rng));
                    // lower shear adds K to the f-block rows of e-columns
                    let (ro, co) = if kind == 1 { (m, 0) } else { (0, m) };
                    s[(ro + a, co + b)] = c.clone();
                    s[(ro + b, co + a)] = -c;
                }
                s
            }
        };
        out = &out * &step;
    }
    out
}

/// Random isometry of `split(m, m)` commuting with `structure`
/// (`split-para(m)` or `complex-block(m)`).
pub fn random_structure_isometry(rng: &mut SampleRng, m: usize, epsilon: Sign) -> Matrix {
    let c = match epsilon {
        Sign::Plus => random_unimodular(rng, m, m.max(2)),
        Sign::Minus => random_complex_unimodular(rng, m, m.max(2)),
    };
    block_isometry(2 * m, m, &c)
}

fn self_check(sample: &Sample) -> Result<()> {
    let report = classify_cone(&sample.eta, &sample.g, sample.structure.as_ref())?;
    if !report.in_cone {
        return Err(inconsistency("generator", format!("sample {} left the cone", sample.eta)));
    }
    if report.anticommutes == Some(false) {
        return Err(inconsistency("generator", format!("sample {} does not anticommute", sample.eta)));
    }
    Ok(())
}

/// Random cone element on `split(k, l)` without a structure. The seed
/// element lives on `span{f_1..f_m}`, `m = min(k, l)`.
pub fn random_cone(seed: u64, signature: (usize, usize), integral: bool) -> Result<Sample> {
    let (k, l) = signature;
    let g = ScalarProduct::split(k, l)?;
    let n = k + l;
    let m = k.min(l);
    let mut rng = rng(seed);
    let f: Vec<usize> = (m..2 * m).collect();
    let seed_eta = random_on_coordinates(&mut rng, n, &f, integral);
    let iso = random_isometry(&mut rng, k, l);
    let eta = seed_eta.transform(&iso);
    let sample = Sample { g, structure: None, eta };
    self_check(&sample)?;
    Ok(sample)
}

/// Samples `eta ∈ Λ³L+ + Λ³L-` (para case) or the pure part of `Λ³L`
/// (complex case) for a standard invariant isotropic `L`, conjugated by a
/// random isometry commuting with the structure.
///
/// Para case: `split(m, m)` with `split-para(m)`, `L+ = span{f_1..f_p}`,
/// `L- = span{e_{p+1}..e_{p+q}}`, requiring `p + q <= m`.
/// Complex case: `split(m, m)` with `complex-block(m)`, `m` even, `p` the
/// complex dimension of `L = span{f_1..f_2p}` and `q = 0`.
pub fn gen_random(seed: u64, signature: (usize, usize), type_pq: (usize, usize), epsilon: Sign) -> Result<Sample> {
    let (k, l) = signature;
    let (p, q) = type_pq;
    if k != l {
        return Err(Error::Infeasible(format!(
            "compatible structures need split signature, got ({k},{l})"
        )));
    }
    let m = k;
    let n = 2 * m;
    let g = ScalarProduct::split(m, m)?;
    let mut rng = rng(seed);
    let (structure, seed_eta) = match epsilon {
        Sign::Plus => {
            if p + q > m {
                return Err(Error::Infeasible(format!("type ({p},{q}) needs p + q <= {m}")));
            }
            let plus: Vec<usize> = (m..m + p).collect();
            let minus: Vec<usize> = (p..p + q).collect();
            let eta = random_on_coordinates(&mut rng, n, &plus, false)
                .add(&random_on_coordinates(&mut rng, n, &minus, false));
            (presets::split_para(m, &g)?, eta)
        }
        Sign::Minus => {
            if m % 2 != 0 {
                return Err(Error::Infeasible(format!("complex blocks need an even split, got ({m},{m})")));
            }
            if q != 0 || 2 * p > m {
                return Err(Error::Infeasible(format!(
                    "complex type is (p,0) with 2p <= {m}, got ({p},{q})"
                )));
            }
            let structure = presets::complex_block(m, &g)?;
            let l: Vec<usize> = (m..m + 2 * p).collect();
            let mut eta = ThreeVector::zero(n);
            // the pure part of a sparse draw can vanish; redraw until it does not
            for _ in 0..64 {
                let raw = random_on_coordinates(&mut rng, n, &l, false);
                eta = multilinear::pure_type_project(&raw, &g, &structure)?.0;
                if !eta.is_zero() || p < 3 {
                    break;
                }
            }
            (structure, eta)
        }
    };
    let iso = random_structure_isometry(&mut rng, m, epsilon);
    let eta = seed_eta.transform(&iso);
    let sample = Sample {
        g,
        structure: Some(structure),
        eta,
    };
    self_check(&sample)?;
    Ok(sample)
}
