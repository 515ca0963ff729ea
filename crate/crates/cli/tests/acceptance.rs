//! Acceptance criteria 1-11, one PASS/FAIL line each.
//!
//! Expected values come from oracles written here against the raw
//! definitions (determinant evaluation, Koszul formula, vector-field
//! brackets of polynomial fields) rather than from the library's closed
//! formulas.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use nilflat::exactlin::{adapted_basis, rational, Matrix, Rational, Subspace, Vector};
use nilflat::flatgroup::build_model;
use nilflat::lattice::{centralizer_space, find_lattice, LatticeBasis};
use nilflat::model_file::{ModelFile, DEFAULT_MAX_DIM};
use nilflat::multilinear::{classify_cone, evaluate, support, ScalarProduct, ThreeVector};
use nilflat::random::{gen_random, random_cone, random_isometry, random_three_vector, random_vector, rng, Sample};
use nilflat::report::{random_suite, SuiteConfig};
use nilflat::structures::{classify_regular, derham_split, make_field, presets, CompatibleStructure, Sign};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn load_model(name: &str) -> ModelFile {
    let text = std::fs::read_to_string(models_dir().join(name)).expect("model file");
    ModelFile::parse(&text, DEFAULT_MAX_DIM).expect("valid model")
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{label} took {elapsed:?}, limit {limit:?}"))
    }
}

// ---------------------------------------------------------------- oracles

/// `eta_{e_i}` from the determinant evaluation: `G eta_{e_i} e_j = (eta(e_i, e_j, e_k))_k`.
fn oracle_contractions(eta: &ThreeVector, g: &ScalarProduct) -> Vec<Matrix> {
    let n = g.dim();
    let e: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
    (0..n)
        .map(|i| {
            let cols: Vec<Vector> = (0..n)
                .map(|j| {
                    let w = Vector((0..n).map(|k| evaluate(eta, g, &e[i], &e[j], &e[k]).unwrap()).collect());
                    g.inverse_gram().mul_vec(&w)
                })
                .collect();
            Matrix::from_columns(n, &cols)
        })
        .collect()
}

fn oracle_eta_x(c: &[Matrix], x: &Vector) -> Matrix {
    let n = x.dim();
    let mut out = Matrix::zeros(n, n);
    for (i, xi) in x.iter().enumerate() {
        if *xi != rational::zero() {
            out = &out + &c[i].scale(xi);
        }
    }
    out
}

fn oracle_support(c: &[Matrix]) -> Subspace {
    let n = c.len();
    let cols: Vec<Vector> = c.iter().flat_map(|m| (0..n).map(move |j| m.column(j))).collect();
    Subspace::span(n, &cols)
}

/// `(isotropic support, all compositions vanish)` from scratch.
fn oracle_cone_verdicts(eta: &ThreeVector, g: &ScalarProduct) -> (bool, bool) {
    let c = oracle_contractions(eta, g);
    let sigma = oracle_support(&c);
    let b = sigma.basis_vectors();
    let isotropic = b.iter().all(|u| b.iter().all(|v| g.pair(u, v) == rational::zero()));
    let composition = c.iter().all(|a| c.iter().all(|b| (a * b).is_zero()));
    (isotropic, composition)
}

/// Levi-Civita connection of a left-invariant metric from the Koszul formula:
/// `g(D_X Y, Z) = ½(g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y))`.
fn koszul(bracket: &dyn Fn(&Vector, &Vector) -> Vector, g: &ScalarProduct) -> Vec<Matrix> {
    let n = g.dim();
    let e: Vec<Vector> = (0..n).map(|i| Vector::basis(n, i)).collect();
    let br: Vec<Vec<Vector>> = (0..n).map(|i| (0..n).map(|j| bracket(&e[i], &e[j])).collect()).collect();
    let half = rational::frac(1, 2);
    (0..n)
        .map(|i| {
            let cols: Vec<Vector> = (0..n)
                .map(|j| {
                    let lowered = Vector(
                        (0..n)
                            .map(|k| {
                                (g.pair(&br[i][j], &e[k]) - g.pair(&br[j][k], &e[i]) + g.pair(&br[k][i], &e[j]))
                                    * &half
                            })
                            .collect(),
                    );
                    g.inverse_gram().mul_vec(&lowered)
                })
                .collect();
            Matrix::from_columns(n, &cols)
        })
        .collect()
}

/// Multivariate polynomial in the coordinates `x^1..x^n`.
#[derive(Clone, Debug, PartialEq)]
struct Poly(BTreeMap<Vec<u32>, Rational>);

impl Poly {
    fn zero() -> Self {
        Poly(BTreeMap::new())
    }
    fn constant(n: usize, c: Rational) -> Self {
        let mut p = Poly::zero();
        p.push(vec![0; n], c);
        p
    }
    fn coordinate(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut p = Poly::zero();
        p.push(e, rational::one());
        p
    }
    fn push(&mut self, mono: Vec<u32>, c: Rational) {
        let entry = self.0.entry(mono.clone()).or_insert_with(rational::zero);
        *entry += c;
        if *entry == rational::zero() {
            self.0.remove(&mono);
        }
    }
    fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            out.push(m.clone(), c.clone());
        }
        out
    }
    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
    fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &o.0 {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.push(m, ca * cb);
            }
        }
        out
    }
    fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.0 {
            if m[i] > 0 {
                let mut d = m.clone();
                d[i] -= 1;
                out.push(d, c * rational::int(m[i] as i64));
            }
        }
        out
    }
    fn eval(&self, x: &Vector) -> Rational {
        let mut total = rational::zero();
        for (m, c) in &self.0 {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(m) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            total += t;
        }
        total
    }
}

type Field = Vec<Poly>;
type EndoField = Vec<Vec<Poly>>;

fn const_field(v: &Vector) -> Field {
    v.iter().map(|c| Poly::constant(v.dim(), c.clone())).collect()
}

fn apply_endo(m: &EndoField, v: &Field) -> Field {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Poly::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
        .collect()
}

/// `[U, W]^k = U^i ∂_i W^k - W^i ∂_i U^k`
fn lie(u: &Field, w: &Field) -> Field {
    let n = u.len();
    (0..n)
        .map(|k| {
            (0..n).fold(Poly::zero(), |acc, i| {
                acc.add(&u[i].mul(&w[k].partial(i))).sub(&w[i].mul(&u[k].partial(i)))
            })
        })
        .collect()
}

fn field_sub(a: &Field, b: &Field) -> Field {
    a.iter().zip(b).map(|(p, q)| p.sub(q)).collect()
}

fn field_add(a: &Field, b: &Field) -> Field {
    a.iter().zip(b).map(|(p, q)| p.add(q)).collect()
}

fn field_eval(f: &Field, x: &Vector) -> Vector {
    Vector(f.iter().map(|p| p.eval(x)).collect())
}

/// `J(x) = (Id + 2 sum x^i eta_{e_i}) J0` as a matrix of polynomials.
fn oracle_j(eta: &ThreeVector, g: &ScalarProduct, j0: &Matrix) -> EndoField {
    let n = g.dim();
    let c = oracle_contractions(eta, g);
    let b: Vec<Matrix> = c.iter().map(|m| (m * j0).scale(&rational::int(2))).collect();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|s| {
                    let mut p = Poly::constant(n, j0[(r, s)].clone());
                    for (i, bi) in b.iter().enumerate() {
                        p = p.add(&Poly::coordinate(n, i).mul(&Poly::constant(n, bi[(r, s)].clone())));
                    }
                    p
                })
                .collect()
        })
        .collect()
}

/// `N(X, Y) = eps [X,Y] + [JX,JY] - J[X,JY] - J[JX,Y]` for constant `X`, `Y`,
/// computed with honest vector-field brackets.
fn oracle_nijenhuis(j: &EndoField, eps: &Rational, x: &Vector, y: &Vector) -> Field {
    let (x, y) = (const_field(x), const_field(y));
    let jx = apply_endo(j, &x);
    let jy = apply_endo(j, &y);
    let xy: Field = lie(&x, &y).iter().map(|p| p.mul(&Poly::constant(x.len(), eps.clone()))).collect();
    let t = field_add(&xy, &lie(&jx, &jy));
    let t = field_sub(&t, &apply_endo(j, &lie(&x, &jy)));
    field_sub(&t, &apply_endo(j, &lie(&jx, &y)))
}

fn random_invertible(seed: u64, n: usize) -> Matrix {
    let mut r = rng(seed);
    loop {
        let rows: Vec<Vector> = (0..n).map(|_| random_vector(&mut r, n)).collect();
        let m = Matrix::from_row_vectors(n, &rows);
        if m.inverse().is_some() {
            return m;
        }
    }
}

fn structure_of(s: &Sample) -> &CompatibleStructure {
    s.structure.as_ref().expect("structured sample")
}

/// Every `(signature, type, epsilon)` the structured generator accepts, up to
/// split dimension `max_m`.
fn structured_configs(max_m: usize) -> Vec<((usize, usize), (usize, usize), Sign)> {
    let mut out = Vec::new();
    for m in 1..=max_m {
        for p in 0..=m {
            for q in 0..=m - p {
                out.push(((m, m), (p, q), Sign::Plus));
            }
        }
        if m % 2 == 0 {
            for p in 0..=m / 2 {
                out.push(((m, m), (p, 0), Sign::Minus));
            }
        }
    }
    out
}

// --------------------------------------------------------------- criteria

fn ac1_golden() -> Outcome {
    let start = Instant::now();
    let file = load_model("example.json");
    let eta = ThreeVector::basis(6, 3, 4, 5).unwrap();
    ensure!(file.eta == eta, "example file does not hold f1^f2^f3");
    let model = build_model(&file.eta, &file.g).map_err(|e| e.to_string())?;
    let n = 6;
    let e = |i: usize| Vector::basis(n, i);
    let two = |i: usize| e(i).scale(&rational::int(2));
    let mut expected = vec![vec![Vector::zeros(n); n]; n];
    for (a, b, v) in [(0, 1, two(5)), (1, 2, two(3)), (2, 0, two(4))] {
        expected[b][a] = -&v;
        expected[a][b] = v;
    }
    for i in 0..n {
        for j in 0..n {
            let got = model.lie_bracket(&e(i), &e(j));
            ensure!(got == expected[i][j], "[e{},e{}] = {got}, expected {}", i + 1, j + 1, expected[i][j]);
            for k in 0..n {
                ensure!(
                    *model.structure_constant(i, j, k) == expected[i][j][k],
                    "structure constant c^{}_{}{} wrong",
                    k + 1,
                    i + 1,
                    j + 1
                );
            }
        }
    }
    let f = Subspace::coordinate(n, &[3, 4, 5]);
    ensure!(*model.support() == f, "support is {}", model.support());
    ensure!(oracle_support(&oracle_contractions(&eta, &file.g)) == f, "oracle support disagrees");
    ensure!(model.translation_ideal().dim() == 3, "translation ideal has dim {}", model.translation_ideal().dim());
    let elapsed = start.elapsed();
    within("golden example", elapsed, Duration::from_secs(1))?;
    Ok(format!("brackets 2f3/2f1/2f2, support span(f1,f2,f3), ideal dim 3, {elapsed:?}"))
}

fn ac2_random_cone_suite() -> Outcome {
    let start = Instant::now();
    let signatures = [(3, 3), (4, 4), (5, 5), (4, 6)];
    let mut samples = 0;
    for (si, &sig) in signatures.iter().enumerate() {
        for s in 0..50u64 {
            let seed = 1000 * si as u64 + s;
            let sample = random_cone(seed, sig, false).map_err(|e| e.to_string())?;
            let model = build_model(&sample.eta, &sample.g).map_err(|e| e.to_string())?;
            let g = &sample.g;
            let n = g.dim();
            let mut r = rng(seed ^ 0x5eed);
            let (x, y, z) = (random_vector(&mut r, n), random_vector(&mut r, n), random_vector(&mut r, n));
            let p = random_vector(&mut r, n);

            let lhs = model.group_mul(&model.group_mul(&x, &y), &z);
            let rhs = model.group_mul(&x, &model.group_mul(&y, &z));
            ensure!(lhs == rhs, "seed {seed}: associativity fails");

            let gx = model.affine_rep(&x);
            let gy = model.affine_rep(&y);
            let gxy = model.affine_rep(&model.group_mul(&x, &y));
            ensure!(gx.apply(&gy.apply(&p)) == gxy.apply(&p), "seed {seed}: g_X g_Y != g_(XY) at a point");
            ensure!(gx.compose(&gy) == gxy, "seed {seed}: homomorphism fails");
            ensure!(gx.is_isometry(g), "seed {seed}: g_X is not an isometry");

            let br = |a: &Vector, b: &Vector| model.lie_bracket(a, b);
            ensure!(br(&br(&x, &y), &z).is_zero(), "seed {seed}: [[X,Y],Z] != 0");
            let jac = &(&br(&x, &br(&y, &z)) + &br(&y, &br(&z, &x))) + &br(&z, &br(&x, &y));
            ensure!(jac.is_zero(), "seed {seed}: Jacobi fails");
            ensure!(model.brackets().jacobi_witness().is_none(), "seed {seed}: Jacobi witness on basis");
            ensure!(
                g.pair(&br(&x, &y), &z) + g.pair(&y, &br(&x, &z)) == rational::zero(),
                "seed {seed}: ad_X not skew"
            );

            let report = model.algebra_report();
            ensure!(report.jacobi && report.biinvariant && report.flat, "seed {seed}: algebra report {report:?}");
            ensure!(matches!(report.nilpotency_class, Some(1) | Some(2)), "seed {seed}: class {report:?}");

            // curvature of the Koszul connection on basis fields
            let d = koszul(&|a, b| model.lie_bracket(a, b), g);
            for i in 0..n {
                let half_ad = model.brackets().ad(&Vector::basis(n, i)).scale(&rational::frac(1, 2));
                ensure!(d[i] == half_ad, "seed {seed}: Koszul D_e{} != ad/2", i + 1);
            }
            for i in 0..n {
                for j in i + 1..n {
                    let ij = model.lie_bracket(&Vector::basis(n, i), &Vector::basis(n, j));
                    let mut dij = Matrix::zeros(n, n);
                    for (k, c) in ij.iter().enumerate() {
                        if *c != rational::zero() {
                            dij = &dij + &d[k].scale(c);
                        }
                    }
                    let curv = &d[i].commutator(&d[j]) - &dij;
                    ensure!(curv.is_zero(), "seed {seed}: R(e{},e{}) != 0", i + 1, j + 1);
                }
            }
            ensure!(model.curvature(&x, &y).is_zero(), "seed {seed}: R(X,Y) != 0");
            samples += 1;
        }
    }
    let elapsed = start.elapsed();
    within("random cone suite", elapsed, Duration::from_secs(30))?;
    Ok(format!("{samples} seeds over (3,3),(4,4),(5,5),(4,6), {elapsed:?}"))
}

fn ac3_equivalence() -> Outcome {
    let mut cone = 0;
    let mut non_cone = 0;
    let mut check = |eta: &ThreeVector, g: &ScalarProduct, label: &str| -> Result<bool, String> {
        let (iso, comp) = oracle_cone_verdicts(eta, g);
        ensure!(iso == comp, "{label}: oracle verdicts differ (isotropic {iso}, composition {comp})");
        let report = classify_cone(eta, g, None).map_err(|e| format!("{label}: {e}"))?;
        ensure!(
            report.isotropic == iso && report.composition_zero == comp && report.in_cone == iso,
            "{label}: library disagrees with oracle"
        );
        if iso {
            cone += 1;
        } else {
            non_cone += 1;
        }
        Ok(iso)
    };
    for (si, &sig) in [(3, 3), (4, 4), (5, 5), (4, 6)].iter().enumerate() {
        for s in 0..10u64 {
            let sample = random_cone(500 + 100 * si as u64 + s, sig, false).map_err(|e| e.to_string())?;
            ensure!(check(&sample.eta, &sample.g, "cone sample")?, "cone sample rejected");
        }
    }
    // e_a ^ e_b ^ f_a and friends, moved by random isometries
    for m in 3..=5usize {
        let g = ScalarProduct::split(m, m).unwrap();
        let mut r = rng(77 + m as u64);
        for a in 0..m {
            for b in 0..m {
                if a == b {
                    continue;
                }
                let eta = ThreeVector::basis(2 * m, a, b, m + a).unwrap();
                let moved = eta.transform(&random_isometry(&mut r, m, m));
                ensure!(!check(&moved, &g, "e_a^e_b^f_a")?, "e{}^e{}^f{} accepted", a + 1, b + 1, a + 1);
            }
        }
    }
    let mut r = rng(4242);
    for _ in 0..20 {
        let g = ScalarProduct::split(3, 4).unwrap();
        let eta = random_three_vector(&mut r, 7);
        check(&eta, &g, "arbitrary")?;
    }
    ensure!(non_cone >= 50, "only {non_cone} non-cone inputs");
    Ok(format!("{cone} cone inputs both true, {non_cone} non-cone inputs both false"))
}

fn ac4_containment() -> Outcome {
    let mut count = 0;
    let mut proper = 0;
    for seed in 0..120u64 {
        let n = 4 + (seed as usize % 6);
        let k = 3 + (seed as usize % (n - 2));
        let (kk, ll) = (n / 2, n - n / 2);
        let g = if seed % 2 == 0 { ScalarProduct::split(kk, ll) } else { ScalarProduct::diagonal(kk, ll) }.unwrap();
        let mut r = rng(seed);
        let local = nilflat::random::random_on_coordinates(&mut r, n, &(0..k).collect::<Vec<_>>(), false);
        let eta = local.transform(&random_invertible(seed + 9000, n));
        let sigma = oracle_support(&oracle_contractions(&eta, &g));
        ensure!(support(&eta, &g).unwrap() == sigma, "seed {seed}: library support differs from oracle");
        let b = adapted_basis(&sigma);
        let inv = b.inverse().ok_or("adapted basis is singular")?;
        let s = sigma.dim();
        let adapted = eta.transform(&inv);
        ensure!(adapted.transform(&b) == eta, "seed {seed}: change of basis does not round-trip");
        for ([i, j, l], c) in adapted.terms() {
            ensure!(
                *i < s && *j < s && *l < s,
                "seed {seed}: external coefficient {c} at ({i},{j},{l}) with dim Σ = {s}"
            );
        }
        if s < n {
            proper += 1;
        }
        count += 1;
    }
    ensure!(proper >= 50, "only {proper} inputs with a proper support");
    Ok(format!("{count} arbitrary 3-vectors ({proper} with proper support), no external coefficients"))
}

fn ac5_npk() -> Outcome {
    let mut counts = [0usize; 2];
    for (ci, (sig, ty, eps)) in structured_configs(6).into_iter().enumerate() {
        for s in 0..3u64 {
            let seed = 31 * ci as u64 + s;
            let sample = gen_random(seed, sig, ty, eps).map_err(|e| format!("{sig:?} {ty:?}: {e}"))?;
            let j0 = structure_of(&sample);
            let field = make_field(&sample.eta, j0, &sample.g).map_err(|e| e.to_string())?;
            let report = field.npk_report(&sample.g).map_err(|e| e.to_string())?;
            ensure!(report.all_pass(), "{sig:?} type {ty:?} eps {eps:?} seed {seed}: {report:?}");
            ensure!(report.strict == !sample.eta.is_zero(), "strict flag wrong");

            // oracle: J(x)^2 = eps and (D_X J) X = 0 from the raw definitions
            let n = sample.g.dim();
            let mut r = rng(seed + 5);
            let x = random_vector(&mut r, n);
            let at = random_vector(&mut r, n);
            let c = oracle_contractions(&sample.eta, &sample.g);
            let jx = &(&Matrix::identity(n) + &oracle_eta_x(&c, &at).scale(&rational::int(2))) * j0.matrix();
            ensure!(jx == field.eval_j(&at), "J(x) differs from oracle");
            ensure!(&jx * &jx == Matrix::identity(n).scale(&eps.value()), "J(x)^2 != eps Id");
            let dxj = (&oracle_eta_x(&c, &x) * j0.matrix()).scale(&rational::int(2));
            ensure!(dxj.mul_vec(&x).is_zero(), "(D_X J) X != 0");
            ensure!(field.covariant_derivative_j(&x).unwrap() == dxj, "D_X J differs from oracle");
            counts[(eps == Sign::Minus) as usize] += 1;
        }
    }
    Ok(format!("{} eps=+1 and {} eps=-1 samples, all identities exact", counts[0], counts[1]))
}

fn ac6_purity() -> Outcome {
    let mut count = 0;
    for (ci, (sig, ty, eps)) in structured_configs(5).into_iter().enumerate() {
        if eps != Sign::Plus {
            continue;
        }
        for s in 0..4u64 {
            let sample = gen_random(7 * ci as u64 + s, sig, ty, eps).map_err(|e| e.to_string())?;
            let j = structure_of(&sample);
            let r = classify_regular(&sample.eta, &sample.g, j).map_err(|e| e.to_string())?;
            // oracle type from the raw support
            let sigma = oracle_support(&oracle_contractions(&sample.eta, &sample.g));
            let (vp, vm) = j.eigenspaces().unwrap();
            let p = sigma.intersect(vp).unwrap().dim();
            let q = sigma.intersect(vm).unwrap().dim();
            ensure!(r.type_pq == (p, q), "type {:?} vs oracle ({p},{q})", r.type_pq);
            ensure!(p == 0 || q == 0, "dim {} element of type ({p},{q})", sample.g.dim());
            count += 1;
        }
    }
    let file = load_model("twelve.json");
    let j = file.structure.as_ref().unwrap();
    let report = classify_cone(&file.eta, &file.g, Some(j)).map_err(|e| e.to_string())?;
    ensure!(report.in_cone && report.anticommutes == Some(true), "12-dim example rejected: {report:?}");
    ensure!(report.type_pq == Some((3, 3)), "12-dim example has type {:?}", report.type_pq);
    ensure!(
        report.pure_plus == Some(false) && report.pure_minus == Some(false),
        "12-dim example flagged pure"
    );
    ensure!(classify_regular(&file.eta, &file.g, j).unwrap().type_pq == (3, 3), "classify_regular type");
    Ok(format!("{count} samples of dim <= 10 pure; 12-dim example type (3,3), not pure"))
}

fn ac7_strictness() -> Outcome {
    let mut zero = 0;
    for (ci, (sig, ty, eps)) in structured_configs(8).into_iter().enumerate() {
        if ty.0.max(ty.1) >= 3 {
            continue;
        }
        for s in 0..2u64 {
            let sample = gen_random(13 * ci as u64 + s, sig, ty, eps).map_err(|e| e.to_string())?;
            ensure!(sample.eta.is_zero(), "type {ty:?} on {sig:?} produced {}", sample.eta);
            zero += 1;
        }
    }
    // below dimension 6 the maximal isotropic subspaces have dim <= 2
    let mut rejected = 0;
    for (k, l) in [(1, 1), (2, 1), (2, 2), (3, 2), (1, 3), (1, 4)] {
        let g = ScalarProduct::split(k, l).unwrap();
        let n = k + l;
        let mut r = rng(n as u64 * 17 + k as u64);
        let mut inputs: Vec<ThreeVector> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    inputs.push(ThreeVector::basis(n, a, b, c).unwrap());
                }
            }
        }
        for _ in 0..20 {
            if n >= 3 {
                inputs.push(random_three_vector(&mut r, n));
            }
        }
        let structure = if k == l { presets::split_para(k, &g).ok() } else { None };
        for eta in inputs.iter().filter(|e| !e.is_zero()) {
            ensure!(!classify_cone(eta, &g, None).unwrap().in_cone, "dim {n}: {eta} in cone");
            if let Some(j) = &structure {
                ensure!(make_field(eta, j, &g).is_err(), "dim {n}: strict field accepted");
            }
            rejected += 1;
        }
    }
    let golden = load_model("example.json");
    let field = make_field(&golden.eta, golden.structure.as_ref().unwrap(), &golden.g).map_err(|e| e.to_string())?;
    ensure!(field.npk_report(&golden.g).unwrap().strict, "dim 6 example not strict");
    Ok(format!("{zero} low-type samples all zero; {rejected} nonzero inputs below dim 6 rejected; dim 6 strict"))
}

fn ac8_centralizer() -> Outcome {
    let start = Instant::now();
    let solver = std::cell::Cell::new(Duration::ZERO);
    let check_family = |eta: &ThreeVector, g: &ScalarProduct, label: &str| -> Result<usize, String> {
        let t = Instant::now();
        let model = build_model(eta, g).map_err(|e| e.to_string())?;
        let lattice = find_lattice(eta, g).map_err(|e| e.to_string())?;
        let sol = centralizer_space(&model, &lattice).map_err(|e| format!("{label}: {e}"))?;
        solver.set(solver.get() + t.elapsed());
        let n = g.dim();
        let c = oracle_contractions(eta, g);
        let id = Matrix::identity(n);
        let part = sol.decode(&sol.raw.particular);
        ensure!(
            part.linear == &id - &oracle_eta_x(&c, &part.translation),
            "{label}: particular solution is not (Id - eta_v, v)"
        );
        for k in sol.raw.kernel.basis_vectors() {
            let h = sol.decode(&k);
            ensure!(h.linear == -&oracle_eta_x(&c, &h.translation), "{label}: kernel direction off the family");
        }
        // members really commute with the lattice generators, pointwise
        let mut r = rng(n as u64);
        for _ in 0..3 {
            let v = random_vector(&mut r, n);
            let a = nilflat::flatgroup::AffineIsometry {
                linear: &id - &oracle_eta_x(&c, &v),
                translation: v.clone(),
            };
            ensure!(sol.contains(&a), "{label}: (Id - eta_v, v) missing");
            let p = random_vector(&mut r, n);
            for y in lattice.generators() {
                let gy = model.affine_rep(&y);
                ensure!(a.apply(&gy.apply(&p)) == gy.apply(&a.apply(&p)), "{label}: does not commute with g_Y");
            }
        }
        Ok(sol.dim())
    };
    let golden = load_model("example.json");
    let d = check_family(&golden.eta, &golden.g, "golden")?;
    ensure!(d == 6, "golden family has dim {d}");
    let g6 = ScalarProduct::split(3, 3).unwrap();
    let zero = ThreeVector::zero(6);
    ensure!(check_family(&zero, &g6, "eta = 0")? == 6, "eta = 0 family dim");
    let model0 = build_model(&zero, &g6).unwrap();
    let sol0 = centralizer_space(&model0, &LatticeBasis::scaled(6, rational::one()).unwrap()).unwrap();
    for k in sol0.raw.kernel.basis_vectors() {
        ensure!(sol0.decode(&k).linear.is_zero(), "eta = 0: non-translation direction");
    }
    ensure!(sol0.decode(&sol0.raw.particular).linear == Matrix::identity(6), "eta = 0: linear part not Id");
    let mut count = 0;
    for (i, sig) in [(3, 3), (4, 4), (3, 4), (5, 5)].iter().enumerate() {
        for s in 0..6u64 {
            let sample = random_cone(2000 + 10 * i as u64 + s, *sig, true).map_err(|e| e.to_string())?;
            let d = check_family(&sample.eta, &sample.g, "random")?;
            ensure!(d == sample.g.dim(), "random {sig:?}: family dim {d}");
            count += 1;
        }
    }
    within("centralizer solver", solver.get(), Duration::from_secs(5))?;
    Ok(format!(
        "golden dim 6, eta = 0 translations, {count} integral cones dim n, solver {:?} (with oracles {:?})",
        solver.get(),
        start.elapsed()
    ))
}

fn ac9_derham() -> Outcome {
    let mut count = 0;
    for (ci, (sig, ty, eps)) in structured_configs(8).into_iter().enumerate() {
        if sig.0 < 3 || (sig.0 > 6 && eps == Sign::Plus) {
            continue;
        }
        let sample = gen_random(101 * ci as u64, sig, ty, eps).map_err(|e| e.to_string())?;
        let (g, j) = (&sample.g, structure_of(&sample));
        let n = g.dim();
        let split = derham_split(&sample.eta, g, j).map_err(|e| format!("{sig:?} {ty:?}: {e}"))?;
        let sigma = oracle_support(&oracle_contractions(&sample.eta, g));
        let s = sigma.dim();
        let label = format!("{sig:?} type {ty:?} eps {eps:?}");
        ensure!(split.l == sigma, "{label}: L is not the support");
        let lp = split.l_prime.basis_vectors();
        ensure!(lp.len() == s, "{label}: dim L' = {} != {s}", lp.len());
        ensure!(lp.iter().all(|u| lp.iter().all(|v| g.pair(u, v) == rational::zero())), "{label}: L' not isotropic");
        ensure!(split.l_prime.is_invariant_under(j.matrix()), "{label}: L' not J-invariant");
        ensure!(split.l.intersect(&split.l_prime).unwrap().is_zero(), "{label}: L and L' meet");
        let v0 = split.v0.basis_vectors();
        ensure!(v0.len() == n - 2 * s, "{label}: dim V0 = {} != {}", v0.len(), n - 2 * s);
        let gram = Matrix::from_rows(v0.iter().map(|u| v0.iter().map(|v| g.pair(u, v)).collect()).collect());
        ensure!(v0.is_empty() || gram.inverse().is_some(), "{label}: V0 degenerate");
        ensure!(split.v0.is_invariant_under(j.matrix()), "{label}: V0 not J-invariant");
        let sum = split.l.sum(&split.l_prime).unwrap();
        ensure!(
            v0.iter().all(|u| sum.basis_vectors().iter().all(|w| g.pair(u, w) == rational::zero())),
            "{label}: V0 not orthogonal to L + L'"
        );
        count += 1;
    }
    ensure!(count >= 50, "only {count} inputs");
    Ok(format!("{count} inputs, all postconditions hold"))
}

fn ac10_nijenhuis() -> Outcome {
    let golden = load_model("example.json");
    let j0 = golden.structure.as_ref().unwrap();
    let n = 6;
    let oracle = oracle_j(&golden.eta, &golden.g, j0.matrix());
    let eps = j0.epsilon().value();
    let (e1, e2) = (Vector::basis(n, 0), Vector::basis(n, 1));
    let origin = Vector::zeros(n);
    let n12 = field_eval(&oracle_nijenhuis(&oracle, &eps, &e1, &e2), &origin);
    let expected = Vector::basis(n, 5).scale(&rational::int(8));
    ensure!(n12 == expected, "oracle N(e1,e2)(0) = {n12}");
    let field = make_field(&golden.eta, j0, &golden.g).map_err(|e| e.to_string())?;
    ensure!(field.nijenhuis(&origin, &e1, &e2) == expected, "library N(e1,e2)(0) != 8 f3");

    let mut pairs = 0;
    for (ci, (sig, ty, eps)) in structured_configs(4).into_iter().enumerate() {
        if sig.0 < 3 {
            continue;
        }
        let sample = gen_random(ci as u64 + 3, sig, ty, eps).map_err(|e| e.to_string())?;
        let j0 = structure_of(&sample);
        let field = make_field(&sample.eta, j0, &sample.g).map_err(|e| e.to_string())?;
        let oracle = oracle_j(&sample.eta, &sample.g, j0.matrix());
        let n = sample.g.dim();
        let mut r = rng(ci as u64);
        for _ in 0..3 {
            let (x, y, at) = (random_vector(&mut r, n), random_vector(&mut r, n), random_vector(&mut r, n));
            let lib = field.nijenhuis(&at, &x, &y);
            let or = field_eval(&oracle_nijenhuis(&oracle, &eps.value(), &x, &y), &at);
            ensure!(lib == or, "{sig:?} {ty:?}: library and oracle Nijenhuis differ");
            ensure!(lib == -&field.nijenhuis(&at, &y, &x), "antisymmetry fails");
            if sample.eta.is_zero() {
                ensure!(lib.is_zero(), "N != 0 for eta = 0");
            }
            pairs += 1;
        }
    }
    let zero = ThreeVector::zero(6);
    let field = make_field(&zero, j0, &golden.g).unwrap();
    for i in 0..n {
        for k in 0..n {
            ensure!(field.nijenhuis(&origin, &Vector::basis(n, i), &Vector::basis(n, k)).is_zero(), "N != 0 at eta = 0");
        }
    }
    Ok(format!("N(e1,e2)(0) = 8 f3 by vector-field oracle; {pairs} random pairs agree and are antisymmetric"))
}

fn ac11_determinism() -> Outcome {
    let cfg = SuiteConfig {
        signature: (4, 4),
        type_pq: (3, 0),
        epsilon: Sign::Plus,
        count: 8,
        seed: 7,
    };
    let a = random_suite(&cfg).to_json();
    let b = random_suite(&cfg).to_json();
    ensure!(a == b, "library reports differ");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_nilflat"))
            .args(["random-suite", "--signature", "3,3", "--type", "3,0", "--count", "6", "--seed", "11"])
            .output()
            .expect("binary runs")
    };
    let (x, y) = (run(), run());
    ensure!(x.status.success() && y.status.success(), "random-suite exited with {:?}", x.status);
    ensure!(x.stdout == y.stdout, "CLI reports differ between runs");
    ensure!(!x.stdout.is_empty(), "empty report");
    Ok(format!("library and CLI reports byte-identical ({} bytes)", x.stdout.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("golden example", ac1_golden),
        ("random cone suite", ac2_random_cone_suite),
        ("isotropy/composition equivalence", ac3_equivalence),
        ("support containment", ac4_containment),
        ("nearly Kähler identities", ac5_npk),
        ("purity below 12", ac6_purity),
        ("strictness threshold", ac7_strictness),
        ("centralizer", ac8_centralizer),
        ("de Rham split", ac9_derham),
        ("Nijenhuis tensor", ac10_nijenhuis),
        ("determinism", ac11_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("AC{} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("AC{} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
