//! Constructors for the explicit group families: each one returns the
//! generator matrices together with the predicted limit-set descriptor.
//! Matrix shapes are exact (zero patterns are written literally, not
//! approximated), and predictions that depend on undecidable lattice data
//! are left Unknown for the limit-set pipeline to measure.

use nalgebra::{DMatrix, Matrix3, Vector2};
use num_complex::Complex64;

use crate::moebius::{is_elementary, Mobius, MobiusElementary};
use crate::projective::{cr, ProjMap};
use crate::pseudo::word_ball;
use crate::{Error, Result};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitShape {
    Empty,
    OneLine,
    TwoLines,
    ThreeLinesGeneralPosition,
    ConeOverCircle,
    ConeOverPerfectSet,
    ConePlusLine,
    TwoPencilsPlusSharedLine,
    LinePlusPoint,
    AllOfP2,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaExpectation {
    Exact(usize),
    Infinite,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PredictedLimitSet {
    pub shape: LimitShape,
    pub expected_lambda: LambdaExpectation,
    pub expected_mu: Option<usize>,
}

impl PredictedLimitSet {
    fn unknown() -> Self {
        Self {
            shape: LimitShape::Unknown,
            expected_lambda: LambdaExpectation::Unknown,
            expected_mu: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub name: String,
    pub generators: Vec<ProjMap>,
    pub predicted: PredictedLimitSet,
    /// Human-readable family parameters.
    pub params: Vec<(String, String)>,
    /// The integer matrix A, present only for hyperbolic toral groups.
    pub toral_a: Option<[[i64; 2]; 2]>,
}

impl GroupSpec {
    fn new(name: &str, generators: Vec<ProjMap>, predicted: PredictedLimitSet) -> Self {
        Self {
            name: name.to_string(),
            generators,
            predicted,
            params: Vec::new(),
            toral_a: None,
        }
    }

    fn with_param(mut self, key: &str, value: String) -> Self {
        self.params.push((key.to_string(), value));
        self
    }
}

fn mat(rows: [[C; 3]; 3]) -> Matrix3<C> {
    Matrix3::new(
        rows[0][0], rows[0][1], rows[0][2], rows[1][0], rows[1][1], rows[1][2], rows[2][0],
        rows[2][1], rows[2][2],
    )
}

fn z() -> C {
    cr(0.0)
}

fn one() -> C {
    cr(1.0)
}

/// A rank-r additive subgroup of C^d is discrete iff its basis vectors are
/// linearly independent over R (viewing C^d as R^{2d}).
fn real_rank(vectors: &[Vec<f64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows = vectors.len();
    let cols = vectors[0].len();
    let m = DMatrix::from_fn(rows, cols, |i, j| vectors[i][j]);
    let svd = m.svd(false, false);
    let max_sv = svd.singular_values.iter().cloned().fold(0.0f64, f64::max);
    if max_sv == 0.0 {
        return 0;
    }
    svd.singular_values
        .iter()
        .filter(|&&s| s > max_sv * 1e-9)
        .count()
}

fn check_discrete_c1(basis: &[C]) -> Result<()> {
    if basis.len() > 2 {
        return Err(Error::NonDiscreteLattice);
    }
    let rows: Vec<Vec<f64>> = basis.iter().map(|w| vec![w.re, w.im]).collect();
    if real_rank(&rows) != basis.len() {
        return Err(Error::NonDiscreteLattice);
    }
    Ok(())
}

fn check_discrete_c2(basis: &[(C, C)]) -> Result<()> {
    if basis.len() > 4 {
        return Err(Error::NonDiscreteLattice);
    }
    let rows: Vec<Vec<f64>> = basis
        .iter()
        .map(|(a, b)| vec![a.re, a.im, b.re, b.im])
        .collect();
    if real_rank(&rows) != basis.len() {
        return Err(Error::NonDiscreteLattice);
    }
    Ok(())
}

fn ell_matrix(w: C, mu: C) -> Matrix3<C> {
    mat([
        [mu, mu * w, z()],
        [z(), mu, z()],
        [z(), z(), (mu * mu).inv()],
    ])
}

/// A group given by raw generators, with no family prediction attached.
pub fn from_generators(name: &str, generators: Vec<ProjMap>) -> GroupSpec {
    GroupSpec::new(name, generators, PredictedLimitSet::unknown())
}

/// Ell(W, mu): ellipto-parabolic translations along a discrete W in C with
/// a unitary character mu. Limit set: one line.
pub fn elliptic_group(w_basis: &[C], mu: &[C]) -> Result<GroupSpec> {
    check_discrete_c1(w_basis)?;
    assert_eq!(w_basis.len(), mu.len(), "one mu value per basis element");
    for m in mu {
        if (m.norm() - 1.0).abs() > 1e-9 {
            return Err(Error::NonUnitaryMu);
        }
    }
    let generators = w_basis
        .iter()
        .zip(mu)
        .map(|(&w, &m)| ProjMap::from_matrix(ell_matrix(w, m)))
        .collect::<Result<Vec<_>>>()?;
    let spec = GroupSpec::new(
        "elliptic",
        generators,
        PredictedLimitSet {
            shape: LimitShape::OneLine,
            expected_lambda: LambdaExpectation::Exact(1),
            expected_mu: Some(1),
        },
    )
    .with_param("w_basis", format!("{:?}", w_basis))
    .with_param("mu", format!("{:?}", mu));
    Ok(spec)
}

/// T(L): translations [[1,0,a],[0,1,b],[0,0,1]] over a discrete lattice
/// in C^2. Limit set: one line.
pub fn torus_group(lattice_basis: &[(C, C)]) -> Result<GroupSpec> {
    check_discrete_c2(lattice_basis)?;
    let generators = lattice_basis
        .iter()
        .map(|&(a, b)| {
            ProjMap::from_matrix(mat([
                [one(), z(), a],
                [z(), one(), b],
                [z(), z(), one()],
            ]))
        })
        .collect::<Result<Vec<_>>>()?;
    let predicted = if lattice_basis.is_empty() {
        PredictedLimitSet {
            shape: LimitShape::Empty,
            expected_lambda: LambdaExpectation::Exact(0),
            expected_mu: Some(0),
        }
    } else {
        PredictedLimitSet {
            shape: LimitShape::OneLine,
            expected_lambda: LambdaExpectation::Exact(1),
            expected_mu: Some(1),
        }
    };
    Ok(GroupSpec::new("torus", generators, predicted)
        .with_param("lattice", format!("{:?}", lattice_basis)))
}

/// T*(L): translations [[1,a,b],[0,1,0],[0,0,1]]. The three sub-types
/// (line / cone over circle / all of P^2) depend on the lattice in a way
/// this constructor does not decide; the prediction stays Unknown and the
/// limit-set pipeline measures the answer.
pub fn dual_torus(lattice_basis: &[(C, C)]) -> Result<GroupSpec> {
    check_discrete_c2(lattice_basis)?;
    let generators = lattice_basis
        .iter()
        .map(|&(a, b)| {
            ProjMap::from_matrix(mat([
                [one(), a, b],
                [z(), one(), z()],
                [z(), z(), one()],
            ]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(
        GroupSpec::new("dual_torus", generators, PredictedLimitSet::unknown())
            .with_param("lattice", format!("{:?}", lattice_basis)),
    )
}

/// Inoue group: a dual torus part plus gamma_1(x,y,z) with z != 0.
/// Limit set: cone of lines over a circle (lambda infinite, mu = 2).
pub fn inoue_group(lattice_basis: &[(C, C)], x: C, y: C, zz: C) -> Result<GroupSpec> {
    if zz.norm() < 1e-12 {
        return Err(Error::DegenerateGamma1);
    }
    check_discrete_c2(lattice_basis)?;
    let mut generators = lattice_basis
        .iter()
        .map(|&(u, v)| {
            ProjMap::from_matrix(mat([
                [one(), u, v],
                [z(), one(), z()],
                [z(), z(), one()],
            ]))
        })
        .collect::<Result<Vec<_>>>()?;
    generators.push(ProjMap::from_matrix(mat([
        [one(), x + zz, y],
        [z(), one(), zz],
        [z(), z(), one()],
    ]))?);
    Ok(GroupSpec::new(
        "inoue",
        generators,
        PredictedLimitSet {
            shape: LimitShape::ConeOverCircle,
            expected_lambda: LambdaExpectation::Infinite,
            expected_mu: Some(2),
        },
    )
    .with_param("lattice", format!("{:?}", lattice_basis))
    .with_param("xyz", format!("({}, {}, {})", x, y, zz)))
}

/// Kod_0: elements [[1,a,b],[0,1,a],[0,0,1]]. Limit set: one line.
/// Discreteness is checked heuristically: no nonidentity word in the ball
/// of radius 6 may come within 1e-6 of the identity.
pub fn kodaira_group(pairs: &[(C, C)]) -> Result<GroupSpec> {
    let generators = pairs
        .iter()
        .map(|&(a, b)| {
            ProjMap::from_matrix(mat([[one(), a, b], [z(), one(), a], [z(), z(), one()]]))
        })
        .collect::<Result<Vec<_>>>()?;
    check_discrete_heuristic(&generators, 6)?;
    Ok(GroupSpec::new(
        "kodaira",
        generators,
        PredictedLimitSet {
            shape: LimitShape::OneLine,
            expected_lambda: LambdaExpectation::Exact(1),
            expected_mu: Some(1),
        },
    )
    .with_param("pairs", format!("{:?}", pairs)))
}

fn check_discrete_heuristic(generators: &[ProjMap], radius: usize) -> Result<()> {
    let id = Matrix3::identity();
    for w in word_ball(generators, radius) {
        let d = crate::projective::sup_norm_diff(w.canon(), &id);
        if d > crate::MAT_TOL && d < 1e-6 {
            return Err(Error::NonDiscreteHeuristic);
        }
    }
    Ok(())
}

/// G_0 = {diag(alpha^n, beta^m, 1)} with both parameters non-unitary.
/// Limit set: the three coordinate lines (lambda = 3, mu = 3).
pub fn diagonal_group(alpha: C, beta: C) -> Result<GroupSpec> {
    if (alpha.norm() - 1.0).abs() < 1e-9 || (beta.norm() - 1.0).abs() < 1e-9 {
        return Err(Error::UnitaryParameter);
    }
    let generators = vec![
        ProjMap::from_matrix(Matrix3::from_diagonal(&nalgebra::Vector3::new(
            alpha,
            one(),
            one(),
        )))?,
        ProjMap::from_matrix(Matrix3::from_diagonal(&nalgebra::Vector3::new(
            one(),
            beta,
            one(),
        )))?,
    ];
    Ok(GroupSpec::new(
        "diagonal",
        generators,
        PredictedLimitSet {
            shape: LimitShape::ThreeLinesGeneralPosition,
            expected_lambda: LambdaExpectation::Exact(3),
            expected_mu: Some(3),
        },
    )
    .with_param("alpha", alpha.to_string())
    .with_param("beta", beta.to_string()))
}

/// Fake Hopf: same matrix shape as Ell(W, mu) but mu maps into C^*.
/// The limit-set shape depends on mu and is left for measurement, except
/// in the unitary case, which degenerates to Ell (one line).
pub fn fake_hopf(w_basis: &[C], mu: &[C]) -> Result<GroupSpec> {
    check_discrete_c1(w_basis)?;
    assert_eq!(w_basis.len(), mu.len(), "one mu value per basis element");
    for m in mu {
        if m.norm() < 1e-12 {
            return Err(Error::NonDiscreteLattice);
        }
    }
    let generators = w_basis
        .iter()
        .zip(mu)
        .map(|(&w, &m)| ProjMap::from_matrix(ell_matrix(w, m)))
        .collect::<Result<Vec<_>>>()?;
    let predicted = if mu.iter().all(|m| (m.norm() - 1.0).abs() < 1e-9) {
        PredictedLimitSet {
            shape: LimitShape::OneLine,
            expected_lambda: LambdaExpectation::Exact(1),
            expected_mu: Some(1),
        }
    } else {
        PredictedLimitSet::unknown()
    };
    Ok(GroupSpec::new("fake_hopf", generators, predicted)
        .with_param("w_basis", format!("{:?}", w_basis))
        .with_param("mu", format!("{:?}", mu)))
}

/// Gamma_A: the hyperbolic toral group generated by P1 = I + E23,
/// P2 = I + E13 and L = blockdiag(A, 1) for A in SL(2, Z) with |tr A| > 2.
/// Limit set: two pencils of lines over two circles sharing the line
/// through the two vertices (lambda infinite, mu = 4).
pub fn hyperbolic_toral(a: [[i64; 2]; 2]) -> Result<GroupSpec> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det != 1 {
        return Err(Error::NotUnimodular);
    }
    let trace = a[0][0] + a[1][1];
    if trace.abs() <= 2 {
        return Err(Error::NotHyperbolic);
    }
    let p1 = ProjMap::from_matrix(mat([
        [one(), z(), z()],
        [z(), one(), one()],
        [z(), z(), one()],
    ]))?;
    let p2 = ProjMap::from_matrix(mat([
        [one(), z(), one()],
        [z(), one(), z()],
        [z(), z(), one()],
    ]))?;
    let l = ProjMap::from_matrix(mat([
        [cr(a[0][0] as f64), cr(a[0][1] as f64), z()],
        [cr(a[1][0] as f64), cr(a[1][1] as f64), z()],
        [z(), z(), one()],
    ]))?;
    let mut spec = GroupSpec::new(
        "hyperbolic_toral",
        vec![p1, p2, l],
        PredictedLimitSet {
            shape: LimitShape::TwoPencilsPlusSharedLine,
            expected_lambda: LambdaExpectation::Infinite,
            expected_mu: Some(4),
        },
    )
    .with_param("A", format!("{:?}", a));
    spec.toral_a = Some(a);
    Ok(spec)
}

/// H_{Sigma, rho, alpha}: suspension of a non-elementary Moebius group.
/// Generators: one block [[rho_i, 0], [0, g_i]] per Sigma generator plus
/// the scaling diag(alpha, 1, 1). Limit set: the line through [e2], [e3]
/// plus the cone of lines from [e1] over Lambda(Sigma) (mu = 3).
pub fn suspension(sigma_generators: &[Mobius], rho: &[C], alpha: C) -> Result<GroupSpec> {
    if (alpha.norm() - 1.0).abs() < 1e-9 {
        return Err(Error::UnitaryAlpha);
    }
    assert_eq!(
        sigma_generators.len(),
        rho.len(),
        "one rho value per Sigma generator"
    );
    if rho.iter().any(|r| r.norm() < 1e-12) {
        return Err(Error::ElementarySigma);
    }
    if matches!(
        is_elementary(sigma_generators, 5),
        MobiusElementary::Elementary { .. }
    ) {
        return Err(Error::ElementarySigma);
    }
    let mut generators = Vec::new();
    for (g, &r) in sigma_generators.iter().zip(rho) {
        let gl = g.lift();
        generators.push(ProjMap::from_matrix(mat([
            [r, z(), z()],
            [z(), gl[(0, 0)], gl[(0, 1)]],
            [z(), gl[(1, 0)], gl[(1, 1)]],
        ]))?);
    }
    generators.push(ProjMap::from_matrix(Matrix3::from_diagonal(
        &nalgebra::Vector3::new(alpha, one(), one()),
    ))?);
    Ok(GroupSpec::new(
        "suspension",
        generators,
        PredictedLimitSet {
            shape: LimitShape::ConePlusLine,
            expected_lambda: LambdaExpectation::Infinite,
            expected_mu: Some(3),
        },
    )
    .with_param("alpha", alpha.to_string())
    .with_param("rho", format!("{:?}", rho)))
}

/// G_0 = <diag(alpha^n, e^{2 pi i theta}, e^{-2 pi i theta})> with alpha
/// non-unitary. Limit set: one line plus one isolated point.
pub fn screw_line_point_group(alpha: C, theta: f64) -> Result<GroupSpec> {
    if (alpha.norm() - 1.0).abs() < 1e-9 {
        return Err(Error::UnitaryParameter);
    }
    let phase = C::from_polar(1.0, 2.0 * std::f64::consts::PI * theta);
    let generators = vec![ProjMap::from_matrix(Matrix3::from_diagonal(
        &nalgebra::Vector3::new(alpha, phase, phase.inv()),
    ))?];
    Ok(GroupSpec::new(
        "screw_line_point",
        generators,
        PredictedLimitSet {
            shape: LimitShape::LinePlusPoint,
            expected_lambda: LambdaExpectation::Exact(1),
            expected_mu: Some(1),
        },
    )
    .with_param("alpha", alpha.to_string())
    .with_param("theta", theta.to_string()))
}

/// H_0: generators [[mu^-2, 0, 0], [0, mu, w mu], [0, 0, mu]] with
/// |mu(w)| -> 0 or infinity along the lattice. Limit set: one line plus
/// one isolated point.
pub fn h0_group(w_basis: &[C], mu: &[C]) -> Result<GroupSpec> {
    check_discrete_c1(w_basis)?;
    assert_eq!(w_basis.len(), mu.len(), "one mu value per basis element");
    // Sampled divergence check: |mu^k| must leave every annulus around 1
    // along each cyclic direction; powers up to 50 detect a unit modulus.
    for m in mu {
        if m.norm() < 1e-12 {
            return Err(Error::MuConditionViolated);
        }
        let end = m.norm().powi(50);
        if (end - 1.0).abs() < 50.0 * 1e-9 {
            return Err(Error::MuConditionViolated);
        }
    }
    let generators = w_basis
        .iter()
        .zip(mu)
        .map(|(&w, &m)| {
            ProjMap::from_matrix(mat([
                [(m * m).inv(), z(), z()],
                [z(), m, w * m],
                [z(), z(), m],
            ]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupSpec::new(
        "h0",
        generators,
        PredictedLimitSet {
            shape: LimitShape::LinePlusPoint,
            expected_lambda: LambdaExpectation::Exact(1),
            expected_mu: Some(1),
        },
    )
    .with_param("w_basis", format!("{:?}", w_basis))
    .with_param("mu", format!("{:?}", mu)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnipotentKind {
    Z1,
    Z2,
    Z3,
    Z4,
    /// Heisenberg-type presentation with [A, B] = C^k, C central.
    Gk,
    /// G_k plus an extra central dual-torus translation D.
    DeltaK,
}

/// Integer-matrix realizations of the purely parabolic presentations.
/// Z1..Z4 are torus lattices of the given rank; G_k is A = I + E12,
/// B = I + k E23, C = I + E13 (so [A, B] = C^k exactly over the
/// integers); Delta_k adds the central D = I + i E13.
pub fn unipotent_presentation_group(kind: UnipotentKind, k: i64) -> Result<GroupSpec> {
    let torus_basis: &[(C, C)] = &[
        (one(), z()),
        (z(), one()),
        (C::i(), z()),
        (z(), C::i()),
    ];
    let rank = match kind {
        UnipotentKind::Z1 => Some(1),
        UnipotentKind::Z2 => Some(2),
        UnipotentKind::Z3 => Some(3),
        UnipotentKind::Z4 => Some(4),
        _ => None,
    };
    if let Some(r) = rank {
        let mut spec = torus_group(&torus_basis[..r])?;
        spec.name = format!("Z{}", r);
        return Ok(spec);
    }
    if k < 1 {
        return Err(Error::InvalidK);
    }
    let a = ProjMap::from_matrix(mat([
        [one(), one(), z()],
        [z(), one(), z()],
        [z(), z(), one()],
    ]))?;
    let b = ProjMap::from_matrix(mat([
        [one(), z(), z()],
        [z(), one(), cr(k as f64)],
        [z(), z(), one()],
    ]))?;
    let cgen = ProjMap::from_matrix(mat([
        [one(), z(), one()],
        [z(), one(), z()],
        [z(), z(), one()],
    ]))?;
    let mut generators = vec![a, b, cgen];
    let name = match kind {
        UnipotentKind::Gk => format!("G_{}", k),
        UnipotentKind::DeltaK => {
            generators.push(ProjMap::from_matrix(mat([
                [one(), z(), C::i()],
                [z(), one(), z()],
                [z(), z(), one()],
            ]))?);
            format!("Delta_{}", k)
        }
        _ => unreachable!(),
    };
    Ok(GroupSpec::new(
        &name,
        generators,
        PredictedLimitSet {
            shape: LimitShape::OneLine,
            expected_lambda: LambdaExpectation::Exact(1),
            expected_mu: Some(1),
        },
    )
    .with_param("k", k.to_string()))
}

/// One point of the Sol geometry: R^3 with a twisted product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolElement {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

impl SolElement {
    pub fn new(x: f64, y: f64, t: f64) -> Self {
        Self { x, y, t }
    }

    pub fn identity() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }
}

/// (x1, y1, t1)(x2, y2, t2) = (x1 + e^{t1} x2, y1 + e^{-t1} y2, t1 + t2).
pub fn sol_multiply(a: SolElement, b: SolElement) -> SolElement {
    SolElement::new(
        a.x + a.t.exp() * b.x,
        a.y + (-a.t).exp() * b.y,
        a.t + b.t,
    )
}

/// Verify that Gamma_A embeds in Sol: map (A^k, b) to
/// (w_+ . b, w_- . b, k log(lambda)) where w_+, w_- are eigenvectors of
/// A^T for the eigenvalues lambda > 1 > 1/lambda, and check the
/// homomorphism property on every product of two generators (and their
/// inverses). The recipe needs the dominant eigenvalue positive, i.e.
/// tr A > 2; for tr A < -2 the residuals are NaN and the check is false.
pub fn sol_embedding_check(spec: &GroupSpec) -> Result<bool> {
    let a = spec.toral_a.ok_or(Error::NotToralSpec)?;
    let tr = (a[0][0] + a[1][1]) as f64;
    let disc = (tr * tr - 4.0).sqrt();
    let lambda = (tr + disc) / 2.0;
    let lambda_minus = (tr - disc) / 2.0;
    // Eigenvectors of A^T: (A^T - lambda I) w = 0.
    let eigvec = |l: f64| -> Vector2<f64> {
        // A^T = [[a00, a10], [a01, a11]]; the row (a00 - l, a10) gives an
        // orthogonal direction unless it vanishes.
        let r = Vector2::new(a[0][0] as f64 - l, a[1][0] as f64);
        if r.norm() > 1e-12 {
            Vector2::new(-r[1], r[0])
        } else {
            Vector2::new(1.0, 0.0)
        }
    };
    let wp = eigvec(lambda);
    let wm = eigvec(lambda_minus);

    // Generators of Gamma_A as (k, b) pairs, with inverses.
    // (k1, b1)(k2, b2) = (k1 + k2, A^{k1} b2 + b1).
    let apply_a = |k: i64, b: Vector2<f64>| -> Vector2<f64> {
        let (m, powk) = if k >= 0 {
            (a, k)
        } else {
            // A^{-1} = [[a11, -a01], [-a10, a00]] for det 1.
            ([[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]], -k)
        };
        let mut v = b;
        for _ in 0..powk {
            v = Vector2::new(
                m[0][0] as f64 * v[0] + m[0][1] as f64 * v[1],
                m[1][0] as f64 * v[0] + m[1][1] as f64 * v[1],
            );
        }
        v
    };
    let phi = |k: i64, b: Vector2<f64>| -> SolElement {
        SolElement::new(wp.dot(&b), wm.dot(&b), k as f64 * lambda.ln())
    };
    let gens: Vec<(i64, Vector2<f64>)> = vec![
        (0, Vector2::new(0.0, 1.0)),
        (0, Vector2::new(0.0, -1.0)),
        (0, Vector2::new(1.0, 0.0)),
        (0, Vector2::new(-1.0, 0.0)),
        (1, Vector2::new(0.0, 0.0)),
        (-1, Vector2::new(0.0, 0.0)),
    ];
    for &(k1, b1) in &gens {
        for &(k2, b2) in &gens {
            let prod = (k1 + k2, apply_a(k1, b2) + b1);
            let lhs = phi(prod.0, prod.1);
            let rhs = sol_multiply(phi(k1, b1), phi(k2, b2));
            let res = (lhs.x - rhs.x).abs() + (lhs.y - rhs.y).abs() + (lhs.t - rhs.t).abs();
            if !(res < 1e-9) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
