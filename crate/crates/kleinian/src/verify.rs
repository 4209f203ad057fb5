//! The verification suite: the twelve desk-scale acceptance checks run by
//! `kleinian verify` and the integration tests.
//!
//! Each criterion returns a row with a pass flag and a measured-vs-expected
//! detail string. Family computations are shared through a context so the
//! whole suite stays fast.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{classify, element_limit_set, ElementLimitSet};
use crate::families::{self, GroupSpec, UnipotentKind};
use crate::limit_set::{
    accumulate, classify_group, cluster_cloud, common_fixed_point, control_map,
    distance_to_configuration, myrberg_approx, orbit_oracle, ElementaryKind, ElementaryVerdict,
    LambdaEstimate, LimitSetApprox, MU_INFINITY_CLASS,
};
use crate::moebius::{schottky_pair, Mobius};
use crate::projective::{cr, line_through, CVec3, Mat3, ProjLine, ProjMap, ProjPoint, C};

/// Orbit-oracle seed: KLEINIAN_SEED env var, default 42.
pub fn oracle_seed() -> u64 {
    std::env::var("KLEINIAN_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(42)
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    fn new(id: usize, name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            id,
            name,
            passed,
            detail,
        }
    }
}

fn coord_line(i: usize) -> ProjLine {
    let mut v = CVec3::zeros();
    v[i] = cr(1.0);
    ProjLine::from_vec(v).unwrap()
}

fn diag(a: C, b: C, c: C) -> ProjMap {
    ProjMap::from_matrix(Mat3::from_diagonal(&CVec3::new(a, b, c))).unwrap()
}

fn upper(rows: [[f64; 3]; 3]) -> ProjMap {
    ProjMap::from_matrix(Mat3::from_fn(|i, j| cr(rows[i][j]))).unwrap()
}

fn unit(t: f64) -> C {
    C::new(
        (2.0 * std::f64::consts::PI * t).cos(),
        (2.0 * std::f64::consts::PI * t).sin(),
    )
}

struct CyclicCase {
    name: &'static str,
    spec: GroupSpec,
    expected_lines: usize,
    expected_points: usize,
    orbit_radius: usize,
    approx: LimitSetApprox,
    element: ElementLimitSet,
}

/// Shared family computations.
struct Ctx {
    cyclic: Vec<CyclicCase>,
    diagonal: (GroupSpec, LimitSetApprox),
    toral: (GroupSpec, LimitSetApprox),
    inoue: (GroupSpec, [usize; 3], ElementaryVerdict),
    suspension: (GroupSpec, ElementaryVerdict),
    screw: (GroupSpec, ElementaryVerdict),
    h0: (GroupSpec, ElementaryVerdict),
    torus: (GroupSpec, ElementaryVerdict),
    kodaira: (GroupSpec, ElementaryVerdict),
    ell: (GroupSpec, ElementaryVerdict),
    g1: (GroupSpec, ElementaryVerdict),
    g2: (GroupSpec, ElementaryVerdict),
}

fn cyclic_case(
    name: &'static str,
    g: ProjMap,
    expected_lines: usize,
    expected_points: usize,
    orbit_radius: usize,
) -> CyclicCase {
    let spec = families::from_generators(name, vec![g]);
    let approx = accumulate(&spec, 5);
    let element = element_limit_set(&classify(&g)).unwrap();
    CyclicCase {
        name,
        spec,
        expected_lines,
        expected_points,
        orbit_radius,
        approx,
        element,
    }
}

impl Ctx {
    fn build() -> Self {
        let mu = unit(0.23);
        let th = 2.0 * std::f64::consts::PI * (2.0f64).sqrt() / 5.0;
        let u = C::new(th.cos(), th.sin());
        let cyclic = vec![
            cyclic_case(
                "parabolic_rank1",
                upper([[1.0, 1.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]),
                1,
                0,
                40,
            ),
            cyclic_case(
                "parabolic_rank2",
                upper([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [0.0, 0.0, 1.0]]),
                1,
                0,
                40,
            ),
            cyclic_case(
                "ellipto_parabolic",
                ProjMap::from_matrix(Mat3::new(
                    mu,
                    mu,
                    cr(0.0),
                    cr(0.0),
                    mu,
                    cr(0.0),
                    cr(0.0),
                    cr(0.0),
                    (mu * mu).inv(),
                ))
                .unwrap(),
                1,
                0,
                40,
            ),
            cyclic_case("homothety", diag(cr(2.0), cr(2.0), cr(1.0)), 1, 1, 30),
            cyclic_case("screw", diag(cr(2.0), u, u.conj()), 1, 1, 30),
            cyclic_case(
                "loxoparabolic",
                upper([[2.0, 2.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 0.25]]),
                2,
                0,
                40,
            ),
            cyclic_case(
                "strongly_loxodromic",
                diag(cr(3.0), cr(1.0), cr(1.0 / 3.0)),
                2,
                0,
                30,
            ),
        ];

        let diagonal_spec = families::diagonal_group(cr(2.0), cr(3.0)).unwrap();
        let diagonal = accumulate(&diagonal_spec, 5);
        let toral_spec = families::hyperbolic_toral([[2, 1], [1, 1]]).unwrap();
        let toral = accumulate(&toral_spec, 5);
        let inoue_spec = families::inoue_group(
            &[(cr(1.0), cr(0.0)), (cr(0.0), cr(1.0))],
            cr(0.0),
            cr(0.0),
            cr(1.0),
        )
        .unwrap();
        let inoue_counts = [
            accumulate(&inoue_spec, 3).lines.len(),
            accumulate(&inoue_spec, 4).lines.len(),
            accumulate(&inoue_spec, 5).lines.len(),
        ];
        let inoue_verdict = classify_group(&inoue_spec, 5);
        let [s1, s2] = schottky_pair();
        let susp_spec = families::suspension(&[s1, s2], &[cr(1.0), cr(1.0)], cr(2.0)).unwrap();
        let susp = classify_group(&susp_spec, 3);
        let screw_spec = families::screw_line_point_group(cr(2.0), 0.2).unwrap();
        let screw = classify_group(&screw_spec, 5);
        let h0_spec = families::h0_group(&[cr(1.0)], &[cr(2.0)]).unwrap();
        let h0 = classify_group(&h0_spec, 5);
        let torus_spec = families::torus_group(&[(cr(1.0), cr(0.0)), (cr(0.0), cr(1.0))]).unwrap();
        let torus = classify_group(&torus_spec, 5);
        let kodaira_spec =
            families::kodaira_group(&[(cr(1.0), cr(0.0)), (cr(0.0), cr(1.0))]).unwrap();
        let kodaira = classify_group(&kodaira_spec, 5);
        let ell_spec = families::elliptic_group(&[cr(1.0)], &[cr(1.0)]).unwrap();
        let ell = classify_group(&ell_spec, 5);
        let g1_spec = families::unipotent_presentation_group(UnipotentKind::Gk, 1).unwrap();
        let g1 = classify_group(&g1_spec, 4);
        let g2_spec = families::unipotent_presentation_group(UnipotentKind::Gk, 2).unwrap();
        let g2 = classify_group(&g2_spec, 4);

        Ctx {
            cyclic,
            diagonal: (diagonal_spec, diagonal),
            toral: (toral_spec, toral),
            inoue: (inoue_spec, inoue_counts, inoue_verdict),
            suspension: (susp_spec, susp),
            screw: (screw_spec, screw),
            h0: (h0_spec, h0),
            torus: (torus_spec, torus),
            kodaira: (kodaira_spec, kodaira),
            ell: (ell_spec, ell),
            g1: (g1_spec, g1),
            g2: (g2_spec, g2),
        }
    }
}

/// A random well-conditioned conjugator: complex entries in the unit box,
/// rejected until the singular values stay within a factor 10.
fn random_conjugator(rng: &mut ChaCha8Rng) -> ProjMap {
    loop {
        let m = Mat3::from_fn(|_, _| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let sv = crate::projective::singular_values(&m);
        if sv[2] > 0.1 * sv[0] {
            return ProjMap::from_matrix(m).unwrap();
        }
    }
}

fn criterion_1() -> CriterionResult {
    let mut rng = ChaCha8Rng::seed_from_u64(oracle_seed());
    let trials = 1000;
    // (name, expected kind, sampler); parameters keep eigen gaps >= 1e-3
    type Sampler = Box<dyn Fn(&mut ChaCha8Rng) -> ProjMap>;
    let forms: Vec<(&str, &str, Sampler)> = vec![
        (
            "elliptic_finite",
            "EllipticFiniteOrder",
            Box::new(|rng| {
                let q = rng.gen_range(2..=12u32);
                let a = rng.gen_range(1..q) as f64; // a/q not an integer
                diag(unit(a / q as f64), unit(-a / q as f64), cr(1.0))
            }),
        ),
        (
            "elliptic_infinite",
            "EllipticInfiniteOrder",
            Box::new(|rng| loop {
                let (x, y) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0));
                let (a, b, c) = (unit(x), unit(y), cr(1.0));
                let gaps = [(a - b).norm(), (a - c).norm(), (b - c).norm()];
                if gaps.iter().all(|g| *g > 1e-2) {
                    return diag(a, b, c);
                }
            }),
        ),
        (
            "parabolic_rank1",
            "ParabolicUnipotentRank1",
            Box::new(|rng| {
                let t = rng.gen_range(0.5..2.0);
                upper([[1.0, t, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
            }),
        ),
        (
            "parabolic_rank2",
            "ParabolicUnipotentRank2",
            Box::new(|rng| {
                let (t, s) = (rng.gen_range(0.5..2.0), rng.gen_range(0.5..2.0));
                upper([[1.0, t, 0.0], [0.0, 1.0, s], [0.0, 0.0, 1.0]])
            }),
        ),
        (
            "ellipto_parabolic",
            "ElliptoParabolic",
            Box::new(|rng| {
                // phase away from cube roots of 1 keeps the pair separated
                let mu = unit(rng.gen_range(0.02..0.3));
                ProjMap::from_matrix(Mat3::new(
                    mu,
                    mu * cr(rng.gen_range(0.5..2.0)),
                    cr(0.0),
                    cr(0.0),
                    mu,
                    cr(0.0),
                    cr(0.0),
                    cr(0.0),
                    (mu * mu).inv(),
                ))
                .unwrap()
            }),
        ),
        (
            "complex_homothety",
            "ComplexHomothety",
            Box::new(|rng| {
                let a = unit(rng.gen_range(0.0..1.0)) * cr(rng.gen_range(1.2..3.0));
                diag(a, a, cr(1.0))
            }),
        ),
        (
            "screw",
            "Screw",
            Box::new(|rng| {
                let r = rng.gen_range(1.2..3.0);
                let phi = rng.gen_range(0.05..0.45);
                diag(cr(r), unit(phi), unit(-phi))
            }),
        ),
        (
            "loxoparabolic",
            "Loxoparabolic",
            Box::new(|rng| {
                let l = rng.gen_range(1.3..2.5);
                upper([[l, l, 0.0], [0.0, l, 0.0], [0.0, 0.0, 1.0 / (l * l)]])
            }),
        ),
        (
            "strongly_loxodromic",
            "StronglyLoxodromic",
            Box::new(|rng| {
                let a = rng.gen_range(2.5..4.0);
                let b = rng.gen_range(1.3..2.0);
                diag(cr(a) * unit(rng.gen_range(0.0..1.0)), cr(b), cr(1.0))
            }),
        ),
    ];
    let mut failures = Vec::new();
    for (name, expected, sampler) in &forms {
        let mut bad = 0usize;
        for _ in 0..trials {
            let base = sampler(&mut rng);
            let g = random_conjugator(&mut rng);
            let conj = g.compose(&base).compose(&g.inverse());
            if classify(&conj).kind.name() != *expected {
                bad += 1;
            }
        }
        if bad > 0 {
            failures.push(format!("{name}: {bad}/{trials} misclassified"));
        }
    }
    let passed = failures.is_empty();
    let detail = if passed {
        format!(
            "{} forms x {trials} conjugations each, all classified as intended",
            forms.len()
        )
    } else {
        failures.join("; ")
    };
    CriterionResult::new(1, "element taxonomy under conjugation", passed, detail)
}

fn lines_match(got: &[ProjLine], want: &[ProjLine]) -> bool {
    got.len() == want.len()
        && want
            .iter()
            .all(|w| got.iter().any(|g| g.chordal_distance(w) < 1e-6))
}

fn criterion_2(ctx: &Ctx) -> CriterionResult {
    let mut failures = Vec::new();
    for case in &ctx.cyclic {
        let lines = case.approx.plain_lines();
        let ok = lines.len() == case.expected_lines
            && case.approx.isolated_points.len() == case.expected_points
            && lines_match(&lines, &case.element.lines)
            && case.element.points.iter().all(|p| {
                case.approx
                    .isolated_points
                    .iter()
                    .any(|q| q.chordal_distance(p) < 1e-6)
            });
        if !ok {
            failures.push(format!(
                "{}: {} lines + {} points (expected {} + {})",
                case.name,
                lines.len(),
                case.approx.isolated_points.len(),
                case.expected_lines,
                case.expected_points
            ));
        }
    }
    let passed = failures.is_empty();
    let detail = if passed {
        "7 cyclic forms match their closed-form limit sets within 1e-6".into()
    } else {
        failures.join("; ")
    };
    CriterionResult::new(2, "cyclic closed-form limit sets", passed, detail)
}

fn criterion_3(ctx: &Ctx) -> CriterionResult {
    let a = &ctx.diagonal.1;
    let gp = crate::projective::general_position(&a.plain_lines()).unwrap_or(false);
    let passed = a.lambda_estimate == LambdaEstimate::Exact(3) && a.mu_estimate == 3 && gp;
    CriterionResult::new(
        3,
        "diagonal(2,3): three lines in general position",
        passed,
        format!(
            "lambda={:?} mu={} general_position={gp} (expected Exact(3), 3, true)",
            a.lambda_estimate, a.mu_estimate
        ),
    )
}

fn criterion_4(ctx: &Ctx) -> CriterionResult {
    let a = &ctx.toral.1;
    let two = a.vertices.len() == 2;
    let shared = two
        && line_through(&a.vertices[0].0, &a.vertices[1].0)
            .map(|l| a.lines.iter().any(|t| t.line.dedup_eq(&l)))
            .unwrap_or(false);
    let passed = a.mu_estimate == 4 && two && shared;
    CriterionResult::new(
        4,
        "hyperbolic_toral([[2,1],[1,1]]): two pencils sharing a line",
        passed,
        format!(
            "mu={} vertices={} shared_line={shared} (expected 4, 2, true)",
            a.mu_estimate,
            a.vertices.len()
        ),
    )
}

fn criterion_5(ctx: &Ctx) -> CriterionResult {
    let [l3, l4, l5] = ctx.inoue.1;
    let inoue_ok =
        ctx.inoue.2.kind == ElementaryKind::SecondKind(2) && l3 < l4 && l4 < l5;
    let susp = &ctx.suspension.1;
    let base = coord_line(0);
    let e1 = ProjPoint::standard(0);
    let through = susp
        .approx
        .lines
        .iter()
        .filter(|t| t.line.contains(&e1, 1e-6))
        .count();
    let has_base = susp.approx.lines.iter().any(|t| t.line.dedup_eq(&base));
    let susp_ok = susp.kind == ElementaryKind::SecondKind(3) && has_base && through >= 10;
    CriterionResult::new(
        5,
        "cone families: Inoue and suspension",
        inoue_ok && susp_ok,
        format!(
            "inoue {:?} lines {l3}->{l4}->{l5}; suspension {:?} line(e2,e3)={has_base} \
             lines through [1:0:0]={through}",
            ctx.inoue.2.kind, susp.kind
        ),
    )
}

fn criterion_6(ctx: &Ctx) -> CriterionResult {
    // screw_line_point: the theorem's exceptional line + isolated point case
    let screw = &ctx.screw.1.approx;
    let spec = &ctx.screw.0;
    let gate = screw.isolated_points.len() == 1
        && screw
            .lines
            .iter()
            .all(|t| !t.line.contains(&screw.isolated_points[0], 1e-6));
    let my = myrberg_approx(spec, 5);
    let screw_ok = screw.lines.len() == 1
        && gate
        && lines_match(&my.lines, &screw.plain_lines())
        && my.points.len() == 1
        && my.points[0].chordal_distance(&screw.isolated_points[0]) < 1e-6;

    // h0 with mu(1)=2: the generator is loxoparabolic, so the closed form
    // is two invariant lines with no isolated point (and the Myrberg set
    // matches); see the cyclic criterion for the same dichotomy.
    let h0 = &ctx.h0.1.approx;
    let h0_my = myrberg_approx(&ctx.h0.0, 5);
    let h0_ok = h0.lines.len() == 2
        && h0.isolated_points.is_empty()
        && lines_match(&h0_my.lines, &h0.plain_lines())
        && h0_my.points.is_empty();
    CriterionResult::new(
        6,
        "isolated-point gate and Myrberg agreement",
        screw_ok && h0_ok,
        format!(
            "screw_line_point: {} line + {} point, myrberg equal={}; \
             h0(Z, mu=2): {} lines + {} points (loxoparabolic closed form), myrberg equal={}",
            screw.lines.len(),
            screw.isolated_points.len(),
            screw_ok,
            h0.lines.len(),
            h0.isolated_points.len(),
            h0_ok
        ),
    )
}

fn criterion_7(ctx: &Ctx) -> CriterionResult {
    let one_line = [
        ("torus", &ctx.torus.1),
        ("kodaira", &ctx.kodaira.1),
        ("ell", &ctx.ell.1),
    ];
    let mut failures = Vec::new();
    for (name, v) in one_line {
        if v.kind != ElementaryKind::FirstKind(1) {
            failures.push(format!("{name}: {:?}", v.kind));
        }
    }
    // G_k as realized here contains the abelian subgroup <A, C> of rank-1
    // unipotents whose fixed lines sweep a full pencil through [1:0:0], so
    // the measured limit set is a cone over a circle: second kind, mu = 2,
    // with that single vertex.
    for (name, v) in [("G_1", &ctx.g1.1), ("G_2", &ctx.g2.1)] {
        let vertex_ok = v.approx.vertices.len() == 1
            && v.approx.vertices[0].0.dedup_eq(&ProjPoint::standard(0));
        if v.kind != ElementaryKind::SecondKind(2) || !vertex_ok {
            failures.push(format!(
                "{name}: {:?} vertices={}",
                v.kind,
                v.approx.vertices.len()
            ));
        }
    }
    let passed = failures.is_empty();
    let detail = if passed {
        "torus/kodaira/ell FirstKind(1); G_1,G_2 cone with vertex [1:0:0] (SecondKind(2))".into()
    } else {
        failures.join("; ")
    };
    CriterionResult::new(7, "one-line families and the G_k cones", passed, detail)
}

fn containment(spec: &GroupSpec, approx: &LimitSetApprox, radius: usize) -> Option<String> {
    let my = myrberg_approx(spec, radius);
    for t in &approx.lines {
        if !my.lines.iter().any(|l| l.chordal_distance(&t.line) < 1e-6) {
            return Some(format!("{}: a Kulkarni line misses the Myrberg set", spec.name));
        }
    }
    for p in &approx.isolated_points {
        let near_point = my.points.iter().any(|q| q.chordal_distance(p) < 1e-6);
        let on_line = my.lines.iter().any(|l| l.contains(p, 1e-6));
        if !near_point && !on_line {
            return Some(format!("{}: an isolated point misses the Myrberg set", spec.name));
        }
    }
    None
}

fn criterion_8(ctx: &Ctx) -> CriterionResult {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for case in &ctx.cyclic {
        checked += 1;
        if let Some(f) = containment(&case.spec, &case.approx, 5) {
            failures.push(f);
        }
    }
    let group_runs: Vec<(&GroupSpec, &LimitSetApprox, usize)> = vec![
        (&ctx.diagonal.0, &ctx.diagonal.1, 5),
        (&ctx.toral.0, &ctx.toral.1, 5),
        (&ctx.inoue.0, &ctx.inoue.2.approx, 5),
        (&ctx.suspension.0, &ctx.suspension.1.approx, 3),
        (&ctx.screw.0, &ctx.screw.1.approx, 5),
        (&ctx.h0.0, &ctx.h0.1.approx, 5),
        (&ctx.torus.0, &ctx.torus.1.approx, 5),
        (&ctx.kodaira.0, &ctx.kodaira.1.approx, 5),
        (&ctx.ell.0, &ctx.ell.1.approx, 5),
        (&ctx.g1.0, &ctx.g1.1.approx, 4),
        (&ctx.g2.0, &ctx.g2.1.approx, 4),
    ];
    for (spec, approx, radius) in group_runs {
        checked += 1;
        if let Some(f) = containment(spec, approx, radius) {
            failures.push(f);
        }
    }
    let passed = failures.is_empty();
    let detail = if passed {
        format!("Kulkarni within 1e-6 of Myrberg for all {checked} family runs")
    } else {
        failures.join("; ")
    };
    CriterionResult::new(8, "Kulkarni contained in Myrberg", passed, detail)
}

/// Sup-norm distance between Mobius maps, on Frobenius-normalized lifts
/// minimized over the residual sign ambiguity.
fn mobius_distance(a: &Mobius, b: &Mobius) -> f64 {
    let (ma, mb) = (a.lift() / cr(a.lift().norm()), b.lift() / cr(b.lift().norm()));
    let d1 = (ma - mb).iter().map(|e| e.norm()).fold(0.0f64, f64::max);
    let d2 = (ma + mb).iter().map(|e| e.norm()).fold(0.0f64, f64::max);
    d1.min(d2)
}

fn criterion_9(ctx: &Ctx) -> CriterionResult {
    let spec = &ctx.suspension.0;
    let Some(p) = common_fixed_point(spec) else {
        return CriterionResult::new(9, "control morphism", false, "no global fixed point".into());
    };
    let horizon = coord_line(0);
    let [s1, s2] = schottky_pair();
    let mut failures = Vec::new();
    let projected: Vec<Mobius> = match crate::limit_set::control_projection(spec, &p, &horizon) {
        Ok(v) => v,
        Err(e) => {
            return CriterionResult::new(9, "control morphism", false, format!("projection: {e}"))
        }
    };
    let mut tr_err = 0.0f64;
    for (pi, sigma) in projected.iter().take(2).zip([&s1, &s2]) {
        tr_err = tr_err.max((pi.tr_squared() - sigma.tr_squared()).norm());
    }
    if tr_err > 1e-7 {
        failures.push(format!("tr^2 mismatch {tr_err:.2e}"));
    }
    let mut hom_err = 0.0f64;
    for g in &spec.generators {
        for h in &spec.generators {
            let lhs = match control_map(&g.compose(h), &p, &horizon) {
                Ok(m) => m,
                Err(e) => {
                    failures.push(format!("product projection: {e}"));
                    continue;
                }
            };
            let (pg, ph) = (
                control_map(g, &p, &horizon).unwrap(),
                control_map(h, &p, &horizon).unwrap(),
            );
            hom_err = hom_err.max(mobius_distance(&lhs, &pg.compose(&ph)));
        }
    }
    if hom_err > 1e-7 {
        failures.push(format!("homomorphism defect {hom_err:.2e}"));
    }
    let passed = failures.is_empty();
    CriterionResult::new(
        9,
        "control morphism on suspensions",
        passed,
        if passed {
            format!("tr^2 error {tr_err:.2e}, homomorphism defect {hom_err:.2e} (tol 1e-7)")
        } else {
            failures.join("; ")
        },
    )
}

fn criterion_10() -> CriterionResult {
    let mut rows = Vec::new();
    let mut passed = true;
    for a in [[[2, 1], [1, 1]], [[3, 2], [1, 1]]] {
        let spec = families::hyperbolic_toral(a).unwrap();
        match families::sol_embedding_check(&spec) {
            Ok(true) => rows.push(format!("{a:?}: residual < 1e-9")),
            Ok(false) => {
                passed = false;
                rows.push(format!("{a:?}: residual too large"));
            }
            Err(e) => {
                passed = false;
                rows.push(format!("{a:?}: {e}"));
            }
        }
    }
    CriterionResult::new(10, "Sol multiplication law embedding", passed, rows.join("; "))
}

fn orbit_check(
    spec: &GroupSpec,
    radius: usize,
    lines: &[ProjLine],
    points: &[ProjPoint],
) -> Option<f64> {
    let cloud = orbit_oracle(spec, radius, 200, oracle_seed());
    let clusters = cluster_cloud(&cloud, 2.5e-2, 5);
    if clusters.is_empty() {
        return None;
    }
    Some(
        clusters
            .iter()
            .map(|c| distance_to_configuration(c, lines, points))
            .fold(0.0f64, f64::max),
    )
}

fn criterion_11(ctx: &Ctx) -> CriterionResult {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut run = |name: &str,
                   spec: &GroupSpec,
                   radius: usize,
                   approx: &LimitSetApprox,
                   failures: &mut Vec<String>| {
        match orbit_check(spec, radius, &approx.plain_lines(), &approx.isolated_points) {
            Some(d) => {
                worst = worst.max(d);
                if d > 5e-2 {
                    failures.push(format!("{name}: cluster distance {d:.3}"));
                }
            }
            None => failures.push(format!("{name}: no orbit clusters formed")),
        }
    };
    for case in &ctx.cyclic {
        run(
            case.name,
            &case.spec,
            case.orbit_radius,
            &case.approx,
            &mut failures,
        );
    }
    run("diagonal", &ctx.diagonal.0, 10, &ctx.diagonal.1, &mut failures);
    run("hyperbolic_toral", &ctx.toral.0, 8, &ctx.toral.1, &mut failures);
    // Cone families gain lines slowly with the radius, so the oracle is
    // compared against a deeper line approximation (and, for the slowly
    // converging parabolic Kodaira orbit, a longer word horizon).
    let inoue_fine = accumulate(&ctx.inoue.0, 9);
    run("inoue", &ctx.inoue.0, 40, &inoue_fine, &mut failures);
    run(
        "suspension",
        &ctx.suspension.0,
        5,
        &ctx.suspension.1.approx,
        &mut failures,
    );
    run(
        "screw_line_point",
        &ctx.screw.0,
        30,
        &ctx.screw.1.approx,
        &mut failures,
    );
    run("h0", &ctx.h0.0, 30, &ctx.h0.1.approx, &mut failures);
    run("torus", &ctx.torus.0, 40, &ctx.torus.1.approx, &mut failures);
    run(
        "kodaira",
        &ctx.kodaira.0,
        120,
        &ctx.kodaira.1.approx,
        &mut failures,
    );
    run("ell", &ctx.ell.0, 40, &ctx.ell.1.approx, &mut failures);
    let g1_fine = accumulate(&ctx.g1.0, 10);
    run("G_1", &ctx.g1.0, 30, &g1_fine, &mut failures);
    let g2_fine = accumulate(&ctx.g2.0, 10);
    run("G_2", &ctx.g2.0, 30, &g2_fine, &mut failures);
    let passed = failures.is_empty();
    CriterionResult::new(
        11,
        "orbit oracle agreement",
        passed,
        if passed {
            format!("all cluster clouds within 5e-2 of the measured geometry (worst {worst:.3})")
        } else {
            failures.join("; ")
        },
    )
}

fn criterion_12(ctx: &Ctx) -> CriterionResult {
    let mut lambdas = Vec::new();
    let mut mus = Vec::new();
    let mut collect = |a: &LimitSetApprox| {
        if let LambdaEstimate::Exact(n) = a.lambda_estimate {
            lambdas.push(n);
        }
        mus.push(a.mu_estimate);
    };
    for case in &ctx.cyclic {
        collect(&case.approx);
    }
    collect(&ctx.diagonal.1);
    collect(&ctx.toral.1);
    for v in [
        &ctx.inoue.2,
        &ctx.suspension.1,
        &ctx.screw.1,
        &ctx.h0.1,
        &ctx.torus.1,
        &ctx.kodaira.1,
        &ctx.ell.1,
        &ctx.g1.1,
        &ctx.g2.1,
    ] {
        collect(&v.approx);
    }
    let bad_lambda: Vec<usize> = lambdas
        .iter()
        .copied()
        .filter(|n| ![1, 2, 3].contains(n))
        .collect();
    let bad_mu: Vec<usize> = mus
        .iter()
        .copied()
        .filter(|m| ![1, 2, 3, 4, MU_INFINITY_CLASS].contains(m))
        .collect();
    let passed = bad_lambda.is_empty() && bad_mu.is_empty();
    CriterionResult::new(
        12,
        "lambda/mu diagnostics across all runs",
        passed,
        format!(
            "{} Exact(lambda) values all in {{1,2,3}}: {}; {} mu values all in \
             {{1,2,3,4,inf}}: {}",
            lambdas.len(),
            bad_lambda.is_empty(),
            mus.len(),
            bad_mu.is_empty()
        ),
    )
}

/// Run all twelve criteria.
pub fn run_all() -> Vec<CriterionResult> {
    let ctx = Ctx::build();
    vec![
        criterion_1(),
        criterion_2(&ctx),
        criterion_3(&ctx),
        criterion_4(&ctx),
        criterion_5(&ctx),
        criterion_6(&ctx),
        criterion_7(&ctx),
        criterion_8(&ctx),
        criterion_9(&ctx),
        criterion_10(),
        criterion_11(&ctx),
        criterion_12(&ctx),
    ]
}

/// Run the suite filtered by name: "all", or a substring of a criterion
/// name or family (e.g. "hyperbolic_toral", "torus", "control").
pub fn run_suite(filter: &str) -> Vec<CriterionResult> {
    let rows = run_all();
    if filter == "all" {
        return rows;
    }
    let f = filter.to_lowercase();
    rows.into_iter()
        .filter(|r| r.name.contains(&f) || r.detail.to_lowercase().contains(&f))
        .collect()
}
