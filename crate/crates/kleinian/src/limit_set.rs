//! Limit-set approximation and the elementary / non-elementary trichotomy.
//!
//! The Kulkarni limit set of the discrete groups handled here is a union
//! of complex lines plus at most one isolated point. We approximate it by
//! accumulating, over a word ball, the per-element limit lines together
//! with the effective lines (kernels of accumulation pseudo-projective
//! maps of sequences u w^n v). Two counts summarize the geometry: lambda,
//! the number of lines, and mu, the largest subset of limit lines in
//! general position (no three concurrent); mu is always 1, 2, 3, 4 or
//! infinite.

use nalgebra::Matrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{classify, element_limit_set};
use crate::families::GroupSpec;
use crate::moebius::Mobius;
use crate::projective::{
    chordal_distance_points, line_through, meet, push_line_dedup, push_point_dedup, CVec3,
    KernelDescriptor, LineSet, ProjLine, ProjMap, ProjPoint, PseudoProjMap,
};
use crate::pseudo::{effective_lines, sort_lines, word_ball, word_sphere};
use crate::projective::C;
use crate::{Error, Result, DEDUP_TOL, LAMBDA_INFINITY_CUTOFF};

/// Incidence below this absorbs a point into a line (and flags a vertex).
pub const ABSORB_TOL: f64 = 1e-6;
/// Chordal tolerance for "fixed by every generator".
pub const GLOBAL_FIXED_TOL: f64 = 1e-8;
/// mu values at or above this are reported as the infinity class.
pub const MU_INFINITY_CLASS: usize = 5;
/// Largest line set handed to the exact mu bitmask search.
const MU_EXACT_LIMIT: usize = 12;
/// Power depth when sampling singular powers for the Myrberg set.
const MYRBERG_POWER_DEPTH: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineProvenance {
    /// Limit line of a single word (invariant line of a loxodromic or
    /// fixed/invariant line of a parabolic).
    PerElement,
    /// Kernel line of an accumulation pseudo-projective map.
    EffectiveLine,
}

#[derive(Debug, Clone, Copy)]
pub struct TaggedLine {
    pub line: ProjLine,
    pub provenance: LineProvenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaEstimate {
    /// The line count was already stable at the previous radius.
    Exact(usize),
    /// Still growing (or first seen at this radius): a lower bound.
    AtLeast(usize),
}

impl LambdaEstimate {
    pub fn count(&self) -> usize {
        match *self {
            LambdaEstimate::Exact(n) | LambdaEstimate::AtLeast(n) => n,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LimitSetApprox {
    pub lines: Vec<TaggedLine>,
    /// Limit points fixed by every generator and not absorbed into a line.
    pub isolated_points: Vec<ProjPoint>,
    pub radius_used: usize,
    pub lambda_estimate: LambdaEstimate,
    /// Clamped at MU_INFINITY_CLASS, which stands for the infinity class.
    pub mu_estimate: usize,
    /// Points where at least three limit lines meet, with line counts.
    pub vertices: Vec<(ProjPoint, usize)>,
}

impl LimitSetApprox {
    pub fn plain_lines(&self) -> Vec<ProjLine> {
        self.lines.iter().map(|t| t.line).collect()
    }
}

/// Limit lines and candidate limit points of the ball of the given radius.
fn gather(spec: &GroupSpec, radius: usize) -> (Vec<TaggedLine>, Vec<ProjPoint>) {
    let mut seen = LineSet::new();
    let mut lines = Vec::new();
    let mut points = Vec::new();
    for w in word_ball(&spec.generators, radius) {
        if w.is_identity() {
            continue;
        }
        let class = classify(&w);
        let Ok(ls) = element_limit_set(&class) else { continue };
        if ls.is_everything {
            // An irrational elliptic word: the group is not discrete and
            // the line/point bookkeeping does not apply.
            continue;
        }
        for l in ls.lines {
            if seen.insert(l) {
                lines.push(TaggedLine {
                    line: l,
                    provenance: LineProvenance::PerElement,
                });
            }
        }
        for p in ls.points {
            push_point_dedup(&mut points, p);
        }
    }
    for l in effective_lines(&spec.generators, radius) {
        if seen.insert(l) {
            lines.push(TaggedLine {
                line: l,
                provenance: LineProvenance::EffectiveLine,
            });
        }
    }
    (lines, points)
}

/// Approximate the Kulkarni limit set over the word ball of the given
/// radius. The lambda estimate compares against the ball one step smaller:
/// a count that grew by 20% or more, or that reached the infinity cutoff,
/// is reported as a lower bound only.
pub fn accumulate(spec: &GroupSpec, radius: usize) -> LimitSetApprox {
    let (lines, candidates) = gather(spec, radius);
    let lo = if radius == 0 {
        0
    } else {
        gather(spec, radius - 1).0.len()
    };
    let hi = lines.len();
    let grew = hi > lo && (lo == 0 || hi as f64 >= lo as f64 * 1.2);
    let lambda_estimate = if hi >= LAMBDA_INFINITY_CUTOFF || grew {
        LambdaEstimate::AtLeast(hi)
    } else {
        LambdaEstimate::Exact(hi)
    };

    let mut isolated_points = Vec::new();
    for p in candidates {
        let fixed = spec
            .generators
            .iter()
            .all(|g| chordal_distance_points(&g.apply(&p), &p) <= GLOBAL_FIXED_TOL);
        let absorbed = lines.iter().any(|t| t.line.contains(&p, ABSORB_TOL));
        if fixed && !absorbed {
            push_point_dedup(&mut isolated_points, p);
        }
    }

    let plain: Vec<ProjLine> = lines.iter().map(|t| t.line).collect();
    let vertices = vertices_of(&plain);
    let mu_estimate = count_mu(&plain, MU_INFINITY_CLASS);
    LimitSetApprox {
        lines,
        isolated_points,
        radius_used: radius,
        lambda_estimate,
        mu_estimate,
        vertices,
    }
}

/// Points where at least three of the given lines meet, with the number
/// of incident lines, sorted by that count (descending).
///
/// For large arrangements the candidate meets come from a strided
/// subsample of at most 80 lines; incidence counts always run over the
/// full set. This finds every vertex carrying a macroscopic share of the
/// lines (the pencils the classification cares about) while staying far
/// from the cubic cost of the exhaustive scan.
pub fn vertices_of(lines: &[ProjLine]) -> Vec<(ProjPoint, usize)> {
    const SAMPLE: usize = 80;
    let sample: Vec<&ProjLine> = if lines.len() <= SAMPLE {
        lines.iter().collect()
    } else {
        (0..SAMPLE)
            .map(|i| &lines[i * lines.len() / SAMPLE])
            .collect()
    };
    let mut candidates: Vec<ProjPoint> = Vec::new();
    for i in 0..sample.len() {
        for j in (i + 1)..sample.len() {
            if let Ok(p) = meet(sample[i], sample[j]) {
                push_point_dedup(&mut candidates, p);
            }
        }
    }
    let mut out: Vec<(ProjPoint, usize)> = Vec::new();
    for p in candidates {
        let count = lines.iter().filter(|l| l.contains(&p, ABSORB_TOL)).count();
        if count >= 3 {
            out.push((p, count));
        }
    }
    out.sort_by(|a, b| b.1.cmp(&a.1));
    out
}

/// True iff the meet of the first two lines lies on the third.
fn concurrent(a: &ProjLine, b: &ProjLine, c: &ProjLine) -> bool {
    match meet(a, b) {
        Ok(p) => c.contains(&p, ABSORB_TOL),
        Err(_) => true, // coincident up to tolerance: never jointly usable
    }
}

/// Largest subset of the given (deduplicated) lines with no three
/// concurrent, clamped at `infinity_class` (which stands for an infinite
/// mu). For more than MU_EXACT_LIMIT lines the set is first reduced: each
/// pencil (vertex with three or more incident lines) keeps only four
/// representatives, which is enough to realize any concurrency-free
/// pattern, since a subset in general position uses at most two lines per
/// pencil and spare representatives dodge accidental triples.
pub fn count_mu(lines: &[ProjLine], infinity_class: usize) -> usize {
    if lines.len() <= 1 {
        return lines.len();
    }
    let reduced: Vec<ProjLine> = if lines.len() <= MU_EXACT_LIMIT {
        lines.to_vec()
    } else {
        reduce_for_mu(lines)
    };
    let n = reduced.len().min(MU_EXACT_LIMIT);
    let reduced = &reduced[..n];

    let mut bad: Vec<u32> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if concurrent(&reduced[i], &reduced[j], &reduced[k]) {
                    bad.push((1 << i) | (1 << j) | (1 << k));
                }
            }
        }
    }
    let mut best = 0usize;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best || size > infinity_class {
            continue;
        }
        if bad.iter().all(|&t| t & mask != t) {
            best = size;
        }
    }
    best.min(infinity_class)
}

/// Keep at most four lines per pencil, plus every line through no vertex.
fn reduce_for_mu(lines: &[ProjLine]) -> Vec<ProjLine> {
    let vertices = vertices_of(lines);
    let mut loose: Vec<ProjLine> = Vec::new();
    let mut reps: Vec<ProjLine> = Vec::new();
    let mut quota: Vec<usize> = vec![0; vertices.len()];
    for l in lines {
        let through: Vec<usize> = vertices
            .iter()
            .enumerate()
            .filter(|(_, (v, _))| l.contains(v, ABSORB_TOL))
            .map(|(i, _)| i)
            .collect();
        if through.is_empty() {
            loose.push(*l);
        } else if through.iter().any(|&i| quota[i] < 4) {
            for &i in &through {
                quota[i] += 1;
            }
            reps.push(*l);
        }
    }
    let mut out = loose;
    out.extend(reps);
    out.truncate(MU_EXACT_LIMIT);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementaryKind {
    /// Finitely many limit lines (the count), stable across radii.
    FirstKind(usize),
    /// Line count still growing but mu stable and at most 4.
    SecondKind(usize),
    NonElementary,
}

#[derive(Debug, Clone)]
pub struct VerdictEvidence {
    pub radius_lo: usize,
    pub lines_lo: usize,
    pub mu_lo: usize,
    pub radius_hi: usize,
    pub lines_hi: usize,
    pub mu_hi: usize,
    pub isolated_points: usize,
}

#[derive(Debug, Clone)]
pub struct ElementaryVerdict {
    pub kind: ElementaryKind,
    pub evidence: VerdictEvidence,
    pub approx: LimitSetApprox,
}

/// Decide the elementary trichotomy from the limit-set approximations at
/// the two largest radii.
pub fn classify_group(spec: &GroupSpec, max_radius: usize) -> ElementaryVerdict {
    assert!(max_radius >= 1, "need at least radius 1");
    let lo = accumulate(spec, max_radius - 1);
    let hi = accumulate(spec, max_radius);
    let evidence = VerdictEvidence {
        radius_lo: lo.radius_used,
        lines_lo: lo.lines.len(),
        mu_lo: lo.mu_estimate,
        radius_hi: hi.radius_used,
        lines_hi: hi.lines.len(),
        mu_hi: hi.mu_estimate,
        isolated_points: hi.isolated_points.len(),
    };
    let kind = match hi.lambda_estimate {
        LambdaEstimate::Exact(n) if evidence.lines_lo == n => ElementaryKind::FirstKind(n),
        _ if evidence.mu_lo == evidence.mu_hi && evidence.mu_hi <= 4 && evidence.mu_hi > 0 => {
            ElementaryKind::SecondKind(evidence.mu_hi)
        }
        _ => ElementaryKind::NonElementary,
    };
    ElementaryVerdict {
        kind,
        evidence,
        approx: hi,
    }
}

/// Images of seeded random sample points under every word at distance
/// exactly `radius`: an independent oracle for where orbits accumulate.
pub fn orbit_oracle(spec: &GroupSpec, radius: usize, samples: usize, seed: u64) -> Vec<ProjPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut base = Vec::with_capacity(samples);
    while base.len() < samples {
        let v = CVec3::new(
            C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        );
        if v.norm() > 0.3 {
            base.push(ProjPoint::from_vec(v).unwrap());
        }
    }
    let mut cloud = Vec::new();
    for w in word_sphere(&spec.generators, radius) {
        if w.is_identity() {
            continue;
        }
        for p in &base {
            cloud.push(w.apply(p));
        }
    }
    cloud
}

/// Dense spots of a point cloud: cells (of the given chordal-scale size)
/// holding at least `min_count` points, represented by one member each.
pub fn cluster_cloud(cloud: &[ProjPoint], cell: f64, min_count: usize) -> Vec<ProjPoint> {
    let mut cells: std::collections::HashMap<[i64; 6], (usize, ProjPoint)> =
        std::collections::HashMap::new();
    for p in cloud {
        let r = p.rep();
        let key = [
            (r[0].re / cell).round() as i64,
            (r[0].im / cell).round() as i64,
            (r[1].re / cell).round() as i64,
            (r[1].im / cell).round() as i64,
            (r[2].re / cell).round() as i64,
            (r[2].im / cell).round() as i64,
        ];
        cells.entry(key).and_modify(|e| e.0 += 1).or_insert((1, *p));
    }
    let mut out: Vec<(usize, ProjPoint)> = cells
        .into_values()
        .filter(|(n, _)| *n >= min_count)
        .collect();
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out.into_iter().map(|(_, p)| p).collect()
}

/// Chordal-scale distance from a point to a union of lines and points.
pub fn distance_to_configuration(p: &ProjPoint, lines: &[ProjLine], points: &[ProjPoint]) -> f64 {
    let mut d = f64::INFINITY;
    for l in lines {
        d = d.min(l.incidence(p));
    }
    for q in points {
        d = d.min(chordal_distance_points(p, q));
    }
    d
}

/// Points fixed by every generator, found among the eigenvectors of the
/// first non-identity generator and verified directly.
pub fn common_fixed_points(spec: &GroupSpec) -> Vec<ProjPoint> {
    let Some(first) = spec.generators.iter().find(|g| !g.is_identity()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for cluster in crate::element::eigen3(first).clusters {
        for v in &cluster.vectors {
            let Ok(p) = ProjPoint::from_vec(*v) else { continue };
            let fixed = spec
                .generators
                .iter()
                .all(|g| chordal_distance_points(&g.apply(&p), &p) <= GLOBAL_FIXED_TOL);
            if fixed {
                push_point_dedup(&mut out, p);
            }
        }
    }
    out
}

pub fn common_fixed_point(spec: &GroupSpec) -> Option<ProjPoint> {
    common_fixed_points(spec).into_iter().next()
}

/// The Mobius transformation induced on the horizon line by gamma, seen
/// from the globally fixed point p: a horizon point q maps to the meet of
/// line(gamma q, p) with the horizon.
pub fn control_map(gamma: &ProjMap, p: &ProjPoint, horizon: &ProjLine) -> Result<Mobius> {
    if horizon.contains(p, DEDUP_TOL) {
        return Err(Error::PointOnHorizon);
    }
    let (a, b) = horizon.two_points();
    let (av, bv) = (*a.rep(), *b.rep());
    // Sources on the horizon in (s, t) coordinates q = s a + t b. Three
    // suffice; spares dodge the measure-zero case gamma q = p.
    let sources: [(f64, f64); 5] = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 2.0), (2.0, 1.0)];
    let mut pairs: Vec<(crate::moebius::P1Point, crate::moebius::P1Point)> = Vec::new();
    for (s, t) in sources {
        if pairs.len() == 3 {
            break;
        }
        let q = ProjPoint::from_vec(av * crate::projective::cr(s) + bv * crate::projective::cr(t))?;
        let image = gamma.apply(&q);
        if chordal_distance_points(&image, p) < DEDUP_TOL {
            continue;
        }
        let through = line_through(&image, p)?;
        let x = meet(&through, horizon)?;
        let coords = horizon_coords(&av, &bv, &x)?;
        let src = crate::moebius::P1Point::new(crate::projective::cr(s), crate::projective::cr(t))?;
        if pairs.iter().any(|(_, y)| y.dedup_eq(&coords)) {
            // A repeated image cannot come from an induced bijection.
            return Err(Error::CoincidentPoints);
        }
        pairs.push((src, coords));
    }
    if pairs.len() < 3 {
        return Err(Error::CoincidentPoints);
    }
    let to_targets = mobius_through(&pairs[0].1, &pairs[1].1, &pairs[2].1)?;
    let to_sources = mobius_through(&pairs[0].0, &pairs[1].0, &pairs[2].0)?;
    Ok(to_targets.compose(&to_sources.inverse()))
}

/// The control morphism: the induced Mobius map of each generator.
pub fn control_projection(
    spec: &GroupSpec,
    p: &ProjPoint,
    horizon: &ProjLine,
) -> Result<Vec<Mobius>> {
    spec.generators
        .iter()
        .map(|g| control_map(g, p, horizon))
        .collect()
}

/// Coordinates (s, t) with x ~ s a + t b, by least squares on [a b].
fn horizon_coords(a: &CVec3, b: &CVec3, x: &ProjPoint) -> Result<crate::moebius::P1Point> {
    let xr = x.rep();
    let (aa, ab, bb) = (a.dotc(a), a.dotc(b), b.dotc(b));
    let (ax, bx) = (a.dotc(xr), b.dotc(xr));
    let det = aa * bb - ab * ab.conj();
    if det.norm() < 1e-14 {
        return Err(Error::CoincidentPoints);
    }
    let s = (ax * bb - ab * bx) / det;
    let t = (aa * bx - ab.conj() * ax) / det;
    crate::moebius::P1Point::new(s, t)
}

/// The Mobius map sending (1:0), (0:1), (1:1) to the three given points.
fn mobius_through(
    p1: &crate::moebius::P1Point,
    p2: &crate::moebius::P1Point,
    p3: &crate::moebius::P1Point,
) -> Result<Mobius> {
    let (a, b, c) = (*p1.rep(), *p2.rep(), *p3.rep());
    let det = a[0] * b[1] - a[1] * b[0];
    if det.norm() < 1e-14 {
        return Err(Error::CoincidentPoints);
    }
    let lambda = (c[0] * b[1] - c[1] * b[0]) / det;
    let mu = (a[0] * c[1] - a[1] * c[0]) / det;
    Mobius::from_matrix(Matrix2::new(
        lambda * a[0],
        mu * b[0],
        lambda * a[1],
        mu * b[1],
    ))
}

#[derive(Debug, Clone)]
pub struct MyrbergApprox {
    pub lines: Vec<ProjLine>,
    /// Point kernels not absorbed into any Myrberg line.
    pub points: Vec<ProjPoint>,
}

/// Approximate the Myrberg limit set: kernels of accumulation
/// pseudo-projective maps. Lines come from the effective-line machinery;
/// point kernels come from sampling numerically singular canonical powers
/// of ball words, pushed around by small right factors (ker(S v) is
/// v^{-1} ker S).
pub fn myrberg_approx(spec: &GroupSpec, radius: usize) -> MyrbergApprox {
    let mut line_set = LineSet::new();
    for l in effective_lines(&spec.generators, radius) {
        line_set.insert(l);
    }
    let small = word_ball(&spec.generators, radius.min(3));
    let mut kernel_points: Vec<ProjPoint> = Vec::new();
    let mut kernel_lines: Vec<ProjLine> = Vec::new();
    for w in word_ball(&spec.generators, radius) {
        if w.is_identity() {
            continue;
        }
        let mut power = w;
        for _ in 1..MYRBERG_POWER_DEPTH {
            let m = power.canon();
            if m.determinant().norm() < 1e-9 {
                if let Ok(s) = PseudoProjMap::from_matrix(*m) {
                    if s.is_singular() {
                        match s.kernel() {
                            KernelDescriptor::Point(p) => {
                                push_point_dedup(&mut kernel_points, p);
                            }
                            KernelDescriptor::Line(l) => {
                                push_line_dedup(&mut kernel_lines, l);
                            }
                            KernelDescriptor::Empty => {}
                        }
                    }
                }
                if m.determinant().norm() < 1e-60 {
                    break; // deeper powers repeat the same kernel
                }
            }
            match ProjMap::from_matrix(m * w.canon()) {
                Ok(next) => power = next,
                Err(_) => break,
            }
        }
    }
    // ker(u S v) = ker(S v): push the raw kernels around by right factors
    // (the effective lines come out pre-transformed already), then absorb
    // points into lines.
    for l in &kernel_lines {
        for v in &small {
            if let Ok(t) = ProjLine::from_vec(v.lift().transpose() * l.rep()) {
                line_set.insert(t);
            }
        }
    }
    let mut points = Vec::new();
    for k in &kernel_points {
        for v in &small {
            if let Ok(t) = ProjPoint::from_vec(v.inverse().lift() * k.rep()) {
                if !line_set.iter().any(|l| l.contains(&t, ABSORB_TOL)) {
                    push_point_dedup(&mut points, t);
                }
            }
        }
    }
    let mut lines = line_set.into_lines();
    sort_lines(&mut lines);
    MyrbergApprox { lines, points }
}
