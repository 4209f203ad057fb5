//! Classification of single elements of PSL(3, C) into the elliptic /
//! parabolic / loxodromic taxonomy, together with the closed-form limit
//! set of the cyclic group each element generates.
//!
//! Eigenvalues come from Cardano's formula on the characteristic cubic of
//! the determinant-1 lift. Nearly-equal eigenvalues are clustered before
//! any modulus test: a Jordan block splits its multiple eigenvalue by
//! roughly eps^(1/m) under conjugation noise, so raw 1e-9 comparisons on
//! individual roots would misfire while cluster means stay accurate.

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::projective::{
    line_through, null_space_smallest, push_line_dedup, push_point_dedup, CVec3, Mat3, ProjLine,
    ProjMap, ProjPoint,
};
use crate::{Result, ORDER_CUTOFF};

type C = Complex64;

/// Absolute clustering tolerance for eigenvalues (scaled by max modulus).
/// Sits between Jordan-splitting noise (~1e-5) and the smallest eigenvalue
/// gap the taxonomy is probed at (1e-3).
const CLUSTER_TOL: f64 = 2e-4;
/// Modulus-equality tolerance on cluster representatives.
const MODULUS_TOL: f64 = 1e-9;
/// Relative singular-value threshold when counting geometric multiplicity.
const GEO_RANK_TOL: f64 = 1e-6;
/// Comparisons decided by a margin below this raise the boundary flag.
const BOUNDARY_MARGIN: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    EllipticFiniteOrder(usize),
    /// No power up to the order cutoff returned to the identity.
    EllipticInfiniteOrder,
    ParabolicUnipotentRank1,
    ParabolicUnipotentRank2,
    ElliptoParabolic,
    ComplexHomothety,
    Screw,
    Loxoparabolic,
    StronglyLoxodromic,
}

impl ElementKind {
    pub fn name(&self) -> &'static str {
        match self {
            ElementKind::EllipticFiniteOrder(_) => "EllipticFiniteOrder",
            ElementKind::EllipticInfiniteOrder => "EllipticInfiniteOrder",
            ElementKind::ParabolicUnipotentRank1 => "ParabolicUnipotentRank1",
            ElementKind::ParabolicUnipotentRank2 => "ParabolicUnipotentRank2",
            ElementKind::ElliptoParabolic => "ElliptoParabolic",
            ElementKind::ComplexHomothety => "ComplexHomothety",
            ElementKind::Screw => "Screw",
            ElementKind::Loxoparabolic => "Loxoparabolic",
            ElementKind::StronglyLoxodromic => "StronglyLoxodromic",
        }
    }

    pub fn is_loxodromic(&self) -> bool {
        matches!(
            self,
            ElementKind::ComplexHomothety
                | ElementKind::Screw
                | ElementKind::Loxoparabolic
                | ElementKind::StronglyLoxodromic
        )
    }

    pub fn is_parabolic(&self) -> bool {
        matches!(
            self,
            ElementKind::ParabolicUnipotentRank1
                | ElementKind::ParabolicUnipotentRank2
                | ElementKind::ElliptoParabolic
        )
    }
}

/// Full classification record for one element.
#[derive(Debug, Clone)]
pub struct ElementClass {
    pub kind: ElementKind,
    /// Eigenvalues of the determinant-1 lift (product 1).
    pub eigenvalues: [C; 3],
    pub fixed_points: Vec<ProjPoint>,
    pub invariant_lines: Vec<ProjLine>,
    /// Set when a modulus comparison was decided by a margin close to its
    /// tolerance; the taxonomy is discontinuous there.
    pub boundary: bool,
    limit_lines: Vec<ProjLine>,
    limit_point: Option<ProjPoint>,
    limit_everything: bool,
}

/// Closed-form limit set of the cyclic group generated by one element.
#[derive(Debug, Clone)]
pub struct ElementLimitSet {
    pub lines: Vec<ProjLine>,
    pub points: Vec<ProjPoint>,
    pub is_empty: bool,
    pub is_everything: bool,
}

/// One eigenvalue cluster with its eigenstructure.
#[derive(Debug, Clone)]
pub struct EigenCluster {
    pub value: C,
    pub algebraic: usize,
    pub geometric: usize,
    /// `geometric` spanning eigenvectors.
    pub vectors: Vec<CVec3>,
}

#[derive(Debug, Clone)]
pub struct Eigen3 {
    pub values: [C; 3],
    pub clusters: Vec<EigenCluster>,
}

/// Roots of the monic complex cubic x^3 + a x^2 + b x + c.
fn cubic_roots(a: C, b: C, cc: C) -> [C; 3] {
    let third = C::new(1.0 / 3.0, 0.0);
    let shift = a * third;
    let p = b - a * a * third;
    let q = a * (C::new(2.0, 0.0) * a * a - C::new(9.0, 0.0) * b) / C::new(27.0, 0.0) + cc;
    let half_q = q / C::new(2.0, 0.0);
    let disc = half_q * half_q + (p * third) * (p * third) * (p * third);
    let s = disc.sqrt();
    // Pick the branch that keeps |u^3| large for stability.
    let u3a = -half_q + s;
    let u3b = -half_q - s;
    let u3 = if u3a.norm() >= u3b.norm() { u3a } else { u3b };
    let mut roots = [C::new(0.0, 0.0); 3];
    if u3.norm() < 1e-300 {
        for r in roots.iter_mut() {
            *r = -shift;
        }
        return roots;
    }
    let u = u3.powf(1.0 / 3.0);
    let omega = C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    for (k, r) in roots.iter_mut().enumerate() {
        let uk = u * omega.powu(k as u32);
        let vk = -p * third / uk;
        *r = uk + vk - shift;
    }
    // One Newton step sharpens well-separated roots.
    for r in roots.iter_mut() {
        let x = *r;
        let f = ((x + a) * x + b) * x + cc;
        let df = (C::new(3.0, 0.0) * x + C::new(2.0, 0.0) * a) * x + b;
        if df.norm() > 1e-3 {
            *r = x - f / df;
        }
    }
    roots
}

/// Eigenvalues and eigenstructure of the det-1 lift.
pub fn eigen3(m: &ProjMap) -> Eigen3 {
    let lift = m.lift();
    let tr = lift.trace();
    let minors = lift[(0, 0)] * lift[(1, 1)] - lift[(0, 1)] * lift[(1, 0)]
        + lift[(0, 0)] * lift[(2, 2)]
        - lift[(0, 2)] * lift[(2, 0)]
        + lift[(1, 1)] * lift[(2, 2)]
        - lift[(1, 2)] * lift[(2, 1)];
    let det = lift.determinant();
    let values = cubic_roots(-tr, minors, -det);

    let scale = values.iter().map(|v| v.norm()).fold(1.0f64, f64::max);
    let tol = CLUSTER_TOL * scale;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in 0..3 {
        match groups
            .iter_mut()
            .find(|g| (values[g[0]] - values[i]).norm() < tol)
        {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }

    let clusters = groups
        .into_iter()
        .map(|members| {
            let mean = members.iter().map(|&i| values[i]).sum::<C>()
                / C::new(members.len() as f64, 0.0);
            let shifted = lift - Mat3::identity() * mean;
            let vectors = null_space_smallest(&shifted, members.len(), GEO_RANK_TOL);
            EigenCluster {
                value: mean,
                algebraic: members.len(),
                geometric: vectors.len(),
                vectors,
            }
        })
        .collect();

    Eigen3 { values, clusters }
}

fn point_from(v: &CVec3) -> ProjPoint {
    ProjPoint::from_vec(*v).expect("eigenvector is nonzero")
}

/// Invariant lines: covectors l with l^T M proportional to l^T, i.e.
/// eigenvectors of the plain transpose.
fn invariant_lines_of(lift: &Mat3, clusters: &[EigenCluster]) -> Vec<ProjLine> {
    let mt = lift.transpose();
    let mut out = Vec::new();
    for cl in clusters {
        let shifted = mt - Matrix3::identity() * cl.value;
        // rank(M - vI) = rank((M - vI)^T): the dual eigenspace has the same
        // dimension as the primal one.
        for v in null_space_smallest(&shifted, cl.geometric, GEO_RANK_TOL) {
            push_line_dedup(&mut out, ProjLine::from_vec(v).expect("nonzero covector"));
        }
    }
    out
}

type KindAndLimit = (ElementKind, Vec<ProjLine>, Option<ProjPoint>, bool);

/// Classify one element of PSL(3, C) and attach its fixed-point data and
/// closed-form cyclic limit set.
pub fn classify(m: &ProjMap) -> ElementClass {
    let eig = eigen3(m);
    let lift = m.lift();
    let mut boundary = false;

    let mut fixed_points: Vec<ProjPoint> = Vec::new();
    for cl in &eig.clusters {
        for v in &cl.vectors {
            push_point_dedup(&mut fixed_points, point_from(v));
        }
    }
    let invariant_lines = invariant_lines_of(lift, &eig.clusters);

    let all_unit = eig.clusters.iter().all(|cl| {
        let margin = (cl.value.norm() - 1.0).abs();
        if (MODULUS_TOL..BOUNDARY_MARGIN).contains(&margin) {
            boundary = true;
        }
        margin < MODULUS_TOL
    });

    let (kind, limit_lines, limit_point, limit_everything) = if all_unit {
        classify_unit_modulus(m, &eig, &invariant_lines)
    } else {
        classify_loxodromic(&eig, &invariant_lines, &mut boundary)
    };

    ElementClass {
        kind,
        eigenvalues: eig.values,
        fixed_points,
        invariant_lines,
        boundary,
        limit_lines,
        limit_point,
        limit_everything,
    }
}

fn classify_unit_modulus(
    m: &ProjMap,
    eig: &Eigen3,
    invariant_lines: &[ProjLine],
) -> KindAndLimit {
    match eig.clusters.len() {
        1 => {
            let cl = &eig.clusters[0];
            match cl.geometric {
                3 => elliptic_kind(m), // scalar lift: identity in PSL
                2 => {
                    // Single 2-block, unipotent up to a cube root of unity:
                    // the limit set is the line of fixed points.
                    let line =
                        line_through(&point_from(&cl.vectors[0]), &point_from(&cl.vectors[1]))
                            .expect("independent eigenvectors");
                    (ElementKind::ParabolicUnipotentRank1, vec![line], None, false)
                }
                _ => {
                    // Full Jordan block: the unique invariant line.
                    let line = invariant_lines
                        .first()
                        .copied()
                        .expect("a 3-block has one invariant line");
                    (ElementKind::ParabolicUnipotentRank2, vec![line], None, false)
                }
            }
        }
        2 => {
            let pair = cluster_of_size(eig, 2);
            let single = cluster_of_size(eig, 1);
            if pair.geometric == 1 {
                // Ellipto-parabolic: the line through the two fixed points.
                let line = line_through(
                    &point_from(&pair.vectors[0]),
                    &point_from(&single.vectors[0]),
                )
                .expect("distinct fixed points");
                (ElementKind::ElliptoParabolic, vec![line], None, false)
            } else {
                elliptic_kind(m)
            }
        }
        _ => elliptic_kind(m),
    }
}

fn cluster_of_size(eig: &Eigen3, n: usize) -> &EigenCluster {
    eig.clusters
        .iter()
        .find(|cl| cl.algebraic == n)
        .expect("cluster sizes of a cubic partition 3")
}

fn elliptic_kind(m: &ProjMap) -> KindAndLimit {
    match order_of(m, ORDER_CUTOFF) {
        Some(k) => (ElementKind::EllipticFiniteOrder(k), Vec::new(), None, false),
        None => (ElementKind::EllipticInfiniteOrder, Vec::new(), None, true),
    }
}

fn classify_loxodromic(
    eig: &Eigen3,
    invariant_lines: &[ProjLine],
    boundary: &mut bool,
) -> KindAndLimit {
    if eig.clusters.len() == 2 {
        let pair = cluster_of_size(eig, 2);
        let single = cluster_of_size(eig, 1);
        if pair.geometric == 2 {
            // Complex homothety: eigenplane line plus the isolated fixed
            // point of the simple eigenvalue.
            let line = line_through(&point_from(&pair.vectors[0]), &point_from(&pair.vectors[1]))
                .expect("independent eigenvectors");
            let point = point_from(&single.vectors[0]);
            (ElementKind::ComplexHomothety, vec![line], Some(point), false)
        } else {
            // Loxoparabolic: both invariant lines (one per eigenvalue).
            (
                ElementKind::Loxoparabolic,
                invariant_lines.to_vec(),
                None,
                false,
            )
        }
    } else {
        // Three simple eigenvalues, sorted by modulus.
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&a, &b| {
            eig.clusters[a]
                .value
                .norm()
                .partial_cmp(&eig.clusters[b].value.norm())
                .unwrap()
        });
        let mods: Vec<f64> = idx.iter().map(|&i| eig.clusters[i].value.norm()).collect();
        let gap_low = mods[1] - mods[0];
        let gap_high = mods[2] - mods[1];
        let min_gap = gap_low.min(gap_high);
        if (MODULUS_TOL..BOUNDARY_MARGIN).contains(&min_gap) {
            *boundary = true;
        }
        if min_gap < MODULUS_TOL {
            // Screw: the equal-modulus pair spans the rotation line, the
            // remaining fixed point is isolated.
            let (pa, pb, other) = if gap_low <= gap_high {
                (idx[0], idx[1], idx[2])
            } else {
                (idx[1], idx[2], idx[0])
            };
            let line = line_through(
                &point_from(&eig.clusters[pa].vectors[0]),
                &point_from(&eig.clusters[pb].vectors[0]),
            )
            .expect("distinct eigenvectors");
            let point = point_from(&eig.clusters[other].vectors[0]);
            (ElementKind::Screw, vec![line], Some(point), false)
        } else {
            // Strongly loxodromic: lines join attracting-saddle and
            // saddle-repelling fixed points.
            let repel = point_from(&eig.clusters[idx[0]].vectors[0]);
            let saddle = point_from(&eig.clusters[idx[1]].vectors[0]);
            let attract = point_from(&eig.clusters[idx[2]].vectors[0]);
            let l1 = line_through(&attract, &saddle).expect("distinct fixed points");
            let l2 = line_through(&saddle, &repel).expect("distinct fixed points");
            (ElementKind::StronglyLoxodromic, vec![l1, l2], None, false)
        }
    }
}

/// Closed-form limit set of the cyclic group generated by the element.
pub fn element_limit_set(c: &ElementClass) -> Result<ElementLimitSet> {
    if c.limit_everything {
        return Ok(ElementLimitSet {
            lines: Vec::new(),
            points: Vec::new(),
            is_empty: false,
            is_everything: true,
        });
    }
    let is_empty = c.limit_lines.is_empty() && c.limit_point.is_none();
    Ok(ElementLimitSet {
        lines: c.limit_lines.clone(),
        points: c.limit_point.iter().copied().collect(),
        is_empty,
        is_everything: false,
    })
}

/// Least k <= cutoff with m^k the identity in PSL(3, C), if any.
pub fn order_of(m: &ProjMap, cutoff: usize) -> Option<usize> {
    let mut p = *m;
    for k in 1..=cutoff {
        if p.is_identity() {
            return Some(k);
        }
        p = p.compose(m);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::{c, cr};
    use nalgebra::Matrix3;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn map(rows: [[C; 3]; 3]) -> ProjMap {
        let m = Matrix3::new(
            rows[0][0], rows[0][1], rows[0][2], rows[1][0], rows[1][1], rows[1][2], rows[2][0],
            rows[2][1], rows[2][2],
        );
        ProjMap::from_matrix(m).unwrap()
    }

    fn diag(a: C, b: C, cc: C) -> ProjMap {
        map([
            [a, cr(0.0), cr(0.0)],
            [cr(0.0), b, cr(0.0)],
            [cr(0.0), cr(0.0), cc],
        ])
    }

    fn random_conjugator(rng: &mut StdRng) -> ProjMap {
        loop {
            let m = Matrix3::from_fn(|_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            if m.determinant().norm() > 0.1 {
                return ProjMap::from_matrix(m).unwrap();
            }
        }
    }

    #[test]
    fn eigen3_examples() {
        let m = diag(cr(1.0 / 3.0), cr(1.0), cr(3.0));
        let eig = eigen3(&m);
        let mut mods: Vec<f64> = eig.values.iter().map(|v| v.norm()).collect();
        mods.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((mods[0] - 1.0 / 3.0).abs() < 1e-10);
        assert!((mods[1] - 1.0).abs() < 1e-10);
        assert!((mods[2] - 3.0).abs() < 1e-10);
        let prod: C = eig.values.iter().product();
        assert!((prod - cr(1.0)).norm() < 1e-8);

        let id = ProjMap::identity();
        let eig = eigen3(&id);
        assert_eq!(eig.clusters.len(), 1);
        assert_eq!(eig.clusters[0].geometric, 3);
    }

    #[test]
    fn eigen3_conjugated_jordan_block() {
        let mut rng = StdRng::seed_from_u64(17);
        let j = map([
            [cr(1.0), cr(1.0), cr(0.0)],
            [cr(0.0), cr(1.0), cr(1.0)],
            [cr(0.0), cr(0.0), cr(1.0)],
        ]);
        for _ in 0..20 {
            let g = random_conjugator(&mut rng);
            let conj = g.compose(&j).compose(&g.inverse());
            let eig = eigen3(&conj);
            assert_eq!(eig.clusters.len(), 1);
            assert_eq!(eig.clusters[0].algebraic, 3);
            assert_eq!(eig.clusters[0].geometric, 1, "3-block has rank(M-I)=2");
        }
    }

    #[test]
    fn classify_canonical_forms() {
        let rank2 = map([
            [cr(1.0), cr(1.0), cr(0.0)],
            [cr(0.0), cr(1.0), cr(1.0)],
            [cr(0.0), cr(0.0), cr(1.0)],
        ]);
        assert_eq!(classify(&rank2).kind, ElementKind::ParabolicUnipotentRank2);

        let rank1 = map([
            [cr(1.0), cr(1.0), cr(0.0)],
            [cr(0.0), cr(1.0), cr(0.0)],
            [cr(0.0), cr(0.0), cr(1.0)],
        ]);
        assert_eq!(classify(&rank1).kind, ElementKind::ParabolicUnipotentRank1);

        let hom = diag(cr(2.0), cr(2.0), cr(0.25));
        assert_eq!(classify(&hom).kind, ElementKind::ComplexHomothety);

        let strong = diag(cr(1.0 / 3.0), cr(1.0), cr(3.0));
        assert_eq!(classify(&strong).kind, ElementKind::StronglyLoxodromic);

        let loxopar = map([
            [cr(2.0), cr(1.0), cr(0.0)],
            [cr(0.0), cr(2.0), cr(0.0)],
            [cr(0.0), cr(0.0), cr(0.25)],
        ]);
        assert_eq!(classify(&loxopar).kind, ElementKind::Loxoparabolic);

        // Screw: equal moduli 2, distinct values, third modulus 1/4.
        let screw = diag(
            C::from_polar(2.0, std::f64::consts::FRAC_PI_4),
            C::from_polar(2.0, -std::f64::consts::FRAC_PI_4),
            cr(0.25),
        );
        assert_eq!(classify(&screw).kind, ElementKind::Screw);

        let t = 2.0 * std::f64::consts::PI / 5.0;
        let ep = map([
            [C::from_polar(1.0, t), cr(1.0), cr(0.0)],
            [cr(0.0), C::from_polar(1.0, t), cr(0.0)],
            [cr(0.0), cr(0.0), C::from_polar(1.0, -2.0 * t)],
        ]);
        assert_eq!(classify(&ep).kind, ElementKind::ElliptoParabolic);

        assert_eq!(
            classify(&ProjMap::identity()).kind,
            ElementKind::EllipticFiniteOrder(1)
        );
    }

    #[test]
    fn classify_conjugation_invariant() {
        let mut rng = StdRng::seed_from_u64(23);
        let forms: Vec<(ProjMap, ElementKind)> = vec![
            (
                map([
                    [cr(1.0), cr(1.0), cr(0.0)],
                    [cr(0.0), cr(1.0), cr(1.0)],
                    [cr(0.0), cr(0.0), cr(1.0)],
                ]),
                ElementKind::ParabolicUnipotentRank2,
            ),
            (
                map([
                    [cr(1.0), cr(1.0), cr(0.0)],
                    [cr(0.0), cr(1.0), cr(0.0)],
                    [cr(0.0), cr(0.0), cr(1.0)],
                ]),
                ElementKind::ParabolicUnipotentRank1,
            ),
            (diag(cr(2.0), cr(2.0), cr(0.25)), ElementKind::ComplexHomothety),
            (
                diag(cr(1.0 / 3.0), cr(1.0), cr(3.0)),
                ElementKind::StronglyLoxodromic,
            ),
        ];
        for (m, kind) in &forms {
            for _ in 0..100 {
                let g = random_conjugator(&mut rng);
                let conj = g.compose(m).compose(&g.inverse());
                assert_eq!(classify(&conj).kind, *kind);
            }
        }
    }

    #[test]
    fn classify_invariant_under_cube_roots_of_unity() {
        let omega = C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let m = diag(cr(1.0 / 3.0), cr(1.0), cr(3.0));
        let scaled = ProjMap::from_matrix(m.lift() * omega).unwrap();
        assert_eq!(classify(&scaled).kind, ElementKind::StronglyLoxodromic);
    }

    #[test]
    fn limit_set_closed_forms() {
        let id = classify(&ProjMap::identity());
        let ls = element_limit_set(&id).unwrap();
        assert!(ls.is_empty);

        let hom = classify(&diag(cr(2.0), cr(2.0), cr(0.25)));
        let ls = element_limit_set(&hom).unwrap();
        assert_eq!(ls.lines.len(), 1);
        assert_eq!(ls.points.len(), 1);
        let e12 = line_through(&ProjPoint::standard(0), &ProjPoint::standard(1)).unwrap();
        assert!(ls.lines[0].dedup_eq(&e12));
        assert!(ls.points[0].dedup_eq(&ProjPoint::standard(2)));

        let strong = classify(&diag(cr(1.0 / 3.0), cr(1.0), cr(3.0)));
        let ls = element_limit_set(&strong).unwrap();
        assert_eq!(ls.lines.len(), 2);
        let l12 = line_through(&ProjPoint::standard(0), &ProjPoint::standard(1)).unwrap();
        let l23 = line_through(&ProjPoint::standard(1), &ProjPoint::standard(2)).unwrap();
        assert!(ls.lines.iter().any(|l| l.dedup_eq(&l12)));
        assert!(ls.lines.iter().any(|l| l.dedup_eq(&l23)));
    }

    #[test]
    fn limit_set_is_invariant_under_the_element() {
        let mut rng = StdRng::seed_from_u64(31);
        let forms = vec![
            diag(cr(2.0), cr(2.0), cr(0.25)),
            diag(cr(1.0 / 3.0), cr(1.0), cr(3.0)),
            map([
                [cr(2.0), cr(1.0), cr(0.0)],
                [cr(0.0), cr(2.0), cr(0.0)],
                [cr(0.0), cr(0.0), cr(0.25)],
            ]),
            map([
                [cr(1.0), cr(1.0), cr(0.0)],
                [cr(0.0), cr(1.0), cr(1.0)],
                [cr(0.0), cr(0.0), cr(1.0)],
            ]),
        ];
        for m in &forms {
            let g = random_conjugator(&mut rng);
            let conj = g.compose(m).compose(&g.inverse());
            let cls = classify(&conj);
            let ls = element_limit_set(&cls).unwrap();
            for l in &ls.lines {
                let img = conj.apply_to_line(l);
                assert!(img.chordal_distance(l) < 1e-8, "line not invariant");
            }
            for p in &ls.points {
                let img = conj.apply(p);
                assert!(img.chordal_distance(p) < 1e-8, "point not invariant");
            }
        }
    }

    #[test]
    fn order_of_examples() {
        assert_eq!(order_of(&ProjMap::identity(), 10), Some(1));
        let omega = C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let m = diag(cr(1.0), omega, omega * omega);
        // Powering oracle: in PSL the order divides out the scalar part.
        assert_eq!(order_of(&m, 10), Some(3));
        let irr = diag(C::from_polar(1.0, 1.0), C::from_polar(1.0, -1.0), cr(1.0));
        assert_eq!(order_of(&irr, 200), None);
    }

    #[test]
    fn elliptic_orders() {
        let m = diag(cr(1.0), cr(-1.0), cr(-1.0));
        assert_eq!(classify(&m).kind, ElementKind::EllipticFiniteOrder(2));
        let irr = diag(C::from_polar(1.0, 1.0), C::from_polar(1.0, -1.0), cr(1.0));
        let cls = classify(&irr);
        assert_eq!(cls.kind, ElementKind::EllipticInfiniteOrder);
        assert!(element_limit_set(&cls).unwrap().is_everything);
    }
}
