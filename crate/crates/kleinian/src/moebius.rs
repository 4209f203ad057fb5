//! Minimal PSL(2, C) support: trace classification, fixed points, word-ball
//! sampling of limit points on P^1, and a radius-bounded elementarity test
//! for control groups.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

use crate::{Error, Result, DEDUP_TOL, MAT_TOL};

type C = Complex64;
pub type CVec2 = Vector2<C>;
pub type Mat2 = Matrix2<C>;

/// A point of P^1_C in canonical homogeneous coordinates (largest-modulus
/// component exactly 1, ties to the lowest index).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct P1Point {
    rep: CVec2,
}

impl P1Point {
    pub fn from_vec(v: CVec2) -> Result<Self> {
        let i = if v[1].norm_sqr() > v[0].norm_sqr() { 1 } else { 0 };
        if v[i].norm() == 0.0 {
            return Err(Error::ZeroVector);
        }
        let mut rep = v / v[i];
        rep[i] = C::new(1.0, 0.0);
        Ok(Self { rep })
    }

    pub fn new(x: C, y: C) -> Result<Self> {
        Self::from_vec(CVec2::new(x, y))
    }

    pub fn rep(&self) -> &CVec2 {
        &self.rep
    }

    pub fn chordal_distance(&self, other: &P1Point) -> f64 {
        let a = &self.rep;
        let b = &other.rep;
        let wedge = (a[0] * b[1] - a[1] * b[0]).norm();
        wedge / (a.norm() * b.norm())
    }

    pub fn dedup_eq(&self, other: &P1Point) -> bool {
        self.chordal_distance(other) < DEDUP_TOL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MobiusClass {
    Identity,
    Elliptic,
    Parabolic,
    Loxodromic,
}

/// An element of PSL(2, C), stored as a determinant-1 lift. The sign
/// ambiguity of the lift is retained; every predicate works with tr^2.
#[derive(Debug, Clone, Copy)]
pub struct Mobius {
    lift: Mat2,
}

impl Mobius {
    pub fn from_matrix(m: Mat2) -> Result<Self> {
        let det = m.determinant();
        if det.norm() < 1e-12 {
            return Err(Error::SingularMatrix);
        }
        let s = det.sqrt();
        Ok(Self { lift: m / s })
    }

    pub fn identity() -> Self {
        Self {
            lift: Mat2::identity(),
        }
    }

    pub fn lift(&self) -> &Mat2 {
        &self.lift
    }

    pub fn tr_squared(&self) -> C {
        let t = self.lift.trace();
        t * t
    }

    pub fn apply(&self, p: &P1Point) -> P1Point {
        P1Point::from_vec(self.lift * p.rep()).expect("invertible")
    }

    pub fn compose(&self, other: &Mobius) -> Mobius {
        Mobius {
            lift: self.lift * other.lift,
        }
    }

    pub fn inverse(&self) -> Mobius {
        let m = self.lift;
        // Explicit adjugate keeps det exactly 1.
        let inv = Mat2::new(m[(1, 1)], -m[(0, 1)], -m[(1, 0)], m[(0, 0)]);
        Mobius { lift: inv }
    }

    /// Sign-free canonical representative for deduplication.
    fn canon(&self) -> Mat2 {
        let mut best = 0;
        let mut best_norm = -1.0;
        for i in 0..4 {
            let n = self.lift.as_slice()[i].norm_sqr();
            if n > best_norm {
                best = i;
                best_norm = n;
            }
        }
        let mut out = self.lift / self.lift.as_slice()[best];
        out.as_mut_slice()[best] = C::new(1.0, 0.0);
        out
    }

    pub fn dedup_eq(&self, other: &Mobius) -> bool {
        let a = self.canon();
        let b = other.canon();
        (0..4).all(|i| (a.as_slice()[i] - b.as_slice()[i]).norm() < MAT_TOL)
    }

    pub fn is_identity(&self) -> bool {
        self.dedup_eq(&Mobius::identity())
    }
}

/// Trace-squared classification on the determinant-1 lift.
pub fn classify_mobius(m: &Mobius) -> MobiusClass {
    if m.is_identity() {
        return MobiusClass::Identity;
    }
    let t2 = m.tr_squared();
    if (t2 - C::new(4.0, 0.0)).norm() < MAT_TOL {
        return MobiusClass::Parabolic;
    }
    if t2.im.abs() < MAT_TOL && t2.re >= 0.0 && t2.re < 4.0 {
        return MobiusClass::Elliptic;
    }
    MobiusClass::Loxodromic
}

/// Fixed points on P^1, as eigenvectors of the lift. One point for a
/// parabolic element, two otherwise.
pub fn fixed_points(m: &Mobius) -> Result<Vec<P1Point>> {
    if m.is_identity() {
        return Err(Error::IsIdentity);
    }
    let t = m.lift.trace();
    let disc = (t * t - C::new(4.0, 0.0)).sqrt();
    let lambdas = if disc.norm() < 1e-9 {
        vec![t / 2.0]
    } else {
        vec![(t + disc) / 2.0, (t - disc) / 2.0]
    };
    let a = m.lift[(0, 0)];
    let b = m.lift[(0, 1)];
    let cc = m.lift[(1, 0)];
    let d = m.lift[(1, 1)];
    let mut out: Vec<P1Point> = Vec::new();
    for lam in lambdas {
        // Eigenvector candidates from either row of (M - lambda I).
        let v1 = CVec2::new(b, lam - a);
        let v2 = CVec2::new(lam - d, cc);
        let v = if v1.norm() >= v2.norm() { v1 } else { v2 };
        let p = if v.norm() > 1e-12 {
            P1Point::from_vec(v)?
        } else {
            // Diagonal-like matrix: fixed points are the basis directions.
            if (a - lam).norm() < (d - lam).norm() {
                P1Point::new(C::new(1.0, 0.0), C::new(0.0, 0.0))?
            } else {
                P1Point::new(C::new(0.0, 0.0), C::new(1.0, 0.0))?
            }
        };
        if !out.iter().any(|q| q.dedup_eq(&p)) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Deduplicated word ball of the given radius (identity included).
pub fn word_ball(generators: &[Mobius], radius: usize) -> Vec<Mobius> {
    let mut gens: Vec<Mobius> = Vec::new();
    for g in generators {
        gens.push(*g);
        gens.push(g.inverse());
    }
    let mut seen = vec![Mobius::identity()];
    let mut frontier = vec![Mobius::identity()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let wg = w.compose(g);
                if !seen.iter().any(|s| s.dedup_eq(&wg)) {
                    seen.push(wg);
                    next.push(wg);
                }
            }
        }
        frontier = next;
    }
    seen
}

/// Attracting/repelling fixed points of every non-elliptic word in the
/// ball of the given radius, deduplicated.
pub fn limit_points(generators: &[Mobius], radius: usize) -> Vec<P1Point> {
    let ball = word_ball(generators, radius);
    let mut out: Vec<P1Point> = Vec::new();
    for w in &ball {
        match classify_mobius(w) {
            MobiusClass::Parabolic | MobiusClass::Loxodromic => {
                for p in fixed_points(w).expect("non-identity") {
                    if !out.iter().any(|q| q.dedup_eq(&p)) {
                        out.push(p);
                    }
                }
            }
            _ => {}
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MobiusElementary {
    /// Limit-point count stabilized at <= 2 up to the probed radius.
    Elementary { points: usize, radius: usize },
    NonElementary,
}

/// Radius-bounded elementarity heuristic: the verdict records the radius
/// used, since exact elementarity is not numerically decidable.
pub fn is_elementary(generators: &[Mobius], radius: usize) -> MobiusElementary {
    let r0 = radius.saturating_sub(1).max(1);
    let low = limit_points(generators, r0).len();
    let high = limit_points(generators, radius).len();
    if high > 2 {
        MobiusElementary::NonElementary
    } else {
        debug_assert!(high >= low);
        MobiusElementary::Elementary {
            points: high,
            radius,
        }
    }
}

/// The two-generator Schottky pair used throughout the examples:
/// diag(3, 1/3) and its conjugate by [[1, 1], [1, 2]].
pub fn schottky_pair() -> [Mobius; 2] {
    let r = |x: f64| C::new(x, 0.0);
    let a = Mobius::from_matrix(Mat2::new(r(3.0), r(0.0), r(0.0), r(1.0 / 3.0))).unwrap();
    let g = Mat2::new(r(1.0), r(1.0), r(1.0), r(2.0));
    let ginv = Mat2::new(r(2.0), r(-1.0), r(-1.0), r(1.0));
    let b = Mobius::from_matrix(g * a.lift * ginv).unwrap();
    [a, b]
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn r(x: f64) -> C {
        C::new(x, 0.0)
    }

    fn parabolic() -> Mobius {
        Mobius::from_matrix(Mat2::new(r(1.0), r(1.0), r(0.0), r(1.0))).unwrap()
    }

    fn loxodromic() -> Mobius {
        Mobius::from_matrix(Mat2::new(r(2.0), r(0.0), r(0.0), r(0.5))).unwrap()
    }

    fn random_mobius(rng: &mut StdRng) -> Mobius {
        loop {
            let m = Mat2::from_fn(|_, _| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            if m.determinant().norm() > 0.1 {
                return Mobius::from_matrix(m).unwrap();
            }
        }
    }

    #[test]
    fn classification_basic() {
        assert_eq!(classify_mobius(&parabolic()), MobiusClass::Parabolic);
        assert_eq!(classify_mobius(&loxodromic()), MobiusClass::Loxodromic);
        let theta = std::f64::consts::PI / 5.0;
        let rot = Mobius::from_matrix(Mat2::new(
            C::from_polar(1.0, theta),
            r(0.0),
            r(0.0),
            C::from_polar(1.0, -theta),
        ))
        .unwrap();
        assert_eq!(classify_mobius(&rot), MobiusClass::Elliptic);
        assert_eq!(classify_mobius(&Mobius::identity()), MobiusClass::Identity);
    }

    #[test]
    fn classification_conjugation_invariant() {
        let mut rng = StdRng::seed_from_u64(42);
        for m in [parabolic(), loxodromic()] {
            let class = classify_mobius(&m);
            for _ in 0..1000 {
                let g = random_mobius(&mut rng);
                let conj = g.compose(&m).compose(&g.inverse());
                assert_eq!(classify_mobius(&conj), class);
            }
        }
    }

    #[test]
    fn fixed_points_basic() {
        let fp = fixed_points(&parabolic()).unwrap();
        assert_eq!(fp.len(), 1);
        assert!(fp[0].dedup_eq(&P1Point::new(r(1.0), r(0.0)).unwrap()));

        let fp = fixed_points(&loxodromic()).unwrap();
        assert_eq!(fp.len(), 2);
        let zero = P1Point::new(r(1.0), r(0.0)).unwrap();
        let inf = P1Point::new(r(0.0), r(1.0)).unwrap();
        assert!(fp.iter().any(|p| p.dedup_eq(&zero)));
        assert!(fp.iter().any(|p| p.dedup_eq(&inf)));
    }

    #[test]
    fn fixed_points_conjugation_oracle() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..100 {
            let g = random_mobius(&mut rng);
            let conj = g.compose(&loxodromic()).compose(&g.inverse());
            let fp = fixed_points(&conj).unwrap();
            let expected = [
                g.apply(&P1Point::new(r(1.0), r(0.0)).unwrap()),
                g.apply(&P1Point::new(r(0.0), r(1.0)).unwrap()),
            ];
            for e in &expected {
                assert!(fp.iter().any(|p| p.chordal_distance(e) < 1e-7));
            }
            // Fixed points actually are fixed.
            for p in &fp {
                assert!(conj.apply(p).chordal_distance(p) < 1e-8);
            }
        }
    }

    #[test]
    fn limit_points_single_generators() {
        assert_eq!(limit_points(&[parabolic()], 4).len(), 1);
        assert_eq!(limit_points(&[loxodromic()], 4).len(), 2);
    }

    #[test]
    fn limit_points_schottky_growth() {
        let pair = schottky_pair();
        let n4 = limit_points(&pair, 4).len();
        let n5 = limit_points(&pair, 5).len();
        let n6 = limit_points(&pair, 6).len();
        assert!(n4 < n5 && n5 < n6, "{n4} {n5} {n6}");
        assert!(n6 > 40, "{n6}");
    }

    #[test]
    fn limit_points_nested_radii() {
        let pair = schottky_pair();
        let small = limit_points(&pair, 3);
        let large = limit_points(&pair, 4);
        for p in &small {
            assert!(large.iter().any(|q| q.dedup_eq(p)));
        }
    }

    #[test]
    fn elementary_verdicts() {
        assert_eq!(
            is_elementary(&[loxodromic()], 5),
            MobiusElementary::Elementary {
                points: 2,
                radius: 5
            }
        );
        assert_eq!(
            is_elementary(&[parabolic()], 5),
            MobiusElementary::Elementary {
                points: 1,
                radius: 5
            }
        );
        assert_eq!(
            is_elementary(&schottky_pair(), 4),
            MobiusElementary::NonElementary
        );
    }
}
