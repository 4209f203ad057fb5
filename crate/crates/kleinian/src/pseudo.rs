//! Limits of sequences of projective maps inside the compactification
//! SP(3, C): power limits of single elements, accumulation points of word
//! sequences, and the effective lines a generating set produces.

use nalgebra::Matrix3;

use crate::element::eigen3;
use crate::projective::{
    canonicalize_mat, chordal_mat, null_space_smallest, push_line_dedup, Mat3, ProjLine, ProjMap,
    PseudoProjMap,
};
use crate::DEDUP_TOL;

/// Relative eigenvalue-modulus gap below which the closed-form spectral
/// projector is not trusted and the numeric powering path is used instead.
const CLOSED_FORM_GAP: f64 = 1e-6;
/// Cauchy tolerance (chordal) on canonicalized powers.
const POWER_CAUCHY_TOL: f64 = 1e-8;
/// Repeated-squaring depth: powers up to 2^52. Polynomial (Jordan) growth
/// converges like 1/n in projective distance, so a depth of 14 as a first
/// guess is far too shallow; squaring makes deep powers free. Beyond ~2^52
/// the multiplicative rounding drift (doubling per squaring) overtakes the
/// 1/n decay of subdominant entries, so the depth stops there.
const POWER_MAX_DOUBLINGS: usize = 52;

/// Limit of canonical(m^n) as n -> infinity, as a pseudo-projective map.
///
/// Returns None when the normalized powers have two or more accumulation
/// points (elliptic elements, screws with irrational angle) and when the
/// limit stays inside PSL(3, C) itself (finite-order elements).
pub fn power_limit(m: &ProjMap) -> Option<PseudoProjMap> {
    if m.is_identity() || !powers_converge(m) {
        return None;
    }
    if let Some(p) = power_limit_closed_form(m) {
        return Some(p);
    }
    power_limit_numeric(m)
}

/// The normalized powers converge iff exactly one eigenvalue cluster
/// realizes the top growth rate n^(s-1) |v|^n, where s is the largest
/// Jordan block size of the cluster. Two clusters tied for the top rate
/// leave a residual rotation between their eigendirections and the powers
/// oscillate forever. Deciding this a priori matters numerically too:
/// squaring a tied-modulus ratio drifts off the unit circle at a
/// double-exponential rate and would fake convergence.
fn powers_converge(m: &ProjMap) -> bool {
    let eig = eigen3(m);
    let top_mod = eig
        .clusters
        .iter()
        .map(|cl| cl.value.norm())
        .fold(0.0f64, f64::max);
    let tied: Vec<&crate::element::EigenCluster> = eig
        .clusters
        .iter()
        .filter(|cl| cl.value.norm() > top_mod * (1.0 - 1e-9))
        .collect();
    if tied.len() == 1 {
        return true;
    }
    let growth = |cl: &crate::element::EigenCluster| cl.algebraic - cl.geometric + 1;
    let top_growth = tied.iter().map(|cl| growth(cl)).max().unwrap();
    tied.iter().filter(|cl| growth(cl) == top_growth).count() == 1
}

/// Spectral projector v w^T / (w^T v) when one simple eigenvalue strictly
/// dominates in modulus.
fn power_limit_closed_form(m: &ProjMap) -> Option<PseudoProjMap> {
    let eig = eigen3(m);
    let mut order: Vec<usize> = (0..eig.clusters.len()).collect();
    order.sort_by(|&a, &b| {
        eig.clusters[b]
            .value
            .norm()
            .partial_cmp(&eig.clusters[a].value.norm())
            .unwrap()
    });
    let top = &eig.clusters[order[0]];
    if top.algebraic != 1 {
        return None;
    }
    let runner_up = eig.clusters[order[1]].value.norm();
    if top.value.norm() - runner_up <= CLOSED_FORM_GAP * top.value.norm() {
        return None;
    }
    let v = top.vectors[0];
    let shifted = m.lift().transpose() - Matrix3::identity() * top.value;
    let w = null_space_smallest(&shifted, 1, 1e-6)[0];
    let pairing = (w.transpose() * v)[(0, 0)];
    if pairing.norm() < 1e-12 {
        return None;
    }
    let proj = v * w.transpose() / pairing;
    PseudoProjMap::from_matrix(proj).ok()
}

/// Repeated squaring with canonicalization after every step, Cauchy test
/// in the projective (chordal) metric, then two sanity checks: the limit
/// must commute with one more application of m, and must be singular
/// (otherwise the "limit" is an element of the group, not a boundary
/// point, and None is returned).
fn power_limit_numeric(m: &ProjMap) -> Option<PseudoProjMap> {
    let mut p = *m.canon();
    let mut last_diff = f64::INFINITY;
    for _ in 0..POWER_MAX_DOUBLINGS {
        let next = canonicalize_mat(&(p * p)).ok()?;
        last_diff = chordal_mat(&next, &p);
        p = next;
        // Never break at the Cauchy tolerance itself: squaring is cheap and
        // running the full depth shrinks the residual far below the rank
        // threshold, so the singularity test below is unambiguous.
        if last_diff < 1e-30 {
            break;
        }
    }
    if last_diff > POWER_CAUCHY_TOL {
        return None;
    }
    // Stationarity under one more factor of m rules out subsequence
    // artifacts (finite-order elements whose 2^k-th powers stabilize).
    let shifted = canonicalize_mat(&(m.lift() * p)).ok()?;
    if chordal_mat(&shifted, &p) > 1e-6 {
        return None;
    }
    let limit = PseudoProjMap::from_matrix(p).ok()?;
    if !limit.is_singular() {
        return None;
    }
    Some(limit)
}

/// Accumulation points of a finite sequence of maps: canonical matrices
/// are clustered at the dedup tolerance and clusters hit more than once
/// are reported. Singleton clusters are transient words, not accumulation
/// points.
pub fn sequence_limit(words: &[ProjMap]) -> Vec<PseudoProjMap> {
    let mut reps: Vec<(Mat3, usize)> = Vec::new();
    for w in words {
        match reps
            .iter_mut()
            .find(|(r, _)| chordal_mat(r, w.canon()) < DEDUP_TOL)
        {
            Some((_, count)) => *count += 1,
            None => reps.push((*w.canon(), 1)),
        }
    }
    reps.into_iter()
        .filter(|&(_, count)| count >= 2)
        .filter_map(|(r, _)| PseudoProjMap::from_matrix(r).ok())
        .collect()
}

/// Quantized canonical matrix, used as a hash key for word-ball dedup.
/// Canonical representatives of equal words in the explicit families are
/// computed from bitwise-identical integer matrices, so exact-bucket
/// hashing is reliable; for irrational parameters an occasional straddled
/// bucket only costs a duplicate, never a wrong dedup.
fn quantize_key(m: &Mat3) -> [i64; 18] {
    let mut key = [0i64; 18];
    for (i, e) in m.iter().enumerate() {
        key[2 * i] = (e.re * 1e7).round() as i64;
        key[2 * i + 1] = (e.im * 1e7).round() as i64;
    }
    key
}

struct MapSet {
    maps: Vec<ProjMap>,
    buckets: std::collections::HashMap<[i64; 18], Vec<usize>>,
}

impl MapSet {
    fn new() -> Self {
        Self {
            maps: Vec::new(),
            buckets: std::collections::HashMap::new(),
        }
    }

    fn insert(&mut self, m: ProjMap) -> bool {
        let key = quantize_key(m.canon());
        let bucket = self.buckets.entry(key).or_default();
        if bucket.iter().any(|&i| self.maps[i].dedup_eq(&m)) {
            return false;
        }
        bucket.push(self.maps.len());
        self.maps.push(m);
        true
    }
}

/// BFS layers of the word metric: layer 0 is the identity, layer d holds
/// the words first reached at distance d. Dedup on canonical matrices.
pub fn word_layers(generators: &[ProjMap], radius: usize) -> Vec<Vec<ProjMap>> {
    let mut gens: Vec<ProjMap> = Vec::new();
    for g in generators {
        if gens.iter().all(|x| !x.dedup_eq(g)) {
            gens.push(*g);
        }
        let inv = g.inverse();
        if gens.iter().all(|x| !x.dedup_eq(&inv)) {
            gens.push(inv);
        }
    }
    let mut seen = MapSet::new();
    seen.insert(ProjMap::identity());
    let mut layers = vec![vec![ProjMap::identity()]];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in layers.last().unwrap() {
            for g in &gens {
                let prod = w.compose(g);
                if seen.insert(prod) {
                    next.push(prod);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        layers.push(next);
    }
    layers
}

/// Word ball of the given radius (identity included).
pub fn word_ball(generators: &[ProjMap], radius: usize) -> Vec<ProjMap> {
    word_layers(generators, radius).concat()
}

/// Words at distance exactly `radius` (or the deepest nonempty layer of a
/// finite group whose diameter is smaller).
pub fn word_sphere(generators: &[ProjMap], radius: usize) -> Vec<ProjMap> {
    let layers = word_layers(generators, radius);
    layers.last().cloned().unwrap_or_default()
}

/// Effective lines of the group generated by the given elements, sampled
/// over the word ball of the given radius.
///
/// For every ball word w with a power limit S, the kernels of the maps
/// u S v over u, v in a smaller ball are kernels of accumulation points of
/// the sequences u w^n v. Only the right factor matters: u is invertible,
/// so ker(u S v) = ker(S v), and when ker S is the line with dual covector
/// l, the dual of ker(S v) is v^T l. Kernels are deduplicated before the
/// v-sampling, which keeps the double loop small.
pub fn effective_lines(generators: &[ProjMap], radius: usize) -> Vec<ProjLine> {
    let ball = word_ball(generators, radius);
    let small = word_ball(generators, radius.min(3));
    let mut kernels: Vec<ProjLine> = Vec::new();
    for w in &ball {
        if w.is_identity() {
            continue;
        }
        let Some(s) = power_limit(w) else { continue };
        if let crate::projective::KernelDescriptor::Line(l) = s.kernel() {
            push_line_dedup(&mut kernels, l);
        }
    }
    let mut lines = crate::projective::LineSet::new();
    for l in &kernels {
        for v in &small {
            let dual = v.lift().transpose() * l.rep();
            if let Ok(line) = ProjLine::from_vec(dual) {
                lines.insert(line);
            }
        }
    }
    let mut lines = lines.into_lines();
    sort_lines(&mut lines);
    lines
}

/// Deterministic canonical order, so results do not depend on traversal.
pub fn sort_lines(lines: &mut [ProjLine]) {
    lines.sort_by(|a, b| {
        for i in 0..3 {
            let (x, y) = (a.rep()[i], b.rep()[i]);
            match x
                .re
                .partial_cmp(&y.re)
                .unwrap()
                .then(x.im.partial_cmp(&y.im).unwrap())
            {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::{c, cr, line_through, KernelDescriptor, ProjPoint};
    use num_complex::Complex64 as C;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn diag(a: f64, b: f64, cc: f64) -> ProjMap {
        ProjMap::from_matrix(Matrix3::new(
            cr(a),
            cr(0.0),
            cr(0.0),
            cr(0.0),
            cr(b),
            cr(0.0),
            cr(0.0),
            cr(0.0),
            cr(cc),
        ))
        .unwrap()
    }

    fn unipotent3() -> ProjMap {
        ProjMap::from_matrix(Matrix3::new(
            cr(1.0),
            cr(1.0),
            cr(0.0),
            cr(0.0),
            cr(1.0),
            cr(1.0),
            cr(0.0),
            cr(0.0),
            cr(1.0),
        ))
        .unwrap()
    }

    /// Oracle: explicit high power, canonicalized.
    fn power_oracle(m: &ProjMap, n: usize) -> Mat3 {
        let mut p = ProjMap::identity();
        for _ in 0..n {
            p = p.compose(m);
        }
        *p.canon()
    }

    #[test]
    fn power_limit_strongly_loxodromic() {
        let m = diag(1.0 / 3.0, 1.0, 3.0);
        let s = power_limit(&m).unwrap();
        assert_eq!(s.kernel_rank(), 2);
        let oracle = power_oracle(&m, 40);
        assert!(chordal_mat(s.rep(), &oracle) < 1e-8);
        match s.kernel() {
            KernelDescriptor::Line(l) => {
                let e12 = line_through(&ProjPoint::standard(0), &ProjPoint::standard(1)).unwrap();
                assert!(l.dedup_eq(&e12));
            }
            _ => panic!("expected line kernel"),
        }
        // Image is the dominant eigendirection [0:0:1].
        let img = s.rep() * ProjPoint::standard(2).rep();
        let img = ProjPoint::from_vec(img).unwrap();
        assert!(img.dedup_eq(&ProjPoint::standard(2)));
    }

    #[test]
    fn power_limit_unipotent_block() {
        let m = unipotent3();
        let s = power_limit(&m).unwrap();
        // The (1,3) entry dominates like n^2/2: the limit is the E13
        // direction, kernel {z3 = 0}, image [1:0:0].
        assert_eq!(s.kernel_rank(), 2);
        match s.kernel() {
            KernelDescriptor::Line(l) => {
                let e12 = line_through(&ProjPoint::standard(0), &ProjPoint::standard(1)).unwrap();
                assert!(l.dedup_eq(&e12));
            }
            _ => panic!("expected line kernel"),
        }
        let img = s.rep() * ProjPoint::standard(2).rep();
        assert!(ProjPoint::from_vec(img).unwrap().dedup_eq(&ProjPoint::standard(0)));
        // Slow 1/n convergence: compare against a deep oracle loosely.
        let oracle = power_oracle(&m, 10_000);
        assert!(chordal_mat(s.rep(), &oracle) < 1e-3);
    }

    #[test]
    fn power_limit_degenerate_cases() {
        assert!(power_limit(&ProjMap::identity()).is_none());
        // Finite order: powers cycle, stay in the group.
        assert!(power_limit(&diag(1.0, -1.0, -1.0)).is_none());
        // Irrational elliptic rotation: two accumulation directions.
        let rot = ProjMap::from_matrix(Matrix3::from_diagonal(&nalgebra::Vector3::new(
            C::from_polar(1.0, 1.0),
            C::from_polar(1.0, -1.0),
            cr(1.0),
        )))
        .unwrap();
        assert!(power_limit(&rot).is_none());
        // Screw with irrational angle: moduli tie between two eigenvalues.
        let screw = ProjMap::from_matrix(Matrix3::from_diagonal(&nalgebra::Vector3::new(
            C::from_polar(2.0, 1.0),
            C::from_polar(2.0, -1.0),
            cr(0.25),
        )))
        .unwrap();
        assert!(power_limit(&screw).is_none());
    }

    #[test]
    fn power_limit_conjugation_equivariant() {
        let mut rng = StdRng::seed_from_u64(41);
        let m = diag(1.0 / 3.0, 1.0, 3.0);
        for _ in 0..30 {
            let g = loop {
                let raw =
                    Matrix3::from_fn(|_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
                if raw.determinant().norm() > 0.1 {
                    break ProjMap::from_matrix(raw).unwrap();
                }
            };
            let conj = g.compose(&m).compose(&g.inverse());
            let s = power_limit(&conj).unwrap();
            let expected = g.lift() * power_limit(&m).unwrap().rep() * g.inverse().lift();
            assert!(chordal_mat(s.rep(), &expected) < 1e-6);
        }
    }

    #[test]
    fn power_limit_kernel_is_invariant() {
        let cases = vec![
            diag(1.0 / 3.0, 1.0, 3.0),
            unipotent3(),
            diag(2.0, 2.0, 0.25),
        ];
        for m in &cases {
            let s = power_limit(m).unwrap();
            if let KernelDescriptor::Line(l) = s.kernel() {
                let img = m.apply_to_line(&l);
                assert!(img.dedup_eq(&l), "kernel line must be invariant");
            }
        }
    }

    #[test]
    fn sequence_limit_powers() {
        let m = diag(1.0 / 3.0, 1.0, 3.0);
        let words: Vec<ProjMap> = {
            let mut p = m;
            let mut out = Vec::new();
            for _ in 0..60 {
                out.push(p);
                p = p.compose(&m);
            }
            out
        };
        let acc = sequence_limit(&words);
        assert_eq!(acc.len(), 1);
        assert!(acc[0].is_singular());
        assert!(acc[0].dedup_eq(&power_limit(&m).unwrap()));
    }

    #[test]
    fn sequence_limit_finite_order() {
        let omega = C::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let m = ProjMap::from_matrix(Matrix3::from_diagonal(&nalgebra::Vector3::new(
            cr(1.0),
            omega,
            omega * omega,
        )))
        .unwrap();
        let mut words = Vec::new();
        let mut p = m;
        for _ in 0..30 {
            words.push(p);
            p = p.compose(&m);
        }
        let acc = sequence_limit(&words);
        assert!(acc.len() <= 3);
        assert!(acc.iter().all(|s| !s.is_singular()));
    }

    #[test]
    fn sequence_limit_translates() {
        let a = diag(1.0 / 3.0, 1.0, 3.0);
        let b = ProjMap::from_matrix(Matrix3::new(
            cr(1.0),
            cr(2.0),
            cr(0.0),
            cr(0.0),
            cr(1.0),
            cr(1.0),
            cr(0.5),
            cr(0.0),
            cr(1.0),
        ))
        .unwrap();
        let mut words = Vec::new();
        let mut p = ProjMap::identity();
        for _ in 0..60 {
            words.push(p.compose(&b));
            p = p.compose(&a);
        }
        let acc = sequence_limit(&words);
        assert!(!acc.is_empty());
        assert!(acc.iter().all(|s| s.is_singular()));
    }

    #[test]
    fn effective_lines_cyclic_groups() {
        let strong = diag(1.0 / 3.0, 1.0, 3.0);
        let lines = effective_lines(&[strong], 3);
        assert_eq!(lines.len(), 2, "forward and backward power limits");

        let lines = effective_lines(&[unipotent3()], 3);
        assert_eq!(lines.len(), 1);

        // Torus generators: two commuting unipotent translations share the
        // single effective line {z3 = 0}.
        let t1 = ProjMap::from_matrix(Matrix3::new(
            cr(1.0),
            cr(0.0),
            cr(1.0),
            cr(0.0),
            cr(1.0),
            cr(0.0),
            cr(0.0),
            cr(0.0),
            cr(1.0),
        ))
        .unwrap();
        let t2 = ProjMap::from_matrix(Matrix3::new(
            cr(1.0),
            cr(0.0),
            cr(0.0),
            cr(0.0),
            cr(1.0),
            cr(1.0),
            cr(0.0),
            cr(0.0),
            cr(1.0),
        ))
        .unwrap();
        let lines = effective_lines(&[t1, t2], 3);
        assert_eq!(lines.len(), 1);
        let e12 = line_through(&ProjPoint::standard(0), &ProjPoint::standard(1)).unwrap();
        assert!(lines[0].dedup_eq(&e12));
    }

    #[test]
    fn effective_lines_monotone_in_radius() {
        let strong = diag(1.0 / 3.0, 1.0, 3.0);
        let b = ProjMap::from_matrix(Matrix3::new(
            cr(1.0),
            cr(1.0),
            cr(0.0),
            cr(0.0),
            cr(1.0),
            cr(0.0),
            cr(0.0),
            cr(0.0),
            cr(1.0),
        ))
        .unwrap();
        let small = effective_lines(&[strong, b], 2);
        let large = effective_lines(&[strong, b], 3);
        for l in &small {
            assert!(large.iter().any(|m| m.dedup_eq(l)));
        }
    }

    #[test]
    fn effective_lines_conjugation_equivariant() {
        let mut rng = StdRng::seed_from_u64(47);
        let strong = diag(1.0 / 3.0, 1.0, 3.0);
        for _ in 0..5 {
            let g = loop {
                let raw =
                    Matrix3::from_fn(|_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
                if raw.determinant().norm() > 0.1 {
                    break ProjMap::from_matrix(raw).unwrap();
                }
            };
            let conj = g.compose(&strong).compose(&g.inverse());
            let moved = effective_lines(&[conj], 3);
            let base = effective_lines(&[strong], 3);
            assert_eq!(moved.len(), base.len());
            for l in &base {
                let img = g.apply_to_line(l);
                assert!(moved.iter().any(|m| m.dedup_eq(&img)));
            }
        }
    }

    #[test]
    fn word_ball_growth() {
        let a = diag(1.0 / 3.0, 1.0, 3.0);
        let ball1 = word_ball(&[a], 1);
        assert_eq!(ball1.len(), 3); // id, a, a^-1
        let ball3 = word_ball(&[a], 3);
        assert_eq!(ball3.len(), 7);
    }
}
