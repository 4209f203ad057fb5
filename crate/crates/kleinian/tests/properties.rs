//! Property tests: invariance of the element taxonomy under conjugation
//! and change of lift, and stability of the JSON round trip.

use kleinian::io::{parse_spec_value, spec_to_json};
use kleinian::projective::{c, cr, singular_values, Mat3, ProjMap};
use kleinian::{classify, families};
use proptest::prelude::*;

fn well_conditioned(entries: [(f64, f64); 9]) -> Option<ProjMap> {
    let m = Mat3::from_fn(|i, j| {
        let (re, im) = entries[3 * i + j];
        c(re, im)
    });
    let sv = singular_values(&m);
    if sv[2] > 0.1 * sv[0] {
        ProjMap::from_matrix(m).ok()
    } else {
        None
    }
}

fn entry() -> impl Strategy<Value = (f64, f64)> {
    (-1.0f64..1.0, -1.0f64..1.0)
}

proptest! {
    #[test]
    fn classification_is_a_conjugation_invariant(
        entries in proptest::array::uniform9(entry()),
        a in 1.5f64..4.0,
        b in 1.05f64..1.4,
    ) {
        prop_assume!(a > 1.2 * b);
        let Some(g) = well_conditioned(entries) else { return Ok(()) };
        let base = ProjMap::from_matrix(Mat3::from_diagonal(
            &nalgebra::Vector3::new(cr(a), cr(b), cr(1.0)),
        )).unwrap();
        let conj = g.compose(&base).compose(&g.inverse());
        prop_assert_eq!(classify(&base).kind, classify(&conj).kind);
    }

    #[test]
    fn classification_ignores_the_scalar_lift(
        scale_re in -3.0f64..3.0,
        scale_im in -3.0f64..3.0,
        t in 0.5f64..2.0,
    ) {
        let s = c(scale_re, scale_im);
        prop_assume!(s.norm() > 0.1);
        let m = Mat3::new(
            cr(1.0), cr(t), cr(0.0),
            cr(0.0), cr(1.0), cr(0.0),
            cr(0.0), cr(0.0), cr(1.0),
        );
        let plain = ProjMap::from_matrix(m).unwrap();
        let scaled = ProjMap::from_matrix(m * s).unwrap();
        prop_assert_eq!(classify(&plain).kind, classify(&scaled).kind);
        prop_assert!(plain.dedup_eq(&scaled));
    }

    #[test]
    fn spec_json_round_trip_is_stable(
        alpha in 1.5f64..4.0,
        beta in 5.0f64..9.0,
    ) {
        let spec = families::diagonal_group(cr(alpha), cr(beta)).unwrap();
        let once = spec_to_json(&spec);
        let reparsed = parse_spec_value(&once).unwrap();
        let twice = spec_to_json(&reparsed);
        prop_assert_eq!(once, twice);
        for (a, b) in spec.generators.iter().zip(&reparsed.generators) {
            prop_assert!(a.dedup_eq(b));
        }
    }
}
