//! Randomized invariants: Legendre-duality round trips, norm axioms and
//! dual-pairing inequalities, mean inequalities of the (-2)-mean, and the
//! 1-Lipschitz property of boundary distance along random interior segments.

use hotspot_core::anisotropy::AnisoNorm;
use hotspot_core::geometry::{m_minus2, DomainSpec};
use hotspot_core::young::make_power_pair;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn young_roundtrips(p in 1.2f64..5.0, t in 0.01f64..20.0) {
        let pair = make_power_pair(p).unwrap();
        // Psi^{-1}(Psi(t)) = t.
        let v = pair.psi_inverse(pair.big_psi(t).unwrap()).unwrap();
        prop_assert!((v - t).abs() < 1e-8 * (1.0 + t));
        // psi(phi(s)) = s.
        let w = pair.psi(pair.phi(t));
        prop_assert!((w - t).abs() < 1e-8 * (1.0 + t));
    }

    #[test]
    fn youngs_inequality(p in 1.2f64..4.0, s in 0.0f64..5.0, t in 0.0f64..5.0) {
        let pair = make_power_pair(p).unwrap();
        let lhs = pair.big_phi(s) + pair.big_psi(t).unwrap();
        prop_assert!(lhs >= s * t - 1e-10 * (1.0 + s * t));
    }

    #[test]
    fn norm_axioms_and_dual_pairing(
        x0 in -3.0f64..3.0, x1 in -3.0f64..3.0,
        y0 in -3.0f64..3.0, y1 in -3.0f64..3.0,
        scale in -4.0f64..4.0,
        s in 1.3f64..4.0,
    ) {
        let norms = [
            AnisoNorm::Euclidean,
            AnisoNorm::elliptic([[4.0, 0.0], [0.0, 1.0]]).unwrap(),
            AnisoNorm::elliptic([[2.0, 0.7], [0.7, 1.5]]).unwrap(),
            AnisoNorm::ls(s).unwrap(),
        ];
        let xi = [x0, x1];
        let eta = [y0, y1];
        for n in &norms {
            let hx = n.eval(xi);
            let hy = n.eval(eta);
            // Homogeneity and the triangle inequality.
            prop_assert!((n.eval([scale * x0, scale * x1]) - scale.abs() * hx).abs() < 1e-10 * (1.0 + hx));
            prop_assert!(n.eval([x0 + y0, x1 + y1]) <= hx + hy + 1e-10);
            // Dual pairing <xi, eta> <= H(xi) H°(eta).
            let pairing: f64 = x0 * y0 + x1 * y1;
            prop_assert!(pairing.abs() <= hx * n.polar(eta) + 1e-10);
        }
    }

    #[test]
    fn m_minus2_mean_inequalities(
        a in 0.05f64..20.0, b in 0.05f64..20.0, c in 0.05f64..20.0,
    ) {
        for axes in [vec![a, b], vec![a, b, c]] {
            let m = m_minus2(&axes).unwrap();
            let min = axes.iter().cloned().fold(f64::INFINITY, f64::min);
            let n = axes.len() as f64;
            prop_assert!(m >= min - 1e-12);
            prop_assert!(m <= min * n.sqrt() + 1e-12);
        }
    }

    #[test]
    fn distance_is_lipschitz_on_segments(
        ax in -0.95f64..0.95, ay in -0.45f64..0.45,
        bx in -0.95f64..0.95, by in -0.45f64..0.45,
    ) {
        let dom = DomainSpec::Ellipse { center: [0.0, 0.0], semi_axes: [1.0, 0.5] };
        let a = [ax * 0.9, ay * 0.9];
        let b = [bx * 0.9, by * 0.9];
        prop_assume!(dom.inside(&a) && dom.inside(&b));
        let da = dom.distance_to_boundary(&a).unwrap();
        let db = dom.distance_to_boundary(&b).unwrap();
        let sep = ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt();
        prop_assert!((da - db).abs() <= sep + 1e-9);
    }

    #[test]
    fn double_polar_is_identity(
        x0 in -3.0f64..3.0, x1 in -3.0f64..3.0, s in 1.3f64..4.0,
    ) {
        prop_assume!(x0.abs() + x1.abs() > 1e-3);
        for n in [
            AnisoNorm::elliptic([[3.0, -0.4], [-0.4, 0.8]]).unwrap(),
            AnisoNorm::ls(s).unwrap(),
        ] {
            let once = n.polar_norm();
            let twice = once.polar_norm();
            let orig = n.eval([x0, x1]);
            prop_assert!((twice.eval([x0, x1]) - orig).abs() < 1e-6 * (1.0 + orig));
        }
    }
}
