//! Property tests over randomized band-limited fields.

use proptest::prelude::*;

use nslog::field::{
    dealias, divergence, forward, fractional_laplacian, grid_lq_norm, inverse, leray_project,
    shell_project, Grid, PhysField, ShellPartition, SpecField,
};

/// Random band-limited real field on a 16^3 grid, built from a handful of
/// low modes so every grid resolves it exactly.
fn band_limited_field(ncomp: usize) -> impl Strategy<Value = PhysField> {
    let amp = proptest::collection::vec(-1.0f64..1.0, 6 * ncomp);
    amp.prop_map(move |a| {
        let g = Grid::cube(16).unwrap();
        PhysField::from_fn(g, ncomp, |c, x, y, z| {
            let b = &a[c * 6..(c + 1) * 6];
            b[0] * x.sin()
                + b[1] * (y + 0.3).cos()
                + b[2] * (2.0 * z).sin()
                + b[3] * (x + y).cos()
                + b[4] * (y - z).sin()
                + b[5] * (2.0 * x - z).cos()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn round_trip_identity(f in band_limited_field(3)) {
        let back = inverse(&forward(&f).unwrap()).unwrap();
        let worst = f.data().iter().zip(back.data())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        let scale = f.max_abs().max(1.0);
        prop_assert!(worst <= 1e-12 * scale);
    }

    #[test]
    fn hermitian_symmetry_of_real_fields(f in band_limited_field(2)) {
        let spec = forward(&f).unwrap();
        prop_assert!(spec.hermitian_error() <= 1e-12);
    }

    #[test]
    fn parseval(f in band_limited_field(3)) {
        let phys = grid_lq_norm(&f, 2.0).unwrap();
        let spec = forward(&f).unwrap().l2_sq().sqrt();
        prop_assert!((phys - spec).abs() <= 1e-12 * spec.max(1e-12));
    }

    #[test]
    fn projector_properties(f in band_limited_field(3)) {
        let spec = forward(&f).unwrap();
        let once = leray_project(&spec).unwrap();
        let twice = leray_project(&once).unwrap();
        let scale = spec.data().iter().fold(0.0f64, |m, v| m.max(v.norm())).max(1e-12);
        let dev = once.data().iter().zip(twice.data())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).norm()));
        prop_assert!(dev <= 1e-12 * scale);
        let div = divergence(&once).unwrap();
        let worst = div.data().iter().fold(0.0f64, |m, v| m.max(v.norm()));
        prop_assert!(worst <= 1e-12 * scale);
    }

    #[test]
    fn multiplier_semigroup(f in band_limited_field(1), s1 in 0.1f64..0.7, s2 in 0.1f64..0.7) {
        let spec = forward(&f).unwrap();
        let a = fractional_laplacian(&fractional_laplacian(&spec, s1).unwrap(), s2).unwrap();
        let b = fractional_laplacian(&spec, s1 + s2).unwrap();
        let scale = b.data().iter().fold(0.0f64, |m, v| m.max(v.norm())).max(1e-12);
        let dev = a.data().iter().zip(b.data())
            .fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
        prop_assert!(dev <= 1e-11 * scale);
    }

    #[test]
    fn shell_partition_reconstructs(f in band_limited_field(2)) {
        let spec = forward(&f).unwrap();
        let g = *spec.grid();
        let part = ShellPartition::new();
        let shells = part.shells_for(g.dealias_kmax().max(16.0)) + 2;
        let mut acc = SpecField::zeros(g, 2);
        for j in 0..shells {
            let p = shell_project(&spec, j, &part).unwrap();
            for (a, b) in acc.data_mut().iter_mut().zip(p.data()) {
                *a += b;
            }
        }
        let scale = spec.data().iter().fold(0.0f64, |m, v| m.max(v.norm())).max(1e-12);
        let n = g.total_points();
        for c in 0..2 {
            for idx in 0..n {
                let want = if idx == 0 {
                    nslog::field::C64::new(0.0, 0.0)
                } else {
                    spec.comp(c)[idx]
                };
                prop_assert!((acc.comp(c)[idx] - want).norm() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn dealias_is_idempotent(f in band_limited_field(2)) {
        let mut a = forward(&f).unwrap();
        dealias(&mut a);
        let mut b = a.clone();
        dealias(&mut b);
        prop_assert_eq!(a.data(), b.data());
    }
}
