use proptest::prelude::*;
use ribaucour::cauchy::{fill_frame_lattice, fill_lattice, seed_random_circular, seed_random_pair, CircularSeedParams, FillParams, PairSeedParams};
use ribaucour::clifford::{algebra_init, Multivector};
use ribaucour::net::{audit, reconstruct, recover_edge_spheres, PairNet};

fn pair(extents: &[usize], companion: Vec<f64>, ratio: f64, seed: u64) -> Option<PairNet<f64>> {
    let a = algebra_init(3).unwrap();
    let params = PairSeedParams { companion: Some(companion), ratio, ..Default::default() };
    let init = seed_random_pair::<f64>(&a, extents, &params, seed).ok()?;
    fill_frame_lattice(&init, &FillParams::default()).ok().map(|(net, _)| net)
}

fn companion() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![-40.0..-10.0f64, 10.0..40.0f64], 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn frame_generated_nets_satisfy_the_invariants(c in companion(), seed in any::<u64>()) {
        let net = pair(&[4, 4, 4], c, 0.0, seed);
        prop_assume!(net.is_some());
        let net = net.unwrap();
        let au = audit(&net, 1e-8).unwrap();
        prop_assert!(au.mc_face.unwrap() < 1e-10);
        prop_assert!(au.edge_symmetry.unwrap() < 1e-10);
        prop_assert!(au.face_concircularity < 1e-8);
        prop_assert!(au.edge_concircularity < 1e-8);
        prop_assert!(au.edge_cross_ratio_gap.unwrap() < 1e-8);
        prop_assert!(au.face_cross_ratio_gap.unwrap() < 1e-8);
        for k in 0..3 {
            prop_assert!(au.cell_sphere_f[k] < 1e-8 && au.cell_sphere_f_hat[k] < 1e-8 && au.cell_sphere_pair[k] < 1e-8);
        }
    }

    #[test]
    fn reconstruction_closes(c in companion(), seed in any::<u64>()) {
        let net = pair(&[3, 3, 3], c, 0.0, seed);
        prop_assume!(net.is_some());
        let net = net.unwrap();
        let back = reconstruct(&net, None).unwrap();
        for v in 0..net.lattice().len() {
            prop_assert!(net.f()[v].projective_distance(&back.f()[v]) < 1e-8);
            prop_assert!(net.f_hat()[v].projective_distance(&back.f_hat()[v]) < 1e-8);
        }
    }

    #[test]
    fn euclidean_mode_iff_planes(seed in any::<u64>(), c in companion()) {
        // F̂ at infinity: every edge sphere is a plane
        let a = algebra_init(3).unwrap();
        let init = seed_random_circular::<f64>(&a, &[3, 3, 3], &CircularSeedParams::default(), seed).unwrap();
        let (plain, _) = fill_lattice(&init, &FillParams::default()).unwrap();
        prop_assert!(plain.is_euclidean());
        let einf = Multivector::einf(&a);
        let spheres = recover_edge_spheres(&plain).unwrap();
        for (_, s) in spheres.iter() {
            prop_assert!(s.anticommutator(&einf).norm() < 1e-10 * s.norm());
        }
        // Planes alone do not make the pair Euclidean: bisector spheres with a
        // finite companion reflect it around without reaching infinity.
        let plane_residual = |net: &PairNet<f64>| net.lattice().edges().map(|(b, ax)| {
            let s = net.edge_sphere(b, ax).unwrap();
            s.anticommutator(&einf).norm() / s.norm()
        }).fold(0.0, f64::max);
        if let Some(net) = pair(&[3, 3, 3], c.clone(), 0.0, seed) {
            prop_assert!(!net.is_euclidean());
            prop_assert!(plane_residual(&net) < 1e-10);
        }
        // and spread pencil weights give some non-plane
        if let Some(net) = pair(&[3, 3, 3], c, 0.2, seed) {
            prop_assert!(!net.is_euclidean());
            prop_assert!(plane_residual(&net) > 1e-6);
        }
    }
}
