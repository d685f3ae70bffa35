use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::clifford::{algebra_init, Algebra, Versor};
use crate::error::CompletionError;
use crate::moebius::{lift, wedge_points, ConformalPoint};
use crate::net::{audit, nets_from_frames, Lattice, PairNet};
use crate::sample::random_even_versor;

type Pt = ConformalPoint<f64>;

fn alg(n: usize) -> Arc<Algebra> {
    algebra_init(n).unwrap()
}

fn pt(a: &Arc<Algebra>, x: &[f64]) -> Pt {
    lift(a, x).unwrap()
}

fn moved(v: &Versor<f64>, p: &Pt) -> Pt {
    ConformalPoint::new(v.apply(p.vector())).unwrap()
}

fn unit_cube(a: &Arc<Algebra>) -> Vec<Pt> {
    let lattice = hypercube_lattice(3).unwrap();
    (0..8)
        .map(|v| {
            let mut x: Vec<f64> = lattice.multi_index(v).iter().map(|&c| c as f64).collect();
            x.resize(a.n(), 0.0);
            pt(a, &x)
        })
        .collect()
}

/// Vertices of a 3-cell in lattice order: 000, 001, 010, 011, 100, 101, 110, 111.
fn seven(c: &[Pt]) -> SevenPoints<'_, f64> {
    SevenPoints { p: &c[0], p1: &c[4], p2: &c[2], p3: &c[1], p12: &c[6], p13: &c[5], p23: &c[3] }
}

fn far_pair() -> PairSeedParams {
    PairSeedParams { ratio: 0.0, companion: Some(vec![20.0, 13.0, -30.0]), ..Default::default() }
}

fn frame_net(extents: &[usize], seed: u64) -> PairNet<f64> {
    let init = seed_random_pair::<f64>(&alg(3), extents, &far_pair(), seed).unwrap();
    fill_frame_lattice(&init, &FillParams::default()).unwrap().0
}

fn max_distance(a: &[Pt], b: &[Pt]) -> f64 {
    a.iter().zip(b).map(|(p, q)| p.projective_distance(q)).fold(0.0, f64::max)
}

#[test]
fn unit_cube_eighth_vertex() {
    let a = alg(3);
    let cube = unit_cube(&a);
    let (q, res) = complete_cell_3d(seven(&cube)).unwrap();
    assert!(q.projective_distance(&cube[7]) < 1e-10);
    assert!(res.circle < 1e-12 && res.sphere < 1e-12);
}

#[test]
fn moebius_images_of_the_cube() {
    let a = alg(3);
    let cube = unit_cube(&a);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let v = random_even_versor(&a, 2, &mut rng);
        let image: Vec<Pt> = cube.iter().map(|p| moved(&v, p)).collect();
        let (q, _) = complete_cell_3d(seven(&image)).unwrap();
        assert!(q.projective_distance(&image[7]) < 1e-8);
    }
}

#[test]
fn thin_box_eighth_vertex() {
    // p12 and the missing vertex are 1e-4 apart
    let a = alg(3);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let v = random_even_versor(&a, 2, &mut rng);
    let lattice = hypercube_lattice(3).unwrap();
    let boxed: Vec<Pt> = (0..8)
        .map(|k| {
            let t = lattice.multi_index(k);
            moved(&v, &pt(&a, &[t[0] as f64, 1.3 * t[1] as f64, 1e-4 * t[2] as f64]))
        })
        .collect();
    let (q, _) = complete_cell_3d(seven(&boxed)).unwrap();
    assert!(q.projective_distance(&boxed[7]) < 1e-8);
}

#[test]
fn frame_generated_cell_with_deleted_vertex() {
    for seed in 0..10 {
        let net = frame_net(&[2, 2, 2], seed);
        for pts in [net.f(), net.f_hat()] {
            let (q, _) = complete_cell_3d(seven(pts)).unwrap();
            assert!(q.projective_distance(&pts[7]) < 1e-8, "seed {seed}");
        }
    }
}

#[test]
fn cube_in_higher_dimension() {
    let a = alg(5);
    let cube = unit_cube(&a);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let v = random_even_versor(&a, 3, &mut rng);
    let image: Vec<Pt> = cube.iter().map(|p| moved(&v, p)).collect();
    let (q, _) = complete_cell_3d(seven(&image)).unwrap();
    assert!(q.projective_distance(&image[7]) < 1e-8);
}

#[test]
fn non_concircular_face_is_rejected() {
    let a = alg(3);
    let mut cube = unit_cube(&a);
    cube[6] = pt(&a, &[1.0, 1.0, 0.2]);
    assert!(matches!(complete_cell_3d(seven(&cube)), Err(CompletionError::CellFace(0, _))));
}

#[test]
fn fill_of_a_plane_returns_the_data() {
    let a = alg(3);
    let init = seed_random_circular::<f64>(&a, &[4, 5], &CircularSeedParams::default(), 1).unwrap();
    let (net, report) = fill_lattice(&init, &FillParams::default()).unwrap();
    for v in 0..net.lattice().len() {
        assert_eq!(net.f()[v].vector(), init.f()[v].as_ref().unwrap().vector());
    }
    assert!(report.cells.is_empty() && report.discrepancies.is_empty());
}

#[test]
fn fill_of_a_perturbed_grid() {
    let a = alg(3);
    let init = seed_random_circular::<f64>(&a, &[8, 8, 8], &CircularSeedParams::default(), 2).unwrap();
    let (net, report) = fill_lattice(&init, &FillParams::default()).unwrap();
    assert!(net.is_euclidean());
    assert_eq!(report.cells.len(), 7 * 7 * 7);
    assert!(report.max_circle_residual < 1e-8 && report.max_sphere_residual < 1e-8);
    let au = audit(&net, 1e-8).unwrap();
    assert!(au.face_concircularity < 1e-8);
    assert!(au.cell_sphere_f[2] < 1e-8);
    assert_eq!(au.degenerate_cells, 0);
}

#[test]
fn fill_of_a_four_cube_is_consistent() {
    let a = alg(4);
    for seed in 0..5 {
        let init = seed_random_circular::<f64>(&a, &[2, 2, 2, 2], &CircularSeedParams::default(), seed).unwrap();
        let (_, report) = fill_lattice(&init, &FillParams::default()).unwrap();
        // 1111 is determined by four 3-cells
        assert_eq!(report.discrepancies.len(), 3);
        assert!(report.max_discrepancy < 1e-8, "{}", report.max_discrepancy);
        assert_eq!(report.soft_violations, 0);
    }
}

#[test]
fn fill_of_a_four_dimensional_lattice() {
    let a = alg(4);
    let init = seed_random_circular::<f64>(&a, &[3, 3, 3, 3], &CircularSeedParams::default(), 3).unwrap();
    let (net, report) = fill_lattice(&init, &FillParams::default()).unwrap();
    assert!(report.max_discrepancy < 1e-8);
    let au = audit(&net, 1e-8).unwrap();
    assert!(au.cell_sphere_f[2] < 1e-8 && au.cell_sphere_f[3] < 1e-8);
}

#[test]
fn non_concircular_initial_face_is_reported() {
    let a = alg(3);
    let lattice = Lattice::new(&[3, 3, 2]).unwrap();
    let bent = lattice.index(&[1, 1, 0]).unwrap();
    let init = InitialData::from_vertices(
        &a,
        &lattice,
        |v| {
            let t = lattice.multi_index(v);
            let z = if v == bent { 0.3 } else { t[2] as f64 };
            pt(&a, &[t[0] as f64, t[1] as f64, z])
        },
        None,
        None,
    )
    .unwrap();
    match fill_lattice(&init, &FillParams::default()) {
        Err(CompletionError::InitialFace { base, axes, .. }) => assert_eq!((base, axes), (vec![0, 0, 0], (0, 1))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn euclidean_pair_fill_reduces_to_fill_lattice() {
    let a = alg(3);
    let init = seed_random_circular::<f64>(&a, &[4, 4, 4], &CircularSeedParams::default(), 4).unwrap();
    let (plain, _) = fill_lattice(&init, &FillParams::default()).unwrap();
    let (pair, report) = fill_pair_lattice(&init, &FillParams::default()).unwrap();
    assert!(pair.is_euclidean() && pair.frames().is_some());
    assert!(max_distance(plain.f(), pair.f()) < 1e-8);
    assert!(report.frame_closure.unwrap() < 1e-8);
}

#[test]
fn pair_fill_round_trip() {
    let a = alg(3);
    for seed in 0..3 {
        let init = seed_random_pair::<f64>(&a, &[4, 4, 4], &far_pair(), seed).unwrap();
        let (pair, report) = fill_pair_lattice(&init, &FillParams::default()).unwrap();
        assert!(!pair.is_euclidean());
        assert!(report.frame_closure.unwrap() < 1e-8);
        let (frames, _) = fill_frame_lattice(&init, &FillParams::default()).unwrap();
        assert!(max_distance(pair.f(), frames.f()) < 1e-8);
        assert!(max_distance(pair.f_hat(), frames.f_hat()) < 1e-8);
    }
}

#[test]
fn inconsistent_companion_cites_an_edge() {
    let a = alg(3);
    let init = seed_random_pair::<f64>(&a, &[3, 3, 3], &far_pair(), 5).unwrap();
    // a Möbius image of F̂ is still circular but no longer pairs with F
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let v = random_even_versor(&a, 2, &mut rng);
    let hat = init.f_hat().unwrap();
    let lattice = init.lattice().clone();
    let bad = InitialData::from_vertices(
        &a,
        &lattice,
        |k| init.f()[k].clone().unwrap(),
        Some(&|k| moved(&v, hat[k].as_ref().unwrap())),
        None,
    )
    .unwrap();
    match fill_pair_lattice(&bad, &FillParams::default()) {
        Err(CompletionError::EdgeQuadruple { base, axis, .. }) => assert_eq!((base, axis), (vec![0, 0, 0], 0)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn frame_fill_matches_frame_relations() {
    let net = frame_net(&[5, 5, 5], 6);
    let au = audit(&net, 1e-8).unwrap();
    assert!(au.edge_symmetry.unwrap() < 1e-10);
    assert!(au.mc_face.unwrap() < 1e-10 && au.mc_spheres.unwrap() < 1e-10);
    assert!(au.cell_sphere_pair[2] < 1e-8);
}

#[test]
fn frame_fill_in_four_dimensions() {
    let a = alg(4);
    let init = seed_random_pair::<f64>(&a, &[3, 3, 3, 3], &PairSeedParams { ratio: 0.0, companion: Some(vec![20.0, 13.0, -30.0, 7.0]), ..Default::default() }, 7).unwrap();
    let (net, report) = fill_frame_lattice(&init, &FillParams::default()).unwrap();
    assert!(report.max_discrepancy < 1e-8 && report.max_edge_mismatch < 1e-8);
    let (points, _) = fill_pair_lattice(&init, &FillParams::default()).unwrap();
    assert!(max_distance(net.f(), points.f()) < 1e-8);
}

#[test]
fn hypercube_from_moebius_cube() {
    let a = alg(3);
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let v = random_even_versor(&a, 2, &mut rng);
    let image: Vec<Option<Pt>> = unit_cube(&a).iter().map(|p| Some(moved(&v, p))).collect();
    let out = hypercube_fill(3, 2, &image, None, &FillParams::default()).unwrap();
    assert!(out.points[7].projective_distance(image[7].as_ref().unwrap()) < 1e-8);
    assert!(out.face_concircularity < 1e-10);
}

#[test]
fn hypercube_four_with_faces_given() {
    let a = alg(4);
    let init = seed_random_circular::<f64>(&a, &[2, 2, 2, 2], &CircularSeedParams::default(), 8).unwrap();
    let out = hypercube_fill(4, 2, init.f(), None, &FillParams::default()).unwrap();
    assert!(out.report.max_discrepancy < 1e-8);
    assert!(out.face_concircularity < 1e-8);
}

#[test]
fn hypercube_from_edges_with_circle_parameter() {
    let a = alg(3);
    let lattice = hypercube_lattice(2).unwrap();
    let mut data: Vec<Option<Pt>> = vec![None; 4];
    data[0] = Some(pt(&a, &[0.0, 0.0, 0.0]));
    data[lattice.index(&[1, 0]).unwrap()] = Some(pt(&a, &[1.0, 0.1, 0.0]));
    data[lattice.index(&[0, 1]).unwrap()] = Some(pt(&a, &[0.2, 1.0, 0.3]));
    let out = hypercube_fill(2, 1, &data, Some(&[0.7]), &FillParams::default()).unwrap();
    assert!(out.face_concircularity < 1e-10);
    let (_, w) = wedge_points(&out.points);
    assert!(w < 1e-10);
    assert!(matches!(
        hypercube_fill(2, 1, &data, Some(&[0.7, 0.1]), &FillParams::default()),
        Err(CompletionError::Parameters { expected: 1, found: 2 })
    ));
    assert!(matches!(hypercube_fill(2, 1, &data, None, &FillParams::default()), Err(CompletionError::Parameters { .. })));
}

#[test]
fn hypercube_checks_given_cells() {
    let a = alg(3);
    let cube: Vec<Option<Pt>> = unit_cube(&a).into_iter().map(Some).collect();
    assert!(hypercube_fill(3, 3, &cube, None, &FillParams::default()).is_ok());
    let mut wrong = cube.clone();
    wrong[7] = Some(pt(&a, &[1.0, 1.0, 1.2]));
    assert!(matches!(
        hypercube_fill(3, 3, &wrong, None, &FillParams::default()),
        Err(CompletionError::SubnetConflict { .. })
    ));
    assert!(matches!(
        hypercube_fill(1, 1, &cube[..2], None, &FillParams::default()),
        Err(CompletionError::HypercubeShape { k: 1, i: 1 })
    ));
    assert!(matches!(
        hypercube_fill(3, 2, &cube[..5], None, &FillParams::default()),
        Err(CompletionError::SubnetSize { .. })
    ));
}

#[test]
fn grid_seed_is_the_integer_grid() {
    let a = alg(3);
    let frames = seed_grid(&a, &[3, 3, 3], &[1.0, 1.0, 1.0]).unwrap();
    let lattice = Lattice::new(&[3, 3, 3]).unwrap();
    let net = nets_from_frames(&lattice, frames).unwrap();
    for v in 0..lattice.len() {
        let x: Vec<f64> = lattice.multi_index(v).iter().map(|&c| c as f64).collect();
        assert!(net.f()[v].projective_distance(&pt(&a, &x)) < 1e-14);
    }
    assert!(seed_grid(&a, &[3, 3], &[1.0]).is_err());
}

#[test]
fn midpoint_seed_faces_are_concircular() {
    let a = alg(3);
    let params = CircularSeedParams { parameters: ParameterField::Midpoint, ..Default::default() };
    let init = seed_random_circular::<f64>(&a, &[6, 6, 6], &params, 9).unwrap();
    init.validate(1e-12).unwrap();
}

#[test]
fn seeds_are_deterministic() {
    let a = alg(3);
    let p = CircularSeedParams::default();
    let x = seed_random_circular::<f64>(&a, &[4, 4, 4], &p, 10).unwrap();
    let y = seed_random_circular::<f64>(&a, &[4, 4, 4], &p, 10).unwrap();
    let z = seed_random_circular::<f64>(&a, &[4, 4, 4], &p, 11).unwrap();
    assert_eq!(x.f(), y.f());
    assert_ne!(x.f(), z.f());
    let x = seed_random_pair::<f64>(&a, &[3, 3, 3], &PairSeedParams::default(), 10).unwrap();
    let y = seed_random_pair::<f64>(&a, &[3, 3, 3], &PairSeedParams::default(), 10).unwrap();
    assert_eq!(x.f_hat(), y.f_hat());
}

#[test]
fn pair_seed_validates_its_companion() {
    let a = alg(3);
    let params = PairSeedParams { companion: Some(vec![1.0, 2.0]), ..Default::default() };
    assert!(seed_random_pair::<f64>(&a, &[3, 3], &params, 0).is_err());
    let init = seed_random_pair::<f64>(&a, &[4, 4, 4], &PairSeedParams::default(), 0).unwrap();
    init.validate(1e-10).unwrap();
    assert!(!init.is_euclidean());
}

#[test]
fn subnets_must_agree_on_shared_axes() {
    let a = alg(3);
    let init = seed_random_circular::<f64>(&a, &[3, 3, 3], &CircularSeedParams::default(), 12).unwrap();
    let mut subnets = init.subnets();
    let again = InitialData::from_subnets(&a, &[3, 3, 3], &subnets, None).unwrap();
    assert_eq!(again.f(), init.f());
    // move the shared point (1,0,0) in the (0,2) plane only
    let k = subnets.iter().position(|s| s.axes == (0, 2)).unwrap();
    subnets[k].f[3] = pt(&a, &[5.0, 5.0, 5.0]);
    assert!(matches!(
        InitialData::from_subnets(&a, &[3, 3, 3], &subnets, None),
        Err(CompletionError::SubnetConflict { .. })
    ));
    subnets.truncate(1);
    assert!(matches!(
        InitialData::from_subnets(&a, &[3, 3, 3], &subnets, None),
        Err(CompletionError::MissingVertex(_))
    ));
}
