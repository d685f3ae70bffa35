use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::clifford::{algebra_init, Algebra, Multivector, Versor};
use crate::sample::{random_even_versor, random_point};

type Mv = Multivector<f64>;
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

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn complex_cross_ratio(z: [Complex64; 4]) -> Complex64 {
    (z[0] - z[1]) * (z[2] - z[3]) / ((z[1] - z[2]) * (z[3] - z[0]))
}

fn plane_point(a: &Arc<Algebra>, z: Complex64) -> Pt {
    let mut x = vec![0.0; a.n()];
    x[0] = z.re;
    x[1] = z.im;
    pt(a, &x)
}

#[test]
fn lift_examples() {
    let a = alg(3);
    assert_eq!(pt(&a, &[0.0, 0.0, 0.0]).vector(), &Mv::e0(&a));
    let p = pt(&a, &[1.0, 0.0, 0.0]);
    let expected = &(&Mv::e0(&a) + &Mv::e(&a, 1).unwrap()) + &Mv::einf(&a);
    assert_eq!(p.vector(), &expected);
    assert!((p.vector() * p.vector()).is_zero());
    assert_eq!(p.vector().anticommutator(&Mv::einf(&a)), Mv::one(&a));
    assert!(lift(&a, &[1.0, 2.0]).is_err());
}

#[test]
fn project_round_trip() {
    let a = alg(3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let x: Vec<f64> = random_point(3, 10.0, &mut rng);
        let p = ConformalPoint::new(pt(&a, &x).vector().scale(7.0)).unwrap();
        let y = project(&p).finite().unwrap();
        assert!(close(&x, &y, 1e-12));
    }
    assert_eq!(ConformalPoint::<f64>::infinity(&a).project(), Projected::Infinity);
    assert_eq!(ConformalPoint::<f64>::e0(&a).project(), Projected::Finite(vec![0.0; 3]));
}

#[test]
fn project_rejects_non_null_and_zero() {
    let a = alg(3);
    assert!(matches!(project_vector(&Mv::e(&a, 1).unwrap()), Err(GeometryError::NotNull { .. })));
    assert_eq!(project_vector(&Mv::zero(&a)), Err(GeometryError::ZeroVector));
}

#[test]
fn sphere_and_plane_examples() {
    let a = alg(3);
    let s = hypersphere(&a, &[0.0, 0.0, 0.0], 1.0).unwrap();
    assert!(incident_point_sphere(&pt(&a, &[1.0, 0.0, 0.0]), &s));
    assert!(!incident_point_sphere(&pt(&a, &[2.0, 0.0, 0.0]), &s));
    assert_eq!(&s.vector().scale(1.0) * s.vector(), Mv::scalar(&a, -1.0));

    let t = plane(&a, &[1.0, 0.0, 0.0], 0.0).unwrap();
    assert!(t.vector().anticommutator(&Mv::einf(&a)).is_zero());
    assert!(t.is_plane());
    assert!(incident_point_sphere(&pt(&a, &[0.0, 3.0, -1.0]), &t));
    assert!(incident_point_sphere(&ConformalPoint::infinity(&a), &t));

    assert!(matches!(hypersphere(&a, &[0.0; 3], 0.0), Err(GeometryError::NonPositiveRadius(_))));
    assert!(matches!(plane(&a, &[2.0, 0.0, 0.0], 0.0), Err(GeometryError::NonUnitNormal(_))));
}

#[test]
fn sphere_readout_and_center_by_inversion() {
    let a = alg(3);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let m: Vec<f64> = random_point(3, 5.0, &mut rng);
        let r = rng.gen_range(0.1..4.0);
        let s = hypersphere(&a, &m, r).unwrap();
        match s.readout() {
            SphereReadout::Sphere { center, radius } => {
                assert!(close(&center, &m, 1e-12));
                assert!((radius - r).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
        let c = inversion(&ConformalPoint::infinity(&a), &s);
        assert!(close(&project(&c).finite().unwrap(), &m, 1e-10));
        // points at distance r lie on s
        let dir: Vec<f64> = random_point(3, 1.0, &mut rng);
        let len = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
        let on: Vec<f64> = m.iter().zip(&dir).map(|(mi, d)| mi + r * d / len).collect();
        assert!(incident_point_sphere(&pt(&a, &on), &s));
    }
    let t = plane(&a, &[0.0, 0.6, 0.8], 2.5).unwrap();
    assert_eq!(
        t.readout(),
        SphereReadout::Plane {
            normal: vec![0.0, 0.6, 0.8],
            offset: 2.5
        }
    );
}

#[test]
fn orthogonality_and_angle() {
    let a = alg(3);
    let s1 = plane(&a, &[1.0, 0.0, 0.0], 0.0).unwrap();
    let s2 = plane(&a, &[0.0, 1.0, 0.0], 0.0).unwrap();
    assert!(spheres_orthogonal(&s1, &s2));
    assert!((sphere_angle(&s1, &s2) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    assert_eq!(sphere_angle(&s1, &s1), 0.0);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let s3 = plane(&a, &[h, h, 0.0], 0.0).unwrap();
    assert!((sphere_angle(&s1, &s3) - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
    // Two unit spheres whose centers are sqrt(2) apart meet at right angles.
    let u = hypersphere(&a, &[0.0, 0.0, 0.0], 1.0).unwrap();
    let v = hypersphere(&a, &[2f64.sqrt(), 0.0, 0.0], 1.0).unwrap();
    assert!(spheres_orthogonal(&u, &v));
}

#[test]
fn incidence_is_polarity() {
    let a = alg(4);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..200 {
        let m: Vec<f64> = random_point(4, 2.0, &mut rng);
        let s = hypersphere(&a, &m, rng.gen_range(0.5..2.0)).unwrap();
        let p = pt(&a, &random_point::<f64>(4, 3.0, &mut rng));
        let anti = p.vector().anticommutator(s.vector());
        assert!(anti.grades(1e-14).iter().all(|&g| g == 0));
        assert!((anti.scalar_part() + 2.0 * inner(p.vector(), s.vector())).abs() < 1e-12);
    }
}

#[test]
fn inversion_examples() {
    let a = alg(3);
    let s = hypersphere(&a, &[0.0, 0.0, 0.0], 1.0).unwrap();
    let q = inversion(&pt(&a, &[2.0, 0.0, 0.0]), &s);
    assert!(close(&project(&q).finite().unwrap(), &[0.5, 0.0, 0.0], 1e-14));
    assert_eq!(inversion(&ConformalPoint::e0(&a), &s).project(), Projected::Infinity);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let m: Vec<f64> = random_point(3, 2.0, &mut rng);
        let r = rng.gen_range(0.5..2.0);
        let s = hypersphere(&a, &m, r).unwrap();
        let p = pt(&a, &random_point::<f64>(3, 3.0, &mut rng));
        let q = inversion(&p, &s);
        assert!(ConformalPoint::new(q.vector().clone()).is_ok());
        // Euclidean formula m + r^2 (x - m) / |x - m|^2
        let x = project(&p).finite().unwrap();
        let d: Vec<f64> = x.iter().zip(&m).map(|(xi, mi)| xi - mi).collect();
        let dd: f64 = d.iter().map(|v| v * v).sum();
        let expect: Vec<f64> = m.iter().zip(&d).map(|(mi, di)| mi + r * r * di / dd).collect();
        assert!(close(&project(&q).finite().unwrap(), &expect, 1e-9));
        assert!(inversion(&q, &s).projective_distance(&p) < 1e-12);
        let dir: Vec<f64> = random_point(3, 1.0, &mut rng);
        let len = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
        let on = pt(&a, &m.iter().zip(&dir).map(|(mi, di)| mi + r * di / len).collect::<Vec<_>>());
        assert!(inversion(&on, &s).projective_distance(&on) < 1e-12);
    }
}

#[test]
fn sphere_through_examples() {
    let a = alg(3);
    let line: Vec<Pt> = (0..4).map(|k| pt(&a, &[k as f64, 0.0, 0.0])).collect();
    let c = sphere_through(&line[..3]).unwrap();
    assert_eq!(c.sphere_dim(), 1);
    assert!(c.contains(&line[3]));
    assert!(c.contains(&ConformalPoint::infinity(&a)));
    assert!(matches!(sphere_through(&line), Err(GeometryError::Degenerate { .. })));

    let quad = [
        pt(&a, &[0.3, 0.1, -0.2]),
        pt(&a, &[1.0, 0.5, 0.0]),
        pt(&a, &[-0.4, 1.2, 0.7]),
        pt(&a, &[0.2, -0.9, 1.1]),
    ];
    let s = sphere_through(&quad).unwrap();
    assert_eq!(s.grade(), 4);
    assert!(crate::clifford::is_pure_blade(s.blade(), 4).unwrap());
    for p in &quad {
        assert!(s.incidence_residual(p) < 1e-12);
    }
    let rep = [quad[0].clone(), quad[0].clone(), quad[1].clone()];
    assert!(matches!(sphere_through(&rep), Err(GeometryError::Degenerate { .. })));
    assert!(matches!(sphere_through(&quad[..1]), Err(GeometryError::PointCount { .. })));
}

#[test]
fn sphere_lemma_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=5 {
        let a = alg(n);
        for m in 0..n {
            for _ in 0..20 {
                let pts: Vec<Pt> = (0..m + 2).map(|_| pt(&a, &random_point::<f64>(n, 2.0, &mut rng))).collect();
                let s = sphere_through(&pts).unwrap();
                for p in &pts {
                    assert!(s.incidence_residual(p) < 1e-9);
                }
            }
            if m == 0 {
                continue;
            }
            // m + 3 points on a round m-sphere moved by a Moebius transformation
            for _ in 0..20 {
                let v = random_even_versor(&a, 2, &mut rng);
                let pts: Vec<Pt> = (0..m + 3)
                    .map(|_| {
                        let mut x: Vec<f64> = random_point(n, 1.0, &mut rng);
                        let len = x[..=m].iter().map(|c| c * c).sum::<f64>().sqrt();
                        for (k, c) in x.iter_mut().enumerate() {
                            *c = if k <= m { *c / len } else { 0.0 };
                        }
                        moved(&v, &pt(&a, &x))
                    })
                    .collect();
                assert!(wedge_points(&pts).1 < 1e-9);
            }
        }
    }
}

#[test]
fn blade_representations() {
    let a = alg(3);
    let e = |i| Mv::e(&a, i).unwrap();
    // e_1 ∧ e_2 ∧ e_3 is the point pair {0, inf}
    let spacelike = e(1).wedge(&e(2)).wedge(&e(3));
    let pair = SphereBlade::spacelike(spacelike.clone(), 3).unwrap();
    assert_eq!(pair.sphere_dim(), 0);
    let t = pair.to_timelike();
    assert_eq!(t.grade(), 2);
    assert!(crate::clifford::is_pure_blade(t.blade(), 2).unwrap());
    assert!(
        (crate::clifford::blade_norm_sq(t.blade(), 2) + crate::clifford::blade_norm_sq(&spacelike, 3)).abs() < 1e-12
    );
    assert!(pair.contains(&ConformalPoint::e0(&a)));
    assert!(pair.contains(&ConformalPoint::infinity(&a)));
    assert!(!pair.contains(&pt(&a, &[1.0, 0.0, 0.0])));
    let (p, q) = extract_point_pair(&pair).unwrap();
    let mut found = [p.project(), q.project()];
    found.sort_by_key(|x| matches!(x, Projected::Infinity));
    assert_eq!(found[1], Projected::Infinity);
    assert!(close(&found[0].clone().finite().unwrap(), &[0.0; 3], 1e-12));
    assert!(t.to_spacelike().blade().approx_eq(&spacelike, 1e-12));
}

#[test]
fn extract_point_pair_examples() {
    let a = alg(3);
    let blade = Mv::e0(&a).wedge(&Mv::einf(&a));
    let (p, q) = extract_point_pair(&SphereBlade::timelike(blade, 2).unwrap()).unwrap();
    let (e0, einf) = (ConformalPoint::e0(&a), ConformalPoint::infinity(&a));
    let ok = |u: &Pt, v: &Pt| u.projective_distance(&e0) < 1e-12 && v.projective_distance(&einf) < 1e-12;
    assert!(ok(&p, &q) || ok(&q, &p));

    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let x: Vec<f64> = random_point(3, 3.0, &mut rng);
        let y: Vec<f64> = random_point(3, 3.0, &mut rng);
        let blade = pt(&a, &x).vector().wedge(pt(&a, &y).vector());
        let (p, q) = extract_point_pair(&SphereBlade::timelike(blade, 2).unwrap()).unwrap();
        let (p, q) = (project(&p).finite().unwrap(), project(&q).finite().unwrap());
        assert!((close(&p, &x, 1e-9) && close(&q, &y, 1e-9)) || (close(&p, &y, 1e-9) && close(&q, &x, 1e-9)));
    }

    let spacelike = Mv::e(&a, 1).unwrap().wedge(&Mv::e(&a, 2).unwrap());
    assert_eq!(point_pair_of_bivector(&spacelike), Err(GeometryError::NoRealPoints));
    assert!(SphereBlade::timelike(spacelike, 2).is_err());
}

fn unit_circle_through(a: &Arc<Algebra>, pts: [[f64; 3]; 3]) -> SphereBlade<f64> {
    sphere_through(&pts.map(|x| pt(a, &x))).unwrap()
}

#[test]
fn circle_intersection_examples() {
    let a = alg(3);
    let equator = unit_circle_through(&a, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0]]);
    let meridian = unit_circle_through(&a, [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, -1.0, 0.0]]);
    match circle_intersect(&equator, &meridian).unwrap() {
        CircleMeet::Pair(p, q) => {
            let (p, q) = (project(&p).finite().unwrap(), project(&q).finite().unwrap());
            let (up, down) = ([0.0, 1.0, 0.0], [0.0, -1.0, 0.0]);
            assert!((close(&p, &up, 1e-10) && close(&q, &down, 1e-10)) || (close(&p, &down, 1e-10) && close(&q, &up, 1e-10)));
        }
        other => panic!("expected a pair, got {other:?}"),
    }
    assert_eq!(circle_intersect(&equator, &equator), Err(GeometryError::NotDistinct));

    let r = 0.75f64.sqrt();
    let north = unit_circle_through(&a, [[r, 0.0, 0.5], [0.0, r, 0.5], [-r, 0.0, 0.5]]);
    let south = unit_circle_through(&a, [[r, 0.0, -0.5], [0.0, r, -0.5], [-r, 0.0, -0.5]]);
    assert_eq!(circle_intersect(&north, &south).unwrap(), CircleMeet::Disjoint);

    // touching circles in the plane z = 0
    let c1 = unit_circle_through(&a, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0]]);
    let c2 = unit_circle_through(&a, [[1.0, 0.0, 0.0], [2.0, 1.0, 0.0], [3.0, 0.0, 0.0]]);
    match circle_intersect(&c1, &c2).unwrap() {
        CircleMeet::Tangent(p) => assert!(close(&project(&p).finite().unwrap(), &[1.0, 0.0, 0.0], 1e-6)),
        other => panic!("expected tangency, got {other:?}"),
    }

    let skew = unit_circle_through(&a, [[5.0, 0.0, 0.0], [5.0, 1.0, 0.3], [5.0, 0.0, 1.0]]);
    assert_eq!(circle_intersect(&equator, &skew), Err(GeometryError::NotCospherical));
}

#[test]
fn point_on_circle_parameter() {
    let a = alg(3);
    let p0 = pt(&a, &[0.0, 0.0, 0.0]);
    let p1 = pt(&a, &[1.0, 0.0, 0.0]);
    let p2 = pt(&a, &[0.0, 1.0, 0.0]);
    let at = |t: f64| project(&point_on_circle(&p0, &p1, &p2, t).unwrap()).finite().unwrap();
    assert!(close(&at(0.0), &[0.0, 0.0, 0.0], 1e-12));
    assert!(close(&at(1.0), &[1.0, 0.0, 0.0], 1e-12));
    assert!(close(&at(2.0), &[1.0, 1.0, 0.0], 1e-12));
    let c = sphere_through(&[p0.clone(), p1.clone(), p2.clone()]).unwrap();
    for t in [-3.0, 0.3, 1.7, 40.0] {
        let q = point_on_circle(&p0, &p1, &p2, t).unwrap();
        assert!(c.incidence_residual(&q) < 1e-12);
        let r = cross_ratio(&p0, &p1, &q, &p2).unwrap();
        assert!(r.r4norm < 1e-12);
    }
}

#[test]
fn cross_ratio_of_collinear_points() {
    let a = alg(3);
    let p: Vec<Pt> = (0..4).map(|k| pt(&a, &[k as f64, 0.0, 0.0])).collect();
    let r = cross_ratio(&p[0], &p[1], &p[2], &p[3]).unwrap();
    let oracle = complex_cross_ratio([0.0, 1.0, 2.0, 3.0].map(|x| Complex64::new(x, 0.0)));
    assert!((r.r0 - oracle.re).abs() < 1e-14);
    assert!((r.r0 + 1.0 / 3.0).abs() < 1e-14);
    assert!(r.r4norm < 1e-14);

    let zero = cross_ratio(&p[0], &p[0], &p[2], &p[3]).unwrap();
    assert_eq!((zero.r0, zero.r4norm), (0.0, 0.0));
    assert_eq!(cross_ratio(&p[0], &p[1], &p[2], &p[0]), Err(GeometryError::DegenerateDenominator));
}

#[test]
fn cross_ratio_is_scale_invariant() {
    let a = alg(3);
    let p = [[0.1, 0.2, 0.3], [1.0, -0.4, 0.2], [0.3, 0.9, -1.0], [-0.7, 0.1, 0.5]].map(|x| pt(&a, &x));
    let r = cross_ratio(&p[0], &p[1], &p[2], &p[3]).unwrap();
    let scaled: Vec<Pt> = p
        .iter()
        .zip([3.0, -0.5, 11.0, -2.0])
        .map(|(q, k)| ConformalPoint::new(q.vector().scale(k)).unwrap())
        .collect();
    let s = cross_ratio(&scaled[0], &scaled[1], &scaled[2], &scaled[3]).unwrap();
    assert!((r.r0 - s.r0).abs() < 1e-14 && (r.r4norm - s.r4norm).abs() < 1e-14);
}

#[test]
fn cross_ratio_matches_complex_oracle_on_moebius_images() {
    let a = alg(3);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..300 {
        let z: [Complex64; 4] = std::array::from_fn(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)));
        let oracle = complex_cross_ratio(z);
        let v = random_even_versor(&a, 2, &mut rng);
        let p: Vec<Pt> = z.iter().map(|&w| moved(&v, &plane_point(&a, w))).collect();
        let r = cross_ratio(&p[0], &p[1], &p[2], &p[3]).unwrap();
        let scale = oracle.norm().max(1.0);
        assert!((r.r0 - oracle.re).abs() < 1e-8 * scale, "{} vs {}", r.r0, oracle.re);
        assert!((r.r4norm - oracle.im.abs()).abs() < 1e-8 * scale);
    }
}

#[test]
fn cross_ratio_moebius_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for n in [3, 4] {
        let a = alg(n);
        for _ in 0..100 {
            let p: Vec<Pt> = (0..4).map(|_| pt(&a, &random_point::<f64>(n, 2.0, &mut rng))).collect();
            let v = random_even_versor(&a, 2, &mut rng);
            let q: Vec<Pt> = p.iter().map(|x| moved(&v, x)).collect();
            let r = cross_ratio(&p[0], &p[1], &p[2], &p[3]).unwrap();
            let s = cross_ratio(&q[0], &q[1], &q[2], &q[3]).unwrap();
            let scale = r.r0.abs().max(1.0);
            assert!((r.r0 - s.r0).abs() < 1e-9 * scale);
            assert!((r.r4norm - s.r4norm).abs() < 1e-9 * scale);
        }
    }
}

#[test]
fn concircularity_corollary_agrees_with_lemma() {
    let a = alg(3);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for k in 0..2000 {
        let concircular = k % 2 == 0;
        let pts: Vec<Pt> = if concircular {
            let v = random_even_versor(&a, 2, &mut rng);
            (0..4)
                .map(|_| moved(&v, &pt(&a, &[rng.gen_range(-3.0..3.0), 0.0, 0.0])))
                .collect()
        } else {
            (0..4).map(|_| pt(&a, &random_point::<f64>(3, 2.0, &mut rng))).collect()
        };
        let r = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let (_, wedge) = wedge_points(&pts);
        let by_ratio = r.concircularity_residual() <= 1e-9;
        let by_wedge = wedge <= 1e-9;
        assert_eq!(by_ratio, by_wedge, "quadruple {k}: r4 = {:e}, wedge = {wedge:e}", r.concircularity_residual());
        assert_eq!(by_ratio, concircular);
    }
}

#[test]
fn single_precision_smoke() {
    let a = alg(3);
    let p: Vec<ConformalPoint<f32>> = (0..4).map(|k| lift(&a, &[k as f32, 0.0, 0.0]).unwrap()).collect();
    let r = cross_ratio(&p[0], &p[1], &p[2], &p[3]).unwrap();
    assert!((r.r0 + 1.0 / 3.0).abs() < 1e-5);
}

