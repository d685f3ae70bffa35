use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::initial::{is_initial, InitialData};
use crate::clifford::{subspace, Algebra, Multivector, Versor};
use crate::error::{CompletionError, GeometryError};
use crate::moebius::{inversion, lift, projective_distance, ConformalPoint, Hypersphere};
use crate::net::{propagate_frame, Lattice};
use crate::scalar::Scalar;
use crate::tolerance;

/// Translation frames: every `j`-edge carries `s_j = e_j + β_j e_inf`.
pub fn seed_grid<S: Scalar>(alg: &Arc<Algebra>, extents: &[usize], beta: &[S]) -> Result<Vec<Versor<S>>, CompletionError> {
    let lattice = Lattice::new(extents)?;
    if beta.len() != lattice.dim() {
        return Err(CompletionError::Parameters {
            expected: lattice.dim(),
            found: beta.len(),
        });
    }
    if lattice.dim() > alg.n() {
        return Err(CompletionError::Dimension(lattice.dim()));
    }
    let einf = Multivector::einf(alg);
    let s: Vec<Multivector<S>> = (0..lattice.dim())
        .map(|j| &Multivector::generator(alg, j + 1) + &einf.scale(beta[j]))
        .collect();
    let mut frames = Vec::with_capacity(lattice.len());
    frames.push(Versor::identity(alg));
    for idx in 1..lattice.len() {
        let axis = (0..lattice.dim()).find(|&a| lattice.coord(idx, a) > 0).expect("non-origin");
        let parent = lattice.step_back(idx, axis).expect("nonzero coordinate");
        let next = propagate_frame(&frames[parent], &s[axis], axis)?;
        frames.push(next);
    }
    Ok(frames)
}

/// Placement of the new vertex of each initial face on the circle through
/// its three predecessors, as an angle (radians) along that circle measured
/// from the circle point nearest the parallelogram completion
/// `p1 + p2 - p0`; positive angles turn towards `p1`.
///
/// Anchoring at the parallelogram completion keeps perturbations from
/// compounding across the plane. Prescribing the Moebius-invariant circle
/// parameter on every face instead amplifies them geometrically, like a
/// Cauchy problem for conformal maps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ParameterField {
    /// Angle zero: a square gets its fourth corner, the midpoint of the arc
    /// avoiding the base vertex.
    Midpoint,
    Constant(f64),
    Uniform { lo: f64, hi: f64 },
}

impl ParameterField {
    fn sample(&self, rng: &mut impl Rng) -> f64 {
        match *self {
            Self::Midpoint => 0.0,
            Self::Constant(t) => t,
            Self::Uniform { lo, hi } if hi > lo => rng.gen_range(lo..hi),
            Self::Uniform { lo, .. } => lo,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircularSeedParams {
    /// Grid spacing along the coordinate axes.
    pub spacing: f64,
    /// Uniform jitter of each axis vertex in every coordinate.
    pub jitter: f64,
    pub parameters: ParameterField,
}

impl Default for CircularSeedParams {
    fn default() -> Self {
        Self {
            spacing: 1.0,
            jitter: 0.05,
            parameters: ParameterField::Uniform { lo: -0.05, hi: 0.05 },
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: f64, x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(u, v)| a * u + v).collect()
}

/// Point of the circumcircle of `x0, x1, x2` at `angle` from the point
/// nearest `x1 + x2 - x0`.
fn circle_corner(x0: &[f64], x1: &[f64], x2: &[f64], angle: f64) -> Result<Vec<f64>, GeometryError> {
    let u = axpy(-1.0, x0, x1);
    let v = axpy(-1.0, x0, x2);
    let (uu, uv, vv) = (dot(&u, &u), dot(&u, &v), dot(&v, &v));
    let det = uu * vv - uv * uv;
    if det <= tolerance::GEOMETRIC * uu * vv {
        return Err(GeometryError::Degenerate { residual: det / (uu * vv) });
    }
    let alpha = 0.5 * (uu * vv - uv * vv) / det;
    let beta = 0.5 * (uu * vv - uv * uu) / det;
    let rel: Vec<f64> = axpy(alpha, &u, &v.iter().map(|c| beta * c).collect::<Vec<_>>());
    let centre = axpy(1.0, &rel, x0);
    let r = dot(&rel, &rel).sqrt();
    let e1: Vec<f64> = u.iter().map(|c| c / uu.sqrt()).collect();
    let v_perp = axpy(-dot(&v, &e1), &e1, &v);
    let e2: Vec<f64> = v_perp.iter().map(|c| c / dot(&v_perp, &v_perp).sqrt()).collect();
    let target: Vec<f64> = x1.iter().zip(x2).zip(x0).map(|((a, b), c)| a + b - c).collect();
    let d = axpy(-1.0, &centre, &target);
    let (d1, d2) = (dot(&d, &e1), dot(&d, &e2));
    let len = (d1 * d1 + d2 * d2).sqrt();
    if len <= tolerance::GEOMETRIC * r {
        return Err(GeometryError::Degenerate { residual: len / r });
    }
    let (a1, a2) = (d1 / len, d2 / len);
    // in-plane normal to the radius, oriented towards x1
    let (mut w1, mut w2) = (-a2, a1);
    let towards = axpy(-1.0, x2, x1);
    if w1 * dot(&towards, &e1) + w2 * dot(&towards, &e2) < 0.0 {
        (w1, w2) = (-w1, -w2);
    }
    let (c, s) = (angle.cos(), angle.sin());
    let (q1, q2) = (r * (c * a1 + s * w1), r * (c * a2 + s * w2));
    Ok(centre
        .iter()
        .zip(e1.iter().zip(&e2))
        .map(|(m, (x, y))| m + q1 * x + q2 * y)
        .collect())
}

/// Euclidean points of a circular net on the initial vertices.
/// Coordinate axis `a` while `a < n`; beyond that, fixed unit directions
/// away from the coordinate axes and from each other.
fn axis_direction(a: usize, n: usize) -> Vec<f64> {
    if a < n {
        let mut d = vec![0.0; n];
        d[a] = 1.0;
        return d;
    }
    let d: Vec<f64> = (0..n).map(|k| (1.0 + 2.3 * k as f64 + 1.7 * a as f64).cos()).collect();
    let norm = dot(&d, &d).sqrt();
    d.into_iter().map(|c| c / norm).collect()
}

fn circular_points(lattice: &Lattice, n: usize, params: &CircularSeedParams, rng: &mut ChaCha8Rng) -> Result<Vec<Option<Vec<f64>>>, CompletionError> {
    let m = lattice.dim();
    let mut pts: Vec<Option<Vec<f64>>> = vec![None; lattice.len()];
    pts[0] = Some(vec![0.0; n]);
    for idx in 1..lattice.len() {
        if !is_initial(lattice, idx) {
            continue;
        }
        let nz: Vec<usize> = (0..m).filter(|&a| lattice.coord(idx, a) > 0).collect();
        let x = if let [a] = nz[..] {
            let step = params.spacing * lattice.coord(idx, a) as f64;
            axis_direction(a, n)
                .into_iter()
                .map(|d| step * d + params.jitter * rng.gen_range(-1.0..1.0))
                .collect()
        } else {
            let (a, b) = (nz[0], nz[1]);
            let pa = lattice.step_back(idx, b).expect("nonzero");
            let pb = lattice.step_back(idx, a).expect("nonzero");
            let p0 = lattice.step_back(pa, a).expect("nonzero");
            let get = |v: usize| pts[v].as_deref().expect("lexicographic predecessor");
            let angle = params.parameters.sample(rng);
            circle_corner(get(p0), get(pa), get(pb), angle)?
        };
        pts[idx] = Some(x);
    }
    Ok(pts)
}

fn lift_all<S: Scalar>(alg: &Arc<Algebra>, pts: &[Option<Vec<f64>>]) -> Result<Vec<Option<ConformalPoint<S>>>, CompletionError> {
    pts.iter()
        .map(|x| {
            x.as_ref()
                .map(|x| lift(alg, &x.iter().map(|&c| S::lit(c)).collect::<Vec<S>>()))
                .transpose()
                .map_err(CompletionError::from)
        })
        .collect()
}

/// Random `F`-only initial data. Axis vertices sit near the grid points; each
/// further vertex of a coordinate plane is placed on the circle through its
/// three predecessors according to `params.parameters`.
pub fn seed_random_circular<S: Scalar>(
    alg: &Arc<Algebra>,
    extents: &[usize],
    params: &CircularSeedParams,
    seed: u64,
) -> Result<InitialData<S>, CompletionError> {
    let lattice = Lattice::new(extents)?;
    if lattice.dim() < 2 {
        return Err(CompletionError::Dimension(lattice.dim()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = lift_all::<S>(alg, &circular_points(&lattice, alg.n(), params, &mut rng)?)?;
    InitialData::from_vertices(alg, &lattice, |v| pts[v].clone().expect("initial"), None, None)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairSeedParams {
    pub net: CircularSeedParams,
    /// `F̂` at the origin as a point of `R^n`; `None` is the point at infinity.
    pub companion: Option<Vec<f64>>,
    /// Spread of the axis edge spheres `F(t) - μ F(t + t_j)` (chart
    /// representatives) around the bisecting planes: `μ = exp(ratio · u)` with
    /// `u` uniform in `[-1, 1]`.
    pub ratio: f64,
}

impl Default for PairSeedParams {
    fn default() -> Self {
        Self {
            net: CircularSeedParams::default(),
            companion: None,
            ratio: 0.1,
        }
    }
}

/// The line where the planes `span(a, b)` and `span(p, q)` meet, inside the
/// 3-space they share.
fn meet_planes<S: Scalar>(a: &Multivector<S>, b: &Multivector<S>, p: &Multivector<S>, q: &Multivector<S>) -> Result<Multivector<S>, String> {
    let m = subspace::vectors_to_matrix(&[a.normalized(), b.normalized(), p.normalized(), q.normalized()]);
    let sv = subspace::singular_values(&m);
    if sv[3] > S::lit(tolerance::CONCIRCULAR) * sv[0] {
        return Err(format!("edge sphere planes are not coplanar (residual {:e})", (sv[3] / sv[0]).to_f64_lossy()));
    }
    let (k, _) = subspace::smallest_right_singular(&m, 1);
    Ok(&a.normalized().scale(k[(0, 0)]) + &b.normalized().scale(k[(1, 0)]))
}

/// Random pair initial data: `F` as in [`seed_random_circular`] and `F̂` the
/// Ribaucour transform of `F` fixed by `F̂(0)` and the axis edge spheres.
///
/// On each coordinate face the two far edge spheres lie in the span of the
/// two near ones (the face condition on the spheres) and exchange the far
/// `F` vertices, which determines them; `F̂` follows by inversion and is
/// checked to close around the face.
pub fn seed_random_pair<S: Scalar>(
    alg: &Arc<Algebra>,
    extents: &[usize],
    params: &PairSeedParams,
    seed: u64,
) -> Result<InitialData<S>, CompletionError> {
    let lattice = Lattice::new(extents)?;
    let (m, n) = (lattice.dim(), alg.n());
    if m < 2 {
        return Err(CompletionError::Dimension(m));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = lift_all::<S>(alg, &circular_points(&lattice, n, &params.net, &mut rng)?)?;
    let fv = |v: usize| f[v].as_ref().expect("initial").vector().clone();
    let mut f_hat: Vec<Option<ConformalPoint<S>>> = vec![None; lattice.len()];
    f_hat[0] = Some(match &params.companion {
        None => ConformalPoint::infinity(alg),
        Some(x) if x.len() == n => lift(alg, &x.iter().map(|&c| S::lit(c)).collect::<Vec<S>>())?,
        Some(x) => return Err(CompletionError::Dimension(x.len())),
    });
    let mut spheres: HashMap<(usize, usize), Hypersphere<S>> = HashMap::new();
    for a in 0..m {
        let mut v = 0;
        for _ in 1..extents[a] {
            let next = lattice.step(v, a).expect("axis");
            let mu = S::lit((params.ratio * rng.gen_range(-1.0..1.0)).exp());
            let s = Hypersphere::normalize(&(&fv(v) - &fv(next).scale(mu)))?;
            f_hat[next] = Some(inversion(f_hat[v].as_ref().expect("axis predecessor"), &s));
            spheres.insert((v, a), s);
            v = next;
        }
    }
    let seed_err = |t: &[usize], what: String| CompletionError::Seed(format!("face at {t:?}: {what}"));
    for i in 0..m {
        for j in i + 1..m {
            for a in 0..extents[i] - 1 {
                for b in 0..extents[j] - 1 {
                    let mut t = vec![0; m];
                    t[i] = a;
                    t[j] = b;
                    let base = lattice.index(&t).expect("inside");
                    let ti = lattice.step(base, i).expect("face");
                    let tj = lattice.step(base, j).expect("face");
                    let tij = lattice.step(ti, j).expect("face");
                    let si = spheres[&(base, i)].vector().clone();
                    let sj = spheres[&(base, j)].vector().clone();
                    let sj_far = meet_planes(&si, &sj, &fv(ti), &fv(tij)).map_err(|e| seed_err(&t, e))?;
                    let si_far = meet_planes(&si, &sj, &fv(tj), &fv(tij)).map_err(|e| seed_err(&t, e))?;
                    let sj_far = Hypersphere::normalize(&sj_far).map_err(|e| seed_err(&t, e.to_string()))?;
                    let si_far = Hypersphere::normalize(&si_far).map_err(|e| seed_err(&t, e.to_string()))?;
                    let via_i = inversion(f_hat[ti].as_ref().expect("predecessor"), &sj_far);
                    let via_j = inversion(f_hat[tj].as_ref().expect("predecessor"), &si_far);
                    let gap = projective_distance(via_i.vector(), via_j.vector());
                    if gap > S::lit(tolerance::CONCIRCULAR) {
                        return Err(seed_err(&t, format!("companion does not close (gap {:e})", gap.to_f64_lossy())));
                    }
                    f_hat[tij] = Some(via_i);
                    spheres.insert((ti, j), sj_far);
                    spheres.insert((tj, i), si_far);
                }
            }
        }
    }
    let f_hat_at = |v: usize| f_hat[v].clone().expect("initial");
    InitialData::from_vertices(alg, &lattice, |v| f[v].clone().expect("initial"), Some(&f_hat_at), None)
}
