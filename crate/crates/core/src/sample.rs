//! Random geometric objects for seeding and testing.

use std::sync::Arc;

use rand::Rng;

use crate::clifford::{inner, Algebra, Multivector, Versor};
use crate::scalar::Scalar;

/// Unit spacelike vector with coefficients drawn uniformly from `[-1, 1]`,
/// rejecting draws with `<v, v> < 0.2` before normalization.
pub fn random_unit_spacelike<S: Scalar>(alg: &Arc<Algebra>, rng: &mut impl Rng) -> Multivector<S> {
    loop {
        let coords: Vec<S> = (0..alg.generators()).map(|_| S::lit(rng.gen_range(-1.0..1.0))).collect();
        let v = Multivector::vector(alg, &coords).expect("generator count");
        let q = inner(&v, &v);
        if q > S::lit(0.2) {
            return v.scale(S::one() / q.sqrt());
        }
    }
}

/// Even versor built from `2 * pairs` random unit spacelike vectors.
pub fn random_even_versor<S: Scalar>(alg: &Arc<Algebra>, pairs: usize, rng: &mut impl Rng) -> Versor<S> {
    let vs: Vec<Multivector<S>> = (0..2 * pairs).map(|_| random_unit_spacelike(alg, rng)).collect();
    Versor::from_unit_vectors(alg, &vs).expect("unit vectors")
}

/// Random point of `R^n` with coordinates in `[-scale, scale]`.
pub fn random_point<S: Scalar>(n: usize, scale: f64, rng: &mut impl Rng) -> Vec<S> {
    (0..n).map(|_| S::lit(rng.gen_range(-scale..scale))).collect()
}
