use std::sync::Arc;

use crate::error::AlgebraError;

/// Largest supported ambient dimension `n`; blade tables grow as `4^(n+2)`.
pub const MAX_DIMENSION: usize = 8;

/// Signature data of the Clifford algebra of Minkowski space `R^{n+2}_1`.
///
/// Internally the algebra is generated by an orthonormal basis
/// `f_0, f_1, ..., f_{n+1}` with `f_0^2 = +1` and `f_k^2 = -1` otherwise.
/// The spatial generators `e_1..e_n` are `f_1..f_n`, and the null pair is
/// `e_0 = (f_0 + f_{n+1}) / 2`, `e_inf = (f_0 - f_{n+1}) / 2`, which makes
/// `e_0^2 = e_inf^2 = 0` and `e_0 e_inf + e_inf e_0 = 1` exact in floating point.
///
/// A basis blade is a bitmask over the generators; bit `k` is `f_k`.
#[derive(Debug)]
pub struct Algebra {
    n: usize,
    generators: usize,
    blades: usize,
    signs: Vec<i8>,
    grades: Vec<u8>,
}

impl Algebra {
    pub fn new(n: usize) -> Result<Arc<Self>, AlgebraError> {
        if n < 2 {
            return Err(AlgebraError::DimensionTooSmall(n));
        }
        if n > MAX_DIMENSION {
            return Err(AlgebraError::DimensionTooLarge(n));
        }
        let generators = n + 2;
        let blades = 1usize << generators;
        let mut signs = vec![0i8; blades * blades];
        for a in 0..blades {
            for b in 0..blades {
                signs[a * blades + b] = blade_product_sign(a, b);
            }
        }
        let grades = (0..blades).map(|b| b.count_ones() as u8).collect();
        Ok(Arc::new(Self {
            n,
            generators,
            blades,
            signs,
            grades,
        }))
    }

    /// Dimension of the conformal sphere `S^n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators, `n + 2`.
    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Number of basis blades, `2^(n+2)`.
    pub fn blade_count(&self) -> usize {
        self.blades
    }

    #[inline]
    pub fn grade_of(&self, blade: usize) -> usize {
        self.grades[blade] as usize
    }

    /// Sign `s` with `f_A f_B = s f_{A xor B}`.
    #[inline]
    pub fn product_sign(&self, a: usize, b: usize) -> i8 {
        self.signs[a * self.blades + b]
    }

    /// Square of the internal generator `f_k`.
    pub fn generator_square(&self, k: usize) -> i8 {
        if k == 0 {
            1
        } else {
            -1
        }
    }

    /// Index of the internal spacelike generator paired with `f_0` in the null basis.
    pub fn closing_generator(&self) -> usize {
        self.n + 1
    }

    /// Basis blades of grade `k`, in increasing bitmask order.
    pub fn blades_of_grade(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.blades).filter(move |&b| self.grade_of(b) == k)
    }

    pub(crate) fn same(&self, other: &Algebra) -> bool {
        self.n == other.n
    }
}

fn blade_product_sign(a: usize, b: usize) -> i8 {
    // Reordering: count pairs (i in a, j in b) with i > j.
    let mut swaps = 0u32;
    let mut shifted = a >> 1;
    while shifted != 0 {
        swaps += (shifted & b).count_ones();
        shifted >>= 1;
    }
    // Every shared generator except f_0 squares to -1.
    let negative_squares = (a & b & !1usize).count_ones();
    if (swaps + negative_squares).is_multiple_of(2) {
        1
    } else {
        -1
    }
}
