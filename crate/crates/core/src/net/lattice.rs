use crate::error::NetError;

/// Finite box `{0..extents[0]} x ... x {0..extents[m-1]}` of `Z^m`.
///
/// Vertices are stored row-major (last axis fastest), so increasing linear
/// index is lexicographic order on multi-indices. Edges `t + 1/2 t_j` are
/// keyed by `(base vertex, axis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    extents: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
}

/// An elementary `k`-cell: a base vertex and `k` increasing axes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub base: usize,
    pub axes: Vec<usize>,
}

impl Lattice {
    pub fn new(extents: &[usize]) -> Result<Self, NetError> {
        if extents.is_empty() || extents.contains(&0) {
            return Err(NetError::Extents(extents.to_vec()));
        }
        let mut strides = vec![1usize; extents.len()];
        for k in (0..extents.len() - 1).rev() {
            strides[k] = strides[k + 1]
                .checked_mul(extents[k + 1])
                .ok_or_else(|| NetError::Extents(extents.to_vec()))?;
        }
        let len = strides[0]
            .checked_mul(extents[0])
            .ok_or_else(|| NetError::Extents(extents.to_vec()))?;
        Ok(Self {
            extents: extents.to_vec(),
            strides,
            len,
        })
    }

    pub fn dim(&self) -> usize {
        self.extents.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn index(&self, t: &[usize]) -> Option<usize> {
        if t.len() != self.dim() || t.iter().zip(&self.extents).any(|(&x, &e)| x >= e) {
            return None;
        }
        Some(t.iter().zip(&self.strides).map(|(&x, &s)| x * s).sum())
    }

    pub fn multi_index(&self, idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .zip(&self.extents)
            .map(|(&s, &e)| (idx / s) % e)
            .collect()
    }

    pub fn coord(&self, idx: usize, axis: usize) -> usize {
        (idx / self.strides[axis]) % self.extents[axis]
    }

    /// `t + t_axis`, if inside the box.
    pub fn step(&self, idx: usize, axis: usize) -> Option<usize> {
        (self.coord(idx, axis) + 1 < self.extents[axis]).then(|| idx + self.strides[axis])
    }

    /// `t - t_axis`, if inside the box.
    pub fn step_back(&self, idx: usize, axis: usize) -> Option<usize> {
        (self.coord(idx, axis) > 0).then(|| idx - self.strides[axis])
    }

    /// Slot of edge `(base, axis)` in an [`EdgeField`].
    pub fn edge_slot(&self, base: usize, axis: usize) -> usize {
        base * self.dim() + axis
    }

    pub fn has_edge(&self, base: usize, axis: usize) -> bool {
        self.step(base, axis).is_some()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len).flat_map(move |v| (0..self.dim()).filter(move |&j| self.has_edge(v, j)).map(move |j| (v, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// All elementary `k`-cells, ordered by base vertex then by axis set.
    pub fn cells(&self, k: usize) -> Vec<Cell> {
        let axis_sets = combinations(self.dim(), k);
        let mut out = Vec::new();
        for base in 0..self.len {
            for axes in &axis_sets {
                if axes.iter().all(|&a| self.has_edge(base, a)) {
                    out.push(Cell {
                        base,
                        axes: axes.clone(),
                    });
                }
            }
        }
        out
    }

    /// Vertices of a cell; bit `b` of the position selects a step along `axes[b]`.
    pub fn cell_vertices(&self, cell: &Cell) -> Vec<usize> {
        (0..1usize << cell.axes.len())
            .map(|mask| {
                cell.axes
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &a)| self.strides[a])
                    .sum::<usize>()
                    + cell.base
            })
            .collect()
    }

    /// The `2k` edges of an elementary cell's 1-skeleton that leave its base
    /// and the ones that don't, as `(base, axis)` pairs.
    pub fn cell_edges(&self, cell: &Cell) -> Vec<(usize, usize)> {
        let verts = self.cell_vertices(cell);
        let mut out = Vec::new();
        for (mask, &v) in verts.iter().enumerate() {
            for (b, &a) in cell.axes.iter().enumerate() {
                if mask >> b & 1 == 0 {
                    out.push((v, a));
                }
            }
        }
        out
    }
}

/// Increasing `k`-subsets of `0..m` in lexicographic order.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        rec(0, m, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Per-edge storage indexed by [`Lattice::edge_slot`].
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeField<T> {
    m: usize,
    data: Vec<Option<T>>,
}

impl<T: Clone> EdgeField<T> {
    pub fn new(lattice: &Lattice) -> Self {
        Self {
            m: lattice.dim(),
            data: vec![None; lattice.len() * lattice.dim()],
        }
    }

    pub fn get(&self, base: usize, axis: usize) -> Option<&T> {
        self.data.get(base * self.m + axis).and_then(Option::as_ref)
    }

    pub fn set(&mut self, base: usize, axis: usize, value: T) {
        self.data[base * self.m + axis] = Some(value);
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), &T)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter_map(move |(slot, v)| v.as_ref().map(|v| ((slot / self.m, slot % self.m), v)))
    }

    pub fn count(&self) -> usize {
        self.data.iter().filter(|v| v.is_some()).count()
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> EdgeField<U> {
        EdgeField {
            m: self.m,
            data: self.data.iter().map(|v| v.as_ref().map(&f)).collect(),
        }
    }
}
