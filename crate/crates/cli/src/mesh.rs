//! Quad meshes of the coordinate surfaces of a net in `R^3`, one Wavefront
//! OBJ file per fixed lattice coordinate.

use std::fmt::Write as _;

use ribaucour::moebius::{project, ConformalPoint, Projected};
use ribaucour::net::Lattice;

use crate::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct Slice {
    /// File stem, e.g. `axis0_3` for the surface `t_0 = 3`.
    pub name: String,
    pub obj: String,
}

/// One slice per value of each axis of a 3-dimensional lattice, or the
/// whole net for `m = 2`. Vertices at infinity are dropped with the quads
/// around them.
pub fn coordinate_slices(lattice: &Lattice, points: &[ConformalPoint<f64>]) -> Result<Vec<Slice>, CliError> {
    let m = lattice.dim();
    if points.first().is_some_and(|p| p.algebra().n() != 3) {
        return Err(CliError::Input("mesh export needs nets in R^3".into()));
    }
    match m {
        2 => Ok(vec![slice(lattice, points, "net", &|_| true, (0, 1))]),
        3 => {
            let mut out = Vec::new();
            for axis in 0..3 {
                let (u, v) = match axis {
                    0 => (1, 2),
                    1 => (0, 2),
                    _ => (0, 1),
                };
                for c in 0..lattice.extents()[axis] {
                    let name = format!("axis{axis}_{c}");
                    out.push(slice(lattice, points, &name, &|idx| lattice.coord(idx, axis) == c, (u, v)));
                }
            }
            Ok(out)
        }
        _ => Err(CliError::Input(format!("mesh export needs a 2- or 3-dimensional lattice, found {m}"))),
    }
}

fn slice(lattice: &Lattice, points: &[ConformalPoint<f64>], name: &str, keep: &dyn Fn(usize) -> bool, (u, v): (usize, usize)) -> Slice {
    let mut obj = String::new();
    let _ = writeln!(obj, "# ribnet coordinate surface {name}");
    let mut number = vec![0usize; lattice.len()];
    let mut next = 1;
    for idx in (0..lattice.len()).filter(|&i| keep(i)) {
        match project(&points[idx]) {
            Projected::Finite(x) => {
                let _ = writeln!(obj, "v {} {} {}", x[0], x[1], x[2]);
                number[idx] = next;
                next += 1;
            }
            Projected::Infinity => {
                let _ = writeln!(obj, "# vertex {:?} at infinity", lattice.multi_index(idx));
            }
        }
    }
    for idx in (0..lattice.len()).filter(|&i| keep(i)) {
        let (Some(a), Some(d)) = (lattice.step(idx, u), lattice.step(idx, v)) else {
            continue;
        };
        let b = lattice.step(a, v).expect("face corner");
        let quad = [idx, a, b, d].map(|k| number[k]);
        if quad.iter().all(|&k| k > 0) {
            let _ = writeln!(obj, "f {} {} {} {}", quad[0], quad[1], quad[2], quad[3]);
        }
    }
    Slice { name: name.to_string(), obj }
}
