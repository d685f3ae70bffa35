//! Lattices, discrete spin frames and the Ribaucour pairs of circular nets
//! they generate.

mod audit;
mod cells;
mod lattice;
mod pair;
mod reconstruct;
mod residuals;

pub use audit::{audit, FaceFailure, NetAudit};
pub use cells::{cell_sphere_check, congruence_residual, ribaucour_congruence, CellNets, CellSphereReport};
pub use lattice::{combinations, Cell, EdgeField, Lattice};
pub use pair::{
    edge_sphere, edge_sphere_with_residual, edge_vector_between, nets_from_frames, null_components, propagate_frame,
    step_by_sphere, PairNet,
};
pub use reconstruct::{
    frame_from_edge_spheres, frame_residual, gauge_sign, orient_edge_spheres, origin_frame, reconstruct,
    recover_edge_sphere, recover_edge_sphere_with_tol, recover_edge_spheres,
};
pub use residuals::{
    edge_cross_ratio_closed_form, face_cross_ratio_closed_form, mc_residual_face, mc_residual_spheres, Residual,
    SphereFaceCheck,
};
