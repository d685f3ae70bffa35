//! Clifford-algebra kernel for Moebius geometry and an engine for discrete
//! Ribaucour pairs of circular nets.

pub mod cauchy;
pub mod clifford;
pub mod error;
pub mod moebius;
pub mod net;
pub mod sample;
pub mod scalar;
pub mod tolerance;

pub use clifford::{Algebra, Multivector, Parity, Versor};
pub use error::{AlgebraError, CompletionError, GeometryError, NetError};
pub use scalar::Scalar;

pub type Mv = Multivector<f64>;
pub type Mv32 = Multivector<f32>;
pub type Point = moebius::ConformalPoint<f64>;
pub type Point32 = moebius::ConformalPoint<f32>;
pub type Frame = Versor<f64>;
pub type Frame32 = Versor<f32>;
pub type Net = net::PairNet<f64>;
pub type Net32 = net::PairNet<f32>;
