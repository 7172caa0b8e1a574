//! Evolutoids, singular evolutoids sets and extended evolutoids fronts of
//! planar curves.

pub mod cli;
pub mod curve;
pub mod error;
pub mod evolutoid;
pub mod front;
pub mod gauss_bonnet;
pub mod geom;
pub mod io;
pub mod quadrature;
pub mod roots;
pub mod series;
pub mod ses;
pub mod trigpoly;

pub use curve::{Curve, JetSample, ParamCurve, SupportCurve};
pub use error::{Error, Result};
pub use geom::{Vec2, Vec3};
pub use trigpoly::{Period, TrigPoly};
