//! Exact computations for split Kac-Moody theory: root data, the integral divided-power
//! enveloping algebra, pro-unipotent group filtrations, and affine apartment geometry.

pub mod apartment;
pub mod demo;
pub mod envalg;
pub mod groupfilt;
pub mod io;
pub mod linalg;
pub mod loopsl2;
pub mod num;
pub mod poly;
pub mod rootdata;
