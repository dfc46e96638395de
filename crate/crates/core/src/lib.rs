#![no_std]
extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod error;
pub mod exact;
pub mod orbit;
pub mod pa;
pub mod rr;
pub mod theta;
pub mod tropicalize;

pub use error::{CoreError, Result};
pub use exact::{int, parse_rational, rat, ChiClass, HpScalar, Integer, Prime, Rational};
pub use pa::{legendre_from_polygon, Germ, IntPolygon, MaxPlus, PaFunction};
pub use rr::{continuous_dim, dim_top_e, gamma_coords, in_e, in_h0, p_norm, phi_generators, rr_check, sigma, simplex_inverse, simplex_map, ContinuousDim, DimLevel, DimMode, RrReport};
pub use orbit::{canonical_class, canonical_point, solve_divisor, CpFunction, Divisor};
pub use theta::{big_theta_eval, big_theta_window, theta_decompose, theta_eval, theta_reconstruct, theta_window, ThetaDatum, ThetaDecomposition};
pub use tropicalize::{jensen_zero_locate, mul_series, scale_series, trop_complex, trop_padic, trop_slope, trop_zeros, ComplexPoly, TropicalZero, ValuedSeries};
