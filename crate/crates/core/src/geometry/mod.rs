//! Pointwise geometry of the space of triangles: membership, metric and
//! determinant, separating coordinates, effective potentials, curvature.

mod metric;
mod point;
mod potential;
mod wcoords;

pub use metric::{det_masses, heron_area_sq, mass_metric, metric_data, metric_upper, weighted_p_sum, MetricData};
pub use point::{in_configuration_space, sample_interior, Membership, TrianglePoint, PERMUTATIONS};
pub use potential::{effective_potential, effective_potential_masses, effective_potential_r, ricci_scalar};
pub use wcoords::{w1, w2, w_coords, WCoords};
