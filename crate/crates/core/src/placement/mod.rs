//! Panel orientation and position optimization.

pub mod orientation;
pub mod plane;
pub mod search;

pub use orientation::{f_object, optimal_orientation, quasiconvexity_report, FixedSide, OptimalOrientation, QuasiconvexityReport};
pub use plane::{region_d, two_path_region_adjustment, PlaneScene, Point2, Polygon, RegionD, RegionKind};
pub use search::{
    box_slices, golden_section_max, position_search_3d, position_search_plane, sphere_slices, CandidateSource,
    PlacementObjective, PlacementResult, PlacementResult3d, PositionObjective, SceneObjective, SearchOptions,
};
