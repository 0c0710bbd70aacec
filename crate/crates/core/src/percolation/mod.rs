//! Monte-Carlo experiments on sealed squares, long edges, rare squares,
//! restricted cores and dependent site processes.

mod areas;
mod edges;
mod explore;
mod omega;
mod sealing;
mod sites;
mod squares;
mod stats;

pub use areas::{area_statistics, AreaStats, HISTOGRAM_BINS, HISTOGRAM_MAX};
pub use edges::{find_long_edges, long_edge_bound, long_edge_experiment, LongEdgeExperiment, LongEdgeTrial};
pub use explore::{
    core_components, peel_round_components, predecessor_radii, CoreComponents, RadiusSurvival,
};
pub use omega::{
    omega_experiment, omega_report, restricted_core_experiment, OmegaExperiment, OmegaReport, OmegaTrial,
    RestrictedCoreExperiment, Tiling,
};
pub use sealing::{
    is_sealed, net_sealed, sealed_bound, sealed_independence_trial, sealed_probability_experiment, IndependenceTrial, SealedExperiment, SealedTrial,
    SealingCheck, UncoveredSegment,
};
pub use sites::{
    p0_threshold, path_count_bound, sample_site_process, site_process_components, site_process_from_points, SitePredicate, SiteProcess,
};
pub use squares::{classify_square, classify_square_brute, CliqueCover, SquareClass};
pub use stats::{Estimate, Z95, Z99};

/// Runs `f` for every trial index, in parallel when the `parallel` feature
/// is on. Results keep trial order.
pub(crate) fn run_trials<T: Send>(trials: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..trials).map(f).collect()
    }
}
