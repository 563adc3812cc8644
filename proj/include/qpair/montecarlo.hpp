#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qpair/efficiency.hpp"
#include "qpair/jump.hpp"

namespace qpair {

/// One quantum jump of a sampled trajectory.
struct EmissionEvent {
    double time = 0.0;  ///< emission time since cycle start
    EmissionGeometry geometry;
    Polarization polarization = Polarization::Plus;
    SourceState post_state;  ///< normalized state right after the jump
};

struct TrajectoryResult {
    std::vector<EmissionEvent> events;  ///< times strictly increasing
    SourceState final_state;
    std::uint64_t rng_seed = 0;
};

/// Samples one quantum-jump trajectory from cfg.initial_state.
///
/// Waiting times are drawn by inverse transform on the exact survival
/// function S(t) = ||U_cond(t)|phi>||^2 (a mixture of exponentials, solved
/// by bracketed bisection); the jump channel (k, lambda) is drawn from the
/// emission density by rejection sampling with the constant envelope
/// M = (3/(2 pi)) max(gamma0, gamma1) * 4 per polarization channel.
/// Throws EnvelopeViolation if any proposal density exceeds M.
TrajectoryResult sample_trajectory(const SourcePairConfig& cfg,
                                   std::uint64_t seed, double t_max);

/// Empirical counterpart of the pair collection probability.
struct CoincidenceStats {
    long n_cycles = 0;
    long n_pairs_in_cones = 0;  ///< cycles with one photon in each cone
    /// counts over (lambda_B, lambda_A), order (B+,A+),(B+,A-),(B-,A+),(B-,A-)
    std::array<long, 4> pol_counts{0, 0, 0, 0};
    double estimated_p = 0.0;
    double std_error = 0.0;  ///< binomial standard error of estimated_p
};

/// One detection event of a cycle, in stream form.
struct CycleEvent {
    double time = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    Polarization polarization = Polarization::Plus;
    char detector = 'n';  ///< 'A', 'B' or 'n' (neither cone)
};

struct CycleRecord {
    long cycle = 0;
    std::vector<CycleEvent> events;
    SourceState final_state;
};

struct CampaignResult {
    CoincidenceStats stats;
    std::vector<CycleRecord> records;  ///< ordered by cycle index
};

/// Runs n_cycles independent trajectories from cfg.initial_state with
/// detector cones of solid angle win.domega_a around z (Alice) and
/// win.domega_b around (win.theta_b, win.phi_b) (Bob), and counts cone
/// coincidences and their polarization outcomes.
///
/// Cone centers must satisfy their placement conditions within residual
/// 1e-9 (ConfigError otherwise).  Cycle c uses a seed derived from (seed,
/// c), so results are independent of n_threads; records are merged in
/// cycle order.
CampaignResult run_campaign(const SourcePairConfig& cfg,
                            const CollectionWindow& win, long n_cycles,
                            std::uint64_t seed, int n_threads = 1,
                            bool keep_records = true);

CoincidenceStats estimate_pair_statistics(const SourcePairConfig& cfg,
                                          const CollectionWindow& win,
                                          long n_cycles, std::uint64_t seed,
                                          int n_threads = 1);

/// One sampled coincidence, conditioned on one photon in each cone.
struct ConditionedSample {
    Polarization pol_a = Polarization::Plus;
    Polarization pol_b = Polarization::Plus;
    double t1 = 0.0;
    double t2 = 0.0;
    double theta_a = 0.0, phi_a = 0.0;
    double theta_b = 0.0, phi_b = 0.0;
    SourceState post_state;  ///< normalized source state after both jumps
};

/// Direct sampler of the coincidence-conditioned law: detector directions
/// are rejection-sampled within the cones from the exact two-photon
/// density (faithful positional phases), then order, polarizations and
/// times from their conditional distributions.  This is how polarization
/// statistics are accumulated in the small-cone limit, where raw cycles
/// almost never produce a coincidence.
std::vector<ConditionedSample> sample_cone_coincidences(
    const SourcePairConfig& cfg, const CollectionWindow& win, long n_samples,
    std::uint64_t seed);

/// A detector click on the shared absolute time axis of a cycle stream.
struct DetectorClick {
    long cycle = 0;
    char detector = 'n';
    double abs_time = 0.0;
};

struct WindowReport {
    long paired = 0;      ///< A-B click pairs within the same delta_t window
    long accidental = 0;  ///< cross-cycle pairs within delta_t
    std::vector<std::string> warnings;
};

/// Coincidence-window bookkeeping over a stream of cycle-stamped clicks.
/// Emits warnings (but still counts) unless 1/(G0+G1) << delta_t << t_rep.
WindowReport coincidence_window_analysis(const std::vector<DetectorClick>& clicks,
                                         double delta_t, double t_rep,
                                         const SourcePairConfig& cfg);

/// Flattens campaign records into clicks on the absolute time axis, cycle
/// period t_rep.  Only events inside a detector cone produce clicks.
std::vector<DetectorClick> clicks_from_records(
    const std::vector<CycleRecord>& records, double t_rep);

/// CSV event stream, one row per emission:
/// cycle_index,time,theta,phi,polarization,detector
void write_event_csv(std::ostream& os, const std::vector<CycleRecord>& records);
std::vector<CycleRecord> read_event_csv(std::istream& is);

}  // namespace qpair
