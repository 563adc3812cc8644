#pragma once

#include <array>

#include "qpair/jump.hpp"

namespace qpair {

/// How positional phases enter the reset operators of a postselected
/// detection pair.
///
/// FromGeometry evaluates e^{-+i k0d (k.x)/2} literally for the supplied
/// directions; the factorization of the two-photon state then only holds
/// when the directions actually sit on the placement conditions for the
/// configured k0d.
///
/// OnCondition treats the detector labels as carrying the placement
/// condition exactly (Alice on a Plus cone, Bob on a Minus cone) and
/// substitutes the exact condition phases, so the spherical angles control
/// the polarization basis only.  This is the idealized-detector evaluation
/// behind the closed-form pair state, and is the default.
enum class PhaseConvention { FromGeometry, OnCondition };

/// Amplitudes after two detections: first with polarization lambda at X
/// (time t1), second with lambda' at Y (time t2).  Entry (lambda, lambda')
/// is the unnormalized source amplitude
///   R_{Y,lambda'} U(t2-t1) R_{X,lambda} U(t1) |phi0>.
/// The sum of squared norms over the table is the joint probability
/// density in (t1, t2, Omega_X, Omega_Y).
struct TwoPhotonRecord {
    EmissionGeometry first_geom;
    EmissionGeometry second_geom;
    double t1 = 0.0;
    double t2 = 0.0;
    /// indexed [lambda at first][lambda' at second], Plus = 0
    std::array<std::array<SourceState, 2>, 2> amplitudes;

    const SourceState& amplitude(Polarization first, Polarization second) const {
        return amplitudes[first == Polarization::Plus ? 0 : 1]
                         [second == Polarization::Plus ? 0 : 1];
    }

    double total_density() const;
};

/// Faithful (FromGeometry) two-photon amplitudes.  Rejects t2 < t1.
TwoPhotonRecord two_photon_amplitudes(const EmissionGeometry& geom_x,
                                      const EmissionGeometry& geom_y,
                                      double t1, double t2,
                                      const SourcePairConfig& cfg);

/// Same, with explicit phase handling; parities apply to (X, Y) in order
/// and are only used for PhaseConvention::OnCondition.
TwoPhotonRecord two_photon_amplitudes(const EmissionGeometry& geom_x,
                                      const EmissionGeometry& geom_y,
                                      double t1, double t2,
                                      const SourcePairConfig& cfg,
                                      PhaseConvention convention,
                                      Parity parity_x, Parity parity_y);

struct PairOutcome {
    PhotonPairState pair;     ///< unit norm, basis (B+,A+),(B+,A-),(B-,A+),(B-,A-)
    SourceState source;       ///< unit norm source factor
    double prob_density = 0;  ///< joint density of the postselected event
    double schmidt_residual = 0;  ///< second singular value / first
};

/// Postselected photon-pair state for one detection by Alice (Plus-type
/// placement, time t1) and one by Bob (Minus-type placement, time t2).
/// Verifies via Schmidt decomposition of the 4x9 coefficient matrix that
/// the state factorizes into photon pair x source state and returns both
/// factors.  Throws ZeroAmplitudeError if <22|phi0> = 0 and
/// FactorizationError if the relative second singular value exceeds 1e-9.
PairOutcome conditional_pair_state(
    const EmissionGeometry& geom_a, const EmissionGeometry& geom_b, double t1,
    double t2, const SourcePairConfig& cfg,
    PhaseConvention convention = PhaseConvention::OnCondition);

/// Closed-form pair state for Bob at (theta, phi) while Alice collects
/// along z:
///   [ (1+cos t)(|B+,A-> - |B-,A+>)
///     + (1-cos t)(e^{2ip}|B+,A+> - e^{-2ip}|B-,A->) ] / (2 sqrt(1+cos^2 t))
PhotonPairState analytic_pair_state(double theta, double phi);

/// Frobenius distance between the detector-labeled joint states of the two
/// detection orderings (Alice first vs Bob first).  Equals 0 (to rounding)
/// whenever the placement conditions hold.
double order_symmetry_check(
    const EmissionGeometry& geom_a, const EmissionGeometry& geom_b, double t1,
    double t2, const SourcePairConfig& cfg,
    PhaseConvention convention = PhaseConvention::OnCondition);

}  // namespace qpair
