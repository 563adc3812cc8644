#pragma once

#include "qpair/source_space.hpp"

namespace qpair {

/// Entanglement of a pure two-qubit photon state.
/// Invariants: ef is the binary entropy of p_mix, and
/// p_mix = (1 - sqrt(1 - concurrence^2)) / 2.
struct EntanglementReport {
    double concurrence = 0.0;  ///< in [0, 1]
    double p_mix = 0.0;        ///< in [0, 1/2]
    double ef = 0.0;           ///< entanglement of formation, in [0, 1]
};

/// C = 2 |a_{++} a_{--} - a_{+-} a_{-+}| for a unit-norm pair state.
/// Throws NormalizationError if the norm deviates from 1 by more than 1e-9.
double pure_state_concurrence(const PhotonPairState& pair);

/// Entanglement of formation derived from the concurrence, with
/// 0 log2 0 = 0 so product states report exactly 0.
EntanglementReport entanglement_of_formation(const PhotonPairState& pair);

struct SectorWeights {
    double symmetric = 0.0;     ///< weight on {s01, s02, s12, 00, 11, 22}
    double antisymmetric = 0.0; ///< weight on {a01, a02, a12}
};

/// Squared-norm projections onto the exchange-symmetric and antisymmetric
/// sectors; they sum to the squared norm of the input.
SectorWeights dicke_sector_overlap(const SourceState& state);

}  // namespace qpair
