#include "qpair/measures.hpp"

#include <algorithm>
#include <cmath>

namespace qpair {

double pure_state_concurrence(const PhotonPairState& pair) {
    if (std::abs(pair.norm() - 1.0) > 1e-9) {
        throw NormalizationError(
            "pure_state_concurrence: pair state must be unit norm");
    }
    // basis order (B+,A+), (B+,A-), (B-,A+), (B-,A-)
    const double c = 2.0 * std::abs(pair(0) * pair(3) - pair(1) * pair(2));
    return std::min(c, 1.0);
}

namespace {
double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}
}  // namespace

EntanglementReport entanglement_of_formation(const PhotonPairState& pair) {
    EntanglementReport rep;
    rep.concurrence = pure_state_concurrence(pair);
    rep.p_mix =
        0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - rep.concurrence * rep.concurrence)));
    rep.ef = binary_entropy(rep.p_mix);
    return rep;
}

SectorWeights dicke_sector_overlap(const SourceState& state) {
    SectorWeights w;
    for (int i1 = 0; i1 < kLevels; ++i1) {
        w.symmetric += std::norm(state(basis_index(i1, i1)));
        for (int i2 = i1 + 1; i2 < kLevels; ++i2) {
            const Complex sym = (state(basis_index(i1, i2)) +
                                 state(basis_index(i2, i1))) / std::sqrt(2.0);
            const Complex anti = (state(basis_index(i1, i2)) -
                                  state(basis_index(i2, i1))) / std::sqrt(2.0);
            w.symmetric += std::norm(sym);
            w.antisymmetric += std::norm(anti);
        }
    }
    return w;
}

}  // namespace qpair
