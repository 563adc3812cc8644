#include "qpair/source_space.hpp"

#include <cmath>

namespace qpair {

namespace {
constexpr double kNormTol = 1e-12;
}

SourceState basis_state(int i1, int i2) {
    SourceState s = SourceState::Zero();
    s(basis_index(i1, i2)) = 1.0;
    return s;
}

SourceState dicke_state(DickeKind kind, int i, int j) {
    if (i == j) {
        throw ConfigError("dicke_state: levels must differ");
    }
    if (i < 0 || i >= kLevels || j < 0 || j >= kLevels) {
        throw ConfigError("dicke_state: level out of range");
    }
    const double sign = (kind == DickeKind::Symmetric) ? 1.0 : -1.0;
    SourceState s = (basis_state(i, j) + sign * basis_state(j, i)) / std::sqrt(2.0);
    return s;
}

double excitation_expectation(const SourceState& state) {
    double n = 0.0;
    for (int i1 = 0; i1 < kLevels; ++i1) {
        for (int i2 = 0; i2 < kLevels; ++i2) {
            const int exc = (i1 == 2 ? 1 : 0) + (i2 == 2 ? 1 : 0);
            n += exc * std::norm(state(basis_index(i1, i2)));
        }
    }
    return n;
}

void SourcePairConfig::validate() const {
    if (!(gamma0 > 0.0) || !(gamma1 > 0.0)) {
        throw ConfigError("decay rates must be positive");
    }
    if (!(k0d >= 0.0)) {
        throw ConfigError("k0d must be non-negative");
    }
    if (std::abs(dipole20.norm() - 1.0) > kNormTol ||
        std::abs(dipole21.norm() - 1.0) > kNormTol) {
        throw ConfigError("dipole vectors must be unit norm");
    }
    if (std::abs(initial_state.norm() - 1.0) > kNormTol) {
        throw ConfigError("initial state must be unit norm");
    }
}

}  // namespace qpair
