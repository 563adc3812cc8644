#pragma once

#include <complex>

#include <Eigen/Dense>

#include "qpair/errors.hpp"

namespace qpair {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Two Lambda-type sources, each with levels {0, 1, 2}.  The joint internal
// space is 9-dimensional with basis |i1 i2> at index 3*i1 + i2.
inline constexpr int kLevels = 3;
inline constexpr int kDim = 9;

using SourceState = Eigen::Matrix<Complex, kDim, 1>;
using SourceOperator = Eigen::Matrix<Complex, kDim, kDim>;

// Photon pair amplitudes over the ordered polarization basis
// (B+,A+), (B+,A-), (B-,A+), (B-,A-).
using PhotonPairState = Eigen::Matrix<Complex, 4, 1>;

constexpr int basis_index(int i1, int i2) { return kLevels * i1 + i2; }

/// |i1 i2>
SourceState basis_state(int i1, int i2);

enum class DickeKind { Symmetric, Antisymmetric };

/// (|ij> + |ji>)/sqrt(2) for Symmetric, (|ij> - |ji>)/sqrt(2) for
/// Antisymmetric.  Requires i != j.
SourceState dicke_state(DickeKind kind, int i, int j);

/// Hermitian inner product <a|b>, conjugate-linear in the first argument.
inline Complex inner_product(const SourceState& a, const SourceState& b) {
    return a.dot(b);
}

/// |<a|b>|^2 for unit vectors: state overlap ignoring global phase.
inline double fidelity(const SourceState& a, const SourceState& b) {
    return std::norm(a.dot(b));
}

inline double fidelity(const PhotonPairState& a, const PhotonPairState& b) {
    return std::norm(a.dot(b));
}

/// Expectation of the excitation-number operator (count of sources in
/// level 2) in a unit-normalized state.
double excitation_expectation(const SourceState& state);

/// Physical parameters of the source pair.
///
/// The coordinate frame is fixed: x along the line connecting the sources,
/// z the quantization axis.  The sources sit at +-(d/2) x, so positions
/// enter all formulas only through the dimensionless product k0d.
struct SourcePairConfig {
    double gamma0 = 1.0;  ///< decay rate of the 2-0 transition
    double gamma1 = 1.0;  ///< decay rate of the 2-1 transition
    double k0d = 2.0 * kPi;  ///< wavenumber times source separation

    Eigen::Vector3cd dipole20{Complex(1, 0) / std::sqrt(2.0),
                              Complex(0, 1) / std::sqrt(2.0), 0.0};
    Eigen::Vector3cd dipole21{Complex(1, 0) / std::sqrt(2.0),
                              Complex(0, -1) / std::sqrt(2.0), 0.0};

    SourceState initial_state = basis_state(2, 2);

    double gamma_total() const { return gamma0 + gamma1; }

    /// Throws ConfigError on any invariant violation.
    void validate() const;
};

}  // namespace qpair
