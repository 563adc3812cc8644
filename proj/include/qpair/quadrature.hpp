#pragma once

#include <cmath>
#include <utility>
#include <vector>

namespace qpair {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n);

    /// Rescaled copy for integration over [a, b].
    GaussLegendre mapped(double a, double b) const;
};

/// Deterministic product rule over the unit sphere: Gauss-Legendre in
/// cos(theta) times a uniform trapezoid (periodic, hence spectrally
/// accurate) grid in phi.  Calls f(theta, phi, weight) for every node;
/// the weights sum to 4 pi.
template <typename F>
void for_each_sphere_node(int n_cos, int n_phi, F&& f) {
    const GaussLegendre gl(n_cos);
    const double two_pi = 6.283185307179586476925286766559;
    const double dphi = two_pi / n_phi;
    for (int i = 0; i < n_cos; ++i) {
        const double theta = std::acos(gl.nodes[i]);
        for (int j = 0; j < n_phi; ++j) {
            f(theta, j * dphi, gl.weights[i] * dphi);
        }
    }
}

}  // namespace qpair
