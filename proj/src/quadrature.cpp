#include "qpair/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace qpair {

GaussLegendre::GaussLegendre(int n) {
    if (n < 1) throw std::invalid_argument("GaussLegendre: n must be >= 1");
    nodes.resize(n);
    weights.resize(n);
    // Newton iteration on P_n from the Chebyshev initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2 * k + 1) * x * p1 - k * p2) / (k + 1);
            }
            const double dp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        p0 = 1.0;
        p1 = 0.0;
        for (int k = 0; k < n; ++k) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2 * k + 1) * x * p1 - k * p2) / (k + 1);
        }
        const double dp = n * (x * p0 - p1) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

GaussLegendre GaussLegendre::mapped(double a, double b) const {
    GaussLegendre out(*this);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < out.nodes.size(); ++i) {
        out.nodes[i] = mid + half * nodes[i];
        out.weights[i] = half * weights[i];
    }
    return out;
}

}  // namespace qpair
