#include "qpair/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace qpair {

EmissionGeometry geometry_from_spherical(double theta, double phi) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double sp = std::sin(phi), cp = std::cos(phi);
    EmissionGeometry g;
    g.theta = theta;
    g.phi = phi;
    g.direction = Eigen::Vector3d(st * cp, st * sp, ct);
    const Complex ph = std::exp(Complex(0, phi));
    g.eps_plus = ph / std::sqrt(2.0) *
                 Eigen::Vector3cd(Complex(ct * cp, -sp), Complex(ct * sp, cp),
                                  Complex(-st, 0));
    g.eps_minus = g.eps_plus.conjugate();
    return g;
}

double condition_residual(double k0d, double cos_alpha, Parity parity) {
    const Complex lhs = std::exp(Complex(0, -k0d * cos_alpha / 2.0));
    const Complex rhs = std::exp(Complex(0, +k0d * cos_alpha / 2.0));
    const double s = parity == Parity::Plus ? 1.0 : -1.0;
    return std::abs(lhs - s * rhs);
}

double condition_residual(const EmissionGeometry& geom,
                          const SourcePairConfig& cfg, Parity parity) {
    return condition_residual(cfg.k0d, geom.cos_alpha(), parity);
}

std::vector<DetectorRing> find_detector_rings(const SourcePairConfig& cfg,
                                              Parity parity, double tol) {
    if (!(tol > 0.0)) {
        throw ConfigError("find_detector_rings: tol must be positive");
    }
    std::vector<DetectorRing> rings;
    const double k0d = cfg.k0d;
    if (k0d <= 0.0) {
        return rings;
    }
    // k0d cos(a) = m pi with m even (Plus) or odd (Minus).
    const int m_max = static_cast<int>(std::floor(k0d / kPi));
    for (int m = -m_max; m <= m_max; ++m) {
        const bool even = (m % 2) == 0;
        if (even != (parity == Parity::Plus)) continue;
        const double cos_alpha = m * kPi / k0d;
        if (std::abs(cos_alpha) > 1.0) continue;
        const double res = condition_residual(k0d, cos_alpha, parity);
        if (res <= tol) {
            rings.push_back({parity, cos_alpha, res});
        }
    }
    std::sort(rings.begin(), rings.end(),
              [](const DetectorRing& a, const DetectorRing& b) {
                  return a.cos_alpha < b.cos_alpha;
              });
    return rings;
}

double theta_on_ring(double cos_alpha, double phi) {
    const double cp = std::cos(phi);
    if (std::abs(cp) < std::abs(cos_alpha)) {
        throw ConfigError("theta_on_ring: no solution at this azimuth");
    }
    if (cos_alpha == 0.0) return 0.0;  // the z axis lies on the cone
    return std::asin(cos_alpha / cp);
}

}  // namespace qpair
