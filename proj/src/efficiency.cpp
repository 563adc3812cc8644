#include "qpair/efficiency.hpp"

#include <cmath>

#include "qpair/quadrature.hpp"

namespace qpair {

void CollectionWindow::validate() const {
    const double four_pi = 4.0 * kPi;
    if (!(domega_a > 0.0) || domega_a > four_pi || !(domega_b > 0.0) ||
        domega_b > four_pi) {
        throw ConfigError("CollectionWindow: solid angles must be in (0, 4pi]");
    }
}

double pair_probability_analytic(const SourcePairConfig& cfg,
                                 const CollectionWindow& win) {
    win.validate();
    const double pref = 3.0 / (8.0 * kPi);
    const double g = cfg.gamma_total();
    const double c = std::cos(win.theta_b);
    const double pop22 = std::norm(cfg.initial_state(basis_index(2, 2)));
    return pref * pref * (2.0 * cfg.gamma0 * cfg.gamma1 / (g * g)) *
           (1.0 + c * c) * pop22 * win.domega_a * win.domega_b;
}

double pair_probability_numeric(const SourcePairConfig& cfg,
                                const CollectionWindow& win,
                                const QuadSpec& quad) {
    win.validate();
    const double g = cfg.gamma_total();
    const double t_max = quad.t_max(cfg);
    if (t_max < 20.0 / g) {
        throw ConfigError("pair_probability_numeric: T_max below 20 lifetimes");
    }
    // Joint density from |22> decays at least as e^{-g (t1 + t2)}; bound the
    // truncated mass by the tail of that envelope relative to the full mass.
    const double tail = 2.0 * std::exp(-g * t_max);
    if (tail > quad.tolerance) {
        throw QuadratureError("pair_probability_numeric: truncation estimate " +
                              std::to_string(tail) + " exceeds tolerance");
    }

    const EmissionGeometry geom_a = geometry_from_spherical(0.0, 0.0);
    const EmissionGeometry geom_b =
        geometry_from_spherical(win.theta_b, win.phi_b);

    const GaussLegendre q1 = GaussLegendre(quad.n_t1).mapped(0.0, t_max);
    const GaussLegendre q2 = GaussLegendre(quad.n_tau).mapped(0.0, t_max);
    double integral = 0.0;
    for (int i = 0; i < quad.n_t1; ++i) {
        const double t1 = q1.nodes[i];
        for (int j = 0; j < quad.n_tau; ++j) {
            const double t2 = t1 + q2.nodes[j];
            const double dens_ab =
                two_photon_amplitudes(geom_a, geom_b, t1, t2, cfg,
                                      PhaseConvention::OnCondition,
                                      Parity::Plus, Parity::Minus)
                    .total_density();
            const double dens_ba =
                two_photon_amplitudes(geom_b, geom_a, t1, t2, cfg,
                                      PhaseConvention::OnCondition,
                                      Parity::Minus, Parity::Plus)
                    .total_density();
            integral += q1.weights[i] * q2.weights[j] * (dens_ab + dens_ba);
        }
    }
    return integral * win.domega_a * win.domega_b;
}

}  // namespace qpair
