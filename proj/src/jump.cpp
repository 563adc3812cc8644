#include "qpair/jump.hpp"

#include <cmath>

#include "qpair/quadrature.hpp"

namespace qpair {

SourceOperator reset_operator_with_phases(const EmissionGeometry& geom,
                                          Polarization lambda,
                                          const SourcePairConfig& cfg,
                                          Complex phase1, Complex phase2) {
    SourceOperator op = SourceOperator::Zero();
    const Eigen::Vector3cd& eps = geom.eps(lambda);
    const double rates[2] = {cfg.gamma0, cfg.gamma1};
    const Eigen::Vector3cd dipoles[2] = {cfg.dipole20, cfg.dipole21};
    for (int j = 0; j < 2; ++j) {
        const Complex amp =
            std::sqrt(3.0 * rates[j] / (8.0 * kPi)) * dipoles[j].dot(eps);
        // source 1: (2, i2) -> (j, i2)
        for (int i2 = 0; i2 < kLevels; ++i2) {
            op(basis_index(j, i2), basis_index(2, i2)) += amp * phase1;
        }
        // source 2: (i1, 2) -> (i1, j)
        for (int i1 = 0; i1 < kLevels; ++i1) {
            op(basis_index(i1, j), basis_index(i1, 2)) += amp * phase2;
        }
    }
    return op;
}

SourceOperator reset_operator(const JumpContext& ctx,
                              const SourcePairConfig& cfg) {
    const double half = cfg.k0d * ctx.geometry.cos_alpha() / 2.0;
    return reset_operator_with_phases(ctx.geometry, ctx.polarization, cfg,
                                      std::exp(Complex(0, -half)),
                                      std::exp(Complex(0, +half)));
}

SourceOperator reset_operator_on_condition(const EmissionGeometry& geom,
                                           Polarization lambda,
                                           const SourcePairConfig& cfg,
                                           Parity parity) {
    if (parity == Parity::Plus) {
        return reset_operator_with_phases(geom, lambda, cfg, 1.0, 1.0);
    }
    return reset_operator_with_phases(geom, lambda, cfg, Complex(0, -1),
                                      Complex(0, 1));
}

SourceOperator conditional_hamiltonian(const SourcePairConfig& cfg) {
    SourceOperator h = SourceOperator::Zero();
    for (int i1 = 0; i1 < kLevels; ++i1) {
        for (int i2 = 0; i2 < kLevels; ++i2) {
            const int n = (i1 == 2 ? 1 : 0) + (i2 == 2 ? 1 : 0);
            h(basis_index(i1, i2), basis_index(i1, i2)) =
                Complex(0, -0.5) * cfg.gamma_total() * static_cast<double>(n);
        }
    }
    return h;
}

SourceOperator ucond(double t, const SourcePairConfig& cfg) {
    if (t < 0.0) throw ConfigError("ucond: t must be non-negative");
    SourceOperator u = SourceOperator::Zero();
    for (int i1 = 0; i1 < kLevels; ++i1) {
        for (int i2 = 0; i2 < kLevels; ++i2) {
            const int n = (i1 == 2 ? 1 : 0) + (i2 == 2 ? 1 : 0);
            u(basis_index(i1, i2), basis_index(i1, i2)) =
                std::exp(-0.5 * cfg.gamma_total() * n * t);
        }
    }
    return u;
}

SourceState apply_ucond(double t, const SourcePairConfig& cfg,
                        const SourceState& state) {
    if (t < 0.0) throw ConfigError("apply_ucond: t must be non-negative");
    SourceState out = state;
    const double g = cfg.gamma_total();
    for (int i1 = 0; i1 < kLevels; ++i1) {
        for (int i2 = 0; i2 < kLevels; ++i2) {
            const int n = (i1 == 2 ? 1 : 0) + (i2 == 2 ? 1 : 0);
            if (n > 0) out(basis_index(i1, i2)) *= std::exp(-0.5 * g * n * t);
        }
    }
    return out;
}

EmissionDensity emission_density(const SourceState& state,
                                 const EmissionGeometry& geom,
                                 const SourcePairConfig& cfg) {
    EmissionDensity d;
    d.plus = (reset_operator({geom, Polarization::Plus}, cfg) * state).squaredNorm();
    d.minus = (reset_operator({geom, Polarization::Minus}, cfg) * state).squaredNorm();
    return d;
}

double total_emission_rate(const SourceState& state,
                           const SourcePairConfig& cfg, int n_cos, int n_phi) {
    double rate = 0.0;
    for_each_sphere_node(n_cos, n_phi, [&](double theta, double phi, double w) {
        const EmissionGeometry geom = geometry_from_spherical(theta, phi);
        rate += w * emission_density(state, geom, cfg).total();
    });
    return rate;
}

}  // namespace qpair
