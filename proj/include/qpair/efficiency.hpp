#pragma once

#include "qpair/postselect.hpp"

namespace qpair {

/// Angular acceptance of the two detectors.  The pair probability is
/// density times window (point-direction approximation), so it is first
/// order in each solid angle.
struct CollectionWindow {
    double domega_a = 0.01;  ///< Alice's solid angle, steradians
    double domega_b = 0.01;  ///< Bob's solid angle, steradians
    double theta_b = 0.0;    ///< Bob's polar angle
    double phi_b = 0.0;      ///< Bob's azimuth

    void validate() const;
};

/// Quadrature parameters for the double-time integral, in the variables
/// (t1, tau = t2 - t1) on [0, T_max]^2.
struct QuadSpec {
    int n_t1 = 48;
    int n_tau = 48;
    double t_max_over_lifetime = 30.0;  ///< T_max in units of 1/(G0+G1)
    double tolerance = 1e-9;            ///< relative truncation tolerance

    double t_max(const SourcePairConfig& cfg) const {
        return t_max_over_lifetime / cfg.gamma_total();
    }
};

/// Closed-form two-photon collection probability:
///   P = (3/8pi)^2 (2 G0 G1/(G0+G1)^2) (1+cos^2 theta_b)
///       |<22|phi0>|^2  dOmega_A dOmega_B
double pair_probability_analytic(const SourcePairConfig& cfg,
                                 const CollectionWindow& win);

/// Same probability by numeric double-time quadrature of the two ordering
/// densities of the on-condition two-photon amplitudes.  Throws
/// QuadratureError if the exponential tail bound beyond T_max exceeds the
/// requested relative tolerance.
double pair_probability_numeric(const SourcePairConfig& cfg,
                                const CollectionWindow& win,
                                const QuadSpec& quad = {});

}  // namespace qpair
