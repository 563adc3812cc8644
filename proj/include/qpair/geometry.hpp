#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qpair/source_space.hpp"

namespace qpair {

enum class Polarization { Plus, Minus };

/// Parity of the detector placement condition: Plus is the Alice-type
/// condition (equal positional phases at both sources), Minus the Bob-type
/// condition (opposite phases).
enum class Parity { Plus, Minus };

/// A propagation direction with its circular polarization basis.
struct EmissionGeometry {
    Eigen::Vector3d direction;   ///< unit wave vector k
    Eigen::Vector3cd eps_plus;   ///< polarization vector for "+"
    Eigen::Vector3cd eps_minus;  ///< componentwise conjugate of eps_plus
    double theta = 0.0;          ///< polar angle of k (from z)
    double phi = 0.0;            ///< azimuth of k

    const Eigen::Vector3cd& eps(Polarization lambda) const {
        return lambda == Polarization::Plus ? eps_plus : eps_minus;
    }

    /// cosine of the angle between k and the source axis x
    double cos_alpha() const { return direction.x(); }
};

/// Builds the geometry for spherical coordinates (theta, phi):
///   k    = (sin t cos p, sin t sin p, cos t)
///   eps+ = e^{ip} (cos t cos p - i sin p, cos t sin p + i cos p, -sin t)/sqrt(2)
///   eps- = conj(eps+)
/// Well defined for all angles, including theta = 0.
EmissionGeometry geometry_from_spherical(double theta, double phi);

/// |e^{-i k0d c/2} - s e^{+i k0d c/2}| with c = k.x and s = +1 (Plus) or
/// -1 (Minus).  Zero exactly when the placement condition holds.
double condition_residual(double k0d, double cos_alpha, Parity parity);

double condition_residual(const EmissionGeometry& geom,
                          const SourcePairConfig& cfg, Parity parity);

/// A cone of directions around the source axis on which one placement
/// condition holds.
struct DetectorRing {
    Parity parity;
    double cos_alpha;  ///< cosine of the cone opening angle to the x axis
    double residual;   ///< condition_residual at the exact solution
};

/// All cones solving k0d cos(a) = 2 pi n (Plus) or (2n+1) pi (Minus) with
/// |cos a| <= 1, sorted by cos_alpha ascending.  Rings whose cross-checked
/// residual exceeds tol are dropped.  An empty list is a valid return
/// (no Minus ring exists for k0d < pi).  For k0d = 0 the Plus condition is
/// direction-independent and no isolated ring is reported.
std::vector<DetectorRing> find_detector_rings(const SourcePairConfig& cfg,
                                              Parity parity, double tol);

/// Polar angle theta (at azimuth phi) of a direction on the cone
/// cos_alpha = k.x, i.e. solves sin(theta) cos(phi) = cos_alpha.
/// Throws ConfigError if |cos_alpha| > |cos(phi)|.
double theta_on_ring(double cos_alpha, double phi);

}  // namespace qpair
