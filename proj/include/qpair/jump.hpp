#pragma once

#include "qpair/geometry.hpp"
#include "qpair/source_space.hpp"

namespace qpair {

/// The (direction, polarization) pair indexing a reset operator.
struct JumpContext {
    EmissionGeometry geometry;
    Polarization polarization;
};

/// Reset operator with explicit positional phase factors for source 1 and
/// source 2.  The physical phases are e^{-i k0d c/2} and e^{+i k0d c/2};
/// idealized on-condition evaluation substitutes the exact condition
/// values instead.
SourceOperator reset_operator_with_phases(const EmissionGeometry& geom,
                                          Polarization lambda,
                                          const SourcePairConfig& cfg,
                                          Complex phase1, Complex phase2);

/// Reset operator for one emission channel.  ||R|phi>||^2 is the emission
/// probability density per unit time per steradian.
SourceOperator reset_operator(const JumpContext& ctx,
                              const SourcePairConfig& cfg);

/// Idealized reset operator for a detector sitting exactly on a placement
/// condition of the given parity: positional phases (1, 1) for Plus and
/// (e^{-i pi/2}, e^{+i pi/2}) for Minus.
SourceOperator reset_operator_on_condition(const EmissionGeometry& geom,
                                           Polarization lambda,
                                           const SourcePairConfig& cfg,
                                           Parity parity);

/// Diagonal non-Hermitian damping generator; entry on |i1 i2> is
/// -(i/2)(gamma0+gamma1) times the number of sources in level 2.
SourceOperator conditional_hamiltonian(const SourcePairConfig& cfg);

/// Closed-form no-jump propagator: |i1 i2> scaled by
/// e^{-(gamma0+gamma1) n_exc t / 2}.  Rejects t < 0.
SourceOperator ucond(double t, const SourcePairConfig& cfg);

/// Applies ucond(t) without forming the matrix.
SourceState apply_ucond(double t, const SourcePairConfig& cfg,
                        const SourceState& state);

struct EmissionDensity {
    double plus = 0.0;
    double minus = 0.0;
    double total() const { return plus + minus; }
};

/// ||R_{k,lambda}|phi>||^2 for both polarizations.
EmissionDensity emission_density(const SourceState& state,
                                 const EmissionGeometry& geom,
                                 const SourcePairConfig& cfg);

/// Sphere quadrature of the polarization-summed emission density on the
/// library's deterministic product grid.
double total_emission_rate(const SourceState& state,
                           const SourcePairConfig& cfg, int n_cos = 64,
                           int n_phi = 128);

}  // namespace qpair
