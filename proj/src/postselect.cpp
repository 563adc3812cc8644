#include "qpair/postselect.hpp"

#include <cmath>

#include <Eigen/SVD>

namespace qpair {

namespace {

SourceOperator make_reset(const EmissionGeometry& geom, Polarization lambda,
                          const SourcePairConfig& cfg,
                          PhaseConvention convention, Parity parity) {
    if (convention == PhaseConvention::OnCondition) {
        return reset_operator_on_condition(geom, lambda, cfg, parity);
    }
    return reset_operator({geom, lambda}, cfg);
}

constexpr Polarization kPols[2] = {Polarization::Plus, Polarization::Minus};

/// Fixes the global phase so the largest-modulus entry is real positive.
template <typename Vec>
void canonicalize_phase(Vec& v) {
    int imax = 0;
    double best = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > best) {
            best = std::abs(v(i));
            imax = i;
        }
    }
    if (best > 0.0) v *= std::conj(v(imax)) / std::abs(v(imax));
}

}  // namespace

double TwoPhotonRecord::total_density() const {
    double d = 0.0;
    for (const auto& row : amplitudes) {
        for (const auto& amp : row) d += amp.squaredNorm();
    }
    return d;
}

TwoPhotonRecord two_photon_amplitudes(const EmissionGeometry& geom_x,
                                      const EmissionGeometry& geom_y,
                                      double t1, double t2,
                                      const SourcePairConfig& cfg) {
    return two_photon_amplitudes(geom_x, geom_y, t1, t2, cfg,
                                 PhaseConvention::FromGeometry, Parity::Plus,
                                 Parity::Minus);
}

TwoPhotonRecord two_photon_amplitudes(const EmissionGeometry& geom_x,
                                      const EmissionGeometry& geom_y,
                                      double t1, double t2,
                                      const SourcePairConfig& cfg,
                                      PhaseConvention convention,
                                      Parity parity_x, Parity parity_y) {
    if (t1 < 0.0 || t2 < t1) {
        throw ConfigError("two_photon_amplitudes: need 0 <= t1 <= t2");
    }
    TwoPhotonRecord rec;
    rec.first_geom = geom_x;
    rec.second_geom = geom_y;
    rec.t1 = t1;
    rec.t2 = t2;
    const SourceState evolved = apply_ucond(t1, cfg, cfg.initial_state);
    for (int a = 0; a < 2; ++a) {
        const SourceOperator rx =
            make_reset(geom_x, kPols[a], cfg, convention, parity_x);
        const SourceState after_first =
            apply_ucond(t2 - t1, cfg, rx * evolved);
        for (int b = 0; b < 2; ++b) {
            const SourceOperator ry =
                make_reset(geom_y, kPols[b], cfg, convention, parity_y);
            rec.amplitudes[a][b] = ry * after_first;
        }
    }
    return rec;
}

PairOutcome conditional_pair_state(const EmissionGeometry& geom_a,
                                   const EmissionGeometry& geom_b, double t1,
                                   double t2, const SourcePairConfig& cfg,
                                   PhaseConvention convention) {
    if (std::abs(cfg.initial_state(basis_index(2, 2))) < 1e-14) {
        throw ZeroAmplitudeError(
            "conditional_pair_state: initial state has no |22> component");
    }
    // Alice (Plus condition) detects first, Bob (Minus condition) second.
    const TwoPhotonRecord rec = two_photon_amplitudes(
        geom_a, geom_b, t1, t2, cfg, convention, Parity::Plus, Parity::Minus);

    // Rows ordered (B+,A+), (B+,A-), (B-,A+), (B-,A-).
    Eigen::Matrix<Complex, 4, kDim> coeff;
    for (int b = 0; b < 2; ++b) {
        for (int a = 0; a < 2; ++a) {
            coeff.row(2 * b + a) = rec.amplitude(kPols[a], kPols[b]).transpose();
        }
    }
    const double total = coeff.squaredNorm();
    if (!(total > 0.0)) {
        throw ZeroAmplitudeError("conditional_pair_state: vanishing amplitude");
    }

    Eigen::JacobiSVD<Eigen::Matrix<Complex, 4, kDim>> svd(
        coeff, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    PairOutcome out;
    out.schmidt_residual = sv(1) / sv(0);
    if (out.schmidt_residual > 1e-9) {
        throw FactorizationError(
            "conditional_pair_state: two-photon state does not factorize "
            "(detector placement condition violated), residual " +
            std::to_string(out.schmidt_residual));
    }
    out.pair = svd.matrixU().col(0);
    out.source = svd.matrixV().col(0).conjugate();
    // Rotate the joint phase into the pair factor, then canonicalize both.
    canonicalize_phase(out.source);
    canonicalize_phase(out.pair);
    out.prob_density = total;
    return out;
}

PhotonPairState analytic_pair_state(double theta, double phi) {
    const double c = std::cos(theta);
    const double norm = 2.0 * std::sqrt(1.0 + c * c);
    PhotonPairState s;
    s(0) = (1.0 - c) * std::exp(Complex(0, 2.0 * phi)) / norm;   // B+,A+
    s(1) = (1.0 + c) / norm;                                     // B+,A-
    s(2) = -(1.0 + c) / norm;                                    // B-,A+
    s(3) = -(1.0 - c) * std::exp(Complex(0, -2.0 * phi)) / norm; // B-,A-
    return s;
}

double order_symmetry_check(const EmissionGeometry& geom_a,
                            const EmissionGeometry& geom_b, double t1,
                            double t2, const SourcePairConfig& cfg,
                            PhaseConvention convention) {
    const TwoPhotonRecord ab = two_photon_amplitudes(
        geom_a, geom_b, t1, t2, cfg, convention, Parity::Plus, Parity::Minus);
    const TwoPhotonRecord ba = two_photon_amplitudes(
        geom_b, geom_a, t1, t2, cfg, convention, Parity::Minus, Parity::Plus);
    // Compare on the detector-labeled (lambda_B, lambda_A) grid.
    double dist2 = 0.0;
    for (int b = 0; b < 2; ++b) {
        for (int a = 0; a < 2; ++a) {
            dist2 += (ab.amplitude(kPols[a], kPols[b]) -
                      ba.amplitude(kPols[b], kPols[a]))
                         .squaredNorm();
        }
    }
    return std::sqrt(dist2);
}

}  // namespace qpair
