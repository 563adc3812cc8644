#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qpair/postselect.hpp"

using namespace qpair;

namespace {

const SourceState kA01 = dicke_state(DickeKind::Antisymmetric, 0, 1);

EmissionGeometry alice() { return geometry_from_spherical(0.0, 0.0); }

}  // namespace

TEST_CASE("coincident detection along the axis yields the singlet pair") {
    SourcePairConfig cfg;
    const PairOutcome out = conditional_pair_state(
        alice(), geometry_from_spherical(0.0, 0.0), 0.4, 0.9, cfg);
    // (|B+,A-> - |B-,A+>)/sqrt(2): same-helicity components vanish
    CHECK(std::abs(out.pair(0)) < 1e-14);
    CHECK(std::abs(out.pair(3)) < 1e-14);
    CHECK(std::abs(std::abs(out.pair(1)) - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(out.pair(1) + out.pair(2)) < 1e-14);  // opposite signs
    CHECK(fidelity(out.pair, analytic_pair_state(0.0, 0.0)) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(out.schmidt_residual < 1e-12);
}

TEST_CASE("sources land in the antisymmetric ground superposition") {
    SourcePairConfig cfg;
    cfg.gamma0 = 1.4;
    cfg.gamma1 = 0.9;
    for (double theta : {0.0, 0.5, 1.1}) {
        const PairOutcome out = conditional_pair_state(
            alice(), geometry_from_spherical(theta, 0.7), 0.1, 0.8, cfg);
        CHECK(fidelity(out.source, kA01) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("joint density decays exponentially in the detection times") {
    SourcePairConfig cfg;
    cfg.gamma0 = 1.2;
    cfg.gamma1 = 0.5;
    const double g = cfg.gamma_total();
    const EmissionGeometry bob = geometry_from_spherical(0.6, 0.2);
    const PairOutcome ref = conditional_pair_state(alice(), bob, 0.0, 0.0, cfg);
    for (auto [t1, t2] : {std::pair{0.3, 0.7}, std::pair{1.1, 2.5}}) {
        const PairOutcome out =
            conditional_pair_state(alice(), bob, t1, t2, cfg);
        CHECK(out.prob_density ==
              doctest::Approx(ref.prob_density * std::exp(-g * (t1 + t2)))
                  .epsilon(1e-12));
        // the normalized factors do not depend on the times
        CHECK(fidelity(out.pair, ref.pair) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(fidelity(out.source, ref.source) ==
              doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("numeric pair state matches the closed form on an angle grid") {
    SourcePairConfig cfg;
    for (double theta : {0.0, 0.3, M_PI / 6, 1.0, M_PI / 2, 2.2, 2.9}) {
        for (double phi : {0.0, 0.8, 2.0, 4.9}) {
            const PairOutcome out = conditional_pair_state(
                alice(), geometry_from_spherical(theta, phi), 0.2, 0.6, cfg);
            CHECK(fidelity(out.pair, analytic_pair_state(theta, phi)) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("closed-form pair state special values") {
    // theta = pi/2: equal weights, a manifest product state
    const PhotonPairState s = analytic_pair_state(M_PI / 2, 0.0);
    PhotonPairState expected;
    expected << 0.5, 0.5, -0.5, -0.5;
    CHECK(fidelity(s, expected) == doctest::Approx(1.0).epsilon(1e-13));
    // azimuth enters only through phases on the same-helicity components
    const PhotonPairState t = analytic_pair_state(1.0, 0.9);
    const PhotonPairState t0 = analytic_pair_state(1.0, 0.0);
    CHECK(std::abs(std::abs(t(0)) - std::abs(t0(0))) < 1e-14);
    CHECK(std::abs(t(1) - t0(1)) < 1e-14);
    CHECK(std::abs(t(0) / t0(0) - std::exp(Complex(0, 2 * 0.9))) < 1e-13);
    CHECK(std::abs(s.norm() - 1.0) < 1e-14);
}

TEST_CASE("detection order does not matter on the placement conditions") {
    SourcePairConfig cfg;
    cfg.gamma0 = 0.9;
    cfg.gamma1 = 1.3;
    const EmissionGeometry bob = geometry_from_spherical(0.8, 1.9);
    CHECK(order_symmetry_check(alice(), bob, 0.3, 1.1, cfg) < 1e-13);
    // The symmetry is structural: each detection lowers a different source
    // and the damping only counts excitations, so it survives literal
    // off-condition phases too.
    cfg.k0d = 5.1;
    CHECK(order_symmetry_check(alice(), bob, 0.3, 1.1, cfg,
                               PhaseConvention::FromGeometry) < 1e-13);
}

TEST_CASE("literal phases on the placement rings reproduce the ideal state") {
    SourcePairConfig cfg;  // k0d = 2 pi
    // Alice's cone center (theta = 0) lies on the cos(a) = 0 Plus ring;
    // Bob at theta = pi/6, phi = 0 lies on the cos(a) = 1/2 Minus ring.
    const EmissionGeometry bob = geometry_from_spherical(M_PI / 6, 0.0);
    REQUIRE(condition_residual(bob, cfg, Parity::Minus) < 1e-12);
    const PairOutcome literal = conditional_pair_state(
        alice(), bob, 0.2, 0.7, cfg, PhaseConvention::FromGeometry);
    const PairOutcome ideal = conditional_pair_state(
        alice(), bob, 0.2, 0.7, cfg, PhaseConvention::OnCondition);
    CHECK(fidelity(literal.pair, ideal.pair) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fidelity(literal.source, ideal.source) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(literal.schmidt_residual < 1e-12);
}

TEST_CASE("off the rings the joint state does not factorize") {
    SourcePairConfig cfg;
    const EmissionGeometry bob = geometry_from_spherical(0.4, 0.0);
    REQUIRE(condition_residual(bob, cfg, Parity::Minus) > 1e-2);
    CHECK_THROWS_AS(conditional_pair_state(alice(), bob, 0.2, 0.7, cfg,
                                           PhaseConvention::FromGeometry),
                    FactorizationError);
}

TEST_CASE("initial excited amplitude drives the postselected density") {
    SourcePairConfig cfg;
    const EmissionGeometry bob = geometry_from_spherical(0.7, 0.1);
    const PairOutcome ref = conditional_pair_state(alice(), bob, 0.2, 0.5, cfg);
    // mix in unexcited weight: only the |22> amplitude matters
    cfg.initial_state = 0.8 * basis_state(2, 2) + 0.6 * basis_state(1, 1);
    const PairOutcome mixed = conditional_pair_state(alice(), bob, 0.2, 0.5, cfg);
    CHECK(mixed.prob_density ==
          doctest::Approx(0.64 * ref.prob_density).epsilon(1e-12));
    CHECK(fidelity(mixed.pair, ref.pair) == doctest::Approx(1.0).epsilon(1e-13));

    cfg.initial_state = basis_state(1, 1);
    CHECK_THROWS_AS(conditional_pair_state(alice(), bob, 0.2, 0.5, cfg),
                    ZeroAmplitudeError);
}

TEST_CASE("two-photon amplitude bookkeeping") {
    SourcePairConfig cfg;
    const EmissionGeometry bob = geometry_from_spherical(0.5, 0.3);
    CHECK_THROWS_AS(two_photon_amplitudes(alice(), bob, 0.8, 0.2, cfg),
                    ConfigError);
    const TwoPhotonRecord rec = two_photon_amplitudes(alice(), bob, 0.1, 0.6, cfg);
    double total = 0.0;
    for (Polarization l1 : {Polarization::Plus, Polarization::Minus}) {
        for (Polarization l2 : {Polarization::Plus, Polarization::Minus}) {
            total += rec.amplitude(l1, l2).squaredNorm();
        }
    }
    CHECK(total == doctest::Approx(rec.total_density()).epsilon(1e-14));
}
