#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "qpair/geometry.hpp"

using namespace qpair;

namespace {

// Independent oracle: scan cos(alpha) on a fine grid and collect local
// zeros of the condition residual by refinement.
std::vector<double> brute_force_ring_scan(double k0d, Parity parity) {
    std::vector<double> zeros;
    const int n_steps = 200000;
    const double step = 2.0 / n_steps;
    for (int n = 0; n <= n_steps; ++n) {
        const double cc = -1.0 + n * step;
        const double cur = condition_residual(k0d, cc, parity);
        const double prev =
            condition_residual(k0d, std::max(cc - step, -1.0), parity);
        const double next =
            condition_residual(k0d, std::min(cc + step, 1.0), parity);
        const bool interior_min =
            n > 0 && n < n_steps && cur <= prev && cur <= next && cur < 1e-4;
        const bool endpoint_zero =
            (n == 0 || n == n_steps) && cur < 1e-4;
        if (interior_min || endpoint_zero) {
            if (zeros.empty() || cc - zeros.back() > 10 * step) {
                // refine by bisection on the derivative sign via ternary search
                double lo = cc - step, hi = cc + step;
                for (int it = 0; it < 200; ++it) {
                    const double m1 = lo + (hi - lo) / 3.0;
                    const double m2 = hi - (hi - lo) / 3.0;
                    if (condition_residual(k0d, m1, parity) <
                        condition_residual(k0d, m2, parity)) {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                zeros.push_back(std::clamp(0.5 * (lo + hi), -1.0, 1.0));
            }
        }
    }
    return zeros;
}

}  // namespace

TEST_CASE("polarization basis from spherical coordinates") {
    const EmissionGeometry pole = geometry_from_spherical(0.0, 0.0);
    const Eigen::Vector3cd expected_pole(Complex(1, 0) / std::sqrt(2.0),
                                         Complex(0, 1) / std::sqrt(2.0), 0.0);
    CHECK((pole.eps_plus - expected_pole).norm() < 1e-14);
    CHECK((pole.direction - Eigen::Vector3d(0, 0, 1)).norm() < 1e-14);

    const EmissionGeometry equator = geometry_from_spherical(M_PI / 2, 0.0);
    const Eigen::Vector3cd expected_eq(0.0, Complex(0, 1) / std::sqrt(2.0),
                                       Complex(-1, 0) / std::sqrt(2.0));
    CHECK((equator.eps_plus - expected_eq).norm() < 1e-14);
}

TEST_CASE("geometry invariants hold at random angles") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-8.0, 8.0);
    for (int i = 0; i < 200; ++i) {
        const EmissionGeometry g = geometry_from_spherical(ang(rng), ang(rng));
        CHECK(std::abs(g.direction.norm() - 1.0) < 1e-12);
        CHECK(std::abs(g.eps_plus.norm() - 1.0) < 1e-12);
        CHECK(std::abs(g.eps_minus.norm() - 1.0) < 1e-12);
        // transversality
        CHECK(std::abs(g.eps_plus.dot(g.direction.cast<Complex>())) < 1e-12);
        CHECK(std::abs(g.eps_minus.dot(g.direction.cast<Complex>())) < 1e-12);
        CHECK((g.eps_minus - g.eps_plus.conjugate()).norm() < 1e-14);
    }
}

TEST_CASE("condition residual examples") {
    const double k0d = 2 * M_PI;
    CHECK(condition_residual(k0d, 0.0, Parity::Plus) < 1e-15);
    CHECK(condition_residual(k0d, 0.5, Parity::Minus) < 1e-15);
    CHECK(condition_residual(k0d, 0.0, Parity::Minus) ==
          doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("ring finder agrees with brute-force residual scan") {
    SourcePairConfig cfg;
    cfg.k0d = 2 * M_PI;
    SUBCASE("plus rings at cos(a) = -1, 0, 1") {
        const auto rings = find_detector_rings(cfg, Parity::Plus, 1e-9);
        const auto scan = brute_force_ring_scan(cfg.k0d, Parity::Plus);
        REQUIRE(rings.size() == 3);
        REQUIRE(scan.size() == 3);
        const double expected[3] = {-1.0, 0.0, 1.0};
        for (int i = 0; i < 3; ++i) {
            CHECK(rings[i].cos_alpha == doctest::Approx(expected[i]).epsilon(1e-12));
            CHECK(std::abs(rings[i].cos_alpha - scan[i]) < 1e-4);
        }
    }
    SUBCASE("minus rings at cos(a) = +-1/2") {
        const auto rings = find_detector_rings(cfg, Parity::Minus, 1e-9);
        const auto scan = brute_force_ring_scan(cfg.k0d, Parity::Minus);
        REQUIRE(rings.size() == 2);
        REQUIRE(scan.size() == 2);
        CHECK(rings[0].cos_alpha == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(rings[1].cos_alpha == doctest::Approx(0.5).epsilon(1e-12));
        for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(rings[i].cos_alpha - scan[i]) < 1e-4);
        }
    }
}

TEST_CASE("no minus ring exists below k0d = pi") {
    SourcePairConfig cfg;
    cfg.k0d = M_PI / 2;
    CHECK(find_detector_rings(cfg, Parity::Minus, 1e-9).empty());
    CHECK(brute_force_ring_scan(cfg.k0d, Parity::Minus).empty());
}

TEST_CASE("returned rings satisfy the condition to machine precision") {
    SourcePairConfig cfg;
    for (double k0d : {M_PI, 2 * M_PI, 5.0, 17.3}) {
        cfg.k0d = k0d;
        for (Parity parity : {Parity::Plus, Parity::Minus}) {
            for (const DetectorRing& ring :
                 find_detector_rings(cfg, parity, 1e-9)) {
                CHECK(ring.residual < 1e-12);
                CHECK(condition_residual(k0d, ring.cos_alpha, parity) < 1e-12);
                CHECK(std::abs(ring.cos_alpha) <= 1.0);
            }
        }
    }
}

TEST_CASE("condition tolerance widens as the sources get closer") {
    // Around the shared plus solution cos(a) = 0, the angular width of
    // {residual <= 0.1} must not shrink when k0d is halved.
    const auto width = [](double k0d) {
        double w = 0.0;
        for (double c = 0.0; c <= 1.0; c += 1e-5) {
            if (condition_residual(k0d, c, Parity::Plus) <= 0.1) {
                w = c;
            } else {
                break;
            }
        }
        return 2.0 * w;
    };
    const double k0d = 2 * M_PI;
    CHECK(width(k0d / 2) >= width(k0d));
}

TEST_CASE("theta_on_ring inverts the cone constraint") {
    CHECK(theta_on_ring(0.5, 0.0) == doctest::Approx(M_PI / 6).epsilon(1e-12));
    const double theta = theta_on_ring(0.3, 0.7);
    CHECK(std::sin(theta) * std::cos(0.7) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_THROWS_AS(theta_on_ring(0.9, M_PI / 2), ConfigError);
}
