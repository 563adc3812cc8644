#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qpair/efficiency.hpp"
#include "qpair/quadrature.hpp"

using namespace qpair;

TEST_CASE("closed-form pair probability reference value") {
    // gamma0 = gamma1, theta_b = 0, dOmega = 0.01 each:
    // P = (3/(8 pi))^2 * (1/2) * 2 * 1e-4 = (3/(8 pi))^2 * 1e-4.
    SourcePairConfig cfg;
    CollectionWindow win;
    CHECK(pair_probability_analytic(cfg, win) ==
          doctest::Approx(1.424829144970375e-06).epsilon(1e-15));
    // scales with the angular factor
    win.theta_b = M_PI / 2;
    CHECK(pair_probability_analytic(cfg, win) ==
          doctest::Approx(0.5 * 1.424829144970375e-06).epsilon(1e-13));
}

TEST_CASE("probability is bilinear in the collection windows") {
    SourcePairConfig cfg;
    CollectionWindow win;
    const double base = pair_probability_analytic(cfg, win);
    win.domega_a = 0.03;
    CHECK(pair_probability_analytic(cfg, win) ==
          doctest::Approx(3.0 * base).epsilon(1e-13));
    win.domega_b = 0.05;
    CHECK(pair_probability_analytic(cfg, win) ==
          doctest::Approx(15.0 * base).epsilon(1e-13));
}

TEST_CASE("time quadrature self-test against the exponential integral") {
    // int_0^inf int_0^inf e^{-g(2 t1 + tau)} dt1 dtau = 1/(2 g^2), the
    // shape of the joint density used below; checks the node/weight layout.
    const double g = 1.9;
    const double t_max = 30.0 / g;
    const GaussLegendre q = GaussLegendre(48).mapped(0.0, t_max);
    double integral = 0.0;
    for (int i = 0; i < 48; ++i) {
        for (int j = 0; j < 48; ++j) {
            integral += q.weights[i] * q.weights[j] *
                        std::exp(-g * (2.0 * q.nodes[i] + q.nodes[j]));
        }
    }
    CHECK(integral == doctest::Approx(1.0 / (2.0 * g * g)).epsilon(1e-10));
}

TEST_CASE("numeric double-time quadrature matches the closed form") {
    SourcePairConfig cfg;
    CollectionWindow win;
    SUBCASE("symmetric rates on axis") {
        CHECK(pair_probability_numeric(cfg, win) ==
              doctest::Approx(pair_probability_analytic(cfg, win))
                  .epsilon(1e-9));
    }
    SUBCASE("asymmetric rates, tilted collection") {
        cfg.gamma0 = 1.3;
        cfg.gamma1 = 0.7;
        for (double theta : {0.0, M_PI / 6, 1.1, 2.4}) {
            win.theta_b = theta;
            win.phi_b = 0.8;
            CHECK(pair_probability_numeric(cfg, win) ==
                  doctest::Approx(pair_probability_analytic(cfg, win))
                      .epsilon(1e-9));
        }
    }
}

TEST_CASE("no initial excitation, no pairs") {
    SourcePairConfig cfg;
    cfg.initial_state = basis_state(0, 1);
    CollectionWindow win;
    CHECK(pair_probability_analytic(cfg, win) == 0.0);
    CHECK(pair_probability_numeric(cfg, win) ==
          doctest::Approx(0.0).epsilon(1e-20));
}

TEST_CASE("quadrature guardrails") {
    SourcePairConfig cfg;
    CollectionWindow win;
    QuadSpec quad;
    quad.t_max_over_lifetime = 10.0;
    CHECK_THROWS_AS(pair_probability_numeric(cfg, win, quad), ConfigError);
    quad.t_max_over_lifetime = 21.0;
    quad.tolerance = 1e-12;  // tail bound 2 e^{-21} ~ 1.5e-9 is too large
    CHECK_THROWS_AS(pair_probability_numeric(cfg, win, quad), QuadratureError);
    CollectionWindow bad;
    bad.domega_a = -1.0;
    CHECK_THROWS_AS(pair_probability_analytic(cfg, bad), ConfigError);
}
