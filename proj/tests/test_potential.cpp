#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nikhp/potential.hpp"

using namespace nikhp;

TEST_CASE("log potential of the arcsine-like grid measure") {
    // equal cell masses on a cosine partition = discretized arcsine law
    GridMeasure arc = uniform_grid_measure(Interval{Real(-1), Real(1)}, 1000);
    CHECK(arc.mass() == doctest::Approx(1.0).epsilon(1e-14));
    // V^arcsine(0) = log 2
    CHECK(log_potential(arc, {0.0, 0.0}) == doctest::Approx(std::log(2.0)).epsilon(1e-5));
    // conjugate symmetry
    CHECK(log_potential(arc, {0.5, 0.3}) ==
          doctest::Approx(log_potential(arc, {0.5, -0.3})).epsilon(1e-14));
    // V^arcsine(x) = -log|phi(x)/2| for x > 1, phi(x) = x + sqrt(x^2-1)
    double x = 3.0;
    double expect = -std::log((x + std::sqrt(x * x - 1)) / 2);
    CHECK(log_potential(arc, {x, 0.0}) == doctest::Approx(expect).epsilon(1e-6));
    // far field ~ -mass * log|z|; the closed-form cell integral cancels
    // heavily at this distance, so only ask for ~4 digits
    GridMeasure tiny = uniform_grid_measure(Interval{Real(0), Real(1e-6)}, 4);
    CHECK(log_potential(tiny, {1e6, 0.0}) == doctest::Approx(-std::log(1e6)).epsilon(1e-3));
}

TEST_CASE("interaction matrix oracles") {
    auto C1 = interaction_matrix({1.0});
    CHECK(C1.entries[0][0] == doctest::Approx(1.0));

    auto C2 = interaction_matrix({0.5, 0.5});
    CHECK(C2.entries[0][0] == doctest::Approx(1.0));
    CHECK(C2.entries[0][1] == doctest::Approx(-0.25));
    CHECK(C2.entries[1][1] == doctest::Approx(0.25));
    CHECK(C2.entries[1][0] == C2.entries[0][1]);

    auto C3 = interaction_matrix({1.0 / 3, 1.0 / 3, 1.0 / 3});
    CHECK(C3.entries[0][0] == doctest::Approx(1.0));
    CHECK(C3.entries[1][1] == doctest::Approx(4.0 / 9));
    CHECK(C3.entries[2][2] == doctest::Approx(1.0 / 9));
    CHECK(C3.entries[0][1] == doctest::Approx(-1.0 / 3));
    CHECK(C3.entries[1][2] == doctest::Approx(-1.0 / 9));

    CHECK_THROWS(interaction_matrix({0.25, 0.75}));  // must be non-increasing
    CHECK_THROWS(interaction_matrix({0.7, 0.7}));    // must sum to one
}

TEST_CASE("m=1 equilibrium is the arcsine law with omega = log 2") {
    auto C = interaction_matrix({1.0});
    auto sol = solve_vector_equilibrium({Interval{Real(-1), Real(1)}}, C, 600);
    CHECK(sol.kkt_residual < 1e-6);
    CHECK(sol.omegas[0] == doctest::Approx(std::log(2.0)).epsilon(1e-3));
    CHECK(sol.lambdas[0].mass() == doctest::Approx(1.0).epsilon(1e-12));
    auto arcsine_cdf = [](double x) {
        if (x <= -1) return 0.0;
        if (x >= 1) return 1.0;
        return 0.5 + std::asin(x) / M_PI;
    };
    CHECK(kolmogorov_vs_cdf(sol.lambdas[0], arcsine_cdf) < 1e-3);
    // U_1 on the support equals -omega_1 = -log 2
    CHECK(u_function(sol, 1, {0.3, 0.0}) == doctest::Approx(-std::log(2.0)).epsilon(1e-3));

    // scaling law: doubling the interval shifts omega by -log 2 -> 0
    auto sol2 = solve_vector_equilibrium({Interval{Real(-2), Real(2)}}, C, 600);
    CHECK(sol2.omegas[0] == doctest::Approx(0.0).epsilon(1e-3));
}

TEST_CASE("m=2 vector equilibrium solves its KKT system") {
    auto C = interaction_matrix({0.5, 0.5});
    auto sol = solve_vector_equilibrium(
        {Interval{Real(-1), Real(1)}, Interval{Real(2), Real(3)}}, C, 400);
    CHECK(sol.kkt_residual < 1e-6);
    CHECK(sol.lambdas[0].mass() == 1.0);  // exact by construction
    CHECK(sol.lambdas[1].mass() == 1.0);
    REQUIRE(sol.omegas.size() == 2);
    // W_1 constant on the interior of the support
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 40; i < 360; i += 20) {
        double w = sol.w_function(1, {sol.lambdas[0].node(i), 0.0});
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    CHECK(hi - lo < 1e-5);
    // omega' follows the definition
    double P1 = 1.0, P2 = 0.5;
    CHECK(sol.omegas_prime[0] == doctest::Approx(P1 * P1 * sol.omegas[0]).epsilon(1e-12));
    CHECK(sol.omegas_prime[1] ==
          doctest::Approx(P2 * P2 * sol.omegas[1] - P2 * P1 * sol.omegas[0]).epsilon(1e-12));
    // xi_2 at a far point picks one of the two region values
    auto xi = xi_function(sol, 2, {5.0, 0.0});
    CHECK(xi.value ==
          doctest::Approx(std::max(u_function(sol, 1, {5.0, 0.0}),
                                   u_function(sol, 2, {5.0, 0.0}))).epsilon(1e-12));
}

TEST_CASE("external field solver matches closed forms") {
    auto [mu0, w0] = solve_external_field_equilibrium(
        Interval{Real(-1), Real(1)}, [](double) { return 0.0; }, 600);
    CHECK(w0 == doctest::Approx(std::log(2.0)).epsilon(1e-3));
    // adding a constant to the field shifts w by the same constant
    auto [mu1, w1] = solve_external_field_equilibrium(
        Interval{Real(-1), Real(1)}, [](double) { return 0.25; }, 600);
    CHECK(w1 - w0 == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("kolmogorov helpers") {
    GridMeasure mu = uniform_grid_measure(Interval{Real(0), Real(1)}, 100);
    // uniform cell masses on a cosine partition are NOT uniform in x
    CHECK(kolmogorov_vs_cdf(mu, [](double x) {
              return std::min(1.0, std::max(0.0, x));
          }) > 0.1);
    // exact arcsine-style cdf for this measure
    CHECK(kolmogorov_vs_cdf(mu, [](double x) {
              if (x <= 0) return 0.0;
              if (x >= 1) return 1.0;
              return std::acos(1 - 2 * x) / M_PI;
          }) < 1e-3);
    // grid vs its own edge points
    std::vector<double> pts;
    for (std::size_t i = 0; i < mu.cells(); ++i) pts.push_back(mu.node(i));
    CHECK(kolmogorov_grid_vs_points(mu, pts) < 0.02);
}
