#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nikhp/quadrature.hpp"

using namespace nikhp;

namespace {
Real integrate(const QuadratureRule& r, const std::function<Real(const Real&)>& f) {
    Real s = 0;
    for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
    return s;
}
}  // namespace

TEST_CASE("gauss-legendre is exact for polynomials up to degree 2n-1") {
    set_precision_bits(256);
    auto r = gauss_legendre(8, Interval{Real(-1), Real(1)});
    REQUIRE(r.size() == 8);
    // int x^k dx over [-1,1]
    for (int k = 0; k <= 15; ++k) {
        Real expect = (k % 2 == 1) ? Real(0) : Real(2) / (k + 1);
        CHECK(abs(integrate(r, [&](const Real& x) { return pow(x, k); }) - expect) <
              pow10(-70));
    }
    // nodes increasing, weights positive
    for (std::size_t i = 0; i < r.size(); ++i) {
        CHECK(r.weights[i] > 0);
        if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
}

TEST_CASE("gauss-legendre respects affine interval mapping") {
    set_precision_bits(256);
    auto r = gauss_legendre(6, Interval{Real(2), Real(3)});
    CHECK(abs(integrate(r, [](const Real& x) { return Real(1); }) - 1) < pow10(-70));
    CHECK(abs(integrate(r, [](const Real& x) { return x; }) - Real(5) / 2) < pow10(-70));
    for (const Real& x : r.nodes) CHECK((x > 2 && x < 3));
}

TEST_CASE("gauss-jacobi chebyshev moments") {
    set_precision_bits(256);
    Real pi = real_pi();
    // weight 1/sqrt((1-x)(x+1)) on [-1,1]
    auto r = gauss_jacobi(12, Real(-0.5), Real(-0.5), Interval{Real(-1), Real(1)});
    CHECK(abs(integrate(r, [](const Real& x) { return Real(1); }) - pi) < pow10(-70));
    CHECK(abs(integrate(r, [](const Real& x) { return x * x; }) - pi / 2) < pow10(-70));
    CHECK(abs(integrate(r, [](const Real& x) { return x; })) < pow10(-70));
}

TEST_CASE("jacobi recurrence matches known chebyshev coefficients") {
    set_precision_bits(256);
    auto rec = jacobi_recurrence(6, Real(-0.5), Real(-0.5));
    REQUIRE(rec.alpha.size() >= 6);
    Real pi = real_pi();
    CHECK(abs(rec.beta[0] - pi) < pow10(-70));   // total mass
    CHECK(abs(rec.beta[1] - Real(0.5)) < pow10(-70));
    for (std::size_t k = 2; k < 6; ++k) CHECK(abs(rec.beta[k] - Real(0.25)) < pow10(-70));
    for (std::size_t k = 0; k < 6; ++k) CHECK(abs(rec.alpha[k]) < pow10(-70));
}

TEST_CASE("stieltjes recovers recurrence from a discrete rule") {
    set_precision_bits(256);
    auto fine = gauss_jacobi(40, Real(-0.5), Real(-0.5), Interval{Real(-1), Real(1)});
    auto rec = stieltjes(8, fine);
    auto direct = jacobi_recurrence(8, Real(-0.5), Real(-0.5));
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(abs(rec.alpha[k] - direct.alpha[k]) < pow10(-60));
        CHECK(abs(rec.beta[k] - direct.beta[k]) < pow10(-60));
    }
    // golub_welsch from the recovered recurrence reproduces the rule
    auto r1 = golub_welsch(rec, 5);
    auto r2 = gauss_jacobi(5, Real(-0.5), Real(-0.5), Interval{Real(-1), Real(1)});
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(abs(r1.nodes[i] - r2.nodes[i]) < pow10(-55));
        CHECK(abs(r1.weights[i] - r2.weights[i]) < pow10(-55));
    }
}
