#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nikhp/scalar.hpp"

using namespace nikhp;

TEST_CASE("precision is configurable per thread") {
    set_precision_bits(256);
    CHECK(precision_bits() == 256);
    Real x = Real(1) / 3;
    // 256 bits ~ 77 decimal digits; the value must be good to far beyond double.
    Real err = abs(x * 3 - 1);
    CHECK(err < pow10(-70));

    set_precision_bits(128);
    CHECK(precision_bits() == 128);
    set_precision_bits(256);
}

TEST_CASE("half_precision_eps matches 2^{-P/2}") {
    set_precision_bits(256);
    Real e = half_precision_eps();
    CHECK(e == pow(Real(2), -128));
}

TEST_CASE("pow10 and pi oracles") {
    set_precision_bits(256);
    CHECK(pow10(-3) == Real(1) / 1000);
    Real pi = real_pi();
    CHECK(abs(pi - Real("3.14159265358979323846264338327950288419716939937510582097494459")) <
          pow10(-60));
    // sin(pi) = 0 to working precision
    CHECK(abs(sin(pi)) < pow10(-70));
}

TEST_CASE("complex arithmetic and Smith division") {
    set_precision_bits(256);
    Complex a{Real(3), Real(4)};
    CHECK(abs(a) == 5);
    Complex b{Real(1), Real(-2)};
    Complex q = a / b;
    // (3+4i)/(1-2i) = (-1+2i)
    CHECK(abs(q - Complex{Real(-1), Real(2)}) < pow10(-70));
    // division must survive extreme magnitudes without overflow
    Real big = pow(Real(10), 70);
    Complex h{big, big};
    Complex r = h / h;
    CHECK(abs(r - Complex{Real(1), Real(0)}) < pow10(-60));
    CHECK(abs(conj(a) - Complex{Real(3), Real(-4)}) == 0);
}

TEST_CASE("decimal round trip is exact and deterministic") {
    set_precision_bits(256);
    Real x = sqrt(Real(2));
    std::string s1 = to_decimal_string(x);
    std::string s2 = to_decimal_string(x);
    CHECK(s1 == s2);
    Real back(s1);
    CHECK(abs(back - x) <= abs(x) * pow10(-70));
}
