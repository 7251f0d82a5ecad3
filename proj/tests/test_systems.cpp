#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nikhp/multi_index.hpp"
#include "nikhp/system.hpp"

using namespace nikhp;

namespace {
NikishinSystem reference2() {
    return NikishinSystem(std::vector<Measure>{Measure::chebyshev(Interval{Real(-1), Real(1)}),
                                               Measure::legendre(Interval{Real(2), Real(3)})});
}
}  // namespace

TEST_CASE("multi-index accessors") {
    MultiIndex n({3, 2, 1});
    CHECK(n.size() == 3);
    CHECK(n.total() == 6);
    CHECK(n.tail(1) == 6);
    CHECK(n.tail(2) == 3);
    CHECK(n.tail(3) == 1);
    CHECK(n.tail(4) == 0);
    CHECK(n.decreasing());
    CHECK(n.bump(2) == MultiIndex({3, 3, 1}));
    CHECK(n.str() == "(3,2,1)");
    CHECK_FALSE(MultiIndex({1, 2}).decreasing());
    CHECK_THROWS(MultiIndex({-1, 2}));
    CHECK_THROWS(MultiIndex({0, 0}));

    auto all = all_indices(2, 2);
    // (0,1) (0,2) (1,0) (1,1) (2,0) -> all |n| in [1,2]
    CHECK(all.size() == 5);
    for (const auto& idx : all) {
        CHECK(idx.total() >= 1);
        CHECK(idx.total() <= 2);
    }
}

TEST_CASE("nikishin chain table forward and reversed") {
    set_precision_bits(256);
    auto sys = reference2();
    CHECK(sys.size() == 2);
    CHECK(sys.delta(1).a == -1);
    CHECK(sys.delta(2).b == 3);

    // s_{1,1} is the generator itself
    CHECK(abs(sys.s(1, 1).mass() - real_pi()) < pow10(-70));
    // s_{1,2} = <sigma_1, sigma_2>: mass = int shat_2 dsigma_1 < 0 since
    // shat_2 < 0 left of [2,3]
    Real direct = sys.generator(1).integrate(
        [&](const Real& x) { return sys.generator(2).cauchy(x); });
    CHECK(abs(sys.s(1, 2).mass() - direct) < pow10(-55));
    CHECK(sys.s(1, 2).sign() == -1);
    // reversed chain s_{2,1} = <sigma_2, sigma_1> lives on Delta_2
    CHECK(sys.s(2, 1).interval().a == 2);
    Real rev = sys.generator(2).integrate(
        [&](const Real& x) { return sys.generator(1).cauchy(x); });
    CHECK(abs(sys.s(2, 1).mass() - rev) < pow10(-55));
}

TEST_CASE("shat chain identity at m = 2") {
    set_precision_bits(256);
    auto sys = reference2();
    // shat_{1,2}(z) = int shat_{2,2}(x) dsigma_1(x) / (z - x): the miracle
    // identity specializes to shat_{1,2} = shat_{1,1} shat_{2,2} - shat_{2,1}.
    Complex z{Real(5), Real(2)};
    Complex lhs = sys.shat(1, 2, z);
    Complex rhs = sys.shat(1, 1, z) * sys.shat(2, 2, z) - sys.shat(2, 1, z);
    CHECK(abs(lhs - rhs) < pow10(-60));
}

TEST_CASE("shat chain identity at m = 3") {
    set_precision_bits(256);
    NikishinSystem sys(std::vector<Measure>{Measure::chebyshev(Interval{Real(-1), Real(1)}),
                                            Measure::legendre(Interval{Real(2), Real(3)}),
                                            Measure::chebyshev(Interval{Real(4), Real(5)})});
    Complex z{Real(7), Real(1)};
    // j = 3 alternating sum:
    // shat_{1,3} - shat_{1,2} shat_{3,3} + shat_{1,1} shat_{3,2} - shat_{3,1} = 0
    Complex mir = sys.shat(1, 3, z) - sys.shat(1, 2, z) * sys.shat(3, 3, z) +
                  sys.shat(1, 1, z) * sys.shat(3, 2, z) - sys.shat(3, 1, z);
    CHECK(abs(mir) < pow10(-55));
}

TEST_CASE("overlapping neighbours are rejected") {
    set_precision_bits(256);
    CHECK_THROWS(NikishinSystem(std::vector<Measure>{
        Measure::chebyshev(Interval{Real(-1), Real(1)}),
        Measure::legendre(Interval{Real(0.5), Real(3)})}));
}

TEST_CASE("angelesco system accessors") {
    set_precision_bits(256);
    AngelescoSystem sys(std::vector<Measure>{Measure::legendre(Interval{Real(-1), Real(0)}),
                                             Measure::legendre(Interval{Real(1), Real(2)})});
    CHECK(sys.size() == 2);
    CHECK(sys.delta(1).b == 0);
    CHECK(sys.delta(2).a == 1);
    CHECK_THROWS(AngelescoSystem(std::vector<Measure>{
        Measure::legendre(Interval{Real(-1), Real(1)}),
        Measure::legendre(Interval{Real(0), Real(2)})}));
}
