#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nikhp/hermite_pade.hpp"

using namespace nikhp;

namespace {
NikishinSystem reference2(std::size_t nq = 80) {
    return NikishinSystem(
        std::vector<Measure>{Measure::chebyshev(Interval{Real(-1), Real(1)}, nq),
                             Measure::legendre(Interval{Real(2), Real(3)}, nq)});
}
}  // namespace

TEST_CASE("m=1 chebyshev recovers monic chebyshev polynomials") {
    set_precision_bits(256);
    NikishinSystem sys(std::vector<Measure>{
        Measure::chebyshev(Interval{Real(-1), Real(1)}).scaled(1 / real_pi())});

    auto f2 = solve_type_ii(sys, MultiIndex({2}));
    // monic T_2 = x^2 - 1/2
    REQUIRE(f2.Q.degree() == 2);
    CHECK(abs(f2.Q[0] + Real(0.5)) < pow10(-70));
    CHECK(abs(f2.Q[1]) < pow10(-70));
    CHECK(f2.Q[2] == 1);
    CHECK(f2.margin > half_precision_eps());

    auto f1 = solve_type_ii(sys, MultiIndex({1}));
    // P_{(1),1} = mass of the normalized weight = 1
    REQUIRE(f1.P[0].degree() == 0);
    CHECK(abs(f1.P[0][0] - 1) < pow10(-70));

    // remainder oracle: Phi_{(1)}(2) = 2 shat(2) - 1 = 2/sqrt(3) - 1
    Complex phi = remainder_phi(f1, sys, 1, Complex{Real(2), Real(0)});
    CHECK(abs(phi.re - (2 / sqrt(Real(3)) - 1)) < pow10(-20));
    CHECK(abs(phi.im) < pow10(-70));

    // type I at n=(2): a_1 = x (monic, normalized), a_0 = -1
    auto t2 = solve_type_i(sys, MultiIndex({2}));
    REQUIRE(t2.a[1].degree() == 1);
    CHECK(abs(t2.a[1][0]) < pow10(-70));
    CHECK(abs(t2.a[0][0] + 1 / t2.a[1][1]) < pow10(-69));
}

TEST_CASE("m=2 type II orthogonality residuals") {
    set_precision_bits(256);
    auto sys = reference2();
    auto fam = solve_type_ii(sys, MultiIndex({2, 1}));
    Real maxres = 0;
    for (std::size_t j = 1; j <= 2; ++j)
        for (int nu = 0; nu < fam.index[j - 1]; ++nu) {
            Real r = sys.s(1, j).integrate(
                [&](const Real& x) { return pow(x, nu) * fam.Q(x); });
            maxres = std::max(maxres, abs(r));
        }
    CHECK(maxres < pow10(-30));
    CHECK(fam.Q.leading() == 1);
    CHECK(fam.Q.degree() == 3);
}

TEST_CASE("m=2 type I normalization and moment identity") {
    set_precision_bits(256);
    auto sys = reference2();
    auto fam = solve_type_i(sys, MultiIndex({1, 1}));
    // orthogonality to constants pins a_1 against the chain masses
    REQUIRE(fam.a[1].degree() == 0);
    REQUIRE(fam.a[2].degree() == 0);
    Real ratio = fam.a[1][0] / fam.a[2][0];
    Real expect = -sys.s(1, 2).mass() / sys.s(1, 1).mass();
    // the solver integrates the chain measures on its own (smaller) rule, so
    // the identity holds to that rule's accuracy rather than full precision
    CHECK(abs(ratio - expect) < pow10(-25));
}

TEST_CASE("psi agrees with the remainder for the first component") {
    set_precision_bits(256);
    auto sys = reference2();
    auto fam = solve_type_ii(sys, MultiIndex({2, 1}));
    Complex z{Real(4), Real(0)};
    CHECK(abs(psi(fam, 1, z) - remainder_phi(fam, sys, 1, z)) < pow10(-60));
    // k = 0 evaluates Q itself
    CHECK(abs(psi(fam, 0, z) - Complex(fam.Q(Real(4)))) < pow10(-70));
}

TEST_CASE("zero structure of both families") {
    set_precision_bits(256);
    auto sys = reference2();

    auto fam = solve_type_ii(sys, MultiIndex({2, 1}));
    finalize_zero_structure(fam, sys);
    REQUIRE(fam.zeros_final);
    CHECK(fam.zero_polys[0].degree() == 0);
    CHECK(fam.zero_polys[1].degree() == 3);   // Q_n, |n| zeros on Delta_1
    CHECK(fam.zero_polys[2].degree() == 1);   // Psi_{n,1} has n_2 zeros on Delta_2
    CHECK(fam.zero_polys[3].degree() == 0);
    REQUIRE(fam.K.size() == 2);
    CHECK(fam.K[0] > 0);

    auto tf = solve_type_i(sys, MultiIndex({2, 1}));
    finalize_zero_structure(tf, sys);
    CHECK(tf.zero_polys[1].degree() == 2);    // A_{n,1}: |n| - 1 zeros on Delta_1
}

TEST_CASE("second kind identities for both families") {
    set_precision_bits(256);
    auto sys = reference2();
    Complex z{Real(5), Real(2)};

    // type II: script-H_{n,2}(z) = int Q_{n,1} Psi_{n,0} dsigma_1 /((z-x) Q_{n,2})
    auto fam = solve_type_ii(sys, MultiIndex({2, 1}));
    finalize_zero_structure(fam, sys);
    {
        Complex lhs = h_type_ii(fam, 2, z);
        const auto& r = fam.layer_rules[0];
        const auto& vals = fam.layer_vals[0];
        Complex I{Real(0), Real(0)};
        for (std::size_t i = 0; i < r.size(); ++i) {
            Real x = r.nodes[i];
            I += Complex(r.weights[i] * fam.zero_polys[1](x) * vals[i]) /
                 ((z - Complex(x)) * Complex(fam.zero_polys[2](x)));
        }
        CHECK(abs(lhs - I) < pow10(-25));
    }

    // type I: H_{n,0}(z) = int A_{n,1}(x) form_1(x) dsigma_1 /((z-x) A_{n,0})
    auto tf = solve_type_i(sys, MultiIndex({2, 1}));
    finalize_zero_structure(tf, sys);
    {
        Complex lhs = h_type_i(tf, sys, 0, z);
        const auto& r = sys.generator(1).rule_at(tf.nq);
        Complex I{Real(0), Real(0)};
        for (std::size_t i = 0; i < r.size(); ++i) {
            Real x = r.nodes[i];
            I += Complex(r.weights[i] * tf.zero_polys[1](x)) *
                 type_i_form(tf, sys, 1, Complex(x)) /
                 ((z - Complex(x)) * Complex(tf.zero_polys[0](x)));
        }
        CHECK(abs(lhs - I) < pow10(-25));
    }
}

TEST_CASE("perfectness certificate over a small budget") {
    set_precision_bits(256);
    auto sys = reference2();
    auto rep = certify_perfectness(sys, 4);
    // multi-indices of length 2 with 1 <= |n| <= 4: 14 of them
    CHECK(rep.rows.size() == 14);
    CHECK(rep.all_pass);
    CHECK(rep.min_margin > pow10(-12));
}

TEST_CASE("at-system probe respects the sign change bound") {
    set_precision_bits(256);
    auto sys = reference2();
    auto rep = at_system_probe(sys, MultiIndex({1, 1}), 100,
                               Interval{Real(2.5), Real(2.9)}, 42);
    CHECK(rep.bound == 1);
    CHECK(rep.max_count <= rep.bound);
    CHECK(rep.pass);
    CHECK(rep.counts.size() == 100);
    // deterministic in the seed
    auto rep2 = at_system_probe(sys, MultiIndex({1, 1}), 100,
                                Interval{Real(2.5), Real(2.9)}, 42);
    CHECK(rep.counts == rep2.counts);
}

TEST_CASE("degenerate indices still solve (perfectness at the margins)") {
    set_precision_bits(256);
    auto sys = reference2();
    auto g = solve_type_ii(sys, MultiIndex({1, 0}));
    CHECK(g.Q.degree() == 1);
    CHECK(abs(g.Q(Real(0))) < pow10(-20));  // symmetric weight: zero at origin
    auto h = solve_type_ii(sys, MultiIndex({0, 1}));
    CHECK(h.Q.degree() == 1);
}
