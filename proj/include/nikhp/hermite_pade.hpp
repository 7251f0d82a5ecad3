#ifndef NIKHP_HERMITE_PADE_HPP
#define NIKHP_HERMITE_PADE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nikhp/multi_index.hpp"
#include "nikhp/polynomial.hpp"
#include "nikhp/system.hpp"
#include "nikhp/zeros.hpp"

namespace nikhp {

// Raised when a Hermite-Pade linear system is rank deficient at the
// working-precision tolerance (margin = sigma_min / sigma_max <= 2^{-P/2}).
struct NormalityFailure : std::runtime_error {
    MultiIndex index;
    Real margin;
    NormalityFailure(MultiIndex n, Real m, const char* what_type)
        : std::runtime_error(std::string(what_type) + " system rank-deficient at index " +
                             n.str()),
          index(std::move(n)), margin(std::move(m)) {}
};

// Moments int x^k d s_{1,j} (Nikishin) or int x^k d sigma_j (Angelesco),
// j = 1..m, k = 0..count-1. Shared by both solvers and the a_0 extraction.
std::vector<std::vector<Real>> moment_table(const NikishinSystem& sys, std::size_t count,
                                            std::size_t nq);
std::vector<std::vector<Real>> moment_table(const AngelescoSystem& sys, std::size_t count,
                                            std::size_t nq);

struct TypeIIFamily {
    explicit TypeIIFamily(MultiIndex idx) : index(std::move(idx)) {}
    MultiIndex index;
    Polynomial Q;               // Q_n, monic of degree |n|
    std::vector<Polynomial> P;  // P[j-1] = P_{n,j}, j = 1..m
    Real margin;                // relative smallest singular value of the solve
    std::size_t nq;             // quadrature size used

    // Psi layer caches: layer_rules[k-1] is sigma_k's rule, layer_vals[k-1][i]
    // the value of Psi_{n,k-1} at its i-th node (k = 1..m; empty for
    // Angelesco families).
    std::vector<QuadratureRule> layer_rules;
    std::vector<std::vector<Real>> layer_vals;

    // zero_polys[k] = Q_{n,k}, k = 0..m+1, with Q_{n,0} = Q_{n,m+1} = 1 and
    // Q_{n,1} = Q_n. Filled by finalize_zero_structure.
    std::vector<Polynomial> zero_polys;
    std::vector<Real> K;  // K[j-1] = K_{n,j} constants
    bool zeros_final = false;
};

struct TypeIFamily {
    explicit TypeIFamily(MultiIndex idx) : index(std::move(idx)) {}
    MultiIndex index;
    std::vector<Polynomial> a;  // a[j] = a_{n,j}, j = 0..m
    Real margin;
    std::size_t nq;

    // zero_polys[k] = A_{n,k}, k = 0..m+1, A_{n,0} = A_{n,m+1} = 1.
    std::vector<Polynomial> zero_polys;
    bool zeros_final = false;
};

// Quadrature default: 4 * |n| + 16 when nq == 0.
TypeIIFamily solve_type_ii(const NikishinSystem& sys, const MultiIndex& n, std::size_t nq = 0);
TypeIIFamily solve_type_ii(const AngelescoSystem& sys, const MultiIndex& n, std::size_t nq = 0);
TypeIFamily solve_type_i(const NikishinSystem& sys, const MultiIndex& n, std::size_t nq = 0);

// Recomputes the Psi node caches from the stored coefficients; needed after
// reconstructing a family from serialized coefficients.
void build_psi_layers(TypeIIFamily& fam, const NikishinSystem& sys);

// P_{n,j}(z) = int (Q_n(z) - Q_n(x)) / (z - x) d s_{1,j}(x), from moments.
Polynomial pade_numerator(const Polynomial& Q, const std::vector<Real>& moments);

// Phi_{n,j}(z) = int Q_n(x) d s_{1,j}(x) / (z - x).
Complex remainder_phi(const TypeIIFamily& fam, const NikishinSystem& sys, std::size_t j,
                      const Complex& z);

// Psi_{n,k}(z); k = 0 evaluates Q_n itself.
Complex psi(const TypeIIFamily& fam, std::size_t k, const Complex& z);
Real psi(const TypeIIFamily& fam, std::size_t k, const Real& x);

// Linear form A_{n,k}(z) = a_{n,k}(z) + sum_{j>k} a_{n,j}(z) shat_{k+1,j}(z).
Complex type_i_form(const TypeIFamily& fam, const NikishinSystem& sys, std::size_t k,
                    const Complex& z);
Real type_i_form(const TypeIFamily& fam, const NikishinSystem& sys, std::size_t k,
                 const Real& x);

// Locates the zeros promised by the structure theorems and freezes the
// monic zero polynomials (Q_{n,k} resp. A_{n,k}) plus, for type II, the
// K_{n,j} constants. Requires a decreasing multi-index for the counts to be
// guaranteed.
void finalize_zero_structure(TypeIIFamily& fam, const NikishinSystem& sys);
void finalize_zero_structure(TypeIFamily& fam, const NikishinSystem& sys);

// H_{n,k}(z) = A_{n,k+1}(z) A-form_{n,k}(z) / A_{n,k}(z), k = 0..m.
Complex h_type_i(const TypeIFamily& fam, const NikishinSystem& sys, std::size_t k,
                 const Complex& z);
// script-H_{n,k}(z) = Q_{n,k-1}(z) Psi_{n,k-1}(z) / Q_{n,k}(z), k = 1..m+1.
Complex h_type_ii(const TypeIIFamily& fam, std::size_t k, const Complex& z);

struct PerfectnessRow {
    MultiIndex index;
    Real margin_type_i;
    Real margin_type_ii;
    bool pass = false;
    std::string note;
};
struct PerfectnessReport {
    std::vector<PerfectnessRow> rows;
    bool all_pass = true;
    Real min_margin;
};

// Enumerates every multi-index with 1 <= |n| <= budget and runs both solvers.
PerfectnessReport certify_perfectness(const NikishinSystem& sys, unsigned budget,
                                      std::size_t nq = 0);

struct AtSystemReport {
    MultiIndex index;  // (n_0, ..., n_q): degrees-plus-one of p_0..p_q
    unsigned trials;
    std::size_t max_count = 0;
    std::size_t bound = 0;  // |n| - 1
    bool pass = true;
    std::vector<std::size_t> counts;
};

// Samples random forms p_0 + sum p_k shat_{1,k} and counts their sign
// changes on the probe interval; the AT property bounds the count by |n|-1.
// The multi-index components are (n_0, ..., n_q), q <= m, where deg p_k <=
// n_k - 1 (n_k = 0 means p_k is absent).
AtSystemReport at_system_probe(const NikishinSystem& sys, const MultiIndex& n,
                               unsigned trials, const Interval& probe, std::uint64_t seed);

}  // namespace nikhp

#endif
