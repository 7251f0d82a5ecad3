#ifndef NIKHP_ZEROS_HPP
#define NIKHP_ZEROS_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nikhp/interval.hpp"
#include "nikhp/polynomial.hpp"

namespace nikhp {

// Sorted real zeros of a function on an interval.
struct ZeroList {
    Interval interval;
    std::vector<Real> points;  // strictly increasing, interior
    bool all_simple = true;
    std::size_t size() const { return points.size(); }
};

// Normalized zero counting measure: equal weight 1/count per point.
struct CountingMeasure {
    std::vector<Real> points;
    Real weight() const { return Real(1) / static_cast<int>(points.size()); }
};

// Thrown when a sign-change scan does not find the theoretically
// guaranteed number of zeros even after the 4x grid retry.
struct CountMismatch : std::runtime_error {
    std::size_t expected, found;
    CountMismatch(std::size_t e, std::size_t f)
        : std::runtime_error("zero count mismatch: expected " + std::to_string(e) +
                             ", found " + std::to_string(f)),
          expected(e), found(f) {}
};

// Real roots of p inside the interval: companion-matrix eigenvalues at
// double precision, polished by safeguarded Newton at working precision.
// all_simple reflects the |p'(root)| > 2^{-P/2} * scale test.
ZeroList poly_real_zeros(const Polynomial& p, const Interval& itv);

// Sign changes of a continuous function located on a Chebyshev grid of
// size >= 8*expected + 64, refined by bracketed bisection/secant. One 4x
// grid retry on a count mismatch; a persistent mismatch throws.
ZeroList form_zeros(const std::function<Real(const Real&)>& f, const Interval& itv,
                    std::size_t expected);

// Count sign changes only (no refinement); used by the AT-system probe.
std::size_t sign_change_count(const std::function<Real(const Real&)>& f,
                              const Interval& itv, std::size_t grid);

struct InterlaceResult {
    bool ok = true;
    // First violating gap when !ok (both zero for length/common-point issues).
    Real gap_lo{0}, gap_hi{0};
    std::string reason;
};

// True iff the union of both lists is strictly alternating.
InterlaceResult interlace_check(const ZeroList& z1, const ZeroList& z2);

CountingMeasure counting_measure(const ZeroList& z);

// Piecewise-constant CDF (double precision; used only for weak-* metrics).
struct Cdf {
    std::vector<double> x;  // increasing jump/breakpoints
    std::vector<double> F;  // value of the CDF at x[i] (right-continuous)
};

Cdf cdf_of(const CountingMeasure& mu);

// sup_x |F1(x) - F2(x)| over the merged support.
double kolmogorov_distance(const Cdf& a, const Cdf& b);

}  // namespace nikhp

#endif
