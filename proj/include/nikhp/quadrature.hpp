#ifndef NIKHP_QUADRATURE_HPP
#define NIKHP_QUADRATURE_HPP

#include <vector>

#include "nikhp/interval.hpp"
#include "nikhp/scalar.hpp"

namespace nikhp {

// Nodes in increasing order; weights strictly positive.
struct QuadratureRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;
    std::size_t size() const { return nodes.size(); }
};

// Three-term recurrence coefficients for the orthonormal polynomials of a
// weight: alpha[k] (diagonal) and beta[k] (beta[0] = total mass,
// beta[k>=1] = squared off-diagonal entries).
struct Recurrence {
    std::vector<Real> alpha;
    std::vector<Real> beta;
};

// Gauss rule from recurrence coefficients (Golub-Welsch).
QuadratureRule golub_welsch(const Recurrence& rec, std::size_t n);

// Jacobi weight (1-t)^a (1+t)^b on [-1,1]; requires a, b > -1.
Recurrence jacobi_recurrence(std::size_t n, const Real& a, const Real& b);

// Recurrence coefficients of the weight represented by a discrete inner
// product (Stieltjes procedure). The discrete weights may carry any positive
// values; n must not exceed the number of distinct nodes.
Recurrence stieltjes(std::size_t n, const QuadratureRule& discrete);

// Gauss-Jacobi rule for the density (b-x)^a (x-a)^b on the interval.
QuadratureRule gauss_jacobi(std::size_t n, const Real& a, const Real& b, const Interval& itv);

// Gauss-Legendre rule for the unit density on the interval.
QuadratureRule gauss_legendre(std::size_t n, const Interval& itv);

}  // namespace nikhp

#endif
