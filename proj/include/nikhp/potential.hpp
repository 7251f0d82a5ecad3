#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "nikhp/interval.hpp"

namespace nikhp {

// Discretized positive measure on an interval.  The support is split into G
// cells whose edges follow a Chebyshev (cosine) partition, so cells shrink
// toward the endpoints where equilibrium densities blow up.  weights[i] is
// the total mass carried by cell i; the density is piecewise constant.
struct GridMeasure {
    double a = 0.0;
    double b = 0.0;
    std::vector<double> weights;

    std::size_t cells() const { return weights.size(); }
    double edge(std::size_t i) const;      // i = 0..cells()
    double node(std::size_t i) const;      // cell midpoint, i = 0..cells()-1
    double mass() const;
};

GridMeasure uniform_grid_measure(const Interval& itv, std::size_t cells, double mass = 1.0);

// V^mu(z) = -int log|z - t| dmu(t), cell integrals in closed form so the
// value is finite on the support itself.
double log_potential(const GridMeasure& mu, std::complex<double> z);

// CDF of the (normalized) grid measure sampled at its cell edges.
struct GridCdf {
    std::vector<double> x;
    std::vector<double> F;
};
GridCdf cdf_of(const GridMeasure& mu);

// sup |F_mu - F| over the cell edges, for an analytic reference CDF.
double kolmogorov_vs_cdf(const GridMeasure& mu, const std::function<double(double)>& cdf);

// Kolmogorov distance between the normalized grid measure (CDF linear within
// each cell) and the empirical measure of a sorted point set.
double kolmogorov_grid_vs_points(const GridMeasure& mu, const std::vector<double>& pts);

// Nikishin interaction matrix for limit proportions p_1 >= ... >= p_m:
// tridiagonal with diagonal P_j^2 and off-diagonal -P_j P_{j+1} / 2, where
// P_j = p_j + ... + p_m.
struct InteractionMatrix {
    std::vector<double> p;                      // proportions, sum to 1
    std::vector<double> P;                      // tail sums, P[0] = 1
    std::vector<std::vector<double>> entries;   // m x m, symmetric
    std::size_t size() const { return p.size(); }
};
InteractionMatrix interaction_matrix(const std::vector<double>& p);

struct EquilibriumSolution {
    std::vector<GridMeasure> lambdas;   // lambdas[j-1] lives on E_j
    std::vector<double> omegas;         // omega_j = min over E_j of W_j
    std::vector<double> omegas_prime;   // P_j^2 omega_j - P_j P_{j-1} omega_{j-1}
    InteractionMatrix C;
    double kkt_residual = 0.0;
    int iterations = 0;

    // W_j(x) = sum_k c_{jk} V^{lambda_k}(x); j is 1-based.
    double w_function(std::size_t j, std::complex<double> z) const;
};

// Minimize sum_{j,k} c_{jk} * I(mu_j, mu_k) with I the mutual logarithmic
// energy, over probability measures mu_j supported on E_j, discretized on G
// cells per interval.  A full-support stationarity solve provides the warm
// start; projected gradient with Barzilai-Borwein steps and monotone halving
// then drives the KKT residual below tau.
EquilibriumSolution solve_vector_equilibrium(const std::vector<Interval>& supports,
                                             const InteractionMatrix& C,
                                             std::size_t grid,
                                             double tau = 1e-6,
                                             int max_iter = 20000);

// Scalar equilibrium in the external field phi: returns (lambda, w) with
// V^lambda + phi = w on supp lambda and >= w on E, within tolerance.
std::pair<GridMeasure, double>
solve_external_field_equilibrium(const Interval& support,
                                 const std::function<double(double)>& phi,
                                 std::size_t grid,
                                 double tau = 1e-6,
                                 int max_iter = 20000);

// U_j(z) = P_j V^{lambda_j}(z) - P_{j+1} V^{lambda_{j+1}}(z)
//          - 2 sum_{k<=j} omega_k / P_k        (P_{m+1} term dropped at j=m)
double u_function(const EquilibriumSolution& sol, std::size_t j, std::complex<double> z);

// xi_j(z) = max_{k<=j} U_k(z), with the attaining index (region label).
struct XiValue {
    double value = 0.0;
    std::size_t argmax = 1;
};
XiValue xi_function(const EquilibriumSolution& sol, std::size_t j, std::complex<double> z);

}  // namespace nikhp
