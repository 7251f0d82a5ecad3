#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "nikhp/hermite_pade.hpp"
#include "nikhp/potential.hpp"
#include "nikhp/system.hpp"

namespace nikhp {

// Sequence of decreasing multi-indices with n_j(t)/|n(t)| -> p_j and
// bounded diameter n_1 - n_m <= d.
struct DegreeSchedule {
    std::string kind;                 // "diagonal" or "staircase"
    std::vector<double> proportions;  // limit proportions p_1..p_m
    std::vector<MultiIndex> indices;
    int diameter = 0;
};

DegreeSchedule diagonal_schedule(std::size_t m, int t_max, int t_min = 1);
DegreeSchedule staircase_schedule(std::size_t m, int steps, int first = 1);

// One measured-vs-predicted comparison; shared row shape for all harness
// CSV output.
struct ReportRow {
    int total = 0;            // |n|
    std::string index;
    std::string label;        // e.g. "j=1", "k=2", "kolmogorov"
    std::string point;
    double measured = 0.0;
    double predicted = 0.0;
    double rel_error = 0.0;
    bool pass = true;
};
std::string rows_to_csv(const std::vector<ReportRow>& rows);

// Optional in-process reuse of solved families across harnesses (keyed by
// index string; one store per system and precision).
struct FamilyStore {
    std::map<std::string, TypeIIFamily> type_ii;
    std::map<std::string, TypeIFamily> type_i;
};
const TypeIIFamily& store_type_ii(FamilyStore& store, const NikishinSystem& sys,
                                  const MultiIndex& n, bool finalize, std::size_t nq = 0);
const TypeIFamily& store_type_i(FamilyStore& store, const NikishinSystem& sys,
                                const MultiIndex& n, bool finalize, std::size_t nq = 0);

// Residuals of the exact identities relating the forward and reversed
// Cauchy-transform chains and the two families of second-kind functions.
struct ConnectionResiduals {
    Real miracle;    // alternating shat-chain sum, identically zero
    Real con1;       // Psi_j expressed through Phi's
    Real con2;       // Phi_j expressed through Psi's
    Real inversion;  // max norm of (D D^{-1} - I) Psi-vector
};
ConnectionResiduals connection_check(const TypeIIFamily& fam, const NikishinSystem& sys,
                                     std::size_t j, const Complex& z);

// Weak asymptotics: zero-counting measures vs lambda_j, nth roots of
// |Psi_{n,j}| vs exp(U_j) (j = 0 uses -P_1 V^{lambda_1}), and the
// normalization constants vs exp(-sum omega_k / P_k).  Comparisons of nth
// roots are scored by the relative error of the logs.
struct WeakReport {
    std::vector<ReportRow> rows;
    bool kolmogorov_trend = false;  // distance at last t < at first t, every j
    bool psi_trend = false;         // same for the worst psi log-error
    double last_kolmogorov = 0.0;   // max over j at the final index
    double last_psi_error = 0.0;    // max log rel-error over j, points
};
WeakReport weak_report(const NikishinSystem& sys, const DegreeSchedule& sched,
                       const EquilibriumSolution& eq, const std::vector<Complex>& points,
                       FamilyStore* store = nullptr, std::size_t nq = 0);

// Geometric convergence of P_{n,j}/Q_n to shat_{1,j}:
// r(t,z) = (1/|n|) log |shat_{1,j}(z) - P_{n,j}(z)/Q_n(z)|, compared with
// (V^{lambda_1} + xi_j)(z) at the final schedule entry.
struct RateReport {
    std::vector<ReportRow> rows;
    bool all_negative_past_third = true;
    double max_final_rel_error = 0.0;
};
RateReport rate_report(const NikishinSystem& sys, const DegreeSchedule& sched, std::size_t j,
                       const std::vector<Complex>& points, const EquilibriumSolution& eq,
                       FamilyStore* store = nullptr, std::size_t nq = 0);

// Ratio asymptotics R_t,k(z) = Q_{n(t)+e_ell, k}(z) / Q_{n(t), k}(z):
// stabilization along the schedule, positivity at a large real point, and
// the boundary product
//   gamma_k(x) = R_k(x+ie) R_k(x-ie) / (R_{k-1} R_{k+1})(x)
// which must be constant in x on each Delta_k (the boundary-value condition
// up to the normalization constants absorbed by gamma).  log gamma is
// extrapolated to the bank linearly in the local Green's function of
// Delta_k over a decreasing epsilon ladder.
struct RatioReport {
    std::size_t ell = 1;
    std::vector<ReportRow> rows;           // ratios per (t, k, point)
    std::vector<ReportRow> boundary_rows;  // gamma per (k, x) vs per-k median
    std::vector<double> epsilon_ladder{0.4, 0.3, 0.2};  // relative to |Delta_k|/2
    bool deltas_decreasing_last3 = true;
    bool sign_ok = true;                   // R_k > 0 at the large real probe
    double max_boundary_rel_dev = 0.0;
};
RatioReport ratio_report(const NikishinSystem& sys, const DegreeSchedule& sched,
                         std::size_t ell, const std::vector<Complex>& points,
                         FamilyStore* store = nullptr, std::size_t nq = 0);

// Same stabilization harness for the type I zero polynomials A_{n,k} and the
// forms evaluated off the intervals; no closed-form limit is claimed.
struct TypeIRatioReport {
    std::size_t ell = 1;
    std::vector<ReportRow> rows;
    bool deltas_decreasing = true;  // last delta < first delta per series
};
TypeIRatioReport type_i_ratio_report(const NikishinSystem& sys, const DegreeSchedule& sched,
                                     std::size_t ell, const std::vector<Complex>& points,
                                     FamilyStore* store = nullptr, std::size_t nq = 0);

}  // namespace nikhp
