#include "nikhp/potential.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nikhp {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Antiderivative of log|u|, continuous through u = 0.
double log_antideriv(double u) {
    if (u == 0.0) return 0.0;
    return u * (std::log(std::fabs(u)) - 1.0);
}

// int_c^d log|z - t| dt for complex z (real part of the holomorphic branch).
double log_cell_integral(std::complex<double> z, double c, double d) {
    if (z.imag() == 0.0)
        return log_antideriv(z.real() - c) - log_antideriv(z.real() - d);
    auto H = [](std::complex<double> u) { return (u * (std::log(u) - 1.0)).real(); };
    return H(z - c) - H(z - d);
}

// G(u) with G'' = 2 log|u|; the double integral of log|x-y| over
// [a,b]x[c,d] equals G(b-c)+G(a-d)-G(a-c)-G(b-d).
double Gker(double u) {
    if (u == 0.0) return 0.0;
    return u * u * (2.0 * std::log(std::fabs(u)) - 3.0) / 4.0;
}

double cell_pair_log_integral(double a, double b, double c, double d) {
    return Gker(b - c) + Gker(a - d) - Gker(a - c) - Gker(b - d);
}

// Mean of -log|x-y| over cell i of mu and cell l of nu.
Eigen::MatrixXd kernel_block(const GridMeasure& mu, const GridMeasure& nu) {
    const std::size_t gi = mu.cells(), gl = nu.cells();
    Eigen::MatrixXd K(gi, gl);
    for (std::size_t i = 0; i < gi; ++i) {
        const double a = mu.edge(i), b = mu.edge(i + 1), hi = b - a;
        for (std::size_t l = 0; l < gl; ++l) {
            const double c = nu.edge(l), d = nu.edge(l + 1);
            K(i, l) = -cell_pair_log_integral(a, b, c, d) / (hi * (d - c));
        }
    }
    return K;
}

// Euclidean projection onto {w >= 0, sum w = mass}.
void simplex_project(Eigen::Ref<Eigen::VectorXd> v, double mass) {
    const Eigen::Index n = v.size();
    std::vector<double> u(v.data(), v.data() + n);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        cum += u[k];
        const double t = (cum - mass) / static_cast<double>(k + 1);
        if (u[k] - t > 0.0)
            theta = t;
        else
            break;
    }
    for (Eigen::Index i = 0; i < n; ++i) v[i] = std::max(v[i] - theta, 0.0);
}

struct SolveResult {
    Eigen::VectorXd w;
    Eigen::VectorXd g;
    double residual = 0.0;
    int iterations = 0;
};

// Minimize E(w) = 0.5 w'Mw + lin'w over the product of simplices
// (blocks of size G, each of mass 1).  M must be symmetric PSD on the
// feasible directions.  Warm start: stationarity with mass constraints and
// no sign constraints (exact when every cell carries mass); projected
// gradient with BB steps cleans up any clipped negatives.
SolveResult minimize_energy(const Eigen::MatrixXd& M, const Eigen::VectorXd& lin,
                            std::size_t m, std::size_t G, double tau, int max_iter) {
    const Eigen::Index N = M.rows();
    SolveResult out;

    {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N + m, N + m);
        A.topLeftCorner(N, N) = M;
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t i = 0; i < G; ++i) {
                A(static_cast<Eigen::Index>(j * G + i), N + static_cast<Eigen::Index>(j)) = -1.0;
                A(N + static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j * G + i)) = 1.0;
            }
        }
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(N + m);
        rhs.head(N) = -lin;
        rhs.tail(m).setOnes();
        Eigen::VectorXd sol = A.partialPivLu().solve(rhs);
        out.w = sol.head(N).cwiseMax(0.0);
    }
    for (std::size_t j = 0; j < m; ++j) {
        auto blk = out.w.segment(static_cast<Eigen::Index>(j * G), static_cast<Eigen::Index>(G));
        const double s = blk.sum();
        if (s <= 0.0)
            blk.setConstant(1.0 / static_cast<double>(G));
        else
            blk *= 1.0 / s;
    }

    const double active_floor = 1e-10 / static_cast<double>(G);
    auto residual_of = [&](const Eigen::VectorXd& w, const Eigen::VectorXd& g) {
        double res = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            double lo = std::numeric_limits<double>::infinity();
            double hi_active = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < G; ++i) {
                const Eigen::Index r = static_cast<Eigen::Index>(j * G + i);
                lo = std::min(lo, g[r]);
                if (w[r] > active_floor) hi_active = std::max(hi_active, g[r]);
            }
            res = std::max(res, (hi_active - lo) / 2.0);
        }
        return res;
    };

    Eigen::VectorXd g = M * out.w + lin;
    double energy = 0.5 * out.w.dot(g + lin);
    out.residual = residual_of(out.w, g);

    double step = 1.0 / std::max(1.0, M.cwiseAbs().rowwise().sum().maxCoeff());
    Eigen::VectorXd w_prev = out.w, g_prev = g;
    int it = 0;
    while (out.residual > tau && it < max_iter) {
        ++it;
        Eigen::VectorXd trial;
        double trial_energy = 0.0;
        Eigen::VectorXd trial_g;
        double t = step;
        bool accepted = false;
        for (int h = 0; h < 60; ++h) {
            trial = out.w - t * g;
            for (std::size_t j = 0; j < m; ++j)
                simplex_project(trial.segment(static_cast<Eigen::Index>(j * G),
                                              static_cast<Eigen::Index>(G)), 1.0);
            trial_g = M * trial + lin;
            trial_energy = 0.5 * trial.dot(trial_g + lin);
            if (trial_energy <= energy + 1e-14 * std::fabs(energy)) {
                accepted = true;
                break;
            }
            t /= 2.0;
        }
        if (!accepted) break;

        Eigen::VectorXd dw = trial - out.w;
        Eigen::VectorXd dg = trial_g - g;
        out.w = trial;
        g = trial_g;
        energy = trial_energy;
        out.residual = residual_of(out.w, g);
        const double denom = dw.dot(dg);
        if (denom > 0.0) {
            step = dw.squaredNorm() / denom;
            step = std::clamp(step, 1e-12, 1e8);
        }
        if (dw.lpNorm<Eigen::Infinity>() == 0.0) break;
    }
    out.iterations = it;
    out.g = g;
    return out;
}

}  // namespace

double GridMeasure::edge(std::size_t i) const {
    const double theta = kPi * static_cast<double>(i) / static_cast<double>(cells());
    return a + (b - a) * (1.0 - std::cos(theta)) / 2.0;
}

double GridMeasure::node(std::size_t i) const { return (edge(i) + edge(i + 1)) / 2.0; }

double GridMeasure::mass() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

GridMeasure uniform_grid_measure(const Interval& itv, std::size_t cells, double mass) {
    GridMeasure mu;
    mu.a = static_cast<double>(itv.a);
    mu.b = static_cast<double>(itv.b);
    mu.weights.assign(cells, mass / static_cast<double>(cells));
    return mu;
}

double log_potential(const GridMeasure& mu, std::complex<double> z) {
    double v = 0.0;
    for (std::size_t i = 0; i < mu.cells(); ++i) {
        const double c = mu.edge(i), d = mu.edge(i + 1);
        v -= mu.weights[i] / (d - c) * log_cell_integral(z, c, d);
    }
    return v;
}

GridCdf cdf_of(const GridMeasure& mu) {
    GridCdf out;
    const double total = mu.mass();
    out.x.resize(mu.cells() + 1);
    out.F.resize(mu.cells() + 1);
    double cum = 0.0;
    out.x[0] = mu.edge(0);
    out.F[0] = 0.0;
    for (std::size_t i = 0; i < mu.cells(); ++i) {
        cum += mu.weights[i];
        out.x[i + 1] = mu.edge(i + 1);
        out.F[i + 1] = cum / total;
    }
    return out;
}

double kolmogorov_vs_cdf(const GridMeasure& mu, const std::function<double(double)>& cdf) {
    const GridCdf c = cdf_of(mu);
    double d = 0.0;
    for (std::size_t i = 0; i < c.x.size(); ++i)
        d = std::max(d, std::fabs(c.F[i] - cdf(c.x[i])));
    return d;
}

double kolmogorov_grid_vs_points(const GridMeasure& mu, const std::vector<double>& pts) {
    std::vector<double> s(pts);
    std::sort(s.begin(), s.end());
    const GridCdf c = cdf_of(mu);
    auto Fg = [&](double x) {
        if (x <= c.x.front()) return 0.0;
        if (x >= c.x.back()) return 1.0;
        const auto it = std::upper_bound(c.x.begin(), c.x.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - c.x.begin());
        const double x0 = c.x[i - 1], x1 = c.x[i];
        return c.F[i - 1] + (c.F[i] - c.F[i - 1]) * (x - x0) / (x1 - x0);
    };
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = Fg(s[i]);
        d = std::max({d, std::fabs(f - static_cast<double>(i) / n),
                      std::fabs(f - static_cast<double>(i + 1) / n)});
    }
    return d;
}

InteractionMatrix interaction_matrix(const std::vector<double>& p) {
    const std::size_t m = p.size();
    if (m == 0) throw std::invalid_argument("interaction_matrix: empty proportions");
    double sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        if (!(p[j] > 0.0 && p[j] < 1.0) && !(m == 1 && p[j] == 1.0))
            throw std::invalid_argument("interaction_matrix: proportions must lie in (0,1)");
        if (j + 1 < m && p[j] < p[j + 1] - 1e-12)
            throw std::invalid_argument("interaction_matrix: proportions must be non-increasing");
        sum += p[j];
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("interaction_matrix: proportions must sum to 1");

    InteractionMatrix C;
    C.p = p;
    C.P.resize(m);
    double tail = 0.0;
    for (std::size_t j = m; j-- > 0;) {
        tail += p[j];
        C.P[j] = tail;
    }
    C.entries.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        C.entries[j][j] = C.P[j] * C.P[j];
        if (j + 1 < m) {
            C.entries[j][j + 1] = -C.P[j] * C.P[j + 1] / 2.0;
            C.entries[j + 1][j] = C.entries[j][j + 1];
        }
    }

    Eigen::MatrixXd E(m, m);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) E(j, k) = C.entries[j][k];
    Eigen::LLT<Eigen::MatrixXd> llt(E);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("interaction_matrix: matrix is not positive definite");
    return C;
}

double EquilibriumSolution::w_function(std::size_t j, std::complex<double> z) const {
    double w = 0.0;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const double c = C.entries[j - 1][k];
        if (c != 0.0) w += c * log_potential(lambdas[k], z);
    }
    return w;
}

EquilibriumSolution solve_vector_equilibrium(const std::vector<Interval>& supports,
                                             const InteractionMatrix& C,
                                             std::size_t grid,
                                             double tau, int max_iter) {
    const std::size_t m = supports.size();
    if (m != C.size())
        throw std::invalid_argument("solve_vector_equilibrium: support/matrix size mismatch");
    if (grid < 200)
        throw std::invalid_argument("solve_vector_equilibrium: grid must be at least 200");

    EquilibriumSolution sol;
    sol.C = C;
    sol.lambdas.reserve(m);
    for (std::size_t j = 0; j < m; ++j)
        sol.lambdas.push_back(uniform_grid_measure(supports[j], grid));

    const Eigen::Index N = static_cast<Eigen::Index>(m * grid);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N, N);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            if (C.entries[j][k] == 0.0) continue;
            M.block(static_cast<Eigen::Index>(j * grid), static_cast<Eigen::Index>(k * grid),
                    static_cast<Eigen::Index>(grid), static_cast<Eigen::Index>(grid)) =
                2.0 * C.entries[j][k] * kernel_block(sol.lambdas[j], sol.lambdas[k]);
        }
    }

    SolveResult r = minimize_energy(M, Eigen::VectorXd::Zero(N), m, grid, tau, max_iter);
    if (r.residual > tau)
        throw std::runtime_error("solve_vector_equilibrium: projected gradient stalled, KKT residual " +
                                 std::to_string(r.residual));

    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < grid; ++i)
            sol.lambdas[j].weights[i] = r.w[static_cast<Eigen::Index>(j * grid + i)];
        // The projection keeps the masses at 1 up to roundoff in the final
        // summation order; absorb that last ulp into the largest weight so
        // downstream mass() comparisons are exact.
        auto& w = sol.lambdas[j].weights;
        const std::size_t top = static_cast<std::size_t>(
            std::max_element(w.begin(), w.end()) - w.begin());
        for (int rep = 0; rep < 4 && sol.lambdas[j].mass() != 1.0; ++rep)
            w[top] += 1.0 - sol.lambdas[j].mass();
    }

    sol.omegas.resize(m);
    for (std::size_t j = 0; j < m; ++j)
        sol.omegas[j] =
            r.g.segment(static_cast<Eigen::Index>(j * grid), static_cast<Eigen::Index>(grid))
                .minCoeff() / 2.0;
    sol.omegas_prime.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        sol.omegas_prime[j] = C.P[j] * C.P[j] * sol.omegas[j];
        if (j > 0) sol.omegas_prime[j] -= C.P[j] * C.P[j - 1] * sol.omegas[j - 1];
    }
    sol.kkt_residual = r.residual;
    sol.iterations = r.iterations;
    return sol;
}

std::pair<GridMeasure, double>
solve_external_field_equilibrium(const Interval& support,
                                 const std::function<double(double)>& phi,
                                 std::size_t grid, double tau, int max_iter) {
    if (grid < 200)
        throw std::invalid_argument("solve_external_field_equilibrium: grid must be at least 200");
    GridMeasure mu = uniform_grid_measure(support, grid);
    const Eigen::Index N = static_cast<Eigen::Index>(grid);
    Eigen::MatrixXd M = 2.0 * kernel_block(mu, mu);
    Eigen::VectorXd lin(N);
    for (std::size_t i = 0; i < grid; ++i) lin[static_cast<Eigen::Index>(i)] = 2.0 * phi(mu.node(i));

    SolveResult r = minimize_energy(M, lin, 1, grid, tau, max_iter);
    if (r.residual > tau)
        throw std::runtime_error("solve_external_field_equilibrium: projected gradient stalled, "
                                 "KKT residual " + std::to_string(r.residual));
    for (std::size_t i = 0; i < grid; ++i) mu.weights[i] = r.w[static_cast<Eigen::Index>(i)];
    return {mu, r.g.minCoeff() / 2.0};
}

double u_function(const EquilibriumSolution& sol, std::size_t j, std::complex<double> z) {
    const std::size_t m = sol.lambdas.size();
    if (j < 1 || j > m) throw std::invalid_argument("u_function: index out of range");
    double u = sol.C.P[j - 1] * log_potential(sol.lambdas[j - 1], z);
    if (j < m) u -= sol.C.P[j] * log_potential(sol.lambdas[j], z);
    for (std::size_t k = 0; k < j; ++k) u -= 2.0 * sol.omegas[k] / sol.C.P[k];
    return u;
}

XiValue xi_function(const EquilibriumSolution& sol, std::size_t j, std::complex<double> z) {
    XiValue xi;
    xi.value = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= j; ++k) {
        const double u = u_function(sol, k, z);
        if (u > xi.value) {
            xi.value = u;
            xi.argmax = k;
        }
    }
    return xi;
}

}  // namespace nikhp
