#include "nikhp/quadrature.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace nikhp {

namespace {
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
}

QuadratureRule golub_welsch(const Recurrence& rec, std::size_t n) {
    if (n < 1) throw std::invalid_argument("golub_welsch: n >= 1 required");
    if (rec.alpha.size() < n || rec.beta.size() < n)
        throw std::invalid_argument("golub_welsch: recurrence too short");
    // Eigenvalues of the Jacobi matrix give the nodes; asking the tridiagonal
    // solver for eigenvectors as well would cost O(n^3) multiprecision flops,
    // so the weights come from the Christoffel identity
    //   w_i = 1 / sum_k ptilde_k(x_i)^2
    // over the orthonormal polynomials instead.
    using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
    Vec diag(n), sub(n > 1 ? n - 1 : 1);
    for (std::size_t i = 0; i < n; ++i) diag(i) = rec.alpha[i];
    for (std::size_t i = 0; i + 1 < n; ++i) sub(i) = sqrt(rec.beta[i + 1]);
    Eigen::SelfAdjointEigenSolver<Mat> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("golub_welsch: eigensolver failed");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Real& x = es.eigenvalues()(i);
        Real pm = 0, pc = 1 / sqrt(rec.beta[0]), s = pc * pc;
        for (std::size_t k = 0; k + 1 < n; ++k) {
            Real e = sqrt(rec.beta[k + 1]);
            Real pn = ((x - rec.alpha[k]) * pc - (k > 0 ? sqrt(rec.beta[k]) : Real(0)) * pm) / e;
            pm = pc;
            pc = pn;
            s += pc * pc;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 1 / s;
    }
    return rule;
}

Recurrence jacobi_recurrence(std::size_t n, const Real& a, const Real& b) {
    if (!(a > -1 && b > -1)) throw std::domain_error("jacobi_recurrence: non-integrable density");
    Recurrence rec;
    rec.alpha.resize(n);
    rec.beta.resize(n);
    Real ab = a + b;
    rec.alpha[0] = (b - a) / (ab + 2);
    rec.beta[0] = pow(Real(2), ab + 1) * tgamma(a + 1) * tgamma(b + 1) / tgamma(ab + 2);
    for (std::size_t k = 1; k < n; ++k) {
        Real kk(static_cast<int>(k));
        Real den = (2 * kk + ab) * (2 * kk + ab + 2);
        rec.alpha[k] = (b * b - a * a) / den;
        if (k == 1) {
            rec.beta[1] = 4 * (a + 1) * (b + 1) / ((ab + 2) * (ab + 2) * (ab + 3));
        } else {
            rec.beta[k] = 4 * kk * (kk + a) * (kk + b) * (kk + ab) /
                          ((2 * kk + ab) * (2 * kk + ab) * (2 * kk + ab + 1) * (2 * kk + ab - 1));
        }
    }
    return rec;
}

Recurrence stieltjes(std::size_t n, const QuadratureRule& discrete) {
    const std::size_t N = discrete.size();
    if (n > N) throw std::invalid_argument("stieltjes: order exceeds discrete support");
    Recurrence rec;
    rec.alpha.resize(n);
    rec.beta.resize(n);
    std::vector<Real> p_prev(N, Real(0)), p_cur(N, Real(1));
    Real norm_prev = 1, norm_cur = 0;
    for (std::size_t i = 0; i < N; ++i) norm_cur += discrete.weights[i];
    rec.beta[0] = norm_cur;
    for (std::size_t k = 0; k < n; ++k) {
        Real xs = 0;
        for (std::size_t i = 0; i < N; ++i)
            xs += discrete.weights[i] * discrete.nodes[i] * p_cur[i] * p_cur[i];
        rec.alpha[k] = xs / norm_cur;
        if (k + 1 == n) break;
        Real bk = (k == 0) ? Real(0) : norm_cur / norm_prev;
        std::vector<Real> p_next(N);
        for (std::size_t i = 0; i < N; ++i)
            p_next[i] = (discrete.nodes[i] - rec.alpha[k]) * p_cur[i] - bk * p_prev[i];
        Real norm_next = 0;
        for (std::size_t i = 0; i < N; ++i)
            norm_next += discrete.weights[i] * p_next[i] * p_next[i];
        rec.beta[k + 1] = norm_next / norm_cur;
        p_prev = std::move(p_cur);
        p_cur = std::move(p_next);
        norm_prev = norm_cur;
        norm_cur = norm_next;
    }
    return rec;
}

namespace {
QuadratureRule map_to_interval(QuadratureRule rule, const Interval& itv, const Real& weight_scale) {
    Real mid = itv.midpoint(), half = itv.half_length();
    for (auto& x : rule.nodes) x = mid + half * x;
    for (auto& w : rule.weights) w *= weight_scale;
    return rule;
}
}  // namespace

QuadratureRule gauss_jacobi(std::size_t n, const Real& a, const Real& b, const Interval& itv) {
    auto rule = golub_welsch(jacobi_recurrence(n, a, b), n);
    return map_to_interval(std::move(rule), itv, pow(itv.half_length(), a + b + 1));
}

QuadratureRule gauss_legendre(std::size_t n, const Interval& itv) {
    auto rule = golub_welsch(jacobi_recurrence(n, Real(0), Real(0)), n);
    return map_to_interval(std::move(rule), itv, itv.half_length());
}

}  // namespace nikhp
