#include "nikhp/zeros.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace nikhp {

namespace {

// Chebyshev-distributed interior points, densest near the endpoints.
std::vector<Real> chebyshev_grid(const Interval& itv, std::size_t g) {
    std::vector<Real> pts(g);
    Real mid = itv.midpoint(), half = itv.half_length(), pi = real_pi();
    for (std::size_t i = 0; i < g; ++i)
        pts[i] = mid - half * cos(pi * (2 * static_cast<int>(i) + 1) / (2 * static_cast<int>(g)));
    return pts;
}

// Bracketed root refinement: secant proposals accepted while they stay
// inside the bracket, bisection otherwise. Converges to working precision.
Real refine_root(const std::function<Real(const Real&)>& f, Real a, Real b, Real fa, Real fb) {
    const Real eps = pow(Real(2), -static_cast<int>(precision_bits()) + 4);
    const Real scale = abs(a) + abs(b) + 1;
    for (int it = 0; it < 2 * static_cast<int>(precision_bits()); ++it) {
        if (b - a <= eps * scale) break;
        Real x;
        Real denom = fb - fa;
        if (denom != 0) {
            x = b - fb * (b - a) / denom;  // secant
            Real margin = (b - a) / 1024;
            if (!(x > a + margin && x < b - margin)) x = (a + b) / 2;
        } else {
            x = (a + b) / 2;
        }
        Real fx = f(x);
        if (fx == 0) return x;
        if ((fx > 0) == (fa > 0)) { a = x; fa = fx; }
        else { b = x; fb = fx; }
    }
    return (a + b) / 2;
}

std::vector<Real> scan_zeros(const std::function<Real(const Real&)>& f,
                             const Interval& itv, std::size_t g) {
    auto pts = chebyshev_grid(itv, g);
    std::vector<Real> vals(g);
    for (std::size_t i = 0; i < g; ++i) vals[i] = f(pts[i]);
    std::vector<Real> roots;
    for (std::size_t i = 0; i + 1 < g; ++i) {
        if (vals[i] == 0) { roots.push_back(pts[i]); continue; }
        if ((vals[i] > 0) != (vals[i + 1] > 0) && vals[i + 1] != 0)
            roots.push_back(refine_root(f, pts[i], pts[i + 1], vals[i], vals[i + 1]));
    }
    if (vals[g - 1] == 0) roots.push_back(pts[g - 1]);
    return roots;
}

}  // namespace

ZeroList poly_real_zeros(const Polynomial& p, const Interval& itv) {
    if (p.is_zero()) throw std::invalid_argument("poly_real_zeros: zero polynomial");
    ZeroList out{itv, {}, true};
    const int n = p.degree();
    if (n == 0) return out;

    // Companion matrix in double precision for the initial localization.
    // The substitution x = mid + half*u rebases the polynomial onto [-1,1]
    // first; monomial coefficients over a shifted interval are otherwise too
    // ill-conditioned in double once the degree grows past a dozen.
    const Real mid = itv.midpoint(), half = itv.half_length();
    std::vector<Real> q{p[n]};
    for (int i = n - 1; i >= 0; --i) {
        q.push_back(Real(0));
        for (std::size_t k = q.size() - 1; k > 0; --k) q[k] = q[k - 1] * half + q[k] * mid;
        q[0] = q[0] * mid + p[i];
    }
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) C(i, n - 1) = -static_cast<double>(q[i] / q[n]);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);

    const Polynomial dp = p.derivative();
    const Real width = itv.length();
    std::vector<Real> roots;
    for (int i = 0; i < n; ++i) {
        auto ev = es.eigenvalues()(i);
        if (std::abs(ev.imag()) > 1e-6 * (1.0 + std::abs(ev.real()))) continue;
        Real x = mid + half * Real(ev.real());
        if (x < itv.a - width / 100 || x > itv.b + width / 100) continue;
        // Newton polish at working precision (quadratic from a double seed).
        for (int it = 0; it < 64; ++it) {
            Real d = dp(x);
            if (d == 0) break;
            Real step = p(x) / d;
            x -= step;
            if (abs(step) <= abs(x) * pow(Real(2), -static_cast<int>(precision_bits()) + 2))
                break;
        }
        if (itv.contains_strict(x)) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    // Seeds polishing into the same simple root agree to nearly full
    // precision; on a multiple root Newton stalls at a much wider spacing.
    // Merge anything closer than 2^{-P/4} and flag the slow-converging band
    // as non-simple (the derivative test below catches the rest).
    Real tol_same = width * pow(Real(2), -3 * static_cast<int>(precision_bits()) / 4);
    Real tol_cluster = width * pow(Real(2), -static_cast<int>(precision_bits()) / 4);
    for (const auto& r : roots) {
        if (out.points.empty() || r - out.points.back() > tol_cluster) {
            out.points.push_back(r);
        } else if (r - out.points.back() > tol_same) {
            out.all_simple = false;
        }
    }

    // Simplicity: |p'(root)| > 2^{-P/4} * (max |p| on the interval).  Newton
    // only resolves a multiple root to ~2^{-P/2} of its location, leaving a
    // residual derivative far above 2^{-P}, so the margin sits at quarter
    // precision; simple zeros of the polynomials handled here keep |p'| at
    // O(deg/width) times the scale, many orders above it.
    Real scale = 0;
    for (const auto& t : chebyshev_grid(itv, 64)) scale = std::max(scale, abs(p(t)));
    Real thresh = pow(Real(2), -static_cast<int>(precision_bits()) / 4) * scale;
    for (const auto& r : out.points)
        if (abs(dp(r)) <= thresh) out.all_simple = false;
    return out;
}

std::size_t sign_change_count(const std::function<Real(const Real&)>& f,
                              const Interval& itv, std::size_t grid) {
    auto pts = chebyshev_grid(itv, grid);
    std::size_t count = 0;
    Real prev = f(pts[0]);
    for (std::size_t i = 1; i < grid; ++i) {
        Real v = f(pts[i]);
        if (v == 0) continue;
        if (prev != 0 && (v > 0) != (prev > 0)) ++count;
        prev = v;
    }
    return count;
}

ZeroList form_zeros(const std::function<Real(const Real&)>& f, const Interval& itv,
                    std::size_t expected) {
    std::size_t g = 8 * expected + 64;
    auto roots = scan_zeros(f, itv, g);
    if (roots.size() != expected) roots = scan_zeros(f, itv, 4 * g);
    if (roots.size() != expected) throw CountMismatch(expected, roots.size());
    return ZeroList{itv, std::move(roots), true};
}

InterlaceResult interlace_check(const ZeroList& z1, const ZeroList& z2) {
    InterlaceResult res;
    const auto& a = z1.points;
    const auto& b = z2.points;
    if (a.size() > b.size() + 1 || b.size() > a.size() + 1) {
        res.ok = false;
        res.reason = "length difference exceeds 1";
        return res;
    }
    // Merge with provenance; alternation means no two consecutive entries
    // come from the same list, and no entry is shared.
    std::vector<std::pair<Real, int>> merged;
    for (const auto& x : a) merged.emplace_back(x, 0);
    for (const auto& x : b) merged.emplace_back(x, 1);
    std::sort(merged.begin(), merged.end(),
              [](const auto& u, const auto& v) { return u.first < v.first; });
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
        if (merged[i].first == merged[i + 1].first) {
            res.ok = false;
            res.gap_lo = res.gap_hi = merged[i].first;
            res.reason = "common zero";
            return res;
        }
        if (merged[i].second == merged[i + 1].second) {
            res.ok = false;
            res.gap_lo = merged[i].first;
            res.gap_hi = merged[i + 1].first;
            res.reason = "two consecutive zeros from the same list";
            return res;
        }
    }
    return res;
}

CountingMeasure counting_measure(const ZeroList& z) {
    if (z.points.empty()) throw std::invalid_argument("counting_measure: empty zero list");
    return CountingMeasure{z.points};
}

Cdf cdf_of(const CountingMeasure& mu) {
    Cdf c;
    const std::size_t n = mu.points.size();
    c.x.reserve(n);
    c.F.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        c.x.push_back(static_cast<double>(mu.points[i]));
        c.F.push_back(static_cast<double>(i + 1) / static_cast<double>(n));
    }
    return c;
}

double kolmogorov_distance(const Cdf& a, const Cdf& b) {
    double best = 0, Fa = 0, Fb = 0;
    std::size_t i = 0, j = 0;
    while (i < a.x.size() || j < b.x.size()) {
        double xa = i < a.x.size() ? a.x[i] : std::numeric_limits<double>::infinity();
        double xb = j < b.x.size() ? b.x[j] : std::numeric_limits<double>::infinity();
        double x = std::min(xa, xb);
        while (i < a.x.size() && a.x[i] <= x) Fa = a.F[i++];
        while (j < b.x.size() && b.x[j] <= x) Fb = b.F[j++];
        best = std::max(best, std::abs(Fa - Fb));
    }
    return best;
}

}  // namespace nikhp
