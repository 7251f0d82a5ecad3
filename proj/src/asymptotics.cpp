#include "nikhp/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nikhp {

namespace {

std::string format_point(const Complex& z) {
    std::ostringstream os;
    const double re = static_cast<double>(z.re);
    const double im = static_cast<double>(z.im);
    os << re;
    if (im != 0.0) os << (im > 0 ? "+" : "") << im << "i";
    return os.str();
}

double abs_log(const Complex& v) {
    return static_cast<double>(log(abs(v)));
}

// |log measured / log predicted - 1|, the scale-free nth-root comparison.
double log_rel_error(double measured_log, double predicted_log) {
    const double denom = std::max(std::fabs(predicted_log), 1e-12);
    return std::fabs(measured_log - predicted_log) / denom;
}

std::vector<double> zeros_as_doubles(const Polynomial& p, const Interval& itv) {
    ZeroList zl = poly_real_zeros(p, itv);
    std::vector<double> out;
    out.reserve(zl.points.size());
    for (const Real& r : zl.points) out.push_back(static_cast<double>(r));
    return out;
}

}  // namespace

DegreeSchedule diagonal_schedule(std::size_t m, int t_max, int t_min) {
    if (t_min < 1 || t_max < t_min) throw std::invalid_argument("diagonal_schedule: bad range");
    DegreeSchedule s;
    s.kind = "diagonal";
    s.proportions.assign(m, 1.0 / static_cast<double>(m));
    s.diameter = 0;
    for (int t = t_min; t <= t_max; ++t)
        s.indices.push_back(MultiIndex(std::vector<int>(m, t)));
    return s;
}

DegreeSchedule staircase_schedule(std::size_t m, int steps, int first) {
    if (first < 1 || steps < 1) throw std::invalid_argument("staircase_schedule: bad range");
    DegreeSchedule s;
    s.kind = "staircase";
    s.proportions.assign(m, 1.0 / static_cast<double>(m));
    s.diameter = 1;
    for (int t = first; t < first + steps; ++t) {
        std::vector<int> n(m);
        for (std::size_t j = 0; j < m; ++j)
            n[j] = (t + static_cast<int>(m - 1 - j)) / static_cast<int>(m);
        s.indices.push_back(MultiIndex(std::move(n)));
    }
    return s;
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream os;
    os << "total,index,label,point,measured,predicted,rel_error,pass\n";
    os.precision(17);
    for (const ReportRow& r : rows) {
        os << r.total << "," << r.index << "," << r.label << "," << r.point << ","
           << r.measured << "," << r.predicted << "," << r.rel_error << ","
           << (r.pass ? 1 : 0) << "\n";
    }
    return os.str();
}

const TypeIIFamily& store_type_ii(FamilyStore& store, const NikishinSystem& sys,
                                  const MultiIndex& n, bool finalize, std::size_t nq) {
    auto it = store.type_ii.find(n.str());
    if (it == store.type_ii.end())
        it = store.type_ii.emplace(n.str(), solve_type_ii(sys, n, nq)).first;
    if (finalize && !it->second.zeros_final) finalize_zero_structure(it->second, sys);
    return it->second;
}

const TypeIFamily& store_type_i(FamilyStore& store, const NikishinSystem& sys,
                                const MultiIndex& n, bool finalize, std::size_t nq) {
    auto it = store.type_i.find(n.str());
    if (it == store.type_i.end())
        it = store.type_i.emplace(n.str(), solve_type_i(sys, n, nq)).first;
    if (finalize && !it->second.zeros_final) finalize_zero_structure(it->second, sys);
    return it->second;
}

ConnectionResiduals connection_check(const TypeIIFamily& fam, const NikishinSystem& sys,
                                     std::size_t j, const Complex& z) {
    const std::size_t m = sys.size();
    if (j < 2 || j > m) throw std::invalid_argument("connection_check: need 2 <= j <= m");
    for (std::size_t k = 1; k <= m; ++k)
        if (sys.delta(k).distance(z) == 0)
            throw std::invalid_argument("connection_check: z lies on an interval");

    // miracle: shat_{1,j} - shat_{1,j-1} shat_{j,j} + ... + (-1)^j shat_{j,1}
    Complex mir = sys.shat(1, j, z);
    for (std::size_t i = 1; i + 1 <= j; ++i) {
        Complex term = sys.shat(1, j - i, z) * sys.shat(j, j - i + 1, z);
        if (i % 2 == 1)
            mir = mir - term;
        else
            mir = mir + term;
    }
    {
        Complex tail = sys.shat(j, 1, z);
        if (j % 2 == 1)
            mir = mir - tail;
        else
            mir = mir + tail;
    }

    std::vector<Complex> Phi(m + 1, Complex{Real(0), Real(0)});
    std::vector<Complex> Psi(m + 1, Complex{Real(0), Real(0)});
    for (std::size_t k = 1; k <= m; ++k) {
        Phi[k] = remainder_phi(fam, sys, k, z);
        Psi[k] = psi(fam, k, z);
    }

    auto signed_add = [](Complex& acc, const Complex& term, std::size_t k) {
        if (k % 2 == 0)
            acc = acc + term;
        else
            acc = acc - term;
    };

    Complex rhs1{Real(0), Real(0)};
    for (std::size_t k = 2; k <= j; ++k) signed_add(rhs1, sys.shat(j, k, z) * Phi[k - 1], k);
    signed_add(rhs1, Phi[j], j + 1);
    Complex rhs2{Real(0), Real(0)};
    for (std::size_t k = 2; k <= j; ++k) signed_add(rhs2, sys.shat(k, j, z) * Psi[k - 1], k);
    signed_add(rhs2, Psi[j], j + 1);

    // D[r][c] = (-1)^{c+1} shat_{r,c+1}(z) below the diagonal, (-1)^{r+1} on
    // it; D^{-1}[r][c] = (-1)^{c+1} shat_{c+1,r}(z) below, same diagonal.
    std::vector<std::vector<Complex>> D(m, std::vector<Complex>(m, Complex{Real(0), Real(0)}));
    std::vector<std::vector<Complex>> Dinv = D;
    for (std::size_t r = 1; r <= m; ++r) {
        const Real diag = (r % 2 == 1) ? Real(1) : Real(-1);
        D[r - 1][r - 1] = Complex{diag, Real(0)};
        Dinv[r - 1][r - 1] = Complex{diag, Real(0)};
        for (std::size_t c = 1; c < r; ++c) {
            const Real sgn = (c % 2 == 1) ? Real(1) : Real(-1);
            D[r - 1][c - 1] = sys.shat(r, c + 1, z) * sgn;
            Dinv[r - 1][c - 1] = sys.shat(c + 1, r, z) * sgn;
        }
    }
    Real inv_res(0);
    for (std::size_t r = 0; r < m; ++r) {
        Complex acc{Real(0), Real(0)};
        for (std::size_t c = 0; c < m; ++c) {
            Complex inner{Real(0), Real(0)};
            for (std::size_t q = 0; q < m; ++q) inner = inner + Dinv[c][q] * Psi[q + 1];
            acc = acc + D[r][c] * inner;
        }
        inv_res = std::max(inv_res, static_cast<Real>(abs(acc - Psi[r + 1])));
    }

    return ConnectionResiduals{abs(mir), abs(Psi[j] - rhs1), abs(Phi[j] - rhs2), inv_res};
}

WeakReport weak_report(const NikishinSystem& sys, const DegreeSchedule& sched,
                       const EquilibriumSolution& eq, const std::vector<Complex>& points,
                       FamilyStore* store, std::size_t nq) {
    const std::size_t m = sys.size();
    if (eq.lambdas.size() != m)
        throw std::invalid_argument("weak_report: equilibrium solution size mismatch");
    FamilyStore local;
    if (!store) store = &local;

    WeakReport rep;
    std::vector<double> first_kolmo(m, 0.0), last_kolmo(m, 0.0);
    double first_psi = 0.0, last_psi = 0.0;

    for (std::size_t ti = 0; ti < sched.indices.size(); ++ti) {
        const MultiIndex& n = sched.indices[ti];
        const TypeIIFamily& fam = store_type_ii(*store, sys, n, true, nq);
        const int total = n.total();

        double kol_max = 0.0;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::vector<double> zs = zeros_as_doubles(fam.zero_polys[j], sys.delta(j));
            const double d = kolmogorov_grid_vs_points(eq.lambdas[j - 1], zs);
            kol_max = std::max(kol_max, d);
            rep.rows.push_back({total, n.str(), "kolmogorov j=" + std::to_string(j), "",
                                d, 0.0, d, true});
            if (ti == 0) first_kolmo[j - 1] = d;
            if (ti + 1 == sched.indices.size()) last_kolmo[j - 1] = d;
        }

        double psi_max = 0.0;
        for (const Complex& z : points) {
            for (std::size_t j = 0; j <= m; ++j) {
                const double measured_log = abs_log(psi(fam, j, z)) / total;
                double predicted_log;
                if (j == 0)
                    predicted_log = -eq.C.P[0] * log_potential(eq.lambdas[0],
                                                               {static_cast<double>(z.re),
                                                                static_cast<double>(z.im)});
                else
                    predicted_log = u_function(eq, j, {static_cast<double>(z.re),
                                                       static_cast<double>(z.im)});
                const double err = log_rel_error(measured_log, predicted_log);
                psi_max = std::max(psi_max, err);
                rep.rows.push_back({total, n.str(), "psi j=" + std::to_string(j),
                                    format_point(z), std::exp(measured_log),
                                    std::exp(predicted_log), err, true});
            }
        }
        for (std::size_t j = 1; j <= m; ++j) {
            // |I_j|^{1/2|n|} = K_{n,j}^{-1/|n|} vs exp(-sum_{k<=j} omega_k/P_k)
            const double measured_log =
                -static_cast<double>(log(fam.K[j - 1])) / total;
            double predicted_log = 0.0;
            for (std::size_t k = 0; k < j; ++k) predicted_log -= eq.omegas[k] / eq.C.P[k];
            const double err = log_rel_error(measured_log, predicted_log);
            rep.rows.push_back({total, n.str(), "normalization j=" + std::to_string(j), "",
                                std::exp(measured_log), std::exp(predicted_log), err, true});
        }

        if (ti == 0) first_psi = psi_max;
        if (ti + 1 == sched.indices.size()) {
            last_psi = psi_max;
            rep.last_kolmogorov = kol_max;
        }
    }

    rep.kolmogorov_trend = true;
    for (std::size_t j = 0; j < m; ++j)
        if (!(last_kolmo[j] < first_kolmo[j])) rep.kolmogorov_trend = false;
    rep.psi_trend = last_psi < first_psi;
    rep.last_psi_error = last_psi;
    return rep;
}

RateReport rate_report(const NikishinSystem& sys, const DegreeSchedule& sched, std::size_t j,
                       const std::vector<Complex>& points, const EquilibriumSolution& eq,
                       FamilyStore* store, std::size_t nq) {
    if (j < 1 || j > sys.size()) throw std::invalid_argument("rate_report: bad component");
    FamilyStore local;
    if (!store) store = &local;

    RateReport rep;
    std::vector<double> predicted(points.size());
    for (std::size_t pi = 0; pi < points.size(); ++pi) {
        const std::complex<double> zd(static_cast<double>(points[pi].re),
                                      static_cast<double>(points[pi].im));
        predicted[pi] = eq.C.P[0] * log_potential(eq.lambdas[0], zd) +
                        xi_function(eq, j, zd).value;
    }

    for (std::size_t ti = 0; ti < sched.indices.size(); ++ti) {
        const MultiIndex& n = sched.indices[ti];
        const TypeIIFamily& fam = store_type_ii(*store, sys, n, false, nq);
        const int total = n.total();
        for (std::size_t pi = 0; pi < points.size(); ++pi) {
            const Complex& z = points[pi];
            // shat_{1,j} - P_{n,j}/Q_n = Phi_{n,j}/Q_n exactly; evaluating the
            // right-hand side dodges the catastrophic cancellation.
            const Complex rem = remainder_phi(fam, sys, j, z) / fam.Q(z);
            const double r = abs_log(rem) / total;
            const double rel = std::fabs(r - predicted[pi]) /
                               std::max(std::fabs(predicted[pi]), 1e-12);
            const bool negative = r < 0.0;
            rep.rows.push_back({total, n.str(), "rate j=" + std::to_string(j),
                                format_point(z), r, predicted[pi], rel, negative});
            if (ti >= 2 && !negative) rep.all_negative_past_third = false;
            if (ti + 1 == sched.indices.size())
                rep.max_final_rel_error = std::max(rep.max_final_rel_error, rel);
        }
    }
    return rep;
}

RatioReport ratio_report(const NikishinSystem& sys, const DegreeSchedule& sched,
                         std::size_t ell, const std::vector<Complex>& points,
                         FamilyStore* store, std::size_t nq) {
    const std::size_t m = sys.size();
    if (ell < 1 || ell > m) throw std::invalid_argument("ratio_report: bad component");
    if (sched.indices.empty()) throw std::invalid_argument("ratio_report: empty schedule");
    FamilyStore local;
    if (!store) store = &local;

    RatioReport rep;
    rep.ell = ell;

    // ratios[k-1][point][t]
    std::vector<std::vector<std::vector<Complex>>> ratios(
        m, std::vector<std::vector<Complex>>(points.size()));
    for (const MultiIndex& n : sched.indices) {
        const TypeIIFamily& fam = store_type_ii(*store, sys, n, true, nq);
        const TypeIIFamily& bumped = store_type_ii(*store, sys, n.bump(ell), true, nq);
        for (std::size_t k = 1; k <= m; ++k) {
            for (std::size_t pi = 0; pi < points.size(); ++pi) {
                const Complex& z = points[pi];
                const Complex r = bumped.zero_polys[k](z) / fam.zero_polys[k](z);
                ratios[k - 1][pi].push_back(r);
                rep.rows.push_back({n.total(), n.str(), "ratio k=" + std::to_string(k),
                                    format_point(z), static_cast<double>(r.re),
                                    static_cast<double>(r.im), 0.0, true});
            }
        }
    }

    const std::size_t T = sched.indices.size();
    if (T >= 4) {
        for (std::size_t k = 0; k < m && rep.deltas_decreasing_last3; ++k) {
            for (std::size_t pi = 0; pi < points.size(); ++pi) {
                const auto& seq = ratios[k][pi];
                const double d1 = static_cast<double>(abs(seq[T - 3] - seq[T - 4]));
                const double d2 = static_cast<double>(abs(seq[T - 2] - seq[T - 3]));
                const double d3 = static_cast<double>(abs(seq[T - 1] - seq[T - 2]));
                if (!(d3 < d2 && d2 < d1)) {
                    rep.deltas_decreasing_last3 = false;
                    break;
                }
            }
        }
    }

    // Large-real-point positivity (the (F_k)'(infinity) > 0 normalization).
    const MultiIndex& n_last = sched.indices.back();
    const TypeIIFamily& fam_last = store_type_ii(*store, sys, n_last, true, nq);
    const TypeIIFamily& bump_last = store_type_ii(*store, sys, n_last.bump(ell), true, nq);
    double far = 0.0;
    for (std::size_t k = 1; k <= m; ++k)
        far = std::max({far, std::fabs(static_cast<double>(sys.delta(k).a)),
                        std::fabs(static_cast<double>(sys.delta(k).b))});
    const Complex X{Real(10.0 * (far + 1.0)), Real(0)};
    for (std::size_t k = 1; k <= m; ++k) {
        const Complex r = bump_last.zero_polys[k](X) / fam_last.zero_polys[k](X);
        if (!(r.re > 0)) rep.sign_ok = false;
    }

    // Boundary product gamma_k at 5 interior points of each Delta_k.  The
    // finite-n ratio only tracks the limit function when eps stays well
    // above the ~1/n zero spacing (the error decays like exp(-2 pi N rho
    // eps)), so the ladder stays coarse; the smooth eps-dependence of
    // log gamma is, to leading order, a multiple of the local Green's
    // function G_k(x + i eps) of Delta_k (exact for arcsine-type zero
    // distributions), so log gamma is extrapolated linearly in s = G_k
    // rather than gamma in eps.
    auto ratio_at = [&](std::size_t k, const Complex& z) {
        return bump_last.zero_polys[k](z) / fam_last.zero_polys[k](z);
    };
    for (std::size_t k = 1; k <= m; ++k) {
        const double a = static_cast<double>(sys.delta(k).a);
        const double b = static_cast<double>(sys.delta(k).b);
        auto green = [&](double x, double eps) {
            // G(z) = log|w + sqrt(w^2 - 1)|, w the affine map onto [-1,1].
            const std::complex<double> w((2 * x - a - b) / (b - a),
                                         2 * eps / (b - a));
            const std::complex<double> r = std::sqrt(w * w - 1.0);
            return std::log(std::max(std::abs(w + r), std::abs(w - r)));
        };
        std::vector<double> gammas;
        std::vector<double> xs;
        for (int i = 1; i <= 5; ++i) {
            const double x = a + (b - a) * static_cast<double>(i) / 6.0;
            std::vector<double> ladder;
            for (double epsd : rep.epsilon_ladder) {
                const Real eps(epsd * (b - a) / 2.0);
                const Complex up = ratio_at(k, Complex{Real(x), eps});
                const Complex dn = ratio_at(k, Complex{Real(x), -eps});
                Complex denom{Real(1), Real(0)};
                if (k >= 2) denom = denom * ratio_at(k - 1, Complex{Real(x), Real(0)});
                if (k + 1 <= m) denom = denom * ratio_at(k + 1, Complex{Real(x), Real(0)});
                ladder.push_back(static_cast<double>(((up * dn) / denom).re));
            }
            const std::size_t L = ladder.size();
            double extrap = 0.0;
            if (ladder[L - 1] > 0 && ladder[L - 2] > 0) {
                const double s1 = green(x, rep.epsilon_ladder[L - 2] * (b - a) / 2);
                const double s2 = green(x, rep.epsilon_ladder[L - 1] * (b - a) / 2);
                const double g1 = std::log(ladder[L - 2]), g2 = std::log(ladder[L - 1]);
                extrap = std::exp(g2 - (g1 - g2) * s2 / (s1 - s2));
            }
            gammas.push_back(extrap);
            xs.push_back(x);
        }
        std::vector<double> sorted(gammas);
        std::sort(sorted.begin(), sorted.end());
        const double median = sorted[sorted.size() / 2];
        for (std::size_t i = 0; i < gammas.size(); ++i) {
            const double rel = std::fabs(gammas[i] - median) / std::max(std::fabs(median), 1e-12);
            rep.max_boundary_rel_dev = std::max(rep.max_boundary_rel_dev, rel);
            std::ostringstream px;
            px << xs[i];
            rep.boundary_rows.push_back({n_last.total(), n_last.str(),
                                         "gamma k=" + std::to_string(k), px.str(),
                                         gammas[i], median, rel, rel < 0.05});
        }
    }
    return rep;
}

TypeIRatioReport type_i_ratio_report(const NikishinSystem& sys, const DegreeSchedule& sched,
                                     std::size_t ell, const std::vector<Complex>& points,
                                     FamilyStore* store, std::size_t nq) {
    const std::size_t m = sys.size();
    if (ell < 1 || ell > m) throw std::invalid_argument("type_i_ratio_report: bad component");
    FamilyStore local;
    if (!store) store = &local;

    TypeIRatioReport rep;
    rep.ell = ell;

    // series[label][point][t]
    std::vector<std::vector<std::vector<Complex>>> series(
        2 * m, std::vector<std::vector<Complex>>(points.size()));
    for (const MultiIndex& n : sched.indices) {
        const TypeIFamily& fam = store_type_i(*store, sys, n, true, nq);
        const TypeIFamily& bumped = store_type_i(*store, sys, n.bump(ell), true, nq);
        for (std::size_t k = 1; k <= m; ++k) {
            for (std::size_t pi = 0; pi < points.size(); ++pi) {
                const Complex& z = points[pi];
                const Complex ra = bumped.zero_polys[k](z) / fam.zero_polys[k](z);
                const Complex rf = type_i_form(bumped, sys, k, z) / type_i_form(fam, sys, k, z);
                series[k - 1][pi].push_back(ra);
                series[m + k - 1][pi].push_back(rf);
                rep.rows.push_back({n.total(), n.str(), "A k=" + std::to_string(k),
                                    format_point(z), static_cast<double>(ra.re),
                                    static_cast<double>(ra.im), 0.0, true});
                rep.rows.push_back({n.total(), n.str(), "form k=" + std::to_string(k),
                                    format_point(z), static_cast<double>(rf.re),
                                    static_cast<double>(rf.im), 0.0, true});
            }
        }
    }

    const std::size_t T = sched.indices.size();
    if (T >= 3) {
        for (const auto& per_point : series) {
            for (const auto& seq : per_point) {
                const double first = static_cast<double>(abs(seq[1] - seq[0]));
                const double last = static_cast<double>(abs(seq[T - 1] - seq[T - 2]));
                if (!(last < first)) rep.deltas_decreasing = false;
            }
        }
    }
    return rep;
}

}  // namespace nikhp
