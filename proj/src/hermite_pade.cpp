#include "nikhp/hermite_pade.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <random>

namespace nikhp {

namespace {

using Matrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

std::size_t default_nq(const MultiIndex& n, std::size_t nq) {
    // Floor of 64 so the chain-measure densities (analytic with the nearest
    // singularity on the neighbouring interval) are integrated at least as
    // accurately as the measures' own base rules even at small |n|.
    return nq ? nq : std::max<std::size_t>(4 * static_cast<std::size_t>(n.total()) + 16, 64);
}

std::vector<Real> measure_moments(const Measure& mu, std::size_t count, std::size_t nq) {
    const QuadratureRule& r = mu.rule_at(nq);
    std::vector<Real> M(count, Real(0));
    for (std::size_t i = 0; i < r.size(); ++i) {
        Real p = r.weights[i];
        for (std::size_t k = 0; k < count; ++k) {
            M[k] += p;
            p *= r.nodes[i];
        }
    }
    for (auto& v : M) v *= mu.sign();
    return M;
}

Real relative_rank_margin(const Matrix& A) {
    Eigen::JacobiSVD<Matrix> svd(A);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0) return Real(0);
    return s(s.size() - 1) / s(0);
}

}  // namespace

std::vector<std::vector<Real>> moment_table(const NikishinSystem& sys, std::size_t count,
                                            std::size_t nq) {
    std::vector<std::vector<Real>> M;
    for (std::size_t j = 1; j <= sys.size(); ++j)
        M.push_back(measure_moments(sys.s(1, j), count, nq));
    return M;
}

std::vector<std::vector<Real>> moment_table(const AngelescoSystem& sys, std::size_t count,
                                            std::size_t nq) {
    std::vector<std::vector<Real>> M;
    for (std::size_t j = 1; j <= sys.size(); ++j)
        M.push_back(measure_moments(sys.measure(j), count, nq));
    return M;
}

Polynomial pade_numerator(const Polynomial& Q, const std::vector<Real>& moments) {
    const int N = Q.degree();
    std::vector<Real> c(std::max(N, 1), Real(0));
    if (N < 1) return Polynomial::zero();
    for (int p = 0; p < N; ++p)
        for (int k = p + 1; k <= N; ++k) c[p] += Q[k] * moments[k - 1 - p];
    return Polynomial(std::move(c));
}

namespace {

// Shared type II core: orthogonality int x^nu Q d mu_j = 0, nu < n_j, where
// mu_j = s_{1,j} (Nikishin) or sigma_j (Angelesco).
TypeIIFamily type_ii_core(const MultiIndex& n, const std::vector<std::vector<Real>>& M,
                          std::size_t nq) {
    const int N = n.total();
    Matrix A(N, N);
    Vector b(N);
    int row = 0;
    for (std::size_t j = 0; j < n.size(); ++j)
        for (int nu = 0; nu < n[j]; ++nu, ++row) {
            for (int i = 0; i < N; ++i) A(row, i) = M[j][nu + i];
            b(row) = -M[j][nu + N];
        }

    Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    Real margin = (s(0) == 0) ? Real(0) : s(N - 1) / s(0);
    if (!(margin > half_precision_eps())) throw NormalityFailure(n, margin, "type II");
    Vector c = svd.solve(b);

    TypeIIFamily fam(n);
    fam.margin = margin;
    fam.nq = nq;
    std::vector<Real> qc(N + 1);
    for (int i = 0; i < N; ++i) qc[i] = c(i);
    qc[N] = 1;
    fam.Q = Polynomial(std::move(qc));
    for (std::size_t j = 0; j < n.size(); ++j)
        fam.P.push_back(pade_numerator(fam.Q, M[j]));
    return fam;
}

}  // namespace

void build_psi_layers(TypeIIFamily& fam, const NikishinSystem& sys) {
    const std::size_t m = sys.size();
    fam.layer_rules.clear();
    fam.layer_vals.clear();
    for (std::size_t k = 1; k <= m; ++k) {
        const QuadratureRule& rk = sys.generator(k).rule_at(fam.nq);
        std::vector<Real> vals(rk.size());
        if (k == 1) {
            for (std::size_t i = 0; i < rk.size(); ++i) vals[i] = fam.Q(rk.nodes[i]);
        } else {
            const QuadratureRule& rp = fam.layer_rules[k - 2];
            const std::vector<Real>& vp = fam.layer_vals[k - 2];
            for (std::size_t i = 0; i < rk.size(); ++i) {
                Real s = 0;
                for (std::size_t l = 0; l < rp.size(); ++l)
                    s += rp.weights[l] * vp[l] / (rk.nodes[i] - rp.nodes[l]);
                vals[i] = s;
            }
        }
        fam.layer_rules.push_back(rk);
        fam.layer_vals.push_back(std::move(vals));
    }
}

TypeIIFamily solve_type_ii(const NikishinSystem& sys, const MultiIndex& n, std::size_t nq) {
    if (n.size() != sys.size()) throw std::invalid_argument("solve_type_ii: index length != m");
    nq = default_nq(n, nq);
    auto M = moment_table(sys, 2 * static_cast<std::size_t>(n.total()) + 1, nq);
    TypeIIFamily fam = type_ii_core(n, M, nq);
    build_psi_layers(fam, sys);
    return fam;
}

TypeIIFamily solve_type_ii(const AngelescoSystem& sys, const MultiIndex& n, std::size_t nq) {
    if (n.size() != sys.size()) throw std::invalid_argument("solve_type_ii: index length != m");
    nq = default_nq(n, nq);
    auto M = moment_table(sys, 2 * static_cast<std::size_t>(n.total()) + 1, nq);
    return type_ii_core(n, M, nq);  // no Psi chain for Angelesco
}

TypeIFamily solve_type_i(const NikishinSystem& sys, const MultiIndex& n, std::size_t nq) {
    if (n.size() != sys.size()) throw std::invalid_argument("solve_type_i: index length != m");
    const std::size_t m = sys.size();
    const int N = n.total();
    nq = default_nq(n, nq);
    auto M = moment_table(sys, 2 * static_cast<std::size_t>(N) + 1, nq);

    // Column blocks: coefficients of a_{n,j} (n_j of them), j = 1..m.
    std::vector<int> offset(m + 1, 0);
    for (std::size_t j = 0; j < m; ++j) offset[j + 1] = offset[j] + n[j];

    TypeIFamily fam(n);
    fam.nq = nq;
    Vector v(N);
    if (N == 1) {
        v(0) = 1;
        fam.margin = 1;
    } else {
        Matrix A(N - 1, N);
        for (int nu = 0; nu < N - 1; ++nu)
            for (std::size_t j = 0; j < m; ++j)
                for (int i = 0; i < n[j]; ++i) A(nu, offset[j] + i) = M[j][nu + i];
        Eigen::JacobiSVD<Matrix> svd(A, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        fam.margin = (s(0) == 0) ? Real(0) : s(N - 2) / s(0);
        if (!(fam.margin > half_precision_eps())) throw NormalityFailure(n, fam.margin, "type I");
        v = svd.matrixV().col(N - 1);
    }

    // Normalize: a_{n,j*} monic of degree n_{j*}-1 for the last nonzero block.
    std::size_t jstar = m;
    while (jstar >= 1 && n[jstar - 1] == 0) --jstar;
    Real vnorm = 0;
    for (int i = 0; i < N; ++i) vnorm += v(i) * v(i);
    vnorm = sqrt(vnorm);
    Real top = v(offset[jstar - 1] + n[jstar - 1] - 1);
    if (!(abs(top) > half_precision_eps() * vnorm))
        throw NormalityFailure(n, abs(top) / vnorm, "type I degree");
    v /= top;

    fam.a.resize(m + 1);
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<Real> c(n[j]);
        for (int i = 0; i < n[j]; ++i) c[i] = v(offset[j] + i);
        fam.a[j + 1] = Polynomial(std::move(c));
        // Full degree n_j - 1 is the normality certificate (Theorem teo:2).
        if (n[j] > 0 && !(abs(v(offset[j] + n[j] - 1)) * abs(top) > half_precision_eps() * vnorm))
            throw NormalityFailure(n, abs(v(offset[j] + n[j] - 1)) * abs(top) / vnorm,
                                   "type I degree");
    }

    // a_{n,0} = -(polynomial part of sum_j a_{n,j} shat_{1,j}), coefficient of
    // z^p being -sum_j sum_{d>p} a_{j,d} M_j[d-1-p].
    int dmax = 0;
    for (std::size_t j = 0; j < m; ++j) dmax = std::max(dmax, n[j] - 1);
    if (dmax >= 1) {
        std::vector<Real> c0(dmax, Real(0));
        for (std::size_t j = 0; j < m; ++j)
            for (int p = 0; p < n[j] - 1; ++p)
                for (int d = p + 1; d <= n[j] - 1; ++d)
                    c0[p] -= fam.a[j + 1][d] * M[j][d - 1 - p];
        fam.a[0] = Polynomial(std::move(c0));
    } else {
        fam.a[0] = Polynomial::zero();
    }
    return fam;
}

Complex remainder_phi(const TypeIIFamily& fam, const NikishinSystem& sys, std::size_t j,
                      const Complex& z) {
    const Measure& mu = sys.s(1, j);
    if (z.is_real() && mu.interval().contains(z.re))
        throw std::domain_error("remainder_phi: z on Delta_1");
    const QuadratureRule& r = mu.rule_at(fam.nq);
    Complex s(Real(0));
    for (std::size_t i = 0; i < r.size(); ++i)
        s += Complex(r.weights[i] * fam.Q(r.nodes[i])) / (z - Complex(r.nodes[i]));
    return s * Real(mu.sign());
}

Complex psi(const TypeIIFamily& fam, std::size_t k, const Complex& z) {
    if (k == 0) return fam.Q(z);
    if (k > fam.layer_rules.size()) throw std::out_of_range("psi: k > m");
    const QuadratureRule& r = fam.layer_rules[k - 1];
    const std::vector<Real>& vals = fam.layer_vals[k - 1];
    if (z.is_real() && z.re >= r.nodes.front() && z.re <= r.nodes.back())
        throw std::domain_error("psi: z on Delta_k");
    Complex s(Real(0));
    for (std::size_t i = 0; i < r.size(); ++i)
        s += Complex(r.weights[i] * vals[i]) / (z - Complex(r.nodes[i]));
    return s;
}

Real psi(const TypeIIFamily& fam, std::size_t k, const Real& x) {
    return psi(fam, k, Complex(x)).re;
}

Complex type_i_form(const TypeIFamily& fam, const NikishinSystem& sys, std::size_t k,
                    const Complex& z) {
    const std::size_t m = sys.size();
    if (k > m) throw std::out_of_range("type_i_form: k > m");
    Complex s = fam.a[k].is_zero() ? Complex(Real(0)) : Complex(fam.a[k](z));
    for (std::size_t j = k + 1; j <= m; ++j) {
        if (fam.a[j].is_zero()) continue;
        s += Complex(fam.a[j](z)) * sys.shat(k + 1, j, z);
    }
    return s;
}

Real type_i_form(const TypeIFamily& fam, const NikishinSystem& sys, std::size_t k,
                 const Real& x) {
    return type_i_form(fam, sys, k, Complex(x)).re;
}

void finalize_zero_structure(TypeIIFamily& fam, const NikishinSystem& sys) {
    const std::size_t m = sys.size();
    fam.zero_polys.assign(m + 2, Polynomial::constant(Real(1)));
    fam.zero_polys[1] = fam.Q;
    for (std::size_t k = 2; k <= m; ++k) {
        // Q_{n,k}: monic with roots = zeros of Psi_{n,k-1} on Delta_k.
        std::size_t expected = static_cast<std::size_t>(fam.index.tail(k));
        auto zl = form_zeros([&](const Real& x) { return psi(fam, k - 1, x); }, sys.delta(k),
                             expected);
        fam.zero_polys[k] = Polynomial::from_roots(zl.points);
    }
    // K_{n,j} = |int Q_{n,j} Psi_{n,j-1} d sigma_j / Q_{n,j+1}|^{-1/2}; the
    // integrand is the rel3 weight after cancelling script-H against Q_{n,j}.
    fam.K.clear();
    for (std::size_t j = 1; j <= m; ++j) {
        const QuadratureRule& r = fam.layer_rules[j - 1];
        const std::vector<Real>& vals = fam.layer_vals[j - 1];
        Real I = 0;
        for (std::size_t i = 0; i < r.size(); ++i)
            I += r.weights[i] * fam.zero_polys[j](r.nodes[i]) * vals[i] /
                 fam.zero_polys[j + 1](r.nodes[i]);
        fam.K.push_back(1 / sqrt(abs(I)));
    }
    fam.zeros_final = true;
}

void finalize_zero_structure(TypeIFamily& fam, const NikishinSystem& sys) {
    const std::size_t m = sys.size();
    fam.zero_polys.assign(m + 2, Polynomial::constant(Real(1)));
    for (std::size_t k = 1; k <= m; ++k) {
        int expected = fam.index.tail(k) - 1;
        if (expected <= 0) continue;
        if (k == m) {
            // A-form_{n,m} = a_{n,m}; its roots all lie in Delta_m.
            auto zl = poly_real_zeros(fam.a[m], sys.delta(m));
            if (zl.size() != static_cast<std::size_t>(expected))
                throw CountMismatch(expected, zl.size());
            fam.zero_polys[m] = Polynomial::from_roots(zl.points);
        } else {
            auto zl = form_zeros([&](const Real& x) { return type_i_form(fam, sys, k, x); },
                                 sys.delta(k), static_cast<std::size_t>(expected));
            fam.zero_polys[k] = Polynomial::from_roots(zl.points);
        }
    }
    fam.zeros_final = true;
}

Complex h_type_i(const TypeIFamily& fam, const NikishinSystem& sys, std::size_t k,
                 const Complex& z) {
    if (!fam.zeros_final) throw std::logic_error("h_type_i: zero structure not finalized");
    Complex denom = fam.zero_polys[k](z);
    if (abs(denom) == 0) throw std::domain_error("h_type_i: z at a root of A_{n,k}");
    return Complex(fam.zero_polys[k + 1](z)) * type_i_form(fam, sys, k, z) / denom;
}

Complex h_type_ii(const TypeIIFamily& fam, std::size_t k, const Complex& z) {
    if (!fam.zeros_final) throw std::logic_error("h_type_ii: zero structure not finalized");
    if (k < 1 || k > fam.zero_polys.size() - 1) throw std::out_of_range("h_type_ii: k");
    Complex denom = fam.zero_polys[k](z);
    if (abs(denom) == 0) throw std::domain_error("h_type_ii: z at a root of Q_{n,k}");
    return Complex(fam.zero_polys[k - 1](z)) * psi(fam, k - 1, z) / denom;
}

PerfectnessReport certify_perfectness(const NikishinSystem& sys, unsigned budget,
                                      std::size_t nq) {
    PerfectnessReport rep;
    rep.min_margin = 1;
    for (const auto& n : all_indices(sys.size(), static_cast<int>(budget))) {
        PerfectnessRow row{n, Real(0), Real(0), false, ""};
        try {
            row.margin_type_i = solve_type_i(sys, n, nq).margin;
            row.margin_type_ii = solve_type_ii(sys, n, nq).margin;
            row.pass = true;
        } catch (const NormalityFailure& e) {
            row.note = e.what();
            rep.all_pass = false;
        }
        if (row.pass) {
            rep.min_margin = std::min(rep.min_margin, row.margin_type_i);
            rep.min_margin = std::min(rep.min_margin, row.margin_type_ii);
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

AtSystemReport at_system_probe(const NikishinSystem& sys, const MultiIndex& n,
                               unsigned trials, const Interval& probe, std::uint64_t seed) {
    if (n.size() > sys.size() + 1)
        throw std::invalid_argument("at_system_probe: index longer than m+1");
    if (probe.intersects(sys.delta(1)))
        throw std::invalid_argument("at_system_probe: probe overlaps Delta_1");
    AtSystemReport rep{n, trials};
    rep.bound = static_cast<std::size_t>(n.total()) - 1;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const std::size_t grid = 8 * static_cast<std::size_t>(n.total()) + 64;
    for (unsigned t = 0; t < trials; ++t) {
        std::vector<Polynomial> p(n.size());
        for (std::size_t k = 0; k < n.size(); ++k) {
            std::vector<Real> c(static_cast<std::size_t>(std::max(n[k], 0)));
            for (auto& ci : c) ci = Real(dist(rng));
            p[k] = Polynomial(std::move(c));
        }
        auto f = [&](const Real& x) {
            Real s = p[0].is_zero() ? Real(0) : p[0](x);
            for (std::size_t k = 1; k < n.size(); ++k)
                if (!p[k].is_zero()) s += p[k](x) * sys.shat(1, k, x);
            return s;
        };
        std::size_t count = sign_change_count(f, probe, grid);
        rep.counts.push_back(count);
        rep.max_count = std::max(rep.max_count, count);
        if (count > rep.bound) rep.pass = false;
    }
    return rep;
}

}  // namespace nikhp
