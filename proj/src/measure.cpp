#include "nikhp/measure.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace nikhp {

namespace {

// Fraction of the interval length below which Cauchy evaluation switches to
// adaptive rule refinement.
const double kNearFraction = 0.05;
const std::size_t kMaxAdaptiveNq = 4096;

Real near_tolerance() {
    // Relative tolerance 10^-(P * 0.3 / 4) per the module configuration.
    return pow10(-static_cast<int>(precision_bits() * 0.3 / 4.0));
}

// Natural cubic spline through (x_i, y_i).
struct CubicSpline {
    std::vector<Real> x, y, m;  // m = second derivatives
    void build(std::vector<Real> xs, std::vector<Real> ys) {
        x = std::move(xs);
        y = std::move(ys);
        const std::size_t n = x.size();
        m.assign(n, Real(0));
        if (n < 3) return;
        std::vector<Real> a(n, Real(0)), b(n, Real(0)), c(n, Real(0)), d(n, Real(0));
        for (std::size_t i = 1; i + 1 < n; ++i) {
            Real h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
            a[i] = h0;
            b[i] = 2 * (h0 + h1);
            c[i] = h1;
            d[i] = 6 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        }
        // Thomas solve on interior unknowns, natural boundary m[0]=m[n-1]=0.
        for (std::size_t i = 2; i + 1 < n; ++i) {
            Real f = a[i] / b[i - 1];
            b[i] -= f * c[i - 1];
            d[i] -= f * d[i - 1];
        }
        for (std::size_t i = n - 2; i >= 1; --i) {
            Real upper = (i + 2 < n) ? c[i] * m[i + 1] : Real(0);
            m[i] = (d[i] - upper) / b[i];
            if (i == 1) break;
        }
    }
    Real operator()(const Real& t) const {
        std::size_t lo = 0, hi = x.size() - 1;
        Real tc = std::min(std::max(t, x.front()), x.back());
        while (hi - lo > 1) {
            std::size_t mid = (lo + hi) / 2;
            if (x[mid] <= tc) lo = mid;
            else hi = mid;
        }
        Real h = x[hi] - x[lo];
        Real u = (x[hi] - tc) / h, v = (tc - x[lo]) / h;
        return u * y[lo] + v * y[hi] +
               ((u * u * u - u) * m[lo] + (v * v * v - v) * m[hi]) * h * h / 6;
    }
};

}  // namespace

Measure Measure::finish(std::shared_ptr<Impl> impl, std::size_t nq) {
    if (nq < 1) throw std::invalid_argument("Measure: quadrature size must be >= 1");
    impl->rule = impl->build_rule(nq);
    Real mass_mag = 0;
    for (const auto& w : impl->rule.weights) mass_mag += w;
    impl->mass = Real(impl->sign) * mass_mag;
    if (!(mass_mag > 0)) throw std::invalid_argument("Measure: mass must be nonzero");
    return Measure(std::move(impl));
}

Measure Measure::jacobi(Interval itv, Real alpha, Real beta, std::size_t nq) {
    if (!(alpha > -1 && beta > -1)) throw std::domain_error("Measure::jacobi: non-integrable density");
    auto impl = std::make_shared<Impl>(itv);
    impl->cls = DensityClass::Jacobi;
    Real a = itv.a, b = itv.b;
    impl->density_mag = [a, b, alpha, beta](const Real& x) {
        return pow(b - x, alpha) * pow(x - a, beta);
    };
    impl->build_rule = [itv, alpha, beta](std::size_t n) { return gauss_jacobi(n, alpha, beta, itv); };
    std::ostringstream os;
    os << "jacobi(" << alpha << "," << beta << ") on [" << a << "," << b << "]";
    impl->description = os.str();
    return finish(std::move(impl), nq);
}

Measure Measure::legendre(Interval itv, std::size_t nq) {
    auto impl = std::make_shared<Impl>(itv);
    impl->cls = DensityClass::Legendre;
    impl->density_mag = [](const Real&) { return Real(1); };
    impl->build_rule = [itv](std::size_t n) { return gauss_legendre(n, itv); };
    std::ostringstream os;
    os << "legendre on [" << itv.a << "," << itv.b << "]";
    impl->description = os.str();
    return finish(std::move(impl), nq);
}

Measure Measure::chebyshev(Interval itv, std::size_t nq) {
    return jacobi(std::move(itv), Real(-1) / 2, Real(-1) / 2, nq);
}

Measure Measure::polynomial_modulated(Interval itv, Real alpha, Real beta,
                                      Polynomial modulation, std::size_t nq) {
    if (modulation.is_zero()) throw std::invalid_argument("polynomial_modulated: zero modulation");
    auto impl = std::make_shared<Impl>(itv);
    impl->cls = DensityClass::PolynomialModulated;
    Real a = itv.a, b = itv.b;
    auto mod = std::make_shared<Polynomial>(std::move(modulation));
    impl->density_mag = [a, b, alpha, beta, mod](const Real& x) {
        Real v = (*mod)(x);
        if (!(v > 0)) throw std::domain_error("polynomial_modulated: modulation not positive");
        return pow(b - x, alpha) * pow(x - a, beta) * v;
    };
    const std::size_t extra = static_cast<std::size_t>(mod->degree()) + 1;
    impl->build_rule = [itv, alpha, beta, mod, extra](std::size_t n) {
        // The base rule is exact for the modulated moments needed at size n.
        auto base = gauss_jacobi(n + extra, alpha, beta, itv);
        for (std::size_t i = 0; i < base.size(); ++i) {
            Real v = (*mod)(base.nodes[i]);
            if (!(v > 0)) throw std::domain_error("polynomial_modulated: modulation not positive");
            base.weights[i] *= v;
        }
        return golub_welsch(stieltjes(n, base), n);
    };
    impl->description = "polynomial-modulated jacobi";
    return finish(std::move(impl), nq);
}

Measure Measure::tabulated(Interval itv, std::vector<std::pair<Real, Real>> samples,
                           std::size_t nq) {
    if (samples.size() < 2) throw std::invalid_argument("tabulated: need at least 2 samples");
    auto impl = std::make_shared<Impl>(itv);
    impl->cls = DensityClass::Tabulated;
    auto spline = std::make_shared<CubicSpline>();
    {
        std::vector<Real> xs, ys;
        Real floor_v = pow10(-40);
        for (auto& [x, w] : samples) {
            xs.push_back(x);
            ys.push_back(log(std::max(w, floor_v)));  // positivity clamping
        }
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i - 1] < xs[i])) throw std::invalid_argument("tabulated: nodes must increase");
        spline->build(std::move(xs), std::move(ys));
    }
    impl->density_mag = [spline](const Real& x) { return exp((*spline)(x)); };
    impl->build_rule = [itv, spline](std::size_t n) {
        // Composite Gauss-Legendre reference rule, then Stieltjes.
        const std::size_t panels = 24, per = std::max<std::size_t>(n + 8, 16);
        QuadratureRule ref;
        Real h = itv.length() / static_cast<int>(panels);
        for (std::size_t p = 0; p < panels; ++p) {
            Interval cell(itv.a + h * static_cast<int>(p), itv.a + h * static_cast<int>(p + 1));
            auto r = gauss_legendre(per, cell);
            for (std::size_t i = 0; i < r.size(); ++i) {
                ref.nodes.push_back(r.nodes[i]);
                ref.weights.push_back(r.weights[i] * exp((*spline)(r.nodes[i])));
            }
        }
        return golub_welsch(stieltjes(n, ref), n);
    };
    impl->description = "tabulated";
    return finish(std::move(impl), nq);
}

Measure Measure::scaled(const Real& c) const {
    if (!(c > 0)) throw std::invalid_argument("Measure::scaled: factor must be positive");
    auto impl = std::make_shared<Impl>(impl_->itv);
    impl->cls = impl_->cls;
    impl->sign = impl_->sign;
    auto base = impl_;
    impl->density_mag = [base, c](const Real& x) { return c * base->density_mag(x); };
    impl->build_rule = [base, c](std::size_t n) {
        QuadratureRule r = base->build_rule(n);
        for (auto& w : r.weights) w *= c;
        return r;
    };
    impl->description = impl_->description + " (scaled)";
    return finish(std::move(impl), impl_->rule.size());
}

Real Measure::integrate(const std::function<Real(const Real&)>& f) const {
    Real s = 0;
    for (std::size_t i = 0; i < impl_->rule.size(); ++i)
        s += impl_->rule.weights[i] * f(impl_->rule.nodes[i]);
    return Real(impl_->sign) * s;
}

const QuadratureRule& Measure::rule_at(std::size_t nq) const {
    if (nq == impl_->rule.size()) return impl_->rule;
    std::lock_guard<std::mutex> lock(impl_->cache_mutex);
    auto it = impl_->rule_cache.find(nq);
    if (it == impl_->rule_cache.end())
        it = impl_->rule_cache.emplace(nq, impl_->build_rule(nq)).first;
    return it->second;
}

namespace {
Complex eval_cauchy(const QuadratureRule& rule, int sign, const Complex& z) {
    Complex s(Real(0));
    for (std::size_t i = 0; i < rule.size(); ++i)
        s += Complex(rule.weights[i]) / (z - Complex(rule.nodes[i]));
    return s * Real(sign);
}
}  // namespace

Complex Measure::cauchy(const Complex& z) const {
    const Interval& itv = impl_->itv;
    if (z.im == 0 && itv.contains(z.re))
        throw std::domain_error("Measure::cauchy: point on the support interval");
    Real dist = itv.distance(z);
    if (dist >= Real(kNearFraction) * itv.length())
        return eval_cauchy(impl_->rule, impl_->sign, z);
    // Near the interval: refine the rule until the value stabilizes.
    Real tol = near_tolerance();
    std::size_t n = impl_->rule.size();
    Complex prev = eval_cauchy(impl_->rule, impl_->sign, z);
    while (n < kMaxAdaptiveNq) {
        n *= 2;
        Complex cur = eval_cauchy(rule_at(n), impl_->sign, z);
        if (abs(cur - prev) <= tol * abs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

Real Measure::cauchy(const Real& x) const { return cauchy(Complex(x)).re; }

std::string Measure::describe() const { return impl_->description; }

Measure product_measure(const Measure& front, const Measure& back) {
    Interval cf = front.interval(), cb = back.interval();
    if (cf.intersects(cb))
        throw std::invalid_argument("product_measure: supports must be disjoint");
    auto impl = std::make_shared<Measure::Impl>(cf);
    impl->cls = DensityClass::Product;
    // The transform of `back` keeps one sign on the support of `front`.
    int transform_sign = back.cauchy(cf.midpoint()) > 0 ? 1 : -1;
    impl->sign = front.sign() * transform_sign;
    Measure f = front, bk = back;
    impl->density_mag = [f, bk](const Real& x) { return abs(f.density(x)) * abs(bk.cauchy(x)); };
    impl->build_rule = [f, bk, transform_sign](std::size_t n) {
        QuadratureRule r = f.rule_at(n);
        for (std::size_t i = 0; i < r.size(); ++i) {
            Real v = bk.cauchy(r.nodes[i]);
            if ((v > 0 ? 1 : -1) != transform_sign)
                throw std::runtime_error("product_measure: transform changed sign on support");
            r.weights[i] *= abs(v);
        }
        return r;
    };
    impl->description = "<" + front.describe() + ", " + back.describe() + ">";
    return Measure::finish(std::move(impl), front.quadrature_size());
}

}  // namespace nikhp
