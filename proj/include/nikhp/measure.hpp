#ifndef NIKHP_MEASURE_HPP
#define NIKHP_MEASURE_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "nikhp/interval.hpp"
#include "nikhp/polynomial.hpp"
#include "nikhp/quadrature.hpp"
#include "nikhp/scalar.hpp"

namespace nikhp {

enum class DensityClass { Jacobi, Legendre, PolynomialModulated, Tabulated, Product };

// A finite measure with constant sign on a bounded interval, carried as
// (sign, positive density magnitude) plus a Gauss-type quadrature rule.
// Immutable after construction; evaluators are safe to call concurrently.
class Measure {
public:
    static Measure jacobi(Interval itv, Real alpha, Real beta, std::size_t nq = 64);
    static Measure legendre(Interval itv, std::size_t nq = 64);
    // Chebyshev weight 1/sqrt((b-x)(x-a)), i.e. jacobi(-1/2,-1/2).
    static Measure chebyshev(Interval itv, std::size_t nq = 64);
    // modulation must be strictly positive on the interval.
    static Measure polynomial_modulated(Interval itv, Real alpha, Real beta,
                                        Polynomial modulation, std::size_t nq = 64);
    // Strictly positive samples (x_i, w_i), x_i increasing, spanning the
    // interval; interpolated by a cubic spline in log space.
    static Measure tabulated(Interval itv, std::vector<std::pair<Real, Real>> samples,
                             std::size_t nq = 64);

    // Same measure with the density multiplied by a positive constant.
    Measure scaled(const Real& c) const;

    const Interval& interval() const { return impl_->itv; }
    DensityClass density_class() const { return impl_->cls; }
    int sign() const { return impl_->sign; }
    // Signed total mass (positive for generator measures).
    const Real& mass() const { return impl_->mass; }
    std::size_t quadrature_size() const { return impl_->rule.size(); }
    const QuadratureRule& rule() const { return impl_->rule; }

    // Signed density value at an interior point.
    Real density(const Real& x) const { return Real(impl_->sign) * impl_->density_mag(x); }

    // sign * sum w_i f(x_i).
    Real integrate(const std::function<Real(const Real&)>& f) const;

    // Cauchy transform shat(z) = int d sigma(x) / (z - x). Throws
    // std::domain_error for z on the interval. Near the interval the rule
    // size is refined adaptively until the value stabilizes.
    Complex cauchy(const Complex& z) const;
    Real cauchy(const Real& x) const;

    // Quadrature rule of the requested size for this measure's density
    // (weight magnitudes; cached).
    const QuadratureRule& rule_at(std::size_t nq) const;

    std::string describe() const;

private:
    struct Impl {
        Interval itv;
        DensityClass cls;
        int sign = 1;
        Real mass;
        std::function<Real(const Real&)> density_mag;
        std::function<QuadratureRule(std::size_t)> build_rule;  // magnitudes
        QuadratureRule rule;
        std::string description;
        mutable std::map<std::size_t, QuadratureRule> rule_cache;
        mutable std::mutex cache_mutex;
        Impl(Interval i) : itv(std::move(i)), mass(0) {}
    };
    explicit Measure(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    static Measure finish(std::shared_ptr<Impl> impl, std::size_t nq);
    std::shared_ptr<const Impl> impl_;

    friend Measure product_measure(const Measure& front, const Measure& back);
};

// <sigma_alpha, sigma_beta>: the measure on the support of `front` whose
// density is the density of `front` times the Cauchy transform of `back`.
// Requires disjoint supports. The result is signed.
Measure product_measure(const Measure& front, const Measure& back);

}  // namespace nikhp

#endif
