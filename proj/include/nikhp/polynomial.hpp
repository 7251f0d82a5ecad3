#ifndef NIKHP_POLYNOMIAL_HPP
#define NIKHP_POLYNOMIAL_HPP

#include <vector>

#include "nikhp/scalar.hpp"

namespace nikhp {

// Dense real polynomial, coefficients in ascending degree order.
// The zero polynomial is represented by an empty coefficient list.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Real> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial zero() { return Polynomial(); }
    static Polynomial constant(Real v) { return Polynomial({std::move(v)}); }
    // Monic polynomial with the given real roots.
    static Polynomial from_roots(const std::vector<Real>& roots);

    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<Real>& coefficients() const { return c_; }
    const Real& operator[](std::size_t i) const { return c_[i]; }
    Real leading() const { return c_.empty() ? Real(0) : c_.back(); }

    Real operator()(const Real& x) const;
    Complex operator()(const Complex& z) const;

    Polynomial derivative() const;

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
    Polynomial operator*(const Real& s) const;
    Polynomial operator/(const Real& s) const { return *this * (Real(1) / s); }

private:
    void trim();
    std::vector<Real> c_;
};

}  // namespace nikhp

#endif
