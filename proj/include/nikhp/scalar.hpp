#ifndef NIKHP_SCALAR_HPP
#define NIKHP_SCALAR_HPP

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <cmath>
#include <limits>
#include <string>

namespace nikhp {

// All heavy arithmetic runs on an MPFR-backed float whose precision is a
// process-wide (thread-local) setting, configured in bits.
using Real = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>, boost::multiprecision::et_off>;

// Bits currently configured for new Real values on this thread.
unsigned precision_bits();

// Sets the working precision (in bits) for the calling thread. Minimum 64.
void set_precision_bits(unsigned bits);

// 2^(-bits/2), the rank/simplicity threshold scale used across modules.
Real half_precision_eps();

// 10^(-d) computed at working precision.
Real pow10(int d);

using boost::multiprecision::abs;
using boost::multiprecision::sqrt;
using boost::multiprecision::log;
using boost::multiprecision::log10;
using boost::multiprecision::exp;
using boost::multiprecision::pow;
using boost::multiprecision::floor;
using boost::multiprecision::ceil;
using boost::multiprecision::cos;
using boost::multiprecision::sin;
using boost::multiprecision::tgamma;

Real real_pi();

// Minimal complex type over Real. std::complex is only specified for
// built-in floating point, so we carry our own with just the operations
// the library needs.
struct Complex {
    Real re{0};
    Real im{0};

    Complex() = default;
    Complex(Real r) : re(std::move(r)) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(double r) : re(r) {}
    Complex(double r, double i) : re(r), im(i) {}

    bool is_real() const { return im == 0; }

    Complex operator-() const { return {-re, -im}; }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        // Smith's algorithm; avoids overflow and keeps full precision.
        if (abs(b.re) >= abs(b.im)) {
            Real r = b.im / b.re;
            Real d = b.re + b.im * r;
            return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
        }
        Real r = b.re / b.im;
        Real d = b.im + b.re * r;
        return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
    }
    Complex& operator+=(const Complex& o) { *this = *this + o; return *this; }
    Complex& operator-=(const Complex& o) { *this = *this - o; return *this; }
    Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }
    Complex& operator/=(const Complex& o) { *this = *this / o; return *this; }

    friend Complex operator+(const Real& a, const Complex& b) { return Complex(a) + b; }
    friend Complex operator-(const Real& a, const Complex& b) { return Complex(a) - b; }
    friend Complex operator*(const Real& a, const Complex& b) { return Complex(a) * b; }
    friend Complex operator/(const Real& a, const Complex& b) { return Complex(a) / b; }
    friend Complex operator*(const Complex& a, const Real& b) { return a * Complex(b); }
    friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
};

inline Complex conj(const Complex& z) { return {z.re, -z.im}; }

inline Real abs(const Complex& z) {
    if (z.im == 0) return abs(z.re);
    if (z.re == 0) return abs(z.im);
    return sqrt(z.re * z.re + z.im * z.im);
}

// Decimal string at full working precision; deterministic for fixed input.
std::string to_decimal_string(const Real& x);

}  // namespace nikhp

// Eigen with the MPFR-backed scalar. Boost ships the NumTraits glue but the
// Eigen in this toolchain also wants infinity()/quiet_NaN().
namespace Eigen {
template <>
struct NumTraits<nikhp::Real> : GenericNumTraits<nikhp::Real> {
    using Base = GenericNumTraits<nikhp::Real>;
    static nikhp::Real dummy_precision() { return Base::epsilon() * 1000; }
    static nikhp::Real infinity() { return std::numeric_limits<nikhp::Real>::infinity(); }
    static nikhp::Real quiet_NaN() { return std::numeric_limits<nikhp::Real>::quiet_NaN(); }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 20,
        AddCost = 60,
        MulCost = 100
    };
};
}  // namespace Eigen

#endif
