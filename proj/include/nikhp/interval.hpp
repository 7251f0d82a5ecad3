#ifndef NIKHP_INTERVAL_HPP
#define NIKHP_INTERVAL_HPP

#include <stdexcept>

#include "nikhp/scalar.hpp"

namespace nikhp {

// A finite real interval [a, b], a < b.
struct Interval {
    Real a;
    Real b;

    Interval(Real lo, Real hi) : a(std::move(lo)), b(std::move(hi)) {
        if (!(a < b)) throw std::invalid_argument("Interval: requires a < b");
    }

    Real length() const { return b - a; }
    Real midpoint() const { return (a + b) / 2; }
    Real half_length() const { return (b - a) / 2; }

    bool contains(const Real& x) const { return a <= x && x <= b; }
    bool contains_strict(const Real& x) const { return a < x && x < b; }

    bool intersects(const Interval& o) const { return !(b < o.a || o.b < a); }

    // Distance from a complex point to the interval (0 when on it).
    Real distance(const Complex& z) const {
        Real dx = 0;
        if (z.re < a) dx = a - z.re;
        else if (z.re > b) dx = z.re - b;
        if (z.im == 0) return dx;
        if (dx == 0) return abs(z.im);
        return sqrt(dx * dx + z.im * z.im);
    }
};

}  // namespace nikhp

#endif
