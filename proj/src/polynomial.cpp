#include "nikhp/polynomial.hpp"

#include <algorithm>

namespace nikhp {

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Polynomial Polynomial::from_roots(const std::vector<Real>& roots) {
    std::vector<Real> out{Real(1)};
    for (const Real& r : roots) {
        std::vector<Real> next(out.size() + 1, Real(0));
        for (std::size_t i = 0; i < out.size(); ++i) {
            next[i + 1] += out[i];
            next[i] -= r * out[i];
        }
        out = std::move(next);
    }
    return Polynomial(std::move(out));
}

Real Polynomial::operator()(const Real& x) const {
    Real acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Complex Polynomial::operator()(const Complex& z) const {
    Complex acc(Real(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + Complex(*it);
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Real> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Real(static_cast<int>(i));
    return Polynomial(std::move(d));
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<Real> c(std::max(p.c_.size(), q.c_.size()), Real(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) c[i] += q.c_[i];
    return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) {
    std::vector<Real> c(std::max(p.c_.size(), q.c_.size()), Real(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
    for (std::size_t i = 0; i < q.c_.size(); ++i) c[i] -= q.c_[i];
    return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return Polynomial();
    std::vector<Real> c(p.c_.size() + q.c_.size() - 1, Real(0));
    for (std::size_t i = 0; i < p.c_.size(); ++i)
        for (std::size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
    return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Real& s) const {
    std::vector<Real> c(c_);
    for (auto& v : c) v *= s;
    return Polynomial(std::move(c));
}

}  // namespace nikhp
