#ifndef NIKHP_SYSTEM_HPP
#define NIKHP_SYSTEM_HPP

#include <memory>
#include <vector>

#include "nikhp/measure.hpp"

namespace nikhp {

// Nikishin system N(sigma_1, ..., sigma_m). Holds the generators plus the
// full table of chained measures:
//   s_{j,k} = <sigma_j, sigma_{j+1}, ..., sigma_k>   (forward,  j <= k)
//   s_{j,k} = <sigma_j, sigma_{j-1}, ..., sigma_k>   (reversed, j >  k)
// All indices are 1-based to match the usual notation.
class NikishinSystem {
public:
    explicit NikishinSystem(std::vector<Measure> generators);

    std::size_t size() const { return m_; }
    const Measure& generator(std::size_t j) const { return chain(j, j); }
    const Interval& delta(std::size_t j) const { return generator(j).interval(); }

    // The signed measure s_{j,k}; any pair 1 <= j,k <= m is available.
    const Measure& s(std::size_t j, std::size_t k) const { return chain(j, k); }

    // shat_{j,k}(z), the Cauchy transform of s_{j,k}.
    Complex shat(std::size_t j, std::size_t k, const Complex& z) const {
        return s(j, k).cauchy(z);
    }
    Real shat(std::size_t j, std::size_t k, const Real& x) const {
        return s(j, k).cauchy(x);
    }

private:
    const Measure& chain(std::size_t j, std::size_t k) const;
    std::size_t m_;
    // table_[(j-1)*m + (k-1)]
    std::vector<Measure> table_;
};

// Angelesco system: measures on pairwise disjoint intervals.
class AngelescoSystem {
public:
    explicit AngelescoSystem(std::vector<Measure> measures);
    std::size_t size() const { return measures_.size(); }
    const Measure& measure(std::size_t j) const { return measures_.at(j - 1); }
    const Interval& delta(std::size_t j) const { return measure(j).interval(); }

private:
    std::vector<Measure> measures_;
};

}  // namespace nikhp

#endif
