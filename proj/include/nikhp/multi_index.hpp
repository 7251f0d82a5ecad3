#ifndef NIKHP_MULTI_INDEX_HPP
#define NIKHP_MULTI_INDEX_HPP

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace nikhp {

// Multi-index n = (n_1..n_m) of non-negative integers, |n| >= 1.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> components) : n_(std::move(components)) {
        if (n_.empty()) throw std::invalid_argument("MultiIndex: empty");
        for (int v : n_)
            if (v < 0) throw std::invalid_argument("MultiIndex: negative component");
        if (total() < 1) throw std::invalid_argument("MultiIndex: |n| must be >= 1");
    }

    std::size_t size() const { return n_.size(); }
    int operator[](std::size_t j) const { return n_[j]; }  // 0-based
    const std::vector<int>& components() const { return n_; }

    int total() const { return std::accumulate(n_.begin(), n_.end(), 0); }

    // Tail sum N_{n,k} = n_k + ... + n_m, with 1-based k; N_{m+1} = 0.
    int tail(std::size_t k) const {
        int s = 0;
        for (std::size_t j = k; j <= n_.size(); ++j) s += n_[j - 1];
        return s;
    }

    bool decreasing() const {
        for (std::size_t j = 1; j < n_.size(); ++j)
            if (n_[j - 1] < n_[j]) return false;
        return true;
    }

    // n^ell: add one to the ell-th component (1-based).
    MultiIndex bump(std::size_t ell) const {
        if (ell < 1 || ell > n_.size()) throw std::out_of_range("MultiIndex::bump");
        std::vector<int> c(n_);
        ++c[ell - 1];
        return MultiIndex(std::move(c));
    }

    std::string str() const {
        std::string s = "(";
        for (std::size_t j = 0; j < n_.size(); ++j) {
            if (j) s += ",";
            s += std::to_string(n_[j]);
        }
        return s + ")";
    }

    bool operator==(const MultiIndex& o) const { return n_ == o.n_; }

private:
    std::vector<int> n_;
};

// All multi-indices of length m with 1 <= |n| <= budget, lexicographic order.
std::vector<MultiIndex> all_indices(std::size_t m, int budget);

}  // namespace nikhp

#endif
