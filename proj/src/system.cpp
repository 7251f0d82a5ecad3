#include "nikhp/system.hpp"

#include <optional>
#include <stdexcept>

namespace nikhp {

NikishinSystem::NikishinSystem(std::vector<Measure> generators) : m_(generators.size()) {
    if (m_ == 0) throw std::invalid_argument("NikishinSystem: need at least one generator");
    for (std::size_t j = 0; j + 1 < m_; ++j)
        if (generators[j].interval().intersects(generators[j + 1].interval()))
            throw std::invalid_argument(
                "NikishinSystem: consecutive generator supports must be disjoint");

    std::vector<std::optional<Measure>> grid(m_ * m_);
    auto at = [&](std::size_t j, std::size_t k) -> std::optional<Measure>& {
        return grid[(j - 1) * m_ + (k - 1)];
    };
    for (std::size_t j = 1; j <= m_; ++j) at(j, j) = generators[j - 1];
    // Forward chains: s_{j,k} = <sigma_j, s_{j+1,k}>, built for decreasing j.
    for (std::size_t k = 2; k <= m_; ++k)
        for (std::size_t j = k - 1; j >= 1; --j) {
            at(j, k) = product_measure(generators[j - 1], *at(j + 1, k));
            if (j == 1) break;
        }
    // Reversed chains: s_{j,k} = <sigma_j, s_{j-1,k}>, built for increasing j.
    for (std::size_t k = 1; k < m_; ++k)
        for (std::size_t j = k + 1; j <= m_; ++j)
            at(j, k) = product_measure(generators[j - 1], *at(j - 1, k));

    table_.reserve(m_ * m_);
    for (auto& entry : grid) table_.push_back(std::move(*entry));
}

const Measure& NikishinSystem::chain(std::size_t j, std::size_t k) const {
    if (j < 1 || j > m_ || k < 1 || k > m_)
        throw std::out_of_range("NikishinSystem: index out of range");
    return table_[(j - 1) * m_ + (k - 1)];
}

AngelescoSystem::AngelescoSystem(std::vector<Measure> measures)
    : measures_(std::move(measures)) {
    if (measures_.empty())
        throw std::invalid_argument("AngelescoSystem: need at least one measure");
    for (std::size_t i = 0; i < measures_.size(); ++i)
        for (std::size_t j = i + 1; j < measures_.size(); ++j)
            if (measures_[i].interval().intersects(measures_[j].interval()))
                throw std::invalid_argument("AngelescoSystem: intervals must be pairwise disjoint");
}

}  // namespace nikhp
