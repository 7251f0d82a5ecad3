#include "nikhp/multi_index.hpp"

namespace nikhp {

namespace {
void enumerate(std::size_t m, int budget, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    if (cur.size() == m) {
        int s = 0;
        for (int v : cur) s += v;
        if (s >= 1) out.emplace_back(cur);
        return;
    }
    for (int v = 0; v <= budget; ++v) {
        int used = 0;
        for (int w : cur) used += w;
        if (used + v > budget) break;
        cur.push_back(v);
        enumerate(m, budget, cur, out);
        cur.pop_back();
    }
}
}  // namespace

std::vector<MultiIndex> all_indices(std::size_t m, int budget) {
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    enumerate(m, budget, cur, out);
    return out;
}

}  // namespace nikhp
