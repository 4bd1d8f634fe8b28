#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace aucpower::detail {

// Writes 1-based midranks of `values` into `ranks` (same length). `order` is
// scratch space. Ties are grouped by exact equality.
inline void midranks(std::span<const double> values, std::vector<std::size_t>& order,
                     std::span<double> ranks) {
    const std::size_t n = values.size();
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        // positions i..j-1 share ranks i+1..j
        const double rank = 0.5 * static_cast<double>(i + j + 1);
        for (std::size_t k = i; k < j; ++k) ranks[order[k]] = rank;
        i = j;
    }
}

}  // namespace aucpower::detail
