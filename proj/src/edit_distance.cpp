#include "divsearch/edit_distance.hpp"

#include <algorithm>
#include <vector>

namespace divsearch {

std::size_t edit_distance(std::string_view a, std::string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    const std::size_t m = b.size();
    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        const char ai = a[i - 1];
        for (std::size_t j = 1; j <= m; ++j) {
            std::size_t sub = prev[j - 1] + (ai == b[j - 1] ? 0 : 1);
            cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

std::size_t edit_distance_within(std::string_view a, std::string_view b, std::size_t bound) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    const std::size_t over = bound + 1;
    if ((n > m ? n - m : m - n) > bound) return over;
    if (n == 0) return m;
    if (m == 0) return n;

    // Only cells with |i - j| <= bound can hold values <= bound.
    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j <= bound ? j : over;

    for (std::size_t i = 1; i <= n; ++i) {
        const std::size_t lo = i > bound ? i - bound : 1;
        const std::size_t hi = std::min(m, i + bound);
        cur[lo - 1] = (lo == 1 && i <= bound) ? i : over;
        std::size_t row_min = cur[lo - 1];
        const char ai = a[i - 1];
        for (std::size_t j = lo; j <= hi; ++j) {
            std::size_t v = std::min({prev[j - 1] + (ai == b[j - 1] ? 0 : 1), prev[j] + 1,
                                      cur[j - 1] + 1, over});
            cur[j] = v;
            row_min = std::min(row_min, v);
        }
        if (hi < m) cur[hi + 1] = over;
        if (row_min > bound) return over;
        std::swap(prev, cur);
    }
    return std::min(prev[m], over);
}

}  // namespace divsearch
