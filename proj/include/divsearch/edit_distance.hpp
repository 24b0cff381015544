#pragma once

#include <cstddef>
#include <string_view>

namespace divsearch {

/// Unit-cost Levenshtein distance, two-row dynamic programme.
std::size_t edit_distance(std::string_view a, std::string_view b);

/// Banded Levenshtein with early exit. Returns the exact distance when it is
/// at most `bound`, otherwise some value strictly greater than `bound`
/// (currently `bound + 1`).
std::size_t edit_distance_within(std::string_view a, std::string_view b, std::size_t bound);

}  // namespace divsearch
