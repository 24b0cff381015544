#include "divsearch/edit_distance.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

namespace divsearch {
namespace {

using testing::random_string;
using testing::reference_levenshtein;

TEST(EditDistance, Examples) {
    EXPECT_EQ(edit_distance("abc", "abc"), 0u);
    EXPECT_EQ(edit_distance("", "abc"), 3u);
    EXPECT_EQ(edit_distance("abc", ""), 3u);
    EXPECT_EQ(edit_distance("", ""), 0u);
    // Full-table oracle gives 3 for this pair.
    ASSERT_EQ(reference_levenshtein("kitten", "sitting"), 3u);
    EXPECT_EQ(edit_distance("kitten", "sitting"), 3u);
}

TEST(EditDistance, MatchesFullTableOracle) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        auto a = random_string(rng, 0, 30);
        auto b = random_string(rng, 0, 30);
        EXPECT_EQ(edit_distance(a, b), reference_levenshtein(a, b)) << a << " / " << b;
    }
}

TEST(EditDistance, BandedAgreesWithFullWithinBound) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 2000; ++i) {
        auto a = random_string(rng, 0, 25, "abc");
        auto b = random_string(rng, 0, 25, "abc");
        const std::size_t bound = rng() % 20;
        const auto full = edit_distance(a, b);
        const auto banded = edit_distance_within(a, b, bound);
        if (full <= bound)
            EXPECT_EQ(banded, full) << a << " / " << b << " bound " << bound;
        else
            EXPECT_GT(banded, bound) << a << " / " << b << " bound " << bound;
    }
}

TEST(EditDistance, BandedEdgeCases) {
    EXPECT_EQ(edit_distance_within("", "", 0), 0u);
    EXPECT_EQ(edit_distance_within("abc", "abc", 0), 0u);
    EXPECT_EQ(edit_distance_within("abc", "abd", 0), 1u);
    EXPECT_EQ(edit_distance_within("", "abc", 3), 3u);
    EXPECT_EQ(edit_distance_within("", "abc", 2), 3u);
    EXPECT_EQ(edit_distance_within("kitten", "sitting", 3), 3u);
    EXPECT_EQ(edit_distance_within("kitten", "sitting", 2), 3u);
}

TEST(EditDistance, MetricAxioms) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
        auto a = random_string(rng, 0, 20);
        auto b = random_string(rng, 0, 20);
        auto c = random_string(rng, 0, 20);
        const auto ab = edit_distance(a, b);
        EXPECT_EQ(ab, edit_distance(b, a));
        EXPECT_LE(ab, edit_distance(a, c) + edit_distance(c, b));
        const auto gap = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
        EXPECT_GE(ab, gap);
        EXPECT_LE(ab, std::max(a.size(), b.size()));
    }
}

}  // namespace
}  // namespace divsearch
