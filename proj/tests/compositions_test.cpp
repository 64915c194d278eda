#include <gtest/gtest.h>

#include <random>
#include <set>

#include "sumrank/compositions.hpp"

using namespace sumrank;

namespace {

std::vector<RankProfile> profiles(std::initializer_list<std::initializer_list<unsigned>> list) {
    std::vector<RankProfile> out;
    for (auto p : list) out.emplace_back(p);
    return out;
}

// Every tuple in [0, bound]^parts, filtered by sum, in lexicographic order.
std::vector<RankProfile> brute_force(unsigned t, const std::vector<unsigned>& bounds) {
    std::vector<RankProfile> out;
    std::vector<unsigned> cur(bounds.size(), 0);
    while (true) {
        unsigned sum = 0;
        for (unsigned c : cur) sum += c;
        if (sum == t) out.emplace_back(cur);
        std::size_t i = bounds.size();
        while (i > 0 && cur[i - 1] == bounds[i - 1]) cur[--i] = 0;
        if (i == 0) break;
        ++cur[i - 1];
    }
    return out;
}

}  // namespace

TEST(EnumerateUniform, Examples) {
    EXPECT_EQ(enumerate_uniform(2, 2, 1).to_vector(), profiles({{1, 1}}));
    EXPECT_EQ(enumerate_uniform(2, 2, 2).to_vector(), profiles({{0, 2}, {1, 1}, {2, 0}}));
    EXPECT_TRUE(enumerate_uniform(5, 2, 2).to_vector().empty());
}

TEST(EnumerateBounded, Examples) {
    EXPECT_EQ(enumerate_bounded(2, {1, 2}).to_vector(), profiles({{0, 2}, {1, 1}}));
    EXPECT_EQ(enumerate_bounded(0, {3, 0, 2}).to_vector(), profiles({{0, 0, 0}}));
    EXPECT_TRUE(enumerate_bounded(4, {1, 1}).to_vector().empty());
}

TEST(EnumerateBounded, ZeroBoundsAndSinglePart) {
    EXPECT_EQ(enumerate_bounded(3, {5}).to_vector(), profiles({{3}}));
    EXPECT_TRUE(enumerate_bounded(1, {0, 0}).to_vector().empty());
    EXPECT_EQ(enumerate_bounded(2, {0, 2, 0}).to_vector(), profiles({{0, 2, 0}}));
}

TEST(EnumerateBounded, MatchesBruteForceRandomBounds) {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<unsigned> len(1, 5);
    std::uniform_int_distribution<unsigned> bound(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<unsigned> bounds(len(rng));
        unsigned cap = 0;
        for (auto& b : bounds) cap += (b = bound(rng));
        const unsigned t = std::uniform_int_distribution<unsigned>(0, cap + 1)(rng);
        const auto got = enumerate_bounded(t, bounds).to_vector();
        EXPECT_EQ(got, brute_force(t, bounds));
        for (const auto& p : got) {
            EXPECT_EQ(p.total(), t);
            for (std::size_t i = 0; i < p.size(); ++i) EXPECT_LE(p[i], bounds[i]);
        }
        EXPECT_EQ(std::set<RankProfile>(got.begin(), got.end()).size(), got.size());
    }
}

TEST(CountUniform, Examples) {
    EXPECT_EQ(count_uniform(2, 2, 1), 1);
    EXPECT_EQ(count_uniform(2, 2, 2), 3);
    EXPECT_EQ(count_uniform(3, 2, 2), 2);
    EXPECT_EQ(count_uniform(5, 2, 2), 0);
    EXPECT_EQ(count_uniform(0, 4, 0), 1);
}

TEST(CountUpperBound, Examples) {
    EXPECT_EQ(count_upper_bound(2, 2), 3);
    EXPECT_EQ(count_upper_bound(0, 5), 1);
    EXPECT_EQ(count_upper_bound(3, 2), 4);
}

TEST(CountUniform, AgreesWithEnumerationOnGrid) {
    for (unsigned t = 0; t <= 12; ++t)
        for (unsigned ell = 1; ell <= 6; ++ell)
            for (unsigned mu = 0; mu <= 5; ++mu) {
                std::size_t n = 0;
                for (const auto& p : enumerate_uniform(t, ell, mu)) {
                    (void)p;
                    ++n;
                }
                std::size_t bounded = 0;
                for (const auto& p : enumerate_bounded(t, std::vector<unsigned>(ell, mu))) {
                    (void)p;
                    ++bounded;
                }
                EXPECT_EQ(count_uniform(t, ell, mu), n) << t << ' ' << ell << ' ' << mu;
                EXPECT_EQ(bounded, n);
                EXPECT_LE(count_uniform(t, ell, mu), count_upper_bound(t, ell));
            }
}

TEST(BoundedCompositions, LargeSpaceStreams) {
    // C(27, 7) = 888030 compositions; only one is alive at a time
    std::size_t n = 0;
    RankProfile last;
    for (const auto& p : enumerate_uniform(20, 8, 20)) {
        if (n) {
            EXPECT_LT(last, p);
        }
        last = p;
        ++n;
    }
    EXPECT_EQ(count_uniform(20, 8, 20), n);
}
