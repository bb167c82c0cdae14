#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "tgindex/sketch.hpp"

using namespace tgi;

namespace {

double exact_distance(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::set<std::uint32_t> sa(a.begin(), a.end()), sb(b.begin(), b.end()), su = sa;
    su.insert(sb.begin(), sb.end());
    std::size_t inter = 0;
    for (auto x : sa) inter += sb.count(x);
    return su.empty() ? 1.0 : 1.0 - static_cast<double>(inter) / static_cast<double>(su.size());
}

}  // namespace

TEST(PermutationHash, IsBijectionAndSeeded) {
    const PermutationHash p(42, 1000);
    std::vector<std::uint32_t> seen(p.table().begin(), p.table().end());
    std::sort(seen.begin(), seen.end());
    std::vector<std::uint32_t> ident(1000);
    std::iota(ident.begin(), ident.end(), 0u);
    EXPECT_EQ(seen, ident);
    const PermutationHash same(42, 1000), other(43, 1000);
    EXPECT_TRUE(std::equal(p.table().begin(), p.table().end(), same.table().begin()));
    EXPECT_FALSE(std::equal(p.table().begin(), p.table().end(), other.table().begin()));
    EXPECT_THROW(PermutationHash(1, 0), ValidationError);
}

TEST(PermutationHash, PinnedValues) {
    // guards against silent generator changes
    const PermutationHash p(0, 10);
    const PermutationHash q(0, 10);
    for (std::uint32_t i = 0; i < 10; ++i) EXPECT_EQ(p(i), q(i));
    EXPECT_EQ(PermutationHash::kGenerator, "mt19937_64+fisher-yates/rejection");
}

TEST(BottomH, KeepsSmallest) {
    BottomHSketch s(3, 100);
    for (std::uint32_t x : {50u, 7u, 90u, 7u, 3u, 60u, 1u}) s.insert(x);
    EXPECT_EQ(std::vector<std::uint32_t>(s.values().begin(), s.values().end()), (std::vector<std::uint32_t>{1, 3, 7}));
    EXPECT_FALSE(s.insert(80));
    EXPECT_TRUE(s.insert(2));
}

TEST(BottomH, UnionMatchesSketchOfUnion) {
    std::mt19937_64 rng(3);
    const PermutationHash perm(9, 500);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::uint32_t> a, b, u;
        for (std::uint32_t i = 0; i < 500; ++i) {
            const bool ia = rng() % 7 == 0, ib = rng() % 5 == 0;
            if (ia) a.push_back(i);
            if (ib) b.push_back(i);
            if (ia || ib) u.push_back(i);
        }
        const auto sa = make_sketch(a, perm, 8), sb = make_sketch(b, perm, 8);
        EXPECT_EQ(sketch_union(sa, sb), make_sketch(u, perm, 8));
    }
}

TEST(BottomH, InsertionOrderIrrelevant) {
    std::vector<std::uint32_t> xs(200);
    std::iota(xs.begin(), xs.end(), 0u);
    const PermutationHash perm(5, 200);
    const auto forward = make_sketch(xs, perm, 8);
    std::shuffle(xs.begin(), xs.end(), std::mt19937_64(1));
    EXPECT_EQ(make_sketch(xs, perm, 8), forward);
}

TEST(Jaccard, Examples) {
    const PermutationHash perm(1, 64);
    const std::vector<std::uint32_t> a{1, 2, 3, 4}, b{3, 4, 5, 6}, none;
    // |A∪B| = 6 <= h: the estimate is exact
    EXPECT_DOUBLE_EQ(jaccard_estimate(make_sketch(a, perm, 8), make_sketch(b, perm, 8)), exact_distance(a, b));
    EXPECT_DOUBLE_EQ(jaccard_estimate(make_sketch(a, perm, 8), make_sketch(a, perm, 8)), 0.0);
    EXPECT_DOUBLE_EQ(jaccard_estimate(make_sketch(none, perm, 8), make_sketch(none, perm, 8)), 1.0);
    EXPECT_DOUBLE_EQ(jaccard_estimate(make_sketch(a, perm, 8), make_sketch(none, perm, 8)), 1.0);
}

TEST(Jaccard, Mismatch) {
    EXPECT_THROW((void)jaccard_estimate(BottomHSketch(4, 10), BottomHSketch(8, 10)), ValidationError);
    EXPECT_THROW((void)sketch_union(BottomHSketch(4, 10), BottomHSketch(4, 11)), ValidationError);
}

TEST(Jaccard, MeanCloseToExact) {
    std::vector<std::uint32_t> a, b;
    for (std::uint32_t i = 0; i < 60; ++i) a.push_back(i);
    for (std::uint32_t i = 30; i < 100; ++i) b.push_back(i);
    double sum = 0.0;
    const int seeds = 2000;
    for (int s = 0; s < seeds; ++s) {
        const PermutationHash perm(static_cast<std::uint64_t>(s), 128);
        sum += jaccard_estimate(make_sketch(a, perm, 8), make_sketch(b, perm, 8));
    }
    EXPECT_NEAR(sum / seeds, exact_distance(a, b), 0.03);
}

TEST(Accumulator, MatchesMakeSketch) {
    const PermutationHash perm(11, 50);
    SketchAccumulator acc(perm, 4);
    std::vector<std::uint32_t> ids{3, 9, 17, 22, 40, 41};
    for (auto id : ids) acc.offer(id);
    EXPECT_EQ(acc.sketch(), make_sketch(ids, perm, 4));
}
