#include <gtest/gtest.h>

#include "support/test_graphs.hpp"
#include "tgindex/oracle.hpp"
#include "tgindex/streaming.hpp"

using namespace tgi;

namespace {

Time value_of(const EdgeStream& s, const std::vector<Time>& table, const char* label) {
    return table[s.vertex(label)];
}

}  // namespace

TEST(Streaming, ToySkipArray) {
    const auto s = testdata::toy();
    const auto skip = build_skip_array(s->edges());
    EXPECT_EQ(skip.first_out(s->vertex("a")), 0u);
    EXPECT_EQ(skip.first_out(s->vertex("d")), 1u);
    EXPECT_EQ(skip.first_out(s->vertex("c")), 3u);
    EXPECT_EQ(skip.first_out(s->vertex("b")), 5u);
    EXPECT_EQ(skip.first_out(s->vertex("e")), 6u);
    EXPECT_EQ(skip.first_out(s->vertex("f")), 7u);
    EXPECT_EQ(skip.size(), 6u);
    EXPECT_THROW((void)SkipArray::from_entries({{2, 0}, {1, 3}}), ValidationError);
}

TEST(Streaming, ToyEarliestArrival) {
    const auto s = testdata::toy();
    const auto a = earliest_arrival(*s, s->vertex("a"), s->lifetime()).arrival;
    EXPECT_EQ(value_of(*s, a, "a"), 1);
    EXPECT_EQ(value_of(*s, a, "b"), 2);
    EXPECT_EQ(value_of(*s, a, "c"), 4);
    EXPECT_EQ(value_of(*s, a, "d"), 4);
    EXPECT_EQ(value_of(*s, a, "e"), 10);
    EXPECT_EQ(value_of(*s, a, "f"), kInfinity);

    const auto f = earliest_arrival(*s, s->vertex("f"), s->lifetime()).arrival;
    EXPECT_EQ(value_of(*s, f, "c"), 8);
    EXPECT_EQ(value_of(*s, f, "e"), 10);
    EXPECT_EQ(value_of(*s, f, "a"), kInfinity);
}

TEST(Streaming, ToyFastest) {
    const auto s = testdata::toy();
    const auto a = fastest_durations(*s, s->vertex("a"), s->lifetime()).duration;
    EXPECT_EQ(value_of(*s, a, "a"), 0);
    EXPECT_EQ(value_of(*s, a, "b"), 1);
    EXPECT_EQ(value_of(*s, a, "c"), 1);
    EXPECT_EQ(value_of(*s, a, "d"), 2);
    EXPECT_EQ(value_of(*s, a, "e"), 7);
    EXPECT_EQ(value_of(*s, a, "f"), kInfinity);

    const auto d = fastest_durations(*s, s->vertex("d"), s->lifetime()).duration;
    EXPECT_EQ(value_of(*s, d, "f"), 1);
    EXPECT_EQ(value_of(*s, d, "c"), 7);
    EXPECT_EQ(value_of(*s, d, "e"), 9);
}

TEST(Streaming, IntervalRestricts) {
    const auto s = testdata::toy();
    // c -> e at 9 arrives at 10, outside [1, 9]
    const auto a = fastest_durations(*s, s->vertex("a"), {1, 9}).duration;
    EXPECT_EQ(value_of(*s, a, "e"), kInfinity);
    const auto late = earliest_arrival(*s, s->vertex("a"), {2, 10}).arrival;
    EXPECT_EQ(value_of(*s, late, "b"), 3);
    EXPECT_EQ(value_of(*s, late, "a"), 2);
}

TEST(Streaming, SkipDoesNotChangeResults) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto s = testdata::random_stream(seed, {30, 150, 4, 40});
        const auto skip = build_skip_array(s->edges());
        std::mt19937_64 rng(seed);
        for (VertexId v = 0; v < s->num_vertices(); ++v) {
            const Interval tau = testdata::random_interval(rng, *s);
            EXPECT_EQ(earliest_arrival(*s, v, tau, &skip), earliest_arrival(*s, v, tau));
            EXPECT_EQ(fastest_durations(*s, v, tau, &skip), fastest_durations(*s, v, tau));
        }
    }
}

TEST(Streaming, UniformVariantMatchesGeneral) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto s = testdata::random_stream(seed, {25, 200, 1, 30});
        ASSERT_TRUE(s->uniform_transition());
        std::mt19937_64 rng(seed);
        for (VertexId v = 0; v < s->num_vertices(); ++v) {
            const Interval tau = testdata::random_interval(rng, *s);
            const auto g = fastest_durations(s->edges(), s->num_vertices(), v, tau, nullptr, FastestVariant::general);
            const auto u = fastest_durations(s->edges(), s->num_vertices(), v, tau, nullptr,
                                             FastestVariant::uniform_transition);
            EXPECT_EQ(g, u);
            EXPECT_EQ(g, oracle::fastest(*s, v, tau));
        }
    }
}

TEST(Streaming, LabelsStayConsistent) {
    const auto s = testdata::random_stream(99, {40, 400, 5, 60});
    FastestPathSearch search(s->num_vertices());
    for (VertexId v = 0; v < s->num_vertices(); ++v) {
        search.run(s->edges(), v, s->lifetime());
        EXPECT_TRUE(search.labels_consistent());
        for (VertexId w : search.reached()) {
            EXPECT_NE(w, v);
            EXPECT_NE(search.duration(w), kInfinity);
        }
    }
}

TEST(Streaming, WiderIntervalNeverWorse) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = testdata::random_stream(seed, {20, 120, 3, 30});
        std::mt19937_64 rng(seed + 500);
        for (VertexId v = 0; v < s->num_vertices(); ++v) {
            const Interval inner = testdata::random_interval(rng, *s);
            const Interval outer{inner.begin - static_cast<Time>(rng() % 3), inner.end + static_cast<Time>(rng() % 3)};
            const auto di = fastest_durations(*s, v, inner);
            const auto d_o = fastest_durations(*s, v, outer);
            for (VertexId w = 0; w < s->num_vertices(); ++w) EXPECT_LE(d_o[w], di[w]);
        }
    }
}

TEST(Reachable, Toy) {
    const auto s = testdata::toy();
    const auto skip = build_skip_array(s->edges());
    const auto xa = reachable_stream(*s, s->vertex("a"), skip);
    EXPECT_EQ(xa, testdata::ids_of(*s, {{"a", "b", 1}, {"a", "b", 2}, {"a", "c", 3}, {"b", "d", 3}, {"c", "e", 9}}));
    const auto xf = reachable_stream(*s, s->vertex("f"), skip);
    EXPECT_EQ(xf, testdata::ids_of(*s, {{"f", "c", 7}, {"c", "e", 9}}));
}

TEST(Reachable, MatchesBruteForce) {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto s = testdata::random_stream(seed, {15, 60, 4, 25});
        const auto skip = build_skip_array(s->edges());
        const auto out_end = last_out_ends(s->edges(), s->num_vertices());
        ReachableStreamSearch search(s->num_vertices());
        for (VertexId v = 0; v < s->num_vertices(); ++v) {
            const auto expected = testdata::brute_force_reachable(*s, v);
            EXPECT_EQ(search.run(s->edges(), v, skip), expected);
            EXPECT_EQ(search.run(s->edges(), v, skip, nullptr, out_end), expected);
        }
    }
}

TEST(Reachable, LastOutEnds) {
    const auto s = testdata::toy();
    const auto end = last_out_ends(s->edges(), s->num_vertices());
    EXPECT_EQ(end[s->vertex("a")], 5u);
    EXPECT_EQ(end[s->vertex("c")], 9u);
    EXPECT_EQ(end[s->vertex("f")], 8u);
}

TEST(Reachable, RestrictionPreservesDistances) {
    // queries on ξ(v) alone give the same answers as the full stream
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto s = testdata::random_stream(seed, {30, 200, 5, 40});
        const auto skip = build_skip_array(s->edges());
        std::mt19937_64 rng(seed);
        for (VertexId v = 0; v < s->num_vertices(); ++v) {
            const auto xi = reachable_stream(*s, v, skip);
            const auto edges = materialize(*s, xi);
            const Interval tau = testdata::random_interval(rng, *s);
            EXPECT_EQ(fastest_durations(edges, s->num_vertices(), v, tau), fastest_durations(*s, v, tau));
            EXPECT_EQ(earliest_arrival(edges, s->num_vertices(), v, tau), earliest_arrival(*s, v, tau));
        }
    }
}
