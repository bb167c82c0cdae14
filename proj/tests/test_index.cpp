#include <gtest/gtest.h>

#include "support/test_graphs.hpp"
#include "tgindex/index.hpp"
#include "tgindex/streaming.hpp"

using namespace tgi;

namespace {

BuildParams params(BuildAlgorithm algo, std::uint32_t k, std::uint32_t h = 8, std::size_t batch = 0) {
    BuildParams p;
    p.algorithm = algo;
    p.k = k;
    p.h = h;
    p.batch_size = batch;
    p.seed = 17;
    p.threads = 1;
    return p;
}

void expect_queries_match(const SubstreamIndex& ix, std::uint64_t seed) {
    const EdgeStream& s = ix.stream();
    std::mt19937_64 rng(seed);
    for (VertexId v = 0; v < s.num_vertices(); ++v) {
        const Interval tau = testdata::random_interval(rng, s);
        EXPECT_EQ(query_fastest(ix, v, tau), fastest_durations(s, v, tau)) << "v=" << v;
        EXPECT_EQ(query_earliest_arrival(ix, v, tau), earliest_arrival(s, v, tau)) << "v=" << v;
    }
}

}  // namespace

TEST(Index, ToyGreedy) {
    const auto s = testdata::toy();
    const auto ix = build_greedy(s, params(BuildAlgorithm::greedy, 2));
    const auto report = validate(ix);
    EXPECT_TRUE(report.ok());
    EXPECT_TRUE(report.greedy_bound_applies);
    EXPECT_EQ(report.non_sinks, 6u);
    EXPECT_LE(ix.size(), report.greedy_bound);
    EXPECT_EQ(report.union_of_reachable, 9u);
    expect_queries_match(ix, 1);
}

TEST(Index, ToyParallel) {
    const auto s = testdata::toy();
    for (std::size_t batch : {1u, 6u}) {
        const auto ix = build_parallel(s, params(BuildAlgorithm::sketch, 2, 8, batch));
        EXPECT_TRUE(validate(ix).ok());
        EXPECT_EQ(ix.params().batch_size, batch);
        expect_queries_match(ix, batch);
    }
}

TEST(Index, StarSinksGetEmptySubstream) {
    std::vector<std::string> labels{"hub", "x", "y", "z", "w"};
    std::vector<RawEdge> raw{{0, 1, 1, 1}, {0, 2, 2, 1}, {0, 3, 3, 1}, {0, 4, 4, 1}};
    const auto s = std::make_shared<const EdgeStream>(EdgeStream::from_edges(labels, raw));
    for (auto algo : {BuildAlgorithm::greedy, BuildAlgorithm::sketch}) {
        const auto ix = build_index(s, params(algo, 3));
        EXPECT_NE(ix.assignment(0), 0u);
        for (VertexId v = 1; v < 5; ++v) EXPECT_EQ(ix.assignment(v), 0u);
        EXPECT_EQ(ix.size(), 4u);
        EXPECT_EQ(ix.query_work(), 4u);
        const auto d = query_fastest(ix, 2, s->lifetime());
        EXPECT_EQ(d[2], 0);
        EXPECT_EQ(d[0], kInfinity);
        const auto ea = query_earliest_arrival(ix, 2, {3, 10});
        EXPECT_EQ(ea[2], 3);
        EXPECT_TRUE(validate(ix).ok());
    }
}

TEST(Index, RandomGraphsValidAndExact) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const auto s = testdata::random_stream(seed, {40, 250, 4, 60});
        for (std::uint32_t k : {2u, 5u, 16u}) {
            const auto g = build_greedy(s, params(BuildAlgorithm::greedy, k));
            const auto rg = validate(g);
            EXPECT_TRUE(rg.ok()) << (rg.violations.empty() ? "" : rg.violations.front());
            EXPECT_LE(g.size(), rg.greedy_bound);
            expect_queries_match(g, seed);
            for (std::size_t batch : {std::size_t{1}, std::size_t{7}, s->num_vertices()}) {
                const auto p = build_parallel(s, params(BuildAlgorithm::sketch, k, 4, batch));
                const auto rp = validate(p);
                EXPECT_TRUE(rp.ok()) << (rp.violations.empty() ? "" : rp.violations.front());
                EXPECT_FALSE(rp.greedy_bound_applies);
                EXPECT_LE(rp.max_vertices_in_substream, 2 * rp.size);
                expect_queries_match(p, seed + batch);
            }
        }
    }
}

TEST(Index, ShuffledOrderIsValid) {
    const auto s = testdata::random_stream(5, {50, 300, 3, 80});
    auto p = params(BuildAlgorithm::sketch, 6, 8, 10);
    p.order = VertexOrder::shuffled;
    const auto ix = build_parallel(s, p);
    EXPECT_TRUE(validate(ix).ok());
    EXPECT_EQ(ix.params().order, VertexOrder::shuffled);
    expect_queries_match(ix, 3);
}

TEST(Index, ThreadCountDoesNotChangeOutput) {
    const auto s = testdata::random_stream(8, {120, 900, 4, 200});
    auto p = params(BuildAlgorithm::sketch, 8, 8, 16);
    const auto one = build_parallel(s, p);
    for (unsigned t : {2u, 4u}) {
        p.threads = t;
        EXPECT_TRUE(build_parallel(s, p) == one);
    }
    auto g = params(BuildAlgorithm::greedy, 8);
    const auto g1 = build_greedy(s, g);
    g.threads = 3;
    EXPECT_TRUE(build_greedy(s, g) == g1);
}

TEST(Index, Preconditions) {
    const auto s = testdata::toy();
    EXPECT_THROW((void)build_greedy(s, params(BuildAlgorithm::greedy, 1)), ValidationError);
    EXPECT_THROW((void)build_greedy(s, params(BuildAlgorithm::greedy, 6)), ValidationError);
    EXPECT_THROW((void)build_parallel(s, params(BuildAlgorithm::sketch, 6)), ValidationError);
    EXPECT_THROW((void)build_parallel(s, params(BuildAlgorithm::sketch, 2, 0)), ValidationError);
    EXPECT_EQ(default_batch_size(10), 10u);
    EXPECT_EQ(default_batch_size(2'000'000), 2048u);
}

TEST(Index, ConstructorRejectsBadInput) {
    const auto s = testdata::toy();
    auto p = params(BuildAlgorithm::greedy, 2);
    std::vector<std::uint32_t> f(6, 1);
    EXPECT_THROW(SubstreamIndex(s, p, {{3, 1}, {}}, f), ValidationError);
    f[0] = 3;
    EXPECT_THROW(SubstreamIndex(s, p, {{0, 1}, {}}, f), ValidationError);
}

TEST(Index, ValidateCatchesMissingEdge) {
    const auto s = testdata::toy();
    const auto good = build_greedy(s, params(BuildAlgorithm::greedy, 2));
    std::vector<Substream> subs{Substream(good.substream(1).begin(), good.substream(1).end()),
                                Substream(good.substream(2).begin(), good.substream(2).end())};
    std::vector<std::uint32_t> f(good.assignments().begin(), good.assignments().end());
    const VertexId a = s->vertex("a");
    auto& target = subs[f[a] - 1];
    target.erase(std::find(target.begin(), target.end(), EdgeId{8}));  // (c,e,9) is in ξ(a)
    const SubstreamIndex broken(s, good.params(), subs, f);
    const auto report = validate(broken);
    EXPECT_FALSE(report.ok());
}

TEST(Index, ValidateCatchesSinkAssignedToSubstream) {
    std::vector<std::string> labels{"u", "v", "w"};
    const auto s = std::make_shared<const EdgeStream>(
        EdgeStream::from_edges(labels, {{0, 1, 1, 1}, {1, 2, 5, 1}}));
    const auto p = params(BuildAlgorithm::greedy, 2);
    const SubstreamIndex ix(s, p, {{0, 1}, {}}, {1, 1, 1});
    EXPECT_FALSE(validate(ix).ok());
}

TEST(Index, QueryVariantDispatch) {
    const auto s = testdata::toy();
    const auto ix = build_greedy(s, params(BuildAlgorithm::greedy, 2));
    const auto r = query(ix, 0, s->lifetime(), QueryKind::earliest_arrival);
    ASSERT_TRUE(std::holds_alternative<ArrivalTable>(r));
    EXPECT_EQ(std::get<ArrivalTable>(r), earliest_arrival(*s, 0, s->lifetime()));
    EXPECT_TRUE(std::holds_alternative<DurationTable>(query(ix, 0, s->lifetime(), QueryKind::fastest)));
}
