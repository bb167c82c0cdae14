#include "tgindex/closeness.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tgindex/oracle.hpp"
#include "tgindex/parallel.hpp"

namespace tgi {

namespace {

// Sums reciprocals of finite durations in ascending target order so every
// engine produces bit-identical values.
double sum_reached(const FastestPathSearch& search, std::vector<VertexId>& scratch) {
    const auto reached = search.reached();
    scratch.assign(reached.begin(), reached.end());
    std::sort(scratch.begin(), scratch.end());
    double sum = 0.0;
    for (VertexId w : scratch) sum += 1.0 / static_cast<double>(search.duration(w));
    return sum;
}

template <typename PerVertex>
ClosenessRanking rank_all(std::size_t n, unsigned threads, PerVertex&& per_vertex) {
    std::vector<double> values(n, 0.0);
    std::atomic<std::size_t> scanned{0};
    parallel_for(n, threads, [&](unsigned worker, std::size_t v) {
        std::size_t edges = 0;
        values[v] = per_vertex(worker, static_cast<VertexId>(v), edges);
        scanned.fetch_add(edges, std::memory_order_relaxed);
    });
    ClosenessRanking ranking = make_ranking(values);
    ranking.edges_scanned = scanned.load();
    return ranking;
}

}  // namespace

std::vector<double> ClosenessRanking::values() const {
    std::vector<double> out(entries.size(), 0.0);
    for (const auto& e : entries) out[e.vertex] = e.closeness;
    return out;
}

ClosenessRanking make_ranking(const std::vector<double>& closeness) {
    ClosenessRanking r;
    r.entries.reserve(closeness.size());
    for (VertexId v = 0; v < closeness.size(); ++v) r.entries.push_back({v, closeness[v]});
    std::sort(r.entries.begin(), r.entries.end(), [](const auto& a, const auto& b) {
        if (a.closeness != b.closeness) return a.closeness > b.closeness;
        return a.vertex < b.vertex;
    });
    return r;
}

double harmonic_sum(const DurationTable& table, VertexId source) {
    double sum = 0.0;
    for (VertexId w = 0; w < table.duration.size(); ++w) {
        if (w == source || table.duration[w] == kInfinity) continue;
        sum += 1.0 / static_cast<double>(table.duration[w]);
    }
    return sum;
}

ClosenessRanking closeness_via_index(const SubstreamIndex& index, Interval interval, unsigned threads) {
    const unsigned workers = resolve_threads(threads);
    std::vector<std::unique_ptr<IndexQueryEngine>> engines(workers);
    std::vector<std::vector<VertexId>> scratch(workers);
    return rank_all(index.stream().num_vertices(), workers,
                    [&](unsigned w, VertexId v, std::size_t& scanned) {
                        if (!engines[w]) engines[w] = std::make_unique<IndexQueryEngine>(index);
                        const auto f = index.assignment(v);
                        if (f == 0) return 0.0;
                        scanned = index.substream(f).size();
                        return sum_reached(engines[w]->fastest(v, interval), scratch[w]);
                    });
}

ClosenessRanking closeness_baseline(const EdgeStream& stream, Interval interval, unsigned threads) {
    const unsigned workers = resolve_threads(threads);
    const auto variant =
        stream.uniform_transition() ? FastestVariant::uniform_transition : FastestVariant::general;
    std::vector<std::unique_ptr<FastestPathSearch>> searches(workers);
    std::vector<std::vector<VertexId>> scratch(workers);
    return rank_all(stream.num_vertices(), workers, [&](unsigned w, VertexId v, std::size_t& scanned) {
        if (!searches[w]) searches[w] = std::make_unique<FastestPathSearch>(stream.num_vertices());
        searches[w]->run(stream.edges(), v, interval, 0, variant);
        scanned = stream.num_edges();
        return sum_reached(*searches[w], scratch[w]);
    });
}

ClosenessRanking closeness_oracle(const EdgeStream& stream, Interval interval, unsigned threads) {
    return rank_all(stream.num_vertices(), resolve_threads(threads), [&](unsigned, VertexId v, std::size_t&) {
        return harmonic_sum(oracle::fastest(stream, v, interval), v);
    });
}

void write_ranking_csv(std::ostream& out, const ClosenessRanking& ranking, const EdgeStream& stream) {
    out << "vertex,closeness,rank\n";
    const auto precision = out.precision(12);
    std::size_t rank = 1;
    for (const auto& e : ranking.entries) {
        out << stream.label(e.vertex) << ',' << e.closeness << ',' << rank++ << '\n';
    }
    out.precision(precision);
}

void write_ranking_json(std::ostream& out, const ClosenessRanking& ranking, const EdgeStream& stream) {
    nlohmann::json rows = nlohmann::json::array();
    std::size_t rank = 1;
    for (const auto& e : ranking.entries) {
        std::ostringstream value;
        value << std::setprecision(12) << e.closeness;
        rows.push_back({{"vertex", stream.label(e.vertex)}, {"closeness", std::stod(value.str())}, {"rank", rank++}});
    }
    out << rows.dump(2) << '\n';
}

}  // namespace tgi
