#include <algorithm>
#include <memory>
#include <unordered_set>

#include "tgindex/edge_stream.hpp"
#include "tgindex/parallel.hpp"
#include "tgindex/streaming.hpp"

namespace tgi {

StreamStats stream_stats(const EdgeStream& stream, unsigned threads) {
    StreamStats stats;
    stats.vertices = stream.num_vertices();
    stats.edges = stream.num_edges();
    stats.lifetime = stream.lifetime();
    std::unordered_set<Time> times;
    for (const auto& e : stream.edges()) times.insert(e.time);
    stats.distinct_timestamps = times.size();
    if (stream.empty()) return stats;

    const auto n = stream.num_vertices();
    const SkipArray skip = SkipArray::build(stream.edges());
    const auto out_end = last_out_ends(stream.edges(), n);
    const unsigned workers = resolve_threads(threads);
    std::vector<std::unique_ptr<ReachableStreamSearch>> searches(workers);
    std::vector<std::size_t> sizes(n, 0);
    parallel_for(n, workers, [&](unsigned w, std::size_t v) {
        if (!searches[w]) searches[w] = std::make_unique<ReachableStreamSearch>(n);
        sizes[v] = searches[w]->run(stream.edges(), static_cast<VertexId>(v), skip, nullptr, out_end).size();
    });
    std::size_t total = 0;
    for (auto s : sizes) {
        total += s;
        stats.max_reachable = std::max(stats.max_reachable, s);
    }
    stats.avg_reachable = static_cast<double>(total) / static_cast<double>(n);
    return stats;
}

}  // namespace tgi
