#pragma once

#include <cstddef>
#include <vector>

#include "tgindex/edge_stream.hpp"
#include "tgindex/streaming.hpp"

namespace tgi::oracle {

/// Soft cap on vertex count for the label-setting oracles.
inline constexpr std::size_t kMaxOracleVertices = 10'000;

/// Outgoing edges per vertex, each list sorted by availability time.
class AdjacencyView {
public:
    explicit AdjacencyView(const EdgeStream& stream);

    [[nodiscard]] std::span<const TemporalEdge> out(VertexId v) const { return adjacency_[v]; }
    [[nodiscard]] std::size_t num_vertices() const noexcept { return adjacency_.size(); }
    [[nodiscard]] std::size_t num_edges() const noexcept { return num_edges_; }

private:
    std::vector<std::vector<TemporalEdge>> adjacency_;
    std::size_t num_edges_ = 0;
};

/// Dijkstra-like earliest arrival over adjacency lists.
[[nodiscard]] ArrivalTable earliest_arrival(const EdgeStream& stream, VertexId source, Interval interval);

/// Label-setting minimum durations: labels (start, arrival) are settled in
/// arrival order and discarded when dominated by a settled label.
[[nodiscard]] DurationTable fastest(const EdgeStream& stream, VertexId source, Interval interval);

/// Exhaustive enumeration of temporal paths (no repeated vertex) of at most
/// max_length edges. Only for tiny inputs: requires n <= 12 or m <= 20 and
/// throws ValidationError otherwise, or when the search exceeds its budget.
[[nodiscard]] DurationTable enumerate_paths(const EdgeStream& stream, VertexId source, Interval interval,
                                            std::size_t max_length = static_cast<std::size_t>(-1));

}  // namespace tgi::oracle
