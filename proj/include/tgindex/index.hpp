#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tgindex/edge_stream.hpp"
#include "tgindex/streaming.hpp"

namespace tgi {

enum class BuildAlgorithm : std::uint32_t { greedy = 0, sketch = 1 };
enum class VertexOrder : std::uint32_t { ascending = 0, shuffled = 1 };

struct BuildParams {
    BuildAlgorithm algorithm = BuildAlgorithm::sketch;
    std::uint32_t k = 256;
    std::uint32_t h = 8;
    std::size_t batch_size = 0;  // 0: n below one million vertices, else 2048
    std::uint64_t seed = 0;
    unsigned threads = 0;        // 0: all hardware threads
    VertexOrder order = VertexOrder::ascending;
};

/// Batch size used when BuildParams::batch_size is 0.
[[nodiscard]] std::size_t default_batch_size(std::size_t num_vertices) noexcept;

/// k substreams S_1..S_k of one edge stream plus a vertex assignment f such
/// that ξ(v) ⊆ S_f(v) for every vertex with f(v) != 0. f(v) == 0 marks the
/// empty substream and is used exactly for vertices with ξ(v) = ∅.
class SubstreamIndex {
public:
    struct Part {
        Substream ids;                    // ascending global edge ids
        std::vector<TemporalEdge> edges;  // materialised copy, same order
        SkipArray skip;                   // local positions into edges
    };

    SubstreamIndex(std::shared_ptr<const EdgeStream> stream, BuildParams params,
                   std::vector<Substream> substreams, std::vector<std::uint32_t> assignment);

    [[nodiscard]] const EdgeStream& stream() const noexcept { return *stream_; }
    [[nodiscard]] std::shared_ptr<const EdgeStream> stream_ptr() const noexcept { return stream_; }
    [[nodiscard]] const BuildParams& params() const noexcept { return params_; }
    [[nodiscard]] std::uint32_t k() const noexcept { return params_.k; }

    /// Substream i in [1, k].
    [[nodiscard]] const Part& part(std::uint32_t i) const { return parts_.at(i - 1); }
    [[nodiscard]] std::span<const EdgeId> substream(std::uint32_t i) const { return part(i).ids; }
    [[nodiscard]] std::uint32_t assignment(VertexId v) const { return assignment_.at(v); }
    [[nodiscard]] std::span<const std::uint32_t> assignments() const noexcept { return assignment_; }
    /// I_1..I_k: number of vertices assigned to each substream.
    [[nodiscard]] std::vector<std::size_t> assigned_counts() const;

    /// max_i |S_i|.
    [[nodiscard]] std::size_t size() const noexcept;
    /// Σ_i |S_i|.
    [[nodiscard]] std::size_t total_edges() const noexcept;
    /// Σ_v |S_f(v)|: edges scanned by one query from every vertex.
    [[nodiscard]] std::size_t query_work() const noexcept;

    friend bool operator==(const SubstreamIndex& a, const SubstreamIndex& b);

private:
    std::shared_ptr<const EdgeStream> stream_;
    BuildParams params_;
    std::vector<Part> parts_;
    std::vector<std::uint32_t> assignment_;
};

/// Greedy construction: each ξ(v) joins the substream whose union with it is
/// smallest (ties to the lowest id). Requires 2 <= k < n.
[[nodiscard]] SubstreamIndex build_greedy(std::shared_ptr<const EdgeStream> stream, BuildParams params);

/// Batch-parallel construction with edge skipping and bottom-h sketches.
/// Requires 2 <= k < n, h >= 1. Output is independent of params.threads.
[[nodiscard]] SubstreamIndex build_parallel(std::shared_ptr<const EdgeStream> stream, BuildParams params);

/// Dispatches on params.algorithm.
[[nodiscard]] SubstreamIndex build_index(std::shared_ptr<const EdgeStream> stream, BuildParams params);

enum class QueryKind { earliest_arrival, fastest };

using QueryResult = std::variant<ArrivalTable, DurationTable>;

/// Runs the streaming algorithm on S_f(v) from v's first edge there.
[[nodiscard]] QueryResult query(const SubstreamIndex& index, VertexId v, Interval interval, QueryKind kind);
[[nodiscard]] DurationTable query_fastest(const SubstreamIndex& index, VertexId v, Interval interval);
[[nodiscard]] ArrivalTable query_earliest_arrival(const SubstreamIndex& index, VertexId v, Interval interval);

/// Per-thread query state for answering many queries against one index.
class IndexQueryEngine {
public:
    explicit IndexQueryEngine(const SubstreamIndex& index);

    /// Afterwards search() holds the result for v.
    const FastestPathSearch& fastest(VertexId v, Interval interval);
    const EarliestArrivalSearch& earliest_arrival(VertexId v, Interval interval);

private:
    const SubstreamIndex* index_;
    FastestVariant variant_;
    FastestPathSearch fastest_;
    EarliestArrivalSearch arrival_;
};

struct ValidationReport {
    std::size_t size = 0;
    std::vector<std::size_t> substream_sizes;
    std::vector<std::size_t> assigned_counts;
    std::size_t max_vertices_in_substream = 0;
    std::size_t max_assigned = 0;
    std::size_t non_sinks = 0;               // n+
    std::size_t greedy_bound = 0;            // Σ of the ⌈n+/k⌉ largest |ξ(v)|
    std::size_t union_of_reachable = 0;      // |⋃_v ξ(v)|
    bool greedy_bound_applies = false;       // only the greedy builder guarantees it
    std::vector<std::string> violations;

    [[nodiscard]] bool ok() const noexcept { return violations.empty(); }
};

/// Recomputes every ξ(v) and checks the index invariants.
[[nodiscard]] ValidationReport validate(const SubstreamIndex& index, unsigned threads = 1);

/// Little-endian binary format with trailing CRC-32.
[[nodiscard]] std::vector<std::uint8_t> serialize(const SubstreamIndex& index);
[[nodiscard]] SubstreamIndex deserialize(std::span<const std::uint8_t> bytes);

void save_index(const SubstreamIndex& index, const std::string& path);
[[nodiscard]] SubstreamIndex load_index(const std::string& path);

inline constexpr std::uint32_t kIndexFormatVersion = 1;

}  // namespace tgi
