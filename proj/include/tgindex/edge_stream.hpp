#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tgindex/types.hpp"

namespace tgi {

/// An edge as read from input, before sorting and position assignment.
struct RawEdge {
    VertexId tail;
    VertexId head;
    Time time;
    Time transition;
};

/// Chronologically sorted temporal edges plus the interned vertex table.
/// Immutable once built; edges()[i].pos == i.
class EdgeStream {
public:
    EdgeStream() = default;

    /// Stable-sorts raw edges by time and assigns stream positions.
    /// Throws ValidationError on out-of-range vertex ids, transition < 1,
    /// negative timestamps, or time overflow.
    static EdgeStream from_edges(std::vector<std::string> labels, std::vector<RawEdge> raw);

    [[nodiscard]] std::span<const TemporalEdge> edges() const noexcept { return edges_; }
    [[nodiscard]] const TemporalEdge& edge(EdgeId id) const { return edges_[id]; }
    [[nodiscard]] std::size_t num_edges() const noexcept { return edges_.size(); }
    [[nodiscard]] std::size_t num_vertices() const noexcept { return labels_.size(); }
    [[nodiscard]] bool empty() const noexcept { return edges_.empty(); }

    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] const std::string& label(VertexId v) const { return labels_.at(v); }
    /// kNoVertex when the label is unknown.
    [[nodiscard]] VertexId find_vertex(std::string_view label) const;
    /// Throws ValidationError when the label is unknown.
    [[nodiscard]] VertexId vertex(std::string_view label) const;

    /// [min t, max t+λ]; {0,0} for an empty stream.
    [[nodiscard]] Interval lifetime() const noexcept { return lifetime_; }
    /// True when every edge has the same transition time.
    [[nodiscard]] bool uniform_transition() const noexcept { return uniform_transition_; }

private:
    std::vector<TemporalEdge> edges_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, VertexId> ids_;
    Interval lifetime_{0, 0};
    bool uniform_transition_ = true;
};

struct ParseOptions {
    Time default_transition = 1;
    bool undirected = false;
};

/// Reads "tail head time [transition]" lines. Blank lines and lines starting
/// with '#' or '%' are skipped. Labels are interned in first-appearance order.
EdgeStream parse_edge_list(std::istream& in, const ParseOptions& options = {});
EdgeStream parse_edge_list_string(std::string_view text, const ParseOptions& options = {});
EdgeStream load_edge_list(const std::string& path, const ParseOptions& options = {});

/// Writes the stream back as an edge list in stream order (always with transition).
void write_edge_list(std::ostream& out, const EdgeStream& stream);

/// A substream: ascending edge ids of one global stream, i.e. stream order.
using Substream = std::vector<EdgeId>;

/// Linear-time set union of two substreams of the same stream.
[[nodiscard]] Substream union_streams(std::span<const EdgeId> a, std::span<const EdgeId> b);

/// |a ∪ b| without materialising the union.
[[nodiscard]] std::size_t union_size(std::span<const EdgeId> a, std::span<const EdgeId> b) noexcept;

/// Copies the edges named by ids into a contiguous stream-ordered buffer.
[[nodiscard]] std::vector<TemporalEdge> materialize(const EdgeStream& stream,
                                                    std::span<const EdgeId> ids);

struct StreamStats {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t distinct_timestamps = 0;  // distinct availability times
    double avg_reachable = 0.0;           // mean |ξ(v)| over all vertices
    std::size_t max_reachable = 0;        // max |ξ(v)|
    Interval lifetime{0, 0};
};

/// Dataset statistics; computes ξ(v) for every vertex, optionally in parallel.
[[nodiscard]] StreamStats stream_stats(const EdgeStream& stream, unsigned threads = 1);

}  // namespace tgi
