#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tgindex/edge_stream.hpp"
#include "tgindex/sketch.hpp"
#include "tgindex/types.hpp"

namespace tgi {

/// First outgoing-edge position per vertex within one stream (global or a
/// substream). Entries are sorted by vertex; sinks have no entry.
class SkipArray {
public:
    struct Entry {
        VertexId vertex;
        std::uint64_t position;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    SkipArray() = default;

    /// Single pass over a stream-ordered edge sequence.
    static SkipArray build(std::span<const TemporalEdge> edges);
    /// Throws ValidationError unless entries are strictly ascending by vertex.
    static SkipArray from_entries(std::vector<Entry> entries);

    [[nodiscard]] std::optional<std::size_t> first_out(VertexId v) const;
    [[nodiscard]] std::span<const Entry> entries() const noexcept { return entries_; }
    [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }

    friend bool operator==(const SkipArray&, const SkipArray&) = default;

private:
    std::vector<Entry> entries_;
};

[[nodiscard]] inline SkipArray build_skip_array(std::span<const TemporalEdge> edges) {
    return SkipArray::build(edges);
}

struct ArrivalTable {
    std::vector<Time> arrival;  // kInfinity when unreached
    [[nodiscard]] Time operator[](VertexId v) const { return arrival[v]; }
    friend bool operator==(const ArrivalTable&, const ArrivalTable&) = default;
};

struct DurationTable {
    std::vector<Time> duration;  // kInfinity when unreachable; 0 at the source
    [[nodiscard]] Time operator[](VertexId v) const { return duration[v]; }
    friend bool operator==(const DurationTable&, const DurationTable&) = default;
};

/// Which label-list discipline the fastest-path pass uses. The uniform variant
/// is only correct when all transition times are equal.
enum class FastestVariant { general, uniform_transition };

/// Reusable single-source earliest-arrival pass. Owns O(n) scratch state that
/// is reset lazily between runs.
class EarliestArrivalSearch {
public:
    explicit EarliestArrivalSearch(std::size_t num_vertices);

    /// Scans edges[start..]. arrival(source) becomes interval.begin.
    void run(std::span<const TemporalEdge> edges, VertexId source, Interval interval,
             std::size_t start = 0);

    [[nodiscard]] Time arrival(VertexId v) const { return arrival_[v]; }
    /// Vertices with finite arrival, including the source, in discovery order.
    [[nodiscard]] std::span<const VertexId> reached() const noexcept { return touched_; }
    [[nodiscard]] ArrivalTable table() const;

private:
    void reset();

    std::vector<Time> arrival_;
    std::vector<VertexId> touched_;
};

/// Reusable single-source minimum-duration pass over a stream.
///
/// Each reached vertex keeps a list of (start, arrival) labels that is
/// strictly increasing in both coordinates; a label (s, a) is dropped when
/// another label (s', a') with s' >= s and a' <= a exists. An edge (u, v, t, λ)
/// extends the label of u with the latest start among those arriving by t;
/// the source departs at t itself. Because edges arrive in time order, labels
/// superseded for lookups at time t stay superseded and are pruned from the
/// front, so the uniform-transition variant runs in amortised O(1) per edge.
class FastestPathSearch {
public:
    explicit FastestPathSearch(std::size_t num_vertices);

    void run(std::span<const TemporalEdge> edges, VertexId source, Interval interval,
             std::size_t start = 0, FastestVariant variant = FastestVariant::general);

    [[nodiscard]] Time duration(VertexId v) const { return duration_[v]; }
    /// Vertices other than the source with finite duration, in discovery order.
    [[nodiscard]] std::span<const VertexId> reached() const noexcept { return touched_; }
    [[nodiscard]] DurationTable table() const;

    /// Checks the label-list ordering invariant for every touched vertex.
    [[nodiscard]] bool labels_consistent() const;

private:
    struct Label {
        Time start;
        Time arrival;
    };
    struct LabelList {
        std::vector<Label> labels;
        std::size_t head = 0;  // labels before head are superseded
    };

    void reset();
    std::optional<Time> latest_start(LabelList& list, Time t, FastestVariant variant);
    void insert(LabelList& list, Label label, FastestVariant variant);

    VertexId source_ = kNoVertex;
    std::vector<Time> duration_;
    std::vector<LabelList> lists_;
    std::vector<VertexId> touched_;
};

/// Earliest-arrival times from source under interval. When skip is given the
/// scan starts at the source's first outgoing edge; results are unchanged.
[[nodiscard]] ArrivalTable earliest_arrival(std::span<const TemporalEdge> edges, std::size_t num_vertices,
                                            VertexId source, Interval interval,
                                            const SkipArray* skip = nullptr);
[[nodiscard]] ArrivalTable earliest_arrival(const EdgeStream& stream, VertexId source, Interval interval,
                                            const SkipArray* skip = nullptr);

/// Minimum durations d(source, v) under interval.
[[nodiscard]] DurationTable fastest_durations(std::span<const TemporalEdge> edges, std::size_t num_vertices,
                                              VertexId source, Interval interval,
                                              const SkipArray* skip = nullptr,
                                              FastestVariant variant = FastestVariant::general);
/// Picks the uniform-transition variant automatically when the stream allows it.
[[nodiscard]] DurationTable fastest_durations(const EdgeStream& stream, VertexId source, Interval interval,
                                              const SkipArray* skip = nullptr);

/// One past the position of each vertex's last outgoing edge; 0 for sinks.
[[nodiscard]] std::vector<std::size_t> last_out_ends(std::span<const TemporalEdge> edges, std::size_t num_vertices);

/// Scratch state for computing ξ(v) repeatedly.
class ReachableStreamSearch {
public:
    explicit ReachableStreamSearch(std::size_t num_vertices);

    /// ξ(source): every edge some temporal walk from source can use, in stream
    /// order. Offers each included edge to sketch when one is given. With
    /// out_end (see last_out_ends) the scan stops after the last outgoing edge
    /// of every vertex reached so far; the result is the same.
    Substream run(std::span<const TemporalEdge> edges, VertexId source, const SkipArray& skip,
                  SketchAccumulator* sketch = nullptr, std::span<const std::size_t> out_end = {});

private:
    std::vector<Time> arrival_;
    std::vector<VertexId> touched_;
};

[[nodiscard]] Substream reachable_stream(const EdgeStream& stream, VertexId source, const SkipArray& skip,
                                         SketchAccumulator* sketch = nullptr);

}  // namespace tgi
