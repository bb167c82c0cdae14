#include "tgindex/streaming.hpp"

#include <algorithm>
#include <string>

namespace tgi {

namespace {

void check_source(VertexId source, std::size_t n) {
    if (source >= n) throw ValidationError("unknown source vertex " + std::to_string(source));
}

std::size_t scan_start(const SkipArray* skip, VertexId source, std::size_t size) {
    if (skip == nullptr) return 0;
    return skip->first_out(source).value_or(size);
}

}  // namespace

// ---------------------------------------------------------------------------
// SkipArray

SkipArray SkipArray::build(std::span<const TemporalEdge> edges) {
    std::vector<Entry> entries;
    std::vector<VertexId> seen;
    for (std::size_t p = 0; p < edges.size(); ++p) {
        const VertexId u = edges[p].tail;
        if (u >= seen.size()) seen.resize(static_cast<std::size_t>(u) + 1, 0);
        if (seen[u] == 0) {
            seen[u] = 1;
            entries.push_back({u, p});
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.vertex < b.vertex; });
    SkipArray s;
    s.entries_ = std::move(entries);
    return s;
}

SkipArray SkipArray::from_entries(std::vector<Entry> entries) {
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i - 1].vertex >= entries[i].vertex) {
            throw ValidationError("skip entries must be strictly ascending by vertex");
        }
    }
    SkipArray s;
    s.entries_ = std::move(entries);
    return s;
}

std::optional<std::size_t> SkipArray::first_out(VertexId v) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), v,
                               [](const Entry& e, VertexId x) { return e.vertex < x; });
    if (it == entries_.end() || it->vertex != v) return std::nullopt;
    return static_cast<std::size_t>(it->position);
}

// ---------------------------------------------------------------------------
// Earliest arrival

EarliestArrivalSearch::EarliestArrivalSearch(std::size_t num_vertices) : arrival_(num_vertices, kInfinity) {}

void EarliestArrivalSearch::reset() {
    for (VertexId v : touched_) arrival_[v] = kInfinity;
    touched_.clear();
}

void EarliestArrivalSearch::run(std::span<const TemporalEdge> edges, VertexId source, Interval interval,
                                std::size_t start) {
    check_source(source, arrival_.size());
    reset();
    arrival_[source] = interval.begin;
    touched_.push_back(source);
    for (std::size_t p = start; p < edges.size(); ++p) {
        const TemporalEdge& e = edges[p];
        if (e.time < arrival_[e.tail] || !interval.admits(e)) continue;
        const Time a = e.arrival();
        Time& target = arrival_[e.head];
        if (a < target) {
            if (target == kInfinity) touched_.push_back(e.head);
            target = a;
        }
    }
}

ArrivalTable EarliestArrivalSearch::table() const { return ArrivalTable{arrival_}; }

// ---------------------------------------------------------------------------
// Fastest paths

FastestPathSearch::FastestPathSearch(std::size_t num_vertices)
    : duration_(num_vertices, kInfinity), lists_(num_vertices) {}

void FastestPathSearch::reset() {
    for (VertexId v : touched_) {
        duration_[v] = kInfinity;
        lists_[v].labels.clear();
        lists_[v].head = 0;
    }
    touched_.clear();
    if (source_ != kNoVertex) duration_[source_] = kInfinity;
}

std::optional<Time> FastestPathSearch::latest_start(LabelList& list, Time t, FastestVariant variant) {
    auto& labels = list.labels;
    if (list.head == labels.size()) return std::nullopt;
    if (variant == FastestVariant::uniform_transition) {
        while (list.head + 1 < labels.size() && labels[list.head + 1].arrival <= t) ++list.head;
    } else {
        auto it = std::upper_bound(labels.begin() + static_cast<std::ptrdiff_t>(list.head), labels.end(), t,
                                   [](Time x, const Label& l) { return x < l.arrival; });
        const auto found = static_cast<std::size_t>(it - labels.begin());
        if (found == list.head) return std::nullopt;
        list.head = found - 1;
    }
    const Label& best = labels[list.head];
    if (best.arrival > t) return std::nullopt;
    return best.start;
}

void FastestPathSearch::insert(LabelList& list, Label label, FastestVariant variant) {
    auto& labels = list.labels;
    const auto head = static_cast<std::ptrdiff_t>(list.head);
    if (variant == FastestVariant::uniform_transition) {
        // Arrivals are non-decreasing, so only the back can dominate or be dominated.
        if (list.head < labels.size()) {
            Label& back = labels.back();
            if (back.start >= label.start) return;
            if (back.arrival == label.arrival) {
                back = label;
                return;
            }
        }
        labels.push_back(label);
        return;
    }
    auto first = labels.begin() + head;
    auto pos = std::lower_bound(first, labels.end(), label.start,
                                [](const Label& l, Time s) { return l.start < s; });
    if (pos != labels.end() && pos->arrival <= label.arrival) return;  // dominated
    auto erase_from = pos;
    while (erase_from != first && std::prev(erase_from)->arrival >= label.arrival) --erase_from;
    auto erase_to = pos;
    if (erase_to != labels.end() && erase_to->start == label.start) ++erase_to;
    if (erase_from == erase_to) {
        labels.insert(erase_from, label);
    } else {
        *erase_from = label;
        labels.erase(std::next(erase_from), erase_to);
    }
}

void FastestPathSearch::run(std::span<const TemporalEdge> edges, VertexId source, Interval interval,
                            std::size_t start, FastestVariant variant) {
    check_source(source, duration_.size());
    reset();
    source_ = source;
    duration_[source] = 0;
    for (std::size_t p = start; p < edges.size(); ++p) {
        const TemporalEdge& e = edges[p];
        if (e.head == source || !interval.admits(e)) continue;
        Time departure;
        if (e.tail == source) {
            departure = e.time;
        } else {
            auto s = latest_start(lists_[e.tail], e.time, variant);
            if (!s) continue;
            departure = *s;
        }
        const Time a = e.arrival();
        Time& d = duration_[e.head];
        if (d == kInfinity) touched_.push_back(e.head);
        d = std::min(d, a - departure);
        insert(lists_[e.head], {departure, a}, variant);
    }
}

DurationTable FastestPathSearch::table() const { return DurationTable{duration_}; }

bool FastestPathSearch::labels_consistent() const {
    for (VertexId v : touched_) {
        const auto& list = lists_[v];
        if (list.head > list.labels.size()) return false;
        for (std::size_t i = list.head + 1; i < list.labels.size(); ++i) {
            const auto& prev = list.labels[i - 1];
            const auto& cur = list.labels[i];
            if (!(prev.start < cur.start && prev.arrival < cur.arrival)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Free-function wrappers

ArrivalTable earliest_arrival(std::span<const TemporalEdge> edges, std::size_t num_vertices, VertexId source,
                              Interval interval, const SkipArray* skip) {
    check_source(source, num_vertices);
    EarliestArrivalSearch search(num_vertices);
    search.run(edges, source, interval, scan_start(skip, source, edges.size()));
    return search.table();
}

ArrivalTable earliest_arrival(const EdgeStream& stream, VertexId source, Interval interval,
                              const SkipArray* skip) {
    return earliest_arrival(stream.edges(), stream.num_vertices(), source, interval, skip);
}

DurationTable fastest_durations(std::span<const TemporalEdge> edges, std::size_t num_vertices, VertexId source,
                                Interval interval, const SkipArray* skip, FastestVariant variant) {
    check_source(source, num_vertices);
    FastestPathSearch search(num_vertices);
    search.run(edges, source, interval, scan_start(skip, source, edges.size()), variant);
    return search.table();
}

DurationTable fastest_durations(const EdgeStream& stream, VertexId source, Interval interval,
                                const SkipArray* skip) {
    const auto variant =
        stream.uniform_transition() ? FastestVariant::uniform_transition : FastestVariant::general;
    return fastest_durations(stream.edges(), stream.num_vertices(), source, interval, skip, variant);
}

// ---------------------------------------------------------------------------
// Reachable edge stream

ReachableStreamSearch::ReachableStreamSearch(std::size_t num_vertices) : arrival_(num_vertices, kInfinity) {}

Substream ReachableStreamSearch::run(std::span<const TemporalEdge> edges, VertexId source,
                                     const SkipArray& skip, SketchAccumulator* sketch,
                                     std::span<const std::size_t> out_end) {
    check_source(source, arrival_.size());
    for (VertexId v : touched_) arrival_[v] = kInfinity;
    touched_.clear();

    Substream out;
    const auto start = skip.first_out(source);
    if (!start) return out;
    const bool bounded = !out_end.empty();
    std::size_t horizon = bounded ? out_end[source] : edges.size();
    arrival_[source] = kMinusInfinity;
    touched_.push_back(source);
    for (std::size_t p = *start; p < horizon; ++p) {
        const TemporalEdge& e = edges[p];
        if (arrival_[e.tail] > e.time) continue;
        out.push_back(e.pos);
        if (sketch != nullptr) sketch->offer(e.pos);
        Time& target = arrival_[e.head];
        if (e.arrival() < target) {
            if (target == kInfinity) {
                touched_.push_back(e.head);
                if (bounded) horizon = std::max(horizon, out_end[e.head]);
            }
            target = e.arrival();
        }
    }
    return out;
}

std::vector<std::size_t> last_out_ends(std::span<const TemporalEdge> edges, std::size_t num_vertices) {
    std::vector<std::size_t> end(num_vertices, 0);
    for (std::size_t p = 0; p < edges.size(); ++p) end[edges[p].tail] = p + 1;
    return end;
}

Substream reachable_stream(const EdgeStream& stream, VertexId source, const SkipArray& skip,
                           SketchAccumulator* sketch) {
    ReachableStreamSearch search(stream.num_vertices());
    return search.run(stream.edges(), source, skip, sketch);
}

}  // namespace tgi
