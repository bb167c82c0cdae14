#include "tgindex/oracle.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>
#include <tuple>

namespace tgi::oracle {

namespace {

void check(const EdgeStream& stream, VertexId source) {
    if (source >= stream.num_vertices()) {
        throw ValidationError("unknown source vertex " + std::to_string(source));
    }
    if (stream.num_vertices() > kMaxOracleVertices) {
        throw ValidationError("graph too large for the reference oracle (" +
                              std::to_string(stream.num_vertices()) + " vertices)");
    }
}

// Out-edges of v that depart at or after t.
std::span<const TemporalEdge> departing_from(const AdjacencyView& adj, VertexId v, Time t) {
    auto out = adj.out(v);
    auto it = std::lower_bound(out.begin(), out.end(), t,
                               [](const TemporalEdge& e, Time x) { return e.time < x; });
    return out.subspan(static_cast<std::size_t>(it - out.begin()));
}

}  // namespace

AdjacencyView::AdjacencyView(const EdgeStream& stream) : adjacency_(stream.num_vertices()) {
    for (const auto& e : stream.edges()) adjacency_[e.tail].push_back(e);
    num_edges_ = stream.num_edges();
}

ArrivalTable earliest_arrival(const EdgeStream& stream, VertexId source, Interval interval) {
    check(stream, source);
    const AdjacencyView adj(stream);
    std::vector<Time> arrival(stream.num_vertices(), kInfinity);
    std::vector<bool> settled(stream.num_vertices(), false);
    using Item = std::pair<Time, VertexId>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    arrival[source] = interval.begin;
    queue.emplace(interval.begin, source);
    while (!queue.empty()) {
        auto [a, v] = queue.top();
        queue.pop();
        if (settled[v]) continue;
        settled[v] = true;
        for (const auto& e : departing_from(adj, v, a)) {
            if (!interval.admits(e)) continue;
            if (e.arrival() < arrival[e.head]) {
                arrival[e.head] = e.arrival();
                queue.emplace(e.arrival(), e.head);
            }
        }
    }
    return ArrivalTable{std::move(arrival)};
}

DurationTable fastest(const EdgeStream& stream, VertexId source, Interval interval) {
    check(stream, source);
    const AdjacencyView adj(stream);
    const auto n = stream.num_vertices();

    struct Label {
        Time arrival;
        Time start;
        VertexId vertex;
    };
    // Earliest arrival first; among equal arrivals the latest start first, so
    // a dominating label is always settled before the labels it dominates.
    auto later = [](const Label& x, const Label& y) {
        return std::tie(x.arrival, y.start) > std::tie(y.arrival, x.start);
    };
    std::priority_queue<Label, std::vector<Label>, decltype(later)> queue(later);
    std::vector<std::vector<std::pair<Time, Time>>> settled(n);  // (start, arrival)
    std::vector<Time> duration(n, kInfinity);
    duration[source] = 0;

    for (const auto& e : adj.out(source)) {
        if (interval.admits(e) && e.head != source) queue.push({e.arrival(), e.time, e.head});
    }
    while (!queue.empty()) {
        const Label label = queue.top();
        queue.pop();
        auto& done = settled[label.vertex];
        const bool dominated = std::any_of(done.begin(), done.end(), [&](const auto& s) {
            return s.first >= label.start && s.second <= label.arrival;
        });
        if (dominated) continue;
        done.emplace_back(label.start, label.arrival);
        duration[label.vertex] = std::min(duration[label.vertex], label.arrival - label.start);
        for (const auto& e : departing_from(adj, label.vertex, label.arrival)) {
            if (interval.admits(e) && e.head != source) queue.push({e.arrival(), label.start, e.head});
        }
    }
    return DurationTable{std::move(duration)};
}

DurationTable enumerate_paths(const EdgeStream& stream, VertexId source, Interval interval,
                              std::size_t max_length) {
    if (source >= stream.num_vertices()) {
        throw ValidationError("unknown source vertex " + std::to_string(source));
    }
    if (stream.num_vertices() > 12 && stream.num_edges() > 20) {
        throw ValidationError("instance too large for path enumeration");
    }
    constexpr std::size_t kBudget = 50'000'000;
    const AdjacencyView adj(stream);
    std::vector<Time> duration(stream.num_vertices(), kInfinity);
    duration[source] = 0;
    std::vector<bool> on_path(stream.num_vertices(), false);
    std::size_t expansions = 0;

    // Extends a path currently ending at v that started at `start` and reached v at `arrival`.
    std::function<void(VertexId, Time, Time, std::size_t)> extend =
        [&](VertexId v, Time start, Time arrival, std::size_t length) {
            if (length == max_length) return;
            for (const auto& e : departing_from(adj, v, arrival)) {
                if (!interval.admits(e) || on_path[e.head]) continue;
                if (++expansions > kBudget) throw ValidationError("path enumeration budget exceeded");
                duration[e.head] = std::min(duration[e.head], e.arrival() - start);
                on_path[e.head] = true;
                extend(e.head, start, e.arrival(), length + 1);
                on_path[e.head] = false;
            }
        };

    on_path[source] = true;
    for (const auto& e : adj.out(source)) {
        if (!interval.admits(e) || on_path[e.head] || max_length == 0) continue;
        if (++expansions > kBudget) throw ValidationError("path enumeration budget exceeded");
        duration[e.head] = std::min(duration[e.head], e.arrival() - e.time);
        on_path[e.head] = true;
        extend(e.head, e.time, e.arrival(), 1);
        on_path[e.head] = false;
    }
    return DurationTable{std::move(duration)};
}

}  // namespace tgi::oracle
