#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "tgindex/edge_stream.hpp"

namespace tgi::testdata {

inline const char* const kToy =
    "# small example graph\n"
    "a c 3\n"
    "a b 1\n"
    "a b 2\n"
    "c a 2\n"
    "c e 9\n"
    "b d 3\n"
    "d f 1\n"
    "e f 6\n"
    "f c 7\n";

inline std::shared_ptr<const EdgeStream> toy() {
    return std::make_shared<const EdgeStream>(parse_edge_list_string(kToy));
}

struct GraphShape {
    std::size_t n = 10;
    std::size_t m = 30;
    Time max_transition = 5;
    Time horizon = 20;  // availability times are drawn from [0, horizon]
};

/// Random stream with exactly shape.n vertices; every vertex touches an edge.
inline std::shared_ptr<const EdgeStream> random_stream(std::uint64_t seed, GraphShape shape) {
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t bound) { return static_cast<VertexId>(rng() % bound); };
    const auto n = static_cast<VertexId>(shape.n);
    std::vector<RawEdge> raw;
    raw.reserve(std::max(shape.m, shape.n));
    auto random_time = [&] { return static_cast<Time>(rng() % static_cast<std::uint64_t>(shape.horizon + 1)); };
    auto random_transition = [&] {
        return 1 + static_cast<Time>(rng() % static_cast<std::uint64_t>(shape.max_transition));
    };
    // cover every vertex once, then fill
    for (VertexId v = 0; v < n && raw.size() < shape.m; ++v) {
        VertexId w = pick(n - 1);
        if (w >= v) ++w;
        if (rng() % 2) raw.push_back({v, w, random_time(), random_transition()});
        else raw.push_back({w, v, random_time(), random_transition()});
    }
    while (raw.size() < shape.m) {
        const VertexId u = pick(n);
        VertexId w = pick(n - 1);
        if (w >= u) ++w;
        raw.push_back({u, w, random_time(), random_transition()});
    }
    // m < n can leave vertices unused; drop them
    std::vector<VertexId> remap(n, kNoVertex);
    std::vector<std::string> labels;
    for (auto& e : raw) {
        for (VertexId* x : {&e.tail, &e.head}) {
            if (remap[*x] == kNoVertex) {
                remap[*x] = static_cast<VertexId>(labels.size());
                labels.push_back("v" + std::to_string(*x));
            }
            *x = remap[*x];
        }
    }
    return std::make_shared<const EdgeStream>(EdgeStream::from_edges(std::move(labels), std::move(raw)));
}

/// Graph i of the shared 100-graph corpus. Small graphs stay sparse enough
/// for exhaustive path enumeration.
inline GraphShape corpus_shape(std::size_t i) {
    std::mt19937_64 rng(0xC0FFEE + i);
    GraphShape s;
    if (i % 4 == 0) {
        s.n = 5 + rng() % 8;  // [5, 12]
        s.m = s.n + rng() % (2 * s.n + 1);
    } else {
        s.n = 5 + rng() % 196;  // [5, 200]
        const std::size_t hi = std::min<std::size_t>(2000, 10 * s.n);
        s.m = s.n + rng() % (hi - s.n + 1);
    }
    s.max_transition = 5;
    s.horizon = static_cast<Time>(std::max<std::size_t>(10, s.m / 2));
    return s;
}

inline std::shared_ptr<const EdgeStream> corpus_graph(std::size_t i) {
    return random_stream(1000 + i, corpus_shape(i));
}

inline Interval random_interval(std::mt19937_64& rng, const EdgeStream& stream) {
    const Interval life = stream.lifetime();
    const auto span = static_cast<std::uint64_t>(life.end - life.begin + 1);
    Time a = life.begin + static_cast<Time>(rng() % span);
    Time b = life.begin + static_cast<Time>(rng() % span);
    if (a > b) std::swap(a, b);
    if (rng() % 4 == 0) return life;
    return {a, b};
}

/// ξ(v) by fixpoint: an edge is usable if it leaves v, or leaves the head of
/// a usable edge no earlier than that edge arrives.
inline Substream brute_force_reachable(const EdgeStream& stream, VertexId v) {
    const auto edges = stream.edges();
    std::vector<bool> usable(edges.size(), false);
    for (const auto& e : edges) usable[e.pos] = e.tail == v;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : edges) {
            if (usable[e.pos]) continue;
            for (const auto& p : edges) {
                if (usable[p.pos] && p.head == e.tail && p.arrival() <= e.time) {
                    usable[e.pos] = true;
                    changed = true;
                    break;
                }
            }
        }
    }
    Substream out;
    for (const auto& e : edges) {
        if (usable[e.pos]) out.push_back(e.pos);
    }
    return out;
}

/// Edge ids of the stream matching (tail, head, time) label triples.
inline Substream ids_of(const EdgeStream& stream,
                        const std::vector<std::tuple<std::string, std::string, Time>>& triples) {
    Substream out;
    for (const auto& [u, w, t] : triples) {
        for (const auto& e : stream.edges()) {
            if (stream.label(e.tail) == u && stream.label(e.head) == w && e.time == t) out.push_back(e.pos);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace tgi::testdata
