#include "tgindex/index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <string>

#include "tgindex/parallel.hpp"
#include "tgindex/sketch.hpp"

namespace tgi {

namespace {

void check_common(const EdgeStream& stream, const BuildParams& params) {
    const auto n = stream.num_vertices();
    if (params.k < 2 || params.k >= n) {
        throw ValidationError("k must satisfy 2 <= k < n (k=" + std::to_string(params.k) +
                              ", n=" + std::to_string(n) + ")");
    }
}

std::vector<VertexId> vertex_order(std::size_t n, const BuildParams& params) {
    std::vector<VertexId> order(n);
    if (params.order == VertexOrder::shuffled) {
        const PermutationHash perm(params.seed, n);
        std::copy(perm.table().begin(), perm.table().end(), order.begin());
    } else {
        std::iota(order.begin(), order.end(), VertexId{0});
    }
    return order;
}

// Union of ascending id lists with duplicates removed. Dense inputs are
// marked in a bitmap over their id range; sparse ones go through a heap.
Substream merge_all(std::span<const std::span<const EdgeId>> lists) {
    std::size_t total = 0;
    EdgeId lo = std::numeric_limits<EdgeId>::max(), hi = 0;
    for (auto l : lists) {
        if (l.empty()) continue;
        total += l.size();
        lo = std::min(lo, l.front());
        hi = std::max(hi, l.back());
    }
    Substream out;
    if (total == 0) return out;

    const std::size_t range = static_cast<std::size_t>(hi - lo) + 1;
    if (range <= 4 * total) {
        std::vector<bool> present(range, false);
        for (auto l : lists) {
            for (EdgeId id : l) present[id - lo] = true;
        }
        out.reserve(std::min(total, range));
        for (std::size_t i = 0; i < range; ++i) {
            if (present[i]) out.push_back(static_cast<EdgeId>(lo + i));
        }
        return out;
    }

    out.reserve(total);
    using Cursor = std::pair<EdgeId, std::size_t>;  // (value, list)
    std::priority_queue<Cursor, std::vector<Cursor>, std::greater<>> heap;
    std::vector<std::size_t> next(lists.size(), 0);
    for (std::size_t i = 0; i < lists.size(); ++i) {
        if (!lists[i].empty()) {
            heap.emplace(lists[i][0], i);
            next[i] = 1;
        }
    }
    while (!heap.empty()) {
        auto [value, i] = heap.top();
        heap.pop();
        if (out.empty() || out.back() != value) out.push_back(value);
        if (next[i] < lists[i].size()) heap.emplace(lists[i][next[i]++], i);
    }
    return out;
}

}  // namespace

std::size_t default_batch_size(std::size_t num_vertices) noexcept {
    return num_vertices < 1'000'000 ? std::max<std::size_t>(num_vertices, 1) : 2048;
}

// ---------------------------------------------------------------------------
// SubstreamIndex

SubstreamIndex::SubstreamIndex(std::shared_ptr<const EdgeStream> stream, BuildParams params,
                               std::vector<Substream> substreams, std::vector<std::uint32_t> assignment)
    : stream_(std::move(stream)), params_(params), assignment_(std::move(assignment)) {
    if (!stream_) throw ValidationError("index needs a stream");
    if (substreams.size() != params_.k) throw ValidationError("expected k substreams");
    if (assignment_.size() != stream_->num_vertices()) throw ValidationError("assignment size != n");
    for (auto f : assignment_) {
        if (f > params_.k) throw ValidationError("assignment out of range");
    }
    parts_.resize(substreams.size());
    parallel_for(parts_.size(), params_.threads, [&](unsigned, std::size_t i) {
        Part& part = parts_[i];
        part.ids = std::move(substreams[i]);
        for (std::size_t p = 0; p < part.ids.size(); ++p) {
            if (part.ids[p] >= stream_->num_edges() || (p > 0 && part.ids[p - 1] >= part.ids[p])) {
                throw ValidationError("substream ids must be ascending edge ids");
            }
        }
        part.edges = materialize(*stream_, part.ids);
        part.skip = SkipArray::build(part.edges);
    });
}

std::vector<std::size_t> SubstreamIndex::assigned_counts() const {
    std::vector<std::size_t> counts(params_.k, 0);
    for (auto f : assignment_) {
        if (f != 0) ++counts[f - 1];
    }
    return counts;
}

std::size_t SubstreamIndex::size() const noexcept {
    std::size_t s = 0;
    for (const auto& p : parts_) s = std::max(s, p.ids.size());
    return s;
}

std::size_t SubstreamIndex::total_edges() const noexcept {
    std::size_t s = 0;
    for (const auto& p : parts_) s += p.ids.size();
    return s;
}

std::size_t SubstreamIndex::query_work() const noexcept {
    std::size_t s = 0;
    for (auto f : assignment_) {
        if (f != 0) s += parts_[f - 1].ids.size();
    }
    return s;
}

bool operator==(const SubstreamIndex& a, const SubstreamIndex& b) {
    const auto& pa = a.params_;
    const auto& pb = b.params_;
    if (pa.algorithm != pb.algorithm || pa.k != pb.k || pa.h != pb.h || pa.seed != pb.seed ||
        pa.order != pb.order) {
        return false;
    }
    if (a.assignment_ != b.assignment_) return false;
    if (a.stream_->labels() != b.stream_->labels()) return false;
    if (!std::equal(a.stream_->edges().begin(), a.stream_->edges().end(), b.stream_->edges().begin(),
                    b.stream_->edges().end())) {
        return false;
    }
    for (std::size_t i = 0; i < a.parts_.size(); ++i) {
        const auto& x = a.parts_[i];
        const auto& y = b.parts_[i];
        if (x.ids != y.ids || x.edges != y.edges || !(x.skip == y.skip)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Builders

SubstreamIndex build_greedy(std::shared_ptr<const EdgeStream> stream, BuildParams params) {
    check_common(*stream, params);
    params.algorithm = BuildAlgorithm::greedy;
    const auto n = stream->num_vertices();
    const SkipArray skip = SkipArray::build(stream->edges());
    std::vector<Substream> substreams(params.k);
    std::vector<std::uint32_t> f(n, 0);
    const auto out_end = last_out_ends(stream->edges(), n);
    ReachableStreamSearch search(n);

    for (VertexId v : vertex_order(n, params)) {
        const Substream xi = search.run(stream->edges(), v, skip, nullptr, out_end);
        if (xi.empty()) continue;
        std::size_t best = 0;
        std::size_t best_size = std::numeric_limits<std::size_t>::max();
        for (std::size_t j = 0; j < substreams.size(); ++j) {
            const std::size_t s = union_size(substreams[j], xi);
            if (s < best_size) {
                best_size = s;
                best = j;
            }
        }
        substreams[best] = union_streams(substreams[best], xi);
        f[v] = static_cast<std::uint32_t>(best + 1);
    }
    return SubstreamIndex(std::move(stream), params, std::move(substreams), std::move(f));
}

SubstreamIndex build_parallel(std::shared_ptr<const EdgeStream> stream, BuildParams params) {
    check_common(*stream, params);
    if (params.h < 1) throw ValidationError("sketch size h must be >= 1");
    params.algorithm = BuildAlgorithm::sketch;
    const auto n = stream->num_vertices();
    const auto k = params.k;
    const std::size_t batch = params.batch_size == 0 ? default_batch_size(n) : params.batch_size;
    const unsigned threads = resolve_threads(params.threads);

    const PermutationHash perm(params.seed, stream->num_edges());
    const SkipArray skip = SkipArray::build(stream->edges());
    const auto out_end = last_out_ends(stream->edges(), n);
    const std::vector<VertexId> order = vertex_order(n, params);

    std::vector<Substream> substreams(k);
    std::vector<BottomHSketch> sketches(k, BottomHSketch(params.h, perm.size()));
    std::vector<std::size_t> assigned(k, 0);
    std::vector<std::uint32_t> f(n, 0);

    std::vector<std::unique_ptr<ReachableStreamSearch>> searches(threads);
    std::vector<Substream> reach(std::min(batch, n));
    std::vector<BottomHSketch> reach_sketch(reach.size());

    for (std::size_t begin = 0; begin < n; begin += batch) {
        const std::size_t end = std::min(begin + batch, n);
        const std::size_t count = end - begin;

        // Phase 1: reachable streams and their sketches.
        parallel_for(count, threads, [&](unsigned w, std::size_t i) {
            if (!searches[w]) searches[w] = std::make_unique<ReachableStreamSearch>(n);
            SketchAccumulator acc(perm, params.h);
            reach[i] = searches[w]->run(stream->edges(), order[begin + i], skip, &acc, out_end);
            reach_sketch[i] = std::move(acc).take();
        });

        // Phase 2: assignment, sequential so the outcome does not depend on scheduling.
        for (std::size_t i = 0; i < count; ++i) {
            const VertexId v = order[begin + i];
            if (reach[i].empty()) {
                f[v] = 0;
                continue;
            }
            std::size_t best = 0;
            double best_rank = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < k; ++j) {
                const double rank = 0.5 * static_cast<double>(assigned[j] + 1) *
                                    (jaccard_estimate(sketches[j], reach_sketch[i]) + 1.0);
                if (rank < best_rank) {
                    best_rank = rank;
                    best = j;
                }
            }
            sketches[best] = sketch_union(sketches[best], reach_sketch[i]);
            f[v] = static_cast<std::uint32_t>(best + 1);
            ++assigned[best];
        }

        // Phase 3: fold this batch's streams into their substreams.
        std::vector<std::vector<std::size_t>> members(k);
        for (std::size_t i = 0; i < count; ++i) {
            const auto j = f[order[begin + i]];
            if (j != 0) members[j - 1].push_back(i);
        }
        parallel_for(k, threads, [&](unsigned, std::size_t j) {
            if (members[j].empty()) return;
            std::vector<std::span<const EdgeId>> lists;
            lists.reserve(members[j].size() + 1);
            lists.emplace_back(substreams[j]);
            for (std::size_t i : members[j]) lists.emplace_back(reach[i]);
            substreams[j] = merge_all(lists);
        });
    }

    params.batch_size = batch;
    return SubstreamIndex(std::move(stream), params, std::move(substreams), std::move(f));
}

SubstreamIndex build_index(std::shared_ptr<const EdgeStream> stream, BuildParams params) {
    return params.algorithm == BuildAlgorithm::greedy ? build_greedy(std::move(stream), params)
                                                      : build_parallel(std::move(stream), params);
}

// ---------------------------------------------------------------------------
// Queries

IndexQueryEngine::IndexQueryEngine(const SubstreamIndex& index)
    : index_(&index),
      variant_(index.stream().uniform_transition() ? FastestVariant::uniform_transition
                                                   : FastestVariant::general),
      fastest_(index.stream().num_vertices()),
      arrival_(index.stream().num_vertices()) {}

namespace {

std::pair<std::span<const TemporalEdge>, std::size_t> scan_range(const SubstreamIndex& index, VertexId v) {
    if (v >= index.stream().num_vertices()) {
        throw ValidationError("unknown vertex " + std::to_string(v));
    }
    const auto j = index.assignment(v);
    if (j == 0) return {{}, 0};
    const auto& part = index.part(j);
    return {part.edges, part.skip.first_out(v).value_or(part.edges.size())};
}

}  // namespace

const FastestPathSearch& IndexQueryEngine::fastest(VertexId v, Interval interval) {
    auto [edges, start] = scan_range(*index_, v);
    fastest_.run(edges, v, interval, start, variant_);
    return fastest_;
}

const EarliestArrivalSearch& IndexQueryEngine::earliest_arrival(VertexId v, Interval interval) {
    auto [edges, start] = scan_range(*index_, v);
    arrival_.run(edges, v, interval, start);
    return arrival_;
}

DurationTable query_fastest(const SubstreamIndex& index, VertexId v, Interval interval) {
    IndexQueryEngine engine(index);
    return engine.fastest(v, interval).table();
}

ArrivalTable query_earliest_arrival(const SubstreamIndex& index, VertexId v, Interval interval) {
    IndexQueryEngine engine(index);
    return engine.earliest_arrival(v, interval).table();
}

QueryResult query(const SubstreamIndex& index, VertexId v, Interval interval, QueryKind kind) {
    if (kind == QueryKind::fastest) return query_fastest(index, v, interval);
    return query_earliest_arrival(index, v, interval);
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate(const SubstreamIndex& index, unsigned threads) {
    const EdgeStream& stream = index.stream();
    const auto n = stream.num_vertices();
    const auto k = index.k();
    ValidationReport report;
    report.size = index.size();
    report.assigned_counts = index.assigned_counts();
    report.greedy_bound_applies = index.params().algorithm == BuildAlgorithm::greedy;

    auto violation = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    for (std::uint32_t i = 1; i <= k; ++i) {
        const auto& part = index.part(i);
        report.substream_sizes.push_back(part.ids.size());
        if (!(part.skip == SkipArray::build(part.edges))) {
            violation("substream " + std::to_string(i) + ": skip array is stale");
        }
        std::vector<VertexId> present;
        for (const auto& e : part.edges) {
            present.push_back(e.tail);
            present.push_back(e.head);
        }
        std::sort(present.begin(), present.end());
        present.erase(std::unique(present.begin(), present.end()), present.end());
        report.max_vertices_in_substream = std::max(report.max_vertices_in_substream, present.size());
        if (present.size() > 2 * report.size) {
            violation("substream " + std::to_string(i) + ": " + std::to_string(present.size()) +
                      " vertices exceed 2*size(I)");
        }
    }
    for (auto c : report.assigned_counts) {
        report.max_assigned = std::max(report.max_assigned, c);
        if (c > 2 * report.size) violation("assigned vertex count exceeds 2*size(I)");
    }

    const SkipArray skip = SkipArray::build(stream.edges());
    std::vector<Substream> reach(n);
    const unsigned workers = resolve_threads(threads);
    std::vector<std::unique_ptr<ReachableStreamSearch>> searches(workers);
    parallel_for(n, workers, [&](unsigned w, std::size_t v) {
        if (!searches[w]) searches[w] = std::make_unique<ReachableStreamSearch>(n);
        reach[v] = searches[w]->run(stream.edges(), static_cast<VertexId>(v), skip);
    });

    std::vector<bool> covered(stream.num_edges(), false);
    std::vector<std::size_t> sizes;
    for (VertexId v = 0; v < n; ++v) {
        const auto& xi = reach[v];
        const auto f = index.assignment(v);
        for (EdgeId id : xi) covered[id] = true;
        if (xi.empty()) {
            if (f != 0) violation("vertex '" + stream.label(v) + "' has empty reach but f != 0");
            continue;
        }
        sizes.push_back(xi.size());
        if (f == 0) {
            violation("vertex '" + stream.label(v) + "' has non-empty reach but f = 0");
            continue;
        }
        const auto s = index.substream(f);
        if (!std::includes(s.begin(), s.end(), xi.begin(), xi.end())) {
            violation("vertex '" + stream.label(v) + "': reach not contained in substream " +
                      std::to_string(f));
        }
    }
    report.non_sinks = sizes.size();
    report.union_of_reachable = static_cast<std::size_t>(std::count(covered.begin(), covered.end(), true));
    if (report.size * k < report.union_of_reachable) {
        violation("size(I) * k is below the number of edges reachable from any vertex");
    }

    const std::size_t take = (report.non_sinks + k - 1) / k;
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    report.greedy_bound = std::accumulate(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(take),
                                          std::size_t{0});
    if (report.greedy_bound_applies && report.size > report.greedy_bound) {
        violation("greedy size bound violated: size(I)=" + std::to_string(report.size) + " > " +
                  std::to_string(report.greedy_bound));
    }
    return report;
}

}  // namespace tgi
