#pragma once

#include <ostream>
#include <vector>

#include "tgindex/edge_stream.hpp"
#include "tgindex/index.hpp"

namespace tgi {

/// Harmonic temporal closeness c(v) = Σ_{w != v} 1 / d(v, w), with 1/∞ = 0.
struct ClosenessRanking {
    struct Entry {
        VertexId vertex;
        double closeness;
        friend bool operator==(const Entry&, const Entry&) = default;
    };
    /// Sorted by closeness descending, then vertex ascending.
    std::vector<Entry> entries;
    /// Edges scanned over all n queries.
    std::size_t edges_scanned = 0;

    /// closeness by vertex id.
    [[nodiscard]] std::vector<double> values() const;
};

/// Sorts (vertex, value) pairs into ranking order.
[[nodiscard]] ClosenessRanking make_ranking(const std::vector<double>& closeness);

/// One fastest-path query per vertex on its substream.
[[nodiscard]] ClosenessRanking closeness_via_index(const SubstreamIndex& index, Interval interval,
                                                   unsigned threads = 0);

/// One fastest-path query per vertex over the whole stream from position 0.
[[nodiscard]] ClosenessRanking closeness_baseline(const EdgeStream& stream, Interval interval,
                                                  unsigned threads = 0);

/// Same ranking computed with the label-setting reference oracle.
[[nodiscard]] ClosenessRanking closeness_oracle(const EdgeStream& stream, Interval interval,
                                                unsigned threads = 0);

/// Reciprocal sum over a full duration table, in ascending target order.
[[nodiscard]] double harmonic_sum(const DurationTable& table, VertexId source);

/// "vertex,closeness,rank" with 12 significant digits; rank is 1-based.
void write_ranking_csv(std::ostream& out, const ClosenessRanking& ranking, const EdgeStream& stream);
void write_ranking_json(std::ostream& out, const ClosenessRanking& ranking, const EdgeStream& stream);

}  // namespace tgi
