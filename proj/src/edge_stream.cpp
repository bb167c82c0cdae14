#include "tgindex/edge_stream.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <numeric>
#include <sstream>

namespace tgi {

namespace {

bool parse_int(std::string_view token, Time& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i == line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

}  // namespace

EdgeStream EdgeStream::from_edges(std::vector<std::string> labels, std::vector<RawEdge> raw) {
    if (raw.size() >= std::numeric_limits<EdgeId>::max()) {
        throw ValidationError("too many edges: " + std::to_string(raw.size()));
    }
    const auto n = labels.size();
    for (const auto& e : raw) {
        if (e.tail >= n || e.head >= n) throw ValidationError("edge references unknown vertex id");
        if (e.time < 0) throw ValidationError("negative timestamp " + std::to_string(e.time));
        if (e.transition < 1) {
            throw ValidationError("transition time must be >= 1, got " + std::to_string(e.transition));
        }
        if (e.time > kInfinity - 1 - e.transition) throw ValidationError("time overflow");
    }
    std::vector<bool> seen(n, false);
    for (const auto& e : raw) seen[e.tail] = seen[e.head] = true;
    if (auto it = std::find(seen.begin(), seen.end(), false); it != seen.end()) {
        throw ValidationError("isolated vertex '" + labels[static_cast<std::size_t>(it - seen.begin())] + "'");
    }

    std::vector<std::size_t> order(raw.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return raw[x].time < raw[y].time; });

    EdgeStream s;
    s.edges_.reserve(raw.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& r = raw[order[i]];
        s.edges_.push_back({r.tail, r.head, r.time, r.transition, static_cast<EdgeId>(i)});
    }
    s.labels_ = std::move(labels);
    s.ids_.reserve(s.labels_.size());
    for (VertexId v = 0; v < s.labels_.size(); ++v) {
        if (!s.ids_.emplace(s.labels_[v], v).second) {
            throw ValidationError("duplicate vertex label '" + s.labels_[v] + "'");
        }
    }
    if (!s.edges_.empty()) {
        Time lo = s.edges_.front().time;
        Time hi = 0;
        for (const auto& e : s.edges_) hi = std::max(hi, e.arrival());
        s.lifetime_ = {lo, hi};
        const Time lambda = s.edges_.front().transition;
        s.uniform_transition_ = std::all_of(s.edges_.begin(), s.edges_.end(),
                                            [lambda](const auto& e) { return e.transition == lambda; });
    }
    return s;
}

VertexId EdgeStream::find_vertex(std::string_view label) const {
    auto it = ids_.find(std::string(label));
    return it == ids_.end() ? kNoVertex : it->second;
}

VertexId EdgeStream::vertex(std::string_view label) const {
    const VertexId v = find_vertex(label);
    if (v == kNoVertex) throw ValidationError("unknown vertex '" + std::string(label) + "'");
    return v;
}

EdgeStream parse_edge_list(std::istream& in, const ParseOptions& options) {
    if (options.default_transition < 1) {
        throw ValidationError("default transition must be >= 1");
    }
    std::vector<std::string> labels;
    std::unordered_map<std::string, VertexId> ids;
    std::vector<RawEdge> raw;

    auto intern = [&](std::string_view label) {
        auto [it, inserted] = ids.try_emplace(std::string(label), static_cast<VertexId>(labels.size()));
        if (inserted) labels.emplace_back(label);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0].front() == '#' || tokens[0].front() == '%') continue;
        if (tokens.size() != 3 && tokens.size() != 4) {
            throw ParseError("expected 3 or 4 fields, got " + std::to_string(tokens.size()), lineno);
        }
        Time t = 0;
        if (!parse_int(tokens[2], t) || t < 0) {
            throw ParseError("timestamp '" + std::string(tokens[2]) + "' is not a non-negative integer",
                             lineno);
        }
        Time lambda = options.default_transition;
        if (tokens.size() == 4) {
            if (!parse_int(tokens[3], lambda)) {
                throw ParseError("transition '" + std::string(tokens[3]) + "' is not an integer", lineno);
            }
            if (lambda < 1) {
                throw ValidationError("line " + std::to_string(lineno) +
                                      ": transition time must be >= 1, got " + std::to_string(lambda));
            }
        }
        const VertexId u = intern(tokens[0]);
        const VertexId v = intern(tokens[1]);
        raw.push_back({u, v, t, lambda});
        if (options.undirected) raw.push_back({v, u, t, lambda});
    }
    if (raw.empty()) throw ValidationError("empty edge stream");
    return EdgeStream::from_edges(std::move(labels), std::move(raw));
}

EdgeStream parse_edge_list_string(std::string_view text, const ParseOptions& options) {
    std::istringstream in{std::string(text)};
    return parse_edge_list(in, options);
}

EdgeStream load_edge_list(const std::string& path, const ParseOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    try {
        return parse_edge_list(in, options);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), 0);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_edge_list(std::ostream& out, const EdgeStream& stream) {
    for (const auto& e : stream.edges()) {
        out << stream.label(e.tail) << ' ' << stream.label(e.head) << ' ' << e.time << ' '
            << e.transition << '\n';
    }
}

Substream union_streams(std::span<const EdgeId> a, std::span<const EdgeId> b) {
    Substream out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::size_t union_size(std::span<const EdgeId> a, std::span<const EdgeId> b) noexcept {
    std::size_t i = 0, j = 0, count = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++i;
            ++j;
        }
        ++count;
    }
    return count + (a.size() - i) + (b.size() - j);
}

std::vector<TemporalEdge> materialize(const EdgeStream& stream, std::span<const EdgeId> ids) {
    std::vector<TemporalEdge> out;
    out.reserve(ids.size());
    for (EdgeId id : ids) out.push_back(stream.edge(id));
    return out;
}

}  // namespace tgi
