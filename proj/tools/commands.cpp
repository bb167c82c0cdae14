#include "commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tgindex/closeness.hpp"
#include "tgindex/edge_stream.hpp"
#include "tgindex/index.hpp"
#include "tgindex/streaming.hpp"

namespace tgi::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

const char* name(BuildAlgorithm a) { return a == BuildAlgorithm::greedy ? "greedy" : "sketch"; }
const char* name(Engine e) {
    switch (e) {
        case Engine::index: return "index";
        case Engine::fullstream: return "fullstream";
        case Engine::oracle: return "oracle";
    }
    return "?";
}
const char* name(QueryKind k) { return k == QueryKind::fastest ? "fastest" : "ea"; }
const char* name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

std::shared_ptr<const EdgeStream> load_stream(const RunConfig& config) {
    ParseOptions options;
    options.default_transition = config.default_transition;
    options.undirected = config.undirected;
    return std::make_shared<const EdgeStream>(load_edge_list(config.input, options));
}

BuildParams build_params(const RunConfig& config) {
    BuildParams p;
    p.algorithm = config.algorithm;
    p.k = config.k;
    p.h = config.h;
    p.batch_size = config.batch_size;
    p.seed = config.seed;
    p.threads = config.threads;
    return p;
}

Interval interval_for(const RunConfig& config, const EdgeStream& stream) {
    Interval tau = stream.lifetime();
    if (config.from) tau.begin = *config.from;
    if (config.to) tau.end = *config.to;
    if (tau.begin > tau.end) throw ValidationError("interval start exceeds its end");
    return tau;
}

std::string format_time(Time t) { return t == kInfinity ? "inf" : std::to_string(t); }

/// Writes to the --output file when one is given, else to out.
class OutputSink {
public:
    OutputSink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Error("cannot write '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

}  // namespace

void check_config(const RunConfig& c) {
    const auto& sub = c.subcommand;
    if (c.default_transition < 1) throw UsageError("--default-transition must be >= 1");
    if (c.k < 2) throw UsageError("--k must be >= 2");
    if (c.h < 1) throw UsageError("--h must be >= 1");
    if (c.from && c.to && *c.from > *c.to) throw UsageError("--from must not exceed --to");
    if (c.from && *c.from < 0) throw UsageError("--from must be non-negative");
    if ((sub == "stats" || sub == "build" || sub == "bench") && c.input.empty()) {
        throw UsageError(sub + " requires --input");
    }
    if (sub == "build" && c.index_path.empty()) throw UsageError("build requires --index (output path)");
    if (sub == "query") {
        if (c.index_path.empty()) throw UsageError("query requires --index");
        if (c.source.empty()) throw UsageError("query requires --source");
    }
    if (sub == "closeness") {
        if (c.input.empty() == c.index_path.empty()) {
            throw UsageError("closeness requires exactly one of --input or --index");
        }
    }
    if (sub == "bench") {
        for (auto k : c.bench_ks) {
            if (k < 2) throw UsageError("--ks values must be >= 2");
        }
    }
}

std::string describe(const RunConfig& c) {
    std::ostringstream s;
    s << "# tgindex " << c.subcommand;
    if (!c.input.empty()) s << " input=" << c.input;
    if (!c.index_path.empty()) s << " index=" << c.index_path;
    if (!c.source.empty()) s << " source=" << c.source;
    s << " algorithm=" << name(c.algorithm) << " k=" << c.k << " h=" << c.h << " batch-size=" << c.batch_size
      << " seed=" << c.seed << " threads=" << c.threads << " from=" << (c.from ? std::to_string(*c.from) : "min")
      << " to=" << (c.to ? std::to_string(*c.to) : "max") << " kind=" << name(c.kind)
      << " engine=" << name(c.engine) << " format=" << name(c.format) << " undirected=" << c.undirected
      << " default-transition=" << c.default_transition;
    return s.str();
}

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream&) {
    const auto stream = load_stream(config);
    const StreamStats s = stream_stats(*stream, config.threads);
    if (config.format == OutputFormat::json) {
        nlohmann::json j = {{"vertices", s.vertices},
                            {"edges", s.edges},
                            {"timestamps", s.distinct_timestamps},
                            {"avg_reachable_edges", s.avg_reachable},
                            {"max_reachable_edges", s.max_reachable},
                            {"lifetime", {s.lifetime.begin, s.lifetime.end}}};
        out << j.dump(2) << '\n';
        return kOk;
    }
    out << "vertices " << s.vertices << '\n'
        << "edges " << s.edges << '\n'
        << "timestamps " << s.distinct_timestamps << '\n'
        << "avg_reachable_edges " << std::setprecision(12) << s.avg_reachable << '\n'
        << "max_reachable_edges " << s.max_reachable << '\n'
        << "lifetime " << s.lifetime.begin << ' ' << s.lifetime.end << '\n';
    return kOk;
}

int cmd_build(const RunConfig& config, std::ostream& out, std::ostream&) {
    const auto stream = load_stream(config);
    const auto start = Clock::now();
    const SubstreamIndex index = build_index(stream, build_params(config));
    const double build_seconds = seconds_since(start);
    const auto bytes = serialize(index);
    save_index(index, config.index_path);

    out << "build_seconds " << std::setprecision(6) << build_seconds << '\n'
        << "size_edges " << index.size() << '\n'
        << "total_edges " << index.total_edges() << '\n'
        << "index_bytes " << bytes.size() << '\n'
        << "query_work " << index.query_work() << '\n';
    const auto counts = index.assigned_counts();
    out << "substream,edges,assigned\n";
    for (std::uint32_t i = 1; i <= index.k(); ++i) {
        out << i << ',' << index.substream(i).size() << ',' << counts[i - 1] << '\n';
    }
    if (config.validate) {
        const auto report = validate(index, config.threads);
        if (!report.ok()) {
            std::string msg = "index validation failed:";
            for (const auto& v : report.violations) msg += "\n  " + v;
            throw InvariantError(msg);
        }
        out << "validate ok\n";
    }
    return kOk;
}

int cmd_query(const RunConfig& config, std::ostream& out, std::ostream&) {
    const SubstreamIndex index = load_index(config.index_path);
    const EdgeStream& stream = index.stream();
    const VertexId v = stream.vertex(config.source);
    const Interval tau = interval_for(config, stream);
    IndexQueryEngine engine(index);

    std::vector<Time> values(stream.num_vertices(), kInfinity);
    if (config.kind == QueryKind::fastest) {
        const auto& search = engine.fastest(v, tau);
        for (VertexId w = 0; w < values.size(); ++w) values[w] = search.duration(w);
    } else {
        const auto& search = engine.earliest_arrival(v, tau);
        for (VertexId w = 0; w < values.size(); ++w) values[w] = search.arrival(w);
    }

    if (config.format == OutputFormat::json) {
        nlohmann::json rows = nlohmann::json::object();
        for (VertexId w = 0; w < values.size(); ++w) {
            if (w == v) continue;
            rows[stream.label(w)] = values[w] == kInfinity ? nlohmann::json(nullptr) : nlohmann::json(values[w]);
        }
        out << nlohmann::json{{"source", config.source}, {"kind", name(config.kind)}, {"values", rows}}.dump(2)
            << '\n';
        return kOk;
    }
    out << "vertex," << (config.kind == QueryKind::fastest ? "duration" : "arrival") << '\n';
    for (VertexId w = 0; w < values.size(); ++w) {
        if (w != v) out << stream.label(w) << ',' << format_time(values[w]) << '\n';
    }
    return kOk;
}

int cmd_closeness(const RunConfig& config, std::ostream& out, std::ostream& log) {
    std::shared_ptr<const EdgeStream> stream;
    std::optional<SubstreamIndex> index;
    double build_seconds = 0.0;
    double load_seconds = 0.0;

    auto start = Clock::now();
    if (!config.index_path.empty()) {
        index.emplace(load_index(config.index_path));
        stream = index->stream_ptr();
        load_seconds = seconds_since(start);
    } else {
        stream = load_stream(config);
        load_seconds = seconds_since(start);
        if (config.engine == Engine::index) {
            start = Clock::now();
            index.emplace(build_index(stream, build_params(config)));
            build_seconds = seconds_since(start);
        }
    }
    const Interval tau = interval_for(config, *stream);

    start = Clock::now();
    ClosenessRanking ranking;
    switch (config.engine) {
        case Engine::index: ranking = closeness_via_index(*index, tau, config.threads); break;
        case Engine::fullstream: ranking = closeness_baseline(*stream, tau, config.threads); break;
        case Engine::oracle: ranking = closeness_oracle(*stream, tau, config.threads); break;
    }
    const double query_seconds = seconds_since(start);

    OutputSink sink(config.output, out);
    if (config.format == OutputFormat::json) {
        write_ranking_json(sink.get(), ranking, *stream);
    } else {
        write_ranking_csv(sink.get(), ranking, *stream);
    }
    log << std::setprecision(6) << "# timing load_seconds=" << load_seconds << " build_seconds=" << build_seconds
        << " query_seconds=" << query_seconds << " total_seconds=" << (build_seconds + query_seconds)
        << " edges_scanned=" << ranking.edges_scanned << '\n';
    return kOk;
}

int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream&) {
    const auto stream = load_stream(config);
    const Interval tau = interval_for(config, *stream);

    auto start = Clock::now();
    const ClosenessRanking baseline = closeness_baseline(*stream, tau, config.threads);
    const double baseline_seconds = seconds_since(start);

    out << "k,algorithm,build_seconds,size_edges,total_edges,index_bytes,query_work,query_seconds,"
           "total_seconds,baseline_seconds,speedup,matches_baseline\n";
    for (auto k : config.bench_ks) {
        BuildParams params = build_params(config);
        params.k = k;
        start = Clock::now();
        const SubstreamIndex index = build_index(stream, params);
        const double build_seconds = seconds_since(start);
        start = Clock::now();
        const ClosenessRanking ranking = closeness_via_index(index, tau, config.threads);
        const double query_seconds = seconds_since(start);
        const double total = build_seconds + query_seconds;
        out << std::setprecision(6) << k << ',' << name(params.algorithm) << ',' << build_seconds << ','
            << index.size() << ',' << index.total_edges() << ',' << serialize(index).size() << ','
            << index.query_work() << ',' << query_seconds << ',' << total << ',' << baseline_seconds << ','
            << (total > 0 ? baseline_seconds / total : 0.0) << ','
            << (ranking.entries == baseline.entries ? "yes" : "no") << '\n';
    }
    return kOk;
}

}  // namespace tgi::cli
