#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace tgi;
using namespace tgi::cli;

namespace {

void add_input_flags(CLI::App* app, RunConfig& c) {
    app->add_option("--input", c.input, "Edge list: tail head time [transition] per line");
    app->add_option("--default-transition", c.default_transition, "Transition time for 3-field lines");
    app->add_flag("--undirected", c.undirected, "Add a reverse edge for every line");
    app->add_option("--threads", c.threads, "Worker threads (0 = all cores)");
}

void add_build_flags(CLI::App* app, RunConfig& c) {
    const std::map<std::string, BuildAlgorithm> algorithms{{"greedy", BuildAlgorithm::greedy},
                                                           {"sketch", BuildAlgorithm::sketch}};
    app->add_option("--algorithm", c.algorithm, "Index construction algorithm")
        ->transform(CLI::CheckedTransformer(algorithms, CLI::ignore_case));
    app->add_option("--k", c.k, "Number of substreams");
    app->add_option("--h", c.h, "Bottom-h sketch size");
    app->add_option("--batch-size", c.batch_size, "Vertices per batch (0 = automatic)");
    app->add_option("--seed", c.seed, "Seed for the edge permutation");
}

void add_interval_flags(CLI::App* app, RunConfig& c) {
    app->add_option("--from", c.from, "Interval start (default: stream start)");
    app->add_option("--to", c.to, "Interval end (default: stream end)");
}

void add_format_flag(CLI::App* app, RunConfig& c) {
    const std::map<std::string, OutputFormat> formats{{"csv", OutputFormat::csv}, {"json", OutputFormat::json}};
    app->add_option("--format", c.format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Substream index for temporal distance queries and temporal closeness"};
    // --h is the sketch size, so help is long-form only.
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);
    RunConfig c;

    auto* stats = app.add_subcommand("stats", "Print dataset statistics");
    add_input_flags(stats, c);
    add_format_flag(stats, c);

    auto* build = app.add_subcommand("build", "Build an index file");
    add_input_flags(build, c);
    add_build_flags(build, c);
    build->add_option("--index", c.index_path, "Output index path");
    build->add_flag("--validate", c.validate, "Check all index invariants after building");

    auto* query = app.add_subcommand("query", "Answer one single-source query from an index");
    query->add_option("--index", c.index_path, "Index file");
    query->add_option("--source", c.source, "Source vertex label");
    const std::map<std::string, QueryKind> kinds{{"ea", QueryKind::earliest_arrival},
                                                 {"fastest", QueryKind::fastest}};
    query->add_option("--kind", c.kind, "Query kind")->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
    add_interval_flags(query, c);
    add_format_flag(query, c);

    auto* closeness = app.add_subcommand("closeness", "Rank all vertices by harmonic temporal closeness");
    add_input_flags(closeness, c);
    add_build_flags(closeness, c);
    closeness->add_option("--index", c.index_path, "Prebuilt index file (instead of --input)");
    const std::map<std::string, Engine> engines{
        {"index", Engine::index}, {"fullstream", Engine::fullstream}, {"oracle", Engine::oracle}};
    closeness->add_option("--engine", c.engine, "Distance engine")
        ->transform(CLI::CheckedTransformer(engines, CLI::ignore_case));
    closeness->add_option("--output", c.output, "Write the ranking here instead of stdout");
    add_interval_flags(closeness, c);
    add_format_flag(closeness, c);

    auto* bench = app.add_subcommand("bench", "Index size / closeness time trade-off over several k");
    add_input_flags(bench, c);
    add_build_flags(bench, c);
    bench->add_option("--ks", c.bench_ks, "Values of k to try")->delimiter(',');
    add_interval_flags(bench, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }
    c.subcommand = app.get_subcommands().front()->get_name();

    try {
        check_config(c);
        std::cerr << describe(c) << '\n';
        if (c.subcommand == "stats") return cmd_stats(c, std::cout, std::cerr);
        if (c.subcommand == "build") return cmd_build(c, std::cout, std::cerr);
        if (c.subcommand == "query") return cmd_query(c, std::cout, std::cerr);
        if (c.subcommand == "closeness") return cmd_closeness(c, std::cout, std::cerr);
        if (c.subcommand == "bench") return cmd_bench(c, std::cout, std::cerr);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariantViolation;
    } catch (const tgi::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDataError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInvariantViolation;
    }
    return kUsage;
}
