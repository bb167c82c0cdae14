#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tgindex/index.hpp"

namespace tgi::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2, kInvariantViolation = 3 };

/// Thrown for flag combinations that are rejected before any I/O.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a built or loaded index fails validation.
class InvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Engine { index, fullstream, oracle };
enum class OutputFormat { csv, json };

struct RunConfig {
    std::string subcommand;
    std::string input;
    std::string index_path;
    std::string output;
    std::string source;
    std::uint32_t k = 256;
    std::uint32_t h = 8;
    std::size_t batch_size = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::optional<Time> from;
    std::optional<Time> to;
    QueryKind kind = QueryKind::fastest;
    BuildAlgorithm algorithm = BuildAlgorithm::sketch;
    Engine engine = Engine::index;
    OutputFormat format = OutputFormat::csv;
    bool undirected = false;
    Time default_transition = 1;
    bool validate = false;
    std::vector<std::uint32_t> bench_ks{8, 32, 128};
};

/// Checks flag values and combinations; throws UsageError.
void check_config(const RunConfig& config);

/// One line listing every effective parameter.
std::string describe(const RunConfig& config);

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_build(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_query(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_closeness(const RunConfig& config, std::ostream& out, std::ostream& log);
int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& log);

}  // namespace tgi::cli
