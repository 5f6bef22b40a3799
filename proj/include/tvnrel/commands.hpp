/// @file commands.hpp
/// @brief Implementations of the `tvnrel` subcommands, kept out of main() so
/// tests can drive them directly.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tvnrel/generator.hpp"
#include "tvnrel/pipeline.hpp"
#include "tvnrel/reliability.hpp"

namespace tvnrel {

inline constexpr int schema_version = 1;

/// Counts that fit in 64 bits become JSON numbers, larger ones strings.
nlohmann::json count_to_json(const BigCount &count);
nlohmann::json report_to_json(const ReliabilityReport &report);
/// Shortest decimal text that reads back as the same double.
std::string format_double(double value);

struct ReliabilityArgs {
  std::string input;
  Mode mode = Mode::multi_hop;
  Method method = Method::b;
  OrderPolicy order = OrderPolicy::bfs;
  std::optional<double> timeout_s;
  bool force_oracle = false;
};
/// Prints one JSON line.
void cmd_reliability(const ReliabilityArgs &args, std::ostream &out);

struct CountArgs {
  std::string input;
  Mode mode = Mode::multi_hop;
  OrderPolicy order = OrderPolicy::bfs;
};
void cmd_count_journeys(const CountArgs &args, std::ostream &out);

struct GenArgs {
  Family family = Family::complete;
  std::size_t size = 3;
  std::uint64_t seed = 0;
  RetryRule retry = RetryRule::either;
  std::string output;
};
/// Writes the instance and prints its edge count.
void cmd_gen(const GenArgs &args, std::ostream &out);

enum class DotStage { journeys, stres_b, stres_z };
DotStage parse_dot_stage(std::string_view text);

struct ExportDotArgs {
  std::string input;
  DotStage stage = DotStage::journeys;
  Mode mode = Mode::multi_hop;
  OrderPolicy order = OrderPolicy::bfs;
  std::string output;
};
/// Writes the DOT file and prints the exported node count.
void cmd_export_dot(const ExportDotArgs &args, std::ostream &out);

struct BenchArgs {
  Family family = Family::complete;
  std::size_t min_size = 3;
  std::size_t max_size = 5;
  std::size_t instances = 10;
  std::uint64_t seed = 0;
  Mode mode = Mode::multi_hop;
  std::vector<Method> methods{Method::b, Method::z};
  RetryRule retry = RetryRule::either;
  double timeout_s = 7200.0;
  std::size_t workers = 1;
  std::string output;
};

/// ok, or why the run was abandoned.
enum class RunStatus { ok, timeout, memory_limit };
const char *to_string(RunStatus status);

struct BenchRow {
  Family family = Family::complete;
  std::size_t size = 0;
  std::size_t instance = 0;
  std::uint64_t seed = 0;
  std::size_t m = 0;
  Mode mode = Mode::multi_hop;
  Method method = Method::b;
  RunStatus status = RunStatus::ok;
  ReliabilityReport report;
};

inline constexpr const char *bench_csv_header =
    "schema_version,family,size,instance,seed,m,mode,method,status,sigma,journey_count,"
    "stres_count,zdd_nodes,stres_diagram_nodes,t_journeys_s,t_superset_s,t_reliability_s,"
    "t_total_s";

std::string bench_row_csv(const BenchRow &row);

/// Runs sizes in increasing order. The first abandoned run at a size (time or
/// memory limit) keeps the rows of earlier instances, records the abandoned
/// one and stops: no later instance of that size and no larger size is run.
std::vector<BenchRow> run_bench(const BenchArgs &args);

/// run_bench plus CSV output (appended; the header is written only to an
/// empty file). Prints a one-line summary.
void cmd_bench(const BenchArgs &args, std::ostream &out);

/// Worker count from TVNREL_WORKERS, else the hardware concurrency.
std::size_t default_workers();

} // namespace tvnrel
