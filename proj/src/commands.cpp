#include "tvnrel/commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "tvnrel/oracle.hpp"
#include "tvnrel/superset.hpp"

namespace tvnrel {

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

nlohmann::json count_to_json(const BigCount &count) {
  if (count <= std::numeric_limits<std::uint64_t>::max())
    return static_cast<std::uint64_t>(count);
  return count.str();
}

nlohmann::json report_to_json(const ReliabilityReport &r) {
  nlohmann::json j;
  j["schema_version"] = schema_version;
  j["mode"] = to_string(r.mode);
  j["method"] = to_string(r.method);
  j["n"] = r.vertex_count;
  j["m"] = r.edge_count;
  j["sigma"] = r.sigma;
  j["journey_count"] = count_to_json(r.journey_count);
  j["stres_count"] = count_to_json(r.stres_count);
  j["node_counts"] = {{"journey_zdd", r.node_counts.journey_zdd},
                      {"stres_diagram", r.node_counts.stres_diagram},
                      {"fbs_states", r.node_counts.fbs_states}};
  j["bound_violations"] = r.bound_violations;
  j["timings_s"] = {{"journeys", r.timings.journeys_s},
                    {"superset", r.timings.superset_s},
                    {"reliability", r.timings.reliability_s},
                    {"total", r.timings.total_s}};
  return j;
}

void cmd_reliability(const ReliabilityArgs &args, std::ostream &out) {
  const TemporalGraph g = load_tgr(args.input);
  RunOptions options;
  options.order = args.order;
  if (args.timeout_s)
    options.deadline = Deadline(std::chrono::duration<double>(*args.timeout_s));
  if (args.force_oracle)
    options.oracle_max_edges = 62;
  ReliabilityReport report = compute_reliability(g, args.mode, args.method, options);
  nlohmann::json j = report_to_json(report);
  j["input"] = args.input;
  out << j.dump() << '\n';
}

void cmd_count_journeys(const CountArgs &args, std::ostream &out) {
  const TemporalGraph g = load_tgr(args.input);
  const Compilation c = compile(g, args.mode, Method::b, make_order(g, args.order));
  nlohmann::json j;
  j["schema_version"] = schema_version;
  j["input"] = args.input;
  j["mode"] = to_string(args.mode);
  j["journey_count"] = count_to_json(c.store.count_sat(c.journeys, c.m, DiagramKind::zdd));
  j["stres_count"] = count_to_json(c.store.count_sat(c.stres, c.m, DiagramKind::bdd));
  out << j.dump() << '\n';
}

void cmd_gen(const GenArgs &args, std::ostream &out) {
  GeneratorOptions opt;
  opt.retry = args.retry;
  const TemporalGraph g = generate(args.family, args.size, args.seed, opt);
  std::ofstream file(args.output, std::ios::binary);
  if (!file)
    throw std::runtime_error("cannot write " + args.output);
  file << "# " << to_string(args.family) << " size=" << args.size << " seed=" << args.seed
       << " T=" << (args.family == Family::complete ? args.size - 1 : 2 * args.size) << '\n';
  file << serialize_tgr(g);
  out << g.edge_count() << '\n';
}

DotStage parse_dot_stage(std::string_view text) {
  if (text == "journeys")
    return DotStage::journeys;
  if (text == "stres-b")
    return DotStage::stres_b;
  if (text == "stres-z")
    return DotStage::stres_z;
  throw std::invalid_argument("unknown stage: " + std::string(text));
}

void cmd_export_dot(const ExportDotArgs &args, std::ostream &out) {
  const TemporalGraph g = load_tgr(args.input);
  const Method method = args.stage == DotStage::stres_z ? Method::z : Method::b;
  const Compilation c = compile(g, args.mode, method, make_order(g, args.order));
  const NodeRef root = args.stage == DotStage::journeys ? c.journeys : c.stres;
  const DiagramKind kind = args.stage == DotStage::journeys ? DiagramKind::zdd : c.stres_kind;
  std::ofstream file(args.output, std::ios::binary);
  if (!file)
    throw std::runtime_error("cannot write " + args.output);
  file << c.store.export_dot(root, kind);
  out << c.store.node_count(root) << '\n';
}

// Bench

std::size_t default_workers() {
  if (const char *env = std::getenv("TVNREL_WORKERS")) {
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::char_traits<char>::length(env), n);
    if (ec == std::errc() && n > 0)
      return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

const char *to_string(RunStatus status) {
  switch (status) {
  case RunStatus::ok:
    return "ok";
  case RunStatus::timeout:
    return "timeout";
  case RunStatus::memory_limit:
    return "memory_limit";
  }
  return "?";
}

std::string bench_row_csv(const BenchRow &row) {
  const ReliabilityReport &r = row.report;
  std::ostringstream s;
  s << schema_version << ',' << to_string(row.family) << ',' << row.size << ',' << row.instance
    << ',' << row.seed << ',' << row.m << ',' << to_string(row.mode) << ','
    << to_string(row.method) << ',' << to_string(row.status) << ',';
  if (row.status != RunStatus::ok) {
    s << ",,,,,,,,";
  } else {
    s << format_double(r.sigma) << ',' << r.journey_count.str() << ',' << r.stres_count.str()
      << ',' << r.node_counts.journey_zdd << ',' << r.node_counts.stres_diagram << ','
      << format_double(r.timings.journeys_s) << ',' << format_double(r.timings.superset_s)
      << ',' << format_double(r.timings.reliability_s) << ','
      << format_double(r.timings.total_s);
  }
  return s.str();
}

std::vector<BenchRow> run_bench(const BenchArgs &args) {
  if (args.min_size > args.max_size)
    throw std::invalid_argument("bench: empty size range");
  if (args.methods.empty())
    throw std::invalid_argument("bench: no methods");
  GeneratorOptions gen_opt;
  gen_opt.retry = args.retry;

  std::vector<BenchRow> rows;
  for (std::size_t size = args.min_size; size <= args.max_size; ++size) {
    // Validate the size before spawning workers.
    (void)generate(args.family, size, args.seed, gen_opt);

    std::vector<std::vector<BenchRow>> per_instance(args.instances);
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_abandoned{none};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= args.instances || i > first_abandoned.load())
          return;
        try {
          const std::uint64_t seed = args.seed + i;
          const TemporalGraph g = generate(args.family, size, seed, gen_opt);
          for (Method method : args.methods) {
            BenchRow row;
            row.family = args.family;
            row.size = size;
            row.instance = i;
            row.seed = seed;
            row.m = g.edge_count();
            row.mode = args.mode;
            row.method = method;
            RunOptions run;
            run.deadline = Deadline(std::chrono::duration<double>(args.timeout_s));
            try {
              row.report = compute_reliability(g, args.mode, method, run);
            } catch (const TimeoutError &) {
              row.status = RunStatus::timeout;
            } catch (const MemoryLimitExceeded &) {
              row.status = RunStatus::memory_limit;
            }
            const bool abandoned = row.status != RunStatus::ok;
            per_instance[i].push_back(std::move(row));
            if (abandoned) {
              std::size_t cur = first_abandoned.load();
              while (i < cur && !first_abandoned.compare_exchange_weak(cur, i)) {
              }
              break;
            }
          }
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error)
            error = std::current_exception();
          first_abandoned.store(0);
        }
      }
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(args.workers, args.instances));
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w)
      pool.emplace_back(worker);
    worker();
    for (auto &t : pool)
      t.join();
    if (error)
      std::rethrow_exception(error);

    const std::size_t stop = first_abandoned.load();
    for (std::size_t i = 0; i < args.instances && i <= stop; ++i)
      for (auto &row : per_instance[i])
        rows.push_back(std::move(row));
    if (stop != none)
      break;
  }
  return rows;
}

void cmd_bench(const BenchArgs &args, std::ostream &out) {
  const std::vector<BenchRow> rows = run_bench(args);
  namespace fs = std::filesystem;
  const bool fresh = !fs::exists(args.output) || fs::file_size(args.output) == 0;
  if (!fresh) {
    std::ifstream existing(args.output);
    std::string header;
    std::getline(existing, header);
    if (header != bench_csv_header)
      throw std::runtime_error("bench: " + args.output + " has a different CSV schema");
  }
  std::ofstream file(args.output, std::ios::app | std::ios::binary);
  if (!file)
    throw std::runtime_error("cannot write " + args.output);
  if (fresh)
    file << bench_csv_header << '\n';
  std::size_t timeouts = 0;
  for (const BenchRow &row : rows) {
    file << bench_row_csv(row) << '\n';
    timeouts += row.status != RunStatus::ok ? 1 : 0;
  }
  out << rows.size() << " rows written to " << args.output;
  if (timeouts > 0)
    out << " (stopped early: time or memory limit)";
  out << '\n';
}

} // namespace tvnrel
