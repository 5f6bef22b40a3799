// tvnrel: exact two-terminal reliability of temporal networks.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tvnrel/commands.hpp"

namespace {

std::vector<tvnrel::Method> parse_methods(const std::string &list) {
  std::vector<tvnrel::Method> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty())
      out.push_back(tvnrel::parse_method(item));
  return out;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact time-varying network reliability via decision diagrams"};
  app.require_subcommand(1);

  std::string mode = "multi", method = "b", order = "bfs", retry = "or";

  // reliability
  tvnrel::ReliabilityArgs rel;
  double rel_timeout = 0.0;
  auto *rel_cmd = app.add_subcommand("reliability", "Compute sigma for a .tgr instance");
  rel_cmd->add_option("input", rel.input, ".tgr file")->required();
  rel_cmd->add_option("--mode", mode, "multi|single")->check(CLI::IsMember({"multi", "single"}));
  rel_cmd->add_option("--method", method, "b|z|oracle")
      ->check(CLI::IsMember({"b", "z", "oracle"}));
  rel_cmd->add_option("--order", order, "bfs|file")->check(CLI::IsMember({"bfs", "file"}));
  rel_cmd->add_option("--timeout", rel_timeout, "seconds (0 = none)");
  rel_cmd->add_flag("--force-oracle", rel.force_oracle, "allow the oracle beyond 16 edges");

  // count-journeys
  tvnrel::CountArgs count;
  auto *count_cmd = app.add_subcommand("count-journeys", "Count journeys and reachable subsets");
  count_cmd->add_option("input", count.input, ".tgr file")->required();
  count_cmd->add_option("--mode", mode, "multi|single")->check(CLI::IsMember({"multi", "single"}));
  count_cmd->add_option("--order", order, "bfs|file")->check(CLI::IsMember({"bfs", "file"}));

  // gen
  tvnrel::GenArgs gen;
  std::string gen_family = "complete";
  auto *gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("family", gen_family, "complete|grid3")
      ->required()
      ->check(CLI::IsMember({"complete", "grid3"}));
  gen_cmd->add_option("size", gen.size, "n for complete, w for grid3")->required();
  gen_cmd->add_option("--seed", gen.seed, "instance seed");
  gen_cmd->add_option("--retry-rule", retry, "or|and")->check(CLI::IsMember({"or", "and"}));
  gen_cmd->add_option("-o,--out", gen.output, "output .tgr")->required();

  // bench
  tvnrel::BenchArgs bench;
  std::string bench_family = "complete", bench_methods = "b,z";
  auto *bench_cmd = app.add_subcommand("bench", "Run a generated corpus and write CSV");
  bench_cmd->add_option("family", bench_family, "complete|grid3")
      ->required()
      ->check(CLI::IsMember({"complete", "grid3"}));
  bench_cmd->add_option("--min", bench.min_size, "smallest size")->required();
  bench_cmd->add_option("--max", bench.max_size, "largest size")->required();
  bench_cmd->add_option("--instances", bench.instances, "instances per size");
  bench_cmd->add_option("--seed", bench.seed, "seed of instance 0");
  bench_cmd->add_option("--mode", mode, "multi|single")->check(CLI::IsMember({"multi", "single"}));
  bench_cmd->add_option("--methods", bench_methods, "comma list of b,z,oracle");
  bench_cmd->add_option("--retry-rule", retry, "or|and")->check(CLI::IsMember({"or", "and"}));
  bench_cmd->add_option("--timeout", bench.timeout_s, "per-instance seconds");
  bench_cmd->add_option("-o,--out", bench.output, "output CSV")->required();

  // export-dot
  tvnrel::ExportDotArgs dot;
  std::string stage = "journeys";
  auto *dot_cmd = app.add_subcommand("export-dot", "Write a diagram as Graphviz DOT");
  dot_cmd->add_option("input", dot.input, ".tgr file")->required();
  dot_cmd->add_option("--stage", stage, "journeys|stres-b|stres-z")
      ->check(CLI::IsMember({"journeys", "stres-b", "stres-z"}));
  dot_cmd->add_option("--mode", mode, "multi|single")->check(CLI::IsMember({"multi", "single"}));
  dot_cmd->add_option("--order", order, "bfs|file")->check(CLI::IsMember({"bfs", "file"}));
  dot_cmd->add_option("-o,--out", dot.output, "output .dot")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const tvnrel::Mode parsed_mode = tvnrel::parse_mode(mode);
    const tvnrel::OrderPolicy parsed_order = tvnrel::parse_order_policy(order);
    if (rel_cmd->parsed()) {
      rel.mode = parsed_mode;
      rel.method = tvnrel::parse_method(method);
      rel.order = parsed_order;
      if (rel_timeout > 0.0)
        rel.timeout_s = rel_timeout;
      tvnrel::cmd_reliability(rel, std::cout);
    } else if (count_cmd->parsed()) {
      count.mode = parsed_mode;
      count.order = parsed_order;
      tvnrel::cmd_count_journeys(count, std::cout);
    } else if (gen_cmd->parsed()) {
      gen.family = tvnrel::parse_family(gen_family);
      gen.retry = tvnrel::parse_retry_rule(retry);
      tvnrel::cmd_gen(gen, std::cout);
    } else if (bench_cmd->parsed()) {
      bench.family = tvnrel::parse_family(bench_family);
      bench.mode = parsed_mode;
      bench.methods = parse_methods(bench_methods);
      bench.retry = tvnrel::parse_retry_rule(retry);
      bench.workers = tvnrel::default_workers();
      tvnrel::cmd_bench(bench, std::cout);
    } else if (dot_cmd->parsed()) {
      dot.stage = tvnrel::parse_dot_stage(stage);
      dot.mode = parsed_mode;
      dot.order = parsed_order;
      tvnrel::cmd_export_dot(dot, std::cout);
    }
  } catch (const std::exception &err) {
    std::cerr << "tvnrel: " << err.what() << '\n';
    return 1;
  }
  return 0;
}
