// radiolab: generate family instances, evaluate the analytic bounds, verify
// per-round reception maxima and simulate k-message broadcast.
//
// Exit codes: 0 ok, 2 usage, 3 input error, 4 budget exceeded.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "radiolab/parallel.hpp"
#include "radiolab/pipeline.hpp"

namespace {

using namespace radiolab;

void emit(const std::string& out_path, const std::string& bytes) {
  if (out_path.empty() || out_path == "-") {
    std::cout << bytes;
  } else {
    write_file_atomic(out_path, bytes);
  }
}

int fail(int code, const char* kind, const std::string& message) {
  json err{{"schema_version", kSchemaVersion}, {"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << err.dump() << '\n';
  return code;
}

void parse_range(const std::string& text, AnalyzeOptions& opt) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      opt.nprime_lo = opt.nprime_hi = std::stoull(text);
    } else {
      opt.nprime_lo = std::stoull(text.substr(0, dots));
      opt.nprime_hi = std::stoull(text.substr(dots + 2));
    }
  } catch (const std::exception&) {
    throw input_error("bad --grid-nprime '" + text + "' (expected LO..HI)");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radio network throughput laboratory"};
  app.require_subcommand(1);
  unsigned workers = default_workers();
  app.add_option("--workers", workers, "worker threads (default: $RADIOLAB_WORKERS or hardware)")->check(CLI::PositiveNumber);

  GenOptions gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "sample a family instance in radionet v1 format");
  gen_cmd->add_option("--n", gen.n, "total node count, a power of 4")->required();
  gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_flag("--radius2", gen.radius2, "wrap the core into the radius-2 network on n nodes");
  gen_cmd->add_option("--out", gen_out, "output file (default stdout)");

  std::string grid = "2..64";
  std::string analyze_out;
  std::string expect_out;
  auto* analyze_cmd = app.add_subcommand("analyze", "exact and bounding reception probabilities over a grid");
  analyze_cmd->add_option("--grid-nprime", grid, "power-of-two n' range LO..HI");
  analyze_cmd->add_option("--out", analyze_out, "chain CSV (default stdout)");
  analyze_cmd->add_option("--expect-out", expect_out, "also write the expectation CSV here");

  std::string verify_net;
  std::string verify_out;
  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "maximum receptions in one round over all transmit sets");
  verify_cmd->add_option("--net", verify_net, "network file")->required();
  auto* exact_flag = verify_cmd->add_flag("--exact", "exhaustive enumeration (default)");
  auto* search_flag = verify_cmd->add_flag("--search", verify.search, "hill-climbing lower bound");
  exact_flag->excludes(search_flag);
  verify_cmd->add_option("--restarts", verify.restarts, "random restarts for --search")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--threshold", verify.threshold, "threshold constant c (reports c*n')")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed, "random seed for --search");
  verify_cmd->add_option("--out", verify_out, "JSON output (default stdout)");

  std::string sim_net;
  std::string sim_out;
  std::string sim_series;
  std::string policy = "round_robin";
  std::string model = "routing";
  BroadcastConfig cfg;
  auto* sim_cmd = app.add_subcommand("simulate", "k-message broadcast on a radius-2 network");
  sim_cmd->add_option("--net", sim_net, "network file with radius2 footer")->required();
  sim_cmd->add_option("--k", cfg.k, "message count")->required();
  sim_cmd->add_option("--policy", policy, "round_robin | greedy_schedule | random_p");
  sim_cmd->add_option("--p", cfg.p, "transmit probability for random_p");
  sim_cmd->add_option("--model", model, "routing | coding");
  sim_cmd->add_option("--seed", cfg.seed, "random seed");
  sim_cmd->add_option("--max-rounds", cfg.max_rounds, "round cap");
  sim_cmd->add_option("--packet-bits", cfg.packet_bits, "packet size B in bits");
  sim_cmd->add_option("--out", sim_out, "JSON report (default stdout)");
  sim_cmd->add_option("--series", sim_series, "CSV time series round,receptions,min_rank");

  std::vector<std::string> report_in;
  std::string report_out;
  auto* report_cmd = app.add_subcommand("report", "merge simulate artifacts into one CSV");
  report_cmd->add_option("inputs", report_in, "simulate JSON artifacts");
  report_cmd->add_option("--out", report_out, "CSV output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, "usage", e.what());
  }

  try {
    if (*gen_cmd) {
      gen.workers = workers;
      emit(gen_out, gen_artifact(gen));
    } else if (*analyze_cmd) {
      AnalyzeOptions opt;
      parse_range(grid, opt);
      emit(analyze_out, analyze_chain_csv(opt));
      if (!expect_out.empty()) emit(expect_out, analyze_expectation_csv(opt));
    } else if (*verify_cmd) {
      verify.workers = workers;
      emit(verify_out, dump_json(verify_report(parse_net(read_file(verify_net)), verify)));
    } else if (*sim_cmd) {
      cfg.policy = parse_policy(policy);
      cfg.model = parse_content_model(model);
      const auto net = parse_net(read_file(sim_net)).radius2();
      const auto rep = run_broadcast(net, cfg);
      emit(sim_out, dump_json(simulate_report(net, rep)));
      if (!sim_series.empty()) emit(sim_series, series_csv(rep));
    } else if (*report_cmd) {
      std::vector<json> artifacts;
      for (const auto& path : report_in) {
        try {
          artifacts.push_back(json::parse(read_file(path)));
        } catch (const json::parse_error& e) {
          throw input_error("'" + path + "' is not JSON: " + e.what());
        }
      }
      emit(report_out, report_csv(artifacts));
    }
  } catch (const budget_error& e) {
    return fail(4, "budget", e.what());
  } catch (const input_error& e) {
    return fail(3, "input", e.what());
  } catch (const json::exception& e) {
    return fail(3, "input", e.what());
  }
  return 0;
}
