#pragma once

// Artifact builders behind the command-line driver. Every function returns
// the exact bytes written to disk, so pipelines can be compared in-process.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "radiolab/analytic.hpp"
#include "radiolab/broadcast.hpp"
#include "radiolab/error.hpp"
#include "radiolab/instance.hpp"
#include "radiolab/netio.hpp"
#include "radiolab/verifier.hpp"

namespace radiolab {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "radiolab 0.1.0";

using json = nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes via a sibling temp file and rename so readers never see partial output.
inline void write_file_atomic(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << bytes;
    if (!out.flush()) throw input_error("short write to '" + path + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw input_error("cannot rename onto '" + path + "': " + ec.message());
}

// ---- gen ----

struct GenOptions {
  std::uint64_t n = 256;
  std::uint64_t seed = 0;
  bool radius2 = false;
  unsigned workers = 1;
};

inline std::string gen_artifact(const GenOptions& opt) {
  const InstanceParams params(opt.n, opt.seed);
  const auto core = sample_instance(params, opt.workers);
  if (!opt.radius2) return format_net(core);
  return format_net(build_radius2(core, opt.n));
}

// ---- analyze ----

struct AnalyzeOptions {
  std::uint64_t nprime_lo = 2;
  std::uint64_t nprime_hi = 64;
};

inline std::vector<std::uint64_t> nprime_grid(const AnalyzeOptions& opt) {
  if (opt.nprime_lo == 0 || opt.nprime_lo > opt.nprime_hi) throw input_error("empty n' grid");
  std::vector<std::uint64_t> grid;
  for (std::uint64_t np = 1; np <= opt.nprime_hi; np *= 2) {
    if (np >= opt.nprime_lo) grid.push_back(np);
  }
  if (grid.empty()) throw input_error("n' grid contains no power of two");
  return grid;
}

inline std::string analyze_header(const AnalyzeOptions& opt, const char* table) {
  std::ostringstream os;
  os << "# schema_version=" << kSchemaVersion << " tool=\"" << kToolVersion << "\" command=analyze table=" << table
     << " grid_nprime=" << opt.nprime_lo << ".." << opt.nprime_hi << '\n';
  return os.str();
}

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One row per (n', s, delta) with 1 <= s <= n', 1 <= delta <= n'-s+1.
inline std::string analyze_chain_csv(const AnalyzeOptions& opt) {
  std::ostringstream os;
  os << analyze_header(opt, "chain");
  os << "n_prime,s,delta,p_exact_num,p_exact_den,p_upper,chain_pass\n";
  for (auto np : nprime_grid(opt)) {
    for (std::uint64_t s = 1; s <= np; ++s) {
      for (std::uint64_t d = 1; d <= np - s + 1; ++d) {
        const auto p = p_delta(np, s, d);
        const auto chain = certify_chain(np, s, d);
        os << np << ',' << s << ',' << d << ',' << p.numerator() << ',' << p.denominator() << ','
           << format_double(p_delta_upper(np, s, d)) << ',' << (chain.pass ? "true" : "false") << '\n';
      }
    }
  }
  return os.str();
}

// One row per (n', s) with 0 <= s <= n'.
inline std::string analyze_expectation_csv(const AnalyzeOptions& opt) {
  std::ostringstream os;
  os << analyze_header(opt, "expectation");
  os << "n_prime,s,expected_num,expected_den,expected_upper,below_10n,chain_pass\n";
  for (auto np : nprime_grid(opt)) {
    for (std::uint64_t s = 0; s <= np; ++s) {
      const auto chain = certify_expectation(np, s);
      const auto& e = *chain.steps.front().exact;
      os << np << ',' << s << ',' << boost::multiprecision::numerator(e) << ','
         << boost::multiprecision::denominator(e) << ',' << format_double(expected_receivers_upper(np, s)) << ','
         << (e < 10 * np ? "true" : "false") << ',' << (chain.pass ? "true" : "false") << '\n';
    }
  }
  return os.str();
}

// ---- verify ----

struct VerifyOptions {
  bool search = false;  // default exhaustive
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  double threshold = 20.0;
  unsigned workers = 1;
};

inline json verify_report(const NetFile& file, const VerifyOptions& opt) {
  const auto& net = file.core;
  const auto result = opt.search ? max_receptions_search(net, SearchOptions{opt.restarts, opt.seed})
                                 : max_receptions_exact(net, opt.workers);
  const auto check = check_lemma_threshold(net, result, opt.threshold);
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = kToolVersion;
  j["kind"] = "verify";
  j["config"] = {{"method", opt.search ? "search" : "exact"},
                 {"restarts", opt.search ? json(opt.restarts) : json(nullptr)},
                 {"seed", opt.seed},
                 {"threshold_c", opt.threshold}};
  j["sender_count"] = net.sender_count();
  j["receiver_count"] = net.receiver_count();
  j["best_count"] = result.best_count;
  j["witness_hex"] = result.witness.to_hex();
  j["method"] = to_string(result.method);
  j["exact"] = result.exact;
  j["subsets_examined"] = result.subsets_examined;
  j["threshold"] = check.threshold;
  j["fraction"] = check.fraction;
  j["family_fraction"] = check.family_fraction ? json(*check.family_fraction) : json(nullptr);
  j["vacuous"] = check.vacuous;
  j["pass"] = check.pass;
  return j;
}

// ---- simulate ----

inline json simulate_report(const Radius2Net& net, const BroadcastReport& rep) {
  const auto& cfg = rep.config;
  json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = kToolVersion;
  j["kind"] = "simulate";
  j["config"] = {{"k", cfg.k},
                 {"packet_bits", cfg.packet_bits},
                 {"model", to_string(cfg.model)},
                 {"policy", to_string(cfg.policy)},
                 {"p", cfg.policy == PolicyKind::random_p ? json(cfg.p) : json(nullptr)},
                 {"max_rounds", cfg.max_rounds},
                 {"seed", cfg.seed}};
  j["n"] = net.total_nodes();
  j["sender_count"] = net.core().sender_count();
  j["receiver_count"] = net.core().receiver_count();
  j["rounds_used"] = rep.rounds_used;
  j["source_rounds"] = rep.source_rounds;
  j["complete"] = rep.complete;
  j["total_receptions"] = rep.total_receptions;
  j["min_receptions"] = rep.min_receptions();
  j["throughput"] = rep.throughput;
  j["maxrec"] = rep.maxrec ? json(*rep.maxrec) : json(nullptr);
  j["maxrec_exact"] = rep.maxrec_exact;
  j["accounting_lower_bound"] = rep.accounting_lower_bound ? json(*rep.accounting_lower_bound) : json(nullptr);
  j["per_receiver_receptions"] = rep.per_receiver_receptions;
  j["per_receiver_rank"] = rep.per_receiver_rank;
  std::vector<bool> decoded(rep.per_receiver_decoded.begin(), rep.per_receiver_decoded.end());
  j["per_receiver_decoded"] = decoded;
  return j;
}

inline std::string series_csv(const BroadcastReport& rep) {
  std::ostringstream os;
  os << "# schema_version=" << kSchemaVersion << " tool=\"" << kToolVersion << "\" command=simulate k=" << rep.config.k
     << " policy=" << to_string(rep.config.policy) << " model=" << to_string(rep.config.model)
     << " seed=" << rep.config.seed << '\n';
  os << "round,receptions,min_rank\n";
  for (const auto& pt : rep.series) os << pt.round << ',' << pt.receptions << ',' << pt.min_rank << '\n';
  return os.str();
}

inline std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

// ---- report ----

// Merges simulate artifacts into one CSV keyed by (n, seed, policy, k, model),
// sorted by key. Identical duplicates collapse; conflicting duplicates and
// foreign schema versions are rejected.
inline std::string report_csv(const std::vector<json>& artifacts) {
  using Key = std::tuple<std::uint64_t, std::uint64_t, std::string, std::uint64_t, std::string>;
  std::map<Key, std::tuple<std::uint64_t, json, double>> rows;
  for (const auto& a : artifacts) {
    if (!a.is_object() || !a.contains("schema_version") || a["schema_version"] != kSchemaVersion) {
      throw input_error("artifact schema_version mismatch (expected " + std::to_string(kSchemaVersion) + ")");
    }
    if (a.value("kind", "") != "simulate") throw input_error("report merges simulate artifacts only");
    const auto& c = a.at("config");
    Key key{a.at("n").get<std::uint64_t>(), c.at("seed").get<std::uint64_t>(), c.at("policy").get<std::string>(),
            c.at("k").get<std::uint64_t>(), c.at("model").get<std::string>()};
    auto value = std::make_tuple(a.at("rounds_used").get<std::uint64_t>(), a.at("accounting_lower_bound"),
                                 a.at("throughput").get<double>());
    auto [it, inserted] = rows.emplace(key, value);
    if (!inserted && it->second != value) throw input_error("conflicting artifacts for the same (n, seed, policy, k, model)");
  }
  std::ostringstream os;
  os << "# schema_version=" << kSchemaVersion << " tool=\"" << kToolVersion << "\" command=report inputs="
     << artifacts.size() << '\n';
  os << "n,seed,policy,k,model,rounds_used,accounting_lower_bound,throughput\n";
  for (const auto& [key, value] : rows) {
    const auto& [n, seed, policy, k, model] = key;
    const auto& [rounds, bound, throughput] = value;
    os << n << ',' << seed << ',' << policy << ',' << k << ',' << model << ',' << rounds << ','
       << (bound.is_null() ? std::string() : bound.dump()) << ',' << format_double(throughput) << '\n';
  }
  return os.str();
}

}  // namespace radiolab
