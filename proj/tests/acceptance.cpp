// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Tolerances and budgets are fixed here.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "radiolab/pipeline.hpp"
#include "radiolab/radiolab.hpp"

namespace {

using namespace radiolab;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// 1. p_delta equals brute-force enumeration over all C(n', delta) neighbor sets.
Outcome exact_vs_enumeration() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t cases = 0;
  for (unsigned np : {2u, 4u, 8u, 16u}) {
    for (unsigned s = 1; s <= np; ++s) {
      for (unsigned d = 2; d <= np; d *= 2) {
        ++cases;
        require(o, p_delta(np, s, d).value() == testing::enumerate_p_delta(np, s, d),
                "mismatch at n'=" + std::to_string(np) + " s=" + std::to_string(s) + " delta=" + std::to_string(d));
      }
    }
  }
  const double t = seconds_since(t0);
  require(o, t < 10.0, "runtime over 10 s");
  if (o.pass) o.detail = std::to_string(cases) + " cases equal, " + std::to_string(t) + " s";
  return o;
}

// 2. p_delta(16, s, delta) against 1e5 uniform neighbor-set samples, 4 SE.
Outcome monte_carlo_probability() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 gen(20240601);
  const int samples = 100000;
  std::vector<unsigned> senders(16);
  std::iota(senders.begin(), senders.end(), 0u);
  double worst = 0.0;
  for (unsigned s : {1u, 4u, 8u}) {
    for (unsigned d : {2u, 4u, 8u, 16u}) {
      std::vector<unsigned> pick(d);
      int hits = 0;
      for (int i = 0; i < samples; ++i) {
        std::sample(senders.begin(), senders.end(), pick.begin(), d, gen);
        hits += std::count_if(pick.begin(), pick.end(), [&](unsigned v) { return v < s; }) == 1;
      }
      const double p = p_delta(16, s, d).to_double();
      const double est = hits / double(samples);
      const double se = std::sqrt(p * (1 - p) / samples);
      const std::string at = "s=" + std::to_string(s) + " delta=" + std::to_string(d);
      if (se == 0.0) {
        require(o, est == p, "degenerate case differs at " + at);
      } else {
        worst = std::max(worst, std::fabs(est - p) / se);
        require(o, std::fabs(est - p) <= 4 * se, "beyond 4 SE at " + at);
      }
    }
  }
  const double t = seconds_since(t0);
  require(o, t < 30.0, "runtime over 30 s");
  if (o.pass) o.detail = "max |z| = " + std::to_string(worst) + ", " + std::to_string(t) + " s";
  return o;
}

// 3. The single-receiver inequality chain holds for every valid (n' <= 64, s, delta).
Outcome chain_certification() {
  Outcome o;
  const auto t0 = Clock::now();
  std::size_t cases = 0;
  std::size_t failures = 0;
  for (std::uint64_t np = 1; np <= 64; ++np) {
    for (std::uint64_t s = 1; s <= np; ++s) {
      for (std::uint64_t d = 1; d <= np - s + 1; ++d) {
        ++cases;
        const auto r = certify_chain(np, s, d);
        if (!r.pass) {
          ++failures;
          require(o, false, "fails at n'=" + std::to_string(np) + " s=" + std::to_string(s) + " delta=" +
                                std::to_string(d) + ": " + r.failures.front());
        }
      }
    }
  }
  const double t = seconds_since(t0);
  require(o, t < 60.0, "runtime over 60 s");
  if (o.pass) o.detail = std::to_string(cases) + " chains, 0 failures, " + std::to_string(t) + " s";
  return o;
}

// 4. Exact expectation < 10 n' and <= the split geometric bound.
Outcome expectation_bound() {
  Outcome o;
  double worst_ratio = 0.0;
  for (std::uint64_t np = 1; np <= 64; np *= 2) {
    for (std::uint64_t s = 0; s <= np; ++s) {
      const auto exact = expected_receivers(np, s);
      const double upper = expected_receivers_upper(np, s);
      const std::string at = "n'=" + std::to_string(np) + " s=" + std::to_string(s);
      require(o, exact < 10 * np, "E[X] >= 10n' at " + at);
      require(o, detail::rounded_le(to_double(exact), upper), "E[X] above split bound at " + at);
      require(o, upper < 10.0 * double(np), "split bound >= 10n' at " + at);
      worst_ratio = std::max(worst_ratio, to_double(exact) / double(np));
    }
  }
  if (o.pass) o.detail = "max E[X]/n' = " + std::to_string(worst_ratio);
  return o;
}

// 5. Chernoff tail at (10n', 20n') below e^{-3n'}; union bound below e^{-2n'}.
Outcome tail_bounds() {
  Outcome o;
  for (std::uint64_t np = 1; np <= 64; ++np) {
    const double n = double(np);
    require(o, chernoff_tail(10 * n, 20 * n) <= std::exp(-3 * n), "chernoff at n'=" + std::to_string(np));
    require(o, union_failure_bound(np) < std::exp(-2 * n), "union at n'=" + std::to_string(np));
  }
  if (o.pass) o.detail = "n' = 1..64; chernoff exponent -" + std::to_string(20 * std::log(2.0) - 10) + " n'";
  return o;
}

// 6. Exhaustive verification at n = 256, search agreement, vacuous threshold.
Outcome exhaustive_verification() {
  Outcome o;
  const auto net = sample_instance(InstanceParams(256, 1));
  const auto t0 = Clock::now();
  const auto exact = max_receptions_exact(net, 1);
  const double t = seconds_since(t0);
  require(o, exact.subsets_examined == 65536, "did not examine all 65536 subsets");
  require(o, t < 5.0, "exact enumeration over 5 s");
  require(o, round_step(net, exact.witness).reception_count == exact.best_count, "witness does not reproduce");

  const auto check = check_lemma_threshold(net, exact, 20);
  require(o, check.threshold == 320.0 && check.receiver_count == 64 && check.vacuous, "threshold not reported vacuous");

  int agree = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = sample_instance(InstanceParams(256, 1000 + seed));
    const auto e = max_receptions_exact(inst);
    const auto s = max_receptions_search(inst, {32, seed});
    require(o, s.best_count <= e.best_count, "search exceeded exact");
    agree += s.best_count == e.best_count;
  }
  require(o, agree >= 95, "search matched exact on only " + std::to_string(agree) + "/100 seeds");
  if (o.pass) {
    o.detail = "best=" + std::to_string(exact.best_count) + " in " + std::to_string(t) + " s; search agrees " +
               std::to_string(agree) + "/100; 320 >= 64 vacuous";
  }
  return o;
}

// 7. Monte Carlo over sampled graphs matches the exact expectation, 4 SE.
Outcome graph_monte_carlo() {
  Outcome o;
  std::ostringstream detail;
  for (std::size_t s : {1u, 2u}) {
    const auto est = monte_carlo_expectation(InstanceParams(16, 700 + s), s, 10000);
    const double exact = to_double(expected_receivers(4, s));
    const double z = std::fabs(est.mean - exact) / est.standard_error;
    require(o, z <= 4.0, "s=" + std::to_string(s) + " off by " + std::to_string(z) + " SE");
    detail << "s=" << s << ": " << est.mean << " vs " << exact << " (|z|=" << z << ") ";
  }
  if (o.pass) o.detail = detail.str();
  return o;
}

// 8. H' has radius exactly 2.
Outcome radius_two() {
  Outcome o;
  const std::uint64_t sizes[] = {64, 256, 1024};
  for (std::uint64_t i = 0; i < 100; ++i) {
    const std::uint64_t n = sizes[i % 3];
    const auto h = build_radius2(sample_instance(InstanceParams(n, 5000 + i)), n);
    require(o, radius(h) == std::optional<std::size_t>{2}, "radius != 2 for n=" + std::to_string(n) + " seed " + std::to_string(5000 + i));
  }
  if (o.pass) o.detail = "100 instances over n in {64, 256, 1024}";
  return o;
}

// 9. Every shipped policy respects the counting bound; receivers get >= k packets.
Outcome broadcast_accounting() {
  Outcome o;
  const auto core = sample_instance(InstanceParams(256, 9));
  const auto net = build_radius2(core, 256);
  const auto maxrec = max_receptions_exact(core).best_count;
  std::size_t runs = 0;
  for (std::size_t k : {1u, 4u, 16u}) {
    const auto bound = *lower_bound_rounds(k, core.receiver_count(), maxrec);
    for (auto model : {ContentModel::routing, ContentModel::coding}) {
      for (auto policy : {PolicyKind::round_robin, PolicyKind::greedy_schedule, PolicyKind::random_p}) {
        BroadcastConfig cfg;
        cfg.k = k;
        cfg.model = model;
        cfg.policy = policy;
        cfg.p = 0.25;
        cfg.seed = 31 + k;
        const auto rep = run_broadcast(net, cfg, maxrec);
        const std::string at = std::string(to_string(model)) + "/" + to_string(policy) + " k=" + std::to_string(k);
        ++runs;
        require(o, rep.complete, "incomplete: " + at);
        require(o, rep.rounds_used >= bound, "beat the counting bound: " + at);
        require(o, rep.min_receptions() >= k, "receiver with < k receptions: " + at);
        for (auto rank : rep.per_receiver_rank) require(o, rank == k, "rank != k: " + at);
      }
    }
  }
  if (o.pass) o.detail = std::to_string(runs) + " runs, maxrec=" + std::to_string(maxrec);
  return o;
}

// gen -> verify -> simulate -> report, returning every artifact's bytes.
std::vector<std::string> pipeline(unsigned workers) {
  std::vector<std::string> artifacts;
  const auto net_text = gen_artifact({256, 42, true, workers});
  artifacts.push_back(net_text);
  const auto file = parse_net(net_text);
  VerifyOptions v;
  v.workers = workers;
  artifacts.push_back(dump_json(verify_report(file, v)));
  v.search = true;
  v.seed = 42;
  artifacts.push_back(dump_json(verify_report(file, v)));
  artifacts.push_back(analyze_chain_csv({2, 16}));

  const auto h = file.radius2();
  std::vector<json> sims;
  for (auto policy : {PolicyKind::round_robin, PolicyKind::greedy_schedule, PolicyKind::random_p}) {
    for (auto model : {ContentModel::routing, ContentModel::coding}) {
      BroadcastConfig cfg;
      cfg.k = 4;
      cfg.policy = policy;
      cfg.model = model;
      cfg.seed = 42;
      const auto rep = run_broadcast(h, cfg);
      sims.push_back(simulate_report(h, rep));
      artifacts.push_back(dump_json(sims.back()));
      artifacts.push_back(series_csv(rep));
    }
  }
  artifacts.push_back(report_csv(sims));
  const auto mc = monte_carlo_expectation(InstanceParams(64, 42), 3, 2000, workers);
  artifacts.push_back(format_double(mc.mean) + "," + format_double(mc.standard_error));
  return artifacts;
}

// 10. Byte-identical artifacts across repeats and worker counts.
Outcome determinism() {
  Outcome o;
  const auto reference = pipeline(1);
  for (int rep = 0; rep < 2; ++rep) require(o, pipeline(1) == reference, "repeat run differs");
  require(o, pipeline(4) == reference, "4-worker run differs from 1-worker run");
  if (o.pass) o.detail = std::to_string(reference.size()) + " artifacts identical over 3 runs and 1 vs 4 workers";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 exact p_delta equals enumeration", exact_vs_enumeration},
      {"AC2 p_delta Monte Carlo within 4 SE", monte_carlo_probability},
      {"AC3 single-receiver bound chain certified", chain_certification},
      {"AC4 expectation below 10n' and split bound", expectation_bound},
      {"AC5 Chernoff and union tail bounds", tail_bounds},
      {"AC6 exhaustive verification at n=256", exhaustive_verification},
      {"AC7 graph Monte Carlo matches expectation", graph_monte_carlo},
      {"AC8 wrapper network has radius 2", radius_two},
      {"AC9 broadcast respects counting bound", broadcast_accounting},
      {"AC10 pipeline determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
