// Samples one n = 256 instance, measures its exact per-round reception
// maximum, and compares broadcast policies against the counting bound.

#include <cstdio>

#include "radiolab/radiolab.hpp"

int main() {
  using namespace radiolab;

  const InstanceParams params(256, 7);
  const auto core = sample_instance(params);
  const auto net = build_radius2(core, params.n());
  const auto max = max_receptions_exact(core);

  std::printf("n=%llu n'=%zu receivers=%zu maxrec=%zu witness=%s radius=%zu\n",
              static_cast<unsigned long long>(params.n()), core.sender_count(), core.receiver_count(), max.best_count,
              max.witness.to_hex().c_str(), radius(net).value_or(0));

  for (auto model : {ContentModel::routing, ContentModel::coding}) {
    for (auto policy : {PolicyKind::round_robin, PolicyKind::greedy_schedule, PolicyKind::random_p}) {
      BroadcastConfig cfg;
      cfg.k = 8;
      cfg.model = model;
      cfg.policy = policy;
      cfg.p = 0.25;
      cfg.seed = 7;
      const auto rep = run_broadcast(net, cfg, max.best_count);
      std::printf("%-8s %-16s rounds=%-5llu bound=%-4llu throughput=%.4f\n", to_string(model), to_string(policy),
                  static_cast<unsigned long long>(rep.rounds_used),
                  static_cast<unsigned long long>(rep.accounting_lower_bound.value_or(0)), rep.throughput);
    }
  }
}
