#pragma once

// k-message broadcast from the source of H' with centralized policies, and
// the reception-counting lower bound on the number of rounds.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "radiolab/bits.hpp"
#include "radiolab/error.hpp"
#include "radiolab/model.hpp"
#include "radiolab/random.hpp"
#include "radiolab/verifier.hpp"

namespace radiolab {

enum class ContentModel { routing, coding };
enum class PolicyKind { round_robin, greedy_schedule, random_p };

inline const char* to_string(ContentModel m) { return m == ContentModel::routing ? "routing" : "coding"; }

inline const char* to_string(PolicyKind p) {
  switch (p) {
    case PolicyKind::round_robin: return "round_robin";
    case PolicyKind::greedy_schedule: return "greedy_schedule";
    case PolicyKind::random_p: return "random_p";
  }
  return "unknown";
}

inline ContentModel parse_content_model(const std::string& s) {
  if (s == "routing") return ContentModel::routing;
  if (s == "coding") return ContentModel::coding;
  throw input_error("unknown content model '" + s + "' (routing|coding)");
}

inline PolicyKind parse_policy(const std::string& s) {
  if (s == "round_robin") return PolicyKind::round_robin;
  if (s == "greedy_schedule" || s == "greedy") return PolicyKind::greedy_schedule;
  if (s == "random_p" || s == "random") return PolicyKind::random_p;
  throw input_error("unknown policy '" + s + "' (round_robin|greedy_schedule|random_p)");
}

struct BroadcastConfig {
  std::size_t k = 1;
  std::size_t packet_bits = 64;  // one message per packet
  ContentModel model = ContentModel::routing;
  PolicyKind policy = PolicyKind::round_robin;
  double p = 0.5;  // random_p transmit probability
  std::uint64_t max_rounds = 100000;
  std::uint64_t seed = 0;
};

// What a node has learned: held message ids (routing) or a GF(2) row-echelon
// basis of received coefficient vectors (coding).
class ReceiverState {
 public:
  ReceiverState(ContentModel model, std::size_t k) : model_(model), k_(k), held_(k) {
    if (model_ == ContentModel::coding) pivots_.resize(k);
  }

  ContentModel model() const noexcept { return model_; }
  std::size_t k() const noexcept { return k_; }

  // Routing reception; true if the message was new.
  bool receive_message(std::size_t id) {
    if (id >= k_) throw input_error("message id out of range");
    if (held_.test(id)) return false;
    held_.set(id);
    ++rank_;
    return true;
  }

  // Coding reception; true if the vector was innovative (rank grew).
  bool receive_vector(DynamicBitset v) {
    if (v.size() != k_) throw input_error("coefficient vector width mismatch");
    for (std::size_t p = v.lowest(); p < k_; p = v.lowest()) {
      if (!pivots_[p]) {
        pivots_[p] = std::move(v);
        ++rank_;
        return true;
      }
      v ^= *pivots_[p];
    }
    return false;
  }

  bool has_message(std::size_t id) const noexcept { return held_.test(id); }
  std::size_t rank() const noexcept { return rank_; }
  bool decoded() const noexcept { return rank_ == k_; }

 private:
  ContentModel model_;
  std::size_t k_;
  DynamicBitset held_;
  std::vector<std::optional<DynamicBitset>> pivots_;  // row whose lowest set bit is the index
  std::size_t rank_ = 0;
};

inline std::size_t decode_rank(const ReceiverState& state) { return state.rank(); }

// ceil(k R / maxrec); nullopt when maxrec = 0 (no round can deliver anything).
inline std::optional<std::uint64_t> lower_bound_rounds(std::uint64_t k, std::uint64_t receivers, std::uint64_t maxrec) {
  if (maxrec == 0) return std::nullopt;
  return (k * receivers + maxrec - 1) / maxrec;
}

// Steepest-ascent flips from the empty set maximizing the number of
// `needy` receivers that hear exactly one sender; ties go to the lowest index.
inline TransmitSet greedy_round(const BipartiteRadioNet& net, const std::vector<std::uint8_t>& needy) {
  detail::ReceptionCounter counter(net, needy);
  for (;;) {
    long best_gain = 0;
    std::size_t best_sender = net.sender_count();
    for (std::size_t j = 0; j < net.sender_count(); ++j) {
      const long g = counter.gain(j);
      if (g > best_gain) {
        best_gain = g;
        best_sender = j;
      }
    }
    if (best_sender == net.sender_count()) break;
    counter.flip(best_sender);
  }
  return counter.active();
}

// Greedy schedule where receiver r needs `needs[r]` more receptions; stops
// when nobody needs anything, no needy receiver can be reached, or after
// `horizon` rounds.
inline std::vector<TransmitSet> greedy_schedule(const BipartiteRadioNet& net, std::vector<std::size_t> needs,
                                                std::size_t horizon) {
  if (needs.size() != net.receiver_count()) throw input_error("needs vector size mismatch");
  std::vector<TransmitSet> schedule;
  std::vector<std::uint8_t> needy(net.receiver_count());
  while (schedule.size() < horizon) {
    bool any = false;
    for (std::size_t r = 0; r < needs.size(); ++r) {
      needy[r] = needs[r] > 0 ? 1 : 0;
      any = any || needy[r];
    }
    if (!any) break;
    auto set = greedy_round(net, needy);
    if (set.empty()) break;
    const auto out = round_step(net, set);
    for (std::size_t r = 0; r < needs.size(); ++r) {
      if (out.received[r] && needs[r] > 0) --needs[r];
    }
    schedule.push_back(std::move(set));
  }
  return schedule;
}

inline std::vector<TransmitSet> greedy_schedule(const BipartiteRadioNet& net, std::size_t horizon) {
  return greedy_schedule(net, std::vector<std::size_t>(net.receiver_count(), 1), horizon);
}

struct SeriesPoint {
  std::uint64_t round = 0;
  std::size_t receptions = 0;  // receiver receptions this round
  std::size_t min_rank = 0;    // over receivers, after the round
};

struct BroadcastReport {
  BroadcastConfig config;
  std::uint64_t rounds_used = 0;
  std::uint64_t source_rounds = 0;
  bool complete = false;
  std::vector<std::size_t> per_receiver_receptions;
  std::vector<bool> per_receiver_decoded;
  std::vector<std::size_t> per_receiver_rank;
  std::uint64_t total_receptions = 0;
  double throughput = 0.0;  // k / rounds_used
  std::optional<std::size_t> maxrec;
  bool maxrec_exact = false;
  std::optional<std::uint64_t> accounting_lower_bound;
  std::vector<SeriesPoint> series;

  std::size_t min_receptions() const {
    return per_receiver_receptions.empty()
               ? 0
               : *std::min_element(per_receiver_receptions.begin(), per_receiver_receptions.end());
  }
};

namespace detail {

inline unsigned ceil_log2(std::uint64_t x) {
  unsigned l = 0;
  while ((std::uint64_t{1} << l) < x && l < 63) ++l;
  return l;
}

inline DynamicBitset random_vector(std::size_t k, std::uint64_t seed) {
  DynamicBitset v(k);
  Rng rng(seed);
  for (auto& w : v.words()) w = rng();
  if (k % 64 != 0) v.words().back() &= (std::uint64_t{1} << (k % 64)) - 1;
  return v;
}

inline DynamicBitset unit_vector(std::size_t k, std::size_t i) {
  DynamicBitset v(k);
  v.set(i);
  return v;
}

}  // namespace detail

// Runs the source phase (k rounds in which only the source transmits, one
// message or unit coefficient vector each) followed by sender rounds chosen
// by the policy until every receiver decodes or max_rounds is reached.
// `maxrec` is the exact per-round reception maximum of the core; when absent
// it is computed by enumeration if the core is small enough.
inline BroadcastReport run_broadcast(const Radius2Net& net, const BroadcastConfig& cfg,
                                     std::optional<std::size_t> maxrec = std::nullopt) {
  const auto& core = net.core();
  const std::size_t k = cfg.k;
  const std::size_t senders = core.sender_count();
  const std::size_t receivers = core.receiver_count();
  if (cfg.packet_bits < detail::ceil_log2(net.total_nodes())) {
    throw input_error("packet_bits must be at least ceil(log2 n) = " + std::to_string(detail::ceil_log2(net.total_nodes())));
  }
  if (cfg.policy == PolicyKind::random_p && !(cfg.p > 0.0 && cfg.p <= 1.0)) {
    throw input_error("random_p needs 0 < p <= 1");
  }

  BroadcastReport report;
  report.config = cfg;
  if (!maxrec && senders <= kMaxExactSenders) maxrec = max_receptions_exact(core).best_count;
  if (maxrec) {
    report.maxrec = maxrec;
    report.maxrec_exact = true;
    report.accounting_lower_bound = lower_bound_rounds(k, receivers, *maxrec);
  }
  report.per_receiver_receptions.assign(receivers, 0);

  std::vector<ReceiverState> sender_state(senders, ReceiverState(cfg.model, k));
  std::vector<ReceiverState> receiver_state(receivers, ReceiverState(cfg.model, k));

  auto min_rank = [&] {
    std::size_t m = k;
    for (const auto& st : receiver_state) m = std::min(m, st.rank());
    return receivers == 0 ? k : m;
  };
  auto all_decoded = [&] {
    return std::all_of(receiver_state.begin(), receiver_state.end(), [](const ReceiverState& s) { return s.decoded(); });
  };

  // Source phase.
  for (std::size_t m = 0; m < k && report.rounds_used < cfg.max_rounds; ++m) {
    TransmitSet t(net.total_nodes());
    t.insert(Radius2Net::source_id());
    const auto out = round_step(net, t);
    for (std::size_t j = 0; j < senders; ++j) {
      if (!out.received[net.sender_id(j)]) continue;
      if (cfg.model == ContentModel::routing) {
        sender_state[j].receive_message(m);
      } else {
        sender_state[j].receive_vector(detail::unit_vector(k, m));
      }
    }
    ++report.rounds_used;
    report.series.push_back({report.rounds_used, 0, min_rank()});
  }
  report.source_rounds = report.rounds_used;

  const bool senders_ready = std::all_of(sender_state.begin(), sender_state.end(), [](const ReceiverState& s) { return s.decoded(); });
  std::size_t cursor = 0;
  std::vector<std::uint8_t> needy(receivers);

  while (senders_ready && !all_decoded() && report.rounds_used < cfg.max_rounds) {
    const std::uint64_t round = report.rounds_used;
    for (std::size_t r = 0; r < receivers; ++r) needy[r] = receiver_state[r].decoded() ? 0 : 1;
    auto useful = [&](std::size_t j) {
      for (auto r : core.receivers_of(j)) {
        if (needy[r]) return true;
      }
      return false;
    };

    TransmitSet plan(senders);
    switch (cfg.policy) {
      case PolicyKind::round_robin:
        for (std::size_t step = 0; step < senders; ++step) {
          const std::size_t j = (cursor + step) % senders;
          if (useful(j)) {
            plan.insert(static_cast<NodeId>(j));
            cursor = j + 1;
            break;
          }
        }
        break;
      case PolicyKind::greedy_schedule:
        plan = greedy_round(core, needy);
        break;
      case PolicyKind::random_p: {
        Rng rng(derive_seed(cfg.seed, 0x72616e64ULL, round));
        for (std::size_t j = 0; j < senders; ++j) {
          if (rng.bernoulli(cfg.p) && useful(j)) plan.insert(static_cast<NodeId>(j));
        }
        break;
      }
    }
    // No transmission can reach an undecoded receiver: stuck for good.
    if (cfg.policy != PolicyKind::random_p && plan.empty()) break;

    // Decide packet contents with full knowledge of who will hear whom.
    const auto preview = round_step(core, plan);
    std::vector<std::size_t> message(senders, 0);
    std::vector<DynamicBitset> vectors(senders);
    for (auto j : plan.members()) {
      if (cfg.model == ContentModel::routing) {
        std::vector<std::size_t> demand(k, 0);
        for (auto r : core.receivers_of(j)) {
          if (!preview.received[r]) continue;
          for (std::size_t m = 0; m < k; ++m) {
            if (!receiver_state[r].has_message(m)) ++demand[m];
          }
        }
        message[j] = static_cast<std::size_t>(std::max_element(demand.begin(), demand.end()) - demand.begin());
      } else {
        vectors[j] = detail::random_vector(k, derive_seed(cfg.seed, round, j));
      }
    }

    TransmitSet wire(net.total_nodes());
    for (auto j : plan.members()) wire.insert(net.sender_id(j));
    const auto out = round_step(net, wire);
    std::size_t receptions = 0;
    for (std::size_t r = 0; r < receivers; ++r) {
      const NodeId v = net.receiver_id(r);
      if (!out.received[v]) continue;
      const std::size_t j = *out.source[v] - 1;
      if (cfg.model == ContentModel::routing) {
        receiver_state[r].receive_message(message[j]);
      } else {
        receiver_state[r].receive_vector(vectors[j]);
      }
      ++report.per_receiver_receptions[r];
      ++receptions;
    }
    report.total_receptions += receptions;
    ++report.rounds_used;
    report.series.push_back({report.rounds_used, receptions, min_rank()});
  }

  report.complete = all_decoded();
  for (const auto& st : receiver_state) {
    report.per_receiver_decoded.push_back(st.decoded());
    report.per_receiver_rank.push_back(st.rank());
  }
  report.throughput = report.rounds_used == 0 ? 0.0 : static_cast<double>(k) / static_cast<double>(report.rounds_used);
  return report;
}

}  // namespace radiolab
