#pragma once

// Maximum single-round reception count over transmit sets: exhaustive
// Gray-code enumeration for small sender counts, hill climbing otherwise.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "radiolab/analytic.hpp"
#include "radiolab/error.hpp"
#include "radiolab/instance.hpp"
#include "radiolab/model.hpp"
#include "radiolab/parallel.hpp"
#include "radiolab/random.hpp"

namespace radiolab {

inline constexpr std::size_t kMaxExactSenders = 26;

enum class MaxMethod { exact, search, sampled };

inline const char* to_string(MaxMethod m) {
  switch (m) {
    case MaxMethod::exact: return "exact";
    case MaxMethod::search: return "search";
    case MaxMethod::sampled: return "sampled";
  }
  return "unknown";
}

struct MaxReceptionResult {
  std::size_t best_count = 0;
  TransmitSet witness;
  MaxMethod method = MaxMethod::exact;
  std::uint64_t subsets_examined = 0;
  bool exact = false;
};

namespace detail {

// Per-receiver transmitting-neighbor counters with O(deg) single flips.
class ReceptionCounter {
 public:
  explicit ReceptionCounter(const BipartiteRadioNet& net)
      : net_(&net), hits_(net.receiver_count(), 0), counted_(net.receiver_count(), 1), active_(net.sender_count()) {}

  // Only receivers with counted[r] != 0 contribute to count().
  ReceptionCounter(const BipartiteRadioNet& net, std::vector<std::uint8_t> counted)
      : net_(&net), hits_(net.receiver_count(), 0), counted_(std::move(counted)), active_(net.sender_count()) {
    if (counted_.size() != net.receiver_count()) throw input_error("counted mask size mismatch");
  }

  std::size_t count() const noexcept { return ones_; }
  const TransmitSet& active() const noexcept { return active_; }
  bool contains(std::size_t sender) const noexcept { return active_.contains(static_cast<NodeId>(sender)); }

  void flip(std::size_t sender) {
    if (contains(sender)) {
      for (auto r : net_->receivers_of(sender)) {
        const auto h = --hits_[r];
        if (!counted_[r]) continue;
        if (h == 0) --ones_;
        else if (h == 1) ++ones_;
      }
      active_.erase(static_cast<NodeId>(sender));
    } else {
      for (auto r : net_->receivers_of(sender)) {
        const auto h = ++hits_[r];
        if (!counted_[r]) continue;
        if (h == 1) ++ones_;
        else if (h == 2) --ones_;
      }
      active_.insert(static_cast<NodeId>(sender));
    }
  }

  // Change in count() if `sender` were flipped.
  long gain(std::size_t sender) const {
    long g = 0;
    const bool on = contains(sender);
    for (auto r : net_->receivers_of(sender)) {
      if (!counted_[r]) continue;
      const auto h = hits_[r];
      if (on) {
        if (h == 1) --g;
        else if (h == 2) ++g;
      } else {
        if (h == 0) ++g;
        else if (h == 1) --g;
      }
    }
    return g;
  }

 private:
  const BipartiteRadioNet* net_;
  std::vector<std::uint32_t> hits_;
  std::vector<std::uint8_t> counted_;
  TransmitSet active_;
  std::size_t ones_ = 0;
};

// Lexicographic order on transmit sets read as integers (highest bit first).
inline bool set_less(const TransmitSet& a, const TransmitSet& b) {
  const auto& wa = a.bits().words();
  const auto& wb = b.bits().words();
  for (std::size_t i = wa.size(); i-- > 0;) {
    if (wa[i] != wb[i]) return wa[i] < wb[i];
  }
  return false;
}

inline bool better(std::size_t count, const TransmitSet& set, std::size_t best_count, const TransmitSet& best_set) {
  return count > best_count || (count == best_count && set_less(set, best_set));
}

}  // namespace detail

// Enumerates all 2^{n'} transmit sets. Work is split into blocks by the high
// subset bits; each block is a Gray-code walk over the low bits. Ties go to
// the numerically smallest subset, so the result is independent of `workers`.
inline MaxReceptionResult max_receptions_exact(const BipartiteRadioNet& net, unsigned workers = 1) {
  const std::size_t senders = net.sender_count();
  if (senders > kMaxExactSenders) {
    throw budget_error("exact enumeration limited to " + std::to_string(kMaxExactSenders) + " senders (got " +
                       std::to_string(senders) + "); use search");
  }
  const std::size_t high_bits = senders > 12 ? 6 : 0;
  const std::size_t low_bits = senders - high_bits;
  const std::size_t blocks = std::size_t{1} << high_bits;

  struct Best {
    std::size_t count = 0;
    std::uint64_t mask = 0;
  };
  std::vector<Best> block_best(blocks);

  parallel_for(blocks, workers, [&](std::size_t block) {
    detail::ReceptionCounter counter(net);
    std::uint64_t mask = static_cast<std::uint64_t>(block) << low_bits;
    for (std::size_t j = low_bits; j < senders; ++j) {
      if ((mask >> j) & 1U) counter.flip(j);
    }
    Best best{counter.count(), mask};
    const std::uint64_t steps = std::uint64_t{1} << low_bits;
    for (std::uint64_t g = 1; g < steps; ++g) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(g));
      counter.flip(bit);
      mask ^= std::uint64_t{1} << bit;
      const std::size_t c = counter.count();
      if (c > best.count || (c == best.count && mask < best.mask)) best = {c, mask};
    }
    block_best[block] = best;
  });

  Best best = block_best.front();
  for (const auto& b : block_best) {
    if (b.count > best.count || (b.count == best.count && b.mask < best.mask)) best = b;
  }
  MaxReceptionResult result;
  result.best_count = best.count;
  result.witness = TransmitSet::from_mask(senders, best.mask);
  result.method = MaxMethod::exact;
  result.subsets_examined = std::uint64_t{1} << senders;
  result.exact = true;
  return result;
}

struct SearchOptions {
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  std::uint64_t flip_budget = std::uint64_t{1} << 24;
};

// Steepest-ascent single-flip hill climbing, started from every singleton
// set and then from `restarts` random sets of size n'/2^i (i cycling through
// 1..log2 n'). Each start climbs to a local maximum; a lower bound on the
// true maximum.
inline MaxReceptionResult max_receptions_search(const BipartiteRadioNet& net, const SearchOptions& options) {
  const std::size_t senders = net.sender_count();
  MaxReceptionResult result;
  result.method = MaxMethod::search;
  result.witness = TransmitSet(senders);
  result.best_count = round_step(net, result.witness).reception_count;
  result.subsets_examined = 1;
  std::uint64_t budget = options.flip_budget;

  auto climb = [&](detail::ReceptionCounter& counter) {
    while (budget > 0) {
      long best_gain = 0;
      std::size_t best_sender = senders;
      for (std::size_t j = 0; j < senders; ++j) {
        const long g = counter.gain(j);
        if (g > best_gain) {
          best_gain = g;
          best_sender = j;
        }
      }
      if (best_sender == senders) break;
      counter.flip(best_sender);
      --budget;
      ++result.subsets_examined;
    }
    if (detail::better(counter.count(), counter.active(), result.best_count, result.witness)) {
      result.best_count = counter.count();
      result.witness = counter.active();
    }
  };

  for (std::size_t j = 0; j < senders && budget > 0; ++j) {
    detail::ReceptionCounter counter(net);
    counter.flip(j);
    ++result.subsets_examined;
    climb(counter);
  }

  if (senders > 0) {
    const std::size_t levels = std::max<std::size_t>(1, floor_log2(senders));
    std::vector<std::size_t> pool(senders);
    for (std::size_t r = 0; r < options.restarts && budget > 0; ++r) {
      const std::size_t size = std::max<std::size_t>(1, senders >> (r % levels + 1));
      Rng rng(derive_seed(options.seed, r));
      for (std::size_t j = 0; j < senders; ++j) pool[j] = j;
      detail::ReceptionCounter counter(net);
      for (std::size_t k = 0; k < size; ++k) {
        std::swap(pool[k], pool[k + static_cast<std::size_t>(rng.below(senders - k))]);
        counter.flip(pool[k]);
      }
      ++result.subsets_examined;
      climb(counter);
    }
  }
  return result;
}

struct ThresholdReport {
  std::size_t best_count = 0;
  double c = 0.0;
  double threshold = 0.0;  // c * n'
  std::size_t receiver_count = 0;
  double fraction = 0.0;                      // best_count / receiver_count
  std::optional<double> family_fraction;      // 2c / log2 n = c / class_count
  bool vacuous = false;                       // threshold >= receiver_count
  bool pass = false;                          // best_count <= threshold
  bool exact = false;
};

inline ThresholdReport check_lemma_threshold(const BipartiteRadioNet& net, const MaxReceptionResult& max, double c) {
  if (!(c > 0.0)) throw input_error("threshold constant must be positive");
  ThresholdReport r;
  r.best_count = max.best_count;
  r.c = c;
  r.threshold = c * static_cast<double>(net.sender_count());
  r.receiver_count = net.receiver_count();
  r.fraction = r.receiver_count == 0 ? 0.0 : static_cast<double>(max.best_count) / static_cast<double>(r.receiver_count);
  if (net.class_count() > 0) r.family_fraction = c / static_cast<double>(net.class_count());
  r.vacuous = r.threshold >= static_cast<double>(r.receiver_count);
  r.pass = static_cast<double>(max.best_count) <= r.threshold;
  r.exact = max.exact;
  return r;
}

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t trials = 0;
};

// Averages the reception count of a fixed sender subset over `trials` fresh
// samples from the family. Trial t uses seed derive_seed(seed, t).
inline MonteCarloEstimate monte_carlo_expectation(std::uint64_t n, const std::vector<NodeId>& transmitters,
                                                  std::uint64_t trials, std::uint64_t seed, unsigned workers = 1) {
  const InstanceParams shape(n, seed);
  TransmitSet set(shape.n_prime());
  for (auto t : transmitters) set.insert(t);
  std::vector<std::uint32_t> counts(trials, 0);
  parallel_for(trials, workers, [&](std::size_t t) {
    const auto net = sample_instance(InstanceParams(n, derive_seed(seed, t)));
    counts[t] = static_cast<std::uint32_t>(round_step(net, set).reception_count);
  });
  MonteCarloEstimate est;
  est.trials = trials;
  if (trials == 0) return est;
  double sum = 0.0;
  for (auto c : counts) sum += c;
  est.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    double ss = 0.0;
    for (auto c : counts) ss += (c - est.mean) * (c - est.mean);
    est.standard_error = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
  }
  return est;
}

// Uses the first s senders, which is representative by exchangeability.
inline MonteCarloEstimate monte_carlo_expectation(const InstanceParams& params, std::size_t s, std::uint64_t trials,
                                                  unsigned workers = 1) {
  if (s > params.n_prime()) throw input_error("s exceeds n'");
  std::vector<NodeId> first(s);
  for (std::size_t j = 0; j < s; ++j) first[j] = static_cast<NodeId>(j);
  return monte_carlo_expectation(params.n(), first, trials, params.seed(), workers);
}

}  // namespace radiolab
