#pragma once

// Sampling from the degree-class family and the radius-2 wrapper around a
// sampled core.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "radiolab/error.hpp"
#include "radiolab/model.hpp"
#include "radiolab/parallel.hpp"
#include "radiolab/random.hpp"

namespace radiolab {

class InstanceParams {
 public:
  // n must be 4^m with m >= 1.
  InstanceParams(std::uint64_t n, std::uint64_t seed) : n_(n), seed_(seed) {
    std::uint64_t power = 4;
    unsigned m = 1;
    while (power < n && power <= (UINT64_MAX >> 2)) {
      power <<= 2;
      ++m;
    }
    if (n < 4 || power != n) throw input_error("n=" + std::to_string(n) + " is not a power of 4 (>= 4)");
    if (m > 31) throw input_error("n too large");
    classes_ = m;
  }

  std::uint64_t n() const noexcept { return n_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t class_count() const noexcept { return classes_; }
  std::size_t n_prime() const noexcept { return std::size_t{1} << classes_; }
  std::size_t receiver_count() const noexcept { return n_prime() * classes_; }
  std::size_t core_size() const noexcept { return n_prime() * (1 + classes_); }

 private:
  std::uint64_t n_;
  std::uint64_t seed_;
  std::size_t classes_ = 0;
};

namespace detail {

// Uniform `degree`-subset of [0, n) by partial Fisher-Yates, sorted.
inline std::vector<NodeId> sample_neighbors(std::size_t n, std::size_t degree, std::uint64_t seed) {
  std::vector<NodeId> pool(n);
  std::iota(pool.begin(), pool.end(), NodeId{0});
  Rng rng(seed);
  for (std::size_t k = 0; k < degree; ++k) {
    const std::size_t pick = k + static_cast<std::size_t>(rng.below(n - k));
    std::swap(pool[k], pool[pick]);
  }
  pool.resize(degree);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace detail

// Receivers are laid out class by class (class 1 first), n' per class. Each
// receiver's randomness depends only on (seed, receiver index), so the result
// does not depend on the worker count.
inline BipartiteRadioNet sample_instance(const InstanceParams& params, unsigned workers = 1) {
  const std::size_t np = params.n_prime();
  std::vector<Receiver> receivers(params.receiver_count());
  parallel_for(receivers.size(), workers, [&](std::size_t r) {
    const auto cls = static_cast<std::uint32_t>(r / np + 1);
    receivers[r].class_index = cls;
    receivers[r].neighbors = detail::sample_neighbors(np, std::size_t{1} << cls, derive_seed(params.seed(), r));
  });
  return BipartiteRadioNet(np, std::move(receivers), params.class_count());
}

inline Radius2Net build_radius2(const BipartiteRadioNet& core, std::uint64_t n) {
  const std::size_t eta = core.node_count();
  if (n < eta + 1) {
    throw input_error("n=" + std::to_string(n) + " leaves no room for the source (core has " + std::to_string(eta) + " nodes)");
  }
  return Radius2Net(core, static_cast<std::size_t>(n - eta - 1));
}

struct FamilySizeReport {
  std::uint64_t n = 0;
  std::size_t core_nodes = 0;  // n'(1 + m)
  bool pass = false;           // core_nodes < n
  bool small_n_exception = false;
};

inline FamilySizeReport family_size_check(const InstanceParams& params) {
  FamilySizeReport r;
  r.n = params.n();
  r.core_nodes = params.core_size();
  r.pass = r.core_nodes < r.n;
  r.small_n_exception = !r.pass && params.class_count() <= 2;
  return r;
}

}  // namespace radiolab
