#pragma once

// Radio network graphs and one synchronous round of the collision rule:
// a listening node receives iff exactly one of its neighbors transmits.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "radiolab/bits.hpp"
#include "radiolab/error.hpp"

namespace radiolab {

using NodeId = std::uint32_t;

struct Receiver {
  // 0 marks a receiver outside the degree-class family (hand-built nets).
  std::uint32_t class_index = 0;
  std::vector<NodeId> neighbors;  // sender indices, strictly increasing

  friend bool operator==(const Receiver&, const Receiver&) = default;
};

// Set of transmitting node ids for one round.
class TransmitSet {
 public:
  TransmitSet() = default;
  explicit TransmitSet(std::size_t width) : bits_(width) {}
  TransmitSet(std::size_t width, std::initializer_list<NodeId> members) : bits_(width) {
    for (auto m : members) insert(m);
  }

  static TransmitSet from_mask(std::size_t width, std::uint64_t mask) {
    TransmitSet t(width);
    for (std::size_t i = 0; i < width && i < 64; ++i) {
      if ((mask >> i) & 1U) t.bits_.set(i);
    }
    return t;
  }

  std::size_t width() const noexcept { return bits_.size(); }
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }
  bool contains(NodeId id) const noexcept { return bits_.test(id); }

  void insert(NodeId id) {
    if (id >= bits_.size()) {
      throw input_error("transmitter id " + std::to_string(id) + " outside [0, " + std::to_string(bits_.size()) + ")");
    }
    bits_.set(id);
  }
  void erase(NodeId id) noexcept {
    if (id < bits_.size()) bits_.set(id, false);
  }
  void toggle(NodeId id) {
    if (contains(id)) {
      erase(id);
    } else {
      insert(id);
    }
  }

  std::vector<NodeId> members() const {
    std::vector<NodeId> out;
    for (std::size_t i = 0; i < bits_.size(); ++i) {
      if (bits_.test(i)) out.push_back(static_cast<NodeId>(i));
    }
    return out;
  }

  std::string to_hex() const { return bits_.to_hex(); }
  const DynamicBitset& bits() const noexcept { return bits_; }

  friend bool operator==(const TransmitSet&, const TransmitSet&) = default;

 private:
  DynamicBitset bits_;
};

// Bipartite core network. Only receiver->sender adjacency is authoritative;
// the sender->receiver lists are derived once at construction.
class BipartiteRadioNet {
 public:
  BipartiteRadioNet() = default;
  BipartiteRadioNet(std::size_t sender_count, std::vector<Receiver> receivers, std::size_t class_count = 0)
      : sender_count_(sender_count), class_count_(class_count), receivers_(std::move(receivers)) {
    sender_adj_.resize(sender_count_);
    for (std::size_t r = 0; r < receivers_.size(); ++r) {
      for (auto s : receivers_[r].neighbors) {
        // Out-of-range ids are reported by validate(), not stored here.
        if (s < sender_count_) sender_adj_[s].push_back(static_cast<NodeId>(r));
      }
    }
  }

  std::size_t sender_count() const noexcept { return sender_count_; }
  std::size_t receiver_count() const noexcept { return receivers_.size(); }
  std::size_t class_count() const noexcept { return class_count_; }
  std::size_t node_count() const noexcept { return sender_count_ + receivers_.size(); }

  const std::vector<Receiver>& receivers() const noexcept { return receivers_; }
  const Receiver& receiver(std::size_t r) const { return receivers_.at(r); }
  std::span<const NodeId> receivers_of(std::size_t sender) const { return sender_adj_.at(sender); }

  std::size_t edge_count() const noexcept {
    std::size_t e = 0;
    for (const auto& r : receivers_) e += r.neighbors.size();
    return e;
  }

  friend bool operator==(const BipartiteRadioNet& a, const BipartiteRadioNet& b) {
    return a.sender_count_ == b.sender_count_ && a.class_count_ == b.class_count_ && a.receivers_ == b.receivers_;
  }

 private:
  std::size_t sender_count_ = 0;
  std::size_t class_count_ = 0;
  std::vector<Receiver> receivers_;
  std::vector<std::vector<NodeId>> sender_adj_;
};

// The core plus a source node adjacent to every sender and to `void_count`
// degree-1 filler nodes. Node ids: 0 is the source, then senders, receivers
// and void nodes in that order.
class Radius2Net {
 public:
  Radius2Net() = default;
  Radius2Net(BipartiteRadioNet core, std::size_t void_count) : core_(std::move(core)), void_count_(void_count) {}

  const BipartiteRadioNet& core() const noexcept { return core_; }
  std::size_t void_count() const noexcept { return void_count_; }
  std::size_t eta() const noexcept { return core_.node_count(); }
  std::size_t total_nodes() const noexcept { return 1 + eta() + void_count_; }

  static constexpr NodeId source_id() noexcept { return 0; }
  NodeId sender_id(std::size_t j) const noexcept { return static_cast<NodeId>(1 + j); }
  NodeId receiver_id(std::size_t r) const noexcept { return static_cast<NodeId>(1 + core_.sender_count() + r); }
  NodeId first_void_id() const noexcept { return static_cast<NodeId>(1 + eta()); }

  bool is_sender(NodeId v) const noexcept { return v >= 1 && v <= core_.sender_count(); }
  bool is_receiver(NodeId v) const noexcept { return v > core_.sender_count() && v <= eta(); }
  bool is_void(NodeId v) const noexcept { return v > eta() && v < total_nodes(); }

  // Calls fn(u) for every neighbor u of node v.
  template <typename Fn>
  void for_each_neighbor(NodeId v, Fn&& fn) const {
    const std::size_t senders = core_.sender_count();
    if (v == source_id()) {
      for (std::size_t j = 0; j < senders; ++j) fn(sender_id(j));
      for (std::size_t i = 0; i < void_count_; ++i) fn(static_cast<NodeId>(first_void_id() + i));
    } else if (is_sender(v)) {
      fn(source_id());
      for (auto r : core_.receivers_of(v - 1)) fn(receiver_id(r));
    } else if (is_receiver(v)) {
      for (auto s : core_.receiver(v - 1 - senders).neighbors) fn(sender_id(s));
    } else if (is_void(v)) {
      fn(source_id());
    }
  }

  friend bool operator==(const Radius2Net&, const Radius2Net&) = default;

 private:
  BipartiteRadioNet core_;
  std::size_t void_count_ = 0;
};

// Indexed by receiver (bipartite nets) or by node id (radius-2 nets).
struct RoundOutcome {
  std::vector<bool> received;
  std::size_t reception_count = 0;
  std::vector<std::optional<NodeId>> source;  // the unique transmitting neighbor, when received
};

namespace detail {

inline void check_transmitters(const TransmitSet& t, std::size_t limit) {
  if (t.width() <= limit) return;
  for (std::size_t i = limit; i < t.width(); ++i) {
    if (t.contains(static_cast<NodeId>(i))) {
      throw input_error("transmitter id " + std::to_string(i) + " outside [0, " + std::to_string(limit) + ")");
    }
  }
}

}  // namespace detail

// Senders in `transmitters` broadcast; every receiver listens.
inline RoundOutcome round_step(const BipartiteRadioNet& net, const TransmitSet& transmitters) {
  detail::check_transmitters(transmitters, net.sender_count());
  RoundOutcome out;
  out.received.assign(net.receiver_count(), false);
  out.source.assign(net.receiver_count(), std::nullopt);
  for (std::size_t r = 0; r < net.receiver_count(); ++r) {
    std::size_t hits = 0;
    NodeId from = 0;
    for (auto s : net.receiver(r).neighbors) {
      if (transmitters.contains(s)) {
        from = s;
        if (++hits > 1) break;
      }
    }
    if (hits == 1) {
      out.received[r] = true;
      out.source[r] = from;
      ++out.reception_count;
    }
  }
  return out;
}

// General node-uniform semantics over all nodes of H'. Transmitting nodes
// never receive.
inline RoundOutcome round_step(const Radius2Net& net, const TransmitSet& transmitters) {
  const std::size_t n = net.total_nodes();
  detail::check_transmitters(transmitters, n);
  std::vector<std::uint32_t> hits(n, 0);
  std::vector<NodeId> from(n, 0);
  for (std::size_t t = 0; t < transmitters.width() && t < n; ++t) {
    if (!transmitters.contains(static_cast<NodeId>(t))) continue;
    net.for_each_neighbor(static_cast<NodeId>(t), [&](NodeId u) {
      if (hits[u] < 2) ++hits[u];
      from[u] = static_cast<NodeId>(t);
    });
  }
  RoundOutcome out;
  out.received.assign(n, false);
  out.source.assign(n, std::nullopt);
  for (std::size_t v = 0; v < n; ++v) {
    if (hits[v] == 1 && !transmitters.contains(static_cast<NodeId>(v))) {
      out.received[v] = true;
      out.source[v] = from[v];
      ++out.reception_count;
    }
  }
  return out;
}

namespace detail {

inline std::optional<std::size_t> eccentricity(const Radius2Net& net, NodeId start) {
  const std::size_t n = net.total_nodes();
  std::vector<std::size_t> dist(n, SIZE_MAX);
  std::queue<NodeId> frontier;
  dist[start] = 0;
  frontier.push(start);
  std::size_t reached = 1;
  std::size_t ecc = 0;
  while (!frontier.empty()) {
    const NodeId v = frontier.front();
    frontier.pop();
    net.for_each_neighbor(v, [&](NodeId u) {
      if (dist[u] == SIZE_MAX) {
        dist[u] = dist[v] + 1;
        ecc = dist[u];
        ++reached;
        frontier.push(u);
      }
    });
  }
  if (reached != n) return std::nullopt;
  return ecc;
}

}  // namespace detail

// Minimum eccentricity by breadth-first layering; nullopt when the graph is
// disconnected. Void nodes are pairwise twins, so one of them stands for all.
inline std::optional<std::size_t> radius(const Radius2Net& net) {
  std::optional<std::size_t> best;
  const std::size_t last = net.void_count() > 0 ? net.first_void_id() + 1 : net.total_nodes();
  for (std::size_t v = 0; v < last; ++v) {
    auto ecc = detail::eccentricity(net, static_cast<NodeId>(v));
    if (!ecc) return std::nullopt;
    if (!best || *ecc < *best) best = ecc;
  }
  return best;
}

struct Violation {
  std::size_t receiver;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

// Structural checks always apply; with `family_degrees` each receiver must
// also sit in a class i >= 1 with exactly 2^i neighbors.
inline ValidationReport validate(const BipartiteRadioNet& net, bool family_degrees = true) {
  ValidationReport report;
  auto flag = [&](std::size_t r, std::string msg) { report.violations.push_back({r, std::move(msg)}); };
  for (std::size_t r = 0; r < net.receiver_count(); ++r) {
    const auto& rec = net.receiver(r);
    const auto& nb = rec.neighbors;
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (nb[k] >= net.sender_count()) flag(r, "neighbor out of range: " + std::to_string(nb[k]));
      if (k > 0 && nb[k] == nb[k - 1]) flag(r, "duplicate neighbor: " + std::to_string(nb[k]));
      if (k > 0 && nb[k] < nb[k - 1]) flag(r, "neighbors not sorted");
    }
    if (!family_degrees) continue;
    if (rec.class_index < 1 || rec.class_index >= 63) {
      flag(r, "class index out of range: " + std::to_string(rec.class_index));
      continue;
    }
    if (rec.class_index > net.class_count()) flag(r, "class index exceeds class count");
    if (nb.size() != (std::size_t{1} << rec.class_index)) {
      flag(r, "degree != 2^i (degree " + std::to_string(nb.size()) + ", class " + std::to_string(rec.class_index) + ")");
    }
  }
  return report;
}

}  // namespace radiolab
