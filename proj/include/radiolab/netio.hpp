#pragma once

// Line-oriented `radionet v1` text format:
//
//   radionet v1 <sender_count> <receiver_count>
//   <class_index> <neighbor> <neighbor> ...      (one line per receiver)
//   radius2 <total_nodes> <void_count>           (H' only)

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "radiolab/error.hpp"
#include "radiolab/model.hpp"

namespace radiolab {

struct NetFile {
  BipartiteRadioNet core;
  std::optional<std::size_t> void_count;  // present iff the radius2 footer was read

  bool is_radius2() const noexcept { return void_count.has_value(); }
  Radius2Net radius2() const {
    if (!void_count) throw input_error("network file has no radius2 footer");
    return Radius2Net(core, *void_count);
  }
};

inline std::string format_net(const BipartiteRadioNet& net) {
  std::ostringstream os;
  os << "radionet v1 " << net.sender_count() << ' ' << net.receiver_count() << '\n';
  for (const auto& r : net.receivers()) {
    os << r.class_index;
    for (auto s : r.neighbors) os << ' ' << s;
    os << '\n';
  }
  return os.str();
}

inline std::string format_net(const Radius2Net& net) {
  return format_net(net.core()) + "radius2 " + std::to_string(net.total_nodes()) + ' ' +
         std::to_string(net.void_count()) + '\n';
}

namespace detail {

inline std::size_t parse_count(const std::string& token, std::size_t line) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    if (token.empty() || token[0] == '-') throw std::invalid_argument(token);
    v = std::stoull(token, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != token.size()) {
    throw input_error("line " + std::to_string(line) + ": expected a nonnegative integer, got '" + token + "'");
  }
  return static_cast<std::size_t>(v);
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

}  // namespace detail

inline NetFile parse_net(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> std::optional<std::vector<std::string>> {
    while (std::getline(is, line)) {
      ++lineno;
      auto tokens = detail::split_ws(line);
      if (!tokens.empty()) return tokens;
    }
    return std::nullopt;
  };

  auto header = next_line();
  if (!header || header->size() != 4 || (*header)[0] != "radionet" || (*header)[1] != "v1") {
    throw input_error("missing 'radionet v1 <senders> <receivers>' header");
  }
  const std::size_t senders = detail::parse_count((*header)[2], lineno);
  const std::size_t receiver_count = detail::parse_count((*header)[3], lineno);

  std::vector<Receiver> receivers;
  receivers.reserve(receiver_count);
  std::size_t classes = 0;
  for (std::size_t r = 0; r < receiver_count; ++r) {
    auto tokens = next_line();
    if (!tokens) throw input_error("expected " + std::to_string(receiver_count) + " receiver lines, got " + std::to_string(r));
    Receiver rec;
    rec.class_index = static_cast<std::uint32_t>(detail::parse_count((*tokens)[0], lineno));
    for (std::size_t k = 1; k < tokens->size(); ++k) {
      const std::size_t s = detail::parse_count((*tokens)[k], lineno);
      if (s >= senders) throw input_error("line " + std::to_string(lineno) + ": sender id " + std::to_string(s) + " out of range");
      rec.neighbors.push_back(static_cast<NodeId>(s));
    }
    if (!std::is_sorted(rec.neighbors.begin(), rec.neighbors.end()) ||
        std::adjacent_find(rec.neighbors.begin(), rec.neighbors.end()) != rec.neighbors.end()) {
      throw input_error("line " + std::to_string(lineno) + ": neighbors must be strictly increasing");
    }
    classes = std::max<std::size_t>(classes, rec.class_index);
    receivers.push_back(std::move(rec));
  }

  NetFile file{BipartiteRadioNet(senders, std::move(receivers), classes), std::nullopt};
  if (auto footer = next_line()) {
    if (footer->size() != 3 || (*footer)[0] != "radius2") {
      throw input_error("line " + std::to_string(lineno) + ": unexpected content after receiver lines");
    }
    const std::size_t total = detail::parse_count((*footer)[1], lineno);
    const std::size_t voids = detail::parse_count((*footer)[2], lineno);
    if (total != 1 + file.core.node_count() + voids) {
      throw input_error("radius2 footer inconsistent: total_nodes != 1 + senders + receivers + voids");
    }
    file.void_count = voids;
    if (next_line()) throw input_error("line " + std::to_string(lineno) + ": trailing content after radius2 footer");
  }
  return file;
}

}  // namespace radiolab
