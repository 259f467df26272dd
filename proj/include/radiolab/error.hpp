#pragma once

#include <stdexcept>
#include <string>

namespace radiolab {

// Malformed arguments, files or networks.
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// A request exceeds a hard computational budget (e.g. exhaustive enumeration).
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace radiolab
