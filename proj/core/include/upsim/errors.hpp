#pragma once

#include <stdexcept>
#include <string>

namespace upsim {

// Bad user-supplied configuration. The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A runtime consistency check failed (conservation, scheduling contract, ...).
// The CLI maps this to exit code 3.
struct InvariantError : std::logic_error {
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace upsim
