#pragma once

#include <stdexcept>

namespace swclus {

// Unrecoverable configuration problem (mis-declared horizon/aspect bound,
// exhausted guess grid, merge levels full).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace swclus
