#pragma once

#include <cstdint>
#include <stdexcept>

namespace clgen {

using node_t = std::int64_t;

// Contract violations and I/O failures; the CLI maps these to exit code 2.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace clgen
