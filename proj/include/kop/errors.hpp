#pragma once

#include <stdexcept>
#include <string>

namespace kop {

// Malformed input: bad documents, out-of-range agents/points, undeclared
// propositions, invalid scenario parameters.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configured resource limit exceeded (run budget during system generation).
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace kop
