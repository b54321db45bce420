#pragma once

#include <stdexcept>
#include <string>

namespace fte {

// Error categories map onto the CLI exit codes: config 2, integration 3, io 4.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a model map produces a non-finite value; integrate() rethrows
// it as an IntegrationError tagged with the failing timestamp.
struct EvaluationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fte
