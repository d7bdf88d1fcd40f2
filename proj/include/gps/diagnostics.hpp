#pragma once

#include <string>
#include <vector>

namespace gps {

/// Collects non-fatal warnings raised while solving.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
};

inline void warn(Diagnostics* diag, std::string message) {
  if (diag) diag->warn(std::move(message));
}

}  // namespace gps
