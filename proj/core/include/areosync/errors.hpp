#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace areosync {

/// Fatal model or integration failure: non-finite state, non-positive radius,
/// collision-regime moon separation. Carries enough context to identify the
/// offending satellite and time.
class SimulationError : public std::runtime_error {
 public:
  explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

/// Scenario/config validation failure. One message per violated constraint so
/// a caller can report every problem at once.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string out = "invalid configuration:";
    for (const auto& p : problems) {
      out += "\n  - " + p;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

}  // namespace areosync
