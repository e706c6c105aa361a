#pragma once

#include <chrono>
#include <optional>
#include <string>

namespace ratroot {

/// Cooperative per-thread deadline. Long loops call check_deadline(), which
/// throws ResourceExhausted once the current scope's time is up.
class DeadlineScope {
 public:
  DeadlineScope(double seconds, std::string what);
  ~DeadlineScope();
  DeadlineScope(const DeadlineScope&) = delete;
  DeadlineScope& operator=(const DeadlineScope&) = delete;

 private:
  std::optional<std::chrono::steady_clock::time_point> saved_;
  std::string saved_what_;
};

void check_deadline();

}  // namespace ratroot
