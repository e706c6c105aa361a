#include "ratroot/deadline.hpp"

#include "ratroot/error.hpp"

namespace ratroot {

namespace {
thread_local std::optional<std::chrono::steady_clock::time_point> current;
thread_local std::string current_what;
}  // namespace

DeadlineScope::DeadlineScope(double seconds, std::string what) : saved_(current), saved_what_(current_what) {
  auto mine = std::chrono::steady_clock::now() +
              std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(seconds));
  if (!current || mine < *current) {
    current = mine;
    current_what = std::move(what);
  }
}

DeadlineScope::~DeadlineScope() {
  current = saved_;
  current_what = saved_what_;
}

void check_deadline() {
  if (current && std::chrono::steady_clock::now() > *current)
    throw ResourceExhausted("time limit exceeded in " + current_what);
}

}  // namespace ratroot
