#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gg {

/// Bad user input (malformed file, non-prime argument, ...). CLI exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A documented operation precondition was violated by the caller.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A search ran out of its node or wall-clock allowance. Callers must surface
/// this as INCONCLUSIVE or a partial-result error, never as PASS.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what, std::uint64_t nodes)
      : std::runtime_error(what), nodes_used(nodes) {}
  std::uint64_t nodes_used = 0;
};

/// Node counter plus optional deadline shared by the backtracking searches.
/// charge() is called on the hot path, so the clock is only consulted every
/// few thousand charges.
class Budget {
 public:
  Budget() = default;
  Budget(std::uint64_t max_nodes, double max_seconds) : max_nodes_(max_nodes) {
    if (max_seconds > 0) {
      timed_ = true;
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(max_seconds));
    }
  }

  static Budget unlimited() { return Budget(); }
  static Budget nodes(std::uint64_t n) { return Budget(n, 0.0); }

  void charge(std::uint64_t n = 1) {
    used_ += n;
    if (max_nodes_ && used_ > max_nodes_)
      throw BudgetExceeded("search node budget exhausted", used_);
    if (timed_ && (check_countdown_ += n) >= 65536) {
      check_countdown_ = 0;
      if (std::chrono::steady_clock::now() > deadline_)
        throw BudgetExceeded("search time budget exhausted", used_);
    }
  }

  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t max_nodes_ = 0;  // 0 = unbounded
  std::uint64_t used_ = 0;
  std::uint64_t check_countdown_ = 0;
  bool timed_ = false;
  std::chrono::steady_clock::time_point deadline_{};
};

}  // namespace gg
