#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>

namespace tvnrel {

class TimeoutError : public std::runtime_error {
public:
  TimeoutError() : std::runtime_error("time limit exceeded") {}
};

/// Cooperative time limit polled by the long-running pipeline stages.
class Deadline {
public:
  using clock = std::chrono::steady_clock;

  Deadline() = default;
  explicit Deadline(std::chrono::duration<double> budget)
      : at_(clock::now() + std::chrono::duration_cast<clock::duration>(budget)) {}

  [[nodiscard]] bool expired() const { return at_ && clock::now() >= *at_; }
  void check() const {
    if (expired())
      throw TimeoutError();
  }

private:
  std::optional<clock::time_point> at_;
};

} // namespace tvnrel
