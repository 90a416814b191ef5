#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "imexdde/problem.hpp"

namespace imexdde {

/// Ring of the most recent m + s states on the uniform grid t_k = t0 + k h.
///
/// Indices -m..0 are seeded from the history function at construction, so a
/// lookup of index n - m before any step has been taken returns phi(t_n - tau).
/// Each slot also caches the delayed-term value g(t_{k+m}, y_k), which is the
/// only time argument ever paired with state k.
class HistoryBuffer {
 public:
  HistoryBuffer(std::size_t delay_steps, std::size_t method_steps, double t0, double h, const TimeMap& history);

  [[nodiscard]] std::size_t delay_steps() const noexcept { return delay_steps_; }
  [[nodiscard]] std::size_t capacity() const noexcept { return slots_.size(); }
  [[nodiscard]] long newest_index() const noexcept { return newest_; }
  [[nodiscard]] double time(long index) const noexcept { return t0_ + static_cast<double>(index) * h_; }

  /// Appends the state for index newest_index() + 1, evicting the oldest slot.
  void push(Vector state);

  /// State at grid index `index`; throws if it was evicted or not yet computed.
  [[nodiscard]] const Vector& state(long index) const;
  [[nodiscard]] double stamp(long index) const;

  /// g(t_{index + m}, y_index), evaluated once per index.
  [[nodiscard]] const Vector& delayed_value(long index, const DelayedMap& g);

 private:
  struct Slot {
    long index = 0;
    double t = 0.0;
    Vector y;
    std::optional<Vector> g;
  };

  [[nodiscard]] std::size_t slot_of(long index) const noexcept;
  [[nodiscard]] const Slot& lookup(long index) const;

  std::size_t delay_steps_;
  double t0_;
  double h_;
  long newest_;
  std::vector<Slot> slots_;
};

}  // namespace imexdde
