#include "imexdde/history_buffer.hpp"

#include <string>

#include "imexdde/error.hpp"

namespace imexdde {

HistoryBuffer::HistoryBuffer(std::size_t delay_steps, std::size_t method_steps, double t0, double h,
                             const TimeMap& history)
    : delay_steps_(delay_steps), t0_(t0), h_(h), newest_(-static_cast<long>(delay_steps) - 1) {
  if (method_steps == 0) fail(ErrorCode::invalid_argument, "history buffer needs at least one method step");
  slots_.resize(delay_steps + method_steps);
  for (long k = -static_cast<long>(delay_steps); k <= 0; ++k) push(history(time(k)));
}

std::size_t HistoryBuffer::slot_of(long index) const noexcept {
  const auto cap = static_cast<long>(slots_.size());
  return static_cast<std::size_t>(((index % cap) + cap) % cap);
}

void HistoryBuffer::push(Vector state) {
  ++newest_;
  Slot& slot = slots_[slot_of(newest_)];
  slot.index = newest_;
  slot.t = time(newest_);
  slot.y = std::move(state);
  slot.g.reset();
}

const HistoryBuffer::Slot& HistoryBuffer::lookup(long index) const {
  const Slot& slot = slots_[slot_of(index)];
  if (index > newest_ || slot.index != index) {
    fail(ErrorCode::invalid_argument, "history index " + std::to_string(index) + " is not held (newest " +
                                          std::to_string(newest_) + ", capacity " +
                                          std::to_string(slots_.size()) + ")");
  }
  return slot;
}

const Vector& HistoryBuffer::state(long index) const { return lookup(index).y; }

double HistoryBuffer::stamp(long index) const { return lookup(index).t; }

const Vector& HistoryBuffer::delayed_value(long index, const DelayedMap& g) {
  static_cast<void>(lookup(index));
  Slot& slot = slots_[slot_of(index)];
  if (!slot.g) slot.g = g(time(index + static_cast<long>(delay_steps_)), slot.y);
  return *slot.g;
}

}  // namespace imexdde
