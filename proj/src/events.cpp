#include "swarmsim/events.hpp"

#include <stdexcept>

namespace swarmsim {

std::uint64_t SimEngine::schedule(SimTime t, EventKind kind, PeerId peer,
                                  std::uint32_t snapshot_index) {
  if (t < now_) throw std::logic_error("SimEngine::schedule: event in the past");
  Event e;
  e.time = t;
  e.seq = next_seq_++;
  e.kind = kind;
  e.peer = peer;
  e.snapshot_index = snapshot_index;
  queue_.push(e);
  return e.seq;
}

void SimEngine::run_until(SimTime t_end) {
  if (t_end < now_) throw std::logic_error("SimEngine::run_until: t_end before clock");
  while (!queue_.empty() && queue_.top().time <= t_end) {
    const Event e = queue_.top();
    queue_.pop();
    now_ = e.time;
    ++processed_;
    if (handler_) handler_(e);
  }
  now_ = t_end;
}

}  // namespace swarmsim
