#pragma once

#include <cstdint>
#include <queue>
#include <vector>

namespace uavsim {

/// Simulation time in integer nanoseconds.
using SimTime = std::int64_t;

inline constexpr SimTime kNanosPerSecond = 1'000'000'000;

inline double to_seconds(SimTime t) { return static_cast<double>(t) * 1e-9; }

/// Time-ordered event queue. Events at the same time pop by ascending
/// `priority`, then in insertion order, which keeps runs deterministic.
template <typename Payload>
class EventQueue {
 public:
  struct Event {
    SimTime time = 0;
    int priority = 0;
    std::uint64_t order = 0;
    Payload payload{};
  };

  void schedule(SimTime time, int priority, Payload payload) {
    heap_.push(Event{time, priority, next_order_++, std::move(payload)});
  }

  bool empty() const { return heap_.empty(); }

  Event pop() {
    Event e = heap_.top();
    heap_.pop();
    return e;
  }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      if (a.priority != b.priority) return a.priority > b.priority;
      return a.order > b.order;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_order_ = 0;
};

}  // namespace uavsim
