#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "sentinet/rng.hpp"

namespace sentinet::netsim {

enum class EventKind : uint8_t { PacketArrival, MessageDelivery, Timer, MiningResult };

// Deterministic discrete-event queue. Events pop in (fire_at, seq) order;
// seq is a monotone tiebreaker assigned at schedule time, so runs with the
// same seed and config replay bit-identically.
class EventQueue {
 public:
  uint64_t schedule_at(double fire_at, EventKind kind, std::function<void()> fn) {
    if (fire_at < now_) throw std::invalid_argument("cannot schedule in the past");
    uint64_t seq = next_seq_++;
    queue_.push(Event{fire_at, seq, kind, std::move(fn)});
    return seq;
  }

  uint64_t schedule_in(double delay, EventKind kind, std::function<void()> fn) {
    return schedule_at(now_ + delay, kind, std::move(fn));
  }

  // Processes every event with fire_at <= t_end, in order. Returns the
  // number of events processed.
  size_t run_until(double t_end) {
    if (t_end < now_) throw std::invalid_argument("t_end is in the past");
    size_t count = 0;
    while (!queue_.empty() && queue_.top().fire_at <= t_end) {
      Event ev = queue_.top();
      queue_.pop();
      now_ = ev.fire_at;
      if (trace_) trace_(ev.fire_at, ev.seq, ev.kind);
      ev.fn();
      ++count;
    }
    now_ = t_end;
    return count;
  }

  double now() const { return now_; }
  bool empty() const { return queue_.empty(); }
  size_t pending() const { return queue_.size(); }

  // Optional trace hook, used by the determinism checks.
  void set_trace(std::function<void(double, uint64_t, EventKind)> trace) {
    trace_ = std::move(trace);
  }

 private:
  struct Event {
    double fire_at;
    uint64_t seq;
    EventKind kind;
    std::function<void()> fn;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  double now_ = 0.0;
  uint64_t next_seq_ = 0;
  std::function<void(double, uint64_t, EventKind)> trace_;
};

struct TopologyConfig {
  int node_count = 0;
  bool full_mesh = true;                 // explicit edges only when false
  std::vector<std::pair<int, int>> edges;  // used when full_mesh == false
  double latency_min = 0.010;  // simulated seconds
  double latency_max = 0.100;
  double loss = 0.0;  // in [0, 1)
  uint64_t master_seed = 1;

  void validate() const {
    if (node_count < 1) throw std::invalid_argument("node count must be >= 1");
    if (loss < 0.0 || loss >= 1.0) throw std::invalid_argument("loss must be in [0,1)");
    if (latency_min < 0.0 || latency_min > latency_max)
      throw std::invalid_argument("latency bounds invalid");
  }
};

// Message-passing layer on top of the event queue: per-edge delivery with
// uniform latency and Bernoulli loss, both drawn from a dedicated stream of
// the master seed.
template <typename Message>
class Network {
 public:
  using Sink = std::function<void(int from, int to, const Message&)>;

  Network(EventQueue& queue, const TopologyConfig& config)
      : queue_(queue),
        config_(config),
        rng_(derive_seed(config.master_seed, "net")) {
    config_.validate();
    if (!config_.full_mesh) {
      adjacency_.assign(config_.node_count, std::vector<bool>(config_.node_count, false));
      for (auto [a, b] : config_.edges) {
        adjacency_[a][b] = true;
        adjacency_[b][a] = true;
      }
    }
  }

  void set_sink(Sink sink) { sink_ = std::move(sink); }

  bool has_edge(int from, int to) const {
    if (from == to) return false;
    if (config_.full_mesh) return from >= 0 && to >= 0 &&
                                  from < config_.node_count && to < config_.node_count;
    return adjacency_[from][to];
  }

  // Returns true if the message was scheduled, false if the loss model
  // dropped it. Throws when no edge connects the nodes.
  bool deliver(int from, int to, Message message) {
    if (!has_edge(from, to)) throw std::logic_error("no edge between nodes");
    ++sent_;
    if (config_.loss > 0.0 && rng_.uniform01() < config_.loss) {
      ++dropped_;
      return false;
    }
    double latency = rng_.uniform(config_.latency_min, config_.latency_max);
    queue_.schedule_in(latency, EventKind::MessageDelivery,
                       [this, from, to, msg = std::move(message)]() {
                         sink_(from, to, msg);
                       });
    return true;
  }

  uint64_t sent() const { return sent_; }
  uint64_t dropped() const { return dropped_; }

 private:
  EventQueue& queue_;
  TopologyConfig config_;
  Rng rng_;
  Sink sink_;
  std::vector<std::vector<bool>> adjacency_;
  uint64_t sent_ = 0;
  uint64_t dropped_ = 0;
};

}  // namespace sentinet::netsim
