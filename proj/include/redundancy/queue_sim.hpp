#pragma once

// Seeded discrete-event simulation of k unit-rate exponential FIFO servers fed by Poisson
// batch arrivals, dispatched by replication-d or MDS(n, m), with optional removal of
// redundant copies (queued or in service) and a non-intrusive virtual-job probe.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "params.hpp"

namespace redundancy {

enum class Policy { Mds, Replication };

inline const char* to_string(Policy p) { return p == Policy::Mds ? "mds" : "replication"; }

struct SimConfig {
  SystemParams params;
  Policy policy = Policy::Mds;
  bool removal = true;
  std::uint64_t horizon = 200000;  // batches generated
  std::uint64_t warmup = 10000;    // leading batches excluded from the samples
  double probe_rate = 0.1;
  std::uint64_t seed = 1;

  // Copies placed per batch.
  int copies_per_batch() const {
    return policy == Policy::Mds ? params.n + params.m : params.n * params.d;
  }

  void validate() const {
    if (!(params.lambda > 0.0) || !std::isfinite(params.lambda)) throw ValidationError("must be > 0", "lambda");
    if (params.n < 1) throw ValidationError("must be >= 1", "n");
    if (policy == Policy::Mds) {
      if (params.m < 0) throw ValidationError("must be >= 0", "m");
      if (params.k < params.n + params.m) throw ValidationError("must be >= n+m for mds", "k");
    } else {
      if (params.d < 1) throw ValidationError("must be >= 1", "d");
      if (params.k < params.d) throw ValidationError("must be >= d for replication", "k");
    }
    if (params.k < 1) throw ValidationError("must be >= 1", "k");
    if (horizon == 0) throw ValidationError("must be > 0", "horizon");
    if (warmup >= horizon) throw ValidationError("must be < horizon", "warmup");
    if (!(probe_rate >= 0.0 && probe_rate <= 1.0)) throw ValidationError("must lie in [0,1]", "probe_rate");
  }

  // Per-server offered load before removal; advisory only.
  std::optional<std::string> load_warning() const {
    const double load = params.lambda * copies_per_batch() / static_cast<double>(params.n);
    if (load < 1.0) return std::nullopt;
    std::ostringstream os;
    os << "offered per-server load before removal is " << load << " >= 1";
    if (!removal) os << " and removal is off: queues will grow without bound";
    return os.str();
  }

  bool operator==(const SimConfig&) const = default;
};

struct SimCounts {
  std::uint64_t batches = 0;      // batches contributing samples
  std::uint64_t arrivals = 0;     // all batches, including warmup
  std::uint64_t enqueued = 0;     // copies placed
  std::uint64_t served = 0;       // copies served to completion
  std::uint64_t removed = 0;      // copies removed (queued or in service)
  std::uint64_t preemptions = 0;  // removals of in-service copies
  std::uint64_t probes = 0;
  std::uint64_t events = 0;

  bool operator==(const SimCounts&) const = default;
};

struct SimResult {
  std::vector<double> batch_completion_samples;  // sorted
  std::vector<double> probe_sojourn_samples;     // sorted
  SimCounts counts;
  SimConfig config;
  std::vector<std::uint64_t> seeds;  // provenance; several after merging replications
  std::vector<std::string> warnings;

  bool operator==(const SimResult&) const = default;
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EventKind : std::uint8_t { BatchArrival, ServiceCompletion, ProbeResolution };

struct Event {
  double time = 0.0;
  std::uint64_t seq = 0;  // insertion order breaks ties deterministically
  EventKind kind = EventKind::BatchArrival;
  std::uint32_t slot = 0;
  std::uint32_t generation = 0;
};

// Min-heap on (time, seq).
class EventQueue {
 public:
  explicit EventQueue(std::size_t capacity = std::size_t{1} << 26) : capacity_(capacity) {}

  void push(double time, EventKind kind, std::uint32_t slot = 0, std::uint32_t generation = 0) {
    if (heap_.size() >= capacity_)
      throw SimulationError("event queue overflow: " + std::to_string(heap_.size()) + " pending events at t=" +
                            std::to_string(time));
    heap_.push(Event{time, next_seq_++, kind, slot, generation});
  }

  Event pop() {
    Event e = heap_.top();
    heap_.pop();
    return e;
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  std::size_t capacity_;
};

namespace detail {

// Independent streams per seed so the probe never perturbs the real dynamics.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

class Simulator {
 public:
  explicit Simulator(const SimConfig& cfg)
      : cfg_(cfg),
        main_rng_(make_rng(cfg.seed, 0)),
        probe_rng_(make_rng(cfg.seed, 1)),
        servers_(static_cast<std::size_t>(cfg.params.k)),
        server_pick_(0, static_cast<std::uint32_t>(cfg.params.k - 1)) {}

  SimResult run() {
    const double batch_rate = cfg_.params.lambda * cfg_.params.k / static_cast<double>(cfg_.params.n);
    std::exponential_distribution<double> interarrival(batch_rate);
    events_.push(interarrival(main_rng_), EventKind::BatchArrival);

    while (!events_.empty()) {
      const Event e = events_.pop();
      now_ = e.time;
      ++result_.counts.events;
      switch (e.kind) {
        case EventKind::BatchArrival:
          on_arrival();
          if (result_.counts.arrivals < cfg_.horizon) events_.push(now_ + interarrival(main_rng_), EventKind::BatchArrival);
          break;
        case EventKind::ServiceCompletion:
          on_completion(e.slot, e.generation);
          break;
        case EventKind::ProbeResolution:
          result_.probe_sojourn_samples.push_back(now_ - probes_[e.slot].tagged_at);
          break;
      }
    }

    if (result_.counts.enqueued != result_.counts.served + result_.counts.removed)
      throw SimulationError("copy conservation violated");
    std::sort(result_.batch_completion_samples.begin(), result_.batch_completion_samples.end());
    std::sort(result_.probe_sojourn_samples.begin(), result_.probe_sojourn_samples.end());
    result_.config = cfg_;
    result_.seeds = {cfg_.seed};
    if (auto w = cfg_.load_warning()) result_.warnings.push_back(*w);
    return std::move(result_);
  }

 private:
  enum class CopyState : std::uint8_t { Free, Queued, InService, Done, Removed };

  struct Copy {
    std::uint64_t batch = 0;
    std::uint32_t job = 0;  // job within the batch (replication); 0 for mds
    std::uint32_t server = 0;
    std::uint32_t generation = 0;
    CopyState state = CopyState::Free;
  };

  struct Handle {
    std::uint32_t slot;
    std::uint32_t generation;
  };

  struct Server {
    std::deque<Handle> queue;  // may hold stale handles of removed copies
    std::optional<std::uint32_t> in_service;
  };

  struct Batch {
    double arrival = 0.0;
    std::vector<std::uint32_t> copies;
    std::vector<bool> job_done;
    int completed = 0;  // copies (mds) or jobs (replication) done
    int outstanding = 0;
    bool complete = false;
  };

  struct Probe {
    double tagged_at = 0.0;
    std::size_t waiting_on = 0;
  };

  std::uint32_t allocate_copy() {
    std::uint32_t slot;
    if (!free_slots_.empty()) {
      slot = free_slots_.back();
      free_slots_.pop_back();
    } else {
      slot = static_cast<std::uint32_t>(copies_.size());
      copies_.emplace_back();
    }
    ++copies_[slot].generation;
    return slot;
  }

  bool live_queued(const Handle& h) const {
    const Copy& c = copies_[h.slot];
    return c.generation == h.generation && c.state == CopyState::Queued;
  }

  std::vector<std::uint32_t> sample_servers(int count) {
    std::vector<std::uint32_t> picked;
    picked.reserve(static_cast<std::size_t>(count));
    while (picked.size() < static_cast<std::size_t>(count)) {
      const std::uint32_t s = server_pick_(main_rng_);
      if (std::find(picked.begin(), picked.end(), s) == picked.end()) picked.push_back(s);
    }
    return picked;
  }

  void tag_probe() {
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(cfg_.params.k - 1));
    const Server& server = servers_[pick(probe_rng_)];
    const auto id = static_cast<std::uint32_t>(probes_.size());
    probes_.push_back(Probe{now_, 0});
    ++result_.counts.probes;
    if (server.in_service) watch(*server.in_service, id);
    for (const Handle& h : server.queue)
      if (live_queued(h)) watch(h.slot, id);
    if (probes_[id].waiting_on == 0) resolve_probe(id);
  }

  void watch(std::uint32_t slot, std::uint32_t probe) {
    watchers_[slot].push_back(probe);
    ++probes_[probe].waiting_on;
  }

  void resolve_probe(std::uint32_t probe) {
    events_.push(now_ + unit_exp_(probe_rng_), EventKind::ProbeResolution, probe);
  }

  void on_arrival() {
    const std::uint64_t id = result_.counts.arrivals++;
    if (id >= cfg_.warmup && cfg_.probe_rate > 0.0 && unit_(probe_rng_) < cfg_.probe_rate) tag_probe();

    Batch batch;
    batch.arrival = now_;
    auto place = [&](std::uint32_t job, std::uint32_t server) {
      const std::uint32_t slot = allocate_copy();
      Copy& c = copies_[slot];
      c.batch = id;
      c.job = job;
      c.server = server;
      c.state = CopyState::Queued;
      batch.copies.push_back(slot);
      ++batch.outstanding;
      ++result_.counts.enqueued;
      servers_[server].queue.push_back(Handle{slot, c.generation});
    };
    if (cfg_.policy == Policy::Mds) {
      for (std::uint32_t s : sample_servers(cfg_.params.n + cfg_.params.m)) place(0, s);
    } else {
      batch.job_done.assign(static_cast<std::size_t>(cfg_.params.n), false);
      for (int j = 0; j < cfg_.params.n; ++j)
        for (std::uint32_t s : sample_servers(cfg_.params.d)) place(static_cast<std::uint32_t>(j), s);
    }
    const std::vector<std::uint32_t> placed = batch.copies;
    batches_.emplace(id, std::move(batch));
    for (std::uint32_t slot : placed) {
      Server& server = servers_[copies_[slot].server];
      if (!server.in_service) start_next(copies_[slot].server);
    }
  }

  void start_next(std::uint32_t server_id) {
    Server& server = servers_[server_id];
    server.in_service.reset();
    while (!server.queue.empty()) {
      const Handle h = server.queue.front();
      server.queue.pop_front();
      if (!live_queued(h)) continue;
      Copy& c = copies_[h.slot];
      c.state = CopyState::InService;
      server.in_service = h.slot;
      events_.push(now_ + unit_exp_(main_rng_), EventKind::ServiceCompletion, h.slot, h.generation);
      return;
    }
  }

  // Copy leaves the system (served or removed): wake probes, free the slot.
  void depart(std::uint32_t slot, Batch& batch) {
    if (auto it = watchers_.find(slot); it != watchers_.end()) {
      for (std::uint32_t probe : it->second)
        if (--probes_[probe].waiting_on == 0) resolve_probe(probe);
      watchers_.erase(it);
    }
    --batch.outstanding;
    free_slots_.push_back(slot);
  }

  void remove_copy(std::uint32_t slot, Batch& batch) {
    Copy& c = copies_[slot];
    if (c.state != CopyState::Queued && c.state != CopyState::InService) return;
    const bool in_service = c.state == CopyState::InService;
    c.state = CopyState::Removed;
    ++result_.counts.removed;
    if (in_service) {
      ++result_.counts.preemptions;
      start_next(c.server);
    }
    depart(slot, batch);
  }

  void complete_batch(std::uint64_t id, Batch& batch) {
    batch.complete = true;
    if (id >= cfg_.warmup) {
      result_.batch_completion_samples.push_back(now_ - batch.arrival);
      ++result_.counts.batches;
    }
  }

  void on_completion(std::uint32_t slot, std::uint32_t generation) {
    Copy& c = copies_[slot];
    if (c.generation != generation || c.state != CopyState::InService) return;  // removed meanwhile
    c.state = CopyState::Done;
    ++result_.counts.served;
    const std::uint64_t id = c.batch;
    const std::uint32_t job = c.job;
    start_next(c.server);

    auto it = batches_.find(id);
    Batch& batch = it->second;
    depart(slot, batch);

    if (cfg_.policy == Policy::Mds) {
      if (!batch.complete && ++batch.completed == cfg_.params.n) {
        complete_batch(id, batch);
        if (cfg_.removal)
          for (std::uint32_t s : batch.copies)
            if (copies_[s].batch == id) remove_copy(s, batch);
      }
    } else if (!batch.job_done[job]) {
      batch.job_done[job] = true;
      if (cfg_.removal)
        for (std::uint32_t s : batch.copies)
          if (copies_[s].batch == id && copies_[s].job == job) remove_copy(s, batch);
      if (++batch.completed == cfg_.params.n) complete_batch(id, batch);
    }
    if (batch.complete && batch.outstanding == 0) batches_.erase(it);
  }

  SimConfig cfg_;
  std::mt19937_64 main_rng_;
  std::mt19937_64 probe_rng_;
  std::vector<Server> servers_;
  std::uniform_int_distribution<std::uint32_t> server_pick_;
  std::exponential_distribution<double> unit_exp_{1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  EventQueue events_;
  std::vector<Copy> copies_;
  std::vector<std::uint32_t> free_slots_;
  std::unordered_map<std::uint64_t, Batch> batches_;
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> watchers_;
  std::vector<Probe> probes_;
  double now_ = 0.0;
  SimResult result_;
};

}  // namespace detail

// Runs one replication. Single-threaded and deterministic in config.seed.
inline SimResult run(const SimConfig& config) {
  config.validate();
  return detail::Simulator(config).run();
}

// Concatenates independent replications of the same configuration.
inline SimResult merge(const std::vector<SimResult>& parts) {
  if (parts.empty()) throw ValidationError("nothing to merge", "results");
  SimResult out;
  out.config = parts.front().config;
  for (const auto& p : parts) {
    out.batch_completion_samples.insert(out.batch_completion_samples.end(), p.batch_completion_samples.begin(),
                                        p.batch_completion_samples.end());
    out.probe_sojourn_samples.insert(out.probe_sojourn_samples.end(), p.probe_sojourn_samples.begin(),
                                     p.probe_sojourn_samples.end());
    out.seeds.insert(out.seeds.end(), p.seeds.begin(), p.seeds.end());
    for (const auto& w : p.warnings)
      if (std::find(out.warnings.begin(), out.warnings.end(), w) == out.warnings.end()) out.warnings.push_back(w);
    out.counts.batches += p.counts.batches;
    out.counts.arrivals += p.counts.arrivals;
    out.counts.enqueued += p.counts.enqueued;
    out.counts.served += p.counts.served;
    out.counts.removed += p.counts.removed;
    out.counts.preemptions += p.counts.preemptions;
    out.counts.probes += p.counts.probes;
    out.counts.events += p.counts.events;
  }
  std::sort(out.batch_completion_samples.begin(), out.batch_completion_samples.end());
  std::sort(out.probe_sojourn_samples.begin(), out.probe_sojourn_samples.end());
  return out;
}

inline double mean(const std::vector<double>& samples) {
  if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
}

}  // namespace redundancy
