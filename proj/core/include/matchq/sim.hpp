#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "matchq/rates.hpp"
#include "matchq/stats.hpp"

namespace matchq::sim {

struct KPlayerSim {
  int k;
  double lambda;
};

// order must be FIFO, Packing or LIFO; the split policy is TwoQueueSim.
struct CentralSim {
  Rates2v2 rates;
  ServiceOrder order;
};

struct TwoQueueSim {
  Rates2v2 rates;
};

struct SideSim {
  SideRates rates;
};

struct ZoneSim {
  ZoneRates rates;
};

using Policy = std::variant<KPlayerSim, CentralSim, TwoQueueSim, SideSim, ZoneSim>;

struct ExperimentConfig {
  Policy policy;
  long long arrivals = 0;     // measured arrivals per replication
  long long warmup = 10000;   // leading arrivals discarded from the stats
  std::uint64_t seed = 0;
  int replications = 1;
  int jobs = 1;               // worker threads across replications
  bool captureTrace = false;  // keep per-arrival records of replication 0
};

struct EventRecord {
  double arrivalTime = 0.0;
  std::string cls;
  double matchTime = 0.0;
  double wait = 0.0;
};

struct SimResult {
  bool stable = true;     // analytic positive-recurrence of the configuration
  bool converged = true;  // stable and every measured arrival got matched
  long long censored = 0; // measured arrivals still waiting at the horizon
  // Per-class summaries in model order, then the player-weighted "all" class
  // (a team's wait counts once per carried player).
  std::vector<stats::WaitSummary> classes;
  std::vector<EventRecord> trace;  // measured arrivals of replication 0
};

SimResult simulate(const ExperimentConfig& config);

// Inter-arrival times of packed 2-player units (teams and paired individuals),
// n samples starting from an empty system at time 0.
std::vector<double> packed_interarrival_samples(const Rates2v2& r, long long n,
                                                std::uint64_t seed);

}  // namespace matchq::sim
