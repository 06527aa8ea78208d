#include "matchq/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <optional>
#include <thread>
#include <utility>

#include "matchq/errors.hpp"
#include "matchq/rng.hpp"

namespace matchq::sim {
namespace {

// Always-on invariant check; the queue-state invariants are verified, not assumed.
void check(bool cond, const char* what) {
  if (!cond) throw ModelError(what);
}

struct Entity {
  double arrivalTime = 0.0;
  long long index = 0;  // 1-based arrival sequence number
  int cls = 0;
};

// Records matched entities of one replication into per-class accumulators.
// Class slot layout: model classes first, player-weighted "all" last; a model
// with a single undifferentiated class uses only the "all" slot.
struct Recorder {
  long long warmup = 0;
  long long arrivals = 0;
  int nModelClasses = 0;
  const std::vector<int>* playersPer = nullptr;
  const std::vector<std::string>* labels = nullptr;
  bool captureTrace = false;

  std::vector<stats::Accumulator> acc;
  std::vector<std::pair<long long, EventRecord>> trace;
  long long matchedMeasured = 0;

  void init() { acc.assign(nModelClasses + 1, {}); }

  // Entities of one match are recorded in arrival order so that policies
  // which form identical matches produce bit-identical statistics.
  void match(std::vector<Entity> members, double now) {
    std::sort(members.begin(), members.end(),
              [](const Entity& a, const Entity& b) { return a.index < b.index; });
    for (const Entity& e : members) {
      if (e.index <= warmup || e.index > warmup + arrivals) continue;
      const double w = now - e.arrivalTime;
      if (nModelClasses > 0) acc[static_cast<std::size_t>(e.cls)].update(w);
      for (int i = 0; i < (*playersPer)[static_cast<std::size_t>(e.cls)]; ++i)
        acc.back().update(w);
      ++matchedMeasured;
      if (captureTrace) {
        const std::string& label =
            (*labels)[static_cast<std::size_t>(std::min(e.cls, nModelClasses))];
        trace.emplace_back(e.index, EventRecord{e.arrivalTime, label, now,
                                                 now - e.arrivalTime});
      }
    }
  }
};

struct KPlayerPol {
  int k;
  std::deque<Entity> q;

  void arrive(const Entity& e, Recorder& r) {
    q.push_back(e);
    if (static_cast<int>(q.size()) == k) {
      r.match({q.begin(), q.end()}, e.arrivalTime);
      q.clear();
    }
  }
};

// Central 2v2 queue under FIFO or LIFO; at most three individuals and one
// intact team can wait, and a team never waits alongside two individuals.
struct CentralPol {
  ServiceOrder order;
  std::deque<Entity> inds;
  std::optional<Entity> team;

  void arrive(const Entity& e, Recorder& r) {
    const double now = e.arrivalTime;
    check(!(team && inds.size() >= 2), "central queue held a launchable group");
    if (e.cls == 0) {
      inds.push_back(e);
      if (team && inds.size() >= 2) {
        r.match({*team, inds[0], inds[1]}, now);
        team.reset();
        inds.erase(inds.begin(), inds.begin() + 2);
      } else if (inds.size() == 4) {
        r.match({inds.begin(), inds.end()}, now);
        inds.clear();
      }
    } else {
      if (team) {
        r.match({*team, e}, now);
        team.reset();
      } else if (inds.size() >= 2) {
        Entity a, b;
        if (order == ServiceOrder::LIFO) {
          a = inds.back();
          inds.pop_back();
          b = inds.back();
          inds.pop_back();
        } else {
          a = inds.front();
          inds.pop_front();
          b = inds.front();
          inds.pop_front();
        }
        r.match({e, a, b}, now);
      } else {
        team = e;
      }
    }
    check(inds.size() <= (team ? 1u : 3u), "central queue exceeded capacity");
  }
};

// Central queue under Packing: waiting players live in 2-player units (intact
// teams or paired individuals) plus at most one half-filled unit; a game
// launches the moment two complete units exist.
struct PackingPol {
  std::deque<std::vector<Entity>> units;
  std::optional<Entity> half;

  void arrive(const Entity& e, Recorder& r) {
    if (e.cls == 0) {
      if (half) {
        units.push_back({*half, e});
        half.reset();
      } else {
        half = e;
      }
    } else {
      units.push_back({e});
    }
    if (units.size() == 2) {
      std::vector<Entity> members(units[0]);
      members.insert(members.end(), units[1].begin(), units[1].end());
      r.match(std::move(members), e.arrivalTime);
      units.clear();
    }
    check(units.size() <= 1, "packing queue held two complete units");
  }
};

struct TwoQueuePol {
  std::deque<Entity> inds;
  std::optional<Entity> team;

  void arrive(const Entity& e, Recorder& r) {
    if (e.cls == 0) {
      inds.push_back(e);
      if (inds.size() == 4) {
        r.match({inds.begin(), inds.end()}, e.arrivalTime);
        inds.clear();
      }
    } else {
      if (team) {
        r.match({*team, e}, e.arrivalTime);
        team.reset();
      } else {
        team = e;
      }
    }
  }
};

// Side-selection queue: a match needs one player on each side; A and B insist
// on their side, C fills whichever side is short, and two waiting-free C's
// pair with each other. At most one side has waiting players, and a C waits
// only in an otherwise empty system.
struct SidePol {
  std::deque<Entity> qa, qb;
  std::optional<Entity> cw;

  void arrive(const Entity& e, Recorder& r) {
    const double now = e.arrivalTime;
    check(qa.empty() || qb.empty(), "both sides held waiting players");
    check(!cw || (qa.empty() && qb.empty()), "a C waited in a nonempty system");
    auto pop_front = [now, &r, &e](std::deque<Entity>& q) {
      r.match({q.front(), e}, now);
      q.pop_front();
    };
    if (e.cls == 0) {
      if (!qb.empty()) pop_front(qb);
      else if (cw) {
        r.match({*cw, e}, now);
        cw.reset();
      } else qa.push_back(e);
    } else if (e.cls == 1) {
      if (!qa.empty()) pop_front(qa);
      else if (cw) {
        r.match({*cw, e}, now);
        cw.reset();
      } else qb.push_back(e);
    } else {
      if (!qa.empty()) pop_front(qa);
      else if (!qb.empty()) pop_front(qb);
      else if (cw) {
        r.match({*cw, e}, now);
        cw.reset();
      } else cw = e;
    }
  }
};

// Two-zone queue: A and B play only in their zone, C plays anywhere; a C
// arrival finding both zones occupied takes the longer-waiting player.
struct ZonePol {
  std::deque<Entity> za, zb, zc;

  void arrive(const Entity& e, Recorder& r) {
    const double now = e.arrivalTime;
    check(za.size() <= 1 && zb.size() <= 1 && zc.size() <= 1,
          "a zone held two waiting players");
    check(zc.empty() || (za.empty() && zb.empty()),
          "a C waited in a nonempty system");
    auto pop_front = [now, &r, &e](std::deque<Entity>& q) {
      r.match({q.front(), e}, now);
      q.pop_front();
    };
    if (e.cls == 0) {
      if (!za.empty()) pop_front(za);
      else if (!zc.empty()) pop_front(zc);
      else za.push_back(e);
    } else if (e.cls == 1) {
      if (!zb.empty()) pop_front(zb);
      else if (!zc.empty()) pop_front(zc);
      else zb.push_back(e);
    } else {
      if (!za.empty() && !zb.empty()) {
        pop_front(za.front().index < zb.front().index ? za : zb);
      } else if (!za.empty()) pop_front(za);
      else if (!zb.empty()) pop_front(zb);
      else if (!zc.empty()) pop_front(zc);
      else zc.push_back(e);
    }
  }
};

// Static description of one policy's arrival stream and class layout.
struct StreamSpec {
  double entityRate = 0.0;
  std::vector<double> classRates;  // one per sampled class; empty = one class
  int nModelClasses = 0;
  std::vector<int> playersPer;
  std::vector<std::string> labels;  // model classes then "all"
  bool stable = true;
};

StreamSpec describe(const Policy& policy) {
  StreamSpec s;
  if (const auto* kp = std::get_if<KPlayerSim>(&policy)) {
    if (kp->k < 1) throw DomainError("k must be a positive integer");
    if (!(kp->lambda > 0.0) || !std::isfinite(kp->lambda))
      throw DomainError("lambda must be a finite positive rate");
    s.entityRate = kp->lambda;
    s.nModelClasses = 0;
    s.playersPer = {1};
    s.labels = {"all"};
  } else if (const auto* c = std::get_if<CentralSim>(&policy)) {
    if (c->order == ServiceOrder::TwoQueue)
      throw DomainError("the split policy is its own mechanism");
    s.entityRate = c->rates.lambda1 + c->rates.lambda2;
    s.classRates = {c->rates.lambda1, c->rates.lambda2};
    s.nModelClasses = 2;
    s.playersPer = {1, 2};
    s.labels = {"individual", "team", "all"};
  } else if (const auto* t = std::get_if<TwoQueueSim>(&policy)) {
    s.entityRate = t->rates.lambda1 + t->rates.lambda2;
    s.classRates = {t->rates.lambda1, t->rates.lambda2};
    s.nModelClasses = 2;
    s.playersPer = {1, 2};
    s.labels = {"individual", "team", "all"};
  } else if (const auto* sd = std::get_if<SideSim>(&policy)) {
    s.entityRate = sd->rates.total();
    s.classRates = {sd->rates.lambdaA, sd->rates.lambdaB, sd->rates.lambdaC};
    s.nModelClasses = 3;
    s.playersPer = {1, 1, 1};
    s.labels = {"A", "B", "C", "all"};
    s.stable = sd->rates.stable;
  } else {
    const auto& z = std::get<ZoneSim>(policy);
    s.entityRate = z.rates.total();
    s.classRates = {z.rates.lambdaA, z.rates.lambdaB, z.rates.lambdaC};
    s.nModelClasses = 3;
    s.playersPer = {1, 1, 1};
    s.labels = {"A", "B", "C", "all"};
  }
  return s;
}

struct RepOut {
  std::vector<stats::Accumulator> acc;
  std::vector<std::pair<long long, EventRecord>> trace;
  long long censored = 0;
};

template <class Pol>
RepOut run_rep(Pol pol, const StreamSpec& spec, const ExperimentConfig& cfg,
               int rep) {
  Recorder rec;
  rec.warmup = cfg.warmup;
  rec.arrivals = cfg.arrivals;
  rec.nModelClasses = spec.nModelClasses;
  rec.playersPer = &spec.playersPer;
  rec.labels = &spec.labels;
  rec.captureTrace = cfg.captureTrace && rep == 0;
  rec.init();

  CounterRng rng(CounterRng::derive(cfg.seed, static_cast<std::uint64_t>(rep)));
  const long long cap = 3 * (cfg.warmup + cfg.arrivals) + 1000;
  double t = 0.0;
  long long idx = 0;
  while (rec.matchedMeasured < cfg.arrivals && idx < cap) {
    t += rng.next_exponential(spec.entityRate);
    ++idx;
    int cls = 0;
    if (!spec.classRates.empty()) {
      const double u = rng.next_unit() * spec.entityRate;
      double edge = 0.0;
      cls = static_cast<int>(spec.classRates.size()) - 1;
      for (std::size_t i = 0; i + 1 < spec.classRates.size(); ++i) {
        edge += spec.classRates[i];
        if (u < edge) {
          cls = static_cast<int>(i);
          break;
        }
      }
    }
    pol.arrive(Entity{t, idx, cls}, rec);
  }

  RepOut out;
  out.acc = std::move(rec.acc);
  out.trace = std::move(rec.trace);
  out.censored = cfg.arrivals - rec.matchedMeasured;
  return out;
}

RepOut dispatch_rep(const ExperimentConfig& cfg, const StreamSpec& spec,
                    int rep) {
  if (const auto* kp = std::get_if<KPlayerSim>(&cfg.policy))
    return run_rep(KPlayerPol{kp->k, {}}, spec, cfg, rep);
  if (const auto* c = std::get_if<CentralSim>(&cfg.policy)) {
    if (c->order == ServiceOrder::Packing)
      return run_rep(PackingPol{}, spec, cfg, rep);
    return run_rep(CentralPol{c->order, {}, {}}, spec, cfg, rep);
  }
  if (std::holds_alternative<TwoQueueSim>(cfg.policy))
    return run_rep(TwoQueuePol{}, spec, cfg, rep);
  if (std::holds_alternative<SideSim>(cfg.policy))
    return run_rep(SidePol{}, spec, cfg, rep);
  return run_rep(ZonePol{}, spec, cfg, rep);
}

}  // namespace

SimResult simulate(const ExperimentConfig& config) {
  if (config.arrivals < 1) throw DomainError("arrivals must be at least 1");
  if (config.warmup < 0) throw DomainError("warmup must be nonnegative");
  if (config.replications < 1)
    throw DomainError("replications must be at least 1");
  if (config.jobs < 1) throw DomainError("jobs must be at least 1");
  const StreamSpec spec = describe(config.policy);

  const int reps = config.replications;
  std::vector<RepOut> outs(static_cast<std::size_t>(reps));
  const int jobs = std::min(config.jobs, reps);
  if (jobs == 1) {
    for (int rep = 0; rep < reps; ++rep)
      outs[static_cast<std::size_t>(rep)] = dispatch_rep(config, spec, rep);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int rep; (rep = next.fetch_add(1)) < reps;)
        outs[static_cast<std::size_t>(rep)] = dispatch_rep(config, spec, rep);
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SimResult result;
  result.stable = spec.stable;
  for (const auto& rep : outs) result.censored += rep.censored;
  result.converged = result.stable && result.censored == 0;

  const std::size_t nSlots = static_cast<std::size_t>(spec.nModelClasses) + 1;
  for (std::size_t slot = 0; slot < nSlots; ++slot) {
    std::vector<stats::Accumulator> perRep;
    perRep.reserve(outs.size());
    for (const auto& rep : outs) perRep.push_back(rep.acc[slot]);
    const std::string& label =
        slot < static_cast<std::size_t>(spec.nModelClasses) ? spec.labels[slot]
                                                            : spec.labels.back();
    result.classes.push_back(stats::finalize(label, perRep));
  }

  if (config.captureTrace && !outs.empty()) {
    auto& tr = outs.front().trace;
    std::sort(tr.begin(), tr.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    result.trace.reserve(tr.size());
    for (auto& [idx, rec] : tr) result.trace.push_back(std::move(rec));
  }
  return result;
}

std::vector<double> packed_interarrival_samples(const Rates2v2& r, long long n,
                                                std::uint64_t seed) {
  if (n < 1) throw DomainError("sample count must be at least 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  CounterRng rng(seed);
  const double entityRate = r.lambda1 + r.lambda2;
  const double pInd = r.lambda1 / entityRate;
  double t = 0.0;
  double last = 0.0;
  bool half = false;
  while (static_cast<long long>(out.size()) < n) {
    t += rng.next_exponential(entityRate);
    const bool individual = rng.next_unit() < pInd;
    const bool completes = !individual || half;
    if (individual) half = !half;
    if (completes) {
      out.push_back(t - last);
      last = t;
    }
  }
  return out;
}

}  // namespace matchq::sim
