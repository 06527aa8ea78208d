#include <cstdio>
#include <memory>
#include <string>

#include "commands.hpp"
#include "matchq/sim.hpp"
#include "output.hpp"

namespace matchq::cli {
namespace {

struct SimFlags {
  long long arrivals = 100000;
  long long warmup = 10000;
  std::uint64_t seed = 1;
  int reps = 8;
  int jobs = 1;
  std::string trace;
};

void add_sim_flags(CLI::App* sc, const std::shared_ptr<SimFlags>& f) {
  sc->add_option("--arrivals", f->arrivals,
                 "measured arrivals per replication");
  sc->add_option("--warmup", f->warmup, "leading arrivals discarded");
  sc->add_option("--seed", f->seed, "base RNG seed");
  sc->add_option("--reps", f->reps, "independent replications");
  sc->add_option("--jobs", f->jobs, "worker threads across replications");
  sc->add_option("--trace", f->trace,
                 "write per-arrival records of replication 0 to this file");
}

void echo_sim_flags(Json& cfg, const SimFlags& f) {
  cfg["arrivals"] = f.arrivals;
  cfg["warmup"] = f.warmup;
  cfg["seed"] = f.seed;
  cfg["replications"] = f.reps;
  cfg["jobs"] = f.jobs;
  cfg["trace"] = f.trace.empty() ? Json(nullptr) : Json(f.trace);
}

void write_trace(const std::string& path,
                 const std::vector<sim::EventRecord>& trace) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw DomainError("cannot open trace file: " + path);
  std::fputs("arrivalTime,class,matchTime,wait\n", out);
  for (const auto& e : trace)
    std::fprintf(out, "%.9f,%s,%.9f,%.9f\n", e.arrivalTime, e.cls.c_str(),
                 e.matchTime, e.wait);
  std::fclose(out);
}

void run(const std::string& model, const sim::Policy& policy, const SimFlags& f,
         Json config) {
  sim::ExperimentConfig cfg{policy,  f.arrivals, f.warmup,
                            f.seed,  f.reps,     f.jobs,
                            !f.trace.empty()};
  const sim::SimResult res = sim::simulate(cfg);
  if (!f.trace.empty()) write_trace(f.trace, res.trace);

  Json doc = make_doc("simulate", model, "simulation");
  echo_sim_flags(config, f);
  doc["config"] = std::move(config);
  Json classes = Json::array();
  for (const auto& c : res.classes)
    classes.push_back({{"class", c.label},
                       {"count", c.count},
                       {"mean", c.mean},
                       {"variance", c.variance},
                       {"ciHalfWidth", c.ciHalfWidth}});
  doc["results"] = {{"stable", res.stable},
                    {"converged", res.converged},
                    {"censored", res.censored},
                    {"classes", std::move(classes)}};
  emit(doc);
}

struct KPlayerOpts {
  int k = 0;
  double lambda = 0.0;
  SimFlags flags;
};

struct PairOpts {
  double l1 = 0.0;
  double l2 = 0.0;
  ServiceOrder order = ServiceOrder::FIFO;
  SimFlags flags;
};

struct TripleOpts {
  double la = 0.0;
  double lb = 0.0;
  double lc = 0.0;
  SimFlags flags;
};

}  // namespace

void register_simulate(CLI::App& app, int defaultJobs) {
  auto* simulate =
      app.add_subcommand("simulate", "Run the discrete-event simulator");
  simulate->require_subcommand(1);

  {
    auto o = std::make_shared<KPlayerOpts>();
    o->flags.jobs = defaultJobs;
    auto* sc = simulate->add_subcommand("kplayer", "k-player cycle queue");
    sc->add_option("--k", o->k, "players per game")->required();
    sc->add_option("--lambda", o->lambda, "arrival rate")->required();
    add_sim_flags(sc, std::shared_ptr<SimFlags>(o, &o->flags));
    sc->callback([o] {
      run("kplayer", sim::KPlayerSim{o->k, o->lambda}, o->flags,
          {{"k", o->k}, {"lambda", o->lambda}});
    });
  }
  {
    auto o = std::make_shared<PairOpts>();
    o->flags.jobs = defaultJobs;
    auto* sc = simulate->add_subcommand("central", "central 2v2 queue");
    sc->add_option("--l1", o->l1, "individual arrival rate")->required();
    sc->add_option("--l2", o->l2, "team arrival rate")->required();
    sc->add_option("--order", o->order, "service order")
        ->required()
        ->transform(CLI::CheckedTransformer(order_names(), CLI::ignore_case));
    add_sim_flags(sc, std::shared_ptr<SimFlags>(o, &o->flags));
    sc->callback([o] {
      run("central", sim::CentralSim{{o->l1, o->l2}, o->order}, o->flags,
          {{"lambda1", o->l1},
           {"lambda2", o->l2},
           {"order", to_string(o->order)}});
    });
  }
  {
    auto o = std::make_shared<PairOpts>();
    o->flags.jobs = defaultJobs;
    auto* sc = simulate->add_subcommand("twoqueue", "split two-queue policy");
    sc->add_option("--l1", o->l1, "individual arrival rate")->required();
    sc->add_option("--l2", o->l2, "team arrival rate")->required();
    add_sim_flags(sc, std::shared_ptr<SimFlags>(o, &o->flags));
    sc->callback([o] {
      run("twoqueue", sim::TwoQueueSim{{o->l1, o->l2}}, o->flags,
          {{"lambda1", o->l1}, {"lambda2", o->l2}});
    });
  }
  {
    auto o = std::make_shared<TripleOpts>();
    o->flags.jobs = defaultJobs;
    auto* sc = simulate->add_subcommand("sides", "side-selection queue");
    sc->add_option("--la", o->la, "class A arrival rate")->required();
    sc->add_option("--lb", o->lb, "class B arrival rate")->required();
    sc->add_option("--lc", o->lc, "class C arrival rate")->required();
    add_sim_flags(sc, std::shared_ptr<SimFlags>(o, &o->flags));
    sc->callback([o] {
      run("sides", sim::SideSim{{o->la, o->lb, o->lc}}, o->flags,
          {{"lambdaA", o->la}, {"lambdaB", o->lb}, {"lambdaC", o->lc}});
    });
  }
  {
    auto o = std::make_shared<TripleOpts>();
    o->flags.jobs = defaultJobs;
    auto* sc = simulate->add_subcommand("zones", "two-zone queue");
    sc->add_option("--la", o->la, "class A arrival rate")->required();
    sc->add_option("--lb", o->lb, "class B arrival rate")->required();
    sc->add_option("--lc", o->lc, "class C arrival rate")->required();
    add_sim_flags(sc, std::shared_ptr<SimFlags>(o, &o->flags));
    sc->callback([o] {
      run("zones", sim::ZoneSim{{o->la, o->lb, o->lc}}, o->flags,
          {{"lambdaA", o->la}, {"lambdaB", o->lb}, {"lambdaC", o->lc}});
    });
  }
}

}  // namespace matchq::cli
