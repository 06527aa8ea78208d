#include <memory>

#include "commands.hpp"
#include "matchq/analytics.hpp"
#include "output.hpp"

namespace matchq::cli {
namespace {

namespace an = matchq::analytics;

struct KPlayerOpts {
  int k = 0;
  double lambda = 0.0;
};

struct PairOpts {
  double l1 = 0.0;
  double l2 = 0.0;
  ServiceOrder order = ServiceOrder::FIFO;
};

struct TripleOpts {
  double la = 0.0;
  double lb = 0.0;
  double lc = 0.0;
};

void run_kplayer(const KPlayerOpts& o) {
  Json doc = make_doc("analytic", "kplayer", "analytic");
  doc["config"] = {{"k", o.k}, {"lambda", o.lambda}};
  doc["results"] = {{"meanWait", an::k_player_mean_wait(o.k, o.lambda)}};
  emit(doc);
}

void run_central(const PairOpts& o) {
  Json doc = make_doc("analytic", "central", "analytic");
  doc["config"] = {{"lambda1", o.l1}, {"lambda2", o.l2}};
  doc["results"] = {{"meanWait", an::central_2v2_mean_wait({o.l1, o.l2})}};
  emit(doc);
}

void run_centralvar(const PairOpts& o) {
  Json doc = make_doc("analytic", "centralvar", "analytic");
  doc["config"] = {{"lambda1", o.l1},
                   {"lambda2", o.l2},
                   {"order", to_string(o.order)}};
  doc["results"] = {
      {"variancePrinted", an::central_variance_printed({o.l1, o.l2}, o.order)}};
  emit(doc);
}

void run_twoqueue(const PairOpts& o) {
  Json doc = make_doc("analytic", "twoqueue", "analytic");
  doc["config"] = {{"lambda1", o.l1}, {"lambda2", o.l2}};
  const an::TwoQueueStats s = an::two_queue_stats({o.l1, o.l2});
  doc["results"] = {{"meanIndividual", s.meanIndividual},
                    {"meanTeam", s.meanTeam},
                    {"meanOverall", s.meanOverall},
                    {"variancePrinted", s.variancePrinted}};
  emit(doc);
}

void run_minvar() {
  Json doc = make_doc("analytic", "minvar", "analytic");
  doc["results"] = {{"ratio", an::two_queue_min_variance_ratio()}};
  emit(doc);
}

void run_sides(const TripleOpts& o) {
  Json doc = make_doc("analytic", "sides", "analytic");
  doc["config"] = {{"lambdaA", o.la}, {"lambdaB", o.lb}, {"lambdaC", o.lc}};
  const an::SideStats s = an::side_selection_stats({o.la, o.lb, o.lc});
  doc["results"] = {{"pi0", s.pi0},          {"meanA", s.meanA},
                    {"meanB", s.meanB},      {"meanC", s.meanC},
                    {"meanOverall", s.meanOverall}, {"q", s.improvementFactor}};
  emit(doc);
}

void run_qderiv(double lb) {
  Json doc = make_doc("analytic", "qderiv", "analytic");
  doc["config"] = {{"lambdaB", lb}};
  doc["results"] = {{"derivative", an::side_selection_q_derivative(lb)}};
  emit(doc);
}

void run_zones(const TripleOpts& o) {
  Json doc = make_doc("analytic", "zones", "analytic");
  doc["config"] = {{"lambdaA", o.la}, {"lambdaB", o.lb}, {"lambdaC", o.lc}};
  const an::ZoneStats s = an::two_zone_stats({o.la, o.lb, o.lc});
  doc["results"] = {{"pi0", s.pi0},          {"meanA", s.meanA},
                    {"meanB", s.meanB},      {"meanC", s.meanC},
                    {"meanOverall", s.meanOverall}, {"q", s.improvementFactor}};
  emit(doc);
}

void add_triple_flags(CLI::App* sc, const std::shared_ptr<TripleOpts>& o) {
  sc->add_option("--la", o->la, "class A arrival rate")->required();
  sc->add_option("--lb", o->lb, "class B arrival rate")->required();
  sc->add_option("--lc", o->lc, "class C arrival rate")->required();
}

}  // namespace

void register_analytic(CLI::App& app) {
  auto* analytic =
      app.add_subcommand("analytic", "Evaluate the closed-form expressions");
  analytic->require_subcommand(1);

  {
    auto o = std::make_shared<KPlayerOpts>();
    auto* sc = analytic->add_subcommand("kplayer", "k-player cycle queue");
    sc->add_option("--k", o->k, "players per game")->required();
    sc->add_option("--lambda", o->lambda, "arrival rate")->required();
    sc->callback([o] { run_kplayer(*o); });
  }
  {
    auto o = std::make_shared<PairOpts>();
    auto* sc = analytic->add_subcommand("central", "central 2v2 mean wait");
    sc->add_option("--l1", o->l1, "individual arrival rate")->required();
    sc->add_option("--l2", o->l2, "team arrival rate")->required();
    sc->callback([o] { run_central(*o); });
  }
  {
    auto o = std::make_shared<PairOpts>();
    auto* sc = analytic->add_subcommand(
        "centralvar", "published central-queue variance expression");
    sc->add_option("--l1", o->l1, "individual arrival rate")->required();
    sc->add_option("--l2", o->l2, "team arrival rate")->required();
    sc->add_option("--order", o->order, "service order")
        ->required()
        ->transform(CLI::CheckedTransformer(order_names(), CLI::ignore_case));
    sc->callback([o] { run_centralvar(*o); });
  }
  {
    auto o = std::make_shared<PairOpts>();
    auto* sc = analytic->add_subcommand("twoqueue", "split two-queue policy");
    sc->add_option("--l1", o->l1, "individual arrival rate")->required();
    sc->add_option("--l2", o->l2, "team arrival rate")->required();
    sc->callback([o] { run_twoqueue(*o); });
  }
  {
    auto* sc = analytic->add_subcommand(
        "minvar", "rate split minimizing the published two-queue variance");
    sc->callback([] { run_minvar(); });
  }
  {
    auto o = std::make_shared<TripleOpts>();
    auto* sc = analytic->add_subcommand("sides", "side-selection queue");
    add_triple_flags(sc, o);
    sc->callback([o] { run_sides(*o); });
  }
  {
    auto o = std::make_shared<double>(0.0);
    auto* sc = analytic->add_subcommand(
        "qderiv", "derivative of the side-selection improvement factor");
    sc->add_option("--lb", *o, "class B arrival rate (lambdaTotal = 1)")
        ->required();
    sc->callback([o] { run_qderiv(*o); });
  }
  {
    auto o = std::make_shared<TripleOpts>();
    auto* sc = analytic->add_subcommand("zones", "two-zone queue");
    add_triple_flags(sc, o);
    sc->callback([o] { run_zones(*o); });
  }
}

}  // namespace matchq::cli
