#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "commands.hpp"
#include "matchq/analytics.hpp"
#include "matchq/ctmc.hpp"
#include "matchq/sim.hpp"
#include "output.hpp"

namespace matchq::cli {
namespace {

namespace an = matchq::analytics;

std::string cell(double v) { return std::isfinite(v) ? csv_num(v) : ""; }

std::vector<double> grid01(double step, double upper = 1.0) {
  if (!(step > 0.0) || step > 1.0)
    throw DomainError("step must lie in (0, 1]");
  std::vector<double> g;
  for (int i = 0;; ++i) {
    double v = i * step;
    if (v > upper + 1e-9) break;
    g.push_back(std::min(v, upper));
  }
  return g;
}

// Published-formula and oracle variance curves of the 2v2 policies over the
// individual/team rate split, lambdaTotal = 1.
void run_fig5(double step, const std::string& outPath) {
  CsvSink sink(outPath);
  auto& os = sink.stream();
  os << "lambda1,lambda2,series,provenance,variance,flag\n";
  for (double l1 : grid01(step)) {
    const double l2 = (1.0 - l1) / 2.0;
    const Rates2v2 r{l1, l2};
    auto row = [&](const char* series, const char* provenance, auto compute) {
      std::string value;
      std::string flag;
      try {
        value = csv_num(compute());
      } catch (const std::invalid_argument&) {
        flag = "degenerate";
      }
      os << csv_num(l1) << ',' << csv_num(l2) << ',' << series << ','
         << provenance << ',' << value << ',' << flag << '\n';
    };
    row("printedFIFO", "analytic",
        [&] { return an::central_variance_printed(r, ServiceOrder::FIFO); });
    row("printedLIFO", "analytic",
        [&] { return an::central_variance_printed(r, ServiceOrder::LIFO); });
    row("printed2Q", "analytic",
        [&] { return an::two_queue_stats(r).variancePrinted; });
    row("oracleFIFO", "ctmc", [&] {
      return ctmc::central_tagged(r, ServiceOrder::FIFO,
                                  ctmc::CentralClass::AllPlayers)
          .variance;
    });
    row("oracleLIFO", "ctmc", [&] {
      return ctmc::central_tagged(r, ServiceOrder::LIFO,
                                  ctmc::CentralClass::AllPlayers)
          .variance;
    });
    row("oracle2Q", "ctmc", [&] {
      return ctmc::two_queue_tagged(r, ctmc::CentralClass::AllPlayers).variance;
    });
  }
}

// Histograms of packed-unit inter-arrival times against the exponential fit.
void run_fig6(long long n, std::uint64_t seed, const std::string& outPath) {
  constexpr double kBinWidth = 0.25;
  constexpr double kRange = 8.0;
  const int nBins = static_cast<int>(kRange / kBinWidth);
  CsvSink sink(outPath);
  auto& os = sink.stream();
  os << "# packed-unit inter-arrival histogram; lambdaTotal=1, "
        "lambda2=(1-lambda1)/2; bins [0,8] width 0.25; n="
     << n << " seed=" << seed
     << "; reference = exponential fitted by 1/sampleMean\n";
  os << "lambda1,binLow,binHigh,count,density,referenceDensity\n";
  for (double l1 : {0.2, 0.5, 0.8}) {
    const double l2 = (1.0 - l1) / 2.0;
    const auto samples =
        sim::packed_interarrival_samples({l1, l2}, n, seed);
    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(samples.size());
    const double rate = 1.0 / mean;
    std::vector<long long> counts(static_cast<std::size_t>(nBins), 0);
    for (double s : samples) {
      const int bin = static_cast<int>(s / kBinWidth);
      if (bin >= 0 && bin < nBins) ++counts[static_cast<std::size_t>(bin)];
    }
    for (int b = 0; b < nBins; ++b) {
      const double lo = b * kBinWidth;
      const double hi = lo + kBinWidth;
      const double density = static_cast<double>(counts[static_cast<std::size_t>(b)]) /
                             (static_cast<double>(n) * kBinWidth);
      const double ref =
          (std::exp(-rate * lo) - std::exp(-rate * hi)) / kBinWidth;
      os << csv_num(l1) << ',' << csv_num(lo) << ',' << csv_num(hi) << ','
         << counts[static_cast<std::size_t>(b)] << ',' << csv_num(density)
         << ',' << csv_num(ref) << '\n';
    }
  }
}

// Side-selection per-class mean waits over the (lambdaA, lambdaB) simplex.
void run_fig8(double step, const std::string& outPath) {
  CsvSink sink(outPath);
  auto& os = sink.stream();
  os << "lambdaA,lambdaB,lambdaC,provenance,meanA,meanB,meanC,meanOverall,"
        "flag\n";
  for (double la : grid01(step)) {
    for (double lb : grid01(step, 1.0 - la + 1e-9)) {
      const double lc = std::max(0.0, 1.0 - la - lb);
      std::string a, b, c, overall, flag;
      try {
        const an::SideStats s = an::side_selection_stats({la, lb, lc});
        a = cell(s.meanA);
        b = cell(s.meanB);
        c = cell(s.meanC);
        overall = cell(s.meanOverall);
      } catch (const Unstable&) {
        flag = "unstable";
      } catch (const NumericalError&) {
        flag = "numerical";
      }
      os << csv_num(la) << ',' << csv_num(lb) << ',' << csv_num(lc)
         << ",analytic," << a << ',' << b << ',' << c << ',' << overall << ','
         << flag << '\n';
    }
  }
}

// Two-zone improvement factor against lambdaA for a few lambdaC levels.
void run_fig10(double step, const std::string& outPath) {
  CsvSink sink(outPath);
  auto& os = sink.stream();
  os << "lambdaA,lambdaC,lambdaB,provenance,q,flag\n";
  for (double lc : {0.0, 0.1, 0.2}) {
    for (double la : grid01(step, 1.0 - lc)) {
      const double lb = std::max(0.0, 1.0 - la - lc);
      std::string q, flag;
      try {
        q = cell(an::two_zone_stats({la, lb, lc}).improvementFactor);
      } catch (const DomainError&) {
        flag = "degenerate";
      }
      os << csv_num(la) << ',' << csv_num(lc) << ',' << csv_num(lb)
         << ",analytic," << q << ',' << flag << '\n';
    }
  }
}

// Two-zone overall mean wait over the (lambdaA, lambdaB) simplex.
void run_fig11(double step, const std::string& outPath) {
  CsvSink sink(outPath);
  auto& os = sink.stream();
  os << "lambdaA,lambdaB,lambdaC,provenance,meanOverall,flag\n";
  for (double la : grid01(step)) {
    for (double lb : grid01(step, 1.0 - la + 1e-9)) {
      const double lc = std::max(0.0, 1.0 - la - lb);
      std::string overall, flag;
      try {
        overall = cell(an::two_zone_stats({la, lb, lc}).meanOverall);
      } catch (const DomainError&) {
        flag = "degenerate";
      }
      os << csv_num(la) << ',' << csv_num(lb) << ',' << csv_num(lc)
         << ",analytic," << overall << ',' << flag << '\n';
    }
  }
}

struct FigOpts {
  double step = 0.01;
  long long n = 100000;
  std::uint64_t seed = 1;
  std::string out;
};

}  // namespace

void register_figure(CLI::App& app) {
  auto* figure =
      app.add_subcommand("figure", "Emit figure-reproduction data as CSV");
  figure->require_subcommand(1);

  auto addFig = [&](const char* name, const char* help, double defaultStep,
                    bool hasStep, bool hasSampling, auto runner) {
    auto o = std::make_shared<FigOpts>();
    o->step = defaultStep;
    auto* sc = figure->add_subcommand(name, help);
    if (hasStep) sc->add_option("--step", o->step, "rate grid step");
    if (hasSampling) {
      sc->add_option("--n", o->n, "samples per curve");
      sc->add_option("--seed", o->seed, "RNG seed");
    }
    sc->add_option("--out", o->out, "output CSV path (default stdout)");
    sc->callback([o, runner] { runner(*o); });
  };

  addFig("fig5", "2v2 waiting-time variances over the rate split", 0.01, true,
         false, [](const FigOpts& o) { run_fig5(o.step, o.out); });
  addFig("fig6", "packed-unit inter-arrival histograms", 0.0, false, true,
         [](const FigOpts& o) { run_fig6(o.n, o.seed, o.out); });
  addFig("fig8", "side-selection mean waits over the rate simplex", 0.05, true,
         false, [](const FigOpts& o) { run_fig8(o.step, o.out); });
  addFig("fig10", "two-zone improvement factor vs lambdaA", 0.01, true, false,
         [](const FigOpts& o) { run_fig10(o.step, o.out); });
  addFig("fig11", "two-zone overall mean wait over the rate simplex", 0.05,
         true, false, [](const FigOpts& o) { run_fig11(o.step, o.out); });
}

}  // namespace matchq::cli
