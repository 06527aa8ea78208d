#include "matchq/analytics.hpp"

#include <algorithm>
#include <cmath>

#include "matchq/errors.hpp"

namespace matchq::analytics {

double k_player_mean_wait(int k, double lambda) {
  if (k < 1) throw DomainError("k must be a positive integer");
  if (!std::isfinite(lambda) || lambda <= 0.0)
    throw DomainError("lambda must be a finite positive rate");
  return (k - 1) / (2.0 * lambda);
}

double central_2v2_mean_wait(const Rates2v2& r) {
  if (r.lambda1 <= 0.0)
    throw DegenerateModel(
        "central 2v2 queue requires lambda1 > 0; with teams only it reduces to "
        "the 2-player cycle");
  return 3.0 / (2.0 * r.total());
}

TwoQueueStats two_queue_stats(const Rates2v2& r) {
  const double l1 = r.lambda1;
  const double l2 = r.lambda2;
  if (l1 <= 0.0 || l2 <= 0.0)
    throw DomainError("two-queue policy requires both rates positive; a queue "
                      "with no arrivals never clears");
  const double lt = r.total();
  TwoQueueStats s;
  s.meanIndividual = 3.0 / (2.0 * l1);
  s.meanTeam = 1.0 / (2.0 * l2);
  s.meanOverall = 5.0 / (2.0 * lt);
  s.variancePrinted =
      (3.0 * l1 * l1 - l1 * l2 + 11.0 * l2 * l2) / (2.0 * lt * lt * l1 * l2);
  return s;
}

double two_queue_min_variance_ratio() { return 2.0 * std::sqrt(33.0) - 11.0; }

double central_variance_printed(const Rates2v2& r, ServiceOrder order) {
  if (order == ServiceOrder::TwoQueue)
    throw DomainError("two-queue variance lives in two_queue_stats");
  const double l1 = r.lambda1;
  const double l2 = r.lambda2;
  if (l1 <= 0.0)
    throw DegenerateModel("central 2v2 queue requires lambda1 > 0");
  const double lt = r.total();
  const double s = l1 + l2;
  const double mean = 3.0 / (2.0 * lt);
  if (order == ServiceOrder::LIFO) {
    const double num1 = 5.0 * l1 * l1 * l1 * l2 + 7.0 * l1 * l1 * l2 * l2 +
                        10.0 * l1 * l2 * l2 * l2 + 2.0 * l2 * l2 * l2 * l2;
    const double den1 =
        2.0 * l1 * s * s * s * (l1 * l1 + 2.0 * l1 * l2 + 2.0 * l2 * l2);
    const double num2 = 8.0 * l1 * l1 + 7.0 * l1 * l2;
    const double den2 = 2.0 * s * s * s * s;
    return num1 / den1 + num2 / den2 - mean * mean;
  }
  const double num1 = 7.0 * l1 * l1 + l1 * l2 + 4.0 * l2 * l2;
  const double den1 = 2.0 * l1 * s * s * s;
  const double num2 = 2.0 * l1 * l2 * l2 * l2 + 3.0 * l2 * l2 * l2 * l2;
  const double den2 = l1 * lt * s * s * s * s;
  return num1 / den1 - num2 / den2 - mean * mean;
}

SideStats side_selection_stats(const SideRates& r) {
  if (!r.stable)
    throw Unstable("side-selection queue is positive recurrent only when "
                   "lambdaC > |lambdaA - lambdaB|");
  const double la = r.lambdaA;
  const double lb = r.lambdaB;
  const double lc = r.lambdaC;
  const double lt = r.total();
  const double da = lb + lc - la;  // drift away from the A-heavy side
  const double db = la + lc - lb;
  SideStats s;
  s.pi0 = 1.0 / (la / da + lb / db + lc / lt + 1.0);
  s.meanA = (lb + lc) * s.pi0 / (da * da);
  s.meanB = (la + lc) * s.pi0 / (db * db);
  s.meanC = s.pi0 / lt;
  s.meanOverall = 0.5 / db + 0.5 / da + 1.0 / lt - 0.5 / lc -
                  (la + lb + 2.0 * lc) /
                      (2.0 * (2.0 * la * lb + la * lc + lb * lc + lc * lc));
  s.improvementFactor = (lt - 2.0 * lb) * (lt - 2.0 * lb) / (lt * (lt - lb));
  const double weighted = (la * s.meanA + lb * s.meanB + lc * s.meanC) / lt;
  const double scale = std::max(1.0, std::abs(weighted));
  if (std::abs(s.meanOverall - weighted) > 1e-12 * scale)
    throw NumericalError("side-selection mean identity violated");
  return s;
}

double side_selection_q_derivative(double lambdaB) {
  if (!std::isfinite(lambdaB) || lambdaB <= 0.0 || lambdaB >= 0.5)
    throw DomainError("lambdaB must lie in (0, 0.5) with lambdaTotal = 1");
  const double u = 1.0 - lambdaB;
  return 1.0 / (u * u) - 4.0;
}

ZoneStats two_zone_stats(const ZoneRates& r) {
  const double la = r.lambdaA;
  const double lb = r.lambdaB;
  const double lc = r.lambdaC;
  const double lt = r.total();
  const double za = la + lc;  // rates able to clear zone A
  const double zb = lb + lc;
  if (za <= 0.0 || zb <= 0.0)
    throw DomainError("each zone needs a positive rate of players able to "
                      "match there");
  ZoneStats s;
  s.pi0 = 1.0 / (1.0 + la / za + lb / zb + la * lb / (za * lt) +
                 la * lb / (zb * lt) + lc / lt);
  const double den = za * zb * lt;
  s.meanA = (2.0 * la * lb + la * lc + 2.0 * lb * lb + 4.0 * lb * lc + lc * lc) *
            s.pi0 / den;
  s.meanB = (2.0 * la * lb + lb * lc + 2.0 * la * la + 4.0 * la * lc + lc * lc) *
            s.pi0 / den;
  s.meanC = s.pi0 / lt;
  s.meanOverall = (la * s.meanA + lb * s.meanB + lc * s.meanC) / lt;
  s.improvementFactor =
      za * zb / (2.0 * la * la + 2.0 * la * lb + 4.0 * la * lc + lb * lc +
                 lc * lc);
  return s;
}

}  // namespace matchq::analytics
