#pragma once

#include "matchq/rates.hpp"

namespace matchq::analytics {

// Mean stationary wait in the k-player cycle queue.
double k_player_mean_wait(int k, double lambda);

// Mean wait per player in the central 2v2 queue (order-independent).
double central_2v2_mean_wait(const Rates2v2& r);

struct TwoQueueStats {
  double meanIndividual = 0.0;
  double meanTeam = 0.0;
  double meanOverall = 0.0;
  double variancePrinted = 0.0;
};

// Closed forms for the split two-queue policy.
TwoQueueStats two_queue_stats(const Rates2v2& r);

// Ratio lambda1/lambdaT minimizing the two-queue printed variance.
double two_queue_min_variance_ratio();

// Published variance expression for a central-queue service order.
double central_variance_printed(const Rates2v2& r, ServiceOrder order);

struct SideStats {
  double pi0 = 0.0;
  double meanA = 0.0;
  double meanB = 0.0;
  double meanC = 0.0;
  double meanOverall = 0.0;
  double improvementFactor = 0.0;
};

// Closed forms for the two-sided selection queue; throws Unstable
// outside the stability region.
SideStats side_selection_stats(const SideRates& r);

// d/dlambdaB of the symmetric-rate improvement factor, valid on (0, 1/2).
double side_selection_q_derivative(double lambdaB);

struct ZoneStats {
  double pi0 = 0.0;
  double meanA = 0.0;
  double meanB = 0.0;
  double meanC = 0.0;
  double meanOverall = 0.0;
  double improvementFactor = 0.0;
};

// Closed forms for the two-zone queue with flexible players.
ZoneStats two_zone_stats(const ZoneRates& r);

}  // namespace matchq::analytics
