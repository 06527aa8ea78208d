#pragma once

#include <string>
#include <vector>

#include "matchq/rates.hpp"

namespace matchq::ctmc {

struct Transition {
  int from;
  int to;
  double rate;  // strictly positive; no self-loops
};

struct CtmcModel {
  std::vector<std::string> states;
  std::vector<Transition> transitions;

  int index_of(const std::string& label) const;
};

struct StationaryDist {
  std::vector<double> probabilities;
};

// Model builders. Each returns the transition structure exactly as drawn.
CtmcModel build_k_player(int k, double lambda);
CtmcModel build_central_2v2(const Rates2v2& r);
// Finite window {-N..N, 1'} of the infinite side-selection chain; arrival edges
// leaving the window are dropped. States unreachable from 0 through positive-rate
// edges (zero-rate classes) are pruned. Requires N >= 1.
CtmcModel build_side_selection(const SideRates& r, int truncationN);
CtmcModel build_two_zone(const ZoneRates& r);

// Global-balance solve with one equation replaced by normalization; dense pivoted
// elimination. Requires an irreducible model; the result satisfies the residual
// invariants max|piQ| < 1e-10 and |sum(pi) - 1| < 1e-12.
StationaryDist stationary(const CtmcModel& model);

struct WaitMoments {
  double mean = 0.0;
  double secondMoment = 0.0;
  double variance = 0.0;
};

enum class CentralClass { Individual, Team, AllPlayers };
enum class PlayerClass { A, B, C, AllPlayers };

// Tagged-customer absorption moments via first-step analysis. The arriving
// customer's pre-arrival state is distributed as the stationary distribution
// (Poisson arrivals see time averages); class-mixed moments are returned.
//
// First moments solve m1(s) = 1/L_s + sum_s' p(s->s') m1(s'). Second moments use
// m2(s) = 2/L_s^2 + (2/L_s) sum p(s->s') m1(s') + sum p(s->s') m2(s'), which
// follows from T = H + T' with H ~ Exp(L_s) independent of the jump target
// (absorbing states have m1 = m2 = 0).
WaitMoments k_player_tagged(int k, double lambda);
// FIFO and Packing share a chain; LIFO differs only in which queue positions a
// team arrival absorbs. order TwoQueue is rejected here (use two_queue_tagged).
WaitMoments central_tagged(const Rates2v2& r, ServiceOrder order, CentralClass cls);
// Player-weighted mixture of the separate 4-player and 2-team pools.
WaitMoments two_queue_tagged(const Rates2v2& r, CentralClass cls);
// Truncated-chain oracle for the side-selection classes.
WaitMoments side_tagged(const SideRates& r, PlayerClass cls, int truncationN);
WaitMoments zone_tagged(const ZoneRates& r, PlayerClass cls);

// Budget for the tagged-player displacement augmentation (the LIFO variant must
// keep the tagged player's requeueing bounded within this many states). The
// truncated side-selection oracle scales with its own truncation level instead.
inline constexpr int kTaggedStateBudget = 64;

struct TruncatedSideWaits {
  double meanA = 0.0;
  double meanB = 0.0;
  double meanC = 0.0;
  double boundaryMass = 0.0;  // pi_N + pi_{-N}
};

// Little's-law per-class means on the truncated stationary distribution.
// A class with zero arrival rate reports mean 0.
TruncatedSideWaits truncated_side_waits(const SideRates& r, int truncationN);

// Doubles N from 25 until boundaryMass < threshold; throws TruncationError once
// N would exceed maxN. Returns the accepted truncation level through `levelOut`.
TruncatedSideWaits side_waits_converged(const SideRates& r, double threshold, int maxN,
                                        int* levelOut = nullptr);

struct AuditRow {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  ServiceOrder order = ServiceOrder::FIFO;
  bool degenerate = false;  // model invalid at this grid point; value fields are NaN
  bool litmus = false;      // lambda2 == 0 row: printed FIFO/LIFO split, oracle agrees
  double printedVariance = 0.0;
  double oracleVariance = 0.0;
  double oracleMean = 0.0;
  double absGap = 0.0;
  double relGap = 0.0;
};

// Printed-formula variances next to the tagged-chain oracle for every service
// order at every grid point.
std::vector<AuditRow> audit_variance(const std::vector<Rates2v2>& grid);

}  // namespace matchq::ctmc
