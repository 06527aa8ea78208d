#include "matchq/ctmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dense_solve.hpp"
#include "matchq/analytics.hpp"
#include "matchq/errors.hpp"

namespace matchq::ctmc {

namespace {

constexpr double kResidualTol = 1e-10;
constexpr double kSumTol = 1e-12;

void check_strongly_connected(const CtmcModel& m) {
  const int n = static_cast<int>(m.states.size());
  std::vector<std::vector<int>> fwd(n), rev(n);
  for (const auto& t : m.transitions) {
    fwd[t.from].push_back(t.to);
    rev[t.to].push_back(t.from);
  }
  auto reaches_all = [n](const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (int t : adj[s])
        if (!seen[t]) {
          seen[t] = 1;
          ++count;
          stack.push_back(t);
        }
    }
    return count == n;
  };
  if (!reaches_all(fwd) || !reaches_all(rev))
    throw ModelError("chain is not irreducible");
}

void validate_model(const CtmcModel& m) {
  const int n = static_cast<int>(m.states.size());
  if (n == 0) throw ModelError("model has no states");
  for (const auto& t : m.transitions) {
    if (t.from < 0 || t.from >= n || t.to < 0 || t.to >= n)
      throw ModelError("transition references an invalid state index");
    if (t.from == t.to) throw ModelError("self-loop transition");
    if (!(t.rate > 0.0) || !std::isfinite(t.rate))
      throw ModelError("transition rate must be positive and finite");
  }
}

// Absorbing first-step system. `out` lists (target, rate) per transient state;
// target -1 is absorption.
struct AbsorbingChain {
  std::vector<std::vector<std::pair<int, double>>> out;
};

struct EntryMix {
  // (transient state, probability mass); mass not listed absorbs on arrival
  // with zero wait but still counts in the mixture denominator.
  std::vector<std::pair<int, double>> entries;
  double totalMass = 0.0;
};

WaitMoments absorption_moments(const AbsorbingChain& chain, const EntryMix& entry) {
  const int n = static_cast<int>(chain.out.size());

  std::vector<double> holding(n, 0.0);
  for (int s = 0; s < n; ++s) {
    double total = 0.0;
    for (const auto& [to, rate] : chain.out[s]) {
      (void)to;
      total += rate;
    }
    if (!(total > 0.0)) throw ModelError("transient state with no outgoing rate");
    holding[s] = total;
  }

  // Absorption must be certain: every transient state reaches target -1.
  {
    std::vector<char> absorbs(n, 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int s = 0; s < n; ++s) {
        if (absorbs[s]) continue;
        for (const auto& [to, rate] : chain.out[s]) {
          (void)rate;
          if (to == -1 || absorbs[to]) {
            absorbs[s] = 1;
            changed = true;
            break;
          }
        }
      }
    }
    for (int s = 0; s < n; ++s)
      if (!absorbs[s]) throw ModelError("absorption is not certain from every state");
  }

  // (I - P) m1 = h with h = 1/L, P the jump-probability matrix over transients.
  std::vector<std::vector<double>> iMinusP(n, std::vector<double>(n, 0.0));
  for (int s = 0; s < n; ++s) {
    iMinusP[s][s] = 1.0;
    for (const auto& [to, rate] : chain.out[s])
      if (to >= 0) iMinusP[s][to] -= rate / holding[s];
  }
  std::vector<double> h(n);
  for (int s = 0; s < n; ++s) h[s] = 1.0 / holding[s];
  const std::vector<double> m1 = detail::solve_dense(iMinusP, h);

  std::vector<double> g(n, 0.0);
  for (int s = 0; s < n; ++s) {
    double pm1 = 0.0;
    for (const auto& [to, rate] : chain.out[s])
      if (to >= 0) pm1 += rate / holding[s] * m1[to];
    g[s] = 2.0 / (holding[s] * holding[s]) + 2.0 / holding[s] * pm1;
  }
  const std::vector<double> m2 = detail::solve_dense(iMinusP, g);

  if (!(entry.totalMass > 0.0)) throw ModelError("empty entry mixture");
  WaitMoments out;
  for (const auto& [state, mass] : entry.entries) {
    out.mean += mass * m1[state];
    out.secondMoment += mass * m2[state];
  }
  out.mean /= entry.totalMass;
  out.secondMoment /= entry.totalMass;
  out.variance = out.secondMoment - out.mean * out.mean;
  return out;
}

// Restrict to the class of states reachable from `root`; states outside it
// carry no stationary mass (used for rate settings that disconnect part of a
// drawn chain, e.g. the central queue's team states at lambda2 = 0).
CtmcModel restrict_reachable(const CtmcModel& m, int root) {
  const int n = static_cast<int>(m.states.size());
  std::vector<std::vector<int>> adj(n);
  for (const auto& t : m.transitions) adj[t.from].push_back(t.to);
  std::vector<char> seen(n, 0);
  std::vector<int> stack{root};
  seen[root] = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int t : adj[s])
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
  }
  CtmcModel out;
  std::vector<int> remap(n, -1);
  for (int s = 0; s < n; ++s)
    if (seen[s]) {
      remap[s] = static_cast<int>(out.states.size());
      out.states.push_back(m.states[s]);
    }
  for (const auto& t : m.transitions)
    if (seen[t.from] && seen[t.to]) out.transitions.push_back({remap[t.from], remap[t.to], t.rate});
  return out;
}

WaitMoments mix_player_weighted(const std::vector<std::pair<WaitMoments, double>>& parts) {
  WaitMoments out;
  double mass = 0.0;
  for (const auto& [m, w] : parts) {
    out.mean += w * m.mean;
    out.secondMoment += w * m.secondMoment;
    mass += w;
  }
  out.mean /= mass;
  out.secondMoment /= mass;
  out.variance = out.secondMoment - out.mean * out.mean;
  return out;
}

}  // namespace

int CtmcModel::index_of(const std::string& label) const {
  const auto it = std::find(states.begin(), states.end(), label);
  return it == states.end() ? -1 : static_cast<int>(it - states.begin());
}

CtmcModel build_k_player(int k, double lambda) {
  if (k < 1) throw DomainError("k must be at least 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive");
  CtmcModel m;
  for (int i = 0; i < k; ++i) m.states.push_back(std::to_string(i));
  if (k == 1) return m;  // arrivals match instantly; single state, no transitions
  for (int i = 0; i < k; ++i) m.transitions.push_back({i, (i + 1) % k, lambda});
  return m;
}

CtmcModel build_central_2v2(const Rates2v2& r) {
  if (!(r.lambda1 > 0.0))
    throw DegenerateModel("central 2v2 queue requires lambda1 > 0");
  CtmcModel m;
  m.states = {"0", "1", "2a", "2b", "3a", "3b"};
  const int s0 = 0, s1 = 1, s2a = 2, s2b = 3, s3a = 4, s3b = 5;
  const double l1 = r.lambda1, l2 = r.lambda2;
  auto add = [&m](int f, int t, double rate) {
    if (rate > 0.0) m.transitions.push_back({f, t, rate});
  };
  add(s0, s1, l1);
  add(s1, s2a, l1);
  add(s2a, s3a, l1);
  add(s3a, s0, l1);
  add(s2b, s3b, l1);
  add(s3b, s0, l1);
  add(s0, s2b, l2);
  add(s1, s3b, l2);
  add(s2a, s0, l2);
  add(s3a, s1, l2);
  add(s2b, s0, l2);
  add(s3b, s1, l2);
  return m;
}

CtmcModel build_side_selection(const SideRates& r, int truncationN) {
  if (truncationN < 1) throw DomainError("side-selection chain requires truncation N >= 1");
  const int n = truncationN;
  const double la = r.lambdaA, lb = r.lambdaB, lc = r.lambdaC;

  // Full window first; indices are remapped after pruning.
  std::vector<std::string> labels;
  for (int i = -n; i <= n; ++i) labels.push_back(std::to_string(i));
  labels.push_back("1'");
  auto idx = [n](int i) { return i + n; };
  const int prime = 2 * n + 1;

  std::vector<Transition> edges;
  auto add = [&edges](int f, int t, double rate) {
    if (rate > 0.0) edges.push_back({f, t, rate});
  };
  for (int i = -n; i <= n; ++i) {
    if (i == 0) {
      add(idx(0), idx(1), la);
      add(idx(0), idx(-1), lb);
      add(idx(0), prime, lc);
    } else if (i > 0) {
      if (i < n) add(idx(i), idx(i + 1), la);  // boundary arrival dropped at i == n
      add(idx(i), idx(i - 1), lb + lc);
    } else {
      if (i > -n) add(idx(i), idx(i - 1), lb);
      add(idx(i), idx(i + 1), la + lc);
    }
  }
  add(prime, idx(0), la + lb + lc);

  // Keep only what the empty state can reach; zero-rate classes leave half the
  // window (or the 1' loop) disconnected.
  const int total = 2 * n + 2;
  std::vector<std::vector<int>> adj(total);
  for (const auto& e : edges) adj[e.from].push_back(e.to);
  std::vector<char> seen(total, 0);
  std::vector<int> stack{idx(0)};
  seen[idx(0)] = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (int t : adj[s])
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
  }

  CtmcModel m;
  std::vector<int> remap(total, -1);
  for (int s = 0; s < total; ++s)
    if (seen[s]) {
      remap[s] = static_cast<int>(m.states.size());
      m.states.push_back(labels[s]);
    }
  for (const auto& e : edges)
    if (seen[e.from] && seen[e.to]) m.transitions.push_back({remap[e.from], remap[e.to], e.rate});
  return m;
}

CtmcModel build_two_zone(const ZoneRates& r) {
  CtmcModel m;
  m.states = {"0", "A", "B", "C", "AB", "BA"};
  const int s0 = 0, sA = 1, sB = 2, sC = 3, sAB = 4, sBA = 5;
  const double la = r.lambdaA, lb = r.lambdaB, lc = r.lambdaC;
  auto add = [&m](int f, int t, double rate) {
    if (rate > 0.0) m.transitions.push_back({f, t, rate});
  };
  add(s0, sA, la);
  add(s0, sB, lb);
  add(s0, sC, lc);
  add(sA, sAB, lb);
  add(sA, s0, la + lc);
  add(sB, sBA, la);
  add(sB, s0, lb + lc);
  add(sAB, sA, lb);
  add(sAB, sB, la + lc);
  add(sBA, sB, la);
  add(sBA, sA, lb + lc);
  add(sC, s0, la + lb + lc);
  return m;
}

StationaryDist stationary(const CtmcModel& model) {
  validate_model(model);
  check_strongly_connected(model);
  const int n = static_cast<int>(model.states.size());

  if (n == 1) return {{1.0}};

  // Columns of Q^T pi = 0; the last balance row is replaced by normalization.
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& t : model.transitions) {
    a[t.to][t.from] += t.rate;
    a[t.from][t.from] -= t.rate;
  }
  for (int col = 0; col < n; ++col) a[n - 1][col] = 1.0;
  std::vector<double> b(n, 0.0);
  b[n - 1] = 1.0;

  std::vector<double> pi = detail::solve_dense(std::move(a), std::move(b));

  double sum = 0.0;
  for (double& p : pi) {
    if (p < 0.0 && p > -1e-13) p = 0.0;
    if (p < 0.0) throw NumericalError("negative stationary probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTol) throw NumericalError("stationary sum deviates from 1");

  std::vector<double> residual(n, 0.0);
  for (const auto& t : model.transitions) {
    residual[t.to] += pi[t.from] * t.rate;
    residual[t.from] -= pi[t.from] * t.rate;
  }
  for (double rres : residual)
    if (std::abs(rres) > kResidualTol) throw NumericalError("balance residual above tolerance");

  return {std::move(pi)};
}

WaitMoments k_player_tagged(int k, double lambda) {
  const CtmcModel model = build_k_player(k, lambda);
  const StationaryDist pi = stationary(model);

  if (k == 1) return {};  // matched on arrival

  // Transient state d = players still needed ahead of launch, d in 1..k-1;
  // every arrival decrements d.
  AbsorbingChain chain;
  chain.out.resize(k - 1);
  for (int d = 1; d < k; ++d) {
    const int s = d - 1;
    chain.out[s].push_back({d == 1 ? -1 : s - 1, lambda});
  }
  EntryMix entry;
  entry.totalMass = 0.0;
  for (int j = 0; j < k; ++j) {
    const double w = pi.probabilities[j];
    entry.totalMass += w;
    const int needed = k - 1 - j;
    if (needed > 0) entry.entries.push_back({needed - 1, w});
  }
  return absorption_moments(chain, entry);
}

namespace {

WaitMoments central_tagged_individual(const Rates2v2& r, ServiceOrder order,
                                      const StationaryDist& pi, const CtmcModel& model) {
  const double l1 = r.lambda1, l2 = r.lambda2;
  // Tagged-individual states: queue composition plus the tagged player's
  // arrival position among waiting individuals.
  enum { A1, A2f, A2s, A31, A32, A33, AT, COUNT };
  const bool lifo = order == ServiceOrder::LIFO;

  // The LIFO variant bounds the tagged player's displacement by folding every
  // displacement back into A1 rather than growing a per-displacement state, so
  // the augmentation can never outgrow the budget.
  static_assert(COUNT <= kTaggedStateBudget);

  AbsorbingChain chain;
  chain.out.resize(COUNT);
  auto add = [&chain](int from, int to, double rate) {
    if (rate > 0.0) chain.out[from].push_back({to, rate});
  };
  add(A1, A2f, l1);
  add(A1, AT, l2);
  add(A2f, A31, l1);
  add(A2f, -1, l2);
  add(A2s, A32, l1);
  add(A2s, -1, l2);
  add(A31, -1, l1);
  add(A31, lifo ? A1 : -1, l2);  // team takes the two most recent under LIFO
  add(A32, -1, l1);
  add(A32, -1, l2);
  add(A33, -1, l1);
  add(A33, lifo ? -1 : A1, l2);  // team takes the two earliest under FIFO
  add(AT, -1, l1);
  add(AT, A1, l2);  // two teams match; the tagged individual stays behind

  EntryMix entry;
  entry.totalMass = 1.0;
  auto weight = [&](const char* label) {
    const int s = model.index_of(label);
    return s >= 0 ? pi.probabilities[s] : 0.0;
  };
  entry.entries = {{A1, weight("0")},
                   {A2s, weight("1")},
                   {A33, weight("2a")},
                   {AT, weight("2b")}};
  // Arrivals into "3a"/"3b" complete a match instantly: zero wait, counted mass.
  return absorption_moments(chain, entry);
}

WaitMoments central_tagged_team(const Rates2v2& r, const StationaryDist& pi,
                                const CtmcModel& model) {
  const double l1 = r.lambda1, l2 = r.lambda2;
  enum { T0, T1, COUNT };  // tagged team alone / with one individual
  AbsorbingChain chain;
  chain.out.resize(COUNT);
  auto add = [&chain](int from, int to, double rate) {
    if (rate > 0.0) chain.out[from].push_back({to, rate});
  };
  add(T0, T1, l1);
  add(T0, -1, l2);
  add(T1, -1, l1);
  add(T1, -1, l2);

  EntryMix entry;
  entry.totalMass = 1.0;
  auto weight = [&](const char* label) {
    const int s = model.index_of(label);
    return s >= 0 ? pi.probabilities[s] : 0.0;
  };
  entry.entries = {{T0, weight("0")}, {T1, weight("1")}};
  return absorption_moments(chain, entry);
}

}  // namespace

WaitMoments central_tagged(const Rates2v2& r, ServiceOrder order, CentralClass cls) {
  if (order == ServiceOrder::TwoQueue)
    throw DomainError("central tagged chain takes a central-queue service order");
  const CtmcModel model = restrict_reachable(build_central_2v2(r), 0);
  const StationaryDist pi = stationary(model);

  switch (cls) {
    case CentralClass::Individual:
      return central_tagged_individual(r, order, pi, model);
    case CentralClass::Team:
      return central_tagged_team(r, pi, model);
    case CentralClass::AllPlayers: {
      const WaitMoments ind = central_tagged_individual(r, order, pi, model);
      if (r.lambda2 == 0.0) return ind;
      const WaitMoments team = central_tagged_team(r, pi, model);
      return mix_player_weighted({{ind, r.lambda1}, {team, 2.0 * r.lambda2}});
    }
  }
  throw DomainError("unknown arrival class");
}

WaitMoments two_queue_tagged(const Rates2v2& r, CentralClass cls) {
  if (!(r.lambda1 > 0.0) || !(r.lambda2 > 0.0))
    throw DomainError("two-queue system requires lambda1 > 0 and lambda2 > 0");
  switch (cls) {
    case CentralClass::Individual:
      return k_player_tagged(4, r.lambda1);
    case CentralClass::Team:
      return k_player_tagged(2, r.lambda2);
    case CentralClass::AllPlayers: {
      const WaitMoments ind = k_player_tagged(4, r.lambda1);
      const WaitMoments team = k_player_tagged(2, r.lambda2);
      return mix_player_weighted({{ind, r.lambda1}, {team, 2.0 * r.lambda2}});
    }
  }
  throw DomainError("unknown arrival class");
}

WaitMoments side_tagged(const SideRates& r, PlayerClass cls, int truncationN) {
  if (!r.stable) throw Unstable("side-selection waits require lambdaC > |lambdaA - lambdaB|");
  if (cls == PlayerClass::AllPlayers) {
    const WaitMoments a = side_tagged(r, PlayerClass::A, truncationN);
    const WaitMoments b = side_tagged(r, PlayerClass::B, truncationN);
    const WaitMoments c = side_tagged(r, PlayerClass::C, truncationN);
    std::vector<std::pair<WaitMoments, double>> parts;
    if (r.lambdaA > 0.0) parts.push_back({a, r.lambdaA});
    if (r.lambdaB > 0.0) parts.push_back({b, r.lambdaB});
    if (r.lambdaC > 0.0) parts.push_back({c, r.lambdaC});
    return mix_player_weighted(parts);
  }

  const CtmcModel model = build_side_selection(r, truncationN);
  const StationaryDist pi = stationary(model);
  const double lt = r.total();

  if (cls == PlayerClass::C) {
    // A choice-free arrival waits only from the empty state, for one arrival of
    // any class.
    AbsorbingChain chain;
    chain.out.resize(1);
    chain.out[0].push_back({-1, lt});
    EntryMix entry;
    entry.totalMass = 1.0;
    const int s0 = model.index_of("0");
    entry.entries = {{0, s0 >= 0 ? pi.probabilities[s0] : 0.0}};
    return absorption_moments(chain, entry);
  }

  // Tagged A (B symmetric): joining behind d same-side players, each opposite or
  // choice-free arrival serves the head; arrivals behind the tagged player are
  // irrelevant, so the chain is a pure death chain of depth d.
  const bool classA = cls == PlayerClass::A;
  const double serviceRate = classA ? r.lambdaB + r.lambdaC : r.lambdaA + r.lambdaC;
  if (!(serviceRate > 0.0)) throw Unstable("tagged side class is never served");

  AbsorbingChain chain;
  chain.out.resize(truncationN + 1);
  for (int d = 0; d <= truncationN; ++d)
    chain.out[d].push_back({d == 0 ? -1 : d - 1, serviceRate});
  EntryMix entry;
  entry.totalMass = 1.0;
  for (int i = 0; i <= truncationN; ++i) {
    const int s = model.index_of(std::to_string(classA ? i : -i));
    if (s >= 0) entry.entries.push_back({i, pi.probabilities[s]});
  }
  return absorption_moments(chain, entry);
}

WaitMoments zone_tagged(const ZoneRates& r, PlayerClass cls) {
  if (r.lambdaA + r.lambdaC <= 0.0 || r.lambdaB + r.lambdaC <= 0.0)
    throw DomainError("each zone needs a positive partner arrival rate");
  if (cls == PlayerClass::AllPlayers) {
    std::vector<std::pair<WaitMoments, double>> parts;
    if (r.lambdaA > 0.0) parts.push_back({zone_tagged(r, PlayerClass::A), r.lambdaA});
    if (r.lambdaB > 0.0) parts.push_back({zone_tagged(r, PlayerClass::B), r.lambdaB});
    if (r.lambdaC > 0.0) parts.push_back({zone_tagged(r, PlayerClass::C), r.lambdaC});
    return mix_player_weighted(parts);
  }

  const CtmcModel model = restrict_reachable(build_two_zone(r), 0);
  const StationaryDist pi = stationary(model);
  const double la = r.lambdaA, lb = r.lambdaB, lc = r.lambdaC, lt = r.total();
  auto weight = [&](const char* label) {
    const int s = model.index_of(label);
    return s >= 0 ? pi.probabilities[s] : 0.0;
  };

  if (cls == PlayerClass::C) {
    AbsorbingChain chain;
    chain.out.resize(1);
    chain.out[0].push_back({-1, lt});
    EntryMix entry;
    entry.totalMass = 1.0;
    entry.entries = {{0, weight("0")}};
    return absorption_moments(chain, entry);
  }

  // Tagged A (B mirrors with A and B swapped). States: waiting alone; waiting
  // with an opposite-zone player behind (tagged arrived first); behind an
  // opposite-zone player (tagged arrived second). Same-zone arrivals absorb the
  // tagged player; a choice-free arrival matches whoever arrived first.
  const bool classA = cls == PlayerClass::A;
  const double own = classA ? la : lb;    // same-zone arrivals
  const double other = classA ? lb : la;  // opposite-zone arrivals
  enum { ALONE, FIRST, SECOND, COUNT };
  AbsorbingChain chain;
  chain.out.resize(COUNT);
  auto add = [&chain](int from, int to, double rate) {
    if (rate > 0.0) chain.out[from].push_back({to, rate});
  };
  add(ALONE, -1, own + lc);
  add(ALONE, FIRST, other);
  add(FIRST, -1, own + lc);
  add(FIRST, ALONE, other);
  add(SECOND, -1, own);
  add(SECOND, ALONE, other + lc);

  EntryMix entry;
  entry.totalMass = 1.0;
  entry.entries = {{ALONE, weight("0")}, {SECOND, weight(classA ? "B" : "A")}};
  return absorption_moments(chain, entry);
}

TruncatedSideWaits truncated_side_waits(const SideRates& r, int truncationN) {
  if (!r.stable) throw Unstable("side-selection waits require lambdaC > |lambdaA - lambdaB|");
  const CtmcModel model = build_side_selection(r, truncationN);
  const StationaryDist dist = stationary(model);

  double lA = 0.0, lB = 0.0;
  for (int i = 1; i <= truncationN; ++i) {
    const int sp = model.index_of(std::to_string(i));
    const int sn = model.index_of(std::to_string(-i));
    if (sp >= 0) lA += i * dist.probabilities[sp];
    if (sn >= 0) lB += i * dist.probabilities[sn];
  }
  const int s0 = model.index_of("0");
  const double pi0 = s0 >= 0 ? dist.probabilities[s0] : 0.0;

  TruncatedSideWaits out;
  out.meanA = r.lambdaA > 0.0 ? lA / r.lambdaA : 0.0;
  out.meanB = r.lambdaB > 0.0 ? lB / r.lambdaB : 0.0;
  out.meanC = pi0 / r.total();
  const int bp = model.index_of(std::to_string(truncationN));
  const int bn = model.index_of(std::to_string(-truncationN));
  out.boundaryMass = (bp >= 0 ? dist.probabilities[bp] : 0.0) +
                     (bn >= 0 ? dist.probabilities[bn] : 0.0);
  return out;
}

TruncatedSideWaits side_waits_converged(const SideRates& r, double threshold, int maxN,
                                        int* levelOut) {
  for (int n = 25; n <= maxN; n *= 2) {
    const TruncatedSideWaits w = truncated_side_waits(r, n);
    if (w.boundaryMass < threshold) {
      if (levelOut) *levelOut = n;
      return w;
    }
  }
  throw TruncationError("boundary mass above threshold at maximum truncation level");
}

std::vector<AuditRow> audit_variance(const std::vector<Rates2v2>& grid) {
  const ServiceOrder orders[] = {ServiceOrder::FIFO, ServiceOrder::Packing,
                                 ServiceOrder::LIFO, ServiceOrder::TwoQueue};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<AuditRow> rows;
  for (const auto& r : grid) {
    for (ServiceOrder order : orders) {
      AuditRow row;
      row.lambda1 = r.lambda1;
      row.lambda2 = r.lambda2;
      row.order = order;
      row.litmus = r.lambda2 == 0.0 && order != ServiceOrder::TwoQueue;
      try {
        WaitMoments oracle;
        if (order == ServiceOrder::TwoQueue) {
          row.printedVariance = analytics::two_queue_stats(r).variancePrinted;
          oracle = two_queue_tagged(r, CentralClass::AllPlayers);
        } else {
          row.printedVariance = analytics::central_variance_printed(r, order);
          oracle = central_tagged(r, order, CentralClass::AllPlayers);
        }
        row.oracleVariance = oracle.variance;
        row.oracleMean = oracle.mean;
        row.absGap = std::abs(row.printedVariance - row.oracleVariance);
        row.relGap = row.absGap / row.oracleVariance;
      } catch (const DomainError&) {
        row.degenerate = true;
      } catch (const DegenerateModel&) {
        row.degenerate = true;
      }
      if (row.degenerate) {
        row.printedVariance = row.oracleVariance = row.oracleMean = nan;
        row.absGap = row.relGap = nan;
        row.litmus = false;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace matchq::ctmc
