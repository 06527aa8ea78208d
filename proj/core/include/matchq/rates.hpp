#pragma once

#include <cmath>
#include <string>

#include "matchq/errors.hpp"

namespace matchq {

enum class ServiceOrder { FIFO, Packing, LIFO, TwoQueue };

inline const char* to_string(ServiceOrder o) {
  switch (o) {
    case ServiceOrder::FIFO: return "fifo";
    case ServiceOrder::Packing: return "packing";
    case ServiceOrder::LIFO: return "lifo";
    case ServiceOrder::TwoQueue: return "twoqueue";
  }
  return "?";
}

namespace detail {
inline void require_rate(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0)
    throw DomainError(std::string(name) + " must be a finite nonnegative rate");
}
}  // namespace detail

// Individual (lambda1) and team (lambda2) arrival rates of the 2v2 system.
// A team carries 2 players, so the player rate is lambda1 + 2*lambda2.
struct Rates2v2 {
  double lambda1;
  double lambda2;

  Rates2v2(double l1, double l2) : lambda1(l1), lambda2(l2) {
    detail::require_rate(l1, "lambda1");
    detail::require_rate(l2, "lambda2");
    if (l1 + l2 <= 0.0) throw DomainError("lambda1 + lambda2 must be positive");
  }

  double total() const { return lambda1 + 2.0 * lambda2; }
};

// Side-preferring (A, B) and choice-free (C) arrival rates of the side-selection
// system. `stable` caches the positive-recurrence condition lambdaC > |lambdaA - lambdaB|.
struct SideRates {
  double lambdaA;
  double lambdaB;
  double lambdaC;
  bool stable;

  SideRates(double a, double b, double c)
      : lambdaA(a), lambdaB(b), lambdaC(c), stable(c > std::abs(a - b)) {
    detail::require_rate(a, "lambdaA");
    detail::require_rate(b, "lambdaB");
    detail::require_rate(c, "lambdaC");
    if (a + b + c <= 0.0) throw DomainError("total arrival rate must be positive");
  }

  double total() const { return lambdaA + lambdaB + lambdaC; }
};

// Zone-A-only (A), zone-B-only (B) and choice-free (C) arrival rates of the
// two-zone system.
struct ZoneRates {
  double lambdaA;
  double lambdaB;
  double lambdaC;

  ZoneRates(double a, double b, double c) : lambdaA(a), lambdaB(b), lambdaC(c) {
    detail::require_rate(a, "lambdaA");
    detail::require_rate(b, "lambdaB");
    detail::require_rate(c, "lambdaC");
    if (a + b + c <= 0.0) throw DomainError("total arrival rate must be positive");
  }

  double total() const { return lambdaA + lambdaB + lambdaC; }
};

}  // namespace matchq
