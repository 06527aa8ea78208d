#include "matchq/stats.hpp"

#include <cmath>
#include <limits>

#include "matchq/errors.hpp"

namespace matchq::stats {

void Accumulator::update(double sample) {
  if (!std::isfinite(sample) || sample < 0.0)
    throw DomainError("samples must be finite and nonnegative");
  ++n_;
  const double delta = sample - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (sample - mean_);
}

Accumulator Accumulator::merged(const Accumulator& a, const Accumulator& b) {
  if (a.n_ == 0) return b;
  if (b.n_ == 0) return a;
  Accumulator out;
  const double na = static_cast<double>(a.n_);
  const double nb = static_cast<double>(b.n_);
  const double delta = b.mean_ - a.mean_;
  out.n_ = a.n_ + b.n_;
  out.mean_ = a.mean_ + delta * nb / (na + nb);
  out.m2_ = a.m2_ + b.m2_ + delta * delta * na * nb / (na + nb);
  return out;
}

WaitSummary finalize(const std::string& label, const std::vector<Accumulator>& replications) {
  constexpr double z99 = 2.576;

  Accumulator pooled;
  Accumulator repMeans;
  for (const auto& rep : replications) {
    pooled = Accumulator::merged(pooled, rep);
    if (rep.count() > 0) repMeans.update(rep.mean());
  }

  WaitSummary out;
  out.label = label;
  out.count = pooled.count();
  out.mean = pooled.mean();
  out.variance = pooled.variance();
  if (repMeans.count() >= 2) {
    const double se = std::sqrt(repMeans.variance() / static_cast<double>(repMeans.count()));
    out.ciHalfWidth = z99 * se;
  } else {
    out.ciHalfWidth = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace matchq::stats
