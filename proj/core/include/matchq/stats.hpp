#pragma once

#include <string>
#include <vector>

namespace matchq::stats {

// Single-pass mean/variance accumulator (Welford update, Chan merge).
class Accumulator {
 public:
  void update(double sample);
  static Accumulator merged(const Accumulator& a, const Accumulator& b);

  long long count() const { return n_; }
  double mean() const { return n_ > 0 ? mean_ : 0.0; }
  // Unbiased sample variance; 0 for fewer than two samples.
  double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }

 private:
  long long n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

struct WaitSummary {
  std::string label;
  long long count = 0;
  double mean = 0.0;
  double variance = 0.0;
  // 99% half-width from across-replication variance of replication means;
  // NaN when fewer than two replications contribute.
  double ciHalfWidth = 0.0;
};

// Pools per-replication accumulators for one class and attaches the batch-means CI.
WaitSummary finalize(const std::string& label, const std::vector<Accumulator>& replications);

}  // namespace matchq::stats
