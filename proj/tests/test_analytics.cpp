#include <cmath>

#include "doctest.h"
#include "matchq/analytics.hpp"
#include "matchq/errors.hpp"
#include "oracles.hpp"

using namespace matchq;
using namespace matchq::analytics;

TEST_CASE("k-player mean wait is (k-1)/(2 lambda)") {
  CHECK(k_player_mean_wait(2, 1.0) == 0.5);
  CHECK(k_player_mean_wait(4, 1.0) == 1.5);
  CHECK(k_player_mean_wait(8, 1.0) == 3.5);
  CHECK(k_player_mean_wait(1, 3.0) == 0.0);
  for (int k = 1; k <= 8; ++k) {
    for (double lambda : {0.5, 1.0, 2.0}) {
      const auto oracle = testsupport::erlang_mixture_k_player(k, lambda);
      CHECK(k_player_mean_wait(k, lambda) ==
            doctest::Approx(oracle.mean).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS(k_player_mean_wait(0, 1.0), DomainError);
  CHECK_THROWS_AS(k_player_mean_wait(4, 0.0), DomainError);
  CHECK_THROWS_AS(k_player_mean_wait(4, -1.0), DomainError);
}

TEST_CASE("central 2v2 mean wait depends only on the total rate") {
  CHECK(central_2v2_mean_wait({1.0, 0.0}) == 1.5);
  CHECK(central_2v2_mean_wait({0.5, 0.25}) == 1.5);
  CHECK(central_2v2_mean_wait({0.2, 0.4}) == 1.5);
  CHECK(central_2v2_mean_wait({1.0, 0.5}) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(central_2v2_mean_wait({0.0, 0.5}), DegenerateModel);
}

TEST_CASE("two-queue closed forms at the reference point") {
  const auto s = two_queue_stats({0.5, 0.25});
  CHECK(s.meanIndividual == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(s.meanTeam == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s.meanOverall == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(s.variancePrinted == doctest::Approx(5.25).epsilon(1e-15));
  CHECK_THROWS_AS(two_queue_stats({0.0, 0.5}), DomainError);
  CHECK_THROWS_AS(two_queue_stats({1.0, 0.0}), DomainError);
}

TEST_CASE("two-queue overall mean is the player-weighted mixture") {
  for (double l1 : {0.1, 0.4, 0.8}) {
    for (double l2 : {0.05, 0.25, 0.6}) {
      const auto s = two_queue_stats({l1, l2});
      const double lt = l1 + 2.0 * l2;
      CHECK(s.meanOverall ==
            doctest::Approx((l1 * s.meanIndividual + 2.0 * l2 * s.meanTeam) / lt)
                .epsilon(1e-12));
      CHECK(s.meanOverall == doctest::Approx(5.0 / (2.0 * lt)).epsilon(1e-12));
    }
  }
}

TEST_CASE("minimum-variance ratio matches an exhaustive grid scan") {
  const double ratio = two_queue_min_variance_ratio();
  CHECK(ratio == 2.0 * std::sqrt(33.0) - 11.0);
  const double argmin = testsupport::grid_argmin(
      [](double x) {
        return two_queue_stats({x, (1.0 - x) / 2.0}).variancePrinted;
      },
      0.01, 0.99, 1e-4);
  CHECK(std::abs(argmin - ratio) < 1e-3);
}

TEST_CASE("printed central variances at hand-checked points") {
  CHECK(central_variance_printed({1.0, 0.0}, ServiceOrder::FIFO) ==
        doctest::Approx(1.25).epsilon(1e-15));
  CHECK(central_variance_printed({1.0, 0.0}, ServiceOrder::LIFO) ==
        doctest::Approx(1.75).epsilon(1e-15));
  CHECK(central_variance_printed({0.5, 0.25}, ServiceOrder::FIFO) ==
        doctest::Approx(2.614197530864198).epsilon(1e-12));
  CHECK(central_variance_printed({0.5, 0.25}, ServiceOrder::LIFO) ==
        doctest::Approx(3.6265432098765427).epsilon(1e-12));
  for (double l1 : {0.2, 0.5, 0.9}) {
    const Rates2v2 r{l1, (1.0 - l1) / 2.0};
    CHECK(central_variance_printed(r, ServiceOrder::Packing) ==
          central_variance_printed(r, ServiceOrder::FIFO));
  }
  CHECK_THROWS_AS(central_variance_printed({0.5, 0.25}, ServiceOrder::TwoQueue),
                  DomainError);
  CHECK_THROWS_AS(central_variance_printed({0.0, 0.5}, ServiceOrder::FIFO),
                  DegenerateModel);
}

TEST_CASE("side-selection closed forms at the reference point") {
  const auto s = side_selection_stats({0.3, 0.3, 0.4});
  CHECK(s.pi0 == doctest::Approx(1.0 / 2.9).epsilon(1e-14));
  CHECK(s.meanA == doctest::Approx(1.5086206896551728).epsilon(1e-12));
  CHECK(s.meanB == doctest::Approx(1.5086206896551728).epsilon(1e-12));
  CHECK(s.meanC == doctest::Approx(0.3448275862068966).epsilon(1e-12));
  CHECK(s.meanOverall == doctest::Approx(1.0431034482758623).epsilon(1e-12));
  CHECK(s.improvementFactor == doctest::Approx(0.22857142857142862).epsilon(1e-12));
}

TEST_CASE("side-selection identities over a stable grid") {
  for (double la : {0.1, 0.25, 0.3}) {
    for (double lb : {0.1, 0.2, 0.3}) {
      const double lc = 1.0 - la - lb;
      if (!(lc > std::abs(la - lb) + 0.05)) continue;
      const auto s = side_selection_stats({la, lb, lc});
      const double weighted = (la * s.meanA + lb * s.meanB + lc * s.meanC);
      CHECK(s.meanOverall == doctest::Approx(weighted).epsilon(1e-12));
      CHECK(s.improvementFactor ==
            doctest::Approx(s.meanC / s.meanB).epsilon(1e-12));
      CHECK(s.meanC == doctest::Approx(s.pi0).epsilon(1e-14));  // lambda_total = 1
      const auto swapped = side_selection_stats({lb, la, lc});
      CHECK(swapped.meanA == doctest::Approx(s.meanB).epsilon(1e-13));
      CHECK(swapped.meanB == doctest::Approx(s.meanA).epsilon(1e-13));
    }
  }
}

TEST_CASE("side-selection refuses outside the stability region") {
  CHECK_THROWS_AS(side_selection_stats({0.5, 0.3, 0.2}), Unstable);
  CHECK_THROWS_AS(side_selection_stats({0.3, 0.3, 0.0}), Unstable);
  CHECK_THROWS_AS(side_selection_stats({0.6, 0.1, 0.3}), Unstable);
  const auto s = side_selection_stats({0.0, 0.0, 1.0});
  CHECK(s.meanA == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(s.meanOverall == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("q derivative closed form, finite differences, and sign") {
  CHECK(side_selection_q_derivative(0.4) ==
        doctest::Approx(-1.2222222222222223).epsilon(1e-14));
  for (double lb : {0.1, 0.3, 0.45}) {
    const auto q = [](double b) {
      return side_selection_stats({b, b, 1.0 - 2.0 * b}).improvementFactor;
    };
    const double fd = testsupport::central_difference(q, lb, 1e-6);
    CHECK(side_selection_q_derivative(lb) ==
          doctest::Approx(fd).epsilon(1e-4));
  }
  for (double lb = 0.01; lb < 0.495; lb += 0.01) {
    CHECK(side_selection_q_derivative(lb) < 0.0);
  }
  CHECK_THROWS_AS(side_selection_q_derivative(0.0), DomainError);
  CHECK_THROWS_AS(side_selection_q_derivative(0.5), DomainError);
  CHECK_THROWS_AS(side_selection_q_derivative(-0.1), DomainError);
}

TEST_CASE("two-zone closed forms at hand-checked points") {
  const auto eq = two_zone_stats({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  CHECK(eq.pi0 == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(eq.meanA == doctest::Approx(0.9375).epsilon(1e-13));
  CHECK(eq.meanB == doctest::Approx(0.9375).epsilon(1e-13));
  CHECK(eq.meanC == doctest::Approx(0.375).epsilon(1e-13));
  CHECK(eq.improvementFactor == doctest::Approx(0.4).epsilon(1e-13));

  const auto skew = two_zone_stats({0.7, 0.2, 0.1});
  CHECK(skew.pi0 == doctest::Approx(0.30456852791878175).epsilon(1e-12));
  CHECK(skew.meanA == doctest::Approx(0.6598984771573605).epsilon(1e-12));
  CHECK(skew.meanB == doctest::Approx(1.9923857868020305).epsilon(1e-12));
  CHECK(skew.meanC == doctest::Approx(0.3045685279187818).epsilon(1e-12));
  CHECK(skew.meanOverall == doctest::Approx(0.8908629441624367).epsilon(1e-12));
  CHECK(skew.improvementFactor ==
        doctest::Approx(0.15286624203821658).epsilon(1e-12));
}

TEST_CASE("two-zone identities over a rate grid") {
  for (double la : {0.2, 0.5, 0.8}) {
    for (double lb : {0.1, 0.4, 0.7}) {
      for (double lc : {0.0, 0.2, 0.6}) {
        if (la + lc == 0.0 || lb + lc == 0.0) continue;
        const ZoneRates r{la, lb, lc};
        const auto s = two_zone_stats(r);
        const double lt = la + lb + lc;
        CHECK(s.meanOverall ==
              doctest::Approx((la * s.meanA + lb * s.meanB + lc * s.meanC) / lt)
                  .epsilon(1e-12));
        CHECK(s.meanC == doctest::Approx(s.pi0 / lt).epsilon(1e-13));
        CHECK(s.improvementFactor ==
              doctest::Approx(s.meanC / s.meanB).epsilon(1e-12));
        const auto swapped = two_zone_stats({lb, la, lc});
        CHECK(swapped.meanA == doctest::Approx(s.meanB).epsilon(1e-13));
        CHECK(swapped.meanB == doctest::Approx(s.meanA).epsilon(1e-13));
        CHECK(swapped.pi0 == doctest::Approx(s.pi0).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("two-zone q landmarks") {
  CHECK(two_zone_stats({0.5, 0.5, 0.0}).improvementFactor ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(two_zone_stats({0.8, 0.2, 0.0}).improvementFactor ==
        doctest::Approx(0.1).epsilon(1e-14));
  CHECK(two_zone_stats({0.3, 0.7, 0.0}).improvementFactor ==
        doctest::Approx(0.35).epsilon(1e-14));
  for (double x : {0.1, 0.2, 0.35, 0.5}) {
    for (double c : {0.0, 0.1, 0.25, 0.4}) {
      CHECK(two_zone_stats({x, x, c}).improvementFactor ==
            doctest::Approx((x + c) / (4.0 * x + c)).epsilon(1e-12));
    }
  }
}

TEST_CASE("two-zone rejects starved zones") {
  CHECK_THROWS_AS(two_zone_stats({0.0, 1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(two_zone_stats({1.0, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(two_zone_stats({0.0, 0.0, 0.0}), DomainError);
}
