#include <doctest.h>

#include <cmath>
#include <numeric>

#include "bdharq/loss_analytics.hpp"
#include "bdharq/planner.hpp"

using namespace bdharq;

namespace {

NetworkState net_at(double p) { return NetworkState{p, 1.0}; }

}  // namespace

TEST_CASE("slot decomposition: default layout") {
  const SystemParams sys;
  const SlotLayout layout = slot_decomposition(net_at(0.35), sys, {0.25, 2.0});
  CHECK(layout.packet_interval == doctest::Approx(0.08).epsilon(1e-12));
  CHECK(layout.packets_per_slot == 12);
  CHECK(layout.slot_count == 3);
  REQUIRE(layout.slot_failure_prob.size() == 3);
  // Slot 1 packets get 1 + d = 3 attempts at p = 0.35.
  CHECK(layout.slot_failure_prob[0] == doctest::Approx(0.042875).epsilon(1e-12));
  CHECK(layout.slot_failure_prob[1] == doctest::Approx(std::pow(0.35, 4.0)).epsilon(1e-12));
  CHECK(layout.slot_failure_prob[2] == doctest::Approx(std::pow(0.35, 5.0)).epsilon(1e-12));
}

TEST_CASE("slot decomposition: single-shot failure probability") {
  const SystemParams sys;
  const SlotLayout layout = slot_decomposition(net_at(0.5), sys, {0.0, 0.0});
  REQUIRE(layout.slot_count >= 1);
  CHECK(layout.slot_failure_prob[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("slot decomposition: window shorter than one rtt still yields a slot") {
  SystemParams sys;
  sys.packets_per_group = 2;  // group span 0.16 rtt, no delay budget
  sys.redundancy_step = 0.5;  // keep FEC counts integral at this group size
  const SlotLayout layout = slot_decomposition(net_at(0.2), sys, {0.0, 0.0});
  CHECK(layout.slot_count == 1);
}

TEST_CASE("slot decomposition: packet interval above rtt is a config error") {
  SystemParams sys;
  sys.packet_bytes = 20000.0;  // interval 1.6 at the default bitrate
  CHECK_THROWS_AS(slot_decomposition(net_at(0.2), sys, {0.0, 0.0}), ConfigError);
}

TEST_CASE("slot decomposition: plan bounds enforced") {
  const SystemParams sys;
  CHECK_THROWS_AS(slot_decomposition(net_at(0.2), sys, {0.7, 0.0}), DomainError);
  CHECK_THROWS_AS(slot_decomposition(net_at(0.2), sys, {0.25, 11.0}), DomainError);
  CHECK_THROWS_AS(slot_decomposition(net_at(0.2), sys, {0.013, 0.0}), DomainError);
}

TEST_CASE("loss moments: reference point") {
  const SystemParams sys;
  const LossMoments m = loss_moments(net_at(0.35), sys, {0.25, 2.0});
  CHECK(m.data_loss_mean == doctest::Approx(0.75760124999999978).epsilon(1e-12));
  CHECK(m.data_loss_var == doctest::Approx(0.73250878634882799).epsilon(1e-12));
  CHECK(m.fec_loss_mean == doctest::Approx(1.4).epsilon(1e-12));
  CHECK(m.fec_loss_var == doctest::Approx(0.91).epsilon(1e-12));
  CHECK(m.total_loss_mean == doctest::Approx(2.1576012499999999).epsilon(1e-12));
  CHECK(m.total_loss_var == doctest::Approx(1.6425087863488279).epsilon(1e-12));
}

TEST_CASE("loss moments: degenerate channels") {
  const SystemParams sys;
  const LossMoments lossless = loss_moments(net_at(0.0), sys, {0.25, 2.0});
  CHECK(lossless.total_loss_mean == 0.0);
  CHECK(lossless.total_loss_var == 0.0);

  const LossMoments dead = loss_moments(net_at(1.0), sys, {0.25, 0.0});
  CHECK(dead.fec_loss_mean == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(dead.fec_loss_var == 0.0);
}

TEST_CASE("standard normal cdf: reference values") {
  CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std_normal_cdf(0.5) == doctest::Approx(0.6914624612740131).epsilon(1e-12));
  CHECK(std_normal_cdf(-1.2) == doctest::Approx(0.11506967022170827).epsilon(1e-12));
  CHECK(std_normal_cdf(2.5) == doctest::Approx(0.99379033467422386).epsilon(1e-12));
  CHECK(std_normal_cdf(-3.0) == doctest::Approx(0.0013498980316300945).epsilon(1e-12));
  CHECK(std_normal_cdf(0.1234) == doctest::Approx(0.54910482146301453).epsilon(1e-12));
  CHECK(std_normal_cdf(1.4376) == doctest::Approx(0.92472620953671517).epsilon(1e-12));
  CHECK(std_normal_cdf(9.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std_normal_cdf(-40.0) == 0.0);
}

TEST_CASE("standard normal cdf: symmetry") {
  for (double z = -6.0; z <= 6.0; z += 0.37) {
    CHECK(std_normal_cdf(z) + std_normal_cdf(-z) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("gaussian recovery rate: reference and degenerate points") {
  const SystemParams sys;
  CHECK(recovery_rate_gaussian(net_at(0.35), sys, {0.25, 2.0}) ==
        doctest::Approx(0.92472231677032857).epsilon(1e-9));
  // Zero variance cases.
  CHECK(recovery_rate_gaussian(net_at(0.0), sys, {0.25, 2.0}) == 1.0);
  CHECK(recovery_rate_gaussian(net_at(0.0), sys, {0.0, 0.0}) == 1.0);
  CHECK(recovery_rate_gaussian(net_at(1.0), sys, {0.0, 0.0}) == 0.0);
}

TEST_CASE("exact loss pmf: normalization across the grid") {
  const SystemParams sys;
  for (const double p : {0.05, 0.35, 0.45, 0.999}) {
    for (const double r : {0.0, 0.25, 0.5}) {
      for (const double d : {0.0, 1.5, 10.0}) {
        const std::vector<double> pmf = exact_loss_pmf(net_at(p), sys, {r, d});
        const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        for (const double mass : pmf) {
          CHECK(mass >= 0.0);
        }
      }
    }
  }
}

TEST_CASE("exact recovery rate: reference points") {
  const SystemParams sys;
  CHECK(recovery_rate_exact(net_at(0.35), sys, {0.25, 2.0}) ==
        doctest::Approx(0.95790437915488535).epsilon(1e-9));
  CHECK(recovery_rate_exact(net_at(0.15), sys, {0.125, 1.5}) ==
        doctest::Approx(0.99567369175381115).epsilon(1e-9));
  CHECK(recovery_rate_exact(net_at(0.45), sys, {0.5, 0.0}) ==
        doctest::Approx(0.41430623411611622).epsilon(1e-9));
  CHECK(recovery_rate_exact(net_at(0.2), sys, {0.0625, 3.5}) ==
        doctest::Approx(0.99782452017828804).epsilon(1e-9));
  CHECK(recovery_rate_exact(net_at(0.05), sys, {0.0625, 1.0}) ==
        doctest::Approx(0.99801981457222033).epsilon(1e-9));
  CHECK(recovery_rate_exact(net_at(0.0), sys, {0.25, 2.0}) == 1.0);
}

TEST_CASE("gaussian counterpart of the exact reference points") {
  const SystemParams sys;
  CHECK(recovery_rate_gaussian(net_at(0.15), sys, {0.125, 1.5}) ==
        doctest::Approx(0.9950890608175933).epsilon(1e-9));
  CHECK(recovery_rate_gaussian(net_at(0.45), sys, {0.5, 0.0}) ==
        doctest::Approx(0.32654755746609099).epsilon(1e-9));
  CHECK(recovery_rate_gaussian(net_at(0.2), sys, {0.0625, 3.5}) ==
        doctest::Approx(0.97195350375659373).epsilon(1e-9));
  CHECK(recovery_rate_gaussian(net_at(0.05), sys, {0.0625, 1.0}) ==
        doctest::Approx(0.99946118285651253).epsilon(1e-9));
}

TEST_CASE("exact oracle: capacity guard") {
  SystemParams sys;
  sys.packets_per_group = 1;
  sys.redundancy_step = 1.0;
  sys.packet_bytes = 1.0;  // interval 8e-5, so one slot holds 12500 packets
  CHECK_THROWS_AS(exact_loss_pmf(net_at(0.1), sys, {0.0, 0.0}), CapacityError);
}

TEST_CASE("gaussian error report: lossless grid has zero gap") {
  const SystemParams sys;
  const std::vector<TransmissionPlan> grid = enumerate_grid(sys);
  const GaussianErrorReport report = gaussian_error_report(net_at(0.0), sys, grid);
  CHECK(report.rows.size() == grid.size());
  CHECK(report.max_abs_diff == 0.0);
}

TEST_CASE("gaussian error report: empty grid") {
  const SystemParams sys;
  const GaussianErrorReport report = gaussian_error_report(net_at(0.35), sys, {});
  CHECK(report.rows.empty());
  CHECK(report.max_abs_diff == 0.0);
}

// Regression of the measured approximation quality at the reference loss
// rate. The closed form is weakest at redundancy 0, where its threshold
// argument sits below the mean while the exact distribution still puts most
// mass on zero losses; the worst grid point pins that behavior.
TEST_CASE("gaussian error report: measured gap on the default grid at p=0.35") {
  const SystemParams sys;
  const std::vector<TransmissionPlan> grid = enumerate_grid(sys);
  const GaussianErrorReport report = gaussian_error_report(net_at(0.35), sys, grid);
  CHECK(report.max_abs_diff == doctest::Approx(0.53973276863666908).epsilon(1e-6));
  CHECK(report.rows[report.worst_index].plan.redundancy == 0.0);
  CHECK(report.rows[report.worst_index].plan.delay == doctest::Approx(5.0));
}

TEST_CASE("analytic recovery rates are monotone across the grid") {
  const SystemParams sys;
  const NetworkState net = net_at(0.35);
  // Nondecreasing in redundancy at fixed delay, and in delay at fixed
  // redundancy; nonincreasing in loss rate.
  for (int di = 0; di <= 20; ++di) {
    double prev = -1.0;
    for (int ri = 0; ri <= 8; ++ri) {
      const double xi = recovery_rate_exact(net, sys, {ri / 16.0, di * 0.5});
      CHECK(xi >= prev - 1e-12);
      prev = xi;
    }
  }
  for (int ri = 0; ri <= 8; ++ri) {
    double prev = -1.0;
    for (int di = 0; di <= 20; ++di) {
      const double xi = recovery_rate_exact(net, sys, {ri / 16.0, di * 0.5});
      CHECK(xi >= prev - 1e-12);
      prev = xi;
    }
  }
  double prev = 2.0;
  for (int pi = 1; pi <= 9; ++pi) {
    const double xi = recovery_rate_exact(net_at(pi * 0.05), sys, {0.25, 2.0});
    CHECK(xi <= prev + 1e-12);
    prev = xi;
  }
}
