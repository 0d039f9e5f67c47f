#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "irsnet/bounds.hpp"
#include "irsnet/montecarlo.hpp"

using namespace irsnet;

namespace {

system_params small_net() {
  system_params p;
  p.q_elems = 8;
  p.lambda_bs = 2e-3;
  p.lambda_u = 3e-3;
  p.lambda_irs = 2e-3;
  return p;
}

bool same_samples(const ensemble_stats& a, const ensemble_stats& b) {
  if (a.samples.size() != b.samples.size()) return false;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    if (a.samples[i].p_s != b.samples[i].p_s) return false;
    if (a.samples[i].p_i != b.samples[i].p_i) return false;
    if (a.samples[i].cap != b.samples[i].cap) return false;
  }
  return true;
}

double var_of(const std::vector<double>& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double v = 0.0;
  for (double x : xs) v += (x - m) * (x - m);
  return v / static_cast<double>(xs.size() - 1);
}

}  // namespace

TEST_CASE("single trial pins the statistics") {
  ensemble_stats st = run_ensemble(small_net(), 1, 42, 1);
  REQUIRE(st.samples.size() == 1);
  CHECK(st.mean_ps.mean == st.samples[0].p_s);
  CHECK(st.mean_pi.mean == st.samples[0].p_i);
  CHECK(st.mean_cap.mean == st.samples[0].cap);
  CHECK(std::isinf(st.mean_ps.halfwidth));
  CHECK(st.moments_pi[0] == st.samples[0].p_i);
  CHECK(st.moments_pi[1] == doctest::Approx(std::pow(st.samples[0].p_i, 2)).epsilon(1e-15));
  CHECK(st.moments_pi[2] == doctest::Approx(std::pow(st.samples[0].p_i, 3)).epsilon(1e-15));
}

TEST_CASE("trial count below one is rejected") {
  CHECK_THROWS_AS(run_ensemble(small_net(), 0, 1, 1), domain_error);
}

TEST_CASE("thread count cannot change the results") {
  system_params p = small_net();
  ensemble_stats a = run_ensemble(p, 64, 2026, 1);
  ensemble_stats b = run_ensemble(p, 64, 2026, 4);
  ensemble_stats c = run_ensemble(p, 64, 2026, 0);  // hardware concurrency
  CHECK(same_samples(a, b));
  CHECK(same_samples(a, c));
  CHECK(a.mean_ps.mean == b.mean_ps.mean);
  CHECK(a.mean_ps.halfwidth == b.mean_ps.halfwidth);
  REQUIRE(a.survival_i.size() == b.survival_i.size());
  for (std::size_t i = 0; i < a.survival_i.size(); ++i) {
    CHECK(a.survival_i[i].t == b.survival_i[i].t);
    CHECK(a.survival_i[i].prob == b.survival_i[i].prob);
  }
  ensemble_stats again = run_ensemble(p, 64, 2026, 1);
  CHECK(same_samples(a, again));
}

TEST_CASE("zero-density sweep point equals a plain ensemble") {
  system_params p = small_net();
  auto swept = sweep_lambda_irs(p, {0.0}, 40, 17, 2);
  REQUIRE(swept.size() == 1);
  CHECK(swept[0].first == 0.0);
  system_params q = p;
  q.lambda_irs = 0.0;
  ensemble_stats direct = run_ensemble(q, 40, 17, 2);
  CHECK(same_samples(swept[0].second, direct));
}

TEST_CASE("negligible density shares every draw with zero density") {
  // Common random numbers across the sweep: when no IRS materializes the
  // remaining draws line up exactly with the zero-density stream.
  system_params p = small_net();
  auto swept = sweep_lambda_irs(p, {0.0, 1e-12}, 40, 58, 2);
  REQUIRE(swept.size() == 2);
  CHECK(same_samples(swept[0].second, swept[1].second));
}

TEST_CASE("ensemble mean variance shrinks like one over n") {
  system_params p = small_net();
  int reps = 800;
  std::vector<double> m_small, m_big;
  m_small.reserve(reps);
  m_big.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    m_small.push_back(
        run_ensemble(p, 25, 10000 + static_cast<std::uint64_t>(r), 0).mean_ps.mean);
    m_big.push_back(
        run_ensemble(p, 100, 90000 + static_cast<std::uint64_t>(r), 0).mean_ps.mean);
  }
  double ratio = var_of(m_small) / var_of(m_big);
  CHECK(ratio > 4.0 * 0.7);
  CHECK(ratio < 4.0 / 0.7);
}

TEST_CASE("interference moments sit under their growth cap") {
  system_params p;
  p.q_elems = 50;
  ensemble_stats st = run_ensemble(p, 2000, 314159, 0);
  double k = k_coef(p);
  for (int mp = 1; mp <= 3; ++mp) {
    double lhs = std::pow(st.moments_pi[static_cast<std::size_t>(mp - 1)],
                          1.0 / static_cast<double>(mp));
    CHECK(lhs <= k * std::pow(static_cast<double>(mp), 11.0));
  }
}

TEST_CASE("empirical tail handles edges and recovers the median") {
  std::vector<double> xs = {1.0, 2.0, 3.0, 4.0, 5.0};
  auto pts = empirical_tail(xs, {0.5, 2.0, 5.0, 9.0});
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].prob == 1.0);
  CHECK(pts[1].prob == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(pts[2].prob == 0.0);  // threshold at the max: nothing strictly above
  CHECK(pts[3].prob == 0.0);
  for (const auto& tp : pts) {
    CHECK(tp.lo <= tp.prob);
    CHECK(tp.prob <= tp.hi);
  }

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> u(10000);
  for (double& v : u) v = uni(rng);
  auto mid = empirical_tail(u, {0.5});
  CHECK(std::abs(mid[0].prob - 0.5) < 4.0 * std::sqrt(0.25 / 10000.0));
}

TEST_CASE("survival curves are monotone with probabilities in range") {
  ensemble_stats st = run_ensemble(small_net(), 400, 777, 0);
  for (const auto* curve : {&st.survival_s, &st.survival_i, &st.outage}) {
    REQUIRE(!curve->empty());
    for (std::size_t i = 0; i < curve->size(); ++i) {
      const tail_point& tp = (*curve)[i];
      CHECK(std::isfinite(tp.t));
      CHECK(tp.prob >= 0.0);
      CHECK(tp.prob <= 1.0);
      CHECK(tp.lo <= tp.prob);
      CHECK(tp.prob <= tp.hi);
      if (i > 0) {
        CHECK((*curve)[i - 1].t < tp.t);  // fallback grid is deduplicated
        CHECK((*curve)[i - 1].prob >= tp.prob);
      }
    }
  }
}

TEST_CASE("explicit threshold grids are honored") {
  grid_spec g;
  g.thresholds_s = {1e-9, 1e-6};
  g.thresholds_i = {1e-12, 1e-9, 1e-6};
  g.alphas = {0.1, 1.0, 10.0};
  ensemble_stats st = run_ensemble(small_net(), 50, 3, 2, g);
  REQUIRE(st.survival_s.size() == 2);
  REQUIRE(st.survival_i.size() == 3);
  REQUIRE(st.outage.size() == 3);
  CHECK(st.survival_s[0].t == 1e-9);
  CHECK(st.outage[2].t == 10.0);
}
