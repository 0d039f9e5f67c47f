#pragma once
#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "irsnet/scenario.hpp"
#include "irsnet/stats.hpp"

namespace irsnet {

// One survival point: prob = Pr{X > t} with its 95% Wilson interval.
struct tail_point {
  double t = 0.0;
  double prob = 0.0;
  double lo = 0.0;
  double hi = 1.0;
};

struct ensemble_stats {
  long n_trials = 0;
  mean_ci mean_ps, mean_pi, mean_cap;
  std::vector<tail_point> survival_s;  // Pr{p_s > t}
  std::vector<tail_point> survival_i;  // Pr{p_i > t}
  std::vector<tail_point> outage;      // Pr{cap > alpha}
  std::array<double, 3> moments_pi{};  // E{p_i^p}, p = 1..3
  std::vector<power_sample> samples;   // per trial, trial-index order
};

// Threshold grids for the empirical curves; an empty list falls back to
// deterministic sample quantiles.
struct grid_spec {
  std::vector<double> thresholds_s;
  std::vector<double> thresholds_i;
  std::vector<double> alphas;
};

// Trial i always uses the stream derived from (master_seed, i) and results
// aggregate in trial-index order, so output is bit-identical for any thread
// count. threads <= 0 means hardware concurrency.
ensemble_stats run_ensemble(const system_params& p, long n,
                            std::uint64_t master_seed, int threads,
                            const grid_spec& grids = {});

// One ensemble per lambda_irs value, all from the same master seed (common
// random numbers: BS/user geometry and direct channels coincide trialwise).
std::vector<std::pair<double, ensemble_stats>> sweep_lambda_irs(
    const system_params& p, const std::vector<double>& grid, long n,
    std::uint64_t master_seed, int threads, const grid_spec& grids = {});

// Survival estimates over sorted thresholds. Thresholds below the sample
// minimum give probability 1, above the maximum give 0.
std::vector<tail_point> empirical_tail(std::vector<double> samples,
                                       const std::vector<double>& thresholds);

}  // namespace irsnet
