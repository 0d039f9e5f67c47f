#include "irsnet/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "irsnet/rng.hpp"

namespace irsnet {

namespace {

// Deterministic fallback grid: sample quantiles at fixed probabilities.
std::vector<double> quantile_grid(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  static const double probs[] = {0.05, 0.1, 0.2, 0.3, 0.4, 0.5,
                                 0.6,  0.7, 0.8, 0.9, 0.95, 0.99};
  std::vector<double> grid;
  for (double q : probs) {
    double t = xs[static_cast<std::size_t>(q * (xs.size() - 1))];
    if (grid.empty() || t > grid.back()) grid.push_back(t);
  }
  return grid;
}

}  // namespace

std::vector<tail_point> empirical_tail(std::vector<double> samples,
                                       const std::vector<double>& thresholds) {
  std::sort(samples.begin(), samples.end());
  std::vector<tail_point> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) {
    std::size_t above =
        samples.end() - std::upper_bound(samples.begin(), samples.end(), t);
    wilson_ci w = wilson(above, samples.size());
    out.push_back({t, w.p_hat, w.lo, w.hi});
  }
  return out;
}

ensemble_stats run_ensemble(const system_params& p, long n,
                            std::uint64_t master_seed, int threads,
                            const grid_spec& grids) {
  validate(p);
  if (n < 1) throw domain_error("run_ensemble: need at least one trial");

  ensemble_stats st;
  st.n_trials = n;
  st.samples.resize(static_cast<std::size_t>(n));

  unsigned hw = std::thread::hardware_concurrency();
  int t_count = threads > 0 ? threads : static_cast<int>(hw ? hw : 1);
  t_count = static_cast<int>(std::min<long>(t_count, n));

  std::atomic<long> next{0};
  auto worker = [&]() {
    constexpr long grain = 16;
    for (;;) {
      long begin = next.fetch_add(grain);
      if (begin >= n) return;
      long end = std::min(begin + grain, n);
      for (long i = begin; i < end; ++i) {
        std::mt19937_64 rng =
            make_stream(master_seed, static_cast<std::uint64_t>(i));
        scenario s = build(p, rng);
        st.samples[static_cast<std::size_t>(i)] = conditional_powers(s);
      }
    }
  };
  if (t_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(t_count));
    for (int t = 0; t < t_count; ++t) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }

  std::vector<double> ps, pi, cap;
  ps.reserve(st.samples.size());
  pi.reserve(st.samples.size());
  cap.reserve(st.samples.size());
  for (const power_sample& s : st.samples) {
    ps.push_back(s.p_s);
    pi.push_back(s.p_i);
    cap.push_back(s.cap);
  }
  st.mean_ps = mean_with_ci(ps);
  st.mean_pi = mean_with_ci(pi);
  st.mean_cap = mean_with_ci(cap);

  for (int k = 1; k <= 3; ++k) {
    kahan_sum acc;
    for (double v : pi) acc.add(std::pow(v, k));
    st.moments_pi[static_cast<std::size_t>(k - 1)] =
        acc.value() / static_cast<double>(n);
  }

  st.survival_s = empirical_tail(
      ps, grids.thresholds_s.empty() ? quantile_grid(ps) : grids.thresholds_s);
  st.survival_i = empirical_tail(
      pi, grids.thresholds_i.empty() ? quantile_grid(pi) : grids.thresholds_i);
  st.outage = empirical_tail(
      cap, grids.alphas.empty() ? quantile_grid(cap) : grids.alphas);
  return st;
}

std::vector<std::pair<double, ensemble_stats>> sweep_lambda_irs(
    const system_params& p, const std::vector<double>& grid, long n,
    std::uint64_t master_seed, int threads, const grid_spec& grids) {
  std::vector<std::pair<double, ensemble_stats>> out;
  out.reserve(grid.size());
  for (double lambda : grid) {
    system_params q = p;
    q.lambda_irs = lambda;
    out.emplace_back(lambda, run_ensemble(q, n, master_seed, threads, grids));
  }
  return out;
}

}  // namespace irsnet
