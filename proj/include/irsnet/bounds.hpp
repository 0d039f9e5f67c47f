#pragma once
#include <string>
#include <utility>
#include <vector>

#include "irsnet/params.hpp"

namespace irsnet {

// One evaluated closed form; every additive block of the expression is kept
// as a named subterm so reports can show where the mass sits. total is the
// block sum; bs_part/irs_part split by originating process.
struct bound_breakdown {
  double total = 0.0;
  double bs_part = 0.0;
  double irs_part = 0.0;
  std::vector<std::pair<std::string, double>> blocks;
};

// Upper/lower mean-power bounds at the typical user. Non-finite blocks raise
// non_finite naming the block (small lambda_irs overflows the exp factors).
bound_breakdown ps_max(const system_params& p);
bound_breakdown ps_min(const system_params& p);
bound_breakdown pi_max(const system_params& p);
bound_breakdown pi_min(const system_params& p, const bound_params& bp);

// Moment-growth constants: E{p_i^p}^(1/p) <= K p^11 and the signal-side
// analogue with L p^9. The squared-triple factor is evaluated with exponent
// 2 (flagged in CSV metadata as kl_exponent=squared).
double k_coef(const system_params& p);
double l_coef(const system_params& p);

// Entire functions sum_p x^p/((11p)!) and sum_p x^p/((9p)!), evaluated by
// the exact roots-of-unity closed form with an internal series cross-check
// (skipped above x = 1e18, where the closed form saturates to +inf once
// x^(1/n) overflows exp). Domain x >= 0.
double g_fn(double x);
double h_fn(double x);

double tau_max_i(const system_params& p);  // 11^11 / (K e^11)
double tau_max_s(const system_params& p);  // 9^9 / (L e^9)

// Tail bounds Pr{p_i > t}, Pr{p_s > t}, clamped to 1. tau must lie in the
// open interval (0, tau_max); outside raises tau_out_of_domain.
double tail_bound_i(double t, double tau, const system_params& p);
double tail_bound_s(double t, double tau, const system_params& p);

// Pr{capacity > alpha} <= min{1, ps_max/(n0 (e^alpha - 1)), signal tail at
// t = n0 (e^alpha - 1)}.
double outage_bound(double alpha, double tau, const system_params& p);

enum class tail_kind { interference, signal, outage };
struct tau_opt {
  double tau = 0.0;
  double bound = 1.0;
};

// Minimizes the chosen bound over tau in the open domain (coarse scan plus
// golden-section refinement). target is the threshold t, or alpha for
// tail_kind::outage. A flat objective returns the domain midpoint; domain
// endpoints are never returned.
tau_opt optimize_tau(double target, const system_params& p, tail_kind which);

struct bound_set {
  bound_breakdown ps_max, ps_min, pi_max, pi_min;
  double k_coef = 0.0;
  double l_coef = 0.0;
  double tau_max_i = 0.0;
  double tau_max_s = 0.0;
  double lens_area_s = 0.0;  // fills bound_params.lens_area_s
  // Surfaced findings (negative parts, inverted sandwiches); never asserted
  // away here.
  std::vector<std::string> notes;
};

bound_set eval_bounds(const system_params& p, const bound_params& bp);

}  // namespace irsnet
