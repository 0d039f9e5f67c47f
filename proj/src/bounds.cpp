#include "irsnet/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "irsnet/geometry.hpp"

namespace irsnet {

namespace {

constexpr double pi = std::numbers::pi;

double sq(double x) { return x * x; }

// 1 - e^{-x}; the direct form wastes half the digits when x is tiny.
double omexp(double x) { return -std::expm1(-x); }

// x + e^{-x} - 1, which shrinks like x^2/2: the direct form cancels at
// magnitude max(1, |x|), so small arguments take the series.
double xpm1(double x) {
  if (std::abs(x) < 0.25) {
    double term = x * x / 2.0, sum = term;
    for (int k = 3; k <= 16; ++k) {
      term *= -x / k;
      sum += term;
    }
    return sum;
  }
  return x + std::expm1(-x);
}

// 1 - (1+x) e^{-x}, the other x^2/2-sized difference in the count terms.
double one_m_1px_emx(double x) {
  if (std::abs(x) < 0.25) {
    double term = x * x / 2.0, sum = term;
    for (int k = 3; k <= 16; ++k) {
      term *= -x / k;
      sum += term * (k - 1);
    }
    return sum;
  }
  return -std::expm1(-x) - x * std::exp(-x);
}

// Common shorthands; every bound below divides by |h_bs - h_irs| somewhere.
struct derived {
  double R, Q, dh, lam1, lam2, p_bs_nonempty, blockage_mean, w2, w4, lu;
  explicit derived(const system_params& p)
      : R(p.r_co),
        Q(p.q_elems),
        dh(p.h_bs - p.h_irs),
        lam1(p.lambda_irs * pi * p.r_co * p.r_co),
        lam2(p.lambda_irs * pi * sq(2.0 * p.r_co)),
        p_bs_nonempty(omexp(p.lambda_bs * pi * p.r_co * p.r_co)),
        blockage_mean(1.0 + (p.h_hat - 1.0) * p.p_b),
        w2(sq(p.lambda_wave)),
        w4(sq(sq(p.lambda_wave))),
        lu(p.lambda_u * pi * p.r_co * p.r_co) {}
};

void push_block(bound_breakdown& out, const std::string& owner,
                const std::string& name, double value, bool irs_side) {
  if (!std::isfinite(value)) throw non_finite(owner + "." + name);
  out.blocks.emplace_back(name, value);
  out.total += value;
  (irs_side ? out.irs_part : out.bs_part) += value;
}

// Ratio (x + e^{-x} - 1) / (1 - e^{-x}); shows up in every mean-count
// normalization of the interference bounds.
double count_ratio(double x) { return xpm1(x) / omexp(x); }

// lam^k * exp(c/(2*lam)) in log space: the bare exponential overflows well
// before the product does when lam is small.
double pow_exp(double lam, int k, double c) {
  return std::exp(k * std::log(lam) + c / (2.0 * lam));
}

}  // namespace

bound_breakdown ps_max(const system_params& p) {
  validate(p);
  derived d(p);
  bound_breakdown out;

  double lobe = (1.0 - p.delta) * std::acos(1.0 - p.epsilon) + p.delta * pi;
  double bs = (pi + (3.0 * d.lam1 + sq(d.lam1)) * lobe) / pi *
              d.blockage_mean * d.w2 * p.sigma_d_sq / (sq(d.R) * sq(4.0 * pi)) *
              std::log1p(sq(d.R / p.h_bs)) * d.p_bs_nonempty;
  push_block(out, "ps_max", "bs", bs, false);

  double single = ((3.0 * d.lam2 + sq(d.lam2)) + pow_exp(d.lam2, 3, 9.0)) /
                  sq(sq(4.0 * pi)) * 3.0 * d.Q * d.w4 * d.p_bs_nonempty *
                  p.sigma_d_sq /
                  std::sqrt(4.0 * (sq(d.dh) + 9.0 * sq(d.R)) *
                            (sq(p.h_irs) + 4.0 * sq(d.R))) /
                  (std::abs(d.dh) * p.h_irs);
  push_block(out, "ps_max", "irs_single", single, true);

  double pair = (pow_exp(d.lam2, 4, 16.0) + pow_exp(d.lam2, 3, 9.0) -
                 (sq(d.lam2) + 2.0 * d.lam2)) /
                (std::pow(4.0, 8) * sq(pi) * sq(sq(d.R))) * d.p_bs_nonempty *
                d.Q * (d.Q - 1.0) * d.w4 * (p.kappa / (p.kappa + 1.0)) *
                std::log1p(sq(3.0 * d.R / d.dh)) *
                std::log1p(sq(2.0 * d.R / p.h_irs)) * p.sigma_d_sq;
  push_block(out, "ps_max", "irs_pair", pair, true);

  // The trinomial of this block is parameterized by lambda_irs*(2R)^2, with
  // no pi factor, unlike the lam2 used above.
  double z = p.lambda_irs * sq(2.0 * d.R);
  double single_tail =
      d.p_bs_nonempty * d.Q * d.w4 * p.sigma_d_sq /
      (std::pow(4.0, 5) * sq(sq(pi)) * sq(d.R)) *
      std::sqrt(sq(2.0 * d.R) / ((sq(p.h_irs) + sq(2.0 * d.R)) * sq(p.h_irs))) *
      std::sqrt(sq(3.0 * d.R) / ((sq(d.dh) + sq(3.0 * d.R)) * sq(d.dh))) *
      (3.0 * z + 2.0 * sq(z) + pow_exp(z, 3, 9.0));
  push_block(out, "ps_max", "irs_single_tail", single_tail, true);
  return out;
}

bound_breakdown ps_min(const system_params& p) {
  validate(p);
  derived d(p);
  bound_breakdown out;

  double bs = d.p_bs_nonempty * d.w2 * d.blockage_mean * p.sigma_d_sq /
              (sq(4.0 * pi) * sq(d.R)) * std::log1p(sq(d.R / p.h_bs));
  push_block(out, "ps_min", "bs", bs, false);

  double m = std::max(sq(d.dh), sq(p.h_irs));
  double served_frac = one_m_1px_emx(d.lu) / (p.lambda_u * sq(d.R) * omexp(d.lu));
  double irs = p.lambda_irs * d.p_bs_nonempty * sq(p.delta) * d.Q * d.w4 *
               p.sigma_d_sq / sq(sq(4.0 * pi)) * served_frac *
               (sq(d.R) / (m + 3.0 * sq(d.R))) / (m + 4.0 * sq(d.R));
  push_block(out, "ps_min", "irs", irs, true);
  return out;
}

bound_breakdown pi_max(const system_params& p) {
  validate(p);
  derived d(p);
  bound_breakdown out;

  double bs = p.lambda_bs * (1.0 + 3.0 * d.lam1 + sq(d.lam1)) *
              d.blockage_mean * d.w2 * p.sigma_d_sq /
              (omexp(d.lu) * 16.0 * pi) * xpm1(d.lu) *
              std::log1p(sq(d.R / p.h_bs));
  push_block(out, "pi_max", "bs", bs, false);

  double prefix = d.w4 * xpm1(d.lu) * sq(d.Q) * d.p_bs_nonempty *
                  p.sigma_d_sq / (omexp(d.lu) * sq(sq(4.0 * pi)));
  double s2 =
      std::sqrt(sq(2.0 * d.R) / ((sq(p.h_irs) + sq(2.0 * d.R)) * sq(p.h_irs)));
  double s3 =
      std::sqrt(sq(3.0 * d.R) / ((sq(d.dh) + sq(3.0 * d.R)) * sq(d.dh)));
  double ll = pi * std::log1p(sq(2.0 * d.R / p.h_irs)) *
              std::log1p(sq(3.0 * d.R / d.dh));

  push_block(out, "pi_max", "irs_near_cube",
             prefix * pow_exp(d.lam2, 3, 9.0) / (4.0 * sq(d.R)) * s2 * s3, true);
  push_block(out, "pi_max", "irs_near_poly",
             prefix * (2.0 * sq(d.lam2) + 3.0 * d.lam2) / (4.0 * sq(d.R)) * s2 * s3,
             true);
  push_block(out, "pi_max", "irs_far_quartic",
             prefix * pow_exp(d.lam2, 4, 16.0) / (4.0 * sq(sq(d.R))) * ll, true);
  push_block(out, "pi_max", "irs_far_cube",
             prefix * pow_exp(d.lam2, 3, 9.0) / (4.0 * sq(sq(d.R))) * ll, true);
  push_block(out, "pi_max", "irs_far_correction",
             -prefix * (sq(d.lam2) + 2.0 * d.lam2) / (4.0 * sq(sq(d.R))) * ll,
             true);

  double mix = xpm1(d.lu) * p.lambda_bs /
               (std::pow(4.0, 5) * pi * sq(pi) * omexp(d.lu)) *
               d.Q * d.w4 * p.sigma_d_sq / sq(d.R) *
               std::log1p(sq(d.R / d.dh)) * std::log1p(sq(2.0 * d.R / p.h_irs)) *
               (pow_exp(d.lam2, 3, 9.0) + 2.0 * sq(d.lam2) + 3.0 * d.lam2);
  push_block(out, "pi_max", "bs_irs_mix", mix, true);
  return out;
}

bound_breakdown pi_min(const system_params& p, const bound_params& bp) {
  validate(p);
  validate(bp, p);
  derived d(p);
  bound_breakdown out;

  double S = lens_area_closed(bp.b, d.R);
  double ls = p.lambda_u * S;
  double outer = pi * (4.0 * sq(d.R) - sq(bp.b));
  double bs = omexp(p.lambda_bs * outer) * sq(p.delta) *
              p.sigma_d_sq * omexp(p.lambda_bs * pi * sq(bp.b)) *
              d.blockage_mean * d.w2 /
              (p.lambda_bs * outer * sq(4.0 * pi) * (sq(p.h_bs) + sq(d.R))) *
              count_ratio(ls);
  push_block(out, "pi_min", "bs", bs, false);

  double m = std::max(sq(d.dh), sq(p.h_irs));
  double near = p.lambda_u * pi * sq(d.R / 2.0 - bp.d) +
                std::expm1(-p.lambda_u * pi * sq(d.R / 2.0 + bp.d));
  double far_mass = p.lambda_u * pi * 3.0 * sq(d.R);
  double far_norm = p.lambda_u * pi * 4.0 * sq(d.R);
  double far =
      (omexp(far_mass) - far_norm * std::exp(-far_mass)) / sq(far_norm);
  double ring = (p.kappa / (p.kappa + 1.0)) * d.p_bs_nonempty * d.Q *
                (d.Q - 1.0) * sq(d.lam1) * d.w4 * sq(p.delta) * p.sigma_d_sq /
                (std::pow(4.0, 6) * sq(pi) * sq(sq(d.R))) *
                std::max(near, 0.0) *
                (2.0 * bp.d * omexp(p.lambda_bs * 3.0 * pi * sq(d.R)) /
                 (omexp(p.lambda_u * pi * sq(d.R / 2.0 + bp.d)) *
                  p.lambda_bs * 3.0 * pi * sq(d.R) * d.R)) *
                std::max(0.0, far) *
                sq(std::log((m + 4.0 * sq(d.R)) / (m + 3.0 * sq(d.R))));
  push_block(out, "pi_min", "irs_pair_ring", ring, true);

  double lens = count_ratio(ls) * std::log1p(sq(bp.b / p.h_irs)) * d.Q * d.w4 *
                sq(p.delta) * p.lambda_irs *
                omexp(p.lambda_bs * outer) *
                omexp(p.lambda_bs * pi * sq(bp.b)) * p.sigma_d_sq /
                (p.lambda_bs * outer * std::pow(4.0, 4) * pi * sq(pi) *
                 (sq(d.dh) + sq(d.R)));
  push_block(out, "pi_min", "irs_single_lens", lens, true);
  return out;
}

namespace {

double moment_constant(const system_params& p, bool with_user_factors) {
  derived d(p);
  double area4 = p.lambda_u * 4.0 * pi * sq(d.R);
  double triple = std::max(1.0, p.lambda_wave / (4.0 * pi * p.h_bs)) *
                  std::max(1.0, p.lambda_wave / (4.0 * pi * d.dh)) *
                  std::max(1.0, p.lambda_wave / (4.0 * pi * p.h_irs));
  double stirling = std::pow(2.0, 11) * std::pow(pi, 5) * std::pow(3.0, 1.5) *
                    std::exp(35.0 / 12.0);
  double irs_factor =
      8.0 * std::max(1.0, 1.0 / std::log1p(1.0 / (p.lambda_irs * 4.0 * pi * sq(d.R))));
  double bs_factor = 2.0 / std::log1p(1.0 / (p.lambda_bs * 4.0 * pi * sq(d.R)));
  double value = sq(d.Q) * 64.0 * p.sigma_d_sq * sq(triple) * stirling *
                 (18.0 / std::exp(3.0)) * sq(sq(irs_factor)) * sq(bs_factor);
  if (with_user_factors) {
    double u_factor = 2.0 / std::log1p(1.0 / area4);
    value *= sq(u_factor) / omexp(area4);
  }
  return value;
}

// Closed form of sum_p x^p/((n p)!) via n-th roots of unity, with a series
// cross-check; saturates to +inf once x^(1/n) overflows exp.
double root_series(double x, int n, const char* name) {
  if (x < 0.0) throw domain_error(std::string(name) + ": x must be >= 0");
  double root = std::pow(x, 1.0 / n);
  if (root > 708.0) return std::numeric_limits<double>::infinity();
  std::complex<double> acc{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * pi * k / n;
    acc += std::exp(std::polar(root, ang));
  }
  acc /= static_cast<double>(n);
  if (std::abs(acc.imag()) > 1e-9 * std::max(1.0, std::abs(acc.real())))
    throw non_finite(std::string(name) + ".imaginary_residue");
  if (x <= 1e18) {
    double term = 1.0, series = 1.0;
    for (int p = 1; p <= 400; ++p) {
      for (int i = n * (p - 1) + 1; i <= n * p; ++i) term /= i;
      term *= x;
      series += term;
      if (term < 1e-18 * series) break;
    }
    if (std::abs(series - acc.real()) > 1e-9 * std::max(1.0, std::abs(series)))
      throw non_finite(std::string(name) + ".series_mismatch");
  }
  return acc.real();
}

}  // namespace

double k_coef(const system_params& p) {
  validate(p);
  return moment_constant(p, true);
}

double l_coef(const system_params& p) {
  validate(p);
  return moment_constant(p, false);
}

double g_fn(double x) { return root_series(x, 11, "g_fn"); }
double h_fn(double x) { return root_series(x, 9, "h_fn"); }

double tau_max_i(const system_params& p) {
  return std::pow(11.0, 11) / (k_coef(p) * std::exp(11.0));
}

double tau_max_s(const system_params& p) {
  return std::pow(9.0, 9) / (l_coef(p) * std::exp(9.0));
}

namespace {

double tail_eval(double t, double tau, double tau_cap, double fn(double)) {
  if (t < 0.0) throw domain_error("tail bound: threshold must be >= 0");
  if (!(tau > 0.0) || !(tau < tau_cap))
    throw tau_out_of_domain("tau outside (0, " + std::to_string(tau_cap) + ")");
  double raw = 1.0 / ((1.0 - tau / tau_cap) * fn(tau * t));
  return std::min(raw, 1.0);
}

}  // namespace

double tail_bound_i(double t, double tau, const system_params& p) {
  return tail_eval(t, tau, tau_max_i(p), g_fn);
}

double tail_bound_s(double t, double tau, const system_params& p) {
  return tail_eval(t, tau, tau_max_s(p), h_fn);
}

double outage_bound(double alpha, double tau, const system_params& p) {
  if (!(alpha > 0.0)) throw domain_error("outage_bound: alpha must be > 0");
  double t = p.n0 * std::expm1(alpha);
  double markov = t > 0.0 ? ps_max(p).total / t
                          : std::numeric_limits<double>::infinity();
  return std::min({1.0, markov, tail_bound_s(t, tau, p)});
}

tau_opt optimize_tau(double target, const system_params& p, tail_kind which) {
  double cap = which == tail_kind::interference ? tau_max_i(p) : tau_max_s(p);
  if (!(cap > 0.0) || !std::isfinite(cap))
    throw tau_out_of_domain("empty tau domain");
  auto objective = [&](double tau) {
    switch (which) {
      case tail_kind::interference:
        return tail_bound_i(target, tau, p);
      case tail_kind::signal:
        return tail_bound_s(target, tau, p);
      default:
        return outage_bound(target, tau, p);
    }
  };

  // Coarse scan, linear and log spaced, over the open interval.
  std::vector<double> taus;
  const int n_lin = 1024, n_log = 1024;
  for (int i = 0; i < n_lin; ++i)
    taus.push_back(cap * (i + 0.5) / n_lin);
  for (int i = 0; i < n_log; ++i)
    taus.push_back(cap * std::pow(10.0, -12.0 * (1.0 - (i + 0.5) / n_log)));
  std::sort(taus.begin(), taus.end());

  double best_tau = taus[0], best = objective(taus[0]);
  double worst = best;
  std::size_t best_idx = 0;
  for (std::size_t i = 1; i < taus.size(); ++i) {
    double v = objective(taus[i]);
    if (v < best) {
      best = v;
      best_tau = taus[i];
      best_idx = i;
    }
    worst = std::max(worst, v);
  }
  if (worst - best <= 1e-12 * std::max(1.0, std::abs(best)))
    return {cap / 2.0, objective(cap / 2.0)};

  double lo = best_idx > 0 ? taus[best_idx - 1] : taus[0] * 0.5;
  double hi = best_idx + 1 < taus.size() ? taus[best_idx + 1]
                                         : 0.5 * (taus.back() + cap);
  const double golden = 0.61803398874989485;
  double a = lo, b = hi;
  double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
  double f1 = objective(x1), f2 = objective(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12 * cap; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - golden * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + golden * (b - a);
      f2 = objective(x2);
    }
  }
  double tau = 0.5 * (a + b);
  if (f1 < objective(tau)) tau = x1;
  if (best < objective(tau)) tau = best_tau;
  return {tau, objective(tau)};
}

bound_set eval_bounds(const system_params& p, const bound_params& bp) {
  validate(p);
  validate(bp, p);
  bound_set set;
  set.lens_area_s = lens_area_closed(bp.b, p.r_co);
  set.ps_max = ps_max(p);
  set.ps_min = ps_min(p);
  set.pi_max = pi_max(p);
  set.pi_min = pi_min(p, bp);
  set.k_coef = k_coef(p);
  set.l_coef = l_coef(p);
  set.tau_max_i = tau_max_i(p);
  set.tau_max_s = tau_max_s(p);

  auto scan_negative = [&set](const bound_breakdown& b, const char* name) {
    for (const auto& [block, value] : b.blocks)
      if (value < 0.0)
        set.notes.push_back(std::string(name) + "." + block +
                            " is negative: vacuous but valid side of the bound");
  };
  scan_negative(set.ps_max, "ps_max");
  scan_negative(set.ps_min, "ps_min");
  scan_negative(set.pi_max, "pi_max");
  scan_negative(set.pi_min, "pi_min");
  if (set.lens_area_s < 0.0)
    set.notes.push_back("lens_area_s is negative: closed-form lens expression "
                        "differs from the true intersection area");
  if (set.ps_min.total > set.ps_max.total)
    set.notes.push_back("ps_min exceeds ps_max");
  if (set.pi_min.total > set.pi_max.total)
    set.notes.push_back("pi_min exceeds pi_max");
  return set;
}

}  // namespace irsnet
