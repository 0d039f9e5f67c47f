#pragma once
// Reference transcription of every closed form evaluated by the bounds
// module, kept deliberately independent of src/bounds.cpp: long double
// arithmetic, monolithic expressions, no shared helpers. Tests require the
// two to agree to 1e-12 relative on random parameter draws; disagreement
// means one transcription drifted and blocks release.
#include <cmath>
#include <complex>

#include "irsnet/params.hpp"

namespace oracle {

constexpr long double PI = 3.141592653589793238462643383279502884L;

inline long double powi(long double x, int n) {
  long double r = 1.0L;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// ---- mean signal power, upper ----------------------------------------
inline long double ps_max_bs(const irsnet::system_params& p) {
  long double R = p.r_co, lam1 = p.lambda_irs * PI * R * R;
  long double ang = (1.0L - (long double)p.delta) * std::acos(1.0L - (long double)p.epsilon) +
                    (long double)p.delta * PI;
  long double front = (PI + (3.0L * lam1 + lam1 * lam1) * ang) / PI;
  return front * (1.0L + ((long double)p.h_hat - 1.0L) * p.p_b) *
         powi(p.lambda_wave, 2) * (long double)p.sigma_d_sq /
         (R * R * powi(4.0L * PI, 2)) *
         std::log(1.0L + (R / p.h_bs) * (R / p.h_bs)) *
         (1.0L - std::exp(-(long double)p.lambda_bs * PI * R * R));
}

inline long double ps_max_irs(const irsnet::system_params& p) {
  long double R = p.r_co, Q = p.q_elems;
  long double lam2 = p.lambda_irs * PI * (2.0L * R) * (2.0L * R);
  long double dh = (long double)p.h_bs - p.h_irs;
  long double pbs = 1.0L - std::exp(-(long double)p.lambda_bs * PI * R * R);
  long double w4 = powi(p.lambda_wave, 4), sd = p.sigma_d_sq;

  long double b1 = ((3.0L * lam2 + lam2 * lam2) +
                    powi(lam2, 3) * std::exp(9.0L / (2.0L * lam2))) /
                   powi(4.0L * PI, 4) * 3.0L * Q * w4 * pbs * sd /
                   std::sqrt(4.0L * (dh * dh + 9.0L * R * R) *
                             ((long double)p.h_irs * p.h_irs + 4.0L * R * R)) /
                   (std::fabs(dh) * (long double)p.h_irs);

  long double b2 = (powi(lam2, 4) * std::exp(16.0L / (2.0L * lam2)) +
                    powi(lam2, 3) * std::exp(9.0L / (2.0L * lam2)) -
                    (lam2 * lam2 + 2.0L * lam2)) /
                   (powi(4.0L, 8) * PI * PI * powi(R, 4)) * pbs * Q * (Q - 1.0L) *
                   w4 * ((long double)p.kappa / (p.kappa + 1.0L)) *
                   std::log(1.0L + (3.0L * R / dh) * (3.0L * R / dh)) *
                   std::log(1.0L + (2.0L * R / p.h_irs) * (2.0L * R / p.h_irs)) * sd;

  long double z = p.lambda_irs * (2.0L * R) * (2.0L * R);
  long double b3 = pbs * Q * w4 * sd / (powi(4.0L, 5) * powi(PI, 4) * R * R) *
                   std::sqrt((2.0L * R) * (2.0L * R) /
                             (((long double)p.h_irs * p.h_irs + 4.0L * R * R) *
                              (long double)p.h_irs * p.h_irs)) *
                   std::sqrt((3.0L * R) * (3.0L * R) /
                             ((dh * dh + 9.0L * R * R) * dh * dh)) *
                   (3.0L * z + 2.0L * z * z +
                    powi(z, 3) * std::exp(9.0L / (2.0L * z)));
  return b1 + b2 + b3;
}

inline long double ps_max(const irsnet::system_params& p) {
  return ps_max_bs(p) + ps_max_irs(p);
}

// ---- mean signal power, lower ----------------------------------------
inline long double ps_min_bs(const irsnet::system_params& p) {
  long double R = p.r_co;
  return (1.0L - std::exp(-(long double)p.lambda_bs * PI * R * R)) *
         powi(p.lambda_wave, 2) *
         (1.0L + ((long double)p.h_hat - 1.0L) * p.p_b) *
         (long double)p.sigma_d_sq / (powi(4.0L * PI, 2) * R * R) *
         std::log(1.0L + (R / p.h_bs) * (R / p.h_bs));
}

inline long double ps_min_irs(const irsnet::system_params& p) {
  long double R = p.r_co;
  long double M = std::max((long double)(p.h_bs - p.h_irs) * (p.h_bs - p.h_irs),
                           (long double)p.h_irs * p.h_irs);
  long double lu = p.lambda_u * PI * R * R;
  return (long double)p.lambda_irs *
         (1.0L - std::exp(-(long double)p.lambda_bs * PI * R * R)) *
         powi(p.delta, 2) * (long double)p.q_elems * powi(p.lambda_wave, 4) *
         (long double)p.sigma_d_sq / powi(4.0L * PI, 4) *
         ((1.0L - lu * std::exp(-lu) - std::exp(-lu)) /
          ((long double)p.lambda_u * R * R * (1.0L - std::exp(-lu)))) *
         (R * R / (M + 3.0L * R * R)) * (1.0L / (M + 4.0L * R * R));
}

inline long double ps_min(const irsnet::system_params& p) {
  return ps_min_bs(p) + ps_min_irs(p);
}

// ---- mean interference power, upper ----------------------------------
inline long double pi_max_bs(const irsnet::system_params& p) {
  long double R = p.r_co, lam1 = p.lambda_irs * PI * R * R;
  long double lu = p.lambda_u * PI * R * R;
  return (long double)p.lambda_bs * (1.0L + 3.0L * lam1 + lam1 * lam1) *
         (1.0L + ((long double)p.h_hat - 1.0L) * p.p_b) *
         powi(p.lambda_wave, 2) * (long double)p.sigma_d_sq /
         ((1.0L - std::exp(-lu)) * 16.0L * PI) *
         (lu + std::exp(-lu) - 1.0L) *
         std::log(1.0L + (R / p.h_bs) * (R / p.h_bs));
}

inline long double pi_max_irs(const irsnet::system_params& p) {
  long double R = p.r_co, Q = p.q_elems;
  long double lam2 = p.lambda_irs * PI * (2.0L * R) * (2.0L * R);
  long double dh = (long double)p.h_bs - p.h_irs;
  long double lu = p.lambda_u * PI * R * R;
  long double pbs = 1.0L - std::exp(-(long double)p.lambda_bs * PI * R * R);
  long double w4 = powi(p.lambda_wave, 4), sd = p.sigma_d_sq;

  long double prefix = w4 * (lu + std::exp(-lu) - 1.0L) * Q * Q * pbs * sd /
                       ((1.0L - std::exp(-lu)) * powi(4.0L * PI, 4));
  long double s2 = std::sqrt((2.0L * R) * (2.0L * R) /
                             (((long double)p.h_irs * p.h_irs + 4.0L * R * R) *
                              (long double)p.h_irs * p.h_irs));
  long double s3 = std::sqrt((3.0L * R) * (3.0L * R) /
                             ((dh * dh + 9.0L * R * R) * dh * dh));
  long double ll = PI *
                   std::log(1.0L + (2.0L * R / p.h_irs) * (2.0L * R / p.h_irs)) *
                   std::log(1.0L + (3.0L * R / dh) * (3.0L * R / dh));
  long double e9 = std::exp(9.0L / (2.0L * lam2)), e16 = std::exp(16.0L / (2.0L * lam2));
  long double brace = powi(lam2, 3) * e9 / (4.0L * R * R) * s2 * s3 +
                      (2.0L * lam2 * lam2 + 3.0L * lam2) / (4.0L * R * R) * s2 * s3 +
                      powi(lam2, 4) * e16 / (4.0L * powi(R, 4)) * ll +
                      powi(lam2, 3) * e9 / (4.0L * powi(R, 4)) * ll -
                      (lam2 * lam2 + 2.0L * lam2) / (4.0L * powi(R, 4)) * ll;
  long double tail = (lu + std::exp(-lu) - 1.0L) * (long double)p.lambda_bs /
                     (powi(4.0L, 5) * powi(PI, 3) * (1.0L - std::exp(-lu))) *
                     Q * w4 * sd / (R * R) *
                     std::log(1.0L + (R / dh) * (R / dh)) *
                     std::log(1.0L + (2.0L * R / p.h_irs) * (2.0L * R / p.h_irs)) *
                     (powi(lam2, 3) * e9 + 2.0L * lam2 * lam2 + 3.0L * lam2);
  return prefix * brace + tail;
}

inline long double pi_max(const irsnet::system_params& p) {
  return pi_max_bs(p) + pi_max_irs(p);
}

// ---- mean interference power, lower ----------------------------------
inline long double lens_closed(long double b, long double r) {
  long double s = std::asin(b / (2.0L * r));
  return (2.0L * r * r / PI - b * b / PI) * s -
         (r * r / 2.0L) * std::sin(4.0L * s) +
         (b * b / 2.0L) * (1.0L - std::sin(PI - 2.0L * s));
}

// True two-disk intersection area (radius b at origin, radius r centered r
// away); used to document the printed formula's deviation.
inline long double lens_true(long double b, long double r) {
  return b * b * std::acos(b / (2.0L * r)) +
         r * r * std::acos(1.0L - b * b / (2.0L * r * r)) -
         (b / 2.0L) * std::sqrt(4.0L * r * r - b * b);
}

inline long double pi_min_bs(const irsnet::system_params& p,
                             const irsnet::bound_params& bp) {
  long double R = p.r_co, b = bp.b;
  long double S = lens_closed(b, R);
  long double ls = (long double)p.lambda_u * S;
  return (1.0L - std::exp(-(long double)p.lambda_bs * PI * (4.0L * R * R - b * b))) *
         powi(p.delta, 2) * (long double)p.sigma_d_sq *
         (1.0L - std::exp(-(long double)p.lambda_bs * PI * b * b)) *
         (1.0L + ((long double)p.h_hat - 1.0L) * p.p_b) * powi(p.lambda_wave, 2) /
         ((long double)p.lambda_bs * PI * (4.0L * R * R - b * b) *
          powi(4.0L * PI, 2) * ((long double)p.h_bs * p.h_bs + R * R)) *
         ((ls + std::exp(-ls) - 1.0L) / (1.0L - std::exp(-ls)));
}

inline long double pi_min_irs(const irsnet::system_params& p,
                              const irsnet::bound_params& bp) {
  long double R = p.r_co, b = bp.b, d = bp.d, Q = p.q_elems;
  long double lam1 = p.lambda_irs * PI * R * R;
  long double M = std::max((long double)(p.h_bs - p.h_irs) * (p.h_bs - p.h_irs),
                           (long double)p.h_irs * p.h_irs);
  long double S = lens_closed(b, R);
  long double ls = (long double)p.lambda_u * S;

  long double inner = (long double)p.lambda_u * PI * (R / 2.0L - d) * (R / 2.0L - d) +
                      std::exp(-(long double)p.lambda_u * PI * (R / 2.0L + d) * (R / 2.0L + d)) -
                      1.0L;
  long double ring = (1.0L - std::exp(-(long double)p.lambda_u * PI * 3.0L * R * R) -
                      (long double)p.lambda_u * PI * 4.0L * R * R *
                          std::exp(-(long double)p.lambda_u * PI * 3.0L * R * R)) /
                     powi((long double)p.lambda_u * PI * 4.0L * R * R, 2);
  long double t1 = ((long double)p.kappa / (p.kappa + 1.0L)) *
                   (1.0L - std::exp(-(long double)p.lambda_bs * PI * R * R)) * Q *
                   (Q - 1.0L) * lam1 * lam1 * powi(p.lambda_wave, 4) *
                   powi(p.delta, 2) * (long double)p.sigma_d_sq /
                   (powi(4.0L, 6) * PI * PI * powi(R, 4)) *
                   std::max(inner, 0.0L) *
                   (2.0L * d *
                    (1.0L - std::exp(-(long double)p.lambda_bs * 3.0L * PI * R * R)) /
                    ((1.0L - std::exp(-(long double)p.lambda_u * PI * (R / 2.0L + d) *
                                      (R / 2.0L + d))) *
                     (long double)p.lambda_bs * 3.0L * PI * powi(R, 3))) *
                   std::max(0.0L, ring) *
                   powi(std::log((M + 4.0L * R * R) / (M + 3.0L * R * R)), 2);

  long double t2 = ((ls + std::exp(-ls) - 1.0L) / (1.0L - std::exp(-ls))) *
                   std::log(1.0L + (b / p.h_irs) * (b / p.h_irs)) * Q *
                   powi(p.lambda_wave, 4) * powi(p.delta, 2) *
                   (long double)p.lambda_irs *
                   (1.0L - std::exp(-(long double)p.lambda_bs * PI * (4.0L * R * R - b * b))) *
                   (1.0L - std::exp(-(long double)p.lambda_bs * PI * b * b)) *
                   (long double)p.sigma_d_sq /
                   ((long double)p.lambda_bs * PI * (4.0L * R * R - b * b) *
                    powi(4.0L, 4) * powi(PI, 3) *
                    ((long double)(p.h_bs - p.h_irs) * (p.h_bs - p.h_irs) + R * R));
  return t1 + t2;
}

inline long double pi_min(const irsnet::system_params& p,
                          const irsnet::bound_params& bp) {
  return pi_min_bs(p, bp) + pi_min_irs(p, bp);
}

// ---- moment constants --------------------------------------------------
inline long double k_coef(const irsnet::system_params& p) {
  long double R = p.r_co, Q = p.q_elems;
  long double triple =
      std::max(1.0L, (long double)p.lambda_wave / (4.0L * PI * p.h_bs)) *
      std::max(1.0L, (long double)p.lambda_wave / (4.0L * PI * ((long double)p.h_bs - p.h_irs))) *
      std::max(1.0L, (long double)p.lambda_wave / (4.0L * PI * p.h_irs));
  long double c = powi(2.0L, 11) * powi(PI, 5) * std::pow(3.0L, 1.5L) *
                  std::exp(35.0L / 12.0L);
  long double irs_f = 8.0L * std::max(1.0L, 1.0L / std::log(1.0L + 1.0L / ((long double)p.lambda_irs * 4.0L * PI * R * R)));
  long double bs_f = 2.0L / std::log(1.0L + 1.0L / ((long double)p.lambda_bs * 4.0L * PI * R * R));
  long double u_f = 2.0L / std::log(1.0L + 1.0L / ((long double)p.lambda_u * 4.0L * PI * R * R));
  return Q * Q * 64.0L *
         ((long double)p.sigma_d_sq /
          (1.0L - std::exp(-(long double)p.lambda_u * 4.0L * PI * R * R))) *
         triple * triple * c * (18.0L / std::exp(3.0L)) * powi(irs_f, 4) *
         powi(bs_f, 2) * powi(u_f, 2);
}

inline long double l_coef(const irsnet::system_params& p) {
  long double R = p.r_co, Q = p.q_elems;
  long double triple =
      std::max(1.0L, (long double)p.lambda_wave / (4.0L * PI * p.h_bs)) *
      std::max(1.0L, (long double)p.lambda_wave / (4.0L * PI * ((long double)p.h_bs - p.h_irs))) *
      std::max(1.0L, (long double)p.lambda_wave / (4.0L * PI * p.h_irs));
  long double c = powi(2.0L, 11) * powi(PI, 5) * std::pow(3.0L, 1.5L) *
                  std::exp(35.0L / 12.0L);
  long double irs_f = 8.0L * std::max(1.0L, 1.0L / std::log(1.0L + 1.0L / ((long double)p.lambda_irs * 4.0L * PI * R * R)));
  long double bs_f = 2.0L / std::log(1.0L + 1.0L / ((long double)p.lambda_bs * 4.0L * PI * R * R));
  return Q * Q * 64.0L * (long double)p.sigma_d_sq * triple * triple * c *
         (18.0L / std::exp(3.0L)) * powi(irs_f, 4) * powi(bs_f, 2);
}

// ---- series functions --------------------------------------------------
// Truncated-series evaluation of sum_p x^p/((n p)!).
inline long double gap_series(long double x, int n) {
  long double term = 1.0L, sum = 1.0L;
  for (int p = 1; p <= 400; ++p) {
    for (int i = n * (p - 1) + 1; i <= n * p; ++i) term /= (long double)i;
    term *= x;
    sum += term;
    if (term < 1e-22L * sum) break;
  }
  return sum;
}

// Roots-of-unity closed form of the same series.
inline long double gap_closed(long double x, int n) {
  std::complex<long double> sum{0.0L, 0.0L};
  long double root = std::pow(x, 1.0L / n);
  for (int k = 0; k < n; ++k) {
    long double ang = 2.0L * PI * k / n;
    sum += std::exp(std::complex<long double>(root * std::cos(ang),
                                              root * std::sin(ang)));
  }
  return (sum / (long double)n).real();
}

inline long double g_series(long double x) { return gap_series(x, 11); }
inline long double h_series(long double x) { return gap_series(x, 9); }

// ---- tails and outage ----------------------------------------------------
inline long double tau_max_i(const irsnet::system_params& p) {
  return powi(11.0L, 11) / (oracle::k_coef(p) * std::exp(11.0L));
}
inline long double tau_max_s(const irsnet::system_params& p) {
  return powi(9.0L, 9) / (oracle::l_coef(p) * std::exp(9.0L));
}

inline long double tail_i(long double t, long double tau,
                          const irsnet::system_params& p) {
  long double raw = 1.0L / ((1.0L - oracle::k_coef(p) * std::exp(11.0L) * tau / powi(11.0L, 11)) *
                            gap_closed(tau * t, 11));
  return std::min(raw, 1.0L);
}

inline long double tail_s(long double t, long double tau,
                          const irsnet::system_params& p) {
  long double raw = 1.0L / ((1.0L - oracle::l_coef(p) * std::exp(9.0L) * tau / powi(9.0L, 9)) *
                            gap_closed(tau * t, 9));
  return std::min(raw, 1.0L);
}

inline long double outage(long double alpha, long double tau,
                          const irsnet::system_params& p) {
  long double t = (long double)p.n0 * (std::exp(alpha) - 1.0L);
  long double markov = oracle::ps_max(p) / t;
  return std::min({1.0L, markov, tail_s(t, tau, p)});
}

}  // namespace oracle
