#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

namespace irsnet {

// Neumaier compensated accumulator; exact enough for long element sums.
struct kahan_sum {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

struct kahan_csum {
  kahan_sum re, im;
  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

// 95% normal-approximation interval for a sample mean. One sample has an
// undefined spread: halfwidth is +inf there.
struct mean_ci {
  double mean = 0.0;
  double halfwidth = std::numeric_limits<double>::infinity();
};

inline mean_ci mean_with_ci(const std::vector<double>& xs) {
  mean_ci out;
  const std::size_t n = xs.size();
  if (n == 0) return out;
  kahan_sum s;
  for (double x : xs) s.add(x);
  out.mean = s.value() / static_cast<double>(n);
  if (n == 1) return out;
  kahan_sum sq;
  for (double x : xs) sq.add((x - out.mean) * (x - out.mean));
  double var = sq.value() / static_cast<double>(n - 1);
  out.halfwidth = 1.959963984540054 * std::sqrt(var / static_cast<double>(n));
  return out;
}

// 95% Wilson score interval for a binomial proportion.
struct wilson_ci {
  double p_hat = 0.0;
  double lo = 0.0;
  double hi = 1.0;
};

inline wilson_ci wilson(std::size_t successes, std::size_t n) {
  wilson_ci w;
  if (n == 0) return w;
  const double z = 1.959963984540054;
  const double z2 = z * z;
  const double nn = static_cast<double>(n);
  w.p_hat = static_cast<double>(successes) / nn;
  double center = (w.p_hat + z2 / (2.0 * nn)) / (1.0 + z2 / nn);
  double half = z *
                std::sqrt(w.p_hat * (1.0 - w.p_hat) / nn +
                          z2 / (4.0 * nn * nn)) /
                (1.0 + z2 / nn);
  w.lo = std::max(0.0, center - half);
  w.hi = std::min(1.0, center + half);
  return w;
}

}  // namespace irsnet
