#include "irsnet/geometry.hpp"

#include <cmath>
#include <numbers>

#include "irsnet/stats.hpp"

namespace irsnet {

namespace {
constexpr double pi = std::numbers::pi;

// Gauss-Legendre nodes/weights on [0, 1], by Newton iteration on P_n.
struct gl_rule {
  std::vector<double> x, w;
};

gl_rule gauss_legendre(int n) {
  gl_rule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    r.x[i] = 0.5 * (1.0 + t);
    r.w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  return r;
}

double disk_integral(const std::function<double(point2)>& f, point2 center,
                     double radius) {
  static const gl_rule radial = gauss_legendre(128);
  const int n_phi = 256;
  kahan_sum total;
  for (std::size_t i = 0; i < radial.x.size(); ++i) {
    double rho = radius * radial.x[i];
    kahan_sum ring;
    for (int j = 0; j < n_phi; ++j) {
      double phi = 2.0 * pi * j / n_phi;
      ring.add(f({center.x + rho * std::cos(phi), center.y + rho * std::sin(phi)}));
    }
    total.add(radial.w[i] * rho * ring.value());
  }
  return total.value() * radius * (2.0 * pi / n_phi);
}

}  // namespace

point_set sample_ppp(double lambda, point2 center, double radius,
                     std::mt19937_64& rng) {
  if (lambda < 0.0) throw domain_error("sample_ppp: lambda must be >= 0");
  if (!(radius > 0.0)) throw domain_error("sample_ppp: radius must be > 0");
  point_set set;
  set.center = center;
  set.radius = radius;
  if (lambda == 0.0) return set;
  std::poisson_distribution<long> count(lambda * pi * radius * radius);
  long n = count(rng);
  set.pts.reserve(static_cast<std::size_t>(n));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (long i = 0; i < n; ++i) {
    double rho = radius * std::sqrt(unit(rng));
    double phi = 2.0 * pi * unit(rng);
    set.pts.push_back(
        {center.x + rho * std::cos(phi), center.y + rho * std::sin(phi)});
  }
  return set;
}

double link_distance(double h, point2 a, point2 b) {
  return std::sqrt(h * h + dist2(a, b));
}

double lens_area_closed(double b, double r) {
  if (!(b > 0.0) || !(b < r)) throw domain_error("lens_area_closed: need 0 < b < r");
  double s = std::asin(b / (2.0 * r));
  return (2.0 * r * r / pi - b * b / pi) * s -
         (r * r / 2.0) * std::sin(4.0 * s) +
         (b * b / 2.0) * (1.0 - std::sin(pi - 2.0 * s));
}

area_estimate lens_area_numeric(double b, double r, std::size_t samples,
                                std::mt19937_64& rng) {
  if (!(b > 0.0) || !(b < r)) throw domain_error("lens_area_numeric: need 0 < b < r");
  if (samples < 10000) throw domain_error("lens_area_numeric: samples must be >= 1e4");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    double rho = b * std::sqrt(unit(rng));
    double phi = 2.0 * pi * unit(rng);
    double x = rho * std::cos(phi), y = rho * std::sin(phi);
    if ((x - r) * (x - r) + y * y <= r * r) ++hits;
  }
  double p = static_cast<double>(hits) / static_cast<double>(samples);
  double small_disk = pi * b * b;
  return {small_disk * p,
          small_disk * std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
}

double campbell_check(double lambda, const std::function<double(point2)>& f,
                      point2 center, double radius, int trials,
                      std::mt19937_64& rng) {
  if (lambda == 0.0) return 0.0;
  if (trials < 1) throw domain_error("campbell_check: trials must be >= 1");
  kahan_sum acc;
  for (int t = 0; t < trials; ++t) {
    point_set set = sample_ppp(lambda, center, radius, rng);
    kahan_sum one;
    for (const point2& pt : set.pts) one.add(f(pt));
    acc.add(one.value());
  }
  double mean = acc.value() / trials;
  double expected = lambda * disk_integral(f, center, radius);
  if (expected == 0.0) return std::abs(mean);
  return std::abs(mean - expected) / expected;
}

}  // namespace irsnet
