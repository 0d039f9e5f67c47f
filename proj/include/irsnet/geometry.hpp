#pragma once
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

#include "irsnet/errors.hpp"

namespace irsnet {

struct point2 {
  double x = 0.0;
  double y = 0.0;
};

inline double dist2(point2 a, point2 b) {
  double dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double dist(point2 a, point2 b) { return std::sqrt(dist2(a, b)); }

// Homogeneous PPP restricted to a disk: Poisson count, iid uniform positions.
struct point_set {
  point2 center;
  double radius = 0.0;
  std::vector<point2> pts;
};

point_set sample_ppp(double lambda, point2 center, double radius,
                     std::mt19937_64& rng);

// 3-D link length between ground positions a, b with height offset h.
double link_distance(double h, point2 a, point2 b);

// Closed-form lens area used by the interference lower bound. It is not
// the true two-disk intersection area and goes negative for moderate b;
// lens_area_numeric documents the discrepancy. Domain: 0 < b < r.
double lens_area_closed(double b, double r);

// Hit-or-miss estimate of the true intersection area of a disk of radius b
// at the origin and a disk of radius r centered r away. Same domain.
struct area_estimate {
  double area = 0.0;
  double se = 0.0;
};
area_estimate lens_area_numeric(double b, double r, std::size_t samples,
                                std::mt19937_64& rng);

// Relative error |mean_trials sum_{x in PPP} f(x) - lambda*I[f]| / (lambda*I[f])
// over a disk window, where I[f] is computed by quadrature. lambda = 0 gives 0.
double campbell_check(double lambda, const std::function<double(point2)>& f,
                      point2 center, double radius, int trials,
                      std::mt19937_64& rng);

}  // namespace irsnet
