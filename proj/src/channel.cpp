#include "irsnet/channel.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace irsnet {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
std::atomic<long> g_degenerate{0};

// Specular phase plus complex-normal scattered part, split kappa/(kappa+1)
// versus 1/(kappa+1); mean power = attenuation * amp^2.
std::complex<double> rician(double kappa, double amp, double attenuation,
                            double& spec_phase_out, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, two_pi);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double theta = phase(rng);
  double z_re = gauss(rng);
  double z_im = gauss(rng);
  spec_phase_out = theta;
  double spec_amp = std::sqrt(kappa / (kappa + 1.0)) * std::sqrt(attenuation) * amp;
  double scat_sd = std::sqrt(attenuation / (kappa + 1.0) / 2.0) * amp;
  return {spec_amp * std::cos(theta) + scat_sd * z_re,
          spec_amp * std::sin(theta) + scat_sd * z_im};
}
}  // namespace

double draw_blockage(const system_params& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return unit(rng) < p.p_b ? p.h_hat : 1.0;
}

std::complex<double> bs_user_channel(const system_params& p, point2 x_bs,
                                     point2 x_u, double blockage,
                                     std::mt19937_64& rng) {
  double d3 = link_distance(p.h_bs, x_bs, x_u);
  double amp = p.lambda_wave / (4.0 * std::numbers::pi * d3);
  double unused;
  return rician(p.kappa, amp, blockage, unused, rng);
}

element_channel irs_element_channel(const system_params& p, point2 a, point2 b,
                                    double h, std::mt19937_64& rng) {
  double d3 = link_distance(h, a, b);
  double amp = p.lambda_wave / (4.0 * std::numbers::pi * d3);
  element_channel ch;
  ch.coeff = rician(p.kappa, amp, 1.0, ch.specular_phase, rng);
  return ch;
}

std::vector<element_channel> irs_element_channels(const system_params& p,
                                                  point2 a, point2 b, double h,
                                                  int q_count,
                                                  std::mt19937_64& rng) {
  std::vector<element_channel> out;
  out.reserve(static_cast<std::size_t>(q_count));
  for (int q = 0; q < q_count; ++q)
    out.push_back(irs_element_channel(p, a, b, h, rng));
  return out;
}

double directivity_gain(point2 x_bs, point2 x0, point2 x, double eps,
                        double delta) {
  double ax = x0.x - x_bs.x, ay = x0.y - x_bs.y;
  double bx = x.x - x_bs.x, by = x.y - x_bs.y;
  double na = std::sqrt(ax * ax + ay * ay);
  double nb = std::sqrt(bx * bx + by * by);
  if (na == 0.0 || nb == 0.0) {
    if (g_degenerate.fetch_add(1) == 0)
      std::fprintf(stderr,
                   "warning: zero-length beam direction, treating as aimed\n");
    return 1.0;
  }
  double cosine = (ax * bx + ay * by) / (na * nb);
  return cosine >= 1.0 - eps ? 1.0 : delta;
}

long degenerate_direction_count() { return g_degenerate.load(); }
void reset_degenerate_direction_count() { g_degenerate.store(0); }

double irs_phase(double spec_bs_irs, double spec_irs_u) {
  double t = std::fmod(-(spec_bs_irs + spec_irs_u), two_pi);
  if (t < 0.0) t += two_pi;
  if (t == two_pi) t = 0.0;
  return t;
}

}  // namespace irsnet
