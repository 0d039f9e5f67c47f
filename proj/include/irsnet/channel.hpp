#pragma once
#include <complex>
#include <random>
#include <vector>

#include "irsnet/geometry.hpp"
#include "irsnet/params.hpp"

namespace irsnet {

// Power attenuation of one BS->user link: h_hat with probability p_b, else 1.
double draw_blockage(const system_params& p, std::mt19937_64& rng);

// Rician coefficient for a BS->user link at height h_bs, with the given
// power attenuation already decided. Specular phase uniform on [0, 2pi);
// scattered part complex normal. E|H|^2 = blockage * (lambda_wave/(4 pi d3))^2.
std::complex<double> bs_user_channel(const system_params& p, point2 x_bs,
                                     point2 x_u, double blockage,
                                     std::mt19937_64& rng);

// One IRS element hop (no blockage). h is the height offset of the hop:
// h_bs - h_irs for BS->IRS, h_irs for IRS->user. The specular phase is
// returned separately because phase configuration consumes it.
struct element_channel {
  std::complex<double> coeff;
  double specular_phase = 0.0;
};
element_channel irs_element_channel(const system_params& p, point2 a, point2 b,
                                    double h, std::mt19937_64& rng);
std::vector<element_channel> irs_element_channels(const system_params& p,
                                                  point2 a, point2 b, double h,
                                                  int q_count,
                                                  std::mt19937_64& rng);

// Beam gain of a BS at x_bs pointed toward x0, evaluated toward x: 1 when the
// direction cosine lies in [1-eps, 1] (boundary inclusive), else delta.
// A zero-length direction counts as aimed (gain 1) and is tallied.
double directivity_gain(point2 x_bs, point2 x0, point2 x, double eps,
                        double delta);
long degenerate_direction_count();
void reset_degenerate_direction_count();

// Element phase shift: -(spec_bs_irs + spec_irs_u) reduced into [0, 2pi),
// so the composed specular phase toward the served user is 0.
double irs_phase(double spec_bs_irs, double spec_irs_u);

}  // namespace irsnet
