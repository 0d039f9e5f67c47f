#pragma once
#include <string>

#include "irsnet/errors.hpp"

namespace irsnet {

// Every model scalar. Immutable once validated; safe to share across threads.
struct system_params {
  double lambda_bs = 1e-3;    // BS density [1/m^2]
  double lambda_u = 1e-2;     // user density [1/m^2]
  double lambda_irs = 1e-3;   // IRS density [1/m^2]
  double r_co = 15.0;         // coverage radius [m]
  int q_elems = 50;           // reflecting elements per IRS
  double kappa = 1.0;         // Rician factor
  double lambda_wave = 0.01;  // wavelength [m]
  double h_bs = 10.0;         // BS height [m]
  double h_irs = 11.0;        // IRS height [m]
  double epsilon = 0.01;      // beam width: cosine within [1-epsilon, 1] is in-beam
  double delta = 0.01;        // sidelobe gain outside the beam
  double p_b = 0.5;           // blockage probability on BS->user links
  double h_hat = 1e-4;        // blockage power attenuation
  double sigma_d_sq = 1e6;    // symbol power [W]
  double n0 = 1e-2;           // noise power [W]
};

// Radii for the interference lower bound and tau seeds for the tail bounds.
// lens_area_s is derived from (b, r_co), never read from config.
struct bound_params {
  double b = 7.5;            // 0 < b < r_co
  double d = 3.0;            // 0 < d < r_co/2
  double tau_i = 0.0;        // interference-tail tau; 0 means optimize
  double tau_s = 0.0;        // signal-tail tau; 0 means optimize
  double lens_area_s = 0.0;  // filled by bounds evaluation
};

// Throws violated_invariant naming the first failing field. Idempotent.
const system_params& validate(const system_params& p);
void validate(const bound_params& bp, const system_params& p);

// JSON with exactly the struct field names; unknown keys are a hard error.
// "sigma_d" is also accepted and stored squared. serialize(parse(s)) == s
// for canonical s (alphabetical keys, shortest round-trip doubles).
system_params params_from_json(const std::string& text);
std::string params_to_json(const system_params& p);
bound_params bound_params_from_json(const std::string& text);
std::string bound_params_to_json(const bound_params& bp);

}  // namespace irsnet
