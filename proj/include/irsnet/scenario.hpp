#pragma once
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "irsnet/channel.hpp"
#include "irsnet/geometry.hpp"
#include "irsnet/params.hpp"

namespace irsnet {

// Everything random about one network realization. All processes live on
// C(origin, 3 r_co); users[0] is the typical user at the origin. Channel
// draws cover exactly the links that can reach the typical user: direct
// links from BSs within r_co of the origin, and for each IRS within r_co of
// the origin its element links to the typical user plus element links from
// every BS within r_co of that IRS.
struct scenario {
  system_params p;
  std::vector<point2> bs;
  std::vector<point2> users;
  std::vector<point2> irs;
  std::vector<int> bs_of_user;   // serving BS index, -1 when none in range
  std::vector<int> user_of_irs;  // served user index, -1 when none in range

  std::vector<int> bs_near_typical;               // ascending BS indices
  std::vector<double> bs_blockage;                // per bs_near_typical entry
  std::vector<std::complex<double>> bs_channel;   // per bs_near_typical entry

  struct panel_state {
    std::vector<std::complex<double>> to_user;  // Q element coeffs to typical
    std::vector<double> to_user_phase;          // their specular phases
    std::vector<int> feed_bs;                   // ascending BS indices in range
    std::vector<std::vector<std::complex<double>>> from_bs;  // [feed][q]
    std::vector<std::vector<double>> from_bs_phase;          // [feed][q]
    std::vector<double> theta;                  // configured shifts, [0, 2pi)
  };
  std::vector<int> irs_near_typical;  // ascending IRS indices
  std::vector<panel_state> panels;    // parallel to irs_near_typical
};

// Samples the three processes, associates uniformly (BS per user, user per
// IRS), draws channels in canonical index order, and configures element
// phases. An IRS whose served user has no serving BS keeps theta = 0.
scenario build(const system_params& p, std::mt19937_64& rng);

// Net symbol coefficient at the typical user for every user's data stream:
// direct paths from each in-range BS carrying the streams of the users it
// serves (with beam gains toward user and toward any IRS serving that user),
// plus reflected paths through each in-range panel fed by its in-range BSs.
std::vector<std::complex<double>> symbol_coefficients(const scenario& s);

struct power_sample {
  double p_s = 0.0;
  double p_i = 0.0;
  double cap = 0.0;
};

// p_s = sigma_d^2 |c_0|^2 (typical user's own stream), p_i = sigma_d^2 times
// the power sum of every other stream's coefficient. p_s + p_i equals the
// variance of the noiseless received signal over fresh symbol draws.
power_sample conditional_powers(const scenario& s);

double capacity(double p_s, double p_i, double n0);

// Bit-exact snapshot: doubles survive the round trip unchanged.
std::string scenario_to_json(const scenario& s);
scenario scenario_from_json(const std::string& text);

}  // namespace irsnet
