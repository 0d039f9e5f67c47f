#include "irsnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "irsnet/stats.hpp"

namespace irsnet {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<int> indices_within(const std::vector<point2>& pts, point2 center,
                                double radius) {
  std::vector<int> out;
  double r2 = radius * radius;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (dist2(pts[i], center) <= r2) out.push_back(static_cast<int>(i));
  return out;
}

int pick_uniform(const std::vector<int>& candidates, std::mt19937_64& rng) {
  if (candidates.empty()) return -1;
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  return candidates[pick(rng)];
}
}  // namespace

scenario build(const system_params& p, std::mt19937_64& rng) {
  validate(p);
  scenario s;
  s.p = p;
  const double R = p.r_co;
  const double window = 3.0 * R;
  const point2 origin{0.0, 0.0};

  // Draw order is fixed so that BS/user geometry and direct channels are
  // common random numbers across lambda_irs values sharing a stream.
  s.bs = sample_ppp(p.lambda_bs, origin, window, rng).pts;
  {
    point_set u = sample_ppp(p.lambda_u, origin, window, rng);
    s.users.reserve(u.pts.size() + 1);
    s.users.push_back(origin);
    s.users.insert(s.users.end(), u.pts.begin(), u.pts.end());
  }
  s.bs_of_user.resize(s.users.size());
  for (std::size_t u = 0; u < s.users.size(); ++u)
    s.bs_of_user[u] = pick_uniform(indices_within(s.bs, s.users[u], R), rng);

  s.bs_near_typical = indices_within(s.bs, origin, R);
  s.bs_blockage.reserve(s.bs_near_typical.size());
  s.bs_channel.reserve(s.bs_near_typical.size());
  for (int b : s.bs_near_typical) {
    double blk = draw_blockage(p, rng);
    s.bs_blockage.push_back(blk);
    s.bs_channel.push_back(bs_user_channel(p, s.bs[b], origin, blk, rng));
  }

  s.irs = sample_ppp(p.lambda_irs, origin, window, rng).pts;
  s.user_of_irs.resize(s.irs.size());
  for (std::size_t i = 0; i < s.irs.size(); ++i)
    s.user_of_irs[i] = pick_uniform(indices_within(s.users, s.irs[i], R), rng);

  s.irs_near_typical = indices_within(s.irs, origin, R);
  s.panels.resize(s.irs_near_typical.size());
  std::uniform_real_distribution<double> phase(0.0, two_pi);
  for (std::size_t k = 0; k < s.irs_near_typical.size(); ++k) {
    const point2 pos = s.irs[s.irs_near_typical[k]];
    scenario::panel_state& panel = s.panels[k];

    panel.to_user.reserve(p.q_elems);
    panel.to_user_phase.reserve(p.q_elems);
    for (const element_channel& ch :
         irs_element_channels(p, pos, origin, p.h_irs, p.q_elems, rng)) {
      panel.to_user.push_back(ch.coeff);
      panel.to_user_phase.push_back(ch.specular_phase);
    }

    panel.feed_bs = indices_within(s.bs, pos, R);
    panel.from_bs.resize(panel.feed_bs.size());
    panel.from_bs_phase.resize(panel.feed_bs.size());
    for (std::size_t j = 0; j < panel.feed_bs.size(); ++j) {
      for (const element_channel& ch :
           irs_element_channels(p, s.bs[panel.feed_bs[j]], pos,
                                p.h_bs - p.h_irs, p.q_elems, rng)) {
        panel.from_bs[j].push_back(ch.coeff);
        panel.from_bs_phase[j].push_back(ch.specular_phase);
      }
    }

    // Phase configuration aligns the specular path feed-BS -> panel ->
    // served user. Links that never reach the typical user still have
    // physical phases; draw just those phases fresh. Panels whose served
    // user lacks a serving BS stay at theta = 0.
    panel.theta.assign(p.q_elems, 0.0);
    int served = s.user_of_irs[s.irs_near_typical[k]];
    int feeder = served >= 0 ? s.bs_of_user[served] : -1;
    if (served >= 0 && feeder >= 0) {
      std::vector<double> phi_in(p.q_elems), phi_out(p.q_elems);
      auto it = std::find(panel.feed_bs.begin(), panel.feed_bs.end(), feeder);
      if (it != panel.feed_bs.end()) {
        phi_in = panel.from_bs_phase[it - panel.feed_bs.begin()];
      } else {
        for (double& v : phi_in) v = phase(rng);
      }
      if (served == 0) {
        phi_out = panel.to_user_phase;
      } else {
        for (double& v : phi_out) v = phase(rng);
      }
      for (int q = 0; q < p.q_elems; ++q)
        panel.theta[q] = irs_phase(phi_in[q], phi_out[q]);
    }
  }
  return s;
}

namespace {

// Beam gain toward `eval_point` of BS b serving user u: direct lobe plus a
// lobe per IRS in the BS's range that serves the same user.
double combined_gain(const scenario& s, int b, int u, point2 eval_point,
                     const std::vector<std::vector<int>>& irs_near_bs) {
  const system_params& p = s.p;
  double g = directivity_gain(s.bs[b], s.users[u], eval_point, p.epsilon, p.delta);
  for (int i : irs_near_bs[b])
    if (s.user_of_irs[i] == u)
      g += directivity_gain(s.bs[b], s.irs[i], eval_point, p.epsilon, p.delta);
  return g;
}

}  // namespace

std::vector<std::complex<double>> symbol_coefficients(const scenario& s) {
  const point2 origin{0.0, 0.0};
  std::vector<kahan_csum> acc(s.users.size());

  std::vector<std::vector<int>> served_by(s.bs.size());
  for (std::size_t u = 0; u < s.users.size(); ++u)
    if (s.bs_of_user[u] >= 0) served_by[s.bs_of_user[u]].push_back(static_cast<int>(u));

  std::vector<std::vector<int>> irs_near_bs(s.bs.size());
  for (std::size_t b = 0; b < s.bs.size(); ++b)
    irs_near_bs[b] = indices_within(s.irs, s.bs[b], s.p.r_co);

  for (std::size_t k = 0; k < s.bs_near_typical.size(); ++k) {
    int b = s.bs_near_typical[k];
    for (int u : served_by[b])
      acc[u].add(s.bs_channel[k] *
                 combined_gain(s, b, u, origin, irs_near_bs));
  }

  for (std::size_t k = 0; k < s.irs_near_typical.size(); ++k) {
    const scenario::panel_state& panel = s.panels[k];
    const point2 pos = s.irs[s.irs_near_typical[k]];
    for (std::size_t j = 0; j < panel.feed_bs.size(); ++j) {
      int b = panel.feed_bs[j];
      if (served_by[b].empty()) continue;
      kahan_csum w;
      for (int q = 0; q < s.p.q_elems; ++q)
        w.add(panel.to_user[q] *
              std::polar(1.0, panel.theta[q]) * panel.from_bs[j][q]);
      std::complex<double> reflected = w.value();
      for (int u : served_by[b])
        acc[u].add(reflected * combined_gain(s, b, u, pos, irs_near_bs));
    }
  }

  std::vector<std::complex<double>> coeffs(s.users.size());
  for (std::size_t u = 0; u < s.users.size(); ++u) coeffs[u] = acc[u].value();
  return coeffs;
}

power_sample conditional_powers(const scenario& s) {
  std::vector<std::complex<double>> coeffs = symbol_coefficients(s);
  power_sample out;
  out.p_s = s.p.sigma_d_sq * std::norm(coeffs[0]);
  kahan_sum pi_sum;
  for (std::size_t u = 1; u < coeffs.size(); ++u) pi_sum.add(std::norm(coeffs[u]));
  out.p_i = s.p.sigma_d_sq * pi_sum.value();
  out.cap = capacity(out.p_s, out.p_i, s.p.n0);
  return out;
}

double capacity(double p_s, double p_i, double n0) {
  return std::log1p(p_s / (p_i + n0));
}

namespace {

using nlohmann::json;

json cpx(const std::complex<double>& z) { return json::array({z.real(), z.imag()}); }
std::complex<double> cpx(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}
json pt(const point2& p) { return json::array({p.x, p.y}); }
point2 pt(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

}  // namespace

std::string scenario_to_json(const scenario& s) {
  json j;
  j["params"] = json::parse(params_to_json(s.p));
  j["bs"] = json::array();
  j["users"] = json::array();
  j["irs"] = json::array();
  for (const point2& p : s.bs) j["bs"].push_back(pt(p));
  for (const point2& p : s.users) j["users"].push_back(pt(p));
  for (const point2& p : s.irs) j["irs"].push_back(pt(p));
  j["bs_of_user"] = s.bs_of_user;
  j["user_of_irs"] = s.user_of_irs;
  j["bs_near_typical"] = s.bs_near_typical;
  j["bs_blockage"] = s.bs_blockage;
  j["bs_channel"] = json::array();
  for (const auto& c : s.bs_channel) j["bs_channel"].push_back(cpx(c));
  j["irs_near_typical"] = s.irs_near_typical;
  j["panels"] = json::array();
  for (const scenario::panel_state& panel : s.panels) {
    json pj;
    pj["to_user"] = json::array();
    for (const auto& c : panel.to_user) pj["to_user"].push_back(cpx(c));
    pj["to_user_phase"] = panel.to_user_phase;
    pj["feed_bs"] = panel.feed_bs;
    pj["from_bs"] = json::array();
    for (const auto& row : panel.from_bs) {
      json rj = json::array();
      for (const auto& c : row) rj.push_back(cpx(c));
      pj["from_bs"].push_back(rj);
    }
    pj["from_bs_phase"] = panel.from_bs_phase;
    pj["theta"] = panel.theta;
    j["panels"].push_back(pj);
  }
  return j.dump();
}

scenario scenario_from_json(const std::string& text) {
  json j = json::parse(text);
  scenario s;
  s.p = params_from_json(j.at("params").dump());
  for (const json& v : j.at("bs")) s.bs.push_back(pt(v));
  for (const json& v : j.at("users")) s.users.push_back(pt(v));
  for (const json& v : j.at("irs")) s.irs.push_back(pt(v));
  s.bs_of_user = j.at("bs_of_user").get<std::vector<int>>();
  s.user_of_irs = j.at("user_of_irs").get<std::vector<int>>();
  s.bs_near_typical = j.at("bs_near_typical").get<std::vector<int>>();
  s.bs_blockage = j.at("bs_blockage").get<std::vector<double>>();
  for (const json& v : j.at("bs_channel")) s.bs_channel.push_back(cpx(v));
  s.irs_near_typical = j.at("irs_near_typical").get<std::vector<int>>();
  for (const json& pj : j.at("panels")) {
    scenario::panel_state panel;
    for (const json& v : pj.at("to_user")) panel.to_user.push_back(cpx(v));
    panel.to_user_phase = pj.at("to_user_phase").get<std::vector<double>>();
    panel.feed_bs = pj.at("feed_bs").get<std::vector<int>>();
    for (const json& row : pj.at("from_bs")) {
      std::vector<std::complex<double>> r;
      for (const json& v : row) r.push_back(cpx(v));
      panel.from_bs.push_back(std::move(r));
    }
    panel.from_bs_phase =
        pj.at("from_bs_phase").get<std::vector<std::vector<double>>>();
    panel.theta = pj.at("theta").get<std::vector<double>>();
    s.panels.push_back(std::move(panel));
  }
  return s;
}

}  // namespace irsnet
