#include "irsnet/params.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace irsnet {

using nlohmann::json;

const system_params& validate(const system_params& p) {
  auto fail = [](const char* field, const char* detail) {
    throw violated_invariant(field, detail);
  };
  if (!(p.lambda_bs >= 0.0)) fail("lambda_bs", "density must be >= 0");
  if (!(p.lambda_u >= 0.0)) fail("lambda_u", "density must be >= 0");
  if (!(p.lambda_irs >= 0.0)) fail("lambda_irs", "density must be >= 0");
  if (!(p.r_co > 0.0)) fail("r_co", "coverage radius must be > 0");
  if (p.q_elems < 1) fail("q_elems", "element count must be >= 1");
  if (!(p.kappa >= 0.0)) fail("kappa", "Rician factor must be >= 0");
  if (!(p.lambda_wave > 0.0)) fail("lambda_wave", "wavelength must be > 0");
  if (!std::isfinite(p.h_bs)) fail("h_bs", "height must be finite");
  if (p.h_bs == p.h_irs || !std::isfinite(p.h_irs))
    fail("heights", "h_bs and h_irs must differ (bounds divide by |h_bs - h_irs|)");
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) fail("epsilon", "need 0 < epsilon < 1");
  if (!(p.delta > 0.0 && p.delta <= 1.0)) fail("delta", "need 0 < delta <= 1");
  if (!(p.p_b >= 0.0 && p.p_b <= 1.0)) fail("p_b", "probability must be in [0, 1]");
  if (!(p.h_hat > 0.0 && p.h_hat < 1.0)) fail("h_hat", "need 0 < h_hat < 1");
  if (!(p.sigma_d_sq >= 0.0)) fail("sigma_d_sq", "power must be >= 0");
  if (!(p.n0 >= 0.0)) fail("n0", "power must be >= 0");
  return p;
}

void validate(const bound_params& bp, const system_params& p) {
  if (!(bp.b > 0.0 && bp.b < p.r_co))
    throw violated_invariant("b", "need 0 < b < r_co");
  if (!(bp.d > 0.0 && bp.d < p.r_co / 2.0))
    throw violated_invariant("d", "need 0 < d < r_co/2");
  if (!(bp.tau_i >= 0.0)) throw violated_invariant("tau_i", "must be >= 0");
  if (!(bp.tau_s >= 0.0)) throw violated_invariant("tau_s", "must be >= 0");
}

namespace {

json parse_object(const std::string& text, const char* what) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw violated_invariant(what, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw violated_invariant(what, "expected a JSON object");
  return j;
}

double num(const json& j, const std::string& key) {
  if (!j.at(key).is_number())
    throw violated_invariant(key, "expected a number");
  return j.at(key).get<double>();
}

}  // namespace

system_params params_from_json(const std::string& text) {
  json j = parse_object(text, "params");
  static const std::set<std::string> known = {
      "lambda_bs", "lambda_u", "lambda_irs", "r_co", "q_elems", "kappa",
      "lambda_wave", "h_bs", "h_irs", "epsilon", "delta", "p_b", "h_hat",
      "sigma_d_sq", "sigma_d", "n0"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw violated_invariant(key, "unknown key");
  if (j.contains("sigma_d") && j.contains("sigma_d_sq"))
    throw violated_invariant("sigma_d", "give sigma_d or sigma_d_sq, not both");
  for (const auto& key : known)
    if (key != "sigma_d" && key != "sigma_d_sq" && !j.contains(key))
      throw violated_invariant(key, "missing key");
  if (!j.contains("sigma_d") && !j.contains("sigma_d_sq"))
    throw violated_invariant("sigma_d_sq", "missing key");

  system_params p;
  p.lambda_bs = num(j, "lambda_bs");
  p.lambda_u = num(j, "lambda_u");
  p.lambda_irs = num(j, "lambda_irs");
  p.r_co = num(j, "r_co");
  if (!j.at("q_elems").is_number_integer())
    throw violated_invariant("q_elems", "expected an integer");
  p.q_elems = j.at("q_elems").get<int>();
  p.kappa = num(j, "kappa");
  p.lambda_wave = num(j, "lambda_wave");
  p.h_bs = num(j, "h_bs");
  p.h_irs = num(j, "h_irs");
  p.epsilon = num(j, "epsilon");
  p.delta = num(j, "delta");
  p.p_b = num(j, "p_b");
  p.h_hat = num(j, "h_hat");
  if (j.contains("sigma_d")) {
    double s = num(j, "sigma_d");
    p.sigma_d_sq = s * s;
  } else {
    p.sigma_d_sq = num(j, "sigma_d_sq");
  }
  p.n0 = num(j, "n0");
  return p;
}

std::string params_to_json(const system_params& p) {
  json j;
  j["lambda_bs"] = p.lambda_bs;
  j["lambda_u"] = p.lambda_u;
  j["lambda_irs"] = p.lambda_irs;
  j["r_co"] = p.r_co;
  j["q_elems"] = p.q_elems;
  j["kappa"] = p.kappa;
  j["lambda_wave"] = p.lambda_wave;
  j["h_bs"] = p.h_bs;
  j["h_irs"] = p.h_irs;
  j["epsilon"] = p.epsilon;
  j["delta"] = p.delta;
  j["p_b"] = p.p_b;
  j["h_hat"] = p.h_hat;
  j["sigma_d_sq"] = p.sigma_d_sq;
  j["n0"] = p.n0;
  return j.dump();
}

bound_params bound_params_from_json(const std::string& text) {
  json j = parse_object(text, "bound_params");
  static const std::set<std::string> known = {"b", "d", "tau_i", "tau_s"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw violated_invariant(key, "unknown key");
  bound_params bp;
  if (!j.contains("b")) throw violated_invariant("b", "missing key");
  if (!j.contains("d")) throw violated_invariant("d", "missing key");
  bp.b = num(j, "b");
  bp.d = num(j, "d");
  if (j.contains("tau_i")) bp.tau_i = num(j, "tau_i");
  if (j.contains("tau_s")) bp.tau_s = num(j, "tau_s");
  return bp;
}

std::string bound_params_to_json(const bound_params& bp) {
  json j;
  j["b"] = bp.b;
  j["d"] = bp.d;
  j["tau_i"] = bp.tau_i;
  j["tau_s"] = bp.tau_s;
  return j.dump();
}

}  // namespace irsnet
