#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "irsnet/bounds.hpp"
#include "irsnet/channel.hpp"
#include "irsnet/geometry.hpp"
#include "irsnet/io.hpp"
#include "irsnet/montecarlo.hpp"
#include "irsnet/params.hpp"
#include "irsnet/rng.hpp"
#include "irsnet/scenario.hpp"

namespace {

using nlohmann::json;

struct experiment_spec {
  std::string name = "fig3_powers";
  std::vector<double> grid = {1e-4, 3e-4, 1e-3};
  long trials = 2000;
  std::uint64_t seed = 20260818ULL;
  int threads = 0;
  std::string out_dir = "out";
};

struct cli_config {
  irsnet::system_params p;
  irsnet::bound_params bp;
  experiment_spec ex;
};

cli_config load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw irsnet::violated_invariant("config", "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  json j;
  try {
    j = json::parse(ss.str());
  } catch (const json::exception& e) {
    throw irsnet::violated_invariant("config",
                                     std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object())
    throw irsnet::violated_invariant("config", "expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "params" && key != "bound_params" && key != "experiment")
      throw irsnet::violated_invariant(key, "unknown config section");

  cli_config cfg;
  if (j.contains("params"))
    cfg.p = irsnet::params_from_json(j["params"].dump());
  if (j.contains("bound_params"))
    cfg.bp = irsnet::bound_params_from_json(j["bound_params"].dump());
  if (j.contains("experiment")) {
    const json& e = j["experiment"];
    if (!e.is_object())
      throw irsnet::violated_invariant("experiment", "expected a JSON object");
    for (const auto& [key, _] : e.items()) {
      if (key != "name" && key != "grid" && key != "trials" && key != "seed" &&
          key != "threads" && key != "out_dir")
        throw irsnet::violated_invariant(key, "unknown experiment key");
    }
    if (e.contains("name")) {
      if (!e["name"].is_string())
        throw irsnet::violated_invariant("name", "expected a string");
      cfg.ex.name = e["name"].get<std::string>();
    }
    if (e.contains("grid")) {
      if (!e["grid"].is_array())
        throw irsnet::violated_invariant("grid", "expected an array of numbers");
      cfg.ex.grid.clear();
      for (const auto& v : e["grid"]) {
        if (!v.is_number())
          throw irsnet::violated_invariant("grid", "expected an array of numbers");
        cfg.ex.grid.push_back(v.get<double>());
      }
    }
    if (e.contains("trials")) {
      if (!e["trials"].is_number_integer())
        throw irsnet::violated_invariant("trials", "expected an integer");
      cfg.ex.trials = e["trials"].get<long>();
    }
    if (e.contains("seed")) {
      if (!e["seed"].is_number_integer())
        throw irsnet::violated_invariant("seed", "expected an integer");
      cfg.ex.seed = e["seed"].get<std::uint64_t>();
    }
    if (e.contains("threads")) {
      if (!e["threads"].is_number_integer())
        throw irsnet::violated_invariant("threads", "expected an integer");
      cfg.ex.threads = e["threads"].get<int>();
    }
    if (e.contains("out_dir")) {
      if (!e["out_dir"].is_string())
        throw irsnet::violated_invariant("out_dir", "expected a string");
      cfg.ex.out_dir = e["out_dir"].get<std::string>();
    }
  }
  return cfg;
}

void write_outputs(const cli_config& cfg, const irsnet::csv_table& table,
                   const irsnet::svg_plot& plot) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.ex.out_dir);
  std::string base = (fs::path(cfg.ex.out_dir) / cfg.ex.name).string();
  irsnet::write_file(base + ".csv", irsnet::render_csv(table));
  irsnet::write_file(base + ".svg", irsnet::render_svg(plot));
  std::cout << "wrote " << base << ".csv and " << base << ".svg\n";
}

// Deterministic sample quantile (sorted copy, linear interpolation).
double quantile(std::vector<double> xs, double q) {
  std::sort(xs.begin(), xs.end());
  if (xs.empty()) return 0.0;
  double pos = q * static_cast<double>(xs.size() - 1);
  std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= xs.size()) return xs.back();
  double frac = pos - static_cast<double>(i);
  return xs[i] * (1.0 - frac) + xs[i + 1] * frac;
}

// Shared 20-point threshold grid for outage curves: pooled capacity
// quantiles, so every sweep value is evaluated at the same alphas.
std::vector<double> alpha_grid(const std::vector<double>& pooled_caps) {
  std::vector<double> alphas;
  for (int i = 0; i < 20; ++i) {
    double q = 0.025 + 0.95 * static_cast<double>(i) / 19.0;
    alphas.push_back(quantile(pooled_caps, q));
  }
  std::sort(alphas.begin(), alphas.end());
  std::vector<double> out;
  for (double a : alphas)
    if (a > 0.0 && (out.empty() || a > out.back() * (1.0 + 1e-12)))
      out.push_back(a);
  if (out.size() < 2) {
    out.clear();
    double hi = pooled_caps.empty()
                    ? 1.0
                    : *std::max_element(pooled_caps.begin(), pooled_caps.end());
    if (!(hi > 0.0)) hi = 1.0;
    for (int i = 1; i <= 20; ++i) out.push_back(hi * i / 20.0);
  }
  return out;
}

std::vector<double> caps_of(const irsnet::ensemble_stats& st) {
  std::vector<double> caps;
  caps.reserve(st.samples.size());
  for (const auto& s : st.samples) caps.push_back(s.cap);
  return caps;
}

void run_fig3(const cli_config& cfg) {
  auto sweep = irsnet::sweep_lambda_irs(cfg.p, cfg.ex.grid, cfg.ex.trials,
                                        cfg.ex.seed, cfg.ex.threads);
  irsnet::csv_table t;
  t.comments = {irsnet::metadata_comment(cfg.p, cfg.bp)};
  t.header = {"lambda_irs", "mean_ps", "ci_ps", "mean_pi", "ci_pi",
              "ps_min",     "ps_max",  "pi_min", "pi_max"};
  irsnet::svg_plot plot;
  plot.title = "mean conditional powers vs IRS density";
  plot.xlabel = "lambda_irs [1/m^2]";
  plot.ylabel = "power [W]";
  plot.logx = true;
  plot.logy = true;
  irsnet::svg_series sim_s{"mean_ps (sim)", "#1f6fb2", false, {}};
  irsnet::svg_series sim_i{"mean_pi (sim)", "#b23a1f", false, {}};
  irsnet::svg_series b_smin{"ps_min", "#1f6fb2", true, {}};
  irsnet::svg_series b_smax{"ps_max", "#144c7a", true, {}};
  irsnet::svg_series b_imin{"pi_min", "#b23a1f", true, {}};
  irsnet::svg_series b_imax{"pi_max", "#7a2814", true, {}};

  for (const auto& [lam, st] : sweep) {
    irsnet::system_params q = cfg.p;
    q.lambda_irs = lam;
    irsnet::bound_set bs = irsnet::eval_bounds(q, cfg.bp);
    t.rows.push_back({irsnet::format_double(lam),
                      irsnet::format_double(st.mean_ps.mean),
                      irsnet::format_double(st.mean_ps.halfwidth),
                      irsnet::format_double(st.mean_pi.mean),
                      irsnet::format_double(st.mean_pi.halfwidth),
                      irsnet::format_double(bs.ps_min.total),
                      irsnet::format_double(bs.ps_max.total),
                      irsnet::format_double(bs.pi_min.total),
                      irsnet::format_double(bs.pi_max.total)});
    sim_s.pts.push_back({lam, st.mean_ps.mean, st.mean_ps.halfwidth});
    sim_i.pts.push_back({lam, st.mean_pi.mean, st.mean_pi.halfwidth});
    b_smin.pts.push_back({lam, bs.ps_min.total, 0.0});
    b_smax.pts.push_back({lam, bs.ps_max.total, 0.0});
    b_imin.pts.push_back({lam, bs.pi_min.total, 0.0});
    b_imax.pts.push_back({lam, bs.pi_max.total, 0.0});
    for (const auto& note : bs.notes)
      std::cout << "note (lambda_irs=" << irsnet::format_double(lam)
                << "): " << note << "\n";
  }
  plot.series = {sim_s, sim_i, b_smin, b_smax, b_imin, b_imax};
  write_outputs(cfg, t, plot);
}

void run_fig4(const cli_config& cfg) {
  auto sweep = irsnet::sweep_lambda_irs(cfg.p, cfg.ex.grid, cfg.ex.trials,
                                        cfg.ex.seed, cfg.ex.threads);
  irsnet::csv_table t;
  t.comments = {irsnet::metadata_comment(cfg.p, cfg.bp)};
  t.header = {"lambda_irs", "mean_cap", "ci_cap"};
  irsnet::svg_plot plot;
  plot.title = "mean capacity vs IRS density";
  plot.xlabel = "lambda_irs [1/m^2]";
  plot.ylabel = "capacity [nats]";
  plot.logx = true;
  irsnet::svg_series sim{"mean capacity (sim)", "#1f6fb2", false, {}};
  for (const auto& [lam, st] : sweep) {
    t.rows.push_back({irsnet::format_double(lam),
                      irsnet::format_double(st.mean_cap.mean),
                      irsnet::format_double(st.mean_cap.halfwidth)});
    sim.pts.push_back({lam, st.mean_cap.mean, st.mean_cap.halfwidth});
  }
  plot.series = {sim};
  write_outputs(cfg, t, plot);
}

// Shared by the two outage sweeps; `label` names the swept parameter column
// and `apply` installs one sweep value into a params copy.
void run_outage_sweep(
    const cli_config& cfg, const std::string& label,
    const std::function<irsnet::system_params(double)>& apply) {
  std::vector<std::pair<double, irsnet::ensemble_stats>> runs;
  for (double v : cfg.ex.grid) {
    irsnet::system_params q = apply(v);
    irsnet::validate(q);
    runs.emplace_back(v, irsnet::run_ensemble(q, cfg.ex.trials, cfg.ex.seed,
                                              cfg.ex.threads));
  }
  std::vector<double> pooled;
  for (const auto& [v, st] : runs) {
    auto caps = caps_of(st);
    pooled.insert(pooled.end(), caps.begin(), caps.end());
  }
  std::vector<double> alphas = alpha_grid(pooled);

  irsnet::csv_table t;
  t.comments = {irsnet::metadata_comment(cfg.p, cfg.bp)};
  t.header = {label, "alpha", "emp_pr_c_gt_alpha", "ci", "bound", "tau_star"};
  irsnet::svg_plot plot;
  plot.title = "capacity tail vs bound";
  plot.xlabel = "alpha [nats]";
  plot.ylabel = "Pr{capacity > alpha}";

  const char* colors[] = {"#1f6fb2", "#b23a1f", "#2e8540", "#7a4b9b",
                          "#a07c1e", "#167a7a"};
  int ci_idx = 0;
  for (const auto& [v, st] : runs) {
    irsnet::system_params q = apply(v);
    auto tails = irsnet::empirical_tail(caps_of(st), alphas);
    std::string color = colors[ci_idx % 6];
    ++ci_idx;
    irsnet::svg_series emp{label + "=" + irsnet::format_double(v) + " (sim)",
                           color, false, {}};
    irsnet::svg_series bnd{label + "=" + irsnet::format_double(v) + " (bound)",
                           color, true, {}};
    for (const auto& tp : tails) {
      double tau_star, bound;
      if (cfg.bp.tau_s > 0.0) {
        tau_star = cfg.bp.tau_s;
        bound = irsnet::outage_bound(tp.t, tau_star, q);
      } else {
        irsnet::tau_opt o =
            irsnet::optimize_tau(tp.t, q, irsnet::tail_kind::outage);
        tau_star = o.tau;
        bound = o.bound;
      }
      t.rows.push_back({irsnet::format_double(v), irsnet::format_double(tp.t),
                        irsnet::format_double(tp.prob),
                        irsnet::format_double((tp.hi - tp.lo) / 2.0),
                        irsnet::format_double(bound),
                        irsnet::format_double(tau_star)});
      emp.pts.push_back({tp.t, tp.prob, (tp.hi - tp.lo) / 2.0});
      bnd.pts.push_back({tp.t, bound, 0.0});
    }
    plot.series.push_back(emp);
    plot.series.push_back(bnd);
  }
  write_outputs(cfg, t, plot);
}

void run_fig5(const cli_config& cfg) {
  run_outage_sweep(cfg, "lambda_irs", [&cfg](double v) {
    irsnet::system_params q = cfg.p;
    q.lambda_irs = v;
    return q;
  });
}

void run_fig6(const cli_config& cfg) {
  run_outage_sweep(cfg, "kappa", [&cfg](double v) {
    irsnet::system_params q = cfg.p;
    q.kappa = v;
    return q;
  });
}

// Fast deterministic property suite; stops at the first failing invariant.
int run_validate_all(const cli_config& cfg) {
  struct check {
    std::string name;
    std::function<std::string()> run;  // empty string = pass
  };
  std::vector<check> checks;

  checks.push_back({"params_reject_negative_density", [] {
    irsnet::system_params p;
    p.lambda_bs = -1.0;
    try {
      irsnet::validate(p);
    } catch (const irsnet::violated_invariant& e) {
      return std::string(e.field == "lambda_bs" ? "" : "wrong field reported");
    }
    return std::string("negative density accepted");
  }});

  checks.push_back({"params_reject_equal_heights", [] {
    irsnet::system_params p;
    p.h_irs = p.h_bs;
    try {
      irsnet::validate(p);
    } catch (const irsnet::violated_invariant&) {
      return std::string();
    }
    return std::string("equal heights accepted");
  }});

  checks.push_back({"params_json_round_trip", [&cfg] {
    std::string s1 = irsnet::params_to_json(cfg.p);
    std::string s2 = irsnet::params_to_json(irsnet::params_from_json(s1));
    return s1 == s2 ? std::string() : std::string("round trip changed bytes");
  }});

  checks.push_back({"ppp_mean_count", [] {
    auto rng = irsnet::make_stream(11, 0);
    double lambda = 1e-3, radius = 45.0;
    double expected = lambda * std::numbers::pi * radius * radius;
    double sum = 0.0;
    int n = 20000;
    for (int i = 0; i < n; ++i)
      sum += static_cast<double>(
          irsnet::sample_ppp(lambda, {0, 0}, radius, rng).pts.size());
    double mean = sum / n;
    double tol = 4.0 * std::sqrt(expected / n);
    return std::abs(mean - expected) < tol
               ? std::string()
               : "mean count " + irsnet::format_double(mean) + " vs " +
                     irsnet::format_double(expected);
  }});

  checks.push_back({"campbell_inverse_square", [] {
    auto rng = irsnet::make_stream(12, 0);
    auto f = [](irsnet::point2 x) {
      return 1.0 / (100.0 + x.x * x.x + x.y * x.y);
    };
    double rel = irsnet::campbell_check(1e-3, f, {0, 0}, 45.0, 40000, rng);
    return rel < 0.02 ? std::string()
                      : "relative error " + irsnet::format_double(rel);
  }});

  checks.push_back({"phase_config_cancels_specular", [] {
    double th = irsnet::irs_phase(0.3, 0.4);
    double composed = std::fmod(th + 0.3 + 0.4, 2.0 * std::numbers::pi);
    return std::abs(composed) < 1e-12 ? std::string()
                                      : "composed phase " +
                                            irsnet::format_double(composed);
  }});

  checks.push_back({"power_split_is_exact", [&cfg] {
    auto rng = irsnet::make_stream(cfg.ex.seed, 7);
    irsnet::scenario s = irsnet::build(cfg.p, rng);
    auto coeffs = irsnet::symbol_coefficients(s);
    auto pw = irsnet::conditional_powers(s);
    double ps = cfg.p.sigma_d_sq * std::norm(coeffs[0]);
    double pi_sum = 0.0;
    for (std::size_t u = 1; u < coeffs.size(); ++u)
      pi_sum += cfg.p.sigma_d_sq * std::norm(coeffs[u]);
    double scale = std::max({1.0, pw.p_s, pw.p_i});
    if (std::abs(ps - pw.p_s) > 1e-9 * scale)
      return std::string("p_s differs from own-stream power");
    if (std::abs(pi_sum - pw.p_i) > 1e-9 * scale)
      return std::string("p_i differs from other-stream power sum");
    return std::string();
  }});

  checks.push_back({"ensemble_thread_determinism", [&cfg] {
    irsnet::ensemble_stats a = irsnet::run_ensemble(cfg.p, 64, cfg.ex.seed, 1);
    irsnet::ensemble_stats b = irsnet::run_ensemble(cfg.p, 64, cfg.ex.seed, 4);
    for (int i = 0; i < 64; ++i)
      if (a.samples[i].p_s != b.samples[i].p_s ||
          a.samples[i].p_i != b.samples[i].p_i)
        return "trial " + std::to_string(i) + " differs across thread counts";
    return std::string();
  }});

  checks.push_back({"bounds_finite_at_defaults", [&cfg] {
    irsnet::bound_set bs = irsnet::eval_bounds(cfg.p, cfg.bp);
    if (!(bs.ps_min.total <= bs.ps_max.total))
      return std::string("signal sandwich inverted at defaults");
    if (!(bs.k_coef > 0.0) || !(bs.l_coef > 0.0))
      return std::string("nonpositive moment constant");
    return std::string();
  }});

  checks.push_back({"series_closed_form_agreement", [] {
    double h1 = irsnet::h_fn(1.0);
    return std::abs(h1 - 1.00000275574) < 1e-10
               ? std::string()
               : "h_fn(1) = " + irsnet::format_double(h1);
  }});

  checks.push_back({"tail_tau_domain_enforced", [&cfg] {
    double tm = irsnet::tau_max_s(cfg.p);
    try {
      irsnet::tail_bound_s(1.0, tm, cfg.p);
    } catch (const irsnet::tau_out_of_domain&) {
      return std::string();
    }
    return std::string("tau = tau_max accepted");
  }});

  irsnet::csv_table t;
  t.comments = {irsnet::metadata_comment(cfg.p, cfg.bp)};
  t.header = {"check", "status"};
  irsnet::svg_plot plot;
  plot.title = "validation suite";
  plot.xlabel = "check index";
  plot.ylabel = "pass = 1";
  irsnet::svg_series series{"checks", "#2e8540", false, {}};

  int failures = 0;
  std::string first_failure;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    std::string detail = checks[i].run();
    bool ok = detail.empty();
    if (ok) {
      std::cout << "ok " << checks[i].name << "\n";
    } else {
      std::cerr << "FAIL " << checks[i].name << ": " << detail << "\n";
      ++failures;
      if (first_failure.empty()) first_failure = checks[i].name;
    }
    t.rows.push_back({checks[i].name, ok ? "pass" : "fail: " + detail});
    series.pts.push_back({static_cast<double>(i), ok ? 1.0 : 0.0, 0.0});
  }
  plot.series = {series};
  write_outputs(cfg, t, plot);
  if (failures) {
    std::cerr << failures << " check(s) failed, first: " << first_failure
              << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IRS-assisted downlink simulator and analytic bounds engine"};
  std::string config_path, experiment, out_dir;
  std::uint64_t seed = 0;
  long trials = 0;
  int threads = 0;
  app.add_option("--config", config_path, "JSON config path");
  app.add_option("--experiment", experiment,
                 "fig3_powers | fig4_capacity | fig5_outage_lambda | "
                 "fig6_outage_kappa | validate_all (overrides config)");
  app.add_option("--seed", seed, "master seed (overrides config)");
  app.add_option("--trials", trials, "trial count (overrides config)");
  app.add_option("--threads", threads, "worker threads, 0 = hardware (overrides config)");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  CLI11_PARSE(app, argc, argv);

  try {
    cli_config cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    if (app.count("--experiment")) cfg.ex.name = experiment;
    if (app.count("--seed")) cfg.ex.seed = seed;
    if (app.count("--trials")) cfg.ex.trials = trials;
    if (app.count("--threads")) cfg.ex.threads = threads;
    if (app.count("--out")) cfg.ex.out_dir = out_dir;

    irsnet::validate(cfg.p);
    irsnet::validate(cfg.bp, cfg.p);
    if (cfg.ex.trials < 1)
      throw irsnet::violated_invariant("trials", "must be >= 1");
    if (cfg.ex.grid.empty() && cfg.ex.name != "validate_all")
      throw irsnet::violated_invariant("grid", "must be nonempty");

    if (cfg.ex.name == "fig3_powers")
      run_fig3(cfg);
    else if (cfg.ex.name == "fig4_capacity")
      run_fig4(cfg);
    else if (cfg.ex.name == "fig5_outage_lambda")
      run_fig5(cfg);
    else if (cfg.ex.name == "fig6_outage_kappa")
      run_fig6(cfg);
    else if (cfg.ex.name == "validate_all")
      return run_validate_all(cfg);
    else
      throw irsnet::violated_invariant("experiment.name",
                                       "unknown experiment " + cfg.ex.name);
    return 0;
  } catch (const irsnet::violated_invariant& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const irsnet::non_finite& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
