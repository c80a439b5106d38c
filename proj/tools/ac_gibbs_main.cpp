// Command-line driver: constants, sampling, exact oracle queries, reflection
// tests, constrained minimization, and the scaling experiments.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "acg/automata.hpp"
#include "acg/errors.hpp"
#include "acg/experiments.hpp"
#include "acg/layers.hpp"
#include "acg/minimize.hpp"
#include "acg/persist.hpp"
#include "acg/potential.hpp"
#include "acg/reflect.hpp"
#include "acg/sampler.hpp"
#include "acg/transfer.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitUsage = 64;

acg::Potential load_potential(const std::string& spec) {
  if (spec == "quartic") return acg::Potential::quartic();
  // "table:<csv path>" with u,V columns
  if (spec.rfind("table:", 0) == 0) {
    const std::string path = spec.substr(6);
    const std::string text = acg::read_text(path);
    std::vector<double> us, vs;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty() || line[0] == '#' || line.find("u,") == 0) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) continue;
      us.push_back(std::stod(line.substr(0, comma)));
      vs.push_back(std::stod(line.substr(comma + 1)));
    }
    return acg::Potential::from_table(us, vs);
  }
  throw acg::ConfigError("unknown potential spec: " + spec +
                         " (use 'quartic' or 'table:<csv>')");
}

int threads_from_env(int cli_threads) {
  if (const char* env = std::getenv("AC_GIBBS_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (...) {
      throw acg::ConfigError("AC_GIBBS_THREADS is not an integer");
    }
  }
  return cli_threads;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Path-space Gibbs toolkit for the 1-D stochastic Allen-Cahn invariant measure"};
  app.require_subcommand(1);

  std::string pot_spec = "quartic";
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  int threads = 0;
  std::string config_path;
  app.add_option("--potential", pot_spec, "quartic | table:<csv>");
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_option("--threads", threads, "worker threads (0 = hardware)");
  app.add_option("--config", config_path, "JSON experiment config");

  auto* cmd_constants = app.add_subcommand("constants", "well constants and decay rate");

  auto* cmd_sample = app.add_subcommand("sample", "run a chain and store the ensemble");
  double s_eps = 0.1, s_L = 5.0, s_dx = 0.05, s_um = -1.0, s_up = 1.0;
  long s_sweeps = 20000, s_burn = 2000, s_thin = 10;
  int s_block = 24;
  std::string s_out = "ensemble.acp";
  cmd_sample->add_option("--eps", s_eps);
  cmd_sample->add_option("--L", s_L);
  cmd_sample->add_option("--dx", s_dx);
  cmd_sample->add_option("--u-minus", s_um);
  cmd_sample->add_option("--u-plus", s_up);
  cmd_sample->add_option("--sweeps", s_sweeps);
  cmd_sample->add_option("--burn-in", s_burn);
  cmd_sample->add_option("--thin", s_thin);
  cmd_sample->add_option("--block", s_block);
  cmd_sample->add_option("--out", s_out);

  auto* cmd_oracle = app.add_subcommand("oracle", "exact event probabilities");
  std::string o_event = "three-delta-layers";
  double o_eps = 0.1, o_L = 5.0, o_dx = 0.05, o_delta = 0.2, o_level = 2.0;
  cmd_oracle->add_option("--event", o_event,
                         "three-delta-layers | k-layers | one-point-tail | confine-negative");
  cmd_oracle->add_option("--eps", o_eps);
  cmd_oracle->add_option("--L", o_L);
  cmd_oracle->add_option("--dx", o_dx);
  cmd_oracle->add_option("--delta", o_delta);
  cmd_oracle->add_option("--level", o_level);
  int o_k = 3;
  cmd_oracle->add_option("--k", o_k);

  auto* cmd_reflect = app.add_subcommand("reflect-test", "invariance battery on an ensemble");
  std::string r_in;
  double r_alpha = 0.01;
  std::string r_kind = "vertical-between";
  cmd_reflect->add_option("--ensemble", r_in)->required();
  cmd_reflect->add_option("--alpha", r_alpha);
  cmd_reflect->add_option("--kind", r_kind,
                          "vertical | point | vertical-between | point-between-hits | "
                          "fixed-window");

  auto* cmd_min = app.add_subcommand("minimize", "constrained energy minimization");
  std::string m_constraint = "none";
  double m_L = 8.0, m_dx = 0.05, m_um = -1.0, m_up = 1.0, m_delta = 0.1;
  double m_wlo = -4.0, m_whi = 4.0, m_blo = -0.8, m_bhi = 0.8, m_level = 0.5;
  int m_m = 2;
  cmd_min->add_option("--constraint", m_constraint,
                      "none | band | wasted | pre-plus | excursions | point-floor | midpoint | "
                      "point-at-least");
  cmd_min->add_option("--L", m_L);
  cmd_min->add_option("--dx", m_dx);
  cmd_min->add_option("--u-minus", m_um);
  cmd_min->add_option("--u-plus", m_up);
  cmd_min->add_option("--delta", m_delta);
  cmd_min->add_option("--window-lo", m_wlo);
  cmd_min->add_option("--window-hi", m_whi);
  cmd_min->add_option("--band-lo", m_blo);
  cmd_min->add_option("--band-hi", m_bhi);
  cmd_min->add_option("--level", m_level);
  cmd_min->add_option("--m", m_m);

  auto* cmd_lemma = app.add_subcommand("lemma", "energy-lemma verification sweep");
  std::string l_id = "wasted";
  double l_delta = 0.05, l_ell = 8.0, l_dx = 0.05, l_bc_lo = -2.0, l_bc_hi = 2.0;
  cmd_lemma->add_option("--id", l_id, "band | wasted | pre-plus | excursions | point-floor | midpoint");
  cmd_lemma->add_option("--delta", l_delta);
  cmd_lemma->add_option("--ell", l_ell);
  cmd_lemma->add_option("--dx", l_dx);
  cmd_lemma->add_option("--bc-lo", l_bc_lo);
  cmd_lemma->add_option("--bc-hi", l_bc_hi);

  auto* cmd_exp = app.add_subcommand("experiment", "desk-scale scaling experiments");
  std::string e_id;
  cmd_exp->add_option("id", e_id,
                      "layer_scaling | uniformity | onepoint_tail | ld_check | bulk_and_hitting")
      ->required();

  auto* cmd_report = app.add_subcommand("report", "aggregate experiment JSON into CSV/dat");
  std::vector<std::string> rep_inputs;
  std::string rep_prefix = "report";
  cmd_report->add_option("--in", rep_inputs, "experiment JSON files")->required();
  cmd_report->add_option("--prefix", rep_prefix);

  for (auto* sc : app.get_subcommands([](CLI::App*) { return true; })) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const acg::Potential pot = load_potential(pot_spec);
    threads = threads_from_env(threads);
    fs::create_directories(out_dir);

    if (cmd_constants->parsed()) {
      const auto rep = acg::check_assumptions(pot, 3.0, 2001, 1e-10);
      if (!rep.all_passed()) {
        std::cerr << "potential fails the double-well assumptions\n";
        for (const auto& c : rep.clauses)
          if (!c.passed) std::cerr << "  " << c.name << ": " << c.detail << "\n";
        return kExitNumeric;
      }
      const auto wc = acg::well_constants(pot);
      json j;
      j["c0"] = wc.c0;
      j["c1"] = wc.c1;
      j["decay_rate"] = wc.decay_rate;
      j["growth_exponent"] = rep.growth_exponent;
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }

    if (cmd_sample->parsed()) {
      acg::SamplerConfig sc;
      sc.epsilon = s_eps;
      const int n = static_cast<int>(std::lround(2.0 * s_L / s_dx)) - 1;
      sc.grid = acg::Grid(-s_L, s_L, n);
      sc.u_minus = s_um;
      sc.u_plus = s_up;
      sc.block_len = s_block;
      sc.sweeps = s_sweeps;
      sc.burn_in = s_burn;
      sc.thinning = s_thin;
      sc.seed = seed;
      const auto ens = acg::run_chain(sc, pot);
      const std::string out = (fs::path(out_dir) / s_out).string();
      acg::save_ensemble(out, ens);
      json j;
      j["paths"] = ens.paths.size();
      j["acceptance"] = ens.acceptance;
      j["file"] = out;
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }

    if (cmd_oracle->parsed()) {
      acg::StateGrid sg;
      const double margin = std::max(3.0, 1.0 + 5.0 * std::sqrt(o_eps));
      sg.u_min = -1.0 - std::max(margin, o_level + 0.5);
      sg.u_max = 1.0 + std::max(margin, o_level + 0.5);
      sg.m = static_cast<int>(std::lround((sg.u_max - sg.u_min) / 0.02));
      const auto model = acg::build_transfer(o_eps, o_dx, pot, sg);
      const int n_steps = static_cast<int>(std::lround(2.0 * o_L / o_dx));
      double logp;
      if (o_event == "three-delta-layers") {
        acg::LayerCountAutomaton aut(1.0 - o_delta, 3);
        logp = acg::event_log_probability(model, -1.0, 1.0, n_steps, aut);
      } else if (o_event == "k-layers") {
        acg::LayerCountAutomaton aut(1.0 - o_delta, o_k);
        logp = acg::event_log_probability(model, -1.0, 1.0, n_steps, aut);
      } else if (o_event == "one-point-tail") {
        const auto t = acg::marginal(model, -1.0, 1.0, n_steps, {n_steps / 2});
        const double p = t.mass_ge(0, o_level) + t.mass_le(0, -o_level);
        logp = p > 0 ? std::log(p) : -std::numeric_limits<double>::infinity();
      } else if (o_event == "confine-negative") {
        acg::ConfinementAutomaton aut(-std::numeric_limits<double>::infinity(), 0.0, 0.0,
                                      n_steps * o_dx);
        logp = acg::event_log_probability(model, -1.0, 1.0, n_steps, aut);
      } else {
        throw acg::ConfigError("unknown oracle event: " + o_event);
      }
      json j;
      j["event"] = o_event;
      j["log_prob"] = logp;
      j["params"] = {{"eps", o_eps}, {"L", o_L}, {"dx", o_dx}, {"delta", o_delta},
                     {"level", o_level}, {"k", o_k}};
      j["refinement_metadata"] = {{"bins", sg.m}, {"bin_width", sg.width()}};
      std::cout << j.dump(2) << "\n";
      return kExitOk;
    }

    if (cmd_reflect->parsed()) {
      const auto ens = acg::load_ensemble(r_in);
      acg::ReflectionSpec spec;
      const double L = ens.grid.x_plus;
      if (r_kind == "vertical") {
        spec = acg::ReflectionSpec::vertical();
      } else if (r_kind == "point") {
        spec = acg::ReflectionSpec::point();
      } else if (r_kind == "vertical-between") {
        acg::StoppingSpec left, right;
        left.side = acg::StoppingSpec::Side::Left;
        left.anchor_lo = ens.grid.x_minus;
        left.anchor_hi = ens.grid.x_plus;
        left.has_trigger = true;
        left.trigger_level = 0.8;
        left.trigger_abs = true;
        left.target_level = 0.0;
        right = left;
        right.side = acg::StoppingSpec::Side::Right;
        spec = acg::ReflectionSpec::between_stopping_points(left, right);
      } else if (r_kind == "point-between-hits") {
        spec = acg::ReflectionSpec::point_between_hits(-0.9 * L, -0.6 * L, 0.6 * L, 0.9 * L);
      } else if (r_kind == "fixed-window") {
        spec = acg::ReflectionSpec::fixed_window(0.1 * L, 0.5 * L);
      } else {
        throw acg::ConfigError("unknown reflection kind: " + r_kind);
      }
      const auto rep = acg::invariance_test(spec, ens, acg::default_statistic_battery(), r_alpha);
      json j;
      j["transform"] = rep.transform;
      j["pass"] = rep.pass;
      json stats = json::object();
      for (std::size_t k = 0; k < rep.statistic_names.size(); ++k)
        stats[rep.statistic_names[k]] = rep.p_values[k];
      j["p_values"] = stats;
      std::cout << j.dump(2) << "\n";
      return rep.pass ? kExitOk : kExitNumeric;
    }

    if (cmd_min->parsed()) {
      acg::EnergyProblem prob;
      const int n = static_cast<int>(std::lround(2.0 * m_L / m_dx)) - 1;
      prob.grid = acg::Grid(-m_L, m_L, n);
      prob.u_minus = m_um;
      prob.u_plus = m_up;
      prob.delta = m_delta;
      prob.window_lo = m_wlo;
      prob.window_hi = m_whi;
      prob.band_lo = m_blo;
      prob.band_hi = m_bhi;
      prob.m_excursions = m_m;
      prob.point_level = m_level;
      if (m_constraint == "none") prob.constraint = acg::ConstraintKind::None;
      else if (m_constraint == "band") prob.constraint = acg::ConstraintKind::Band;
      else if (m_constraint == "wasted") prob.constraint = acg::ConstraintKind::WastedDeltaMinus;
      else if (m_constraint == "pre-plus") prob.constraint = acg::ConstraintKind::DeltaPlusPre;
      else if (m_constraint == "excursions")
        prob.constraint = acg::ConstraintKind::DisjointExcursions;
      else if (m_constraint == "point-floor") prob.constraint = acg::ConstraintKind::PointFloor;
      else if (m_constraint == "midpoint") prob.constraint = acg::ConstraintKind::MidpointAway;
      else if (m_constraint == "point-at-least")
        prob.constraint = acg::ConstraintKind::PointAtLeast;
      else
        throw acg::ConfigError("unknown constraint: " + m_constraint);
      const auto mr = acg::minimize_energy(prob, pot);
      const double gap = acg::energy_gap(prob, pot);
      json j;
      j["energy"] = mr.energy;
      j["gap"] = gap;
      j["iterations"] = mr.iterations;
      j["converged"] = mr.converged;
      j["residual"] = mr.residual;
      j["witness"] = mr.witness;
      std::cout << j.dump(2) << "\n";
      return mr.converged ? kExitOk : kExitNumeric;
    }

    if (cmd_lemma->parsed()) {
      acg::LemmaParams lp;
      lp.delta = l_delta;
      lp.ell = l_ell;
      lp.dx = l_dx;
      lp.bc_lo = l_bc_lo;
      lp.bc_hi = l_bc_hi;
      const auto rep = acg::verify_energy_lemma(l_id, lp, pot);
      json j;
      j["lemma"] = rep.lemma;
      j["worst_margin"] = rep.worst_margin;
      j["fitted_constant"] = rep.fitted_constant;
      j["fitted_slope"] = rep.fitted_slope;
      j["functional_form_ok"] = rep.functional_form_ok;
      j["lb_worst_slack"] = rep.lb_worst_slack;
      json cases = json::array();
      for (const auto& c : rep.cases)
        cases.push_back({{"u_minus", c.u_minus},
                         {"u_plus", c.u_plus},
                         {"gap", c.gap},
                         {"analytic_lb", c.analytic_lb},
                         {"inconclusive", c.inconclusive}});
      j["per_case"] = cases;
      std::cout << j.dump(2) << "\n";
      return rep.functional_form_ok ? kExitOk : kExitNumeric;
    }

    if (cmd_exp->parsed()) {
      acg::ExperimentConfig cfg;
      if (!config_path.empty())
        cfg = acg::ExperimentConfig::from_json_text(acg::read_text(config_path));
      cfg.id = e_id;
      cfg.seed = seed;
      cfg.threads = threads;
      cfg.out_dir = out_dir;
      const auto res = acg::run_experiment(e_id, cfg, pot);
      const std::string base = (fs::path(out_dir) / (e_id + "_" +
                                std::to_string(res.config_hash))).string();
      acg::write_text_atomic(base + ".json", res.to_json_text());
      acg::write_text_atomic(base + ".csv", res.to_csv_text());
      acg::write_text_atomic(base + ".dat", res.to_dat_text());
      std::cout << res.to_json_text() << "\n";
      return res.pass ? kExitOk : kExitNumeric;
    }

    if (cmd_report->parsed()) {
      std::uint64_t expect_hash = 0;
      bool first = true;
      std::ostringstream csv, dat;
      csv << "experiment,label,estimate,error\n";
      for (const auto& file : rep_inputs) {
        const json j = json::parse(acg::read_text(file));
        const std::uint64_t h = j.at("config_hash").get<std::uint64_t>();
        if (first) {
          expect_hash = h;
          first = false;
        } else if (h != expect_hash) {
          throw acg::ConfigError("report: config hash mismatch in " + file);
        }
        for (const auto& r : j.at("records")) {
          csv << j.at("experiment").get<std::string>() << ","
              << r.at("label").get<std::string>() << "," << r.at("estimate").dump() << ","
              << (r.contains("error") ? r.at("error").dump() : "exact") << "\n";
          dat << r.at("estimate").dump() << "\n";
        }
      }
      acg::write_text_atomic((fs::path(out_dir) / (rep_prefix + ".csv")).string(), csv.str());
      acg::write_text_atomic((fs::path(out_dir) / (rep_prefix + ".dat")).string(), dat.str());
      std::cout << "wrote " << rep_prefix << ".csv and " << rep_prefix << ".dat\n";
      return kExitOk;
    }

    std::cerr << app.help() << "\n";
    return kExitUsage;
  } catch (const acg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const acg::IntegrityError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const acg::NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
