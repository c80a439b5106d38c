#ifndef ACG_EXPERIMENTS_HPP
#define ACG_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "acg/minimize.hpp"
#include "acg/potential.hpp"
#include "acg/sampler.hpp"
#include "acg/transfer.hpp"

namespace acg {

struct ExperimentConfig {
  std::string id;
  std::vector<double> eps_list = {0.2, 0.1, 0.05};  // sorted descending
  std::vector<double> L_list = {5.0, 10.0, 20.0};
  double delta = 0.2;
  double dx = 0.05;

  // uniformity
  double d_window = 3.0;
  double L_uniform = 12.0;
  double eps_uniform = 0.08;

  // bulk & hitting
  double ell0 = 3.0;
  double eps0 = 0.2;
  std::vector<double> eps_ratio = {0.25, 0.0625};

  // one-point tail
  std::vector<double> tail_levels = {1.5, 2.0, 2.5, 3.0};

  // large-deviation checks
  double ld_halfwidth = 2.0;
  double ld_bc_box = 2.0;

  // sampler budget
  long sweeps = 20000;
  long burn_in = 2000;
  long thinning = 10;
  int block_len = 24;
  int chains = 2;

  std::uint64_t seed = 1;
  int threads = 0;
  std::string out_dir = ".";

  void validate() const;
  std::uint64_t hash() const;

  static ExperimentConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

struct ExperimentRecord {
  std::string label;
  std::vector<std::pair<std::string, double>> params;
  double estimate = 0.0;
  double error = -1.0;  // < 0: exact-oracle value (no sampling error)
  bool flagged = false;
  std::string note;
};

struct ExperimentResult {
  std::string id;
  std::uint64_t config_hash = 0;
  std::vector<ExperimentRecord> records;
  std::vector<std::pair<std::string, double>> summary;
  bool pass = false;
  std::string detail;

  std::string to_json_text() const;
  std::string to_csv_text() const;
  std::string to_dat_text() const;
};

ExperimentResult exp_layer_scaling(const ExperimentConfig& cfg, const Potential& pot);
ExperimentResult exp_uniformity(const ExperimentConfig& cfg, const Potential& pot);
ExperimentResult exp_onepoint_tail(const ExperimentConfig& cfg, const Potential& pot);
ExperimentResult exp_ld_check(const ExperimentConfig& cfg, const Potential& pot);
ExperimentResult exp_bulk_and_hitting(const ExperimentConfig& cfg, const Potential& pot);

/// Window statistics (L/d) p(window) from a set of layer midpoints per path;
/// exposed so the harness can be self-tested on synthetic midpoints.
struct UniformityWindow {
  double center = 0.0;
  double stat = 0.0;   // (L/d) * p(window)
  double se = 0.0;
  double ess = 0.0;
  bool flagged = false;  // insufficient effective samples
};

std::vector<UniformityWindow> uniformity_windows(
    const std::vector<std::vector<double>>& midpoints_per_path, double L, double d,
    double margin, double min_ess);

ExperimentResult run_experiment(const std::string& id, const ExperimentConfig& cfg,
                                const Potential& pot);

}  // namespace acg

#endif
