#pragma once

/// Experiment configuration, Monte Carlo scheduling, metric aggregation, and
/// CSV emission for the simulator CLI.

#include <optional>
#include <string>
#include <vector>

#include "secprec/eavesdropper.hpp"

namespace secprec {

struct ExperimentConfig {
  int n = 6;
  int k = 3;
  int order = 4;  // constellation size M
  double rho = 0.3;
  std::vector<double> beta;  // per-user gains; empty means all ones
  double beta_e = 1.0;
  double gamma0_db = 10.0;
  std::vector<double> gamma_e_db_list = {-30.0};
  std::vector<double> p0_db_list = {0.0};
  std::vector<PrecoderKind> schemes = {PrecoderKind::Icss};
  std::vector<double> rho_list;  // sweep-rho grid; empty means {rho}
  long train_trials = 100000;
  long test_trials = 100000;
  long ser_trials = 200000;
  int bins = 360;
  uint64_t master_seed = 1;
  int threads = 1;
  std::string output_path;

  void validate() const;  // throws std::invalid_argument on bad settings
};

struct MetricsRecord {
  std::string scheme;
  int order = 0;
  int n = 0;
  int k = 0;
  double rho = 0.0;
  double gamma0_db = 0.0;
  double gamma_e_db = 0.0;
  double p0_db = 0.0;
  double avg_power_db = 0.0;
  double p_det_eve = 0.0;
  double ser_user1 = 0.0;
  double ser_avg = 0.0;
  double infeasible_rate = 0.0;
  long trials = 0;
  uint64_t seed = 0;
};

/// One parameter point: detection probability, average power (linear mean,
/// reported in dB), and user SER, all from disjoint substreams of the seed.
MetricsRecord run_point(const ExperimentConfig& cfg, PrecoderKind scheme,
                        double gamma_e_db, double p0_db);

/// One record per (scheme, gamma_e) pair, in config order.
std::vector<MetricsRecord> run_sweep_gamma_e(const ExperimentConfig& cfg);

/// Grid over (rho, P0) for the no-CSI scheme.
std::vector<MetricsRecord> run_sweep_rho(const ExperimentConfig& cfg);

std::string format_csv(const std::vector<MetricsRecord>& records);
void emit_csv(const std::vector<MetricsRecord>& records,
              const std::string& path);
std::vector<MetricsRecord> parse_csv(const std::string& text);

/// Flat key = value config file; unknown keys are rejected. Keys mirror the
/// struct fields (lists comma-separated).
ExperimentConfig load_config_file(const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value);

ScenarioParams scenario_from_config(const ExperimentConfig& cfg,
                                    PrecoderKind scheme, double gamma_e_db,
                                    double p0_db);

}  // namespace secprec
