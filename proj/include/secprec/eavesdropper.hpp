#pragma once

/// Smart-eavesdropper model: empirical conditional phase PDFs of the
/// received signal, the ML phase detector built on them, and Monte Carlo
/// estimators for detection probability and legitimate-user SER.

#include <cstdint>
#include <string>
#include <vector>

#include "secprec/channel.hpp"
#include "secprec/precoders.hpp"

namespace secprec {

/// One parameter point of the simulation.
struct ScenarioParams {
  int n = 6;
  int k = 3;
  int order = 4;
  double rho = 0.3;
  RVec beta;        // per-user large-scale gains, defaults to ones
  double beta_e = 1.0;
  double gamma0_db = 10.0;
  double gamma_e_db = -30.0;
  double p0_db = 0.0;  // AnNoCsi floor
  PrecoderKind scheme = PrecoderKind::Icss;

  QosParams qos() const { return QosParams(gamma0_db, gamma_e_db); }
  double p0_linear() const { return std::pow(10.0, p0_db / 10.0); }
  RVec beta_or_ones() const {
    return beta.size() == k ? beta : RVec(RVec::Ones(k));
  }
};

/// Outcome of one simulated transmission seen by the eavesdropper.
struct TrialOutcome {
  int symbol = 0;       // user 1's true symbol index, 1-based
  double theta = 0.0;   // arg(y_e) in [0, 2pi)
  double power = 0.0;   // ||x||^2
  bool feasible = false;
};

/// Simulates `trials` transmissions with fresh channels, symbols, and noise.
/// With fix_user1_to_c1 the training convention pins user 1's symbol to c_1.
/// Trials parallelize over `threads`; substreams make the result independent
/// of the thread count.
std::vector<TrialOutcome> collect_phase_samples(const ScenarioParams& params,
                                                long trials,
                                                uint64_t master_seed,
                                                uint64_t stream_tag,
                                                bool fix_user1_to_c1,
                                                int threads = 1);

enum class PdfMode { RotateFromC1, Independent };

/// Per-symbol empirical density of theta_e over uniform bins of [0, 2pi).
struct PhasePdf {
  int order = 0;
  int bins = 0;
  std::vector<std::vector<double>> density;  // order x bins
  long train_count = 0;
};

/// Bin count must be a multiple of the constellation order so that the
/// rotate mode's shift is exact.
PhasePdf build_conditional_pdf(const std::vector<TrialOutcome>& samples,
                               int order, int bins, PdfMode mode);

/// ML detection over the empirical densities; ties go to the lowest index.
int ml_detect(double theta, const PhasePdf& pdf);

struct DetectionReport {
  double p_correct = 0.0;
  RMat confusion;  // order x order, row-stochastic
  long test_count = 0;
  long train_count = 0;
  long infeasible = 0;
  double mean_power = 0.0;  // linear, over feasible test trials
};

DetectionReport estimate_detection_probability(const ScenarioParams& params,
                                               long train_trials,
                                               long test_trials, int bins,
                                               uint64_t master_seed,
                                               int threads = 1);

/// Classic per-observation detector shared by the legitimate users.
int nearest_symbol_detect(cxd y, const PskConstellation& consts);

struct SerReport {
  RVec per_user;
  double average = 0.0;
  long trials = 0;
  long infeasible = 0;
};

SerReport estimate_user_ser(const ScenarioParams& params, long trials,
                            uint64_t master_seed, int threads = 1);

/// CSV dump: symbol_index, bin_center_radians, density.
void write_phase_pdf_csv(const PhasePdf& pdf, const std::string& path);

}  // namespace secprec
