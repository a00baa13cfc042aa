#include "secprec/eavesdropper.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "secprec/rng.hpp"

namespace secprec {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <typename Fn>
void parallel_for(long count, int threads, Fn&& body) {
  threads = std::max(1, threads);
  if (threads == 1 || count < 2) {
    for (long i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<long> next{0};
  constexpr long kChunk = 64;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        const long start = next.fetch_add(kChunk);
        if (start >= count) return;
        const long end = std::min(start + kChunk, count);
        for (long i = start; i < end; ++i) body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

struct TrialDraw {
  ChannelRealization channel;
  std::vector<int> symbol_idx;  // 1-based
  CVec s;
  PrecoderSolution sol;
};

// Fixed draw order per trial: channel, then symbols, then whatever noise the
// caller consumes afterwards.
TrialDraw run_trial(const ScenarioParams& params, std::mt19937_64& rng,
                    bool fix_user1_to_c1) {
  const PskConstellation consts(params.order);
  TrialDraw tr;
  tr.channel = sample_channel(params.n, params.k, params.beta_or_ones(),
                              params.beta_e, params.rho, rng);
  std::uniform_int_distribution<int> pick(1, params.order);
  tr.symbol_idx.resize(static_cast<size_t>(params.k));
  tr.s.resize(params.k);
  for (int u = 0; u < params.k; ++u) {
    int idx = pick(rng);
    if (u == 0 && fix_user1_to_c1) idx = 1;
    tr.symbol_idx[static_cast<size_t>(u)] = idx;
    tr.s[u] = consts.symbol(idx);
  }
  try {
    tr.sol = run_precoder(params.scheme, tr.channel.H, tr.channel.h_e, tr.s,
                          consts, params.qos(), params.p0_linear());
  } catch (const std::exception&) {
    tr.sol.status = SolveStatus::Infeasible;
  }
  return tr;
}

// Plain transpose product a^T b (Eigen's dot would conjugate).
cxd bilinear(const CVec& a, const CVec& b) {
  return (a.array() * b.array()).sum();
}

double wrap_phase(double theta) {
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  if (theta >= kTwoPi) theta = 0.0;
  return theta;
}

int phase_bin(double theta, int bins) {
  int b = static_cast<int>(wrap_phase(theta) / kTwoPi * bins);
  return std::min(b, bins - 1);
}

}  // namespace

std::vector<TrialOutcome> collect_phase_samples(const ScenarioParams& params,
                                                long trials,
                                                uint64_t master_seed,
                                                uint64_t stream_tag,
                                                bool fix_user1_to_c1,
                                                int threads) {
  if (trials < 1)
    throw std::invalid_argument("collect_phase_samples: trials must be >= 1");
  std::vector<TrialOutcome> out(static_cast<size_t>(trials));
  parallel_for(trials, threads, [&](long i) {
    auto rng = make_rng(master_seed, stream_tag, static_cast<uint64_t>(i));
    TrialDraw tr = run_trial(params, rng, fix_user1_to_c1);
    TrialOutcome& rec = out[static_cast<size_t>(i)];
    rec.symbol = tr.symbol_idx[0];
    if (tr.sol.status != SolveStatus::Optimal) return;
    const cxd y_e = bilinear(tr.channel.h_e, tr.sol.x) + sample_noise(rng);
    rec.theta = wrap_phase(std::arg(y_e));
    rec.power = tr.sol.power;
    rec.feasible = true;
  });
  return out;
}

PhasePdf build_conditional_pdf(const std::vector<TrialOutcome>& samples,
                               int order, int bins, PdfMode mode) {
  if (bins < order || bins % order != 0)
    throw std::invalid_argument(
        "build_conditional_pdf: bins must be a positive multiple of order");
  PhasePdf pdf;
  pdf.order = order;
  pdf.bins = bins;
  pdf.density.assign(static_cast<size_t>(order),
                     std::vector<double>(static_cast<size_t>(bins), 0.0));
  const double bin_width = kTwoPi / bins;

  if (mode == PdfMode::RotateFromC1) {
    long cnt = 0;
    for (const TrialOutcome& s : samples) {
      if (!s.feasible || s.symbol != 1) continue;
      pdf.density[0][static_cast<size_t>(phase_bin(s.theta, bins))] += 1.0;
      ++cnt;
    }
    if (cnt == 0)
      throw std::invalid_argument("build_conditional_pdf: no usable samples");
    for (int b = 0; b < bins; ++b) pdf.density[0][b] /= cnt * bin_width;
    const int step = bins / order;
    for (int m = 1; m < order; ++m) {
      const int shift = m * step;  // f(theta|c_m) = f(theta - shift|c_1)
      for (int b = 0; b < bins; ++b)
        pdf.density[m][b] = pdf.density[0][(b - shift % bins + bins) % bins];
    }
    pdf.train_count = cnt;
    return pdf;
  }

  std::vector<long> counts(static_cast<size_t>(order), 0);
  long total = 0;
  for (const TrialOutcome& s : samples) {
    if (!s.feasible) continue;
    const size_t m = static_cast<size_t>(s.symbol - 1);
    pdf.density[m][static_cast<size_t>(phase_bin(s.theta, bins))] += 1.0;
    ++counts[m];
    ++total;
  }
  for (int m = 0; m < order; ++m) {
    if (counts[m] == 0)
      throw std::invalid_argument(
          "build_conditional_pdf: a symbol has no training samples");
    for (int b = 0; b < bins; ++b) pdf.density[m][b] /= counts[m] * bin_width;
  }
  pdf.train_count = total;
  return pdf;
}

int ml_detect(double theta, const PhasePdf& pdf) {
  const int b = phase_bin(theta, pdf.bins);
  int best = 1;
  double best_density = pdf.density[0][static_cast<size_t>(b)];
  for (int m = 1; m < pdf.order; ++m) {
    const double d = pdf.density[static_cast<size_t>(m)][static_cast<size_t>(b)];
    if (d > best_density) {
      best_density = d;
      best = m + 1;
    }
  }
  return best;
}

DetectionReport estimate_detection_probability(const ScenarioParams& params,
                                               long train_trials,
                                               long test_trials, int bins,
                                               uint64_t master_seed,
                                               int threads) {
  // Disjoint substream tags keep training and test samples independent.
  constexpr uint64_t kTrainTag = 0x747261696eULL;
  constexpr uint64_t kTestTag = 0x74657374ULL;
  const auto train = collect_phase_samples(params, train_trials, master_seed,
                                           kTrainTag, true, threads);
  const PhasePdf pdf =
      build_conditional_pdf(train, params.order, bins, PdfMode::RotateFromC1);

  const auto test = collect_phase_samples(params, test_trials, master_seed,
                                          kTestTag, false, threads);
  DetectionReport rep;
  rep.train_count = pdf.train_count;
  rep.confusion = RMat::Zero(params.order, params.order);
  long correct = 0;
  long used = 0;
  double power_sum = 0.0;
  for (const TrialOutcome& s : test) {
    if (!s.feasible) {
      ++rep.infeasible;
      continue;
    }
    const int decided = ml_detect(s.theta, pdf);
    rep.confusion(s.symbol - 1, decided - 1) += 1.0;
    if (decided == s.symbol) ++correct;
    power_sum += s.power;
    ++used;
  }
  if (used == 0) throw std::runtime_error("no feasible test trials");
  for (int m = 0; m < params.order; ++m) {
    const double row_sum = rep.confusion.row(m).sum();
    if (row_sum > 0.0) rep.confusion.row(m) /= row_sum;
  }
  rep.p_correct = static_cast<double>(correct) / used;
  rep.test_count = used;
  rep.mean_power = power_sum / used;
  return rep;
}

int nearest_symbol_detect(cxd y, const PskConstellation& consts) {
  int best = 1;
  double best_metric = std::real(y * std::conj(consts.symbol(1)));
  for (int m = 2; m <= consts.order; ++m) {
    const double metric = std::real(y * std::conj(consts.symbol(m)));
    if (metric > best_metric) {
      best_metric = metric;
      best = m;
    }
  }
  return best;
}

SerReport estimate_user_ser(const ScenarioParams& params, long trials,
                            uint64_t master_seed, int threads) {
  constexpr uint64_t kSerTag = 0x736572ULL;
  const PskConstellation consts(params.order);
  struct TrialErrors {
    std::vector<uint8_t> err;
    bool feasible = false;
  };
  std::vector<TrialErrors> results(static_cast<size_t>(trials));
  parallel_for(trials, threads, [&](long i) {
    auto rng = make_rng(master_seed, kSerTag, static_cast<uint64_t>(i));
    TrialDraw tr = run_trial(params, rng, false);
    TrialErrors& te = results[static_cast<size_t>(i)];
    if (tr.sol.status != SolveStatus::Optimal) return;
    te.feasible = true;
    te.err.resize(static_cast<size_t>(params.k), 0);
    for (int u = 0; u < params.k; ++u) {
      const cxd y = bilinear(tr.channel.H.row(u).transpose(), tr.sol.x) +
                    sample_noise(rng);
      if (nearest_symbol_detect(y, consts) != tr.symbol_idx[static_cast<size_t>(u)])
        te.err[static_cast<size_t>(u)] = 1;
    }
  });

  SerReport rep;
  rep.per_user = RVec::Zero(params.k);
  long feasible = 0;
  for (const TrialErrors& te : results) {
    if (!te.feasible) {
      ++rep.infeasible;
      continue;
    }
    ++feasible;
    for (int u = 0; u < params.k; ++u) rep.per_user[u] += te.err[static_cast<size_t>(u)];
  }
  if (feasible == 0) throw std::runtime_error("no feasible SER trials");
  rep.per_user /= static_cast<double>(feasible);
  rep.average = rep.per_user.mean();
  rep.trials = feasible;
  return rep;
}

void write_phase_pdf_csv(const PhasePdf& pdf, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "symbol_index,bin_center_radians,density\n";
  char line[96];
  for (int m = 0; m < pdf.order; ++m) {
    for (int b = 0; b < pdf.bins; ++b) {
      const double center = (b + 0.5) * kTwoPi / pdf.bins;
      std::snprintf(line, sizeof(line), "%d,%.6g,%.6g\n", m + 1, center,
                    pdf.density[static_cast<size_t>(m)][static_cast<size_t>(b)]);
      out << line;
    }
  }
}

}  // namespace secprec
