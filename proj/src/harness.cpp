#include "secprec/harness.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "secprec/rng.hpp"

namespace secprec {

namespace {

uint64_t mix_double(uint64_t seed, double v) {
  return splitmix64(seed ^ std::bit_cast<uint64_t>(v));
}

// Per-point seed derived from the configuration so records are reproducible
// independently of sweep ordering.
uint64_t point_seed(const ExperimentConfig& cfg, PrecoderKind scheme,
                    double gamma_e_db, double p0_db, double rho) {
  uint64_t s = splitmix64(cfg.master_seed ^ (static_cast<uint64_t>(scheme) << 32));
  s = mix_double(s, gamma_e_db);
  s = mix_double(s, p0_db);
  s = mix_double(s, rho);
  return s;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_double_list(const std::string& value) {
  std::vector<double> out;
  for (const auto& tok : split(value, ','))
    if (!trim(tok).empty()) out.push_back(std::stod(trim(tok)));
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

MetricsRecord run_point_with_rho(const ExperimentConfig& cfg,
                                 PrecoderKind scheme, double gamma_e_db,
                                 double p0_db, double rho) {
  ScenarioParams sp = scenario_from_config(cfg, scheme, gamma_e_db, p0_db);
  sp.rho = rho;
  const uint64_t seed = point_seed(cfg, scheme, gamma_e_db, p0_db, rho);

  const DetectionReport det = estimate_detection_probability(
      sp, cfg.train_trials, cfg.test_trials, cfg.bins, seed, cfg.threads);
  const SerReport ser = estimate_user_ser(sp, cfg.ser_trials, seed, cfg.threads);

  MetricsRecord rec;
  rec.scheme = precoder_name(scheme);
  rec.order = cfg.order;
  rec.n = cfg.n;
  rec.k = cfg.k;
  rec.rho = rho;
  rec.gamma0_db = cfg.gamma0_db;
  rec.gamma_e_db = gamma_e_db;
  rec.p0_db = p0_db;
  rec.avg_power_db = 10.0 * std::log10(det.mean_power);
  rec.p_det_eve = det.p_correct;
  rec.ser_user1 = ser.per_user[0];
  rec.ser_avg = ser.average;
  const long attempted = cfg.test_trials + cfg.ser_trials;
  rec.infeasible_rate =
      static_cast<double>(det.infeasible + ser.infeasible) / attempted;
  rec.trials = det.test_count + ser.trials;
  rec.seed = seed;
  if (rec.infeasible_rate > 0.01)
    std::fprintf(stderr,
                 "warning: %s at gamma_e=%g dB: infeasible rate %.3f\n",
                 rec.scheme.c_str(), gamma_e_db, rec.infeasible_rate);
  return rec;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (n < 1 || k < 1) throw std::invalid_argument("config: N and K must be >= 1");
  if (order < 2) throw std::invalid_argument("config: M must be >= 2");
  if (rho < 0.0 || rho > 1.0)
    throw std::invalid_argument("config: rho outside [0,1]");
  if (gamma_e_db_list.empty() || p0_db_list.empty())
    throw std::invalid_argument("config: sweep lists must be non-empty");
  if (schemes.empty()) throw std::invalid_argument("config: no schemes");
  if (bins < order || bins % order != 0)
    throw std::invalid_argument("config: bins must be a multiple of M");
  if (train_trials < 1 || test_trials < 1 || ser_trials < 1)
    throw std::invalid_argument("config: trial counts must be >= 1");
  if (!beta.empty() && static_cast<int>(beta.size()) != k)
    throw std::invalid_argument("config: beta list must have K entries");
  for (PrecoderKind s : schemes) {
    if (s == PrecoderKind::Zf && n < k + 1)
      throw std::invalid_argument("config: ZF requires N >= K+1");
    if (s == PrecoderKind::AnNoCsi && n <= k)
      throw std::invalid_argument("config: AnNoCsi requires N > K");
  }
  for (double r : rho_list)
    if (r < 0.0 || r > 1.0)
      throw std::invalid_argument("config: rho_list entry outside [0,1]");
}

ScenarioParams scenario_from_config(const ExperimentConfig& cfg,
                                    PrecoderKind scheme, double gamma_e_db,
                                    double p0_db) {
  ScenarioParams sp;
  sp.n = cfg.n;
  sp.k = cfg.k;
  sp.order = cfg.order;
  sp.rho = cfg.rho;
  if (!cfg.beta.empty())
    sp.beta = Eigen::Map<const RVec>(cfg.beta.data(),
                                     static_cast<Eigen::Index>(cfg.beta.size()));
  sp.beta_e = cfg.beta_e;
  sp.gamma0_db = cfg.gamma0_db;
  sp.gamma_e_db = gamma_e_db;
  sp.p0_db = p0_db;
  sp.scheme = scheme;
  return sp;
}

MetricsRecord run_point(const ExperimentConfig& cfg, PrecoderKind scheme,
                        double gamma_e_db, double p0_db) {
  cfg.validate();
  return run_point_with_rho(cfg, scheme, gamma_e_db, p0_db, cfg.rho);
}

std::vector<MetricsRecord> run_sweep_gamma_e(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<MetricsRecord> records;
  for (PrecoderKind scheme : cfg.schemes)
    for (double ge : cfg.gamma_e_db_list)
      records.push_back(run_point_with_rho(cfg, scheme, ge,
                                           cfg.p0_db_list.front(), cfg.rho));
  return records;
}

std::vector<MetricsRecord> run_sweep_rho(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<double> rhos =
      cfg.rho_list.empty() ? std::vector<double>{cfg.rho} : cfg.rho_list;
  std::vector<MetricsRecord> records;
  for (double p0 : cfg.p0_db_list)
    for (double r : rhos)
      records.push_back(run_point_with_rho(cfg, PrecoderKind::AnNoCsi,
                                           cfg.gamma_e_db_list.front(), p0, r));
  return records;
}

std::string format_csv(const std::vector<MetricsRecord>& records) {
  std::string out =
      "scheme,M,N,K,rho,gamma0_db,gamma_e_db,p0_db,avg_power_db,p_det_eve,"
      "ser_user1,ser_avg,infeasible_rate,trials,seed\n";
  for (const MetricsRecord& r : records) {
    out += r.scheme;
    out += ',' + std::to_string(r.order) + ',' + std::to_string(r.n) + ',' +
           std::to_string(r.k);
    for (double v : {r.rho, r.gamma0_db, r.gamma_e_db, r.p0_db, r.avg_power_db,
                     r.p_det_eve, r.ser_user1, r.ser_avg, r.infeasible_rate})
      out += ',' + fmt(v);
    out += ',' + std::to_string(r.trials) + ',' + std::to_string(r.seed) + '\n';
  }
  return out;
}

void emit_csv(const std::vector<MetricsRecord>& records,
              const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
  out << format_csv(records);
  if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

std::vector<MetricsRecord> parse_csv(const std::string& text) {
  std::vector<MetricsRecord> records;
  std::stringstream ss(text);
  std::string line;
  bool first = true;
  while (std::getline(ss, line)) {
    if (first) {
      first = false;
      continue;
    }
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 15) throw std::runtime_error("parse_csv: bad row");
    MetricsRecord r;
    r.scheme = cells[0];
    precoder_from_name(r.scheme);  // reject unknown schemes
    r.order = std::stoi(cells[1]);
    r.n = std::stoi(cells[2]);
    r.k = std::stoi(cells[3]);
    r.rho = std::stod(cells[4]);
    r.gamma0_db = std::stod(cells[5]);
    r.gamma_e_db = std::stod(cells[6]);
    r.p0_db = std::stod(cells[7]);
    r.avg_power_db = std::stod(cells[8]);
    r.p_det_eve = std::stod(cells[9]);
    r.ser_user1 = std::stod(cells[10]);
    r.ser_avg = std::stod(cells[11]);
    r.infeasible_rate = std::stod(cells[12]);
    r.trials = std::stol(cells[13]);
    r.seed = std::stoull(cells[14]);
    records.push_back(std::move(r));
  }
  return records;
}

void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value) {
  if (key == "n") cfg.n = std::stoi(value);
  else if (key == "k") cfg.k = std::stoi(value);
  else if (key == "m") cfg.order = std::stoi(value);
  else if (key == "rho") cfg.rho = std::stod(value);
  else if (key == "beta") cfg.beta = parse_double_list(value);
  else if (key == "beta_e") cfg.beta_e = std::stod(value);
  else if (key == "gamma0_db") cfg.gamma0_db = std::stod(value);
  else if (key == "gamma_e_db") cfg.gamma_e_db_list = parse_double_list(value);
  else if (key == "p0_db") cfg.p0_db_list = parse_double_list(value);
  else if (key == "rho_list") cfg.rho_list = parse_double_list(value);
  else if (key == "schemes") {
    cfg.schemes.clear();
    for (const auto& tok : split(value, ','))
      cfg.schemes.push_back(precoder_from_name(trim(tok)));
  } else if (key == "train_trials") cfg.train_trials = std::stol(value);
  else if (key == "test_trials") cfg.test_trials = std::stol(value);
  else if (key == "ser_trials") cfg.ser_trials = std::stol(value);
  else if (key == "bins") cfg.bins = std::stoi(value);
  else if (key == "seed") cfg.master_seed = std::stoull(value);
  else if (key == "threads") cfg.threads = std::stoi(value);
  else if (key == "out") cfg.output_path = value;
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value, got '" + line + "'");
    apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace secprec
