// Copyright 2026 The agots Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "agots/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "agots/analysis.h"
#include "agots/codec.h"
#include "agots/config.h"
#include "agots/experiments.h"
#include "agots/keystream.h"
#include "agots/manifest.h"
#include "agots/rng.h"
#include "agots/sensing.h"

#ifndef AGOTS_VERSION
#define AGOTS_VERSION "unknown"
#endif

namespace agots {

namespace {

namespace fs = std::filesystem;

// Bad input that is the caller's fault: exit 1 with usage text.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

constexpr std::uint64_t kCliNoiseTag = 3;

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_db(const std::string& text, const std::string& flag) {
  if (text == "inf") return kInfinity;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw UsageError(flag + ": expected a dB number or inf, got '" + text + "'");
  }
  return v;
}

std::size_t resolve_threads(std::size_t flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("AGOTS_THREADS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
      throw UsageError("AGOTS_THREADS must be a positive integer, got '" +
                       std::string(env) + "'");
    }
    return static_cast<std::size_t>(v);
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line.erase(std::remove_if(line.begin(), line.end(),
                              [](unsigned char c) { return std::isspace(c); }),
               line.end());
    if (line.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(line, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != line.size()) {
      if (line_no == 1) continue;  // header
      throw UsageError(path + ":" + std::to_string(line_no) +
                       ": not a number: '" + line + "'");
    }
    values.push_back(v);
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(),
                                     static_cast<Eigen::Index>(values.size()));
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v,
                      std::ostream& fallback) {
  std::ostringstream text;
  for (Eigen::Index i = 0; i < v.size(); ++i) text << fmt17(v[i]) << '\n';
  if (path.empty() || path == "-") {
    fallback << text.str();
    return;
  }
  std::ofstream out(path);
  out << text.str();
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& header)
      : path_(path), out_(path) {
    if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
    row(header);
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }
  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("cannot write '" + path_.string() + "'");
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

// Shared state of the config-driven subcommands.
struct RunOptions {
  std::string config_path;
  std::string out_dir;
  std::size_t threads = 0;
};

void add_run_options(CLI::App* sub, RunOptions& run) {
  sub->add_option("--config", run.config_path, "Experiment config (JSON)")
      ->required();
  sub->add_option("--out", run.out_dir, "Output directory (created if absent)")
      ->required();
  sub->add_option("--threads", run.threads,
                  "Worker threads; 0 uses AGOTS_THREADS, else all cores");
  sub->footer(config_keys_help());
}

ExperimentConfig load_config(const std::string& path) {
  if (!fs::exists(path)) throw UsageError("config file not found: '" + path + "'");
  try {
    return config_load(path);
  } catch (const ConfigError& e) {
    throw UsageError(std::string("config: ") + e.what());
  }
}

// Runs `body` with the output directory prepared and writes the manifest
// listing the files `body` returns.
void with_manifest(const std::string& subcommand, const RunOptions& run,
                   const std::function<std::vector<std::string>(
                       const ExperimentConfig&, const fs::path&, std::size_t)>& body) {
  const ExperimentConfig cfg = load_config(run.config_path);
  const std::size_t threads = resolve_threads(run.threads);
  const fs::path dir(run.out_dir);
  fs::create_directories(dir);
  RunManifest manifest;
  manifest.version = AGOTS_VERSION;
  manifest.subcommand = subcommand;
  manifest.config_json = config_to_json(cfg);
  manifest.master_seed = cfg.master_seed;
  manifest.started_at = utc_timestamp();
  manifest.outputs = body(cfg, dir, threads);
  manifest.finished_at = utc_timestamp();
  manifest.write(dir);
}

// ---- keystream ------------------------------------------------------------

struct KeystreamArgs {
  std::size_t degree = 128;
  std::string poly;
  std::string seed = "1";
  std::size_t count = 64;
  std::string mode = "bipolar";
  bool hex = false;
};

void run_keystream(const KeystreamArgs& a, std::ostream& out) {
  LfsrConfig config;
  config.degree = a.degree;
  try {
    if (a.poly.empty()) {
      config.feedback_taps = primitive_polynomial(a.degree).taps;
      config.claims_m_sequence = a.degree <= LfsrConfig::kMaxVerifiedDegree;
    } else {
      config.feedback_taps = taps_from_mask(a.poly, a.degree);
    }
    config.initial_state = parse_hex_bits(a.seed, a.degree);
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  std::vector<std::uint8_t> bits;
  if (a.mode == "raw") {
    bits = lfsr_stream(config, a.count).bits;
  } else {
    bits.resize(a.count);
    SelfShrinkingGenerator ssg(config);
    ssg.next_bits(bits, std::max<std::uint64_t>(64, 64ULL * a.count));
  }

  if (a.hex) {
    // Stream order, four bits per digit, first bit in the high position.
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string text;
    for (std::size_t i = 0; i < bits.size(); i += 4) {
      unsigned nibble = 0;
      for (std::size_t j = 0; j < 4; ++j) {
        nibble <<= 1;
        if (i + j < bits.size()) nibble |= bits[i + j];
      }
      text.push_back(kDigits[nibble]);
    }
    out << text << '\n';
    return;
  }
  std::string text;
  for (std::uint8_t b : bits) {
    if (a.mode == "bipolar") {
      text += b ? "-1\n" : "1\n";
    } else {
      text += b ? "1\n" : "0\n";
    }
  }
  out << text;
}

// ---- phi / encrypt / decrypt ----------------------------------------------

struct MatrixArgs {
  std::size_t n = 512;
  std::size_t m = 64;
  std::string mode = "ssg";
  std::uint64_t seed = 1;
  std::size_t index = 0;
};

void add_matrix_options(CLI::App* sub, MatrixArgs& a) {
  sub->add_option("--N", a.n, "Signal length N")->check(CLI::PositiveNumber);
  sub->add_option("--M", a.m, "Measurements M")->check(CLI::PositiveNumber);
  sub->add_option("--mode", a.mode, "Secret matrix source")
      ->check(CLI::IsMember({"ssg", "bernoulli"}));
  sub->add_option("--seed", a.seed, "Secret key (64-bit)");
  sub->add_option("--index", a.index,
                  "Encryption index: matrices consumed from the keystream "
                  "before this one");
}

SensingMatrix sensing_for(const MatrixArgs& a) {
  auto source = SecretMatrixSource::make(secret_mode_from_string(a.mode), a.seed);
  for (std::size_t i = 0; i < a.index; ++i) (void)source.next(a.m, a.n);
  return build_phi(source.next(a.m, a.n), dct_unitary(a.n));
}

void run_phi(const MatrixArgs& a, std::ostream& out) {
  const SensingMatrix phi = sensing_for(a);
  std::string text;
  for (std::size_t i = 0; i < phi.rows(); ++i) {
    for (std::size_t j = 0; j < phi.cols(); ++j) {
      if (j) text.push_back(',');
      text += fmt17(phi.entries()(static_cast<Eigen::Index>(i),
                                  static_cast<Eigen::Index>(j)));
    }
    text.push_back('\n');
  }
  out << text;
}

struct CodecArgs {
  MatrixArgs matrix;
  std::size_t k = 8;
  std::string pnr_db = "inf";
  std::uint64_t noise_seed = 1;
  std::size_t max_iter = CosampOptions{}.max_iter;
  double tol = CosampOptions{}.tol;
  std::string in;
  std::string out;
};

void run_encrypt(const CodecArgs& a, std::ostream& out) {
  const Eigen::VectorXd x = read_vector_csv(a.in);
  if (static_cast<std::size_t>(x.size()) != a.matrix.n) {
    throw UsageError("--in: expected " + std::to_string(a.matrix.n) +
                     " values, got " + std::to_string(x.size()));
  }
  const auto nnz = static_cast<std::size_t>((x.array() != 0.0).count());
  if (nnz > a.k) {
    throw UsageError("--in: plaintext has " + std::to_string(nnz) +
                     " nonzeros, more than K = " + std::to_string(a.k));
  }
  const Plaintext p{x, a.k};
  const SensingMatrix phi = sensing_for(a.matrix);
  const double pnr = db_to_linear(parse_db(a.pnr_db, "--pnr-db"));
  const double sigma2 =
      p.energy() > 0.0 ? noise_variance_for_pnr(p.energy(), a.matrix.m, pnr) : 0.0;
  const NoisyCiphertext r = channel(
      encrypt(phi, p), sigma2, derive_seed(a.noise_seed, {kCliNoiseTag, a.matrix.index}));
  write_vector_csv(a.out, r.values, out);
}

void run_decrypt(const CodecArgs& a, std::ostream& out) {
  const Eigen::VectorXd r = read_vector_csv(a.in);
  if (static_cast<std::size_t>(r.size()) != a.matrix.m) {
    throw UsageError("--in: expected " + std::to_string(a.matrix.m) +
                     " values, got " + std::to_string(r.size()));
  }
  if (a.k < 1 || a.k > a.matrix.n) throw UsageError("--K must lie in [1, N]");
  const SensingMatrix phi = sensing_for(a.matrix);
  CosampOptions options;
  options.max_iter = a.max_iter;
  options.tol = a.tol;
  const RecoveryReport report = cosamp(phi, NoisyCiphertext{r, 0.0}, a.k, options);
  write_vector_csv(a.out, report.estimate, out);
}

// ---- bounds ---------------------------------------------------------------

struct BoundsArgs {
  std::size_t m = 64;
  double gamma = 1.0;
  std::string pnr_db = "20";
  std::string eps = "1/sqrtN";
  std::optional<std::size_t> n;
  std::size_t k = 8;
};

void run_bounds(const BoundsArgs& a, std::ostream& out) {
  if (!a.n && eps_preset_needs_n(a.eps)) {
    throw UsageError("--N is required when --eps is a preset (" + a.eps + ")");
  }
  SecurityParams params;
  params.m = a.m;
  params.n = a.n.value_or(0);
  params.gamma = a.gamma;
  params.pnr_max = db_to_linear(parse_db(a.pnr_db, "--pnr-db"));
  try {
    params.eps = eps_from_preset(a.eps, a.n.value_or(0));
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const TvBounds tv = tv_bounds_closed_form(params);
  const GammaMin gmin = theorem3_gamma_min(params.m, params.pnr_max, params.eps);
  const double m_max = theorem4_m_max(params.gamma, params.pnr_max, params.eps);
  double pnr_bound = nan;
  if (gmin.gamma_e_min > 0.0 && gmin.gamma_e_min < 1.0) {
    pnr_bound = theorem5_pnr_max(params.gamma, gmin.gamma_e_min);
  }
  double rho_min = nan;
  double rho_max = nan;
  if (a.n) {
    if (a.k < 1 || a.k >= *a.n) throw UsageError("--K must satisfy 1 <= K < N");
    const CompressionRatios ratios = compression_ratios(*a.n, a.k, m_max);
    rho_min = ratios.rho_min;
    rho_max = ratios.rho_max;
  }
  out << "gamma_e=" << fmt17(effective_energy_ratio(params.gamma, params.pnr_max))
      << '\n'
      << "d_tv_low=" << fmt17(tv.lower) << '\n'
      << "d_tv_up=" << fmt17(tv.upper) << '\n'
      << "p_d_bound=" << fmt17(success_probability_bound(tv.upper)) << '\n'
      << "gamma_min=" << fmt17(gmin.gamma_min) << '\n'
      << "m_max=" << fmt17(m_max) << '\n'
      << "pnr_max_bound=" << fmt17(pnr_bound) << '\n'
      << "rho_min=" << fmt17(rho_min) << '\n'
      << "rho_max=" << fmt17(rho_max) << '\n';
}

// ---- config-driven subcommands --------------------------------------------

std::vector<std::string> run_experiment(const ExperimentConfig& cfg,
                                        const fs::path& dir,
                                        std::size_t threads) {
  const bool decrypt = cfg.recipient_trial_count() > 0;
  const GameSummary game = run_game(cfg, decrypt, threads);
  CsvWriter trials(dir / "experiment.csv",
                   {"trial", "h", "h_prime", "recipient_success", "relative_error"});
  for (std::size_t t = 0; t < game.outcomes.size(); ++t) {
    const TrialOutcome& o = game.outcomes[t];
    trials.row({std::to_string(t), std::to_string(o.h), std::to_string(o.h_prime),
                o.recipient_success ? std::to_string(*o.recipient_success ? 1 : 0)
                                    : "nan",
                fmt17(o.recipient_error.value_or(
                    std::numeric_limits<double>::quiet_NaN()))});
  }
  trials.close();
  CsvWriter summary(dir / "summary.csv", {"adv_success", "adv_ci", "pd_bound",
                                          "recip_success", "recip_ci"});
  summary.row({fmt17(game.adv_success), fmt17(game.adv_ci), fmt17(game.pd_bound),
               fmt17(game.recip_success), fmt17(game.recip_ci)});
  summary.close();
  return {"experiment.csv", "summary.csv"};
}

std::vector<std::string> run_qq(const ExperimentConfig& cfg, const fs::path& dir,
                                std::size_t threads) {
  const UnitaryMatrix u = dct_unitary(cfg.n);
  const GaussianityReport report =
      gaussianity_report(phi_entry_samples(cfg, u, cfg.qq_matrices, threads));
  CsvWriter qq(dir / "qq.csv", {"theoretical_quantile", "empirical_quantile"});
  for (const QqPoint& p : report.qq_points) {
    qq.row({fmt17(p.theoretical), fmt17(p.empirical)});
  }
  qq.close();
  CsvWriter ks(dir / "ks.csv", {"ks_statistic", "ks_critical_01", "samples"});
  ks.row({fmt17(report.ks_statistic), fmt17(report.ks_critical_01),
          std::to_string(cfg.qq_matrices * cfg.m * cfg.n)});
  ks.close();
  return {"qq.csv", "ks.csv"};
}

std::vector<std::string> run_cov(const ExperimentConfig& cfg, const fs::path& dir,
                                 std::size_t threads) {
  const UnitaryMatrix u = dct_unitary(cfg.n);
  const Plaintext x = reference_plaintext(cfg);
  const Eigen::MatrixXd c = empirical_covariance(cfg, u, x, cfg.cov_matrices, threads);
  std::vector<std::string> header;
  for (std::size_t j = 0; j < cfg.m; ++j) header.push_back("c" + std::to_string(j));
  CsvWriter cov(dir / "cov.csv", header);
  double max_off = 0.0;
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    std::vector<std::string> row;
    for (Eigen::Index j = 0; j < c.cols(); ++j) {
      row.push_back(fmt17(c(i, j)));
      if (i != j) max_off = std::max(max_off, std::abs(c(i, j)));
    }
    cov.row(row);
  }
  cov.close();
  const double md = static_cast<double>(cfg.m);
  const double expected =
      x.energy() + md * noise_variance_for_pnr(kMaxEnergy, cfg.m, cfg.pnr_max());
  CsvWriter summary(dir / "cov_summary.csv",
                    {"diag_mean", "expected_diag", "max_offdiag"});
  summary.row({fmt17(c.diagonal().mean()), fmt17(expected), fmt17(max_off)});
  summary.close();
  return {"cov.csv", "cov_summary.csv"};
}

std::vector<std::string> run_tv(const ExperimentConfig& cfg, const fs::path& dir,
                                std::size_t threads) {
  const UnitaryMatrix u = dct_unitary(cfg.n);
  const std::vector<double> gammas = cfg.sweep_axis == SweepAxis::kGamma
                                         ? cfg.axis_values()
                                         : std::vector<double>{cfg.gamma};
  const auto curve = empirical_tv_curve(cfg, u, reference_plaintext(cfg), gammas,
                                        cfg.tv_matrices, threads);
  CsvWriter tv(dir / "tv.csv", {"gamma", "dtv_low_closed", "dtv_up_closed",
                                "dtv_low_emp", "dtv_up_emp"});
  for (const TvCurvePoint& p : curve) {
    tv.row({fmt17(p.gamma), fmt17(p.closed_form.lower), fmt17(p.closed_form.upper),
            fmt17(p.empirical.lower), fmt17(p.empirical.upper)});
  }
  tv.close();
  return {"tv.csv"};
}

std::vector<std::string> run_sweep(const ExperimentConfig& cfg, const fs::path& dir,
                                   std::size_t threads) {
  const ExperimentResult result = sweep(cfg, threads);
  CsvWriter csv(dir / "sweep.csv", {"axis_value", "adv_success", "adv_ci",
                                    "pd_bound", "recip_success", "recip_ci"});
  for (const SweepRecord& r : result.records) {
    csv.row({fmt17(r.axis_value), fmt17(r.adv_success), fmt17(r.adv_ci),
             fmt17(r.pd_bound), fmt17(r.recip_success), fmt17(r.recip_ci)});
  }
  csv.close();
  return {"sweep.csv"};
}

}  // namespace

const char* tool_version() { return AGOTS_VERSION; }

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {
      "keystream", "phi", "encrypt", "decrypt", "bounds",
      "experiment", "qq", "cov", "tv-empirical", "sweep"};
  return names;
}

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"Compressed-sensing one-time-sensing cryptosystem toolkit", "agots"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", AGOTS_VERSION);

  KeystreamArgs ks;
  auto* keystream = app.add_subcommand("keystream", "Emit LFSR / SSG keystream bits");
  keystream->add_option("--degree", ks.degree, "Register length L")
      ->check(CLI::PositiveNumber);
  keystream->add_option("--poly", ks.poly,
                        "Feedback tap mask in hex, bit i = tap on stage i "
                        "(empty: pinned polynomial for the degree)");
  keystream->add_option("--seed", ks.seed, "Initial state in hex, bit i = stage i");
  keystream->add_option("--count", ks.count, "Number of output symbols");
  keystream->add_option("--mode", ks.mode, "raw LFSR bits, SSG bits or bipolar symbols")
      ->check(CLI::IsMember({"raw", "ssg", "bipolar"}));
  keystream->add_flag("--hex", ks.hex, "Pack bits as hex, first bit highest");

  MatrixArgs phi_args;
  auto* phi = app.add_subcommand("phi", "Emit a sensing matrix as CSV");
  add_matrix_options(phi, phi_args);

  CodecArgs enc_args;
  auto* enc = app.add_subcommand("encrypt", "Encrypt a sparse plaintext");
  add_matrix_options(enc, enc_args.matrix);
  enc->add_option("--K", enc_args.k, "Sparsity bound");
  enc->add_option("--pnr-db", enc_args.pnr_db,
                  "Plaintext-to-noise ratio in dB, or inf for no noise");
  enc->add_option("--noise-seed", enc_args.noise_seed, "Channel noise seed");
  enc->add_option("--in", enc_args.in, "Plaintext, single-column CSV")->required();
  enc->add_option("--out", enc_args.out, "Ciphertext CSV (- for stdout)");

  CodecArgs dec_args;
  auto* dec = app.add_subcommand("decrypt", "Recover a plaintext with CoSaMP");
  add_matrix_options(dec, dec_args.matrix);
  dec->add_option("--K", dec_args.k, "Sparsity");
  dec->add_option("--max-iter", dec_args.max_iter, "CoSaMP iteration cap");
  dec->add_option("--tol", dec_args.tol, "Relative residual stopping tolerance");
  dec->add_option("--in", dec_args.in, "Ciphertext, single-column CSV")->required();
  dec->add_option("--out", dec_args.out, "Plaintext CSV (- for stdout)");

  BoundsArgs b;
  auto* bounds = app.add_subcommand("bounds", "Closed-form security bounds");
  bounds->add_option("--M", b.m, "Measurements M")->check(CLI::PositiveNumber);
  bounds->add_option("--gamma", b.gamma, "Minimum energy ratio")
      ->check(CLI::Range(0.0, 1.0));
  bounds->add_option("--pnr-db", b.pnr_db, "PNR_max in dB, or inf");
  bounds->add_option("--eps", b.eps,
                     "Advantage budget: 1/logN | 1/sqrtN | logN/N | 1/N | "
                     "literal:<value>");
  bounds->add_option("--N", b.n, "Signal length (required for eps presets)");
  bounds->add_option("--K", b.k, "Sparsity, for rho_min");

  RunOptions experiment_run, qq_run, cov_run, tv_run, sweep_run;
  auto* experiment = app.add_subcommand(
      "experiment", "Indistinguishability game with recipient decryption");
  add_run_options(experiment, experiment_run);
  auto* qq = app.add_subcommand("qq", "QQ points and KS statistic of sqrt(M) Phi");
  add_run_options(qq, qq_run);
  auto* cov = app.add_subcommand("cov", "Empirical M E[r r^T | x]");
  add_run_options(cov, cov_run);
  auto* tv = app.add_subcommand("tv-empirical",
                                "Empirical versus closed-form TV bounds");
  add_run_options(tv, tv_run);
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Adversary and recipient success over a parameter grid");
  add_run_options(sweep_cmd, sweep_run);

  auto usage = [&](const std::string& message) {
    err << "error: " << message << '\n' << app.help();
    return kExitUsage;
  };

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << AGOTS_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }

  try {
    if (keystream->parsed()) {
      run_keystream(ks, out);
    } else if (phi->parsed()) {
      run_phi(phi_args, out);
    } else if (enc->parsed()) {
      run_encrypt(enc_args, out);
    } else if (dec->parsed()) {
      run_decrypt(dec_args, out);
    } else if (bounds->parsed()) {
      run_bounds(b, out);
    } else if (experiment->parsed()) {
      with_manifest("experiment", experiment_run, run_experiment);
    } else if (qq->parsed()) {
      with_manifest("qq", qq_run, run_qq);
    } else if (cov->parsed()) {
      with_manifest("cov", cov_run, run_cov);
    } else if (tv->parsed()) {
      with_manifest("tv-empirical", tv_run, run_tv);
    } else if (sweep_cmd->parsed()) {
      with_manifest("sweep", sweep_run, run_sweep);
    }
  } catch (const UsageError& e) {
    return usage(e.what());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace agots
