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

#include "agots/experiments.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <initializer_list>
#include <limits>
#include <mutex>
#include <thread>

#include "agots/stats.h"

namespace agots {

namespace {

// Purpose tags for derive_seed paths.
enum SeedTag : std::uint64_t {
  kTagGame = 1,
  kTagGameSecret = 2,
  kTagGameNoise = 3,
  kTagRecipient = 4,
  kTagRecipientSecret = 5,
  kTagRecipientNoise = 6,
  kTagReferencePlaintext = 7,
  kTagMomentSecret = 8,
  kTagMomentNoise = 9,
  kTagPhiSecret = 10,
};

Plaintext sparse_plaintext_or_zero(std::size_t n, std::size_t k, double energy,
                                   CounterRng& rng) {
  if (energy == 0.0) {
    // Keep the draw sequence aligned with the nonzero case.
    (void)random_sparse_plaintext(n, k, 1.0, rng);
    return Plaintext{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n)), k};
  }
  return random_sparse_plaintext(n, k, energy, rng);
}

double inverse_sqrt_mn(std::size_t m, std::size_t n) {
  return 1.0 / std::sqrt(static_cast<double>(m) * static_cast<double>(n));
}

double game_noise_variance(const ExperimentConfig& cfg) {
  return noise_variance_for_pnr(kMaxEnergy, cfg.m, cfg.pnr_max());
}

SecretMatrixSource block_source(const ExperimentConfig& cfg,
                                std::initializer_list<std::uint64_t> path) {
  KeystreamOptions options;
  options.rekey_per_encryption = cfg.rekey_per_encryption;
  return SecretMatrixSource::make(cfg.s_mode, derive_seed(cfg.master_seed, path),
                                  options);
}

std::size_t block_count(std::size_t items) {
  return (items + kBlockSize - 1) / kBlockSize;
}

// Positions `source` at trial `trial_index` of its block.
void skip_to_trial(SecretMatrixSource& source, const ExperimentConfig& cfg,
                   std::uint64_t trial_index) {
  for (std::uint64_t i = 0; i < trial_index % kBlockSize; ++i) {
    (void)source.next(cfg.m, cfg.n);
  }
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

double closed_form_pd_bound(const ExperimentConfig& cfg) {
  SecurityParams params;
  params.m = cfg.m;
  params.n = cfg.n;
  params.gamma = cfg.gamma;
  params.pnr_max = cfg.pnr_max();
  params.eps = eps_from_preset(cfg.eps, cfg.n);
  return success_probability_bound(tv_bounds_closed_form(params).upper);
}

// Sums of r_i r_i^T over blocks of shared (S, n) draws, with
// r_i = sqrt(MN)^-1 S z_i + n for each transformed plaintext z_i.
std::vector<Eigen::MatrixXd> block_second_moments(
    const ExperimentConfig& cfg, const std::vector<Eigen::VectorXd>& transformed,
    std::size_t n_matrices, std::size_t threads) {
  const std::size_t blocks = block_count(n_matrices);
  const auto m = static_cast<Eigen::Index>(cfg.m);
  const double sigma = std::sqrt(game_noise_variance(cfg));
  const double scale = inverse_sqrt_mn(cfg.m, cfg.n);
  std::vector<std::vector<Eigen::MatrixXd>> partial(blocks);

  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t count = std::min(kBlockSize, n_matrices - b * kBlockSize);
    auto source = block_source(cfg, {kTagMomentSecret, b});
    CounterRng noise(derive_seed(cfg.master_seed, {kTagMomentNoise, b}));
    const auto cols = static_cast<Eigen::Index>(count);
    std::vector<Eigen::MatrixXd> batch(transformed.size(),
                                       Eigen::MatrixXd(m, cols));
    for (Eigen::Index j = 0; j < cols; ++j) {
      const SecretMatrix s = source.next(cfg.m, cfg.n);
      Eigen::VectorXd n_vec(m);
      for (Eigen::Index i = 0; i < m; ++i) n_vec[i] = sigma * noise.gaussian();
      for (std::size_t p = 0; p < transformed.size(); ++p) {
        batch[p].col(j) = scale * s.multiply(transformed[p]) + n_vec;
      }
    }
    auto& out = partial[b];
    out.reserve(transformed.size());
    for (const auto& r : batch) {
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, m);
      acc.selfadjointView<Eigen::Lower>().rankUpdate(r);
      out.push_back(acc.selfadjointView<Eigen::Lower>());
    }
  });

  std::vector<Eigen::MatrixXd> total(transformed.size(),
                                     Eigen::MatrixXd::Zero(m, m));
  for (const auto& block : partial) {
    for (std::size_t p = 0; p < block.size(); ++p) total[p] += block[p];
  }
  return total;
}

}  // namespace

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kGamma:
      return "gamma";
    case SweepAxis::kM:
      return "M";
    case SweepAxis::kPnr:
      return "pnr";
  }
  return "M";
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "gamma") return SweepAxis::kGamma;
  if (name == "M") return SweepAxis::kM;
  if (name == "pnr") return SweepAxis::kPnr;
  throw std::invalid_argument("unknown sweep axis '" + name +
                              "' (expected gamma|M|pnr)");
}

void ExperimentConfig::validate() const {
  if (n < 2) throw ConfigError("N", "must be >= 2");
  if (m < 1) throw ConfigError("M", "must be >= 1");
  if (k < 1 || k >= n) throw ConfigError("K", "must satisfy 1 <= K < N");
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ConfigError("gamma", "must lie in [0, 1]");
  }
  if (std::isnan(pnr_max_db) || pnr_max_db == -kInfinity) {
    throw ConfigError("pnr_max_db", "must be a finite number or inf");
  }
  if (trials < 1) throw ConfigError("trials", "must be >= 1");
  try {
    eps_from_preset(eps, n);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("eps", e.what());
  }
  if (!grid.empty()) {
    if (!strictly_increasing(grid)) {
      throw ConfigError("grid", "must be strictly increasing");
    }
    for (double v : grid) {
      switch (sweep_axis) {
        case SweepAxis::kGamma:
          if (!(v >= 0.0 && v <= 1.0)) {
            throw ConfigError("grid", "gamma values must lie in [0, 1]");
          }
          break;
        case SweepAxis::kM:
          if (!(v >= 1.0) || v != std::floor(v)) {
            throw ConfigError("grid", "M values must be positive integers");
          }
          break;
        case SweepAxis::kPnr:
          if (std::isnan(v) || v == -kInfinity) {
            throw ConfigError("grid", "PNR values must be dB numbers or inf");
          }
          break;
      }
    }
  }
  if (cov_matrices < 2) throw ConfigError("cov_matrices", "must be >= 2");
  if (qq_matrices < 1) throw ConfigError("qq_matrices", "must be >= 1");
  if (tv_matrices < kMinTvMatrices) {
    throw ConfigError("tv_matrices", "must be >= 1000");
  }
  if (cosamp.max_iter < 1) throw ConfigError("max_iter", "must be >= 1");
  if (!(cosamp.tol >= 0.0)) throw ConfigError("tol", "must be >= 0");
}

ExperimentConfig ExperimentConfig::at(double value) const {
  ExperimentConfig out = *this;
  switch (sweep_axis) {
    case SweepAxis::kGamma:
      out.gamma = value;
      break;
    case SweepAxis::kM:
      out.m = static_cast<std::size_t>(value);
      break;
    case SweepAxis::kPnr:
      out.pnr_max_db = value;
      break;
  }
  return out;
}

std::vector<double> ExperimentConfig::axis_values() const {
  if (!grid.empty()) return grid;
  switch (sweep_axis) {
    case SweepAxis::kGamma:
      return {gamma};
    case SweepAxis::kM:
      return {static_cast<double>(m)};
    case SweepAxis::kPnr:
      return {pnr_max_db};
  }
  return {};
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

double energy_threshold(std::size_t m, double v1, double v2) {
  const double lo = std::min(v1, v2);
  const double hi = std::max(v1, v2);
  return static_cast<double>(m) * std::log(hi / lo) / (1.0 / lo - 1.0 / hi);
}

int energy_detector(const Eigen::VectorXd& r, double v1, double v2,
                    CounterRng& coin) {
  if (!(v1 > 0.0) || !(v2 > 0.0)) {
    throw std::invalid_argument("energy_detector: variances must be positive");
  }
  if (v1 == v2) return coin.coin() ? 2 : 1;
  const double energy = r.squaredNorm();
  const double tau = energy_threshold(static_cast<std::size_t>(r.size()), v1, v2);
  const int larger = v2 > v1 ? 2 : 1;
  return energy >= tau ? larger : 3 - larger;
}

Eigen::VectorXd transform_sparse(const UnitaryMatrix& u,
                                 const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != u.dimension()) {
    throw std::invalid_argument("transform_sparse: dimension mismatch");
  }
  Eigen::VectorXd z = Eigen::VectorXd::Zero(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0) z += x[j] * u.entries().col(j);
  }
  return z;
}

namespace {

TrialOutcome trial_with_source(const ExperimentConfig& cfg,
                               const UnitaryMatrix& u, std::uint64_t grid_index,
                               std::uint64_t trial_index, bool decrypt,
                               SecretMatrixSource& source) {
  CounterRng rng(derive_seed(cfg.master_seed, {kTagGame, grid_index, trial_index}));
  const Plaintext x1 =
      sparse_plaintext_or_zero(cfg.n, cfg.k, cfg.gamma * kMaxEnergy, rng);
  const Plaintext x2 = random_sparse_plaintext(cfg.n, cfg.k, kMaxEnergy, rng);

  TrialOutcome out;
  out.h = rng.coin() ? 2 : 1;
  const Plaintext& xh = out.h == 1 ? x1 : x2;

  const SecretMatrix s = source.next(cfg.m, cfg.n);
  const double sigma2 = game_noise_variance(cfg);
  const Ciphertext y{inverse_sqrt_mn(cfg.m, cfg.n) *
                     s.multiply(transform_sparse(u, xh.values))};
  const NoisyCiphertext r = channel(
      y, sigma2,
      derive_seed(cfg.master_seed, {kTagGameNoise, grid_index, trial_index}));

  const double md = static_cast<double>(cfg.m);
  const double v1 = x1.energy() / md + sigma2;
  const double v2 = x2.energy() / md + sigma2;
  if (v1 == 0.0) {
    // Noiseless and x1 = 0: r = 0 exactly identifies h = 1.
    out.h_prime = r.values.squaredNorm() == 0.0 ? 1 : 2;
  } else {
    out.h_prime = energy_detector(r.values, v1, v2, rng);
  }

  if (decrypt) {
    const SensingMatrix phi = build_phi(s, u);
    RecoveryReport report = cosamp(phi, r, cfg.k, cfg.cosamp);
    assess_recovery(report, xh);
    if (report.relative_error) {
      out.recipient_success = report.success;
      out.recipient_error = *report.relative_error;
    }
  }
  return out;
}

RecipientOutcome recipient_with_source(const ExperimentConfig& cfg,
                                       const UnitaryMatrix& u,
                                       std::uint64_t grid_index,
                                       std::uint64_t trial_index,
                                       SecretMatrixSource& source) {
  CounterRng rng(
      derive_seed(cfg.master_seed, {kTagRecipient, grid_index, trial_index}));
  const double alpha = cfg.gamma + (1.0 - cfg.gamma) * rng.uniform();
  const Plaintext x =
      sparse_plaintext_or_zero(cfg.n, cfg.k, alpha * kMaxEnergy, rng);
  const SensingMatrix phi = build_phi(source.next(cfg.m, cfg.n), u);
  const NoisyCiphertext r = channel(
      encrypt(phi, x), game_noise_variance(cfg),
      derive_seed(cfg.master_seed, {kTagRecipientNoise, grid_index, trial_index}));
  RecoveryReport report = cosamp(phi, r, cfg.k, cfg.cosamp);
  assess_recovery(report, x);
  RecipientOutcome out;
  out.success = report.success;
  out.relative_error = report.relative_error.value_or(
      std::numeric_limits<double>::quiet_NaN());
  return out;
}

// Runs body(trial, source) for every trial, one keystream per block.
template <typename Body>
void for_each_trial(const ExperimentConfig& cfg, std::size_t trials,
                    std::uint64_t secret_tag, std::uint64_t grid_index,
                    std::size_t threads, Body&& body) {
  parallel_for(block_count(trials), threads, [&](std::size_t b) {
    auto source = block_source(cfg, {secret_tag, grid_index, b});
    const std::size_t end = std::min(trials, (b + 1) * kBlockSize);
    for (std::size_t t = b * kBlockSize; t < end; ++t) body(t, source);
  });
}

}  // namespace

TrialOutcome indistinguishability_trial(const ExperimentConfig& cfg,
                                        const UnitaryMatrix& u,
                                        std::uint64_t grid_index,
                                        std::uint64_t trial_index,
                                        bool decrypt) {
  auto source = block_source(
      cfg, {kTagGameSecret, grid_index, trial_index / kBlockSize});
  skip_to_trial(source, cfg, trial_index);
  return trial_with_source(cfg, u, grid_index, trial_index, decrypt, source);
}

RecipientOutcome recipient_trial(const ExperimentConfig& cfg,
                                 const UnitaryMatrix& u,
                                 std::uint64_t grid_index,
                                 std::uint64_t trial_index) {
  auto source = block_source(
      cfg, {kTagRecipientSecret, grid_index, trial_index / kBlockSize});
  skip_to_trial(source, cfg, trial_index);
  return recipient_with_source(cfg, u, grid_index, trial_index, source);
}

Plaintext reference_plaintext(const ExperimentConfig& cfg) {
  CounterRng rng(derive_seed(cfg.master_seed, {kTagReferencePlaintext}));
  return random_sparse_plaintext(cfg.n, cfg.k, kMaxEnergy, rng);
}

Eigen::MatrixXd empirical_covariance(const ExperimentConfig& cfg,
                                     const UnitaryMatrix& u,
                                     const Plaintext& x,
                                     std::size_t n_matrices,
                                     std::size_t threads) {
  if (n_matrices < 2) {
    throw std::invalid_argument("empirical_covariance: need >= 2 matrices");
  }
  const auto sums = block_second_moments(
      cfg, {transform_sparse(u, x.values)}, n_matrices, threads);
  return (static_cast<double>(cfg.m) / static_cast<double>(n_matrices)) *
         sums.front();
}

PairedCovariances paired_covariances(const ExperimentConfig& cfg,
                                     const UnitaryMatrix& u,
                                     const Plaintext& x1, const Plaintext& x2,
                                     std::size_t n_matrices,
                                     std::size_t threads) {
  const auto sums = block_second_moments(
      cfg, {transform_sparse(u, x1.values), transform_sparse(u, x2.values)},
      n_matrices, threads);
  const double inv_n = 1.0 / static_cast<double>(n_matrices);
  return {inv_n * sums[0], inv_n * sums[1]};
}

TvBounds empirical_tv_bounds(const ExperimentConfig& cfg,
                             const UnitaryMatrix& u, const Plaintext& x1,
                             const Plaintext& x2, std::size_t n_matrices,
                             std::size_t threads) {
  if (n_matrices < kMinTvMatrices) {
    throw std::invalid_argument("empirical_tv_bounds: need >= 1000 matrices");
  }
  const auto c = paired_covariances(cfg, u, x1, x2, n_matrices, threads);
  return tv_sandwich(hellinger_gaussian(c.c1, c.c2));
}

std::vector<TvCurvePoint> empirical_tv_curve(const ExperimentConfig& cfg,
                                             const UnitaryMatrix& u,
                                             const Plaintext& x,
                                             const std::vector<double>& gammas,
                                             std::size_t n_matrices,
                                             std::size_t threads) {
  if (n_matrices < kMinTvMatrices) {
    throw std::invalid_argument("empirical_tv_curve: need >= 1000 matrices");
  }
  // With r(g) = sqrt(g) u + n:  sum r r^T = g A + sqrt(g) B + C, where
  // A = sum u u^T, C = sum n n^T and B = sum (u n^T + n u^T). The three
  // sums come from second moments of u + n, u - n and n.
  const Eigen::VectorXd z = transform_sparse(u, x.values);
  const std::size_t blocks = block_count(n_matrices);
  const auto m = static_cast<Eigen::Index>(cfg.m);
  const double sigma = std::sqrt(game_noise_variance(cfg));
  const double scale = inverse_sqrt_mn(cfg.m, cfg.n);
  struct Sums {
    Eigen::MatrixXd a, b, c;
  };
  std::vector<Sums> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t blk) {
    const std::size_t count = std::min(kBlockSize, n_matrices - blk * kBlockSize);
    auto source = block_source(cfg, {kTagMomentSecret, blk});
    CounterRng noise(derive_seed(cfg.master_seed, {kTagMomentNoise, blk}));
    const auto cols = static_cast<Eigen::Index>(count);
    Eigen::MatrixXd us(m, cols);
    Eigen::MatrixXd ns(m, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      const SecretMatrix s = source.next(cfg.m, cfg.n);
      for (Eigen::Index i = 0; i < m; ++i) ns(i, j) = sigma * noise.gaussian();
      us.col(j) = scale * s.multiply(z);
    }
    Sums& out = partial[blk];
    out.a.noalias() = us * us.transpose();
    out.c.noalias() = ns * ns.transpose();
    Eigen::MatrixXd cross = us * ns.transpose();
    out.b = cross + cross.transpose();
  });
  Sums total{Eigen::MatrixXd::Zero(m, m), Eigen::MatrixXd::Zero(m, m),
             Eigen::MatrixXd::Zero(m, m)};
  for (const auto& p : partial) {
    total.a += p.a;
    total.b += p.b;
    total.c += p.c;
  }
  const double inv_n = 1.0 / static_cast<double>(n_matrices);
  const Eigen::MatrixXd c2 = inv_n * (total.a + total.b + total.c);

  std::vector<TvCurvePoint> curve;
  curve.reserve(gammas.size());
  for (double g : gammas) {
    TvCurvePoint point;
    point.gamma = g;
    SecurityParams params;
    params.m = cfg.m;
    params.n = cfg.n;
    params.gamma = g;
    params.pnr_max = cfg.pnr_max();
    params.eps = eps_from_preset(cfg.eps, cfg.n);
    point.closed_form = tv_bounds_closed_form(params);
    const Eigen::MatrixXd c1 =
        inv_n * (g * total.a + std::sqrt(g) * total.b + total.c);
    point.empirical = tv_sandwich(hellinger_gaussian(c1, c2));
    curve.push_back(point);
  }
  return curve;
}

GaussianityReport gaussianity_report(std::vector<double> samples,
                                     double variance) {
  if (samples.size() < 100) {
    throw std::invalid_argument("gaussianity_report: need >= 100 samples, got " +
                                std::to_string(samples.size()));
  }
  GaussianityReport report;
  report.ks_statistic = ks_statistic_normal(samples, variance);
  report.ks_critical_01 = ks_critical_value(samples.size(), 0.01);
  const double scale = 1.0 / std::sqrt(variance);
  report.qq_points.reserve(199);
  for (int i = 1; i <= 199; ++i) {
    const double p = static_cast<double>(i) / 200.0;
    report.qq_points.push_back(
        {normal_quantile(p), scale * sample_quantile(samples, p)});
  }
  return report;
}

std::vector<double> phi_entry_samples(const ExperimentConfig& cfg,
                                      const UnitaryMatrix& u,
                                      std::size_t n_matrices,
                                      std::size_t threads) {
  const std::size_t per = cfg.m * cfg.n;
  std::vector<double> samples(per * n_matrices);
  const std::size_t blocks = block_count(n_matrices);
  parallel_for(blocks, threads, [&](std::size_t b) {
    auto source = block_source(cfg, {kTagPhiSecret, b});
    const std::size_t first = b * kBlockSize;
    const std::size_t count = std::min(kBlockSize, n_matrices - first);
    for (std::size_t j = 0; j < count; ++j) {
      const auto entries = row_gaussianity_samples(
          build_phi(source.next(cfg.m, cfg.n), u));
      std::copy(entries.begin(), entries.end(),
                samples.begin() + static_cast<std::ptrdiff_t>((first + j) * per));
    }
  });
  return samples;
}

GameSummary run_game(const ExperimentConfig& cfg, bool decrypt,
                     std::size_t threads) {
  cfg.validate();
  const UnitaryMatrix u = dct_unitary(cfg.n);
  GameSummary summary;
  summary.outcomes.resize(cfg.trials);
  for_each_trial(cfg, cfg.trials, kTagGameSecret, 0, threads,
                 [&](std::size_t t, SecretMatrixSource& source) {
                   summary.outcomes[t] =
                       trial_with_source(cfg, u, 0, t, decrypt, source);
                 });
  std::size_t wins = 0;
  std::size_t recovered = 0;
  std::size_t assessed = 0;
  for (const auto& o : summary.outcomes) {
    if (o.h == o.h_prime) ++wins;
    if (o.recipient_success) {
      ++assessed;
      if (*o.recipient_success) ++recovered;
    }
  }
  summary.adv_success =
      static_cast<double>(wins) / static_cast<double>(cfg.trials);
  summary.adv_ci = binomial_half_width(summary.adv_success, cfg.trials);
  summary.pd_bound = closed_form_pd_bound(cfg);
  if (assessed > 0) {
    summary.recip_success =
        static_cast<double>(recovered) / static_cast<double>(assessed);
    summary.recip_ci = binomial_half_width(summary.recip_success, assessed);
  } else {
    summary.recip_success = std::numeric_limits<double>::quiet_NaN();
    summary.recip_ci = std::numeric_limits<double>::quiet_NaN();
  }
  return summary;
}

ExperimentResult sweep(const ExperimentConfig& cfg, std::size_t threads) {
  cfg.validate();
  const UnitaryMatrix u = dct_unitary(cfg.n);
  const auto values = cfg.axis_values();
  ExperimentResult result;
  result.axis = cfg.sweep_axis;
  for (std::size_t g = 0; g < values.size(); ++g) {
    const ExperimentConfig point = cfg.at(values[g]);
    SweepRecord rec;
    rec.axis_value = values[g];

    std::vector<std::uint8_t> wins(point.trials, 0);
    for_each_trial(point, point.trials, kTagGameSecret, g, threads,
                   [&](std::size_t t, SecretMatrixSource& source) {
                     const auto o =
                         trial_with_source(point, u, g, t, false, source);
                     wins[t] = o.h == o.h_prime ? 1 : 0;
                   });
    const auto won = std::count(wins.begin(), wins.end(), std::uint8_t{1});
    rec.adv_success = static_cast<double>(won) / static_cast<double>(point.trials);
    rec.adv_ci = binomial_half_width(rec.adv_success, point.trials);
    rec.pd_bound = closed_form_pd_bound(point);

    const std::size_t recipients = point.recipient_trial_count();
    if (recipients > 0) {
      std::vector<std::uint8_t> ok(recipients, 0);
      for_each_trial(point, recipients, kTagRecipientSecret, g, threads,
                     [&](std::size_t t, SecretMatrixSource& source) {
                       ok[t] = recipient_with_source(point, u, g, t, source)
                                       .success
                                   ? 1
                                   : 0;
                     });
      const auto good = std::count(ok.begin(), ok.end(), std::uint8_t{1});
      rec.recip_success = static_cast<double>(good) / static_cast<double>(recipients);
      rec.recip_ci = binomial_half_width(rec.recip_success, recipients);
    } else {
      rec.recip_success = std::numeric_limits<double>::quiet_NaN();
      rec.recip_ci = std::numeric_limits<double>::quiet_NaN();
    }
    result.records.push_back(rec);
  }
  return result;
}

}  // namespace agots
