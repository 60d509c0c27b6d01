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

// Closed-form security analysis for one-time sensing with a +-1 keystream.
//
// Conditioned on a plaintext of energy E the ciphertext is zero-mean with
// covariance (E / M + sigma^2) I. Distances between two such Gaussians
// reduce to functions of the variance ratio, which is what every routine
// below evaluates. Quantities of the form 1 - (ratio near 1)^(M/4) are
// computed through log1p/expm1 so they stay accurate for large M and for
// energy ratios close to one.

#ifndef AGOTS_ANALYSIS_H_
#define AGOTS_ANALYSIS_H_

#include <cstddef>
#include <limits>
#include <string_view>

namespace agots {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Covariance v I of the ciphertext given the plaintext energy.
struct ScaledIdentityCovariance {
  std::size_t dimension = 0;
  double variance = 0.0;
};

struct TvBounds {
  double lower = 0.0;
  double upper = 0.0;
};

struct SecurityParams {
  std::size_t m = 0;
  std::size_t n = 0;
  // Minimum energy ratio ||x_min||^2 / ||x_max||^2 in [0, 1].
  double gamma = 1.0;
  // Maximum plaintext-to-noise ratio (linear), may be +inf.
  double pnr_max = kInfinity;
  // Distinguishing-advantage budget in (0, 0.5).
  double eps = 0.01;

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

// v = energy / M + sigma^2. Throws std::domain_error when v == 0.
ScaledIdentityCovariance lemma1_covariance(double energy, std::size_t m,
                                           double sigma2);

// Hellinger distance between N(0, v1 I) and N(0, v2 I).
double hellinger_scaled_identity(const ScaledIdentityCovariance& c1,
                                 const ScaledIdentityCovariance& c2);

// d_H^2 <= d_TV <= d_H sqrt(2 - d_H^2).
TvBounds tv_sandwich(double hellinger);

// gamma_e = gamma + (1 - gamma) / (1 + PNR_max).
double effective_energy_ratio(double gamma, double pnr_max);

// Worst-case bounds on the TV distance between the two ciphertext laws.
TvBounds tv_bounds_closed_form(const SecurityParams& params);

// Upper bound 1/2 + d_TV / 2 on any distinguisher's success probability.
double success_probability_bound(double tv_upper);

struct GammaMin {
  double gamma_e_min = 1.0;
  double gamma_min = 1.0;
  // gamma_min fell outside [0, 1] and was clamped.
  bool clamped = false;
};
GammaMin theorem3_gamma_min(std::size_t m, double pnr_max, double eps);

// Largest ciphertext length with p_d <= 1/2 + eps. +inf when gamma_e == 1.
double theorem4_m_max(double gamma, double pnr_max, double eps);

// Largest PNR_max with p_d <= 1/2 + eps. +inf when gamma >= gamma_e_min.
double theorem5_pnr_max(double gamma, double gamma_e_min);

struct CompressionRatios {
  double rho_min = 0.0;
  double rho_max = 0.0;
  // rho_max < rho_min: reliability and indistinguishability are
  // incompatible at this N.
  bool no_achievable_region = false;
};
// rho_min = 2 K ln(N / K) / N, rho_max = m_max / N.
CompressionRatios compression_ratios(std::size_t n, std::size_t k,
                                     double m_max);

// Advantage-budget schedules in N: "1/logN", "1/sqrtN", "logN/N", "1/N",
// or "literal:<value>". Throws std::invalid_argument otherwise.
double eps_from_preset(std::string_view preset, std::size_t n);
bool eps_preset_needs_n(std::string_view preset);

double db_to_linear(double db);

}  // namespace agots

#endif  // AGOTS_ANALYSIS_H_
