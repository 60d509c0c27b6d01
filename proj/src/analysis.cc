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

#include "agots/analysis.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace agots {

namespace {

// ln(4 g / (g + 1)^2) = ln(1 - ((1 - g) / (1 + g))^2).
double log_energy_ratio_affinity(double gamma_e) {
  const double q = (1.0 - gamma_e) / (1.0 + gamma_e);
  return std::log1p(-q * q);
}

void check_gamma(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1], got " +
                                std::to_string(gamma));
  }
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw std::invalid_argument("eps must lie in (0, 0.5), got " +
                                std::to_string(eps));
  }
}

void check_pnr(double pnr) {
  if (!(pnr > 0.0)) {
    throw std::invalid_argument("PNR_max must be positive");
  }
}

}  // namespace

void SecurityParams::validate() const {
  if (m == 0) throw std::invalid_argument("M must be >= 1");
  check_gamma(gamma);
  check_pnr(pnr_max);
  check_eps(eps);
}

ScaledIdentityCovariance lemma1_covariance(double energy, std::size_t m,
                                           double sigma2) {
  if (m == 0) throw std::invalid_argument("lemma1_covariance: M must be >= 1");
  if (!(energy >= 0.0) || !(sigma2 >= 0.0)) {
    throw std::invalid_argument(
        "lemma1_covariance: energy and sigma^2 must be >= 0");
  }
  const double v = energy / static_cast<double>(m) + sigma2;
  if (!(v > 0.0)) {
    throw std::domain_error(
        "lemma1_covariance: degenerate (zero) covariance, energy and noise "
        "both zero");
  }
  return {m, v};
}

double hellinger_scaled_identity(const ScaledIdentityCovariance& c1,
                                 const ScaledIdentityCovariance& c2) {
  if (c1.dimension != c2.dimension) {
    throw std::invalid_argument("hellinger: covariance dimensions differ");
  }
  // Gamma = |C1|^(1/4) |C2|^(1/4) / |C3|^(1/2)
  //       = (v1 v2 / c3^2)^(M/4),  with v1 v2 / c3^2 = 1 - delta^2.
  const double delta =
      (c1.variance - c2.variance) / (c1.variance + c2.variance);
  const double log_gamma =
      0.25 * static_cast<double>(c1.dimension) * std::log1p(-delta * delta);
  return std::sqrt(std::max(0.0, -std::expm1(log_gamma)));
}

TvBounds tv_sandwich(double hellinger) {
  if (!(hellinger >= 0.0 && hellinger <= 1.0)) {
    throw std::invalid_argument("tv_sandwich: Hellinger distance outside [0,1]");
  }
  const double h2 = hellinger * hellinger;
  return {h2, hellinger * std::sqrt(2.0 - h2)};
}

double effective_energy_ratio(double gamma, double pnr_max) {
  check_gamma(gamma);
  check_pnr(pnr_max);
  if (std::isinf(pnr_max)) return gamma;
  return gamma + (1.0 - gamma) / (1.0 + pnr_max);
}

TvBounds tv_bounds_closed_form(const SecurityParams& params) {
  params.validate();
  const double gamma_e = effective_energy_ratio(params.gamma, params.pnr_max);
  if (gamma_e == 0.0) return {1.0, 1.0};
  const double log_rho = log_energy_ratio_affinity(gamma_e);
  const double m = static_cast<double>(params.m);
  TvBounds b;
  b.lower = -std::expm1(0.25 * m * log_rho);
  b.upper = std::sqrt(std::max(0.0, -std::expm1(0.5 * m * log_rho)));
  return b;
}

double success_probability_bound(double tv_upper) {
  if (!(tv_upper >= 0.0 && tv_upper <= 1.0)) {
    throw std::invalid_argument("success_probability_bound: d_TV outside [0,1]");
  }
  return 0.5 + 0.5 * tv_upper;
}

GammaMin theorem3_gamma_min(std::size_t m, double pnr_max, double eps) {
  if (m == 0) throw std::invalid_argument("theorem3: M must be >= 1");
  check_pnr(pnr_max);
  check_eps(eps);
  // phi - 1 = (1 - 4 eps^2)^(-2/M) - 1
  const double phi_minus_one =
      std::expm1(-2.0 / static_cast<double>(m) * std::log1p(-4.0 * eps * eps));
  const double phi = 1.0 + phi_minus_one;
  // 2 phi - 1 - 2 sqrt(phi (phi - 1)) = (sqrt(phi) - sqrt(phi - 1))^2
  const double root_gap = std::sqrt(phi) - std::sqrt(phi_minus_one);
  GammaMin out;
  out.gamma_e_min = root_gap * root_gap;
  double gamma_min = out.gamma_e_min;
  if (!std::isinf(pnr_max)) gamma_min -= (1.0 - out.gamma_e_min) / pnr_max;
  if (gamma_min < 0.0 || gamma_min > 1.0) {
    out.clamped = true;
    gamma_min = std::clamp(gamma_min, 0.0, 1.0);
  }
  out.gamma_min = gamma_min;
  return out;
}

double theorem4_m_max(double gamma, double pnr_max, double eps) {
  check_eps(eps);
  const double gamma_e = effective_energy_ratio(gamma, pnr_max);
  if (gamma_e >= 1.0) return kInfinity;
  if (gamma_e == 0.0) return 0.0;
  const double c = log_energy_ratio_affinity(gamma_e);
  if (c == 0.0) return kInfinity;
  return 2.0 * std::log1p(-4.0 * eps * eps) / c;
}

double theorem5_pnr_max(double gamma, double gamma_e_min) {
  check_gamma(gamma);
  if (!(gamma_e_min > 0.0 && gamma_e_min < 1.0)) {
    throw std::invalid_argument("theorem5: gamma_e_min must lie in (0, 1)");
  }
  if (gamma >= gamma_e_min) return kInfinity;
  return (1.0 - gamma_e_min) / (gamma_e_min - gamma);
}

CompressionRatios compression_ratios(std::size_t n, std::size_t k,
                                     double m_max) {
  if (k < 1 || k >= n) {
    throw std::invalid_argument("compression_ratios: need 1 <= K < N");
  }
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  CompressionRatios out;
  out.rho_min = 2.0 * kd * std::log(nd / kd) / nd;
  out.rho_max = m_max / nd;
  out.no_achievable_region = out.rho_max < out.rho_min;
  return out;
}

bool eps_preset_needs_n(std::string_view preset) {
  return !preset.starts_with("literal:");
}

double eps_from_preset(std::string_view preset, std::size_t n) {
  double eps = 0.0;
  if (preset.starts_with("literal:")) {
    const std::string text(preset.substr(8));
    std::size_t used = 0;
    try {
      eps = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) {
      throw std::invalid_argument("malformed eps literal '" + text + "'");
    }
  } else {
    if (n < 2) throw std::invalid_argument("eps preset needs N >= 2");
    const double nd = static_cast<double>(n);
    if (preset == "1/logN") {
      eps = 1.0 / std::log(nd);
    } else if (preset == "1/sqrtN") {
      eps = 1.0 / std::sqrt(nd);
    } else if (preset == "logN/N") {
      eps = std::log(nd) / nd;
    } else if (preset == "1/N") {
      eps = 1.0 / nd;
    } else {
      throw std::invalid_argument(
          "unknown eps preset '" + std::string(preset) +
          "' (expected 1/logN, 1/sqrtN, logN/N, 1/N or literal:<value>)");
    }
  }
  check_eps(eps);
  return eps;
}

double db_to_linear(double db) {
  if (std::isinf(db) && db > 0) return kInfinity;
  return std::pow(10.0, db / 10.0);
}

}  // namespace agots
