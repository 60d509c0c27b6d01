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


#include "agots/config.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace agots {

namespace {

using nlohmann::json;

const std::set<std::string>& required_keys() {
  static const std::set<std::string> keys = {"N", "M", "K", "trials",
                                             "master_seed"};
  return keys;
}

const std::set<std::string>& optional_keys() {
  static const std::set<std::string> keys = {
      "gamma",        "pnr_max_db",   "recipient_trials", "s_mode",
      "eps",          "sweep_axis",   "grid",             "cov_matrices",
      "qq_matrices",  "tv_matrices",  "max_iter",         "tol",
      "rekey_per_encryption"};
  return keys;
}

std::size_t get_count(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(key, "expected an integer");
  }
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  const auto signed_value = v.get<std::int64_t>();
  if (signed_value < 0) throw ConfigError(key, "must be non-negative");
  return static_cast<std::size_t>(signed_value);
}

double get_real(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

std::string get_string(const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

// Number of dB, or the string "inf".
double get_db(const json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && v.get<std::string>() == "inf") {
    return std::numeric_limits<double>::infinity();
  }
  throw ConfigError(key, "expected a dB number or \"inf\"");
}

nlohmann::ordered_json db_to_json(double db) {
  if (std::isinf(db)) return "inf";
  return db;
}

}  // namespace

ExperimentConfig config_parse(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("<document>", "expected a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (!required_keys().contains(key) && !optional_keys().contains(key)) {
      throw ConfigError(key, "unknown key");
    }
  }
  for (const auto& key : required_keys()) {
    if (!doc.contains(key)) throw ConfigError(key, "missing required key");
  }

  ExperimentConfig cfg;
  cfg.n = get_count(doc, "N");
  cfg.m = get_count(doc, "M");
  cfg.k = get_count(doc, "K");
  cfg.trials = get_count(doc, "trials");
  {
    const json& seed = doc.at("master_seed");
    if (!seed.is_number_integer() ||
        (!seed.is_number_unsigned() && seed.get<std::int64_t>() < 0)) {
      throw ConfigError("master_seed", "expected a non-negative integer");
    }
    cfg.master_seed = seed.get<std::uint64_t>();
  }
  if (doc.contains("gamma")) cfg.gamma = get_real(doc, "gamma");
  if (doc.contains("pnr_max_db")) {
    cfg.pnr_max_db = get_db(doc.at("pnr_max_db"), "pnr_max_db");
  }
  if (doc.contains("recipient_trials")) {
    cfg.recipient_trials = get_count(doc, "recipient_trials");
  }
  if (doc.contains("s_mode")) {
    try {
      cfg.s_mode = secret_mode_from_string(get_string(doc, "s_mode"));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError("s_mode", e.what());
    }
  }
  if (doc.contains("eps")) cfg.eps = get_string(doc, "eps");
  if (doc.contains("sweep_axis")) {
    try {
      cfg.sweep_axis = sweep_axis_from_string(get_string(doc, "sweep_axis"));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw ConfigError("sweep_axis", e.what());
    }
  }
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    if (!g.is_array() || g.empty()) {
      throw ConfigError("grid", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      cfg.grid.push_back(get_db(g[i], "grid[" + std::to_string(i) + "]"));
    }
  }
  if (doc.contains("cov_matrices")) cfg.cov_matrices = get_count(doc, "cov_matrices");
  if (doc.contains("qq_matrices")) cfg.qq_matrices = get_count(doc, "qq_matrices");
  if (doc.contains("tv_matrices")) cfg.tv_matrices = get_count(doc, "tv_matrices");
  if (doc.contains("max_iter")) cfg.cosamp.max_iter = get_count(doc, "max_iter");
  if (doc.contains("tol")) cfg.cosamp.tol = get_real(doc, "tol");
  if (doc.contains("rekey_per_encryption")) {
    const json& v = doc.at("rekey_per_encryption");
    if (!v.is_boolean()) {
      throw ConfigError("rekey_per_encryption", "expected a boolean");
    }
    cfg.rekey_per_encryption = v.get<bool>();
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig config_load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return config_parse(text.str());
}

std::string config_to_json(const ExperimentConfig& cfg, int indent) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["N"] = cfg.n;
  doc["M"] = cfg.m;
  doc["K"] = cfg.k;
  doc["gamma"] = cfg.gamma;
  doc["pnr_max_db"] = db_to_json(cfg.pnr_max_db);
  doc["trials"] = cfg.trials;
  doc["recipient_trials"] = cfg.recipient_trial_count();
  doc["master_seed"] = cfg.master_seed;
  doc["s_mode"] = std::string(to_string(cfg.s_mode));
  doc["rekey_per_encryption"] = cfg.rekey_per_encryption;
  doc["eps"] = cfg.eps;
  doc["sweep_axis"] = to_string(cfg.sweep_axis);
  nlohmann::ordered_json grid = nlohmann::ordered_json::array();
  for (double v : cfg.axis_values()) {
    grid.push_back(cfg.sweep_axis == SweepAxis::kPnr ? db_to_json(v) : nlohmann::ordered_json(v));
  }
  doc["grid"] = grid;
  doc["cov_matrices"] = cfg.cov_matrices;
  doc["qq_matrices"] = cfg.qq_matrices;
  doc["tv_matrices"] = cfg.tv_matrices;
  doc["max_iter"] = cfg.cosamp.max_iter;
  doc["tol"] = cfg.cosamp.tol;
  return doc.dump(indent);
}

std::string config_keys_help() {
  const ExperimentConfig d;
  std::ostringstream out;
  out << "Config keys (JSON object; unknown keys are rejected):\n"
      << "  N, M, K               required; 1 <= K < N\n"
      << "  trials                required; >= 1 game trials per grid point\n"
      << "  master_seed           required; non-negative integer\n"
      << "  gamma                 default " << d.gamma << "; in [0, 1]\n"
      << "  pnr_max_db            default " << d.pnr_max_db
      << "; number or \"inf\"\n"
      << "  recipient_trials      default = trials; 0 skips decryption\n"
      << "  s_mode                default " << to_string(d.s_mode)
      << "; ssg | bernoulli\n"
      << "  rekey_per_encryption  default false\n"
      << "  eps                   default " << d.eps
      << "; 1/logN | 1/sqrtN | logN/N | 1/N | literal:<v>\n"
      << "  sweep_axis            default " << to_string(d.sweep_axis)
      << "; gamma | M | pnr\n"
      << "  grid                  default [] (single point); strictly "
         "increasing\n"
      << "  cov_matrices          default " << d.cov_matrices << "\n"
      << "  qq_matrices           default " << d.qq_matrices << "\n"
      << "  tv_matrices           default " << d.tv_matrices << "; >= "
      << kMinTvMatrices << "\n"
      << "  max_iter              default " << d.cosamp.max_iter << "\n"
      << "  tol                   default " << d.cosamp.tol << "\n";
  return out.str();
}

}  // namespace agots
