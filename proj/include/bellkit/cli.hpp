// Copyright 2026 The bellkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end pieces shared by the bellkit binary and its tests:
// state-file loading, deterministic JSON/CSV serialization, and the command
// implementations behind analyze, optimize, sweep, sample, and lhv.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bellkit/chsh.hpp"
#include "bellkit/common.hpp"
#include "bellkit/lhv.hpp"
#include "bellkit/observables.hpp"
#include "bellkit/optimize.hpp"
#include "bellkit/states.hpp"

namespace bellkit {

/// Renders a double with 17 significant digits so every finite value round-
/// trips exactly. Non-finite values become null (JSON has no literal for
/// them).
inline std::string format_double(double value) {
  if (!std::isfinite(value)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return std::string(buf);
}

/// Minimal streaming JSON emitter. Keys keep call order and numbers use
/// format_double, so equal inputs serialize byte for byte.
class JsonWriter {
 public:
  JsonWriter& begin_object() {
    prep();
    out_ += '{';
    has_item_.push_back(false);
    return *this;
  }
  JsonWriter& end_object() {
    has_item_.pop_back();
    out_ += '}';
    return *this;
  }
  JsonWriter& begin_array() {
    prep();
    out_ += '[';
    has_item_.push_back(false);
    return *this;
  }
  JsonWriter& end_array() {
    has_item_.pop_back();
    out_ += ']';
    return *this;
  }
  JsonWriter& key(std::string_view name) {
    if (has_item_.back())
      out_ += ',';
    else
      has_item_.back() = true;
    append_string(name);
    out_ += ':';
    pending_value_ = true;
    return *this;
  }
  JsonWriter& value(double v) {
    prep();
    out_ += format_double(v);
    return *this;
  }
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(long long v) {
    prep();
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value(unsigned long long v) {
    prep();
    out_ += std::to_string(v);
    return *this;
  }
  JsonWriter& value(unsigned long v) {
    return value(static_cast<unsigned long long>(v));
  }
  JsonWriter& value(bool v) {
    prep();
    out_ += v ? "true" : "false";
    return *this;
  }
  JsonWriter& value(std::string_view v) {
    prep();
    append_string(v);
    return *this;
  }
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }

  const std::string& str() const { return out_; }

 private:
  void prep() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!has_item_.empty()) {
      if (has_item_.back())
        out_ += ',';
      else
        has_item_.back() = true;
    }
  }
  void append_string(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\r': out_ += "\\r"; break;
        case '\t': out_ += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> has_item_;
  bool pending_value_ = false;
};

/// A state read from disk, renormalized to unit norm. norm_deviation is the
/// pre-renormalization defect |sum of squared magnitudes - 1|.
struct LoadedState {
  BipartiteState state;
  double norm_deviation = 0.0;
};

/// Parses the state-file schema { "dims": [n1, n2], "amplitudes":
/// [[re, im], ...] } with amplitudes in row-major product-basis order.
/// Rejects files whose squared norm deviates from 1 by more than
/// tol.state_file; accepted states are renormalized exactly.
inline LoadedState load_state_file(const std::string& path,
                                   const Tolerances& tol = kDefaultTol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open state file: " + path);
  nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded())
    throw ConfigError("state file is not valid JSON: " + path);
  try {
    if (!j.is_object() || !j.contains("dims") || !j.contains("amplitudes"))
      throw ConfigError("state file needs \"dims\" and \"amplitudes\" fields");
    const nlohmann::json& dims = j["dims"];
    if (!dims.is_array() || dims.size() != 2 ||
        !dims[0].is_number_integer() || !dims[1].is_number_integer())
      throw ConfigError("\"dims\" must be a pair of integers");
    const long long n1 = dims[0].get<long long>();
    const long long n2 = dims[1].get<long long>();
    if (n1 < 1 || n2 < 1) throw ConfigError("\"dims\" must be positive");
    if (n1 > 4096 || n2 > 4096 || n1 * n2 > 1048576)
      throw ConfigError("\"dims\" exceed the supported state size");
    const nlohmann::json& amps = j["amplitudes"];
    if (!amps.is_array())
      throw ConfigError("\"amplitudes\" must be an array of [re, im] pairs");
    if (amps.size() != static_cast<std::size_t>(n1 * n2))
      throw ConfigError("amplitude count does not match dims");
    std::vector<Complex> flat;
    flat.reserve(amps.size());
    for (const nlohmann::json& entry : amps) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number())
        throw ConfigError("each amplitude must be an [re, im] pair");
      flat.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
    double squared = 0.0;
    for (const Complex& c : flat) squared += std::norm(c);
    const double deviation = std::abs(squared - 1.0);
    if (!(deviation <= tol.state_file))
      throw ConfigError("state file is not normalized: |sum - 1| = " +
                        format_double(deviation));
    const double scale = std::sqrt(squared);
    for (Complex& c : flat) c /= scale;
    return LoadedState{
        bipartite_from_flat(static_cast<std::size_t>(n1),
                            static_cast<std::size_t>(n2), flat),
        deviation};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("state file error: ") + e.what());
  }
}

/// Report text plus the process exit code the command maps to.
struct CommandOutcome {
  std::string report;
  int exit_code = 0;
};

namespace detail {

/// Renormalized top-two Schmidt weights; same arithmetic as to_canonical but
/// defined for every rank (a product state yields c2 = 0).
struct CanonicalPair {
  double c1 = 1.0;
  double c2 = 0.0;
  double weight = 1.0;
};

inline CanonicalPair canonical_pair(const SchmidtDecomposition& d) {
  const double raw1 = d.coefficients.empty() ? 1.0 : d.coefficients[0];
  const double raw2 = d.coefficients.size() > 1 ? d.coefficients[1] : 0.0;
  const double weight = raw1 * raw1 + raw2 * raw2;
  const double scale = std::sqrt(weight);
  return CanonicalPair{raw1 / scale, raw2 / scale, weight};
}

/// Fixed quadruple used when the Gisin construction is undefined (c1 c2 = 0):
/// a at the pole, a' equatorial, b and b' diagonal between them.
inline MeasurementSettings reference_settings() {
  const double r = 1.0 / std::sqrt(2.0);
  MeasurementSettings s;
  s.a = BlochVector{0.0, 0.0, 1.0};
  s.a_prime = BlochVector{1.0, 0.0, 0.0};
  s.b = BlochVector{r, 0.0, r};
  s.b_prime = BlochVector{r, 0.0, -r};
  return s;
}

inline void write_bloch(JsonWriter& w, const BlochVector& v) {
  w.begin_array().value(v.x).value(v.y).value(v.z).end_array();
}

inline void write_input_section(JsonWriter& w, const std::string& path,
                                const LoadedState& loaded,
                                double rank_tolerance) {
  w.key("input").begin_object();
  w.key("path").value(path);
  w.key("dims")
      .begin_array()
      .value(loaded.state.dim1())
      .value(loaded.state.dim2())
      .end_array();
  w.key("rank_tolerance").value(rank_tolerance);
  w.key("norm_deviation").value(loaded.norm_deviation);
  w.end_object();
}

inline void write_schmidt_section(JsonWriter& w,
                                  const SchmidtDecomposition& d) {
  w.key("schmidt").begin_object();
  w.key("coefficients").begin_array();
  for (double c : d.coefficients) w.value(c);
  w.end_array();
  w.key("rank").value(d.rank);
  w.end_object();
}

inline void write_canonical_section(JsonWriter& w, const CanonicalPair& p) {
  w.key("canonical").begin_object();
  w.key("c1").value(p.c1);
  w.key("c2").value(p.c2);
  w.key("retained_weight").value(p.weight);
  w.end_object();
}

inline void write_settings_section(JsonWriter& w, const MeasurementSettings& s,
                                   const GisinAngles* angles,
                                   std::string_view source) {
  w.key("settings").begin_object();
  w.key("source").value(source);
  if (angles != nullptr) {
    w.key("alpha").value(angles->alpha);
    w.key("alpha_prime").value(angles->alpha_prime);
    w.key("beta").value(angles->beta);
    w.key("beta_prime").value(angles->beta_prime);
  }
  w.key("a");
  write_bloch(w, s.a);
  w.key("a_prime");
  write_bloch(w, s.a_prime);
  w.key("b");
  write_bloch(w, s.b);
  w.key("b_prime");
  write_bloch(w, s.b_prime);
  w.end_object();
}

inline void write_chsh_section(JsonWriter& w, const ChshReport& r,
                               const double* predicted) {
  w.key("chsh").begin_object();
  w.key("p_ab").value(r.p_ab);
  w.key("p_abp").value(r.p_abp);
  w.key("p_apb").value(r.p_apb);
  w.key("p_apbp").value(r.p_apbp);
  w.key("s_value").value(r.s_value);
  w.key("violated").value(r.violated);
  w.key("margin").value(r.margin);
  if (predicted != nullptr) w.key("predicted").value(*predicted);
  w.end_object();
}

}  // namespace detail

/// The analyze command: Schmidt decomposition, canonical reduction, Gisin
/// settings, and the CHSH verdict. A product state yields exit code 2 with
/// the report still filled in (no settings, violated = false). Malformed
/// input raises ConfigError, which callers map to exit code 1.
inline CommandOutcome run_analyze(const std::string& path,
                                  double rank_tolerance, bool verify_dense,
                                  const Tolerances& tol = kDefaultTol) {
  const LoadedState loaded = load_state_file(path, tol);
  const SchmidtDecomposition dec =
      schmidt_decompose(loaded.state, rank_tolerance, tol);
  const bool entangled = dec.rank >= 2;

  JsonWriter w;
  w.begin_object();
  detail::write_input_section(w, path, loaded, rank_tolerance);
  detail::write_schmidt_section(w, dec);
  w.key("entangled").value(entangled);
  if (!entangled) {
    w.key("chsh").begin_object();
    w.key("violated").value(false);
    w.end_object();
    w.end_object();
    return CommandOutcome{w.str(), 2};
  }

  const CanonicalTwoQubitState canon =
      to_canonical(loaded.state, rank_tolerance, tol);
  const detail::CanonicalPair pair{canon.c1, canon.c2, canon.retained_weight};
  const GisinAngles angles = gisin_angles(canon.c1, canon.c2);
  const MeasurementSettings settings = gisin_settings(canon.c1, canon.c2);
  const ChshReport report = chsh_value(canon.c1, canon.c2, settings, tol);
  const double predicted = gisin_predicted_value(canon.c1, canon.c2);
  detail::write_canonical_section(w, pair);
  detail::write_settings_section(w, settings, &angles, "gisin");
  detail::write_chsh_section(w, report, &predicted);
  if (verify_dense) {
    w.key("verification").begin_object();
    w.key("max_dense_discrepancy")
        .value(max_dense_closed_discrepancy(canon.c1, canon.c2, settings, tol));
    w.end_object();
  }
  w.end_object();
  return CommandOutcome{w.str(), 0};
}

/// The optimize command: derivative-free maximization of S for the state's
/// canonical coefficients. Defined for any valid state; a product state
/// optimizes to the classical bound.
inline CommandOutcome run_optimize(const std::string& path,
                                   const OptimizerConfig& config,
                                   const Tolerances& tol = kDefaultTol) {
  const LoadedState loaded = load_state_file(path, tol);
  const SchmidtDecomposition dec =
      schmidt_decompose(loaded.state, tol.rank, tol);
  const detail::CanonicalPair pair = detail::canonical_pair(dec);
  const OptimizationResult result = maximize_chsh(pair.c1, pair.c2, config, tol);

  JsonWriter w;
  w.begin_object();
  detail::write_input_section(w, path, loaded, tol.rank);
  detail::write_schmidt_section(w, dec);
  w.key("entangled").value(dec.rank >= 2);
  detail::write_canonical_section(w, pair);
  if (pair.c1 * pair.c2 != 0.0) {
    const GisinAngles angles = gisin_angles(pair.c1, pair.c2);
    const MeasurementSettings settings = gisin_settings(pair.c1, pair.c2);
    const ChshReport report = chsh_value(pair.c1, pair.c2, settings, tol);
    const double predicted = gisin_predicted_value(pair.c1, pair.c2);
    detail::write_settings_section(w, settings, &angles, "gisin");
    detail::write_chsh_section(w, report, &predicted);
  }
  w.key("optimization").begin_object();
  w.key("best_s").value(result.best_s);
  w.key("converged").value(result.converged);
  w.key("restarts_used").value(result.restarts_used);
  w.key("evaluations").value(result.evaluations);
  w.key("seed").value(static_cast<unsigned long long>(config.seed));
  w.key("best_angles").begin_array();
  for (double a : result.best_angles.angles) w.value(a);
  w.end_array();
  w.key("best_settings").begin_object();
  w.key("a");
  detail::write_bloch(w, result.best_settings.a);
  w.key("a_prime");
  detail::write_bloch(w, result.best_settings.a_prime);
  w.key("b");
  detail::write_bloch(w, result.best_settings.b);
  w.key("b_prime");
  detail::write_bloch(w, result.best_settings.b_prime);
  w.end_object();
  w.end_object();
  w.end_object();
  return CommandOutcome{w.str(), 0};
}

/// The sample command: seeded Born-rule sampling at the state's Gisin
/// settings (or the fixed reference quadruple when c1 c2 = 0, where the
/// construction is undefined).
inline CommandOutcome run_sample(const std::string& path, long long n_per_pair,
                                 std::uint64_t seed,
                                 const Tolerances& tol = kDefaultTol) {
  if (n_per_pair < 1) throw ConfigError("n_per_pair must be at least 1");
  const LoadedState loaded = load_state_file(path, tol);
  const SchmidtDecomposition dec =
      schmidt_decompose(loaded.state, tol.rank, tol);
  const detail::CanonicalPair pair = detail::canonical_pair(dec);
  const bool gisin_defined = pair.c1 * pair.c2 != 0.0;
  const MeasurementSettings settings = gisin_defined
                                           ? gisin_settings(pair.c1, pair.c2)
                                           : detail::reference_settings();
  const EmpiricalChsh est =
      sample_chsh(pair.c1, pair.c2, settings, n_per_pair, seed, tol);
  const ChshReport exact = chsh_value(pair.c1, pair.c2, settings, tol);

  JsonWriter w;
  w.begin_object();
  detail::write_input_section(w, path, loaded, tol.rank);
  detail::write_schmidt_section(w, dec);
  w.key("entangled").value(dec.rank >= 2);
  detail::write_canonical_section(w, pair);
  if (gisin_defined) {
    const GisinAngles angles = gisin_angles(pair.c1, pair.c2);
    detail::write_settings_section(w, settings, &angles, "gisin");
    const double predicted = gisin_predicted_value(pair.c1, pair.c2);
    detail::write_chsh_section(w, exact, &predicted);
  } else {
    detail::write_settings_section(w, settings, nullptr, "reference");
    detail::write_chsh_section(w, exact, nullptr);
  }
  w.key("sampling").begin_object();
  w.key("n_per_pair").value(est.batch.n_per_pair);
  w.key("seed").value(static_cast<unsigned long long>(seed));
  w.key("counts").begin_array();
  for (const auto& row : est.batch.counts) {
    w.begin_array();
    for (long long c : row) w.value(c);
    w.end_array();
  }
  w.end_array();
  w.key("correlations").begin_array();
  for (double c : est.correlations) w.value(c);
  w.end_array();
  w.key("std_errors").begin_array();
  for (double c : est.std_errors) w.value(c);
  w.end_array();
  w.key("s_value").value(est.s_value);
  w.key("s_std_error").value(est.s_std_error);
  w.key("sigma_margin").value(est.sigma_margin);
  w.key("sign_tie").value(est.sign_tie);
  w.end_object();
  w.end_object();
  return CommandOutcome{w.str(), 0};
}

/// Writes a sweep lattice as CSV: integer cell indices (axis 0 slowest), one
/// angle column per axis, S, and the violated flag as 0/1. LF line endings,
/// '.' decimal separator.
inline void write_sweep_csv(const SweepGrid& grid, std::ostream& os) {
  const std::size_t axes = grid.axes();
  for (std::size_t k = 0; k < axes; ++k) os << "idx" << k + 1 << ",";
  for (std::size_t k = 0; k < axes; ++k) os << "angle" << k + 1 << ",";
  os << "S,violated\n";
  std::vector<std::size_t> idx(axes, 0);
  for (std::size_t cell = 0; cell < grid.cells(); ++cell) {
    for (std::size_t k = 0; k < axes; ++k) os << idx[k] << ",";
    for (std::size_t k = 0; k < axes; ++k)
      os << format_double(grid.axis_angles[k][idx[k]]) << ",";
    os << format_double(grid.s_values[cell]) << ","
       << static_cast<int>(grid.violated[cell]) << "\n";
    for (std::size_t k = axes; k-- > 0;) {
      if (++idx[k] < grid.resolution) break;
      idx[k] = 0;
    }
  }
}

/// The sweep command: evaluates one slice lattice and writes it to out_csv.
/// Produces no report text; the CSV file is the product.
inline CommandOutcome run_sweep(const std::string& path,
                                const std::string& slice,
                                std::size_t resolution,
                                const std::string& out_csv,
                                const Tolerances& tol = kDefaultTol) {
  const SweepSlice s = slice_from_name(slice);
  const LoadedState loaded = load_state_file(path, tol);
  const SchmidtDecomposition dec =
      schmidt_decompose(loaded.state, tol.rank, tol);
  const detail::CanonicalPair pair = detail::canonical_pair(dec);
  const SweepGrid grid =
      sweep_slice(pair.c1, pair.c2, SweepGridSpec{s, resolution}, tol);
  std::ofstream out(out_csv, std::ios::binary);
  if (!out) throw ConfigError("cannot write sweep CSV: " + out_csv);
  write_sweep_csv(grid, out);
  out.flush();
  if (!out) throw ConfigError("failed while writing sweep CSV: " + out_csv);
  return CommandOutcome{std::string(), 0};
}

/// The 16-row deterministic-strategy table plus the classical bound line.
inline std::string lhv_table_text() {
  char line[64];
  std::snprintf(line, sizeof(line), "%3s %3s %3s %3s %6s\n", "a", "a'", "b",
                "b'", "value");
  std::string out = line;
  for (const DeterministicStrategy& s : enumerate_lhv_strategies()) {
    std::snprintf(line, sizeof(line), "%+3d %+3d %+3d %+3d %6d\n", s.a,
                  s.a_prime, s.b, s.b_prime, strategy_value(s));
    out += line;
  }
  out += "max = " + std::to_string(lhv_max_chsh()) + "\n";
  return out;
}

}  // namespace bellkit
