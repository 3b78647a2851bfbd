// Copyright 2026 The pmwu Authors
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

// Experiment registry, JSON run configuration, and CSV/SVG output.

#ifndef PMWU_HARNESS_HPP_
#define PMWU_HARNESS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pmwu/analysis.hpp"
#include "pmwu/core_types.hpp"
#include "pmwu/dynamics.hpp"
#include "pmwu/equilibrium.hpp"

namespace pmwu {

enum class ReferencePolicy { kSolveCommon, kExplicit, kNone };

struct ExperimentSpec {
  std::string name;
  PeriodicGame game;
  Algorithm default_algo = Algorithm::kExtraMwu;
  double default_eta = 0.1;
  std::int64_t default_steps = 20000;
  ReferencePolicy reference_policy = ReferencePolicy::kSolveCommon;
  std::optional<JointState> explicit_reference;
};

inline constexpr double kDefaultExtraEta = 0.1;
inline constexpr double kDefaultOmwuEta = 0.01;
inline constexpr std::int64_t kDefaultSteps = 20000;

inline double DefaultEta(Algorithm algo) {
  return algo == Algorithm::kOmwu ? kDefaultOmwuEta : kDefaultExtraEta;
}

// Exactly four schedules: the 2x2 alternating game, the two common-
// equilibrium 3x3 experiments, and the 3-periodic game without a common
// equilibrium. Matrices are listed by rows; index k is used when t mod T = k.
inline std::vector<ExperimentSpec> BuiltinExperiments() {
  const PayoffMatrix rps{{0, -1, 1}, {1, 0, -1}, {-1, 1, 0}};
  const PayoffMatrix rps_t{{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}};
  const PayoffMatrix exp1_even{{0, 0.75, 0.25}, {1.5, 0, 0}, {0, 0, 1}};
  const PayoffMatrix exp1_odd{{0, 0.25, 0.75}, {1.5, 0, 0}, {0, 1, 0}};
  const auto make = [](std::string name, PeriodicGame game) {
    ExperimentSpec s;
    s.name = std::move(name);
    s.game = std::move(game);
    return s;
  };
  std::vector<ExperimentSpec> specs = {
      make("game2x2", AlternatingGame2x2()),
      make("exp1", PeriodicGame({exp1_even, exp1_odd})),
      make("exp2", PeriodicGame({rps, rps_t, PayoffMatrix{{1, -3, 2}, {-2, 1, 1}, {1, 2, -3}},
                                 PayoffMatrix{{1, -2, 1}, {-2, 1, 1}, {1, 1, -2}}})),
      make("nocommon3", PeriodicGame({rps, rps_t, exp1_odd})),
  };
  for (const auto& s : specs) {
    if (!(s.default_eta < MaxStepSize(s.game))) {
      throw std::logic_error("default step size violates the bound for " + s.name);
    }
  }
  return specs;
}

inline ExperimentSpec FindExperiment(const std::string& name) {
  for (auto& s : BuiltinExperiments()) {
    if (s.name == name) return s;
  }
  throw InputError("unknown experiment '" + name +
                   "' (expected game2x2|exp1|exp2|nocommon3)");
}

// Uniform weights with +0.05 on the last coordinate, renormalized.
inline Simplex DefaultInitSimplex(std::size_t m) {
  std::vector<double> w(m, 1.0 / static_cast<double>(m));
  w.back() += 0.05;
  double s = 0.0;
  for (double v : w) s += v;
  for (double& v : w) v /= s;
  return Simplex::FromProbabilities(w);
}

inline JointState DefaultInit(std::size_t m, std::size_t n) {
  return {DefaultInitSimplex(m), DefaultInitSimplex(n)};
}

// --- Configuration ------------------------------------------------------------

struct RunConfig {
  std::optional<std::string> experiment;
  std::optional<PeriodicGame> game;  // inline matrices
  std::optional<Algorithm> algo;
  std::optional<double> eta;
  std::optional<std::int64_t> steps;
  std::optional<std::int64_t> record_every;
  std::optional<JointState> init;
  std::optional<JointState> init_prev;
  std::optional<std::uint64_t> seed;  // random interior init when init is absent
  std::optional<std::string> out_csv;
  std::optional<std::string> out_svg;
  bool log_y = false;
};

// Configuration errors name the offending field.
class ConfigError : public InputError {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : InputError("config field '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

namespace detail {

using Json = nlohmann::json;

inline double JsonNumber(const Json& j, const std::string& field) {
  if (!j.is_number()) throw ConfigError(field, "expected a number");
  return j.get<double>();
}

inline std::int64_t JsonInteger(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) throw ConfigError(field, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::vector<double> JsonVector(const Json& j, const std::string& field) {
  if (!j.is_array()) throw ConfigError(field, "expected an array of numbers");
  std::vector<double> v;
  for (std::size_t i = 0; i < j.size(); ++i) {
    v.push_back(JsonNumber(j[i], field + "[" + std::to_string(i) + "]"));
  }
  return v;
}

inline JointState JsonJoint(const Json& j, const std::string& field) {
  if (!j.is_object()) throw ConfigError(field, "expected {\"x1\": [...], \"x2\": [...]}");
  for (const auto& [k, v] : j.items()) {
    if (k != "x1" && k != "x2") throw ConfigError(field + "." + k, "unknown field");
  }
  if (!j.contains("x1") || !j.contains("x2")) throw ConfigError(field, "needs x1 and x2");
  try {
    return {Simplex::FromProbabilities(JsonVector(j["x1"], field + ".x1")),
            Simplex::FromProbabilities(JsonVector(j["x2"], field + ".x2"))};
  } catch (const ConfigError&) {
    throw;
  } catch (const InputError& e) {
    throw ConfigError(field, e.what());
  }
}

inline PeriodicGame JsonGame(const Json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("matrices", "expected a non-empty array");
  std::vector<PayoffMatrix> mats;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string f = "matrices[" + std::to_string(t) + "]";
    if (!j[t].is_array()) throw ConfigError(f, "expected an array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < j[t].size(); ++i) {
      rows.push_back(JsonVector(j[t][i], f + "[" + std::to_string(i) + "]"));
    }
    try {
      mats.push_back(PayoffMatrix::FromRows(rows));
    } catch (const InputError& e) {
      throw ConfigError(f, e.what());
    }
  }
  try {
    return PeriodicGame(std::move(mats));
  } catch (const InputError& e) {
    throw ConfigError("matrices", e.what());
  }
}

}  // namespace detail

inline RunConfig ParseConfigJson(const std::string& text) {
  using detail::Json;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("<document>", "expected a JSON object");
  static const std::set<std::string> known = {
      "experiment", "matrices", "period",   "algo",    "eta",     "steps",
      "record_every", "init",   "init_prev", "seed",   "out_csv", "out_svg"};
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw ConfigError(k, "unknown field");
  }

  RunConfig cfg;
  if (j.contains("experiment") == j.contains("matrices")) {
    throw ConfigError("experiment", "exactly one of 'experiment' or 'matrices' is required");
  }
  if (j.contains("experiment")) {
    if (!j["experiment"].is_string()) throw ConfigError("experiment", "expected a string");
    cfg.experiment = j["experiment"].get<std::string>();
    try {
      FindExperiment(*cfg.experiment);
    } catch (const InputError& e) {
      throw ConfigError("experiment", e.what());
    }
    if (j.contains("period")) throw ConfigError("period", "only valid with 'matrices'");
  } else {
    cfg.game = detail::JsonGame(j["matrices"]);
    if (j.contains("period")) {
      const auto period = detail::JsonInteger(j["period"], "period");
      if (period < 1 || static_cast<std::size_t>(period) != cfg.game->period()) {
        throw ConfigError("period", "must equal the number of matrices");
      }
    }
  }
  if (j.contains("algo")) {
    if (!j["algo"].is_string()) throw ConfigError("algo", "expected a string");
    try {
      cfg.algo = ParseAlgorithm(j["algo"].get<std::string>());
    } catch (const InputError& e) {
      throw ConfigError("algo", e.what());
    }
  }
  if (j.contains("eta")) {
    const double eta = detail::JsonNumber(j["eta"], "eta");
    if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("eta", "must be positive");
    cfg.eta = eta;
  }
  if (j.contains("steps")) {
    cfg.steps = detail::JsonInteger(j["steps"], "steps");
    if (*cfg.steps < 1) throw ConfigError("steps", "must be >= 1");
  }
  if (j.contains("record_every")) {
    cfg.record_every = detail::JsonInteger(j["record_every"], "record_every");
    if (*cfg.record_every < 1) throw ConfigError("record_every", "must be >= 1");
  }
  if (j.contains("init")) cfg.init = detail::JsonJoint(j["init"], "init");
  if (j.contains("init_prev")) cfg.init_prev = detail::JsonJoint(j["init_prev"], "init_prev");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed", "expected a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  for (const char* f : {"out_csv", "out_svg"}) {
    if (j.contains(f)) {
      if (!j[f].is_string()) throw ConfigError(f, "expected a path string");
      (std::string(f) == "out_csv" ? cfg.out_csv : cfg.out_svg) = j[f].get<std::string>();
    }
  }
  return cfg;
}

inline RunConfig ParseConfig(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfigJson(ss.str());
}

// --- CSV ------------------------------------------------------------------------

namespace detail {

inline std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string CsvHeader(std::size_t m, std::size_t n) {
  std::string h = "t,phase";
  for (std::size_t i = 1; i <= m; ++i) h += ",x1_" + std::to_string(i);
  for (std::size_t j = 1; j <= n; ++j) h += ",x2_" + std::to_string(j);
  return h + ",kl_to_ref,min_component";
}

inline void WriteCsv(const Trajectory& traj, std::ostream& out) {
  if (traj.steps.empty()) throw InputError("empty trajectory");
  out << CsvHeader(traj.steps[0].state.x1.size(), traj.steps[0].state.x2.size()) << '\n';
  for (const auto& s : traj.steps) {
    out << s.t << ',' << s.phase;
    for (double p : s.state.x1.probabilities()) out << ',' << detail::FormatDouble(p);
    for (double p : s.state.x2.probabilities()) out << ',' << detail::FormatDouble(p);
    out << ',' << detail::FormatDouble(s.kl_to_ref) << ','
        << detail::FormatDouble(s.min_component) << '\n';
  }
}

inline void EmitCsv(const Trajectory& traj, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  WriteCsv(traj, out);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw InputError("CSV has no column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  }
};

inline CsvTable ParseCsv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (first) {
      table.header = std::move(cells);
      first = false;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw InputError("CSV line " + std::to_string(lineno) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(table.header.size()));
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      if (end == c.c_str() || *end != '\0') {
        throw InputError("CSV line " + std::to_string(lineno) + ": bad number '" + c + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (first) throw InputError("CSV is empty");
  return table;
}

inline CsvTable ParseCsvFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open CSV '" + path + "'");
  return ParseCsv(in);
}

// --- SVG ------------------------------------------------------------------------

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (t, value)
};

namespace detail {

inline std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline std::string XmlEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

// Standalone SVG 1.1 line chart, 800x600 viewBox. Non-finite points (and
// non-positive values on a log axis) are dropped and counted in a comment.
inline std::string RenderSvgPlot(const std::vector<PlotSeries>& series, bool log_y,
                                 const std::string& title = "") {
  if (series.empty()) throw InputError("plot needs at least one series");
  constexpr double kW = 800, kH = 600, kLeft = 90, kRight = 170, kTop = 40, kBottom = 60;
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#17becf"};
  std::size_t dropped = 0;
  std::vector<std::vector<std::pair<double, double>>> kept(series.size());
  double x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
  for (std::size_t s = 0; s < series.size(); ++s) {
    for (auto [x, y] : series[s].points) {
      if (!std::isfinite(x) || !std::isfinite(y) || (log_y && !(y > 0.0))) {
        ++dropped;
        continue;
      }
      if (log_y) y = std::log10(y);
      kept[s].emplace_back(x, y);
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x0 > x1) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  const auto sx = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  const auto sy = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };
  const auto label = [&](double y) { return log_y ? "1e" + detail::Num(y) : detail::Num(y); };

  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
       "height=\"600\" viewBox=\"0 0 800 600\">\n"
    << "<!-- dropped non-finite points: " << dropped << " -->\n"
    << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  if (!title.empty()) {
    o << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << detail::XmlEscape(title) << "</text>\n";
  }
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\""
    << ph << "\" fill=\"none\" stroke=\"black\"/>\n";
  const auto text = [&](double x, double y, const char* anchor, const std::string& s) {
    o << "<text x=\"" << detail::Num(x) << "\" y=\"" << detail::Num(y)
      << "\" text-anchor=\"" << anchor << "\" font-family=\"sans-serif\" font-size=\"12\">"
      << detail::XmlEscape(s) << "</text>\n";
  };
  text(kLeft - 6, sy(y1) + 4, "end", label(y1));
  text(kLeft - 6, sy(y0) + 4, "end", label(y0));
  text(sx(x0), kH - kBottom + 18, "middle", detail::Num(x0));
  text(sx(x1), kH - kBottom + 18, "middle", detail::Num(x1));
  text(kLeft + pw / 2, kH - 16, "middle", "t");
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % (sizeof kColors / sizeof kColors[0])];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < kept[s].size(); ++k) {
      o << (k ? " " : "") << detail::Num(sx(kept[s][k].first)) << ','
        << detail::Num(sy(kept[s][k].second));
    }
    o << "\"/>\n";
    const double ly = kTop + 14 + 20 * static_cast<double>(s);
    o << "<line x1=\"" << kW - kRight + 12 << "\" y1=\"" << detail::Num(ly - 4) << "\" x2=\""
      << kW - kRight + 36 << "\" y2=\"" << detail::Num(ly - 4) << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n";
    text(kW - kRight + 42, ly, "start", series[s].label);
  }
  o << "</svg>\n";
  return o.str();
}

inline void EmitSvgPlot(const std::vector<PlotSeries>& series, const std::string& path,
                        bool log_y, const std::string& title = "") {
  const std::string svg = RenderSvgPlot(series, log_y, title);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << svg;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

// One series per CSV column; `columns` empty selects kl_to_ref when it has a
// finite value, otherwise every strategy coordinate.
inline std::vector<PlotSeries> SeriesFromCsv(const CsvTable& table,
                                             std::vector<std::string> columns = {}) {
  const std::size_t tcol = table.column("t");
  if (columns.empty()) {
    const std::size_t kl = table.column("kl_to_ref");
    const bool has_kl = std::any_of(table.rows.begin(), table.rows.end(),
                                    [&](const auto& r) { return std::isfinite(r[kl]); });
    if (has_kl) {
      columns = {"kl_to_ref"};
    } else {
      for (const auto& h : table.header) {
        if (h.rfind("x1_", 0) == 0 || h.rfind("x2_", 0) == 0) columns.push_back(h);
      }
    }
  }
  std::vector<PlotSeries> out;
  for (const auto& c : columns) {
    const std::size_t col = table.column(c);
    PlotSeries s{c, {}};
    for (const auto& r : table.rows) s.points.emplace_back(r[tcol], r[col]);
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<PlotSeries> SeriesFromTrajectory(const Trajectory& traj) {
  return SeriesFromCsv([&] {
    std::stringstream ss;
    WriteCsv(traj, ss);
    return ParseCsv(ss);
  }());
}

// --- Running ------------------------------------------------------------------------

struct ResolvedRun {
  std::string name;
  PeriodicGame game;
  Algorithm algo = Algorithm::kExtraMwu;
  double eta = 0.0;
  std::int64_t steps = 0;
  std::int64_t record_every = 1;
  OmwuState init;
  ReferencePolicy reference_policy = ReferencePolicy::kSolveCommon;
  std::optional<JointState> explicit_reference;
};

inline ResolvedRun ResolveConfig(const RunConfig& cfg) {
  ResolvedRun r;
  if (cfg.experiment) {
    const ExperimentSpec spec = FindExperiment(*cfg.experiment);
    r.name = spec.name;
    r.game = spec.game;
    r.algo = cfg.algo.value_or(spec.default_algo);
    r.eta = cfg.eta.value_or(r.algo == spec.default_algo ? spec.default_eta
                                                         : DefaultEta(r.algo));
    r.steps = cfg.steps.value_or(spec.default_steps);
    r.reference_policy = spec.reference_policy;
    r.explicit_reference = spec.explicit_reference;
  } else if (cfg.game) {
    r.name = "inline";
    r.game = *cfg.game;
    r.algo = cfg.algo.value_or(Algorithm::kExtraMwu);
    r.eta = cfg.eta.value_or(DefaultEta(r.algo));
    r.steps = cfg.steps.value_or(kDefaultSteps);
  } else {
    throw InputError("run configuration has neither an experiment nor matrices");
  }
  r.record_every = cfg.record_every.value_or(DefaultRecordEvery(r.steps));
  const std::size_t m = r.game.rows(), n = r.game.cols();
  JointState x0 = DefaultInit(m, n);
  if (cfg.init) {
    x0 = *cfg.init;
  } else if (cfg.seed) {
    std::mt19937_64 rng(*cfg.seed);
    x0 = {RandomInteriorSimplex(m, rng), RandomInteriorSimplex(n, rng)};
  }
  if (x0.x1.size() != m || x0.x2.size() != n) {
    throw ConfigError("init", "dimensions do not match the game");
  }
  r.init = {x0, cfg.init_prev.value_or(x0)};
  if (r.init.previous.x1.size() != m || r.init.previous.x2.size() != n) {
    throw ConfigError("init_prev", "dimensions do not match the game");
  }
  return r;
}

struct RunResult {
  ResolvedRun run;
  Trajectory trajectory;
  std::optional<EquilibriumResult> equilibrium;
  std::vector<std::string> written;
  std::vector<std::string> warnings;
};

// Resolves the reference, runs the dynamics and writes the requested files.
inline RunResult RunExperiment(const RunConfig& cfg) {
  RunResult res;
  res.run = ResolveConfig(cfg);
  const ResolvedRun& r = res.run;
  std::optional<JointState> reference;
  switch (r.reference_policy) {
    case ReferencePolicy::kSolveCommon:
      if (r.game.rows() <= 6 && r.game.cols() <= 6) {
        res.equilibrium = CommonEquilibrium(r.game);
        if (res.equilibrium) {
          reference = res.equilibrium->joint();
        } else {
          res.warnings.push_back("no common equilibrium; kl_to_ref omitted");
        }
      }
      break;
    case ReferencePolicy::kExplicit:
      reference = r.explicit_reference;
      break;
    case ReferencePolicy::kNone:
      break;
  }
  if (r.algo == Algorithm::kExtraMwu && !(r.eta < MaxStepSize(r.game))) {
    res.warnings.push_back("eta is not below 1/max_t ||A_t||; convergence is not guaranteed");
  }
  res.trajectory = RunTrajectory(r.game, r.algo, r.init, r.eta, r.steps, r.record_every,
                                 reference);
  if (cfg.out_csv) {
    EmitCsv(res.trajectory, *cfg.out_csv);
    res.written.push_back(*cfg.out_csv);
  }
  if (cfg.out_svg) {
    EmitSvgPlot(SeriesFromTrajectory(res.trajectory), *cfg.out_svg, cfg.log_y,
                r.name + " " + ToString(r.algo));
    res.written.push_back(*cfg.out_svg);
  }
  return res;
}

}  // namespace pmwu

#endif  // PMWU_HARNESS_HPP_
