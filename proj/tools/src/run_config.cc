// Copyright 2026 The lepski-rkhs Authors
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

#include "run_config.h"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "lepski/errors.h"

namespace lepski::cli {
namespace {

void CheckKeys(const YAML::Node& node, const std::string& where,
               std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) throw InputError(where + ": expected a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw InputError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void Read(const YAML::Node& node, const char* key, const std::string& where,
          T& out) {
  const YAML::Node v = node[key];
  if (!v) return;
  try {
    out = v.as<T>();
  } catch (const YAML::Exception&) {
    throw InputError(where + "." + key + ": invalid value");
  }
}

Eigen::MatrixXd ReadMatrix(const YAML::Node& v, const std::string& where) {
  if (!v.IsSequence() || v.size() == 0) {
    throw InputError(where + ": expected a non-empty list of rows");
  }
  std::vector<std::vector<double>> rows;
  try {
    rows = v.as<std::vector<std::vector<double>>>();
  } catch (const YAML::Exception&) {
    throw InputError(where + ": invalid value");
  }
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) {
      throw InputError(where + ": rows differ in length");
    }
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Design ParseDesign(const std::string& s) {
  if (s == "uniform_cube") return Design::kUniformCube;
  if (s == "standard_normal") return Design::kStandardNormal;
  throw InputError("scenario.design: expected uniform_cube or standard_normal");
}

const char* DesignName(Design d) {
  return d == Design::kUniformCube ? "uniform_cube" : "standard_normal";
}

void ParseScenario(const YAML::Node& node, ScenarioConfig& s) {
  CheckKeys(node, "scenario",
            {"n", "dim", "design", "target", "noise", "clip", "replicates",
             "holdout_size"});
  Read(node, "n", "scenario", s.n);
  Read(node, "dim", "scenario", s.dim);
  std::string design = DesignName(s.design);
  Read(node, "design", "scenario", design);
  s.design = ParseDesign(design);
  Read(node, "clip", "scenario", s.clip);
  Read(node, "replicates", "scenario", s.replicates);
  Read(node, "holdout_size", "scenario", s.holdout_size);

  if (const YAML::Node noise = node["noise"]) {
    CheckKeys(noise, "scenario.noise", {"kind", "sigma"});
    std::string kind =
        s.noise.kind == NoiseKind::kGaussian ? "gaussian" : "rademacher";
    Read(noise, "kind", "scenario.noise", kind);
    if (kind == "gaussian") {
      s.noise.kind = NoiseKind::kGaussian;
    } else if (kind == "rademacher") {
      s.noise.kind = NoiseKind::kRademacher;
    } else {
      throw InputError("scenario.noise.kind: expected gaussian or rademacher");
    }
    Read(noise, "sigma", "scenario.noise", s.noise.sigma);
  }

  RkhsTarget rkhs;
  rkhs.width = 1.0;
  rkhs.centers = Points::Constant(1, s.dim, 0.5);
  rkhs.weights = Eigen::VectorXd::Constant(1, 2.0);
  if (const auto* current = std::get_if<RkhsTarget>(&s.target)) {
    rkhs.width = current->width;
    if (current->centers.cols() == s.dim) {
      rkhs.centers = current->centers;
      rkhs.weights = current->weights;
    }
  }
  s.target = rkhs;
  const YAML::Node target = node["target"];
  if (!target) return;
  CheckKeys(target, "scenario.target",
            {"kind", "width", "centers", "weights", "slope"});
  std::string kind = "rkhs";
  Read(target, "kind", "scenario.target", kind);
  if (kind == "rkhs") {
    if (target["slope"]) {
      throw InputError("scenario.target.slope: only valid for kind hat");
    }
    Read(target, "width", "scenario.target", rkhs.width);
    if (const YAML::Node c = target["centers"]) {
      rkhs.centers = ReadMatrix(c, "scenario.target.centers");
    }
    if (const YAML::Node w = target["weights"]) {
      std::vector<double> weights;
      Read(target, "weights", "scenario.target", weights);
      rkhs.weights = Eigen::Map<Eigen::VectorXd>(
          weights.data(), static_cast<Eigen::Index>(weights.size()));
    }
    s.target = rkhs;
  } else if (kind == "hat") {
    for (const char* k : {"width", "centers", "weights"}) {
      if (target[k]) {
        throw InputError(std::string("scenario.target.") + k +
                         ": only valid for kind rkhs");
      }
    }
    HatTarget hat;
    Read(target, "slope", "scenario.target", hat.slope);
    s.target = hat;
  } else {
    throw InputError("scenario.target.kind: expected rkhs or hat");
  }
}

void ParseSelection(const YAML::Node& node, ExperimentConfig& e) {
  CheckKeys(node, "selection",
            {"family", "kernel_width", "widths", "j_const", "tau", "nu",
             "grid_a", "grid_b", "radii"});
  std::string family = e.family == Family::kFixed ? "fixed" : "gaussian";
  Read(node, "family", "selection", family);
  if (family == "fixed") {
    e.family = Family::kFixed;
  } else if (family == "gaussian") {
    e.family = Family::kGauss;
  } else {
    throw InputError("selection.family: expected fixed or gaussian");
  }
  Read(node, "kernel_width", "selection", e.kernel_width);
  Read(node, "widths", "selection", e.widths);
  Read(node, "j_const", "selection", e.j_const);
  Read(node, "tau", "selection", e.tau);
  Read(node, "nu", "selection", e.nu);
  Read(node, "grid_a", "selection", e.grid_a);
  Read(node, "grid_b", "selection", e.grid_b);
  Read(node, "radii", "selection", e.radii);
}

void ParseBounds(const YAML::Node& node, BoundsConfig& b) {
  CheckKeys(node, "bounds",
            {"r_min", "r_max", "r_steps", "n", "t", "k_diag", "j_const",
             "i_inf", "d1", "d2", "d3", "beta", "n_list"});
  Read(node, "r_min", "bounds", b.r_min);
  Read(node, "r_max", "bounds", b.r_max);
  Read(node, "r_steps", "bounds", b.r_steps);
  Read(node, "n", "bounds", b.n);
  Read(node, "t", "bounds", b.t);
  Read(node, "k_diag", "bounds", b.k_diag);
  Read(node, "j_const", "bounds", b.j_const);
  Read(node, "i_inf", "bounds", b.i_inf);
  Read(node, "d1", "bounds", b.d1);
  Read(node, "d2", "bounds", b.d2);
  Read(node, "d3", "bounds", b.d3);
  Read(node, "beta", "bounds", b.beta);
  Read(node, "n_list", "bounds", b.n_list);
}

bool Positive(double v) { return std::isfinite(v) && v > 0.0; }
bool NonNegative(double v) { return std::isfinite(v) && v >= 0.0; }

template <typename T>
bool StrictlyAscending(const std::vector<T>& v) {
  for (size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

}  // namespace

RunConfig DefaultRunConfig() {
  RunConfig cfg;
  cfg.scenario = DefaultScenario();
  return cfg;
}

RunConfig ParseRunConfig(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  RunConfig cfg = DefaultRunConfig();
  if (root.IsNull()) {
    ValidateRunConfig(cfg);
    return cfg;
  }
  CheckKeys(root, "config",
            {"seed", "threads", "theory_mode", "scenario", "selection", "fit",
             "rates", "events", "bounds"});
  Read(root, "seed", "config", cfg.seed);
  Read(root, "threads", "config", cfg.threads);
  Read(root, "theory_mode", "config", cfg.theory_mode);
  if (const YAML::Node n = root["scenario"]) ParseScenario(n, cfg.scenario);
  if (const YAML::Node n = root["selection"]) ParseSelection(n, cfg.experiment);
  if (const YAML::Node n = root["fit"]) {
    CheckKeys(n, "fit", {"radius"});
    Read(n, "radius", "fit", cfg.fit_radius);
  }
  if (const YAML::Node n = root["rates"]) {
    CheckKeys(n, "rates", {"n_list"});
    Read(n, "n_list", "rates", cfg.n_list);
  }
  if (const YAML::Node n = root["events"]) {
    CheckKeys(n, "events", {"t"});
    Read(n, "t", "events", cfg.experiment.t);
  }
  if (const YAML::Node n = root["bounds"]) ParseBounds(n, cfg.bounds);
  ValidateRunConfig(cfg);
  return cfg;
}

RunConfig LoadRunConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseRunConfig(buf.str());
}

void ValidateRunConfig(const RunConfig& cfg) {
  ValidateScenario(cfg.scenario);
  if (cfg.threads < 1) throw InputError("threads must be at least 1");
  const ExperimentConfig& e = cfg.experiment;
  if (!Positive(e.kernel_width)) {
    throw InputError("selection.kernel_width must be positive");
  }
  if (e.widths.empty()) throw InputError("selection.widths must be non-empty");
  for (double w : e.widths) {
    if (!Positive(w)) throw InputError("selection.widths must be positive");
  }
  if (!std::isfinite(e.j_const)) throw InputError("selection.j_const invalid");
  if (!NonNegative(e.tau)) {
    throw InputError("selection.tau must be non-negative (0 selects tau_min)");
  }
  if (!Positive(e.nu)) throw InputError("selection.nu must be positive");
  if (!Positive(e.grid_a) || !Positive(e.grid_b)) {
    throw InputError("selection.grid_a and grid_b must be positive");
  }
  for (double r : e.radii) {
    if (!NonNegative(r)) throw InputError("selection.radii must be >= 0");
  }
  if (!(e.t >= 1.0) || !std::isfinite(e.t)) {
    throw InputError("events.t must be at least 1");
  }
  if (!NonNegative(cfg.fit_radius)) {
    throw InputError("fit.radius must be non-negative");
  }
  if (cfg.n_list.size() < 4 || !StrictlyAscending(cfg.n_list) ||
      cfg.n_list.front() < 1) {
    throw InputError("rates.n_list needs >= 4 strictly ascending sizes >= 1");
  }
  const BoundsConfig& b = cfg.bounds;
  if (!NonNegative(b.r_min) || !(b.r_max >= b.r_min) ||
      !std::isfinite(b.r_max) || b.r_steps < 1) {
    throw InputError("bounds: need 0 <= r_min <= r_max and r_steps >= 1");
  }
  if (b.n < 1 || !(b.t >= 1.0) || !Positive(b.k_diag) ||
      !NonNegative(b.i_inf)) {
    throw InputError("bounds: need n >= 1, t >= 1, k_diag > 0, i_inf >= 0");
  }
  if (!(b.beta > 0.0 && b.beta < 1.0)) {
    throw InputError("bounds.beta must lie in (0, 1)");
  }
  if (b.n_list.empty()) throw InputError("bounds.n_list must be non-empty");
  for (int n : b.n_list) {
    if (n < 1) throw InputError("bounds.n_list entries must be >= 1");
  }
}

std::string RenderRunConfig(const RunConfig& cfg) {
  const ScenarioConfig& s = cfg.scenario;
  const ExperimentConfig& e = cfg.experiment;
  const BoundsConfig& b = cfg.bounds;
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "seed" << YAML::Value << cfg.seed;
  out << YAML::Key << "threads" << YAML::Value << cfg.threads;
  out << YAML::Key << "theory_mode" << YAML::Value << cfg.theory_mode;

  out << YAML::Key << "scenario" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "n" << YAML::Value << s.n;
  out << YAML::Key << "dim" << YAML::Value << s.dim;
  out << YAML::Key << "design" << YAML::Value << DesignName(s.design);
  out << YAML::Key << "target" << YAML::Value << YAML::BeginMap;
  if (const auto* t = std::get_if<RkhsTarget>(&s.target)) {
    out << YAML::Key << "kind" << YAML::Value << "rkhs";
    out << YAML::Key << "width" << YAML::Value << t->width;
    out << YAML::Key << "centers" << YAML::Value << YAML::BeginSeq;
    for (Eigen::Index i = 0; i < t->centers.rows(); ++i) {
      out << YAML::Flow << YAML::BeginSeq;
      for (Eigen::Index j = 0; j < t->centers.cols(); ++j) {
        out << t->centers(i, j);
      }
      out << YAML::EndSeq;
    }
    out << YAML::EndSeq;
    out << YAML::Key << "weights" << YAML::Value << YAML::Flow
        << YAML::BeginSeq;
    for (Eigen::Index i = 0; i < t->weights.size(); ++i) out << t->weights[i];
    out << YAML::EndSeq;
  } else {
    out << YAML::Key << "kind" << YAML::Value << "hat";
    out << YAML::Key << "slope" << YAML::Value
        << std::get<HatTarget>(s.target).slope;
  }
  out << YAML::EndMap;
  out << YAML::Key << "noise" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "kind" << YAML::Value
      << (s.noise.kind == NoiseKind::kGaussian ? "gaussian" : "rademacher");
  out << YAML::Key << "sigma" << YAML::Value << s.noise.sigma;
  out << YAML::EndMap;
  out << YAML::Key << "clip" << YAML::Value << s.clip;
  out << YAML::Key << "replicates" << YAML::Value << s.replicates;
  out << YAML::Key << "holdout_size" << YAML::Value << s.holdout_size;
  out << YAML::EndMap;

  out << YAML::Key << "selection" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "family" << YAML::Value
      << (e.family == Family::kFixed ? "fixed" : "gaussian");
  out << YAML::Key << "kernel_width" << YAML::Value << e.kernel_width;
  out << YAML::Key << "widths" << YAML::Value << YAML::Flow << e.widths;
  out << YAML::Key << "j_const" << YAML::Value << e.j_const
      << YAML::Comment("0 uses the bound for the width range");
  out << YAML::Key << "tau" << YAML::Value << e.tau
      << YAML::Comment("0 uses the theoretical minimum");
  out << YAML::Key << "nu" << YAML::Value << e.nu;
  out << YAML::Key << "grid_a" << YAML::Value << e.grid_a;
  out << YAML::Key << "grid_b" << YAML::Value << e.grid_b;
  out << YAML::Key << "radii" << YAML::Value << YAML::Flow << e.radii
      << YAML::Comment("empty uses the (grid_a, grid_b) grid");
  out << YAML::EndMap;

  out << YAML::Key << "fit" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "radius" << YAML::Value << cfg.fit_radius;
  out << YAML::EndMap;
  out << YAML::Key << "rates" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "n_list" << YAML::Value << YAML::Flow << cfg.n_list;
  out << YAML::EndMap;
  out << YAML::Key << "events" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "t" << YAML::Value << e.t;
  out << YAML::EndMap;

  out << YAML::Key << "bounds" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "r_min" << YAML::Value << b.r_min;
  out << YAML::Key << "r_max" << YAML::Value << b.r_max;
  out << YAML::Key << "r_steps" << YAML::Value << b.r_steps;
  out << YAML::Key << "n" << YAML::Value << b.n;
  out << YAML::Key << "t" << YAML::Value << b.t;
  out << YAML::Key << "k_diag" << YAML::Value << b.k_diag;
  out << YAML::Key << "j_const" << YAML::Value << b.j_const;
  out << YAML::Key << "i_inf" << YAML::Value << b.i_inf;
  out << YAML::Key << "d1" << YAML::Value << b.d1;
  out << YAML::Key << "d2" << YAML::Value << b.d2;
  out << YAML::Key << "d3" << YAML::Value << b.d3;
  out << YAML::Key << "beta" << YAML::Value << b.beta;
  out << YAML::Key << "n_list" << YAML::Value << YAML::Flow << b.n_list;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace lepski::cli
