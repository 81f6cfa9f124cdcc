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

#include "commands.h"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"
#include "json.hpp"
#include "lepski/errors.h"
#include "lepski/experiments.h"
#include "lepski/selection_fixed.h"
#include "lepski/selection_gauss.h"
#include "lepski/theory.h"

namespace lepski::cli {
namespace {

using nlohmann::json;

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> SplitCommas(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    out.push_back(Trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

json YamlToJson(const YAML::Node& node) {
  if (node.IsMap()) {
    json obj = json::object();
    for (const auto& kv : node) {
      obj[kv.first.as<std::string>()] = YamlToJson(kv.second);
    }
    return obj;
  }
  if (node.IsSequence()) {
    json arr = json::array();
    for (const auto& item : node) arr.push_back(YamlToJson(item));
    return arr;
  }
  if (node.IsNull()) return nullptr;
  const std::string s = node.as<std::string>();
  if (s == "true") return true;
  if (s == "false") return false;
  std::int64_t i = 0;
  auto [ip, iec] = std::from_chars(s.data(), s.data() + s.size(), i);
  if (iec == std::errc() && ip == s.data() + s.size()) return i;
  std::uint64_t u = 0;
  auto [up, uec] = std::from_chars(s.data(), s.data() + s.size(), u);
  if (uec == std::errc() && up == s.data() + s.size()) return u;
  double d = 0.0;
  auto [dp, dec] = std::from_chars(s.data(), s.data() + s.size(), d);
  if (dec == std::errc() && dp == s.data() + s.size()) return d;
  return s;
}

json ConfigJson(const RunConfig& cfg) {
  return YamlToJson(YAML::Load(RenderRunConfig(cfg)));
}

json VectorJson(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

std::filesystem::path OutPath(const Invocation& inv, const std::string& name) {
  std::filesystem::path dir(inv.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory " + inv.out_dir);
  return dir / name;
}

void WriteText(const Invocation& inv, const std::string& name,
               const std::string& text, std::ostream& log) {
  const std::filesystem::path path = OutPath(inv, name);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  log << "wrote " << path.string() << "\n";
}

void WriteJson(const Invocation& inv, const std::string& name, const json& j,
               std::ostream& log) {
  WriteText(inv, name, j.dump(2) + "\n", log);
}

void EmitWarnings(const std::vector<std::string>& warnings, std::ostream& log) {
  for (const auto& w : warnings) log << "warning: " << w << "\n";
}

Dataset LoadData(const Invocation& inv) {
  const ScenarioConfig& s = inv.config.scenario;
  Dataset data = inv.data_path.empty() ? Generate(s, s.n, 0)
                                       : ReadDataCsv(inv.data_path);
  data.clip = s.clip;
  data.sigma = s.noise.sigma;
  return data;
}

RadiusGrid RadiiFor(const ExperimentConfig& e, int n) {
  return e.radii.empty() ? MakeRadiusGrid(e.grid_a, e.grid_b, n)
                         : RadiusGridFromValues(e.radii);
}

double SigmaOrThrow(const RunConfig& cfg) {
  const double sigma = cfg.scenario.noise.sigma;
  if (cfg.experiment.tau <= 0.0 && !(sigma > 0.0)) {
    throw InputError("selection.tau must be set when the noise sigma is 0");
  }
  return sigma > 0.0 ? sigma : 1.0;
}

std::string RecordsCsv(const std::vector<ReplicateRecord>& records) {
  std::string out =
      "replicate,n,gamma_hat,r_hat,err_adaptive,err_oracle_grid,event_bias,"
      "event_majorant,seed\n";
  for (const auto& r : records) {
    out += std::to_string(r.replicate) + "," + std::to_string(r.n) + "," +
           Num(r.gamma_hat) + "," + Num(r.r_hat) + "," + Num(r.err_adaptive) +
           "," + Num(r.err_oracle_grid) + "," + std::to_string(r.event_bias) +
           "," + std::to_string(r.event_majorant) + "," +
           std::to_string(r.seed) + "\n";
  }
  return out;
}

json FrequencyJson(const FrequencyReport& f) {
  return {{"successes", f.successes}, {"trials", f.trials},
          {"frequency", f.frequency}, {"wilson_lo", f.wilson_lo},
          {"wilson_hi", f.wilson_hi}, {"floor", f.floor},
          {"pass", f.pass}};
}

ExperimentConfig ExperimentFor(const RunConfig& cfg) {
  ExperimentConfig e = cfg.experiment;
  e.threads = cfg.threads;
  e.theory_mode = cfg.theory_mode;
  return e;
}

ScenarioConfig ScenarioFor(const RunConfig& cfg) {
  ScenarioConfig s = cfg.scenario;
  s.master_seed = cfg.seed;
  return s;
}

}  // namespace

Dataset ReadDataCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open data file " + path);
  auto fail = [&](int line, const std::string& msg) {
    return InputError(path + ":" + std::to_string(line) + ": " + msg);
  };

  std::string line;
  if (!std::getline(in, line)) throw fail(1, "empty file");
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const auto header = SplitCommas(line);
  if (header.size() < 2 || header.back() != "y") {
    throw fail(1, "header must be x_1,...,x_d,y");
  }
  const int dim = static_cast<int>(header.size()) - 1;
  for (int j = 0; j < dim; ++j) {
    if (header[j] != "x_" + std::to_string(j + 1)) {
      throw fail(1, "expected column x_" + std::to_string(j + 1) + ", got '" +
                        std::string(header[j]) + "'");
    }
  }

  std::vector<double> values;
  int line_no = 1;
  int blank_at = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) {
      if (blank_at == 0) blank_at = line_no;
      continue;
    }
    if (blank_at != 0) throw fail(blank_at, "blank line inside data");
    const auto fields = SplitCommas(line);
    if (static_cast<int>(fields.size()) != dim + 1) {
      throw fail(line_no, "expected " + std::to_string(dim + 1) +
                              " fields, got " + std::to_string(fields.size()));
    }
    for (const auto f : fields) {
      double v = 0.0;
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || p != f.data() + f.size() || f.empty() ||
          !std::isfinite(v)) {
        throw fail(line_no, "not a finite number: '" + std::string(f) + "'");
      }
      values.push_back(v);
    }
  }
  const Eigen::Index n = static_cast<Eigen::Index>(values.size()) / (dim + 1);
  if (n == 0) throw fail(line_no, "no data rows");
  Dataset data;
  data.x.resize(n, dim);
  data.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int j = 0; j < dim; ++j) data.x(i, j) = values[i * (dim + 1) + j];
    data.y[i] = values[i * (dim + 1) + dim];
  }
  return data;
}

void CmdFit(const Invocation& inv, std::ostream& log) {
  const RunConfig& cfg = inv.config;
  const Dataset data = LoadData(inv);
  const Kernel kernel = Kernel::Gaussian(cfg.experiment.kernel_width,
                                         data.dim());
  const GramEigen ge = EigenGram(Gram(kernel, data.x), data.y);
  const ConstrainedFit fit = FitConstrained(ge, cfg.fit_radius, kernel.Id());
  json j = {{"config", ConfigJson(cfg)},
            {"kernel", kernel.Id()},
            {"n", data.size()},
            {"radius", fit.radius},
            {"mu", fit.mu},
            {"h_norm", fit.h_norm},
            {"rho", ge.rho},
            {"training_loss", fit.TrainingLoss(data.y)},
            {"coef", VectorJson(fit.coef)}};
  WriteJson(inv, "fit.json", j, log);
}

void CmdSelect(const Invocation& inv, std::ostream& log) {
  const RunConfig& cfg = inv.config;
  const Dataset data = LoadData(inv);
  const Kernel kernel = Kernel::Gaussian(cfg.experiment.kernel_width,
                                         data.dim());
  const double sigma = SigmaOrThrow(cfg);
  GLConfig gl;
  gl.sigma = sigma;
  gl.k_diag = kernel.diag_sup();
  gl.tau = cfg.experiment.tau > 0.0 ? cfg.experiment.tau
                                    : TauMinFixed(gl.k_diag, sigma);
  gl.nu = cfg.experiment.nu;
  gl.theory_mode = cfg.theory_mode;
  const RadiusGrid grid = RadiiFor(cfg.experiment, data.size());
  const SelectionResult sel = SelectRadius(data, kernel, grid, gl);
  EmitWarnings(sel.warnings, log);

  std::string csv = "r,bias_proxy,variance_term,total,argmax_r\n";
  for (const auto& row : sel.criterion) {
    csv += Num(row.r) + "," + Num(row.bias_proxy) + "," +
           Num(row.variance_term) + "," + Num(row.total) + "," +
           Num(grid.values[row.argmax]) + "\n";
  }
  json j = {{"config", ConfigJson(cfg)},
            {"kernel", kernel.Id()},
            {"n", data.size()},
            {"tau", gl.tau},
            {"tau_min", TauMinFixed(gl.k_diag, sigma)},
            {"t", TOfTau(gl.tau, gl.k_diag, sigma)},
            {"nu", gl.nu},
            {"r_hat", sel.r_hat},
            {"index", sel.index},
            {"rho", sel.rho},
            {"clipped", sel.clipped},
            {"mu_hat", sel.fit_hat.mu},
            {"h_norm_hat", sel.fit_hat.h_norm},
            {"coef_hat", VectorJson(sel.fit_hat.coef)},
            {"warnings", sel.warnings}};
  WriteJson(inv, "select.json", j, log);
  WriteText(inv, "criterion.csv", csv, log);
}

void CmdSelectGauss(const Invocation& inv, std::ostream& log) {
  const RunConfig& cfg = inv.config;
  const Dataset data = LoadData(inv);
  const double sigma = SigmaOrThrow(cfg);
  GaussGLConfig g;
  g.sigma = sigma;
  g.nu = cfg.experiment.nu;
  g.dim = data.dim();
  g.widths = WidthGridFromValues(cfg.experiment.widths);
  g.radii = RadiiFor(cfg.experiment, data.size());
  g.j_const = ResolvedJ(cfg.experiment);
  g.tau = cfg.experiment.tau > 0.0 ? cfg.experiment.tau
                                   : TauMinGauss(g.j_const, sigma);
  g.theory_mode = cfg.theory_mode;
  const GaussSelectionResult sel = SelectWidthRadius(data, g);
  EmitWarnings(sel.warnings, log);

  std::string csv =
      "gamma,r,bias_proxy,variance_term,total,argmax_gamma,argmax_r\n";
  for (const auto& row : sel.criterion) {
    csv += Num(row.gamma) + "," + Num(row.r) + "," + Num(row.bias_proxy) +
           "," + Num(row.variance_term) + "," + Num(row.total) + "," +
           Num(g.widths.values[row.argmax_width]) + "," +
           Num(g.radii.values[row.argmax_radius]) + "\n";
  }
  json j = {{"config", ConfigJson(cfg)},
            {"n", data.size()},
            {"j_const", g.j_const},
            {"tau", g.tau},
            {"tau_min", TauMinGauss(g.j_const, sigma)},
            {"t", TOfTauGauss(g.tau, g.j_const, sigma)},
            {"nu", g.nu},
            {"gamma_hat", sel.gamma_hat},
            {"r_hat", sel.r_hat},
            {"index", sel.index},
            {"clipped", sel.clipped},
            {"mu_hat", sel.fit_hat.mu},
            {"h_norm_hat", sel.fit_hat.h_norm},
            {"coef_hat", VectorJson(sel.fit_hat.coef)},
            {"warnings", sel.warnings}};
  WriteJson(inv, "select_gauss.json", j, log);
  WriteText(inv, "criterion_gauss.csv", csv, log);
}

void CmdRates(const Invocation& inv, std::ostream& log) {
  const RunConfig& cfg = inv.config;
  const ScenarioConfig s = ScenarioFor(cfg);
  const ExperimentConfig e = ExperimentFor(cfg);
  const RateReport report = RateExperiment(s, e, cfg.n_list);
  json points = json::array();
  for (const auto& p : report.points) {
    points.push_back({{"n", p.n},
                      {"median_err", p.median_err},
                      {"mean_err", p.mean_err},
                      {"median_r_hat", p.median_r_hat}});
  }
  json j = {{"config", ConfigJson(cfg)},
            {"tau", ResolvedTau(e, s)},
            {"points", points},
            {"slope", report.degenerate ? json(nullptr) : json(report.slope)},
            {"intercept",
             report.degenerate ? json(nullptr) : json(report.intercept)},
            {"degenerate", report.degenerate}};
  if (report.degenerate) log << "warning: degenerate slope (errors near 0)\n";
  WriteText(inv, "rates.csv", RecordsCsv(report.records), log);
  WriteJson(inv, "rates.json", j, log);
}

void CmdMajorant(const Invocation& inv, std::ostream& log) {
  const RunConfig& cfg = inv.config;
  const ScenarioConfig s = ScenarioFor(cfg);
  const ExperimentConfig e = ExperimentFor(cfg);
  const EventReport report = EventCheck(s, e);
  const bool bias_evaluated = report.bias.trials > 0;
  const bool pass = report.majorant.pass && (!bias_evaluated || report.bias.pass);
  json j = {{"config", ConfigJson(cfg)},
            {"t", e.t},
            {"floor", report.majorant.floor},
            {"majorant", FrequencyJson(report.majorant)},
            {"bias",
             bias_evaluated ? FrequencyJson(report.bias) : json(nullptr)},
            {"pass", pass}};
  WriteText(inv, "majorant.csv", RecordsCsv(report.records), log);
  WriteJson(inv, "majorant.json", j, log);
}

void CmdBounds(const Invocation& inv, std::ostream& log) {
  const RunConfig& cfg = inv.config;
  const BoundsConfig& b = cfg.bounds;
  const double clip = cfg.scenario.clip;
  const double sigma = cfg.scenario.noise.sigma;
  const double j_const =
      b.j_const > 0.0 ? b.j_const : ResolvedJ(cfg.experiment);
  const double tau = cfg.experiment.tau > 0.0 ? cfg.experiment.tau
                                              : TauMinFixed(b.k_diag, sigma);

  std::string csv = "r,bound_tbound,bound_tvarybound,bound_oracle\n";
  for (int i = 0; i < b.r_steps; ++i) {
    const double r =
        b.r_steps == 1
            ? b.r_min
            : b.r_min + (b.r_max - b.r_min) * i / (b.r_steps - 1.0);
    csv += Num(r) + "," +
           Num(BoundTBound(b.k_diag, clip, sigma, r, b.t, b.n, b.i_inf)) +
           "," +
           Num(BoundTVaryBound(j_const, b.k_diag, clip, sigma, r, b.t, b.n,
                               b.i_inf)) +
           "," + Num(OracleTermFixed(b.d1, b.d2, b.d3, tau, b.n, r, b.i_inf)) +
           "\n";
  }
  std::string env = "n,rate_fixed,rate_gauss\n";
  for (int n : b.n_list) {
    env += std::to_string(n) + "," +
           Num(RateEnvelopeFixed(b.d1, b.d2, tau, n, b.beta)) + "," +
           Num(RateEnvelopeGauss(b.d1, b.d2, tau, n, b.beta)) + "\n";
  }
  WriteText(inv, "bounds.csv", csv, log);
  WriteText(inv, "envelope.csv", env, log);
}

int RunCli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive norm-constrained kernel regression"};
  app.fallthrough();
  std::string config_path;
  std::string out_dir = ".";
  std::string data_path;
  std::uint64_t seed = 0;
  int threads = 0;
  bool theory_mode = false;
  bool print_config = false;
  double radius = -1.0;
  auto* seed_opt = app.add_option("--seed", seed, "Master seed");
  auto* threads_opt = app.add_option("--threads", threads, "Worker cap");
  app.add_option("--config", config_path, "YAML or JSON config file");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--data", data_path, "CSV data file (x_1..x_d,y)");
  app.add_flag("--theory-mode", theory_mode,
               "Reject tuning below the theoretical minimum");
  app.add_flag("--print-config", print_config,
               "Print the effective config and exit");

  struct Sub {
    const char* name;
    const char* help;
    void (*fn)(const Invocation&, std::ostream&);
  };
  const Sub subs[] = {
      {"fit", "Fit at one radius", CmdFit},
      {"select", "Select the radius for one kernel", CmdSelect},
      {"select-gauss", "Select width and radius", CmdSelectGauss},
      {"rates", "Error versus sample size", CmdRates},
      {"majorant", "Event frequency checks", CmdMajorant},
      {"bounds", "Tabulate bound curves", CmdBounds},
  };
  std::vector<CLI::App*> sub_apps;
  for (const Sub& s : subs) sub_apps.push_back(app.add_subcommand(s.name, s.help));
  sub_apps[0]->add_option("--radius", radius, "Radius (overrides fit.radius)");
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = config_path.empty() ? DefaultRunConfig()
                                        : LoadRunConfig(config_path);
    if (*seed_opt) cfg.seed = seed;
    if (*threads_opt) cfg.threads = threads;
    if (theory_mode) cfg.theory_mode = true;
    if (radius >= 0.0) cfg.fit_radius = radius;
    ValidateRunConfig(cfg);
    if (print_config) {
      out << RenderRunConfig(cfg);
      return 0;
    }
    for (size_t i = 0; i < sub_apps.size(); ++i) {
      if (sub_apps[i]->parsed()) {
        Invocation inv{cfg, out_dir, data_path};
        subs[i].fn(inv, out);
        return 0;
      }
    }
    err << app.help();
    return 2;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ConstraintError& e) {
    err << "constraint violation: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lepski::cli
