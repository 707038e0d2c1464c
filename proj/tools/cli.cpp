// Copyright 2026 The qdprep Authors
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

#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qdprep/design.hpp"
#include "qdprep/dynamics.hpp"
#include "qdprep/error.hpp"
#include "qdprep/optcontrol.hpp"
#include "qdprep/propagators.hpp"

namespace qdprep::cli {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr const char* kUnitsFooter =
    "Units: with --units natural (default) frequencies are in units of omega_b and times in "
    "1/omega_b. With --units ps, --omega-b and frequencies are in ps^-1, times in ps and "
    "rates in ns^-1.";

const double kSechAmplitude = 4.0 * std::sqrt(2.0 / 3.0);

using Units = UnitSystem;

struct CommonOptions {
  std::string units = "natural";
  double omega_b = 1.0;
  std::optional<double> omega0;
  std::optional<double> omega0_rel;
  std::string format = "csv";
  std::string out;

  Units resolve_units() const {
    if (!(omega_b > 0.0)) {
      raise(ErrorKind::InvalidArgument, fmt::format("--omega-b must be positive, got {}", omega_b));
    }
    return {units == "ps", omega_b};
  }
  /// Rabi bound in natural units.
  double resolve_omega0(const Units& u, double default_rel) const {
    if (omega0) return u.freq_in(*omega0);
    return u.lib_omega_b() * omega0_rel.value_or(default_rel);
  }
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_format) {
  cmd->add_option("--units", o.units, "Unit system: natural (omega_b = 1) or ps")
      ->check(CLI::IsMember({"natural", "ps"}))
      ->capture_default_str();
  cmd->add_option("--omega-b", o.omega_b,
                  "Biexciton shift omega_b = E_b/(4 hbar); ps^-1 with --units ps, otherwise the "
                  "natural frequency unit")
      ->capture_default_str();
  cmd->add_option("--omega0", o.omega0,
                  "Maximum Rabi amplitude Omega0 (omega_b units, or ps^-1 with --units ps)");
  cmd->add_option("--omega0-rel", o.omega0_rel,
                  "Maximum Rabi amplitude as a multiple of omega_b (any unit system)");
  cmd->add_option("--out", o.out, "Output file (default: stdout)");
  if (with_format) {
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
  }
  cmd->footer(kUnitsFooter);
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) raise(ErrorKind::InvalidArgument, fmt::format("cannot open '{}'", path));
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

// ---------------------------------------------------------------- design

struct DesignOptions {
  CommonOptions common;
  std::string kind;
  int n = 2;
  int k = 2;
  std::string variant = "lower";
  double truncation = 20.0;
};

struct DesignRecord {
  std::string kind;
  Units units;
  SystemParams params;  // natural units
  std::vector<PulseSegment> segments;
  double total_T = 0.0;
  json metadata = json::object();
  std::vector<std::pair<std::string, double>> times;  // labelled durations for the summary
};

SignVariant parse_variant(const std::string& s) {
  return s == "upper" ? SignVariant::Upper : SignVariant::Lower;
}

DesignRecord make_design(const DesignOptions& o) {
  const Units u = o.common.resolve_units();
  DesignRecord rec;
  rec.kind = o.kind;
  rec.units = u;
  const double wb = u.lib_omega_b();
  if (o.kind == "constant") {
    const auto d = design_constant(SystemParams(wb, 0.0), o.k);
    rec.params = SystemParams(wb, d.omega0);
    rec.segments = {{d.omega0, d.total_T}};
    rec.total_T = d.total_T;
    rec.metadata["k"] = d.k;
    rec.metadata["residual"] = phase_condition_residual(
        on_propagator(rec.params, d.total_T), d.total_T, rec.params);
    rec.times = {{"T", d.total_T}};
  } else if (o.kind == "sech") {
    const auto d = design_sech(SystemParams(wb, 0.0), o.n, o.truncation);
    rec.params = SystemParams(wb, d.omega0);
    rec.total_T = 2.0 * d.truncation_halfwidth;
    rec.metadata["n"] = d.n;
    rec.metadata["t_p"] = u.time_out(d.t_p);
    rec.metadata["truncation_halfwidth"] = u.time_out(d.truncation_halfwidth);
    rec.metadata["omega_b_t_p"] = d.x;
    rec.metadata["final_amplitude_re"] = sech_final_amplitude(d.n, d.x).real();
    rec.metadata["final_amplitude_im"] = sech_final_amplitude(d.n, d.x).imag();
    rec.times = {{"t_p", d.t_p}, {"window", rec.total_T}};
  } else {
    const SystemParams params(wb, o.common.resolve_omega0(u, kSechAmplitude));
    const auto sol = design_on_off_on(params);
    const auto& d = sol.variant(parse_variant(o.variant));
    rec.params = params;
    const PulseSequence seq = d.sequence(params);
    rec.segments.assign(seq.segments().begin(), seq.segments().end());
    rec.total_T = d.total_T;
    rec.metadata["root_tau2"] = u.time_out(d.tau2);
    rec.metadata["sign_variant"] = std::string(to_string(d.sign_variant));
    rec.metadata["residual"] = d.residual;
    json roots = json::array();
    for (double r : d.all_roots) roots.push_back(u.time_out(r));
    rec.metadata["all_roots"] = roots;
    rec.times = {{"tau1", d.tau1}, {"tau2", d.tau2}, {"tau3", d.tau3}, {"T", d.total_T}};
  }
  return rec;
}

json to_json(const DesignRecord& rec) {
  const Units& u = rec.units;
  json j;
  j["schema"] = kSchemaVersion;
  j["kind"] = rec.kind;
  j["units"] = u.name();
  j["omega_b"] = u.ps ? u.omega_b : rec.params.omega_b();
  j["omega0"] = u.freq_out(rec.params.omega_max());
  json segs = json::array();
  for (const auto& s : rec.segments) {
    segs.push_back({{"amplitude", u.freq_out(s.amplitude)}, {"duration", u.time_out(s.duration)}});
  }
  j["segments"] = segs;
  j["total_T"] = u.time_out(rec.total_T);
  j["metadata"] = rec.metadata;
  return j;
}

void print_summary(std::ostream& os, const DesignRecord& rec) {
  const Units& u = rec.units;
  os << fmt::format("design: {}", rec.kind);
  if (rec.metadata.contains("sign_variant")) {
    os << fmt::format(" ({} sign)", rec.metadata["sign_variant"].get<std::string>());
  }
  os << '\n';
  const double wb = rec.params.omega_b();
  os << fmt::format("  {:<8} = {:.6f} omega_b", "omega0", rec.params.omega_max() / wb);
  if (u.ps) os << fmt::format("  ({:.6f} ps^-1)", u.freq_out(rec.params.omega_max()));
  os << '\n';
  for (const auto& [label, t] : rec.times) {
    os << fmt::format("  {:<8} = {:.6f} /omega_b", label, t * wb);
    if (u.ps) os << fmt::format("  ({:.6f} ps)", u.time_out(t));
    os << '\n';
  }
  if (rec.metadata.contains("all_roots")) {
    std::string roots;
    for (const auto& r : rec.metadata["all_roots"]) {
      roots += fmt::format("{}{:.6f}", roots.empty() ? "" : ", ", u.time_in(r.get<double>()) * wb);
    }
    os << fmt::format("  {:<8} = [{}] /omega_b\n", "roots", roots);
  }
  if (rec.metadata.contains("residual")) {
    os << fmt::format("  {:<8} = {:.3e}\n", "residual", rec.metadata["residual"].get<double>());
  }
}

int cmd_design(const DesignOptions& o, std::ostream& out) {
  const DesignRecord rec = make_design(o);
  const json j = to_json(rec);
  if (o.common.out.empty()) {
    if (o.common.format == "json") {
      out << j.dump(2) << '\n';
    } else {
      print_summary(out, rec);
    }
    return kExitOk;
  }
  Output file(o.common.out, out);
  file.get() << j.dump(2) << '\n';
  print_summary(out, rec);
  return kExitOk;
}

// -------------------------------------------------------------- simulate

struct SimulateOptions {
  DesignOptions design;
  std::string design_file;
  std::optional<double> dt;
  std::optional<double> Gamma, gamma;
  std::optional<double> Gamma11, Gamma22, gamma01, gamma02, gamma12;
  bool dissipative = false;
};

struct Plan {
  std::string kind;
  Units units;
  SystemParams params;
  std::optional<ControlEnvelope> env;
  TimeSpan span;
};

Plan plan_from_record(const json& j) {
  if (j.value("schema", 0) != kSchemaVersion) {
    raise(ErrorKind::InvalidArgument, "design record has an unsupported schema version");
  }
  Plan p;
  p.kind = j.at("kind").get<std::string>();
  p.units = Units{j.at("units").get<std::string>() == "ps", j.at("omega_b").get<double>()};
  const Units& u = p.units;
  p.params = SystemParams(u.lib_omega_b(), u.freq_in(j.at("omega0").get<double>()));
  if (p.kind == "sech") {
    const auto& m = j.at("metadata");
    const double t_p = u.time_in(m.at("t_p").get<double>());
    const double t0 = u.time_in(m.at("truncation_halfwidth").get<double>());
    p.env.emplace(SechEnvelope{p.params.omega_max(), t_p, 0.0});
    p.span = {-t0, t0};
  } else {
    std::vector<PulseSegment> segs;
    for (const auto& s : j.at("segments")) {
      segs.push_back({u.freq_in(s.at("amplitude").get<double>()),
                      u.time_in(s.at("duration").get<double>())});
    }
    PulseSequence seq(std::move(segs));
    p.span = {0.0, seq.total_duration()};
    p.env.emplace(PiecewiseEnvelope{std::move(seq), 0.0});
  }
  return p;
}

Plan make_plan(const SimulateOptions& o) {
  if (!o.design_file.empty()) {
    std::ifstream in(o.design_file);
    if (!in) raise(ErrorKind::InvalidArgument, fmt::format("cannot open '{}'", o.design_file));
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      raise(ErrorKind::InvalidArgument, fmt::format("invalid design record: {}", e.what()));
    }
    return plan_from_record(j);
  }
  return plan_from_record(to_json(make_design(o.design)));
}

RateParams make_rates(const SimulateOptions& o, const Units& u) {
  // Defaults: 1 ns^-1 dissipation and 7 ns^-1 dephasing in physical units.
  const bool defaults = u.ps && o.dissipative;
  const double G = o.Gamma.value_or(defaults ? 1.0 : 0.0);
  const double g = o.gamma.value_or(defaults ? 7.0 : 0.0);
  RateParams r;
  r.Gamma11 = u.rate_in(o.Gamma11.value_or(G));
  r.Gamma22 = u.rate_in(o.Gamma22.value_or(G));
  r.gamma01 = u.rate_in(o.gamma01.value_or(g));
  r.gamma02 = u.rate_in(o.gamma02.value_or(g));
  r.gamma12 = u.rate_in(o.gamma12.value_or(g));
  r.validate();
  return r;
}

bool has_rates(const SimulateOptions& o) {
  return o.dissipative || o.Gamma || o.gamma || o.Gamma11 || o.Gamma22 || o.gamma01 ||
         o.gamma02 || o.gamma12;
}

int cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  const Plan plan = make_plan(o);
  const Units& u = plan.units;
  const ControlEnvelope& env = *plan.env;
  const double dt = o.dt ? u.time_in(*o.dt) : default_step(plan.params, env);
  const std::string meta = fmt::format(
      "qdprep simulate kind={} units={} omega_b={} omega0={} {} time_unit={} dt={}", plan.kind,
      u.name(), u.ps ? u.omega_b : plan.params.omega_b(), u.freq_out(plan.params.omega_max()),
      u.freq_unit(), u.time_unit(), u.time_out(dt));
  const CsvOptions csv{meta, u.time_out(1.0)};
  const bool json_out = o.design.common.format == "json";

  double fidelity = 0.0;
  Output sink(o.design.common.out, out);
  if (has_rates(o)) {
    const RateParams rates = make_rates(o, u);
    const auto traj =
        propagate_density(plan.params, rates, env, plan.span, DensityState{}, dt);
    fidelity = traj.back().state.s22;
    if (json_out) {
      json rows = json::array();
      for (const auto& p : traj) {
        const auto& d = p.state;
        rows.push_back({u.time_out(p.t), d.s00, d.s11, d.s22, d.s01.real(), d.s01.imag(),
                        d.s02.real(), d.s02.imag(), d.s12.real(), d.s12.imag()});
      }
      sink.get() << json{{"metadata", meta},
                         {"columns", {"t", "s00", "s11", "s22", "re_s01", "im_s01", "re_s02",
                                      "im_s02", "re_s12", "im_s12"}},
                         {"rows", rows},
                         {"fidelity", fidelity}}
                        .dump()
                 << '\n';
    } else {
      write_csv(sink.get(), traj, csv);
    }
  } else {
    const auto traj =
        propagate_three_level(plan.params, env, plan.span, ThreeLevelState::ground(), dt);
    fidelity = biexciton_fidelity(traj.back().state);
    if (json_out) {
      json rows = json::array();
      for (const auto& p : traj) {
        const auto& s = p.state;
        rows.push_back({u.time_out(p.t), s.c0.real(), s.c0.imag(), s.c1.real(), s.c1.imag(),
                        s.c2.real(), s.c2.imag(), std::norm(s.c2)});
      }
      sink.get() << json{{"metadata", meta},
                         {"columns",
                          {"t", "re_c0", "im_c0", "re_c1", "im_c1", "re_c2", "im_c2", "pop2"}},
                         {"rows", rows},
                         {"fidelity", fidelity}}
                        .dump()
                 << '\n';
    } else {
      write_csv(sink.get(), traj, csv);
    }
  }
  sink.get().flush();
  out << fmt::format("fidelity={:.10f}\n", fidelity);
  return kExitOk;
}

// ------------------------------------------------------------------ scan

struct ScanCliOptions {
  CommonOptions common;
  std::vector<double> omega0s;
  std::vector<double> omega0s_rel;
  std::vector<double> t_range;
  std::optional<double> dT;
  std::optional<int> restarts;
  std::size_t slices = 200;
  double threshold = 1e-4;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool quick = false;
};

int cmd_scan(const ScanCliOptions& o, std::ostream& out) {
  const Units u = o.common.resolve_units();
  std::vector<double> amps;
  for (double a : o.omega0s) amps.push_back(u.freq_in(a));
  for (double a : o.omega0s_rel) amps.push_back(a * u.lib_omega_b());
  if (amps.empty()) {
    for (double rel : {kSechAmplitude, 5.0, 10.0, 50.0}) amps.push_back(rel * u.lib_omega_b());
  }

  ScanOptions scan;
  scan.dT = o.dT ? u.time_in(*o.dT) : (o.quick ? 0.05 : 0.01) / u.lib_omega_b();
  scan.error_threshold = o.threshold;
  scan.threads = o.threads;
  scan.optimizer.n_slices = o.slices;
  scan.optimizer.restarts = o.restarts.value_or(o.quick ? 2 : 8);
  scan.optimizer.seed = o.seed;

  CoincidenceReport report;
  if (o.t_range.empty()) {
    CoincidenceOptions copts;
    copts.scan = scan;
    report = coincidence_report(u.lib_omega_b(), amps, copts);
  } else {
    if (o.t_range.size() != 2) raise(ErrorKind::InvalidArgument, "--t-range takes two values");
    scan.t_begin = u.time_in(o.t_range[0]);
    scan.t_end = u.time_in(o.t_range[1]);
    for (double a : amps) {
      const SystemParams params(u.lib_omega_b(), a);
      const double t_analytic = design_on_off_on(params).lower.total_T;
      ScanResult r = scan_min_time(params, scan);
      report.rows.push_back({a, t_analytic, r.t_min});
      report.curves.push_back(std::move(r.points));
    }
  }

  // Convert to the active unit system for output.
  std::vector<CoincidenceRow> rows;
  for (const auto& r : report.rows) {
    CoincidenceRow c{u.freq_out(r.omega0), u.time_out(r.T_analytic), std::nullopt};
    if (r.T_numeric) c.T_numeric = u.time_out(*r.T_numeric);
    rows.push_back(c);
  }
  const std::string prefix = o.common.out.empty() ? "scan" : o.common.out;
  {
    Output f(prefix + "_scan.csv", out);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
      std::vector<ScanPoint> pts = report.curves[i];
      for (auto& p : pts) p.T = u.time_out(p.T);
      write_scan_csv(f.get(), rows[i].omega0, pts, i == 0);
    }
  }
  {
    Output f(prefix + "_coincidence.csv", out);
    write_coincidence_csv(f.get(), rows);
  }

  bool all_found = true;
  if (o.common.format == "json") {
    json j = json::array();
    for (const auto& r : rows) {
      j.push_back({{"omega0", r.omega0},
                   {"T_analytic", r.T_analytic},
                   {"T_numeric", r.T_numeric ? json(*r.T_numeric) : json(nullptr)},
                   {"gap", r.T_numeric ? json(r.gap()) : json(nullptr)}});
      all_found = all_found && r.T_numeric.has_value();
    }
    out << j.dump(2) << '\n';
  } else {
    out << fmt::format("{:>12} {:>12} {:>12} {:>10}   ({})\n", "omega0", "T_analytic",
                       "T_numeric", "gap", u.time_unit());
    for (const auto& r : rows) {
      all_found = all_found && r.T_numeric.has_value();
      out << fmt::format("{:>12.6f} {:>12.6f} {:>12} {:>10}\n", r.omega0, r.T_analytic,
                         r.T_numeric ? fmt::format("{:.6f}", *r.T_numeric) : "none",
                         r.T_numeric ? fmt::format("{:.4f}", r.gap()) : "inf");
    }
    out << fmt::format("wrote {0}_scan.csv and {0}_coincidence.csv\n", prefix);
  }
  return all_found ? kExitOk : kExitNumerical;
}

void add_simulate_options(CLI::App* cmd, SimulateOptions& s) {
  add_common(cmd, s.design.common, true);
  cmd->add_option("--kind", s.design.kind, "Pulse to simulate")
      ->check(CLI::IsMember({"constant", "sech", "onoffon"}))
      ->default_val("onoffon");
  cmd->add_option("--design", s.design_file, "Simulate a JSON design record instead of --kind");
  cmd->add_option("--n", s.design.n, "Sech order n")->capture_default_str();
  cmd->add_option("--k", s.design.k, "Constant-pulse order k (even)")->capture_default_str();
  cmd->add_option("--variant", s.design.variant, "On-off-on sign variant")
      ->check(CLI::IsMember({"lower", "upper"}))
      ->capture_default_str();
  cmd->add_option("--truncation", s.design.truncation,
                  "Sech window half-width in units of t_p")
      ->capture_default_str();
  cmd->add_option("--dt", s.dt,
                  "RK4 step (1/omega_b, or ps with --units ps); default min(1e-3/omega_b, "
                  "shortest segment/50)");
  cmd->add_option("--Gamma", s.Gamma,
                  "Dissipation rate Gamma11 = Gamma22 (omega_b units, or ns^-1 with --units ps)");
  cmd->add_option("--gamma", s.gamma,
                  "Dephasing rate gamma01 = gamma02 = gamma12 (omega_b units, or ns^-1)");
  cmd->add_option("--Gamma11", s.Gamma11, "Exciton dissipation rate");
  cmd->add_option("--Gamma22", s.Gamma22, "Biexciton dissipation rate");
  cmd->add_option("--gamma01", s.gamma01, "Dephasing of sigma_01");
  cmd->add_option("--gamma02", s.gamma02, "Dephasing of sigma_02");
  cmd->add_option("--gamma12", s.gamma12, "Dephasing of sigma_12");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pulse design and simulation for biexciton preparation in a quantum dot",
               "qdprep"};
  app.require_subcommand(1);
  app.footer(kUnitsFooter);

  DesignOptions design;
  auto* design_cmd = app.add_subcommand(
      "design", "Design a constant, sech or minimum-time on-off-on pulse");
  design_cmd->add_option("kind", design.kind, "constant | sech | onoffon")
      ->required()
      ->check(CLI::IsMember({"constant", "sech", "onoffon"}));
  add_common(design_cmd, design.common, true);
  design_cmd->add_option("--n", design.n, "Sech order n (>= 2)")->capture_default_str();
  design_cmd->add_option("--k", design.k, "Constant-pulse order k (even)")->capture_default_str();
  design_cmd->add_option("--variant", design.variant, "On-off-on sign variant")
      ->check(CLI::IsMember({"lower", "upper"}))
      ->capture_default_str();
  design_cmd->add_option("--truncation", design.truncation,
                         "Sech window half-width in units of t_p")
      ->capture_default_str();

  SimulateOptions sim;
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Propagate a designed pulse; unitary unless rates are given");
  add_simulate_options(sim_cmd, sim);

  SimulateOptions diss;
  diss.dissipative = true;
  auto* diss_cmd = app.add_subcommand(
      "dissipative",
      "simulate with dissipation and dephasing (defaults with --units ps: Gamma = 1 ns^-1, "
      "gamma = 7 ns^-1)");
  add_simulate_options(diss_cmd, diss);

  ScanCliOptions scan;
  auto* scan_cmd = app.add_subcommand(
      "scan", "Numerical minimum-time scan by bounded optimal control, with coincidence report");
  add_common(scan_cmd, scan.common, true);
  scan_cmd->remove_option(scan_cmd->get_option("--omega0"));
  scan_cmd->remove_option(scan_cmd->get_option("--omega0-rel"));
  scan_cmd->add_option("--omega0", scan.omega0s,
                       "Amplitudes to scan (omega_b units, or ps^-1 with --units ps)")
      ->delimiter(',');
  scan_cmd->add_option("--omega0-rel", scan.omega0s_rel, "Amplitudes as multiples of omega_b")
      ->delimiter(',');
  scan_cmd->add_option("--t-range", scan.t_range,
                       "Duration window lo,hi (1/omega_b or ps); default: around the analytic "
                       "minimum time")
      ->delimiter(',')
      ->expected(2);
  scan_cmd->add_option("--dT", scan.dT, "Duration step (default 0.01/omega_b, quick 0.05)");
  scan_cmd->add_option("--restarts", scan.restarts, "Random restarts per duration (default 8)");
  scan_cmd->add_option("--slices", scan.slices, "Control slices")->capture_default_str();
  scan_cmd->add_option("--threshold", scan.threshold, "Error threshold P_e for T_min")
      ->capture_default_str();
  scan_cmd->add_option("--seed", scan.seed, "Restart RNG seed")->capture_default_str();
  scan_cmd->add_option("--threads", scan.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  scan_cmd->add_flag("--quick", scan.quick, "Coarse run: dT = 0.05/omega_b, 2 restarts");
  scan_cmd->get_option("--out")->description("Output prefix for <prefix>_scan.csv and "
                                             "<prefix>_coincidence.csv (default: scan)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitDomain;
  }

  try {
    if (*design_cmd) return cmd_design(design, out);
    if (*sim_cmd) return cmd_simulate(sim, out);
    if (*diss_cmd) return cmd_simulate(diss, out);
    if (*scan_cmd) return cmd_scan(scan, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return (e.is_numerical() || e.kind() == ErrorKind::NoFeasibleT) ? kExitNumerical
                                                                      : kExitDomain;
  }
  return kExitOk;
}

}  // namespace qdprep::cli
