// Copyright 2026 The CAMPS Simulator Authors
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

#include "cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "camps/analytics.hpp"
#include "camps/engine.hpp"
#include "camps/errors.hpp"
#include "camps/hamiltonian.hpp"
#include "json.hpp"

namespace camps::cli {
namespace {

using nlohmann::json;

constexpr const char* kTrajectorySchema = "camps-trajectory v1";
constexpr const char* kSummarySchema = "camps-summary v1";
constexpr const char* kAnalyticsSchema = "camps-analytics v1";
constexpr const char* kTrajectoryColumns =
    "instance,step,time,max_ee_mps,max_ee_state,sre_density,max_bond,sweeps,max_ee_backprop";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : std::string(); }

// diag(1, e^{i theta}) equals exp(-i theta/2 Z) up to phase.
PhaseGateSpec parse_gate(const std::string& kind) {
  if (kind == "t") return PhaseGateSpec::t();
  if (kind == "sqrt_t") return PhaseGateSpec::sqrt_t();
  if (kind.rfind("phase:", 0) == 0) {
    const std::string value = kind.substr(6);
    std::size_t used = 0;
    double theta = 0.0;
    try {
      theta = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size() || !std::isfinite(theta)) {
      throw ConfigError("--gate: cannot parse angle in '" + kind + "'");
    }
    if (!(theta > -2.0 * M_PI) || theta > 2.0 * M_PI) throw ConfigError("--gate: phase angle must lie in (-2pi, 2pi]");
    return {-theta / 2.0, PauliAxis::Z, 0};
  }
  throw ConfigError("--gate must be t, sqrt_t or phase:<theta>, got '" + kind + "'");
}

struct Output {
  std::string path;
  bool force = false;
};

void write_atomically(const std::filesystem::path& target, const std::string& contents) {
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open '" + tmp.string() + "' for writing");
    f << contents;
    f.flush();
    if (!f) throw ConfigError("failed writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ConfigError("cannot move output into place at '" + target.string() + "': " + ec.message());
  }
}

void emit(const Output& o, const std::string& csv, const json& sidecar, std::ostream& out) {
  if (o.path.empty()) {
    out << csv;
    return;
  }
  const std::filesystem::path csv_path(o.path);
  const std::filesystem::path json_path(o.path + ".json");
  if (!o.force && (std::filesystem::exists(csv_path) || std::filesystem::exists(json_path))) {
    throw ConfigError("output '" + o.path + "' exists; pass --force to overwrite");
  }
  write_atomically(csv_path, csv);
  write_atomically(json_path, sidecar.dump(2) + "\n");
}

json sidecar_base(const std::string& subcommand, const std::vector<std::string>& args) {
  return json{{"tool", "camps"}, {"version", CAMPS_VERSION}, {"subcommand", subcommand}, {"argv", args}};
}

// ---------------------------------------------------------------- circuit

struct CircuitArgs {
  std::size_t n = 8;
  std::size_t steps = 12;
  std::string gate = "t";
  std::size_t instances = 1;
  std::uint64_t seed = 0;
  std::size_t chi_max = 256;
  double svd_cutoff = 1e-12;
  double tol = 1e-10;
  std::size_t max_sweeps = 100;
  std::string schedule = "back_and_forth";
  bool track_state = false;
};

std::string circuit_csv(const CircuitArgs& a, const std::vector<CircuitInstanceResult>& results) {
  std::ostringstream s;
  s << "# " << kTrajectorySchema << " experiment=circuit n=" << a.n << " steps=" << a.steps << " gate=" << a.gate
    << " instances=" << a.instances << " seed=" << a.seed << "\n";
  s << kTrajectoryColumns << "\n";
  for (const auto& inst : results) {
    for (const auto& r : inst.steps) {
      s << r.instance << ',' << r.step << ",," << fmt(r.max_ee_mps) << ',' << fmt(r.max_ee_state) << ','
        << fmt(r.sre_density) << ',' << r.max_bond << ',' << r.sweeps << ",\n";
    }
  }
  return s.str();
}

int run_circuit(const CircuitArgs& a, std::size_t threads, const Output& o, const std::vector<std::string>& args,
                std::ostream& out) {
  if (a.n < 2) throw ConfigError("--n must be at least 2");
  if (a.track_state && a.n > 12) throw ConfigError("--track-state needs --n <= 12");
  DopedCircuitConfig cfg;
  cfg.n = a.n;
  cfg.steps = a.steps;
  cfg.gate = parse_gate(a.gate);
  cfg.instances = a.instances;
  cfg.seed = a.seed;
  cfg.truncation = {a.chi_max, a.svd_cutoff};
  cfg.disentangle.tol = a.tol;
  cfg.disentangle.max_sweeps = a.max_sweeps;
  cfg.disentangle.schedule = a.schedule == "random_order" ? SweepSchedule::random_order : SweepSchedule::back_and_forth;
  cfg.track_state = a.track_state;
  cfg.threads = threads;
  const auto results = run_doped_circuit(cfg);

  json side = sidecar_base("circuit", args);
  side["schema"] = kTrajectorySchema;
  side["threads"] = threads;
  side["config"] = {{"n", a.n},
                    {"steps", a.steps},
                    {"gate", a.gate},
                    {"instances", a.instances},
                    {"seed", a.seed},
                    {"chi_max", a.chi_max},
                    {"svd_cutoff", a.svd_cutoff},
                    {"tol", a.tol},
                    {"max_sweeps", a.max_sweeps},
                    {"schedule", a.schedule},
                    {"track_state", a.track_state}};
  emit(o, circuit_csv(a, results), side, out);
  return kExitOk;
}

// ------------------------------------------------------------ hamiltonian

struct HamiltonianArgs {
  QuenchConfig cfg;
  std::uint64_t seed = 0;
  std::string variant = "two_site";
};

int run_hamiltonian(HamiltonianArgs a, const Output& o, const std::vector<std::string>& args, std::ostream& out) {
  a.cfg.variant = a.variant == "one_site" ? TdvpVariant::one_site : TdvpVariant::two_site;
  a.cfg.disentangle.seed = a.seed;
  try {
    a.cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto records = evolve_camps(a.cfg);
  const QuenchConfig& c = a.cfg;

  std::ostringstream s;
  s << "# " << kTrajectorySchema << " experiment=hamiltonian n=" << c.n << " J=" << fmt(c.J) << " hx=" << fmt(c.h_x)
    << " hz=" << fmt(c.h_z) << " dt=" << fmt(c.dt) << " t_max=" << fmt(c.t_max) << " seed=" << a.seed << "\n";
  s << kTrajectoryColumns << "\n";
  for (const auto& r : records) {
    s << 0 << ',' << r.step << ',' << fmt(r.time) << ',' << fmt(r.max_ee_mps) << ',' << fmt(r.max_ee_state) << ','
      << fmt(r.sre_density) << ',' << r.max_bond << ',' << r.sweeps << ',' << fmt(r.max_ee_backprop) << "\n";
  }

  json side = sidecar_base("hamiltonian", args);
  side["schema"] = kTrajectorySchema;
  side["config"] = {{"n", c.n},
                    {"J", c.J},
                    {"hx", c.h_x},
                    {"hz", c.h_z},
                    {"dt", c.dt},
                    {"t_max", c.t_max},
                    {"chi_max", c.chi_max},
                    {"svd_cutoff", c.svd_cutoff},
                    {"disentangle_every", c.disentangle_every},
                    {"variant", a.variant},
                    {"trotter_dt", c.trotter_dt},
                    {"seed", a.seed}};
  emit(o, s.str(), side, out);
  return kExitOk;
}

// -------------------------------------------------------------- analytics

int run_analytics(std::size_t n, const Output& o, const std::vector<std::string>& args, std::ostream& out) {
  if (n < 1) throw ConfigError("--n must be at least 1");
  const DisentanglableDistribution d = disentanglable_dist(n);
  std::ostringstream s;
  s << "# " << kAnalyticsSchema << " n=" << n << "\n";
  s << "t,pr_n,pr_asymptotic\n";
  for (std::size_t t = 0; t <= n; ++t) s << t << ',' << fmt(d.probs[t]) << ',' << fmt(asymptotic_pr(n - t)) << "\n";
  json side = sidecar_base("analytics", args);
  side["schema"] = kAnalyticsSchema;
  side["config"] = {{"n", n}};
  emit(o, s.str(), side, out);
  return kExitOk;
}

// -------------------------------------------------------------- summarize

struct Row {
  std::size_t instance = 0;
  std::size_t step = 0;
  std::string time;
  std::vector<std::optional<double>> values;  // max_ee_mps .. max_ee_backprop
};

struct Table {
  std::map<std::string, std::string> meta;
  std::vector<Row> rows;
};

constexpr const char* kValueColumns[] = {"max_ee_mps", "max_ee_state", "sre_density",
                                         "max_bond",   "sweeps",       "max_ee_backprop"};
constexpr std::size_t kNumValues = std::size(kValueColumns);

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream s(line);
  while (std::getline(s, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

Table read_trajectory(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read '" + path + "'");
  Table t;
  std::string line;
  const std::string prefix = std::string("# ") + kTrajectorySchema;
  if (!std::getline(f, line) || line.rfind(prefix, 0) != 0) throw ConfigError(path + ": not a " + kTrajectorySchema + " file");
  for (const auto& kv : split(line.substr(prefix.size()), ' ')) {
    const auto eq = kv.find('=');
    if (eq != std::string::npos) t.meta[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  if (!std::getline(f, line) || line != kTrajectoryColumns) throw ConfigError(path + ": unexpected column header");
  std::size_t lineno = 2;
  while (std::getline(f, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 9) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 9 fields");
    try {
      Row r;
      r.instance = std::stoull(fields[0]);
      r.step = std::stoull(fields[1]);
      r.time = fields[2];
      for (std::size_t k = 0; k < kNumValues; ++k) {
        const std::string& v = fields[3 + k];
        r.values.push_back(v.empty() ? std::nullopt : std::optional<double>(std::stod(v)));
      }
      t.rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  return t;
}

struct Moments {
  std::size_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  void add(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }
  double mean() const { return sum / static_cast<double>(count); }
  // Population convention (divide by count).
  double stddev() const { return std::sqrt(std::max(0.0, sum_sq / static_cast<double>(count) - mean() * mean())); }
};

int run_summarize(const std::vector<std::string>& paths, const Output& o, const std::vector<std::string>& args,
                  std::ostream& out) {
  std::vector<Table> tables;
  for (const auto& p : paths) tables.push_back(read_trajectory(p));
  const auto& ref = tables.front().meta;
  for (std::size_t i = 1; i < tables.size(); ++i) {
    if (tables[i].meta.at("experiment") != ref.at("experiment") || tables[i].meta.at("n") != ref.at("n")) {
      throw ConfigError("schema mismatch between '" + paths.front() + "' and '" + paths[i] + "'");
    }
  }
  const std::string experiment = ref.at("experiment");
  const std::size_t n = std::stoull(ref.at("n"));

  // Deterministic accumulation: files in argument order, rows in file order.
  std::map<std::size_t, std::string> times;
  std::map<std::size_t, std::array<Moments, kNumValues>> per_step;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<const Row*>> instances;
  for (std::size_t f = 0; f < tables.size(); ++f) {
    for (const Row& r : tables[f].rows) {
      times.emplace(r.step, r.time);
      auto& m = per_step[r.step];
      for (std::size_t k = 0; k < kNumValues; ++k) {
        if (r.values[k]) m[k].add(*r.values[k]);
      }
      instances[{f, r.instance}].push_back(&r);
    }
  }

  std::ostringstream s;
  s << "# " << kSummarySchema << " experiment=" << experiment << " n=" << n << " instances=" << instances.size();
  if (experiment == "circuit") {
    Moments gap;
    for (auto& [key, rows] : instances) {
      std::sort(rows.begin(), rows.end(), [](const Row* a, const Row* b) { return a->step < b->step; });
      std::size_t t_star = rows.back()->step;
      for (const Row* r : rows) {
        if (r->step > 0 && *r->values[0] > kDisentangledThreshold) {
          t_star = r->step - 1;
          break;
        }
      }
      gap.add(static_cast<double>(n) - static_cast<double>(t_star));
    }
    s << " gap_mean=" << fmt(gap.mean()) << " gap_std=" << fmt(gap.stddev());
  }
  s << "\nstep,time,count";
  for (const char* c : kValueColumns) s << ',' << c << "_mean," << c << "_std";
  s << "\n";
  for (const auto& [step, m] : per_step) {
    s << step << ',' << times.at(step) << ',' << m[0].count;
    for (const Moments& v : m) {
      if (v.count == 0) {
        s << ",,";
      } else {
        s << ',' << fmt(v.mean()) << ',' << fmt(v.stddev());
      }
    }
    s << "\n";
  }
  json side = sidecar_base("summarize", args);
  side["schema"] = kSummarySchema;
  side["inputs"] = paths;
  emit(o, s.str(), side, out);
  return kExitOk;
}

void add_output_options(CLI::App* sub, Output& o) {
  sub->add_option("--out", o.path, "Write CSV here (atomically) plus a JSON sidecar at <out>.json");
  sub->add_flag("--force", o.force, "Overwrite existing output files");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clifford-augmented MPS experiments", "camps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CAMPS_VERSION);
  std::size_t threads = 1;
  app.add_option("--threads", threads, "Worker threads for instance-parallel runs")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  Output o;

  CircuitArgs ca;
  CLI::App* circuit = app.add_subcommand("circuit", "Random Clifford circuits doped with phase gates");
  circuit->add_option("--n", ca.n, "Qubits")->check(CLI::Range(2, 64))->capture_default_str();
  circuit->add_option("--steps", ca.steps, "Phase gates per instance")->check(CLI::PositiveNumber)->capture_default_str();
  circuit->add_option("--gate", ca.gate, "t, sqrt_t or phase:<theta> for diag(1, e^{i theta})")->capture_default_str();
  circuit->add_option("--instances", ca.instances, "Random instances")->check(CLI::PositiveNumber)->capture_default_str();
  circuit->add_option("--seed", ca.seed, "Master seed")->required();
  circuit->add_option("--chi-max", ca.chi_max, "Maximum bond dimension")->check(CLI::PositiveNumber)->capture_default_str();
  circuit->add_option("--svd-cutoff", ca.svd_cutoff, "Relative discarded-weight cutoff")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  circuit->add_option("--tol", ca.tol, "Minimum entropy gain for accepting a disentangler")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  circuit->add_option("--max-sweeps", ca.max_sweeps, "Disentangler sweep limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  circuit->add_option("--schedule", ca.schedule, "Disentangler pair order")
      ->check(CLI::IsMember({"back_and_forth", "random_order"}))
      ->capture_default_str();
  circuit->add_flag("--track-state", ca.track_state, "Also record the physical entanglement (n <= 12)");
  add_output_options(circuit, o);

  HamiltonianArgs ha;
  CLI::App* ham = app.add_subcommand("hamiltonian", "Ising quench from |y+>^n");
  ham->add_option("--n", ha.cfg.n, "Qubits")->check(CLI::Range(2, 64))->capture_default_str();
  ham->add_option("--J", ha.cfg.J, "XX coupling")->capture_default_str();
  ham->add_option("--hx", ha.cfg.h_x, "Transverse field")->capture_default_str();
  ham->add_option("--hz", ha.cfg.h_z, "Longitudinal field")->capture_default_str();
  ham->add_option("--dt", ha.cfg.dt, "Time step")->check(CLI::PositiveNumber)->capture_default_str();
  ham->add_option("--t-max", ha.cfg.t_max, "Final time")->check(CLI::PositiveNumber)->capture_default_str();
  ham->add_option("--chi-max", ha.cfg.chi_max, "Maximum bond dimension")->check(CLI::PositiveNumber)->capture_default_str();
  ham->add_option("--svd-cutoff", ha.cfg.svd_cutoff, "Relative discarded-weight cutoff")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  ham->add_option("--disentangle-every", ha.cfg.disentangle_every, "Disentangle every k steps; 0 disables")
      ->capture_default_str();
  ham->add_option("--variant", ha.variant, "TDVP variant")
      ->check(CLI::IsMember({"two_site", "one_site"}))
      ->capture_default_str();
  ham->add_option("--trotter-dt", ha.cfg.trotter_dt, "Back-propagation Trotter step; 0 disables")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  ham->add_option("--seed", ha.seed, "Seed, recorded for provenance")->required();
  add_output_options(ham, o);

  std::size_t an = 8;
  CLI::App* analytics = app.add_subcommand("analytics", "Distribution of the last disentanglable step");
  analytics->add_option("--n", an, "Qubits")->check(CLI::PositiveNumber)->capture_default_str();
  add_output_options(analytics, o);

  std::vector<std::string> inputs;
  CLI::App* summarize = app.add_subcommand("summarize", "Per-step mean and population std across instances");
  summarize->add_option("inputs", inputs, "Trajectory CSV files")->required()->check(CLI::ExistingFile);
  add_output_options(summarize, o);

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  if (storage.empty()) storage.emplace_back("camps");
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << CAMPS_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "camps: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (*circuit) return run_circuit(ca, threads, o, storage, out);
    if (*ham) return run_hamiltonian(ha, o, storage, out);
    if (*analytics) return run_analytics(an, o, storage, out);
    return run_summarize(inputs, o, storage, out);
  } catch (const ConfigError& e) {
    err << "camps: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "camps: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "camps: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "camps: numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace camps::cli
