// Copyright 2026 The biasft Authors
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

// Command-line front end: simulate, bounds, optimize, channel, oracle,
// validate.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "biasft/bounds.hpp"
#include "biasft/channel.hpp"
#include "biasft/circuit.hpp"
#include "biasft/decoder.hpp"
#include "biasft/gadgets.hpp"
#include "biasft/kraus_io.hpp"
#include "biasft/noise_model.hpp"
#include "biasft/oracle.hpp"
#include "biasft/version.hpp"

namespace {

using nlohmann::json;
namespace ch = biasft::channel;

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::uint64_t parse_count(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v >= 1) || v != std::floor(v) || v > 1e18) {
    throw std::invalid_argument(std::string(what) + " must be a positive integer, got '" + text + "'");
  }
  return static_cast<std::uint64_t>(v);
}

/// Output sink: stdout or a file.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot write '" + path + "'");
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_header(std::ostream& out, const std::string& command, const json& config) {
  out << "# biasft " << biasft::kVersion << "\n";
  out << "# command: " << command << "\n";
  out << "# config: " << config.dump() << "\n";
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string gadget = "cnot";
  int n = 3;
  int k = 3;
  double c = 3.0;
  std::string trials = "1e5";
  std::uint64_t seed = 1;
  std::string rates = "table1";
  unsigned workers = 1;
  std::string leak_policy = "random-z";
  bool pre_teleport = false;
  std::string trace;
  std::string output;
};

int run_simulate(const SimulateArgs& a) {
  biasft::require_odd(a.n, "n");
  biasft::require_odd(a.k, "k");
  const std::uint64_t trials = parse_count(a.trials, "trials");
  const auto policy = biasft::parse_leak_policy(a.leak_policy);
  const auto rates = biasft::load_rates(a.rates);
  const auto gadget = biasft::build_gadget(a.gadget, a.n, a.k, {a.pre_teleport});
  if (a.workers < 1) throw std::invalid_argument("workers must be >= 1");

  if (!a.trace.empty()) {
    std::ofstream tr(a.trace);
    if (!tr) throw std::invalid_argument("cannot write '" + a.trace + "'");
    biasft::FrameSimulator sim(gadget.circuit, policy);
    sim.run_sampled(rates, a.seed, 0, &tr);
  }

  const auto est = biasft::estimate_logical_rates(gadget, rates, trials, a.seed, {a.workers, policy});
  const json config = {{"gadget", gadget.name}, {"n", a.n},         {"k", a.k},
                       {"c", a.c},              {"trials", trials}, {"seed", a.seed},
                       {"rates", a.rates},      {"workers", a.workers},
                       {"leak_policy", a.leak_policy},              {"pre_teleport", a.pre_teleport},
                       {"rate_table", biasft::to_json(rates)}};
  Sink sink(a.output);
  auto& out = sink.out();
  write_header(out, "simulate", config);
  out << "gadget,n,k,trials,seed,eps_L,eps_L_stderr,epsp_L,epsp_L_stderr\n";
  out << gadget.name << ',' << a.n << ',' << a.k << ',' << trials << ',' << a.seed << ','
      << num(est.eps_L.mean) << ',' << num(est.eps_L.std_error) << ',' << num(est.epsp_L.mean) << ','
      << num(est.epsp_L.std_error) << '\n';
  return 0;
}

// --- bounds / optimize -----------------------------------------------------

struct BoundsArgs {
  std::vector<double> bias;
  std::string eps_grid;
  int points = 21;
  double c = 3.0;
  std::string optimize;
  int n_max = 15;
  int n = 0;
  int k = 1;
  double t = 0.0;
  double eps = -1.0;
  double eps_leak = 0.0;
  std::string rates;
  std::string accounting = "blocks";
  std::string output;
};

biasft::NkConstraint parse_constraint(const std::string& s) {
  if (s == "n=k" || s == "equal") return biasft::NkConstraint::Equal;
  if (s == "free") return biasft::NkConstraint::Free;
  throw std::invalid_argument("--optimize must be 'n=k' or 'free', got '" + s + "'");
}

biasft::Accounting parse_accounting(const std::string& s) {
  if (s == "blocks") return biasft::Accounting::Blocks;
  if (s == "locations") return biasft::Accounting::Locations;
  throw std::invalid_argument("--accounting must be 'blocks' or 'locations'");
}

std::vector<double> log_grid(const std::string& spec, int points) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("--eps-grid must be lo:hi");
  const double lo = std::stod(spec.substr(0, colon));
  const double hi = std::stod(spec.substr(colon + 1));
  if (!(lo > 0 && hi >= lo)) throw std::invalid_argument("--eps-grid needs 0 < lo <= hi");
  if (points < 1) throw std::invalid_argument("--points must be >= 1");
  std::vector<double> out;
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out.push_back(lo * std::pow(hi / lo, f));
  }
  return out;
}

json bounds_config(const BoundsArgs& a) {
  return {{"bias", a.bias},   {"eps_grid", a.eps_grid}, {"points", a.points},    {"c", a.c},
          {"optimize", a.optimize}, {"n_max", a.n_max}, {"n", a.n},            {"k", a.k},
          {"t", a.t},         {"eps", a.eps},           {"eps_leak", a.eps_leak}, {"rates", a.rates},
          {"accounting", a.accounting}};
}

int run_bounds(const BoundsArgs& a, const std::string& command) {
  Sink sink(a.output);
  auto& out = sink.out();
  write_header(out, command, bounds_config(a));
  out << "eps,bias,c,n,k,eps_L,epsp_L,total\n";
  auto row = [&](double eps, double bias, double c, int n, int k, const biasft::BoundReport& r) {
    out << num(eps) << ',' << num(bias) << ',' << num(c) << ',' << n << ',' << k << ',' << num(r.eps_L)
        << ',' << num(r.epsp_L) << ',' << num(r.total) << '\n';
  };

  if (!a.rates.empty()) {
    const auto rates = biasft::load_rates(a.rates);
    const double eps = rates.at(biasft::OperationKind::Cphase, biasft::Species::A).eps;
    const double bias = rates.bias(biasft::OperationKind::Cphase, biasft::Species::A);
    if (!a.optimize.empty()) {
      const auto best = biasft::optimize_nk(rates, a.c, a.n_max, parse_constraint(a.optimize));
      row(eps, bias, a.c, best.n, best.k, best.bound);
    } else {
      if (a.n < 1) throw std::invalid_argument("--n is required without --optimize");
      row(eps, bias, a.c, a.n, a.k,
          biasft::cnot_bound(biasft::GadgetParams{a.n, a.k, a.c}, rates, parse_accounting(a.accounting)));
    }
    return 0;
  }

  if (!a.eps_grid.empty()) {
    if (a.bias.empty()) throw std::invalid_argument("--eps-grid needs at least one --bias");
    const auto grid = log_grid(a.eps_grid, a.points);
    for (double bias : a.bias) {
      for (double eps : grid) {
        if (!a.optimize.empty()) {
          const auto best = biasft::optimize_nk(eps, bias, a.c, a.n_max, parse_constraint(a.optimize));
          row(eps, bias, a.c, best.n, best.k, best.bound);
        } else {
          if (a.n < 1) throw std::invalid_argument("--n is required without --optimize");
          const biasft::BiasPoint p{eps, bias, a.c, a.n, a.k, a.eps_leak};
          row(eps, bias, a.c, a.n, a.k, biasft::cnot_bound(p));
        }
      }
    }
    return 0;
  }

  if (a.eps < 0) throw std::invalid_argument("give --eps, --eps-grid or --rates");
  if (a.n < 1) throw std::invalid_argument("--n is required");
  const double bias = a.bias.empty() ? std::numeric_limits<double>::infinity() : a.bias.front();
  if (a.t > 0) {
    // t given directly: report it as c with k = 1.
    const biasft::BiasPoint p{a.eps, bias, a.t, a.n, 1, a.eps_leak};
    row(a.eps, bias, a.t, a.n, 1, biasft::cnot_bound(p));
  } else {
    const biasft::BiasPoint p{a.eps, bias, a.c, a.n, a.k, a.eps_leak};
    row(a.eps, bias, a.c, a.n, a.k, biasft::cnot_bound(p));
  }
  return 0;
}

// --- channel ---------------------------------------------------------------

struct ChannelArgs {
  std::string builtin;
  std::string kraus;
  std::string input = "bell";
  std::string qubit;
  double amplitude_damping = -1.0;
  int restarts = 4;
  std::uint64_t seed = 1;
  std::string output;
};

int run_channel(const ChannelArgs& a) {
  json report;
  report["version"] = biasft::kVersion;
  report["config"] = {{"builtin", a.builtin}, {"kraus", a.kraus},   {"input", a.input},
                      {"qubit", a.qubit},     {"restarts", a.restarts}, {"seed", a.seed},
                      {"amplitude_damping", a.amplitude_damping}};
  const ch::DiamondSearch search{a.restarts, 20, a.seed};

  if (a.amplitude_damping >= 0) {
    if (!a.builtin.empty() || !a.kraus.empty()) {
      throw std::invalid_argument("--amplitude-damping cannot be combined with --builtin or --kraus");
    }
    const auto ad = ch::amplitude_damping<double>(a.amplitude_damping, search);
    report["gamma"] = a.amplitude_damping;
    report["other_rate"] = ad.other_rate;
    report["phase_rate"] = ad.phase_rate;
    report["phase_rate_is_lower_bound"] = true;
    report["c"] = ad.c;
    report["completeness_defect"] = ad.kraus.completeness_defect();
  } else {
    if (a.builtin.empty() == a.kraus.empty()) throw std::invalid_argument("give exactly one of --builtin or --kraus");
    if (!a.builtin.empty() && a.builtin != "cphase") {
      throw std::invalid_argument("unknown builtin channel '" + a.builtin + "'");
    }
    const auto kraus = a.builtin.empty() ? biasft::load_kraus(a.kraus) : ch::builtin_cphase_kraus<double>();
    const auto parts = ch::split_channel(kraus);
    const auto& layout = kraus.layout();

    std::vector<std::pair<std::string, ch::SandwichMap<double>>> maps;
    if (a.qubit.empty()) {
      maps = {{"E_d", parts.diagonal}, {"E_nd", parts.nondiagonal}, {"E_l", parts.leakage}};
      if (layout.qubits == 2) {
        maps.emplace_back("E_d_A", ch::split_diagonal_on_qubit(kraus, 0));
        maps.emplace_back("E_d_B", ch::split_diagonal_on_qubit(kraus, 1));
      }
    } else {
      if (layout.qubits != 2 || (a.qubit != "A" && a.qubit != "B")) {
        throw std::invalid_argument("--qubit must be A or B for a two-qubit channel");
      }
      maps = {{"E_d_" + a.qubit, ch::split_diagonal_on_qubit(kraus, a.qubit == "A" ? 0 : 1)}};
    }

    ch::Matrix<double> input;
    if (a.input == "bell") {
      if (layout.qubits != 2) throw std::invalid_argument("--input bell needs a two-qubit channel");
      input = ch::bell_input<double>(layout.flux);
    } else if (a.input == "max-entangled") {
      input = ch::maximally_entangled<double>(layout.dim());
    } else if (a.input != "search") {
      throw std::invalid_argument("--input must be bell, max-entangled or search");
    }

    report["qubits"] = layout.qubits;
    report["flux"] = layout.flux;
    report["completeness_defect"] = kraus.kraus_set().completeness_defect();
    for (const auto& [name, map] : maps) {
      json entry;
      if (a.input == "search") {
        entry["diamond_lower_bound"] = ch::diamond_lower_bound<double>(map, {}, search).value;
      } else {
        entry["input_distance"] = ch::input_distance<double>(map, input);
      }
      report["norms"][name] = entry;
    }
  }
  Sink sink(a.output);
  sink.out() << report.dump(2) << "\n";
  return 0;
}

// --- oracle ----------------------------------------------------------------

struct OracleArgs {
  std::string gadget = "teleport";
  int n = 3;
  int k = 1;
  int weight = 2;
  std::string rates = "table1";
  std::string leak_policy = "random-z";
  bool pre_teleport = false;
  std::string output;
};

int run_oracle(const OracleArgs& a) {
  const auto gadget = biasft::build_gadget(a.gadget, a.n, a.k, {a.pre_teleport});
  const auto rates = biasft::load_rates(a.rates);
  biasft::OracleOptions opts;
  opts.leak_policy = biasft::parse_leak_policy(a.leak_policy);
  const auto r = biasft::brute_force_oracle(gadget, rates, a.weight, opts);
  Sink sink(a.output);
  auto& out = sink.out();
  write_header(out, "oracle",
               {{"gadget", gadget.name}, {"n", a.n}, {"k", a.k}, {"weight", a.weight}, {"rates", a.rates},
                {"leak_policy", a.leak_policy}, {"sites", r.sites}, {"patterns", r.patterns},
                {"tail", r.tail}});
  out << "weight,probability,eps_L,epsp_L,z_patterns,x_patterns\n";
  for (int w = 0; w <= a.weight; ++w) {
    const auto i = static_cast<std::size_t>(w);
    out << w << ',' << num(r.weight_probability[i]) << ',' << num(r.z_by_weight[i]) << ','
        << num(r.x_by_weight[i]) << ',' << num(r.z_patterns[i]) << ',' << num(r.x_patterns[i]) << '\n';
  }
  out << "total," << num(1.0 - r.tail) << ',' << num(r.eps_L()) << ',' << num(r.epsp_L()) << ",,\n";
  return 0;
}

// --- validate --------------------------------------------------------------

struct ValidateArgs {
  std::string circuit;
  std::string gadget = "cnot";
  int n = 3;
  int k = 3;
  bool pre_teleport = false;
  std::string emit;
};

int run_validate(const ValidateArgs& a) {
  biasft::Gadget gadget;
  if (!a.circuit.empty()) {
    std::ifstream in(a.circuit);
    if (!in) throw std::invalid_argument("cannot open circuit file '" + a.circuit + "'");
    gadget = biasft::parse_text(in);
  } else {
    gadget = biasft::build_gadget(a.gadget, a.n, a.k, {a.pre_teleport});
  }
  if (!a.emit.empty()) {
    Sink sink(a.emit);
    biasft::write_text(sink.out(), gadget);
  }
  const auto violations = biasft::check_schedule(gadget);
  for (const auto& v : violations) {
    std::cout << "location " << v.location << ": " << v.rule << ": " << v.message << "\n";
  }
  if (!violations.empty()) {
    std::cerr << violations.size() << " schedule violation(s)\n";
    return kExitInvariant;
  }
  std::cout << "ok: " << gadget.name << " with " << gadget.circuit.num_qubits() << " qubits and "
            << gadget.circuit.size() << " locations\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biased-noise fault-tolerance toolkit"};
  app.set_version_flag("--version", std::string(biasft::kVersion));
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Monte Carlo logical error rates of a gadget");
  s->add_option("--gadget", sim.gadget, "teleport or cnot")->capture_default_str();
  s->add_option("--n", sim.n, "block size (odd)")->capture_default_str();
  s->add_option("--k", sim.k, "parity repetitions (odd)")->capture_default_str();
  s->add_option("--c", sim.c, "bound constant, recorded in the header")->capture_default_str();
  s->add_option("--trials", sim.trials, "number of trials, e.g. 1e6")->capture_default_str();
  s->add_option("--seed", sim.seed)->capture_default_str();
  s->add_option("--rates", sim.rates, "table1, zero or a JSON file")->capture_default_str();
  s->add_option("--workers", sim.workers)->capture_default_str();
  s->add_option("--leak-policy", sim.leak_policy, "random-z, always-z or never-z")->capture_default_str();
  s->add_flag("--pre-teleport", sim.pre_teleport, "teleport CNOT inputs first");
  s->add_option("--trace", sim.trace, "write a per-location trace of trial 0");
  s->add_option("-o,--output", sim.output, "output CSV (default stdout)");

  BoundsArgs bnd;
  auto add_bounds_options = [&](CLI::App* b) {
    b->add_option("--bias", bnd.bias, "eps / eps' (repeatable)");
    b->add_option("--eps-grid", bnd.eps_grid, "log-spaced sweep lo:hi");
    b->add_option("--points", bnd.points, "sweep points")->capture_default_str();
    b->add_option("--c", bnd.c, "t = c k")->capture_default_str();
    b->add_option("--n-max", bnd.n_max, "largest n, k searched")->capture_default_str();
    b->add_option("--n", bnd.n);
    b->add_option("--k", bnd.k)->capture_default_str();
    b->add_option("--t", bnd.t, "locations per qubit, overrides c k");
    b->add_option("--eps", bnd.eps, "phase rate");
    b->add_option("--eps-leak", bnd.eps_leak)->capture_default_str();
    b->add_option("--rates", bnd.rates, "table1, zero or a JSON file");
    b->add_option("--accounting", bnd.accounting, "blocks or locations")->capture_default_str();
    b->add_option("-o,--output", bnd.output);
  };
  auto* b = app.add_subcommand("bounds", "Evaluate or sweep the logical error bounds");
  add_bounds_options(b);
  b->add_option("--optimize", bnd.optimize, "n=k or free");
  auto* opt = app.add_subcommand("optimize", "Best (n, k) for a rate table or operating point");
  add_bounds_options(opt);
  std::string constraint = "free";
  opt->add_option("--constraint", constraint, "n=k or free")->capture_default_str();

  ChannelArgs chn;
  auto* c = app.add_subcommand("channel", "Channel decomposition and norms");
  c->add_option("--builtin", chn.builtin, "cphase");
  c->add_option("--kraus", chn.kraus, "classified Kraus JSON file");
  c->add_option("--input", chn.input, "bell, max-entangled or search")->capture_default_str();
  c->add_option("--qubit", chn.qubit, "A or B: phase part acting on one qubit");
  c->add_option("--amplitude-damping", chn.amplitude_damping, "decay probability gamma");
  c->add_option("--restarts", chn.restarts, "random restarts of the norm search")->capture_default_str();
  c->add_option("--seed", chn.seed)->capture_default_str();
  c->add_option("-o,--output", chn.output);

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "Exact fault enumeration up to a weight");
  o->add_option("--gadget", orc.gadget)->capture_default_str();
  o->add_option("--n", orc.n)->capture_default_str();
  o->add_option("--k", orc.k)->capture_default_str();
  o->add_option("--weight", orc.weight)->capture_default_str();
  o->add_option("--rates", orc.rates)->capture_default_str();
  o->add_option("--leak-policy", orc.leak_policy)->capture_default_str();
  o->add_flag("--pre-teleport", orc.pre_teleport);
  o->add_option("-o,--output", orc.output);

  ValidateArgs val;
  auto* v = app.add_subcommand("validate", "Schedule checks for a gadget or circuit file");
  v->add_option("--circuit", val.circuit, "circuit text file");
  v->add_option("--gadget", val.gadget)->capture_default_str();
  v->add_option("--n", val.n)->capture_default_str();
  v->add_option("--k", val.k)->capture_default_str();
  v->add_flag("--pre-teleport", val.pre_teleport);
  v->add_option("--emit", val.emit, "write the circuit in text form");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (s->parsed()) return run_simulate(sim);
    if (b->parsed()) return run_bounds(bnd, "bounds");
    if (opt->parsed()) {
      bnd.optimize = constraint;
      parse_constraint(bnd.optimize);
      if (bnd.rates.empty() && bnd.eps < 0) bnd.rates = "table1";
      if (bnd.eps >= 0) {
        if (bnd.bias.empty()) throw std::invalid_argument("optimize with --eps needs --bias");
        bnd.eps_grid = num(bnd.eps) + ":" + num(bnd.eps);
        bnd.points = 1;
      }
      return run_bounds(bnd, "optimize");
    }
    if (c->parsed()) return run_channel(chn);
    if (o->parsed()) return run_oracle(orc);
    if (v->parsed()) return run_validate(val);
  } catch (const biasft::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
