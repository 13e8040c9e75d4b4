// Copyright 2026 The spacetime-qlab Authors
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

// Command line runner for the spacetime correlation library.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stq/channels.hpp"
#include "stq/cv_wigner.hpp"
#include "stq/gaussian.hpp"
#include "stq/histories.hpp"
#include "stq/otoc.hpp"
#include "stq/pdm.hpp"
#include "stq/process_matrix.hpp"
#include "stq/timecrystal.hpp"

using json = nlohmann::ordered_json;
using namespace stq;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitIo = 4;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "auto";
  std::string out;
  std::optional<std::uint64_t> seed;
  double tol = 1e-10;
};

// Result of one command: parameters, scalar fields and an optional table.
struct Result {
  std::string command;
  json params = json::object();
  json fields = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  int status = 0;
};

std::uint64_t require_seed(const Globals& g, const std::string& what) {
  if (!g.seed) throw DomainError(what + " is stochastic and needs --seed");
  return *g.seed;
}

CMatrix hadamard_gate() {
  CMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

CMatrix parse_state(const std::string& s, const Globals& g) {
  if (s == "zero") return ket_bra(2, 0, 0);
  if (s == "one") return ket_bra(2, 1, 1);
  if (s == "plus") return 0.5 * (identity(2) + pauli(1));
  if (s == "mixed") return identity(2) / 2.0;
  if (s == "random") return random_density_matrix(2, require_seed(g, "random state"));
  throw DomainError("unknown state '" + s + "' (zero|one|plus|mixed|random)");
}

std::pair<std::string, double> split_param(const std::string& s) {
  const auto pos = s.find(':');
  if (pos == std::string::npos) return {s, NAN};
  try {
    return {s.substr(0, pos), std::stod(s.substr(pos + 1))};
  } catch (const std::exception&) {
    throw DomainError("bad numeric parameter in '" + s + "'");
  }
}

KrausChannel parse_channel(const std::string& s, const Globals& g, int index = 0) {
  const auto [name, value] = split_param(s);
  auto need = [&](double v) {
    if (std::isnan(v)) throw DomainError("channel '" + name + "' needs ':value'");
    return v;
  };
  if (name == "identity") return identity_channel(2);
  if (name == "hadamard") return unitary_channel(hadamard_gate());
  if (name == "x") return unitary_channel(pauli(1));
  if (name == "depolarizing") return depolarizing(need(value));
  if (name == "dephasing") return dephasing(need(value));
  if (name == "random") {
    const int env = std::isnan(value) ? 2 : static_cast<int>(value);
    return random_channel(2, env, require_seed(g, "random channel") + 7919 * index);
  }
  throw DomainError("unknown channel '" + s +
                    "' (identity|hadamard|x|depolarizing:p|dephasing:l|random[:k])");
}

std::vector<KrausChannel> parse_steps(const std::string& s, const Globals& g) {
  std::vector<KrausChannel> out;
  std::stringstream ss(s);
  std::string item;
  int k = 0;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_channel(item, g, k++));
  }
  return out;
}

PauliString parse_paulis(const std::string& s) {
  try {
    return PauliString::from_label(s);
  } catch (const Error&) {
    throw DomainError("Pauli labels must use I, X, Y, Z");
  }
}

CMatrix pauli_named(const std::string& s) {
  if (s.size() != 1) throw DomainError("observable must be one of I, X, Y, Z");
  return pauli_operator(parse_paulis(s));
}

void matrix_rows(Result& r, const CMatrix& m) {
  r.columns = {"row", "col", "re", "im"};
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      r.rows.push_back({i, j, m(i, j).real(), m(i, j).imag()});
    }
  }
}

void real_matrix_rows(Result& r, const RMatrix& m) {
  r.columns = {"row", "col", "value"};
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) r.rows.push_back({i, j, m(i, j)});
  }
}

void series_rows(Result& r, const CorrelationSeries& s, const std::string& index) {
  r.columns = {index, "corr"};
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    r.rows.push_back({static_cast<long>(k) + s.first_index, s.values[k]});
  }
}

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  if (std::abs(x) < 1e-4) {
    std::snprintf(buf, sizeof(buf), "%.6e", x);
  } else {
    std::snprintf(buf, sizeof(buf), "%.12g", x);
  }
  return buf;
}

std::string csv_cell(const json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string render(const Result& r, std::string format) {
  // Series default to CSV; everything carrying scalar fields defaults to JSON.
  if (format == "auto") format = r.fields.empty() && !r.columns.empty() ? "csv" : "json";
  if (format == "json") {
    json doc;
    doc["command"] = r.command;
    doc["params"] = r.params;
    for (const auto& [k, v] : r.fields.items()) doc[k] = v;
    if (!r.columns.empty()) {
      json rows = json::array();
      for (const auto& row : r.rows) {
        json o;
        for (std::size_t c = 0; c < r.columns.size(); ++c) o[r.columns[c]] = row[c];
        rows.push_back(o);
      }
      doc["rows"] = rows;
    }
    return doc.dump(2) + "\n";
  }
  // CSV: every row repeats the parameters that produced it.
  std::vector<std::string> header;
  std::vector<json> prefix;
  for (const auto& [k, v] : r.params.items()) {
    header.push_back(k);
    prefix.push_back(v);
  }
  std::vector<std::vector<json>> body;
  if (!r.columns.empty()) {
    for (const auto& c : r.columns) header.push_back(c);
    for (const auto& row : r.rows) {
      auto line = prefix;
      line.insert(line.end(), row.begin(), row.end());
      body.push_back(line);
    }
  } else {
    auto line = prefix;
    for (const auto& [k, v] : r.fields.items()) {
      header.push_back(k);
      line.push_back(v);
    }
    body.push_back(line);
  }
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += (i ? "," : "") + header[i];
  }
  out += "\n";
  for (const auto& line : body) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out += (i ? "," : "") + csv_cell(line[i]);
    }
    out += "\n";
  }
  return out;
}

void emit(const Result& r, const Globals& g) {
  const std::string text = render(r, g.format);
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw IoError("cannot open '" + g.out + "' for writing");
  f << text;
  if (!f) throw IoError("failed writing '" + g.out + "'");
}

struct CommandInfo {
  std::string group;
  std::string name;
  std::string help;
};

class Runner {
 public:
  explicit Runner(CLI::App& app) : app_(app) {}

  // Registers a subcommand; `body` fills a Result when the command runs.
  CLI::App* add(const std::string& group, const std::string& name,
                const std::string& help, std::function<Result()> body) {
    CLI::App* grp = groups_.count(group) ? groups_[group] : nullptr;
    if (!grp) {
      grp = app_.add_subcommand(group, group + " commands");
      grp->require_subcommand(1);
      grp->fallthrough();
      groups_[group] = grp;
    }
    CLI::App* sub = grp->add_subcommand(name, help);
    sub->fallthrough();
    catalog_.push_back({group, name, help});
    sub->callback([this, group, name, body]() {
      selected_ = [group, name, body]() {
        Result r = body();
        r.command = group + " " + name;
        return r;
      };
    });
    return sub;
  }

  const std::vector<CommandInfo>& catalog() const { return catalog_; }
  const std::function<Result()>& selected() const { return selected_; }
  const std::map<std::string, CLI::App*>& groups() const { return groups_; }

 private:
  CLI::App& app_;
  std::map<std::string, CLI::App*> groups_;
  std::vector<CommandInfo> catalog_;
  std::function<Result()> selected_;
};

json option_schema(const CLI::App* sub) {
  json out = json::array();
  for (const auto* opt : sub->get_options()) {
    if (opt->get_name() == "--help") continue;
    json o{{"name", opt->get_name()}, {"help", opt->get_description()}};
    o["type"] = opt->get_type_size() == 0 ? "flag" : "value";
    if (!opt->get_default_str().empty()) o["default"] = opt->get_default_str();
    out.push_back(o);
  }
  return out;
}

std::string option_summary(const CLI::App* sub) {
  std::string s;
  for (const auto& o : option_schema(sub)) {
    if (!s.empty()) s += " ";
    s += o["name"].get<std::string>();
    if (o.contains("default")) s += "=" + o["default"].get<std::string>();
  }
  return s;
}

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                         prev[j - 1] + (a[i - 1] != b[j - 1] ? 1 : 0)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string suggest(const std::string& word, const std::vector<std::string>& names) {
  std::string best;
  int best_d = 1 << 30;
  for (const auto& n : names) {
    const int d = edit_distance(word, n);
    if (d < best_d) {
      best_d = d;
      best = n;
    }
  }
  return best;
}

// Expands --config FILE into flags placed before the user's own flags.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  if (std::next(it) == args.end()) throw DomainError("--config needs a path");
  const std::string path = *std::next(it);
  args.erase(it, it + 2);
  std::ifstream f(path);
  if (!f) throw IoError("cannot read config '" + path + "'");
  json cfg;
  try {
    cfg = json::parse(f);
  } catch (const json::exception& e) {
    throw DomainError(std::string("config is not valid JSON: ") + e.what());
  }
  std::vector<std::string> out;
  if (cfg.contains("command")) {
    std::stringstream ss(cfg["command"].get<std::string>());
    std::string w;
    while (ss >> w) out.push_back(w);
  }
  for (const char* key : {"format", "out", "seed", "tol"}) {
    if (cfg.contains(key)) {
      out.push_back(std::string("--") + key);
      out.push_back(cfg[key].is_string() ? cfg[key].get<std::string>()
                                          : cfg[key].dump());
    }
  }
  if (cfg.contains("params")) {
    for (const auto& [k, v] : cfg["params"].items()) {
      out.push_back("--" + k);
      out.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
  }
  // Positional command words given on the command line win over the file.
  std::size_t first_flag = 0;
  while (first_flag < args.size() && args[first_flag].rfind("-", 0) != 0) {
    ++first_flag;
  }
  if (first_flag > 0) {
    std::size_t cfg_words = 0;
    while (cfg_words < out.size() && out[cfg_words].rfind("-", 0) != 0) ++cfg_words;
    out.erase(out.begin(), out.begin() + cfg_words);
    out.insert(out.begin(), args.begin(), args.begin() + first_flag);
    args.erase(args.begin(), args.begin() + first_flag);
  }
  out.insert(out.end(), args.begin(), args.end());
  return out;
}

void register_commands(Runner& run, Globals& g) {
  // ---- pdm
  {
    static std::string state = "zero", steps = "identity", paulis = "ZZ";
    auto build_process = [&g]() {
      return TemporalProcess{parse_state(state, g), parse_steps(steps, g)};
    };
    auto add_common = [](CLI::App* s) {
      s->add_option("--state", state, "initial qubit state")->capture_default_str();
      s->add_option("--steps", steps, "comma-separated channels between times")
          ->capture_default_str();
    };
    auto params = [] { return json{{"state", state}, {"steps", steps}}; };
    add_common(run.add("pdm", "build", "pseudo-density matrix of a qubit process",
                       [=]() {
                         Result r;
                         r.params = params();
                         const PDM p = build_pdm(build_process());
                         r.fields["n_events"] = p.n_events;
                         matrix_rows(r, p.matrix);
                         return r;
                       }));
    add_common(run.add("pdm", "eigen", "eigenvalues of the PDM", [=]() {
      Result r;
      r.params = params();
      const PDM p = build_pdm(build_process());
      RVector ev = hermitian_eigenvalues(p.matrix);
      std::sort(ev.data(), ev.data() + ev.size());
      json list = json::array();
      for (long k = 0; k < ev.size(); ++k) list.push_back(ev(k));
      r.fields["eigenvalues"] = list;
      r.columns = {"index", "eigenvalue"};
      for (long k = 0; k < ev.size(); ++k) r.rows.push_back({k, ev(k)});
      return r;
    }));
    auto* corr = run.add("pdm", "correlation", "event correlation of a Pauli string",
                         [=]() {
                           Result r;
                           r.params = params();
                           r.params["paulis"] = paulis;
                           r.fields["corr"] =
                               event_correlation(build_process(), parse_paulis(paulis));
                           return r;
                         });
    add_common(corr);
    corr->add_option("--paulis", paulis, "one Pauli label per event")
        ->capture_default_str();
    add_common(run.add("pdm", "monotone", "causality monotone ||R||_1 - 1", [=]() {
      Result r;
      r.params = params();
      r.fields["monotone"] = causality_monotone(build_pdm(build_process()));
      return r;
    }));
    add_common(run.add("pdm", "tetra", "correlation tetrahedron membership", [=]() {
      Result r;
      r.params = params();
      const auto t = tetrahedron_point(build_process());
      const auto c = classify(t);
      r.fields["t11"] = t.t11;
      r.fields["t22"] = t.t22;
      r.fields["t33"] = t.t33;
      r.fields["in_spatial"] = c.in_spatial;
      r.fields["in_temporal"] = c.in_temporal;
      return r;
    }));
  }

  // ---- gaussian
  {
    static std::string kind = "vacuum";
    static double nbar = 0.0, r_sq = 0.0, theta = 0.0, squeeze = 0.0, noise = 0.0;
    auto initial = [] {
      if (kind == "vacuum") return vacuum(1);
      if (kind == "thermal") return thermal(nbar);
      if (kind == "tmss") return two_mode_squeezed(r_sq);
      throw DomainError("unknown Gaussian state '" + kind + "' (vacuum|thermal|tmss)");
    };
    auto step = [] {
      GaussianStep s;
      Eigen::Matrix2d rot, sq;
      rot << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
      sq << std::exp(-squeeze), 0, 0, std::exp(squeeze);
      s.symplectic = rot * sq;
      s.noise = noise * Eigen::Matrix2d::Identity();
      return s;
    };
    auto params = [] {
      return json{{"kind", kind}, {"nbar", nbar}, {"r", r_sq}, {"theta", theta},
                  {"squeeze", squeeze}, {"noise", noise}};
    };
    auto add_state = [](CLI::App* s) {
      s->add_option("--kind", kind, "vacuum|thermal|tmss")->capture_default_str();
      s->add_option("--nbar", nbar, "thermal occupation")->capture_default_str();
      s->add_option("--r", r_sq, "two-mode squeezing")->capture_default_str();
    };
    auto add_step = [](CLI::App* s) {
      s->add_option("--theta", theta, "phase-space rotation")->capture_default_str();
      s->add_option("--squeeze", squeeze, "single-mode squeezing")->capture_default_str();
      s->add_option("--noise", noise, "added noise variance")->capture_default_str();
    };
    add_state(run.add("gaussian", "state", "covariance of a Gaussian state", [=]() {
      Result r;
      r.params = params();
      const auto s = initial();
      r.fields["uncertainty_ok"] = uncertainty_ok(s.cov);
      real_matrix_rows(r, s.cov);
      return r;
    }));
    auto* temporal = run.add("gaussian", "temporal", "two-time covariance", [=]() {
      Result r;
      r.params = params();
      const auto s = temporal_gaussian(initial(), step());
      r.fields["uncertainty_ok"] = uncertainty_ok(s.cov);
      real_matrix_rows(r, s.cov);
      return r;
    });
    add_state(temporal);
    add_step(temporal);
    auto* unc = run.add("gaussian", "uncertainty", "uncertainty check", [=]() {
      Result r;
      r.params = params();
      const auto s = kind == "tmss" ? SpacetimeGaussian{2, initial().mean, initial().cov}
                                    : temporal_gaussian(initial(), step());
      r.fields["min_eigenvalue"] = uncertainty_min_eigenvalue(s.cov);
      r.fields["uncertainty_ok"] = uncertainty_ok(s.cov);
      return r;
    });
    add_state(unc);
    add_step(unc);
    auto* pt = run.add("gaussian", "pt",
                       "partial transpose of the thermal two-time state vs TMSS",
                       [=]() {
                         Result r;
                         r.params = json{{"r", r_sq}};
                         const double nb = std::sinh(r_sq) * std::sinh(r_sq);
                         const auto s = temporal_gaussian(thermal(nb), GaussianStep{});
                         const RMatrix p = partial_transpose_gaussian(s.cov, 1);
                         const RMatrix t = two_mode_squeezed(r_sq).cov;
                         double worst = 0.0;
                         for (long i = 0; i < 4; ++i) {
                           for (long j = 0; j < 4; ++j) {
                             if (t(i, j) != 0.0) {
                               worst = std::max(worst, std::abs(p(i, j) / t(i, j) - 1.0));
                             }
                           }
                         }
                         r.fields["max_relative_error"] = worst;
                         real_matrix_rows(r, p);
                         return r;
                       });
    pt->add_option("--r", r_sq, "squeezing parameter")->capture_default_str();
  }

  // ---- cv-wigner
  {
    static std::string state = "vacuum", channel = "identity";
    static double are = 0, aim = 0, bre = 0, bim = 0, cre = 0, cim = 0;
    static double radius = 5.0;
    static int points = 64, nmax = 40;
    auto rho = [] {
      if (state == "vacuum") return fock_state(0, nmax);
      if (state == "coherent") return CMatrix(projector(coherent_state(Complex(cre, cim), nmax)));
      if (state == "fock1") return fock_state(1, nmax);
      throw DomainError("unknown state '" + state + "' (vacuum|coherent|fock1)");
    };
    auto chan = [] {
      if (channel == "identity") return identity_channel(nmax);
      if (channel == "dephasing") return full_dephasing(nmax);
      throw DomainError("unknown channel '" + channel + "' (identity|dephasing)");
    };
    auto add_state = [](CLI::App* s) {
      s->add_option("--state", state, "vacuum|coherent|fock1")->capture_default_str();
      s->add_option("--coherent-re", cre, "coherent amplitude (real)");
      s->add_option("--coherent-im", cim, "coherent amplitude (imag)");
      s->add_option("--channel", channel, "identity|dephasing")->capture_default_str();
      s->add_option("--nmax", nmax, "Fock truncation")->capture_default_str();
    };
    auto params = [] {
      return json{{"state", state}, {"channel", channel}, {"nmax", nmax},
                  {"coherent_re", cre}, {"coherent_im", cim}};
    };
    auto* point = run.add("cv-wigner", "point", "spacetime Wigner function value", [=]() {
      Result r;
      r.params = params();
      r.params["alpha_re"] = are;
      r.params["alpha_im"] = aim;
      r.params["beta_re"] = bre;
      r.params["beta_im"] = bim;
      const Complex w = spacetime_wigner_point_complex(rho(), chan(), Complex(are, aim),
                                                       Complex(bre, bim), nmax);
      r.fields["w"] = w.real();
      r.fields["w_imag"] = w.imag();
      return r;
    });
    add_state(point);
    point->add_option("--alpha-re", are);
    point->add_option("--alpha-im", aim);
    point->add_option("--beta-re", bre);
    point->add_option("--beta-im", bim);
    auto* norm = run.add("cv-wigner", "normcheck", "grid normalization of W", [&g, params, rho, chan]() {
      Result r;
      r.params = params();
      r.params["radius"] = radius;
      r.params["points"] = points;
      const double v = wigner_normalization_check(rho(), chan(), WignerGrid{radius, points}, nmax);
      r.fields["integral"] = v;
      const double tol = std::max(g.tol, 0.02);
      r.fields["ok"] = std::abs(v - 1.0) <= tol;
      if (std::abs(v - 1.0) > tol) r.status = kExitInvariant;
      return r;
    });
    add_state(norm);
    norm->add_option("--radius", radius)->capture_default_str();
    norm->add_option("--points", points)->capture_default_str();
  }

  // ---- process
  {
    static std::string which = "gyni", demo = "repaired";
    static int ma = 2, mb = 2, ka = 2, kb = 2;
    static bool enumerate = false;
    auto process = [&g]() -> ProcessMatrix {
      if (which == "gyni") return gyni_process();
      if (which == "sequential") {
        const auto s = require_seed(g, "sequential process");
        return sequential_process(random_density_matrix(2, s), random_channel(2, 2, s + 1));
      }
      if (which == "signalling") {
        return {ProcessDims{}, (identity(16) + tensor_all({pauli(0), pauli(0), pauli(0), pauli(3)})) / 4.0};
      }
      throw DomainError("unknown process '" + which + "' (gyni|sequential|signalling)");
    };
    auto* val = run.add("process", "validate", "validity of a process matrix", [=]() {
      Result r;
      r.params = json{{"which", which}};
      const auto d = is_valid_process(process());
      r.fields["psd"] = d.psd;
      r.fields["trace_ok"] = d.trace_ok;
      r.fields["fixed_point"] = d.fixed_point;
      r.fields["min_eigenvalue"] = d.min_eigenvalue;
      r.fields["trace"] = d.trace;
      r.fields["projector_residual"] = d.projector_residual;
      r.fields["valid"] = d.valid();
      if (!d.valid()) r.status = kExitInvariant;
      return r;
    });
    val->add_option("--which", which, "gyni|sequential|signalling")->capture_default_str();
    auto* cor = run.add("process", "correlate", "probability table with GYNI operations",
                        [=]() {
                          Result r;
                          r.params = json{{"which", which}};
                          const auto w = process();
                          const auto ops = gyni_operations();
                          const auto t = probability_table(w, ops, ops);
                          r.columns = {"x", "y", "a", "b", "p"};
                          for (int x = 0; x < 2; ++x)
                            for (int y = 0; y < 2; ++y)
                              for (int a = 0; a < 2; ++a)
                                for (int b = 0; b < 2; ++b)
                                  r.rows.push_back({x, y, a, b, t.at(x, y, a, b)});
                          return r;
                        });
    cor->add_option("--which", which, "gyni|sequential|signalling")->capture_default_str();
    auto gyni_body = [](const std::string& mode) {
      Result r;
      r.params = json{{"demo", mode}};
      GameScores s;
      if (mode == "repaired" || mode == "paper") {
        s = gyni_demo();
      } else if (mode == "as-printed") {
        const auto ops = gyni_operations_as_printed();
        const auto t = probability_table(gyni_process(), ops, ops);
        s = {gyni_score(t), lgyni_score(t)};
      } else if (mode == "pdm") {
        s = pdm_gyni_demo();
      } else {
        throw DomainError("unknown demo '" + mode + "' (paper|repaired|as-printed|pdm)");
      }
      r.fields["gyni"] = s.gyni;
      r.fields["lgyni"] = s.lgyni;
      return r;
    };
    run.add("process", "gyni", "GYNI and LGYNI scores of the violating example",
            [=]() { return gyni_body(demo); })
        ->add_option("--demo", demo, "paper|repaired|as-printed|pdm")
        ->capture_default_str();
    run.add("game", "gyni", "alias of process gyni", [=]() { return gyni_body(demo); })
        ->add_option("--demo", demo, "paper|repaired|as-printed|pdm")
        ->capture_default_str();
    auto* vert = run.add("process", "vertices", "deterministic causal strategies", [=]() {
      Result r;
      r.params = json{{"ma", ma}, {"mb", mb}, {"ka", ka}, {"kb", kb}};
      const auto n = count_causal_vertices(ma, mb, ka, kb);
      r.fields["formula"] = n;
      if (enumerate) {
        const auto e = enumerate_causal_vertices(ma, mb, ka, kb).size();
        r.fields["enumerated"] = e;
        if (e != n) r.status = kExitInvariant;
      }
      return r;
    });
    vert->add_option("--ma", ma)->capture_default_str();
    vert->add_option("--mb", mb)->capture_default_str();
    vert->add_option("--ka", ka)->capture_default_str();
    vert->add_option("--kb", kb)->capture_default_str();
    vert->add_flag("--enumerate", enumerate, "also enumerate and compare");
  }

  // ---- histories
  {
    static std::string state = "plus", unitary = "hadamard", paulis = "ZZ";
    auto family = [&g]() {
      CMatrix u;
      if (unitary == "identity") u = identity(2);
      else if (unitary == "hadamard") u = hadamard_gate();
      else if (unitary == "random") u = haar_random_unitary(2, require_seed(g, "random unitary"));
      else throw DomainError("unknown unitary '" + unitary + "' (identity|hadamard|random)");
      const auto p = parse_paulis(paulis);
      std::vector<CMatrix> sigmas;
      std::vector<CMatrix> us;
      for (int k = 0; k < p.size(); ++k) {
        if (p[k] == 0) throw DomainError("history families need X, Y or Z at each time");
        sigmas.push_back(pauli(p[k]));
        if (k > 0) us.push_back(u);
      }
      return std::make_pair(pauli_history_family(parse_state(state, g), us, sigmas), u);
    };
    auto add_common = [](CLI::App* s) {
      s->add_option("--state", state)->capture_default_str();
      s->add_option("--unitary", unitary, "identity|hadamard|random")->capture_default_str();
      s->add_option("--paulis", paulis, "one Pauli per time")->capture_default_str();
    };
    auto params = [] {
      return json{{"state", state}, {"unitary", unitary}, {"paulis", paulis}};
    };
    add_common(run.add("histories", "df", "decoherence functional", [=]() {
      Result r;
      r.params = params();
      const auto d = full_decoherence_functional(family().first);
      r.columns = {"history", "history_prime", "re", "im"};
      auto label = [](const History& h) {
        std::string s;
        for (int v : h) s += (v == 0 ? '+' : '-');
        return s;
      };
      for (std::size_t i = 0; i < d.labels.size(); ++i) {
        for (std::size_t j = 0; j < d.labels.size(); ++j) {
          const Complex v = d.entries(long(i), long(j));
          r.rows.push_back({label(d.labels[i]), label(d.labels[j]), v.real(), v.imag()});
        }
      }
      return r;
    }));
    add_common(run.add("histories", "consistent", "consistency conditions", [&g, family, params]() {
      Result r;
      r.params = params();
      const auto c = is_consistent(family().first, std::max(g.tol, 1e-12));
      r.fields["weak"] = c.weak;
      r.fields["strong"] = c.strong;
      return r;
    }));
    add_common(run.add("histories", "corr", "signed diagonal sum vs PDM correlation", [&g, family, params]() {
      Result r;
      r.params = params();
      const auto [f, u] = family();
      const double df = pdm_correlation_from_df(f);
      std::vector<KrausChannel> steps(f.n_times() - 1, unitary_channel(u));
      const double pdm = event_correlation(TemporalProcess{f.initial, steps},
                                           parse_paulis(paulis));
      r.fields["df_corr"] = df;
      r.fields["pdm_corr"] = pdm;
      if (std::abs(df - pdm) > std::max(g.tol, 1e-12)) r.status = kExitInvariant;
      return r;
    }));
  }

  // ---- otoc
  {
    static int qubits = 1, n = 2;
    static double m = 1.0, omega = 1.0, tau = 1.0;
    auto add_q = [](CLI::App* s) {
      s->add_option("--qubits", qubits, "number of qubits")->capture_default_str();
    };
    add_q(run.add("otoc", "direct", "OTOC of X on the first and Z on the last qubit",
                  [&g]() {
                    Result r;
                    r.params = json{{"qubits", qubits}, {"seed", require_seed(g, "otoc")}};
                    if (qubits < 1 || qubits > 6) throw DomainError("qubits must lie in [1, 6]");
                    PauliString v(std::vector<int>(qubits, 0)), w(std::vector<int>(qubits, 0));
                    v.indices.front() = 1;
                    w.indices.back() = 3;
                    const int d = 1 << qubits;
                    const Complex c = otoc_direct({pauli_operator(v), pauli_operator(w),
                                                   haar_random_unitary(d, *g.seed),
                                                   identity(d) / double(d)});
                    r.fields["re"] = c.real();
                    r.fields["im"] = c.imag();
                    return r;
                  }));
    add_q(run.add("otoc", "pdm", "OTOC via the forward-backward PDM branch", [&g]() {
      Result r;
      r.params = json{{"qubits", qubits}, {"seed", require_seed(g, "otoc")}};
      if (qubits < 1 || qubits > 6) throw DomainError("qubits must lie in [1, 6]");
      const int d = 1 << qubits;
      CMatrix a = CMatrix::Zero(d, d);
      for (int k = 0; k < std::max(1, d / 2); ++k) a(k, k) = 1.0;
      PauliString w(std::vector<int>(qubits, 0));
      w.indices.back() = 1;
      const CMatrix b = pauli_operator(w);
      const CMatrix u = haar_random_unitary(d, *g.seed);
      const CMatrix rho = identity(d) / double(d);
      const auto via = otoc_via_pdm(a, b, u, rho);
      const auto direct = otoc_direct_counted({a, b, u, rho});
      r.fields["pdm_re"] = via.value.real();
      r.fields["pdm_im"] = via.value.imag();
      r.fields["pdm_evolutions"] = via.evolutions;
      r.fields["direct_re"] = direct.value.real();
      r.fields["direct_im"] = direct.value.imag();
      r.fields["direct_evolutions"] = direct.evolutions;
      if (std::abs(via.value - direct.value) > std::max(g.tol, 1e-12)) {
        r.status = kExitInvariant;
      }
      return r;
    }));
    run.add("otoc", "finalstate", "black-hole final-state toy model", [&g]() {
         Result r;
         const auto seed = require_seed(g, "finalstate");
         r.params = json{{"n", n}, {"seed", seed}};
         const auto f = final_state_conditional_output(random_state_vector(n, seed),
                                                       haar_random_unitary(n, seed + 1));
         r.fields["probability"] = f.probability;
         r.fields["supernormalized_weight"] = f.supernormalized_weight;
         r.fields["fidelity"] = f.fidelity;
         if (std::abs(f.fidelity - 1.0) > 1e-10) r.status = kExitInvariant;
         return r;
       })
        ->add_option("--n", n, "dimension of the infalling system")
        ->capture_default_str();
    auto* h = run.add("otoc", "harmonic", "harmonic-oscillator two-point correlations", []() {
      Result r;
      r.params = json{{"m", m}, {"omega", omega}, {"tau", tau}};
      const double pdm = harmonic_pdm_correlation(m, omega, tau);
      const double pi = harmonic_pi_correlation(omega, tau);
      r.fields["pdm"] = pdm;
      r.fields["pi"] = pi;
      r.fields["ratio"] = pdm / pi;
      r.fields["kernel_moment"] = harmonic_kernel_moment(m, omega, tau);
      r.fields["normalized_kernel_moment"] = harmonic_normalized_kernel_moment(m, omega, tau);
      return r;
    });
    h->add_option("--m", m)->capture_default_str();
    h->add_option("--omega", omega)->capture_default_str();
    h->add_option("--tau", tau)->capture_default_str();
  }

  // ---- tc
  {
    static std::string channel = "depolarizing", obs = "X";
    static double p = 0.1, eps = 0.05, hx = 0.0;
    static int n = 20, length = 8, periods = 64, site = 0;
    static bool dephasing_mode = false, free_chain = false;
    auto* decay = run.add("tc", "decay", "two-point correlation under a repeated channel",
                          [&g]() {
                            Result r;
                            r.params = json{{"channel", channel}, {"p", p}, {"obs", obs}};
                            std::string spec = channel;
                            if (channel == "depolarizing" || channel == "dephasing") {
                              spec += ":" + std::to_string(p);
                            }
                            const CMatrix o = pauli_named(obs);
                            const CMatrix rho = 0.5 * (identity(2) + o);
                            series_rows(r, channel_decay_series(rho, parse_channel(spec, g), o, n), "N");
                            return r;
                          });
    decay->add_option("--channel", channel, "identity|depolarizing|dephasing|random")
        ->capture_default_str();
    decay->add_option("--p", p, "noise strength")->capture_default_str();
    decay->add_option("--n", n, "largest N")->capture_default_str();
    decay->add_option("--obs", obs, "X|Y|Z")->capture_default_str();
    auto* symm = run.add("tc", "symm", "symmetrization error-correction recurrence", []() {
      Result r;
      r.params = json{{"p", p}, {"dephasing", dephasing_mode}};
      series_rows(r, dephasing_mode ? dephasing_symmetrization_series(p, n)
                                    : symmetrization_series(p, n),
                  "N");
      return r;
    });
    symm->add_option("--p", p, "noise strength")->capture_default_str();
    symm->add_option("--n", n, "largest N")->capture_default_str();
    symm->add_flag("--dephasing", dephasing_mode, "use the dephasing channel");
    auto* pf = run.add("tc", "phaseflip", "three-qubit phase-flip code correlations", []() {
      Result r;
      r.params = json{{"p", p}};
      const auto s = phase_flip_code_series(p, n);
      r.columns = {"N", "xx", "zz"};
      for (int k = 0; k < n; ++k) r.rows.push_back({k + 1, s.xx.values[k], s.zz.values[k]});
      return r;
    });
    pf->add_option("--p", p)->capture_default_str();
    pf->add_option("--n", n)->capture_default_str();
    auto chain = [&g]() {
      FloquetChainSpec s;
      s.length = length;
      s.epsilon = eps;
      s.hx = hx;
      s.seed = require_seed(g, "Floquet disorder");
      if (free_chain) s.couplings.assign(std::max(length - 1, 0), 0.0);
      return s;
    };
    auto chain_params = [&g]() {
      return json{{"L", length}, {"epsilon", eps}, {"hx", hx}, {"J0", free_chain},
                  {"site", site}, {"periods", periods}, {"seed", g.seed.value_or(0)}};
    };
    auto add_chain = [](CLI::App* s) {
      s->add_option("--L", length, "chain length")->capture_default_str();
      s->add_option("--eps", eps, "drive detuning")->capture_default_str();
      s->add_option("--hx", hx, "transverse field")->capture_default_str();
      s->add_option("--site", site, "observed spin")->capture_default_str();
      s->add_option("--periods", periods, "number of periods")->capture_default_str();
      s->add_flag("--J0", free_chain, "switch off the Ising couplings");
    };
    add_chain(run.add("tc", "floquet", "Floquet chain temporal correlations", [=]() {
      Result r;
      const auto s = chain();
      r.params = chain_params();
      series_rows(r, floquet_correlation_series(s, site, periods), "period");
      return r;
    }));
    add_chain(run.add("tc", "spectrum", "subharmonic Fourier peak of the Floquet series", [=]() {
      Result r;
      const auto s = chain();
      r.params = chain_params();
      const auto pk = subharmonic_peak(floquet_correlation_series(s, site, periods));
      r.fields["peak_freq"] = pk.peak_freq;
      r.fields["peak_weight"] = pk.peak_weight;
      r.fields["split"] = pk.split;
      return r;
    }));
  }

  // ---- cj
  {
    static std::string channel = "depolarizing:0.1", map = "channel";
    static int dim = 2, count = 20;
    run.add("cj", "of-channel", "Choi matrix of a qubit channel", [&g]() {
         Result r;
         r.params = json{{"channel", channel}};
         matrix_rows(r, choi_of_channel(parse_channel(channel, g)).matrix);
         return r;
       })
        ->add_option("--channel", channel)
        ->capture_default_str();
    auto* chk = run.add("cj", "check", "TP / HP / CP flags of a Choi matrix", [&g]() {
      Result r;
      r.params = json{{"map", map}, {"channel", channel}};
      ChoiOperator c;
      if (map == "channel") c = choi_of_channel(parse_channel(channel, g));
      else if (map == "transpose") c = {swap_operator(2), 2, 2};
      else if (map == "scale2") c = {2.0 * max_entangled_projector(2), 2, 2};
      else throw DomainError("unknown map '" + map + "' (channel|transpose|scale2)");
      const auto f = check_choi(c, std::max(g.tol, 1e-12));
      r.fields["tp"] = f.tp;
      r.fields["hermitian_preserving"] = f.hermitian_preserving;
      r.fields["cp"] = f.cp;
      return r;
    });
    chk->add_option("--map", map, "channel|transpose|scale2")->capture_default_str();
    chk->add_option("--channel", channel)->capture_default_str();
    auto* rt = run.add("cj", "roundtrip", "channel -> Choi -> channel on random channels", [&g]() {
      Result r;
      const auto seed = require_seed(g, "roundtrip");
      r.params = json{{"dim", dim}, {"count", count}, {"seed", seed}};
      double worst = 0.0;
      for (int k = 0; k < count; ++k) {
        const auto ch = random_channel(dim, 2, seed + k);
        const auto back = channel_of_choi(choi_of_channel(ch));
        for (int i = 0; i < dim; ++i) {
          for (int j = 0; j < dim; ++j) {
            const CMatrix e = ket_bra(dim, i, j);
            worst = std::max(worst, (back(e) - ch.apply(e)).cwiseAbs().maxCoeff());
          }
        }
      }
      r.fields["max_error"] = worst;
      if (worst > g.tol) r.status = kExitInvariant;
      return r;
    });
    rt->add_option("--dim", dim)->capture_default_str();
    rt->add_option("--count", count)->capture_default_str();
  }
}

void print_catalog(const Runner& run, CLI::App& app, const std::string& format) {
  if (format == "json") {
    json doc;
    doc["commands"] = json::array();
    for (const auto& c : run.catalog()) {
      auto* sub = app.get_subcommand(c.group)->get_subcommand(c.name);
      doc["commands"].push_back(
          {{"group", c.group}, {"name", c.name}, {"help", c.help},
           {"options", option_schema(sub)}});
    }
    doc["global_options"] = {"--format", "--out", "--seed", "--tol", "--config"};
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::cout << "usage: stq <group> <command> [options]\n"
               "global options: --format csv|json|auto, --out PATH, --seed N, --tol X, "
               "--config FILE\n\n";
  std::string group;
  for (const auto& c : run.catalog()) {
    if (c.group != group) {
      group = c.group;
      std::cout << group << "\n";
    }
    auto* sub = app.get_subcommand(c.group)->get_subcommand(c.name);
    std::cout << "  " << c.name << "  " << c.help << "\n";
    const std::string opts = option_summary(sub);
    if (!opts.empty()) std::cout << "      " << opts << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stq: spacetime quantum correlation experiments"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Globals g;
  app.add_option("--format", g.format, "csv, json or auto")
      ->check(CLI::IsMember({"auto", "csv", "json"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "write the result to this path");
  app.add_option_function<std::uint64_t>(
      "--seed", [&g](const std::uint64_t& v) { g.seed = v; },
      "seed for stochastic commands");
  app.add_option("--tol", g.tol, "tolerance for invariant checks")->capture_default_str();
  Runner run(app);
  register_commands(run, g);

  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = expand_config(args);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (!app.get_subcommands().empty() || args.empty() ||
        args.front().rfind("-", 0) == 0) {
      std::cerr << "error: " << e.what() << "\n";
    } else {
      std::vector<std::string> names;
      for (const auto& [name, grp] : run.groups()) names.push_back(name);
      std::cerr << "error: unknown command '" << args.front() << "'; did you mean '"
                << suggest(args.front(), names) << "'?\n";
    }
    return kExitValidation;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  if (!run.selected()) {
    print_catalog(run, app, g.format);
    return 0;
  }
  try {
    const Result r = run.selected()();
    emit(r, g);
    if (r.status == kExitInvariant) {
      std::cerr << "invariant violation detected in " << r.command << "\n";
    }
    return r.status;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
}
