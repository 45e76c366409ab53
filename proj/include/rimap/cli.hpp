#pragma once

// Command-line front end: configuration, validation, execution and output.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rimap/errors.hpp"
#include "rimap/lawspec.hpp"
#include "rimap/parallel.hpp"
#include "rimap/report.hpp"
#include "rimap/verify.hpp"

namespace rimap::cli {

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> list = {
      "verify-gamma-factorization", "verify-beta-factorization", "verify-gamma-chain", "verify-beta-chain",
      "verify-commute",             "tail-identity",             "simulate",           "full-suite"};
  return list;
}

/// Short names accepted for the four identity commands.
inline std::string canonical_command(const std::string& name) {
  if (name == "verify-prop1") return "verify-gamma-factorization";
  if (name == "verify-prop2") return "verify-beta-factorization";
  if (name == "verify-cor1") return "verify-gamma-chain";
  if (name == "verify-cor2") return "verify-beta-chain";
  return name;
}

struct RunConfig {
  std::string command;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> gamma;
  std::optional<std::vector<double>> alphas;
  std::optional<std::string> law;
  std::optional<std::vector<Vector>> y_grid;
  std::optional<std::vector<double>> interval; // simulate: (a, b]
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::string out = "rimap.csv";
  std::optional<unsigned> threads;
};

enum ExitCode : int { kAllPassed = 0, kFailures = 1, kDomainOnly = 2, kConfigError = 3, kIoError = 4 };

/// "0.25,1,4" is three points in d = 1; "1|0,0|1" two points in d = 2.
inline std::vector<Vector> parse_y_grid(std::string_view s) {
  std::vector<Vector> grid;
  for (auto point : detail::split(s, ',')) grid.push_back(detail::parse_reals(point, '|', "y grid"));
  for (const auto& y : grid) {
    if (y.size() != grid.front().size()) throw ConfigError("y grid points differ in dimension");
  }
  return grid;
}

inline std::vector<double> parse_list(std::string_view s, std::string_view what) {
  return detail::parse_reals(s, ',', what);
}

/// Reads a JSON config with the flag names as keys (dashes or underscores).
inline RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  auto get = [&](const char* a, const char* b) -> const nlohmann::json* {
    if (j.contains(a)) return &j.at(a);
    if (b && j.contains(b)) return &j.at(b);
    return nullptr;
  };
  try {
    for (const auto& [key, _] : j.items()) {
      static const std::vector<std::string> known = {"command", "alpha", "beta",    "gamma", "alphas",  "law",
                                                     "y-grid",  "y_grid", "interval", "samples", "seed", "tol",
                                                     "out",     "threads"};
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
    if (auto v = get("command", nullptr)) c.command = v->get<std::string>();
    if (auto v = get("alpha", nullptr)) c.alpha = v->get<double>();
    if (auto v = get("beta", nullptr)) c.beta = v->get<double>();
    if (auto v = get("gamma", nullptr)) c.gamma = v->get<double>();
    if (auto v = get("alphas", nullptr)) c.alphas = v->get<std::vector<double>>();
    if (auto v = get("law", nullptr)) {
      if (v->is_string()) {
        c.law = v->get<std::string>();
      } else if (v->is_array()) {
        std::string joined;
        for (const auto& part : *v) joined += (joined.empty() ? "" : " * ") + part.get<std::string>();
        c.law = joined;
      } else {
        throw ConfigError("law must be a string or a list of strings");
      }
    }
    if (auto v = get("y-grid", "y_grid")) {
      std::vector<Vector> grid;
      for (const auto& p : *v) grid.push_back(p.is_number() ? Vector{p.get<double>()} : p.get<Vector>());
      c.y_grid = grid;
    }
    if (auto v = get("interval", nullptr)) c.interval = v->get<std::vector<double>>();
    if (auto v = get("samples", nullptr)) c.samples = v->get<std::size_t>();
    if (auto v = get("seed", nullptr)) c.seed = v->get<std::uint64_t>();
    if (auto v = get("tol", nullptr)) c.tol = v->get<double>();
    if (auto v = get("out", nullptr)) c.out = v->get<std::string>();
    if (auto v = get("threads", nullptr)) c.threads = v->get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

/// Law text; components joined by " * " are convolved.
inline IDLaw parse_law_list(const std::string& text) {
  std::optional<IDLaw> law;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(" * ", start);
    IDLaw part = parse_law(std::string_view(text).substr(start, pos == std::string::npos ? std::string::npos
                                                                                          : pos - start));
    law = law ? convolve(*law, part) : part;
    if (pos == std::string::npos) break;
    start = pos + 3;
  }
  return *law;
}

/// A validated run: the work to do and how to label it.
struct Plan {
  std::string command;
  nlohmann::ordered_json settings;
  std::function<std::vector<VerificationReport>()> execute;
};

namespace detail {

template <class T>
const T& require(const std::optional<T>& v, const std::string& command, const char* flag) {
  if (!v) throw ConfigError(command + " needs --" + std::string(flag));
  return *v;
}

inline void reject_unused(const RunConfig& c, std::initializer_list<std::pair<bool, const char*>> unused) {
  for (const auto& [present, flag] : unused) {
    if (present) throw ConfigError(c.command + " does not take --" + std::string(flag));
  }
}

// Reports for one identity: quadrature on the law, plus both closed-form
// routes when the law is a single stable component.
inline std::vector<VerificationReport> identity_reports(const Identity& id, const IDLaw& law,
                                                        const std::vector<Vector>& grid, double tol,
                                                        const CheckOptions& co) {
  std::vector<VerificationReport> out;
  out.push_back(check_identity_quadrature(id, law, grid, tol, co));
  if (const auto* st = law.as_stable()) {
    out.push_back(check_identity_closed_form(id, st->exponent, st->scale, grid, 1e-10));
    out.push_back(check_identity_against_closed_form(id, st->exponent, st->scale, grid, tol * co.quad_tol_factor * 10.0,
                                                     co));
  }
  return out;
}

} // namespace detail

/// Checks completeness and preconditions and builds the work; throws
/// ConfigError (or a domain error naming the violated precondition).
inline Plan plan_run(const RunConfig& raw) {
  RunConfig c = raw;
  c.command = canonical_command(raw.command);
  const auto& cmds = commands();
  if (c.command.empty()) throw ConfigError("no --command given");
  if (std::find(cmds.begin(), cmds.end(), c.command) == cmds.end()) {
    throw ConfigError("unknown command '" + c.command + "'");
  }
  if (c.tol && !(*c.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (c.samples && *c.samples == 0) throw ConfigError("--samples must be positive");
  if (c.out.empty()) throw ConfigError("--out must name a file");

  Plan plan;
  plan.command = c.command;
  CheckOptions co;
  co.threads = c.threads.value_or(default_thread_count());
  auto& s = plan.settings;
  s["threads_requested"] = c.threads ? nlohmann::ordered_json(*c.threads) : nlohmann::ordered_json("all");

  const std::string& cmd = c.command;
  std::optional<IDLaw> law;
  if (c.law) law = parse_law_list(*c.law);
  std::vector<Vector> grid;
  if (c.y_grid) {
    grid = *c.y_grid;
    if (grid.empty()) throw ConfigError("--y-grid is empty");
  }
  auto grid_for = [&](const IDLaw& l) {
    if (grid.empty()) return standard_y_grid(l.dimension());
    if (grid.front().size() != l.dimension()) throw ConfigError("--y-grid dimension does not match the law");
    return grid;
  };

  if (cmd.starts_with("verify-")) {
    const IDLaw& l = detail::require(law, cmd, "law");
    detail::reject_unused(c, {{c.samples.has_value(), "samples"}, {c.seed.has_value(), "seed"},
                              {c.interval.has_value(), "interval"}});
    Identity id;
    if (cmd == "verify-gamma-factorization") {
      detail::reject_unused(c, {{c.gamma.has_value(), "gamma"}, {c.alphas.has_value(), "alphas"}});
      id = gamma_factorization_identity(detail::require(c.alpha, cmd, "alpha"), detail::require(c.beta, cmd, "beta"));
    } else if (cmd == "verify-beta-factorization") {
      detail::reject_unused(c, {{c.alphas.has_value(), "alphas"}});
      id = beta_factorization_identity(detail::require(c.alpha, cmd, "alpha"), detail::require(c.beta, cmd, "beta"),
                          detail::require(c.gamma, cmd, "gamma"));
    } else if (cmd == "verify-gamma-chain" || cmd == "verify-beta-chain") {
      detail::reject_unused(c, {{c.alpha.has_value(), "alpha"}, {c.beta.has_value(), "beta"},
                                {c.gamma.has_value(), "gamma"}});
      const auto& al = detail::require(c.alphas, cmd, "alphas");
      id = cmd == "verify-gamma-chain" ? gamma_chain_identity(al) : beta_chain_identity(al);
    } else {
      // With --gamma the two (0,1) mappings r_{beta,alpha}, r_{gamma,beta};
      // otherwise r_beta on (0,inf) against r_{beta,alpha}.
      detail::reject_unused(c, {{c.alphas.has_value(), "alphas"}});
      const double a = detail::require(c.alpha, cmd, "alpha");
      const double b = detail::require(c.beta, cmd, "beta");
      const auto first = MappingSpec::beta_clock(b, a);
      const auto second = c.gamma ? MappingSpec::beta_clock(*c.gamma, b) : MappingSpec::gamma_clock(b);
      id = commutativity_identity(first, second);
      if (c.gamma) id.params = {a, b, *c.gamma};
      else id.params = {a, b};
    }
    const auto g = grid_for(l);
    const double tol = c.tol.value_or(default_identity_tolerance(id.params));
    s["law"] = describe_law(l);
    s["params"] = id.params;
    s["tol"] = tol;
    plan.execute = [id, l, g, tol, co] { return detail::identity_reports(id, l, g, tol, co); };
    return plan;
  }

  if (cmd == "tail-identity") {
    detail::reject_unused(c, {{c.law.has_value(), "law"}, {c.gamma.has_value(), "gamma"},
                              {c.alphas.has_value(), "alphas"}, {c.samples.has_value(), "samples"},
                              {c.seed.has_value(), "seed"}, {c.interval.has_value(), "interval"}});
    const double a = detail::require(c.alpha, cmd, "alpha");
    const double b = detail::require(c.beta, cmd, "beta");
    if (!(b < a)) throw DomainError("tail-identity: need beta < alpha");
    std::vector<double> us = tail_u_grid();
    if (!grid.empty()) {
      us.clear();
      for (const auto& y : grid) {
        if (y.size() != 1 || !(y[0] > 0.0)) throw ConfigError("tail-identity: --y-grid holds positive u values");
        us.push_back(y[0]);
      }
    }
    const double tol = c.tol.value_or(a < 0.0 ? 1e-8 : 1e-6);
    s["params"] = {b, a};
    s["u_grid"] = us;
    s["tol"] = tol;
    plan.execute = [a, b, us, tol] { return std::vector<VerificationReport>{check_tail_identity(b, a, us, tol)}; };
    return plan;
  }

  if (cmd == "simulate") {
    detail::reject_unused(c, {{c.gamma.has_value(), "gamma"}, {c.alphas.has_value(), "alphas"}});
    const IDLaw& l = detail::require(law, cmd, "law");
    const double a = detail::require(c.alpha, cmd, "alpha");
    auto spec = c.beta ? MappingSpec::beta_clock(*c.beta, a) : MappingSpec::gamma_clock(a);
    const std::vector<double> iv = c.interval.value_or(std::vector<double>{0.1, 2.0});
    if (iv.size() != 2) throw ConfigError("--interval takes two numbers a,b");
    spec = spec.truncated(iv[0], iv[1]);
    std::vector<Vector> g = grid.empty() ? std::vector<Vector>{{0.25}, {1.0}, {4.0}} : grid;
    for (auto& y : g) {
      if (y.size() != l.dimension()) throw ConfigError("--y-grid dimension does not match the law");
    }
    if (!l.simulable()) throw ConfigError("simulate: law has no path sampler (stable and gamma are excluded)");
    if (spec.improper() || !(spec.a() > 0.0)) throw ConfigError("simulate: need a proper interval with a > 0");
    const std::size_t n = c.samples.value_or(100000);
    const std::uint64_t seed = c.seed.value_or(1);
    const double z_max = c.tol.value_or(4.0);
    McOptions mc;
    mc.threads = co.threads;
    s["law"] = describe_law(l);
    s["mapping"] = spec.name();
    s["samples"] = n;
    s["seed"] = seed;
    s["z_max"] = z_max;
    plan.execute = [spec, l, g, n, seed, z_max, mc] {
      return std::vector<VerificationReport>{check_monte_carlo(spec, l, g, n, seed, z_max, mc)};
    };
    return plan;
  }

  // full-suite
  detail::reject_unused(c, {{c.law.has_value(), "law"}, {c.alpha.has_value(), "alpha"},
                            {c.beta.has_value(), "beta"}, {c.gamma.has_value(), "gamma"},
                            {c.alphas.has_value(), "alphas"}, {c.y_grid.has_value(), "y-grid"},
                            {c.tol.has_value(), "tol"}, {c.interval.has_value(), "interval"}});
  SuiteOptions so;
  if (c.seed) so.seed = *c.seed;
  if (c.samples) so.mc_samples = *c.samples;
  so.threads = co.threads;
  s["seed"] = so.seed;
  s["samples"] = so.mc_samples;
  plan.execute = [so] {
    std::vector<VerificationReport> out;
    for (auto& e : run_full_suite(so)) out.push_back(std::move(e.report));
    return out;
  };
  return plan;
}

inline std::filesystem::path summary_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  if (p.extension() == ".csv") p.replace_extension();
  p += ".summary.json";
  return p;
}

/// Runs a validated configuration: writes the CSV and the summary and
/// prints one line per report.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Plan plan;
  try {
    plan = plan_run(config);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::logic_error& e) {
    // DomainError, DimensionMismatch, DepthLimit, UnsupportedVariant: a
    // violated precondition of the requested command.
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  std::vector<VerificationReport> reports;
  try {
    reports = plan.execute();
  } catch (const NonConvergent& e) {
    err << "outside numeric domain: " << e.what() << "\n";
    return kDomainOnly;
  } catch (const std::logic_error& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  std::ofstream csv(config.out, std::ios::binary);
  if (!csv) {
    err << "cannot write " << config.out << "\n";
    return kIoError;
  }
  write_csv(csv, reports);
  csv.close();
  const auto sp = summary_path(config.out);
  std::ofstream js(sp, std::ios::binary);
  if (!js || !csv) {
    err << "cannot write " << sp.string() << "\n";
    return kIoError;
  }
  js << summary_json(plan.command, plan.settings, reports).dump(2) << "\n";
  if (!js) {
    err << "cannot write " << sp.string() << "\n";
    return kIoError;
  }

  for (const auto& r : reports) {
    out << (r.passed ? "PASS " : r.status == Status::OutsideDomain ? "SKIP " : "FAIL ") << r.identity;
    if (!r.law.empty()) out << " @ " << r.law;
    out << " [" << route_name(r.route) << "] max_abs=" << format_real(r.max_abs_residual)
        << " max_rel=" << format_real(r.max_rel_residual) << " tol=" << format_real(r.tolerance_used);
    if (!r.note.empty()) out << " (" << r.note << ")";
    out << "\n";
  }
  return exit_code_for(tally(reports));
}

/// Parses argv-style arguments (program name first) and runs.
inline int main_with_args(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of factorization identities for random integral mappings"};
  RunConfig flags;
  std::string config_path;
  std::string alphas;
  std::string law;
  std::string y_grid;
  std::string interval;
  std::optional<double> alpha, beta, gamma, tol;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string out_path;
  app.add_option("--command", flags.command,
                 "verify-gamma-factorization | verify-beta-factorization | verify-gamma-chain | "
                 "verify-beta-chain | verify-commute | tail-identity | simulate | full-suite");
  app.add_option("--alpha", alpha);
  app.add_option("--beta", beta);
  app.add_option("--gamma", gamma);
  app.add_option("--alphas", alphas, "comma list, strictly decreasing");
  app.add_option("--law", law, "e.g. stable:p=2,c=1 or cpoisson:rate=1,atoms=-1@0.5;1@0.5");
  app.add_option("--y-grid", y_grid, "comma list of points, components joined by '|'");
  app.add_option("--interval", interval, "simulate: a,b for the mapping (a, b]");
  app.add_option("--samples", samples);
  app.add_option("--seed", seed);
  app.add_option("--tol", tol);
  app.add_option("--out", out_path, "CSV path; the summary goes next to it");
  app.add_option("--threads", threads, "default: all cores");
  app.add_option("--config", config_path, "JSON file with the same keys; flags win");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kAllPassed;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }

  RunConfig c;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        err << "cannot read " << config_path << "\n";
        return kIoError;
      }
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config file: ") + e.what());
      }
      c = config_from_json(j);
    }
    if (!flags.command.empty()) c.command = flags.command;
    if (alpha) c.alpha = alpha;
    if (beta) c.beta = beta;
    if (gamma) c.gamma = gamma;
    if (!alphas.empty()) c.alphas = parse_list(alphas, "alphas");
    if (!law.empty()) c.law = law;
    if (!y_grid.empty()) c.y_grid = parse_y_grid(y_grid);
    if (!interval.empty()) c.interval = parse_list(interval, "interval");
    if (samples) c.samples = samples;
    if (seed) c.seed = seed;
    if (tol) c.tol = tol;
    if (!out_path.empty()) c.out = out_path;
    if (threads) c.threads = threads;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  }
  return run(c, out, err);
}

} // namespace rimap::cli
