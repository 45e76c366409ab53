// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rimap/cli.hpp"
#include "rimap/report.hpp"
#include "rimap/specfun.hpp"
#include "rimap/verify.hpp"

namespace {

using namespace rimap;

struct Outcome {
  bool ok;
  std::string detail;
};

// Worst report in a group, for the detail column.
Outcome all_passed(const std::vector<SuiteEntry>& entries) {
  bool ok = !entries.empty();
  double worst_ratio = 0.0;
  std::string worst;
  std::size_t n = 0;
  for (const auto& e : entries) {
    const auto& r = e.report;
    ++n;
    ok = ok && r.passed;
    if (!r.passed && worst.empty()) worst = r.identity + " [" + route_name(r.route) + "] " + status_name(r.status);
    for (const auto& row : r.rows) {
      const double res = r.route == Route::PushforwardTail || r.route == Route::MonteCarlo
                             ? row.rel_residual
                             : std::min(row.abs_residual, row.rel_residual);
      worst_ratio = std::max(worst_ratio, res / r.tolerance_used);
    }
  }
  std::ostringstream os;
  os << n << " reports, worst residual/tol = " << worst_ratio;
  if (!worst.empty()) os << ", first failure: " << worst;
  return {ok && n > 0, os.str()};
}

Outcome tail_identity() { return all_passed(run_suite_group(SuiteGroup::Tail, {})); }

Outcome gamma_factorization() {
  const auto entries = run_suite_group(SuiteGroup::GammaFactorization, {});
  // Both routes must be present at the pinned tolerances.
  bool pinned = true;
  for (const auto& e : entries) {
    if (e.report.route == Route::StableClosedForm) pinned = pinned && e.report.tolerance_used == 1e-10;
    if (e.report.identity.ends_with("quadrature~closed_form")) pinned = pinned && e.report.tolerance_used == 1e-6;
  }
  auto out = all_passed(entries);
  return {out.ok && pinned, out.detail};
}

Outcome beta_factorization() { return all_passed(run_suite_group(SuiteGroup::BetaFactorization, {})); }

Outcome chains() { return all_passed(run_suite_group(SuiteGroup::Chains, {})); }

Outcome monte_carlo() {
  SuiteOptions so;
  so.threads = default_thread_count();
  return all_passed(run_suite_group(SuiteGroup::MonteCarlo, so));
}

Outcome special_functions() {
  std::size_t bad = 0;
  std::size_t checks = 0;
  const double grid[] = {0.1, 0.25, 0.5, 1.0, 1.5, 2.0, 3.7, 7.5, 12.0};
  for (double a : grid) {
    for (double b : grid) {
      ++checks;
      const double ratio = beta_fn(a, b) * gamma_fn(a + b) / (gamma_fn(a) * gamma_fn(b));
      if (!(std::abs(ratio - 1.0) <= 1e-10)) ++bad;
    }
  }

  std::mt19937_64 rng(99);
  const std::vector<ClockFunction> clocks = {
      ClockFunction::alpha_clock(-1.0),          ClockFunction::alpha_clock(-2.5),
      ClockFunction::alpha_clock(0.5),           ClockFunction::alpha_clock(1.5),
      ClockFunction::beta_alpha_clock(-2.0, -1.0), ClockFunction::beta_alpha_clock(0.2, 0.7),
      ClockFunction::beta_alpha_clock(-1.5, 0.5)};
  std::uniform_real_distribution<double> frac(0.001, 0.999);
  std::uniform_real_distribution<double> log_x(-6.0, 3.0);
  for (const auto& clock : clocks) {
    const double mass = clock.total_mass();
    for (int i = 0; i < 50; ++i) {
      ++checks;
      const double x = std::isfinite(mass) ? frac(rng) * mass : std::exp(log_x(rng));
      const double t = invert_clock(clock, x, 1e-10);
      if (!(std::abs(clock(t) - x) <= 1e-10)) ++bad;
    }
  }

  const auto ra = ClockFunction::alpha_clock(0.5);
  const auto rb = ClockFunction::alpha_clock(-1.7);
  const auto rba = ClockFunction::beta_alpha_clock(-0.4, 0.7);
  std::uniform_real_distribution<double> log_t(-8.0, 3.5);
  std::uniform_real_distribution<double> unit(1e-6, 1.0 - 1e-6);
  for (int i = 0; i < 1000; ++i) {
    double t1 = std::exp(log_t(rng));
    double t2 = std::exp(log_t(rng));
    if (t1 > t2) std::swap(t1, t2);
    double s1 = unit(rng);
    double s2 = unit(rng);
    if (s1 > s2) std::swap(s1, s2);
    checks += 3;
    if (t1 < t2 && !(ra(t1) > ra(t2))) ++bad;
    if (t1 < t2 && !(rb(t1) > rb(t2))) ++bad;
    if (s1 < s2 && !(rba(s1) > rba(s2))) ++bad;
  }
  return {bad == 0, std::to_string(checks) + " checks, " + std::to_string(bad) + " violations"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome reproducibility() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "rimap_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ostringstream sink;
  int codes[2];
  for (int run = 0; run < 2; ++run) {
    const std::string out = (dir / ("suite" + std::to_string(run) + ".csv")).string();
    codes[run] = cli::main_with_args({"rimap", "--command", "full-suite", "--seed", "20240917", "--out", out}, sink, sink);
  }
  const std::string a = slurp(dir / "suite0.csv");
  const std::string b = slurp(dir / "suite1.csv");
  const bool same = !a.empty() && a == b && slurp(dir / "suite0.summary.json") == slurp(dir / "suite1.summary.json");
  fs::remove_all(dir);
  std::ostringstream os;
  os << a.size() << " CSV bytes, identical=" << (same ? "yes" : "no") << ", exit codes " << codes[0] << "/"
     << codes[1];
  return {same && codes[0] == codes[1], os.str()};
}

} // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    Outcome (*fn)();
  };
  const Criterion criteria[] = {
      {"1 push-forward tail identity", 10.0, tail_identity},
      {"2 outer-gamma factorization (closed form 1e-10, quadrature 1e-6)", 30.0, gamma_factorization},
      {"3 (0,1)-mapping factorization and commutativity", 60.0, beta_factorization},
      {"4 chained factorizations at depth 3 and 4", 120.0, chains},
      {"5 Monte Carlo integration-by-parts consistency", 120.0, monte_carlo},
      {"6 special functions", 5.0, special_functions},
      {"7 reproducible full-suite CSV", 1800.0, reproducibility},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o{false, ""};
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget_s;
    const bool ok = o.ok && in_time;
    if (!ok) ++failures;
    std::printf("%s criterion %s: %s; %.2f s (budget %.0f s)%s\n", ok ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs,
                c.budget_s, in_time ? "" : " over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
