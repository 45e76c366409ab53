#pragma once

// Numerical checks of the factorization identities between random integral
// mappings, by exponent quadrature, stable closed forms, push-forward tails
// and Monte Carlo.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rimap/clocks.hpp"
#include "rimap/errors.hpp"
#include "rimap/idlaw.hpp"
#include "rimap/lawspec.hpp"
#include "rimap/mapping.hpp"
#include "rimap/mcsim.hpp"
#include "rimap/parallel.hpp"

namespace rimap {

enum class Route { ExponentQuadrature, StableClosedForm, PushforwardTail, MonteCarlo };

inline const char* route_name(Route r) {
  switch (r) {
    case Route::ExponentQuadrature: return "exponent_quadrature";
    case Route::StableClosedForm: return "stable_closed_form";
    case Route::PushforwardTail: return "pushforward_tail";
    case Route::MonteCarlo: return "monte_carlo";
  }
  return "unknown";
}

enum class Status { Passed, Failed, OutsideDomain };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Passed: return "passed";
    case Status::Failed: return "failed";
    case Status::OutsideDomain: return "outside numeric domain";
  }
  return "unknown";
}

/// One compared pair of values at one grid point.
struct ResidualRow {
  std::string label; // which two expressions; empty for two-sided identities
  Vector y;          // frequency, or u for tail rows
  Complex lhs;
  Complex rhs;
  double abs_residual = 0.0;
  double rel_residual = 0.0; // studentized distance for Monte Carlo rows
  bool passed = false;
};

/// Outcome of one identity at one parameter point by one route.
///
/// A row passes when its absolute or its relative residual is within the
/// tolerance, i.e. |lhs - rhs| <= tol * max(1, |lhs|, |rhs|); tail rows use
/// the relative residual and Monte Carlo rows the studentized distance.
struct VerificationReport {
  std::string identity;
  std::string law; // canonical law string; empty for tail checks
  std::vector<double> params;
  std::vector<Vector> y_grid;
  std::vector<ResidualRow> rows;
  double max_abs_residual = 0.0;
  double max_rel_residual = 0.0;
  Route route = Route::ExponentQuadrature;
  Status status = Status::Passed;
  bool passed = false;
  double tolerance_used = 0.0;
  std::string note;
};

/// An identity between compositions of mappings: every expression should give
/// the same exponent. Compositions are in application order.
struct Identity {
  std::string name;
  std::vector<double> params;
  std::vector<std::string> labels;
  std::vector<std::vector<MappingSpec>> expressions;
};

struct CheckOptions {
  double quad_tol_factor = 1e-2; // quadrature runs at tol * factor
  double min_quad_tol = 1e-13;    // no tighter than this; double rounding sets the floor
  unsigned threads = 1;
  bool record_nonconvergence = true; // false: rethrow NonConvergent
};

/// 1e-8 when every clock parameter is negative, 1e-5 otherwise.
inline double default_identity_tolerance(std::span<const double> params) {
  return std::all_of(params.begin(), params.end(), [](double p) { return p < 0.0; }) ? 1e-8 : 1e-5;
}

/// {0, +-0.25, +-1, +-4} e_1, plus (1, -1, ...)/2 and its negative for d >= 2.
inline std::vector<Vector> standard_y_grid(std::size_t d = 1) {
  std::vector<Vector> grid;
  for (double s : {0.0, -4.0, -1.0, -0.25, 0.25, 1.0, 4.0}) {
    Vector y(d, 0.0);
    y[0] = s;
    grid.push_back(y);
  }
  if (d >= 2) {
    for (double sign : {-1.0, 1.0}) {
      Vector y(d, 0.0);
      for (std::size_t k = 0; k < d; ++k) y[k] = sign * (k % 2 == 0 ? 0.5 : -0.5);
      grid.push_back(y);
    }
  }
  return grid;
}

namespace detail {

inline void fill_residual(ResidualRow& row, double tol) {
  const double diff = std::abs(row.lhs - row.rhs);
  const double scale = std::max(std::abs(row.lhs), std::abs(row.rhs));
  row.abs_residual = diff;
  row.rel_residual = scale > 0.0 ? diff / scale : 0.0;
  row.passed = std::min(row.abs_residual, row.rel_residual) <= tol;
}

inline void finalize(VerificationReport& rep) {
  rep.max_abs_residual = 0.0;
  rep.max_rel_residual = 0.0;
  bool ok = !rep.rows.empty();
  for (const auto& r : rep.rows) {
    rep.max_abs_residual = std::max(rep.max_abs_residual, r.abs_residual);
    rep.max_rel_residual = std::max(rep.max_rel_residual, r.rel_residual);
    ok = ok && r.passed;
  }
  if (rep.status != Status::OutsideDomain) rep.status = ok ? Status::Passed : Status::Failed;
  rep.passed = rep.status == Status::Passed;
}

inline VerificationReport start_report(const Identity& id, Route route, std::span<const Vector> y_grid, double tol) {
  VerificationReport rep;
  rep.identity = id.name;
  rep.params = id.params;
  rep.y_grid.assign(y_grid.begin(), y_grid.end());
  rep.route = route;
  rep.tolerance_used = tol;
  return rep;
}

inline void check_grid_dims(std::span<const Vector> y_grid, std::size_t d) {
  if (y_grid.empty()) throw DomainError("verification needs a nonempty grid");
  for (const auto& y : y_grid) {
    if (y.size() != d) throw DimensionMismatch("grid point has wrong dimension");
  }
}

// Pairs (i, j), i < j, of expressions to compare.
inline std::vector<std::pair<std::size_t, std::size_t>> expression_pairs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
  }
  return out;
}

inline std::string pair_label(const Identity& id, std::size_t i, std::size_t j) {
  if (id.expressions.size() <= 2) return {};
  return id.labels[i] + "~" + id.labels[j];
}

inline double closed_form_multiplier(const std::vector<MappingSpec>& expr, double p) {
  double m = 1.0;
  for (const auto& s : expr) m *= stable_multiplier(s, p);
  return m;
}

} // namespace detail

/// Evaluates every expression of the identity by nested quadrature on the
/// grid and compares them pairwise.
inline VerificationReport check_identity_quadrature(const Identity& id, const IDLaw& law,
                                                    std::span<const Vector> y_grid, double tol,
                                                    const CheckOptions& opt = {}) {
  detail::check_grid_dims(y_grid, law.dimension());
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  VerificationReport rep = detail::start_report(id, Route::ExponentQuadrature, y_grid, tol);
  rep.law = describe_law(law);
  const double qtol = std::max(tol * opt.quad_tol_factor, opt.min_quad_tol);
  const std::size_t n_expr = id.expressions.size();

  std::vector<std::vector<Complex>> values(y_grid.size(), std::vector<Complex>(n_expr));
  std::vector<std::string> failures(y_grid.size());
  parallel_for(y_grid.size(), opt.threads, [&](std::size_t j) {
    for (std::size_t e = 0; e < n_expr; ++e) {
      try {
        values[j][e] = compose_map_exponent(id.expressions[e], law, y_grid[j], qtol);
      } catch (const NonConvergent& err) {
        failures[j] = id.labels[e] + ": " + err.what();
        if (!opt.record_nonconvergence) throw NonConvergent(id.name + " side " + failures[j]);
        return;
      }
    }
  });

  for (std::size_t j = 0; j < y_grid.size(); ++j) {
    if (!failures[j].empty()) {
      rep.status = Status::OutsideDomain;
      if (rep.note.empty()) rep.note = failures[j];
      continue;
    }
    for (const auto& [a, b] : detail::expression_pairs(n_expr)) {
      ResidualRow row;
      row.label = detail::pair_label(id, a, b);
      row.y = y_grid[j];
      row.lhs = values[j][a];
      row.rhs = values[j][b];
      detail::fill_residual(row, tol);
      rep.rows.push_back(std::move(row));
    }
  }
  detail::finalize(rep);
  return rep;
}

/// Stable closed forms: each expression is -c M |y|^p with M the product of
/// stable multipliers; compares the expressions pairwise.
inline VerificationReport check_identity_closed_form(const Identity& id, double p, double c,
                                                     std::span<const Vector> y_grid, double tol) {
  if (y_grid.empty()) throw DomainError("verification needs a nonempty grid");
  Identity named = id;
  named.params.push_back(p);
  VerificationReport rep = detail::start_report(named, Route::StableClosedForm, y_grid, tol);
  rep.law = "stable:p=" + format_real(p) + ",c=" + format_real(c);
  std::vector<double> mult;
  try {
    for (const auto& e : id.expressions) mult.push_back(detail::closed_form_multiplier(e, p));
  } catch (const DomainError& err) {
    rep.status = Status::OutsideDomain;
    rep.note = err.what();
    detail::finalize(rep);
    return rep;
  }
  for (const auto& y : y_grid) {
    const double ny = std::pow(detail::norm(y), p);
    for (const auto& [a, b] : detail::expression_pairs(id.expressions.size())) {
      ResidualRow row;
      row.label = detail::pair_label(id, a, b);
      row.y = y;
      row.lhs = -c * mult[a] * ny;
      row.rhs = -c * mult[b] * ny;
      detail::fill_residual(row, tol);
      rep.rows.push_back(std::move(row));
    }
  }
  detail::finalize(rep);
  return rep;
}

/// Cross-route check for a stable law: the quadrature value of every
/// expression against its own closed form.
inline VerificationReport check_identity_against_closed_form(const Identity& id, double p, double c,
                                                             std::span<const Vector> y_grid, double tol,
                                                             const CheckOptions& opt = {}) {
  const std::size_t d = y_grid.empty() ? 1 : y_grid.front().size();
  const IDLaw law = IDLaw::symmetric_stable(p, c, d);
  detail::check_grid_dims(y_grid, d);
  Identity named = id;
  named.name = id.name + ":quadrature~closed_form";
  named.params.push_back(p);
  VerificationReport rep = detail::start_report(named, Route::ExponentQuadrature, y_grid, tol);
  rep.law = describe_law(law);
  const double qtol = std::max(tol * opt.quad_tol_factor, opt.min_quad_tol);
  const std::size_t n_expr = id.expressions.size();

  std::vector<double> mult;
  try {
    for (const auto& e : id.expressions) mult.push_back(detail::closed_form_multiplier(e, p));
  } catch (const DomainError& err) {
    rep.status = Status::OutsideDomain;
    rep.note = err.what();
    detail::finalize(rep);
    return rep;
  }

  std::vector<std::vector<Complex>> values(y_grid.size(), std::vector<Complex>(n_expr));
  std::vector<std::string> failures(y_grid.size());
  parallel_for(y_grid.size(), opt.threads, [&](std::size_t j) {
    for (std::size_t e = 0; e < n_expr; ++e) {
      try {
        values[j][e] = compose_map_exponent(id.expressions[e], law, y_grid[j], qtol);
      } catch (const NonConvergent& err) {
        failures[j] = id.labels[e] + ": " + err.what();
        if (!opt.record_nonconvergence) throw NonConvergent(id.name + " side " + failures[j]);
        return;
      }
    }
  });
  for (std::size_t j = 0; j < y_grid.size(); ++j) {
    if (!failures[j].empty()) {
      rep.status = Status::OutsideDomain;
      if (rep.note.empty()) rep.note = failures[j];
      continue;
    }
    const double ny = std::pow(detail::norm(y_grid[j]), p);
    for (std::size_t e = 0; e < n_expr; ++e) {
      ResidualRow row;
      row.label = id.labels[e];
      row.y = y_grid[j];
      row.lhs = values[j][e];
      row.rhs = -c * mult[e] * ny;
      detail::fill_residual(row, tol);
      rep.rows.push_back(std::move(row));
    }
  }
  detail::finalize(rep);
  return rep;
}

// ---- identity builders -----------------------------------------------------

/// I^{r_beta} after I^{r_{beta,alpha}} equals I^{r_alpha}.
inline Identity gamma_factorization_identity(double alpha, double beta) {
  if (!(beta < alpha)) throw DomainError("gamma_factorization: need beta < alpha");
  return {"gamma_factorization",
          {alpha, beta},
          {"gamma_beta.beta_alpha", "gamma_alpha"},
          {{MappingSpec::beta_clock(beta, alpha), MappingSpec::gamma_clock(beta)}, {MappingSpec::gamma_clock(alpha)}}};
}

/// I^{r_{beta,alpha}} and I^{r_{gamma,beta}} in either order equal I^{r_{gamma,alpha}}.
inline Identity beta_factorization_identity(double alpha, double beta, double gamma) {
  if (!(gamma < beta && beta < alpha)) throw DomainError("beta_factorization: need gamma < beta < alpha");
  const auto ba = MappingSpec::beta_clock(beta, alpha);
  const auto gb = MappingSpec::beta_clock(gamma, beta);
  return {"beta_factorization",
          {alpha, beta, gamma},
          {"ba.gb", "gb.ba", "ga"},
          {{gb, ba}, {ba, gb}, {MappingSpec::beta_clock(gamma, alpha)}}};
}

namespace detail {

inline void check_decreasing(std::span<const double> alphas, const char* what) {
  for (std::size_t i = 1; i < alphas.size(); ++i) {
    if (!(alphas[i] < alphas[i - 1])) throw DomainError(std::string(what) + ": alphas must strictly decrease");
  }
}

} // namespace detail

/// For alpha_1 > ... > alpha_k: I^{r_{alpha_k}} after the chain
/// I^{r_{alpha_k,alpha_{k-1}}} ... I^{r_{alpha_2,alpha_1}} equals I^{r_{alpha_1}}.
inline Identity gamma_chain_identity(std::span<const double> alphas) {
  if (alphas.size() > kMaxCompositionDepth) throw DepthLimit("gamma_chain: at most 4 parameters");
  if (alphas.size() < 2) throw DomainError("gamma_chain: need at least 2 parameters");
  detail::check_decreasing(alphas, "gamma_chain");
  std::vector<MappingSpec> chain;
  for (std::size_t i = 1; i < alphas.size(); ++i) chain.push_back(MappingSpec::beta_clock(alphas[i], alphas[i - 1]));
  chain.push_back(MappingSpec::gamma_clock(alphas.back()));
  return {"gamma_chain",
          std::vector<double>(alphas.begin(), alphas.end()),
          {"chain", "gamma_alpha1"},
          {chain, {MappingSpec::gamma_clock(alphas.front())}}};
}

/// For alpha_1 > ... > alpha_k: the chain of (0,1) mappings
/// I^{r_{alpha_{i+1},alpha_i}} equals I^{r_{alpha_k,alpha_1}}.
inline Identity beta_chain_identity(std::span<const double> alphas) {
  if (alphas.size() > kMaxCompositionDepth) throw DepthLimit("beta_chain: at most 4 parameters");
  if (alphas.size() < 3) throw DomainError("beta_chain: need 3 or 4 parameters");
  detail::check_decreasing(alphas, "beta_chain");
  std::vector<MappingSpec> chain;
  for (std::size_t i = 1; i < alphas.size(); ++i) chain.push_back(MappingSpec::beta_clock(alphas[i], alphas[i - 1]));
  return {"beta_chain",
          std::vector<double>(alphas.begin(), alphas.end()),
          {"chain", "single"},
          {chain, {MappingSpec::beta_clock(alphas.back(), alphas.front())}}};
}

inline Identity commutativity_identity(const MappingSpec& a, const MappingSpec& b) {
  std::vector<double> params;
  for (const auto* s : {&a, &b}) {
    if (s->clock().kind() == ClockFunction::Kind::BetaAlpha) params.push_back(s->clock().beta());
    params.push_back(s->clock().alpha());
  }
  return {"commute:" + a.name() + "|" + b.name(), params, {"ab", "ba"}, {{a, b}, {b, a}}};
}

// ---- the checks by name ----------------------------------------------------

inline VerificationReport check_gamma_factorization(double alpha, double beta, const IDLaw& law, std::span<const Vector> y_grid,
                                      double tol, const CheckOptions& opt = {}) {
  return check_identity_quadrature(gamma_factorization_identity(alpha, beta), law, y_grid, tol, opt);
}

inline VerificationReport check_beta_factorization(double alpha, double beta, double gamma, const IDLaw& law,
                                      std::span<const Vector> y_grid, double tol, const CheckOptions& opt = {}) {
  return check_identity_quadrature(beta_factorization_identity(alpha, beta, gamma), law, y_grid, tol, opt);
}

inline VerificationReport check_gamma_chain(std::span<const double> alphas, const IDLaw& law,
                                            std::span<const Vector> y_grid, double tol,
                                            const CheckOptions& opt = {}) {
  return check_identity_quadrature(gamma_chain_identity(alphas), law, y_grid, tol, opt);
}

inline VerificationReport check_beta_chain(std::span<const double> alphas, const IDLaw& law,
                                           std::span<const Vector> y_grid, double tol,
                                           const CheckOptions& opt = {}) {
  return check_identity_quadrature(beta_chain_identity(alphas), law, y_grid, tol, opt);
}

inline VerificationReport check_commutativity(const MappingSpec& a, const MappingSpec& b, const IDLaw& law,
                                              std::span<const Vector> y_grid, double tol,
                                              const CheckOptions& opt = {}) {
  return check_identity_quadrature(commutativity_identity(a, b), law, y_grid, tol, opt);
}

/// Push-forward tail against upper_inc_gamma(-alpha, u), one row per u.
inline VerificationReport check_tail_identity(double beta, double alpha, std::span<const double> u_grid, double tol) {
  if (!(beta < alpha)) throw DomainError("tail identity: need beta < alpha");
  if (u_grid.empty()) throw DomainError("tail identity: empty u grid");
  VerificationReport rep;
  rep.identity = "tail";
  rep.params = {beta, alpha};
  rep.route = Route::PushforwardTail;
  rep.tolerance_used = tol;
  const auto pc = ProductClock::for_factorization(beta, alpha);
  for (const double u : u_grid) {
    rep.y_grid.push_back({u});
    ResidualRow row;
    row.y = {u};
    try {
      row.lhs = pushforward_tail(pc, u);
    } catch (const NonConvergent& err) {
      rep.status = Status::OutsideDomain;
      rep.note = err.what();
      continue;
    }
    row.rhs = upper_inc_gamma(-alpha, u);
    row.abs_residual = std::abs(row.lhs - row.rhs);
    row.rel_residual = row.abs_residual / (row.rhs.real() + 1e-300);
    row.passed = row.rel_residual <= tol;
    rep.rows.push_back(std::move(row));
  }
  detail::finalize(rep);
  return rep;
}

/// Monte Carlo against quadrature for one proper mapping. Rows carry the
/// empirical CF as lhs, exp of the exponent as rhs and the studentized
/// distance as rel_residual; z_max is the acceptance band.
inline VerificationReport check_monte_carlo(const MappingSpec& spec, const IDLaw& law, std::span<const Vector> y_grid,
                                            std::size_t n_samples, std::uint64_t seed, double z_max = 4.0,
                                            const McOptions& mc = {}) {
  VerificationReport rep;
  rep.identity = "mc:" + spec.name();
  rep.law = describe_law(law);
  rep.params = {spec.clock().alpha(), spec.a(), spec.b()};
  if (spec.clock().kind() == ClockFunction::Kind::BetaAlpha) rep.params.insert(rep.params.begin(), spec.clock().beta());
  rep.y_grid.assign(y_grid.begin(), y_grid.end());
  rep.route = Route::MonteCarlo;
  rep.tolerance_used = z_max;
  const McReport r = mc_verify_mapping(spec, law, y_grid, n_samples, seed, mc);
  for (const auto& pt : r.points) {
    ResidualRow row;
    row.y = pt.y;
    row.lhs = pt.ecf;
    row.rhs = pt.model;
    row.abs_residual = std::abs(pt.ecf - pt.model);
    row.rel_residual = pt.z;
    row.passed = pt.z <= z_max;
    rep.rows.push_back(std::move(row));
  }
  detail::finalize(rep);
  return rep;
}

// ---- the full acceptance matrix -------------------------------------------

struct SuiteOptions {
  std::uint64_t seed = 20240917;
  std::size_t mc_samples = 100000;
  unsigned threads = 1;
};

/// Which group of the suite a report belongs to.
enum class SuiteGroup { Tail, GammaFactorization, BetaFactorization, Chains, MonteCarlo };

struct SuiteEntry {
  SuiteGroup group;
  VerificationReport report;
};

inline std::vector<double> tail_u_grid() { return {0.1, 0.5, 1.0, 2.0, 5.0}; }

inline std::vector<SuiteEntry> run_suite_group(SuiteGroup group, const SuiteOptions& so) {
  std::vector<SuiteEntry> out;
  CheckOptions co;
  co.threads = so.threads;
  const auto grid = standard_y_grid();
  auto add = [&](VerificationReport r) { out.push_back({group, std::move(r)}); };
  const IDLaw cp = IDLaw::compound_poisson(1.0, {{{-1.0}, 0.5}, {{1.0}, 0.5}});

  switch (group) {
    case SuiteGroup::Tail: {
      const auto us = tail_u_grid();
      for (auto [b, a] : {std::pair{-2.0, -1.0}, {-3.0, -1.0}, {-3.0, -2.0}, {-1.5, -0.5}}) {
        add(check_tail_identity(b, a, us, 1e-8));
      }
      add(check_tail_identity(-1.5, 0.5, std::vector<double>{0.25, 1.0}, 1e-6));
      break;
    }
    case SuiteGroup::GammaFactorization: {
      for (auto [a, b] : {std::pair{-1.0, -2.0}, {-0.5, -1.5}, {0.5, -1.0}}) {
        const Identity id = gamma_factorization_identity(a, b);
        for (double p : {0.7, 1.2, 2.0}) {
          if (!(p > a)) continue;
          add(check_identity_closed_form(id, p, 1.0, grid, 1e-10));
          add(check_identity_against_closed_form(id, p, 1.0, grid, 1e-6, co));
        }
        add(check_identity_quadrature(id, cp, grid, default_identity_tolerance(id.params), co));
      }
      break;
    }
    case SuiteGroup::BetaFactorization: {
      const std::vector<std::vector<double>> points = {{-1.0, -2.0, -3.0}, {-0.5, -1.5, -2.5}, {0.7, 0.2, -0.4}};
      for (const auto& pt : points) {
        const Identity id = beta_factorization_identity(pt[0], pt[1], pt[2]);
        const double tol = default_identity_tolerance(pt);
        add(check_identity_quadrature(id, IDLaw::symmetric_stable(1.5, 1.0), grid, tol, co));
        add(check_identity_quadrature(id, cp, grid, tol, co));
        add(check_commutativity(MappingSpec::beta_clock(pt[1], pt[0]), MappingSpec::beta_clock(pt[2], pt[1]), cp,
                                grid, tol, co));
      }
      break;
    }
    case SuiteGroup::Chains: {
      const std::vector<std::vector<double>> negative = {{-1.0, -2.0, -3.0}, {-1.0, -2.0, -3.0, -4.0}};
      for (const auto& al : negative) {
        for (const Identity& id : {gamma_chain_identity(al), beta_chain_identity(al)}) {
          add(check_identity_closed_form(id, 2.0, 1.0, grid, 1e-10));
          add(check_identity_closed_form(id, 1.4, 1.0, grid, 1e-10));
          add(check_identity_against_closed_form(id, 2.0, 1.0, grid, 1e-6, co));
          add(check_identity_quadrature(id, IDLaw::symmetric_stable(2.0, 1.0), grid, 1e-6, co));
        }
      }
      const std::vector<double> mixed = {0.9, 0.3, -0.5};
      const Identity c2 = beta_chain_identity(mixed);
      add(check_identity_closed_form(c2, 1.4, 1.0, grid, 1e-10));
      add(check_identity_against_closed_form(c2, 1.4, 1.0, grid, 1e-5, co));
      add(check_identity_quadrature(gamma_chain_identity(negative[0]), cp, grid, 1e-6, co));
      break;
    }
    case SuiteGroup::MonteCarlo: {
      const auto spec = MappingSpec::gamma_clock(-1.0).truncated(0.1, 2.0);
      const std::vector<Vector> ys = {{0.25}, {1.0}, {4.0}};
      McOptions mc;
      mc.threads = so.threads;
      add(check_monte_carlo(spec, cp, ys, so.mc_samples, so.seed, 4.0, mc));
      add(check_monte_carlo(spec, IDLaw::gaussian_1d(0.0, 1.0), ys, so.mc_samples, so.seed + 1, 4.0, mc));
      break;
    }
  }
  return out;
}

inline std::vector<SuiteEntry> run_full_suite(const SuiteOptions& so) {
  std::vector<SuiteEntry> all;
  for (auto g : {SuiteGroup::Tail, SuiteGroup::GammaFactorization, SuiteGroup::BetaFactorization, SuiteGroup::Chains,
                 SuiteGroup::MonteCarlo}) {
    auto part = run_suite_group(g, so);
    for (auto& e : part) all.push_back(std::move(e));
  }
  return all;
}

} // namespace rimap
