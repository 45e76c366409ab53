#pragma once

// Random integral mappings I^{h,r}_{(a,b]} acting on characteristic exponents:
//   Phi_{I nu}(y) = int_{(a,b)} Phi_nu(h(t) y) |dr(t)|,
// with truncation ladders for improper endpoints and nested quadrature for
// compositions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rimap/errors.hpp"
#include "rimap/idlaw.hpp"
#include "rimap/quadrature.hpp"
#include "rimap/specfun.hpp"

namespace rimap {

/// A scalar space change h with its derivative (the derivative is used only
/// by the path integrator).
struct SpaceChange {
  std::function<double(double)> fn;
  std::function<double(double)> derivative;
  std::string name = "t";
  bool identity = true;

  static SpaceChange identity_map() { return {}; }

  static SpaceChange custom(std::function<double(double)> fn, std::function<double(double)> derivative,
                            std::string name) {
    return {std::move(fn), std::move(derivative), std::move(name), false};
  }

  double operator()(double t) const { return identity ? t : fn(t); }
  double slope(double t) const { return identity ? 1.0 : derivative(t); }
};

/// Starting truncation levels of the ladders: the left ladder starts at
/// eps_left and shrinks by 4; the right ladder starts at eps_right and doubles
/// (infinite end) or starts at 1 - eps_right and shrinks the gap by 4 (end at 1).
struct Truncation {
  double eps_left = 0.25;
  double eps_right = 16.0;
};

class MappingSpec {
public:
  /// I^{t, r_alpha} on (0, inf).
  static MappingSpec gamma_clock(double alpha) {
    return MappingSpec(ClockFunction::alpha_clock(alpha), 0.0, kInf, Truncation{0.25, 16.0});
  }

  /// I^{s, r_{beta,alpha}} on (0, 1).
  static MappingSpec beta_clock(double beta, double alpha) {
    MappingSpec out(ClockFunction::beta_alpha_clock(beta, alpha), 0.0, 1.0, Truncation{0.25, 0.25});
    out.h_.name = "s";
    return out;
  }

  /// Same clock and space change over (a, b]. a == b gives the empty mapping.
  MappingSpec truncated(double a, double b) const {
    MappingSpec out = *this;
    out.set_interval(a, b);
    return out;
  }

  MappingSpec with_space_change(SpaceChange h) const {
    MappingSpec out = *this;
    out.h_ = std::move(h);
    return out;
  }

  MappingSpec with_truncation(Truncation tr) const {
    if (!(tr.eps_left > 0.0) || !(tr.eps_right > 0.0)) throw DomainError("truncation levels must be positive");
    if (clock_.upper() == 1.0 && !(tr.eps_left + tr.eps_right < 1.0)) {
      throw DomainError("truncation levels leave no core interval in (0, 1)");
    }
    MappingSpec out = *this;
    out.trunc_ = tr;
    return out;
  }

  const ClockFunction& clock() const { return clock_; }
  const SpaceChange& space_change() const { return h_; }
  double a() const { return a_; }
  double b() const { return b_; }
  bool improper_left() const { return improper_left_; }
  bool improper_right() const { return improper_right_; }
  bool improper() const { return improper_left_ || improper_right_; }
  bool empty() const { return a_ == b_; }
  const Truncation& truncation() const { return trunc_; }

  /// Interval is the clock's whole support and h is the identity.
  bool canonical() const { return h_.identity && a_ == clock_.lower() && b_ == clock_.upper(); }

  std::string name() const {
    std::string s = "I^{" + h_.name + "," + clock_.name() + "}";
    if (a_ != clock_.lower() || b_ != clock_.upper()) {
      s += "_(" + format_real(a_) + "," + format_real(b_) + "]";
    }
    return s;
  }

private:
  MappingSpec(ClockFunction clock, double a, double b, Truncation tr) : clock_(clock), trunc_(tr) {
    set_interval(a, b);
  }

  void set_interval(double a, double b) {
    if (!(a >= clock_.lower()) || !(b <= clock_.upper()) || !(a <= b)) {
      throw DomainError("mapping interval must satisfy lower <= a <= b <= upper of the clock");
    }
    a_ = a;
    b_ = b;
    // Improper where the clock density is not integrable-bounded or the range is infinite.
    improper_left_ = a < b && a == clock_.lower() && clock_.left_exponent() < 0.0;
    improper_right_ = a < b && (b == kInf || (b == clock_.upper() && clock_.right_exponent() < 0.0));
  }

  ClockFunction clock_;
  SpaceChange h_;
  double a_ = 0.0;
  double b_ = 0.0;
  bool improper_left_ = false;
  bool improper_right_ = false;
  Truncation trunc_;
};

inline double default_tolerance(const MappingSpec& spec) { return spec.improper() ? 1e-6 : 1e-8; }

/// Ladder traces of one mapping evaluation, for diagnostics.
struct MappingTrace {
  quad::LadderTrace left;
  quad::LadderTrace right;
};

inline constexpr std::size_t kMaxCompositionDepth = 4;

namespace detail {

inline void check_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw DomainError("tolerance must be positive");
}

/// Fixed geometry of one mapping evaluation: the core interval and the
/// clock mass of each truncation shell. The masses turn an absolute error
/// target for this level into an error budget per call of the integrand, so
/// nested levels only work as hard as their weight requires.
class MappingPlan {
public:
  explicit MappingPlan(const MappingSpec& spec) : spec_(spec) {
    const Truncation& tr = spec.truncation();
    right_at_one_ = spec.improper_right() && spec.b() != kInf;
    lo_ = spec.a();
    hi_ = spec.b();
    if (spec.improper_left()) lo_ = spec.b() < tr.eps_left ? 0.5 * spec.b() : tr.eps_left;
    if (spec.improper_right()) {
      if (right_at_one_) {
        hi_ = spec.a() > 1.0 - tr.eps_right ? 0.5 * (1.0 + spec.a()) : 1.0 - tr.eps_right;
      } else {
        hi_ = spec.a() > tr.eps_right ? 2.0 * spec.a() : tr.eps_right;
      }
    }
    if (!spec.empty()) core_mass_ = mass(lo_, hi_);
  }

  const MappingSpec& spec() const { return spec_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool right_at_one() const { return right_at_one_; }
  double core_mass() const { return core_mass_; }

  // Shell k of the left ladder: t in (lo 4^{-k}, lo 4^{-(k-1)}].
  double left_shell_mass(int k) {
    return cached(left_, k, [&] { return mass(lo_ * std::pow(4.0, -k), lo_ * std::pow(4.0, 1 - k)); });
  }

  // Shell k of the right ladder, either t in (hi 2^{k-1}, hi 2^k] or
  // 1 - t in (d 4^{-k}, d 4^{-(k-1)}] with d = 1 - hi.
  double right_shell_mass(int k) {
    return cached(right_, k, [&] {
      const ClockFunction& c = spec_.clock();
      if (!right_at_one_) return mass(hi_ * std::ldexp(1.0, k - 1), hi_ * std::ldexp(1.0, k));
      const double d = 1.0 - hi_;
      const double big = c.value_below_upper(d * std::pow(4.0, 1 - k));
      const double small = c.value_below_upper(d * std::pow(4.0, -k));
      return std::max(big - small, 0.0);
    });
  }

private:
  template <class F>
  static double cached(std::vector<double>& store, int k, F&& compute) {
    const auto idx = static_cast<std::size_t>(k);
    if (store.size() <= idx) store.resize(idx + 1, -1.0);
    if (store[idx] < 0.0) store[idx] = compute();
    return store[idx];
  }

  double mass(double x1, double x2) const {
    const ClockFunction& c = spec_.clock();
    const double top = x2 >= c.upper() ? 0.0 : c(x2);
    const double bottom = x1 <= c.lower() ? c.total_mass() : c(x1);
    return std::max(bottom - top, 0.0);
  }

  const MappingSpec& spec_;
  bool right_at_one_ = false;
  double lo_ = 0.0;
  double hi_ = 0.0;
  double core_mass_ = 0.0;
  std::vector<double> left_;
  std::vector<double> right_;
};

// Share of a region's error target handed down to the integrand values.
inline constexpr double kInnerShare = 0.1;

inline double inner_budget(double target, double region_mass) {
  if (!(target > 0.0)) return 0.0;
  if (!(region_mass > 0.0)) return kInf;
  return kInnerShare * target / region_mass;
}

/// int_{(a,b)} g(scale * h(t), budget) |dr(t)|, with improper endpoints
/// summed as truncation ladders. The result is accurate to
/// max(abs_tol, tol * |result|); g receives the absolute error it may make at
/// each node.
template <class G>
Complex integrate_mapping(MappingPlan& plan, G&& g, double scale, double tol, double abs_tol,
                          MappingTrace* trace) {
  const MappingSpec& spec = plan.spec();
  if (spec.empty() || scale == 0.0) return {};
  const ClockFunction& clock = spec.clock();
  const SpaceChange& h = spec.space_change();
  const double lo = plan.lo();
  const double hi = plan.hi();

  auto check = [&](const auto& r, const char* where) {
    if (!r.converged) throw NonConvergent(spec.name() + ": " + where + " quadrature did not converge");
    return r.value;
  };

  const double core_budget = inner_budget(abs_tol, plan.core_mass());
  auto on_t_core = [&](double t) { return g(scale * h(t), core_budget) * clock.density(t); };
  const Complex core = check(quad::integrate(on_t_core, lo, hi, quad::Tolerance{tol, abs_tol, 2000}), "core");
  Complex total = core;

  const quad::LadderSettings ladder{tol, std::max(1e-300, abs_tol)};
  // Shells far from the bulk only need absolute accuracy relative to it.
  const double shell_target = std::max(abs_tol, 1e-2 * tol * std::abs(core));
  const quad::Tolerance shell_tol{tol, shell_target, 2000};
  const double step = std::log(4.0);

  if (spec.improper_left()) {
    const double log_lo = std::log(lo);
    auto piece = [&](int k) {
      const double budget = inner_budget(shell_target, plan.left_shell_mass(k));
      auto on_w = [&](double w) {
        const double t = std::exp(w);
        return g(scale * h(t), budget) * clock.density(t) * t;
      };
      return check(quad::integrate(on_w, log_lo - k * step, log_lo - (k - 1) * step, shell_tol), "shell");
    };
    total += quad::sum_ladder(piece, total, ladder, trace ? &trace->left : nullptr, spec.name() + " near 0");
  }

  if (spec.improper_right()) {
    if (plan.right_at_one()) {
      const double log_d = std::log(1.0 - hi);
      auto piece = [&](int k) {
        const double budget = inner_budget(shell_target, plan.right_shell_mass(k));
        auto on_w = [&](double w) {
          const double v = std::exp(w);
          return g(scale * h(1.0 - v), budget) * clock.density_below_upper(v) * v;
        };
        return check(quad::integrate(on_w, log_d - k * step, log_d - (k - 1) * step, shell_tol), "shell");
      };
      total += quad::sum_ladder(piece, total, ladder, trace ? &trace->right : nullptr, spec.name() + " near 1");
    } else {
      auto piece = [&](int k) {
        const double budget = inner_budget(shell_target, plan.right_shell_mass(k));
        auto on_t = [&](double t) { return g(scale * h(t), budget) * clock.density(t); };
        return check(quad::integrate(on_t, hi * std::ldexp(1.0, k - 1), hi * std::ldexp(1.0, k), shell_tol),
                     "shell");
      };
      total += quad::sum_ladder(piece, total, ladder, trace ? &trace->right : nullptr,
                                spec.name() + " at infinity");
    }
  }
  return total;
}

} // namespace detail

/// Nested exponent of the composition, specs listed in application order:
/// specs[0] acts on the law first. Evaluates
///   int ... int Phi_law(h_1(t_1) ... h_k(t_k) y) |dr_1| ... |dr_k|
/// with the last spec as the outermost quadrature. Each inner integral is
/// evaluated on the outer quadrature nodes to the accuracy its clock mass
/// there requires. Throws DepthLimit for more than four mappings and
/// NonConvergent when any ladder diverges.
inline Complex compose_map_exponent(std::span<const MappingSpec> specs, const IDLaw& law,
                                    std::span<const double> y, double tol) {
  detail::check_tol(tol);
  if (specs.empty()) throw DomainError("compose_map_exponent: empty composition");
  if (specs.size() > kMaxCompositionDepth) {
    throw DepthLimit("compose_map_exponent: at most 4 nested mappings; verify longer chains pairwise");
  }
  const RayExponent ray(law, y);
  std::vector<detail::MappingPlan> plans;
  plans.reserve(specs.size());
  for (const auto& s : specs) plans.emplace_back(s);

  // level(j, lambda, budget) is the exponent of I_j ... I_0 law at lambda * y.
  std::function<Complex(std::size_t, double, double)> level = [&](std::size_t j, double lambda,
                                                                  double budget) -> Complex {
    auto inner = [&](double mu, double inner_abs) {
      return j == 0 ? ray(mu) : level(j - 1, mu, inner_abs);
    };
    return detail::integrate_mapping(plans[j], inner, lambda, tol, budget, nullptr);
  };
  return level(specs.size() - 1, 1.0, 0.0);
}

inline Complex compose_map_exponent(std::initializer_list<MappingSpec> specs, const IDLaw& law,
                                    std::span<const double> y, double tol) {
  return compose_map_exponent(std::span<const MappingSpec>(specs.begin(), specs.size()), law, y, tol);
}

/// int_{(a,b)} Phi_law(h(t) y) |dr(t)|.
inline Complex map_exponent(const MappingSpec& spec, const IDLaw& law, std::span<const double> y, double tol,
                            MappingTrace* trace = nullptr) {
  detail::check_tol(tol);
  const RayExponent ray(law, y);
  detail::MappingPlan plan(spec);
  auto g = [&](double mu, double) { return ray(mu); };
  return detail::integrate_mapping(plan, g, 1.0, tol, 0.0, trace);
}

/// Factor multiplying the stable scale c: Gamma(p - alpha) for I^{t,r_alpha}
/// on (0, inf), Gamma(p - alpha) / Gamma(p - beta) for I^{s,r_{beta,alpha}} on
/// (0, 1). Only defined for the canonical (identity h, full support) specs.
inline double stable_multiplier(const MappingSpec& spec, double p) {
  if (!(p > 0.0 && p <= 2.0)) throw DomainError("stable_multiplier: p must lie in (0, 2]");
  if (!spec.canonical()) throw UnsupportedVariant("stable_multiplier: closed form needs a canonical mapping");
  const ClockFunction& clock = spec.clock();
  if (!(p > clock.alpha())) throw DomainError("stable_multiplier: need p > alpha");
  if (clock.kind() == ClockFunction::Kind::Alpha) return gamma_fn(p - clock.alpha());
  return std::exp(std::lgamma(p - clock.alpha()) - std::lgamma(p - clock.beta()));
}

} // namespace rimap
