#pragma once

// Clock measures rho_1 = |dr_beta| on (0, inf) and rho_2 = |dr_{beta,alpha}|
// on (0, 1), their product under the space change (t, s) -> t s, and the
// tail of the resulting image measure.

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <string>

#include "rimap/errors.hpp"
#include "rimap/quadrature.hpp"
#include "rimap/specfun.hpp"

namespace rimap {

class ProductClock;

class ClockMeasure {
public:
  enum class Kind { Rho1, Rho2, Pushforward };

  /// rho_1(du) = u^{-beta-1} e^{-u} du on (0, inf).
  static ClockMeasure rho1(double beta) {
    return ClockMeasure(Kind::Rho1, ClockFunction::alpha_clock(beta), 1.0);
  }

  /// rho_2(du) = Gamma(alpha-beta)^{-1} (1-u)^{alpha-beta-1} u^{-alpha-1} du on (0, 1).
  static ClockMeasure rho2(double beta, double alpha) {
    auto clock = ClockFunction::beta_alpha_clock(beta, alpha);
    return ClockMeasure(Kind::Rho2, clock, 1.0 / gamma_fn(alpha - beta));
  }

  /// Image of a product clock under (t, s) -> t s.
  static ClockMeasure pushforward(const ProductClock& pc);

  Kind kind() const { return kind_; }
  double lower() const { return 0.0; }
  double upper() const { return kind_ == Kind::Rho2 ? 1.0 : kInf; }
  double normalizer() const { return normalizer_; }

  /// Unnormalized density; mass is the integral of normalizer() * density().
  double density(double u) const;

  /// The clock whose |dr| this measure is (rho kinds only).
  const ClockFunction& clock() const { return clock_; }

  const ProductClock* product() const { return product_.get(); }

private:
  ClockMeasure(Kind kind, ClockFunction clock, double normalizer)
      : kind_(kind), clock_(clock), normalizer_(normalizer) {}

  Kind kind_;
  ClockFunction clock_;
  double normalizer_;
  std::shared_ptr<const ProductClock> product_;
};

/// rho_1 x rho_2 together with the tensor-product space change h1(t) h2(s) = t s.
class ProductClock {
public:
  ProductClock(ClockMeasure first, ClockMeasure second) : first_(first), second_(second) {
    if (first_.kind() != ClockMeasure::Kind::Rho1) throw DomainError("product clock: first factor must be rho_1");
    if (second_.kind() != ClockMeasure::Kind::Rho2) throw DomainError("product clock: second factor must be rho_2");
  }

  /// The pair used for the factorization with outer clock r_beta: rho_1(beta) x rho_2(beta, alpha).
  static ProductClock for_factorization(double beta, double alpha) {
    return {ClockMeasure::rho1(beta), ClockMeasure::rho2(beta, alpha)};
  }

  const ClockMeasure& first() const { return first_; }
  const ClockMeasure& second() const { return second_; }

  static double space_change(double t, double s) { return t * s; }

private:
  ClockMeasure first_;
  ClockMeasure second_;
};

/// (h rho)(x > u) for h(t, s) = t s and rho = rho_1 x rho_2.
///
/// Iterated integral: for fixed t the inner set is s in (u/t, 1), whose rho_2
/// mass is r_{beta,alpha}(u/t); it is empty for t <= u. The outer integral runs
/// in v = 1 - u/t, with v = z^{1/(alpha-beta)} when alpha - beta < 1 to absorb
/// the (1-s)^{alpha-beta-1} endpoint, and is truncated where e^{-t} is
/// negligible. Throws NonConvergent if the outer quadrature does not settle.
inline double pushforward_tail(const ProductClock& pc, double u) {
  if (!(u > 0.0)) throw DomainError("pushforward_tail: need u > 0");
  if (u == kInf) return 0.0;
  const ClockFunction& outer = pc.first().clock();
  const ClockFunction& inner = pc.second().clock();

  const double t_max = u + 80.0 + 4.0 * (std::abs(outer.alpha()) + std::abs(inner.alpha()));
  const double v_max = 1.0 - u / t_max;
  const double c = inner.alpha() - inner.beta();
  const double k = c < 1.0 ? 1.0 / c : 1.0;

  auto f = [&](double z) {
    const double v = k == 1.0 ? z : std::pow(z, k);
    if (v <= 0.0) return 0.0;
    const double one_minus_v = 1.0 - v;
    const double t = u / one_minus_v;
    const double inner_mass = inner.value_below_upper(v);
    const double jac = u / (one_minus_v * one_minus_v) * (k == 1.0 ? 1.0 : k * std::pow(z, k - 1.0));
    return outer.density(t) * inner_mass * jac;
  };
  const double z_max = k == 1.0 ? v_max : std::pow(v_max, 1.0 / k);
  const auto res = quad::integrate(f, 0.0, z_max, quad::Tolerance{1e-12, 0.0, 2000});
  if (!res.converged) throw NonConvergent("pushforward_tail: iterated integral did not converge");
  return res.value;
}

namespace detail {

// int_c^d of a rho-kind density, in w = log u so power laws become exponentials.
inline double rho_mass_interior(const ClockFunction& clock, double c, double d) {
  auto f = [&](double w) {
    const double u = std::exp(w);
    return clock.density(u) * u;
  };
  return quad::integrate(f, std::log(c), std::log(d), quad::Tolerance{1e-13}).value;
}

// int_0^d of a rho-kind density with an integrable t^e endpoint, via
// t = v^{1/(e+1)} which makes t^e dt = dv / (e+1).
inline double rho_mass_from_zero(const ClockFunction& clock, double d) {
  const double e1 = clock.left_exponent() + 1.0;
  if (!(e1 > 0.0)) return kInf;
  auto f = [&](double v) { return clock.smooth_factor(std::pow(v, 1.0 / e1)) / e1; };
  return quad::integrate(f, 0.0, std::pow(d, e1), quad::Tolerance{1e-13}).value;
}

} // namespace detail

/// Mass of (c, d] under m. Infinite when the density is not integrable at 0.
inline double measure_mass(const ClockMeasure& m, double c, double d) {
  if (!(c >= m.lower()) || !(d <= m.upper()) || !(c <= d)) {
    throw DomainError("measure_mass: interval outside the measure's support");
  }
  if (c == d) return 0.0;

  if (m.kind() == ClockMeasure::Kind::Pushforward) {
    const ProductClock& pc = *m.product();
    double upper_tail = 0.0;
    if (d < kInf) upper_tail = pushforward_tail(pc, d);
    if (c == 0.0) {
      const double total = pc.first().clock().total_mass() * pc.second().clock().total_mass();
      return total == kInf ? kInf : total - upper_tail;
    }
    return pushforward_tail(pc, c) - upper_tail;
  }

  const ClockFunction& clock = m.clock();
  // (c, upper]: the clock itself is the tail mass.
  if (d == m.upper()) {
    if (c == 0.0) return clock.total_mass();
    return clock(c);
  }
  if (c == 0.0) return detail::rho_mass_from_zero(clock, d);
  return detail::rho_mass_interior(clock, c, d);
}

inline double ClockMeasure::density(double u) const {
  if (kind_ == Kind::Pushforward) {
    // f(w) = int_w^inf f1(t) f2(w/t) dt / t, in log t.
    const ProductClock& pc = *product_;
    const ClockFunction& outer = pc.first().clock();
    const ClockFunction& inner = pc.second().clock();
    if (!(u > 0.0)) return 0.0;
    auto f = [&](double x) {
      const double t = u * std::exp(x);
      const double s = u / t;
      if (s >= 1.0) return 0.0;
      return outer.density(t) * inner.density(s);
    };
    const double x_max = std::log((u + 80.0 + 4.0 * std::abs(outer.alpha())) / u);
    return quad::integrate(f, 0.0, x_max, quad::Tolerance{1e-12}).value;
  }
  // Unnormalized: strip the 1/Gamma factor the clock carries.
  return clock_.density(u) / normalizer_;
}

inline ClockMeasure ClockMeasure::pushforward(const ProductClock& pc) {
  ClockMeasure m(Kind::Pushforward, pc.first().clock(), 1.0);
  m.product_ = std::make_shared<const ProductClock>(pc);
  return m;
}

/// max over u of |tail(u) - r_alpha(u)| / (r_alpha(u) + 1e-300).
inline double tail_identity_residual(double beta, double alpha, std::span<const double> u_grid) {
  if (!(beta < alpha)) throw DomainError("tail_identity_residual: need beta < alpha");
  if (u_grid.empty()) throw DomainError("tail_identity_residual: empty u grid");
  const auto pc = ProductClock::for_factorization(beta, alpha);
  double worst = 0.0;
  for (const double u : u_grid) {
    const double lhs = pushforward_tail(pc, u);
    const double rhs = upper_inc_gamma(-alpha, u);
    worst = std::max(worst, std::abs(lhs - rhs) / (rhs + 1e-300));
  }
  return worst;
}

} // namespace rimap
