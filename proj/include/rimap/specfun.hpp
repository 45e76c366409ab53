#pragma once

// Gamma-type special functions and the two inner-clock families
//   r_a(t)     = int_t^inf u^{-a-1} e^{-u} du,                      t in (0, inf)
//   r_{b,a}(s) = Gamma(a-b)^{-1} int_s^1 (1-u)^{a-b-1} u^{-a-1} du,  s in (0, 1)
// together with their monotone inverses.

#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include "rimap/errors.hpp"
#include "rimap/quadrature.hpp"

namespace rimap {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Shortest decimal text that reads back to the same double.
inline std::string format_real(double x) {
  if (x == kInf) return "inf";
  if (x == -kInf) return "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double gamma_fn(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("gamma_fn: argument must be positive and finite");
  }
  return std::tgamma(a);
}

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
inline double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("beta_fn: arguments must be positive and finite");
  }
  if (a + b < 170.0) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

/// int_x^inf u^{s-1} e^{-u} du for any real s and x > 0.
///
/// Integrated in w = log(u / x), where the integrand exp(s log u - u) is a
/// smooth bump; the peak is factored out so tiny x with negative s does not
/// overflow before the final scaling.
inline double upper_inc_gamma(double s, double x) {
  if (!(x > 0.0) || !std::isfinite(x) || !std::isfinite(s)) {
    throw DomainError("upper_inc_gamma: need finite s and x > 0");
  }
  const double lx = std::log(x);
  auto log_integrand = [&](double w) { return s * (lx + w) - x * std::exp(w); };
  const double w_peak = s > x ? std::log(s / x) : 0.0;
  const double g_peak = log_integrand(w_peak);

  double w_hi = w_peak + 0.5;
  while (log_integrand(w_hi) > g_peak - 60.0) w_hi += 0.5;

  auto f = [&](double w) { return std::exp(log_integrand(w) - g_peak); };
  const double split = w_peak > 0.0 ? w_peak : 0.5 * w_hi;
  const quad::Tolerance tol{1e-13};
  double sum = 0.0;
  if (split > 0.0) sum += quad::integrate(f, 0.0, split, tol).value;
  sum += quad::integrate(f, split, w_hi, tol).value;
  return sum * std::exp(g_peak);
}

struct ClockAlphaParams {
  double alpha;
};

struct ClockBetaAlphaParams {
  double beta;
  double alpha;
};

namespace detail {

inline void check_params(const ClockAlphaParams& p) {
  if (!std::isfinite(p.alpha)) throw DomainError("clock r_alpha: alpha must be finite");
}

inline void check_params(const ClockBetaAlphaParams& p) {
  if (!std::isfinite(p.alpha) || !std::isfinite(p.beta)) {
    throw DomainError("clock r_{beta,alpha}: parameters must be finite");
  }
  if (!(p.beta < p.alpha)) throw DomainError("clock r_{beta,alpha}: need beta < alpha");
}

// Gamma(c) * r_{beta,alpha}(s), where one_minus_s = 1 - s is passed separately
// so callers near s = 1 do not lose it to cancellation.
inline double beta_clock_unnormalized(const ClockBetaAlphaParams& p, double s,
                                      double one_minus_s) {
  const double c = p.alpha - p.beta;
  const double a = p.alpha;
  const quad::Tolerance tol{1e-13};
  double total = 0.0;

  // Near zero: u = e^w turns u^{-a-1} du into e^{-a w} dw.
  if (s < 0.5) {
    auto f = [&](double w) {
      const double u = std::exp(w);
      return std::pow(1.0 - u, c - 1.0) * std::exp(-a * w);
    };
    total += quad::integrate(f, std::log(s), std::log(0.5), tol).value;
  }

  // Near one, in the distance om = 1 - u.
  const double width = s < 0.5 ? 0.5 : one_minus_s;
  if (c < 1.0) {
    // om = v^{1/c} absorbs the (1-u)^{c-1} singularity.
    auto f = [&](double v) {
      const double om = std::pow(v, 1.0 / c);
      return std::pow(1.0 - om, -a - 1.0) / c;
    };
    total += quad::integrate(f, 0.0, std::pow(width, c), tol).value;
  } else {
    auto f = [&](double om) { return std::pow(om, c - 1.0) * std::pow(1.0 - om, -a - 1.0); };
    total += quad::integrate(f, 0.0, width, tol).value;
  }
  return total;
}

} // namespace detail

/// r_alpha(t) = upper_inc_gamma(-alpha, t).
inline double clock_alpha(const ClockAlphaParams& p, double t) {
  detail::check_params(p);
  if (!(t > 0.0)) throw DomainError("clock r_alpha: need t > 0");
  if (t == kInf) return 0.0;
  return upper_inc_gamma(-p.alpha, t);
}

inline double clock_beta_alpha(const ClockBetaAlphaParams& p, double s) {
  detail::check_params(p);
  if (!(s > 0.0 && s < 1.0)) throw DomainError("clock r_{beta,alpha}: need 0 < s < 1");
  return detail::beta_clock_unnormalized(p, s, 1.0 - s) / gamma_fn(p.alpha - p.beta);
}

/// A strictly decreasing inner clock r with |dr(t)| = density(t) dt.
class ClockFunction {
public:
  enum class Kind { Alpha, BetaAlpha };

  static ClockFunction alpha_clock(double alpha) {
    detail::check_params(ClockAlphaParams{alpha});
    return ClockFunction(Kind::Alpha, 0.0, alpha);
  }

  static ClockFunction beta_alpha_clock(double beta, double alpha) {
    detail::check_params(ClockBetaAlphaParams{beta, alpha});
    return ClockFunction(Kind::BetaAlpha, beta, alpha);
  }

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  /// Only meaningful for Kind::BetaAlpha.
  double beta() const { return beta_; }

  double lower() const { return 0.0; }
  double upper() const { return kind_ == Kind::Alpha ? kInf : 1.0; }

  double operator()(double t) const {
    if (kind_ == Kind::Alpha) return clock_alpha({alpha_}, t);
    return clock_beta_alpha({beta_, alpha_}, t);
  }

  /// r evaluated at upper() - v; exact near s = 1 for the (0,1) family.
  double value_below_upper(double v) const {
    if (kind_ == Kind::Alpha) return 0.0;
    if (!(v > 0.0 && v < 1.0)) throw DomainError("clock r_{beta,alpha}: need 0 < v < 1");
    return detail::beta_clock_unnormalized({beta_, alpha_}, 1.0 - v, v) * inv_norm_;
  }

  double density(double t) const {
    if (kind_ == Kind::Alpha) return std::exp(-(alpha_ + 1.0) * std::log(t) - t);
    return std::pow(1.0 - t, alpha_ - beta_ - 1.0) * std::pow(t, -alpha_ - 1.0) * inv_norm_;
  }

  /// density(t) * t^{alpha+1}: the factor left after removing the power at 0.
  double smooth_factor(double t) const {
    if (kind_ == Kind::Alpha) return std::exp(-t);
    return std::pow(1.0 - t, alpha_ - beta_ - 1.0) * inv_norm_;
  }

  /// density(upper() - v) computed from v, for the (0,1) family.
  double density_below_upper(double v) const {
    return std::pow(v, alpha_ - beta_ - 1.0) * std::pow(1.0 - v, -alpha_ - 1.0) * inv_norm_;
  }

  /// The density behaves like t^{left_exponent()} as t -> 0+.
  double left_exponent() const { return -alpha_ - 1.0; }
  /// The density behaves like (1-s)^{right_exponent()} as s -> 1- ((0,1) family).
  double right_exponent() const {
    return kind_ == Kind::BetaAlpha ? alpha_ - beta_ - 1.0 : 0.0;
  }

  /// r(0+); infinite when alpha >= 0.
  double total_mass() const {
    if (alpha_ >= 0.0) return kInf;
    if (kind_ == Kind::Alpha) return std::tgamma(-alpha_);
    return std::tgamma(-alpha_) / std::tgamma(-beta_);
  }

  std::string name() const {
    if (kind_ == Kind::Alpha) return "r_{" + format_real(alpha_) + "}";
    return "r_{" + format_real(beta_) + "," + format_real(alpha_) + "}";
  }

private:
  ClockFunction(Kind kind, double beta, double alpha)
      : kind_(kind), beta_(beta), alpha_(alpha),
        inv_norm_(kind == Kind::BetaAlpha ? 1.0 / std::tgamma(alpha - beta) : 1.0) {}

  Kind kind_;
  double beta_;
  double alpha_;
  double inv_norm_;
};

/// Solves clock(t) = x for t by bracketing and bisection.
///
/// Bisection runs geometrically while the bracket spans more than a factor
/// of four, so very small or very large solutions are found in O(log) steps.
/// Stops once |clock(t) - x| <= tol or the bracket can no longer be split.
inline double invert_clock(const ClockFunction& clock, double x, double tol = 1e-12) {
  if (!(tol > 0.0)) throw DomainError("invert_clock: tol must be positive");
  if (!(x > 0.0)) throw RangeError("invert_clock: target must be positive");
  if (!(x < clock.total_mass())) throw RangeError("invert_clock: target exceeds the clock's total mass");

  const double top = clock.upper();
  // Bracket: clock(lo) > x > clock(hi); hi == 1 for the (0,1) family stands for r(1) = 0.
  double lo = 0.5;
  double hi = top == kInf ? 1.0 : top;
  double f_lo = clock(lo);
  if (f_lo <= x) {
    hi = lo;
    while (f_lo <= x) {
      if (std::abs(f_lo - x) <= tol) return lo;
      hi = lo;
      lo *= 0.5;
      if (lo < std::numeric_limits<double>::min()) throw RangeError("invert_clock: no bracket found");
      f_lo = clock(lo);
    }
  } else if (top == kInf) {
    double f_hi = clock(hi);
    while (f_hi >= x) {
      if (std::abs(f_hi - x) <= tol) return hi;
      lo = hi;
      hi *= 2.0;
      f_hi = clock(hi);
    }
  }

  double best = lo;
  double best_err = std::abs(f_lo - x);
  for (int iter = 0; iter < 4000; ++iter) {
    const double mid = (lo > 0.0 && hi > 4.0 * lo) ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double f_mid = clock(mid);
    const double err = std::abs(f_mid - x);
    if (err < best_err) {
      best = mid;
      best_err = err;
    }
    if (err <= tol) return mid;
    if (f_mid > x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return best;
}

} // namespace rimap
