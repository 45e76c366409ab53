#pragma once

// Infinitely divisible laws on R^d (d <= 3) and their characteristic
// exponents Phi(y) = log E exp(i <y, X>).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rimap/errors.hpp"

namespace rimap {

using Complex = std::complex<double>;
using Vector = std::vector<double>;

inline constexpr std::size_t kMaxDimension = 3;

/// A jump x with a weight: a probability for compound Poisson atoms, a Levy
/// mass for triplet atoms.
struct Atom {
  Vector jump;
  double weight;
};

struct Gaussian {
  Vector shift;
  std::vector<double> covariance; // row-major d x d
};

struct CompoundPoisson {
  double rate;
  std::vector<Atom> atoms;
};

/// Isotropic: Phi(y) = -scale * |y|^exponent.
struct SymmetricStable {
  double exponent;
  double scale;
};

/// One-dimensional: Phi(y) = -shape * log(1 - i y / rate).
struct GammaSubordinator {
  double shape;
  double rate;
};

/// Levy triplet with a finite atomic Levy measure; jumps with |x| <= 1 are
/// compensated.
struct Triplet {
  Vector shift;
  std::vector<double> covariance;
  std::vector<Atom> levy_atoms;
};

using LawComponent = std::variant<Gaussian, CompoundPoisson, SymmetricStable, GammaSubordinator, Triplet>;

namespace detail {

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double quadratic_form(const std::vector<double>& m, std::span<const double> y) {
  const std::size_t d = y.size();
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) s += y[i] * m[i * d + j] * y[j];
  }
  return s;
}

/// Lower-triangular L with L L^T = m for a symmetric PSD matrix (zero pivots
/// allowed). Throws DomainError if m is not PSD within a relative 1e-12.
inline std::vector<double> psd_cholesky(const std::vector<double>& m, std::size_t d) {
  std::vector<double> l(d * d, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < d; ++i) scale = std::max(scale, std::abs(m[i * d + i]));
  const double eps = 1e-12 * std::max(scale, 1.0);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = m[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= l[j * d + k] * l[j * d + k];
    if (diag < -eps) throw DomainError("covariance is not positive semidefinite");
    const double ljj = diag > eps ? std::sqrt(diag) : 0.0;
    l[j * d + j] = ljj;
    for (std::size_t i = j + 1; i < d; ++i) {
      double v = m[i * d + j];
      for (std::size_t k = 0; k < j; ++k) v -= l[i * d + k] * l[j * d + k];
      if (ljj > 0.0) {
        l[i * d + j] = v / ljj;
      } else if (std::abs(v) > eps) {
        throw DomainError("covariance is not positive semidefinite");
      }
    }
  }
  return l;
}

inline void check_covariance(const std::vector<double>& cov, std::size_t d) {
  if (cov.size() != d * d) throw DimensionMismatch("covariance must be d x d");
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double a = cov[i * d + j];
      const double b = cov[j * d + i];
      if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)})) {
        throw DomainError("covariance is not symmetric");
      }
    }
  }
  (void)psd_cholesky(cov, d);
}

inline void check_atoms(const std::vector<Atom>& atoms, std::size_t d) {
  for (const auto& a : atoms) {
    if (a.jump.size() != d) throw DimensionMismatch("atom jump has wrong dimension");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight)) throw DomainError("atom weight must be positive");
  }
}

// e^{i theta} - 1 without cancellation in the real part.
inline Complex expm1i(double theta) {
  const double h = std::sin(0.5 * theta);
  return {-2.0 * h * h, std::sin(theta)};
}

} // namespace detail

/// An infinitely divisible law, stored as a convolution of components.
///
/// Most laws have exactly one component; convolve() concatenates.
class IDLaw {
public:
  static IDLaw gaussian(Vector shift, std::vector<double> covariance) {
    const std::size_t d = shift.size();
    check_dimension(d);
    detail::check_covariance(covariance, d);
    return IDLaw(d, Gaussian{std::move(shift), std::move(covariance)});
  }

  static IDLaw gaussian_1d(double mean, double variance) { return gaussian({mean}, {variance}); }

  static IDLaw compound_poisson(double rate, std::vector<Atom> atoms) {
    if (atoms.empty()) throw DomainError("compound Poisson law needs at least one atom");
    const std::size_t d = atoms.front().jump.size();
    check_dimension(d);
    if (!(rate >= 0.0) || !std::isfinite(rate)) throw DomainError("compound Poisson rate must be >= 0");
    detail::check_atoms(atoms, d);
    double total = 0.0;
    for (const auto& a : atoms) total += a.weight;
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("compound Poisson probabilities must sum to 1");
    return IDLaw(d, CompoundPoisson{rate, std::move(atoms)});
  }

  static IDLaw symmetric_stable(double exponent, double scale, std::size_t d = 1) {
    check_dimension(d);
    if (!(exponent > 0.0 && exponent <= 2.0)) throw DomainError("stable exponent must lie in (0, 2]");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("stable scale must be positive");
    return IDLaw(d, SymmetricStable{exponent, scale});
  }

  static IDLaw gamma_subordinator(double shape, double rate) {
    if (!(shape > 0.0) || !(rate > 0.0) || !std::isfinite(shape) || !std::isfinite(rate)) {
      throw DomainError("gamma subordinator needs positive shape and rate");
    }
    return IDLaw(1, GammaSubordinator{shape, rate});
  }

  static IDLaw triplet(Vector shift, std::vector<double> covariance, std::vector<Atom> levy_atoms) {
    const std::size_t d = shift.size();
    check_dimension(d);
    detail::check_covariance(covariance, d);
    detail::check_atoms(levy_atoms, d);
    for (const auto& a : levy_atoms) {
      if (detail::norm(a.jump) == 0.0) throw DomainError("Levy measure atoms must exclude the zero jump");
    }
    return IDLaw(d, Triplet{std::move(shift), std::move(covariance), std::move(levy_atoms)});
  }

  /// delta_0 as the empty triplet.
  static IDLaw point_mass_at_zero(std::size_t d = 1) {
    return triplet(Vector(d, 0.0), std::vector<double>(d * d, 0.0), {});
  }

  std::size_t dimension() const { return dim_; }
  const std::vector<LawComponent>& components() const { return parts_; }

  /// True when every component is a Gaussian, compound Poisson or triplet.
  bool simulable() const {
    for (const auto& c : parts_) {
      if (std::holds_alternative<SymmetricStable>(c) || std::holds_alternative<GammaSubordinator>(c)) {
        return false;
      }
    }
    return true;
  }

  /// The single stable component, if the law is exactly one symmetric stable.
  const SymmetricStable* as_stable() const {
    if (parts_.size() != 1) return nullptr;
    return std::get_if<SymmetricStable>(&parts_.front());
  }

  /// Law of X + Y for independent X ~ a, Y ~ b.
  friend IDLaw convolve(const IDLaw& a, const IDLaw& b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch("convolve: dimensions differ");
    IDLaw out = a;
    out.parts_.insert(out.parts_.end(), b.parts_.begin(), b.parts_.end());
    return out;
  }

private:
  IDLaw(std::size_t d, LawComponent c) : dim_(d), parts_{std::move(c)} {}

  static void check_dimension(std::size_t d) {
    if (d == 0 || d > kMaxDimension) throw DimensionMismatch("dimension must be 1, 2 or 3");
  }

  std::size_t dim_;
  std::vector<LawComponent> parts_;
};

/// Phi_law restricted to the ray lambda -> lambda * y.
///
/// All inner products with y are precomputed, so evaluating Phi(lambda y) costs
/// one trigonometric pair per atom. This is what the quadrature routes call.
class RayExponent {
public:
  RayExponent(const IDLaw& law, std::span<const double> y) {
    if (y.size() != law.dimension()) throw DimensionMismatch("frequency vector has wrong dimension");
    for (const auto& part : law.components()) {
      std::visit([&](const auto& c) { add(c, y); }, part);
    }
  }

  Complex operator()(double lambda) const {
    double re = -0.5 * quad_ * lambda * lambda;
    double im = lin_ * lambda;
    for (const auto& j : jumps_) {
      const double theta = lambda * j.theta;
      const Complex e = detail::expm1i(theta);
      re += j.weight * e.real();
      im += j.weight * (e.imag() - (j.compensated ? theta : 0.0));
    }
    for (const auto& s : stables_) re -= s.coeff * std::pow(std::abs(lambda), s.exponent);
    for (const auto& g : gammas_) {
      const double z = lambda * g.ratio;
      re -= 0.5 * g.shape * std::log1p(z * z);
      im += g.shape * std::atan(z);
    }
    return {re, im};
  }

private:
  struct Jump {
    double theta;
    double weight;
    bool compensated;
  };
  struct Stable {
    double coeff;
    double exponent;
  };
  struct GammaTerm {
    double shape;
    double ratio;
  };

  void add(const Gaussian& g, std::span<const double> y) {
    lin_ += detail::dot(g.shift, y);
    quad_ += detail::quadratic_form(g.covariance, y);
  }
  void add(const CompoundPoisson& cp, std::span<const double> y) {
    for (const auto& a : cp.atoms) jumps_.push_back({detail::dot(a.jump, y), cp.rate * a.weight, false});
  }
  void add(const SymmetricStable& s, std::span<const double> y) {
    stables_.push_back({s.scale * std::pow(detail::norm(y), s.exponent), s.exponent});
  }
  void add(const GammaSubordinator& g, std::span<const double> y) {
    gammas_.push_back({g.shape, y[0] / g.rate});
  }
  void add(const Triplet& t, std::span<const double> y) {
    lin_ += detail::dot(t.shift, y);
    quad_ += detail::quadratic_form(t.covariance, y);
    for (const auto& a : t.levy_atoms) {
      jumps_.push_back({detail::dot(a.jump, y), a.weight, detail::norm(a.jump) <= 1.0});
    }
  }

  double lin_ = 0.0;
  double quad_ = 0.0;
  std::vector<Jump> jumps_;
  std::vector<Stable> stables_;
  std::vector<GammaTerm> gammas_;
};

/// Characteristic exponent Phi_law(y).
inline Complex exponent(const IDLaw& law, std::span<const double> y) { return RayExponent(law, y)(1.0); }

inline Complex convolve_exponents(const IDLaw& a, const IDLaw& b, std::span<const double> y) {
  if (a.dimension() != b.dimension()) throw DimensionMismatch("convolve_exponents: dimensions differ");
  return exponent(a, y) + exponent(b, y);
}

} // namespace rimap
