#pragma once

// Adaptive Gauss-Kronrod quadrature and truncation ladders for improper
// integrals. Integrands may return double or std::complex<double>.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "rimap/errors.hpp"

namespace rimap::quad {

struct Tolerance {
  double rel = 1e-10;
  double abs = 0.0;
  std::size_t max_intervals = 4000;
};

template <class V>
struct Result {
  V value{};
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kNodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 11> kKronrod = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208980108960, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for kNodes[1], kNodes[3], ..., kNodes[9].
inline constexpr std::array<double, 5> kGauss = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class V>
struct Panel {
  double a;
  double b;
  V value;
  double error;
};

template <class V>
struct WorseError {
  bool operator()(const Panel<V>& x, const Panel<V>& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

template <class V>
bool all_finite(const V& v) {
  if constexpr (std::is_same_v<V, double>) {
    return std::isfinite(v);
  } else {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  }
}

template <class V, class F>
Panel<V> kronrod21(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  std::array<V, 21> fv{};
  fv[20] = f(center);
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kNodes[j];
    fv[2 * j] = f(center - dx);
    fv[2 * j + 1] = f(center + dx);
  }

  V kronrod = fv[20] * kKronrod[10];
  V gauss{};
  for (std::size_t j = 0; j < 10; ++j) {
    kronrod += (fv[2 * j] + fv[2 * j + 1]) * kKronrod[j];
    if (j % 2 == 1) gauss += (fv[2 * j] + fv[2 * j + 1]) * kGauss[j / 2];
  }

  const V mean = kronrod * 0.5;
  double resabs = std::abs(fv[20]) * kKronrod[10];
  double resasc = std::abs(fv[20] - mean) * kKronrod[10];
  for (std::size_t j = 0; j < 10; ++j) {
    resabs += (std::abs(fv[2 * j]) + std::abs(fv[2 * j + 1])) * kKronrod[j];
    resasc += (std::abs(fv[2 * j] - mean) + std::abs(fv[2 * j + 1] - mean)) * kKronrod[j];
  }
  resabs *= abs_half;
  resasc *= abs_half;

  double err = std::abs((kronrod - gauss) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }

  V value = kronrod * half;
  if (!all_finite(value)) {
    throw NonConvergent("integrand is not finite on [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
  }
  return {a, b, value, err};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod (G10/K21) integration of f over [a, b].
///
/// Bisects the panel with the largest error estimate until the summed
/// estimate is below max(tol.abs, tol.rel * |I|). Never throws on failure to
/// converge; check Result::converged.
template <class F>
auto integrate(F&& f, double a, double b, const Tolerance& tol = {})
    -> Result<std::decay_t<std::invoke_result_t<F&, double>>> {
  using V = std::decay_t<std::invoke_result_t<F&, double>>;
  Result<V> out;
  if (a == b) return out;

  std::priority_queue<detail::Panel<V>, std::vector<detail::Panel<V>>, detail::WorseError<V>> heap;
  heap.push(detail::kronrod21<V>(f, a, b));
  out.evaluations = 21;

  V total = heap.top().value;
  double total_err = heap.top().error;
  // Relative accuracy below a few hundred ulps is unattainable in double.
  const double rel = std::max(tol.rel, 1e-14);

  while (total_err > std::max(tol.abs, rel * std::abs(total))) {
    if (heap.size() >= tol.max_intervals) {
      out.converged = false;
      break;
    }
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      heap.push(worst);
      out.converged = false;
      break;
    }
    auto left = detail::kronrod21<V>(f, worst.a, mid);
    auto right = detail::kronrod21<V>(f, mid, worst.b);
    out.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum in a fixed order so the result does not carry update drift.
  std::vector<detail::Panel<V>> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(),
            [](const auto& x, const auto& y) { return x.a < y.a; });
  out.value = V{};
  out.error = 0.0;
  for (const auto& p : panels) {
    out.value += p.value;
    out.error += p.error;
  }
  return out;
}

/// Settings for summing the pieces of an improper integral.
struct LadderSettings {
  double tol = 1e-10;        // relative, against the running estimate
  double abs_floor = 1e-300; // absolute floor for identically small integrals
  int max_steps = 80;
  double max_ratio = 0.97;   // geometric extrapolation only below this ratio
  int divergence_window = 6; // consecutive non-contracting pieces => divergent
};

struct LadderTrace {
  std::vector<double> increments; // |E_k - E_{k-1}| of the extrapolated values
  int steps = 0;
};

/// Sums piece(1), piece(2), ... where piece(k) integrates over the k-th
/// truncation shell, and returns the extrapolated limit.
///
/// The partial sums are corrected by a geometric tail estimate from the ratio
/// of the last two pieces. Accepts once three consecutive corrected values
/// agree within tolerance. `reference` is the part of the integral already
/// computed elsewhere; it only sets the scale of the relative tolerance.
template <class V, class PieceFn>
V sum_ladder(PieceFn&& piece, V reference, const LadderSettings& s,
             LadderTrace* trace = nullptr, const std::string& what = "integral") {
  V partial{};
  V prev_piece{};
  std::array<V, 3> est{};
  int growing = 0;
  for (int k = 1; k <= s.max_steps; ++k) {
    const V p = piece(k);
    partial += p;

    V tail{};
    if (k >= 2 && std::abs(prev_piece) > 0.0) {
      const V q = p / prev_piece;
      if (std::abs(q) < s.max_ratio) tail = p * q / (V(1.0) - q);
      if (std::abs(p) >= 0.999 * std::abs(prev_piece)) {
        ++growing;
      } else {
        growing = 0;
      }
    }
    prev_piece = p;

    est[0] = est[1];
    est[1] = est[2];
    est[2] = partial + tail;
    if (trace) {
      trace->steps = k;
      if (k >= 2) trace->increments.push_back(std::abs(est[2] - est[1]));
    }

    if (growing >= s.divergence_window) {
      throw NonConvergent(what + ": truncation ladder is not contracting");
    }
    if (k >= 3) {
      const double thr = std::max(s.abs_floor, s.tol * std::abs(reference + est[2]));
      if (std::abs(est[2] - est[1]) <= thr && std::abs(est[1] - est[0]) <= thr) {
        return est[2];
      }
    }
  }
  throw NonConvergent(what + ": truncation ladder did not settle");
}

} // namespace rimap::quad
