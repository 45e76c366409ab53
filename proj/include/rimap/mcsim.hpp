#pragma once

// Monte Carlo for the stochastic integral int_{(a,b]} h(t) dY(r(t)), defined
// by integration by parts:
//   h(b) Y(r(b)) - h(a) Y(r(a)) - int_{(a,b]} Y(r(t)-) dh(t).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "rimap/errors.hpp"
#include "rimap/idlaw.hpp"
#include "rimap/mapping.hpp"
#include "rimap/parallel.hpp"
#include "rimap/rng.hpp"

namespace rimap {

struct PathConfig {
  IDLaw law;
  std::vector<double> time_grid; // starts at 0, strictly increasing
  std::uint64_t seed = 0;
  std::uint64_t index = 0; // substream within the seed
};

/// A Levy path on [0, horizon]: a continuous part known on the grid (linear in
/// between) plus finitely many jumps.
class Path {
public:
  /// Builds a path from explicit parts; continuous holds d values per grid time.
  static Path from_parts(std::size_t d, std::vector<double> times, std::vector<double> continuous,
                         std::vector<std::pair<double, Vector>> jumps) {
    check_grid(times);
    if (continuous.size() != times.size() * d) throw DimensionMismatch("path: continuous part has wrong size");
    Path p;
    p.dim_ = d;
    p.times_ = std::move(times);
    p.cont_ = std::move(continuous);
    std::sort(jumps.begin(), jumps.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    p.jump_prefix_.assign(d, 0.0);
    for (const auto& [t, x] : jumps) {
      if (x.size() != d) throw DimensionMismatch("path: jump has wrong dimension");
      if (!(t > 0.0) || t > p.horizon()) throw DomainError("path: jump time outside (0, horizon]");
      p.jump_times_.push_back(t);
      for (std::size_t k = 0; k < d; ++k) p.jump_prefix_.push_back(p.jump_prefix_[p.jump_prefix_.size() - d] + x[k]);
    }
    return p;
  }

  std::size_t dimension() const { return dim_; }
  double horizon() const { return times_.back(); }
  std::size_t jump_count() const { return jump_times_.size(); }
  const std::vector<double>& times() const { return times_; }

  /// Y(t), right-continuous.
  Vector value(double t) const {
    Vector out(dim_, 0.0);
    accumulate(t, false, out.data());
    return out;
  }

  /// Y(t-): jumps located exactly at t are excluded.
  Vector left_limit(double t) const {
    Vector out(dim_, 0.0);
    accumulate(t, true, out.data());
    return out;
  }

  /// out += Y(t) or Y(t-).
  void accumulate(double t, bool left, double* out) const {
    if (!(t >= 0.0) || t > horizon()) throw RangeError("path: time outside [0, horizon]");
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const std::size_t hi = std::min<std::size_t>(it - times_.begin(), times_.size() - 1);
    const std::size_t lo = hi == 0 ? 0 : hi - 1;
    if (times_[lo] == t || lo == hi) {
      for (std::size_t k = 0; k < dim_; ++k) out[k] += cont_[lo * dim_ + k];
    } else if (times_[hi] == t) {
      for (std::size_t k = 0; k < dim_; ++k) out[k] += cont_[hi * dim_ + k];
    } else {
      const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
      for (std::size_t k = 0; k < dim_; ++k) {
        out[k] += (1.0 - w) * cont_[lo * dim_ + k] + w * cont_[hi * dim_ + k];
      }
    }
    const auto jt = left ? std::lower_bound(jump_times_.begin(), jump_times_.end(), t)
                         : std::upper_bound(jump_times_.begin(), jump_times_.end(), t);
    const std::size_t n = jt - jump_times_.begin();
    for (std::size_t k = 0; k < dim_; ++k) out[k] += jump_prefix_[n * dim_ + k];
  }

  /// Reads Y(t-) at nondecreasing times in amortized constant time.
  class LeftLimitWalker {
  public:
    explicit LeftLimitWalker(const Path& p) : p_(p) {}

    void accumulate(double t, double* out) {
      if (!(t >= last_) || t > p_.horizon()) throw RangeError("path walker: times must increase within the horizon");
      last_ = t;
      const auto& ts = p_.times_;
      const std::size_t d = p_.dim_;
      while (g_ + 1 < ts.size() && ts[g_ + 1] <= t) ++g_;
      if (ts[g_] == t || g_ + 1 == ts.size()) {
        for (std::size_t k = 0; k < d; ++k) out[k] += p_.cont_[g_ * d + k];
      } else {
        const double w = (t - ts[g_]) / (ts[g_ + 1] - ts[g_]);
        for (std::size_t k = 0; k < d; ++k) {
          out[k] += (1.0 - w) * p_.cont_[g_ * d + k] + w * p_.cont_[(g_ + 1) * d + k];
        }
      }
      while (j_ < p_.jump_times_.size() && p_.jump_times_[j_] < t) ++j_;
      for (std::size_t k = 0; k < d; ++k) out[k] += p_.jump_prefix_[j_ * d + k];
    }

  private:
    const Path& p_;
    std::size_t g_ = 0;
    std::size_t j_ = 0;
    double last_ = 0.0;
  };

  static void check_grid(const std::vector<double>& times) {
    if (times.empty() || times.front() != 0.0) throw DomainError("time grid must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (!(times[i] > times[i - 1]) || !std::isfinite(times[i])) {
        throw DomainError("time grid must be strictly increasing and finite");
      }
    }
  }

private:
  std::size_t dim_ = 1;
  std::vector<double> times_;
  std::vector<double> cont_;
  std::vector<double> jump_times_;
  std::vector<double> jump_prefix_; // (count + 1) * d running sums
};

namespace detail {

struct JumpSource {
  double rate = 0.0;
  std::vector<Vector> jumps;
  std::vector<double> weights;
};

// Gaussian drift and covariance factor plus the finite jump part of a law.
struct PathModel {
  std::size_t d = 1;
  Vector drift;
  std::vector<double> chol;
  bool has_gaussian = false;
  std::vector<JumpSource> sources;
};

inline PathModel path_model(const IDLaw& law) {
  PathModel m;
  m.d = law.dimension();
  m.drift.assign(m.d, 0.0);
  std::vector<double> cov(m.d * m.d, 0.0);
  for (const auto& part : law.components()) {
    if (const auto* g = std::get_if<Gaussian>(&part)) {
      for (std::size_t k = 0; k < m.d; ++k) m.drift[k] += g->shift[k];
      for (std::size_t k = 0; k < cov.size(); ++k) cov[k] += g->covariance[k];
    } else if (const auto* cp = std::get_if<CompoundPoisson>(&part)) {
      JumpSource s{cp->rate, {}, {}};
      for (const auto& a : cp->atoms) {
        s.jumps.push_back(a.jump);
        s.weights.push_back(a.weight);
      }
      m.sources.push_back(std::move(s));
    } else if (const auto* t = std::get_if<Triplet>(&part)) {
      for (std::size_t k = 0; k < m.d; ++k) m.drift[k] += t->shift[k];
      for (std::size_t k = 0; k < cov.size(); ++k) cov[k] += t->covariance[k];
      JumpSource s;
      for (const auto& a : t->levy_atoms) {
        s.rate += a.weight;
        s.jumps.push_back(a.jump);
        s.weights.push_back(a.weight);
        // Compensated small jumps: subtract their mean drift.
        if (detail::norm(a.jump) <= 1.0) {
          for (std::size_t k = 0; k < m.d; ++k) m.drift[k] -= a.weight * a.jump[k];
        }
      }
      if (!s.jumps.empty()) m.sources.push_back(std::move(s));
    } else {
      throw UnsupportedVariant("path simulation supports Gaussian, compound Poisson and triplet laws only");
    }
  }
  m.chol = psd_cholesky(cov, m.d);
  m.has_gaussian = std::any_of(cov.begin(), cov.end(), [](double v) { return v != 0.0; });
  return m;
}

} // namespace detail

/// One path on config.time_grid. Gaussian increments are exact on the grid;
/// the jump part is a compound Poisson process over the whole horizon, so
/// every grid cell receives an independent Poisson number of jumps.
inline Path simulate_path(const PathConfig& config) {
  Path::check_grid(config.time_grid);
  const detail::PathModel model = detail::path_model(config.law);
  const std::size_t d = model.d;
  const auto& grid = config.time_grid;
  Engine eng = substream(config.seed, config.index);

  std::vector<double> cont(grid.size() * d, 0.0);
  std::normal_distribution<double> normal;
  Vector z(d);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double dt = grid[i] - grid[i - 1];
    const double sd = std::sqrt(dt);
    if (model.has_gaussian) {
      for (auto& v : z) v = normal(eng);
    }
    for (std::size_t k = 0; k < d; ++k) {
      double inc = model.drift[k] * dt;
      if (model.has_gaussian) {
        for (std::size_t j = 0; j <= k; ++j) inc += model.chol[k * d + j] * sd * z[j];
      }
      cont[i * d + k] = cont[(i - 1) * d + k] + inc;
    }
  }

  std::vector<std::pair<double, Vector>> jumps;
  const double horizon = grid.back();
  for (const auto& src : model.sources) {
    if (src.rate == 0.0 || horizon == 0.0) continue;
    std::poisson_distribution<long> count(src.rate * horizon);
    std::uniform_real_distribution<double> when(0.0, horizon);
    std::discrete_distribution<std::size_t> which(src.weights.begin(), src.weights.end());
    const long n = count(eng);
    for (long j = 0; j < n; ++j) {
      double t = when(eng);
      if (t == 0.0) t = horizon; // uniform on (0, horizon]
      jumps.emplace_back(t, src.jumps[which(eng)]);
    }
  }
  return Path::from_parts(d, grid, std::move(cont), std::move(jumps));
}

/// Riemann-Stieltjes partition of (a, b] into m equal cells with midpoint
/// tags: h at the ends, the increments of h, and r at the ends and tags.
struct Partition {
  double h_a = 0.0;
  double h_b = 0.0;
  double r_a = 0.0;
  double r_b = 0.0;
  std::vector<double> dh;
  std::vector<double> r_tag;
};

inline Partition make_partition(const MappingSpec& spec, std::size_t m) {
  if (spec.improper()) throw DomainError("integrate_by_parts: truncate improper mappings first");
  Partition p;
  if (spec.empty()) return p;
  const ClockFunction& r = spec.clock();
  const SpaceChange& h = spec.space_change();
  const double a = spec.a();
  const double b = spec.b();
  if (!(a > r.lower())) throw DomainError("integrate_by_parts: need a > 0 so that r(a) is finite");
  p.h_a = h(a);
  p.h_b = h(b);
  p.r_a = r(a);
  p.r_b = b >= r.upper() ? 0.0 : r(b);
  p.dh.resize(m);
  p.r_tag.resize(m);
  const double w = (b - a) / static_cast<double>(m);
  double left = a;
  double h_left = p.h_a;
  for (std::size_t i = 0; i < m; ++i) {
    const double right = i + 1 == m ? b : a + w * static_cast<double>(i + 1);
    const double h_right = i + 1 == m ? p.h_b : h(right);
    p.dh[i] = h_right - h_left;
    p.r_tag[i] = r(0.5 * (left + right));
    left = right;
    h_left = h_right;
  }
  return p;
}

/// Clock times a path must cover for this partition, sorted and starting at 0.
inline std::vector<double> partition_times(const Partition& p) {
  std::vector<double> t = p.r_tag;
  t.push_back(0.0);
  t.push_back(p.r_a);
  t.push_back(p.r_b);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

/// h(b) Y(r(b)) - h(a) Y(r(a)) - sum_i Y(r(tag_i)-) dh_i.
inline Vector ibp_sum(const Path& path, const Partition& p) {
  const std::size_t d = path.dimension();
  Vector out(d, 0.0);
  if (p.dh.empty()) return out;
  if (path.horizon() < p.r_a) throw RangeError("integrate_by_parts: path does not reach r(a)");
  Vector tmp(d);
  auto add = [&](double t, bool left, double coeff) {
    std::fill(tmp.begin(), tmp.end(), 0.0);
    path.accumulate(t, left, tmp.data());
    for (std::size_t k = 0; k < d; ++k) out[k] += coeff * tmp[k];
  };
  add(p.r_b, false, p.h_b);
  add(p.r_a, false, -p.h_a);
  // Tags run left to right in t, so their clock times decrease; walk them
  // backwards to read the path in increasing time.
  Path::LeftLimitWalker walker(path);
  for (std::size_t i = p.dh.size(); i-- > 0;) {
    std::fill(tmp.begin(), tmp.end(), 0.0);
    walker.accumulate(p.r_tag[i], tmp.data());
    for (std::size_t k = 0; k < d; ++k) out[k] -= p.dh[i] * tmp[k];
  }
  return out;
}

struct IbpOptions {
  double tol = 1e-6;
  std::size_t initial_cells = 16;
  std::size_t max_cells = std::size_t{1} << 16;
};

/// The integration-by-parts value of int_{(a,b]} h dY(r(.)) for one path,
/// doubling the partition until successive sums differ by less than tol in
/// Euclidean norm. Throws NonConvergent if max_cells is reached first.
inline Vector integrate_by_parts(const Path& path, const MappingSpec& spec, const IbpOptions& opt = {}) {
  if (spec.improper()) throw DomainError("integrate_by_parts: truncate improper mappings first");
  if (spec.empty()) return Vector(path.dimension(), 0.0);
  std::size_t m = std::max<std::size_t>(1, opt.initial_cells);
  Vector prev = ibp_sum(path, make_partition(spec, m));
  while (m < opt.max_cells) {
    m *= 2;
    Vector cur = ibp_sum(path, make_partition(spec, m));
    double diff = 0.0;
    for (std::size_t k = 0; k < cur.size(); ++k) diff += (cur[k] - prev[k]) * (cur[k] - prev[k]);
    if (std::sqrt(diff) < opt.tol) return cur;
    prev = std::move(cur);
  }
  throw NonConvergent("integrate_by_parts: Riemann-Stieltjes sums did not settle");
}

/// Empirical characteristic function on a grid of frequencies.
struct MCResult {
  std::size_t sample_count = 0;
  std::vector<Vector> y_grid;
  std::vector<Complex> ecf;
  std::vector<double> std_err_re;
  std::vector<double> std_err_im;
};

inline MCResult empirical_cf(std::span<const Vector> samples, std::span<const Vector> y_grid) {
  if (samples.empty()) throw DomainError("empirical_cf: no samples");
  const std::size_t n = samples.size();
  const std::size_t d = samples.front().size();
  MCResult res;
  res.sample_count = n;
  for (const auto& y : y_grid) {
    if (y.size() != d) throw DimensionMismatch("empirical_cf: frequency has wrong dimension");
    res.y_grid.push_back(y);
    auto phase = [&](std::size_t j) {
      double s = 0.0;
      for (std::size_t k = 0; k < d; ++k) s += y[k] * samples[j][k];
      return s;
    };
    const double mean_re = pairwise_sum<double>(0, n, [&](std::size_t j) { return std::cos(phase(j)); }) / n;
    const double mean_im = pairwise_sum<double>(0, n, [&](std::size_t j) { return std::sin(phase(j)); }) / n;
    double se_re = 0.0;
    double se_im = 0.0;
    if (n > 1) {
      const double ss_re = pairwise_sum<double>(0, n, [&](std::size_t j) {
        const double e = std::cos(phase(j)) - mean_re;
        return e * e;
      });
      const double ss_im = pairwise_sum<double>(0, n, [&](std::size_t j) {
        const double e = std::sin(phase(j)) - mean_im;
        return e * e;
      });
      se_re = std::sqrt(ss_re / static_cast<double>(n - 1) / static_cast<double>(n));
      se_im = std::sqrt(ss_im / static_cast<double>(n - 1) / static_cast<double>(n));
    }
    res.ecf.emplace_back(mean_re, mean_im);
    res.std_err_re.push_back(se_re);
    res.std_err_im.push_back(se_im);
  }
  return res;
}

struct McOptions {
  std::size_t cells = 1024;  // partition of (a, b] shared by all samples
  unsigned threads = 0;      // 0 = all cores
  double quad_tol = 1e-10;   // for the quadrature side of the comparison
};

struct McPoint {
  Vector y;
  Complex ecf;
  Complex model; // exp of the mapped exponent
  double std_err_re = 0.0;
  double std_err_im = 0.0;
  double z = 0.0;
};

struct McReport {
  std::size_t sample_count = 0;
  double max_z = 0.0;
  std::vector<McPoint> points;
};

/// Studentized distance between a CF estimate and a model value: the larger
/// of the real and imaginary discrepancies over their standard errors.
inline double studentized(Complex est, Complex model, double se_re, double se_im) {
  auto one = [](double diff, double se) {
    if (se > 0.0) return std::abs(diff) / se;
    return std::abs(diff) <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
  };
  return std::max(one(est.real() - model.real(), se_re), one(est.imag() - model.imag(), se_im));
}

/// Draws n_samples integrals of the (proper) mapping and compares their
/// empirical CF with exp of the quadrature exponent on y_grid.
///
/// r decreases, so dY(r(t)) runs the path backwards and the simulated
/// integral has exponent map_exponent at -y; the comparison uses that.
/// All samples share one partition with opt.cells cells and each path is
/// generated on exactly the clock times that partition reads.
inline McReport mc_verify_mapping(const MappingSpec& spec, const IDLaw& law, std::span<const Vector> y_grid,
                                  std::size_t n_samples, std::uint64_t seed, const McOptions& opt = {}) {
  if (n_samples == 0) throw DomainError("mc_verify_mapping: need at least one sample");
  if (!law.simulable()) throw UnsupportedVariant("mc_verify_mapping: law cannot be simulated");
  if (spec.improper()) throw DomainError("mc_verify_mapping: truncate improper mappings first");
  const std::size_t d = law.dimension();

  std::vector<Vector> samples(n_samples, Vector(d, 0.0));
  if (!spec.empty()) {
    const Partition part = make_partition(spec, std::max<std::size_t>(1, opt.cells));
    const std::vector<double> grid = partition_times(part);
    parallel_for(n_samples, opt.threads, [&](std::size_t i) {
      const Path path = simulate_path(PathConfig{law, grid, seed, i});
      samples[i] = ibp_sum(path, part);
    });
  }
  const MCResult mc = empirical_cf(samples, y_grid);

  McReport rep;
  rep.sample_count = n_samples;
  for (std::size_t j = 0; j < y_grid.size(); ++j) {
    Vector neg = y_grid[j];
    for (auto& c : neg) c = -c;
    McPoint pt;
    pt.y = y_grid[j];
    pt.ecf = mc.ecf[j];
    pt.model = std::exp(map_exponent(spec, law, neg, opt.quad_tol));
    pt.std_err_re = mc.std_err_re[j];
    pt.std_err_im = mc.std_err_im[j];
    pt.z = studentized(pt.ecf, pt.model, pt.std_err_re, pt.std_err_im);
    rep.max_z = std::max(rep.max_z, pt.z);
    rep.points.push_back(std::move(pt));
  }
  return rep;
}

} // namespace rimap
