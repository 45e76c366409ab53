#pragma once

// Compact law strings, family:key=value,... e.g.
//   stable:p=1.5,c=1[,d=2]
//   gaussian:mean=0,var=1          gaussian:shift=0|0,cov=1|0|0|1
//   cpoisson:rate=1,atoms=-1@0.5;1@0.5   (jump components joined by '|')
//   gamma:shape=2,rate=1
//   triplet:shift=0,cov=0,atoms=0.5@1;-2@0.3
//   delta0[:d=2]
// Laws with several components print as their parts joined by " * ".

#include <charconv>
#include <map>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "rimap/errors.hpp"
#include "rimap/idlaw.hpp"
#include "rimap/specfun.hpp"

namespace rimap {

namespace detail {

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline double parse_real(std::string_view s, std::string_view what) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError("cannot read a number from '" + std::string(s) + "' for " + std::string(what));
  }
  return v;
}

inline std::vector<double> parse_reals(std::string_view s, char sep, std::string_view what) {
  std::vector<double> out;
  for (auto part : split(s, sep)) out.push_back(parse_real(part, what));
  return out;
}

inline std::vector<Atom> parse_atoms(std::string_view s) {
  std::vector<Atom> atoms;
  for (auto item : split(s, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto at = item.find('@');
    if (at == std::string_view::npos) throw ConfigError("atom '" + std::string(item) + "' needs jump@weight");
    atoms.push_back({parse_reals(item.substr(0, at), '|', "atom jump"), parse_real(item.substr(at + 1), "atom weight")});
  }
  return atoms;
}

inline std::string join_reals(const std::vector<double>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_real(v[i]);
  }
  return out;
}

inline std::string join_atoms(const std::vector<Atom>& atoms) {
  std::string out;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) out += ';';
    out += join_reals(atoms[i].jump, '|') + "@" + format_real(atoms[i].weight);
  }
  return out;
}

} // namespace detail

/// Parses one law string; errors in the text raise ConfigError, invalid
/// parameters the factories' DomainError.
inline IDLaw parse_law(std::string_view text) {
  text = detail::trim(text);
  const auto colon = text.find(':');
  const std::string family(detail::trim(text.substr(0, colon)));
  std::map<std::string, std::string, std::less<>> kv;
  if (colon != std::string_view::npos) {
    for (auto item : detail::split(text.substr(colon + 1), ',')) {
      item = detail::trim(item);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw ConfigError("law option '" + std::string(item) + "' needs key=value");
      const std::string key(detail::trim(item.substr(0, eq)));
      if (!kv.emplace(key, std::string(detail::trim(item.substr(eq + 1)))).second) {
        throw ConfigError("law option '" + key + "' given twice");
      }
    }
  }
  auto take = [&](const char* key) -> std::string {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError(family + " law needs " + key + "=");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto take_or = [&](const char* key, std::string fallback) {
    auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto finish = [&](IDLaw law) {
    if (!kv.empty()) throw ConfigError(family + " law: unknown option '" + kv.begin()->first + "'");
    return law;
  };

  if (family == "stable") {
    const double p = detail::parse_real(take("p"), "p");
    const double c = detail::parse_real(take_or("c", "1"), "c");
    const double d = detail::parse_real(take_or("d", "1"), "d");
    return finish(IDLaw::symmetric_stable(p, c, static_cast<std::size_t>(d)));
  }
  if (family == "gaussian") {
    if (kv.contains("shift") || kv.contains("cov")) {
      auto shift = detail::parse_reals(take("shift"), '|', "shift");
      auto cov = detail::parse_reals(take("cov"), '|', "cov");
      return finish(IDLaw::gaussian(std::move(shift), std::move(cov)));
    }
    const double mean = detail::parse_real(take_or("mean", "0"), "mean");
    const double var = detail::parse_real(take_or("var", "1"), "var");
    return finish(IDLaw::gaussian_1d(mean, var));
  }
  if (family == "cpoisson") {
    const double rate = detail::parse_real(take("rate"), "rate");
    return finish(IDLaw::compound_poisson(rate, detail::parse_atoms(take("atoms"))));
  }
  if (family == "gamma") {
    const double shape = detail::parse_real(take("shape"), "shape");
    const double rate = detail::parse_real(take_or("rate", "1"), "rate");
    return finish(IDLaw::gamma_subordinator(shape, rate));
  }
  if (family == "triplet") {
    auto shift = detail::parse_reals(take("shift"), '|', "shift");
    auto cov = detail::parse_reals(take("cov"), '|', "cov");
    auto atoms = detail::parse_atoms(take_or("atoms", ""));
    return finish(IDLaw::triplet(std::move(shift), std::move(cov), std::move(atoms)));
  }
  if (family == "delta0") {
    const double d = detail::parse_real(take_or("d", "1"), "d");
    return finish(IDLaw::point_mass_at_zero(static_cast<std::size_t>(d)));
  }
  throw ConfigError("unknown law family '" + family + "'");
}

/// Canonical law string; parse_law(describe_law(l)) rebuilds l.
inline std::string describe_law(const IDLaw& law) {
  std::string out;
  const std::size_t d = law.dimension();
  for (const auto& part : law.components()) {
    if (!out.empty()) out += " * ";
    out += std::visit(
        [&](const auto& c) -> std::string {
          using T = std::decay_t<decltype(c)>;
          if constexpr (std::is_same_v<T, SymmetricStable>) {
            std::string s = "stable:p=" + format_real(c.exponent) + ",c=" + format_real(c.scale);
            if (d > 1) s += ",d=" + std::to_string(d);
            return s;
          } else if constexpr (std::is_same_v<T, Gaussian>) {
            if (d == 1) return "gaussian:mean=" + format_real(c.shift[0]) + ",var=" + format_real(c.covariance[0]);
            return "gaussian:shift=" + detail::join_reals(c.shift, '|') + ",cov=" + detail::join_reals(c.covariance, '|');
          } else if constexpr (std::is_same_v<T, CompoundPoisson>) {
            return "cpoisson:rate=" + format_real(c.rate) + ",atoms=" + detail::join_atoms(c.atoms);
          } else if constexpr (std::is_same_v<T, GammaSubordinator>) {
            return "gamma:shape=" + format_real(c.shape) + ",rate=" + format_real(c.rate);
          } else {
            bool zero = c.levy_atoms.empty();
            for (double v : c.shift) zero = zero && v == 0.0;
            for (double v : c.covariance) zero = zero && v == 0.0;
            if (zero) return d > 1 ? "delta0:d=" + std::to_string(d) : "delta0";
            std::string s = "triplet:shift=" + detail::join_reals(c.shift, '|') + ",cov=" +
                            detail::join_reals(c.covariance, '|');
            if (!c.levy_atoms.empty()) s += ",atoms=" + detail::join_atoms(c.levy_atoms);
            return s;
          }
        },
        part);
  }
  return out;
}

} // namespace rimap
