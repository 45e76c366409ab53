#pragma once

// CSV tables and JSON summaries for verification reports.

#include <algorithm>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "rimap/specfun.hpp"
#include "rimap/verify.hpp"

namespace rimap {

inline constexpr const char* kCsvHeader =
    "identity,route,params,y,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,passed";

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string join_semicolon(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_real(v[i]);
  }
  return out;
}

/// identity[pair] @ law, the first CSV column.
inline std::string row_identity(const VerificationReport& rep, const ResidualRow& row) {
  std::string s = rep.identity;
  if (!row.label.empty()) s += "[" + row.label + "]";
  if (!rep.law.empty()) s += " @ " + rep.law;
  return s;
}

struct CsvRow {
  std::string identity;
  std::string route;
  std::vector<double> params;
  Vector y;
  std::string line;
};

} // namespace detail

/// Writes all rows, sorted by identity column, route, params and y. Ties keep
/// their input order.
inline void write_csv(std::ostream& os, const std::vector<VerificationReport>& reports) {
  std::vector<detail::CsvRow> rows;
  for (const auto& rep : reports) {
    for (const auto& r : rep.rows) {
      detail::CsvRow cr;
      cr.identity = detail::row_identity(rep, r);
      cr.route = route_name(rep.route);
      cr.params = rep.params;
      cr.y = r.y;
      cr.line = detail::csv_field(cr.identity) + "," + cr.route + "," + detail::join_semicolon(rep.params) + "," +
                detail::join_semicolon(r.y) + "," + format_real(r.lhs.real()) + "," + format_real(r.lhs.imag()) +
                "," + format_real(r.rhs.real()) + "," + format_real(r.rhs.imag()) + "," +
                format_real(r.abs_residual) + "," + format_real(r.rel_residual) + "," +
                (r.passed ? "true" : "false");
      rows.push_back(std::move(cr));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const detail::CsvRow& a, const detail::CsvRow& b) {
    return std::tie(a.identity, a.route, a.params, a.y) < std::tie(b.identity, b.route, b.params, b.y);
  });
  os << kCsvHeader << "\n";
  for (const auto& r : rows) os << r.line << "\n";
}

struct Tally {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t outside_domain = 0;
};

inline Tally tally(const std::vector<VerificationReport>& reports) {
  Tally t;
  for (const auto& r : reports) {
    switch (r.status) {
      case Status::Passed: ++t.passed; break;
      case Status::Failed: ++t.failed; break;
      case Status::OutsideDomain: ++t.outside_domain; break;
    }
  }
  return t;
}

/// 0 all pass, 1 any residual failure, 2 domain exclusions only.
inline int exit_code_for(const Tally& t) {
  if (t.failed > 0) return 1;
  if (t.outside_domain > 0) return 2;
  return 0;
}

inline nlohmann::ordered_json report_json(const VerificationReport& rep) {
  nlohmann::ordered_json j;
  j["identity"] = rep.identity;
  j["law"] = rep.law;
  j["route"] = route_name(rep.route);
  j["params"] = rep.params;
  j["y_grid"] = rep.y_grid;
  j["status"] = status_name(rep.status);
  j["passed"] = rep.passed;
  j["tolerance_used"] = rep.tolerance_used;
  j["max_abs_residual"] = rep.max_abs_residual;
  j["max_rel_residual"] = rep.max_rel_residual;
  j["rows"] = rep.rows.size();
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

/// Summary document: the run settings, one entry per report and the totals.
inline nlohmann::ordered_json summary_json(const std::string& command, const nlohmann::ordered_json& settings,
                                           const std::vector<VerificationReport>& reports) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["settings"] = settings;
  auto& list = j["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) list.push_back(report_json(r));
  const Tally t = tally(reports);
  j["totals"] = {{"reports", reports.size()},
                 {"passed", t.passed},
                 {"failed", t.failed},
                 {"outside_numeric_domain", t.outside_domain}};
  j["exit_code"] = exit_code_for(t);
  return j;
}

} // namespace rimap
