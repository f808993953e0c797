#pragma once

#include <complex>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qgraf/cli/registry.hpp"
#include "qgraf/error.hpp"
#include "qgraf/report.hpp"

namespace qgraf::cli {

/// One flat output row. Complex parameters become name_re / name_im.
struct ReportRow {
  std::string identity;
  std::vector<std::pair<std::string, double>> params;
  std::complex<double> lhs{0}, rhs{0};
  double abs_residual{0};
  double rel_residual{0};
  double tail_bound{0};
  std::string status;
  std::vector<std::string> notes;

  bool passed() const { return status == "pass"; }
};

template <class R>
std::vector<std::pair<std::string, double>> flatten_params(const IdentityEntry<R>& e, const ParamMap& p) {
  std::vector<std::pair<std::string, double>> out;
  for (const auto& spec : e.params) {
    const auto v = p.at(spec.name);
    if (spec.kind == ParamSpec::Complex) {
      out.emplace_back(spec.name + "_re", v.real());
      out.emplace_back(spec.name + "_im", v.imag());
    } else {
      out.emplace_back(spec.name, v.real());
    }
  }
  return out;
}

template <class R>
ReportRow make_row(const IdentityEntry<R>& e, const ParamMap& p, const BasicResidualReport<R>& rep) {
  ReportRow row;
  row.identity = e.name;
  row.params = flatten_params(e, p);
  row.lhs = {double(rep.lhs.real()), double(rep.lhs.imag())};
  row.rhs = {double(rep.rhs.real()), double(rep.rhs.imag())};
  row.abs_residual = double(rep.abs_residual);
  row.rel_residual = double(rep.rel_residual);
  row.tail_bound = double(rep.tail_total());
  row.status = rep.pass ? "pass" : "fail";
  row.notes = rep.notes;
  return row;
}

template <class R>
ReportRow error_row(const IdentityEntry<R>& e, const ParamMap& p, const Error& err) {
  ReportRow row;
  row.identity = e.name;
  row.params = flatten_params(e, p);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  row.lhs = row.rhs = {nan, nan};
  row.abs_residual = row.rel_residual = row.tail_bound = nan;
  row.status = std::string("error:") + to_string(err.kind());
  row.notes.push_back(err.what());
  return row;
}

/// 17 significant digits, round-trip safe.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string csv_header(const ReportRow& row) {
  std::string h = "identity";
  for (const auto& [k, v] : row.params) h += "," + k;
  h += ",lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,tail_bound,status,notes";
  return h;
}

inline std::string csv_line(const ReportRow& row) {
  std::string s = row.identity;
  for (const auto& [k, v] : row.params) s += "," + format_real(v);
  for (double x : {row.lhs.real(), row.lhs.imag(), row.rhs.real(), row.rhs.imag(), row.abs_residual,
                   row.rel_residual, row.tail_bound}) {
    s += "," + format_real(x);
  }
  std::string notes;
  for (const auto& n : row.notes) notes += (notes.empty() ? "" : "; ") + n;
  s += "," + row.status + "," + csv_escape(notes);
  return s;
}

inline nlohmann::ordered_json json_number(double x) {
  // JSON has no NaN; failed evaluations carry null.
  if (!std::isfinite(x)) return nullptr;
  return x;
}

inline nlohmann::ordered_json to_json(const ReportRow& row) {
  nlohmann::ordered_json j;
  j["identity"] = row.identity;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : row.params) params[k] = v;
  j["params"] = params;
  j["lhs_re"] = json_number(row.lhs.real());
  j["lhs_im"] = json_number(row.lhs.imag());
  j["rhs_re"] = json_number(row.rhs.real());
  j["rhs_im"] = json_number(row.rhs.imag());
  j["abs_residual"] = json_number(row.abs_residual);
  j["rel_residual"] = json_number(row.rel_residual);
  j["tail_bound"] = json_number(row.tail_bound);
  j["status"] = row.status;
  j["notes"] = row.notes;
  return j;
}

}  // namespace qgraf::cli
