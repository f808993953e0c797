#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "qgraf/cli/params.hpp"
#include "qgraf/cli/registry.hpp"
#include "qgraf/cli/report_io.hpp"
#include "qgraf/error.hpp"

namespace qgraf::cli {

struct SweepSpec {
  std::string identity;
  std::vector<std::pair<std::string, std::vector<std::complex<double>>>> axes;  // file order
  std::optional<double> tol;
  std::optional<long> truncation;
  std::string out;
  std::string format;
};

inline constexpr std::size_t kDefaultCaseCap = 100000;

inline SweepSpec parse_sweep_spec(const nlohmann::ordered_json& j) {
  auto bad = [](const std::string& what) { raise(ErrorKind::InvalidArgument, "sweep spec: " + what); };
  if (!j.is_object()) bad("top level must be an object");
  SweepSpec s;
  if (!j.contains("identity") || !j["identity"].is_string()) bad("missing string field 'identity'");
  s.identity = j["identity"].get<std::string>();
  if (j.contains("axes")) {
    if (!j["axes"].is_object()) bad("'axes' must be an object");
    for (const auto& [name, values] : j["axes"].items()) {
      if (!values.is_array()) bad("axis '" + name + "' must be a list");
      std::vector<std::complex<double>> vs;
      for (const auto& v : values) {
        if (v.is_number()) {
          vs.emplace_back(v.get<double>(), 0.0);
        } else if (v.is_string()) {
          vs.push_back(parse_complex(v.get<std::string>()));
        } else {
          bad("axis '" + name + "' holds a value that is neither a number nor a string");
        }
      }
      if (vs.empty()) bad("axis '" + name + "' is empty");
      s.axes.emplace_back(name, std::move(vs));
    }
  }
  if (j.contains("tol")) {
    if (!j["tol"].is_number() || !(j["tol"].get<double>() > 0)) bad("'tol' must be a positive number");
    s.tol = j["tol"].get<double>();
  }
  if (j.contains("truncation")) {
    if (!j["truncation"].is_number_integer()) bad("'truncation' must be an integer");
    s.truncation = j["truncation"].get<long>();
  }
  if (j.contains("out")) {
    if (!j["out"].is_string()) bad("'out' must be a string");
    s.out = j["out"].get<std::string>();
  }
  if (j.contains("format")) {
    if (!j["format"].is_string()) bad("'format' must be a string");
    s.format = j["format"].get<std::string>();
  }
  return s;
}

/// Grid points in lexicographic order of the axis indices, last axis fastest.
template <class R>
std::vector<ParamMap> expand_grid(const SweepSpec& s, const IdentityEntry<R>& e, std::size_t cap = kDefaultCaseCap) {
  std::size_t total = 1;
  for (const auto& [name, values] : s.axes) {
    if (!e.has_param(name)) raise(ErrorKind::InvalidArgument, "identity '" + e.name + "' has no parameter '" + name + "'");
    if (s.truncation && name == e.truncation) {
      raise(ErrorKind::InvalidArgument, "'" + name + "' is both an axis and the truncation override");
    }
    if (total > cap / values.size()) {
      raise(ErrorKind::CapExceeded, "sweep has more than " + std::to_string(cap) + " cases");
    }
    total *= values.size();
  }
  if (s.truncation && e.truncation.empty()) {
    raise(ErrorKind::InvalidArgument, "identity '" + e.name + "' has no truncation parameter");
  }
  std::vector<ParamMap> grid;
  grid.reserve(total);
  std::vector<std::size_t> idx(s.axes.size(), 0);
  for (std::size_t c = 0; c < total; ++c) {
    ParamMap p;
    for (std::size_t k = 0; k < s.axes.size(); ++k) p[s.axes[k].first] = s.axes[k].second[idx[k]];
    if (s.truncation) p[e.truncation] = {double(*s.truncation), 0.0};
    grid.push_back(std::move(p));
    for (std::size_t k = s.axes.size(); k-- > 0;) {
      if (++idx[k] < s.axes[k].second.size()) break;
      idx[k] = 0;
    }
  }
  return grid;
}

template <class R>
ReportRow run_case(const IdentityEntry<R>& e, const ParamMap& given, const RunSettings<R>& settings) {
  ParamMap p;
  try {
    p = e.resolve(given);
  } catch (const Error& err) {
    // Keep the row shape even when the input itself is rejected.
    ParamMap shown;
    for (const auto& spec : e.params) shown[spec.name] = given.count(spec.name) ? given.at(spec.name) : spec.def;
    return error_row(e, shown, err);
  }
  try {
    return make_row(e, p, e.run(p, settings));
  } catch (const Error& err) {
    return error_row(e, p, err);
  }
}

/// Evaluates every grid point; rows come back in grid order whatever the
/// thread count.
template <class R>
std::vector<ReportRow> run_sweep(const IdentityEntry<R>& e, const std::vector<ParamMap>& grid,
                                 const RunSettings<R>& settings, unsigned threads = 1) {
  std::vector<ReportRow> rows(grid.size());
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1))));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = run_case(e, grid[i], settings);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return rows;
}

struct SweepSummary {
  std::size_t passed{0};
  std::size_t failed{0};
  std::size_t errors{0};
  double max_residual{0};
  std::optional<std::size_t> argmax;
};

inline SweepSummary summarize(const std::vector<ReportRow>& rows) {
  SweepSummary s;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.passed()) {
      ++s.passed;
    } else if (r.status == "fail") {
      ++s.failed;
    } else {
      ++s.errors;
    }
    if (std::isfinite(r.abs_residual) && (!s.argmax || r.abs_residual > s.max_residual)) {
      s.max_residual = r.abs_residual;
      s.argmax = i;
    }
  }
  return s;
}

/// Report body; `header` is the only line that may differ between runs.
inline std::string render_csv(const std::vector<ReportRow>& rows, const std::string& header) {
  std::string out;
  if (!header.empty()) out += "# " + header + "\n";
  if (!rows.empty()) out += csv_header(rows.front()) + "\n";
  for (const auto& r : rows) out += csv_line(r) + "\n";
  return out;
}

inline std::string render_json(const std::vector<ReportRow>& rows, const std::string& header) {
  nlohmann::ordered_json j;
  if (!header.empty()) j["header"] = header;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : rows) j["rows"].push_back(to_json(r));
  return j.dump(2) + "\n";
}

}  // namespace qgraf::cli
