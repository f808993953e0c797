// qgraf: evaluate q-special functions, verify identities, sweep parameter grids.
//
// Exit codes: 0 pass, 1 identity failed, 2 bad input or domain error.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qgraf/cli/eval.hpp"
#include "qgraf/cli/params.hpp"
#include "qgraf/cli/registry.hpp"
#include "qgraf/cli/report_io.hpp"
#include "qgraf/cli/sweep.hpp"
#include "qgraf/error.hpp"

namespace {

using namespace qgraf::cli;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kBadInput = 2;

struct Options {
  std::optional<double> q;
  double tol = 1e-10;
  std::size_t max_terms = 10000;
  bool json = false;
  std::string out;
  std::string format;
  std::optional<unsigned> parallel;
  bool no_header = false;
  std::string precision = "extended";
};

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

template <class R>
RunSettings<R> settings_from(const Options& o, std::optional<double> tol_override = {}) {
  RunSettings<R> s;
  s.tol = R(tol_override.value_or(o.tol));
  s.max_terms = o.max_terms;
  s.max_factors = std::max<std::size_t>(o.max_terms * 2, 20000);
  return s;
}

template <class R>
int run_eval(const Options& o, const std::string& fn, const std::vector<std::string>& kv) {
  auto raw = parse_assignments(kv);
  if (o.q) raw.erase("q");  // the flag wins, as for verify and sweep
  const qgraf::BasicQContext<R> ctx(R(o.q.value_or(0.5)), R(settings_from<R>(o).series_tol()), o.max_terms,
                                    std::max<std::size_t>(o.max_terms * 2, 20000));
  const auto j = evaluate<R>(fn, raw, o.q.value_or(0.5), ctx);
  std::cout << j.dump(2) << "\n";
  return kPass;
}

template <class R>
int run_verify(const Options& o, const std::string& name, const std::vector<std::string>& kv) {
  const auto& entry = find_identity<R>(name);
  ParamMap given;
  if (o.q && entry.has_param("q")) given["q"] = {*o.q, 0.0};
  for (const auto& [k, v] : parse_assignments(kv)) given[k] = parse_complex(v);
  const auto params = entry.resolve(given);
  const auto rep = entry.run(params, settings_from<R>(o));
  const auto row = make_row(entry, params, rep);
  if (o.json) {
    std::cout << to_json(row).dump(2) << "\n";
  } else {
    std::cout << csv_header(row) << "\n" << csv_line(row) << "\n";
  }
  return row.passed() ? kPass : kFail;
}

template <class R>
int run_sweep_cmd(const Options& o, const std::string& spec_path) {
  std::ifstream in(spec_path);
  if (!in) qgraf::raise(qgraf::ErrorKind::InvalidArgument, "cannot open sweep spec '" + spec_path + "'");
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    qgraf::raise(qgraf::ErrorKind::InvalidArgument, std::string("sweep spec is not valid JSON: ") + e.what());
  }
  auto spec = parse_sweep_spec(j);
  const auto& entry = find_identity<R>(spec.identity);
  if (o.q) {
    // Flag beats spec file.
    if (!entry.has_param("q")) qgraf::raise(qgraf::ErrorKind::InvalidArgument, "identity has no parameter q");
    std::erase_if(spec.axes, [](const auto& axis) { return axis.first == "q"; });
    spec.axes.insert(spec.axes.begin(), {"q", {{*o.q, 0.0}}});
  }
  const std::string format = !o.format.empty() ? o.format : (!spec.format.empty() ? spec.format : "csv");
  if (format != "csv" && format != "json") qgraf::raise(qgraf::ErrorKind::InvalidArgument, "format must be csv or json");
  const std::string out_path = !o.out.empty() ? o.out : spec.out;
  const auto grid = expand_grid(spec, entry);
  // Validate every point before running anything.
  for (const auto& p : grid) entry.resolve(p);

  unsigned threads = 1;
  if (o.parallel) threads = *o.parallel == 0 ? std::max(1u, std::thread::hardware_concurrency()) : *o.parallel;
  const auto rows = run_sweep(entry, grid, settings_from<R>(o, spec.tol), threads);

  const std::string header = o.no_header ? "" : "qgraf sweep " + entry.name + " generated " + timestamp();
  const std::string body = format == "csv" ? render_csv(rows, header) : render_json(rows, header);
  if (out_path.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) qgraf::raise(qgraf::ErrorKind::InvalidArgument, "cannot write '" + out_path + "'");
    out << body;
  }

  const auto s = summarize(rows);
  auto& log = out_path.empty() ? std::cerr : std::cout;
  log << "cases " << rows.size() << ": " << s.passed << " pass, " << s.failed << " fail, " << s.errors
      << " error\n";
  if (s.argmax) {
    log << "max residual " << format_real(s.max_residual) << " at case " << *s.argmax;
    for (const auto& [k, v] : rows[*s.argmax].params) log << " " << k << "=" << v;
    log << "\n";
  }
  return s.passed == rows.size() ? kPass : kFail;
}

int run_list() {
  for (const auto& e : identity_registry<double>()) {
    std::cout << e.name << "  (";
    for (std::size_t i = 0; i < e.params.size(); ++i) {
      std::cout << (i ? " " : "") << e.params[i].name;
    }
    std::cout << ")  " << e.summary << "\n";
  }
  return kPass;
}

template <class F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const qgraf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"q-series identity checker"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--q", o.q, "base q in (0,1)");
    sub->add_option("--tol", o.tol, "absolute residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--max-terms", o.max_terms, "series term cap")->check(CLI::PositiveNumber);
    sub->add_option("--precision", o.precision, "arithmetic: double or extended")
        ->check(CLI::IsMember({"double", "extended"}));
  };

  std::string fn;
  std::vector<std::string> kv;
  auto* eval = app.add_subcommand("eval", "evaluate a primitive");
  eval->add_option("function", fn, "one of: qpoch phi qgamma asc qcharlier qlaguerre weight bessel_j")->required();
  eval->add_option("params", kv, "key=value");
  common(eval);

  std::string identity;
  auto* verify = app.add_subcommand("verify", "check one identity instance");
  verify->add_option("identity", identity, "identity name (see list-identities)")->required();
  verify->add_option("params", kv, "key=value");
  verify->add_flag("--json", o.json, "print the report as JSON");
  common(verify);

  std::string spec_path;
  auto* sweep = app.add_subcommand("sweep", "run a parameter grid from a JSON spec");
  sweep->add_option("spec", spec_path, "sweep spec file")->required();
  sweep->add_option("--out", o.out, "report path (default stdout)");
  sweep->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--parallel", o.parallel, "worker threads (0 = all cores)")->expected(0, 1)->default_str("0");
  sweep->add_flag("--no-header", o.no_header, "omit the timestamp header line");
  common(sweep);

  app.add_subcommand("list-identities", "print the identity registry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  const bool wide = o.precision == "extended";
  if (*eval) {
    return guarded([&] { return wide ? run_eval<long double>(o, fn, kv) : run_eval<double>(o, fn, kv); });
  }
  if (*verify) {
    return guarded(
        [&] { return wide ? run_verify<long double>(o, identity, kv) : run_verify<double>(o, identity, kv); });
  }
  if (*sweep) {
    return guarded([&] { return wide ? run_sweep_cmd<long double>(o, spec_path) : run_sweep_cmd<double>(o, spec_path); });
  }
  return run_list();
}
