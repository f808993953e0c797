#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "json.hpp"
#include "qgraf/cli/eval.hpp"
#include "qgraf/cli/params.hpp"
#include "qgraf/cli/registry.hpp"
#include "qgraf/cli/report_io.hpp"
#include "qgraf/cli/sweep.hpp"
#include "test_support.hpp"

using namespace qgraf;
using namespace qgraf::cli;
using qgraf::test::raises;
using C = std::complex<double>;
using json = nlohmann::ordered_json;

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("0.3"), C(0.3, 0));
  EXPECT_EQ(parse_complex(" -2i "), C(0, -2));
  EXPECT_EQ(parse_complex("0.3+0.2i"), C(0.3, 0.2));
  EXPECT_EQ(parse_complex("i"), C(0, 1));
  EXPECT_EQ(parse_complex("-i"), C(0, -1));
  EXPECT_EQ(parse_complex("1e-3-4e-2i"), C(1e-3, -4e-2));
  EXPECT_EQ(parse_complex("2.5e+1+i"), C(25, 1));
  for (const char* bad : {"", "abc", "0.3+", "1..2", "3j", "0.3+0.2ii"}) {
    EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [&] { parse_complex(bad); })) << bad;
  }
}

TEST(ParseList, PowersOfQ) {
  const auto v = parse_list("0.2, q^2, q^{-1}, 1+i", 0.5);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[0], C(0.2));
  EXPECT_DOUBLE_EQ(v[1].real(), 0.25);
  EXPECT_DOUBLE_EQ(v[2].real(), 2.0);
  EXPECT_EQ(v[3], C(1, 1));
  EXPECT_TRUE(parse_list("  ", 0.5).empty());
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [] { parse_list("q^i", 0.5); }));
}

TEST(ParseAssignments, Tokens) {
  const auto m = parse_assignments({"a=0.3", "upper=0.1,0.2", "z="});
  EXPECT_EQ(m.at("a"), "0.3");
  EXPECT_EQ(m.at("upper"), "0.1,0.2");
  EXPECT_EQ(m.at("z"), "");
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [] { parse_assignments({"a"}); }));
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [] { parse_assignments({"=1"}); }));
}

TEST(Registry, DefaultsPass) {
  const RunSettings<long double> settings;
  for (const auto& e : identity_registry<long double>()) {
    const auto row = run_case(e, {}, settings);
    EXPECT_TRUE(row.passed()) << e.name << ": " << row.status << " residual " << row.abs_residual;
  }
}

TEST(Registry, DefaultsPassInDouble) {
  const RunSettings<double> settings;
  for (const auto& e : identity_registry<double>()) {
    const auto row = run_case(e, {}, settings);
    EXPECT_TRUE(row.passed()) << e.name << ": " << row.status << " residual " << row.abs_residual;
  }
}

TEST(Registry, Lookup) {
  EXPECT_EQ(find_identity<double>("addition").name, "addition");
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [] { find_identity<double>("no_such_identity"); }));
  const auto& e = find_identity<double>("addition");
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [&] { e.resolve({{"bogus", C(1)}}); }));
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [&] { e.resolve({{"m", C(1.5)}}); }));
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [&] { e.resolve({{"nu", C(1, 1)}}); }));
}

TEST(Registry, ErrorsBecomeRows) {
  const auto& e = find_identity<double>("addition");
  const auto row = run_case(e, {{"z", C(1.5)}}, RunSettings<double>{});
  EXPECT_EQ(row.status, "error:DomainError");
  EXPECT_TRUE(std::isnan(row.abs_residual));
  ASSERT_EQ(row.notes.size(), 1u);
  const auto j = to_json(row);
  EXPECT_TRUE(j["abs_residual"].is_null());
  EXPECT_TRUE(j["lhs_re"].is_null());
}

TEST(Sweep, SpecParsing) {
  const auto s = parse_sweep_spec(json::parse(R"({"identity":"addition","axes":{"q":[0.3,0.5],"a":["0.2+0.1i"]},
                                                  "tol":1e-9,"truncation":30})"));
  EXPECT_EQ(s.identity, "addition");
  ASSERT_EQ(s.axes.size(), 2u);
  EXPECT_EQ(s.axes[0].first, "q");
  EXPECT_EQ(s.axes[1].second[0], C(0.2, 0.1));
  EXPECT_EQ(*s.tol, 1e-9);
  EXPECT_EQ(*s.truncation, 30);
  for (const char* bad : {R"([])", R"({"axes":{}})", R"({"identity":"x","axes":{"q":[]}})",
                          R"({"identity":"x","axes":{"q":[true]}})", R"({"identity":"x","tol":-1})",
                          R"({"identity":"x","truncation":2.5})"}) {
    EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [&] { parse_sweep_spec(json::parse(bad)); })) << bad;
  }
}

TEST(Sweep, GridOrderLastAxisFastest) {
  const auto& e = find_identity<double>("addition");
  const auto s = parse_sweep_spec(json::parse(R"({"identity":"addition","axes":{"q":[0.3,0.5],"m":[0,1,2]}})"));
  const auto g = expand_grid(s, e);
  ASSERT_EQ(g.size(), 6u);
  EXPECT_EQ(g[0].at("q"), C(0.3));
  EXPECT_EQ(g[1].at("m"), C(1));
  EXPECT_EQ(g[2].at("m"), C(2));
  EXPECT_EQ(g[3].at("q"), C(0.5));
  EXPECT_EQ(g[3].at("m"), C(0));
}

TEST(Sweep, GridLimits) {
  const auto& e = find_identity<double>("addition");
  const auto big = parse_sweep_spec(json::parse(R"({"identity":"addition","axes":{"q":[0.1,0.2,0.3],"m":[0,1,2]}})"));
  EXPECT_TRUE(raises(ErrorKind::CapExceeded, [&] { expand_grid(big, e, 8); }));
  EXPECT_EQ(expand_grid(big, e, 9).size(), 9u);
  const auto none = parse_sweep_spec(json::parse(R"({"identity":"addition"})"));
  EXPECT_EQ(expand_grid(none, e).size(), 1u);
  const auto unknown = parse_sweep_spec(json::parse(R"({"identity":"addition","axes":{"w":[1]}})"));
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [&] { expand_grid(unknown, e); }));
}

TEST(Sweep, TruncationOverride) {
  const auto& e = find_identity<double>("addition");
  ASSERT_FALSE(e.truncation.empty());
  const auto s = parse_sweep_spec(json::parse(R"({"identity":"addition","axes":{"m":[0,1]},"truncation":25})"));
  for (const auto& p : expand_grid(s, e)) EXPECT_EQ(p.at(e.truncation), C(25));
  const auto clash = parse_sweep_spec(json::parse("{\"identity\":\"addition\",\"axes\":{\"" + e.truncation +
                                                  "\":[10]},\"truncation\":25}"));
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [&] { expand_grid(clash, e); }));
}

TEST(Sweep, ParallelMatchesSerial) {
  const auto& e = find_identity<double>("charlier_ortho");
  const auto s = parse_sweep_spec(json::parse(R"({"identity":"charlier_ortho","axes":{"m":[0,1,2,3],"r":[0,2,3]}})"));
  const auto g = expand_grid(s, e);
  const RunSettings<double> settings;
  const auto serial = render_csv(run_sweep(e, g, settings, 1), "");
  EXPECT_EQ(serial, render_csv(run_sweep(e, g, settings, 3), ""));
  const auto rows = run_sweep(e, g, settings, 1);
  const auto sum = summarize(rows);
  EXPECT_EQ(sum.passed, rows.size());
  ASSERT_TRUE(sum.argmax.has_value());
  EXPECT_EQ(rows[*sum.argmax].abs_residual, sum.max_residual);
}

TEST(Render, CsvAndJson) {
  ReportRow r;
  r.identity = "x";
  r.params = {{"q", 0.1}};
  r.lhs = {1.0 / 3, 0};
  r.status = "pass";
  r.notes = {"a, b", "c \"d\""};
  const auto csv = render_csv({r}, "hdr");
  EXPECT_EQ(csv.rfind("# hdr\n", 0), 0u);
  EXPECT_NE(csv.find("identity,q,lhs_re"), std::string::npos);
  EXPECT_NE(csv.find("3.3333333333333331e-01"), std::string::npos);
  EXPECT_NE(csv.find("\"a, b; c \"\"d\"\"\""), std::string::npos);
  EXPECT_EQ(std::stod(format_real(0.1)), 0.1);
  const auto j = json::parse(render_json({r}, ""));
  EXPECT_FALSE(j.contains("header"));
  EXPECT_EQ(j["rows"][0]["params"]["q"].get<double>(), 0.1);
  EXPECT_EQ(j["rows"][0]["notes"].size(), 2u);
}

TEST(Evaluate, Primitives) {
  const BasicQContext<double> ctx(0.5);
  EXPECT_NEAR(evaluate<double>("qgamma", {{"x", "1"}}, 0.5, ctx)["value"].get<double>(), 1.0, 1e-14);
  // S_1(x) = 2x - (a + b)
  EXPECT_NEAR(evaluate<double>("asc", {{"n", "1"}, {"a", "0.3"}, {"b", "0.2"}, {"x", "0.5"}}, 0.5, ctx)["value"].get<double>(),
              0.5, 1e-15);
  const auto inf = evaluate<double>("qpoch", {{"a", "0.5"}}, 0.5, ctx);
  EXPECT_GT(inf["terms_used"].get<int>(), 0);
  EXPECT_NEAR(evaluate<double>("qpoch", {{"a", "0.5"}, {"k", "2"}}, 0.5, ctx)["value"].get<double>(), 0.5 * 0.75, 1e-15);
  EXPECT_NEAR(evaluate<double>("qpoch", {{"a", "0.5"}, {"k", "2"}, {"q", "0.3"}}, 0.5, ctx)["value"].get<double>(),
              0.5 * 0.85, 1e-15);
  EXPECT_TRUE(raises(ErrorKind::PoleInLowerParameter, [&] {
    evaluate<double>("phi", {{"upper", "0.3"}, {"lower", "q^-2"}, {"z", "0.1"}}, 0.5, ctx);
  }));
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [&] { evaluate<double>("nope", {}, 0.5, ctx); }));
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument, [&] { evaluate<double>("qgamma", {{"x", "1"}, {"y", "2"}}, 0.5, ctx); }));
}
