#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <string>
#include <vector>

#include "json.hpp"

#include "qgraf/al_salam_chihara.hpp"
#include "qgraf/bessel.hpp"
#include "qgraf/cli/params.hpp"
#include "qgraf/cli/report_io.hpp"
#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/gamma.hpp"
#include "qgraf/hypergeometric.hpp"
#include "qgraf/orthogonality.hpp"
#include "qgraf/q_charlier.hpp"
#include "qgraf/qpochhammer.hpp"

namespace qgraf::cli {

inline const std::vector<std::string>& eval_functions() {
  static const std::vector<std::string> names{"qpoch", "phi", "qgamma", "asc", "qcharlier", "qlaguerre", "weight",
                                              "bessel_j"};
  return names;
}

namespace detail {

class EvalArgs {
 public:
  EvalArgs(std::map<std::string, std::string> raw, double default_q) : raw_(std::move(raw)), q_(default_q) {
    if (auto it = raw_.find("q"); it != raw_.end()) q_ = real("q");
  }

  bool has(const std::string& k) const { return raw_.count(k) != 0; }
  double q() const { return q_; }

  std::complex<double> cplx(const std::string& k, std::optional<std::complex<double>> def = {}) {
    used_.push_back(k);
    auto it = raw_.find(k);
    if (it == raw_.end()) {
      if (!def) raise(ErrorKind::InvalidArgument, "missing parameter '" + k + "'");
      return *def;
    }
    return parse_complex(it->second);
  }

  double real(const std::string& k, std::optional<double> def = {}) {
    const auto v = cplx(k, def ? std::optional<std::complex<double>>(*def) : std::nullopt);
    if (v.imag() != 0.0) raise(ErrorKind::InvalidArgument, "parameter '" + k + "' must be real");
    return v.real();
  }

  long integer(const std::string& k, std::optional<long> def = {}) {
    const double v = real(k, def ? std::optional<double>(double(*def)) : std::nullopt);
    if (v != std::round(v)) raise(ErrorKind::InvalidArgument, "parameter '" + k + "' must be an integer");
    return std::lround(v);
  }

  std::string text(const std::string& k, const std::string& def) {
    used_.push_back(k);
    auto it = raw_.find(k);
    return it == raw_.end() ? def : it->second;
  }

  std::vector<std::complex<double>> list(const std::string& k) {
    used_.push_back(k);
    auto it = raw_.find(k);
    return it == raw_.end() ? std::vector<std::complex<double>>{} : parse_list(it->second, q_);
  }

  void reject_unused() const {
    for (const auto& [k, v] : raw_) {
      if (k != "q" && std::find(used_.begin(), used_.end(), k) == used_.end()) {
        raise(ErrorKind::InvalidArgument, "unexpected parameter '" + k + "'");
      }
    }
  }

 private:
  std::map<std::string, std::string> raw_;
  std::vector<std::string> used_;
  double q_;
};

template <class R>
Complex<R> lift(std::complex<double> v) {
  return {R(v.real()), R(v.imag())};
}

template <class R>
std::vector<Complex<R>> lift(const std::vector<std::complex<double>>& v) {
  std::vector<Complex<R>> out;
  for (const auto& x : v) out.push_back(lift<R>(x));
  return out;
}

template <class R>
void put_value(nlohmann::ordered_json& j, Complex<R> v) {
  j["value"] = json_number(double(v.real()));
  j["value_im"] = json_number(double(v.imag()));
}

}  // namespace detail

/// Evaluates one primitive; parameters arrive as raw key=value strings.
template <class R>
nlohmann::ordered_json evaluate(const std::string& fn, const std::map<std::string, std::string>& raw, double default_q,
                                const BasicQContext<R>& base) {
  detail::EvalArgs args(raw, default_q);
  const BasicQContext<R> ctx = base.with_q(R(args.q()));
  nlohmann::ordered_json j;
  j["function"] = fn;
  auto series = [&](const BasicSeriesValue<R>& v) {
    detail::put_value(j, v.value);
    j["tail_bound"] = json_number(double(v.tail_bound));
    j["terms_used"] = v.terms_used;
  };
  if (fn == "qpoch") {
    const auto a = detail::lift<R>(args.cplx("a"));
    if (args.has("k")) {
      const long k = args.integer("k");
      if (k < 0) raise(ErrorKind::InvalidArgument, "k must be nonnegative");
      detail::put_value(j, qpoch_finite(a, ctx, static_cast<std::size_t>(k)));
    } else {
      series(qpoch_infinite(a, ctx));
    }
  } else if (fn == "phi") {
    const auto upper = detail::lift<R>(args.list("upper"));
    const auto lower = detail::lift<R>(args.list("lower"));
    const auto z = detail::lift<R>(args.cplx("z"));
    if (args.has("reg")) {
      // Regularized: the distinguished lower parameter is q^{1-reg}; `lower` lists the others.
      series(phi_regularized(upper, args.integer("reg"), lower, z, ctx));
    } else {
      series(phi_rs<R>(BasicHypergeometricSpec<R>{upper, lower, z}, ctx));
    }
  } else if (fn == "qgamma") {
    detail::put_value(j, Complex<R>(qgamma(R(args.real("x")), ctx)));
  } else if (fn == "asc") {
    const BasicASCParams<R> par{detail::lift<R>(args.cplx("a")), detail::lift<R>(args.cplx("b")), ctx.q()};
    const long n = args.integer("n");
    if (n < 0) raise(ErrorKind::InvalidArgument, "n must be nonnegative");
    const std::string method = args.text("method", "rec");
    BasicSpectralPoint<R> pt;
    if (args.has("theta")) {
      pt = BasicSpectralPoint<R>::on(R(args.real("theta")));
    } else if (args.has("xi")) {
      pt = BasicSpectralPoint<R>::off(R(args.real("xi")));
    } else {
      const auto x = detail::lift<R>(args.cplx("x"));
      pt.x = x;
      pt.on_spectrum = false;
      if (method == "def") raise(ErrorKind::InvalidArgument, "method=def needs theta or xi");
    }
    if (method == "def") {
      detail::put_value(j, asc_eval_def(static_cast<std::size_t>(n), pt, par));
    } else if (method == "rec") {
      detail::put_value(j, asc_eval_rec(static_cast<std::size_t>(n), pt.x, par));
    } else {
      raise(ErrorKind::InvalidArgument, "method must be rec or def");
    }
  } else if (fn == "qcharlier") {
    const BasicCharlierParams<R> par(R(args.real("a")), ctx.q());
    const long m = args.integer("m");
    if (m < 0) raise(ErrorKind::InvalidArgument, "m must be nonnegative");
    detail::put_value(j, qcharlier_eval(static_cast<std::size_t>(m), detail::lift<R>(args.cplx("x")), par));
  } else if (fn == "qlaguerre") {
    const long n = args.integer("n");
    if (n < 0) raise(ErrorKind::InvalidArgument, "n must be nonnegative");
    detail::put_value(j, qlaguerre_eval(static_cast<std::size_t>(n), R(args.real("alpha")),
                                        detail::lift<R>(args.cplx("x")), ctx));
  } else if (fn == "weight") {
    const BasicASCParams<R> par{detail::lift<R>(args.cplx("a")), detail::lift<R>(args.cplx("b")), ctx.q()};
    const long r = args.integer("r", 0);
    if (r < 0) raise(ErrorKind::InvalidArgument, "r must be nonnegative");
    detail::put_value(j, weight_complex(R(args.real("theta")), BasicWeightSpec<R>{par, static_cast<std::size_t>(r)}));
  } else if (fn == "bessel_j") {
    detail::put_value(j, Complex<R>(bessel_j(R(args.real("nu")), R(args.real("z")))));
  } else {
    raise(ErrorKind::InvalidArgument, "unknown function '" + fn + "'");
  }
  args.reject_unused();
  return j;
}

}  // namespace qgraf::cli
