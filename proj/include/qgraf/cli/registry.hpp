#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qgraf/cli/params.hpp"
#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/identities/addition.hpp"
#include "qgraf/identities/charlier_extension.hpp"
#include "qgraf/identities/graf.hpp"
#include "qgraf/identities/qbessel.hpp"
#include "qgraf/identities/series_identities.hpp"
#include "qgraf/orthogonality.hpp"
#include "qgraf/quadrature.hpp"
#include "qgraf/report.hpp"

namespace qgraf::cli {

struct ParamSpec {
  std::string name;
  std::complex<double> def;
  enum Kind { Real, Integer, Complex } kind{Real};
};

template <class R>
struct RunSettings {
  R tol{R(1e-10)};
  std::size_t max_terms{10000};
  std::size_t max_factors{20000};

  // Series are summed well below the reporting tolerance.
  R series_tol() const { return std::max(R(8) * std::numeric_limits<R>::epsilon(), tol * R(1e-6)); }
  R quad_tol() const { return std::max(R(64) * std::numeric_limits<R>::epsilon(), tol * R(1e-3)); }
  BasicQContext<R> context(R q) const { return BasicQContext<R>(q, series_tol(), max_terms, max_factors); }
  BasicQuadratureGrid<R> grid() const { return BasicQuadratureGrid<R>(16, 512, quad_tol()); }
};

template <class R>
struct IdentityEntry {
  std::string name;
  std::string summary;
  std::vector<ParamSpec> params;
  std::string truncation;  // name of the truncation parameter, if any
  std::function<BasicResidualReport<R>(const ParamMap&, const RunSettings<R>&)> run;

  bool has_param(const std::string& key) const {
    return std::any_of(params.begin(), params.end(), [&](const ParamSpec& p) { return p.name == key; });
  }

  // Defaults overlaid with the given values; unknown keys are rejected.
  ParamMap resolve(const ParamMap& given) const {
    ParamMap out;
    for (const auto& p : params) out[p.name] = p.def;
    for (const auto& [k, v] : given) {
      if (!has_param(k)) raise(ErrorKind::InvalidArgument, "identity '" + name + "' has no parameter '" + k + "'");
      out[k] = v;
    }
    for (const auto& p : params) {
      const auto v = out[p.name];
      if (p.kind != ParamSpec::Complex && v.imag() != 0.0) {
        raise(ErrorKind::InvalidArgument, "parameter '" + p.name + "' must be real");
      }
      if (p.kind == ParamSpec::Integer && v.real() != std::round(v.real())) {
        raise(ErrorKind::InvalidArgument, "parameter '" + p.name + "' must be an integer");
      }
    }
    return out;
  }
};

namespace detail {

template <class R>
R real_of(const ParamMap& p, const std::string& k) {
  return R(p.at(k).real());
}

inline long int_of(const ParamMap& p, const std::string& k) { return std::lround(p.at(k).real()); }

inline std::size_t count_of(const ParamMap& p, const std::string& k) {
  const long v = int_of(p, k);
  if (v < 0) raise(ErrorKind::InvalidArgument, "parameter '" + k + "' must be nonnegative");
  return static_cast<std::size_t>(v);
}

template <class R>
qgraf::Complex<R> cplx_of(const ParamMap& p, const std::string& k) {
  const auto v = p.at(k);
  return {R(v.real()), R(v.imag())};
}

// Re-judges a report at the requested tolerance.
template <class R>
BasicResidualReport<R> at_tol(BasicResidualReport<R> rep, R tol) {
  rep.tol_used = tol;
  rep.pass = std::isfinite(rep.abs_residual) && rep.abs_residual <= tol + rep.tail_total();
  return rep;
}

template <class R>
BasicAdditionCase<R> addition_case(const ParamMap& p) {
  BasicAdditionCase<R> c;
  c.q = real_of<R>(p, "q");
  c.a = cplx_of<R>(p, "a");
  c.b = cplx_of<R>(p, "b");
  c.z = cplx_of<R>(p, "z");
  c.nu = real_of<R>(p, "nu");
  c.m = count_of(p, "m");
  c.theta = p.count("theta") ? real_of<R>(p, "theta") : R(0);
  return c;
}

}  // namespace detail

template <class R>
const std::vector<IdentityEntry<R>>& identity_registry() {
  using P = ParamSpec;
  using detail::at_tol;
  using detail::count_of;
  using detail::cplx_of;
  using detail::int_of;
  using detail::real_of;
  using Set = RunSettings<R>;
  static const std::vector<IdentityEntry<R>> reg = {
      {"addition",
       "Al-Salam-Chihara addition formula (expansion in S_{n+m})",
       {{"q", 0.5}, {"a", 0.3, P::Complex}, {"b", 0.2, P::Complex}, {"z", 0.4, P::Complex}, {"nu", 1.5},
        {"m", 2, P::Integer}, {"theta", 1.0471975512}, {"N", 40, P::Integer}},
       "N",
       [](const ParamMap& p, const Set& s) {
         const auto c = detail::addition_case<R>(p);
         c.validate();
         return addition_residual(c, int_of(p, "N"), s.context(c.q), s.tol);
       }},
      {"product",
       "product formula: weighted integral of the addition left member against S_{n+m}",
       {{"q", 0.5}, {"a", 0.3, P::Complex}, {"b", 0.2, P::Complex}, {"z", 0.4, P::Complex}, {"nu", 1.5},
        {"m", 2, P::Integer}, {"n", 1, P::Integer}},
       "",
       [](const ParamMap& p, const Set& s) {
         const auto c = detail::addition_case<R>(p);
         return at_tol(product_residual(c, int_of(p, "n"), s.grid(), s.context(c.q), s.tol), s.tol);
       }},
      {"lemma1",
       "integral of S_m(x; a q^-nu, b) S_{n+m}(x; a, b) against the extended weight",
       {{"q", 0.5}, {"a", 0.3, P::Complex}, {"b", 0.2, P::Complex}, {"m", 2, P::Integer}, {"n", 1, P::Integer},
        {"r", 2, P::Integer}, {"nu", 0.5}},
       "",
       [](const ParamMap& p, const Set& s) {
         const BasicASCParams<R> par{cplx_of<R>(p, "a"), cplx_of<R>(p, "b"), real_of<R>(p, "q")};
         return at_tol(lemma1_residual(count_of(p, "m"), int_of(p, "n"), count_of(p, "r"), real_of<R>(p, "nu"), par,
                                       s.grid(), s.context(par.q)),
                       s.tol);
       }},
      {"lemma2",
       "product of a 1phi1 and a 2phi1 as a double series",
       {{"q", 0.5}, {"a", 0.3, P::Complex}, {"b", 0.4, P::Complex}, {"c", 0.5, P::Complex}, {"d", 0.6, P::Complex},
        {"z", 0.7, P::Complex}, {"mu", 0.5}, {"nu", 1.5}},
       "",
       [](const ParamMap& p, const Set& s) {
         return lemma2_residual(cplx_of<R>(p, "a"), cplx_of<R>(p, "b"), cplx_of<R>(p, "c"), cplx_of<R>(p, "d"),
                                cplx_of<R>(p, "z"), real_of<R>(p, "mu"), real_of<R>(p, "nu"),
                                s.context(real_of<R>(p, "q")), s.tol);
       }},
      {"inversion",
       "terminating 3phi2 series inversion",
       {{"q", 0.5}, {"p", 3, P::Integer}, {"a", 0.3, P::Complex}, {"b", 0.4, P::Complex}, {"c", 0.5, P::Complex},
        {"d", 0.6, P::Complex}, {"z", 0.7, P::Complex}},
       "",
       [](const ParamMap& p, const Set& s) {
         return series_inversion_residual(count_of(p, "p"), cplx_of<R>(p, "a"), cplx_of<R>(p, "b"),
                                          cplx_of<R>(p, "c"), cplx_of<R>(p, "d"), cplx_of<R>(p, "z"),
                                          s.context(real_of<R>(p, "q")), s.tol);
       }},
      {"heine0",
       "2phi1(a, 0; c; q, z) as a 1phi1 over (z;q)_inf",
       {{"q", 0.5}, {"a", 0.5, P::Complex}, {"c", 0.3, P::Complex}, {"z", 0.6, P::Complex}},
       "",
       [](const ParamMap& p, const Set& s) {
         return heine_b0_residual(cplx_of<R>(p, "a"), cplx_of<R>(p, "c"), cplx_of<R>(p, "z"),
                                  s.context(real_of<R>(p, "q")), s.tol);
       }},
      {"ks",
       "q-Graf addition formula for q-Bessel functions (integer nu)",
       {{"q", 0.5}, {"nu", 0, P::Integer}, {"x", 0.3}, {"y", 0.2}, {"s", 0.8, P::Complex}, {"N", 40, P::Integer}},
       "N",
       [](const ParamMap& p, const Set& s) {
         return ks_addition_residual(int_of(p, "nu"), real_of<R>(p, "x"), real_of<R>(p, "y"), cplx_of<R>(p, "s"),
                                     s.context(real_of<R>(p, "q")), int_of(p, "N"), s.tol);
       }},
      {"hansen_lommel_q",
       "q-Hansen-Lommel orthogonality sum",
       {{"q", 0.5}, {"p", 0, P::Integer}, {"m", 2, P::Integer}, {"z", 0.4, P::Complex}, {"N", 40, P::Integer}},
       "N",
       [](const ParamMap& p, const Set& s) {
         return hansen_lommel_q_residual(int_of(p, "p"), int_of(p, "m"), cplx_of<R>(p, "z"),
                                         s.context(real_of<R>(p, "q")), int_of(p, "N"), s.tol);
       }},
      {"hansen_lommel",
       "classical sum of J_n(z) J_{n+p}(z) over n",
       {{"p", 0, P::Integer}, {"z", 1.0}, {"M", 40, P::Integer}},
       "M",
       [](const ParamMap& p, const Set& s) {
         return hansen_lommel_classical_residual(int_of(p, "p"), real_of<R>(p, "z"), int_of(p, "M"), s.tol);
       }},
      {"charlier_ortho",
       "q-Charlier orthogonality on q^-h",
       {{"q", 0.4}, {"a", 1.3}, {"m", 2, P::Integer}, {"r", 2, P::Integer}, {"cap", 64, P::Integer}},
       "cap",
       [](const ParamMap& p, const Set& s) {
         const BasicCharlierParams<R> par(real_of<R>(p, "a"), real_of<R>(p, "q"));
         return at_tol(qcharlier_orthogonality_residual(count_of(p, "m"), count_of(p, "r"), par, s.context(par.q),
                                                        count_of(p, "cap")),
                       s.tol);
       }},
      {"charlier_ext",
       "extension of q-Charlier orthogonality with an Al-Salam-Chihara factor",
       {{"q", 0.5}, {"m", 1, P::Integer}, {"r", 2, P::Integer}, {"mu", 0.5}, {"alpha", 0.6}, {"beta", 0.8},
        {"theta", 1.0}, {"N", 60, P::Integer}},
       "N",
       [](const ParamMap& p, const Set& s) {
         return qcharlier_extension_residual(count_of(p, "m"), count_of(p, "r"), real_of<R>(p, "mu"),
                                             real_of<R>(p, "alpha"), real_of<R>(p, "beta"), real_of<R>(p, "theta"),
                                             s.context(real_of<R>(p, "q")), count_of(p, "N"), s.tol);
       }},
      {"charlier_ext_special",
       "specialized extension of q-Charlier orthogonality",
       {{"q", 0.5}, {"m", 2, P::Integer}, {"r", 1, P::Integer}, {"mu", 1.0}, {"alpha", 0.5}, {"beta", 0.7},
        {"N", 80, P::Integer}},
       "N",
       [](const ParamMap& p, const Set& s) {
         return qcharlier_extension_special_residual(count_of(p, "m"), count_of(p, "r"), real_of<R>(p, "mu"),
                                                     real_of<R>(p, "alpha"), real_of<R>(p, "beta"),
                                                     s.context(real_of<R>(p, "q")), count_of(p, "N"), s.tol);
       }},
      {"asc_ortho",
       "Al-Salam-Chihara orthogonality",
       {{"q", 0.5}, {"a", 0.3, P::Complex}, {"b", 0.2, P::Complex}, {"k", 2, P::Integer}, {"l", 2, P::Integer}},
       "",
       [](const ParamMap& p, const Set& s) {
         const BasicASCParams<R> par{cplx_of<R>(p, "a"), cplx_of<R>(p, "b"), real_of<R>(p, "q")};
         return at_tol(asc_orthogonality_residual(count_of(p, "k"), count_of(p, "l"), par, s.grid(),
                                                  s.context(par.q)),
                       s.tol);
       }},
      {"graf",
       "Graf's addition formula for Bessel functions",
       {{"nu", 0.5}, {"x", 2.0}, {"y", 0.5}, {"psi", 1.0}, {"M", 40, P::Integer}},
       "M",
       [](const ParamMap& p, const Set& s) {
         const BasicGrafInstance<R> g{real_of<R>(p, "nu"), real_of<R>(p, "x"), real_of<R>(p, "y"),
                                      real_of<R>(p, "psi"), 0};
         return graf_classical_residual(g, int_of(p, "M"), s.tol);
       }},
      {"graf_product",
       "Bessel product formula by quadrature over the full period",
       {{"nu", 0.5}, {"x", 2.0}, {"y", 0.5}, {"m", 1, P::Integer}},
       "",
       [](const ParamMap& p, const Set& s) {
         const BasicGrafInstance<R> g{real_of<R>(p, "nu"), real_of<R>(p, "x"), real_of<R>(p, "y"), R(0),
                                      int_of(p, "m")};
         return graf_product_classical_residual(g, s.grid(), s.tol);
       }},
      {"qlag_relation",
       "q-Charlier at q^{-alpha-m} as a q-Laguerre polynomial",
       {{"q", 0.5}, {"m", 4, P::Integer}, {"alpha", 0.5}, {"a", 0.6}},
       "",
       [](const ParamMap& p, const Set& s) {
         return qlaguerre_relation_residual(count_of(p, "m"), real_of<R>(p, "alpha"), real_of<R>(p, "a"),
                                            s.context(real_of<R>(p, "q")), s.tol);
       }},
      {"one_phi_one_shift",
       "index shift of the regularized 1phi1",
       {{"q", 0.5}, {"a", 0.3, P::Complex}, {"z", 0.4, P::Complex}, {"n", 2, P::Integer}},
       "",
       [](const ParamMap& p, const Set& s) {
         return one_phi_one_shift_residual(cplx_of<R>(p, "a"), cplx_of<R>(p, "z"), int_of(p, "n"),
                                           s.context(real_of<R>(p, "q")), s.tol);
       }},
  };
  return reg;
}

template <class R>
const IdentityEntry<R>& find_identity(const std::string& name) {
  for (const auto& e : identity_registry<R>()) {
    if (e.name == name) return e;
  }
  raise(ErrorKind::InvalidArgument, "unknown identity '" + name + "'");
}

}  // namespace qgraf::cli
