#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qgraf/al_salam_chihara.hpp"
#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/hypergeometric.hpp"
#include "qgraf/q_charlier.hpp"
#include "qgraf/qpochhammer.hpp"
#include "qgraf/report.hpp"
#include "qgraf/summation.hpp"

namespace qgraf {

/// (z, c;q)_inf 2phi1(a, b; c; q, z), continued to any z through Heine's
/// transformation (b, az;q)_inf 2phi1(c/b, z; az; q, b). Needs |b| < 1.
template <class Real>
BasicSeriesValue<Real> heine_scaled_2phi1(Complex<Real> a, Complex<Real> b, Complex<Real> c, Complex<Real> z,
                                          const BasicQContext<Real>& ctx) {
  if (!(std::abs(b) < Real(1))) raise(ErrorKind::DomainError, "continuation needs |b| < 1");
  if (b == Complex<Real>(0)) raise(ErrorKind::ZeroDivision, "continuation divides by b");
  const auto pre = qpoch_infinite(b, ctx) * qpoch_infinite(a * z, ctx);
  if (pre.value == Complex<Real>(0)) return pre;
  return pre * phi_rs<Real>({c / b, z}, {a * z}, b, ctx);
}

namespace detail {

template <class Real>
struct CharlierPair {
  BasicCharlierParams<Real> alpha;
  BasicCharlierParams<Real> beta;
};

// sum_h w_h c_m(q^-h; alpha) c_r(q^-h-mu; beta) extra(h), truncated at h = N
// with the tail estimated from the last ratio.
template <class Real, class Weight>
BasicSeriesValue<Real> charlier_h_sum(std::size_t m, std::size_t r, Real mu, const CharlierPair<Real>& p,
                                      Weight&& weight, const BasicQContext<Real>& ctx, std::size_t N) {
  const Real q = ctx.q();
  auto term = [&](std::size_t h) {
    const Complex<Real> w = weight(h);
    if (w == Complex<Real>(0)) return w;
    const Real hh = Real(h);
    return w * qcharlier_eval(m, Complex<Real>(std::pow(q, -hh)), p.alpha) *
           qcharlier_eval(r, Complex<Real>(std::pow(q, -hh - mu)), p.beta);
  };
  SeriesOptions opts;
  opts.truncate_at = N;
  opts.min_terms = m + r + 2;
  return sum_terms<Real>(term, ctx, opts);
}

}  // namespace detail

/// sum_h alpha^h q^{h(h-1)/2}/(q;q)_h c_m(q^-h; alpha) c_r(q^{-h-mu}; beta)
/// against
///   (-1)^{m+r} q^{m(m-1)/2 + r(r-m-mu)} beta^-r (q^{1+r-m};q)_m / (q^{1+mu};q)_inf
///   * (z, c;q)_inf 2phi1(q^{mu+1}, alpha/beta; c; q, z),
/// z = -beta q^-r, c = q^{1+m-r+mu}.
template <class Real>
BasicResidualReport<Real> qcharlier_extension_special_residual(std::size_t m, std::size_t r, Real mu, Real alpha,
                                                               Real beta, const BasicQContext<Real>& ctx,
                                                               std::size_t N, Real tol) {
  const Real q = ctx.q();
  const detail::CharlierPair<Real> pair{{alpha, q}, {beta, q}};
  if (!(mu > Real(-1))) raise(ErrorKind::DomainError, "needs mu > -1");
  Real w = 1;
  std::size_t at = 0;
  auto weight = [&](std::size_t h) {
    for (; at < h; ++at) w *= alpha * std::pow(q, Real(at)) / (1 - std::pow(q, Real(at + 1)));
    return Complex<Real>(w);
  };
  const auto lhs = detail::charlier_h_sum(m, r, mu, pair, weight, ctx, N);

  const Real mr = Real(m), rr = Real(r);
  const Complex<Real> z(-beta * std::pow(q, -rr));
  const Complex<Real> c(std::pow(q, 1 + mr - rr + mu));
  const auto hz = heine_scaled_2phi1<Real>(Complex<Real>(alpha / beta), Complex<Real>(std::pow(q, mu + 1)), c, z, ctx);
  const auto den = qpoch_infinite(Complex<Real>(std::pow(q, 1 + mu)), ctx);
  const Real sign = ((m + r) % 2 != 0) ? Real(-1) : Real(1);
  const Complex<Real> pre = sign * std::pow(q, mr * (mr - 1) / 2 + rr * (rr - mr - mu)) * std::pow(beta, -rr) *
                            qpoch_finite(Complex<Real>(std::pow(q, 1 + rr - mr)), ctx, m) / den.value;
  auto rhs = scaled(hz, pre);
  rhs.tail_bound += std::abs(rhs.value) * den.tail_bound / std::abs(den.value);

  IdentityCase id{"charlier_ext_special", {}};
  id.set("q", double(q)).set("m", double(m)).set("r", double(r)).set("mu", double(mu));
  id.set("alpha", double(alpha)).set("beta", double(beta));
  return make_report(id, lhs, rhs, tol);
}

/// General form: with A = q^{(mu+1)/2} sqrt(alpha/beta), B = q^{(mu+1)/2} sqrt(beta/alpha)
/// and x = (xi + 1/xi)/2,
///   sum_h (alpha beta)^{h/2} q^{h(mu+1)/2 + h(h-1)/2}/(q;q)_h (q^{1+h+mu})_inf/(q)_inf
///         c_m(q^-h; alpha) c_r(q^{-h-mu}; beta) S_h(x; A, B)
/// against
///   (-1)^{m+r} q^{m(m+mu)/2 + r(r-m-mu)} alpha^{-m/2} beta^{m/2-r} / (q)_inf
///   * (z, c;q)_inf 2phi1(A xi, A/xi; c; q, z) S_m(x; q^{r-m+(1-mu)/2} sqrt(alpha/beta), B).
template <class Real>
BasicResidualReport<Real> qcharlier_extension_residual_at(std::size_t m, std::size_t r, Real mu, Real alpha, Real beta,
                                                          Complex<Real> xi, const BasicQContext<Real>& ctx,
                                                          std::size_t N, Real tol) {
  const Real q = ctx.q();
  if (!(mu > Real(-1))) raise(ErrorKind::DomainError, "needs mu > -1");
  if (xi == Complex<Real>(0)) raise(ErrorKind::ZeroDivision, "xi = 0");
  const detail::CharlierPair<Real> pair{{alpha, q}, {beta, q}};
  const Real root = std::sqrt(alpha / beta);
  const Real half = std::pow(q, (mu + 1) / 2);
  const BasicASCParams<Real> asc{Complex<Real>(half * root), Complex<Real>(half / root), q};
  const Complex<Real> x = (xi + Real(1) / xi) / Real(2);
  const auto s = asc_eval_all(N, x, asc);

  Real w = 1;
  std::size_t at = 0;
  const Real step = std::sqrt(alpha * beta) * half;
  auto weight = [&](std::size_t h) {
    for (; at < h; ++at) w *= step * std::pow(q, Real(at)) / (1 - std::pow(q, Real(at + 1)));
    if (h >= s.size()) return Complex<Real>(0);
    return w * qpoch_ratio_to_q(1 + Real(h) + mu, ctx).value * s[h];
  };
  const auto lhs = detail::charlier_h_sum(m, r, mu, pair, weight, ctx, N);

  const Real mr = Real(m), rr = Real(r);
  const Complex<Real> z(-beta * std::pow(q, -rr));
  const Complex<Real> c(std::pow(q, 1 + mr - rr + mu));
  Complex<Real> a1 = asc.a * xi, b1 = asc.a / xi;
  if (std::abs(b1) > std::abs(a1)) std::swap(a1, b1);
  const auto hz = heine_scaled_2phi1<Real>(a1, b1, c, z, ctx);
  const auto qq = qpoch_infinite(Complex<Real>(q), ctx);
  const BasicASCParams<Real> shifted{Complex<Real>(std::pow(q, rr - mr + (1 - mu) / 2) * root), asc.b, q};
  const Real sign = ((m + r) % 2 != 0) ? Real(-1) : Real(1);
  const Complex<Real> pre = sign * std::pow(q, mr * (mr + mu) / 2 + rr * (rr - mr - mu)) * std::pow(alpha, -mr / 2) *
                            std::pow(beta, mr / 2 - rr) / qq.value * asc_eval_rec(m, x, shifted);
  auto rhs = scaled(hz, pre);
  rhs.tail_bound += std::abs(rhs.value) * qq.tail_bound / std::abs(qq.value);

  IdentityCase id{"charlier_ext", {}};
  id.set("q", double(q)).set("m", double(m)).set("r", double(r)).set("mu", double(mu));
  id.set("alpha", double(alpha)).set("beta", double(beta)).set("xi", std::complex<double>(xi));
  return make_report(id, lhs, rhs, tol);
}

/// The general form on the spectrum, xi = e^{i theta}.
template <class Real>
BasicResidualReport<Real> qcharlier_extension_residual(std::size_t m, std::size_t r, Real mu, Real alpha, Real beta,
                                                       Real theta, const BasicQContext<Real>& ctx, std::size_t N,
                                                       Real tol) {
  auto rep = qcharlier_extension_residual_at(m, r, mu, alpha, beta, std::polar(Real(1), theta), ctx, N, tol);
  rep.identity_case.params.erase(
      std::remove_if(rep.identity_case.params.begin(), rep.identity_case.params.end(),
                     [](const CaseParam& p) { return p.name == "xi"; }),
      rep.identity_case.params.end());
  rep.identity_case.set("theta", double(theta));
  return rep;
}

/// c_m(q^{-alpha-m}; a) against (-a q^alpha)^{-m} (q;q)_m L_m^{(alpha)}(a q^{-m}; q).
template <class Real>
BasicResidualReport<Real> qlaguerre_relation_residual(std::size_t m, Real alpha, Real a,
                                                      const BasicQContext<Real>& ctx, Real tol) {
  const Real q = ctx.q();
  const BasicCharlierParams<Real> par(a, q);
  const Real mr = Real(m);
  const auto lhs = exact_value<Real>(qcharlier_eval(m, Complex<Real>(std::pow(q, -alpha - mr)), par));
  const Complex<Real> pre = std::pow(-a * std::pow(q, alpha), -mr) * qpoch_finite(Complex<Real>(q), ctx, m);
  const auto rhs = exact_value<Real>(pre * qlaguerre_eval(m, alpha, Complex<Real>(a * std::pow(q, -mr)), ctx));
  IdentityCase id{"qlag_relation", {}};
  id.set("q", double(q)).set("m", double(m)).set("alpha", double(alpha)).set("a", double(a));
  return make_report(id, lhs, rhs, tol);
}

}  // namespace qgraf
