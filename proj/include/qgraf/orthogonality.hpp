#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qgraf/al_salam_chihara.hpp"
#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/hypergeometric.hpp"
#include "qgraf/q_charlier.hpp"
#include "qgraf/qpochhammer.hpp"
#include "qgraf/quadrature.hpp"
#include "qgraf/report.hpp"
#include "qgraf/summation.hpp"

namespace qgraf {

template <class Real>
struct BasicWeightSpec {
  BasicASCParams<Real> par;
  std::size_t extra_r{0};
};

using WeightSpec = BasicWeightSpec<double>;

/// (e^{2it}, e^{-2it}; q)_inf / (a e^{+-it}, b e^{+-it}; q)_inf
/// times (a e^{it}, a e^{-it}; q)_r, all factors in one pass.
template <class Real>
Complex<Real> weight_complex(Real theta, const BasicWeightSpec<Real>& w) {
  const Real pi = std::numbers::pi_v<Real>;
  if (theta <= Real(0) || theta >= pi) return Complex<Real>(0);
  const Real q = w.par.q;
  const Complex<Real> xi = std::polar(Real(1), theta);
  const Complex<Real> xi2 = xi * xi;
  const Complex<Real> a = w.par.a, b = w.par.b;
  const Real big = 2 + 2 * std::abs(a) + 2 * std::abs(b);
  const Real eps = std::numeric_limits<Real>::epsilon() / 4;
  Complex<Real> v{1};
  Real qi = 1;
  for (std::size_t i = 0; big * qi / (1 - q) >= eps; ++i) {
    const Complex<Real> num = (Real(1) - xi2 * qi) * (Real(1) - qi / xi2);
    const Complex<Real> den = (Real(1) - a * xi * qi) * (Real(1) - a * qi / xi) * (Real(1) - b * xi * qi) *
                              (Real(1) - b * qi / xi);
    v *= num / den;
    qi *= q;
  }
  qi = 1;
  for (std::size_t i = 0; i < w.extra_r; ++i, qi *= q) v *= (Real(1) - a * xi * qi) * (Real(1) - a * qi / xi);
  return v;
}

template <class Real>
Real weight_eval(Real theta, const BasicWeightSpec<Real>& w) {
  return weight_complex(theta, w).real();
}

namespace detail {

template <class Real>
void require_unit_disc(const BasicASCParams<Real>& par) {
  if (!par.unit_disc()) raise(ErrorKind::DomainError, "orthogonality measure needs |a| < 1 and |b| < 1");
}

}  // namespace detail

/// (1/2pi) int_0^pi S_k S_l w dtheta against delta_{kl} / (q^{k+1}, ab q^k; q)_inf.
template <class Real>
BasicResidualReport<Real> asc_orthogonality_residual(std::size_t k, std::size_t l, const BasicASCParams<Real>& par,
                                                     const BasicQuadratureGrid<Real>& grid,
                                                     const BasicQContext<Real>& ctx) {
  detail::require_unit_disc(par);
  const BasicWeightSpec<Real> ws{par, 0};
  const std::size_t top = std::max(k, l);
  auto f = [&](Real t) {
    const auto s = asc_eval_all(top, Complex<Real>(std::cos(t)), par);
    return s[k] * s[l] * weight_complex(t, ws);
  };
  const auto lhs = integrate<Real>(f, grid);
  BasicSeriesValue<Real> rhs = exact_value<Real>(Complex<Real>(0));
  if (k == l) {
    const auto den = qpoch_infinite(Complex<Real>(std::pow(par.q, Real(k + 1))), ctx) *
                     qpoch_infinite(par.a * par.b * std::pow(par.q, Real(k)), ctx);
    rhs.value = Complex<Real>(1) / den.value;
    rhs.tail_bound = den.tail_bound / std::norm(den.value);
  }
  IdentityCase c{"asc_ortho", {}};
  c.set("q", double(par.q)).set("a", std::complex<double>(par.a)).set("b", std::complex<double>(par.b));
  c.set("k", double(k)).set("l", double(l));
  return make_report(c, lhs, rhs, ctx.tol() > grid.tol() ? ctx.tol() : grid.tol());
}

/// Closed form for the integral of S_m(x; a q^-nu, b) S_{n+m}(x; a, b) against
/// the weight carrying the extra (a e^{+-it}; q)_r factor.
template <class Real>
BasicSeriesValue<Real> lemma1_closed_form(std::size_t m, long n, std::size_t r, Real nu,
                                          const BasicASCParams<Real>& par, const BasicQContext<Real>& ctx) {
  const Real q = par.q;
  const Complex<Real> a = par.a, b = par.b;
  if (a == Complex<Real>(0) || b == Complex<Real>(0)) {
    raise(ErrorKind::ZeroDivision, "closed form divides by a and b");
  }
  const Real mr = Real(m), nr = Real(n), rr = Real(r);
  auto pre = exact_value<Real>(ipow(-a, -n) * std::pow(q, nr * (nu + 1) + nr * (nr - 1) / 2));
  pre = pre * qpoch_infinite_qpower(nu + nr + rr + 1, ctx);
  const auto den = qpoch_infinite(Complex<Real>(std::pow(q, mr + 1)), ctx) *
                   qpoch_infinite_qpower(nu + rr + 1, ctx) *
                   qpoch_infinite(a * b * std::pow(q, nr + mr + rr), ctx) * qpoch_infinite(Complex<Real>(q), ctx);
  if (den.value == Complex<Real>(0)) raise(ErrorKind::ZeroDivision, "vanishing denominator product");
  BasicSeriesValue<Real> inv;
  inv.value = Complex<Real>(1) / den.value;
  inv.tail_bound = den.tail_bound / std::norm(den.value);
  const std::vector<Complex<Real>> upper{Complex<Real>(std::pow(q, -rr)), Complex<Real>(std::pow(q, -mr - nr)),
                                         Complex<Real>(std::pow(q, -nu - nr - rr))};
  const std::vector<Complex<Real>> extra{std::pow(q, 1 - mr - nr - rr) / (a * b)};
  const auto series = phi_regularized(upper, n, extra, std::pow(q, rr + 1) * a / b, ctx);
  return pre * inv * series;
}

template <class Real>
BasicResidualReport<Real> lemma1_residual(std::size_t m, long n, std::size_t r, Real nu,
                                          const BasicASCParams<Real>& par, const BasicQuadratureGrid<Real>& grid,
                                          const BasicQContext<Real>& ctx) {
  detail::require_unit_disc(par);
  if (n < -static_cast<long>(m)) raise(ErrorKind::InvalidArgument, "lemma needs n >= -m");
  const BasicASCParams<Real> shifted{par.a * std::pow(par.q, -nu), par.b, par.q};
  const BasicWeightSpec<Real> ws{par, r};
  const auto top = static_cast<std::size_t>(static_cast<long>(m) + n);
  auto f = [&](Real t) {
    const Complex<Real> x(std::cos(t));
    return asc_eval_rec(m, x, shifted) * asc_eval_rec(top, x, par) * weight_complex(t, ws);
  };
  const auto lhs = integrate<Real>(f, grid);
  const auto rhs = lemma1_closed_form(m, n, r, nu, par, ctx);
  IdentityCase c{"lemma1", {}};
  c.set("q", double(par.q)).set("a", std::complex<double>(par.a)).set("b", std::complex<double>(par.b));
  c.set("m", double(m)).set("n", double(n)).set("r", double(r)).set("nu", double(nu));
  auto rep = make_report(c, lhs, rhs, std::max(ctx.tol(), grid.tol()));
  if (std::abs(shifted.a) >= Real(1)) rep.notes.push_back("|a q^-nu| >= 1: outside the tested region");
  return rep;
}

/// sum_h a^h q^{h(h-1)/2}/(q;q)_h c_m(q^-h) c_r(q^-h) against
/// delta_{mr} q^-m (-q/a, q; q)_m (-a; q)_inf.
template <class Real>
BasicResidualReport<Real> qcharlier_orthogonality_residual(std::size_t m, std::size_t r,
                                                           const BasicCharlierParams<Real>& par,
                                                           const BasicQContext<Real>& ctx, std::size_t cap = 64) {
  const Real q = par.q;
  // Running weight a^h q^{h(h-1)/2} / (q;q)_h.
  std::vector<Real> weights{Real(1)};
  auto term = [&](std::size_t h) {
    while (weights.size() <= h) {
      const std::size_t j = weights.size() - 1;
      weights.push_back(weights.back() * par.a * std::pow(q, Real(j)) / (1 - std::pow(q, Real(j + 1))));
    }
    const Real w = weights[h];
    if (w == Real(0)) return Complex<Real>(0);
    const Complex<Real> x(std::pow(q, -Real(h)));
    return w * qcharlier_eval(m, x, par) * qcharlier_eval(r, x, par);
  };
  SeriesOptions opts;
  opts.truncate_at = cap;
  opts.min_terms = m + r + 2;
  const auto lhs = sum_terms<Real>(term, ctx, opts);
  if (lhs.tail_bound > ctx.tol()) {
    raise(ErrorKind::CapExceeded, "discrete sum tail above tolerance at h = " + std::to_string(cap));
  }
  BasicSeriesValue<Real> rhs = exact_value<Real>(Complex<Real>(0));
  if (m == r) {
    const auto tail = qpoch_infinite(Complex<Real>(-par.a), ctx);
    const Complex<Real> fin = std::pow(q, -Real(m)) * qpoch_finite(Complex<Real>(-q / par.a), ctx, m) *
                              qpoch_finite(Complex<Real>(q), ctx, m);
    rhs = scaled(tail, fin);
  }
  IdentityCase c{"charlier_ortho", {}};
  c.set("q", double(q)).set("a", double(par.a)).set("m", double(m)).set("r", double(r));
  return make_report(c, lhs, rhs, ctx.tol());
}

}  // namespace qgraf
