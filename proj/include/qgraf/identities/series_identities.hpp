#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/hypergeometric.hpp"
#include "qgraf/qpochhammer.hpp"
#include "qgraf/report.hpp"
#include "qgraf/summation.hpp"

namespace qgraf {

/// Index shift of the regularized 1phi1:
///   (q^{1-n};q)_inf/(q;q)_inf 1phi1(a; q^{1-n}; q, z)
///     = z^n (-1)^n q^{n(n-1)/2} (a, q^{1+n};q)_inf/(a q^n, q;q)_inf 1phi1(a q^n; q^{1+n}; q, z q^n).
/// Whichever side carries the regularized series is summed term by term
/// (phi_regularized_middle); the other side uses the ordinary series.
template <class Real>
BasicResidualReport<Real> one_phi_one_shift_residual(Complex<Real> a, Complex<Real> z, long n,
                                                     const BasicQContext<Real>& ctx, Real tol) {
  const Real q = ctx.q();
  const auto qq = qpoch_infinite(Complex<Real>(q), ctx);
  const Complex<Real> inv_qq = Complex<Real>(1) / qq.value;
  const Real nr = Real(n);
  const Real sign = (n % 2 != 0) ? Real(-1) : Real(1);
  const Complex<Real> aqn = a * std::pow(q, nr);
  BasicSeriesValue<Real> lhs, rhs;
  if (n >= 1) {
    lhs = scaled(phi_regularized_middle<Real>({a}, n, {}, z, ctx), inv_qq);
    const Complex<Real> pre = ipow(z, n) * sign * std::pow(q, nr * (nr - 1) / 2) * qpoch_finite(a, ctx, std::size_t(n)) /
                              qpoch_finite(Complex<Real>(q), ctx, std::size_t(n));
    rhs = scaled(phi_rs<Real>({aqn}, {Complex<Real>(std::pow(q, nr + 1))}, z * std::pow(q, nr), ctx), pre);
  } else {
    if (n < 0 && z == Complex<Real>(0)) raise(ErrorKind::ZeroDivision, "negative shift needs z != 0");
    lhs = qpoch_ratio_to_q(1 - nr, ctx) * phi_rs<Real>({a}, {Complex<Real>(std::pow(q, 1 - nr))}, z, ctx);
    // a q^n lying on q^{-j}, 0 <= j < -n, makes this vanish; rounding rarely gives an exact 0.
    for (long j = 0; j < -n; ++j) {
      if (std::abs(Complex<Real>(1) - aqn * std::pow(q, Real(j))) < Real(1e-13)) {
        raise(ErrorKind::ZeroDivision, "(a q^n;q)_{-n} vanishes");
      }
    }
    const Complex<Real> d = qpoch_finite(aqn, ctx, std::size_t(-n));
    const Complex<Real> pre = ipow(z, n) * sign * std::pow(q, nr * (nr - 1) / 2) / d * inv_qq;
    rhs = scaled(phi_regularized_middle<Real>({aqn}, -n, {}, z * std::pow(q, nr), ctx), pre);
  }
  IdentityCase c{"one_phi_one_shift", {}};
  c.set("q", double(q)).set("a", std::complex<double>(a)).set("z", std::complex<double>(z)).set("n", double(n));
  return make_report(c, lhs, rhs, tol);
}

/// Product of a 1phi1 and a 2phi1 (both normalised) against the double sum
///   (q^{nu+1};q)_inf/(q;q)_inf sum_p (dz)^p (c;q)_p/(q, q^{nu+1};q)_p
///     (q^{mu+1};q)_inf/(q;q)_inf 3phi2(q^-p, q^{-p-nu}, a; q^{mu+1}, q^{1-p}/c; q, b q^{nu+p+1}/(dc)).
template <class Real>
BasicResidualReport<Real> lemma2_residual(Complex<Real> a, Complex<Real> b, Complex<Real> c, Complex<Real> d,
                                          Complex<Real> z, Real mu, Real nu, const BasicQContext<Real>& ctx,
                                          Real tol) {
  const Real q = ctx.q();
  if (!(std::abs(d * z) < Real(1))) raise(ErrorKind::DomainError, "lemma needs |dz| < 1");
  if (c == Complex<Real>(0) || d == Complex<Real>(0)) raise(ErrorKind::ZeroDivision, "double sum divides by c and d");
  const auto left = normalized_phi<Real>({a}, mu + 1, {}, b * z, ctx);
  const auto right = normalized_phi<Real>({c, Complex<Real>(0)}, nu + 1, {}, d * z, ctx);
  const auto lhs = left * right;

  const auto outer_pre = qpoch_ratio_to_q(nu + 1, ctx);
  const Complex<Real> qnu1(std::pow(q, nu + 1));
  Complex<Real> coef{1};  // (dz)^p (c;q)_p / (q, q^{nu+1};q)_p
  auto term = [&](std::size_t p) {
    const Real pr = Real(p);
    if (p > 0) {
      const Real qp = std::pow(q, pr - 1);
      coef *= d * z * (Real(1) - c * qp) / ((Real(1) - qp * q) * (Real(1) - qnu1 * qp));
    }
    const auto inner = normalized_phi<Real>(
        {Complex<Real>(std::pow(q, -pr)), Complex<Real>(std::pow(q, -pr - nu)), a}, mu + 1,
        {std::pow(q, 1 - pr) / c}, b * std::pow(q, nu + pr + 1) / (d * c), ctx);
    return coef * inner.value;
  };
  SeriesOptions opts;
  opts.limit_ratio = double(std::abs(d * z));
  const auto sum = sum_terms<Real>(term, ctx, opts);
  const auto rhs = outer_pre * sum;

  IdentityCase id{"lemma2", {}};
  id.set("q", double(q)).set("a", std::complex<double>(a)).set("b", std::complex<double>(b));
  id.set("c", std::complex<double>(c)).set("d", std::complex<double>(d)).set("z", std::complex<double>(z));
  id.set("mu", double(mu)).set("nu", double(nu));
  return make_report(id, lhs, rhs, tol);
}

/// Terminating 3phi2 inversion
///   3phi2(q^-p, a, b; c, d; q, z) = (a,b;q)_p/(c,d;q)_p (-z)^p q^{-p(p+1)/2}
///     3phi2(q^-p, q^{1-p}/c, q^{1-p}/d; q^{1-p}/a, q^{1-p}/b; q, cd q^{p+1}/(abz)).
template <class Real>
BasicResidualReport<Real> series_inversion_residual(std::size_t p, Complex<Real> a, Complex<Real> b, Complex<Real> c,
                                                    Complex<Real> d, Complex<Real> z, const BasicQContext<Real>& ctx,
                                                    Real tol) {
  const Real q = ctx.q();
  const Real pr = Real(p);
  if (a * b * z == Complex<Real>(0)) raise(ErrorKind::ZeroDivision, "inverted series divides by abz");
  const Complex<Real> qmp(std::pow(q, -pr));
  const auto lhs = phi_rs<Real>({qmp, a, b}, {c, d}, z, ctx);
  const Complex<Real> den = qpoch_finite(c, ctx, p) * qpoch_finite(d, ctx, p);
  if (den == Complex<Real>(0)) raise(ErrorKind::ZeroDivision, "(c, d;q)_p vanishes");
  const Complex<Real> pre = qpoch_finite(a, ctx, p) * qpoch_finite(b, ctx, p) / den * ipow(-z, long(p)) *
                            std::pow(q, -pr * (pr + 1) / 2);
  const Real q1p = std::pow(q, 1 - pr);
  const auto inner = phi_rs<Real>({qmp, q1p / c, q1p / d}, {q1p / a, q1p / b},
                                  c * d * std::pow(q, pr + 1) / (a * b * z), ctx);
  const auto rhs = scaled(inner, pre);
  IdentityCase id{"inversion", {}};
  id.set("q", double(q)).set("p", double(p)).set("a", std::complex<double>(a)).set("b", std::complex<double>(b));
  id.set("c", std::complex<double>(c)).set("d", std::complex<double>(d)).set("z", std::complex<double>(z));
  return make_report(id, lhs, rhs, tol);
}

/// 2phi1(a, 0; c; q, z) = 1phi1(c/a; c; q, az) / (z;q)_inf. At a = 0 the
/// right member is its limit 0phi1(-; c; q, cz) / (z;q)_inf.
template <class Real>
BasicResidualReport<Real> heine_b0_residual(Complex<Real> a, Complex<Real> c, Complex<Real> z,
                                            const BasicQContext<Real>& ctx, Real tol) {
  const Real q = ctx.q();
  if (!(std::abs(z) < Real(1))) raise(ErrorKind::DomainError, "transformation needs |z| < 1");
  const auto lhs = phi_rs<Real>({a, Complex<Real>(0)}, {c}, z, ctx);
  BasicSeriesValue<Real> series;
  if (a == Complex<Real>(0)) {
    series = phi_rs<Real>({}, {c}, c * z, ctx);
  } else {
    series = phi_rs<Real>({c / a}, {c}, a * z, ctx);
  }
  const auto zq = qpoch_infinite(z, ctx);
  BasicSeriesValue<Real> rhs = series;
  rhs.value = series.value / zq.value;
  rhs.tail_bound = series.tail_bound / std::abs(zq.value) + std::abs(rhs.value) * zq.tail_bound / std::abs(zq.value);
  IdentityCase id{"heine0", {}};
  id.set("q", double(q)).set("a", std::complex<double>(a)).set("c", std::complex<double>(c));
  id.set("z", std::complex<double>(z));
  return make_report(id, lhs, rhs, tol);
}

}  // namespace qgraf
