#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/hypergeometric.hpp"
#include "qgraf/qpochhammer.hpp"

namespace qgraf {

template <class Real>
struct BasicCharlierParams {
  Real a{1};
  Real q{0.5};

  BasicCharlierParams(Real a_, Real q_) : a(a_), q(q_) {
    if (!(a_ > Real(0))) raise(ErrorKind::DomainError, "q-Charlier parameter a must be positive");
  }
  BasicQContext<Real> context() const { return BasicQContext<Real>(q); }
};

using CharlierParams = BasicCharlierParams<double>;

/// c_m(x; a; q) = 2phi1(q^{-m}, x; 0; q, -q^{m+1}/a).
template <class Real>
Complex<Real> qcharlier_eval(std::size_t m, Complex<Real> x, const BasicCharlierParams<Real>& par) {
  if (m == 0) return Complex<Real>(1);
  const Real q = par.q;
  const auto s = phi_rs<Real>({Complex<Real>(std::pow(q, -Real(m))), x}, {Complex<Real>(0)},
                              Complex<Real>(-std::pow(q, Real(m + 1)) / par.a), par.context());
  return s.value;
}

/// The same polynomial from its inverted (1phi1-type) form, written as the
/// explicit finite sum
///   (-a)^{-m} q^{m^2} x^m sum_k (q^{-m};q)_k/(q;q)_k (c q^k;q)_{m-k}
///                                 (-1)^k q^{k(k-1)/2} w^k,
/// c = q^{1-m}/x, w = -a q^{1-m}/x. Needs x != 0.
template <class Real>
Complex<Real> qcharlier_eval_inverted(std::size_t m, Complex<Real> x, const BasicCharlierParams<Real>& par) {
  if (x == Complex<Real>(0)) raise(ErrorKind::ZeroDivision, "inverted form divides by x");
  const Real q = par.q;
  const auto ctx = par.context();
  const Real mm = Real(m);
  const Complex<Real> c = std::pow(q, 1 - mm) / x;
  const Complex<Real> w = -par.a * std::pow(q, 1 - mm) / x;
  const Complex<Real> qmm(std::pow(q, -mm));
  Complex<Real> sum{0};
  for (std::size_t k = 0; k <= m; ++k) {
    const Real kk = Real(k);
    const Real sign = (k % 2) ? Real(-1) : Real(1);
    sum += qpoch_finite(qmm, ctx, k) / qpoch_finite(Complex<Real>(q), ctx, k) *
           qpoch_finite(c * std::pow(q, kk), ctx, m - k) * sign * std::pow(q, kk * (kk - 1) / 2) *
           std::pow(w, kk);
  }
  return std::pow(Complex<Real>(-par.a), -mm) * std::pow(q, mm * mm) * std::pow(x, mm) * sum;
}

/// L_n^{(alpha)}(x; q) = (q^{alpha+1};q)_n/(q;q)_n 1phi1(q^{-n}; q^{alpha+1}; q, -x q^{alpha+n+1}).
template <class Real>
Complex<Real> qlaguerre_eval(std::size_t n, Real alpha, Complex<Real> x, const BasicQContext<Real>& ctx) {
  if (!(alpha > Real(-1))) raise(ErrorKind::DomainError, "q-Laguerre needs alpha > -1");
  const Real q = ctx.q();
  const Complex<Real> qa1(std::pow(q, alpha + 1));
  const Complex<Real> pre = qpoch_finite(qa1, ctx, n) / qpoch_finite(Complex<Real>(q), ctx, n);
  if (n == 0) return pre;
  const auto s = phi_rs<Real>({Complex<Real>(std::pow(q, -Real(n)))}, {qa1},
                              -x * std::pow(q, alpha + Real(n) + 1), ctx);
  return pre * s.value;
}

}  // namespace qgraf
