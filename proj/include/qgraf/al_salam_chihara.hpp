#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/hypergeometric.hpp"
#include "qgraf/qpochhammer.hpp"

namespace qgraf {

template <class Real>
struct BasicASCParams {
  Complex<Real> a{0};
  Complex<Real> b{0};
  Real q{0.5};

  bool unit_disc() const { return std::abs(a) < Real(1) && std::abs(b) < Real(1); }
  BasicASCParams swapped() const { return {b, a, q}; }
  BasicQContext<Real> context() const { return BasicQContext<Real>(q); }
};

using ASCParams = BasicASCParams<double>;

/// x = cos(theta) with xi = e^{i theta} on the spectrum, or x = (xi + 1/xi)/2
/// with real 0 < |xi| < 1 off it.
template <class Real>
struct BasicSpectralPoint {
  Real theta{0};
  Complex<Real> x{1};
  Complex<Real> xi{1};
  bool on_spectrum{true};

  static BasicSpectralPoint on(Real theta) {
    return {theta, Complex<Real>(std::cos(theta)), std::polar(Real(1), theta), true};
  }

  static BasicSpectralPoint off(Real xi) {
    if (xi == Real(0)) raise(ErrorKind::DomainError, "off-spectrum point needs xi != 0");
    if (std::abs(xi) > Real(1)) xi = Real(1) / xi;
    if (std::abs(xi) == Real(1)) raise(ErrorKind::DomainError, "|xi| = 1 lies on the spectrum");
    return {Real(0), Complex<Real>((xi + Real(1) / xi) / 2), Complex<Real>(xi), false};
  }
};

using SpectralPoint = BasicSpectralPoint<double>;

namespace detail {

// Minimal complex arithmetic over a multiprecision real.
struct WideComplex {
  using R = boost::multiprecision::cpp_bin_float_100;
  R re{0}, im{0};
  friend WideComplex operator+(const WideComplex& x, const WideComplex& y) { return {x.re + y.re, x.im + y.im}; }
  friend WideComplex operator-(const WideComplex& x, const WideComplex& y) { return {x.re - y.re, x.im - y.im}; }
  friend WideComplex operator*(const WideComplex& x, const WideComplex& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend WideComplex operator/(const WideComplex& x, const WideComplex& y) {
    const R d = y.re * y.re + y.im * y.im;
    return {(x.re * y.re + x.im * y.im) / d, (x.im * y.re - x.re * y.im) / d};
  }
};

}  // namespace detail

/// S_n from the terminating 3phi2 representation
///   a^{-n} (ab;q)_n 3phi2(q^{-n}, a xi, a/xi; ab, 0; q, q); needs a != 0.
///
/// The terms of this sum reach q^{-n(n-1)/2} times the result in size, so
/// it is accumulated in 100-digit arithmetic and rounded once at the end.
template <class Real>
Complex<Real> asc_eval_def(std::size_t n, const BasicSpectralPoint<Real>& p, const BasicASCParams<Real>& par) {
  using W = detail::WideComplex;
  using R = W::R;
  if (par.a == Complex<Real>(0)) {
    raise(ErrorKind::ZeroParameterPrefactor, "definition has the prefactor a^-n; use the recurrence for a = 0");
  }
  if (n == 0) return Complex<Real>(1);
  const W a{R(par.a.real()), R(par.a.imag())};
  const W b{R(par.b.real()), R(par.b.imag())};
  const R q(par.q);
  W xi;
  if (p.on_spectrum) {
    xi = {cos(R(p.theta)), sin(R(p.theta))};
  } else {
    xi = {R(p.xi.real()), R(p.xi.imag())};
  }
  const W one{R(1), R(0)};
  const W ab = a * b;
  const W axi = a * xi, axi_inv = a / xi;
  const R qmn = pow(q, -static_cast<int>(n));

  W term = one, sum = one;
  R qk(1);
  for (std::size_t k = 0; k < n; ++k) {
    const W num = (one - W{qmn * qk, R(0)}) * (one - axi * W{qk, R(0)}) * (one - axi_inv * W{qk, R(0)});
    const W den = W{(1 - qk * q), R(0)} * (one - ab * W{qk, R(0)});
    term = term * num / den * W{q, R(0)};
    sum = sum + term;
    qk *= q;
  }
  W pre = one;
  qk = 1;
  for (std::size_t k = 0; k < n; ++k, qk *= q) pre = pre * (one - ab * W{qk, R(0)});
  W an = one;
  for (std::size_t k = 0; k < n; ++k) an = an * a;
  const W v = pre * sum / an;
  return Complex<Real>(static_cast<Real>(v.re), static_cast<Real>(v.im));
}

/// S_0..S_n(x) from
///   S_{k+1} = (2x - (a+b) q^k) S_k - (1 - q^k)(1 - ab q^{k-1}) S_{k-1}.
template <class Real>
std::vector<Complex<Real>> asc_eval_all(std::size_t n, Complex<Real> x, const BasicASCParams<Real>& par) {
  std::vector<Complex<Real>> s(n + 1);
  s[0] = Complex<Real>(1);
  if (n == 0) return s;
  const Complex<Real> ab = par.a * par.b;
  const Complex<Real> apb = par.a + par.b;
  s[1] = Real(2) * x - apb;
  Real qk = par.q;  // q^k
  for (std::size_t k = 1; k < n; ++k) {
    s[k + 1] = (Real(2) * x - apb * qk) * s[k] - (Real(1) - qk) * (Real(1) - ab * qk / par.q) * s[k - 1];
    qk *= par.q;
  }
  return s;
}

template <class Real>
Complex<Real> asc_eval_rec(std::size_t n, Complex<Real> x, const BasicASCParams<Real>& par) {
  Complex<Real> prev{0}, cur{1};
  const Complex<Real> ab = par.a * par.b;
  const Complex<Real> apb = par.a + par.b;
  Real qk = 1;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex<Real> next =
        (Real(2) * x - apb * qk) * cur - (Real(1) - qk) * (Real(1) - ab * qk / par.q) * prev;
    prev = cur;
    cur = next;
    qk *= par.q;
  }
  return cur;
}

template <class Real>
Complex<Real> asc_eval_rec(std::size_t n, const BasicSpectralPoint<Real>& p, const BasicASCParams<Real>& par) {
  return asc_eval_rec(n, p.x, par);
}

/// c_{k,n}(alpha; a), k = 0..n, with S_n(x; alpha, b) = sum_k c_{k,n} S_k(x; a, b).
template <class Real>
std::vector<Complex<Real>> asc_connection_coeffs(Complex<Real> alpha, const BasicASCParams<Real>& par,
                                                 std::size_t n) {
  const Complex<Real> a = par.a;
  if (a == Complex<Real>(0)) raise(ErrorKind::ZeroDivision, "connection coefficients divide by a");
  const auto ctx = par.context();
  const Real q = par.q;
  std::vector<Complex<Real>> c(n + 1);
  const Complex<Real> qmn(std::pow(q, -Real(n)));
  for (std::size_t k = 0; k <= n; ++k) {
    const Real kk = Real(k);
    const Complex<Real> lead = qpoch_finite(qmn, ctx, k) / qpoch_finite(Complex<Real>(q), ctx, k);
    const Real sign = (k % 2) ? Real(-1) : Real(1);
    c[k] = lead * std::pow(a, Real(n - k)) * sign * std::pow(q, Real(n) * kk - kk * (kk - 1) / 2) *
           qpoch_finite(alpha / a, ctx, n - k);
  }
  return c;
}

/// A(xi) = (a xi, b xi; q)_inf / (xi^2; q)_inf, the amplitude of the leading
/// behaviour xi^{-n} A(xi) of S_n at an off-spectrum point.
template <class Real>
BasicSeriesValue<Real> asc_asymptotic_amplitude(Complex<Real> xi, const BasicASCParams<Real>& par,
                                                const BasicQContext<Real>& ctx) {
  if (std::abs(xi) >= Real(1)) raise(ErrorKind::DomainError, "amplitude needs |xi| < 1");
  const auto num = qpoch_infinite(par.a * xi, ctx) * qpoch_infinite(par.b * xi, ctx);
  const auto den = qpoch_infinite(xi * xi, ctx);
  BasicSeriesValue<Real> out;
  out.value = num.value / den.value;
  out.tail_bound = num.tail_bound / std::abs(den.value) + std::abs(out.value) * den.tail_bound / std::abs(den.value);
  out.terms_used = num.terms_used + den.terms_used;
  return out;
}

}  // namespace qgraf
