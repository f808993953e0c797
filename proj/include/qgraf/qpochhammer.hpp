#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>

#include "qgraf/context.hpp"
#include "qgraf/error.hpp"

namespace qgraf {

/// (a;q)_k = prod_{i<k} (1 - a q^i). Empty product is exactly 1.
template <class Real>
Complex<Real> qpoch_finite(Complex<Real> a, const BasicQContext<Real>& ctx, std::size_t k) {
  Complex<Real> p{1};
  Complex<Real> aq = a;
  for (std::size_t i = 0; i < k; ++i) {
    p *= Complex<Real>(1) - aq;
    aq *= ctx.q();
  }
  return p;
}

/// (a;q)_inf truncated at the first K with |a| q^K / (1-q) < tol.
///
/// Tail: for |a| q^K < 1 - q,
///   |log prod_{i>=K} (1 - a q^i)| <= sum_i -log(1 - |a| q^i)
///                                 <= |a| q^K / (1 - q - |a| q^K) =: L,
/// so the omitted factor lies within e^L - 1 of one and the error in the
/// value is at most |partial| * expm1(L).
template <class Real>
BasicSeriesValue<Real> qpoch_infinite(Complex<Real> a, const BasicQContext<Real>& ctx) {
  BasicSeriesValue<Real> out;
  const Real q = ctx.q();
  const Real one_minus_q = Real(1) - q;
  Real mag = std::abs(a);
  if (mag == Real(0)) return out;
  Complex<Real> p{1};
  Complex<Real> aq = a;
  std::size_t k = 0;
  // Besides the tol test, keep going until the bound formula is usable.
  while (mag / one_minus_q >= ctx.tol() || mag >= one_minus_q / 2) {
    if (k >= ctx.max_product_factors()) {
      raise(ErrorKind::CapExceeded,
            "infinite product needs more than " + std::to_string(ctx.max_product_factors()) + " factors");
    }
    p *= Complex<Real>(1) - aq;
    aq *= q;
    mag *= q;
    ++k;
  }
  out.value = p;
  out.terms_used = k;
  out.tail_bound = std::abs(p) * std::expm1(mag / (one_minus_q - mag));
  return out;
}

/// Product of several infinite q-Pochhammer symbols.
template <class Real, class Range>
BasicSeriesValue<Real> qpoch_infinite_all(const Range& as, const BasicQContext<Real>& ctx) {
  BasicSeriesValue<Real> out;
  for (const auto& a : as) out = out * qpoch_infinite(Complex<Real>(a), ctx);
  return out;
}

/// If x is within 1e-13 (relative) of an integer, that integer.
template <class Real>
std::optional<long> near_integer(Real x) {
  const Real r = std::round(x);
  if (std::abs(x - r) <= Real(1e-13) * std::max(Real(1), std::abs(r))) return static_cast<long>(r);
  return std::nullopt;
}

/// (q^x;q)_inf for real x, exact zero when x is a nonpositive integer.
template <class Real>
BasicSeriesValue<Real> qpoch_infinite_qpower(Real x, const BasicQContext<Real>& ctx) {
  if (auto n = near_integer(x); n && *n <= 0) return exact_value<Real>(Complex<Real>(0));
  return qpoch_infinite(Complex<Real>(std::pow(ctx.q(), x)), ctx);
}

/// (q^x;q)_inf / (q;q)_inf for real x. Positive integer x gives the finite
/// 1/(q;q)_{x-1}; nonpositive integer x gives zero.
template <class Real>
BasicSeriesValue<Real> qpoch_ratio_to_q(Real x, const BasicQContext<Real>& ctx) {
  if (auto n = near_integer(x)) {
    if (*n <= 0) return exact_value<Real>(Complex<Real>(0));
    return exact_value<Real>(Complex<Real>(1) /
                             qpoch_finite(Complex<Real>(ctx.q()), ctx, static_cast<std::size_t>(*n - 1)));
  }
  const auto num = qpoch_infinite(Complex<Real>(std::pow(ctx.q(), x)), ctx);
  const auto den = qpoch_infinite(Complex<Real>(ctx.q()), ctx);
  BasicSeriesValue<Real> out;
  out.value = num.value / den.value;
  out.tail_bound = num.tail_bound / std::abs(den.value) +
                   std::abs(out.value) * den.tail_bound / std::abs(den.value);
  out.terms_used = num.terms_used + den.terms_used;
  return out;
}

/// (a;q)_inf / (b;q)_inf with the bounds of both products propagated.
template <class Real>
BasicSeriesValue<Real> qpoch_infinite_ratio(Complex<Real> a, Complex<Real> b, const BasicQContext<Real>& ctx) {
  const auto num = qpoch_infinite(a, ctx);
  const auto den = qpoch_infinite(b, ctx);
  if (std::abs(den.value) == Real(0)) raise(ErrorKind::ZeroDivision, "vanishing infinite product in denominator");
  BasicSeriesValue<Real> out;
  out.value = num.value / den.value;
  const Real d = std::abs(den.value);
  out.tail_bound = num.tail_bound / d + std::abs(out.value) * den.tail_bound / std::max(d - den.tail_bound, d / 2);
  out.terms_used = num.terms_used + den.terms_used;
  return out;
}

/// z^n for integer n by repeated squaring; 0^0 = 1.
template <class Real>
Complex<Real> ipow(Complex<Real> z, long n) {
  if (n < 0) return Complex<Real>(1) / ipow(z, -n);
  Complex<Real> r{1};
  while (n) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

/// q^{k(k-1)/2}.
template <class Real>
Real q_triangular(Real q, long k) {
  return std::pow(q, Real(k) * Real(k - 1) / 2);
}

}  // namespace qgraf
