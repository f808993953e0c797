#pragma once

#include <complex>
#include <cstddef>
#include <string>

#include "qgraf/error.hpp"

namespace qgraf {

template <class Real>
using Complex = std::complex<Real>;

/// Base q plus the accuracy target and truncation caps shared by every
/// evaluation. Immutable once built; 0 < q < 1 is enforced here so nothing
/// downstream has to re-check it.
template <class Real>
class BasicQContext {
 public:
  static constexpr std::size_t kDefaultMaxTerms = 10000;
  static constexpr std::size_t kDefaultMaxProductFactors = 20000;

  explicit BasicQContext(Real q, Real tol = Real(1e-12),
                         std::size_t max_terms = kDefaultMaxTerms,
                         std::size_t max_product_factors = kDefaultMaxProductFactors)
      : q_(q), tol_(tol), max_terms_(max_terms), max_product_factors_(max_product_factors) {
    if (!(q > Real(0) && q < Real(1))) {
      raise(ErrorKind::DomainError, "base q must satisfy 0 < q < 1, got " + std::to_string(double(q)));
    }
    if (!(tol > Real(0))) {
      raise(ErrorKind::InvalidArgument, "tolerance must be positive");
    }
    if (max_terms < 1 || max_product_factors < 1) {
      raise(ErrorKind::InvalidArgument, "truncation caps must be at least 1");
    }
  }

  Real q() const noexcept { return q_; }
  Real tol() const noexcept { return tol_; }
  std::size_t max_terms() const noexcept { return max_terms_; }
  std::size_t max_product_factors() const noexcept { return max_product_factors_; }

  BasicQContext with_q(Real q) const { return BasicQContext(q, tol_, max_terms_, max_product_factors_); }
  BasicQContext with_tol(Real tol) const { return BasicQContext(q_, tol, max_terms_, max_product_factors_); }
  BasicQContext with_caps(std::size_t terms, std::size_t factors) const {
    return BasicQContext(q_, tol_, terms, factors);
  }

 private:
  Real q_;
  Real tol_;
  std::size_t max_terms_;
  std::size_t max_product_factors_;
};

using QContext = BasicQContext<double>;
using ExtendedQContext = BasicQContext<long double>;

/// Result of any infinite sum or product: the value, a bound on the modulus
/// of what was left out, and how many terms (or factors) were used.
template <class Real>
struct BasicSeriesValue {
  Complex<Real> value{1};
  Real tail_bound{0};
  std::size_t terms_used{0};
  // Upper/lower parameter pairs removed before summation.
  std::size_t cancellations{0};
};

using SeriesValue = BasicSeriesValue<double>;

/// Product of two approximations with first-order propagation of their bounds.
template <class Real>
BasicSeriesValue<Real> operator*(const BasicSeriesValue<Real>& x, const BasicSeriesValue<Real>& y) {
  BasicSeriesValue<Real> out;
  out.value = x.value * y.value;
  out.tail_bound = std::abs(x.value) * y.tail_bound + std::abs(y.value) * x.tail_bound +
                   x.tail_bound * y.tail_bound;
  out.terms_used = x.terms_used + y.terms_used;
  out.cancellations = x.cancellations + y.cancellations;
  return out;
}

template <class Real>
BasicSeriesValue<Real> scaled(const BasicSeriesValue<Real>& x, Complex<Real> factor) {
  BasicSeriesValue<Real> out = x;
  out.value *= factor;
  out.tail_bound *= std::abs(factor);
  return out;
}

template <class Real>
BasicSeriesValue<Real> exact_value(Complex<Real> v) {
  BasicSeriesValue<Real> out;
  out.value = v;
  return out;
}

}  // namespace qgraf
