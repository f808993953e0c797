#pragma once

#include <cmath>
#include <numbers>

#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/qpochhammer.hpp"

namespace qgraf {

namespace detail {

// Lanczos approximation, g = 7, nine coefficients.
inline constexpr long double kLanczosG = 7.0L;
inline constexpr long double kLanczos[9] = {
    0.99999999999980993227684700473478L,  676.520368121885098567009190444019L,
    -1259.13921672240287047156078755283L, 771.3234287776530788486528258894L,
    -176.61502916214059906584551354L,     12.507343278686904814458936853L,
    -0.13857109526572011689554707L,       9.984369578019570859563e-6L,
    1.50563273514931155834e-7L};

template <class Real>
Real lanczos_sum(Real x) {
  // x >= 0.5 here; the approximation is for Gamma(x) with x - 1 shifted in.
  Real a = Real(kLanczos[0]);
  const Real xm1 = x - 1;
  for (int i = 1; i < 9; ++i) a += Real(kLanczos[i]) / (xm1 + Real(i));
  return a;
}

}  // namespace detail

/// Gamma(x) for real x that is not a nonpositive integer.
template <class Real>
Real gamma_fn(Real x) {
  const Real pi = std::numbers::pi_v<Real>;
  if (x < Real(0.5)) {
    if (x <= Real(0) && x == std::floor(x)) {
      raise(ErrorKind::PoleAtNonpositiveInteger, "Gamma has a pole at " + std::to_string(double(x)));
    }
    return pi / (std::sin(pi * x) * gamma_fn(Real(1) - x));
  }
  const Real t = x - Real(0.5) + Real(detail::kLanczosG);
  return std::sqrt(2 * pi) * std::pow(t, x - Real(0.5)) * std::exp(-t) * detail::lanczos_sum(x);
}

/// log|Gamma(x)| for x > 0.
template <class Real>
Real log_gamma_fn(Real x) {
  const Real pi = std::numbers::pi_v<Real>;
  if (x < Real(0.5)) return std::log(pi / std::abs(std::sin(pi * x))) - log_gamma_fn(Real(1) - x);
  const Real t = x - Real(0.5) + Real(detail::kLanczosG);
  return Real(0.5) * std::log(2 * pi) + (x - Real(0.5)) * std::log(t) - t + std::log(detail::lanczos_sum(x));
}

/// 1/Gamma(x), entire: exactly zero at nonpositive integers.
template <class Real>
Real rgamma_fn(Real x) {
  if (x <= Real(0) && x == std::floor(x)) return Real(0);
  const Real pi = std::numbers::pi_v<Real>;
  if (x < Real(0.5)) return std::sin(pi * x) * gamma_fn(Real(1) - x) / pi;
  return Real(1) / gamma_fn(x);
}

/// Gamma_q(x) = (q;q)_inf / (q^x;q)_inf * (1-q)^{1-x}.
template <class Real>
Real qgamma(Real x, const BasicQContext<Real>& ctx) {
  if (auto n = near_integer(x); n && *n <= 0) {
    raise(ErrorKind::PoleAtNonpositiveInteger, "q-gamma has a pole at " + std::to_string(*n));
  }
  const Real q = ctx.q();
  const auto ratio = qpoch_infinite_ratio(Complex<Real>(q), Complex<Real>(std::pow(q, x)), ctx);
  return ratio.value.real() * std::pow(Real(1) - q, Real(1) - x);
}

}  // namespace qgraf
