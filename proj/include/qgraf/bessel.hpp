#pragma once

#include <cmath>
#include <vector>

#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/gamma.hpp"
#include "qgraf/qpochhammer.hpp"

namespace qgraf {

namespace detail {

// Power series sum_k (-1)^k (z/2)^{nu+2k} / (k! Gamma(nu+k+1)), z > 0.
template <class Real>
Real bessel_j_series(Real nu, Real z) {
  const Real h = z / 2;
  const Real h2 = h * h;
  // Start at the first k where Gamma(nu+k+1) is finite and nonzero in 1/Gamma.
  Real t;
  const Real lead = nu + 1;
  if (lead > Real(0)) {
    t = std::exp(nu * std::log(h) - log_gamma_fn(lead));
  } else {
    t = std::pow(h, nu) * rgamma_fn(lead);
  }
  Real sum = 0, comp = 0;
  for (int k = 0; k < 500; ++k) {
    if (k > 0) {
      const Real d = Real(k) * (nu + Real(k));
      if (d == Real(0)) {
        // 1/Gamma vanished at the previous step; restart from the explicit term.
        t = (k % 2 ? Real(-1) : Real(1)) * std::pow(h, nu + 2 * k) * rgamma_fn(Real(k + 1)) *
            rgamma_fn(nu + Real(k + 1));
      } else {
        t *= -h2 / d;
      }
    }
    const Real y = t - comp;
    const Real s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    if (k > 2 && std::abs(t) < std::numeric_limits<Real>::epsilon() * std::abs(sum) * Real(1e-2)) break;
  }
  return sum;
}

// J_{nu0 + j}(z) for j = 0..count-1 by Miller's backward recurrence, nu0 in
// [0, 1), z > 0, normalised with
//   (z/2)^{nu0} = sum_k (nu0 + 2k) Gamma(nu0 + k) / k! J_{nu0+2k}(z).
template <class Real>
std::vector<Real> bessel_j_miller(Real nu0, Real z, int count) {
  const int top = std::max(count, static_cast<int>(z)) + 40 + static_cast<int>(std::sqrt(40.0 * (z + 1)));
  const int start = top + (top % 2);
  std::vector<Real> f(static_cast<std::size_t>(start + 2), Real(0));
  f[static_cast<std::size_t>(start)] = Real(1e-30);
  for (int j = start; j >= 1; --j) {
    const Real mu = nu0 + Real(j);
    f[static_cast<std::size_t>(j - 1)] = (2 * mu / z) * f[static_cast<std::size_t>(j)] - f[static_cast<std::size_t>(j + 1)];
    if (std::abs(f[static_cast<std::size_t>(j - 1)]) > Real(1e200)) {
      for (int i = j - 1; i <= start; ++i) f[static_cast<std::size_t>(i)] *= Real(1e-200);
    }
  }
  // k = 0 weight nu0 * Gamma(nu0) = Gamma(nu0 + 1).
  Real w = gamma_fn(nu0 + 1);
  Real norm = w * f[0];
  Real wk = w;  // Gamma(nu0 + k) / k!
  for (int k = 1; 2 * k <= start; ++k) {
    wk = (k == 1) ? gamma_fn(nu0 + 1) : wk * (nu0 + Real(k - 1)) / Real(k);
    norm += (nu0 + 2 * Real(k)) * wk * f[static_cast<std::size_t>(2 * k)];
  }
  const Real scale = std::pow(z / 2, nu0) / norm;
  std::vector<Real> out(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) out[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(j)] * scale;
  return out;
}

}  // namespace detail

/// Bessel function of the first kind J_nu(z) for real nu and real z.
/// Non-integer nu needs z >= 0 (and z > 0 when nu < 0).
template <class Real>
Real bessel_j(Real nu, Real z, const BasicQContext<Real>& = BasicQContext<Real>(Real(0.5))) {
  const auto n_int = near_integer(nu);
  const bool is_int = n_int.has_value() && nu == Real(*n_int);
  if (is_int) {
    long n = *n_int;
    Real sign = 1;
    if (n < 0) {
      n = -n;
      if (n % 2) sign = -sign;
    }
    if (z < Real(0)) {
      z = -z;
      if (n % 2) sign = -sign;
    }
    if (z == Real(0)) return n == 0 ? Real(1) : Real(0);
    if (z <= Real(8)) return sign * detail::bessel_j_series(Real(n), z);
    return sign * detail::bessel_j_miller(Real(0), z, static_cast<int>(n) + 1).back();
  }
  if (z < Real(0)) raise(ErrorKind::DomainError, "J_nu(z) with non-integer nu needs z >= 0");
  if (z == Real(0)) {
    if (nu > Real(0)) return Real(0);
    raise(ErrorKind::DomainError, "J_nu(0) is unbounded for negative non-integer nu");
  }
  if (z <= Real(8)) return detail::bessel_j_series(nu, z);
  const Real base = std::floor(nu);
  const Real nu0 = nu - base;
  if (nu > Real(0)) {
    return detail::bessel_j_miller(nu0, z, static_cast<int>(base) + 1).back();
  }
  // Negative order: recur downward from J_{nu0}, J_{nu0+1}.
  const auto seed = detail::bessel_j_miller(nu0, z, 2);
  Real jp1 = seed[1], j0 = seed[0];
  for (Real mu = nu0; mu > nu + Real(0.5); mu -= 1) {
    const Real jm1 = (2 * mu / z) * j0 - jp1;
    jp1 = j0;
    j0 = jm1;
  }
  return j0;
}

}  // namespace qgraf
