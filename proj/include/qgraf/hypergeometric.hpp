#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/qpochhammer.hpp"
#include "qgraf/summation.hpp"

namespace qgraf {

template <class Real>
struct BasicHypergeometricSpec {
  std::vector<Complex<Real>> upper;
  std::vector<Complex<Real>> lower;
  Complex<Real> argument{0};
};

using HypergeometricSpec = BasicHypergeometricSpec<double>;

/// If b equals q^{-k} for some integer k >= 0 (|b - q^{-k}| < 1e-13 q^{-k}),
/// returns k.
template <class Real>
std::optional<std::size_t> q_power_index(Complex<Real> b, Real q) {
  if (std::abs(b) < Real(0.5)) return std::nullopt;
  const Real k_real = -std::log(std::abs(b)) / std::log(q);
  if (k_real < Real(-0.5)) return std::nullopt;
  const auto k = static_cast<std::size_t>(std::llround(k_real));
  const Real target = std::pow(q, -Real(k));
  if (std::abs(b - Complex<Real>(target)) < Real(1e-13) * target) return k;
  return std::nullopt;
}

namespace detail {

template <class Real>
bool params_equal(Complex<Real> x, Complex<Real> y) {
  return std::abs(x - y) <= Real(1e-15) * std::max(Real(1), std::abs(x));
}

// (-q^k)^e for integer e.
template <class Real>
Real signed_qpow(Real qk, int e) {
  Real v = std::pow(qk, Real(e));
  return (e % 2 != 0) ? -v : v;
}

}  // namespace detail

/// Sum of the basic hypergeometric series r phi s (upper; lower; q, z)
///   sum_k (a_1..a_r;q)_k / (q, b_1..b_s;q)_k ((-1)^k q^{k(k-1)/2})^{1+s-r} z^k.
///
/// Equal upper/lower pairs are cancelled and counted in `cancellations`;
/// an upper q^{-n} still terminates the sum after k = n when cancelled.
/// A lower parameter q^{-p} is accepted only when an upper parameter q^{-n}
/// with n <= p stops the series before the pole is reached.
template <class Real>
BasicSeriesValue<Real> phi_rs(const BasicHypergeometricSpec<Real>& spec, const BasicQContext<Real>& ctx,
                              const SeriesOptions& base_opts = {}) {
  const Real q = ctx.q();
  std::vector<Complex<Real>> up = spec.upper;
  std::vector<Complex<Real>> lo = spec.lower;
  const int e = 1 + static_cast<int>(spec.lower.size()) - static_cast<int>(spec.upper.size());

  // The stop index comes from the parameters as given: a terminating pair
  // q^-n over q^-n is read as the limit of a lower parameter tending to
  // q^-n, which still stops at k = n.
  std::optional<std::size_t> stop;
  for (const auto& a : up) {
    if (auto n = q_power_index(a, q); n && (!stop || *n < *stop)) stop = n;
  }

  std::size_t cancelled = 0;
  for (auto it = up.begin(); it != up.end();) {
    bool hit = false;
    for (auto jt = lo.begin(); jt != lo.end(); ++jt) {
      if (detail::params_equal(*it, *jt)) {
        lo.erase(jt);
        hit = true;
        break;
      }
    }
    if (hit) {
      it = up.erase(it);
      ++cancelled;
    } else {
      ++it;
    }
  }

  for (const auto& b : lo) {
    if (auto p = q_power_index(b, q); p && (!stop || *p < *stop)) {
      raise(ErrorKind::PoleInLowerParameter,
            "lower parameter equals q^-" + std::to_string(*p) + " and the series does not stop before it");
    }
  }

  const Complex<Real> z = spec.argument;
  auto ratio = [&](std::size_t k) {
    const Real qk = std::pow(q, Real(k));
    Complex<Real> r = z / (Real(1) - qk * q);
    for (const auto& a : up) r *= Complex<Real>(1) - a * qk;
    for (const auto& b : lo) r /= Complex<Real>(1) - b * qk;
    return r * detail::signed_qpow(qk, e);
  };

  SeriesOptions opts = base_opts;
  BasicSeriesValue<Real> out;
  if (z == Complex<Real>(0)) {
    out.value = Complex<Real>(1);
    out.terms_used = 1;
  } else if (stop) {
    opts.exact_terms = *stop + 1;
    out = sum_ratio_series<Real>(Complex<Real>(1), ratio, ctx, opts);
  } else {
    const int r = static_cast<int>(up.size());
    const int s = static_cast<int>(lo.size());
    if (r > s + 1) raise(ErrorKind::NonConvergent, "non-terminating series with r > s+1 and z != 0");
    if (r == s + 1) {
      if (std::abs(z) >= Real(1)) raise(ErrorKind::NonConvergent, "r = s+1 requires |z| < 1");
      opts.limit_ratio = std::max(opts.limit_ratio, double(std::abs(z)));
    }
    out = sum_ratio_series<Real>(Complex<Real>(1), ratio, ctx, opts);
  }
  out.cancellations = cancelled;
  return out;
}

template <class Real>
BasicSeriesValue<Real> phi_rs(std::vector<Complex<Real>> upper, std::vector<Complex<Real>> lower, Complex<Real> z,
                              const BasicQContext<Real>& ctx) {
  return phi_rs<Real>(BasicHypergeometricSpec<Real>{std::move(upper), std::move(lower), z}, ctx);
}

/// A value split as reduced * z^z_power so callers can combine explicit
/// powers of z analytically (and evaluate at z = 0).
template <class Real>
struct ReducedValue {
  BasicSeriesValue<Real> reduced;
  long z_power{0};

  Complex<Real> value(Complex<Real> z) const {
    return z_power == 0 ? reduced.value : reduced.value * std::pow(z, Real(z_power));
  }
  Real tail(Complex<Real> z) const {
    return z_power == 0 ? reduced.tail_bound : reduced.tail_bound * std::pow(std::abs(z), Real(z_power));
  }
};

namespace detail {

// Shared core for the q^{1-n} lower parameter with n >= 1: returns the
// re-indexed sum  c_n / z^n * sum_k c_{k+n}/c_n / ((q^{1+n};q)_k (q;q)_k),
// without the (q^{n+1};q)_inf prefactor.
template <class Real>
BasicSeriesValue<Real> shifted_tail_sum(const std::vector<Complex<Real>>& upper, long n,
                                        const std::vector<Complex<Real>>& extra, Complex<Real> z,
                                        const BasicQContext<Real>& ctx) {
  const Real q = ctx.q();
  const int e = 1 + (1 + static_cast<int>(extra.size())) - static_cast<int>(upper.size());
  for (const auto& a : upper) {
    if (auto j = q_power_index(a, q); j && static_cast<long>(*j) < n) {
      return exact_value<Real>(Complex<Real>(0));
    }
  }
  const Real qn = std::pow(q, Real(n));
  Complex<Real> cn{1};
  std::vector<Complex<Real>> up_shift, lo_shift;
  for (const auto& a : upper) {
    cn *= qpoch_finite(a, ctx, static_cast<std::size_t>(n));
    up_shift.push_back(a * qn);
  }
  lo_shift.push_back(Complex<Real>(qn * q));
  for (const auto& b : extra) {
    const Complex<Real> d = qpoch_finite(b, ctx, static_cast<std::size_t>(n));
    if (d == Complex<Real>(0)) raise(ErrorKind::PoleInLowerParameter, "extra lower parameter hits a pole");
    cn /= d;
    lo_shift.push_back(b * qn);
  }
  Real tri = std::pow(q, Real(n) * Real(n - 1) / 2);
  Real sign = (n % 2 != 0) ? Real(-1) : Real(1);
  cn *= std::pow(sign * tri, Real(e));
  const Complex<Real> zs = z * std::pow(qn, Real(e));
  auto tail = phi_rs<Real>(BasicHypergeometricSpec<Real>{up_shift, lo_shift, zs}, ctx);
  return scaled(tail, cn);
}

}  // namespace detail

/// (q^{1-n};q)_inf * phi(upper; q^{1-n}, extra; q, z), read for n >= 1 as the
/// limit with the first n terms dropped and the sum re-indexed. Returned as
/// reduced * z^n (z_power = n for n >= 1, 0 otherwise).
template <class Real>
ReducedValue<Real> phi_regularized_reduced(const std::vector<Complex<Real>>& upper, long n,
                                           const std::vector<Complex<Real>>& extra, Complex<Real> z,
                                           const BasicQContext<Real>& ctx) {
  const Real q = ctx.q();
  ReducedValue<Real> out;
  if (n <= 0) {
    std::vector<Complex<Real>> lower{Complex<Real>(std::pow(q, Real(1 - n)))};
    lower.insert(lower.end(), extra.begin(), extra.end());
    const auto pre = qpoch_infinite(Complex<Real>(std::pow(q, Real(1 - n))), ctx);
    out.reduced = pre * phi_rs<Real>(BasicHypergeometricSpec<Real>{upper, lower, z}, ctx);
    return out;
  }
  const auto pre = qpoch_infinite(Complex<Real>(std::pow(q, Real(n + 1))), ctx);
  out.reduced = pre * detail::shifted_tail_sum(upper, n, extra, z, ctx);
  out.z_power = n;
  return out;
}

template <class Real>
BasicSeriesValue<Real> phi_regularized(const std::vector<Complex<Real>>& upper, long n,
                                       const std::vector<Complex<Real>>& extra, Complex<Real> z,
                                       const BasicQContext<Real>& ctx) {
  const auto r = phi_regularized_reduced(upper, n, extra, z, ctx);
  BasicSeriesValue<Real> out = r.reduced;
  out.value = r.value(z);
  out.tail_bound = r.tail(z);
  return out;
}

/// Same quantity as phi_regularized, summed term by term in the form
///   sum_{k >= max(n,0)} c_k (q^{1-n+k};q)_inf / (q;q)_k
/// where each term carries its own infinite product. Slower; used as an
/// independent evaluation of the re-indexed form.
template <class Real>
BasicSeriesValue<Real> phi_regularized_middle(const std::vector<Complex<Real>>& upper, long n,
                                              const std::vector<Complex<Real>>& extra, Complex<Real> z,
                                              const BasicQContext<Real>& ctx) {
  const Real q = ctx.q();
  const int e = 1 + (1 + static_cast<int>(extra.size())) - static_cast<int>(upper.size());
  std::optional<std::size_t> stop;
  for (const auto& a : upper) {
    if (auto j = q_power_index(a, q); j && (!stop || *j < *stop)) stop = j;
  }
  const std::size_t first = n > 0 ? static_cast<std::size_t>(n) : 0;
  if (stop && *stop < first) return exact_value<Real>(Complex<Real>(0));
  if (!stop && static_cast<int>(upper.size()) > 2 + static_cast<int>(extra.size()) && z != Complex<Real>(0)) {
    raise(ErrorKind::NonConvergent, "non-terminating series with r > s+1 and z != 0");
  }
  // c_k / (q;q)_k, advanced multiplicatively.
  Complex<Real> ck{1};
  for (std::size_t k = 0; k < first; ++k) {
    const Real qk = std::pow(q, Real(k));
    Complex<Real> r = z / (Real(1) - qk * q) * detail::signed_qpow(qk, e);
    for (const auto& a : upper) r *= Complex<Real>(1) - a * qk;
    for (const auto& b : extra) r /= Complex<Real>(1) - b * qk;
    ck *= r;
  }
  auto term = [&](std::size_t i) {
    // Called with consecutive i; keep ck in step.
    const std::size_t k = first + i;
    if (i > 0) {
      const Real qk = std::pow(q, Real(k - 1));
      Complex<Real> r = z / (Real(1) - qk * q) * detail::signed_qpow(qk, e);
      for (const auto& a : upper) r *= Complex<Real>(1) - a * qk;
      for (const auto& b : extra) r /= Complex<Real>(1) - b * qk;
      ck *= r;
    }
    const Real power = Real(1 - n) + Real(k);
    return ck * qpoch_infinite(Complex<Real>(std::pow(q, power)), ctx).value;
  };
  if (stop) {
    CompensatedSum<Real> acc;
    for (std::size_t i = 0; first + i <= *stop; ++i) acc.add(term(i));
    BasicSeriesValue<Real> out;
    out.value = acc.value();
    out.terms_used = *stop + 1 - first;
    return out;
  }
  SeriesOptions opts;
  if (static_cast<int>(upper.size()) == 2 + static_cast<int>(extra.size())) opts.limit_ratio = double(std::abs(z));
  return sum_terms<Real>(term, ctx, opts);
}

/// (q^lambda;q)_inf/(q;q)_inf * phi(upper; q^lambda, extra; q, z) for any
/// real lambda, with the convention above when lambda is a nonpositive
/// integer. Returned as reduced * z^z_power.
template <class Real>
ReducedValue<Real> normalized_phi_reduced(const std::vector<Complex<Real>>& upper, Real lambda,
                                          const std::vector<Complex<Real>>& extra, Complex<Real> z,
                                          const BasicQContext<Real>& ctx) {
  const Real q = ctx.q();
  ReducedValue<Real> out;
  if (auto li = near_integer(lambda); li && *li <= 0) {
    const long n = 1 - *li;
    const Complex<Real> pre = Complex<Real>(1) / qpoch_finite(Complex<Real>(q), ctx, static_cast<std::size_t>(n));
    out.reduced = scaled(detail::shifted_tail_sum(upper, n, extra, z, ctx), pre);
    out.z_power = n;
    return out;
  }
  std::vector<Complex<Real>> lower{Complex<Real>(std::pow(q, lambda))};
  if (auto li = near_integer(lambda)) lower[0] = Complex<Real>(std::pow(q, Real(*li)));
  lower.insert(lower.end(), extra.begin(), extra.end());
  out.reduced = qpoch_ratio_to_q(lambda, ctx) * phi_rs<Real>(BasicHypergeometricSpec<Real>{upper, lower, z}, ctx);
  return out;
}

template <class Real>
BasicSeriesValue<Real> normalized_phi(const std::vector<Complex<Real>>& upper, Real lambda,
                                      const std::vector<Complex<Real>>& extra, Complex<Real> z,
                                      const BasicQContext<Real>& ctx) {
  const auto r = normalized_phi_reduced(upper, lambda, extra, z, ctx);
  BasicSeriesValue<Real> out = r.reduced;
  out.value = r.value(z);
  out.tail_bound = r.tail(z);
  return out;
}

}  // namespace qgraf
