#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/hypergeometric.hpp"
#include "qgraf/identities/graf.hpp"
#include "qgraf/qpochhammer.hpp"
#include "qgraf/report.hpp"
#include "qgraf/summation.hpp"

namespace qgraf {

namespace detail {

// y^nu (u, q^{nu+1};q)_inf/(q^nu u, q;q)_inf 2phi1(q^nu u, xs/y; q^{nu+1}; q, -y^2)
// with u = x/(ys). For nu >= 0 every power of 1/y is absorbed into the
// factors (y - ...), so y = 0 is fine.
template <class Real>
BasicSeriesValue<Real> ks_left(long nu, Real x, Real y, Complex<Real> s, const BasicQContext<Real>& ctx) {
  const Real q = ctx.q();
  if (nu >= 0) {
    Complex<Real> pre{1};
    Real qi = 1;
    for (long i = 0; i < nu; ++i, qi *= q) pre *= (y - x * qi / s) / (1 - qi * q);
    const Real qnu = std::pow(q, Real(nu));
    Complex<Real> t{1};
    auto term = [&](std::size_t k) {
      if (k > 0) {
        const Real qk = std::pow(q, Real(k - 1));
        t *= -(y - qnu * qk * x / s) * (y - x * s * qk) / ((1 - qk * q) * (1 - qnu * qk * q));
      }
      return t;
    };
    SeriesOptions opts;
    opts.limit_ratio = double(y * y);
    return scaled(sum_terms<Real>(term, ctx, opts), pre);
  }
  if (y == Real(0)) raise(ErrorKind::ZeroDivision, "negative order needs y != 0");
  const Complex<Real> u = x / (y * s);
  const Complex<Real> d = qpoch_finite(u * std::pow(q, Real(nu)), ctx, static_cast<std::size_t>(-nu));
  if (d == Complex<Real>(0)) raise(ErrorKind::ZeroDivision, "(q^nu u;q)_{-nu} vanishes");
  const auto phi = normalized_phi<Real>({u * std::pow(q, Real(nu)), x * s / y}, Real(nu + 1), {},
                                        Complex<Real>(-y * y), ctx);
  return scaled(phi, std::pow(Complex<Real>(y), Real(nu)) / d);
}

// y^{nu+n} (q^{nu+n+1})_inf/(q)_inf 2phi1(0,0;q^{nu+n+1};q,-y^2), with the
// powers of y from a regularized factor folded into the monomial.
template <class Real>
BasicSeriesValue<Real> ks_y_factor(long k, Real y, const BasicQContext<Real>& ctx) {
  const auto r = normalized_phi_reduced<Real>({Complex<Real>(0), Complex<Real>(0)}, Real(k + 1), {},
                                              Complex<Real>(-y * y), ctx);
  const long pw = k + 2 * r.z_power;
  const Real sign = (r.z_power % 2 != 0) ? Real(-1) : Real(1);
  return scaled(r.reduced, Complex<Real>(sign * std::pow(y, Real(pw))));
}

// x^n q^{n(n-1)/2} (q^{n+1})_inf/(q)_inf 0phi1(-;q^{n+1};q,-x^2 q^n).
template <class Real>
BasicSeriesValue<Real> ks_x_factor(long n, Real x, const BasicQContext<Real>& ctx) {
  const Real q = ctx.q();
  const Real qn = std::pow(q, Real(n));
  const auto r = normalized_phi_reduced<Real>({}, Real(n + 1), {}, Complex<Real>(-x * x * qn), ctx);
  const long pw = n + 2 * r.z_power;
  const Real sign = (r.z_power % 2 != 0) ? Real(-1) : Real(1);
  // Magnitude in logs: x^pw and q^{n z_power} each overflow for n << 0.
  if (x == Real(0)) return scaled(r.reduced, Complex<Real>(pw == 0 ? sign : Real(0)));
  const Real lg = Real(pw) * std::log(std::abs(x)) + (Real(n * r.z_power) + Real(n) * Real(n - 1) / 2) * std::log(q);
  const Real f = (x < 0 && pw % 2 != 0 ? -sign : sign) * std::exp(lg);
  return scaled(r.reduced, Complex<Real>(f));
}

}  // namespace detail

/// q-analogue of Graf's formula for the q-Bessel functions, with the
/// bilateral n-sum truncated to |n| <= N.
template <class Real>
BasicResidualReport<Real> ks_addition_residual(long nu, Real x, Real y, Complex<Real> s,
                                               const BasicQContext<Real>& ctx, long N, Real tol) {
  if (s == Complex<Real>(0)) raise(ErrorKind::ZeroDivision, "s = 0");
  if (!(std::abs(y) < Real(1))) raise(ErrorKind::DomainError, "left member needs |y| < 1");
  const auto lhs = detail::ks_left(nu, x, y, s, ctx);
  auto side = [&](int dir) {
    auto term = [&](std::size_t i) {
      const long n = dir > 0 ? long(i) : -long(i) - 1;
      const auto yf = detail::ks_y_factor(nu + n, y, ctx);
      const auto xf = detail::ks_x_factor(n, x, ctx);
      return ipow(s, n) * yf.value * xf.value;
    };
    SeriesOptions opts;
    opts.truncate_at = static_cast<std::size_t>(dir > 0 ? N + 1 : N);
    opts.quiet_run = 1 << 20;  // keep every index up to N
    return sum_terms<Real>(term, ctx, opts);
  };
  auto rhs = side(+1);
  if (N > 0) {
    const auto neg = side(-1);
    rhs.value += neg.value;
    rhs.tail_bound += neg.tail_bound;
    rhs.terms_used += neg.terms_used;
  }
  IdentityCase id{"ks", {}};
  id.set("q", double(ctx.q())).set("nu", double(nu)).set("x", double(x)).set("y", double(y));
  id.set("s", std::complex<double>(s)).set("N", double(N));
  return make_report(id, lhs, rhs, tol);
}

/// sum_{n >= -m} (-z)^n q^{n(n-1)/2} (q;q)_{n+m}
///   [(q^{n+1})_inf/(q)_inf 1phi1(q^-m; q^{n+1}; q, q^{1+m+n-p} z)]
///   [(q^{n+p+1})_inf/(q)_inf 2phi1(q^{n+m+1}, 0; q^{n+p+1}; q, z)]
/// against delta_{0p} (q;q)_m; the n-sum stops at n = N.
template <class Real>
BasicResidualReport<Real> hansen_lommel_q_residual(long p, long m, Complex<Real> z, const BasicQContext<Real>& ctx,
                                                   long N, Real tol) {
  if (m < 0) raise(ErrorKind::InvalidArgument, "m must be nonnegative");
  if (p > m) raise(ErrorKind::InvalidArgument, "needs p <= m");
  if (!(std::abs(z) < Real(1))) raise(ErrorKind::DomainError, "needs |z| < 1");
  if (N < -m) raise(ErrorKind::InvalidArgument, "needs N >= -m");
  const Real q = ctx.q();
  const Complex<Real> qmm(std::pow(q, -Real(m)));
  auto term = [&](std::size_t i) {
    const long n = long(i) - m;
    const Real c = std::pow(q, Real(1 + m + n - p));
    const auto f1 = normalized_phi_reduced<Real>({qmm}, Real(n + 1), {}, c * z, ctx);
    const auto f2 = normalized_phi_reduced<Real>({Complex<Real>(std::pow(q, Real(n + m + 1))), Complex<Real>(0)},
                                                 Real(n + p + 1), {}, z, ctx);
    const long zp = n + f1.z_power + f2.z_power;
    if (zp < 0) raise(ErrorKind::ZeroDivision, "negative power of z");
    const Real sign = (n % 2 != 0) ? Real(-1) : Real(1);
    const Complex<Real> mono = sign * q_triangular(q, n) * std::pow(c, Real(f1.z_power)) * ipow(z, zp) *
                               qpoch_finite(Complex<Real>(q), ctx, static_cast<std::size_t>(n + m));
    return mono * f1.reduced.value * f2.reduced.value;
  };
  SeriesOptions opts;
  opts.truncate_at = static_cast<std::size_t>(N + m + 1);
  const auto lhs = sum_terms<Real>(term, ctx, opts);
  auto rhs = exact_value<Real>(Complex<Real>(0));
  if (p == 0) rhs.value = qpoch_finite(Complex<Real>(q), ctx, static_cast<std::size_t>(m));
  IdentityCase id{"hansen_lommel_q", {}};
  id.set("q", double(q)).set("p", double(p)).set("m", double(m)).set("z", std::complex<double>(z));
  id.set("N", double(N));
  return make_report(id, lhs, rhs, tol);
}

template <class Real>
struct LimitRow {
  Real q{0};
  Complex<Real> lhs{0};
  Complex<Real> rhs{0};
  Complex<Real> classical{0};
  Real dev_lhs{0};
  Real dev_rhs{0};

  Real deviation() const { return std::max(dev_lhs, dev_rhs); }
};

/// Both members of the q-formula with x, y replaced by (1-q)x, (1-q)y and
/// s = e^{i psi}, against the classical value J_nu(R) e^{i nu chi} at
/// (nu, 2y, 2x, psi): as q -> 1 the x-side factors become J_n(2x) and the
/// y-side factors J_{nu+n}(2y).
template <class Real>
std::vector<LimitRow<Real>> q_to_1_limit_table(const BasicGrafInstance<Real>& g, const std::vector<Real>& schedule,
                                               long N = 40) {
  const auto nu = near_integer(g.nu);
  if (!nu || Real(*nu) != g.nu) raise(ErrorKind::DomainError, "limit table needs integer order");
  BasicGrafInstance<Real> classical = g;
  classical.x = 2 * g.y;
  classical.y = 2 * g.x;
  const Complex<Real> target = graf_lhs(classical, g.psi);
  const Complex<Real> s = std::polar(Real(1), g.psi);
  std::vector<LimitRow<Real>> rows;
  for (const Real q : schedule) {
    if (!(q > Real(0) && q < Real(1))) raise(ErrorKind::InvalidArgument, "schedule entries must lie in (0,1)");
    const BasicQContext<Real> ctx(q, Real(1e-15), 200000, 200000);
    const auto rep = ks_addition_residual(*nu, (1 - q) * g.x, (1 - q) * g.y, s, ctx, N, Real(1e-12));
    LimitRow<Real> row;
    row.q = q;
    row.lhs = rep.lhs;
    row.rhs = rep.rhs;
    row.classical = target;
    row.dev_lhs = std::abs(rep.lhs - target);
    row.dev_rhs = std::abs(rep.rhs - target);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qgraf
