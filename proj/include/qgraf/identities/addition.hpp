#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qgraf/al_salam_chihara.hpp"
#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/hypergeometric.hpp"
#include "qgraf/orthogonality.hpp"
#include "qgraf/qpochhammer.hpp"
#include "qgraf/quadrature.hpp"
#include "qgraf/report.hpp"

namespace qgraf {

template <class Real>
struct BasicAdditionCase {
  Real q{0.5};
  Complex<Real> a{0.3};
  Complex<Real> b{0.2};
  Complex<Real> z{0.4};
  Real nu{1.5};
  std::size_t m{2};
  Real theta{0};

  BasicASCParams<Real> params() const { return {a, b, q}; }
  BasicASCParams<Real> shifted_params() const { return {a * std::pow(q, -nu), b, q}; }

  void validate() const {
    if (!(std::abs(z) < Real(1))) raise(ErrorKind::DomainError, "addition formula needs |z| < 1");
    if (!(std::abs(a) < Real(1) && std::abs(b) < Real(1))) {
      raise(ErrorKind::DomainError, "addition formula needs |a| < 1 and |b| < 1");
    }
    if (!(nu > Real(-1))) raise(ErrorKind::DomainError, "addition formula is checked for nu > -1");
  }

  IdentityCase describe(const std::string& name) const {
    IdentityCase c{name, {}};
    c.set("q", double(q)).set("a", std::complex<double>(a)).set("b", std::complex<double>(b));
    c.set("z", std::complex<double>(z)).set("nu", double(nu)).set("m", double(m)).set("theta", double(theta));
    return c;
  }
};

using AdditionCase = BasicAdditionCase<double>;

/// (q^{nu+1};q)_inf/(q;q)_inf 2phi1(a e^{it}, a e^{-it}; q^{nu+1}; q, z) at theta = t.
template <class Real>
BasicSeriesValue<Real> addition_phi_factor(const BasicAdditionCase<Real>& c, Real theta,
                                           const BasicQContext<Real>& ctx) {
  const Complex<Real> xi = std::polar(Real(1), theta);
  return normalized_phi<Real>({c.a * xi, c.a / xi}, c.nu + 1, {}, c.z, ctx);
}

template <class Real>
BasicSeriesValue<Real> addition_lhs_at(const BasicAdditionCase<Real>& c, Real theta, const BasicQContext<Real>& ctx) {
  const auto s = asc_eval_rec(c.m, Complex<Real>(std::cos(theta)), c.shifted_params());
  return scaled(addition_phi_factor(c, theta, ctx), s);
}

template <class Real>
BasicSeriesValue<Real> addition_lhs(const BasicAdditionCase<Real>& c, const BasicQContext<Real>& ctx) {
  c.validate();
  return addition_lhs_at(c, c.theta, ctx);
}

/// The two majorants used for the expansion coefficients:
///   |F1_n| <= (-|a^2 z| q^{n-nu};q)_inf / (q;q)_inf     (n >= -m)
///   |F2_n| <= (-q^{nu+1}, -|ab|;q)_inf / (q, |z|;q)_inf  (n >= 0)
template <class Real>
struct AdditionBounds {
  Real f1{0};
  Real f2{0};
  // Truncation error of the majorants themselves.
  Real f1_err{0};
  Real f2_err{0};
};

template <class Real>
AdditionBounds<Real> addition_factor_bounds(const BasicAdditionCase<Real>& c, long n, const BasicQContext<Real>& ctx) {
  const Real q = c.q;
  const auto qq = qpoch_infinite(Complex<Real>(q), ctx);
  auto rel = [](const BasicSeriesValue<Real>& v) { return v.tail_bound / std::abs(v.value); };
  AdditionBounds<Real> out;
  const Real x = std::norm(c.a) * std::abs(c.z) * std::pow(q, Real(n) - c.nu);
  const auto p1 = qpoch_infinite(Complex<Real>(-x), ctx);
  out.f1 = p1.value.real() / qq.value.real();
  out.f1_err = out.f1 * (rel(p1) + rel(qq));
  const auto pn = qpoch_infinite(Complex<Real>(-std::pow(q, c.nu + 1)), ctx);
  const auto pab = qpoch_infinite(Complex<Real>(-std::abs(c.a * c.b)), ctx);
  const auto pz = qpoch_infinite(Complex<Real>(std::abs(c.z)), ctx);
  out.f2 = pn.value.real() * pab.value.real() / (qq.value.real() * pz.value.real());
  out.f2_err = out.f2 * (rel(pn) + rel(pab) + rel(qq) + rel(pz));
  return out;
}

template <class Real>
struct AdditionCoefficient {
  BasicSeriesValue<Real> value;
  Complex<Real> f1{0}, f2{0};
  bool f1_within{true}, f2_within{true};
};

/// A_n = (-1)^n a^n z^n q^{n(n-1)/2} F1_n F2_n with
///   F1_n = (q^{1+n};q)_inf/(q;q)_inf 1phi1(q^{-m}; q^{1+n}; q, a^2 q^{m+n-nu} z),
///   F2_n = (q^{nu+n+1};q)_inf/(q;q)_inf 2phi1(ab q^{n+m}, 0; q^{nu+n+1}; q, z).
/// Powers of z are collected before multiplying so z = 0 is handled.
template <class Real>
AdditionCoefficient<Real> addition_coefficient(const BasicAdditionCase<Real>& c, long n,
                                               const BasicQContext<Real>& ctx) {
  const Real q = c.q;
  const Real nr = Real(n), mr = Real(c.m);
  const Complex<Real> w1_base = std::pow(q, mr + nr - c.nu) * c.a * c.a;
  const auto f1 = normalized_phi_reduced<Real>({Complex<Real>(std::pow(q, -mr))}, 1 + nr, {}, w1_base * c.z, ctx);
  const auto f2 = normalized_phi_reduced<Real>({c.a * c.b * std::pow(q, nr + mr), Complex<Real>(0)},
                                               c.nu + nr + 1, {}, c.z, ctx);
  // F1 = f1.reduced * (w1_base z)^{p1}, F2 = f2.reduced * z^{p2}.
  const long p1 = f1.z_power, p2 = f2.z_power;
  const Real sign = (n % 2 != 0) ? Real(-1) : Real(1);
  const Complex<Real> scale = sign * std::pow(q, nr * (nr - 1) / 2 + (mr + nr - c.nu) * Real(p1)) *
                              ipow(c.a, n + 2 * p1) * ipow(c.z, n + p1 + p2);
  AdditionCoefficient<Real> out;
  out.value = scaled(f1.reduced * f2.reduced, scale);
  out.f1 = f1.value(w1_base * c.z);
  out.f2 = f2.value(c.z);
  const auto bounds = addition_factor_bounds(c, n, ctx);
  const Real slack = Real(1) + Real(64) * std::numeric_limits<Real>::epsilon();
  out.f1_within = std::abs(out.f1) <= bounds.f1 * slack + bounds.f1_err + f1.tail(w1_base * c.z);
  out.f2_within = n < 0 || std::abs(out.f2) <= bounds.f2 * slack + bounds.f2_err + f2.tail(c.z);
  return out;
}

template <class Real>
struct AdditionExpansion {
  BasicSeriesValue<Real> value;
  std::vector<Complex<Real>> coefficients;  // A_n, n = -m..N
  std::vector<std::string> notes;
};

/// Bound on sum_{n>N} |A_n S_{n+m}(cos theta)| from the factor majorants and
/// |S_k| <= B_k, B_{k+1} = (2 + (|a|+|b|) q^k) B_k + (1 + |ab| q^{k-1}) B_{k-1}.
template <class Real>
Real addition_truncation_bound(const BasicAdditionCase<Real>& c, long N, const BasicQContext<Real>& ctx) {
  const Real q = c.q;
  const Real sa = std::abs(c.a) + std::abs(c.b), pab = std::abs(c.a * c.b);
  std::vector<Real> B{Real(1), Real(2) + sa};
  auto bound_s = [&](std::size_t k) {
    while (B.size() <= k) {
      const std::size_t j = B.size() - 1;
      const Real qj = std::pow(q, Real(j));
      B.push_back((2 + sa * qj) * B[j] + (1 + pab * qj / q) * B[j - 1]);
    }
    return B[k];
  };
  const Real az = std::abs(c.a) * std::abs(c.z);
  Real total = 0;
  for (long n = N + 1; n < N + 400; ++n) {
    const auto bd = addition_factor_bounds(c, n, ctx);
    const Real lg = Real(n) * std::log(std::max(az, std::numeric_limits<Real>::min())) +
                    Real(n) * Real(n - 1) / 2 * std::log(q) + std::log(bd.f1 * bd.f2 * bound_s(std::size_t(n) + c.m));
    const Real t = std::exp(lg);
    total += t;
    if (t <= total * std::numeric_limits<Real>::epsilon() || t == Real(0)) break;
  }
  return total;
}

template <class Real>
AdditionExpansion<Real> addition_rhs_expansion(const BasicAdditionCase<Real>& c, long N,
                                               const BasicQContext<Real>& ctx) {
  c.validate();
  if (N < 1) raise(ErrorKind::InvalidArgument, "truncation N must be at least 1");
  const long m = static_cast<long>(c.m);
  const auto s = asc_eval_all(static_cast<std::size_t>(N + m), Complex<Real>(std::cos(c.theta)), c.params());
  AdditionExpansion<Real> out;
  CompensatedSum<Real> acc;
  Real tails = 0;
  for (long n = -m; n <= N; ++n) {
    const auto A = addition_coefficient(c, n, ctx);
    out.coefficients.push_back(A.value.value);
    const Complex<Real> sk = s[static_cast<std::size_t>(n + m)];
    acc.add(A.value.value * sk);
    tails += A.value.tail_bound * std::abs(sk);
    if (!A.f1_within) out.notes.push_back("F1 bound exceeded at n=" + std::to_string(n));
    if (!A.f2_within) out.notes.push_back("F2 bound exceeded at n=" + std::to_string(n));
  }
  out.value.value = acc.value();
  out.value.tail_bound = tails + addition_truncation_bound(c, N, ctx);
  out.value.terms_used = static_cast<std::size_t>(N + m + 1);
  return out;
}

template <class Real>
BasicSeriesValue<Real> addition_rhs(const BasicAdditionCase<Real>& c, long N, const BasicQContext<Real>& ctx) {
  return addition_rhs_expansion(c, N, ctx).value;
}

template <class Real>
BasicResidualReport<Real> addition_residual(const BasicAdditionCase<Real>& c, long N, const BasicQContext<Real>& ctx,
                                            Real tol) {
  const auto lhs = addition_lhs(c, ctx);
  auto rhs = addition_rhs_expansion(c, N, ctx);
  auto id = c.describe("addition");
  id.set("N", double(N));
  auto rep = make_report(id, lhs, rhs.value, tol);
  rep.notes.insert(rep.notes.end(), rhs.notes.begin(), rhs.notes.end());
  return rep;
}

/// Product formula: the integral of the addition-formula left member times
/// S_{n+m}(x; a, b) against the weight, for each n in [n_lo, n_hi], against
/// A_n / (q^{n+m+1}, ab q^{n+m}; q)_inf. Integrals share one quadrature.
template <class Real>
std::vector<BasicResidualReport<Real>> product_residuals(const BasicAdditionCase<Real>& c, long n_lo, long n_hi,
                                                         const BasicQuadratureGrid<Real>& grid,
                                                         const BasicQContext<Real>& ctx, Real tol) {
  c.validate();
  const long m = static_cast<long>(c.m);
  if (n_lo < -m || n_hi < n_lo) raise(ErrorKind::InvalidArgument, "product formula needs -m <= n");
  const BasicWeightSpec<Real> ws{c.params(), 0};
  const auto top = static_cast<std::size_t>(n_hi + m);
  auto f = [&](Real t) {
    const Complex<Real> x(std::cos(t));
    const Complex<Real> base = addition_lhs_at(c, t, ctx).value * weight_complex(t, ws);
    const auto s = asc_eval_all(top, x, c.params());
    std::vector<Complex<Real>> v;
    for (long n = n_lo; n <= n_hi; ++n) v.push_back(base * s[static_cast<std::size_t>(n + m)]);
    return v;
  };
  const auto integrals = integrate_many<Real>(f, grid);
  std::vector<BasicResidualReport<Real>> out;
  for (long n = n_lo; n <= n_hi; ++n) {
    const auto A = addition_coefficient(c, n, ctx);
    const auto den = qpoch_infinite(Complex<Real>(std::pow(c.q, Real(n + m + 1))), ctx) *
                     qpoch_infinite(c.a * c.b * std::pow(c.q, Real(n + m)), ctx);
    BasicSeriesValue<Real> rhs = A.value;
    rhs.value = A.value.value / den.value;
    rhs.tail_bound = A.value.tail_bound / std::abs(den.value) + std::abs(rhs.value) * den.tail_bound / std::abs(den.value);
    auto id = c.describe("product");
    id.set("n", double(n));
    auto rep = make_report(id, integrals[static_cast<std::size_t>(n - n_lo)], rhs, tol);
    if (!A.f1_within || !A.f2_within) rep.notes.push_back("factor bound exceeded");
    out.push_back(std::move(rep));
  }
  return out;
}

template <class Real>
BasicResidualReport<Real> product_residual(const BasicAdditionCase<Real>& c, long n,
                                           const BasicQuadratureGrid<Real>& grid, const BasicQContext<Real>& ctx,
                                           Real tol) {
  return product_residuals(c, n, n, grid, ctx, tol).front();
}

/// Expands the left member in the basis S_{n+m}(x; a, b) with coefficients
/// recovered by quadrature (n = -m..N) and resums at theta. Returns the
/// report of the resummed value against the left member, plus the largest
/// deviation of a recovered coefficient from A_n in `max_coeff_dev`.
template <class Real>
struct ResynthesisResult {
  BasicResidualReport<Real> report;
  Real max_coeff_dev{0};
};

template <class Real>
ResynthesisResult<Real> resynthesis(const BasicAdditionCase<Real>& c, long N, const BasicQuadratureGrid<Real>& grid,
                                    const BasicQContext<Real>& ctx, Real tol) {
  const long m = static_cast<long>(c.m);
  const auto prods = product_residuals(c, -m, N, grid, ctx, tol);
  const auto s = asc_eval_all(static_cast<std::size_t>(N + m), Complex<Real>(std::cos(c.theta)), c.params());
  CompensatedSum<Real> acc;
  ResynthesisResult<Real> out;
  Real tails = 0;
  for (long n = -m; n <= N; ++n) {
    const auto& p = prods[static_cast<std::size_t>(n + m)];
    const auto norm = qpoch_infinite(Complex<Real>(std::pow(c.q, Real(n + m + 1))), ctx) *
                      qpoch_infinite(c.a * c.b * std::pow(c.q, Real(n + m)), ctx);
    const Complex<Real> coeff = p.lhs * norm.value;
    out.max_coeff_dev = std::max(out.max_coeff_dev, std::abs(coeff - p.rhs * norm.value));
    acc.add(coeff * s[static_cast<std::size_t>(n + m)]);
    tails += p.tail_bounds.first * std::abs(norm.value) * std::abs(s[static_cast<std::size_t>(n + m)]);
  }
  BasicSeriesValue<Real> resummed;
  resummed.value = acc.value();
  resummed.tail_bound = tails + addition_truncation_bound(c, N, ctx);
  auto id = c.describe("resynthesis");
  id.set("N", double(N));
  out.report = make_report(id, addition_lhs(c, ctx), resummed, tol);
  return out;
}

}  // namespace qgraf
