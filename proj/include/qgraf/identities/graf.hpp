#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "qgraf/bessel.hpp"
#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/qpochhammer.hpp"
#include "qgraf/quadrature.hpp"
#include "qgraf/report.hpp"

namespace qgraf {

template <class Real>
struct BasicGrafInstance {
  Real nu{0};
  Real x{1};
  Real y{0};
  Real psi{0};
  long m{0};

  bool integer_order() const {
    const auto n = near_integer(nu);
    return n && Real(*n) == nu;
  }

  void validate() const {
    if (!integer_order() && !(std::abs(y) < std::abs(x) && x > Real(0))) {
      raise(ErrorKind::DomainError, "non-integer order needs |y| < x");
    }
  }

  IdentityCase describe(const std::string& name) const {
    IdentityCase c{name, {}};
    c.set("nu", double(nu)).set("x", double(x)).set("y", double(y)).set("psi", double(psi)).set("m", double(m));
    return c;
  }
};

using GrafInstance = BasicGrafInstance<double>;

/// J_nu(R) e^{i nu chi} with x - y e^{-i psi} = R e^{i chi}. For |y| < x this
/// is the principal-branch form J_nu(R) ((x - y e^{-i psi})/(x - y e^{i psi}))^{nu/2};
/// for integer nu it is single valued for any x, y.
template <class Real>
Complex<Real> graf_lhs(const BasicGrafInstance<Real>& g, Real psi) {
  const Complex<Real> w = Complex<Real>(g.x) - g.y * std::polar(Real(1), -psi);
  const Real r2 = g.x * g.x + g.y * g.y - 2 * g.x * g.y * std::cos(psi);
  if (!(r2 > Real(0))) raise(ErrorKind::BranchAmbiguity, "x^2 + y^2 - 2xy cos(psi) <= 0");
  const Real R = std::abs(w);
  return bessel_j(g.nu, R) * std::polar(Real(1), g.nu * std::arg(w));
}

/// sum_{|k| <= M} J_{nu+k}(x) J_k(y) e^{i k psi}, with the tail estimated
/// geometrically from the last two terms on each side.
template <class Real>
BasicSeriesValue<Real> graf_rhs(const BasicGrafInstance<Real>& g, long M) {
  CompensatedSum<Real> acc;
  Real tail = 0;
  for (int side = 0; side < 2; ++side) {
    Real prev = 0, last = 0;
    for (long i = 0; i <= M; ++i) {
      const long k = side == 0 ? i : -(i + 1);
      if (side == 1 && i == M) break;
      const Complex<Real> t =
          bessel_j(g.nu + Real(k), g.x) * bessel_j(Real(k), g.y) * std::polar(Real(1), Real(k) * g.psi);
      acc.add(t);
      prev = last;
      last = std::abs(t);
    }
    const Real rho = prev > Real(0) ? last / prev : Real(0);
    tail += rho < Real(1) ? last * rho / (1 - rho) : std::numeric_limits<Real>::infinity();
  }
  BasicSeriesValue<Real> out;
  out.value = acc.value();
  out.tail_bound = tail;
  out.terms_used = static_cast<std::size_t>(2 * M + 1);
  return out;
}

template <class Real>
BasicResidualReport<Real> graf_classical_residual(const BasicGrafInstance<Real>& g, long M, Real tol) {
  g.validate();
  const auto lhs = exact_value<Real>(graf_lhs(g, g.psi));
  const auto rhs = graf_rhs(g, M);
  auto id = g.describe("graf");
  id.set("M", double(M));
  return make_report(id, lhs, rhs, tol);
}

/// J_{nu+m}(x) J_m(y) against (1/2pi) int_0^{2pi} (Graf left member) e^{-i m psi} d psi.
template <class Real>
BasicResidualReport<Real> graf_product_classical_residual(const BasicGrafInstance<Real>& g,
                                                          const BasicQuadratureGrid<Real>& grid, Real tol) {
  g.validate();
  const Real two_pi = 2 * std::numbers::pi_v<Real>;
  const auto lhs = exact_value<Real>(Complex<Real>(bessel_j(g.nu + Real(g.m), g.x) * bessel_j(Real(g.m), g.y)));
  auto f = [&](Real psi) { return graf_lhs(g, psi) * std::polar(Real(1), -Real(g.m) * psi); };
  const auto rhs = scaled(integrate_raw<Real>(f, Real(0), two_pi, grid), Complex<Real>(1 / two_pi));
  return make_report(g.describe("graf_product"), lhs, rhs, tol);
}

/// sum_{|n| <= M} J_n(z) J_{n+p}(z) against delta_{0,p}.
template <class Real>
BasicResidualReport<Real> hansen_lommel_classical_residual(long p, Real z, long M, Real tol) {
  CompensatedSum<Real> acc;
  for (long n = -M; n <= M; ++n) acc.add(Complex<Real>(bessel_j(Real(n), z) * bessel_j(Real(n + p), z)));
  BasicSeriesValue<Real> lhs;
  lhs.value = acc.value();
  // |J_n(z)| <= (|z|/2)^n / n! for n >= 0.
  const Real h = std::abs(z) / 2;
  const long n0 = M + 1 - std::abs(p);
  Real tail = 0;
  if (n0 > 0) {
    Real t = std::exp(Real(n0) * std::log(std::max(h, std::numeric_limits<Real>::min())) - std::lgamma(Real(n0 + 1)));
    tail = 2 * t / (1 - std::min(Real(0.5), h / Real(n0 + 1)));
  }
  lhs.tail_bound = tail;
  const auto rhs = exact_value<Real>(Complex<Real>(p == 0 ? 1 : 0));
  IdentityCase id{"hansen_lommel", {}};
  id.set("p", double(p)).set("z", double(z)).set("M", double(M));
  return make_report(id, lhs, rhs, tol);
}

}  // namespace qgraf
