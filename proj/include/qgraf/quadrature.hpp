#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "qgraf/context.hpp"
#include "qgraf/error.hpp"

namespace qgraf {

template <class Real>
struct GaussRule {
  std::vector<Real> nodes;    // on [-1, 1]
  std::vector<Real> weights;
};

/// Gauss-Legendre nodes and weights by Newton iteration on P_n.
template <class Real>
GaussRule<Real> gauss_legendre(std::size_t n) {
  GaussRule<Real> g;
  g.nodes.resize(n);
  g.weights.resize(n);
  const Real pi = std::numbers::pi_v<Real>;
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    Real z = std::cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    Real pp = 0;
    for (int it = 0; it < 100; ++it) {
      Real p1 = 1, p2 = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const Real p3 = p2;
        p2 = p1;
        p1 = ((2 * Real(j) + 1) * z * p2 - Real(j) * p3) / Real(j + 1);
      }
      pp = Real(n) * (z * p1 - p2) / (z * z - 1);
      const Real dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 4 * std::numeric_limits<Real>::epsilon()) break;
    }
    g.nodes[i] = -z;
    g.nodes[n - 1 - i] = z;
    g.weights[i] = 2 / ((1 - z * z) * pp * pp);
    g.weights[n - 1 - i] = g.weights[i];
  }
  return g;
}

/// Gauss-Legendre rules of order 16, 32, ..., max_order. Built once and
/// read-only afterwards, so one grid can be shared across threads.
template <class Real>
class BasicQuadratureGrid {
 public:
  explicit BasicQuadratureGrid(std::size_t min_order = 16, std::size_t max_order = 512, Real tol = Real(1e-12))
      : tol_(tol) {
    if (min_order < 1 || max_order < min_order) raise(ErrorKind::InvalidArgument, "bad quadrature orders");
    for (std::size_t n = min_order; n <= max_order; n *= 2) rules_.push_back(gauss_legendre<Real>(n));
  }

  static const BasicQuadratureGrid& standard() {
    static const BasicQuadratureGrid grid;
    return grid;
  }

  const std::vector<GaussRule<Real>>& rules() const { return rules_; }
  Real tol() const { return tol_; }
  std::size_t max_order() const { return rules_.back().nodes.size(); }

  BasicQuadratureGrid with_tol(Real tol) const {
    BasicQuadratureGrid g(*this);
    g.tol_ = tol;
    return g;
  }

 private:
  std::vector<GaussRule<Real>> rules_;
  Real tol_;
};

using QuadratureGrid = BasicQuadratureGrid<double>;

/// Integrates a vector-valued f over [lo, hi], doubling the order until every
/// component changes by less than tol * max(1, |I|). The tail bound is the
/// largest last change.
template <class Real, class F>
std::vector<BasicSeriesValue<Real>> integrate_many_raw(F&& f, Real lo, Real hi,
                                                       const BasicQuadratureGrid<Real>& grid) {
  const Real mid = (lo + hi) / 2, half = (hi - lo) / 2;
  std::vector<Complex<Real>> prev;
  for (std::size_t r = 0; r < grid.rules().size(); ++r) {
    const auto& rule = grid.rules()[r];
    std::vector<Complex<Real>> acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const auto v = f(mid + half * rule.nodes[i]);
      if (acc.empty()) acc.assign(v.size(), Complex<Real>(0));
      for (std::size_t j = 0; j < v.size(); ++j) acc[j] += rule.weights[i] * v[j];
    }
    for (auto& v : acc) v *= half;
    if (r > 0) {
      bool done = true;
      Real worst = 0;
      for (std::size_t j = 0; j < acc.size(); ++j) {
        const Real change = std::abs(acc[j] - prev[j]);
        worst = std::max(worst, change);
        if (!(change < grid.tol() * std::max(Real(1), std::abs(acc[j])))) done = false;
      }
      if (done) {
        std::vector<BasicSeriesValue<Real>> out(acc.size());
        for (std::size_t j = 0; j < acc.size(); ++j) {
          out[j].value = acc[j];
          out[j].tail_bound = std::abs(acc[j] - prev[j]);
          out[j].terms_used = rule.nodes.size();
        }
        return out;
      }
    }
    prev = std::move(acc);
  }
  raise(ErrorKind::DoublingCapExceeded,
        "quadrature not converged at order " + std::to_string(grid.max_order()));
}

template <class Real, class F>
BasicSeriesValue<Real> integrate_raw(F&& f, Real lo, Real hi, const BasicQuadratureGrid<Real>& grid) {
  auto wrapped = [&](Real t) { return std::vector<Complex<Real>>{Complex<Real>(f(t))}; };
  return integrate_many_raw<Real>(wrapped, lo, hi, grid)[0];
}

/// (1/2pi) int_0^pi f(theta) d theta.
template <class Real, class F>
BasicSeriesValue<Real> integrate(F&& f, const BasicQuadratureGrid<Real>& grid) {
  const Real pi = std::numbers::pi_v<Real>;
  return scaled(integrate_raw<Real>(f, Real(0), pi, grid), Complex<Real>(1 / (2 * pi)));
}

template <class Real, class F>
std::vector<BasicSeriesValue<Real>> integrate_many(F&& f, const BasicQuadratureGrid<Real>& grid) {
  const Real pi = std::numbers::pi_v<Real>;
  auto out = integrate_many_raw<Real>(f, Real(0), pi, grid);
  for (auto& v : out) v = scaled(v, Complex<Real>(1 / (2 * pi)));
  return out;
}

}  // namespace qgraf
