#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "qgraf/al_salam_chihara.hpp"
#include "qgraf/context.hpp"
#include "qgraf/error.hpp"
#include "qgraf/qpochhammer.hpp"

namespace qgraf {

template <class Real>
struct RatioRow {
  std::size_t m{0};
  Complex<Real> ratio{0};
  Complex<Real> limit{0};
  Real deviation{0};
};

/// S_{n+m}(x; a, b) / S_m(x; a q^-nu, b) at x = (xi + 1/xi)/2 against its
/// m -> infinity limit xi^-n (a xi;q)_inf / (a q^-nu xi;q)_inf. Diagnostic only.
template <class Real>
std::vector<RatioRow<Real>> asc_ratio_limit_diagnostic(Real xi, const BasicASCParams<Real>& par, Real nu,
                                                       std::size_t n, const std::vector<std::size_t>& m_schedule) {
  const auto pt = BasicSpectralPoint<Real>::off(xi);
  const auto ctx = par.context();
  const Complex<Real> shifted_a = par.a * std::pow(par.q, -nu);
  const BasicASCParams<Real> shifted{shifted_a, par.b, par.q};
  const auto num = qpoch_infinite(par.a * pt.xi, ctx);
  const auto den = qpoch_infinite(shifted_a * pt.xi, ctx);
  if (den.value == Complex<Real>(0)) raise(ErrorKind::ZeroDivision, "(a q^-nu xi;q)_inf vanishes");
  const Complex<Real> limit = ipow(pt.xi, -long(n)) * num.value / den.value;
  std::vector<RatioRow<Real>> rows;
  for (const std::size_t m : m_schedule) {
    RatioRow<Real> row;
    row.m = m;
    row.ratio = asc_eval_rec(n + m, pt.x, par) / asc_eval_rec(m, pt.x, shifted);
    row.limit = limit;
    row.deviation = std::abs(row.ratio - limit);
    rows.push_back(row);
  }
  return rows;
}

template <class Real>
struct AmplitudeRow {
  std::size_t n{0};
  Complex<Real> scaled{0};
  Complex<Real> amplitude{0};
  Real deviation{0};
};

/// xi^n S_n(x) against the amplitude (a xi, b xi;q)_inf / (xi^2;q)_inf.
template <class Real>
std::vector<AmplitudeRow<Real>> asc_amplitude_diagnostic(Real xi, const BasicASCParams<Real>& par,
                                                         const std::vector<std::size_t>& n_schedule) {
  const auto pt = BasicSpectralPoint<Real>::off(xi);
  const auto amp = asc_asymptotic_amplitude(pt.xi, par, par.context());
  std::vector<AmplitudeRow<Real>> rows;
  for (const std::size_t n : n_schedule) {
    AmplitudeRow<Real> row;
    row.n = n;
    row.scaled = ipow(pt.xi, long(n)) * asc_eval_rec(n, pt.x, par);
    row.amplitude = amp.value;
    row.deviation = std::abs(row.scaled - amp.value);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qgraf
