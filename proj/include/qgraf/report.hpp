#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "qgraf/context.hpp"

namespace qgraf {

struct CaseParam {
  std::string name;
  std::complex<double> value;
};

/// One verification instance: identity name plus every parameter it used,
/// in declaration order.
struct IdentityCase {
  std::string name;
  std::vector<CaseParam> params;

  IdentityCase& set(const std::string& key, std::complex<double> v) {
    for (auto& p : params) {
      if (p.name == key) {
        p.value = v;
        return *this;
      }
    }
    params.push_back({key, v});
    return *this;
  }
};

template <class Real>
struct BasicResidualReport {
  Complex<Real> lhs{0};
  Complex<Real> rhs{0};
  Real abs_residual{0};
  Real rel_residual{0};
  Real tol_used{0};
  std::pair<Real, Real> tail_bounds{0, 0};
  bool pass{false};
  IdentityCase identity_case;
  std::vector<std::string> notes;

  Real tail_total() const { return tail_bounds.first + tail_bounds.second; }
};

using ResidualReport = BasicResidualReport<double>;

/// Fills in residuals and the verdict: pass iff |lhs - rhs| <= tol + tails.
template <class Real>
BasicResidualReport<Real> make_report(IdentityCase c, const BasicSeriesValue<Real>& lhs,
                                      const BasicSeriesValue<Real>& rhs, Real tol) {
  BasicResidualReport<Real> r;
  r.identity_case = std::move(c);
  r.lhs = lhs.value;
  r.rhs = rhs.value;
  r.abs_residual = std::abs(lhs.value - rhs.value);
  const Real scale = std::max(std::abs(lhs.value), std::abs(rhs.value));
  r.rel_residual = scale > Real(0) ? r.abs_residual / scale : r.abs_residual;
  r.tol_used = tol;
  r.tail_bounds = {lhs.tail_bound, rhs.tail_bound};
  r.pass = std::isfinite(r.abs_residual) && r.abs_residual <= tol + r.tail_total();
  if (lhs.cancellations + rhs.cancellations > 0) {
    r.notes.push_back("cancelled " + std::to_string(lhs.cancellations + rhs.cancellations) +
                      " equal upper/lower parameter pair(s)");
  }
  return r;
}

}  // namespace qgraf
