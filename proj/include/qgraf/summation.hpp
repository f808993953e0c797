#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>

#include "qgraf/context.hpp"
#include "qgraf/error.hpp"

namespace qgraf {

/// Neumaier-compensated accumulator, applied to the real and imaginary parts
/// independently.
template <class Real>
class CompensatedSum {
 public:
  void add(Complex<Real> term) {
    add_part(sum_re_, comp_re_, term.real());
    add_part(sum_im_, comp_im_, term.imag());
  }

  Complex<Real> value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

 private:
  static void add_part(Real& sum, Real& comp, Real x) {
    const Real t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  Real sum_re_{0}, sum_im_{0};
  Real comp_re_{0}, comp_im_{0};
};

struct SeriesOptions {
  // Sum exactly this many terms and report a zero tail (terminating series).
  std::optional<std::size_t> exact_terms;
  // Upper bound on the modulus of the limiting term ratio; used so the tail
  // bound stays valid for ratios creeping up towards their limit.
  double limit_ratio = 0.0;
  // Never stop before this many terms have been added.
  std::size_t min_terms = 0;
  // Stop at this many terms without error, estimating the tail from the last
  // ratio (explicitly truncated sums). When unset the context cap applies
  // and hitting it raises CapExceeded.
  std::optional<std::size_t> truncate_at;
  // Number of consecutive negligible terms required before stopping.
  int quiet_run = 3;
};

namespace detail {

template <class Real>
BasicSeriesValue<Real> finish_truncated(const CompensatedSum<Real>& acc, std::size_t used,
                                        Complex<Real> last, Complex<Real> next) {
  BasicSeriesValue<Real> out;
  out.value = acc.value();
  out.terms_used = used;
  const Real rho = std::abs(last) > Real(0) ? std::abs(next) / std::abs(last) : Real(0);
  out.tail_bound = rho < Real(1) ? std::abs(next) / (Real(1) - rho)
                                 : std::numeric_limits<Real>::infinity();
  return out;
}

}  // namespace detail

/// Sums t_0 + t_1 + ... where t_{k+1} = t_k * ratio(k).
///
/// Stopping rule: after `quiet_run` consecutive terms with
/// |t_k| < tol * max(1, |partial sum|) and an observed ratio below one. The
/// tail is then bounded by |t_{k+1}| / (1 - rho) with
/// rho = max(|ratio(k)|, limit_ratio), which holds whenever later ratios stay
/// below rho (true for q-series past their largest term).
template <class Real, class RatioFn>
BasicSeriesValue<Real> sum_ratio_series(Complex<Real> first, RatioFn&& ratio,
                                        const BasicQContext<Real>& ctx,
                                        const SeriesOptions& opts = {}) {
  CompensatedSum<Real> acc;
  if (opts.exact_terms) {
    Complex<Real> t = first;
    for (std::size_t k = 0; k < *opts.exact_terms; ++k) {
      acc.add(t);
      if (k + 1 < *opts.exact_terms) t *= ratio(k);
    }
    BasicSeriesValue<Real> out;
    out.value = acc.value();
    out.terms_used = *opts.exact_terms;
    return out;
  }

  const std::size_t cap = opts.truncate_at.value_or(ctx.max_terms());
  Complex<Real> t = first;
  int quiet = 0;
  for (std::size_t k = 0;; ++k) {
    acc.add(t);
    const std::size_t used = k + 1;
    const Complex<Real> r = ratio(k);
    const Complex<Real> next = t * r;
    if (!std::isfinite(std::abs(next))) {
      raise(ErrorKind::NonConvergent, "series term overflowed at index " + std::to_string(k + 1));
    }
    const Real scale = std::max(Real(1), std::abs(acc.value()));
    quiet = std::abs(t) < ctx.tol() * scale ? quiet + 1 : 0;
    if (quiet >= opts.quiet_run && used >= opts.min_terms) {
      const Real rho = std::max(std::abs(r), Real(opts.limit_ratio));
      if (rho < Real(1)) {
        BasicSeriesValue<Real> out;
        out.value = acc.value();
        out.terms_used = used;
        out.tail_bound = std::abs(next) / (Real(1) - rho);
        return out;
      }
    }
    if (used >= cap) {
      if (opts.truncate_at) return detail::finish_truncated(acc, used, t, next);
      raise(ErrorKind::CapExceeded, "series did not converge within " + std::to_string(cap) + " terms");
    }
    t = next;
  }
}

/// Sums t_0 + t_1 + ... with each term supplied directly by term(k). Same
/// stopping rule as sum_ratio_series, with the ratio taken from consecutive
/// terms.
template <class Real, class TermFn>
BasicSeriesValue<Real> sum_terms(TermFn&& term, const BasicQContext<Real>& ctx,
                                 const SeriesOptions& opts = {}) {
  CompensatedSum<Real> acc;
  const std::size_t cap = opts.truncate_at.value_or(ctx.max_terms());
  Complex<Real> t = term(std::size_t{0});
  int quiet = 0;
  for (std::size_t k = 0;; ++k) {
    if (!std::isfinite(std::abs(t))) {
      raise(ErrorKind::NonConvergent, "series term is not finite at index " + std::to_string(k));
    }
    acc.add(t);
    const std::size_t used = k + 1;
    const Real scale = std::max(Real(1), std::abs(acc.value()));
    quiet = std::abs(t) < ctx.tol() * scale ? quiet + 1 : 0;
    if (used >= cap && opts.truncate_at) {
      const Complex<Real> next = term(used);
      return detail::finish_truncated(acc, used, t, next);
    }
    if (used >= cap) {
      raise(ErrorKind::CapExceeded, "series did not converge within " + std::to_string(cap) + " terms");
    }
    const Complex<Real> next = term(used);
    if (quiet >= opts.quiet_run && used >= opts.min_terms) {
      const Real rho_obs = std::abs(t) > Real(0) ? std::abs(next) / std::abs(t) : Real(0);
      const Real rho = std::max(rho_obs, Real(opts.limit_ratio));
      if (rho < Real(1)) {
        BasicSeriesValue<Real> out;
        acc.add(next);
        out.value = acc.value();
        out.terms_used = used + 1;
        out.tail_bound = std::abs(next) * rho / (Real(1) - rho);
        return out;
      }
    }
    t = next;
  }
}

}  // namespace qgraf
