#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qgraf/al_salam_chihara.hpp"
#include "qgraf/identities/limits.hpp"
#include "qgraf/q_charlier.hpp"
#include "test_support.hpp"

using namespace qgraf;
using qgraf::test::near;
using qgraf::test::raises;
using C = std::complex<double>;

TEST(ASC, LowDegrees) {
  const ASCParams par{C(0.3), C(0.2), 0.5};
  for (double t : {0.0, 0.4, std::numbers::pi / 3, 2.9}) {
    const auto pt = SpectralPoint::on(t);
    EXPECT_TRUE(near(asc_eval_def(0, pt, par), 1.0, 0));
    EXPECT_TRUE(near(asc_eval_rec(0, pt.x, par), 1.0, 0));
    EXPECT_TRUE(near(asc_eval_def(1, pt, par), 2 * std::cos(t) - 0.5, 1e-15));
    EXPECT_TRUE(near(asc_eval_rec(1, pt.x, par), 2 * std::cos(t) - 0.5, 1e-15));
  }
}

TEST(ASC, SecondDegreeByHand) {
  // S_2 = (2x - a - bq)(2x - a - b) - (1 - q)(1 - ab).
  const double a = 0.4, b = -0.3, q = 0.6, t = 0.9;
  const double x = std::cos(t);
  const double want = (2 * x - (a + b) * q) * (2 * x - a - b) - (1 - q) * (1 - a * b);
  EXPECT_TRUE(near(asc_eval_def(2, SpectralPoint::on(t), ASCParams{C(a), C(b), q}), want, 1e-14));
}

TEST(ASC, Symmetry) {
  const ASCParams par{C(0.4), C(-0.3), 0.5};
  const auto pt = SpectralPoint::on(1.0);
  EXPECT_TRUE(near(asc_eval_def(5, pt, par), asc_eval_def(5, pt, par.swapped()), 1e-12));
  EXPECT_TRUE(near(asc_eval_rec(5, pt.x, par), asc_eval_rec(5, pt.x, par.swapped()), 1e-13));
}

TEST(ASC, DefinitionMatchesRecurrence) {
  const ASCParams par{C(0.3), C(0.5), 0.7};
  const auto pt = SpectralPoint::on(2.1);
  const C d = asc_eval_def(8, pt, par), r = asc_eval_rec(8, pt.x, par);
  EXPECT_LT(std::abs(d - r), 1e-10 * std::abs(d));
  const auto off = SpectralPoint::off(0.4);
  const C d2 = asc_eval_def(7, off, par), r2 = asc_eval_rec(7, off.x, par);
  EXPECT_LT(std::abs(d2 - r2), 1e-10 * std::abs(d2));
}

TEST(ASC, RealOnTheSpectrum) {
  const ASCParams par{C(0.5), C(-0.2), 0.5};
  for (std::size_t n = 0; n <= 12; ++n) {
    for (double t : {0.1, 1.0, 2.5}) EXPECT_LT(std::abs(asc_eval_def(n, SpectralPoint::on(t), par).imag()), 1e-12);
  }
}

TEST(ASC, LeadingCoefficient) {
  // S_4(x)/x^4 -> 16 for large x; fit the tail of the ratio linearly in 1/x.
  const ASCParams par{C(0.3), C(0.2), 0.5};
  const double x1 = 1e3, x2 = 2e3;
  const double r1 = asc_eval_rec(4, C(x1), par).real() / std::pow(x1, 4);
  const double r2 = asc_eval_rec(4, C(x2), par).real() / std::pow(x2, 4);
  EXPECT_NEAR(2 * r2 - r1, 16.0, 1e-5);
}

TEST(ASC, ZeroParameterRoutesToRecurrence) {
  const ASCParams par{C(0), C(0.2), 0.5};
  EXPECT_TRUE(raises(ErrorKind::ZeroParameterPrefactor, [&] { asc_eval_def(3, SpectralPoint::on(1.0), par); }));
  EXPECT_TRUE(near(asc_eval_rec(1, C(0.5), par), 1.0 - 0.2, 1e-15));
}

TEST(SpectralPoint, Consistency) {
  const auto p = SpectralPoint::on(0.7);
  EXPECT_NEAR(p.x.real(), std::cos(0.7), 1e-16);
  const auto o = SpectralPoint::off(0.4);
  EXPECT_NEAR(o.x.real(), (0.4 + 2.5) / 2, 1e-15);
  EXPECT_GT(o.x.real(), 1.0);
  EXPECT_TRUE(raises(ErrorKind::DomainError, [] { SpectralPoint::off(0.0); }));
  EXPECT_TRUE(raises(ErrorKind::DomainError, [] { SpectralPoint::off(1.0); }));
}

TEST(Connection, TrivialCases) {
  const ASCParams par{C(0.5), C(0.3), 0.5};
  const auto c = asc_connection_coeffs(C(0.2), par, 4);
  ASSERT_EQ(c.size(), 5u);
  EXPECT_TRUE(near(c[4], 1.0, 1e-15));
  const auto same = asc_connection_coeffs(C(0.5), par, 4);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_TRUE(near(same[k], 0.0, 1e-15));
  EXPECT_TRUE(raises(ErrorKind::ZeroDivision, [] { asc_connection_coeffs(C(0.2), ASCParams{C(0), C(0.3), 0.5}, 2); }));
}

TEST(Connection, ExpansionResidual) {
  const ASCParams par{C(0.5), C(0.3), 0.5};
  const C alpha(0.2);
  const auto pt = SpectralPoint::on(0.8);
  const auto c = asc_connection_coeffs(alpha, par, 4);
  C sum = 0;
  for (std::size_t k = 0; k <= 4; ++k) sum += c[k] * asc_eval_def(k, pt, par);
  EXPECT_TRUE(near(sum, asc_eval_def(4, pt, ASCParams{alpha, par.b, par.q}), 1e-11));
}

TEST(Connection, ExpansionOnGrid) {
  for (double q : {0.3, 0.5, 0.9})
    for (double a : {-0.5, 0.2, 0.8})
      for (double nu : {-1.0, 0.5, 1.0, 2.0}) {
        const ASCParams par{C(a), C(0.5), q};
        const C alpha = nu < 0 ? C(0.1) : a * std::pow(q, -nu);
        const auto pt = SpectralPoint::on(std::numbers::pi / 3);
        for (std::size_t n = 0; n <= 8; ++n) {
          const auto c = asc_connection_coeffs(alpha, par, n);
          C sum = 0;
          for (std::size_t k = 0; k <= n; ++k) sum += c[k] * asc_eval_rec(k, pt.x, par);
          const C want = asc_eval_rec(n, pt.x, ASCParams{alpha, par.b, q});
          EXPECT_LT(std::abs(sum - want), 1e-10 * std::max(1.0, std::abs(want))) << q << " " << a << " " << nu << " " << n;
        }
      }
}

TEST(Amplitude, ValuesAndDiagnostic) {
  const ASCParams par{C(0.3), C(0.2), 0.5};
  EXPECT_TRUE(near(asc_asymptotic_amplitude(C(0), par, par.context()).value, 1.0, 0));
  EXPECT_TRUE(raises(ErrorKind::DomainError, [&] { asc_asymptotic_amplitude(C(1.2), par, par.context()); }));
  const auto rows = asc_amplitude_diagnostic(0.4, par, {10, 30, 60});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_LT(rows.back().deviation, 1e-8);
  EXPECT_LT(rows.back().deviation, rows.front().deviation);
}

TEST(Amplitude, RatioLimit) {
  const ASCParams par{C(0.3), C(0.2), 0.5};
  const auto rows = asc_ratio_limit_diagnostic(0.4, par, 1.0, 2, {10, 20, 40, 80});
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_LT(rows.back().deviation, 1e-6);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(rows[i].deviation, rows[i - 1].deviation);
  const auto flat = asc_ratio_limit_diagnostic(0.4, par, 0.0, 0, {40});
  EXPECT_TRUE(near(flat[0].limit, 1.0, 1e-14));
  EXPECT_LT(flat[0].deviation, 1e-12);
}

TEST(QCharlier, Values) {
  const double q = 0.5;
  const CharlierParams par(0.7, q);
  EXPECT_TRUE(near(qcharlier_eval(0, C(0.3), par), 1.0, 0));
  // c_1(x) = 1 + (1-x) q / a
  const C x(0.3);
  EXPECT_TRUE(near(qcharlier_eval(1, x, par), C(1) + (C(1) - x) * q / 0.7, 1e-15));
  const C xq(1 / (q * q));
  EXPECT_TRUE(near(qcharlier_eval(3, xq, par), qcharlier_eval_inverted(3, xq, par), 1e-11));
  EXPECT_TRUE(raises(ErrorKind::DomainError, [] { CharlierParams(0.0, 0.5); }));
}

TEST(QLaguerre, Values) {
  const QContext ctx(0.5);
  EXPECT_TRUE(near(qlaguerre_eval(0, 0.5, C(0.7), ctx), 1.0, 0));
  for (std::size_t n = 0; n < 5; ++n) {
    const C want = qpoch_finite(C(std::pow(0.5, 1.5)), ctx, n) / qpoch_finite(C(0.5), ctx, n);
    EXPECT_TRUE(near(qlaguerre_eval(n, 0.5, C(0), ctx), want, 1e-14));
  }
  // L_1 = (1 - q^{a+1})/(1 - q) - x q^{a+1} / (1 - q)
  const double qa = std::pow(0.5, 1.5);
  EXPECT_TRUE(near(qlaguerre_eval(1, 0.5, C(0.7), ctx), (1 - qa) / 0.5 - 0.7 * qa / 0.5, 1e-14));
}
