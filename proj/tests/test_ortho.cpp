#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "qgraf/orthogonality.hpp"
#include "test_support.hpp"

using namespace qgraf;
using qgraf::test::near;
using qgraf::test::raises;
using C = std::complex<double>;

namespace {

const QuadratureGrid& grid() {
  static const QuadratureGrid g(16, 512, 1e-13);
  return g;
}

}  // namespace

TEST(Weight, EndpointsRealityPositivity) {
  const WeightSpec w{ASCParams{C(0.4), C(-0.2), 0.5}, 0};
  EXPECT_EQ(weight_eval(0.0, w), 0.0);
  EXPECT_EQ(weight_eval(std::numbers::pi, w), 0.0);
  EXPECT_LT(std::abs(weight_eval(1e-6, w)), 1e-4);
  EXPECT_LT(std::abs(weight_complex(1.1, w).imag()), 1e-13);
  EXPECT_GT(weight_eval(1.1, w), 0.0);
}

TEST(Weight, ExtraFactor) {
  const ASCParams par{C(0.4), C(-0.2), 0.5};
  const double t = 0.8;
  const C e = std::polar(1.0, t);
  const C extra = (C(1) - 0.4 * e) * (C(1) - 0.4 / e) * (C(1) - 0.2 * e) * (C(1) - 0.2 / e);
  EXPECT_TRUE(near(weight_complex(t, WeightSpec{par, 2}), weight_complex(t, WeightSpec{par, 0}) * extra, 1e-13));
}

TEST(AscOrthogonality, Examples) {
  const QContext ctx(0.5, 1e-15);
  EXPECT_LT(asc_orthogonality_residual(0, 0, ASCParams{C(0), C(0), 0.5}, grid(), ctx).abs_residual, 1e-11);
  const ASCParams par{C(0.4), C(0.3), 0.5};
  const auto off = asc_orthogonality_residual(3, 5, par, grid(), ctx);
  EXPECT_LT(off.abs_residual, 1e-11);
  EXPECT_EQ(off.rhs, C(0));
  const auto diag = asc_orthogonality_residual(4, 4, par, grid(), ctx);
  EXPECT_LT(diag.abs_residual, 1e-10);
  const double q = 0.5;
  const double want = 1 / (qpoch_infinite(C(std::pow(q, 5)), ctx).value * qpoch_infinite(C(0.12 * std::pow(q, 4)), ctx).value).real();
  EXPECT_NEAR(diag.rhs.real(), want, 1e-13);
  EXPECT_TRUE(diag.pass);
}

TEST(AscOrthogonality, RejectsOutsideUnitDisc) {
  const QContext ctx(0.5);
  EXPECT_TRUE(raises(ErrorKind::DomainError,
                     [&] { asc_orthogonality_residual(1, 1, ASCParams{C(1.1), C(0.3), 0.5}, grid(), ctx); }));
}

TEST(WeightedProduct, StructuralZeros) {
  const QContext ctx(0.5, 1e-15);
  const ASCParams par{C(0.3), C(0.2), 0.5};
  const auto r = lemma1_residual(2, 3, 1, 1.0, par, grid(), ctx);
  EXPECT_EQ(r.rhs, C(0));
  EXPECT_LT(std::abs(r.lhs), 1e-11);
  EXPECT_LT(r.abs_residual, 1e-11);
}

TEST(WeightedProduct, Examples) {
  const QContext ctx(0.5, 1e-15);
  EXPECT_LT(lemma1_residual(1, 0, 0, 1.0, ASCParams{C(0.3), C(0.2), 0.5}, grid(), ctx).abs_residual, 1e-10);
  const QContext ctx6(0.6, 1e-15);
  const auto neg = lemma1_residual(2, -1, 2, 0.5, ASCParams{C(0.25), C(0.4), 0.6}, grid(), ctx6);
  EXPECT_LT(neg.abs_residual, 1e-10);
  EXPECT_GT(std::abs(neg.rhs), 1e-3);
}

TEST(WeightedProduct, ReducesToOrthogonality) {
  // nu = 0, r = 0: the lemma is the orthogonality relation for S_m and S_{m+n}.
  const QContext ctx(0.5, 1e-15);
  const ASCParams par{C(0.4), C(0.3), 0.5};
  for (long n = -2; n <= 2; ++n) {
    const auto lem = lemma1_residual(2, n, 0, 0.0, par, grid(), ctx);
    const auto ort = asc_orthogonality_residual(2, std::size_t(2 + n), par, grid(), ctx);
    EXPECT_TRUE(near(lem.rhs, ort.rhs, 1e-12)) << n;
  }
}

TEST(WeightedProduct, FlagsLargeShiftedParameter) {
  const QContext ctx(0.3, 1e-15);
  const auto r = lemma1_residual(1, 1, 2, 2.0, ASCParams{C(0.7), C(0.3), 0.3}, grid(), ctx);
  EXPECT_LT(r.abs_residual, 1e-9);
  ASSERT_FALSE(r.notes.empty());
  EXPECT_NE(r.notes.back().find("a q^-nu"), std::string::npos);
  EXPECT_TRUE(raises(ErrorKind::InvalidArgument,
                     [&] { lemma1_residual(1, -2, 0, 1.0, ASCParams{C(0.3), C(0.3), 0.3}, grid(), ctx); }));
}

TEST(CharlierOrthogonality, Examples) {
  const QContext ctx(0.5, 1e-15);
  const auto r00 = qcharlier_orthogonality_residual(0, 0, CharlierParams(0.7, 0.5), ctx);
  EXPECT_LT(r00.abs_residual, 1e-11);
  // m = r = 0 is the q-exponential sum, which equals (-a;q)_inf.
  double prod = 1;
  for (int i = 0; i < 80; ++i) prod *= 1 + 0.7 * std::pow(0.5, i);
  EXPECT_NEAR(r00.lhs.real(), prod, 1e-13);
  EXPECT_LT(qcharlier_orthogonality_residual(2, 3, CharlierParams(0.7, 0.5), ctx).abs_residual, 1e-11);
  const QContext ctx4(0.4, 1e-15);
  const auto d = qcharlier_orthogonality_residual(2, 2, CharlierParams(1.3, 0.4), ctx4);
  EXPECT_LT(d.abs_residual, 1e-10);
}

TEST(CharlierOrthogonality, CapTooSmall) {
  const QContext ctx(0.9, 1e-15);
  EXPECT_TRUE(raises(ErrorKind::CapExceeded,
                     [&] { qcharlier_orthogonality_residual(1, 1, CharlierParams(2.0, 0.9), ctx, 10); }));
}
