#pragma once

#include <gtest/gtest.h>

#include <complex>
#include <functional>
#include <string>

#include "qgraf/error.hpp"

namespace qgraf::test {

inline ::testing::AssertionResult near(std::complex<long double> got, std::complex<long double> want, long double tol) {
  const long double d = std::abs(got - want);
  if (d <= tol) return ::testing::AssertionSuccess();
  return ::testing::AssertionFailure() << "got (" << double(got.real()) << ", " << double(got.imag()) << "), want ("
                                       << double(want.real()) << ", " << double(want.imag()) << "), |diff| "
                                       << double(d) << " > " << double(tol);
}

inline ::testing::AssertionResult raises(ErrorKind kind, const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.kind() == kind) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "raised " << to_string(e.kind()) << " instead of " << to_string(kind);
  }
  return ::testing::AssertionFailure() << "nothing raised, expected " << to_string(kind);
}

}  // namespace qgraf::test
